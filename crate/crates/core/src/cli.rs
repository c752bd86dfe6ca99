//! The `qrand` command line.
//!
//! Reports go to stdout as JSON (CSV for sweeps); files use the space and
//! channel text formats. Exit codes: 0 success, 1 domain error, 2 usage
//! error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::channel::{aghp_channel, channel_from_space, qotp, random_pauli_channel, PauliChannel};
use crate::linalg::{rng_from_seed, MatrixNorm};
use crate::smallbias::{aghp_space, max_bias, SampleSpace};
use crate::verify::{diagnose, empirical_epsilon, random_sweep, AttackConfig, Families};
use crate::Error;

#[derive(Debug, Parser)]
#[command(name = "qrand", version, about = "Pauli-based quantum state randomization")]
pub struct Cli {
    /// Worker threads for parallel probes (output does not depend on it).
    #[arg(long, global = true, env = "QRAND_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build or measure small-bias sample spaces.
    #[command(subcommand)]
    Space(SpaceCommand),
    /// Build, certify, attack or diagnose randomizing channels.
    #[command(subcommand)]
    Channel(ChannelCommand),
    /// Parameter sweeps.
    #[command(subcommand)]
    Sweep(SweepCommand),
}

#[derive(Debug, Subcommand)]
enum SpaceCommand {
    Build(SpaceBuild),
    Bias(SpaceBias),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Construction {
    Aghp,
    Full,
}

#[derive(Debug, Args)]
struct SpaceBuild {
    #[arg(long, value_enum)]
    construction: Construction,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SpaceBias {
    #[arg(long = "in")]
    input: PathBuf,
    /// Only scan tests of at most this weight.
    #[arg(long)]
    max_weight: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum ChannelCommand {
    Build(ChannelBuild),
    Certify(ChannelInput),
    Attack(ChannelAttack),
    Diagnose(ChannelInput),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Scheme {
    Qotp,
    Aghp,
    Random,
    FromSpace,
}

#[derive(Debug, Args)]
struct ChannelBuild {
    #[arg(long, value_enum)]
    scheme: Scheme,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Space file for `from-space`.
    #[arg(long)]
    space: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ChannelInput {
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    All,
    None,
    Product,
    Cat,
    Stabilizer,
}

#[derive(Debug, Args)]
struct AttackArgs {
    #[arg(long, default_value_t = 200)]
    probes: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = MatrixNorm::Trace)]
    norm: MatrixNorm,
    /// Comma-separated structured families.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    families: Vec<Family>,
    /// Hill-climb rounds per restart.
    #[arg(long, default_value_t = 200)]
    rounds: usize,
    #[arg(long, default_value_t = 4)]
    restarts: usize,
}

impl AttackArgs {
    fn config(&self) -> AttackConfig {
        let mut families = Families::none();
        for f in &self.families {
            match f {
                Family::All => families = Families::all(),
                Family::None => {}
                Family::Product => families.product = true,
                Family::Cat => families.cat = true,
                Family::Stabilizer => families.stabilizer = true,
            }
        }
        AttackConfig {
            probes: self.probes,
            seed: self.seed,
            norm: self.norm,
            families,
            rounds: self.rounds,
            restarts: self.restarts,
        }
    }
}

#[derive(Debug, Args)]
struct ChannelAttack {
    #[arg(long = "in")]
    input: PathBuf,
    #[command(flatten)]
    attack: AttackArgs,
}

#[derive(Debug, Subcommand)]
enum SweepCommand {
    /// Attack random Pauli channels over a list of key counts.
    Random(SweepRandom),
}

#[derive(Debug, Args)]
struct SweepRandom {
    #[arg(long)]
    n: usize,
    /// Comma-separated key counts.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    m_list: Vec<usize>,
    /// Seeds per key count.
    #[arg(long)]
    seeds: u64,
    /// Write 0 in the runtime column, making the output reproducible.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    attack: AttackArgs,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

/// `certify` output.
#[derive(Debug, Serialize)]
pub struct CertifyReport {
    pub n: usize,
    pub m: usize,
    pub key_bits: u32,
    pub delta: f64,
    pub certified_epsilon: f64,
    /// `(u, v)` of the largest nontrivial Fourier coefficient.
    pub witness_u: String,
    pub witness_v: String,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let command = cli.command;
    let buffered = || {
        let mut buf = Vec::new();
        dispatch(command, &mut buf).map(|()| buf)
    };
    let result = match cli.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(buffered),
            Err(e) => Err(Failure::Usage(format!("thread pool: {e}"))),
        },
        None => buffered(),
    };
    match result.and_then(|buf| write_or_print(None, &String::from_utf8_lossy(&buf), out)) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Io(path, e)) => {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            1
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Space(SpaceCommand::Build(a)) => space_build(a, out),
        Command::Space(SpaceCommand::Bias(a)) => {
            let space: SampleSpace = read(&a.input)?.parse()?;
            emit_json(out, &max_bias(&space, a.max_weight)?)
        }
        Command::Channel(ChannelCommand::Build(a)) => channel_build(a, out),
        Command::Channel(ChannelCommand::Certify(a)) => {
            let ch = read_channel(&a.input)?;
            let table = ch.fourier()?;
            let (delta, u, v) = table.max_nontrivial();
            let bits = |x: usize| crate::bitlin::BitVector::from_u64(x as u64, ch.n()).to_string();
            emit_json(
                out,
                &CertifyReport {
                    n: ch.n(),
                    m: ch.len(),
                    key_bits: ch.key_bits(),
                    delta,
                    certified_epsilon: table.certified_epsilon(),
                    witness_u: bits(u),
                    witness_v: bits(v),
                },
            )
        }
        Command::Channel(ChannelCommand::Attack(a)) => {
            let ch = read_channel(&a.input)?;
            emit_json(out, &empirical_epsilon(&ch, &a.attack.config())?)
        }
        Command::Channel(ChannelCommand::Diagnose(a)) => emit_json(out, &diagnose(&read_channel(&a.input)?)?),
        Command::Sweep(SweepCommand::Random(a)) => sweep(a, out),
    }
}

fn require<T>(value: Option<T>, flag: &str, context: &str) -> Outcome<T> {
    value.ok_or_else(|| Failure::Usage(format!("{context} requires --{flag}")))
}

fn space_build(a: SpaceBuild, out: &mut dyn Write) -> Outcome {
    let space = match a.construction {
        Construction::Aghp => aghp_space(
            require(a.r, "r", "construction aghp")?,
            require(a.s, "s", "construction aghp")?,
        )?,
        Construction::Full => SampleSpace::full_cube(require(a.n, "n", "construction full")?)?,
    };
    write_or_print(a.out.as_deref(), &space.to_text(), out)
}

fn channel_build(a: ChannelBuild, out: &mut dyn Write) -> Outcome {
    let ch = match a.scheme {
        Scheme::Qotp => qotp(require(a.n, "n", "scheme qotp")?)?,
        Scheme::Aghp => aghp_channel(
            require(a.n, "n", "scheme aghp")?,
            require(a.epsilon, "epsilon", "scheme aghp")?,
        )?,
        Scheme::Random => random_pauli_channel(
            require(a.n, "n", "scheme random")?,
            require(a.m, "m", "scheme random")?,
            &mut rng_from_seed(a.seed),
        )?,
        Scheme::FromSpace => {
            let path = require(a.space, "space", "scheme from-space")?;
            channel_from_space(&read(&path)?.parse()?)?
        }
    };
    write_or_print(a.out.as_deref(), &ch.to_text(), out)
}

fn sweep(a: SweepRandom, out: &mut dyn Write) -> Outcome {
    if a.m_list.is_empty() {
        return Err(Failure::Usage("--m-list needs at least one key count".into()));
    }
    if a.seeds == 0 {
        return Err(Failure::Usage("--seeds must be at least 1".into()));
    }
    let cfg = a.attack.config();
    let rows = random_sweep(a.n, &a.m_list, a.seeds, cfg.seed, &cfg)?;
    let mut csv = String::from("n,m,seed,epsilon_hat,certified_epsilon,runtime_ms\n");
    for r in rows {
        let ms = if a.no_timing { 0 } else { r.runtime_ms };
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n, r.m, r.seed, r.epsilon_hat, r.certified_epsilon, ms
        ));
    }
    write_or_print(a.out.as_deref(), &csv, out)
}

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_channel(path: &Path) -> Outcome<PauliChannel> {
    Ok(read(path)?.parse()?)
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Outcome {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Io(p.to_path_buf(), e)),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(PathBuf::from("<stdout>"), e)),
    }
}

fn emit_json<T: Serialize>(out: &mut dyn Write, report: &T) -> Outcome {
    let mut text = serde_json::to_string_pretty(report).map_err(|e| Failure::Domain(Error::Internal(e.to_string())))?;
    text.push('\n');
    write_or_print(None, &text, out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("qrand").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_capture(&["space"]).0, 2);
        assert_eq!(run_capture(&["channel", "build", "--scheme", "aghp", "--n", "3"]).0, 2);
        let (code, _, err) = run_capture(&["sweep", "random", "--n", "2", "--m-list", "", "--seeds", "1"]);
        assert_eq!(code, 2, "{err}");
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn domain_errors_exit_1() {
        let (code, _, err) = run_capture(&["channel", "build", "--scheme", "qotp", "--n", "9"]);
        assert_eq!(code, 1);
        assert!(err.contains("capacity"), "{err}");
        assert_eq!(run_capture(&["space", "bias", "--in", "/nonexistent/space.txt"]).0, 1);
    }

    #[test]
    fn build_to_stdout() {
        let (code, out, _) = run_capture(&["channel", "build", "--scheme", "qotp", "--n", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n=1 m=4\nI\nX\nZ\nY\n");
    }
}
