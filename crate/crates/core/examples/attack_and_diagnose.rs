//! Lower bounds (diagnostics, attack) and the upper bound (certificate) for
//! channels built from random key sets.

use rand::Rng;

use qrand::channel::channel_from_space;
use qrand::linalg::rng_from_seed;
use qrand::smallbias::SampleSpace;
use qrand::verify::{diagnose, empirical_epsilon, AttackConfig};

fn main() -> qrand::Result<()> {
    let mut rng = rng_from_seed(2024);
    let n = 3;
    let cfg = AttackConfig {
        probes: 500,
        ..AttackConfig::default()
    };
    println!(
        "{:>4} {:>8} {:>8} {:>8} {:>8} {:>10}",
        "m", "sigma_V", "cat", "stab", "attack", "certified"
    );
    for m in [8, 16, 32, 64, 128] {
        let keys: Vec<u64> = (0..m).map(|_| rng.random::<u64>() & 0x3f).collect();
        let ch = channel_from_space(&SampleSpace::from_u64s(2 * n, keys)?)?;
        let diag = diagnose(&ch)?;
        let attack = empirical_epsilon(&ch, &cfg)?;
        println!(
            "{m:>4} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>10.4}  (rank bound ok: {})",
            diag.sigma_v_max,
            diag.cat_max,
            diag.stabilizer_max,
            attack.epsilon_hat,
            diag.certified_epsilon,
            diag.rank_bound_ok
        );
    }
    Ok(())
}
