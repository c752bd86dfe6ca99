//! Haar-random unitaries judged in the infinity norm.
//!
//! If `‖E(φ) - I/d‖_∞ <= ε/d` for every pure `φ`, the map is ε-randomizing
//! in trace norm, since the trace norm sums at most `d` eigenvalues. The
//! attack below measures both norms on the same channels.

use qrand::channel::haar_channel;
use qrand::linalg::{rng_from_seed, MatrixNorm};
use qrand::verify::{deviation, empirical_epsilon, AttackConfig};

fn main() -> qrand::Result<()> {
    let d = 8;
    let mut rng = rng_from_seed(7);
    println!("{:>4} {:>12} {:>12} {:>14}", "m", "d*inf", "trace", "trace(witness)");
    for m in [4, 16, 64, 256] {
        let ch = haar_channel(d, m, &mut rng)?;
        let cfg = |norm| AttackConfig {
            probes: 300,
            norm,
            seed: m as u64,
            ..AttackConfig::default()
        };
        let inf = empirical_epsilon(&ch, &cfg(MatrixNorm::Infinity))?;
        let tr = empirical_epsilon(&ch, &cfg(MatrixNorm::Trace))?;
        // the infinity-norm witness evaluated in trace norm never beats d times its value
        let cross = deviation(&ch, &inf.witness, MatrixNorm::Trace)?;
        println!(
            "{m:>4} {:>12.4} {:>12.4} {cross:>14.4}",
            d as f64 * inf.epsilon_hat,
            tr.epsilon_hat
        );
    }
    Ok(())
}
