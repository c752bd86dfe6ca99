//! More random Pauli keys, better randomization.
//!
//! Prints the sweep as CSV followed by the median attack value per key
//! count.

use qrand::verify::{random_sweep, sweep_medians, AttackConfig};

fn main() -> qrand::Result<()> {
    let ms = [8, 16, 32, 64, 128];
    let cfg = AttackConfig {
        probes: 100,
        ..AttackConfig::default()
    };
    let rows = random_sweep(3, &ms, 5, 0, &cfg)?;
    println!("n,m,seed,epsilon_hat,certified_epsilon,runtime_ms");
    for r in &rows {
        println!(
            "{},{},{},{:.6},{:.6},{}",
            r.n, r.m, r.seed, r.epsilon_hat, r.certified_epsilon, r.runtime_ms
        );
    }
    for (m, med) in ms.iter().zip(sweep_medians(&rows, &ms)) {
        println!("m = {m:>3}: median epsilon_hat {med:.4}");
    }
    Ok(())
}
