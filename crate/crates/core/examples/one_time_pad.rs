//! The quantum one-time pad sends every state exactly to `I/2^n`.
//!
//! ```text
//! cargo run --example one_time_pad
//! ```

use qrand::channel::qotp;
use qrand::linalg::{random_density, rng_from_seed, trace_distance, DensityMatrix};

fn main() -> qrand::Result<()> {
    let mut rng = rng_from_seed(1);
    for n in 1..=4 {
        let pad = qotp(n)?;
        let mixed = DensityMatrix::maximally_mixed(pad.dim());
        let worst = (0..25)
            .map(|_| {
                let rho = random_density(pad.dim(), &mut rng);
                trace_distance(&pad.apply(&rho)?, &mixed)
            })
            .collect::<qrand::Result<Vec<_>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        println!(
            "n={n}: {:>3} keys ({} key bits), certified epsilon {}, worst distance over 25 states {worst:.1e}",
            pad.len(),
            pad.key_bits(),
            pad.certified_epsilon()?
        );
    }
    Ok(())
}
