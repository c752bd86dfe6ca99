//! Three Paulis on one qubit: the best a 3-key scheme can do.
//!
//! The channel `{I, X, Z}` shrinks every Bloch vector by a factor of three,
//! so its worst-case trace distance is exactly 1/3. The Fourier certificate
//! is looser (`√2/3`), and every key-space diagnostic hits 1/3.

use qrand::channel::channel_from_space;
use qrand::smallbias::SampleSpace;
use qrand::verify::{diagnose, empirical_epsilon, AttackConfig};

fn main() -> qrand::Result<()> {
    // (a | b) = 00, 10, 01  ->  I, X, Z
    let keys = SampleSpace::parse_strings(&["00", "10", "01"])?;
    let ch = channel_from_space(&keys)?;
    print!("{}", ch.to_text());

    let attack = empirical_epsilon(&ch, &AttackConfig::default())?;
    let diag = diagnose(&ch)?;
    println!(
        "attack       {:.12} (best family: {})",
        attack.epsilon_hat, attack.best_family
    );
    println!("certificate  {:.12}", ch.certified_epsilon()?);
    println!("sigma_V      {:.12} at V = {}", diag.sigma_v_max, diag.sigma_v_witness);
    println!("cat          {:.12} at w = {}", diag.cat_max, diag.cat_witness);
    println!(
        "stabilizer   {:.12} at <{}>",
        diag.stabilizer_max,
        diag.stabilizer_witness.join(", ")
    );
    Ok(())
}
