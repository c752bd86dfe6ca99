//! Key lengths of the explicit small-bias construction.
//!
//! For each `(n, ε)` the smallest field degree `r` meeting
//! `(s-1)/2^r <= ε 2^{-n/2}` is chosen; when no `r < n` works, the
//! one-time pad (`2n` key bits) is used instead.

use qrand::channel::{aghp_channel, aghp_parameters};

fn main() -> qrand::Result<()> {
    println!(
        "{:>2} {:>6} {:>8} {:>8} {:>8} {:>12}",
        "n", "eps", "r, s", "keys", "bits", "certified"
    );
    for n in [2usize, 4, 6, 8] {
        for eps in [1.0, 0.5, 0.25, 0.1] {
            let params = aghp_parameters(n, eps)?;
            let ch = aghp_channel(n, eps)?;
            let rs = params.map_or("pad".to_string(), |(r, s)| format!("{r}, {s}"));
            println!(
                "{n:>2} {eps:>6} {rs:>8} {:>8} {:>8} {:>12.6}",
                ch.len(),
                ch.key_bits(),
                ch.certified_epsilon()?
            );
        }
    }
    Ok(())
}
