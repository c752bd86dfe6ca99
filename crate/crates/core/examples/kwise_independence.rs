//! Small bias implies approximate k-wise independence.
//!
//! For every set of `k` positions the marginal stays within
//! `(1 - 2^{-k}) ε_k` of uniform pointwise and within `√(2^k - 1) ε_k` in
//! variation distance, where `ε_k` is the largest bias over tests of weight
//! at most `k`.

use qrand::smallbias::{aghp_space, marginal_distance, vazirani_report};

fn main() -> qrand::Result<()> {
    let space = aghp_space(5, 3)?;
    println!("AGHP r=5 s=3: {} strings of {} bits", space.size(), space.n());
    for k in 1..=4 {
        let rep = vazirani_report(&space, k)?;
        println!(
            "k={k}: eps_k {:.4} | point {:.4} <= {:.4} | marginal {:.4} <= {:.4} | {} subsets, {} violations",
            rep.epsilon_k,
            rep.max_point_deviation,
            rep.point_bound,
            rep.max_marginal_distance,
            rep.marginal_bound,
            rep.subsets_checked,
            rep.violations
        );
    }
    println!(
        "marginal on bits 0, 5, 10: {:.4}",
        marginal_distance(&space, &[0, 5, 10])?
    );
    Ok(())
}
