//! Bias of the AGHP powering construction against its `(s-1)/2^r` bound.

use qrand::smallbias::{aghp_space, max_bias};

fn main() -> qrand::Result<()> {
    println!(
        "{:>2} {:>2} {:>6} {:>10} {:>10}  witness",
        "r", "s", "|S|", "bias", "bound"
    );
    for r in 1..=6u32 {
        for s in (2..=6usize).filter(|&s| r as usize * s <= 24) {
            let space = aghp_space(r, s)?;
            let report = max_bias(&space, None)?;
            let bound = (s as f64 - 1.0) / f64::from(1u32 << r);
            println!(
                "{r:>2} {s:>2} {:>6} {:>10.6} {bound:>10.6}  {}",
                space.size(),
                report.max_bias,
                report.witness
            );
        }
    }

    // longer strings: only low-weight tests are scanned
    let wide = aghp_space(7, 5)?;
    let low = max_bias(&wide, Some(3))?;
    println!(
        "r=7 s=5 ({} bits): weight <= 3 bias {:.6} over {} tests",
        wide.n(),
        low.max_bias,
        low.scanned
    );
    Ok(())
}
