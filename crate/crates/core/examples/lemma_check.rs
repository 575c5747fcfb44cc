//! Numerical check of the lemma: if `H̃(x) ≤ C e^{−αx}` with `0 < α < 1`,
//! then `∫₁^∞ h(t)/t² dt` converges.
//!
//! ```text
//! cargo run --example lemma_check
//! ```

use qtorus::associated::lemma_check_fn;

type Case = (&'static str, fn(f64) -> f64);

fn main() -> qtorus::Result<()> {
    let cases: [Case; 4] = [
        ("sqrt(t)", f64::sqrt),
        ("t^0.9", |t| t.powf(0.9)),
        ("t", |t| t),
        ("t / ln(e + t)", |t| t / (std::f64::consts::E + t).ln()),
    ];
    println!(
        "{:<16} {:>8} {:>6} {:>12} {:>14} {:>10}",
        "h", "alpha", "fit", "integral", "verdict", "holds"
    );
    for (name, h) in cases {
        let rep = lemma_check_fn(h, 120.0, 64, &Default::default())?;
        println!(
            "{:<16} {:>8.4} {:>6} {:>12.4} {:>14?} {:>10}",
            name,
            rep.alpha_fit.unwrap_or(f64::NAN),
            rep.fit_succeeded,
            rep.integral_tail.last().unwrap(),
            rep.verdict,
            rep.implication_holds
        );
    }
    Ok(())
}
