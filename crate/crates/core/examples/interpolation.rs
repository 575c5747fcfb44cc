//! Interpolation at roots of unity: the diagonal and alias folds, and the
//! augmented interpolant that also matches `f` at an extra node `z⁰`.
//!
//! ```text
//! cargo run --example interpolation
//! ```

use qtorus::families::{gen_series, FamilySpec};
use qtorus::interpolation::{
    diagonal_fold, interpolation_audit, torus_node, AugmentedInterpolant, Engine,
};

fn main() -> qtorus::Result<()> {
    let f = gen_series(&"analytic:a=1:K=12".parse::<FamilySpec>()?, 2)?;
    let m = 5;

    let fold = diagonal_fold(&f, m)?;
    println!(
        "diagonal fold, m = {m}: {} terms, {} modes covered, {} uncovered, {} skipped visits",
        fold.terms.len(),
        fold.covered_modes.len(),
        fold.uncovered_modes.len(),
        fold.skipped.len()
    );

    let z0 = torus_node(&[1.0, 2.5]);
    for engine in [Engine::Alias, Engine::Diagonal] {
        let interp = AugmentedInterpolant::new(&f, m, z0.clone(), engine)?;
        let audit = interpolation_audit(&f, m, z0.clone(), engine)?;
        println!(
            "{engine:>8}: base has {:>3} modes, correction = {:.3e}, grid error {:.2e}, z⁰ error {:.2e}",
            interp.base.len(),
            interp.correction,
            audit.max_grid_error,
            audit.z0_error
        );
    }

    println!(
        "the diagonal base drops uncovered modes, so its grid error is that of the dropped part"
    );

    // (1, 1) is a grid node, so Σ z_p^m − n vanishes there and the
    // correction cannot be solved for.
    let degenerate = AugmentedInterpolant::new(&f, m, torus_node(&[0.0, 0.0]), Engine::Alias)?;
    println!("z⁰ = (1, 1) degenerate: {}", degenerate.degenerate_z0);
    Ok(())
}
