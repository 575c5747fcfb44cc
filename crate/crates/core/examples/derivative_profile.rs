//! Derivative-norm profiles `ln M_j`, the class normalization `M₃ < ½` and
//! the coefficient decay audit `|c_k| ≤ M_j / Π|k_p|^{α_p}`.
//!
//! ```text
//! cargo run --example derivative_profile
//! ```

use qtorus::families::{gen_series, rescale_to_class, FamilySpec};
use qtorus::norms::{build_profile, coefficient_bound_audit};

fn main() -> qtorus::Result<()> {
    let spec: FamilySpec = "analytic:a=1:K=30".parse()?;
    let f = gen_series(&spec, 2)?;
    let profile = build_profile(&f, 20);
    println!("{spec} in n = 2: {} modes", f.len());
    println!("{:>3}  {:>12}", "j", "ln M_j");
    for (j, v) in profile.ln_m().iter().enumerate().step_by(4) {
        println!("{j:>3}  {v:>12.6}");
    }

    let (normalized, ln_c) = profile.normalized_to_class()?;
    println!(
        "class rescaling: ln c = {ln_c:.6}, M₃ after = {:.6}",
        normalized.get(3).unwrap().exp()
    );
    let rescaled = rescale_to_class(&f)?;
    println!(
        "the same factor applied to the series: c = {:.6}",
        rescaled.scale
    );

    for j in 4..=8 {
        let audit = coefficient_bound_audit(&f, &profile, j)?;
        println!(
            "decay audit j = {j}: {} coefficients checked, {} violations",
            audit.checked,
            audit.violations.len()
        );
    }
    Ok(())
}
