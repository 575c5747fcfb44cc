//! The built-in test families: analytic, Gevrey, closed-form profiles and
//! coefficient files.
//!
//! ```text
//! cargo run --example families
//! ```

use qtorus::families::{family_profile, gen_series, FamilySpec};

fn main() -> qtorus::Result<()> {
    for text in [
        "analytic:a=0.5:K=40",
        "gevrey:s=1.5:K=200",
        "profile:rule=factorial:s=2:Jmax=60",
        "profile:rule=constant:value=-1:Jmax=50",
    ] {
        let spec: FamilySpec = text.parse()?;
        // J_max = 30 for every row; it overrides the Jmax of a profile spec.
        let profile = family_profile(&spec, 1, Some(30))?;
        let modes = if spec.has_series() {
            gen_series(&spec, 1)?.len().to_string()
        } else {
            "-".into()
        };
        println!(
            "{:<42} modes {:>5}  ln M_0 {:>9.4}  ln M_10 {:>10.4}  ln M_30 {:>10.4}",
            spec.to_string(),
            modes,
            profile.ln_m()[0],
            profile.ln_m()[10],
            profile.ln_m()[30]
        );
    }

    // Series families extend to any dimension by truncating on |k|₁ ≤ K.
    for n in 1..=3 {
        let f = gen_series(&"analytic:a=1:K=10".parse()?, n)?;
        println!("analytic:a=1:K=10 in n = {n}: {} modes", f.len());
    }
    Ok(())
}
