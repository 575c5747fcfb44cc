//! Sample the augmented interpolant on the polyannulus `1/t ≤ |z_p| ≤ t`
//! with `t = t_m` and compare with the growth bound built from `τ_f`.
//!
//! ```text
//! cargo run --release --example bound_audit
//! ```

use qtorus::associated::witness;
use qtorus::families::{gen_series, rescale_to_class, FamilySpec};
use qtorus::interpolation::{bound_audit, torus_node, BoundAuditConfig, Engine};
use qtorus::norms::build_profile;

fn main() -> qtorus::Result<()> {
    let spec: FamilySpec = "analytic:a=1:K=200".parse()?;
    let f = rescale_to_class(&gen_series(&spec, 1)?)?.series;
    let profile = build_profile(&f, 60);
    let ms: Vec<u64> = (2..=32).step_by(5).collect();
    let ln_t = witness(&profile, 1, &ms, &Default::default())?.ln_t;

    println!(
        "{:>4} {:>10} {:>14} {:>14} {:>10}",
        "m", "t_m", "sup |L_m|", "bound", "ratio"
    );
    for (&m, lt) in ms.iter().zip(ln_t) {
        let rep = bound_audit(
            &f,
            &profile,
            &BoundAuditConfig {
                m,
                t: lt.exp(),
                z0: torus_node(&[1.0]),
                engine: Engine::Diagonal,
                samples: 512,
                seed: 2024,
            },
        )?;
        println!(
            "{:>4} {:>10.6} {:>14.6e} {:>14.6e} {:>10.4}",
            m,
            rep.t,
            rep.lhs_max,
            rep.ln_rhs.exp(),
            rep.empirical_cf
        );
    }
    Ok(())
}
