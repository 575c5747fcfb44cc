//! Carleman trend diagnostic and the witness `d_m = m^{1/(n+1)} ln t_m` for
//! a quasianalytic and a non-quasianalytic profile.
//!
//! ```text
//! cargo run --release --example carleman_verdict
//! ```

use qtorus::associated::verdict;
use qtorus::families::{gen_profile, FamilySpec};

fn report(spec: &str, m_grid: &[u64], r_max: f64) -> qtorus::Result<()> {
    let spec: FamilySpec = spec.parse()?;
    let profile = gen_profile(&spec, 1)?;
    let v = verdict(
        &profile,
        1,
        m_grid,
        r_max,
        &Default::default(),
        &Default::default(),
    )?;
    let c = &v.carleman;
    println!("{spec}");
    println!(
        "  Carleman: {:?}, exponent γ = {:.3}, usable r up to {:.1}, I(r_max) = {:.3}",
        c.verdict,
        c.exponent_fit.map_or(f64::NAN, |f| f.slope),
        c.r_effective,
        c.partial_integrals.last().unwrap()
    );
    println!(
        "  witness:  {:?}, slope of d_m against ln m = {:.4}, d at m = {} is {:.4}",
        v.witness.classification,
        v.witness.fit.map_or(f64::NAN, |f| f.slope),
        m_grid.last().unwrap(),
        v.witness.witness.last().unwrap()
    );
    Ok(())
}

fn main() -> qtorus::Result<()> {
    let dense: Vec<u64> = (1..=1000).collect();
    report("profile:rule=factorial:s=1:Jmax=200", &dense, 1e3)?;
    // Gevrey-2 needs a long m range before d_m visibly levels off.
    let sparse: Vec<u64> = (1..=1000).map(|i| 1000 * i).collect();
    report("profile:rule=factorial:s=2:Jmax=2000", &sparse, 1e4)?;
    Ok(())
}
