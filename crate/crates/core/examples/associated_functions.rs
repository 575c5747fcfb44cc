//! Associated functions `ln τ`, `ln τ̃`, the sequence `ln t_m` and the
//! comparison `ln θ(m)` for a factorial profile.
//!
//! ```text
//! cargo run --example associated_functions
//! ```

use qtorus::associated::{witness, AssociatedTable};
use qtorus::families::{gen_profile, FamilySpec};
use qtorus::numeric::log_grid;

fn main() -> qtorus::Result<()> {
    let spec: FamilySpec = "profile:rule=factorial:s=1.5:Jmax=200".parse()?;
    let (profile, _) = gen_profile(&spec, 1)?.normalized_to_class()?;

    let table = AssociatedTable::build(&profile, log_grid(1.0, 100.0, 4))?;
    println!("{:>10} {:>14} {:>14} {:>6}", "r", "ln τ", "ln τ̃", "argmin");
    for i in 0..table.r_grid.len() {
        println!(
            "{:>10.4} {:>14.6} {:>14.6} {:>6}",
            table.r_grid[i], table.ln_tau[i], table.ln_tau_shifted[i], table.argmin[i]
        );
    }
    println!(
        "non-increasing: {}, concave in ln r: {}, r³τ = τ̃ from r₀ ≈ {}",
        table.is_non_increasing(),
        table.is_concave_in_log_r(),
        table.r0_estimate
    );

    let grid: Vec<u64> = vec![1, 2, 5, 10, 20, 50, 100];
    let w = witness(&profile, 1, &grid, &Default::default())?;
    println!("{:>5} {:>12} {:>12}", "m", "ln t_m", "ln θ(m)");
    for ((m, t), th) in grid.iter().zip(&w.ln_t).zip(&w.ln_theta) {
        println!("{m:>5} {t:>12.6} {th:>12.6}");
    }
    println!("ln t_m ≥ ln θ(m) throughout: {}", w.chain_holds());
    Ok(())
}
