//! Build a sparse Fourier series, evaluate it on the torus and off it, and
//! round-trip it through the JSON Lines coefficient format.
//!
//! ```text
//! cargo run --example fourier_eval
//! ```

use num_complex::Complex64;
use qtorus::{FourierSeries, MultiIndex, PolyPoint, TorusPoint};

fn main() -> qtorus::Result<()> {
    // f(θ) = 1 + ½ e^{i(θ₁ − 2θ₂)} + (i/4) e^{3iθ₂}
    let f = FourierSeries::from_modes(
        2,
        [
            (MultiIndex::new(vec![0, 0]), Complex64::new(1.0, 0.0)),
            (MultiIndex::new(vec![1, -2]), Complex64::new(0.5, 0.0)),
            (MultiIndex::new(vec![0, 3]), Complex64::new(0.0, 0.25)),
        ],
    )?;
    println!("{} modes, Σ|c_k| = {}", f.len(), f.abs_sum());

    let p = TorusPoint::new(vec![0.3, 1.1])?;
    let on_torus = f.eval_torus(&p)?;
    let as_laurent = f.eval_laurent(&p.to_poly_point())?;
    println!("f(0.3, 1.1)        = {on_torus:.12}");
    println!("Laurent form there = {as_laurent:.12}");

    // The Laurent form extends f off the torus.
    let z = PolyPoint::new(vec![Complex64::new(1.2, 0.1), Complex64::new(0.0, 0.9)])?;
    println!("f at z = (1.2+0.1i, 0.9i): {:.6}", f.eval_laurent(&z)?);

    let mut buf = Vec::new();
    f.write_jsonl(&mut buf)?;
    print!("{}", String::from_utf8_lossy(&buf));
    let back = FourierSeries::read_jsonl(buf.as_slice())?;
    assert_eq!(back, f);
    println!("JSON Lines round trip ok");
    Ok(())
}
