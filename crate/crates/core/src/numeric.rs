//! Small numerical helpers shared across modules.

/// `ln Σ e^{x_i}`, stable for large magnitudes; `-∞` for an empty slice or
/// when every term is `-∞`.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let s: f64 = xs.iter().map(|x| (x - max).exp()).sum();
    max + s.ln()
}

/// Ordinary least-squares line through `(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual.
    pub rms: f64,
}

pub fn linear_fit(x: &[f64], y: &[f64]) -> Option<LinearFit> {
    let n = x.len();
    if n < 2 || n != y.len() {
        return None;
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - (intercept + slope * a);
            r * r
        })
        .sum();
    Some(LinearFit {
        slope,
        intercept,
        rms: (ss / nf).sqrt(),
    })
}

/// Cumulative trapezoid integral of samples `y` over increasing `x`,
/// starting at zero.
pub fn cumulative_trapezoid(x: &[f64], y: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len());
    let mut acc = 0.0;
    for i in 0..x.len() {
        if i > 0 {
            acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
        }
        out.push(acc);
    }
    out
}

/// Log-spaced grid from `lo` to `hi` (both included) with the given number
/// of points per decade.
pub fn log_grid(lo: f64, hi: f64, per_decade: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi >= lo && per_decade > 0);
    let decades = (hi / lo).log10();
    let steps = (decades * per_decade as f64).ceil().max(1.0) as usize;
    let (a, b) = (lo.ln(), hi.ln());
    (0..=steps)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == steps {
                hi
            } else {
                (a + (b - a) * i as f64 / steps as f64).exp()
            }
        })
        .collect()
}

/// `ln j!` for `j = 0..=j_max`, by cumulative summation.
pub fn ln_factorials(j_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(j_max + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for j in 1..=j_max {
        acc += (j as f64).ln();
        out.push(acc);
    }
    out
}

/// Formats a float for CSV output: shortest round-trip form, with
/// `inf`, `-inf` and `nan` spelled out.
pub fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{v:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lse_basic() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(log_sum_exp(&[f64::NEG_INFINITY]), f64::NEG_INFINITY);
        assert!((log_sum_exp(&[0.0, 0.0]) - 2f64.ln()).abs() < 1e-15);
        assert!((log_sum_exp(&[1000.0, 1000.0]) - (1000.0 + 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn fit_recovers_line() {
        let x: Vec<f64> = (0..10).map(f64::from).collect();
        let y: Vec<f64> = x.iter().map(|v| 3.0 - 0.5 * v).collect();
        let f = linear_fit(&x, &y).unwrap();
        assert!((f.slope + 0.5).abs() < 1e-12);
        assert!((f.intercept - 3.0).abs() < 1e-12);
        assert!(f.rms < 1e-12);
        assert!(linear_fit(&[1.0, 1.0], &[0.0, 1.0]).is_none());
    }

    #[test]
    fn trapezoid_of_line_is_exact() {
        let x = [0.0, 0.5, 2.0];
        let y = [0.0, 1.0, 4.0];
        assert_eq!(cumulative_trapezoid(&x, &y), vec![0.0, 0.25, 4.0]);
    }

    #[test]
    fn grid_endpoints() {
        let g = log_grid(1.0, 100.0, 64);
        assert_eq!(g.len(), 129);
        assert_eq!(g[0], 1.0);
        assert_eq!(*g.last().unwrap(), 100.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn factorials() {
        let f = ln_factorials(5);
        assert!((f[5] - 120f64.ln()).abs() < 1e-14);
        assert_eq!(f[0], 0.0);
        assert_eq!(f[1], 0.0);
    }

    #[test]
    fn float_formatting() {
        assert_eq!(fmt_f64(f64::NEG_INFINITY), "-inf");
        assert_eq!(fmt_f64(1.0), "1.0");
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(fmt_f64(1e300), "1e300");
    }
}
