//! Grid-based sup-norm and `L^p` error measurement.

use rayon::prelude::*;

use super::{Approximant, Interval, TargetFunction};
use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;
use crate::scalar::{AdjustableReal, ExactRational};

pub const DEFAULT_GRID_POINTS: usize = 2049;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridOptions {
    pub points: usize,
    pub threads: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            points: DEFAULT_GRID_POINTS,
            threads: 1,
        }
    }
}

/// Equispaced points including both endpoints exactly.
pub fn grid(interval: Interval, points: usize) -> Vec<f64> {
    let (a, b) = (interval.a(), interval.b());
    let last = points - 1;
    (0..points)
        .map(|i| {
            if i == last {
                b
            } else {
                a + (b - a) * (i as f64 / last as f64)
            }
        })
        .collect()
}

fn check_points(points: usize) -> Result<()> {
    if points < 2 {
        return Err(Error::InvalidParameter(format!("grid needs >= 2 points, got {points}")));
    }
    Ok(())
}

fn map_grid<F>(xs: &[f64], threads: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync + Send,
{
    if threads <= 1 {
        return xs.iter().map(|&x| f(x)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| xs.par_iter().map(|&x| f(x)).collect())
}

fn residuals(appr: &Approximant, f: &TargetFunction, xs: &[f64], threads: usize) -> Result<Vec<f64>> {
    map_grid(xs, threads, |x| Ok(appr.residual(x, f.eval(x)?).abs()))
}

fn sup(values: &[f64]) -> f64 {
    values.iter().copied().fold(0.0, f64::max)
}

/// Composite trapezoid rule for `int |r|^p`, then the `p`-th root.
fn trapezoid_norm(abs_residuals: &[f64], width: f64, p: f64) -> f64 {
    let n = abs_residuals.len();
    let h = width / (n - 1) as f64;
    let interior: f64 = abs_residuals[1..n - 1].iter().map(|r| r.powf(p)).sum();
    let ends = 0.5 * (abs_residuals[0].powf(p) + abs_residuals[n - 1].powf(p));
    (h * (interior + ends)).powf(1.0 / p)
}

pub fn sup_error(appr: &Approximant, f: &TargetFunction, interval: Interval, points: usize) -> Result<f64> {
    check_points(points)?;
    Ok(sup(&residuals(appr, f, &grid(interval, points), 1)?))
}

pub fn lp_error(appr: &Approximant, f: &TargetFunction, interval: Interval, p: f64, points: usize) -> Result<f64> {
    check_points(points)?;
    check_exponent(p)?;
    let r = residuals(appr, f, &grid(interval, points), 1)?;
    Ok(trapezoid_norm(&r, interval.length(), p))
}

fn check_exponent(p: f64) -> Result<()> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("L^p exponent {p} must be >= 1")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ErrorReport {
    pub sup_error: f64,
    pub grid_points: usize,
    /// `(p, ||f - appr||_p)` in the order requested.
    pub lp_errors: Vec<(f64, f64)>,
}

impl ErrorReport {
    pub fn lp(&self, p: f64) -> Option<f64> {
        self.lp_errors.iter().find(|(q, _)| *q == p).map(|&(_, e)| e)
    }

    /// `||r||_p <= (b - a)^(1/p) sup |r| + tolerance` for every reported `p`.
    pub fn satisfies_holder(&self, interval: Interval, tolerance: f64) -> bool {
        self.lp_errors
            .iter()
            .all(|&(p, e)| e <= interval.length().powf(1.0 / p) * self.sup_error + tolerance)
    }
}

/// Sup error and the requested `L^p` errors from one pass over the grid.
pub fn measure_errors(
    appr: &Approximant,
    f: &TargetFunction,
    interval: Interval,
    exponents: &[f64],
    grid_options: GridOptions,
) -> Result<ErrorReport> {
    check_points(grid_options.points)?;
    for &p in exponents {
        check_exponent(p)?;
    }
    let r = residuals(appr, f, &grid(interval, grid_options.points), grid_options.threads)?;
    Ok(ErrorReport {
        sup_error: sup(&r),
        grid_points: grid_options.points,
        lp_errors: exponents
            .iter()
            .map(|&p| (p, trapezoid_norm(&r, interval.length(), p)))
            .collect(),
    })
}

/// Sup deviation of an exact polynomial from `f` on the grid.
pub fn proxy_sup_error(p: &RationalPolynomial, f: &TargetFunction, interval: Interval, points: usize) -> Result<f64> {
    check_points(points)?;
    let reach = interval.a().abs().max(interval.b().abs()).max(1.0).log2();
    let degree = p.degree().unwrap_or(0) as f64;
    let precision = 128 + (2.0 * degree * reach).ceil() as u32;
    let coeffs: Vec<AdjustableReal> = p
        .coeffs()
        .iter()
        .map(|c: &ExactRational| AdjustableReal::from_rational(c, precision))
        .collect();
    let values = grid(interval, points)
        .into_iter()
        .map(|x| {
            let xr = AdjustableReal::from_f64(x, precision);
            let px = coeffs
                .iter()
                .rev()
                .fold(AdjustableReal::zero(precision), |acc, c| &(&acc * &xr) + c);
            let fx = AdjustableReal::from_f64(f.eval(x)?, precision);
            Ok((&fx - &px).to_f64().abs())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sup(&values))
}
