//! End-to-end approximation of a continuous target to a requested sup error.

use super::measure::{grid, measure_errors, proxy_sup_error, GridOptions, DEFAULT_GRID_POINTS};
use super::recovery::approximate_polynomial_with;
use super::{chebyshev_proxy, Approximant, ErrorReport, Interval, TargetFunction};
use crate::centers::ScatteredSequence;
use crate::error::{Error, Result};
use crate::expansion::MultiquadricParams;
use crate::poly::RationalPolynomial;
use crate::scalar::ExactRational;

const SCREEN_POINTS: usize = 33;

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxOptions {
    pub grid_points: usize,
    pub lp_exponents: Vec<f64>,
    /// Maximum number of times `y_min` is doubled.
    pub max_doublings: usize,
    pub max_proxy_degree: usize,
    /// Multiplier on the planned working precision.
    pub precision_scale: u32,
    pub threads: usize,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        Self {
            grid_points: DEFAULT_GRID_POINTS,
            lp_exponents: vec![1.0, 2.0, 4.0],
            max_doublings: 40,
            max_proxy_degree: 64,
            precision_scale: 1,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct FunctionApproximation {
    pub approximant: Approximant,
    pub report: ErrorReport,
    pub proxy: RationalPolynomial,
    pub proxy_error: f64,
    pub y_min: ExactRational,
    pub doublings: usize,
}

/// Smallest Chebyshev degree whose measured sup defect is below `tolerance`.
fn choose_proxy(
    f: &TargetFunction,
    interval: Interval,
    tolerance: f64,
    options: &ApproxOptions,
) -> Result<(RationalPolynomial, f64)> {
    for n in 0..=options.max_proxy_degree {
        let proxy = chebyshev_proxy(f, interval, n)?;
        let err = proxy_sup_error(&proxy, f, interval, options.grid_points)?;
        if err < tolerance {
            return Ok((proxy, err));
        }
    }
    Err(Error::CapExceeded {
        what: "proxy degree",
        cap: options.max_proxy_degree,
    })
}

/// Splits `epsilon` evenly between the polynomial proxy and the translate
/// recovery, then doubles `y_min` from `4(max(|a|,|b|) + c)` until the
/// measured grid sup error falls below `epsilon`.
pub fn approximate_function(
    f: &TargetFunction,
    interval: Interval,
    epsilon: f64,
    params: &MultiquadricParams,
    seq: &ScatteredSequence,
    options: &ApproxOptions,
) -> Result<FunctionApproximation> {
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must be > 0")));
    }
    if options.precision_scale == 0 {
        return Err(Error::InvalidParameter("precision scale must be >= 1".into()));
    }
    let (proxy, proxy_error) = choose_proxy(f, interval, epsilon / 2.0, options)?;
    let screen = grid(interval, SCREEN_POINTS);
    let grid_options = GridOptions {
        points: options.grid_points,
        threads: options.threads,
    };

    let mut y_min = interval.convergence_threshold(params).ceil();
    let two = ExactRational::from_integer(2.into());
    for doublings in 0..=options.max_doublings {
        let approximant = approximate_polynomial_with(params, &proxy, interval, seq, &y_min, |planned| {
            options.precision_scale * planned
        })?;
        let screened = screen
            .iter()
            .map(|&x| Ok(approximant.residual(x, f.eval(x)?).abs()))
            .collect::<Result<Vec<f64>>>()?;
        if screened.iter().all(|r| *r < epsilon) {
            let report = measure_errors(&approximant, f, interval, &options.lp_exponents, grid_options)?;
            if report.sup_error < epsilon {
                return Ok(FunctionApproximation {
                    approximant,
                    report,
                    proxy,
                    proxy_error,
                    y_min,
                    doublings,
                });
            }
        }
        y_min = &y_min * &two;
    }
    Err(Error::CapExceeded {
        what: "y_min doubling",
        cap: options.max_doublings,
    })
}
