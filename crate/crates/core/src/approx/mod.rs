//! Approximation of continuous functions by translates `sum_j a_j phi_k(x - y_j)`.

mod chebyshev;
mod document;
mod measure;
mod pipeline;
mod recovery;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expansion::{multiquadric_with_c2, MultiquadricParams};
use crate::expr::parse_expression;
use crate::scalar::{from_f64, AdjustableReal, ExactRational};

pub use chebyshev::{chebyshev_nodes, chebyshev_proxy};
pub use measure::{grid, lp_error, measure_errors, proxy_sup_error, sup_error, ErrorReport, GridOptions};
pub use pipeline::{approximate_function, ApproxOptions, FunctionApproximation};
pub use recovery::{a_basis_decompose, approximate_polynomial, recover_expansion_polynomial};

/// Closed interval `[a, b]` with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidParameter(format!("[{a}, {b}] is not a proper interval")));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    /// `4 (max(|a|, |b|) + c)`: every center at or above this keeps the
    /// expansion convergent on the whole interval.
    pub fn convergence_threshold(&self, params: &MultiquadricParams) -> ExactRational {
        let reach = from_f64(self.a.abs().max(self.b.abs())).expect("finite");
        ExactRational::from_integer(4.into()) * (reach + params.c())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

type Evaluator = dyn Fn(f64) -> std::result::Result<f64, String> + Send + Sync;

/// A deterministic real function of one variable.
#[derive(Clone)]
pub struct TargetFunction {
    evaluator: Arc<Evaluator>,
    description: String,
}

impl TargetFunction {
    pub fn new(
        description: impl Into<String>,
        f: impl Fn(f64) -> std::result::Result<f64, String> + Send + Sync + 'static,
    ) -> Self {
        Self {
            evaluator: Arc::new(f),
            description: description.into(),
        }
    }

    pub fn from_fn(description: impl Into<String>, f: fn(f64) -> f64) -> Self {
        Self::new(description, move |x| Ok(f(x)))
    }

    pub fn from_expression(text: &str) -> Result<Self> {
        let expr = parse_expression(text)?;
        Ok(Self::new(text.trim(), move |x| expr.eval(x).map_err(|e| e.to_string())))
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match (self.evaluator)(x) {
            Ok(v) if v.is_finite() => Ok(v),
            Ok(v) => Err(Error::Evaluation { x, message: format!("non-finite value {v}") }),
            Err(message) => Err(Error::Evaluation { x, message }),
        }
    }
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFunction").field("description", &self.description).finish()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub center: ExactRational,
    pub coefficient: AdjustableReal,
}

/// `sum_j a_j phi_k(x - y_j)` over an interval, evaluated at a fixed precision.
#[derive(Clone, Debug)]
pub struct Approximant {
    params: MultiquadricParams,
    terms: Vec<Term>,
    interval: Interval,
    precision: u32,
    centers_real: Vec<AdjustableReal>,
    c_squared: AdjustableReal,
}

impl Approximant {
    pub fn new(
        params: MultiquadricParams,
        terms: Vec<Term>,
        interval: Interval,
        precision: u32,
    ) -> Result<Self> {
        if terms.windows(2).any(|w| w[1].center <= w[0].center) {
            return Err(Error::InvalidCenters("term centers must be strictly increasing".into()));
        }
        let threshold = interval.convergence_threshold(&params);
        if let Some(first) = terms.first() {
            if first.center < threshold {
                return Err(Error::BelowConvergenceThreshold {
                    y: crate::scalar::to_f64(&first.center),
                    threshold: crate::scalar::to_f64(&threshold),
                });
            }
        }
        let terms: Vec<Term> = terms
            .into_iter()
            .map(|t| Term {
                coefficient: t.coefficient.with_precision(precision),
                center: t.center,
            })
            .collect();
        let centers_real = terms
            .iter()
            .map(|t| AdjustableReal::from_rational(&t.center, precision))
            .collect();
        let c_squared = AdjustableReal::from_rational(&params.c_squared(), precision);
        Ok(Self {
            params,
            terms,
            interval,
            precision,
            centers_real,
            c_squared,
        })
    }

    pub fn params(&self) -> &MultiquadricParams {
        &self.params
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The same approximant with every coefficient re-rounded to `precision`.
    pub fn with_precision(&self, precision: u32) -> Self {
        Self::new(self.params.clone(), self.terms.clone(), self.interval, precision)
            .expect("already validated")
    }

    pub fn evaluate_real(&self, x: &AdjustableReal) -> AdjustableReal {
        let p = self.precision;
        let x = x.with_precision(p.max(x.precision()));
        self.terms
            .iter()
            .zip(&self.centers_real)
            .fold(AdjustableReal::zero(p), |acc, (term, y)| {
                let phi = multiquadric_with_c2(self.params.k(), &(&x - y), &self.c_squared, p);
                &acc + &(&term.coefficient * &phi)
            })
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.evaluate_real(&AdjustableReal::from_f64(x, self.precision)).to_f64()
    }

    /// `target - self(x)` formed at the stored precision, then rounded once.
    pub fn residual(&self, x: f64, target: f64) -> f64 {
        let t = AdjustableReal::from_f64(target, self.precision);
        (&t - &self.evaluate_real(&AdjustableReal::from_f64(x, self.precision))).to_f64()
    }
}
