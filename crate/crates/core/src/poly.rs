//! Univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Signed, Zero};

use crate::scalar::{AdjustableReal, ExactRational};

/// Coefficients indexed by monomial degree; trailing zeros are always trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<ExactRational>,
}

impl RationalPolynomial {
    pub fn new(coeffs: Vec<ExactRational>) -> Self {
        let mut p = Self { coeffs };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(value: ExactRational) -> Self {
        Self::new(vec![value])
    }

    pub fn monomial(coeff: ExactRational, degree: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); degree + 1];
        coeffs[degree] = coeff;
        Self::new(coeffs)
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(ExactRational::one(), 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> ExactRational {
        self.coeffs.last().cloned().unwrap_or_else(ExactRational::zero)
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> ExactRational {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn eval(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at the given precision.
    pub fn eval_real(&self, x: &AdjustableReal, precision: u32) -> AdjustableReal {
        let mut acc = AdjustableReal::zero(precision);
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + AdjustableReal::from_rational(c, precision);
        }
        acc
    }

    pub fn scale(&self, factor: &ExactRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * ExactRational::from_integer(i.into()))
                .collect(),
        )
    }

    /// `p(alpha x + beta)`.
    pub fn compose_affine(&self, alpha: &ExactRational, beta: &ExactRational) -> Self {
        let inner = Self::new(vec![beta.clone(), alpha.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &inner) + &Self::constant(c.clone())
        })
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, rhs: Self) -> RationalPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, rhs: Self) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

/// Highest degree first, e.g. `1/2*x^2 - x + 3`.
impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let var = match deg {
                0 => String::new(),
                1 => "x".to_owned(),
                d => format!("x^{d}"),
            };
            match (deg, magnitude.is_one()) {
                (0, _) => write!(f, "{magnitude}")?,
                (_, true) => f.write_str(&var)?,
                (_, false) => write!(f, "{magnitude}*{var}")?,
            }
        }
        Ok(())
    }
}
