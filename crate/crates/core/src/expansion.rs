//! Large-`y` expansion of the generalized multiquadric.
//!
//! For `y` large, `phi_k(x - y) = y^(2k-1) * sum_j A_{k,j}(x) / y^j` where the
//! `A_{k,j}` are polynomials in `x` with exact rational coefficients.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;
use crate::scalar::{binomial, half_integer_binomial, AdjustableReal, ExactRational};

/// Order `k` and shape parameter `c` of `phi_k(t) = (t^2 + c^2)^(k - 1/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ParamsRepr", into = "ParamsRepr")]
pub struct MultiquadricParams {
    k: u32,
    c: ExactRational,
}

#[derive(Serialize, Deserialize)]
struct ParamsRepr {
    k: u32,
    c: String,
}

impl TryFrom<ParamsRepr> for MultiquadricParams {
    type Error = Error;
    fn try_from(r: ParamsRepr) -> Result<Self> {
        MultiquadricParams::new(r.k, crate::scalar::parse_rational(&r.c)?)
    }
}

impl From<MultiquadricParams> for ParamsRepr {
    fn from(p: MultiquadricParams) -> Self {
        ParamsRepr {
            k: p.k,
            c: crate::scalar::format_exact(&p.c),
        }
    }
}

impl MultiquadricParams {
    pub fn new(k: u32, c: ExactRational) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("order k must be >= 1".into()));
        }
        if !c.is_positive() {
            return Err(Error::InvalidParameter(format!("shape parameter c = {c} must be > 0")));
        }
        Ok(Self { k, c })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn c(&self) -> &ExactRational {
        &self.c
    }

    pub fn c_squared(&self) -> ExactRational {
        &self.c * &self.c
    }

    /// `2k` as an index into the expansion family.
    pub fn two_k(&self) -> usize {
        2 * self.k as usize
    }
}

fn pow2(e: i64) -> ExactRational {
    if e >= 0 {
        ExactRational::from_integer(BigInt::from(1) << e as usize)
    } else {
        ExactRational::new(BigInt::from(1), BigInt::from(1) << (-e) as usize)
    }
}

fn c_pow2l(params: &MultiquadricParams, l: usize) -> ExactRational {
    num_traits::pow(params.c_squared(), l)
}

/// `A_{k,j}(x)` from the triple sum
/// `(-1)^j sum_{n=ceil(j/2)}^{j} sum_{l=0}^{j-n} C(k-1/2,n) C(n,j-n) C(j-n,l) 2^(2n-j) c^(2l) x^(j-2l)`.
pub fn expansion_polynomial(params: &MultiquadricParams, j: usize) -> RationalPolynomial {
    let mut coeffs = vec![ExactRational::zero(); j + 1];
    for n in j.div_ceil(2)..=j {
        let outer = half_integer_binomial(params.k, n)
            * ExactRational::from_integer(binomial(n, j - n))
            * pow2(2 * n as i64 - j as i64);
        for l in 0..=(j - n) {
            coeffs[j - 2 * l] +=
                &outer * ExactRational::from_integer(binomial(j - n, l)) * c_pow2l(params, l);
        }
    }
    let p = RationalPolynomial::new(coeffs);
    if j % 2 == 1 {
        p.scale(&-ExactRational::from_integer(1.into()))
    } else {
        p
    }
}

/// Coefficient of `x^(j-2l)` in `A_{k,j}`, from the regrouped sum
/// `(-1)^j c^(2l) sum_{n=ceil(j/2)}^{j-l} C(k-1/2,n) C(n,j-n) C(j-n,l) 2^(2n-j)`.
pub fn coefficient(params: &MultiquadricParams, j: usize, l: usize) -> Result<ExactRational> {
    if l > j / 2 {
        return Err(Error::IndexOutOfRange { index: l, max: j / 2 });
    }
    let mut inner = ExactRational::zero();
    for n in j.div_ceil(2)..=(j - l) {
        inner += half_integer_binomial(params.k, n)
            * ExactRational::from_integer(binomial(n, j - n) * binomial(j - n, l))
            * pow2(2 * n as i64 - j as i64);
    }
    let value = inner * c_pow2l(params, l);
    Ok(if j % 2 == 1 { -value } else { value })
}

fn check_lemma_range(params: &MultiquadricParams, j: usize) -> Result<()> {
    if j < params.two_k() {
        return Err(Error::OrderBelowLemmaRange { j, two_k: params.two_k() });
    }
    Ok(())
}

/// `c^(2k) C(k-1/2, k)`, the leading coefficient of every `A_{k,j}` with `j >= 2k`.
pub fn lemma_leading_value(params: &MultiquadricParams) -> ExactRational {
    c_pow2l(params, params.k as usize) * half_integer_binomial(params.k, params.k as usize)
}

/// Coefficient of `x^(j-2k)` in `A_{k,j}`; requires `j >= 2k`.
pub fn leading_coefficient(params: &MultiquadricParams, j: usize) -> Result<ExactRational> {
    check_lemma_range(params, j)?;
    coefficient(params, j, params.k as usize)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    /// `zero_checks[l]` holds iff the `x^(j-2l)` coefficient vanishes, for `l < k`.
    pub zero_checks: Vec<bool>,
    /// The `x^(j-2k)` coefficient has magnitude `c^(2k) C(k-1/2,k)`.
    pub leading_match: bool,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.leading_match && self.zero_checks.iter().all(|&z| z)
    }
}

pub fn verify_coefficient_lemma(params: &MultiquadricParams, j: usize) -> Result<LemmaReport> {
    check_lemma_range(params, j)?;
    let zero_checks = (0..params.k as usize)
        .map(|l| coefficient(params, j, l).map(|c| c.is_zero()))
        .collect::<Result<Vec<_>>>()?;
    let leading = coefficient(params, j, params.k as usize)?;
    Ok(LemmaReport {
        zero_checks,
        leading_match: leading.abs() == lemma_leading_value(params),
    })
}

/// `(t^2 + c^2)^(k-1/2)` as an integer power times a square root.
pub fn multiquadric_eval(
    params: &MultiquadricParams,
    t: &AdjustableReal,
    precision: u32,
) -> AdjustableReal {
    let c2 = AdjustableReal::from_rational(&params.c_squared(), precision);
    multiquadric_with_c2(params.k, t, &c2, precision)
}

pub(crate) fn multiquadric_with_c2(
    k: u32,
    t: &AdjustableReal,
    c2: &AdjustableReal,
    precision: u32,
) -> AdjustableReal {
    let t = t.with_precision(precision.max(t.precision()));
    let base = &(&t * &t) + c2;
    let root = base.checked_sqrt().expect("t^2 + c^2 is positive");
    if k == 1 {
        root
    } else {
        base.powi(k - 1) * root
    }
}

/// Smallest `y` for which the truncated expansion at `x` is admissible: `4(|x| + c)`.
pub fn convergence_threshold(params: &MultiquadricParams, x: &AdjustableReal) -> AdjustableReal {
    let c = AdjustableReal::from_rational(params.c(), x.precision());
    let four = AdjustableReal::from_integer(4, x.precision());
    &four * &(&x.abs() + &c)
}

/// Write-once memo of `A_{k,j}` for one parameter set.
#[derive(Debug)]
pub struct ExpansionTable {
    params: MultiquadricParams,
    polys: RwLock<Vec<RationalPolynomial>>,
}

impl ExpansionTable {
    pub fn new(params: MultiquadricParams) -> Self {
        Self {
            params,
            polys: RwLock::new(Vec::new()),
        }
    }

    pub fn params(&self) -> &MultiquadricParams {
        &self.params
    }

    pub fn get(&self, j: usize) -> RationalPolynomial {
        if let Some(p) = self.polys.read().expect("poisoned").get(j) {
            return p.clone();
        }
        let mut polys = self.polys.write().expect("poisoned");
        while polys.len() <= j {
            let next = expansion_polynomial(&self.params, polys.len());
            polys.push(next);
        }
        polys[j].clone()
    }

    /// `y^(2k-1) sum_{j=0}^{J} A_{k,j}(x) / y^j`, rejecting `y < 4(|x| + c)`.
    pub fn truncated_eval(
        &self,
        x: &AdjustableReal,
        y: &AdjustableReal,
        terms: usize,
        precision: u32,
    ) -> Result<AdjustableReal> {
        let x = x.with_precision(precision);
        let y = y.with_precision(precision);
        let threshold = convergence_threshold(&self.params, &x);
        if y < threshold {
            return Err(Error::BelowConvergenceThreshold {
                y: y.to_f64(),
                threshold: threshold.to_f64(),
            });
        }
        let inv_y = &AdjustableReal::from_integer(1, precision) / &y;
        let mut sum = AdjustableReal::zero(precision);
        for j in (0..=terms).rev() {
            sum = &(&sum * &inv_y) + &self.get(j).eval_real(&x, precision);
        }
        Ok(sum * y.powi(2 * self.params.k - 1))
    }
}

pub fn truncated_expansion_eval(
    params: &MultiquadricParams,
    x: &AdjustableReal,
    y: &AdjustableReal,
    terms: usize,
    precision: u32,
) -> Result<AdjustableReal> {
    ExpansionTable::new(params.clone()).truncated_eval(x, y, terms, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{integer, rational};

    fn params(k: u32, c: ExactRational) -> MultiquadricParams {
        MultiquadricParams::new(k, c).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(MultiquadricParams::new(0, integer(1)).is_err());
        assert!(MultiquadricParams::new(1, integer(0)).is_err());
        assert!(MultiquadricParams::new(1, rational(-1, 2)).is_err());
    }

    #[test]
    fn low_order_polynomials() {
        let p = params(1, integer(1));
        assert_eq!(expansion_polynomial(&p, 0), RationalPolynomial::constant(integer(1)));
        assert_eq!(expansion_polynomial(&p, 1), RationalPolynomial::monomial(integer(-1), 1));
        assert_eq!(expansion_polynomial(&p, 2), RationalPolynomial::constant(rational(1, 2)));
        assert_eq!(expansion_polynomial(&p, 3), RationalPolynomial::monomial(rational(1, 2), 1));
        let p2 = params(2, integer(1));
        assert_eq!(expansion_polynomial(&p2, 4), RationalPolynomial::constant(rational(3, 8)));
    }

    #[test]
    fn coefficient_examples() {
        let p = params(1, integer(1));
        assert_eq!(coefficient(&p, 2, 1).unwrap(), rational(1, 2));
        assert_eq!(coefficient(&p, 2, 0).unwrap(), integer(0));
        assert_eq!(coefficient(&params(2, integer(1)), 4, 2).unwrap(), rational(3, 8));
        assert_eq!(
            coefficient(&p, 3, 2),
            Err(Error::IndexOutOfRange { index: 2, max: 1 })
        );
    }

    #[test]
    fn leading_coefficient_examples() {
        let p = params(1, integer(1));
        assert_eq!(leading_coefficient(&p, 2).unwrap(), rational(1, 2));
        assert_eq!(leading_coefficient(&p, 3).unwrap(), rational(1, 2));
        assert_eq!(leading_coefficient(&params(2, integer(1)), 4).unwrap(), rational(3, 8));
        assert!(leading_coefficient(&p, 1).is_err());
    }

    #[test]
    fn lemma_report_examples() {
        assert!(verify_coefficient_lemma(&params(1, integer(1)), 2).unwrap().passed());
        let r = verify_coefficient_lemma(&params(2, integer(1)), 4).unwrap();
        assert_eq!(r.zero_checks, vec![true, true]);
        assert!(r.leading_match);
        assert_eq!(
            verify_coefficient_lemma(&params(1, integer(1)), 1),
            Err(Error::OrderBelowLemmaRange { j: 1, two_k: 2 })
        );
    }

    #[test]
    fn multiquadric_examples() {
        let one = integer(1);
        let zero = AdjustableReal::zero(64);
        assert_eq!(multiquadric_eval(&params(1, one.clone()), &zero, 64).to_f64(), 1.0);
        assert_eq!(multiquadric_eval(&params(2, one.clone()), &zero, 64).to_f64(), 1.0);
        let root3 = AdjustableReal::from_integer(3, 128).checked_sqrt().unwrap();
        let v = multiquadric_eval(&params(1, one), &root3, 128);
        assert!((v.to_f64() - 2.0).abs() < 1e-30);
    }

    #[test]
    fn truncated_examples() {
        let p = params(1, integer(1));
        let zero = AdjustableReal::zero(64);
        let y = AdjustableReal::from_integer(64, 64);
        let v = truncated_expansion_eval(&p, &zero, &y, 2, 128).unwrap();
        assert_eq!(v.to_rational(), rational(8193, 128));
        let y8 = AdjustableReal::from_integer(8, 64);
        assert_eq!(truncated_expansion_eval(&p, &zero, &y8, 0, 64).unwrap().to_f64(), 8.0);
        let one = AdjustableReal::from_integer(1, 64);
        let y2 = AdjustableReal::from_integer(2, 64);
        assert!(matches!(
            truncated_expansion_eval(&p, &one, &y2, 5, 64),
            Err(Error::BelowConvergenceThreshold { .. })
        ));
    }

    #[test]
    fn table_memoizes_consistently() {
        let p = params(3, rational(1, 2));
        let table = ExpansionTable::new(p.clone());
        assert_eq!(table.get(9), expansion_polynomial(&p, 9));
        assert_eq!(table.get(4), expansion_polynomial(&p, 4));
    }

    #[test]
    fn params_serde() {
        let p = params(2, rational(1, 2));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"k":2,"c":"0.5"}"#);
        let back: MultiquadricParams = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<MultiquadricParams>(r#"{"k":0,"c":"1"}"#).is_err());
    }
}
