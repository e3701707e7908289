//! Recovering expansion polynomials, and then arbitrary polynomials, from
//! combinations of far-away translates.

use num_traits::Zero;

use super::{Approximant, Interval, Term};
use crate::centers::{select_centers, CenterSet, ScatteredSequence};
use crate::error::{Error, Result};
use crate::expansion::{ExpansionTable, MultiquadricParams};
use crate::poly::RationalPolynomial;
use crate::scalar::{required_precision_bits, to_f64, AdjustableReal, ExactRational};
use crate::vandermonde::{solve_weights_exact, system_size};

fn check_threshold(params: &MultiquadricParams, interval: &Interval, y1: &ExactRational) -> Result<()> {
    let threshold = interval.convergence_threshold(params);
    if y1 < &threshold {
        return Err(Error::BelowConvergenceThreshold {
            y: to_f64(y1),
            threshold: to_f64(&threshold),
        });
    }
    Ok(())
}

fn planned_precision(params: &MultiquadricParams, n: usize, centers: &CenterSet) -> u32 {
    let y_max = centers.last().map_or(1.0, to_f64);
    required_precision_bits(params.k(), n, y_max)
}

/// `sum_j b_j phi_k(x - y_j)` with the modified Vandermonde weights, which
/// equals `A_{k,2k+N}(x) + O(1/y_1)` on the interval.
pub fn recover_expansion_polynomial(
    params: &MultiquadricParams,
    n: usize,
    centers: &CenterSet,
    interval: Interval,
    precision: Option<u32>,
) -> Result<Approximant> {
    let wv = solve_weights_exact(centers, params.k(), n)?;
    check_threshold(params, &interval, centers.first().expect("non-empty system"))?;
    let precision = precision.unwrap_or_else(|| planned_precision(params, n, centers));
    let terms = centers
        .as_slice()
        .iter()
        .zip(&wv.weights)
        .map(|(y, b)| Term {
            center: y.clone(),
            coefficient: AdjustableReal::from_rational(b, precision),
        })
        .collect();
    Approximant::new(params.clone(), terms, interval, precision)
}

/// Coefficients `c_N` with `p = sum_{N=0}^{deg p} c_N A_{k,2k+N}`, by
/// back-substitution from the top degree.
pub fn a_basis_decompose(params: &MultiquadricParams, p: &RationalPolynomial) -> Vec<ExactRational> {
    decompose_with(&ExpansionTable::new(params.clone()), p)
}

pub(crate) fn decompose_with(table: &ExpansionTable, p: &RationalPolynomial) -> Vec<ExactRational> {
    let Some(degree) = p.degree() else {
        return Vec::new();
    };
    let two_k = table.params().two_k();
    let mut rest = p.clone();
    let mut out = vec![ExactRational::zero(); degree + 1];
    for n in (0..=degree).rev() {
        let basis = table.get(two_k + n);
        debug_assert_eq!(basis.degree(), Some(n));
        let c = rest.coeff(n) / basis.leading();
        if !c.is_zero() {
            rest = &rest - &basis.scale(&c);
        }
        out[n] = c;
    }
    debug_assert!(rest.is_zero());
    out
}

/// Combines the recovery sums for each `A_{k,2k+N}` in the decomposition of `p`,
/// using nested prefixes of one doubling center set starting at `y_min`.
pub fn approximate_polynomial(
    params: &MultiquadricParams,
    p: &RationalPolynomial,
    interval: Interval,
    seq: &ScatteredSequence,
    y_min: &ExactRational,
    precision: Option<u32>,
) -> Result<Approximant> {
    approximate_polynomial_with(params, p, interval, seq, y_min, |planned| {
        precision.unwrap_or(planned)
    })
}

/// As [`approximate_polynomial`], with the working precision chosen from the planned one.
pub(crate) fn approximate_polynomial_with(
    params: &MultiquadricParams,
    p: &RationalPolynomial,
    interval: Interval,
    seq: &ScatteredSequence,
    y_min: &ExactRational,
    choose_precision: impl Fn(u32) -> u32,
) -> Result<Approximant> {
    check_threshold(params, &interval, y_min)?;
    let decomposition = a_basis_decompose(params, p);
    let Some(top) = decomposition.len().checked_sub(1) else {
        return Approximant::new(params.clone(), Vec::new(), interval, choose_precision(64));
    };
    let centers = select_centers(seq, system_size(params.k(), top), y_min)?;
    let mut coeffs = vec![ExactRational::zero(); centers.len()];
    for (n, c_n) in decomposition.iter().enumerate() {
        if c_n.is_zero() {
            continue;
        }
        let prefix = centers.prefix(system_size(params.k(), n));
        let wv = solve_weights_exact(&prefix, params.k(), n)?;
        for (acc, b) in coeffs.iter_mut().zip(&wv.weights) {
            *acc += c_n * b;
        }
    }
    // centers past the largest N with c_N != 0 carry no weight
    let used = decomposition
        .iter()
        .rposition(|c| !c.is_zero())
        .map_or(0, |n| system_size(params.k(), n));
    let precision = choose_precision(planned_precision(params, top, &centers));
    let terms = centers.as_slice()[..used]
        .iter()
        .zip(coeffs)
        .map(|(y, a)| Term {
            center: y.clone(),
            coefficient: AdjustableReal::from_rational(&a, precision),
        })
        .collect();
    Approximant::new(params.clone(), terms, interval, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::expansion_polynomial;
    use crate::scalar::{integer, rational};

    fn params() -> MultiquadricParams {
        MultiquadricParams::new(1, integer(1)).unwrap()
    }

    fn unit() -> Interval {
        Interval::new(0.0, 1.0).unwrap()
    }

    #[test]
    fn decomposition_examples() {
        let p = params();
        assert_eq!(a_basis_decompose(&p, &RationalPolynomial::constant(integer(1))), vec![integer(2)]);
        assert_eq!(a_basis_decompose(&p, &RationalPolynomial::x()), vec![integer(0), integer(2)]);
        assert!(a_basis_decompose(&p, &RationalPolynomial::zero()).is_empty());
        let k2 = MultiquadricParams::new(2, rational(1, 2)).unwrap();
        let basis = expansion_polynomial(&k2, 4 + 3);
        assert_eq!(
            a_basis_decompose(&k2, &basis),
            vec![integer(0), integer(0), integer(0), integer(1)]
        );
    }

    #[test]
    fn recovery_matches_oracle_value() {
        let centers = CenterSet::new(vec![integer(8), integer(16), integer(32)]).unwrap();
        let appr = recover_expansion_polynomial(&params(), 0, &centers, unit(), None).unwrap();
        assert_eq!(appr.precision(), 79);
        // 64/3 sqrt(65) - 32 sqrt(257) + 32/3 sqrt(1025)
        assert!((appr.evaluate(0.0) - 0.495_765_953).abs() < 1e-8);
    }

    #[test]
    fn recovery_rejects_near_centers() {
        let centers = CenterSet::new(vec![integer(4), integer(8), integer(16)]).unwrap();
        let r = recover_expansion_polynomial(&params(), 0, &centers, unit(), None);
        assert!(matches!(r, Err(Error::BelowConvergenceThreshold { .. })));
    }

    #[test]
    fn polynomial_structure() {
        let lattice = ScatteredSequence::integer_lattice();
        let one = approximate_polynomial(
            &params(),
            &RationalPolynomial::constant(integer(1)),
            unit(),
            &lattice,
            &integer(8),
            None,
        )
        .unwrap();
        assert_eq!(one.len(), 3);
        let x = approximate_polynomial(&params(), &RationalPolynomial::x(), unit(), &lattice, &integer(8), None)
            .unwrap();
        let centers: Vec<_> = x.terms().iter().map(|t| t.center.clone()).collect();
        assert_eq!(centers, vec![integer(8), integer(16), integer(32), integer(64)]);
        let zero = approximate_polynomial(&params(), &RationalPolynomial::zero(), unit(), &lattice, &integer(8), None)
            .unwrap();
        assert!(zero.is_empty());
        assert_eq!(zero.evaluate(0.5), 0.0);
    }
}
