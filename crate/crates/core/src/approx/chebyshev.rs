//! Chebyshev interpolation as the polynomial stand-in for a continuous target.

use std::f64::consts::PI;

use num_traits::Zero;

use super::{Interval, TargetFunction};
use crate::error::Result;
use crate::poly::RationalPolynomial;
use crate::scalar::{from_f64, ExactRational};

/// The `n + 1` Chebyshev points of the first kind on `[a, b]`, descending
/// in the reference variable `t = cos(theta)`, paired with `theta`.
pub fn chebyshev_nodes(interval: Interval, n: usize) -> Vec<(f64, f64)> {
    let mid = 0.5 * (interval.a() + interval.b());
    let half = 0.5 * interval.length();
    (0..=n)
        .map(|i| {
            let theta = PI * (2 * i + 1) as f64 / (2 * (n + 1)) as f64;
            // sin form is exactly antisymmetric and exactly zero at the middle node
            let t = (PI * (n as f64 - 2.0 * i as f64) / (2 * (n + 1)) as f64).sin();
            (mid + half * t, theta)
        })
        .collect()
}

/// Interpolant of `f` at the Chebyshev points, expanded exactly in the monomial basis.
///
/// The Chebyshev coefficients are computed in `f64` and taken as exact
/// rationals; the change of basis and of variable are exact.
pub fn chebyshev_proxy(f: &TargetFunction, interval: Interval, n: usize) -> Result<RationalPolynomial> {
    let nodes = chebyshev_nodes(interval, n);
    let values = nodes
        .iter()
        .map(|&(x, _)| f.eval(x))
        .collect::<Result<Vec<_>>>()?;
    let scale = 2.0 / (n + 1) as f64;
    let cheb: Vec<f64> = (0..=n)
        .map(|m| {
            let s: f64 = nodes
                .iter()
                .zip(&values)
                .map(|(&(_, theta), v)| v * (m as f64 * theta).cos())
                .sum();
            if m == 0 {
                0.5 * scale * s
            } else {
                scale * s
            }
        })
        .collect();

    // sum_m cheb[m] T_m(t), with T_{m+1} = 2t T_m - T_{m-1}
    let two_t = RationalPolynomial::monomial(ExactRational::from_integer(2.into()), 1);
    let mut prev = RationalPolynomial::constant(ExactRational::from_integer(1.into()));
    let mut cur = RationalPolynomial::x();
    let mut in_t = RationalPolynomial::zero();
    for (m, c) in cheb.iter().enumerate() {
        let c = from_f64(*c).expect("finite coefficient");
        if c.is_zero() {
            continue;
        }
        let t_m = match m {
            0 => prev.clone(),
            1 => cur.clone(),
            _ => {
                while degree_of(&cur) < m {
                    let next = &(&two_t * &cur) - &prev;
                    prev = std::mem::replace(&mut cur, next);
                }
                cur.clone()
            }
        };
        in_t = &in_t + &t_m.scale(&c);
    }

    // t = (2x - a - b) / (b - a)
    let a = from_f64(interval.a()).expect("finite");
    let b = from_f64(interval.b()).expect("finite");
    let width = &b - &a;
    let alpha = ExactRational::from_integer(2.into()) / &width;
    let beta = -(&a + &b) / &width;
    Ok(in_t.compose_affine(&alpha, &beta))
}

fn degree_of(p: &RationalPolynomial) -> usize {
    p.degree().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::proxy_sup_error;
    use crate::scalar::to_f64;

    #[test]
    fn reproduces_quadratic() {
        let f = TargetFunction::from_fn("x^2", |x| x * x);
        let p = chebyshev_proxy(&f, Interval::new(-1.0, 3.0).unwrap(), 2).unwrap();
        assert_eq!(p.degree(), Some(2));
        for (i, want) in [0.0, 0.0, 1.0].iter().enumerate() {
            assert!((to_f64(&p.coeff(i)) - want).abs() < 1e-14, "{p}");
        }
    }

    #[test]
    fn degree_zero_is_midpoint_value() {
        let f = TargetFunction::from_fn("exp", f64::exp);
        let p = chebyshev_proxy(&f, Interval::new(0.0, 1.0).unwrap(), 0).unwrap();
        assert_eq!(p, RationalPolynomial::constant(from_f64(0.5f64.exp()).unwrap()));
    }

    #[test]
    fn exp_degree_eight() {
        let f = TargetFunction::from_fn("exp", f64::exp);
        let unit = Interval::new(0.0, 1.0).unwrap();
        let p = chebyshev_proxy(&f, unit, 8).unwrap();
        assert!(proxy_sup_error(&p, &f, unit, 2049).unwrap() < 1e-6);
    }

    #[test]
    fn nodes_are_symmetric() {
        let nodes = chebyshev_nodes(Interval::new(-1.0, 1.0).unwrap(), 4);
        assert_eq!(nodes[2].0, 0.0);
        assert_eq!(nodes[0].0, -nodes[4].0);
    }
}
