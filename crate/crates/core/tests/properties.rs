use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use multiquadric::approx::a_basis_decompose;
use multiquadric::centers::{select_centers, validate_separation};
use multiquadric::expansion::{coefficient, expansion_polynomial, ExpansionTable};
use multiquadric::scalar::{
    format_exact, from_f64, monic_odd_ratio, parse_rational, rational, rational_binomial,
};
use multiquadric::vandermonde::{closed_form_weights, sign_pattern_alternates, solve_weights_exact};
use multiquadric::{CenterSet, ExactRational, MultiquadricParams, RationalPolynomial, ScatteredSequence};

fn small_rational() -> impl Strategy<Value = ExactRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rational(n, d))
}

fn positive_rational() -> impl Strategy<Value = ExactRational> {
    (1i64..=30, 1i64..=6).prop_map(|(n, d)| rational(n, d))
}

fn params() -> impl Strategy<Value = MultiquadricParams> {
    (1u32..=4, positive_rational()).prop_map(|(k, c)| MultiquadricParams::new(k, c).unwrap())
}

fn polynomial(max_degree: usize) -> impl Strategy<Value = RationalPolynomial> {
    prop::collection::vec(small_rational(), 0..=max_degree + 1).prop_map(RationalPolynomial::new)
}

fn doubling_centers(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = CenterSet> {
    (positive_rational(), prop::collection::vec((0i64..=6, 1i64..=3), len)).prop_map(|(y0, steps)| {
        let mut y = y0;
        let mut out = Vec::new();
        for (n, d) in steps {
            out.push(y.clone());
            y *= rational(2, 1) + rational(n, d);
        }
        CenterSet::new(out).unwrap()
    })
}

proptest! {
    #[test]
    fn rational_field_axioms(a in small_rational(), b in small_rational(), c in small_rational()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, ExactRational::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * a.recip(), ExactRational::one());
        }
    }

    #[test]
    fn exact_text_round_trips(a in small_rational()) {
        prop_assert_eq!(parse_rational(&format_exact(&a)).unwrap(), a);
    }

    #[test]
    fn f64_conversion_is_exact(v in -1e6f64..1e6) {
        let r = from_f64(v).unwrap();
        prop_assert_eq!(multiquadric::scalar::to_f64(&r), v);
    }

    #[test]
    fn half_integer_binomials_obey_pascal(k in 1i64..=8, n in 1usize..=12) {
        let a = rational(2 * k - 1, 2);
        let below = &a - ExactRational::one();
        prop_assert_eq!(
            rational_binomial(&a, n),
            rational_binomial(&below, n) + rational_binomial(&below, n - 1)
        );
    }

    #[test]
    fn expansion_degree_and_parity(p in params(), j in 0usize..=16) {
        let a = expansion_polynomial(&p, j);
        if let Some(d) = a.degree() {
            prop_assert!(d <= j);
        }
        for (i, coeff) in a.coeffs().iter().enumerate() {
            prop_assert!(coeff.is_zero() || (j - i) % 2 == 0);
        }
        if j >= p.two_k() {
            prop_assert_eq!(a.degree(), Some(j - p.two_k()));
            prop_assert!(a.leading().is_positive());
        }
    }

    #[test]
    fn regrouped_coefficients_match_expansion(p in params(), j in 0usize..=14) {
        let a = expansion_polynomial(&p, j);
        let mut assembled = RationalPolynomial::zero();
        for l in 0..=j / 2 {
            assembled = &assembled + &RationalPolynomial::monomial(coefficient(&p, j, l).unwrap(), j - 2 * l);
        }
        prop_assert_eq!(assembled, a);
    }

    #[test]
    fn derivative_lowers_the_index(p in params(), j in 1usize..=14) {
        let lhs = expansion_polynomial(&p, j).derivative();
        let factor = rational(j as i64 - 2 * i64::from(p.k()), 1);
        prop_assert_eq!(lhs, expansion_polynomial(&p, j - 1).scale(&factor));
    }

    #[test]
    fn basis_decomposition_round_trips(p in params(), poly in polynomial(6)) {
        let table = ExpansionTable::new(p.clone());
        let coeffs = a_basis_decompose(&p, &poly);
        let mut back = RationalPolynomial::zero();
        for (n, c) in coeffs.iter().enumerate() {
            back = &back + &table.get(p.two_k() + n).scale(c);
        }
        prop_assert_eq!(back, poly);
    }

    #[test]
    fn jittered_lattice_keeps_its_separation(r in 0.0f64..0.49, seed in any::<u64>(), start in -100i64..100) {
        let seq = ScatteredSequence::jittered_lattice(r, seed).unwrap();
        let points = seq.points_from(&rational(start, 1), 40).unwrap();
        prop_assert!(validate_separation(&points, seq.declared_delta()).unwrap());
        prop_assert!(seq.declared_delta() <= &(ExactRational::one() - from_f64(2.0 * r).unwrap()));
        let again = ScatteredSequence::jittered_lattice(r, seed).unwrap();
        prop_assert_eq!(again.points_from(&rational(start, 1), 40).unwrap(), points);
    }

    #[test]
    fn selected_centers_at_least_double(r in 0.0f64..0.49, seed in any::<u64>(), y in 1i64..500, m in 1usize..=10) {
        let seq = ScatteredSequence::jittered_lattice(r, seed).unwrap();
        let set = select_centers(&seq, m, &rational(y, 1)).unwrap();
        prop_assert_eq!(set.len(), m);
        prop_assert!(set.as_slice()[0] >= rational(y, 1));
        for w in set.as_slice().windows(2) {
            prop_assert!(w[1] >= (&w[0] * rational(2, 1)));
        }
    }

    #[test]
    fn weights_solve_their_system(k in 1u32..=3, n in 0usize..=5, seed in doubling_centers(13..=13)) {
        let centers = seed.prefix(2 * k as usize + n + 1);
        let exact = solve_weights_exact(&centers, k, n).unwrap();
        prop_assert!(exact.satisfies_system());
        prop_assert!(sign_pattern_alternates(&exact.weights));
        prop_assert_eq!(closed_form_weights(&centers, k, n).unwrap().weights, exact.weights);
    }
}

#[test]
fn monic_odd_ratio_interpolates_a_monic_polynomial() {
    for m in 0..=8u64 {
        // forward differences of the samples at n = 0..=m+1
        let mut values: Vec<ExactRational> = (0..=m + 1).map(|n| monic_odd_ratio(n, m)).collect();
        for _ in 0..m {
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        let factorial: BigInt = (1..=m).map(BigInt::from).product();
        assert!(values.iter().all(|v| *v == ExactRational::from_integer(factorial.clone())), "m={m}");
    }
}
