use multiquadric::approx::{
    a_basis_decompose, approximate_function, approximate_polynomial, grid, measure_errors,
    recover_expansion_polynomial, ApproxOptions, GridOptions,
};
use multiquadric::centers::select_centers;
use multiquadric::expansion::expansion_polynomial;
use multiquadric::scalar::{rational, required_precision_bits, to_f64};
use multiquadric::{
    Approximant, Error, Interval, MultiquadricParams, RationalPolynomial, ScatteredSequence,
    TargetFunction,
};
use num_traits::Signed;

fn unit() -> Interval {
    Interval::new(0.0, 1.0).unwrap()
}

fn params(k: u32) -> MultiquadricParams {
    MultiquadricParams::new(k, rational(1, 1)).unwrap()
}

#[test]
fn point_defect_falls_faster_than_sup_defect() {
    let params = params(1);
    let lattice = ScatteredSequence::integer_lattice();
    let mut at_zero = Vec::new();
    let mut sup = Vec::new();
    let half = TargetFunction::from_fn("1/2", |_| 0.5);
    for i in 0..5 {
        let centers = select_centers(&lattice, 3, &rational(8 << i, 1)).unwrap();
        let appr = recover_expansion_polynomial(&params, 0, &centers, unit(), None).unwrap();
        at_zero.push((appr.evaluate(0.0) - 0.5).abs());
        sup.push(measure_errors(&appr, &half, unit(), &[], GridOptions::default()).unwrap().sup_error);
    }
    for w in at_zero.windows(2) {
        let r = w[0] / w[1];
        assert!((3.5..=4.5).contains(&r), "point ratio {r}");
    }
    for w in sup.windows(2) {
        let r = w[0] / w[1];
        assert!((1.9..=2.2).contains(&r), "sup ratio {r}");
    }
}

#[test]
fn assembled_defect_is_bounded_by_its_parts() {
    let k = 2;
    let params = params(k);
    let p = RationalPolynomial::new(vec![rational(1, 1), rational(-2, 3), rational(0, 1), rational(5, 4)]);
    let seq = ScatteredSequence::integer_lattice();
    let y_min = rational(64, 1);
    let whole = approximate_polynomial(&params, &p, unit(), &seq, &y_min, None).unwrap();
    let coeffs = a_basis_decompose(&params, &p);
    let full = select_centers(&seq, 2 * k as usize + coeffs.len(), &y_min).unwrap();
    let parts: Vec<(f64, Approximant, RationalPolynomial)> = coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let centers = full.prefix(2 * k as usize + n + 1);
            let appr = recover_expansion_polynomial(&params, n, &centers, unit(), None).unwrap();
            (to_f64(&c.abs()), appr, expansion_polynomial(&params, 2 * k as usize + n))
        })
        .collect();
    for x in grid(unit(), 129) {
        let xr = multiquadric::scalar::from_f64(x).unwrap();
        let total = (whole.evaluate(x) - to_f64(&p.eval(&xr))).abs();
        let bound: f64 = parts
            .iter()
            .map(|(c, appr, a)| c * (appr.evaluate(x) - to_f64(&a.eval(&xr))).abs())
            .sum();
        assert!(total <= bound * (1.0 + 1e-9) + 1e-15, "x={x}: {total} > {bound}");
    }
}

#[test]
fn planned_precision_is_adequate() {
    for k in 1..=3 {
        let params = params(k);
        let p = RationalPolynomial::new(vec![rational(1, 3), rational(2, 7), rational(-1, 5)]);
        let seq = ScatteredSequence::integer_lattice();
        let appr = approximate_polynomial(&params, &p, unit(), &seq, &rational(4096, 1), None).unwrap();
        let wide = appr.with_precision(2 * appr.precision());
        for x in grid(unit(), 65) {
            let target = to_f64(&p.eval(&multiquadric::scalar::from_f64(x).unwrap()));
            let a = appr.residual(x, target);
            let b = wide.residual(x, target);
            assert!((a - b).abs() <= b.abs() * 2f64.powi(-40), "k={k} x={x}: {a} vs {b}");
        }
    }
}

#[test]
fn precision_plan_grows_with_the_centers() {
    assert!(required_precision_bits(2, 4, 1e6) > required_precision_bits(2, 4, 1e3));
    assert!(required_precision_bits(3, 4, 1e3) > required_precision_bits(2, 4, 1e3));
}

#[test]
fn approximant_json_round_trips_exactly() {
    let params = MultiquadricParams::new(2, rational(1, 2)).unwrap();
    let p = RationalPolynomial::new(vec![rational(1, 1), rational(1, 3)]);
    let seq = ScatteredSequence::jittered_lattice(0.2, 7).unwrap();
    let appr = approximate_polynomial(&params, &p, unit(), &seq, &rational(100, 1), None).unwrap();
    let back = Approximant::from_json(&appr.to_json()).unwrap();
    assert_eq!(back.terms(), appr.terms());
    assert_eq!(back.precision(), appr.precision());
    assert_eq!(back.params(), appr.params());
    for x in grid(unit(), 17) {
        assert_eq!(back.evaluate(x), appr.evaluate(x));
    }
}

#[test]
fn linear_target_needs_a_degree_one_proxy() {
    let f = TargetFunction::from_expression("x").unwrap();
    let seq = ScatteredSequence::integer_lattice();
    let out = approximate_function(&f, unit(), 1e-2, &params(1), &seq, &ApproxOptions::default()).unwrap();
    assert_eq!(out.proxy.degree(), Some(1));
    assert!(out.report.sup_error < 1e-2);
    assert!(out.report.satisfies_holder(unit(), 1e-9));
}

#[test]
fn nonpositive_epsilon_is_rejected() {
    let f = TargetFunction::from_fn("exp", f64::exp);
    let seq = ScatteredSequence::integer_lattice();
    for eps in [0.0, -1.0, f64::NAN] {
        let err = approximate_function(&f, unit(), eps, &params(1), &seq, &ApproxOptions::default());
        assert!(matches!(err, Err(Error::InvalidParameter(_))), "{eps}");
    }
}

#[test]
fn doubling_cap_is_reported() {
    let f = TargetFunction::from_fn("exp", f64::exp);
    let seq = ScatteredSequence::integer_lattice();
    let options = ApproxOptions { max_doublings: 1, ..ApproxOptions::default() };
    let err = approximate_function(&f, unit(), 1e-6, &params(1), &seq, &options);
    assert!(matches!(err, Err(Error::CapExceeded { .. })));
}

#[test]
fn centers_below_threshold_are_rejected() {
    let centers = select_centers(&ScatteredSequence::integer_lattice(), 3, &rational(5, 1)).unwrap();
    let err = recover_expansion_polynomial(&params(1), 0, &centers, unit(), None);
    assert!(matches!(err, Err(Error::BelowConvergenceThreshold { .. })));
}

#[test]
fn finite_list_runs_out() {
    let seq = ScatteredSequence::parse_list("# centers\n10\n20\n40\n").unwrap();
    assert!(matches!(select_centers(&seq, 4, &rational(8, 1)), Err(Error::Exhausted(_))));
}
