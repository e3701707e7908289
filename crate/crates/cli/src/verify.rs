//! Property suites runnable from the command line.

use clap::{Args, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use multiquadric::approx::{approximate_function, ApproxOptions};
use multiquadric::expansion::verify_coefficient_lemma;
use multiquadric::scalar::{alternating_binomial_sum, parse_rational, rational};
use multiquadric::vandermonde::{
    closed_form_weights, sign_pattern_alternates, solve_weights_exact, within_uniform_bound,
};
use multiquadric::{
    CenterSet, ExactRational, Interval, MultiquadricParams, RationalPolynomial, ScatteredSequence,
    TargetFunction,
};

use crate::failure::{CliResult, Failure};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Alternating binomial sums of polynomials.
    Lemma21,
    /// Vanishing and leading coefficients of the expansion polynomials.
    #[value(alias = "lemma")]
    Lemma41,
    /// Closed-form weights against the exact solve, sign pattern and bound.
    Vandermonde,
    /// L^p errors against the sup error of full approximations.
    Hoelder,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 4)]
    pub k_max: u32,
    /// Largest index j; defaults to 2k+12 for each k.
    #[arg(long)]
    pub j_max: Option<usize>,
    /// Largest N for the binomial sums.
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    /// Random cases per size.
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Comma-separated shape parameters for the coefficient suite.
    #[arg(long, default_value = "1,2,1/3")]
    pub c: String,
}

struct Tally {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, checks: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn line(&self) -> String {
        let status = if self.failures.is_empty() { "PASS" } else { "FAIL" };
        let mut s = format!("{status} {}: {} checks, {} failures", self.name, self.checks, self.failures.len());
        for f in self.failures.iter().take(5) {
            s += &format!("\n  {f}");
        }
        s
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> ExactRational {
    rational(rng.random_range(-20..=20), rng.random_range(1..=9))
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> RationalPolynomial {
    let mut coeffs: Vec<ExactRational> = (0..degree).map(|_| random_rational(rng)).collect();
    let lead = loop {
        let v = random_rational(rng);
        if v != rational(0, 1) {
            break v;
        }
    };
    coeffs.push(lead);
    RationalPolynomial::new(coeffs)
}

fn lemma21(args: &VerifyArgs) -> CliResult<Tally> {
    let mut t = Tally::new("lemma21");
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for n in 1..=args.n_max {
        let factorial: ExactRational = (1..=n as i64).map(|i| rational(i, 1)).product();
        for _ in 0..args.trials {
            let degree = rng.random_range(0..n);
            let low = random_poly(&mut rng, degree);
            let sum = alternating_binomial_sum(n, &low)?;
            t.check(sum == rational(0, 1), || format!("N={n} p={low}: {sum}"));
            let full = random_poly(&mut rng, n);
            let sign = if n % 2 == 0 { rational(1, 1) } else { rational(-1, 1) };
            let want = sign * full.leading() * &factorial;
            let sum = alternating_binomial_sum(n, &full)?;
            t.check(sum == want, || format!("N={n} p={full}: {sum} != {want}"));
        }
    }
    Ok(t)
}

fn lemma41(args: &VerifyArgs) -> CliResult<Tally> {
    let mut t = Tally::new("lemma41");
    let cs = args
        .c
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    for k in 1..=args.k_max {
        for c in &cs {
            let params = MultiquadricParams::new(k, c.clone())?;
            let j_max = args.j_max.unwrap_or(2 * k as usize + 12);
            for j in 2 * k as usize..=j_max {
                let report = verify_coefficient_lemma(&params, j)?;
                t.check(report.passed(), || format!("k={k} c={c} j={j}: {report:?}"));
            }
        }
    }
    Ok(t)
}

fn random_centers(rng: &mut ChaCha8Rng, m: usize) -> CenterSet {
    let mut y = rational(rng.random_range(1..=50), rng.random_range(1..=7));
    let mut ys = Vec::with_capacity(m);
    for _ in 0..m {
        ys.push(y.clone());
        y *= rational(2, 1) + rational(rng.random_range(0..=8), rng.random_range(1..=4));
    }
    CenterSet::new(ys).expect("doubling by construction")
}

fn vandermonde(args: &VerifyArgs) -> CliResult<Tally> {
    let mut t = Tally::new("vandermonde");
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for _ in 0..args.trials {
        let k = rng.random_range(1..=args.k_max.clamp(1, 3));
        let n = rng.random_range(0..=6usize);
        let centers = random_centers(&mut rng, 2 * k as usize + n + 1);
        let exact = solve_weights_exact(&centers, k, n)?;
        let closed = closed_form_weights(&centers, k, n)?;
        t.check(exact.weights == closed.weights, || format!("k={k} N={n}: closed form differs"));
        t.check(exact.satisfies_system(), || format!("k={k} N={n}: system residual"));
        t.check(sign_pattern_alternates(&exact.weights), || format!("k={k} N={n}: signs"));
        t.check(within_uniform_bound(&exact), || format!("k={k} N={n}: bound"));
    }
    Ok(t)
}

fn hoelder(args: &VerifyArgs) -> CliResult<Tally> {
    let mut t = Tally::new("hoelder");
    let interval = Interval::new(0.0, 1.0)?;
    let seq = ScatteredSequence::integer_lattice();
    let targets = [("exp(x)", 1e-3), ("sin(3*x)", 1e-3), ("1/(1+x^2)", 1e-2)];
    for k in 1..=args.k_max.clamp(1, 2) {
        let params = MultiquadricParams::new(k, rational(1, 1))?;
        for (expr, eps) in targets {
            let f = TargetFunction::from_expression(expr)?;
            let r = approximate_function(&f, interval, eps, &params, &seq, &ApproxOptions::default())?;
            t.check(r.report.sup_error < eps, || format!("k={k} {expr}: sup {}", r.report.sup_error));
            t.check(r.report.satisfies_holder(interval, 1e-9), || {
                format!("k={k} {expr}: {:?} vs sup {}", r.report.lp_errors, r.report.sup_error)
            });
        }
    }
    Ok(t)
}

pub fn verify(args: &VerifyArgs) -> CliResult<String> {
    let suites: &[Suite] = match args.suite {
        Suite::All => &[Suite::Lemma21, Suite::Lemma41, Suite::Vandermonde, Suite::Hoelder],
        ref one => std::slice::from_ref(one),
    };
    let mut lines = Vec::new();
    let mut failed = false;
    for suite in suites {
        let tally = match suite {
            Suite::Lemma21 => lemma21(args)?,
            Suite::Lemma41 => lemma41(args)?,
            Suite::Vandermonde => vandermonde(args)?,
            Suite::Hoelder => hoelder(args)?,
            Suite::All => unreachable!(),
        };
        failed |= !tally.failures.is_empty();
        lines.push(tally.line());
    }
    let out = lines.join("\n") + "\n";
    if failed {
        print!("{out}");
        Err(Failure::Verification("see failing suites above".into()))
    } else {
        Ok(out)
    }
}
