//! Subcommands other than `verify`.

use std::path::PathBuf;

use clap::Args;

use multiquadric::approx::{
    approximate_function, approximate_polynomial, chebyshev_proxy, measure_errors,
    recover_expansion_polynomial, ApproxOptions, GridOptions,
};
use multiquadric::centers::select_centers;
use multiquadric::expansion::expansion_polynomial;
use multiquadric::scalar::{format_exact, from_f64, parse_rational, to_f64};
use multiquadric::vandermonde::{
    max_normalized_weight, normalized_weights, solve_weights_exact, within_uniform_bound,
    NORMALIZED_WEIGHT_BOUND,
};
use multiquadric::{CenterSet, ExactRational, MultiquadricParams, RationalPolynomial, TargetFunction};

use crate::config::{parse_list, parse_sequence, sci, Merged, RunArgs, Settings};
use crate::failure::{CliResult, Failure};

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    #[arg(long, default_value = "1")]
    pub c: String,
    /// Index of the expansion polynomial.
    #[arg(long)]
    pub j: usize,
}

pub fn expand(args: &ExpandArgs) -> CliResult<String> {
    let params = MultiquadricParams::new(args.k, parse_rational(&args.c)?)?;
    let a = expansion_polynomial(&params, args.j);
    Ok(format!("A[{},{}](x) = {a}\n", args.k, args.j))
}

#[derive(Args, Debug)]
pub struct WeightsArgs {
    #[arg(long, default_value_t = 1)]
    pub k: u32,
    /// Degree index: the system recovers A[k,2k+n].
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// Comma-separated centers, ascending and doubling.
    #[arg(long, conflicts_with = "y_min")]
    pub centers: Option<String>,
    /// Select 2k+n+1 doubling centers from `--sequence` starting here.
    #[arg(long)]
    pub y_min: Option<String>,
    #[arg(long, default_value = "lattice")]
    pub sequence: String,
}

pub fn weights(args: &WeightsArgs) -> CliResult<String> {
    let m = 2 * args.k as usize + args.n + 1;
    let centers = match (&args.centers, &args.y_min) {
        (Some(list), _) => CenterSet::new(parse_list(list)?)?,
        (None, Some(y)) => select_centers(&parse_sequence(&args.sequence)?, m, &parse_rational(y)?)?,
        (None, None) => return Err(Failure::Config("give --centers or --y-min".into())),
    };
    let wv = solve_weights_exact(&centers, args.k, args.n)?;
    let mut out = String::new();
    for (j, (y, b)) in centers.as_slice().iter().zip(&wv.weights).enumerate() {
        out += &format!("y_{} = {}  b_{} = {}\n", j + 1, format_exact(y), j + 1, format_exact(b));
    }
    for (j, c) in normalized_weights(&wv).iter().enumerate() {
        out += &format!("c_{} = {}  ({})\n", j + 1, format_exact(c), sci(to_f64(c)));
    }
    let ok = within_uniform_bound(&wv);
    out += &format!(
        "max |c_j| = {} < {NORMALIZED_WEIGHT_BOUND}: {}\n",
        sci(to_f64(&max_normalized_weight(&wv))),
        if ok { "ok" } else { "VIOLATED" }
    );
    if ok {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification("normalized weight bound".into()))
    }
}

fn start_y(settings: &Settings, y_min: &Option<String>) -> CliResult<ExactRational> {
    match y_min {
        Some(y) => Ok(parse_rational(y)?),
        None => Ok(settings.interval.convergence_threshold(&settings.params).ceil()),
    }
}

fn grid_options(settings: &Settings) -> GridOptions {
    GridOptions {
        points: settings.grid_points,
        threads: settings.threads,
    }
}

fn polynomial_target(p: RationalPolynomial) -> TargetFunction {
    TargetFunction::new(p.to_string(), move |x| {
        from_f64(x)
            .map(|xq| to_f64(&p.eval(&xq)))
            .ok_or_else(|| "non-finite abscissa".to_string())
    })
}

#[derive(Args, Debug)]
pub struct RecoverArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    /// First y_min; defaults to the convergence threshold.
    #[arg(long)]
    pub y_min: Option<String>,
    /// Number of doublings after the first row.
    #[arg(long, default_value_t = 4)]
    pub steps: usize,
}

/// Defect of the recovered expansion polynomial, one CSV row per y_min.
pub fn recover(args: &RecoverArgs) -> CliResult<String> {
    let merged = Merged::new(args.run.clone())?;
    let s = merged.settings()?;
    let k = s.params.k();
    let target = expansion_polynomial(&s.params, 2 * k as usize + args.n);
    let f = polynomial_target(target.clone());
    let mut y = start_y(&s, &args.y_min)?;
    let mut out = String::from("y1,sup_defect,l2_defect,ratio\n");
    let mut previous: Option<f64> = None;
    for _ in 0..=args.steps {
        let centers = select_centers(&s.sequence, 2 * k as usize + args.n + 1, &y)?;
        let appr = recover_expansion_polynomial(&s.params, args.n, &centers, s.interval, None)?;
        let report = measure_errors(&appr, &f, s.interval, &[2.0], grid_options(&s))?;
        let ratio = previous.map_or(String::new(), |p| sci(p / report.sup_error));
        out += &format!(
            "{},{},{},{ratio}\n",
            format_exact(centers.first().expect("non-empty")),
            sci(report.sup_error),
            sci(report.lp(2.0).expect("requested"))
        );
        previous = Some(report.sup_error);
        y *= ExactRational::from_integer(2.into());
    }
    Ok(out)
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// Target function of x, e.g. `exp(x)*sin(x)`.
    #[arg(long)]
    pub expr: Option<String>,
    #[arg(long, default_value_t = 1e-3)]
    pub epsilon: f64,
    /// Comma-separated L^p exponents.
    #[arg(long, default_value = "1,2,4")]
    pub lp: String,
    #[arg(long, default_value_t = 40)]
    pub max_doublings: usize,
    #[arg(long)]
    pub out_json: Option<PathBuf>,
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
}

fn parse_exponents(text: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::Config(format!("bad L^p exponent `{s}`")))
        })
        .collect()
}

pub fn approx(args: &ApproxArgs) -> CliResult<String> {
    let merged = Merged::new(args.run.clone())?;
    let cfg = &merged.config;
    let s = merged.settings()?;
    let expr = cfg
        .expr
        .clone()
        .or_else(|| args.expr.clone())
        .ok_or_else(|| Failure::Config("missing --expr".into()))?;
    let f = TargetFunction::from_expression(&expr)?;
    let epsilon = cfg.epsilon.unwrap_or(args.epsilon);
    let lp_exponents = match &cfg.lp {
        Some(v) => v.clone(),
        None => parse_exponents(&args.lp)?,
    };
    if epsilon.is_nan() || epsilon <= 0.0 {
        return Err(Failure::Config(format!("epsilon = {epsilon} must be > 0")));
    }
    if let Some(p) = lp_exponents.iter().find(|p| p.is_nan() || **p < 1.0) {
        return Err(Failure::Config(format!("L^p exponent {p} must be >= 1")));
    }
    let out_json = cfg.out_json.clone().or_else(|| args.out_json.clone());
    let out_csv = cfg.out_csv.clone().or_else(|| args.out_csv.clone());
    let options = ApproxOptions {
        grid_points: s.grid_points,
        lp_exponents,
        max_doublings: args.max_doublings,
        threads: s.threads,
        ..ApproxOptions::default()
    };
    let result = approximate_function(&f, s.interval, epsilon, &s.params, &s.sequence, &options)?;

    let mut csv = String::from("norm,error\n");
    csv += &format!("sup,{}\n", sci(result.report.sup_error));
    for (p, e) in &result.report.lp_errors {
        csv += &format!("l{p},{}\n", sci(*e));
    }
    if let Some(path) = &out_json {
        std::fs::write(path, result.approximant.to_json())?;
    }
    if let Some(path) = &out_csv {
        std::fs::write(path, &csv)?;
    }
    let mut out = format!(
        "target: {}\nproxy degree: {}\nproxy sup error: {}\ny_min: {} after {} doublings\nterms: {}\nprecision: {} bits\n",
        f.description(),
        result.proxy.degree().unwrap_or(0),
        sci(result.proxy_error),
        format_exact(&result.y_min),
        result.doublings,
        result.approximant.len(),
        result.approximant.precision(),
    );
    out += &csv;
    Ok(out)
}

#[derive(clap::ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepMode {
    /// Error against y_1 for a fixed proxy degree.
    Y1,
    /// Error against proxy degree for a fixed y_1.
    Degree,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long)]
    pub expr: Option<String>,
    #[arg(long, value_enum, default_value_t = SweepMode::Y1)]
    pub mode: SweepMode,
    /// Chebyshev proxy degree (y1 mode) or largest degree (degree mode).
    #[arg(long, default_value_t = 4)]
    pub degree: usize,
    /// First y_min; defaults to the convergence threshold.
    #[arg(long)]
    pub y_min: Option<String>,
    /// Number of doublings after the first row (y1 mode).
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
    #[arg(long)]
    pub out_csv: Option<PathBuf>,
}

pub fn sweep(args: &SweepArgs) -> CliResult<String> {
    let merged = Merged::new(args.run.clone())?;
    let cfg = &merged.config;
    let s = merged.settings()?;
    let expr = cfg
        .expr
        .clone()
        .or_else(|| args.expr.clone())
        .ok_or_else(|| Failure::Config("missing --expr".into()))?;
    let f = TargetFunction::from_expression(&expr)?;
    let out_csv = cfg.out_csv.clone().or_else(|| args.out_csv.clone());
    let y0 = start_y(&s, &args.y_min)?;

    let row = |degree: usize, y: &ExactRational| -> CliResult<(ExactRational, [f64; 3])> {
        let proxy = chebyshev_proxy(&f, s.interval, degree)?;
        let appr = approximate_polynomial(&s.params, &proxy, s.interval, &s.sequence, y, None)?;
        let y1 = appr.terms().first().map_or_else(|| y.clone(), |t| t.center.clone());
        let r = measure_errors(&appr, &f, s.interval, &[1.0, 2.0], grid_options(&s))?;
        Ok((y1, [r.sup_error, r.lp_errors[0].1, r.lp_errors[1].1]))
    };

    let mut csv = match args.mode {
        SweepMode::Y1 => String::from("y1,grid_sup_error,l1_error,l2_error\n"),
        SweepMode::Degree => String::from("degree,y1,grid_sup_error,l1_error,l2_error\n"),
    };
    match args.mode {
        SweepMode::Y1 => {
            let mut y = y0;
            for _ in 0..=args.steps {
                let (y1, [sup, l1, l2]) = row(args.degree, &y)?;
                csv += &format!("{},{},{},{}\n", format_exact(&y1), sci(sup), sci(l1), sci(l2));
                y *= ExactRational::from_integer(2.into());
            }
        }
        SweepMode::Degree => {
            for d in 0..=args.degree {
                let (y1, [sup, l1, l2]) = row(d, &y0)?;
                csv += &format!("{d},{},{},{},{}\n", format_exact(&y1), sci(sup), sci(l1), sci(l2));
            }
        }
    }
    if let Some(path) = &out_csv {
        std::fs::write(path, &csv)?;
    }
    Ok(csv)
}
