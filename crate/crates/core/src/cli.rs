//! Command-line front end: every operation with JSON in and JSON out.
//!
//! Exit codes: 0 success, 2 usage, 3 malformed input, 4 partition size cap,
//! 5 domain error. Errors go to stderr as `{"error": {...}}`.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::convolution::{boxplus, boxplus_power};
use crate::divisibility::{cramer_counterexample, cramer_epsilon, infinite_divisibility_report, real_rooted_threshold};
use crate::error::Error;
use crate::families::{clt_rescaled_sum, finite_poisson, hermite_clt, HermiteScaling};
use crate::freeprob::{convergence_report, FreeCumulantVector};
use crate::io::{parse_exact_input, CoefficientFormat, ExactInput, NamedVarPoly};
use crate::matrix_oracle::{mc_boxplus, MIN_SAMPLES};
use crate::partitions::{
    enumerate_noncrossing, enumerate_partitions, lattice_table, partition_lattice_charpoly, set_partition_cap,
    SetPartition,
};
use crate::polynomial::{MonicPoly, DEFAULT_ROOT_TOL};
use crate::rational::{format_rational, parse_rational, parse_rational_list, Rational};
use crate::transforms::{
    coefficients_from_cumulants, coefficients_from_moments, cumulants_from_coefficients, cumulants_from_moments,
    moments_from_coefficients, moments_from_cumulants, p_sigma, p_sigma_leading_coefficient, q_sigma,
    rescale_cumulants, truncated_r_transform,
};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;
pub const EXIT_SIZE_CAP: i32 = 4;
pub const EXIT_DOMAIN: i32 = 5;

/// MC acceptance gate: `|exact - mean| <= SIGMAS · stderr + FLOOR`.
const MC_SIGMAS: f64 = 5.0;
const MC_FLOOR: f64 = 0.02;

#[derive(Parser, Debug)]
#[command(name = "finfree", version, about = "Exact finite free convolution and cumulants")]
struct Cli {
    /// Largest n for sums over set partitions (default 12).
    #[arg(long, global = true)]
    nmax: Option<usize>,
    /// Root-finding tolerance for floating outputs.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Seed for Monte-Carlo commands.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// TOML file with any of the keys nmax, tol, seed. Flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Read polynomial "a" arrays as ordinary coefficients, highest power first.
    #[arg(long, global = true)]
    plain: bool,
    /// Polynomial given by its roots, e.g. "1,2,-1/2". Repeat for several inputs;
    /// these come after any positional inputs.
    #[arg(long = "roots", global = true, value_name = "LIST", allow_hyphen_values = true)]
    roots: Vec<String>,
    /// Also print numeric roots of polynomial results.
    #[arg(long, global = true)]
    with_roots: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// p ⊞_d q.
    Convolve(Inputs),
    /// p^{⊞_d t}.
    Power {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Finite free cumulants of a polynomial or a moment sequence.
    Cumulants {
        #[command(flatten)]
        inputs: Inputs,
        /// Report κ̃_n = (d)_n/d^n κ_n.
        #[arg(long)]
        rescaled: bool,
        /// Degree, for moment input without one.
        #[arg(long)]
        d: Option<usize>,
    },
    /// Moments of a polynomial or cumulant vector.
    Moments {
        #[command(flatten)]
        inputs: Inputs,
        /// Number of moments; defaults to the degree.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Polynomial from cumulants or moments.
    Coeffs {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        d: Option<usize>,
    },
    /// Truncated R-transform, a polynomial in s.
    Rtransform(Inputs),
    /// Named polynomial families.
    Family {
        kind: FamilyKind,
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, value_enum, default_value_t = ScalingArg::Unit)]
        scaling: ScalingArg,
        /// Number of summands for `clt`.
        #[arg(long)]
        n: Option<u64>,
    },
    /// |κ_n^{(d)} - r_n| for several degrees.
    Converge {
        /// Free cumulants r_1, r_2, ...
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long)]
        n: usize,
        /// Comma separated degrees.
        #[arg(long)]
        d: String,
    },
    /// Infinite divisibility report.
    CheckId(Inputs),
    /// Smallest t found with p^{⊞t} having distinct real roots.
    Threshold {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value = "1048576")]
        tmax: String,
        #[arg(long, default_value_t = 12)]
        steps: u32,
    },
    /// Two non-Hermite polynomials whose convolution is Hermite.
    Cramer {
        #[arg(long)]
        d: usize,
        #[arg(long, allow_hyphen_values = true)]
        eps: String,
        /// Treat --eps as an upper bound and bisect for a real-rooted pair.
        #[arg(long)]
        search: bool,
    },
    /// Monte-Carlo check of p ⊞_d q against random rotations.
    VerifyMc {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
    },
    /// Set-partition lattice statistics, and P_σ, Q_σ for a given σ.
    Partitions {
        #[arg(long)]
        n: Option<usize>,
        /// List every partition (or only non-crossing ones with --noncrossing).
        #[arg(long)]
        list: bool,
        #[arg(long)]
        noncrossing: bool,
        /// A partition such as "{1,3|2}"; prints P_σ(d) and Q_σ(d).
        #[arg(long)]
        sigma: Option<String>,
    },
}

#[derive(Args, Debug)]
struct Inputs {
    /// Inline JSON, a file path, or - for stdin.
    inputs: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyKind {
    Hermite,
    Poisson,
    /// Rescaled n-fold convolution of a centered input polynomial.
    Clt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScalingArg {
    Unit,
    Marcus,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Config {
    nmax: Option<usize>,
    tol: Option<f64>,
    seed: Option<u64>,
}

struct Settings {
    tol: f64,
    seed: u64,
    format: CoefficientFormat,
    roots: Vec<String>,
    with_roots: bool,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::SizeLimit { .. } => (EXIT_SIZE_CAP, "size_limit"),
            Error::Domain(_) => (EXIT_DOMAIN, "domain"),
            Error::NoConvergence { .. } => (EXIT_DOMAIN, "no_convergence"),
            Error::Parse(_) => (EXIT_MALFORMED, "malformed_input"),
            Error::Dimension(_) => (EXIT_MALFORMED, "dimension"),
            Error::Index(_) => (EXIT_MALFORMED, "index"),
            Error::NotMonic(_) => (EXIT_MALFORMED, "not_monic"),
        };
        Failure { code, kind, message: e.to_string() }
    }
}

fn malformed(msg: impl Into<String>) -> Failure {
    Failure { code: EXIT_MALFORMED, kind: "malformed_input", message: msg.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let f = Failure { code: EXIT_USAGE, kind: "usage", message: e.to_string().trim_end().to_string() };
            return report(&f, err);
        }
    };
    match execute(cli) {
        Ok(v) => {
            let _ = writeln!(out, "{v}");
            0
        }
        Err(f) => report(&f, err),
    }
}

fn report(f: &Failure, err: &mut dyn Write) -> i32 {
    let body = json!({ "error": { "kind": f.kind, "exit_code": f.code, "message": f.message } });
    let _ = writeln!(err, "{body}");
    f.code
}

fn settings(cli: &Cli) -> CliResult<Settings> {
    let cfg: Config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| malformed(format!("cannot read config {}: {e}", path.display())))?;
            toml::from_str(&text).map_err(|e| malformed(format!("bad config {}: {e}", path.display())))?
        }
        None => Config::default(),
    };
    if let Some(n) = cli.nmax.or(cfg.nmax) {
        set_partition_cap(n)?;
    }
    let tol = cli.tol.or(cfg.tol).unwrap_or(DEFAULT_ROOT_TOL);
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(malformed(format!("--tol must be positive, got {tol}")));
    }
    Ok(Settings {
        tol,
        seed: cli.seed.or(cfg.seed).unwrap_or(0),
        format: if cli.plain { CoefficientFormat::Plain } else { CoefficientFormat::Signed },
        roots: cli.roots.clone(),
        with_roots: cli.with_roots,
    })
}

fn read_source(src: &str) -> CliResult<String> {
    let t = src.trim_start();
    if t.starts_with('{') {
        return Ok(src.to_string());
    }
    if src == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| malformed(format!("cannot read stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(src).map_err(|e| malformed(format!("cannot read {src}: {e}")))
}

impl Settings {
    fn exact_inputs(&self, inputs: &Inputs) -> CliResult<Vec<ExactInput>> {
        let mut v = inputs
            .inputs
            .iter()
            .map(|s| Ok(parse_exact_input(&read_source(s)?, self.format)?))
            .collect::<CliResult<Vec<_>>>()?;
        for r in &self.roots {
            v.push(ExactInput::Poly(MonicPoly::from_roots(&parse_rational_list(r)?)?));
        }
        Ok(v)
    }

    fn exactly_one(&self, inputs: &Inputs) -> CliResult<ExactInput> {
        let mut v = self.exact_inputs(inputs)?;
        if v.len() != 1 {
            return Err(malformed(format!("expected one input, got {}", v.len())));
        }
        Ok(v.remove(0))
    }

    fn polys(&self, inputs: &Inputs, count: usize) -> CliResult<Vec<MonicPoly>> {
        let v = self.exact_inputs(inputs)?;
        if v.len() != count {
            return Err(malformed(format!("expected {count} polynomial input(s), got {}", v.len())));
        }
        v.into_iter()
            .map(|e| match e {
                ExactInput::Poly(p) => Ok(p),
                _ => Err(malformed("expected a polynomial object {\"degree\", \"a\"}")),
            })
            .collect()
    }

    fn poly(&self, inputs: &Inputs) -> CliResult<MonicPoly> {
        Ok(self.polys(inputs, 1)?.remove(0))
    }

    fn emit_poly(&self, p: &MonicPoly) -> CliResult<Value> {
        let mut v = to_value(p)?;
        if self.with_roots {
            let roots: Vec<[f64; 2]> = p.roots(self.tol)?.iter().map(|z| [z.re, z.im]).collect();
            v["roots"] = json!(roots);
        }
        Ok(v)
    }
}

fn to_value<T: Serialize>(x: &T) -> CliResult<Value> {
    serde_json::to_value(x).map_err(|e| Failure { code: 1, kind: "internal", message: e.to_string() })
}

fn rational_arg(name: &str, s: &str) -> CliResult<Rational> {
    parse_rational(s).map_err(|e| malformed(format!("--{name}: {e}")))
}

fn execute(cli: Cli) -> CliResult<Value> {
    let s = settings(&cli)?;
    match &cli.command {
        Command::Convolve(inputs) => {
            let ps = s.polys(inputs, 2)?;
            s.emit_poly(&boxplus(&ps[0], &ps[1])?)
        }
        Command::Power { inputs, t } => s.emit_poly(&boxplus_power(&s.poly(inputs)?, &rational_arg("t", t)?)?),
        Command::Cumulants { inputs, rescaled, d } => {
            let k = match s.exactly_one(inputs)? {
                ExactInput::Poly(p) => cumulants_from_coefficients(&p)?,
                ExactInput::Moments(m) => {
                    let d = d.or(m.degree()).ok_or_else(|| malformed("moment input needs a degree (--d)"))?;
                    cumulants_from_moments(&m, d)?
                }
                ExactInput::Cumulants(k) => k.to_standard(),
            };
            to_value(&if *rescaled { rescale_cumulants(&k) } else { k })
        }
        Command::Moments { inputs, count } => {
            let m = match s.exactly_one(inputs)? {
                ExactInput::Poly(p) => moments_from_coefficients(&p, count.unwrap_or(p.degree()))?,
                ExactInput::Cumulants(k) => moments_from_cumulants(&k, count.unwrap_or(k.d()))?,
                ExactInput::Moments(_) => return Err(malformed("input is already a moment sequence")),
            };
            to_value(&m)
        }
        Command::Coeffs { inputs, d } => {
            let p = match s.exactly_one(inputs)? {
                ExactInput::Cumulants(k) => coefficients_from_cumulants(&k)?,
                ExactInput::Moments(m) => {
                    let d = d.or(m.degree()).ok_or_else(|| malformed("moment input needs a degree (--d)"))?;
                    coefficients_from_moments(&m, d)?
                }
                ExactInput::Poly(p) => p,
            };
            s.emit_poly(&p)
        }
        Command::Rtransform(inputs) => to_value(&NamedVarPoly::new("s", truncated_r_transform(&s.poly(inputs)?)?)),
        Command::Family { kind, inputs, d, lambda, scaling, n } => {
            let need_d = || d.ok_or_else(|| malformed("--d is required"));
            match kind {
                FamilyKind::Hermite => {
                    let scaling = match scaling {
                        ScalingArg::Unit => HermiteScaling::Unit,
                        ScalingArg::Marcus => HermiteScaling::Marcus,
                    };
                    s.emit_poly(&hermite_clt(need_d()?, scaling)?)
                }
                FamilyKind::Poisson => {
                    let lambda = lambda.as_deref().ok_or_else(|| malformed("--lambda is required"))?;
                    s.emit_poly(&finite_poisson(&rational_arg("lambda", lambda)?, need_d()?)?)
                }
                FamilyKind::Clt => {
                    let n = n.ok_or_else(|| malformed("--n is required"))?;
                    let r = clt_rescaled_sum(&s.poly(inputs)?, n)?;
                    Ok(json!({
                        "poly": s.emit_poly(&r.poly)?,
                        "exact": r.exact,
                        "coeff_error_bound": r.coeff_error_bound,
                    }))
                }
            }
        }
        Command::Converge { r, n, d } => {
            let r = FreeCumulantVector::new(parse_rational_list(r)?)?;
            let ds = d
                .split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| malformed(format!("--d: bad degree {x:?}"))))
                .collect::<CliResult<Vec<_>>>()?;
            to_value(&convergence_report(&r, *n, &ds)?)
        }
        Command::CheckId(inputs) => to_value(&infinite_divisibility_report(&s.poly(inputs)?)?),
        Command::Threshold { inputs, tmax, steps } => {
            let t = real_rooted_threshold(&s.poly(inputs)?, &rational_arg("tmax", tmax)?, *steps)?;
            Ok(json!({ "threshold": t.as_ref().map(format_rational), "tmax": tmax, "steps": steps }))
        }
        Command::Cramer { d, eps, search } => {
            let mut eps = rational_arg("eps", eps)?;
            if *search {
                match cramer_epsilon(*d, &eps, 30)? {
                    Some(e) => eps = e,
                    None => return Err(Error::domain(format!("no real-rooted pair found below ε = {eps}")).into()),
                }
            }
            let ex = cramer_counterexample(*d, &eps)?;
            let mut v = to_value(&ex)?;
            v["eps"] = json!(format_rational(&eps));
            Ok(v)
        }
        Command::VerifyMc { inputs, samples } => {
            if *samples < MIN_SAMPLES {
                return Err(Error::domain(format!("--samples must be at least {MIN_SAMPLES}")).into());
            }
            let ps = s.polys(inputs, 2)?;
            let exact = boxplus(&ps[0], &ps[1])?;
            let est = mc_boxplus(&ps[0], &ps[1], *samples, s.seed)?;
            let pass = est.agrees_with(&exact, MC_SIGMAS, MC_FLOOR);
            Ok(json!({
                "estimate": to_value(&est)?,
                "exact": to_value(&exact)?,
                "pass": pass,
                "all_pass": pass.iter().all(|&b| b),
            }))
        }
        Command::Partitions { n, list, noncrossing, sigma } => partitions(*n, *list, *noncrossing, sigma.as_deref()),
    }
}

fn partitions(n: Option<usize>, list: bool, noncrossing: bool, sigma: Option<&str>) -> CliResult<Value> {
    if let Some(text) = sigma {
        let sigma: SetPartition = text.parse()?;
        let mut v = json!({
            "sigma": sigma.to_string(),
            "noncrossing": sigma.is_noncrossing(),
            "p_sigma": to_value(&NamedVarPoly::new("d", p_sigma(&sigma)?))?,
            "leading_coefficient": format_rational(&p_sigma_leading_coefficient(&sigma)),
        });
        if sigma.is_noncrossing() {
            v["q_sigma"] = to_value(&NamedVarPoly::new("d", q_sigma(&sigma)?))?;
        }
        return Ok(v);
    }
    let n = n.ok_or_else(|| malformed("--n or --sigma is required"))?;
    let table = lattice_table(n)?;
    let types: Vec<Value> = table
        .classes()
        .iter()
        .map(|c| {
            json!({
                "sizes": c.sizes,
                "count_all": c.count_all,
                "count_noncrossing": c.count_noncrossing,
                "mobius": c.mobius,
            })
        })
        .collect();
    let bell: u64 = table.classes().iter().map(|c| c.count_all).sum();
    let catalan: u64 = table.classes().iter().map(|c| c.count_noncrossing).sum();
    let mut v = json!({
        "n": n,
        "bell": bell,
        "catalan": catalan,
        "types": types,
        "characteristic_polynomial": to_value(&NamedVarPoly::new("t", partition_lattice_charpoly(n)?))?,
    });
    if list {
        let all = if noncrossing { enumerate_noncrossing(n)? } else { enumerate_partitions(n)? };
        v["partitions"] = json!(all.iter().map(|p| p.to_string()).collect::<Vec<_>>());
    }
    Ok(v)
}
