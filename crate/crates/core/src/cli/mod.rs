//! Command-line front end; the `charderiv` binary is a thin wrapper over [`run`].

mod emit;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combinatorics::{kostka, kostka_ones, schur_eval, Partition};
use crate::error::{Error, Result};
use crate::evaluators::EvalJob;
use crate::exact::{rational_to_f64, Scalar};
use crate::jets::build_d;
use crate::rmt::{
    cue_circle_limit, cue_disc_limit, cue_finite_moment, ginibre_jet, ginibre_moment_first, ginibre_moment_general,
    ginibre_moment_one_higher, ginibre_moment_two_higher, MomentResult,
};
use crate::verify::cross_suite;

pub use emit::{Report, Table};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "charderiv", version, about = "Exact limits of derivatives of det/Vandermonde and Pf/Vandermonde ratios")]
pub struct Cli {
    /// JSON job: an evaluator job with a "mode" key, or any command with its
    /// flags, e.g. {"command": "kostka", "shape": [3, 1], "weight": [2, 1, 1]}.
    #[arg(long, global = true)]
    job: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t)]
    format: Format,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add round-to-nearest double values next to exact ones.
    #[arg(long, global = true)]
    numeric: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kostka number K_{shape, weight}; without a weight, the SYT count.
    Kostka {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<u32>,
        #[arg(long, value_delimiter = ',')]
        weight: Option<Vec<u32>>,
    },
    /// Schur polynomial at points, bialternant and monomial routes.
    Schur {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        points: Vec<Scalar>,
    },
    /// Operator D_{u,k}; `--max-k` prints the table 1..=max-k.
    Dop {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Evaluate a determinant or Pfaffian limit from `--job file.json` (see `EvalJob`).
    Eval,
    /// Ginibre moments as e^{k t} pi^{-k} poly(t), t = |chi|^2.
    Ginibre(GinibreArgs),
    /// CUE moments: finite N at chi, the disc limit, or the unit-circle limit.
    Cue(CueArgs),
    /// Seeded cross-evaluator agreement suite.
    Verify {
        #[arg(long, default_value = "cross")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        /// Number of cases.
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
}

#[derive(Debug, Args)]
pub struct GinibreArgs {
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<u32>>,
    /// Number of underived factors; the rest carry one derivative.
    #[arg(long)]
    h: Option<usize>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    n1: Option<u32>,
    #[arg(long)]
    n2: Option<u32>,
    /// Table of first-derivative moments for k = 1..=max-k, h = 0..=k.
    #[arg(long)]
    max_k: Option<usize>,
    /// Evaluate at this point; with --N, the finite-N moment.
    #[arg(long)]
    chi: Option<Scalar>,
    #[arg(long = "N")]
    big_n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct CueArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 0)]
    h1: u32,
    #[arg(long, default_value_t = 0)]
    h2: u32,
    #[arg(long = "N")]
    big_n: Option<u64>,
    #[arg(long)]
    chi: Option<Scalar>,
    /// Unit-circle d=1 limit with parameter --c.
    #[arg(long)]
    circle: bool,
    #[arg(long)]
    c: Option<Scalar>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code: 0 success, 1 bad input or failed precondition, 2 internal error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_internal() {
                2
            } else {
                1
            }
        }
    }
}

/// Caps the global rayon pool at `CHARDERIV_THREADS` when it is set.
pub fn init_threads() {
    if let Some(n) = std::env::var("CHARDERIV_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn read_job(path: &PathBuf) -> Result<(String, Value)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    Ok((text, v))
}

fn job_argv(v: &Value) -> Result<Vec<String>> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("job file must hold a JSON object".into()))?;
    let cmd = obj.get("command").and_then(Value::as_str).ok_or_else(|| Error::Parse("job needs \"command\"".into()))?;
    let mut argv = vec!["charderiv".to_string(), cmd.to_string()];
    for (key, val) in obj {
        if key == "command" {
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        match val {
            Value::Bool(true) => argv.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let parts: Vec<String> = items.iter().map(scalar_text).collect();
                argv.push(flag);
                argv.push(parts.join(","));
            }
            other => {
                argv.push(flag);
                argv.push(scalar_text(other));
            }
        }
    }
    Ok(argv)
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let mut eval_text = None;
    if let Some(path) = &cli.job {
        let (text, v) = read_job(path)?;
        if v.get("mode").is_some() {
            if !matches!(cli.command, None | Some(Command::Eval)) {
                return Err(Error::pre("an evaluator job only goes with the eval command"));
            }
            eval_text = Some(text);
        } else {
            if cli.command.is_some() {
                return Err(Error::pre("a command job file replaces the command line"));
            }
            return run_command_job(&cli, &v, out);
        }
    }
    let report = match (cli.command, eval_text) {
        (_, Some(text)) => eval_report(&text, cli.numeric)?,
        (Some(c), None) => dispatch(c, cli.numeric)?,
        (None, None) => return Err(Error::pre("no command given; try --help")),
    };
    let bytes = report.render(cli.format)?;
    match &cli.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
        None => out.write_all(&bytes).map_err(|e| Error::Internal(e.to_string())),
    }
}

fn run_command_job(cli: &Cli, v: &Value, out: &mut dyn Write) -> Result<()> {
    {
        let argv = job_argv(v)?;
        let mut inner = Cli::try_parse_from(argv).map_err(|e| Error::Parse(e.to_string()))?;
        if inner.job.is_some() {
            return Err(Error::Parse("job files cannot nest".into()));
        }
        if cli.format != Format::Text {
            inner.format = cli.format;
        }
        inner.out = inner.out.or(cli.out.clone());
        inner.numeric |= cli.numeric;
        execute(inner, out)
    }
}

fn partition(parts: &[u32]) -> Result<Partition> {
    Partition::new(parts.to_vec())
}

fn scalar_json(s: &Scalar, numeric: bool) -> Value {
    if numeric {
        let (re, im) = s.to_f64();
        json!({"exact": s.to_string(), "re": re, "im": im})
    } else {
        json!(s.to_string())
    }
}

fn dispatch(command: Command, numeric: bool) -> Result<Report> {
    match command {
        Command::Kostka { shape, weight } => {
            let p = partition(&shape)?;
            let (value, weight) = match weight {
                Some(w) => (kostka(&p, &w)?, w),
                None => {
                    let w = vec![1; p.size() as usize];
                    (kostka_ones(&p)?.hook, w)
                }
            };
            Ok(Report::scalar(
                value.to_string(),
                json!({"shape": shape, "weight": weight, "kostka": value.to_string()}),
                &["shape", "weight", "kostka"],
                vec![join(&shape), join(&weight), value.to_string()],
            ))
        }
        Command::Schur { shape, points } => {
            let e = schur_eval(&partition(&shape)?, &points)?;
            if e.bialternant != e.monomial {
                return Err(Error::Internal(format!("schur routes differ: {} vs {}", e.bialternant, e.monomial)));
            }
            Ok(Report::scalar(
                e.bialternant.to_string(),
                json!({"shape": shape, "points": points, "bialternant": scalar_json(&e.bialternant, numeric),
                       "monomial": scalar_json(&e.monomial, numeric)}),
                &["shape", "value"],
                vec![join(&shape), e.bialternant.to_string()],
            ))
        }
        Command::Dop { k, max_k } => {
            let ks: Vec<usize> = match (k, max_k) {
                (Some(k), None) => vec![k],
                (None, Some(m)) => (1..=m).collect(),
                (None, None) => return Err(Error::pre("give --k or --max-k")),
                (Some(_), Some(_)) => return Err(Error::pre("--k and --max-k exclude each other")),
            };
            if ks.iter().any(|&k| k > 12) {
                return Err(Error::pre("operators are tabulated up to k = 12"));
            }
            let rows: Vec<(usize, String)> = ks.par_iter().map(|&k| (k, build_d(k).to_string())).collect();
            let text = if rows.len() == 1 {
                rows[0].1.clone()
            } else {
                rows.iter().map(|(k, s)| format!("D_{k} = {s}")).collect::<Vec<_>>().join("\n")
            };
            let json = Value::Array(rows.iter().map(|(k, s)| json!({"k": k, "operator": s})).collect());
            let table = Table::new(&["k", "operator"], rows.iter().map(|(k, s)| vec![k.to_string(), s.clone()]).collect());
            Ok(Report { text, json, table })
        }
        Command::Eval => Err(Error::pre("eval needs --job file.json")),
        Command::Ginibre(a) => ginibre(a, numeric),
        Command::Cue(a) => cue(a, numeric),
        Command::Verify { suite, seed, max_k, n } => {
            if suite != "cross" {
                return Err(Error::pre(format!("unknown suite `{suite}`; only `cross` is available")));
            }
            if max_k == 0 || max_k > 4 {
                return Err(Error::pre("--max-k must be in 1..=4"));
            }
            let cases = cross_suite(seed, n, max_k, 4)?;
            let failed = cases.iter().filter(|c| !c.passed).count();
            let lines: Vec<String> = cases.iter().map(|c| c.line()).collect();
            let text = format!("{}\n{} of {} cases agree", lines.join("\n"), cases.len() - failed, cases.len());
            let json = json!({"seed": seed, "cases": cases, "failed": failed});
            let table = Table::new(
                &["index", "kind", "k", "passed"],
                cases.iter().map(|c| vec![c.index.to_string(), c.kind.to_string(), c.k.to_string(), c.passed.to_string()]).collect(),
            );
            let report = Report { text, json, table };
            if failed > 0 {
                // the report is still useful; print it through the error path
                return Err(Error::Internal(format!("{failed} cross cases disagree\n{}", report.text)));
            }
            Ok(report)
        }
    }
}

fn eval_report(text: &str, numeric: bool) -> Result<Report> {
    let outcome = EvalJob::from_json(text)?.run()?;
    if let Some(o) = &outcome.oracle {
        if *o != outcome.value {
            return Err(Error::Internal(format!("oracle {o} disagrees with {}", outcome.value)));
        }
    }
    let mut json = serde_json::to_value(&outcome).map_err(|e| Error::Internal(e.to_string()))?;
    if numeric {
        json["numeric"] = scalar_json(&outcome.value, true)["re"].clone();
    }
    Ok(Report::scalar(outcome.value.to_string(), json, &["mode", "value"], vec![
        format!("{:?}", outcome.mode).to_lowercase(),
        outcome.value.to_string(),
    ]))
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn moment_report(m: &MomentResult, chi: Option<&Scalar>, numeric: bool) -> Result<Report> {
    let mut json = serde_json::to_value(m).map_err(|e| Error::Internal(e.to_string()))?;
    let mut text = m.render();
    if let Some(chi) = chi {
        let t = chi.norm_sqr();
        let p = m.poly_at(&t);
        json["t"] = json!(format!("{}/{}", t.numer(), t.denom()));
        json["poly_at_t"] = json!(format!("{}/{}", p.numer(), p.denom()));
        text.push_str(&format!("\npoly(t = {t}) = {p}"));
        if numeric {
            let v = m.value_f64(rational_to_f64(&t));
            json["value"] = json!(v);
            text.push_str(&format!("\nvalue = {v:e}"));
        }
    }
    let table = Table::new(
        &["k", "m", "coeff"],
        m.poly_t
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| vec![m.k.to_string(), i.to_string(), format!("{}/{}", c.numer(), c.denom())])
            .collect(),
    );
    Ok(Report { text: text + "\n", json, table })
}

fn ginibre(a: GinibreArgs, numeric: bool) -> Result<Report> {
    if let Some(max_k) = a.max_k {
        if max_k == 0 || max_k > 6 {
            return Err(Error::pre("--max-k must be in 1..=6"));
        }
        let cells: Vec<(usize, usize)> = (1..=max_k).flat_map(|k| (0..=k).map(move |h| (k, h))).collect();
        let results = cells
            .par_iter()
            .map(|&(k, h)| ginibre_moment_first(k, h).map(|m| (k, h, m)))
            .collect::<Result<Vec<_>>>()?;
        let poly_text = |m: &MomentResult| {
            m.poly_t.iter().map(|c| format!("{}/{}", c.numer(), c.denom())).collect::<Vec<_>>().join(" ")
        };
        let table = Table::new(
            &["k", "h", "exp_coeff", "pi_power", "poly_t"],
            results
                .iter()
                .map(|(k, h, m)| {
                    vec![k.to_string(), h.to_string(), m.prefactor.exp_coeff.to_string(), m.prefactor.pi_power.to_string(), poly_text(m)]
                })
                .collect(),
        );
        let json = Value::Array(
            results.iter().map(|(k, h, m)| json!({"k": k, "h": h, "result": m})).collect(),
        );
        let text = results.iter().map(|(k, h, m)| format!("k={k} h={h}: {}", m.render())).collect::<Vec<_>>().join("\n") + "\n";
        return Ok(Report { text, json, table });
    }
    let k = a.k.ok_or_else(|| Error::pre("ginibre needs --k (or --max-k for a table)"))?;
    if k == 0 {
        return Err(Error::pre("--k must be at least 1"));
    }
    if let Some(n) = a.big_n {
        let chi = a.chi.as_ref().ok_or_else(|| Error::pre("finite --N needs --chi"))?;
        let alpha = a.alpha.clone().unwrap_or_default();
        if alpha.len() > k {
            return Err(Error::pre("--alpha longer than --k"));
        }
        let mut alpha = alpha;
        alpha.resize(k, 0);
        let order = alpha.iter().sum::<u32>() as usize + k - 1;
        let g = ginibre_jet(Some(n), chi, order)?;
        let v = crate::evaluators::eval_det_kostka(&g.jet, &alpha, &alpha, k)?;
        let json = json!({"N": n, "k": k, "alpha": alpha, "chi": chi, "pi_power": -(k as i64), "value": scalar_json(&v, numeric)});
        return Ok(Report::scalar(format!("pi^(-{k}) * {v}"), json, &["N", "k", "value"], vec![n.to_string(), k.to_string(), v.to_string()]));
    }
    let m = match (&a.alpha, a.h, a.n, a.n1) {
        (Some(alpha), None, None, None) => ginibre_moment_general(k, alpha)?,
        (None, Some(h), None, None) => ginibre_moment_first(k, h)?,
        (None, None, Some(n), None) => ginibre_moment_one_higher(k, n)?,
        (None, None, None, Some(n1)) => ginibre_moment_two_higher(k, n1, a.n2.unwrap_or(0))?,
        (None, None, None, None) => ginibre_moment_general(k, &[])?,
        _ => return Err(Error::pre("choose one of --alpha, --h, --n, --n1/--n2")),
    };
    moment_report(&m, a.chi.as_ref(), numeric)
}

fn cue(a: CueArgs, numeric: bool) -> Result<Report> {
    let k = a.k;
    if k == 0 || (a.h1 + a.h2) as usize > k {
        return Err(Error::pre("need k >= 1 and h1 + h2 <= k"));
    }
    if a.circle {
        if a.h2 > 0 {
            return Err(Error::pre("the unit-circle limit is implemented for first derivatives only"));
        }
        let c = a.c.clone().unwrap_or_else(Scalar::zero);
        if !c.is_real() {
            return Err(Error::pre("--c must be real"));
        }
        let l = cue_circle_limit(k, a.h1, c.re())?;
        let exact = format!("{}/{}", l.exact.numer(), l.exact.denom());
        let json = serde_json::to_value(&l).map_err(|e| Error::Internal(e.to_string()))?;
        return Ok(Report::scalar(
            format!("{exact} ~ {:e}", l.value),
            json,
            &["k", "h1", "c", "exact", "value"],
            vec![k.to_string(), a.h1.to_string(), l.c.to_string(), exact, format!("{:e}", l.value)],
        ));
    }
    if let Some(n) = a.big_n {
        let chi = a.chi.clone().ok_or_else(|| Error::pre("finite --N needs --chi"))?;
        let mut h = vec![k as u32 - a.h1 - a.h2, a.h1];
        if a.h2 > 0 {
            h.push(a.h2);
        }
        let v = cue_finite_moment(n, &chi, &h)?;
        let json = json!({"N": n, "k": k, "h1": a.h1, "h2": a.h2, "chi": chi, "value": scalar_json(&v, numeric)});
        return Ok(Report::scalar(v.to_string(), json, &["N", "k", "h1", "h2", "value"], vec![
            n.to_string(),
            k.to_string(),
            a.h1.to_string(),
            a.h2.to_string(),
            v.to_string(),
        ]));
    }
    if a.h2 > 0 {
        return Err(Error::pre("the disc limit is implemented for first derivatives only"));
    }
    let m = cue_disc_limit(k, a.h1)?;
    moment_report(&m, a.chi.as_ref(), numeric)
}
