//! Command-line front end. Every command writes JSON to stdout; usage text,
//! diagnostics and the selftest table go to stderr.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{pi_poly_numeric, ExactRational};
use crate::identities::{verify_sweep_parallel, IdentityId, IdentityParams, SweepRanges};
use crate::multisum::{brute_multiple_sum, reduce_multiple_sum, SequenceSpec, SumProblem};
use crate::partitions::enumerate_partitions;
use crate::polynomials::{coeff_ratio_from_roots, derivative_mean_pair, poly_from_roots};
use crate::special::{
    check_zeta_table, faulhaber, golden_zeta_table, load_zeta_table, mzv_closed_form, mzv_even_reduced,
};
use crate::{selftest, Error};

/// Environment variable capping the order of brute-force evaluation.
pub const MAX_M_VAR: &str = "MULTISUM_MAX_M";
pub const DEFAULT_MAX_M: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CommandOutcome {
    pub status: Status,
    pub payload: Value,
    /// Exactly what goes to stdout, newline-terminated when non-empty.
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl CommandOutcome {
    fn new(status: Status, payload: Value, stdout: String, stderr: String) -> Self {
        Self {
            status,
            payload,
            stdout,
            stderr,
            exit_code: status.exit_code(),
        }
    }

    fn json(status: Status, payload: Value) -> Self {
        let stdout = format!("{payload}\n");
        Self::new(status, payload, stdout, String::new())
    }

    fn verdict(equal: bool, payload: Value) -> Self {
        Self::json(if equal { Status::Pass } else { Status::Fail }, payload)
    }

    fn error(message: String) -> Self {
        let payload = json!({ "error": message });
        let stdout = format!("{payload}\n");
        Self::new(Status::Error, payload, stdout, format!("error: {message}\n"))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "multisum",
    version,
    about = "Exact multiple sums and the identities built on them"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integer partitions in multiplicity encoding
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// Evaluate multiple sums
    #[command(subcommand)]
    Multisum(MultisumCmd),
    /// Polynomials from roots
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Faulhaber sums, multiple zeta values, zeta table
    #[command(subcommand)]
    Special(SpecialCmd),
    /// Verify a registered identity at one point or over a sweep
    Verify(VerifyArgs),
    /// Run the acceptance suite
    Selftest,
}

#[derive(Subcommand, Debug)]
enum PartitionsCmd {
    /// One JSON object per partition of m
    List { m: usize },
}

#[derive(Subcommand, Debug)]
enum MultisumCmd {
    Eval(EvalArgs),
}

#[derive(Args, Debug)]
struct EvalArgs {
    /// Sequence as JSON, e.g. {"kind":"index_power","exponent":2}
    #[arg(long, default_value = r#"{"kind":"index_power","exponent":1}"#)]
    spec: String,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
    q: i64,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    method: Method,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Method {
    Brute,
    Reduce,
    Both,
}

#[derive(Subcommand, Debug)]
enum PolyCmd {
    /// Compare (-1)^m e_m(roots) with the coefficient ratio of the expanded polynomial
    Vieta {
        #[arg(long)]
        roots: String,
        #[arg(long)]
        m: usize,
    },
    /// Compare the root mean of f with that of its k-th derivative
    CheckDerivativeMean {
        #[arg(long)]
        roots: String,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SpecialCmd {
    Faulhaber {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u32,
    },
    Mzv {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        p: u32,
        /// Significant digits of a decimal rendering
        #[arg(long)]
        numeric: Option<usize>,
    },
    ZetaTable {
        /// Alternative golden file
        #[arg(long)]
        golden: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    identity: IdentityId,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<i64>,
    /// Multiplicity vector, e.g. "2,1,0"
    #[arg(long)]
    phi: Option<String>,
    #[arg(long)]
    spec: Option<String>,
    /// Ranges such as "m=0..12,n=1..4"
    #[arg(long)]
    sweep: Option<String>,
    /// Emit the full report array instead of a summary
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

/// Parses and runs one command line (`argv[0]` is the program name).
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandOutcome::new(Status::Pass, Value::Null, String::new(), text)
                }
                _ => {
                    let first = text.lines().next().unwrap_or("usage error");
                    let message = first.strip_prefix("error: ").unwrap_or(first).to_string();
                    let mut out = CommandOutcome::error(message);
                    out.stderr = text;
                    out
                }
            };
        }
    };
    dispatch(cli.command).unwrap_or_else(|e| CommandOutcome::error(e.to_string()))
}

fn dispatch(command: Command) -> crate::Result<CommandOutcome> {
    match command {
        Command::Partitions(PartitionsCmd::List { m }) => partitions_list(m),
        Command::Multisum(MultisumCmd::Eval(args)) => multisum_eval(args),
        Command::Poly(cmd) => poly(cmd),
        Command::Special(cmd) => special(cmd),
        Command::Verify(args) => verify_cmd(args),
        Command::Selftest => Ok(selftest_cmd()),
    }
}

fn max_m() -> crate::Result<usize> {
    match std::env::var(MAX_M_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{MAX_M_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_M),
    }
}

fn check_brute_order(m: usize) -> crate::Result<()> {
    let max = max_m()?;
    if m > max {
        return Err(Error::TooLarge {
            what: "brute-force order m",
            value: m,
            max,
        });
    }
    Ok(())
}

fn parse_spec(s: &str) -> crate::Result<SequenceSpec> {
    serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("bad sequence spec: {e}")))
}

fn parse_rationals(s: &str) -> crate::Result<Vec<ExactRational>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

fn partitions_list(m: usize) -> crate::Result<CommandOutcome> {
    let rows: Vec<Value> = enumerate_partitions(m)
        .iter()
        .map(|y| {
            json!({
                "m": m,
                "y": y.padded(m),
                "length": y.length(),
                "parity": y.parity(),
            })
        })
        .collect();
    let stdout: String = rows.iter().map(|r| format!("{r}\n")).collect();
    Ok(CommandOutcome::new(
        Status::Pass,
        Value::Array(rows),
        stdout,
        String::new(),
    ))
}

fn multisum_eval(args: EvalArgs) -> crate::Result<CommandOutcome> {
    let spec = parse_spec(&args.spec)?;
    let problem = SumProblem::uniform(spec.clone(), args.m, args.q, args.n)?;
    let brute = match args.method {
        Method::Brute | Method::Both => {
            check_brute_order(args.m)?;
            Some(brute_multiple_sum(&problem)?)
        }
        Method::Reduce => None,
    };
    let reduced = match args.method {
        Method::Reduce | Method::Both => Some(reduce_multiple_sum(&spec, args.m, args.q, args.n)?),
        Method::Brute => None,
    };
    Ok(match (brute, reduced) {
        (Some(b), Some(r)) => {
            let equal = b == r;
            CommandOutcome::verdict(equal, json!({ "brute": b, "reduced": r, "equal": equal }))
        }
        (Some(b), None) => CommandOutcome::json(Status::Pass, json!({ "brute": b })),
        (None, Some(r)) => CommandOutcome::json(Status::Pass, json!({ "reduced": r })),
        (None, None) => unreachable!("every method evaluates at least one side"),
    })
}

fn poly(cmd: PolyCmd) -> crate::Result<CommandOutcome> {
    match cmd {
        PolyCmd::Vieta { roots, m } => {
            let roots = parse_rationals(&roots)?;
            let lhs = coeff_ratio_from_roots(&roots, m)?;
            let p = poly_from_roots(&roots, &ExactRational::one())?;
            let rhs = p.coefficient(roots.len() - m) / p.leading();
            let equal = lhs == rhs;
            Ok(CommandOutcome::verdict(
                equal,
                json!({ "polynomial": p.to_string(), "m": m, "lhs": lhs, "rhs": rhs, "equal": equal }),
            ))
        }
        PolyCmd::CheckDerivativeMean { roots, k } => {
            let roots = parse_rationals(&roots)?;
            let (lhs, rhs) = derivative_mean_pair(&roots, k)?;
            let equal = lhs == rhs;
            Ok(CommandOutcome::verdict(
                equal,
                json!({ "lhs": lhs, "rhs": rhs, "equal": equal }),
            ))
        }
    }
}

fn special(cmd: SpecialCmd) -> crate::Result<CommandOutcome> {
    match cmd {
        SpecialCmd::Faulhaber { n, p } => Ok(CommandOutcome::json(
            Status::Pass,
            json!({ "n": n, "p": p, "value": faulhaber(n, p) }),
        )),
        SpecialCmd::Mzv { m, p, numeric } => {
            let reduced = mzv_even_reduced(m, p)?;
            let mut payload = json!({ "m": m, "p": p, "value": reduced.to_string() });
            let mut equal = true;
            if (1..=3).contains(&p) {
                let closed = mzv_closed_form(m, p)?;
                equal = closed == reduced;
                payload["closed_form"] = json!(closed.to_string());
                payload["equal"] = json!(equal);
            }
            if let Some(digits) = numeric {
                payload["numeric"] = json!(pi_poly_numeric(&reduced, digits)?);
            }
            Ok(CommandOutcome::verdict(equal, payload))
        }
        SpecialCmd::ZetaTable { golden } => {
            let entries = match golden {
                Some(path) => load_zeta_table(&path)?,
                None => golden_zeta_table(),
            };
            let checks = check_zeta_table(&entries)?;
            let passed = checks.iter().all(|c| c.equal);
            let stderr: String = checks
                .iter()
                .map(|c| {
                    format!(
                        "[{}] zeta({}) = {}\n",
                        if c.equal { "PASS" } else { "FAIL" },
                        c.argument,
                        c.computed
                    )
                })
                .collect();
            let payload = json!({ "entries": checks, "passed": passed });
            let mut out = CommandOutcome::verdict(passed, payload);
            out.stderr = stderr;
            Ok(out)
        }
    }
}

fn verify_cmd(args: VerifyArgs) -> crate::Result<CommandOutcome> {
    let phi = args
        .phi
        .as_deref()
        .map(|s| {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::InvalidArgument(format!("bad multiplicity {t:?} in --phi")))
                })
                .collect::<crate::Result<Vec<u32>>>()
        })
        .transpose()?;
    let base = IdentityParams {
        m: args.m,
        n: args.n,
        r: args.r,
        q: args.q,
        phi,
        spec: args.spec.as_deref().map(parse_spec).transpose()?,
    };
    let ranges: SweepRanges = match args.sweep.as_deref() {
        Some(s) => s.parse()?,
        None => SweepRanges::default(),
    };
    if args.identity == IdentityId::RecurrentBridge {
        let top = ranges.0.get("m").map_or(args.m.unwrap_or(0), |r| *r.end());
        check_brute_order(top.max(0) as usize)?;
    }
    let reports = verify_sweep_parallel(args.identity, &base, &ranges, args.jobs.max(1))?;
    let failed: Vec<&IdentityParams> = reports.iter().filter(|r| !r.equal).map(|r| &r.params).collect();
    let passed = failed.is_empty();
    let stderr = if passed {
        String::new()
    } else {
        format!("{}: {} of {} points fail\n", args.identity, failed.len(), reports.len())
    };
    let payload = if args.json {
        serde_json::to_value(&reports).expect("reports serialize")
    } else {
        json!({
            "identity": args.identity,
            "reports": reports.len(),
            "passed": reports.len() - failed.len(),
            "failed": failed,
        })
    };
    let mut out = CommandOutcome::verdict(passed, payload);
    out.stderr = stderr;
    Ok(out)
}

fn selftest_cmd() -> CommandOutcome {
    let report = selftest::run_all();
    // timings stay on stderr so stdout is identical across runs
    let criteria: Vec<Value> = report
        .criteria
        .iter()
        .map(|c| json!({ "id": c.id, "name": c.name, "passed": c.passed, "detail": c.detail }))
        .collect();
    let payload = json!({ "criteria": criteria, "passed": report.passed });
    let mut out = CommandOutcome::verdict(report.passed, payload);
    out.stderr = format!("{}\n", report.table());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> CommandOutcome {
        run(std::iter::once("multisum").chain(args.iter().copied()))
    }

    #[test]
    fn eval_both_methods() {
        let out = run_args(&[
            "multisum",
            "eval",
            "--spec",
            r#"{"kind":"index_power","exponent":1}"#,
            "--m",
            "2",
            "--q",
            "1",
            "--n",
            "4",
            "--method",
            "both",
        ]);
        assert_eq!(out.exit_code, 0);
        assert_eq!(
            out.payload,
            json!({ "brute": "35/1", "reduced": "35/1", "equal": true })
        );
    }

    #[test]
    fn negative_order_is_a_usage_error() {
        let out = run_args(&["multisum", "eval", "--m", "-1", "--n", "4"]);
        assert_eq!(out.exit_code, 2);
        assert!(out.payload["error"].as_str().unwrap().contains("-1"));
    }

    #[test]
    fn unknown_subcommand_exits_two() {
        let out = run_args(&["frobnicate"]);
        assert_eq!(out.exit_code, 2);
        assert!(out.stderr.contains("Usage"));
    }

    #[test]
    fn domain_errors_exit_two_with_json() {
        let out = run_args(&["poly", "check-derivative-mean", "--roots", "1,2", "--k", "2"]);
        assert_eq!(out.status, Status::Error);
        assert!(out.payload["error"].is_string());
    }
}
