//! Command-line front end. `run` is what the binary calls; it is exposed so
//! tests can drive the CLI in-process.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::clustercalc::{
    check_sum_identity, indecomposable_count, min_cofiber_typed, min_fiber_typed, shift_object, ClusterObject,
};
use crate::dgpres::check_d_squared;
use crate::dynkin::{minus_w0_permutation, positive_roots, rank_cap, DynkinType};
use crate::error::Error;
use crate::ginzburg::ginzburg;
use crate::qcore::{amalgamate, export_dot, export_json, import_json, IceQuiverWP, QPMatching};
use crate::surface::{polygon_ribbon, surface_qp, RibbonGraph};
use crate::triangle::{triangle_qp, triangle_qp_grid};
use crate::verify::{parse_suites, run_suites, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "schober-forge", version, about = "Ice quivers with potential, Ginzburg dg categories and surface gluing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basic triangle QP of a Dynkin type.
    Triangle {
        #[arg(long = "type")]
        ty: String,
        /// Use the grid construction (type A only).
        #[arg(long)]
        grid: bool,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Glued QP of an ideal triangulation.
    Surface {
        /// Fan triangulation of an n-gon.
        #[arg(long, conflicts_with = "ribbon", required_unless_present = "ribbon")]
        polygon: Option<usize>,
        /// Ribbon graph and direction as JSON.
        #[arg(long)]
        ribbon: Option<PathBuf>,
        #[arg(long = "type")]
        ty: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Amalgamation of two ice QPs along a matching.
    Amalgamate {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Relative Ginzburg presentation of an ice QP.
    Ginzburg {
        qp: PathBuf,
        /// Also check that the differential squares to zero.
        #[arg(long)]
        check: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Object arithmetic in the 1-cluster category.
    Cluster {
        #[arg(long = "type")]
        ty: String,
        #[command(subcommand)]
        op: ClusterOp,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Include the slow E₇/E₈ and A₄ checks.
        #[arg(long)]
        long: bool,
        /// Also write failure records to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Re-emit an ice QP file canonically, as JSON or DOT.
    Export {
        input: PathBuf,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Positive roots and the −w₀ permutation.
    Roots {
        #[arg(long = "type")]
        ty: String,
    },
}

#[derive(Args, Debug)]
struct OutArgs {
    /// Output file; `.dot` selects DOT, anything else JSON. Defaults to stdout JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum ClusterOp {
    /// Suspension of an object such as `2` or `1+3`.
    Shift { object: String },
    Cofiber { i: usize, j: usize },
    Fiber { i: usize, j: usize },
    SumCheck,
    /// Number of indecomposables.
    Count,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn io_err(p: &Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", p.display()))
}

fn parse_type(s: &str) -> Result<DynkinType, Failure> {
    Ok(s.parse::<DynkinType>()?.with_cap(rank_cap())?)
}

fn read(p: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(p).map_err(|e| io_err(p, e))
}

fn emit(out: &mut dyn Write, target: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match target {
        Some(p) => std::fs::write(p, bytes).map_err(|e| io_err(p, e)),
        None => {
            out.write_all(bytes).and_then(|_| out.write_all(b"\n")).map_err(|e| Failure::Usage(e.to_string()))
        }
    }
}

fn emit_qp(out: &mut dyn Write, args: &OutArgs, x: &IceQuiverWP) -> Result<(), Failure> {
    let p = args.out.as_deref();
    let dot = p.and_then(|p| p.extension()).is_some_and(|e| e == "dot");
    let bytes = if dot { export_dot(x) } else { export_json(x)? };
    emit(out, p, &bytes)
}

fn line(out: &mut dyn Write, s: impl AsRef<str>) -> Result<(), Failure> {
    writeln!(out, "{}", s.as_ref()).map_err(|e| Failure::Usage(e.to_string()))
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

#[derive(Serialize)]
struct RootsOut {
    r#type: String,
    positive_roots: usize,
    roots: Vec<Vec<i64>>,
    minus_w0: Vec<usize>,
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match cmd {
        Command::Triangle { ty, grid, out: o } => {
            let t = parse_type(&ty)?;
            let tq = if grid {
                match t {
                    DynkinType::A(n) => triangle_qp_grid(n)?,
                    _ => return Err(Failure::Usage(format!("--grid needs type A, got {t}"))),
                }
            } else {
                triangle_qp(t)?
            };
            emit_qp(out, &o, &tq.qp)
        }
        Command::Surface { polygon, ribbon, ty, out: o } => {
            let t = parse_type(&ty)?;
            let (g, d) = match (polygon, ribbon) {
                (Some(n), _) => polygon_ribbon(n)?,
                (None, Some(p)) => {
                    let text = String::from_utf8(read(&p)?).map_err(|e| Failure::Usage(e.to_string()))?;
                    RibbonGraph::from_json(&text)?
                }
                (None, None) => return Err(Failure::Usage("need --polygon or --ribbon".into())),
            };
            emit_qp(out, &o, &surface_qp(&g, &d, t)?.qp)
        }
        Command::Amalgamate { a, b, matching, out: o } => {
            let p = import_json(&read(&a)?)?;
            let p2 = import_json(&read(&b)?)?;
            let m: QPMatching = serde_json::from_slice(&read(&matching)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", matching.display())))?;
            emit_qp(out, &o, &amalgamate(&p, &p2, &m)?)
        }
        Command::Ginzburg { qp, check, out: o } => {
            let x = import_json(&read(&qp)?)?;
            let g = ginzburg(&x)?;
            emit(out, o.as_deref(), &g.dg.to_json()?.to_bytes())?;
            if check {
                let r = check_d_squared(&g.dg)?;
                if !r.passed() {
                    let names: Vec<&String> = r.failures.iter().map(|f| &f.0).collect();
                    return Err(Failure::Verification(format!("d² ≠ 0 on {names:?}")));
                }
                let _ = writeln!(err, "d² = 0 on {} generators", r.checked);
            }
            Ok(())
        }
        Command::Cluster { ty, op } => {
            let t = parse_type(&ty)?;
            match op {
                ClusterOp::Shift { object } => line(out, shift_object(t, &ClusterObject::parse(&object)?)?.to_string()),
                ClusterOp::Cofiber { i, j } => line(out, min_cofiber_typed(t, i, j)?.to_string()),
                ClusterOp::Fiber { i, j } => line(out, min_fiber_typed(t, i, j)?.to_string()),
                ClusterOp::Count => line(out, indecomposable_count(t)?.to_string()),
                ClusterOp::SumCheck => {
                    let DynkinType::A(n) = t else {
                        return Err(Failure::Usage(format!("sum-check needs type A, got {t}")));
                    };
                    let r = check_sum_identity(n)?;
                    for row in &r.rows {
                        line(out, format!("{} {} {} {} {}", row.i, row.j, row.k, row.sum, if row.ok { "ok" } else { "FAIL" }))?;
                    }
                    if r.passed() {
                        Ok(())
                    } else {
                        Err(Failure::Verification(json(&r.failures())))
                    }
                }
            }
        }
        Command::Verify { suite, long, report, threads } => {
            let suites = parse_suites(&suite)?;
            let mut o = VerifyOptions { long, ..VerifyOptions::default() };
            if let Some(k) = threads {
                o.threads = k;
            }
            let r = run_suites(&suites, &o);
            for c in &r.outcomes {
                let status = if c.passed { "ok  " } else { "FAIL" };
                line(out, format!("{status} {}/{}", c.suite, c.check))?;
            }
            let failed = r.outcomes.iter().filter(|c| !c.passed).count();
            line(out, format!("{} checks, {failed} failed", r.outcomes.len()))?;
            let records = r.failure_lines();
            if let Some(p) = report {
                std::fs::write(&p, &records).map_err(|e| io_err(&p, e))?;
            }
            if failed == 0 {
                Ok(())
            } else {
                let _ = err.write_all(records.as_bytes());
                Err(Failure::Verification(format!("{failed} checks failed")))
            }
        }
        Command::Export { input, format, out: o } => {
            let x = import_json(&read(&input)?)?;
            let bytes = match format.as_str() {
                "json" => export_json(&x)?,
                "dot" => export_dot(&x),
                other => return Err(Failure::Usage(format!("unknown format `{other}`"))),
            };
            emit(out, o.as_deref(), &bytes)
        }
        Command::Roots { ty } => {
            let t = parse_type(&ty)?;
            let rs = positive_roots(t);
            let r = RootsOut {
                r#type: t.to_string(),
                positive_roots: rs.positive.len(),
                roots: rs.positive.clone(),
                minus_w0: minus_w0_permutation(t).iter().map(|i| i + 1).collect(),
            };
            line(out, json(&r))
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Verification(m)) => {
            let _ = writeln!(err, "verification failed: {m}");
            EXIT_FAILED
        }
    }
}
