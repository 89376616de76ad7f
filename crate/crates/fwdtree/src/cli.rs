//! `fwdtree` command line.
//!
//! Exit codes: 0 success, 1 the input is well formed but the answer is a
//! failure (cycle, disconnected graph, bad numbering, failed check), 2 bad
//! usage or an unreadable document.

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fwdtree_core::inverse::{invert_fast, verify_inverse_triple};
use fwdtree_core::minor::{det_minor, upper_triangularize};
use fwdtree_core::oracle::{det_oracle, invert_oracle};
use fwdtree_core::tree::{assign_forward_indexing, build_tree, validate_indexing};
use fwdtree_core::{FwdAdjMatrix, MatrixError, NumberingStrategy, RawGraph, RootedTree, Tree, TreeError};
use serde_json::json;

use crate::check::{check_tree, CheckLimits};
use crate::generate::{generate, GeneratorConfig, Numbering, Shape};
use crate::ingest::{GraphFormat, ParseError};
use crate::parallel::invert_cofactor_parallel;
use crate::render::{render_matrix, MatrixFormat};

#[derive(Debug, Parser)]
#[command(name = "fwdtree", version, about = "Forward adjacency matrices of rooted trees and their inverses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// Graph file, or `-` for stdin.
    input: String,
    /// Document format; guessed from the content when omitted.
    #[arg(long, value_enum)]
    input_format: Option<GraphFormat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Fast,
    Cofactor,
    Oracle,
    /// Run all three and compare.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Strategy {
    #[default]
    Dfs,
    Bfs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check that the input is a tree with a forward numbering.
    Validate {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Relabel the input so that it has a forward numbering.
    Renumber {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t)]
        strategy: Strategy,
        /// Output format; defaults to the input format.
        #[arg(long, value_enum)]
        to: Option<GraphFormat>,
        /// Print the `old new` label map instead of the graph.
        #[arg(long)]
        map: bool,
    },
    /// Print the forward adjacency matrix.
    Matrix {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t)]
        format: MatrixFormat,
    },
    /// Print the inverse, or compare all three methods.
    Invert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
        #[arg(long, value_enum, default_value_t)]
        format: MatrixFormat,
        /// Worker threads for the cofactor method (0: rayon default).
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Print the minor with row J and column I removed, and its determinant.
    Minor {
        #[command(flatten)]
        input: Input,
        j: usize,
        i: usize,
        /// Also print the rotated and reduced matrices.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t)]
        format: MatrixFormat,
    },
    /// Print the forward route from I to J, or `absent`.
    Route {
        #[command(flatten)]
        input: Input,
        i: usize,
        j: usize,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Print every node K is forward connected to.
    Closure {
        #[command(flatten)]
        input: Input,
        k: usize,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Generate a tree.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Shape::UniformRandom)]
        shape: Shape,
        #[arg(long, value_enum, default_value_t)]
        numbering: Numbering,
        #[arg(long, value_enum, default_value_t = GraphFormat::Edges)]
        to: GraphFormat,
    },
    /// Run the full invariant suite on the input.
    Check {
        #[command(flatten)]
        input: Input,
        /// Largest N for the dense and cofactor checks.
        #[arg(long, default_value_t = CheckLimits::default().dense)]
        dense_limit: usize,
        /// Largest N for the all-minors check.
        #[arg(long, default_value_t = CheckLimits::default().minors)]
        minor_limit: usize,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Time the fast inverse on a generated tree.
    Bench {
        #[arg(long, value_enum, default_value_t = Shape::Path)]
        shape: Shape,
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    /// exit 1
    Domain(String),
    /// exit 2
    Usage(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(format!("parse error: {e}"))
    }
}

impl From<TreeError> for Failure {
    fn from(e: TreeError) -> Self {
        match e {
            TreeError::IndexOutOfRange { .. } => Failure::Usage(e.to_string()),
            TreeError::NonMonotoneNumbering(_) => {
                Failure::Domain(format!("{e} (see `fwdtree renumber`)"))
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<MatrixError> for Failure {
    fn from(e: MatrixError) -> Self {
        match e {
            MatrixError::VerificationFailed(_) => Failure::Domain(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(String, i32), Failure>;

fn ok(text: String) -> Outcome {
    Ok((text, 0))
}

struct Loaded {
    raw: RawGraph,
    format: GraphFormat,
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<Loaded, Failure> {
    let text = if input.input == "-" {
        let mut s = String::new();
        stdin
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(&input.input).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.input)))?
    };
    let format = input.input_format.unwrap_or_else(|| GraphFormat::sniff(&text));
    Ok(Loaded { raw: format.parse(&text)?, format })
}

fn load_tree(input: &Input, stdin: &mut dyn Read) -> Result<Tree, Failure> {
    Ok(build_tree(&load(input, stdin)?.raw)?)
}

fn join(nodes: &[usize]) -> String {
    nodes.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn json_line(v: serde_json::Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

fn dispatch(cli: Cli, stdin: &mut dyn Read) -> Outcome {
    match cli.command {
        Command::Validate { input, format } => {
            let raw = load(&input, stdin)?.raw;
            let rooted = RootedTree::from_raw(&raw)?;
            let report = validate_indexing(&rooted);
            let code = if report.is_pass() { 0 } else { 1 };
            let text = match format {
                ReportFormat::Json => json_line(json!({
                    "n": rooted.n(),
                    "valid": report.is_pass(),
                    "violations": report.violations,
                })),
                ReportFormat::Text if report.is_pass() => format!("OK n={}\n", rooted.n()),
                ReportFormat::Text => {
                    let pairs: Vec<String> = report.violations.iter().map(|(p, c)| format!("{p}->{c}")).collect();
                    format!("FAIL parent/child pairs out of order: {}\n", pairs.join(" "))
                }
            };
            Ok((text, code))
        }
        Command::Renumber { input, strategy, to, map } => {
            let loaded = load(&input, stdin)?;
            let strategy = match strategy {
                Strategy::Dfs => NumberingStrategy::DfsPreorder,
                Strategy::Bfs => NumberingStrategy::BfsLevel,
            };
            let relabel = assign_forward_indexing(&loaded.raw, strategy)?;
            if map {
                let mut out = String::new();
                for (old, new) in relabel.iter() {
                    writeln!(out, "{old} {new}").unwrap();
                }
                return ok(out);
            }
            let renamed = relabel.apply(&loaded.raw);
            build_tree(&renamed)?;
            ok(to.unwrap_or(loaded.format).render(&renamed))
        }
        Command::Matrix { input, format } => {
            let t = load_tree(&input, stdin)?;
            ok(render_matrix(format, &FwdAdjMatrix::from_tree(&t).to_dense()))
        }
        Command::Invert { input, method, format, threads } => {
            let t = load_tree(&input, stdin)?;
            let a = FwdAdjMatrix::from_tree(&t);
            match method {
                Method::Fast => ok(render_matrix(format, &invert_fast(&t).to_dense())),
                Method::Cofactor => {
                    let pool = rayon::ThreadPoolBuilder::new()
                        .num_threads(threads)
                        .build()
                        .map_err(|e| Failure::Usage(format!("cannot start {threads} threads: {e}")))?;
                    let inv = pool
                        .install(|| invert_cofactor_parallel(&a, &t))
                        .map_err(|e| Failure::Domain(e.to_string()))?;
                    ok(render_matrix(format, &inv.to_dense()))
                }
                Method::Oracle => {
                    let exact = invert_oracle(&a.to_dense()).map_err(|e| Failure::Domain(e.to_string()))?;
                    let m = exact.to_int_matrix().ok_or_else(|| {
                        Failure::Domain(format!("inverse has denominator {}", exact.denominator()))
                    })?;
                    ok(render_matrix(format, &m))
                }
                Method::All => {
                    let r = verify_inverse_triple(&t);
                    let code = if r.is_ok() { 0 } else { 1 };
                    let text = if format == MatrixFormat::Json {
                        json_line(json!({
                            "ok": r.is_ok(),
                            "n": r.n,
                            "ones": r.ones,
                            "cofactor_mismatches": r.cofactor_mismatches,
                            "oracle_mismatches": r.oracle_mismatches,
                            "oracle_denominator": r.oracle_denominator.map(|d| d.to_string()),
                            "right_product_mismatches": r.right_product_mismatches,
                            "left_product_mismatches": r.left_product_mismatches,
                            "failures": r.failures,
                        }))
                    } else if r.is_ok() {
                        "OK\n".to_string()
                    } else {
                        let mut out = String::from("MISMATCH\n");
                        let lists = [
                            ("fast vs cofactor", &r.cofactor_mismatches),
                            ("fast vs oracle", &r.oracle_mismatches),
                            ("A * inv != I", &r.right_product_mismatches),
                            ("inv * A != I", &r.left_product_mismatches),
                        ];
                        for (label, list) in lists {
                            if !list.is_empty() {
                                writeln!(out, "{label}: {list:?}").unwrap();
                            }
                        }
                        if let Some(d) = r.oracle_denominator.filter(|&d| d != 1) {
                            writeln!(out, "oracle denominator: {d}").unwrap();
                        }
                        for f in &r.failures {
                            writeln!(out, "{f}").unwrap();
                        }
                        out
                    };
                    Ok((text, code))
                }
            }
        }
        Command::Minor { input, j, i, trace, format } => {
            let t = load_tree(&input, stdin)?;
            let a = FwdAdjMatrix::from_tree(&t);
            let m = a.minor(j, i)?;
            let tr = upper_triangularize(&m, &a, &t)?;
            let det = det_minor(&a, &t, j, i)?;
            let oracle = det_oracle(&m.to_dense()).map_err(|e| Failure::Domain(e.to_string()))?;
            if oracle != det as i128 {
                return Err(Failure::Domain(format!("oracle determinant {oracle} differs from {det}")));
            }
            if format == MatrixFormat::Json {
                let rows = |d: &fwdtree_core::IntMatrix| -> Vec<Vec<i64>> {
                    (0..d.rows()).map(|r| d.row(r).to_vec()).collect()
                };
                let mut v = json!({ "j": j, "i": i, "minor": rows(&m.to_dense()), "det": det });
                if trace {
                    v["rotated"] = json!(rows(&tr.rotated.to_dense()));
                    v["interchanges"] = json!(tr.interchanges);
                    v["sign"] = json!(tr.sign);
                    v["added"] = json!(tr.added);
                    v["d"] = json!(tr.diagonal);
                    v["reduced"] = json!(rows(&tr.triangular.to_dense()));
                    v["oracle_det"] = json!(oracle as i64);
                }
                return ok(json_line(v));
            }
            let mut out = format!("M_{{{j},{i}}}:\n");
            out.push_str(&render_matrix(format, &m.to_dense()));
            if trace {
                out.push_str("rotated:\n");
                out.push_str(&render_matrix(format, &tr.rotated.to_dense()));
                writeln!(out, "added columns: {}", if tr.added.is_empty() { "none".to_string() } else { join(&tr.added) }).unwrap();
                out.push_str("reduced:\n");
                out.push_str(&render_matrix(format, &tr.triangular.to_dense()));
                writeln!(out, "sign={} ({} interchanges)", tr.sign, tr.interchanges).unwrap();
                writeln!(out, "d={}", tr.diagonal).unwrap();
                writeln!(out, "oracle det={oracle}").unwrap();
            }
            writeln!(out, "det={det}").unwrap();
            ok(out)
        }
        Command::Route { input, i, j, format } => {
            let t = load_tree(&input, stdin)?;
            let route = t.route(i, j)?;
            ok(match (format, route) {
                (ReportFormat::Json, r) => json_line(json!({ "from": i, "to": j, "nodes": r.map(|r| r.nodes) })),
                (ReportFormat::Text, Some(r)) => format!("{}\n", join(r.nodes())),
                (ReportFormat::Text, None) => "absent\n".to_string(),
            })
        }
        Command::Closure { input, k, format } => {
            let t = load_tree(&input, stdin)?;
            if k == 0 {
                return Err(Failure::Usage("closure needs a node in 1..=N".into()));
            }
            let c = t.forward_closure(k)?;
            ok(match format {
                ReportFormat::Json => json_line(json!({ "node": k, "closure": c })),
                ReportFormat::Text => format!("{}\n", join(&c)),
            })
        }
        Command::Gen { n, seed, shape, numbering, to } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            ok(to.render(&generate(&GeneratorConfig { n, seed, shape, numbering })))
        }
        Command::Check { input, dense_limit, minor_limit, format } => {
            let t = load_tree(&input, stdin)?;
            let r = check_tree(&t, CheckLimits { dense: dense_limit, minors: minor_limit });
            let code = if r.passed() { 0 } else { 1 };
            let text = match format {
                ReportFormat::Text => r.to_string(),
                ReportFormat::Json => json_line(serde_json::to_value(&r).expect("report serializes")),
            };
            Ok((text, code))
        }
        Command::Bench { shape, n, seed } => {
            if n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let t = build_tree(&generate(&GeneratorConfig::new(n, seed, shape)))?;
            let start = Instant::now();
            let inv = invert_fast(&t);
            let elapsed = start.elapsed();
            let ones = inv.ones();
            if ones != t.total_depth() {
                return Err(Failure::Domain(format!("{ones} ones, total depth {}", t.total_depth())));
            }
            ok(format!(
                "shape={shape:?} n={n} ones={ones} elapsed_ms={:.3}\n",
                elapsed.as_secs_f64() * 1e3
            ))
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match dispatch(cli, stdin) {
        Ok((text, code)) => {
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return 2;
            }
            code
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}
