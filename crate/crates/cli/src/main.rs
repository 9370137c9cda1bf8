//! Batch front end: decompose tensor products, dump multiplication tables
//! and presentations, enumerate the indecomposables, and run the
//! verification sweeps.
//!
//! Exit codes: 0 = success, 1 = mathematical mismatch or check failure,
//! 2 = usage error.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use taft_green::checks::{self, CheckReport};
use taft_green::green::{basis_product, GreenElement};
use taft_green::presentation::{fib_poly, presentation_relations};
use taft_green::reps::{classify, enumerate, socle_head, ModuleLabel};
use taft_green::taft::TaftElement;
use taft_green::CycloNum;

#[derive(Parser)]
#[command(
    name = "taft-green",
    version,
    about = "Exact Green-ring computations for Taft algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose the tensor product of two indecomposables M(l,r) ⊗ M(l',r')
    Decompose {
        /// Order n of the root of unity (n >= 2)
        #[arg(long)]
        n: usize,
        /// Left factor as "l,r"
        #[arg(long)]
        left: String,
        /// Right factor as "l,r"
        #[arg(long)]
        right: String,
        /// Which engine computes the decomposition
        #[arg(long, value_enum, default_value_t = Engine::Formula)]
        engine: Engine,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Emit the full multiplication table (Green ring or Taft monomials)
    MultTable {
        #[arg(long)]
        n: usize,
        /// green: products of module classes; taft: products of g^i h^j
        #[arg(long, value_enum, default_value_t = TableKind::Green)]
        kind: TableKind,
        /// Worker threads for the table sweep
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Print the two defining relations of Z[y,z]/I
    Presentation {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// List all n^2 indecomposable module labels with their invariants
    Enumerate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run verification sweeps; exit 0 iff every selected check passes
    Verify {
        #[arg(long)]
        n: usize,
        /// all, hopf, oracle, iso, or fib
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Worker threads for the oracle sweep
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Args, Clone)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print progress notes to stderr
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Green,
    Taft,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Hopf,
    Oracle,
    Iso,
    Fib,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Hopf => "hopf",
            Suite::Oracle => "oracle",
            Suite::Iso => "iso",
            Suite::Fib => "fib",
        }
    }
}

/// Normalized run configuration shared by all subcommands.
struct CommandConfig {
    n: usize,
    format: Format,
    out: Option<PathBuf>,
    verbose: u8,
    jobs: usize,
}

impl CommandConfig {
    fn new(n: usize, output: &OutputOpts, jobs: usize) -> Result<Self, String> {
        if n < 2 {
            return Err(format!("--n must be at least 2, got {n}"));
        }
        Ok(CommandConfig {
            n,
            format: output.format,
            out: output.out.clone(),
            verbose: output.verbose,
            jobs: jobs.max(1),
        })
    }

    fn note(&self, msg: &str) {
        if self.verbose > 0 {
            eprintln!("[taft-green] {msg}");
        }
    }

    fn emit(&self, text: String, json: serde_json::Value) -> Result<(), String> {
        let payload = match self.format {
            Format::Text => text,
            Format::Json => format!("{:#}", json),
        };
        match &self.out {
            None => {
                let mut stdout = std::io::stdout().lock();
                match writeln!(stdout, "{payload}") {
                    Ok(()) => Ok(()),
                    // A closed pipe (e.g. piping into `head`) is not an error.
                    Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                    Err(e) => Err(e.to_string()),
                }
            }
            Some(path) => {
                let mut f = std::fs::File::create(path)
                    .map_err(|e| format!("cannot create {}: {e}", path.display()))?;
                writeln!(f, "{payload}").map_err(|e| e.to_string())
            }
        }
    }
}

fn parse_label(n: usize, text: &str) -> Result<ModuleLabel, String> {
    let (l, r) = text
        .split_once(',')
        .ok_or_else(|| format!("label `{text}` is not of the form l,r"))?;
    let l: usize = l
        .trim()
        .parse()
        .map_err(|_| format!("length `{l}` is not a positive integer"))?;
    let r: i64 = r
        .trim()
        .parse()
        .map_err(|_| format!("twist `{r}` is not an integer"))?;
    ModuleLabel::new(n, l, r).map_err(|e| e.to_string())
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn math_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Decompose {
            n,
            left,
            right,
            engine,
            output,
        } => {
            let cfg = match CommandConfig::new(n, &output, 1) {
                Ok(c) => c,
                Err(e) => return usage_error(&e),
            };
            let (a, b) = match (parse_label(n, &left), parse_label(n, &right)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return usage_error(&e),
            };
            cmd_decompose(&cfg, a, b, engine)
        }
        Command::MultTable {
            n,
            kind,
            jobs,
            output,
        } => {
            let cfg = match CommandConfig::new(n, &output, jobs) {
                Ok(c) => c,
                Err(e) => return usage_error(&e),
            };
            cmd_mult_table(&cfg, kind)
        }
        Command::Presentation { n, output } => {
            let cfg = match CommandConfig::new(n, &output, 1) {
                Ok(c) => c,
                Err(e) => return usage_error(&e),
            };
            cmd_presentation(&cfg)
        }
        Command::Enumerate { n, output } => {
            let cfg = match CommandConfig::new(n, &output, 1) {
                Ok(c) => c,
                Err(e) => return usage_error(&e),
            };
            cmd_enumerate(&cfg)
        }
        Command::Verify {
            n,
            suite,
            jobs,
            output,
        } => {
            let cfg = match CommandConfig::new(n, &output, jobs) {
                Ok(c) => c,
                Err(e) => return usage_error(&e),
            };
            cmd_verify(&cfg, suite)
        }
    }
}

fn cmd_decompose(cfg: &CommandConfig, a: ModuleLabel, b: ModuleLabel, engine: Engine) -> ExitCode {
    let n = cfg.n;
    let formula = || {
        basis_product(n, a, b).map(|g| {
            g.to_multiset()
                .expect("basis products have non-negative multiplicities")
        })
    };
    match engine {
        Engine::Formula => match formula() {
            Ok(ms) => match cfg.emit(ms.to_string(), ms.to_json()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => math_error(&e),
            },
            Err(e) => math_error(&e.to_string()),
        },
        Engine::Oracle => match checks::oracle_product(n, a, b) {
            Ok(ms) => match cfg.emit(ms.to_string(), ms.to_json()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => math_error(&e),
            },
            Err(e) => math_error(&e.to_string()),
        },
        Engine::Both => {
            cfg.note(&format!("decomposing {a} ⊗ {b} with both engines"));
            let f = match formula() {
                Ok(ms) => ms,
                Err(e) => return math_error(&e.to_string()),
            };
            let o = match checks::oracle_product(n, a, b) {
                Ok(ms) => ms,
                Err(e) => return math_error(&e.to_string()),
            };
            let matches = f == o;
            let mut text = String::new();
            let _ = writeln!(text, "formula: {f}");
            let _ = writeln!(text, "oracle:  {o}");
            let _ = write!(
                text,
                "verdict: {}",
                if matches { "match" } else { "MISMATCH" }
            );
            let json = serde_json::json!({
                "n": n,
                "left": { "l": a.length(), "r": a.twist() },
                "right": { "l": b.length(), "r": b.twist() },
                "formula": f.to_json(),
                "oracle": o.to_json(),
                "match": matches,
            });
            if let Err(e) = cfg.emit(text, json) {
                return math_error(&e);
            }
            if matches {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn cmd_mult_table(cfg: &CommandConfig, kind: TableKind) -> ExitCode {
    let n = cfg.n;
    match kind {
        TableKind::Green => {
            let labels = match enumerate(n) {
                Ok(l) => l,
                Err(e) => return math_error(&e.to_string()),
            };
            let pairs: Vec<(ModuleLabel, ModuleLabel)> = labels
                .iter()
                .flat_map(|&a| labels.iter().map(move |&b| (a, b)))
                .collect();
            cfg.note(&format!("computing {} green products", pairs.len()));
            let products: Vec<GreenElement> = checks::run_chunked(&pairs, cfg.jobs, |&(a, b)| {
                basis_product(n, a, b).expect("valid labels")
            });
            let mut text = String::new();
            for ((a, b), p) in pairs.iter().zip(&products) {
                let _ = writeln!(text, "[{a}] * [{b}] = {p}");
            }
            text.pop();
            let rows: Vec<serde_json::Value> = products
                .chunks(labels.len())
                .map(|row| serde_json::Value::Array(row.iter().map(|p| p.to_json()).collect()))
                .collect();
            let json = serde_json::json!({
                "n": n,
                "kind": "green",
                "labels": labels
                    .iter()
                    .map(|l| serde_json::json!({ "l": l.length(), "r": l.twist() }))
                    .collect::<Vec<_>>(),
                "table": rows,
            });
            match cfg.emit(text, json) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => math_error(&e),
            }
        }
        TableKind::Taft => {
            let monomials = TaftElement::basis_monomials(n);
            let pairs: Vec<((usize, usize), (usize, usize))> = monomials
                .iter()
                .flat_map(|&a| monomials.iter().map(move |&b| (a, b)))
                .collect();
            cfg.note(&format!("computing {} monomial products", pairs.len()));
            let products: Vec<TaftElement> =
                checks::run_chunked(&pairs, cfg.jobs, |&((i, j), (k, l))| {
                    TaftElement::monomial(n, i, j, CycloNum::one(n))
                        .mul(&TaftElement::monomial(n, k, l, CycloNum::one(n)))
                        .expect("same order")
                });
            let mut text = String::new();
            for (((i, j), (k, l)), p) in pairs.iter().zip(&products) {
                let _ = writeln!(text, "(g^{i} h^{j}) * (g^{k} h^{l}) = {p}");
            }
            text.pop();
            let rows: Vec<serde_json::Value> = products
                .chunks(monomials.len())
                .map(|row| serde_json::Value::Array(row.iter().map(|p| p.to_json()).collect()))
                .collect();
            let json = serde_json::json!({
                "n": n,
                "kind": "taft",
                "monomials": monomials
                    .iter()
                    .map(|&(i, j)| serde_json::json!({ "g": i, "h": j }))
                    .collect::<Vec<_>>(),
                "table": rows,
            });
            match cfg.emit(text, json) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => math_error(&e),
            }
        }
    }
}

fn cmd_presentation(cfg: &CommandConfig) -> ExitCode {
    let n = cfg.n;
    let (y_rel, z_rel) = match presentation_relations(n) {
        Ok(r) => r,
        Err(e) => return math_error(&e.to_string()),
    };
    let fib = fib_poly(n).expect("n >= 2");
    let text = format!("{y_rel}\n(z - y - 1)({fib})");
    let json = serde_json::json!({
        "n": n,
        "relations": [y_rel.to_json(), z_rel.to_json()],
    });
    match cfg.emit(text, json) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => math_error(&e),
    }
}

fn cmd_enumerate(cfg: &CommandConfig) -> ExitCode {
    let n = cfg.n;
    let labels = match enumerate(n) {
        Ok(l) => l,
        Err(e) => return math_error(&e.to_string()),
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    for label in &labels {
        let flags = classify(n, *label).expect("valid label");
        let (soc, head) = socle_head(n, *label).expect("valid label");
        let mut tags = Vec::new();
        if flags.simple {
            tags.push("simple");
        }
        if flags.projective {
            tags.push("projective");
        }
        if flags.injective {
            tags.push("injective");
        }
        let tag_text = if tags.is_empty() {
            String::new()
        } else {
            format!("  [{}]", tags.join(", "))
        };
        let _ = writeln!(
            text,
            "{label}  dim={}  soc=S_{soc}  head=S_{head}{tag_text}",
            label.length()
        );
        rows.push(serde_json::json!({
            "l": label.length(),
            "r": label.twist(),
            "dim": label.length(),
            "socle": soc,
            "head": head,
            "simple": flags.simple,
            "projective": flags.projective,
            "injective": flags.injective,
        }));
    }
    text.pop();
    let json = serde_json::json!({ "n": n, "modules": rows });
    match cfg.emit(text, json) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => math_error(&e),
    }
}

fn cmd_verify(cfg: &CommandConfig, suite: Suite) -> ExitCode {
    let n = cfg.n;
    cfg.note(&format!(
        "running suite `{}` at n = {n} with {} job(s)",
        suite.name(),
        cfg.jobs
    ));
    let started = std::time::Instant::now();
    let reports: Vec<CheckReport> = match checks::run_suite(n, suite.name(), cfg.jobs) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    cfg.note(&format!("finished in {:.2?}", started.elapsed()));

    let all_passed = reports.iter().all(|r| r.passed);
    let mut text = String::new();
    for r in &reports {
        match (&r.passed, &r.detail) {
            (true, _) => {
                let _ = writeln!(text, "PASS {}", r.name);
            }
            (false, Some(d)) => {
                let _ = writeln!(text, "FAIL {}: {d}", r.name);
            }
            (false, None) => {
                let _ = writeln!(text, "FAIL {}", r.name);
            }
        }
    }
    let _ = write!(
        text,
        "{}: {} of {} checks passed",
        if all_passed { "ok" } else { "FAILED" },
        reports.iter().filter(|r| r.passed).count(),
        reports.len()
    );
    let json = serde_json::json!({
        "n": n,
        "suite": suite.name(),
        "checks": reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "name": r.name,
                    "passed": r.passed,
                    "detail": r.detail,
                })
            })
            .collect::<Vec<_>>(),
        "all_passed": all_passed,
    });
    if let Err(e) = cfg.emit(text, json) {
        return math_error(&e);
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
