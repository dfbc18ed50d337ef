//! `mband`: exact analysis of M-matrices and the band structure of their
//! inverses.
//!
//! JSON reports go to stdout; prose (progress, `--verbose` summaries,
//! errors) goes to stderr. Exit codes: 0 success/affirmative, 1 negative
//! domain verdict (not an M-matrix, singular), 2 input/size errors, 3
//! path-enumeration cap exceeded, 4 internal cross-check failure.

mod matfile;

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mband_core::banded::{self, BandVerdict, LemmaTridiagVerdict};
use mband_core::digraph::{Digraph, DEFAULT_PATH_CAP};
use mband_core::maybee::{self, PathTerm, SignPattern};
use mband_core::mclass;
use mband_core::search::{self, GeneratorSpec, HuntCheckpoint, HuntMode, HuntStatus};
use mband_core::{Error, Rational, RationalMatrix};

#[derive(Parser)]
#[command(name = "mband", version, about = "Exact M-matrix band analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a matrix as Z-matrix / M-matrix, with witnesses
    Classify {
        /// Matrix file (text or JSON); "-" reads stdin
        input: PathBuf,
        /// Human-readable summary on stderr
        #[arg(long)]
        verbose: bool,
    },
    /// Compute the exact inverse by elimination, path sums, or both
    Invert {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
        /// Also render entries with this many decimal digits
        #[arg(long, value_name = "K")]
        decimal: Option<usize>,
        /// Emit the path-term breakdown for entry (I, J), 1-based
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        explain: Option<Vec<usize>>,
        /// Cap on enumerated paths per entry
        #[arg(long, env = "MBAND_PATH_CAP", default_value_t = DEFAULT_PATH_CAP)]
        path_cap: usize,
        #[arg(long)]
        verbose: bool,
    },
    /// Predict the sign pattern of the inverse from reachability
    Signs {
        input: PathBuf,
        /// Also compute the actual inverse and compare patterns
        #[arg(long)]
        verify: bool,
        /// Include DOT source for the digraph in the report
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        verbose: bool,
    },
    /// Check band conditions and the associated inverse theorems
    Check {
        #[arg(value_enum)]
        which: WhichCheck,
        input: PathBuf,
        #[arg(long)]
        verbose: bool,
    },
    /// Scan for a pentadiagonal M-matrix satisfying all conditions whose
    /// inverse is not pentadiagonal
    Hunt {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        /// Cap on candidates examined (cumulative across resumes).
        /// Defaults to the full pattern space in exhaustive mode;
        /// required in random mode.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Checkpoint file: loaded when present, rewritten on exit
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Emit the digraph of the matrix in DOT format
    Dot { input: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Maybee,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichCheck {
    Tri,
    Penta,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Random,
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Singular | Error::NotZMatrix | Error::NotMMatrix | Error::NotTridiagonal => 1,
            Error::PathExplosion { .. } => 3,
            Error::InternalInconsistency(_) | Error::InvalidPath { .. } => 4,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<matfile::ParseDiag> for Failure {
    fn from(d: matfile::ParseDiag) -> Self {
        Failure::new(2, d.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    };
    std::process::exit(code);
}

fn load_matrix(path: &Path) -> Result<RationalMatrix, Failure> {
    let src = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::new(2, format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?
    };
    Ok(matfile::parse_matrix(&src)?)
}

fn emit_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::new(4, format!("report serialization failed: {e}")))?;
    println!("{text}");
    Ok(())
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Classify { input, verbose } => cmd_classify(&input, verbose),
        Command::Invert {
            input,
            method,
            decimal,
            explain,
            path_cap,
            verbose,
        } => cmd_invert(&input, method, decimal, explain, path_cap, verbose),
        Command::Signs {
            input,
            verify,
            dot,
            verbose,
        } => cmd_signs(&input, verify, dot, verbose),
        Command::Check {
            which,
            input,
            verbose,
        } => cmd_check(which, &input, verbose),
        Command::Hunt {
            order,
            mode,
            budget,
            seed,
            checkpoint,
        } => cmd_hunt(order, mode, budget, seed, checkpoint.as_deref()),
        Command::Dot { input } => {
            let a = load_matrix(&input)?;
            print!("{}", Digraph::of_matrix(&a).to_dot());
            Ok(0)
        }
    }
}

fn cmd_classify(input: &Path, verbose: bool) -> Result<i32, Failure> {
    let a = load_matrix(input)?;
    let report = mclass::classify(&a)?;
    emit_json(&report)?;
    if verbose {
        eprintln!("order:    {}", a.order());
        eprintln!("Z-matrix: {}", if report.is_z { "yes" } else { "no" });
        eprintln!("M-matrix: {}", if report.is_m { "yes" } else { "no" });
        for (test, verdict) in &report.method_verdicts {
            eprintln!("  {test:?}: {verdict}");
        }
        if let Some((alpha, det)) = &report.failing_minor {
            eprintln!("failing principal minor {alpha}: det = {det}");
        }
        if let Some(x) = &report.witness_vector {
            let rendered: Vec<String> = x.iter().map(Rational::to_string).collect();
            eprintln!("witness x = ({})", rendered.join(", "));
        }
    }
    Ok(if report.is_m { 0 } else { 1 })
}

#[derive(Serialize)]
struct ExplainReport {
    /// 1-based entry coordinates, as given on the command line.
    row: usize,
    col: usize,
    value: Rational,
    terms: Vec<PathTerm>,
}

#[derive(Serialize)]
struct InvertReport {
    n: usize,
    method: &'static str,
    inverse: RationalMatrix,
    /// Present for `--method both`: the two routes agreed exactly.
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    routes_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    decimal: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    explain: Option<ExplainReport>,
}

fn cmd_invert(
    input: &Path,
    method: Method,
    decimal: Option<usize>,
    explain: Option<Vec<usize>>,
    path_cap: usize,
    verbose: bool,
) -> Result<i32, Failure> {
    let a = load_matrix(input)?;
    let n = a.order();
    let (inverse, routes_match, method_name) = match method {
        Method::Direct => (a.inverse_direct()?, None, "direct"),
        Method::Maybee => (maybee::inverse(&a, path_cap)?, None, "maybee"),
        Method::Both => {
            let direct = a.inverse_direct()?;
            let by_paths = maybee::inverse(&a, path_cap)?;
            if direct != by_paths {
                return Err(Error::InternalInconsistency(
                    "direct and path-sum inverses disagree".into(),
                )
                .into());
            }
            (direct, Some(true), "both")
        }
    };
    let explain = match explain {
        Some(coords) => {
            let (i, j) = (coords[0], coords[1]);
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Failure::new(
                    2,
                    format!("--explain indices must lie in 1..={n}"),
                ));
            }
            let (value, terms) = maybee::inverse_entry(&a, i - 1, j - 1, path_cap)?;
            Some(ExplainReport {
                row: i,
                col: j,
                value,
                terms,
            })
        }
        None => None,
    };
    let decimal = decimal.map(|k| {
        (0..n)
            .map(|i| (0..n).map(|j| inverse.get(i, j).to_decimal(k)).collect())
            .collect()
    });
    let report = InvertReport {
        n,
        method: method_name,
        inverse,
        routes_match,
        decimal,
        explain,
    };
    emit_json(&report)?;
    if verbose {
        eprint!("inverse:\n{}", report.inverse);
    }
    Ok(0)
}

#[derive(Serialize)]
struct SignsReport {
    predicted: SignPattern,
    #[serde(skip_serializing_if = "Option::is_none")]
    actual: Option<SignPattern>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    patterns_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dot: Option<String>,
}

fn cmd_signs(input: &Path, verify: bool, dot: bool, verbose: bool) -> Result<i32, Failure> {
    let a = load_matrix(input)?;
    let predicted = maybee::predict_sign_structure(&a)?;
    let (actual, patterns_match) = if verify {
        let actual = SignPattern::of(&a.inverse_direct()?);
        let matches = actual == predicted;
        (Some(actual), Some(matches))
    } else {
        (None, None)
    };
    let report = SignsReport {
        predicted,
        actual,
        patterns_match,
        dot: dot.then(|| Digraph::of_matrix(&a).to_dot()),
    };
    emit_json(&report)?;
    if verbose {
        let n = a.order();
        for i in 0..n {
            let row: Vec<&str> = (0..n)
                .map(|j| match report.predicted.get(i, j) {
                    maybee::Sign::Pos => "+",
                    maybee::Sign::Zero => "0",
                    maybee::Sign::Neg => "-",
                })
                .collect();
            eprintln!("{}", row.join(" "));
        }
    }
    if patterns_match == Some(false) {
        // would falsify the reachability criterion; never expected
        return Err(Error::InternalInconsistency(
            "predicted sign pattern does not match the actual inverse".into(),
        )
        .into());
    }
    Ok(0)
}

#[derive(Serialize)]
struct CheckReport {
    which: &'static str,
    verdict: BandVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    lemma: Option<LemmaTridiagVerdict>,
}

fn cmd_check(which: WhichCheck, input: &Path, verbose: bool) -> Result<i32, Failure> {
    let a = load_matrix(input)?;
    let report = match which {
        WhichCheck::Tri => {
            let verdict = banded::verify_theorem_tridiag(&a)?;
            let lemma = if banded::is_tridiagonal(&a) {
                let lemma = banded::verify_lemma_tridiag(&a)?;
                if !lemma.holds() {
                    return Err(Error::InternalInconsistency(
                        "zero-propagation lemma failed on a tridiagonal input".into(),
                    )
                    .into());
                }
                Some(lemma)
            } else {
                None
            };
            CheckReport {
                which: "tri",
                verdict,
                lemma,
            }
        }
        WhichCheck::Penta => CheckReport {
            which: "penta",
            verdict: banded::verify_theorem_penta(&a)?,
            lemma: None,
        },
    };
    emit_json(&report)?;
    if verbose {
        let v = &report.verdict;
        eprintln!("band(A)     = {:?}", v.a_band);
        eprintln!("band(A^-1)  = {:?}", v.ainv_band);
        for r in &v.condition_reports {
            eprintln!(
                "{:?}: {}",
                r.condition_id,
                if r.holds { "holds" } else { "violated" }
            );
            for viol in &r.violations {
                let parts: Vec<String> = viol
                    .antecedent
                    .iter()
                    .chain(viol.consequent.iter())
                    .map(|e| format!("{} = {}", e.term, e.value))
                    .collect();
                eprintln!("  at i = {}: {}", viol.index + 1, parts.join(", "));
            }
        }
    }
    Ok(0)
}

fn read_checkpoint(path: &Path) -> Result<Option<HuntCheckpoint>, Failure> {
    if !path.exists() {
        return Ok(None);
    }
    let src = fs::read_to_string(path)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", path.display())))?;
    let cp = serde_json::from_str(&src)
        .map_err(|e| Failure::new(2, format!("bad checkpoint {}: {e}", path.display())))?;
    Ok(Some(cp))
}

fn cmd_hunt(
    order: usize,
    mode: ModeArg,
    budget: Option<u64>,
    seed: u64,
    checkpoint: Option<&Path>,
) -> Result<i32, Failure> {
    let mode = match mode {
        ModeArg::Exhaustive => HuntMode::Exhaustive,
        ModeArg::Random => HuntMode::Random,
    };
    let budget = match (budget, mode) {
        (Some(b), _) => b,
        (None, HuntMode::Exhaustive) => u64::MAX,
        (None, HuntMode::Random) => {
            return Err(Failure::new(2, "--budget is required in random mode"))
        }
    };
    let spec = GeneratorSpec::new(order, (2, 2), seed);
    let resume = match checkpoint {
        Some(path) => read_checkpoint(path)?,
        None => None,
    };
    if let Some(cp) = &resume {
        if !cp.matches(order, mode, seed) {
            return Err(Failure::new(
                2,
                "checkpoint was written by a hunt with different parameters",
            ));
        }
    }
    let outcome = search::hunt_converse_penta(
        order,
        budget,
        mode,
        &spec,
        resume.as_ref(),
        |examined, total| match total {
            Some(t) => eprintln!("examined {examined}/{t} candidates"),
            None => eprintln!("examined {examined} candidates"),
        },
    )?;
    if let Some(path) = checkpoint {
        let terminal = outcome.status != HuntStatus::BudgetReached;
        let cp = HuntCheckpoint {
            order,
            mode,
            band: (2, 2),
            seed,
            next_index: outcome.next_index,
            outcome: terminal.then(|| outcome.clone()),
        };
        let text = serde_json::to_string_pretty(&cp)
            .map_err(|e| Failure::new(4, format!("checkpoint serialization failed: {e}")))?;
        fs::write(path, text)
            .map_err(|e| Failure::new(2, format!("cannot write {}: {e}", path.display())))?;
    }
    emit_json(&outcome)?;
    eprintln!(
        "hunt finished: {:?} after {} candidates",
        outcome.status, outcome.examined
    );
    Ok(0)
}
