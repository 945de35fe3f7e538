//! The `homcat` command line: argument parsing, dispatch and output.
//!
//! Machine output carries doubled degrees (`h2`, `hh2`, `q2`, `t2`), so every
//! value is an integer. A one-line human summary goes to stderr with the
//! halves written as fractions.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::{QTPoly, TriPoincare};
use crate::complexes::{braid_complex, check_d_squared, crossing_complex};
use crate::error::Error;
use crate::hochschild::{h12, hh_closed, hhh};
use crate::moybracket::{bracket, normalized_bracket};
use crate::oracle::{verify_a2_cases, verify_markov2_oracles, verify_square_lemmas, Report, Status};
use crate::presentations::present_cached;
use crate::webs::{diagram_stats, ColouredBraid, LadderWeb};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_QMAX: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "homcat",
    about = "Coloured HOMFLY-PT homology of braid closures",
    after_help = "All degrees in machine output are doubled integers: h2, hh2, q2 and t2 are twice the \
                  homological, Hochschild, q and t degrees. A variable of index i has q2 = 4i."
)]
pub struct Cli {
    /// Worker threads; defaults to HOMCAT_THREADS, then to all cores.
    #[arg(long, global = true, env = "HOMCAT_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of the closure of a coloured braid.
    EvalBraid {
        /// Bottom colours, e.g. `2,1`.
        #[arg(long)]
        colours: String,
        /// Generators, e.g. `1,-2,1`; `i` is a positive crossing of strands i, i+1.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        word: String,
        /// Largest real q-degree computed.
        #[arg(long, default_value_t = 8, allow_hyphen_values = true)]
        qmax: i64,
        #[arg(long, value_enum, default_value_t = Mode::Hhh)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Hochschild homology of the full closure of a web read from JSON.
    EvalWeb {
        path: PathBuf,
        #[arg(long, default_value_t = 8, allow_hyphen_values = true)]
        qmax: i64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Runs oracle suites and prints a JSON report; exits 1 on any failure.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 8, allow_hyphen_values = true)]
        qmax: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Hhh,
    H12,
    Bracket,
    NormalizedBracket,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemmas,
    Markov2,
    A2,
    Dsq,
    All,
}

/// What a command produced: text for stdout, an optional summary for stderr
/// and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub summary: Option<String>,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String, summary: String) -> Self {
        Outcome { stdout, summary: Some(summary), code: EXIT_OK }
    }

    fn error(code: i32, msg: String) -> Self {
        Outcome { stdout: String::new(), summary: Some(format!("error: {msg}")), code }
    }
}

fn code_of(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Web { .. } | Error::Json(_) | Error::Io(_) | Error::Closure(_) | Error::Domain(_) => {
            EXIT_INPUT
        }
        _ => EXIT_FAILED,
    }
}

fn half(x: i64) -> String {
    if x % 2 == 0 {
        (x / 2).to_string()
    } else {
        format!("{x}/2")
    }
}

fn tri_rows(t: &TriPoincare) -> Vec<serde_json::Value> {
    t.rows().iter().map(|r| json!({"h2": r.h2, "hh2": r.hh2, "q2": r.q2, "dim": r.dim})).collect()
}

fn poly_rows(p: &QTPoly) -> Vec<serde_json::Value> {
    p.terms().map(|(&(t2, q2), c)| json!({"t2": t2, "q2": q2, "coeff": c.to_string()})).collect()
}

/// Renders records with a metadata header. Rows arrive sorted.
fn render(meta: serde_json::Value, columns: &[&str], rows: Vec<serde_json::Value>, format: Format) -> String {
    match format {
        Format::Json => {
            let mut doc = meta;
            doc["rows"] = serde_json::Value::Array(rows);
            serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
        }
        Format::Tsv => {
            let mut out = String::new();
            if let serde_json::Value::Object(m) = &meta {
                for (k, v) in m {
                    let _ = writeln!(out, "# {k}\t{v}");
                }
            }
            let _ = writeln!(out, "{}", columns.join("\t"));
            for r in rows {
                let cells: Vec<String> = columns
                    .iter()
                    .map(|c| match &r[*c] {
                        serde_json::Value::String(s) => s.clone(),
                        v => v.to_string(),
                    })
                    .collect();
                let _ = writeln!(out, "{}", cells.join("\t"));
            }
            out
        }
    }
}

pub fn eval_braid(colours: &str, word: &str, qmax: i64, mode: Mode, format: Format) -> Outcome {
    let b = match ColouredBraid::parse(colours, word) {
        Ok(b) => b,
        Err(e) => return Outcome::error(EXIT_INPUT, e.to_string()),
    };
    if qmax <= 0 {
        return Outcome::error(EXIT_QMAX, format!("qmax must be positive, got {qmax}"));
    }
    let stats = diagram_stats(&b);
    let n = stats.normalization2();
    let mut meta = json!({"colours": b.colours, "word": b.word, "mode": mode, "qmax": qmax, "stats": stats});
    let result = match mode {
        Mode::Hhh | Mode::H12 => {
            let t = if mode == Mode::Hhh { hhh(&b, qmax) } else { h12(&b, qmax) };
            meta["shift"] = if mode == Mode::H12 { json!({"h2": -n, "hh2": n, "q2": n}) } else { json!(null) };
            t.map(|t| {
                let summary = format!("{} rows, total dimension {} up to q = {qmax}", t.rows().len(), t.total_dim());
                (render(meta, &["h2", "hh2", "q2", "dim"], tri_rows(&t), format), summary)
            })
        }
        Mode::Bracket | Mode::NormalizedBracket => {
            let p = if mode == Mode::Bracket { bracket(&b, qmax) } else { normalized_bracket(&b, qmax) };
            p.map(|p| {
                let pf = p.prefactor();
                meta["shift"] = match pf {
                    Some(pf) => json!({"prefactor": pf}),
                    None if mode == Mode::NormalizedBracket => json!({"t2": n, "q2": n}),
                    None => json!(null),
                };
                let summary = match pf {
                    Some(pf) => format!(
                        "{} terms times ({}tq)^({}) up to q = {qmax}",
                        p.terms().count(),
                        if pf.sign_base < 0 { "-" } else { "" },
                        half(pf.t2)
                    ),
                    None => format!("{} terms up to q = {qmax}", p.terms().count()),
                };
                (render(meta, &["t2", "q2", "coeff"], poly_rows(&p), format), summary)
            })
        }
    };
    match result {
        Ok((out, summary)) => Outcome::ok(out, summary),
        Err(e) => Outcome::error(code_of(&e), e.to_string()),
    }
}

pub fn eval_web(path: &std::path::Path, qmax: i64, format: Format) -> Outcome {
    let web = match std::fs::read_to_string(path).map_err(Error::from).and_then(|s| LadderWeb::from_json(&s)) {
        Ok(w) => w,
        Err(e) => return Outcome::error(EXIT_INPUT, e.to_string()),
    };
    if qmax <= 0 {
        return Outcome::error(EXIT_QMAX, format!("qmax must be positive, got {qmax}"));
    }
    match hh_closed(&present_cached(&web), qmax) {
        Ok(table) => {
            let rows: Vec<serde_json::Value> =
                table.rows().into_iter().map(|(hh2, q2, dim)| json!({"hh2": hh2, "q2": q2, "dim": dim})).collect();
            let summary = format!("{} rows up to q = {qmax}", rows.len());
            let meta = json!({"web": serde_json::from_str::<serde_json::Value>(&web.to_json()).ok(), "qmax": qmax});
            Outcome::ok(render(meta, &["hh2", "q2", "dim"], rows, format), summary)
        }
        Err(e) => Outcome::error(code_of(&e), e.to_string()),
    }
}

/// d² = 0 on every single-crossing complex, both mixed orders included, and
/// on the two-crossing braids `σ1σ1`, `σ1σ1⁻¹` of each colour pair.
pub fn verify_dsq(qmax: u32) -> Report {
    let mut checked = 0;
    let mut first_failure = None;
    let mut cases: Vec<(String, crate::error::Result<crate::complexes::BimComplex>)> = Vec::new();
    for (c1, c2) in [(1, 1), (2, 2), (1, 2), (2, 1)] {
        for sign in [1, -1] {
            cases.push((format!("crossing ({c1},{c2}) sign {sign}"), crossing_complex(c1, c2, sign)));
        }
    }
    for (c1, c2) in [(1u8, 1u8), (2, 2), (1, 2)] {
        for word in [vec![1, 1], vec![1, -1]] {
            let c = ColouredBraid::new(vec![c1, c2], word.clone()).and_then(|b| braid_complex(&b));
            cases.push((format!("braid ({c1},{c2}) {word:?}"), c));
        }
    }
    for (name, c) in cases {
        match c.and_then(|c| check_d_squared(&c, qmax as i64)) {
            Ok(r) => {
                checked += r.checked;
                if let Some(f) = r.first_failure {
                    first_failure.get_or_insert(format!("{name}: {f}"));
                }
            }
            Err(e) => {
                checked += 1;
                first_failure.get_or_insert(format!("{name}: {e}"));
            }
        }
    }
    let status = if first_failure.is_none() { Status::Pass } else { Status::Fail };
    Report { check: "dsq".into(), status, first_failure, checked }
}

pub fn verify(suite: Suite, qmax: i64) -> Outcome {
    if qmax <= 0 {
        return Outcome::error(EXIT_QMAX, format!("qmax must be positive, got {qmax}"));
    }
    let q = qmax as u32;
    let runs: Vec<fn(u32) -> Report> = match suite {
        Suite::Lemmas => vec![verify_square_lemmas],
        Suite::Markov2 => vec![verify_markov2_oracles],
        Suite::A2 => vec![verify_a2_cases],
        Suite::Dsq => vec![verify_dsq],
        Suite::All => vec![verify_square_lemmas, verify_markov2_oracles, verify_a2_cases, verify_dsq],
    };
    let reports: Vec<Report> = runs.into_iter().map(|f| f(q)).collect();
    let passed = reports.iter().filter(|r| r.passed()).count();
    let code = if passed == reports.len() { EXIT_OK } else { EXIT_FAILED };
    let stdout = serde_json::to_string_pretty(&reports).expect("reports serialize") + "\n";
    Outcome { stdout, summary: Some(format!("{passed}/{} checks passed", reports.len())), code }
}

/// Parses `args`, runs the command and returns what to print.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return Outcome { stdout: if code == EXIT_OK { e.to_string() } else { String::new() }, summary: (code != EXIT_OK).then(|| e.to_string()), code };
        }
    };
    if let Some(n) = cli.threads {
        // a second initialization (tests calling run twice) is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    match cli.command {
        Command::EvalBraid { colours, word, qmax, mode, format } => eval_braid(&colours, &word, qmax, mode, format),
        Command::EvalWeb { path, qmax, format } => eval_web(&path, qmax, format),
        Command::Verify { suite, qmax } => verify(suite, qmax),
    }
}
