//! Command-line front end: `analyze`, `verify`, `sweep` and `export`.
//!
//! Exit codes: 0 success, 1 mismatch, 2 invalid input, 3 degenerate graph.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfmat::PrimeField;
use crate::lincode::{Budgets, CodeParams, DEFAULT_ENUMERATION_BUDGET, DEFAULT_SEARCH_BUDGET};
use crate::modring::factorize;
use crate::theorems::{
    self, KnownIssues, Outcome, Prediction, Statuses, SweepEntry, SweepSummary, VerificationReport,
    Witness,
};
use crate::zdgraph::{build_graph, GraphStats};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "zdcode",
    version,
    about = "Linear codes from zero-divisor graphs of Z_n"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct CodeArgs {
    /// Field characteristic.
    #[arg(long = "p", default_value_t = 2)]
    p: u64,
    /// Largest number of codewords to enumerate exactly.
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    budget: u64,
    /// Work limit for the low-weight codeword search.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    search_budget: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Graph statistics and code parameters for one modulus.
    Analyze {
        n: u64,
        #[command(flatten)]
        code: CodeArgs,
    },
    /// Compare computed parameters with the predicted ones.
    Verify {
        n: u64,
        #[command(flatten)]
        code: CodeArgs,
        /// Known-discrepancy file replacing the bundled one.
        #[arg(long)]
        known: Option<PathBuf>,
    },
    /// Verify every composite n up to a bound.
    Sweep {
        #[arg(long)]
        nmax: u64,
        /// Field characteristics, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "2")]
        primes: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        search_budget: u64,
        #[arg(long)]
        known: Option<PathBuf>,
        /// Worker threads (default: all cores).
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Write the incidence matrix or the graph.
    Export {
        n: u64,
        #[arg(long, value_enum, default_value_t = What::Incidence)]
        what: What,
        #[arg(long = "p", default_value_t = 2)]
        p: u64,
        /// Defaults to `txt` for the incidence matrix and `dot` for the graph.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Incidence,
    Graph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Txt,
    Dot,
}

/// Everything `analyze --json` prints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisOutput {
    pub n: u64,
    pub p: u8,
    pub graph: GraphStats,
    pub code: CodeParams,
    pub prediction: Prediction,
    pub status: Statuses,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    #[serde(flatten)]
    pub report: VerificationReport,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownRow {
    pub n: u64,
    pub p: u8,
    pub ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepOutput {
    pub nmax: u64,
    pub primes: Vec<u8>,
    pub rows: Vec<SweepEntry>,
    pub summary: SweepSummary,
    pub known_discrepancies: Vec<KnownRow>,
    pub elapsed_ms: u64,
}

enum Failure {
    Error(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome_<T> = std::result::Result<T, Failure>;

/// Run the command line `args` (including the program name), writing normal
/// output to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_degenerate() {
                EXIT_DEGENERATE
            } else {
                EXIT_INVALID
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
    }
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn field(p: u64) -> Result<PrimeField> {
    PrimeField::new(p)
}

fn load_known(path: Option<&PathBuf>) -> Outcome_<KnownIssues> {
    match path {
        None => Ok(KnownIssues::builtin()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(KnownIssues::from_toml(&text)?)
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome_<i32> {
    let start = Instant::now();
    match command {
        Command::Analyze { n, code } => {
            let f = field(code.p)?;
            let budgets = Budgets {
                enumeration: code.budget,
                search: code.search_budget,
            };
            let r = theorems::verify(&factorize(n)?, f, budgets)?;
            let output = AnalysisOutput {
                n: r.n,
                p: r.p,
                graph: r.graph,
                code: r.computed,
                prediction: r.predicted,
                status: r.status,
                elapsed_ms: elapsed_ms(start),
            };
            let text = if code.json {
                to_json(&output)
            } else {
                analysis_text(&output)
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { n, code, known } => {
            let f = field(code.p)?;
            let known = load_known(known.as_ref())?;
            let budgets = Budgets {
                enumeration: code.budget,
                search: code.search_budget,
            };
            let report = theorems::verify_with(&factorize(n)?, f, budgets, &known)?;
            let exit = if report.has_mismatch() {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            };
            let output = VerifyOutput {
                report,
                elapsed_ms: elapsed_ms(start),
            };
            let text = if code.json {
                to_json(&output)
            } else {
                verify_text(&output)
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(exit)
        }
        Command::Sweep {
            nmax,
            primes,
            budget,
            search_budget,
            known,
            threads,
            json,
        } => {
            let mut fields = primes
                .iter()
                .map(|&p| field(p))
                .collect::<Result<Vec<_>>>()?;
            fields.sort_by_key(|f| f.p());
            fields.dedup();
            let known = load_known(known.as_ref())?;
            let budgets = Budgets {
                enumeration: budget,
                search: search_budget,
            };
            let run = || theorems::sweep(nmax, &fields, budgets, &known);
            let sweep = match threads {
                Some(t) => rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Failure::Usage(e.to_string()))?
                    .install(run)?,
                None => run()?,
            };
            let known_rows = sweep
                .entries
                .iter()
                .filter(|e| e.outcome() == Outcome::KnownDiscrepancy)
                .filter_map(SweepEntry::report)
                .map(|r| KnownRow {
                    n: r.n,
                    p: r.p,
                    ids: r.known_discrepancies.clone(),
                })
                .collect();
            let exit = if sweep.summary.unexplained_mismatches > 0 {
                EXIT_MISMATCH
            } else {
                EXIT_OK
            };
            let output = SweepOutput {
                nmax,
                primes: fields.iter().map(|f| f.p()).collect(),
                rows: sweep.entries,
                summary: sweep.summary,
                known_discrepancies: known_rows,
                elapsed_ms: elapsed_ms(start),
            };
            let text = if json {
                to_json(&output)
            } else {
                sweep_text(&output)
            };
            out.write_all(text.as_bytes()).map_err(io)?;
            Ok(exit)
        }
        Command::Export {
            n,
            what,
            p,
            format,
            output,
        } => {
            let format = format.unwrap_or(match what {
                What::Incidence => Format::Txt,
                What::Graph => Format::Dot,
            });
            let f = field(p)?;
            let g = build_graph(&factorize(n)?)?;
            let text = match (what, format) {
                (What::Incidence, Format::Txt) => g.incidence_matrix(f).matrix.to_text(),
                (What::Graph, Format::Dot) => g.to_dot(),
                (What::Incidence, Format::Dot) => {
                    return Err(Failure::Usage(
                        "the incidence matrix is exported as txt".into(),
                    ))
                }
                (What::Graph, Format::Txt) => {
                    return Err(Failure::Usage("the graph is exported as dot".into()))
                }
            };
            match output {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn kebab<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn opt(v: Option<u64>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn prediction_line(p: &Prediction) -> String {
    format!(
        "[{}, {}, {}] ({})",
        opt(p.length),
        opt(p.dimension),
        opt(p.distance),
        kebab(&p.source)
    )
}

fn status_line(s: &Statuses) -> String {
    format!(
        "length {}, dimension {}, distance {}, edge-connectivity {}",
        kebab(&s.length),
        kebab(&s.dimension),
        kebab(&s.distance),
        kebab(&s.edge_connectivity)
    )
}

fn common_text(
    s: &mut String,
    n: u64,
    p: u8,
    g: &GraphStats,
    code: &CodeParams,
    pred: &Prediction,
    status: &Statuses,
) {
    let _ = writeln!(s, "n = {n}, p = {p}");
    let _ = writeln!(s, "  vertices           {}", g.vertex_count);
    let _ = writeln!(s, "  edges              {}", g.edge_count);
    let _ = writeln!(s, "  connected          {}", yes_no(g.is_connected));
    let _ = writeln!(s, "  bipartite          {}", yes_no(g.is_bipartite));
    let _ = writeln!(s, "  minimum degree     {}", g.min_degree);
    let _ = writeln!(
        s,
        "  edge connectivity  {} (formula {}, {})",
        g.edge_connectivity,
        g.lambda_formula,
        kebab(&g.lambda_method)
    );
    let _ = writeln!(s, "  code               {} ({})", code, kebab(&code.method));
    let _ = writeln!(s, "  prediction         {}", prediction_line(pred));
    let _ = writeln!(s, "  status             {}", status_line(status));
}

fn analysis_text(o: &AnalysisOutput) -> String {
    let mut s = String::new();
    common_text(
        &mut s,
        o.n,
        o.p,
        &o.graph,
        &o.code,
        &o.prediction,
        &o.status,
    );
    let _ = writeln!(s, "  time               {} ms", o.elapsed_ms);
    s
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Codeword {
            component,
            weight,
            support,
            values,
        } => format!(
            "{}: codeword of weight {weight} on edges {support:?} with values {values:?}",
            kebab(component)
        ),
        Witness::SearchBound { component, lower } => {
            format!(
                "{}: no nonzero codeword of weight below {lower}",
                kebab(component)
            )
        }
        Witness::Cut {
            component,
            side,
            size,
        } => {
            format!("{}: cut of size {size} around {side:?}", kebab(component))
        }
        Witness::Rank {
            component,
            rank,
            pivots,
        } => {
            format!(
                "{}: rank {rank}, pivot columns {pivots:?}",
                kebab(component)
            )
        }
        Witness::EdgeCount { component, edges } => format!("{}: {edges} edges", kebab(component)),
    }
}

fn verify_text(o: &VerifyOutput) -> String {
    let r = &o.report;
    let mut s = String::new();
    common_text(
        &mut s,
        r.n,
        r.p,
        &r.graph,
        &r.computed,
        &r.predicted,
        &r.status,
    );
    let _ = writeln!(
        s,
        "  result             {}",
        if r.has_mismatch() { "MISMATCH" } else { "ok" }
    );
    for w in &r.witnesses {
        let _ = writeln!(s, "  witness            {}", witness_text(w));
    }
    for note in &r.notes {
        let _ = writeln!(s, "  note               {note}");
    }
    let _ = writeln!(s, "  time               {} ms", o.elapsed_ms);
    s
}

fn sweep_text(o: &SweepOutput) -> String {
    let header = ["n", "p", "|V|", "|E|", "code", "predicted", "outcome"];
    let mut rows: Vec<[String; 7]> = Vec::new();
    for e in &o.rows {
        match e {
            SweepEntry::Report { outcome, report: r } => rows.push([
                r.n.to_string(),
                r.p.to_string(),
                r.graph.vertex_count.to_string(),
                r.graph.edge_count.to_string(),
                r.computed.to_string(),
                format!(
                    "[{}, {}, {}]",
                    opt(r.predicted.length),
                    opt(r.predicted.dimension),
                    opt(r.predicted.distance)
                ),
                kebab(outcome),
            ]),
            SweepEntry::Skipped { n, p, reason } => rows.push([
                n.to_string(),
                p.to_string(),
                "-".into(),
                "-".into(),
                "-".into(),
                "-".into(),
                format!("skipped ({reason})"),
            ]),
        }
    }
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut s = String::new();
    let line = |s: &mut String, cells: &[&str]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(s, "{}", parts.join("  ").trim_end());
    };
    line(&mut s, &header);
    for row in &rows {
        line(&mut s, &row.each_ref().map(String::as_str));
    }
    let m = &o.summary;
    let _ = writeln!(
        s,
        "\n{} rows: {} match, {} known discrepancies, {} unexplained mismatches, {} unverified (budget), {} not applicable, {} skipped",
        m.rows,
        m.matched,
        m.known_discrepancies,
        m.unexplained_mismatches,
        m.unverified_budget,
        m.not_applicable,
        m.skipped
    );
    if !o.known_discrepancies.is_empty() {
        let _ = writeln!(s, "known discrepancies:");
        for k in &o.known_discrepancies {
            let _ = writeln!(s, "  n = {}, p = {}: {}", k.n, k.p, k.ids.join(", "));
        }
    }
    let _ = writeln!(s, "time: {} ms", o.elapsed_ms);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("zdcode").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn analyze_reports_parameters() {
        let (code, out, _) = call(&["analyze", "15", "--p", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("[8, 5, 2]"));
    }

    #[test]
    fn degenerate_and_invalid_inputs() {
        let (code, _, err) = call(&["analyze", "7"]);
        assert_eq!(code, EXIT_DEGENERATE);
        assert!(err.contains("no zero-divisors"));
        let (code, _, err) = call(&["analyze", "4"]);
        assert_eq!(code, EXIT_DEGENERATE);
        assert!(err.contains("graph has no edges"));
        assert_eq!(call(&["analyze", "1"]).0, EXIT_INVALID);
        assert_eq!(call(&["analyze", "15", "--p", "4"]).0, EXIT_INVALID);
        assert_eq!(call(&["analyze"]).0, EXIT_INVALID);
        assert_eq!(call(&["frobnicate"]).0, EXIT_INVALID);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn analysis_json_round_trips() {
        let (code, out, _) = call(&["analyze", "30", "--json"]);
        assert_eq!(code, 0);
        let parsed: AnalysisOutput = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed.code.to_string(), "[38, 20, 1]_2");
        assert_eq!(
            serde_json::from_str::<AnalysisOutput>(&to_json(&parsed)).unwrap(),
            parsed
        );
    }

    #[test]
    fn export_formats() {
        let (code, out, _) = call(&["export", "9", "--what", "graph"]);
        assert_eq!(code, 0);
        assert_eq!(out, "graph zdn {\n  3 -- 6;\n}\n");
        assert_eq!(
            call(&["export", "9", "--what", "graph", "--format", "txt"]).0,
            EXIT_INVALID
        );
        assert_eq!(call(&["export", "9", "--format", "png"]).0, EXIT_INVALID);
    }
}
