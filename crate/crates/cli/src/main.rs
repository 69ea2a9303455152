use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qkoh_core::conjecture::{
    check, f_poly, reduction_sides, reiner_stanton_correspondence, twelve_cases, CheckReport,
    DiffSpec, Prediction, ThresholdTable,
};
use qkoh_core::koh::{koh_decompose, koh_sum, KohTerm};
use qkoh_core::qbinom::{global_cache, qbinomial};
use qkoh_core::IntPoly;

/// Exact q-binomial coefficients, KOH decompositions and checks of the
/// symmetric differences f(k,m,b) = [m choose k]_q - q^s [b choose k-2]_q.
///
/// Exit status: 0 on success or agreement with the predicted exceptions,
/// 1 on usage errors, 2 on a disagreement or a failed identity.
#[derive(Debug, Parser)]
#[command(name = "qkoh", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for `scan` (defaults to the available parallelism).
    #[arg(long, global = true, value_parser = parse_workers)]
    workers: Option<usize>,

    /// q-binomial cache file, loaded at startup and written back at exit.
    #[arg(long, global = true, env = "QKOH_CACHE")]
    cache: Option<PathBuf>,

    /// Override the threshold m from which predictions for k >= 5 apply.
    #[arg(long = "threshold", global = true, value_name = "K=M", value_parser = parse_threshold)]
    thresholds: Vec<(usize, usize)>,

    /// Only emit reports that disagree with the prediction (`scan`, `rs-scan`).
    #[arg(long, global = true)]
    only_disagreements: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The Gaussian polynomial [m choose k]_q.
    #[command(allow_negative_numbers = true)]
    Qbinom { m: i64, k: i64 },
    /// KOH decomposition of [a+k choose k]_q, with a check of the sum.
    Koh { a: usize, k: usize },
    /// The difference f(k,m,b).
    #[command(allow_negative_numbers = true)]
    F { k: i64, m: i64, b: i64 },
    /// Nonnegativity and unimodality of f(k,m,b) against the prediction.
    #[command(allow_negative_numbers = true)]
    Check { k: i64, m: i64, b: i64 },
    /// Check every admissible (m,b) with m_lo <= m <= m_hi.
    Scan { k: usize, m_lo: usize, m_hi: usize },
    /// The twelve k = 5 differences for m = 6n, ..., 6n+5.
    Twelve { n: usize },
    /// The 2k-6 reduction inequality for b (or every b up to b_hi).
    Reduction {
        k: usize,
        b: usize,
        b_hi: Option<usize>,
    },
    /// Scan the slice b >= m-4, b = m (mod 4), m even, for 2 <= k <= k_max.
    RsScan { k_max: usize, m_max: usize },
}

fn parse_workers(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("workers must be at least 1".to_string()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_threshold(s: &str) -> Result<(usize, usize), String> {
    let (k, m) = s
        .split_once('=')
        .ok_or_else(|| format!("expected K=M, got {s:?}"))?;
    let k = k
        .trim()
        .parse::<usize>()
        .map_err(|e| format!("bad k in {s:?}: {e}"))?;
    let m = m
        .trim()
        .parse::<usize>()
        .map_err(|e| format!("bad m in {s:?}: {e}"))?;
    Ok((k, m))
}

/// Whether the mathematics came out as expected.
enum Status {
    Ok,
    Mismatch,
}

impl From<bool> for Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Mismatch
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(path) = &cli.cache {
        let n = global_cache().load_json_lenient(path);
        log::info!("loaded {n} cached q-binomials from {}", path.display());
    }
    let result = run(&cli);
    if let Some(path) = &cli.cache {
        save_cache(path);
    }
    match result {
        Ok((out, status)) => {
            let mut stdout = io::stdout().lock();
            if let Err(e) = stdout
                .write_all(out.as_bytes())
                .and_then(|()| stdout.flush())
            {
                if e.kind() != io::ErrorKind::BrokenPipe {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            match status {
                Status::Ok => ExitCode::SUCCESS,
                Status::Mismatch => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn save_cache(path: &Path) {
    match global_cache().save_json(path) {
        Ok(()) => log::info!(
            "saved {} q-binomials to {}",
            global_cache().len(),
            path.display()
        ),
        Err(e) => log::warn!("could not write cache {}: {e}", path.display()),
    }
}

fn run(cli: &Cli) -> Result<(String, Status)> {
    let mut thresholds = ThresholdTable::default();
    for &(k, m) in &cli.thresholds {
        thresholds.set(k, m)?;
    }
    let fmt = cli.format;
    match cli.command {
        Command::Qbinom { m, k } => Ok((render_poly(&qbinomial(m, k), fmt)?, Status::Ok)),
        Command::Koh { a, k } => cmd_koh(a, k, fmt),
        Command::F { k, m, b } => {
            let spec = diff_spec(k, m, b)?;
            Ok((render_f(&spec, &f_poly(&spec), fmt)?, Status::Ok))
        }
        Command::Check { k, m, b } => {
            let report = check(&diff_spec(k, m, b)?, &thresholds);
            let status = report.agrees_with_prediction.into();
            let out = match fmt {
                Format::Text => render_report_text(&report),
                Format::Json => json(&report)?,
                Format::Csv => csv_string(&REPORT_HEADER, [report_row(&report)])?,
            };
            Ok((out, status))
        }
        Command::Scan { k, m_lo, m_hi } => {
            if k < 2 {
                bail!("k = {k} is below 2");
            }
            if m_lo > m_hi {
                bail!("empty range: m_lo = {m_lo} exceeds m_hi = {m_hi}");
            }
            let reports = run_scan(k, m_lo, m_hi, &thresholds, cli.workers)?;
            emit_reports(reports, fmt, cli.only_disagreements)
        }
        Command::Twelve { n } => cmd_twelve(n, &thresholds, fmt),
        Command::Reduction { k, b, b_hi } => cmd_reduction(k, b, b_hi.unwrap_or(b), fmt),
        Command::RsScan { k_max, m_max } => {
            if k_max < 2 {
                bail!("k_max = {k_max} is below 2");
            }
            let reports: Vec<CheckReport> = (2..=k_max)
                .flat_map(|k| (k..=m_max).flat_map(move |m| reiner_stanton_correspondence(k, m)))
                .map(|s| check(&s, &thresholds))
                .collect();
            emit_reports(reports, fmt, cli.only_disagreements)
        }
    }
}

fn diff_spec(k: i64, m: i64, b: i64) -> Result<DiffSpec> {
    DiffSpec::new(k, m, b).with_context(|| format!("invalid f({k},{m},{b})"))
}

#[cfg(feature = "parallel")]
fn run_scan(
    k: usize,
    m_lo: usize,
    m_hi: usize,
    thresholds: &ThresholdTable,
    workers: Option<usize>,
) -> Result<Vec<CheckReport>> {
    let workers =
        workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    Ok(qkoh_core::conjecture::scan_with_workers(
        k, m_lo, m_hi, thresholds, workers,
    )?)
}

#[cfg(not(feature = "parallel"))]
fn run_scan(
    k: usize,
    m_lo: usize,
    m_hi: usize,
    thresholds: &ThresholdTable,
    workers: Option<usize>,
) -> Result<Vec<CheckReport>> {
    if workers.is_some_and(|w| w > 1) {
        log::warn!("built without the `parallel` feature; --workers is ignored");
    }
    Ok(qkoh_core::conjecture::scan_sequential(
        k, m_lo, m_hi, thresholds,
    ))
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn opt(v: Option<usize>) -> String {
    v.map(|d| d.to_string()).unwrap_or_default()
}

fn poly_csv(p: &IntPoly) -> Result<String> {
    csv_string(
        &["degree", "coefficient"],
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| vec![i.to_string(), c.to_string()]),
    )
}

fn render_poly(p: &IntPoly, fmt: Format) -> Result<String> {
    match fmt {
        Format::Text => Ok(format!("{p}\n")),
        Format::Json => json(p),
        Format::Csv => poly_csv(p),
    }
}

#[derive(Serialize)]
struct FOutput<'a> {
    #[serde(flatten)]
    spec: &'a DiffSpec,
    poly: &'a IntPoly,
}

fn render_f(spec: &DiffSpec, poly: &IntPoly, fmt: Format) -> Result<String> {
    match fmt {
        Format::Text => Ok(format!("{spec} = {poly}\n")),
        Format::Json => json(&FOutput { spec, poly }),
        Format::Csv => poly_csv(poly),
    }
}

fn cmd_koh(a: usize, k: usize, fmt: Format) -> Result<(String, Status)> {
    let terms = koh_decompose(a, k);
    let ok = koh_sum(&terms) == qbinomial((a + k) as i64, k as i64);
    let footer = format!(
        "sum of {} terms = [{} choose {k}]_q: {}",
        terms.len(),
        a + k,
        if ok { "PASS" } else { "FAIL" }
    );
    let out = match fmt {
        Format::Text => {
            let mut s = String::new();
            for t in &terms {
                s.push_str(&koh_term_text(t));
                s.push('\n');
            }
            s.push_str(&footer);
            s.push('\n');
            s
        }
        Format::Json | Format::Csv => {
            eprintln!("{footer}");
            if fmt == Format::Json {
                json(&terms)?
            } else {
                csv_string(
                    &["partition", "exponent", "factors", "poly"],
                    terms.iter().map(|t| {
                        vec![
                            join(t.partition.parts(), " "),
                            t.exponent().to_string(),
                            t.term
                                .factors
                                .iter()
                                .map(|f| format!("{}/{}", f.top, f.bottom))
                                .collect::<Vec<_>>()
                                .join(" "),
                            join(t.poly.coeffs(), " "),
                        ]
                    }),
                )?
            }
        }
    };
    Ok((out, ok.into()))
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn koh_term_text(t: &KohTerm) -> String {
    let mut lhs = format!("({})  q^{}", join(t.partition.parts(), ","), t.exponent());
    for f in &t.term.factors {
        lhs.push_str(&format!(" [{} choose {}]", f.top, f.bottom));
    }
    format!("{lhs}  =  {}", t.poly)
}

fn prediction_text(p: &Prediction) -> String {
    match p {
        Prediction::Pass => "pass".to_string(),
        Prediction::Exception(reason) => format!("exception ({reason})"),
        Prediction::NoPrediction => "none".to_string(),
    }
}

fn verdict(ok: bool, at: Option<usize>) -> String {
    match (ok, at) {
        (true, _) => "yes".to_string(),
        (false, Some(d)) => format!("no (degree {d})"),
        (false, None) => "no".to_string(),
    }
}

fn render_report_text(r: &CheckReport) -> String {
    format!(
        "{}\n  shift exponent  {}\n  nonnegative     {}\n  unimodal        {}\n  symmetric       {}\n  prediction      {}\n  agrees          {}\n",
        r.spec,
        r.spec.shift_exponent(),
        verdict(r.nonnegative, r.first_negative_degree),
        verdict(r.unimodal, r.first_unimodality_violation),
        verdict(r.symmetric, None),
        prediction_text(&r.prediction),
        verdict(r.agrees_with_prediction, None),
    )
}

fn report_line(r: &CheckReport) -> String {
    format!(
        "{}  shift {}  nonnegative {}  unimodal {}  prediction {}  agrees {}",
        r.spec,
        r.spec.shift_exponent(),
        verdict(r.nonnegative, r.first_negative_degree),
        verdict(r.unimodal, r.first_unimodality_violation),
        prediction_text(&r.prediction),
        verdict(r.agrees_with_prediction, None),
    )
}

const REPORT_HEADER: [&str; 10] = [
    "k",
    "m",
    "b",
    "shift_exponent",
    "nonnegative",
    "unimodal",
    "first_negative_degree",
    "first_violation_degree",
    "predicted_exception",
    "agrees",
];

fn report_row(r: &CheckReport) -> Vec<String> {
    vec![
        r.spec.k().to_string(),
        r.spec.m().to_string(),
        r.spec.b().to_string(),
        r.spec.shift_exponent().to_string(),
        r.nonnegative.to_string(),
        r.unimodal.to_string(),
        opt(r.first_negative_degree),
        opt(r.first_unimodality_violation),
        r.predicted_exception.to_string(),
        r.agrees_with_prediction.to_string(),
    ]
}

/// Renders a list of reports; in text mode a summary line closes the list.
fn render_reports(reports: &[CheckReport], fmt: Format) -> Result<String> {
    match fmt {
        Format::Json => json(reports),
        Format::Csv => csv_string(&REPORT_HEADER, reports.iter().map(report_row)),
        Format::Text => {
            let mut s = String::new();
            for r in reports {
                s.push_str(&report_line(r));
                s.push('\n');
            }
            let failing = reports.iter().filter(|r| !r.passes()).count();
            let disagreeing = reports.iter().filter(|r| r.is_disagreement()).count();
            s.push_str(&format!(
                "{} reports, {failing} failing, {disagreeing} disagreeing with the prediction\n",
                reports.len()
            ));
            Ok(s)
        }
    }
}

fn emit_reports(
    mut reports: Vec<CheckReport>,
    fmt: Format,
    only_disagreements: bool,
) -> Result<(String, Status)> {
    let agree = reports.iter().all(|r| r.agrees_with_prediction);
    if only_disagreements {
        reports.retain(CheckReport::is_disagreement);
    }
    Ok((render_reports(&reports, fmt)?, agree.into()))
}

#[derive(Serialize)]
struct TwelveRow<'a> {
    label: &'a str,
    bottom_top: usize,
    #[serde(flatten)]
    report: &'a CheckReport,
}

fn cmd_twelve(n: usize, thresholds: &ThresholdTable, fmt: Format) -> Result<(String, Status)> {
    let cases = twelve_cases(n)?;
    let reports: Vec<CheckReport> = cases.iter().map(|c| check(&c.spec, thresholds)).collect();
    let ok = reports.iter().all(CheckReport::passes);
    let out = match fmt {
        Format::Json => json(
            &cases
                .iter()
                .zip(&reports)
                .map(|(c, report)| TwelveRow {
                    label: &c.label,
                    bottom_top: c.bottom_top,
                    report,
                })
                .collect::<Vec<_>>(),
        )?,
        Format::Csv => {
            let mut header = vec!["label", "bottom_top"];
            header.extend(REPORT_HEADER);
            csv_string(
                &header,
                cases.iter().zip(&reports).map(|(c, r)| {
                    let mut row = vec![c.label.clone(), c.bottom_top.to_string()];
                    row.extend(report_row(r));
                    row
                }),
            )?
        }
        Format::Text => {
            let mut s = String::new();
            for (c, r) in cases.iter().zip(&reports) {
                s.push_str(&format!(
                    "{:<4} {} - q^{} [{} choose 3]_q  nonnegative {}  unimodal {}\n",
                    c.label,
                    format_args!("[{} choose 5]_q", c.spec.m()),
                    c.spec.shift_exponent(),
                    c.bottom_top,
                    verdict(r.nonnegative, r.first_negative_degree),
                    verdict(r.unimodal, r.first_unimodality_violation),
                ));
            }
            s.push_str(&format!(
                "twelve cases for n = {n}: {}\n",
                if ok { "PASS" } else { "FAIL" }
            ));
            s
        }
    };
    Ok((out, ok.into()))
}

#[derive(Serialize)]
struct ReductionRow {
    k: usize,
    b: usize,
    upto: usize,
    holds: bool,
    first_failure_degree: Option<usize>,
}

fn cmd_reduction(k: usize, b_lo: usize, b_hi: usize, fmt: Format) -> Result<(String, Status)> {
    if b_lo > b_hi {
        bail!("empty range: b = {b_lo} exceeds b_hi = {b_hi}");
    }
    let rows = (b_lo..=b_hi)
        .map(|b| {
            let (lhs, rhs, upto) = reduction_sides(k, b)?;
            let first_failure_degree = lhs.dominance_failure(&rhs, upto);
            Ok(ReductionRow {
                k,
                b,
                upto,
                holds: first_failure_degree.is_none(),
                first_failure_degree,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let ok = rows.iter().all(|r| r.holds);
    let out = match fmt {
        Format::Json => json(&rows)?,
        Format::Csv => csv_string(
            &["k", "b", "upto", "holds", "first_failure_degree"],
            rows.iter().map(|r| {
                vec![
                    r.k.to_string(),
                    r.b.to_string(),
                    r.upto.to_string(),
                    r.holds.to_string(),
                    opt(r.first_failure_degree),
                ]
            }),
        )?,
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                s.push_str(&format!(
                    "k={} b={}  up to degree {}  {}\n",
                    r.k,
                    r.b,
                    r.upto,
                    match r.first_failure_degree {
                        None => "holds".to_string(),
                        Some(d) => format!("fails at degree {d}"),
                    }
                ));
            }
            s
        }
    };
    Ok((out, ok.into()))
}
