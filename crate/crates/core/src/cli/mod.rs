//! The `rsci` command line.
//!
//! Exit codes: 0 success, 1 domain rejection (validation or metrics
//! precondition), 2 environment failure (IO, schema, network, protocol).
//! Structured output goes to stdout; logs go to stderr.

mod config;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

pub use config::FileConfig;

use crate::export::{package_archive, ExportError};
use crate::ingest::{
    from_dublin_core, harvest_oai, load_canonical, to_canonical_file, HarvestConfig, HarvestError,
    IngestError,
};
use crate::metrics::{
    format_ratio, impact_factor, parse_profile, parse_stats, significant_papers, top_q_citations,
    CitationProfile, IndicatorSummary,
};
use crate::model::{validate_bundle, IssueHeader, JournalHeader, ValidationReport};

pub const OUT_DIR_ENV: &str = "RSCI_OUT_DIR";
pub const CONFIG_ENV: &str = "RSCI_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "rsci", version, about = "Validate and export journal issues for RSCI/Articulus, harvest OAI-PMH metadata, compute citation indicators")]
pub struct Cli {
    /// More log output on stderr (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    /// Report format.
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// TOML file with defaults (out_dir, format, max_records, timeout_secs, retries).
    #[arg(long, env = CONFIG_ENV, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check issue files against the export rules.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Build one upload archive per issue file.
    Export(ExportArgs),
    /// Harvest Dublin Core records over OAI-PMH into an issue file skeleton.
    Harvest(HarvestArgs),
    /// Citation indicators for a profile, and/or a journal impact factor.
    Metrics(MetricsArgs),
}

#[derive(Debug, Args)]
struct ExportArgs {
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// Output directory.
    #[arg(long, env = OUT_DIR_ENV)]
    out: Option<PathBuf>,
    /// Generation date (YYYY-MM-DD); defaults to today.
    #[arg(long, value_parser = parse_date)]
    date: Option<NaiveDate>,
}

#[derive(Debug, Args)]
struct HarvestArgs {
    /// OAI-PMH base URL.
    endpoint: String,
    /// File to write the harvested articles to.
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    set: Option<String>,
    #[arg(long, value_parser = parse_date)]
    from: Option<NaiveDate>,
    #[arg(long, value_parser = parse_date)]
    until: Option<NaiveDate>,
    #[arg(long)]
    max_records: Option<usize>,
    /// Per-request timeout in seconds.
    #[arg(long)]
    timeout: Option<u64>,
    /// Extra attempts after a network failure.
    #[arg(long)]
    retries: Option<u32>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).multiple(true).args(["profile", "stats"]))]
struct MetricsArgs {
    /// Citation counts: one integer per line, or CSV with a `citations` column.
    profile: Option<PathBuf>,
    /// TOML with citations_prev1/2 and publications_prev1/2 for the impact factor.
    #[arg(long)]
    stats: Option<PathBuf>,
    /// Also count papers with more than this many citations.
    #[arg(long)]
    significant_y: Option<u64>,
    /// Also list the citations of the q most cited papers.
    #[arg(long)]
    top_q: Option<usize>,
}

fn parse_date(s: &str) -> Result<NaiveDate, String> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|e| format!("{s:?} is not YYYY-MM-DD: {e}"))
}

/// Exit status, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Status {
    Ok = 0,
    Rejected = 1,
    Failed = 2,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

struct Context {
    format: Format,
    file: FileConfig,
}

pub fn run() -> ExitCode {
    let cli = Cli::parse();
    init_logging(cli.verbose);
    let file = match &cli.config {
        Some(path) => match FileConfig::load(path) {
            Ok(c) => c,
            Err(e) => {
                log::error!("{e}");
                return Status::Failed.into();
            }
        },
        None => FileConfig::default(),
    };
    let ctx = Context {
        format: cli.format.or(file.format).unwrap_or_default(),
        file,
    };
    let status = match cli.command {
        Command::Validate { paths } => cmd_validate(&ctx, &paths),
        Command::Export(args) => cmd_export(&ctx, &args),
        Command::Harvest(args) => cmd_harvest(&ctx, &args),
        Command::Metrics(args) => cmd_metrics(&ctx, &args),
    };
    status.into()
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .target(env_logger::Target::Stderr)
        .try_init();
}

fn ingest_status(e: &IngestError) -> Status {
    match e {
        IngestError::Mapping { .. } | IngestError::EmptyInput => Status::Rejected,
        _ => Status::Failed,
    }
}

fn emit_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON value serializes"));
}

fn cmd_validate(ctx: &Context, paths: &[PathBuf]) -> Status {
    let mut worst = Status::Ok;
    let mut results = Vec::new();
    for path in paths {
        let (status, entry) = match load_canonical(path) {
            Ok(bundle) => {
                let report = validate_bundle(&bundle);
                let status = if report.is_exportable {
                    Status::Ok
                } else {
                    Status::Rejected
                };
                if ctx.format == Format::Text {
                    println!("{}:\n{report}", path.display());
                }
                (status, json!({"input": path, "report": report}))
            }
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                (Status::Failed, json!({"input": path, "error": e.to_string()}))
            }
        };
        worst = worst.max(status);
        results.push(entry);
    }
    if ctx.format == Format::Json {
        emit_json(&json!({"command": "validate", "exit_code": worst as u8, "results": results}));
    }
    worst
}

enum ExportOutcome {
    Written { path: PathBuf, entries: usize },
    NotExportable(Box<ValidationReport>),
    Failed(String),
}

fn export_one(input: &Path, date: NaiveDate) -> Result<crate::export::ExportArchive, ExportOutcome> {
    let bundle = load_canonical(input).map_err(|e| ExportOutcome::Failed(e.to_string()))?;
    package_archive(&bundle, date).map_err(|e| match e {
        ExportError::NotExportable(report) => ExportOutcome::NotExportable(report),
        other => ExportOutcome::Failed(other.to_string()),
    })
}

fn cmd_export(ctx: &Context, args: &ExportArgs) -> Status {
    let out_dir = args
        .out
        .clone()
        .or_else(|| ctx.file.out_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    let date = args
        .date
        .unwrap_or_else(|| chrono::Local::now().date_naive());

    // Package concurrently; write and report in argument order.
    let built: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = args
            .paths
            .iter()
            .map(|p| s.spawn(move || export_one(p, date)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("export worker panicked"))
            .collect()
    });

    let mut written = std::collections::HashSet::new();
    let outcomes: Vec<ExportOutcome> = built
        .into_iter()
        .map(|r| match r {
            Err(outcome) => outcome,
            Ok(archive) => {
                let path = out_dir.join(&archive.archive_name);
                if !written.insert(path.clone()) {
                    return ExportOutcome::Failed(format!(
                        "{} was already written by an earlier input",
                        path.display()
                    ));
                }
                let result = std::fs::create_dir_all(&out_dir)
                    .map_err(|e| e.to_string())
                    .and_then(|_| archive.to_zip_bytes().map_err(|e| e.to_string()))
                    .and_then(|bytes| std::fs::write(&path, bytes).map_err(|e| e.to_string()));
                match result {
                    Ok(()) => ExportOutcome::Written {
                        path,
                        entries: archive.entries.len(),
                    },
                    Err(e) => ExportOutcome::Failed(format!("{}: {e}", path.display())),
                }
            }
        })
        .collect();

    let mut worst = Status::Ok;
    let mut results = Vec::new();
    for (input, outcome) in args.paths.iter().zip(&outcomes) {
        let (status, entry) = match outcome {
            ExportOutcome::Written { path, entries } => {
                if ctx.format == Format::Text {
                    println!("{}: wrote {} ({entries} entries)", input.display(), path.display());
                }
                (
                    Status::Ok,
                    json!({"input": input, "status": "ok", "archive": path, "entries": entries}),
                )
            }
            ExportOutcome::NotExportable(report) => {
                if ctx.format == Format::Text {
                    println!("{}: not exportable\n{report}", input.display());
                }
                (
                    Status::Rejected,
                    json!({"input": input, "status": "not_exportable", "report": report}),
                )
            }
            ExportOutcome::Failed(message) => {
                eprintln!("{}: {message}", input.display());
                (
                    Status::Failed,
                    json!({"input": input, "status": "error", "error": message}),
                )
            }
        };
        worst = worst.max(status);
        results.push(entry);
    }
    if ctx.format == Format::Json {
        emit_json(&json!({
            "command": "export",
            "exit_code": worst as u8,
            "generation_date": date.to_string(),
            "results": results,
        }));
    }
    worst
}

fn harvest_config(ctx: &Context, args: &HarvestArgs) -> Result<HarvestConfig, HarvestError> {
    let mut config = HarvestConfig::new(&args.endpoint)?.with_range(args.from, args.until)?;
    if let Some(set) = &args.set {
        config = config.with_set(set);
    }
    if let Some(max) = args.max_records.or(ctx.file.max_records) {
        config = config.with_max_records(max)?;
    }
    if let Some(secs) = args.timeout.or(ctx.file.timeout_secs) {
        config = config.with_timeout(Duration::from_secs(secs))?;
    }
    Ok(config)
}

fn cmd_harvest(ctx: &Context, args: &HarvestArgs) -> Status {
    let fail = |status: Status, error: String, code: Option<&str>| {
        eprintln!("harvest: {error}");
        if ctx.format == Format::Json {
            emit_json(&json!({
                "command": "harvest",
                "exit_code": status as u8,
                "error": error,
                "oai_error_code": code,
            }));
        }
        status
    };

    let config = match harvest_config(ctx, args) {
        Ok(c) => c,
        Err(e) => return fail(Status::Failed, e.to_string(), None),
    };
    let retries = args.retries.or(ctx.file.retries).unwrap_or(0);
    let mut attempt = 0;
    let records = loop {
        match harvest_oai(&config) {
            Err(HarvestError::Network(e)) if attempt < retries => {
                attempt += 1;
                log::warn!("attempt {attempt} failed ({e}); retrying");
            }
            Err(e) => {
                let code = match &e {
                    HarvestError::Protocol { code, .. } => Some(code.clone()),
                    _ => None,
                };
                return fail(Status::Failed, e.to_string(), code.as_deref());
            }
            Ok(records) => break records,
        }
    };

    let bundle = match from_dublin_core(&records, JournalHeader::default(), IssueHeader::default())
    {
        Ok(b) => b,
        Err(e) => return fail(ingest_status(&e), e.to_string(), None),
    };
    let mut text = serde_json::to_string_pretty(&to_canonical_file(&bundle))
        .expect("issue file serializes");
    text.push('\n');
    if let Err(e) = std::fs::write(&args.out, text) {
        return fail(
            Status::Failed,
            format!("cannot write {}: {e}", args.out.display()),
            None,
        );
    }
    match ctx.format {
        Format::Text => println!(
            "wrote {} article stubs to {}",
            bundle.articles.len(),
            args.out.display()
        ),
        Format::Json => emit_json(&json!({
            "command": "harvest",
            "exit_code": 0,
            "output": args.out,
            "records": bundle.articles.len(),
        })),
    }
    Status::Ok
}

#[derive(Debug, Serialize)]
struct MetricsReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    indicators: Option<IndicatorSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    significant_papers: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    top_q: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    impact_factor: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    errors: Vec<String>,
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn cmd_metrics(ctx: &Context, args: &MetricsArgs) -> Status {
    let profile = match &args.profile {
        Some(path) => match read(path).and_then(|t| {
            parse_profile(&t).map_err(|e| format!("{}: {e}", path.display()))
        }) {
            Ok(p) => Some(p),
            Err(e) => {
                eprintln!("metrics: {e}");
                return Status::Failed;
            }
        },
        None => None,
    };
    let stats = match &args.stats {
        Some(path) => match read(path).and_then(|t| {
            parse_stats(&t).map_err(|e| format!("{}: {e}", path.display()))
        }) {
            Ok(s) => Some(s),
            Err(e) => {
                eprintln!("metrics: {e}");
                return Status::Failed;
            }
        },
        None => None,
    };

    let mut report = MetricsReport {
        indicators: profile.as_ref().map(IndicatorSummary::compute),
        significant_papers: None,
        top_q: None,
        impact_factor: None,
        errors: Vec::new(),
    };
    let mut text = String::new();
    if let Some(summary) = &report.indicators {
        render_summary(&mut text, summary);
    }
    let empty = CitationProfile::default();
    let p = profile.as_ref().unwrap_or(&empty);
    if let Some(y) = args.significant_y {
        let n = significant_papers(p, y);
        let _ = writeln!(text, "{:<22}{n}", format!("significant (>{y})"));
        report.significant_papers = Some(json!({"y": y, "count": n}));
    }
    if let Some(q) = args.top_q {
        match top_q_citations(p, q) {
            Ok(top) => {
                let list: Vec<String> = top.iter().map(u32::to_string).collect();
                let _ = writeln!(text, "{:<22}{}", format!("top-{q} citations"), list.join(", "));
                report.top_q = Some(json!({"q": q, "citations": top}));
            }
            Err(e) => report.errors.push(e.to_string()),
        }
    }
    if let Some(stats) = &stats {
        match impact_factor(stats) {
            Ok(r) => {
                let _ = writeln!(text, "{:<22}{} ({}/{})", "impact factor", format_ratio(&r), r.numer(), r.denom());
                report.impact_factor = Some(json!({"numer": r.numer(), "denom": r.denom()}));
            }
            Err(e) => report.errors.push(e.to_string()),
        }
    }

    let status = if report.errors.is_empty() {
        Status::Ok
    } else {
        Status::Rejected
    };
    match ctx.format {
        Format::Text => {
            print!("{text}");
            for e in &report.errors {
                eprintln!("metrics: {e}");
            }
        }
        Format::Json => {
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["command"] = json!("metrics");
            value["exit_code"] = json!(status as u8);
            emit_json(&value);
        }
    }
    status
}

fn render_summary(out: &mut String, s: &IndicatorSummary) {
    let row = |out: &mut String, label: &str, value: String| {
        let _ = writeln!(out, "{label:<22}{value}");
    };
    row(out, "N_p", s.papers.to_string());
    row(out, "N_c,tot", s.total_citations.to_string());
    row(
        out,
        "citations/paper",
        s.citations_per_paper
            .as_ref()
            .map_or_else(|| "n/a".to_string(), format_ratio),
    );
    row(out, "h", s.h_index.to_string());
    row(
        out,
        "a = N_c,tot/h^2",
        match &s.hirsch {
            Some(fit) => format!(
                "{} ({})",
                format_ratio(&fit.a),
                if fit.within_empirical_range {
                    "within 3..5"
                } else {
                    "outside 3..5"
                }
            ),
            None => "n/a".to_string(),
        },
    );
    row(out, "g", s.g_index.to_string());
    row(out, "i10", s.i10_index.to_string());
}
