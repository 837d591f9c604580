use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use twoslit::config::PatternConfig;
use twoslit::events::{
    format_signature, full_stabilizer, generate_nls, is_auto_symmetric, is_label_symmetric,
    stabilizer, symmetry_signature, EvenEvent,
};
use twoslit::optics::{classify_regime, AmplitudeGrid, Method, OpticsError, QuadratureSettings};
use twoslit::output::{grid_json, write_grid_csv, EventDump};
use twoslit::systems::{
    classify_with, golden_check, parse_golden, render_table, rotate90, table2_with,
    ProhibitionRule, GOLDEN_TABLE2,
};
use twoslit::verify::{self, Suite};

#[derive(Parser)]
#[command(name = "twoslit", version, about = "Two-photon double-slit amplitudes and event classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Relative,
    Absolute,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the joint amplitude on the grid given in a config file.
    Pattern {
        #[arg(long)]
        config: PathBuf,
        /// exact, quadrature, closed, ci or qi; overrides the config file.
        #[arg(long)]
        method: Option<String>,
        /// Grid destination. Without it the grid goes to stdout and the
        /// regime report to stderr.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Print the regime report for a config file as JSON.
    Regime {
        #[arg(long)]
        config: PathBuf,
    },
    /// List all even events.
    Enumerate {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Classify every even event into QI, CI and RI.
    Table2 {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Compare with the checked-in table and fail on any difference.
        #[arg(long)]
        golden_check: bool,
        #[arg(long, value_enum, default_value = "relative")]
        rule: Rule,
    },
    /// Symmetry operations fixing an event.
    Symmetries { event: String },
    /// Non-label-symmetric events generated from a label-symmetric one.
    Generate { event: String },
    /// Apply the quarter-turn of the apparatus to an event.
    Rotate { event: String },
    /// Full classification record of one event.
    Classify {
        event: String,
        #[arg(long, value_enum, default_value = "relative")]
        rule: Rule,
    },
    /// Run invariant suites: optics, events, table2 or all.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

enum Failure {
    Validation(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.into())
    }
}

fn invalid(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Validation(e.into())
}

type CmdResult = Result<(), Failure>;

impl From<Rule> for ProhibitionRule {
    fn from(r: Rule) -> Self {
        match r {
            Rule::Relative => ProhibitionRule::SystemRelative,
            Rule::Absolute => ProhibitionRule::Absolute,
        }
    }
}

fn parse_event(s: &str) -> Result<EvenEvent, Failure> {
    s.parse().map_err(|e| invalid(anyhow!("{s:?}: {e}")))
}

fn print_json(v: &Value) -> CmdResult {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(|e| Failure::Internal(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn pattern(config: PathBuf, method: Option<String>, out: Option<PathBuf>, format: Format) -> CmdResult {
    if format == Format::Text {
        return Err(invalid(anyhow!("pattern writes csv or json")));
    }
    let cfg = PatternConfig::load(&config).map_err(invalid)?;
    let method = match method {
        Some(name) => Method::from_name(&name).ok_or_else(|| invalid(anyhow!("unknown method {name:?}")))?,
        None => cfg.method.unwrap_or(Method::Closed),
    };
    let (y, z) = cfg.axes().map_err(invalid)?;
    let grid = AmplitudeGrid::compute(&cfg.experiment, method, y.samples(), z.samples(), &QuadratureSettings::default())
        .map_err(|e| match e {
            OpticsError::NonConvergence { .. } => Failure::Internal(e.into()),
            other => invalid(other),
        })?;
    let report = classify_regime(&cfg.experiment);
    let report_json = serde_json::to_string_pretty(&report).map_err(|e| Failure::Internal(e.into()))?;

    let emit = |w: &mut dyn Write| -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *w, &grid_json(&grid, &report))?;
                writeln!(w)
            }
            _ => write_grid_csv(&grid, w),
        }
    };
    match out {
        Some(path) => {
            let file = File::create(&path).with_context(|| format!("cannot create {}", path.display())).map_err(Failure::Internal)?;
            let mut w = BufWriter::new(file);
            emit(&mut w)?;
            w.flush()?;
            println!("{report_json}");
        }
        None => {
            let mut w = BufWriter::new(io::stdout().lock());
            emit(&mut w)?;
            w.flush()?;
            eprintln!("{report_json}");
        }
    }
    Ok(())
}

fn table2(format: Format, golden: bool, rule: Rule) -> CmdResult {
    let records = table2_with(rule.into());
    match format {
        Format::Json => print_json(&serde_json::to_value(&records).map_err(|e| Failure::Internal(e.into()))?)?,
        Format::Text => print!("{}", render_table(&records)),
        Format::Csv => return Err(invalid(anyhow!("table2 writes json or text"))),
    }
    if golden {
        let rows = parse_golden(GOLDEN_TABLE2).map_err(|e| Failure::Internal(e.into()))?;
        let mismatches = golden_check(&records, &rows);
        if !mismatches.is_empty() {
            for m in &mismatches {
                eprintln!("golden mismatch: {m}");
            }
            return Err(invalid(anyhow!("{} golden mismatch(es)", mismatches.len())));
        }
        eprintln!("golden check: {}/{} records match", rows.len(), rows.len());
    }
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Pattern { config, method, out, format } => pattern(config, method, out, format),
        Command::Regime { config } => {
            let cfg = PatternConfig::load(&config).map_err(invalid)?;
            print_json(&json!(classify_regime(&cfg.experiment)))
        }
        Command::Enumerate { format } => {
            let events = twoslit::events::enumerate_even_events();
            match format {
                Format::Json => {
                    let dumps: Vec<EventDump> = events.iter().map(EventDump::of).collect();
                    print_json(&json!(dumps))
                }
                Format::Text => {
                    for e in &events {
                        println!("{:<16} {}", e.short(), e.expanded());
                    }
                    Ok(())
                }
                Format::Csv => Err(invalid(anyhow!("enumerate writes json or text"))),
            }
        }
        Command::Table2 { format, golden_check, rule } => table2(format, golden_check, rule),
        Command::Symmetries { event } => {
            let e = parse_event(&event)?;
            let raw: Vec<String> = stabilizer(&e).iter().map(|o| o.to_string()).collect();
            print_json(&json!({
                "short": e.short(),
                "expanded": e.expanded(),
                "label_symmetric": is_label_symmetric(&e),
                "auto_symmetric": is_auto_symmetric(&e),
                "symmetries": format_signature(&symmetry_signature(&e)),
                "stabilizer": raw,
                "full_stabilizer_order": full_stabilizer(&e).len(),
            }))
        }
        Command::Generate { event } => {
            let e = parse_event(&event)?;
            let generated = generate_nls(&e).map_err(invalid)?;
            let dumps: Vec<EventDump> = generated.iter().map(EventDump::of).collect();
            print_json(&json!(dumps))
        }
        Command::Rotate { event } => {
            let e = parse_event(&event)?;
            print_json(&json!(EventDump::of(&rotate90(&e))))
        }
        Command::Classify { event, rule } => {
            let e = parse_event(&event)?;
            print_json(&json!(classify_with(&e, rule.into())))
        }
        Command::Verify { suite } => {
            let s = Suite::from_name(&suite).ok_or_else(|| invalid(anyhow!("unknown suite {suite:?}")))?;
            let outcomes = verify::run(s);
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            for o in &outcomes {
                println!("{o}");
            }
            println!("{} passed, {failed} failed", outcomes.len() - failed);
            if failed > 0 {
                return Err(invalid(anyhow!("{failed} check(s) failed")));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
    }
}
