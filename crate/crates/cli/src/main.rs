//! Command-line front end for the skillver verification toolkit.

mod chart;
mod render;
mod reproduce;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use render::{fmt_value, round_json_floats, score_lines, table_line};
use serde_json::json;
use skillver::scores::{score_all, Measure};
use skillver::simulate::{run_trials, Generator, TrialConfig};
use skillver::{
    directionalize, load_series, properties, read_outcomes, ContingencyTable, DirectionalRule,
    TiePolicy,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "skillver",
    version,
    about = "Skill verification for deterministic binary forecasts",
    long_about = "Scores yes/no forecast records with the prediction skill index (PSI) and six \
                  conventional verification measures, audits measure properties, runs seeded \
                  random-forecaster studies, and regenerates the bundled reference tables."
)]
struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,

    /// Decimal places for reported values
    #[arg(long, global = true, default_value_t = 3, value_name = "K")]
    decimals: usize,

    /// Write the report to a file instead of standard output
    /// (for `reproduce figure1` this is the output directory for chart files)
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score one contingency table from four counts or an outcome file
    Score {
        /// Cell counts: hits, false alarms, misses, correct rejections
        #[arg(
            value_names = ["A", "B", "C", "D"],
            num_args = 4,
            required_unless_present = "outcomes",
            conflicts_with = "outcomes"
        )]
        counts: Vec<u32>,

        /// Two-column outcome file, one `predicted, observed` record per
        /// line (tokens 1/0, yes/no or up/down, case-insensitive)
        #[arg(long, value_name = "FILE")]
        outcomes: Option<PathBuf>,
    },

    /// Directionalize a forecast series file and score it
    Ingest {
        /// Series file with header `year,quarter,forecast,actual`
        series: PathBuf,

        /// What to do when a forecast or actual equals its reference
        #[arg(long, value_enum, default_value_t = TiePolicyArg::Down)]
        tie_policy: TiePolicyArg,

        /// Also write the directionalized outcome stream (up/down pairs,
        /// readable back via `score --outcomes`)
        #[arg(long, value_name = "FILE")]
        emit_outcomes: Option<PathBuf>,
    },

    /// Run seeded random-forecaster trials and report per-measure averages
    Simulate {
        /// Number of trials
        #[arg(long)]
        trials: u32,

        /// Table generator
        #[arg(long, value_enum)]
        generator: GeneratorKind,

        /// Periods per trial (bernoulli)
        #[arg(long, default_value_t = 400)]
        n: u32,

        /// Probability of forecasting the event (bernoulli)
        #[arg(long, default_value_t = 0.5)]
        pf: f64,

        /// Probability of the event occurring (bernoulli)
        #[arg(long, default_value_t = 0.5)]
        po: f64,

        /// Largest cell count (cell-uniform)
        #[arg(long, default_value_t = 1000)]
        max: u32,

        /// Seed; required so output is reproducible
        #[arg(long)]
        seed: u64,
    },

    /// Audit measure properties and print the claimed/observed matrix
    Audit {
        /// Comma-separated measures (psi,gss,hss,pss,css,orss,csi) or "all"
        #[arg(long, default_value = "all", value_delimiter = ',')]
        measures: Vec<String>,

        /// Sampled tables per probe
        #[arg(long, default_value_t = 1000)]
        trials: u32,

        #[arg(long, default_value_t = 0)]
        seed: u64,
    },

    /// Regenerate a bundled reference table and diff it against the
    /// printed values
    Reproduce {
        #[arg(value_enum)]
        target: ReproTarget,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TiePolicyArg {
    /// Up means strictly greater; ties count as Down
    Down,
    /// Abort on a tie
    Error,
}

impl From<TiePolicyArg> for TiePolicy {
    fn from(arg: TiePolicyArg) -> Self {
        match arg {
            TiePolicyArg::Down => TiePolicy::Down,
            TiePolicyArg::Error => TiePolicy::Error,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GeneratorKind {
    /// Independent 50:50-style forecaster over n periods
    Bernoulli,
    /// Four independent uniform cell counts in 0..=max
    CellUniform,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReproTarget {
    /// The 24 scored examples
    Table7,
    /// The GDP growth case
    Table8,
    /// Thirty random predictions
    #[value(name = "tableA2", alias = "table-a2", alias = "tablea2")]
    TableA2,
    /// Rare-event vs random-event perfect forecasts (emits chart files)
    Figure1,
    /// The property matrix
    #[value(name = "audit_matrix", alias = "audit-matrix")]
    AuditMatrix,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let decimals = cli.decimals;
    match cli.command {
        Command::Score { counts, outcomes } => {
            let table = score_input_table(&counts, outcomes.as_deref())?;
            let scores = score_all(&table);
            let report = if cli.json {
                let mut value = json!({
                    "table": table,
                    "n": table.total(),
                    "base_rate": table.base_rate(),
                    "bias_score": table.bias_score().ok(),
                    "scores": scores,
                });
                round_json_floats(&mut value, decimals);
                to_json_text(&value)
            } else {
                let bias = match table.bias_score() {
                    Ok(b) => fmt_value(b, decimals),
                    Err(_) => "undefined (no observed events)".to_string(),
                };
                format!(
                    "{}\nbase rate {}, bias score {}\n{}",
                    table_line(&table),
                    fmt_value(table.base_rate(), decimals),
                    bias,
                    score_lines(&scores, decimals)
                )
            };
            emit(cli.output.as_deref(), &report)?;
            Ok(true)
        }

        Command::Ingest {
            series,
            tie_policy,
            emit_outcomes,
        } => {
            let records = load_series(&series)
                .with_context(|| format!("loading series {}", series.display()))?;
            let rule = DirectionalRule {
                tie_policy: tie_policy.into(),
            };
            let result = directionalize(&records, rule)?;
            if let Some(path) = emit_outcomes {
                let mut text = String::new();
                for pair in &result.outcomes {
                    let up_down = |flag: bool| if flag { "up" } else { "down" };
                    text.push_str(&format!(
                        "{},{}\n",
                        up_down(pair.predicted),
                        up_down(pair.observed)
                    ));
                }
                std::fs::write(&path, text)
                    .with_context(|| format!("writing outcomes to {}", path.display()))?;
            }
            let scores = score_all(&result.table);
            let report = if cli.json {
                let mut value = json!({
                    "records": result.outcomes.len(),
                    "table": result.table,
                    "ties": result.ties,
                    "tie_policy": result.tie_policy,
                    "outcomes": result.outcomes,
                    "scores": scores,
                });
                round_json_floats(&mut value, decimals);
                to_json_text(&value)
            } else {
                let ties = if result.ties > 0 {
                    let policy = match result.tie_policy {
                        TiePolicy::Down => "down",
                        TiePolicy::Error => "error",
                    };
                    format!("ties: {} (resolved by policy: {policy})", result.ties)
                } else {
                    "ties: 0".to_string()
                };
                format!(
                    "directionalized {} forecasts against previous-year actuals\n{}\n{ties}\n{}",
                    result.outcomes.len(),
                    table_line(&result.table),
                    score_lines(&scores, decimals)
                )
            };
            emit(cli.output.as_deref(), &report)?;
            Ok(true)
        }

        Command::Simulate {
            trials,
            generator,
            n,
            pf,
            po,
            max,
            seed,
        } => {
            let generator = match generator {
                GeneratorKind::Bernoulli => Generator::Bernoulli {
                    periods: n,
                    p_forecast: pf,
                    p_observed: po,
                },
                GeneratorKind::CellUniform => Generator::CellUniform { max_count: max },
            };
            let config = TrialConfig {
                trials,
                generator,
                seed,
            };
            let batch = run_trials(&config)?;
            let report = if cli.json {
                let mut value = json!({ "config": config, "batch": batch });
                round_json_floats(&mut value, decimals);
                to_json_text(&value)
            } else {
                batch.to_csv(decimals)
            };
            emit(cli.output.as_deref(), &report)?;
            Ok(true)
        }

        Command::Audit {
            measures,
            trials,
            seed,
        } => {
            let measures = parse_measures(&measures)?;
            let reports = properties::audit_matrix(&measures, trials, seed);
            let report = if cli.json {
                let mut value = serde_json::to_value(&reports)?;
                round_json_floats(&mut value, decimals);
                to_json_text(&value)
            } else {
                properties::render_matrix(&reports)
            };
            emit(cli.output.as_deref(), &report)?;
            Ok(true)
        }

        Command::Reproduce { target } => {
            let report = match target {
                ReproTarget::Table7 => reproduce::table7(),
                ReproTarget::Table8 => reproduce::table8(),
                ReproTarget::TableA2 => reproduce::table_a2(),
                ReproTarget::Figure1 => {
                    let dir = cli.output.clone().unwrap_or_else(|| PathBuf::from("."));
                    reproduce::figure1(&dir)?
                }
                ReproTarget::AuditMatrix => reproduce::audit(1000, 0),
            };
            match (target, cli.output.as_deref()) {
                // figure1 used --output as its chart directory; the report
                // itself goes to stdout.
                (ReproTarget::Figure1, _) => print!("{}", report.text),
                (_, output) => emit(output, &report.text)?,
            }
            Ok(report.pass)
        }
    }
}

fn score_input_table(counts: &[u32], outcomes: Option<&Path>) -> Result<ContingencyTable> {
    if let Some(path) = outcomes {
        let stream =
            read_outcomes(path).with_context(|| format!("reading outcomes {}", path.display()))?;
        return Ok(ContingencyTable::from_outcomes(stream)?);
    }
    match counts {
        [a, b, c, d] => Ok(ContingencyTable::new(*a, *b, *c, *d)?),
        _ => bail!("expected four counts (hits false_alarms misses correct_rejections)"),
    }
}

fn parse_measures(names: &[String]) -> Result<Vec<Measure>> {
    if names.iter().any(|name| name.eq_ignore_ascii_case("all")) {
        return Ok(Measure::ALL.to_vec());
    }
    names
        .iter()
        .map(|name| {
            Measure::parse(name).ok_or_else(|| {
                anyhow::anyhow!(
                    "unknown measure {name:?} (expected psi, gss, hss, pss, css, orss, csi or all)"
                )
            })
        })
        .collect()
}

fn to_json_text(value: &serde_json::Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json serializes");
    text.push('\n');
    text
}

fn emit(output: Option<&Path>, report: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, report)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{report}"),
    }
    Ok(())
}
