//! Regenerates each bundled reference table from raw inputs and diffs the
//! result against the printed values.

use crate::chart::grouped_bar_svg;
use crate::render::fmt_value;
use anyhow::{Context, Result};
use skillver::datasets::{self, Printed, PrintedScores};
use skillver::properties::{audit_matrix, render_matrix, table_a1_claim, Property};
use skillver::scores::{score_all, Measure, ScoreSet};
use skillver::simulate::score_given_tables;
use skillver::{directionalize, parse_series, ContingencyTable, DirectionalRule};
use std::fmt::Write as _;
use std::path::Path;

/// Printed 3-decimal cells must be matched to half a unit in the last place.
const CELL_TOL: f64 = 5e-4;
/// Printed averages may have been taken over rounded values.
const AVERAGE_TOL: f64 = 5e-3;

pub struct Report {
    pub text: String,
    pub pass: bool,
}

fn diff_row(
    label: &str,
    scores: &ScoreSet,
    printed: &PrintedScores,
    measures: &[Measure],
    tol: f64,
    out: &mut String,
) -> bool {
    let mut failures = Vec::new();
    let mut unprinted = Vec::new();
    for &m in measures {
        let computed = scores.get(m);
        match printed.get(m) {
            Printed::Value(expected) => match computed.value() {
                Some(v) if (v - expected).abs() <= tol => {}
                Some(v) => failures.push(format!(
                    "{m} computed {} vs printed {}",
                    fmt_value(v, 3),
                    fmt_value(expected, 3)
                )),
                None => failures.push(format!("{m} computed N/A vs printed {expected}")),
            },
            Printed::NotApplicable => {
                if !computed.is_not_applicable() {
                    failures.push(format!(
                        "{m} computed {:?} vs printed N/A",
                        computed.value()
                    ));
                }
            }
            Printed::Dash => match computed.value() {
                Some(v) => unprinted.push(format!("{m}={}", fmt_value(v, 3))),
                None => failures.push(format!("{m} computed N/A for an unprinted cell")),
            },
        }
    }
    let pass = failures.is_empty();
    let status = if pass { "PASS" } else { "FAIL" };
    write!(out, "{label}: {status}").unwrap();
    if !unprinted.is_empty() {
        write!(out, " (computed but unprinted: {})", unprinted.join(", ")).unwrap();
    }
    out.push('\n');
    for failure in failures {
        writeln!(out, "    {failure}").unwrap();
    }
    pass
}

pub fn table7() -> Report {
    let mut text = String::from(
        "reproduce table7: rescore the 24 examples and diff against printed values \
         (tolerance 0.0005)\n\n",
    );
    let mut pass = true;
    let rows = datasets::table7();
    for row in &rows {
        let scores = score_all(&row.table);
        let label = format!("example {:>2} {}", row.example, row.table);
        pass &= diff_row(
            &label,
            &scores,
            &row.printed,
            &Measure::ALL,
            CELL_TOL,
            &mut text,
        );
    }
    writeln!(
        text,
        "\ntable7: {} ({} rows)",
        if pass { "PASS" } else { "FAIL" },
        rows.len()
    )
    .unwrap();
    Report { text, pass }
}

pub fn table8() -> Report {
    let mut text = String::from(
        "reproduce table8: directionalize the bundled GDP growth series and diff the score row \
         (tolerance 0.0005)\n\n",
    );
    let records = parse_series(datasets::GDP_GROWTH_CSV).expect("bundled series parses");
    let series = directionalize(&records, DirectionalRule::default()).expect("bundled series");
    let (expected_table, printed) = datasets::table8();
    let mut pass = series.table == expected_table;
    writeln!(
        text,
        "directionalized {} quarters into {} ({})",
        series.outcomes.len(),
        series.table,
        if pass {
            "counts match"
        } else {
            "counts MISMATCH"
        },
    )
    .unwrap();
    let scores = score_all(&series.table);
    pass &= diff_row(
        "score row",
        &scores,
        &printed,
        &Measure::ALL,
        CELL_TOL,
        &mut text,
    );
    writeln!(text, "\ntable8: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
    Report { text, pass }
}

pub fn table_a2() -> Report {
    let mut text = String::from(
        "reproduce tableA2: rescore the 30 random-prediction tables and diff against printed \
         values (rows 0.0005, averages 0.005)\n\n",
    );
    let (rows, printed_averages) = datasets::table_a2();
    let tables: Vec<ContingencyTable> = rows.iter().map(|r| r.table).collect();
    let batch = score_given_tables(&tables).expect("bundled tables are non-empty");
    let mut pass = true;
    for (row, trial) in rows.iter().zip(&batch.rows) {
        let label = format!("trial {:>2} {}", row.trial, row.table);
        pass &= diff_row(
            &label,
            &trial.scores,
            &row.printed,
            &Measure::SKILL,
            CELL_TOL,
            &mut text,
        );
    }
    let mut averages_ok = true;
    let mut parts = Vec::new();
    for m in Measure::SKILL {
        let mean = batch.mean(m).expect("skill means exist");
        if let Printed::Value(expected) = printed_averages.get(m) {
            let ok = (mean - expected).abs() <= AVERAGE_TOL;
            averages_ok &= ok;
            parts.push(format!(
                "{m}={}{}",
                fmt_value(mean, 3),
                if ok {
                    String::new()
                } else {
                    format!(" (printed {expected})")
                }
            ));
        }
    }
    pass &= averages_ok;
    writeln!(
        text,
        "averages: {} ({})",
        if averages_ok { "PASS" } else { "FAIL" },
        parts.join(", ")
    )
    .unwrap();
    writeln!(text, "\ntableA2: {}", if pass { "PASS" } else { "FAIL" }).unwrap();
    Report { text, pass }
}

/// The perfect rare-event forecast against the perfect random-event
/// forecast: only PSI separates them. Emits the comparison as a CSV data
/// file and a static SVG chart under `out_dir`.
pub fn figure1(out_dir: &Path) -> Result<Report> {
    let rows = datasets::table7();
    let rare = &rows[22]; // example 23
    let random = &rows[23]; // example 24
    let rare_scores = score_all(&rare.table);
    let random_scores = score_all(&random.table);

    let mut text = String::from(
        "reproduce figure1: perfect rare-event forecast (example 23) vs perfect random-event \
         forecast (example 24)\n\n",
    );
    let mut pass = true;
    let mut rare_values = Vec::new();
    let mut random_values = Vec::new();
    let mut csv = String::from("measure,rare_event_perfect,random_event_perfect\n");
    for m in Measure::SKILL {
        let rv = rare_scores
            .get(m)
            .value()
            .expect("skill scores have values");
        let nv = random_scores
            .get(m)
            .value()
            .expect("skill scores have values");
        let (Printed::Value(rare_printed), Printed::Value(random_printed)) =
            (rare.printed.get(m), random.printed.get(m))
        else {
            unreachable!("examples 23 and 24 print every skill score");
        };
        let ok = (rv - rare_printed).abs() <= CELL_TOL && (nv - random_printed).abs() <= CELL_TOL;
        pass &= ok;
        writeln!(
            text,
            "{:<5} {} vs {}  {}",
            m.name(),
            fmt_value(rv, 3),
            fmt_value(nv, 3),
            if ok { "PASS" } else { "FAIL" }
        )
        .unwrap();
        writeln!(csv, "{},{},{}", m.key(), fmt_value(rv, 3), fmt_value(nv, 3)).unwrap();
        rare_values.push(rv);
        random_values.push(nv);
    }

    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;
    let csv_path = out_dir.join("figure1.csv");
    let svg_path = out_dir.join("figure1.svg");
    std::fs::write(&csv_path, &csv).with_context(|| format!("writing {}", csv_path.display()))?;
    let labels: Vec<&str> = Measure::SKILL.iter().map(|m| m.name()).collect();
    let svg = grouped_bar_svg(
        "Perfect forecast skill: rare event vs random event (n = 400)",
        &labels,
        ("rare event (399 rejections, 1 hit)", &rare_values),
        ("random event (193 hits, 207 rejections)", &random_values),
    );
    std::fs::write(&svg_path, svg).with_context(|| format!("writing {}", svg_path.display()))?;

    writeln!(
        text,
        "\nwrote {} and {}\nfigure1: {}",
        csv_path.display(),
        svg_path.display(),
        if pass { "PASS" } else { "FAIL" }
    )
    .unwrap();
    Ok(Report { text, pass })
}

/// Reruns every property probe and prints the matrix next to the published
/// claims. Differences between a claim and an observation are informational
/// (several published claims cover properties that are not probed here), so
/// the target passes as long as every probe ran.
pub fn audit(trials: u32, seed: u64) -> Report {
    let reports = audit_matrix(&Measure::ALL, trials, seed);
    let mut text = render_matrix(&reports);
    let mut disagreements = Vec::new();
    for report in &reports {
        for property in Property::ALL {
            if let Some(claimed) = table_a1_claim(report.measure, property) {
                let verdict = report.verdict(property);
                if matches!(verdict, skillver::Verdict::NotProbed) {
                    continue;
                }
                if claimed != verdict.holds() {
                    disagreements.push(format!(
                        "{} {}: published claim {}, observed {}",
                        report.measure.name(),
                        property.name(),
                        if claimed { "checked" } else { "blank" },
                        verdict.symbol(),
                    ));
                }
            }
        }
    }
    if !disagreements.is_empty() {
        text.push_str("\nobserved verdicts differing from published claims (informational):\n");
        for d in &disagreements {
            text.push_str("  ");
            text.push_str(d);
            text.push('\n');
        }
    }
    text.push_str(
        "\naudit_matrix: PASS (all probes ran; claims and observations shown side by side)\n",
    );
    Report { text, pass: true }
}
