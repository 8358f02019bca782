//! Loading forecast series and directionalizing them into binary outcomes.
//!
//! A series pairs per-period point forecasts (annual growth made in each
//! quarter) with one actual value per year. Directionalization turns each
//! forecast into an Up/Down call against the previous year's actual: the
//! forecast predicts Up when it exceeds that reference, and the outcome is
//! Up when the current year's actual exceeds the same reference. Up maps to
//! a predicted/observed "yes" before tabulation.
//!
//! Values equal to the reference are ties; the default policy reads Up as a
//! strict increase and resolves ties Down, and the output records how many
//! ties were hit so the choice is auditable.

use crate::contingency::{ContingencyTable, OutcomePair, TableError};
use serde::Serialize;
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

/// One row of a forecast series: a year, an optional quarter, an optional
/// forecast made in that quarter, and the year's actual value when this row
/// carries it. Reference-only rows (no quarter, no forecast) are permitted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ForecastRecord {
    pub year: i32,
    pub quarter: Option<u8>,
    pub forecast: Option<f64>,
    pub actual: Option<f64>,
}

/// What to do when a forecast or actual exactly equals its reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TiePolicy {
    /// Up means strictly greater; a tie counts as Down.
    #[default]
    Down,
    /// A tie aborts with an error naming the record.
    Error,
}

/// Directionalization rule. The reference is fixed to the previous year's
/// actual value; only the tie policy varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct DirectionalRule {
    pub tie_policy: TiePolicy,
}

/// The directionalized series: one outcome per forecast record, the tallied
/// table, and tie metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionalSeries {
    pub outcomes: Vec<OutcomePair>,
    pub table: ContingencyTable,
    /// Number of comparisons (forecast or actual vs reference) that were
    /// exact ties and fell back to the tie policy.
    pub ties: u32,
    pub tie_policy: TiePolicy,
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("year {year} has more than one actual value")]
    DuplicateActual { year: i32 },
    #[error("forecasts exist for {year} but the series has no actual value for {year}")]
    MissingActual { year: i32 },
    #[error(
        "forecasts for {year} need the previous year's actual ({reference}) as direction \
         reference, but the series has none",
        reference = year - 1
    )]
    MissingReference { year: i32 },
    #[error(
        "{year} Q{quarter}: {what} equals the reference value {reference} and the tie policy \
         is `error`"
    )]
    Tie {
        year: i32,
        quarter: u8,
        what: &'static str,
        reference: f64,
    },
    #[error("series contains no forecast rows")]
    NoForecasts,
}

/// Parses a forecast series from delimiter-separated text with the header
/// `year,quarter,forecast,actual`.
///
/// The quarter field is empty on reference-only rows and `Q1`..`Q4` (or
/// `1`..`4`) otherwise; forecast and actual fields may be empty. Records
/// come back ordered by (year, quarter), and every year holding forecasts
/// is checked to have its own actual and the previous year's actual.
pub fn parse_series(text: &str) -> Result<Vec<ForecastRecord>, IngestError> {
    let mut lines = text.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((idx, raw)) => {
                let trimmed = raw.trim();
                if trimmed.is_empty() || trimmed.starts_with('#') {
                    continue;
                }
                break (idx + 1, trimmed);
            }
            None => {
                return Err(IngestError::Parse {
                    line: 1,
                    message: "file is empty: expected header year,quarter,forecast,actual".into(),
                })
            }
        }
    };
    let header_fields: Vec<String> = header
        .1
        .split(',')
        .map(|f| f.trim().to_ascii_lowercase())
        .collect();
    if header_fields != ["year", "quarter", "forecast", "actual"] {
        return Err(IngestError::Parse {
            line: header.0,
            message: format!(
                "expected header year,quarter,forecast,actual, found {:?}",
                header.1
            ),
        });
    }

    let mut records = Vec::new();
    for (idx, raw) in lines {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(IngestError::Parse {
                line,
                message: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let year: i32 = fields[0].parse().map_err(|_| IngestError::Parse {
            line,
            message: format!("bad year {:?}", fields[0]),
        })?;
        let quarter =
            parse_quarter(fields[1]).map_err(|message| IngestError::Parse { line, message })?;
        let forecast = parse_optional_number(fields[2]).map_err(|message| IngestError::Parse {
            line,
            message: format!("bad forecast: {message}"),
        })?;
        let actual = parse_optional_number(fields[3]).map_err(|message| IngestError::Parse {
            line,
            message: format!("bad actual: {message}"),
        })?;
        if forecast.is_some() && quarter.is_none() {
            return Err(IngestError::Parse {
                line,
                message: "a forecast row must name its quarter".into(),
            });
        }
        records.push(ForecastRecord {
            year,
            quarter,
            forecast,
            actual,
        });
    }

    records.sort_by_key(|r| (r.year, r.quarter.unwrap_or(0)));
    check_consistency(&records)?;
    Ok(records)
}

/// Reads and parses a series file via [`parse_series`].
pub fn load_series(path: &Path) -> Result<Vec<ForecastRecord>, IngestError> {
    let text = std::fs::read_to_string(path)?;
    parse_series(&text)
}

fn parse_quarter(field: &str) -> Result<Option<u8>, String> {
    if field.is_empty() {
        return Ok(None);
    }
    let digits = field.strip_prefix(['Q', 'q']).unwrap_or(field);
    match digits.parse::<u8>() {
        Ok(q @ 1..=4) => Ok(Some(q)),
        _ => Err(format!("bad quarter {field:?} (expected Q1..Q4 or empty)")),
    }
}

fn parse_optional_number(field: &str) -> Result<Option<f64>, String> {
    if field.is_empty() || field == "-" {
        return Ok(None);
    }
    field
        .parse::<f64>()
        .map(Some)
        .map_err(|_| format!("{field:?} is not a number"))
}

fn actuals_by_year(records: &[ForecastRecord]) -> Result<BTreeMap<i32, f64>, IngestError> {
    let mut actuals = BTreeMap::new();
    for record in records {
        if let Some(actual) = record.actual {
            if actuals.insert(record.year, actual).is_some() {
                return Err(IngestError::DuplicateActual { year: record.year });
            }
        }
    }
    Ok(actuals)
}

fn check_consistency(records: &[ForecastRecord]) -> Result<(), IngestError> {
    let actuals = actuals_by_year(records)?;
    for record in records {
        if record.forecast.is_some() {
            if !actuals.contains_key(&record.year) {
                return Err(IngestError::MissingActual { year: record.year });
            }
            if !actuals.contains_key(&(record.year - 1)) {
                return Err(IngestError::MissingReference { year: record.year });
            }
        }
    }
    Ok(())
}

/// Directionalizes every forecast record against the previous year's actual
/// and tallies the outcomes. The output length equals the number of
/// forecast rows.
pub fn directionalize(
    records: &[ForecastRecord],
    rule: DirectionalRule,
) -> Result<DirectionalSeries, IngestError> {
    check_consistency(records)?;
    let actuals = actuals_by_year(records)?;
    let mut outcomes = Vec::new();
    let mut ties = 0u32;

    let mut direction = |value: f64,
                         reference: f64,
                         year: i32,
                         quarter: u8,
                         what: &'static str|
     -> Result<bool, IngestError> {
        if value == reference {
            ties += 1;
            return match rule.tie_policy {
                TiePolicy::Down => Ok(false),
                TiePolicy::Error => Err(IngestError::Tie {
                    year,
                    quarter,
                    what,
                    reference,
                }),
            };
        }
        Ok(value > reference)
    };

    for record in records {
        let Some(forecast) = record.forecast else {
            continue;
        };
        let quarter = record.quarter.expect("forecast rows carry a quarter");
        let reference = actuals[&(record.year - 1)];
        let actual = actuals[&record.year];
        let predicted = direction(forecast, reference, record.year, quarter, "the forecast")?;
        let observed = direction(actual, reference, record.year, quarter, "the actual")?;
        outcomes.push(OutcomePair {
            predicted,
            observed,
        });
    }

    let table = ContingencyTable::from_outcomes(outcomes.iter().copied()).map_err(|err| {
        debug_assert_eq!(err, TableError::EmptyStream);
        IngestError::NoForecasts
    })?;
    Ok(DirectionalSeries {
        outcomes,
        table,
        ties,
        tie_policy: rule.tie_policy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datasets::GDP_GROWTH_CSV;

    fn gdp_records() -> Vec<ForecastRecord> {
        parse_series(GDP_GROWTH_CSV).unwrap()
    }

    #[test]
    fn bundled_series_has_78_forecasts() {
        let records = gdp_records();
        let forecasts = records.iter().filter(|r| r.forecast.is_some()).count();
        assert_eq!(forecasts, 78);
        let actuals = records.iter().filter(|r| r.actual.is_some()).count();
        assert_eq!(actuals, 21); // 1999 through 2019
        assert_eq!(records.first().unwrap().year, 1999);
    }

    #[test]
    fn bundled_series_directionalizes_to_gdp_table() {
        let series = directionalize(&gdp_records(), DirectionalRule::default()).unwrap();
        assert_eq!(series.table.counts(), [34, 4, 4, 36]);
        assert_eq!(series.outcomes.len(), 78);
        assert_eq!(series.ties, 0);
    }

    #[test]
    fn known_quarters_directionalize_as_expected() {
        // Records are ordered by (year, quarter): 2000 contributes two rows
        // (Q3, Q4), every later year four. 2008 Q1 is row 30, 2009 Q1 is 34.
        let series = directionalize(&gdp_records(), DirectionalRule::default()).unwrap();
        // 2008 Q1: forecast 5.3 vs 2007 actual 5.0 predicts Up; actual 2.5
        // went Down: a false alarm.
        assert_eq!(series.outcomes[30], OutcomePair::new(true, false));
        // 2009 Q1: forecast 1.0 vs 2008 actual 2.5 predicts Down; actual
        // -2.3 went Down: a correct rejection.
        assert_eq!(series.outcomes[34], OutcomePair::new(false, false));
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        match parse_series("") {
            Err(IngestError::Parse { line: 1, .. }) => {}
            other => panic!("unexpected result: {other:?}"),
        }
    }

    #[test]
    fn forecast_without_reference_year_is_rejected() {
        let text = "year,quarter,forecast,actual\n2000,Q3,5.0,4.8\n";
        match parse_series(text) {
            Err(IngestError::MissingReference { year: 2000 }) => {}
            other => panic!("unexpected result: {other:?}"),
        }
    }

    #[test]
    fn forecast_without_current_actual_is_rejected() {
        let text = "year,quarter,forecast,actual\n1999,,,4.4\n2000,Q3,5.0,\n";
        match parse_series(text) {
            Err(IngestError::MissingActual { year: 2000 }) => {}
            other => panic!("unexpected result: {other:?}"),
        }
    }

    #[test]
    fn malformed_row_names_its_line() {
        let text = "year,quarter,forecast,actual\n1999,,,4.4\n2000,Q3,abc,4.8\n";
        match parse_series(text) {
            Err(IngestError::Parse { line: 3, message }) => {
                assert!(message.contains("abc"), "{message}");
            }
            other => panic!("unexpected result: {other:?}"),
        }
    }

    #[test]
    fn reference_only_series_has_no_forecasts() {
        let records = parse_series("year,quarter,forecast,actual\n1999,,,4.4\n").unwrap();
        match directionalize(&records, DirectionalRule::default()) {
            Err(IngestError::NoForecasts) => {}
            other => panic!("unexpected result: {other:?}"),
        }
    }

    #[test]
    fn tie_policy_down_counts_ties() {
        // Forecast exactly equals the 1999 reference: a tie, read as Down.
        // Actual 5.0 > 4.4 observes Up, so the record is a miss.
        let text = "year,quarter,forecast,actual\n1999,,,4.4\n2000,Q1,4.4,5.0\n";
        let records = parse_series(text).unwrap();
        let series = directionalize(&records, DirectionalRule::default()).unwrap();
        assert_eq!(series.ties, 1);
        assert_eq!(series.outcomes[0], OutcomePair::new(false, true));
        assert_eq!(series.table.counts(), [0, 0, 1, 0]);
    }

    #[test]
    fn tie_policy_error_names_the_record() {
        let text = "year,quarter,forecast,actual\n1999,,,4.4\n2000,Q2,4.4,5.0\n";
        let records = parse_series(text).unwrap();
        let rule = DirectionalRule {
            tie_policy: TiePolicy::Error,
        };
        match directionalize(&records, rule) {
            Err(IngestError::Tie {
                year: 2000,
                quarter: 2,
                ..
            }) => {}
            other => panic!("unexpected result: {other:?}"),
        }
    }

    #[test]
    fn constant_shift_leaves_directions_unchanged() {
        let records = gdp_records();
        for shift in [-7.0, 13.0, 100.0] {
            let shifted: Vec<ForecastRecord> = records
                .iter()
                .map(|r| ForecastRecord {
                    year: r.year,
                    quarter: r.quarter,
                    forecast: r.forecast.map(|v| v + shift),
                    actual: r.actual.map(|v| v + shift),
                })
                .collect();
            let base = directionalize(&records, DirectionalRule::default()).unwrap();
            let moved = directionalize(&shifted, DirectionalRule::default()).unwrap();
            assert_eq!(base.outcomes, moved.outcomes, "shift {shift}");
            assert_eq!(base.table, moved.table);
        }
    }
}
