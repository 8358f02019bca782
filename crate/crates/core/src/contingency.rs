//! 2x2 contingency tables for binary forecast verification.
//!
//! A verification record pairs what was predicted with what was observed.
//! Over a run of forecasts the four possible pairings are tallied into a
//! [`ContingencyTable`]: hits (a), false alarms (b), misses (c) and correct
//! rejections (d). Every score in this crate is a function of those four
//! counts.
//!
//! [`ContingencyTable::decompose`] expands a table into the no-skill
//! reference chain used by the prediction skill index: joint and marginal
//! probabilities, the expected cell probabilities of a random (no-skill)
//! forecast with the same marginals, the signed errors against that
//! expectation, and the errors normalized by the geometric mean of the
//! expectation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One forecast/outcome observation: was the event predicted, and did it occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OutcomePair {
    pub predicted: bool,
    pub observed: bool,
}

impl OutcomePair {
    pub fn new(predicted: bool, observed: bool) -> Self {
        Self {
            predicted,
            observed,
        }
    }
}

/// Errors from table construction and table-level statistics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    /// `from_outcomes` was given an empty stream.
    #[error("outcome stream is empty: a contingency table needs at least one record")]
    EmptyStream,
    /// All four cell counts are zero.
    #[error("contingency table is empty: all four cell counts are zero")]
    EmptyTable,
    /// Bias score is undefined when no event was ever observed.
    #[error("bias score is undefined: no observed events (hits + misses = 0)")]
    NoObservedEvents,
}

/// Errors from parsing an outcome-stream text file.
#[derive(Debug, Error)]
pub enum OutcomeParseError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: expected two fields (predicted, observed), found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: unrecognized token {token:?} (expected 1/0, yes/no, or up/down)")]
    BadToken { line: usize, token: String },
}

/// The 2x2 contingency table of predicted versus observed binary events.
///
/// Cells follow the conventional naming: `hits` counts predicted-yes /
/// observed-yes, `false_alarms` predicted-yes / observed-no, `misses`
/// predicted-no / observed-yes and `correct_rejections` predicted-no /
/// observed-no. Construction rejects the all-zero table, so `total() >= 1`
/// always holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct ContingencyTable {
    hits: u32,
    false_alarms: u32,
    misses: u32,
    correct_rejections: u32,
}

#[derive(Deserialize)]
struct RawTable {
    hits: u32,
    false_alarms: u32,
    misses: u32,
    correct_rejections: u32,
}

impl TryFrom<RawTable> for ContingencyTable {
    type Error = TableError;

    fn try_from(raw: RawTable) -> Result<Self, TableError> {
        ContingencyTable::new(
            raw.hits,
            raw.false_alarms,
            raw.misses,
            raw.correct_rejections,
        )
    }
}

impl ContingencyTable {
    /// Builds a table from the four cell counts, rejecting the empty table.
    pub fn new(
        hits: u32,
        false_alarms: u32,
        misses: u32,
        correct_rejections: u32,
    ) -> Result<Self, TableError> {
        let table = Self {
            hits,
            false_alarms,
            misses,
            correct_rejections,
        };
        if table.total() == 0 {
            return Err(TableError::EmptyTable);
        }
        Ok(table)
    }

    /// Tallies an outcome stream into a table. Each pair increments exactly
    /// one cell; the total equals the stream length. Order does not matter.
    pub fn from_outcomes<I>(stream: I) -> Result<Self, TableError>
    where
        I: IntoIterator<Item = OutcomePair>,
    {
        let (mut a, mut b, mut c, mut d) = (0u32, 0u32, 0u32, 0u32);
        for pair in stream {
            match (pair.predicted, pair.observed) {
                (true, true) => a += 1,
                (true, false) => b += 1,
                (false, true) => c += 1,
                (false, false) => d += 1,
            }
        }
        Self::new(a, b, c, d).map_err(|_| TableError::EmptyStream)
    }

    pub fn hits(&self) -> u32 {
        self.hits
    }

    pub fn false_alarms(&self) -> u32 {
        self.false_alarms
    }

    pub fn misses(&self) -> u32 {
        self.misses
    }

    pub fn correct_rejections(&self) -> u32 {
        self.correct_rejections
    }

    /// Total sample size `n = a + b + c + d`.
    pub fn total(&self) -> u64 {
        self.hits as u64
            + self.false_alarms as u64
            + self.misses as u64
            + self.correct_rejections as u64
    }

    /// Cell counts in (a, b, c, d) order.
    pub fn counts(&self) -> [u32; 4] {
        [
            self.hits,
            self.false_alarms,
            self.misses,
            self.correct_rejections,
        ]
    }

    /// Observed event frequency `(a + c) / n`.
    pub fn base_rate(&self) -> f64 {
        (self.hits as f64 + self.misses as f64) / self.total() as f64
    }

    /// Forecast frequency ratio `(a + b) / (a + c)`; 1 means the event was
    /// forecast exactly as often as it occurred.
    pub fn bias_score(&self) -> Result<f64, TableError> {
        let observed_yes = self.hits as u64 + self.misses as u64;
        if observed_yes == 0 {
            return Err(TableError::NoObservedEvents);
        }
        Ok((self.hits as f64 + self.false_alarms as f64) / observed_yes as f64)
    }

    /// Swaps false alarms and misses.
    pub fn transpose(&self) -> Self {
        Self {
            hits: self.hits,
            false_alarms: self.misses,
            misses: self.false_alarms,
            correct_rejections: self.correct_rejections,
        }
    }

    /// Relabels events as non-events: swaps a with d and b with c.
    pub fn complement(&self) -> Self {
        Self {
            hits: self.correct_rejections,
            false_alarms: self.misses,
            misses: self.false_alarms,
            correct_rejections: self.hits,
        }
    }

    /// Expands the table into the full no-skill reference chain.
    ///
    /// Any cell whose no-skill expectation is zero (a whole predicted or
    /// observed marginal is empty) has an undefined normalized error; that
    /// cell is substituted with the no-skill value 0 and flagged degenerate.
    pub fn decompose(&self) -> NoSkillDecomposition {
        let n = self.total() as f64;
        let a = self.hits as f64;
        let b = self.false_alarms as f64;
        let c = self.misses as f64;
        let d = self.correct_rejections as f64;

        let joint = Cells {
            hits: a / n,
            false_alarms: b / n,
            misses: c / n,
            correct_rejections: d / n,
        };
        let marginal_pred_yes = (a + b) / n;
        let marginal_pred_no = (c + d) / n;
        let marginal_obs_yes = (a + c) / n;
        let marginal_obs_no = (b + d) / n;

        let expected = Cells {
            hits: marginal_pred_yes * marginal_obs_yes,
            false_alarms: marginal_pred_yes * marginal_obs_no,
            misses: marginal_obs_yes * marginal_pred_no,
            correct_rejections: marginal_obs_no * marginal_pred_no,
        };
        let error = Cells {
            hits: joint.hits - expected.hits,
            false_alarms: joint.false_alarms - expected.false_alarms,
            misses: joint.misses - expected.misses,
            correct_rejections: joint.correct_rejections - expected.correct_rejections,
        };

        let normalize = |err: f64, exp: f64| -> (f64, bool) {
            if exp == 0.0 {
                (0.0, true)
            } else {
                (err / exp.sqrt(), false)
            }
        };
        let (ne_a, deg_a) = normalize(error.hits, expected.hits);
        let (ne_b, deg_b) = normalize(error.false_alarms, expected.false_alarms);
        let (ne_c, deg_c) = normalize(error.misses, expected.misses);
        let (ne_d, deg_d) = normalize(error.correct_rejections, expected.correct_rejections);

        NoSkillDecomposition {
            joint,
            marginal_pred_yes,
            marginal_pred_no,
            marginal_obs_yes,
            marginal_obs_no,
            expected,
            error,
            normalized_error: Cells {
                hits: ne_a,
                false_alarms: ne_b,
                misses: ne_c,
                correct_rejections: ne_d,
            },
            degenerate: CellFlags {
                hits: deg_a,
                false_alarms: deg_b,
                misses: deg_c,
                correct_rejections: deg_d,
            },
        }
    }
}

impl std::fmt::Display for ContingencyTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(a={}, b={}, c={}, d={})",
            self.hits, self.false_alarms, self.misses, self.correct_rejections
        )
    }
}

/// One real value per table cell, in the same layout as the table itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cells {
    pub hits: f64,
    pub false_alarms: f64,
    pub misses: f64,
    pub correct_rejections: f64,
}

impl Cells {
    pub fn as_array(&self) -> [f64; 4] {
        [
            self.hits,
            self.false_alarms,
            self.misses,
            self.correct_rejections,
        ]
    }

    pub fn sum(&self) -> f64 {
        self.hits + self.false_alarms + self.misses + self.correct_rejections
    }
}

/// One flag per table cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CellFlags {
    pub hits: bool,
    pub false_alarms: bool,
    pub misses: bool,
    pub correct_rejections: bool,
}

impl CellFlags {
    pub fn any(&self) -> bool {
        self.hits || self.false_alarms || self.misses || self.correct_rejections
    }
}

/// The no-skill reference chain derived from a contingency table.
///
/// `expected` holds the cell probabilities a skill-free random forecast with
/// the same marginals would produce; `error` is the signed gap between the
/// observed joint probabilities and that expectation; `normalized_error`
/// divides each gap by the square root of its expectation. Cells where the
/// expectation is zero carry a `degenerate` flag and a normalized error of 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoSkillDecomposition {
    pub joint: Cells,
    pub marginal_pred_yes: f64,
    pub marginal_pred_no: f64,
    pub marginal_obs_yes: f64,
    pub marginal_obs_no: f64,
    pub expected: Cells,
    pub error: Cells,
    pub normalized_error: Cells,
    pub degenerate: CellFlags,
}

/// Parses an outcome stream from two-column text.
///
/// One record per line: predicted then observed, separated by a comma or
/// whitespace. Accepted tokens are `1`/`0`, `yes`/`no` and `up`/`down`,
/// case-insensitive. Blank lines and `#` comment lines are skipped.
pub fn parse_outcomes(text: &str) -> Result<Vec<OutcomePair>, OutcomeParseError> {
    let mut outcomes = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed
            .split(|ch: char| ch == ',' || ch.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != 2 {
            return Err(OutcomeParseError::FieldCount {
                line,
                found: fields.len(),
            });
        }
        let predicted = parse_flag(fields[0]).ok_or_else(|| OutcomeParseError::BadToken {
            line,
            token: fields[0].to_string(),
        })?;
        let observed = parse_flag(fields[1]).ok_or_else(|| OutcomeParseError::BadToken {
            line,
            token: fields[1].to_string(),
        })?;
        outcomes.push(OutcomePair {
            predicted,
            observed,
        });
    }
    Ok(outcomes)
}

/// Reads an outcome stream from a file via [`parse_outcomes`].
pub fn read_outcomes(path: &std::path::Path) -> Result<Vec<OutcomePair>, OutcomeParseError> {
    let text = std::fs::read_to_string(path)?;
    parse_outcomes(&text)
}

fn parse_flag(token: &str) -> Option<bool> {
    match token.to_ascii_lowercase().as_str() {
        "1" | "yes" | "y" | "up" | "true" => Some(true),
        "0" | "no" | "n" | "down" | "false" => Some(false),
        _ => None,
    }
}
