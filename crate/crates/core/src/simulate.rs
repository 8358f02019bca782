//! Seeded random-forecaster studies.
//!
//! Generates contingency tables under a deterministic seeded generator and
//! scores them, so that the no-skill behaviour of every measure can be
//! checked statistically: an equitable measure averages 0 over random
//! forecasts.
//!
//! Trial `i` draws only from a stream derived from `(seed, i)`, so batches
//! are reproducible bit-for-bit and independent of evaluation order.

use crate::contingency::ContingencyTable;
use crate::scores::{score_all, Measure, ScoreSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

/// How each trial table is produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Generator {
    /// Each of the four cells is an independent uniform draw from
    /// `0..=max_count` (the all-zero table is redrawn).
    CellUniform { max_count: u32 },
    /// A forecaster with no information: for each of `periods` periods the
    /// forecast is yes with probability `p_forecast` and, independently, the
    /// event occurs with probability `p_observed`.
    Bernoulli {
        periods: u32,
        p_forecast: f64,
        p_observed: f64,
    },
}

impl Generator {
    fn validate(&self) -> Result<(), SimulateError> {
        match *self {
            Generator::CellUniform { max_count } => {
                if max_count == 0 {
                    return Err(SimulateError::InvalidConfig(
                        "cell-uniform generator needs max_count >= 1".into(),
                    ));
                }
            }
            Generator::Bernoulli {
                periods,
                p_forecast,
                p_observed,
            } => {
                if periods == 0 {
                    return Err(SimulateError::InvalidConfig(
                        "bernoulli generator needs at least one period".into(),
                    ));
                }
                for (name, p) in [("p_forecast", p_forecast), ("p_observed", p_observed)] {
                    if !(0.0..=1.0).contains(&p) {
                        return Err(SimulateError::InvalidConfig(format!(
                            "{name} must lie in [0, 1], got {p}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Draws one table from the given stream.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> ContingencyTable {
        match *self {
            Generator::CellUniform { max_count } => loop {
                let a = rng.random_range(0..=max_count);
                let b = rng.random_range(0..=max_count);
                let c = rng.random_range(0..=max_count);
                let d = rng.random_range(0..=max_count);
                if let Ok(table) = ContingencyTable::new(a, b, c, d) {
                    return table;
                }
            },
            Generator::Bernoulli {
                periods,
                p_forecast,
                p_observed,
            } => {
                let (mut a, mut b, mut c, mut d) = (0u32, 0u32, 0u32, 0u32);
                for _ in 0..periods {
                    let predicted = rng.random_bool(p_forecast);
                    let observed = rng.random_bool(p_observed);
                    match (predicted, observed) {
                        (true, true) => a += 1,
                        (true, false) => b += 1,
                        (false, true) => c += 1,
                        (false, false) => d += 1,
                    }
                }
                ContingencyTable::new(a, b, c, d).expect("periods >= 1 yields a non-empty table")
            }
        }
    }
}

/// A seeded trial run description.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialConfig {
    pub trials: u32,
    pub generator: Generator,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimulateError {
    #[error("invalid trial configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot score an empty list of tables")]
    EmptyBatch,
}

/// One generated (or supplied) table with its seven scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialRow {
    pub table: ContingencyTable,
    pub scores: ScoreSet,
}

/// Full-precision per-measure means over a batch.
///
/// CSI rows that are not applicable are excluded from the CSI mean; `csi` is
/// `None` if every row was not applicable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoreMeans {
    pub psi: f64,
    pub gss: f64,
    pub hss: f64,
    pub pss: f64,
    pub css: f64,
    pub orss: f64,
    pub csi: Option<f64>,
}

impl ScoreMeans {
    pub fn get(&self, measure: Measure) -> Option<f64> {
        match measure {
            Measure::Psi => Some(self.psi),
            Measure::Gss => Some(self.gss),
            Measure::Hss => Some(self.hss),
            Measure::Pss => Some(self.pss),
            Measure::Css => Some(self.css),
            Measure::Orss => Some(self.orss),
            Measure::Csi => self.csi,
        }
    }
}

/// The rows and per-measure averages of one study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialBatch {
    pub rows: Vec<TrialRow>,
    pub averages: ScoreMeans,
}

impl TrialBatch {
    fn from_rows(rows: Vec<TrialRow>) -> Self {
        let averages = compute_means(&rows);
        Self { rows, averages }
    }

    /// Scores of one measure across all rows, skipping not-applicable ones.
    pub fn values(&self, measure: Measure) -> Vec<f64> {
        self.rows
            .iter()
            .filter_map(|row| row.scores.get(measure).value())
            .collect()
    }

    pub fn mean(&self, measure: Measure) -> Option<f64> {
        self.averages.get(measure)
    }

    /// Standard error of the sample mean for one measure.
    pub fn std_error(&self, measure: Measure) -> Option<f64> {
        let values = self.values(measure);
        if values.len() < 2 {
            return None;
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
        Some((var / n).sqrt())
    }

    /// Delimiter-separated rows in reference column order (trial number,
    /// four cells, total, six skill scores), then a trailing averages row.
    pub fn to_csv(&self, decimals: usize) -> String {
        let mut out = String::from(
            "trial,hits,false_alarms,misses,correct_rejections,total,psi,gss,hss,pss,css,orss\n",
        );
        for (i, row) in self.rows.iter().enumerate() {
            let t = row.table;
            out.push_str(&format!(
                "{},{},{},{},{},{}",
                i + 1,
                t.hits(),
                t.false_alarms(),
                t.misses(),
                t.correct_rejections(),
                t.total()
            ));
            for m in Measure::SKILL {
                let v = row
                    .scores
                    .get(m)
                    .value()
                    .expect("skill scores always carry a value");
                out.push_str(&format!(",{v:.decimals$}"));
            }
            out.push('\n');
        }
        out.push_str("average,,,,,");
        for m in Measure::SKILL {
            let v = self.averages.get(m).expect("skill means always exist");
            out.push_str(&format!(",{v:.decimals$}"));
        }
        out.push('\n');
        out
    }
}

fn compute_means(rows: &[TrialRow]) -> ScoreMeans {
    let mean_of = |measure: Measure| -> Option<f64> {
        let mut sum = 0.0;
        let mut count = 0u64;
        for row in rows {
            if let Some(v) = row.scores.get(measure).value() {
                sum += v;
                count += 1;
            }
        }
        (count > 0).then(|| sum / count as f64)
    };
    ScoreMeans {
        psi: mean_of(Measure::Psi).unwrap_or(0.0),
        gss: mean_of(Measure::Gss).unwrap_or(0.0),
        hss: mean_of(Measure::Hss).unwrap_or(0.0),
        pss: mean_of(Measure::Pss).unwrap_or(0.0),
        css: mean_of(Measure::Css).unwrap_or(0.0),
        orss: mean_of(Measure::Orss).unwrap_or(0.0),
        csi: mean_of(Measure::Csi),
    }
}

/// The stream for trial `index` under `seed`. Streams are independent, so
/// trials may be evaluated in any order or concurrently.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Runs `config.trials` seeded trials and scores every generated table.
pub fn run_trials(config: &TrialConfig) -> Result<TrialBatch, SimulateError> {
    if config.trials == 0 {
        return Err(SimulateError::InvalidConfig(
            "at least one trial is required".into(),
        ));
    }
    config.generator.validate()?;
    let rows = (0..config.trials)
        .map(|i| {
            let mut rng = trial_rng(config.seed, i as u64);
            let table = config.generator.sample(&mut rng);
            TrialRow {
                table,
                scores: score_all(&table),
            }
        })
        .collect();
    Ok(TrialBatch::from_rows(rows))
}

/// Scores an externally supplied list of tables as one batch.
pub fn score_given_tables(tables: &[ContingencyTable]) -> Result<TrialBatch, SimulateError> {
    if tables.is_empty() {
        return Err(SimulateError::EmptyBatch);
    }
    let rows = tables
        .iter()
        .map(|&table| TrialRow {
            table,
            scores: score_all(&table),
        })
        .collect();
    Ok(TrialBatch::from_rows(rows))
}
