//! Skill verification for deterministic binary forecasts.
//!
//! The toolkit scores a run of yes/no forecasts against what actually
//! happened. Outcomes are tallied into a 2x2 [`ContingencyTable`] (hits,
//! false alarms, misses, correct rejections) and scored with the prediction
//! skill index ([`psi`]) alongside six conventional measures: the Gilbert,
//! Heidke, Peirce, Clayton and odds ratio skill scores, and the critical
//! success index as the accuracy contrast.
//!
//! Beyond raw scoring, the crate:
//!
//! - expands any table into its no-skill reference decomposition
//!   ([`ContingencyTable::decompose`]);
//! - audits the formal properties of every measure (equitability, hedging
//!   resistance, boundedness, symmetry, regularity) with seeded empirical
//!   probes ([`properties`]);
//! - directionalizes real forecast series, such as the bundled Bank of
//!   Thailand GDP growth record, into binary outcomes ([`ingestion`]);
//! - runs seeded random-forecaster studies ([`simulate`]);
//! - embeds the published reference tables these scores are validated
//!   against ([`datasets`]).
//!
//! ```
//! use skillver::{score_all, ContingencyTable};
//!
//! let table = ContingencyTable::new(34, 4, 4, 36)?;
//! let scores = score_all(&table);
//! assert!((scores.psi.value().unwrap() - 0.795).abs() < 5e-4);
//! assert!((scores.csi.value().unwrap() - 0.810).abs() < 5e-4);
//! # Ok::<(), skillver::TableError>(())
//! ```

pub mod contingency;
pub mod datasets;
pub mod ingestion;
pub mod properties;
pub mod scores;
pub mod simulate;

pub use contingency::{
    parse_outcomes, read_outcomes, CellFlags, Cells, ContingencyTable, NoSkillDecomposition,
    OutcomePair, OutcomeParseError, TableError,
};
pub use ingestion::{
    directionalize, load_series, parse_series, DirectionalRule, DirectionalSeries, ForecastRecord,
    IngestError, TiePolicy,
};
pub use properties::{audit_matrix, render_matrix, Property, PropertyReport, Verdict};
pub use scores::{csi, css, gss, hss, orss, psi, pss, score_all, Measure, ScoreSet, ScoreValue};
pub use simulate::{
    run_trials, score_given_tables, Generator, ScoreMeans, SimulateError, TrialBatch, TrialConfig,
    TrialRow,
};
