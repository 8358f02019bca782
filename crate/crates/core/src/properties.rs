//! Empirical audits of verification-measure properties.
//!
//! Each probe turns one desirable property of a verification measure
//! (equitability, hedging resistance, boundedness, symmetry, ...) into an
//! executable check over canonical tables plus seeded random tables. The
//! audit reports the published property claims side by side with the
//! observed verdicts; it never forces them to agree, because some published
//! claims cover properties that have no executable definition here and are
//! reported as not probed.
//!
//! Symmetry checks on the rational-valued measures use exact integer
//! arithmetic on the cell counts, so a verdict of "fails" is never an
//! artifact of floating-point rounding. PSI involves square roots and is
//! compared at 1e-12 instead.

use crate::contingency::ContingencyTable;
use crate::datasets::table7_tables;
use crate::scores::{Measure, ScoreValue};
use crate::simulate::{run_trials, Generator, TrialConfig};
use serde::Serialize;

/// The ten property columns of the published property table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Equitability,
    DifficultyToHedge,
    NonDegeneracy,
    BaseRateIndependence,
    Boundedness,
    Linearity,
    Regularity,
    BiasedPerfectScore,
    TransposeSymmetry,
    ComplementSymmetry,
}

impl Property {
    pub const ALL: [Property; 10] = [
        Property::Equitability,
        Property::DifficultyToHedge,
        Property::NonDegeneracy,
        Property::BaseRateIndependence,
        Property::Boundedness,
        Property::Linearity,
        Property::Regularity,
        Property::BiasedPerfectScore,
        Property::TransposeSymmetry,
        Property::ComplementSymmetry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Equitability => "equitability",
            Property::DifficultyToHedge => "difficulty to hedge",
            Property::NonDegeneracy => "non-degeneracy",
            Property::BaseRateIndependence => "base-rate independence",
            Property::Boundedness => "boundedness",
            Property::Linearity => "linearity",
            Property::Regularity => "regularity",
            Property::BiasedPerfectScore => "biased forecast can get perfect score",
            Property::TransposeSymmetry => "transpose symmetry",
            Property::ComplementSymmetry => "complement symmetry",
        }
    }

    /// Short label for matrix columns.
    pub fn label(self) -> &'static str {
        match self {
            Property::Equitability => "equit",
            Property::DifficultyToHedge => "hedge",
            Property::NonDegeneracy => "non-deg",
            Property::BaseRateIndependence => "base-rate",
            Property::Boundedness => "bounded",
            Property::Linearity => "linear",
            Property::Regularity => "regular",
            Property::BiasedPerfectScore => "biased-ok",
            Property::TransposeSymmetry => "transpose",
            Property::ComplementSymmetry => "complement",
        }
    }
}

/// Outcome of one probe for one measure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Verdict {
    Holds,
    Fails {
        counterexample: ContingencyTable,
        detail: String,
    },
    /// The property has no executable definition here, so nothing was run.
    NotProbed,
}

impl Verdict {
    pub fn symbol(&self) -> &'static str {
        match self {
            Verdict::Holds => "\u{2713}",
            Verdict::Fails { .. } => "\u{2717}",
            Verdict::NotProbed => "-",
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    fn fails(counterexample: ContingencyTable, detail: impl Into<String>) -> Self {
        Verdict::Fails {
            counterexample,
            detail: detail.into(),
        }
    }
}

// Stream tags so concurrent probes draw from disjoint deterministic streams.
const STREAM_EQUITABILITY: u64 = 1;
const STREAM_TRANSPOSE: u64 = 2;
const STREAM_COMPLEMENT: u64 = 3;
const STREAM_BOUNDEDNESS: u64 = 4;

/// One splitmix64 round over (seed, probe tag).
fn derive_seed(seed: u64, probe: u64) -> u64 {
    let mut z = seed ^ probe.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The six no-skill table shapes (constant or uniform forecasts) at several
/// sizes. Every skill measure must score each of them exactly 0.
pub fn no_skill_patterns() -> Vec<ContingencyTable> {
    let mut patterns = Vec::new();
    for k in [1u32, 3, 100, 400] {
        let shapes = [
            (k, 0, 0, 0),
            (0, 0, 0, k),
            (0, 0, k, 0),
            (0, k, 0, 0),
            (k, k, k, k),
            (k, k, 0, 0),
        ];
        for (a, b, c, d) in shapes {
            patterns.push(ContingencyTable::new(a, b, c, d).expect("k >= 1"));
        }
    }
    patterns
}

/// The rare-event tables used by the non-degeneracy probe (canonical
/// examples 20-23).
fn rare_event_tables() -> [ContingencyTable; 4] {
    [
        ContingencyTable::new(1, 2, 0, 397).unwrap(),
        ContingencyTable::new(397, 0, 2, 1).unwrap(),
        ContingencyTable::new(399, 0, 0, 1).unwrap(),
        ContingencyTable::new(1, 0, 0, 399).unwrap(),
    ]
}

/// Checks that constant and uniform forecasts score exactly 0: hedging by
/// always predicting the common outcome does not pay.
pub fn check_hedging(measure: Measure) -> Verdict {
    for pattern in no_skill_patterns() {
        let score = measure.compute(&pattern);
        if score.value() != Some(0.0) {
            let shown = match score.value() {
                Some(v) => format!("{v}"),
                None => "N/A".to_string(),
            };
            return Verdict::fails(
                pattern,
                format!("constant/uniform forecast {pattern} scores {shown}, not 0"),
            );
        }
    }
    Verdict::Holds
}

/// Checks equitability: the no-skill patterns score exactly 0, and the mean
/// score of an uninformed random forecaster (independent 50:50 forecasts
/// over 400 periods per trial) lies within 3 standard errors of 0.
pub fn check_equitability(measure: Measure, trials: u32, seed: u64) -> Verdict {
    if let fails @ Verdict::Fails { .. } = check_hedging(measure) {
        return fails;
    }
    if trials < 2 {
        // A single trial has no standard-error estimate; the pattern check
        // above already ran.
        return Verdict::Holds;
    }
    let config = TrialConfig {
        trials,
        generator: Generator::Bernoulli {
            periods: 400,
            p_forecast: 0.5,
            p_observed: 0.5,
        },
        seed: derive_seed(seed, STREAM_EQUITABILITY),
    };
    let batch = run_trials(&config).expect("valid equitability config");
    let (mean, se) = match (batch.mean(measure), batch.std_error(measure)) {
        (Some(mean), Some(se)) => (mean, se),
        _ => return Verdict::Holds,
    };
    if mean.abs() > 3.0 * se {
        // Witness: the trial farthest from zero (the mean itself is not a
        // table).
        let worst = batch
            .rows
            .iter()
            .max_by(|x, y| {
                let vx = x.scores.get(measure).value().map_or(0.0, f64::abs);
                let vy = y.scores.get(measure).value().map_or(0.0, f64::abs);
                vx.total_cmp(&vy)
            })
            .expect("batch is non-empty");
        return Verdict::fails(
            worst.table,
            format!(
                "mean over {trials} random-forecast trials is {mean:.6} with standard error \
                 {se:.6}; |mean| exceeds 3 standard errors"
            ),
        );
    }
    Verdict::Holds
}

/// Checks invariance under swapping false alarms and misses, over the 24
/// canonical tables and `trials` sampled tables.
pub fn check_transpose_symmetry(measure: Measure, trials: u32, seed: u64) -> Verdict {
    check_symmetry(
        measure,
        trials,
        seed,
        STREAM_TRANSPOSE,
        "swapping b and c",
        |t| t.transpose(),
    )
}

/// Checks invariance under relabelling events as non-events (a with d, b
/// with c), over the 24 canonical tables and `trials` sampled tables.
pub fn check_complement_symmetry(measure: Measure, trials: u32, seed: u64) -> Verdict {
    check_symmetry(
        measure,
        trials,
        seed,
        STREAM_COMPLEMENT,
        "relabelling events",
        |t| t.complement(),
    )
}

fn check_symmetry(
    measure: Measure,
    trials: u32,
    seed: u64,
    stream: u64,
    action: &str,
    transform: impl Fn(&ContingencyTable) -> ContingencyTable,
) -> Verdict {
    let mut rng = crate::simulate::trial_rng(derive_seed(seed, stream), 0);
    let generator = Generator::CellUniform { max_count: 1000 };
    let canonical = table7_tables();
    let sampled = (0..trials).map(|_| generator.sample(&mut rng));
    for table in canonical.into_iter().chain(sampled) {
        let other = transform(&table);
        if !scores_agree(measure, &table, &other) {
            let left = display_value(measure.compute(&table));
            let right = display_value(measure.compute(&other));
            return Verdict::fails(
                table,
                format!("{measure} on {table} is {left} but {right} after {action} ({other})"),
            );
        }
    }
    Verdict::Holds
}

/// Result of the boundedness probe: verdict plus the observed extrema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundednessCheck {
    pub verdict: Verdict,
    pub observed_min: f64,
    pub observed_max: f64,
}

/// Checks range containment over the extremal patterns, the 24 canonical
/// tables and `trials` sampled tables, recording the observed extrema.
pub fn check_boundedness(measure: Measure, trials: u32, seed: u64) -> BoundednessCheck {
    let (lo, hi) = measure.range();
    let mut rng = crate::simulate::trial_rng(derive_seed(seed, STREAM_BOUNDEDNESS), 0);
    let generator = Generator::CellUniform { max_count: 1000 };
    let extremal = [
        ContingencyTable::new(207, 0, 0, 193).unwrap(),
        ContingencyTable::new(0, 200, 200, 0).unwrap(),
    ];
    let mut observed_min = f64::INFINITY;
    let mut observed_max = f64::NEG_INFINITY;
    let tables = extremal
        .into_iter()
        .chain(table7_tables())
        .chain((0..trials).map(|_| generator.sample(&mut rng)));
    for table in tables {
        let Some(value) = measure.compute(&table).value() else {
            continue;
        };
        observed_min = observed_min.min(value);
        observed_max = observed_max.max(value);
        if value < lo - 1e-12 || value > hi + 1e-12 {
            return BoundednessCheck {
                verdict: Verdict::fails(
                    table,
                    format!("{measure} on {table} is {value}, outside [{lo}, {hi}]"),
                ),
                observed_min,
                observed_max,
            };
        }
    }
    BoundednessCheck {
        verdict: Verdict::Holds,
        observed_min,
        observed_max,
    }
}

/// Result of the regularity probe.
///
/// `biased` scores the under-predicting but all-correct forecast
/// (399, 0, 2, 1), whose bias score is 399/401; `unbiased` scores the
/// unbiased perfect forecast (399, 0, 0, 1). A regular measure awards both
/// the same score; a non-regular one scores the biased forecast strictly
/// lower.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularityProbe {
    pub biased_table: ContingencyTable,
    pub unbiased_table: ContingencyTable,
    pub biased: ScoreValue,
    pub unbiased: ScoreValue,
}

impl RegularityProbe {
    /// True when the biased all-correct forecast scores the same as the
    /// unbiased perfect one.
    pub fn regular(&self) -> bool {
        self.biased.value() == self.unbiased.value()
    }

    /// True when the biased forecast still receives a perfect score of 1.
    pub fn biased_gets_perfect_score(&self) -> bool {
        self.biased.value() == Some(1.0)
    }
}

/// Scores the biased-but-all-correct forecast against the unbiased perfect
/// forecast.
pub fn regularity_probe(measure: Measure) -> RegularityProbe {
    let biased_table = ContingencyTable::new(399, 0, 2, 1).unwrap();
    let unbiased_table = ContingencyTable::new(399, 0, 0, 1).unwrap();
    RegularityProbe {
        biased_table,
        unbiased_table,
        biased: measure.compute(&biased_table),
        unbiased: measure.compute(&unbiased_table),
    }
}

/// Checks that the rare-event tables (canonical examples 20-23) all receive
/// nontrivial scores, |score| >= 0.05.
pub fn non_degeneracy_probe(measure: Measure) -> Verdict {
    for table in rare_event_tables() {
        let score = measure.compute(&table);
        let nontrivial = score.value().is_some_and(|v| v.abs() >= 0.05);
        if !nontrivial {
            return Verdict::fails(
                table,
                format!(
                    "rare-event table {table} scores {}, not bounded away from 0",
                    display_value(score)
                ),
            );
        }
    }
    Verdict::Holds
}

/// The published property-table claim for one measure and property:
/// `Some(true)` for a checkmark, `Some(false)` for a blank cell, `None` when
/// the measure has no row in the published table (CSI).
pub fn table_a1_claim(measure: Measure, property: Property) -> Option<bool> {
    use Measure::*;
    use Property::*;
    let claimed = match measure {
        Psi => matches!(
            property,
            Equitability
                | DifficultyToHedge
                | NonDegeneracy
                | Boundedness
                | BiasedPerfectScore
                | TransposeSymmetry
                | ComplementSymmetry
        ),
        Gss => matches!(
            property,
            Equitability | DifficultyToHedge | Boundedness | TransposeSymmetry
        ),
        Hss => matches!(
            property,
            Equitability
                | DifficultyToHedge
                | Boundedness
                | Linearity
                | TransposeSymmetry
                | ComplementSymmetry
        ),
        Pss => matches!(
            property,
            Equitability
                | DifficultyToHedge
                | BaseRateIndependence
                | Boundedness
                | Linearity
                | ComplementSymmetry
        ),
        Css => matches!(
            property,
            Equitability | DifficultyToHedge | Boundedness | Linearity | ComplementSymmetry
        ),
        Orss => matches!(
            property,
            Equitability
                | DifficultyToHedge
                | BaseRateIndependence
                | Boundedness
                | Regularity
                | BiasedPerfectScore
                | TransposeSymmetry
                | ComplementSymmetry
        ),
        Csi => return None,
    };
    Some(claimed)
}

/// The full audit of one measure: every probe's verdict plus probe details.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub measure: Measure,
    pub trials: u32,
    pub seed: u64,
    pub equitability: Verdict,
    pub difficulty_to_hedge: Verdict,
    pub non_degeneracy: Verdict,
    pub base_rate_independence: Verdict,
    pub boundedness: Verdict,
    pub observed_min: f64,
    pub observed_max: f64,
    pub linearity: Verdict,
    pub regularity: Verdict,
    pub biased_perfect_score: Verdict,
    pub biased_score: ScoreValue,
    pub unbiased_score: ScoreValue,
    pub transpose_symmetry: Verdict,
    pub complement_symmetry: Verdict,
}

impl PropertyReport {
    /// Runs every probe for one measure. Deterministic given
    /// (measure, trials, seed).
    pub fn audit(measure: Measure, trials: u32, seed: u64) -> Self {
        let bounded = check_boundedness(measure, trials, seed);
        let reg = regularity_probe(measure);
        let regularity_detail = format!(
            "biased all-correct forecast {} scores {}, unbiased perfect forecast {} scores {}",
            reg.biased_table,
            display_value(reg.biased),
            reg.unbiased_table,
            display_value(reg.unbiased),
        );
        let regularity = if reg.regular() {
            Verdict::Holds
        } else {
            Verdict::fails(reg.biased_table, regularity_detail.clone())
        };
        let biased_perfect_score = if reg.biased_gets_perfect_score() {
            Verdict::Holds
        } else {
            Verdict::fails(reg.biased_table, regularity_detail)
        };
        Self {
            measure,
            trials,
            seed,
            equitability: check_equitability(measure, trials, seed),
            difficulty_to_hedge: check_hedging(measure),
            non_degeneracy: non_degeneracy_probe(measure),
            base_rate_independence: Verdict::NotProbed,
            boundedness: bounded.verdict,
            observed_min: bounded.observed_min,
            observed_max: bounded.observed_max,
            linearity: Verdict::NotProbed,
            regularity,
            biased_perfect_score,
            biased_score: reg.biased,
            unbiased_score: reg.unbiased,
            transpose_symmetry: check_transpose_symmetry(measure, trials, seed),
            complement_symmetry: check_complement_symmetry(measure, trials, seed),
        }
    }

    pub fn verdict(&self, property: Property) -> &Verdict {
        match property {
            Property::Equitability => &self.equitability,
            Property::DifficultyToHedge => &self.difficulty_to_hedge,
            Property::NonDegeneracy => &self.non_degeneracy,
            Property::BaseRateIndependence => &self.base_rate_independence,
            Property::Boundedness => &self.boundedness,
            Property::Linearity => &self.linearity,
            Property::Regularity => &self.regularity,
            Property::BiasedPerfectScore => &self.biased_perfect_score,
            Property::TransposeSymmetry => &self.transpose_symmetry,
            Property::ComplementSymmetry => &self.complement_symmetry,
        }
    }
}

/// Audits every measure in `measures` with a shared (trials, seed).
pub fn audit_matrix(measures: &[Measure], trials: u32, seed: u64) -> Vec<PropertyReport> {
    measures
        .iter()
        .map(|&m| PropertyReport::audit(m, trials, seed))
        .collect()
}

/// Plain-text matrix mirroring the published property table: rows are
/// measures, columns are properties, each cell is claimed/observed. Notes
/// list the counterexample behind every observed failure.
pub fn render_matrix(reports: &[PropertyReport]) -> String {
    let mut out = String::new();
    if let Some(first) = reports.first() {
        out.push_str(&format!(
            "property audit: {} sampled tables per probe, seed {}\n",
            first.trials, first.seed
        ));
    }
    out.push_str("cells are claimed/observed; \u{2713} holds, \u{2717} fails, - not probed or not claimed, . no published row\n\n");
    out.push_str(&format!("{:<8}", "measure"));
    for property in Property::ALL {
        out.push_str(&format!("{:<12}", property.label()));
    }
    out.push('\n');
    let mut notes = Vec::new();
    for report in reports {
        out.push_str(&format!("{:<8}", report.measure.name()));
        for property in Property::ALL {
            let claimed = match table_a1_claim(report.measure, property) {
                Some(true) => "\u{2713}",
                Some(false) => "-",
                None => ".",
            };
            let verdict = report.verdict(property);
            out.push_str(&format!(
                "{:<12}",
                format!("{}/{}", claimed, verdict.symbol())
            ));
            if let Verdict::Fails { detail, .. } = verdict {
                notes.push(format!(
                    "{} {}: {}",
                    report.measure.name(),
                    property.name(),
                    detail
                ));
            }
        }
        out.push('\n');
    }
    if !notes.is_empty() {
        out.push_str("\ncounterexamples:\n");
        for note in notes {
            out.push_str("  ");
            out.push_str(&note);
            out.push('\n');
        }
    }
    out
}

fn display_value(score: ScoreValue) -> String {
    match score.value() {
        Some(v) => format!("{v:.3}"),
        None => "N/A".to_string(),
    }
}

/// Exact value of a rational measure under the zero-cell policy, as an
/// integer fraction (denominator normalized non-negative).
#[derive(Debug, Clone, Copy)]
enum ExactScore {
    Ratio(i128, i128),
    NotApplicable,
}

fn exact_score(measure: Measure, table: &ContingencyTable) -> Option<ExactScore> {
    let a = table.hits() as i128;
    let b = table.false_alarms() as i128;
    let c = table.misses() as i128;
    let d = table.correct_rejections() as i128;
    let n = a + b + c + d;
    let (pred_yes, pred_no) = (a + b, c + d);
    let (obs_yes, obs_no) = (a + c, b + d);
    let ratio = |num: i128, den: i128| {
        if den == 0 {
            ExactScore::Ratio(0, 1)
        } else {
            ExactScore::Ratio(num, den)
        }
    };
    Some(match measure {
        Measure::Psi => return None,
        Measure::Gss => ratio(
            n * a - pred_yes * obs_yes,
            n * (a + b + c) - pred_yes * obs_yes,
        ),
        Measure::Hss => {
            let expected_correct = pred_yes * obs_yes + obs_no * pred_no;
            ratio(n * (a + d) - expected_correct, n * n - expected_correct)
        }
        Measure::Pss => ratio(a * d - b * c, obs_yes * obs_no),
        Measure::Css => {
            if pred_yes == 0 || pred_no == 0 {
                ExactScore::Ratio(0, 1)
            } else {
                ratio(a * pred_no - c * pred_yes, pred_yes * pred_no)
            }
        }
        Measure::Orss => ratio(a * d - b * c, a * d + b * c),
        Measure::Csi => {
            if a + b + c == 0 {
                ExactScore::NotApplicable
            } else {
                ExactScore::Ratio(a, a + b + c)
            }
        }
    })
}

fn scores_agree(measure: Measure, left: &ContingencyTable, right: &ContingencyTable) -> bool {
    match (exact_score(measure, left), exact_score(measure, right)) {
        (Some(x), Some(y)) => exact_eq(x, y),
        // PSI involves square roots; compare at 1e-12.
        _ => {
            let x = measure
                .compute(left)
                .value()
                .expect("PSI always has a value");
            let y = measure
                .compute(right)
                .value()
                .expect("PSI always has a value");
            (x - y).abs() <= 1e-12
        }
    }
}

fn exact_eq(x: ExactScore, y: ExactScore) -> bool {
    match (x, y) {
        (ExactScore::NotApplicable, ExactScore::NotApplicable) => true,
        (ExactScore::Ratio(n1, d1), ExactScore::Ratio(n2, d2)) => {
            match (n1.checked_mul(d2), n2.checked_mul(d1)) {
                (Some(lhs), Some(rhs)) => lhs == rhs,
                // Counts large enough to overflow the cross product fall
                // back to a float comparison.
                _ => ((n1 as f64 / d1 as f64) - (n2 as f64 / d2 as f64)).abs() <= 1e-12,
            }
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_symmetries_hold() {
        assert!(check_transpose_symmetry(Measure::Psi, 500, 7).holds());
        assert!(check_complement_symmetry(Measure::Psi, 500, 7).holds());
    }

    #[test]
    fn pss_transpose_counterexample_is_canonical() {
        let verdict = check_transpose_symmetry(Measure::Pss, 500, 7);
        match verdict {
            Verdict::Fails {
                counterexample,
                detail,
            } => {
                // The canonical tables are checked first, so the
                // counterexample is example 17: 0.436 vs 0.375.
                assert_eq!(counterexample.counts(), [175, 25, 100, 100]);
                assert!(detail.contains("0.436"), "{detail}");
                assert!(detail.contains("0.375"), "{detail}");
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn css_fails_transpose_and_holds_complement() {
        assert!(!check_transpose_symmetry(Measure::Css, 500, 7).holds());
        assert!(check_complement_symmetry(Measure::Css, 500, 7).holds());
    }

    #[test]
    fn gss_hss_orss_transpose_symmetric() {
        for m in [Measure::Gss, Measure::Hss, Measure::Orss] {
            assert!(check_transpose_symmetry(m, 500, 7).holds(), "{m}");
        }
    }

    #[test]
    fn hss_orss_complement_symmetric() {
        for m in [Measure::Hss, Measure::Orss, Measure::Pss] {
            assert!(check_complement_symmetry(m, 500, 7).holds(), "{m}");
        }
    }

    #[test]
    fn csi_fails_complement_symmetry() {
        let verdict = check_complement_symmetry(Measure::Csi, 500, 7);
        assert!(!verdict.holds());
    }

    #[test]
    fn psi_complement_pair_matches_printed_value() {
        let left = ContingencyTable::new(275, 50, 50, 25).unwrap();
        let right = ContingencyTable::new(25, 50, 50, 275).unwrap();
        let x = Measure::Psi.compute(&left).value().unwrap();
        let y = Measure::Psi.compute(&right).value().unwrap();
        assert_eq!(x, y);
        assert!((x - 0.160).abs() <= 5e-4);
    }

    #[test]
    fn skill_measures_are_equitable() {
        for m in Measure::SKILL {
            assert!(check_equitability(m, 400, 7).holds(), "{m}");
        }
    }

    #[test]
    fn csi_is_not_equitable() {
        let verdict = check_equitability(Measure::Csi, 400, 7);
        match verdict {
            Verdict::Fails { counterexample, .. } => {
                // All-hits pattern: CSI awards 1 with no skill involved.
                assert_eq!(counterexample.counts(), [1, 0, 0, 0]);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn boundedness_extrema() {
        let psi = check_boundedness(Measure::Psi, 500, 7);
        assert!(psi.verdict.holds());
        assert!((psi.observed_min - (-1.0)).abs() <= 5e-4);
        assert!((psi.observed_max - 1.0).abs() <= 5e-4);

        let gss = check_boundedness(Measure::Gss, 500, 7);
        assert!(gss.verdict.holds());
        assert!(gss.observed_min >= -1.0 / 3.0 - 1e-12);

        let csi = check_boundedness(Measure::Csi, 500, 7);
        assert!(csi.verdict.holds());
        assert!(csi.observed_min >= 0.0 && csi.observed_max <= 1.0);
    }

    #[test]
    fn regularity_psi_vs_orss() {
        let psi = regularity_probe(Measure::Psi);
        assert!(!psi.regular());
        assert!(psi.biased.value().unwrap() < psi.unbiased.value().unwrap());
        assert!((psi.unbiased.value().unwrap() - 0.550).abs() <= 5e-4);

        let orss = regularity_probe(Measure::Orss);
        assert!(orss.regular());
        assert!(orss.biased_gets_perfect_score());
        assert_eq!(orss.biased.value(), Some(1.0));
        assert_eq!(orss.unbiased.value(), Some(1.0));
    }

    #[test]
    fn regularity_probe_bias_scores() {
        let probe = regularity_probe(Measure::Psi);
        assert!((probe.biased_table.bias_score().unwrap() - 0.995).abs() <= 5e-4);
        assert_eq!(probe.unbiased_table.bias_score().unwrap(), 1.0);
    }

    #[test]
    fn non_degeneracy_examples() {
        assert!(non_degeneracy_probe(Measure::Psi).holds());
        assert!(non_degeneracy_probe(Measure::Pss).holds());
        // Always predicting "no" on rare events yields 0: hedging does not
        // pay even though the record is almost perfect.
        let constant_no = ContingencyTable::new(0, 0, 0, 400).unwrap();
        for m in Measure::SKILL {
            assert_eq!(m.compute(&constant_no).value(), Some(0.0), "{m}");
        }
    }

    #[test]
    fn audit_is_deterministic() {
        let one = audit_matrix(&[Measure::Psi, Measure::Pss], 200, 42);
        let two = audit_matrix(&[Measure::Psi, Measure::Pss], 200, 42);
        assert_eq!(one, two);
    }

    #[test]
    fn audit_surfaces_claim_and_observation_side_by_side() {
        // The published table claims PSI can award a biased forecast a
        // perfect score; the probe observes the opposite. Both must survive
        // into the report without being reconciled.
        assert_eq!(
            table_a1_claim(Measure::Psi, Property::BiasedPerfectScore),
            Some(true)
        );
        let report = PropertyReport::audit(Measure::Psi, 100, 7);
        assert!(!report.biased_perfect_score.holds());
        assert!(report.observed_min <= -0.999);

        let rendered = render_matrix(&[report]);
        assert!(rendered.contains("\u{2713}/\u{2717}"), "{rendered}");
    }

    #[test]
    fn audit_marks_unprobed_properties() {
        let report = PropertyReport::audit(Measure::Hss, 50, 7);
        assert_eq!(report.linearity, Verdict::NotProbed);
        assert_eq!(report.base_rate_independence, Verdict::NotProbed);
        assert_eq!(
            table_a1_claim(Measure::Hss, Property::Linearity),
            Some(true)
        );
    }

    #[test]
    fn csi_has_no_published_row() {
        for property in Property::ALL {
            assert_eq!(table_a1_claim(Measure::Csi, property), None);
        }
    }

    #[test]
    fn report_serializes_to_json() {
        let report = PropertyReport::audit(Measure::Orss, 50, 7);
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["measure"], "orss");
        assert_eq!(json["linearity"], "NotProbed");
    }
}
