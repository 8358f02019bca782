//! The prediction skill index and six conventional verification measures.
//!
//! Six of the seven measures verify *skill* against a no-skill random
//! reference built from the table marginals: the prediction skill index
//! ([`psi`]), Gilbert ([`gss`]), Heidke ([`hss`]), Peirce ([`pss`]), Clayton
//! ([`css`]) and the odds ratio skill score ([`orss`]). The seventh, the
//! critical success index ([`csi`]), verifies *accuracy* and ignores the
//! no-skill reference entirely.
//!
//! All measures share one degenerate-term policy: wherever a table with an
//! empty row or column makes an expression undefined (zero denominator, or
//! 0/0), the undefined expression takes the no-skill value 0 and the result
//! carries a degenerate flag. The exception is CSI, whose undefined case
//! `a + b + c = 0` is reported as a distinct not-applicable outcome instead
//! of 0.
//!
//! The rational measures are evaluated in exact integer arithmetic (one
//! final rounding at the division), so degenerate denominators are detected
//! exactly rather than through floating-point cancellation.

use crate::contingency::ContingencyTable;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// A measure result: the value plus how the zero-cell rule affected it.
///
/// `value()` is `None` only for a not-applicable outcome (CSI on a table
/// with no hits, false alarms or misses). `is_degenerate()` reports whether
/// at least one undefined expression was substituted with 0 during
/// evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoreValue {
    value: Option<f64>,
    degenerate: bool,
}

impl ScoreValue {
    fn exact(value: f64) -> Self {
        Self {
            value: Some(value),
            degenerate: false,
        }
    }

    fn substituted_zero() -> Self {
        Self {
            value: Some(0.0),
            degenerate: true,
        }
    }

    fn not_applicable() -> Self {
        Self {
            value: None,
            degenerate: false,
        }
    }

    pub fn value(&self) -> Option<f64> {
        self.value
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn is_not_applicable(&self) -> bool {
        self.value.is_none()
    }
}

impl Serialize for ScoreValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ScoreValue", 3)?;
        s.serialize_field("value", &self.value)?;
        s.serialize_field("degenerate", &self.degenerate)?;
        s.serialize_field("not_applicable", &self.value.is_none())?;
        s.end()
    }
}

/// The seven measure values for one contingency table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScoreSet {
    pub psi: ScoreValue,
    pub gss: ScoreValue,
    pub hss: ScoreValue,
    pub pss: ScoreValue,
    pub css: ScoreValue,
    pub orss: ScoreValue,
    pub csi: ScoreValue,
}

impl ScoreSet {
    pub fn get(&self, measure: Measure) -> ScoreValue {
        match measure {
            Measure::Psi => self.psi,
            Measure::Gss => self.gss,
            Measure::Hss => self.hss,
            Measure::Pss => self.pss,
            Measure::Css => self.css,
            Measure::Orss => self.orss,
            Measure::Csi => self.csi,
        }
    }
}

/// Computes all seven measures for one table.
pub fn score_all(table: &ContingencyTable) -> ScoreSet {
    ScoreSet {
        psi: psi(table),
        gss: gss(table),
        hss: hss(table),
        pss: pss(table),
        css: css(table),
        orss: orss(table),
        csi: csi(table),
    }
}

/// Prediction skill index.
///
/// Half the sum of the normalized no-skill errors of the correct cells
/// (hits, correct rejections) minus those of the wrong cells (false alarms,
/// misses), with each term taken from
/// [`decompose`](ContingencyTable::decompose). Degenerate cells contribute 0
/// and set the flag. Bounded in [-1, 1]: 1 is a perfect forecast of a
/// maximally hard (50:50) event, 0 is the no-skill reference, -1 is
/// perfectly wrong.
pub fn psi(table: &ContingencyTable) -> ScoreValue {
    let d = table.decompose();
    let ne = d.normalized_error;
    let value = ((ne.hits + ne.correct_rejections) - (ne.false_alarms + ne.misses)) / 2.0;
    ScoreValue {
        value: Some(value),
        degenerate: d.degenerate.any(),
    }
}

/// Gilbert skill score: `(a - e) / (a + b + c - e)` with
/// `e = (a+b)(a+c)/n`. Range [-1/3, 1].
pub fn gss(table: &ContingencyTable) -> ScoreValue {
    let m = Moments::of(table);
    // Scaled by n to keep the arithmetic in integers:
    // n*a - (a+b)(a+c) over n(a+b+c) - (a+b)(a+c).
    let expected_hits = m.pred_yes * m.obs_yes;
    let num = m.n * m.a - expected_hits;
    let den = m.n * (m.a + m.b + m.c) - expected_hits;
    ratio_or_zero(num, den)
}

/// Heidke skill score: proportion correct relative to the no-skill expected
/// proportion correct, `(a + d - e_a - e_d) / (n - e_a - e_d)`. Range [-1, 1].
pub fn hss(table: &ContingencyTable) -> ScoreValue {
    let m = Moments::of(table);
    // Scaled by n: n(a+d) - (a+b)(a+c) - (b+d)(c+d) over n^2 - same.
    let expected_correct = m.pred_yes * m.obs_yes + m.obs_no * m.pred_no;
    let num = m.n * (m.a + m.d) - expected_correct;
    let den = m.n * m.n - expected_correct;
    ratio_or_zero(num, den)
}

/// Peirce skill score: `(ad - bc) / ((a+c)(b+d))`. Range [-1, 1].
pub fn pss(table: &ContingencyTable) -> ScoreValue {
    let m = Moments::of(table);
    ratio_or_zero(m.a * m.d - m.b * m.c, m.obs_yes * m.obs_no)
}

/// Clayton skill score: `a/(a+b) - c/(c+d)`. Range [-1, 1].
///
/// If either fraction is undefined (an empty predicted-yes or predicted-no
/// row) the score as a whole is undefined and takes the no-skill value 0.
pub fn css(table: &ContingencyTable) -> ScoreValue {
    let m = Moments::of(table);
    if m.pred_yes == 0 || m.pred_no == 0 {
        return ScoreValue::substituted_zero();
    }
    // Single fraction: (a(c+d) - c(a+b)) / ((a+b)(c+d)).
    ratio_or_zero(m.a * m.pred_no - m.c * m.pred_yes, m.pred_yes * m.pred_no)
}

/// Odds ratio skill score: `(ad - bc) / (ad + bc)`. Range [-1, 1].
pub fn orss(table: &ContingencyTable) -> ScoreValue {
    let m = Moments::of(table);
    ratio_or_zero(m.a * m.d - m.b * m.c, m.a * m.d + m.b * m.c)
}

/// Critical success index: `a / (a + b + c)`, an accuracy measure with no
/// no-skill reference. Range [0, 1]. Not applicable when `a + b + c = 0`
/// (the event was never predicted and never occurred).
pub fn csi(table: &ContingencyTable) -> ScoreValue {
    let m = Moments::of(table);
    let den = m.a + m.b + m.c;
    if den == 0 {
        return ScoreValue::not_applicable();
    }
    ScoreValue::exact(m.a as f64 / den as f64)
}

fn ratio_or_zero(num: i128, den: i128) -> ScoreValue {
    if den == 0 {
        ScoreValue::substituted_zero()
    } else {
        ScoreValue::exact(num as f64 / den as f64)
    }
}

/// Integer cell counts and marginals widened for exact products.
struct Moments {
    a: i128,
    b: i128,
    c: i128,
    d: i128,
    n: i128,
    pred_yes: i128,
    pred_no: i128,
    obs_yes: i128,
    obs_no: i128,
}

impl Moments {
    fn of(table: &ContingencyTable) -> Self {
        let a = table.hits() as i128;
        let b = table.false_alarms() as i128;
        let c = table.misses() as i128;
        let d = table.correct_rejections() as i128;
        Self {
            a,
            b,
            c,
            d,
            n: a + b + c + d,
            pred_yes: a + b,
            pred_no: c + d,
            obs_yes: a + c,
            obs_no: b + d,
        }
    }
}

/// Uniform handle over the seven measures: a name, a declared range and an
/// evaluation rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Psi,
    Gss,
    Hss,
    Pss,
    Css,
    Orss,
    Csi,
}

impl Measure {
    /// All seven measures, in report column order.
    pub const ALL: [Measure; 7] = [
        Measure::Psi,
        Measure::Gss,
        Measure::Hss,
        Measure::Pss,
        Measure::Css,
        Measure::Orss,
        Measure::Csi,
    ];

    /// The six skill measures (everything except CSI).
    pub const SKILL: [Measure; 6] = [
        Measure::Psi,
        Measure::Gss,
        Measure::Hss,
        Measure::Pss,
        Measure::Css,
        Measure::Orss,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Psi => "PSI",
            Measure::Gss => "GSS",
            Measure::Hss => "HSS",
            Measure::Pss => "PSS",
            Measure::Css => "CSS",
            Measure::Orss => "ORSS",
            Measure::Csi => "CSI",
        }
    }

    /// Lowercase key used in JSON output and CLI flags.
    pub fn key(self) -> &'static str {
        match self {
            Measure::Psi => "psi",
            Measure::Gss => "gss",
            Measure::Hss => "hss",
            Measure::Pss => "pss",
            Measure::Css => "css",
            Measure::Orss => "orss",
            Measure::Csi => "csi",
        }
    }

    /// Declared range of the measure.
    pub fn range(self) -> (f64, f64) {
        match self {
            Measure::Gss => (-1.0 / 3.0, 1.0),
            Measure::Csi => (0.0, 1.0),
            _ => (-1.0, 1.0),
        }
    }

    pub fn is_skill_measure(self) -> bool {
        self != Measure::Csi
    }

    pub fn compute(self, table: &ContingencyTable) -> ScoreValue {
        match self {
            Measure::Psi => psi(table),
            Measure::Gss => gss(table),
            Measure::Hss => hss(table),
            Measure::Pss => pss(table),
            Measure::Css => css(table),
            Measure::Orss => orss(table),
            Measure::Csi => csi(table),
        }
    }

    pub fn parse(name: &str) -> Option<Measure> {
        match name.to_ascii_lowercase().as_str() {
            "psi" => Some(Measure::Psi),
            "gss" => Some(Measure::Gss),
            "hss" => Some(Measure::Hss),
            "pss" => Some(Measure::Pss),
            "css" => Some(Measure::Css),
            "orss" => Some(Measure::Orss),
            "csi" => Some(Measure::Csi),
            _ => None,
        }
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(a: u32, b: u32, c: u32, d: u32) -> ContingencyTable {
        ContingencyTable::new(a, b, c, d).unwrap()
    }

    fn assert_close(score: ScoreValue, printed: f64) {
        let v = score.value().expect("score should have a value");
        assert!(
            (v - printed).abs() <= 5e-4,
            "expected {printed} at 3-decimal rounding, got {v}"
        );
    }

    #[test]
    fn psi_printed_examples() {
        assert_eq!(psi(&table(150, 50, 50, 150)).value(), Some(0.5));
        assert_close(psi(&table(1, 2, 0, 397)), 0.327);
        assert_close(psi(&table(399, 0, 0, 1)), 0.550);
        assert_close(psi(&table(193, 0, 0, 207)), 1.000);
        assert_eq!(psi(&table(0, 200, 200, 0)).value(), Some(-1.0));
    }

    #[test]
    fn psi_constant_forecast_is_degenerate_zero() {
        let score = psi(&table(400, 0, 0, 0));
        assert_eq!(score.value(), Some(0.0));
        assert!(score.is_degenerate());
    }

    #[test]
    fn gss_printed_examples() {
        assert_close(gss(&table(150, 50, 50, 150)), 0.333);
        assert_close(gss(&table(1, 2, 0, 397)), 0.332);
        let degenerate = gss(&table(400, 0, 0, 0));
        assert_eq!(degenerate.value(), Some(0.0));
        assert!(degenerate.is_degenerate());
    }

    #[test]
    fn hss_printed_examples() {
        assert_close(hss(&table(175, 25, 25, 175)), 0.750);
        assert_close(hss(&table(1, 2, 0, 397)), 0.498);
        // Not printed in the reference table, but the formula is total here:
        // expected correct = 200, so (0 - 200) / (400 - 200) = -1.
        assert_eq!(hss(&table(0, 200, 200, 0)).value(), Some(-1.0));
    }

    #[test]
    fn pss_printed_examples() {
        assert_close(pss(&table(1, 2, 0, 397)), 0.995);
        assert_close(pss(&table(175, 25, 100, 100)), 0.436);
        assert_close(pss(&table(100, 25, 100, 175)), 0.375);
    }

    #[test]
    fn css_printed_examples() {
        assert_close(css(&table(175, 25, 100, 100)), 0.375);
        assert_close(css(&table(100, 25, 100, 175)), 0.436);
        assert_close(css(&table(1, 2, 0, 397)), 0.333);
    }

    #[test]
    fn css_undefined_fraction_zeroes_whole_score() {
        // (200,200,0,0): c/(c+d) is 0/0, so the whole score takes the
        // no-skill value instead of the a/(a+b) = 0.5 term alone.
        let score = css(&table(200, 200, 0, 0));
        assert_eq!(score.value(), Some(0.0));
        assert!(score.is_degenerate());
        let score = css(&table(400, 0, 0, 0));
        assert_eq!(score.value(), Some(0.0));
        assert!(score.is_degenerate());
    }

    #[test]
    fn orss_printed_examples() {
        assert_close(orss(&table(175, 25, 25, 175)), 0.960);
        assert_eq!(orss(&table(1, 2, 0, 397)).value(), Some(1.0));
        assert_close(orss(&table(125, 75, 75, 125)), 0.471);
    }

    #[test]
    fn csi_printed_examples() {
        assert_close(csi(&table(175, 25, 25, 175)), 0.778);
        assert_close(csi(&table(397, 0, 2, 1)), 0.995);
        let na = csi(&table(0, 0, 0, 400));
        assert!(na.is_not_applicable());
        assert_eq!(na.value(), None);
        assert!(!na.is_degenerate());
    }

    #[test]
    fn score_all_gdp_case() {
        let scores = score_all(&table(34, 4, 4, 36));
        assert_close(scores.psi, 0.795);
        assert_close(scores.gss, 0.659);
        assert_close(scores.hss, 0.795);
        assert_close(scores.pss, 0.795);
        assert_close(scores.css, 0.795);
        assert_close(scores.orss, 0.974);
        assert_close(scores.csi, 0.810);
    }

    #[test]
    fn score_all_uniform_table() {
        let scores = score_all(&table(100, 100, 100, 100));
        for m in Measure::SKILL {
            assert_eq!(scores.get(m).value(), Some(0.0), "{m} should be 0");
            assert!(
                !scores.get(m).is_degenerate(),
                "{m} is genuinely 0, not substituted"
            );
        }
        assert_close(scores.csi, 0.333);
    }

    #[test]
    fn score_all_perfect_balanced_forecast() {
        let scores = score_all(&table(207, 0, 0, 193));
        for m in Measure::ALL {
            assert_close(scores.get(m), 1.000);
        }
    }

    #[test]
    fn genuine_zeros_are_not_flagged() {
        // (200,200,0,0): PSS numerator and GSS numerator are genuinely zero
        // with nonzero denominators; ORSS is 0/0.
        let t = table(200, 200, 0, 0);
        assert!(!pss(&t).is_degenerate());
        assert_eq!(pss(&t).value(), Some(0.0));
        assert!(!gss(&t).is_degenerate());
        assert!(!hss(&t).is_degenerate());
        assert!(orss(&t).is_degenerate());
    }

    #[test]
    fn score_value_serializes_all_three_fields() {
        let json = serde_json::to_value(score_all(&table(0, 0, 0, 400))).unwrap();
        assert_eq!(json["psi"]["value"], 0.0);
        assert_eq!(json["psi"]["degenerate"], true);
        assert_eq!(json["psi"]["not_applicable"], false);
        assert_eq!(json["csi"]["value"], serde_json::Value::Null);
        assert_eq!(json["csi"]["not_applicable"], true);
    }

    #[test]
    fn measure_parse_and_names() {
        assert_eq!(Measure::parse("orss"), Some(Measure::Orss));
        assert_eq!(Measure::parse("PSI"), Some(Measure::Psi));
        assert_eq!(Measure::parse("dice"), None);
        assert_eq!(Measure::Gss.range(), (-1.0 / 3.0, 1.0));
        assert_eq!(Measure::Csi.range(), (0.0, 1.0));
    }
}
