//! Plain-text and JSON rendering shared by the subcommands.

use serde_json::Value;
use skillver::scores::{Measure, ScoreSet, ScoreValue};
use skillver::ContingencyTable;

pub fn fmt_value(v: f64, decimals: usize) -> String {
    format!("{v:.decimals$}")
}

pub fn fmt_score(score: ScoreValue, decimals: usize) -> String {
    match score.value() {
        Some(v) => fmt_value(v, decimals),
        None => "N/A".to_string(),
    }
}

pub fn table_line(table: &ContingencyTable) -> String {
    format!("table: {}, n={}", table, table.total())
}

/// One line per measure, a `*` marking scores where the zero-cell rule
/// substituted an undefined expression.
pub fn score_lines(scores: &ScoreSet, decimals: usize) -> String {
    let mut out = String::new();
    let mut any_degenerate = false;
    for m in Measure::ALL {
        let score = scores.get(m);
        let marker = if score.is_degenerate() {
            any_degenerate = true;
            " *"
        } else {
            ""
        };
        out.push_str(&format!(
            "{:<5} {}{}\n",
            m.name(),
            fmt_score(score, decimals),
            marker
        ));
    }
    if any_degenerate {
        out.push_str("* zero-cell rule: an undefined expression took the no-skill value 0\n");
    }
    out
}

/// Rounds every JSON float (integers untouched) to the configured number of
/// decimals, recursively. Keeps `--json` output aligned with the printed
/// precision and byte-stable.
pub fn round_json_floats(value: &mut Value, decimals: usize) {
    match value {
        Value::Number(n) => {
            if let Some(f) = n.as_f64() {
                if n.as_i64().is_none() && n.as_u64().is_none() {
                    let factor = 10f64.powi(decimals as i32);
                    let rounded = (f * factor).round() / factor;
                    if let Some(num) = serde_json::Number::from_f64(rounded) {
                        *value = Value::Number(num);
                    }
                }
            }
        }
        Value::Array(items) => items
            .iter_mut()
            .for_each(|v| round_json_floats(v, decimals)),
        Value::Object(map) => map
            .values_mut()
            .for_each(|v| round_json_floats(v, decimals)),
        _ => {}
    }
}
