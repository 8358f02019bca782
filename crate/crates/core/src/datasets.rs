//! Bundled reference datasets.
//!
//! The `data/` directory at the repository root ships the published
//! reference values this toolkit reproduces, and the raw Bank of Thailand
//! GDP growth series. The files are embedded at compile time so the library
//! and CLI are self-contained; the typed accessors here parse them once per
//! call.
//!
//! Cells printed as a dash (computed but not printed in the reference
//! table) and as `N/A` are kept distinct from numeric values.

use crate::contingency::ContingencyTable;
use crate::scores::Measure;

/// 24 canonical verification examples with printed scores for all seven
/// measures.
pub const TABLE7_CSV: &str = include_str!("../../../data/table7.csv");
/// The Bank of Thailand GDP case: one table, printed scores.
pub const TABLE8_CSV: &str = include_str!("../../../data/table8.csv");
/// Thirty random-prediction tables with printed skill scores and averages.
pub const TABLE_A2_CSV: &str = include_str!("../../../data/table_a2.csv");
/// Bank of Thailand real GDP growth forecasts and actuals, 1999-2019.
pub const GDP_GROWTH_CSV: &str = include_str!("../../../data/bot_gdp_growth.csv");

/// A printed cell in a reference table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Printed {
    Value(f64),
    /// The cell is blank in the reference table (computed but unprinted).
    Dash,
    /// The cell is printed as N/A.
    NotApplicable,
}

impl Printed {
    fn parse(token: &str) -> Self {
        match token {
            "-" => Printed::Dash,
            "N/A" => Printed::NotApplicable,
            v => Printed::Value(
                v.parse()
                    .unwrap_or_else(|_| panic!("bad printed cell {v:?}")),
            ),
        }
    }
}

/// The printed row of scores for one table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrintedScores {
    pub psi: Printed,
    pub gss: Printed,
    pub hss: Printed,
    pub pss: Printed,
    pub css: Printed,
    pub orss: Printed,
    pub csi: Printed,
}

impl PrintedScores {
    pub fn get(&self, measure: Measure) -> Printed {
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

/// One row of the 24-example reference table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table7Row {
    pub example: u32,
    pub table: ContingencyTable,
    pub printed: PrintedScores,
}

/// One row of the thirty-random-predictions reference table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableA2Row {
    pub trial: u32,
    pub table: ContingencyTable,
    /// Six printed skill scores; CSI is not printed there and is `Dash`.
    pub printed: PrintedScores,
}

fn fields(line: &str) -> Vec<&str> {
    line.split(',').map(str::trim).collect()
}

fn parse_counts(f: &[&str]) -> ContingencyTable {
    let cell = |s: &str| {
        s.parse::<u32>()
            .unwrap_or_else(|_| panic!("bad count {s:?}"))
    };
    ContingencyTable::new(cell(f[0]), cell(f[1]), cell(f[2]), cell(f[3]))
        .expect("bundled tables are non-empty")
}

/// The 24 canonical examples.
pub fn table7() -> Vec<Table7Row> {
    TABLE7_CSV
        .lines()
        .skip(1)
        .map(|line| {
            let f = fields(line);
            Table7Row {
                example: f[0].parse().expect("example number"),
                table: parse_counts(&f[1..5]),
                printed: PrintedScores {
                    psi: Printed::parse(f[5]),
                    gss: Printed::parse(f[6]),
                    hss: Printed::parse(f[7]),
                    pss: Printed::parse(f[8]),
                    css: Printed::parse(f[9]),
                    orss: Printed::parse(f[10]),
                    csi: Printed::parse(f[11]),
                },
            }
        })
        .collect()
}

/// The GDP-case table and its printed score row.
pub fn table8() -> (ContingencyTable, PrintedScores) {
    let line = TABLE8_CSV.lines().nth(1).expect("table8 data row");
    let f = fields(line);
    (
        parse_counts(&f[0..4]),
        PrintedScores {
            psi: Printed::parse(f[4]),
            gss: Printed::parse(f[5]),
            hss: Printed::parse(f[6]),
            pss: Printed::parse(f[7]),
            css: Printed::parse(f[8]),
            orss: Printed::parse(f[9]),
            csi: Printed::parse(f[10]),
        },
    )
}

/// The thirty random-prediction rows and the printed averages row.
pub fn table_a2() -> (Vec<TableA2Row>, PrintedScores) {
    let mut rows = Vec::new();
    let mut averages = None;
    for line in TABLE_A2_CSV.lines().skip(1) {
        let f = fields(line);
        let printed = PrintedScores {
            psi: Printed::parse(f[5]),
            gss: Printed::parse(f[6]),
            hss: Printed::parse(f[7]),
            pss: Printed::parse(f[8]),
            css: Printed::parse(f[9]),
            orss: Printed::parse(f[10]),
            csi: Printed::Dash,
        };
        if f[0] == "average" {
            averages = Some(printed);
        } else {
            rows.push(TableA2Row {
                trial: f[0].parse().expect("trial number"),
                table: parse_counts(&f[1..5]),
                printed,
            });
        }
    }
    (rows, averages.expect("averages row present"))
}

/// All 24 canonical tables without their printed scores.
pub fn table7_tables() -> Vec<ContingencyTable> {
    table7().into_iter().map(|row| row.table).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table7_has_24_rows() {
        let rows = table7();
        assert_eq!(rows.len(), 24);
        assert_eq!(rows[0].table.counts(), [400, 0, 0, 0]);
        assert_eq!(rows[23].table.counts(), [193, 0, 0, 207]);
        assert_eq!(rows[1].printed.csi, Printed::NotApplicable);
        assert_eq!(rows[10].printed.hss, Printed::Dash);
        assert_eq!(rows[10].printed.psi, Printed::Value(-0.25));
        for row in &rows {
            assert_eq!(row.table.total(), 400);
        }
    }

    #[test]
    fn table8_matches_gdp_case() {
        let (table, printed) = table8();
        assert_eq!(table.counts(), [34, 4, 4, 36]);
        assert_eq!(printed.psi, Printed::Value(0.795));
        assert_eq!(printed.csi, Printed::Value(0.810));
    }

    #[test]
    fn table_a2_has_30_rows_plus_averages() {
        let (rows, averages) = table_a2();
        assert_eq!(rows.len(), 30);
        assert_eq!(rows[0].table.counts(), [517, 912, 178, 174]);
        assert_eq!(rows[0].printed.psi, Printed::Value(-0.111));
        assert_eq!(rows[24].table.counts(), [598, 72, 32, 158]);
        assert_eq!(averages.psi, Printed::Value(-0.043));
        assert_eq!(averages.orss, Printed::Value(-0.064));
    }
}
