use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::extremal::{ExtremalResult, Pm};
use super::generators::HmfRing;
use crate::error::{Error, Result};
use crate::qseries::IndexPair;

/// One row of the table of extremal symmetric Hilbert modular forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub weight: u32,
    pub nu: (i64, i64),
    pub s_eta: i128,
    pub s_one: i128,
    /// `'+'` or `'-'`.
    pub pm: char,
}

pub const TABLE_WEIGHTS: [u32; 12] = [2, 4, 6, 8, 10, 12, 14, 16, 18, 20, 24, 30];

const fn row(weight: u32, s: i64, t: i64, s_eta: i128, s_one: i128, pm: char) -> TableRow {
    TableRow { weight, nu: (s, t), s_eta, s_one, pm }
}

/// The published values, shared by the CLI diff harness and the tests.
pub const EXPECTED_TABLE: [TableRow; 12] = [
    row(2, 1, 2, 240, 120, '+'),
    row(4, 1, 2, 480, 240, '+'),
    row(6, 2, 4, 196560, 37800, '+'),
    row(8, 2, 4, 146880, 21600, '+'),
    row(10, 2, 5, 39600, 79200, '-'),
    row(12, 3, 6, 52416000, 2620800, '+'),
    row(14, 3, 6, 15590400, 537600, '+'),
    row(16, 3, 7, 2611200, 2611200, '-'),
    row(18, 4, 8, 6218175600, 75411000, '+'),
    row(20, 4, 9, 1250172000, 609840000, '-'),
    row(24, 5, 10, 565866362880, 1655821440, '+'),
    row(30, 6, 13, 45792819072000, 3217294080000, '-'),
];

impl TableRow {
    pub fn from_result(r: &ExtremalResult) -> Self {
        let pm = match r.pm {
            Pm::Plus => '+',
            Pm::Minus => '-',
            Pm::Other(_) => '?',
        };
        TableRow { weight: r.weight, nu: (r.nu.i, r.nu.j), s_eta: r.s_eta, s_one: r.s_one, pm }
    }

    pub fn to_tsv(&self) -> String {
        format!("{}\t({},{})\t{}\t{}\t{}", self.weight, self.nu.0, self.nu.1, self.s_eta, self.s_one, self.pm)
    }
}

pub const TSV_HEADER: &str = "weight\tnu\ts_eta\ts_one\tsubset";

/// Rows in the format written by [`TableRow::to_tsv`]; a header line and blank
/// lines are skipped.
pub fn parse_table_tsv(text: &str) -> Result<Vec<TableRow>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with("weight") || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::Parse { line: k + 1, msg };
        let cells: Vec<&str> = line.split('\t').map(str::trim).collect();
        if cells.len() != 5 {
            return Err(bad(format!("expected 5 tab-separated cells, found {}", cells.len())));
        }
        let int = |c: &str| c.parse::<i128>().map_err(|e| bad(format!("{c:?}: {e}")));
        let nu = cells[1]
            .strip_prefix('(')
            .and_then(|c| c.strip_suffix(')'))
            .and_then(|c| c.split_once(','))
            .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
            .ok_or_else(|| bad(format!("valuation {:?} is not of the form (s,t)", cells[1])))?;
        let pm = match cells[4] {
            "+" => '+',
            "-" | "−" => '-',
            other => return Err(bad(format!("subset column {other:?} is neither + nor -"))),
        };
        let weight = u32::try_from(int(cells[0])?).map_err(|e| bad(e.to_string()))?;
        out.push(TableRow { weight, nu, s_eta: int(cells[2])?, s_one: int(cells[3])?, pm });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub weight: u32,
    pub column: &'static str,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for CellMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "weight {}: {} expected {}, got {}", self.weight, self.column, self.expected, self.actual)
    }
}

/// Cell-by-cell comparison of two rows of the same weight.
pub fn diff_row(expected: &TableRow, actual: &TableRow) -> Vec<CellMismatch> {
    let mut out = Vec::new();
    let mut cell = |column, e: String, a: String| {
        if e != a {
            out.push(CellMismatch { weight: expected.weight, column, expected: e, actual: a });
        }
    };
    cell("nu", format!("{:?}", expected.nu), format!("{:?}", actual.nu));
    cell("s_eta", expected.s_eta.to_string(), actual.s_eta.to_string());
    cell("s_one", expected.s_one.to_string(), actual.s_one.to_string());
    cell("subset", expected.pm.to_string(), actual.pm.to_string());
    out
}

/// Outcome for one weight: the solver result or the error it raised.
pub struct TableEntry {
    pub weight: u32,
    pub result: Result<ExtremalResult>,
}

pub struct TableReport {
    pub prec: i64,
    pub entries: Vec<TableEntry>,
    pub mismatches: Vec<CellMismatch>,
}

impl TableReport {
    pub fn rows(&self) -> Vec<TableRow> {
        self.entries
            .iter()
            .filter_map(|e| e.result.as_ref().ok().map(TableRow::from_result))
            .collect()
    }

    pub fn matching_rows(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.result.is_ok() && !self.mismatches.iter().any(|m| m.weight == e.weight))
            .count()
    }

    pub fn failures(&self) -> impl Iterator<Item = (u32, &Error)> {
        self.entries.iter().filter_map(|e| e.result.as_ref().err().map(|err| (e.weight, err)))
    }

    pub fn all_match(&self) -> bool {
        self.matching_rows() == self.entries.len()
    }
}

/// Solve all table weights at precision `prec` and compare against `expected`.
pub fn table_reproduce_against(prec: i64, expected: &[TableRow]) -> Result<TableReport> {
    let ring = HmfRing::new(prec)?;
    // fill the power cache once so the parallel rows only read it
    let wmax = expected.iter().map(|r| r.weight).max().unwrap_or(2);
    for w in [wmax, 6, 10] {
        if w <= wmax {
            ring.monomial_basis(w)?;
        }
    }
    let entries: Vec<TableEntry> = expected
        .par_iter()
        .map(|row| {
            let result = ring.extremal_form(row.weight).and_then(|r| {
                if r.pinned_at.i > prec {
                    return Err(Error::InsufficientPrecision {
                        prec,
                        reason: format!("weight {} consulted row {}", row.weight, r.pinned_at.i),
                    });
                }
                Ok(r)
            });
            TableEntry { weight: row.weight, result }
        })
        .collect();
    let mut mismatches = Vec::new();
    for (row, entry) in expected.iter().zip(&entries) {
        if let Ok(r) = &entry.result {
            mismatches.extend(diff_row(row, &TableRow::from_result(r)));
        }
    }
    Ok(TableReport { prec, entries, mismatches })
}

/// Reproduce the table of extremal forms and diff it against the published values.
///
/// Rows whose valuation lies beyond `prec` fail individually with
/// `InsufficientPrecision`; the full table needs `prec ≥ 7`.
pub fn table_reproduce(prec: i64) -> Result<TableReport> {
    table_reproduce_against(prec, &EXPECTED_TABLE)
}

/// `IndexPair` view of an expected row's valuation.
pub fn expected_nu(weight: u32) -> Option<IndexPair> {
    EXPECTED_TABLE
        .iter()
        .find(|r| r.weight == weight)
        .map(|r| IndexPair::new(r.nu.0, r.nu.1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_rows_satisfy_nu_bounds() {
        for r in EXPECTED_TABLE {
            let (s, t) = r.nu;
            assert!(s <= 1 + (r.weight / 6) as i64);
            assert!(2 * s <= t && t <= 5 * s / 2);
            assert!(IndexPair::new(s, t).is_valid());
        }
    }

    #[test]
    fn diff_lists_each_cell() {
        let a = EXPECTED_TABLE[2];
        let mut b = a;
        b.s_one += 1;
        b.pm = '-';
        let d = diff_row(&a, &b);
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].column, "s_one");
        assert_eq!(d[1].column, "subset");
    }

    #[test]
    fn low_weights_match_at_small_precision() {
        let report = table_reproduce_against(4, &EXPECTED_TABLE[..5]).unwrap();
        assert!(report.all_match(), "{:?}", report.mismatches);
        assert_eq!(report.rows().len(), 5);
    }

    #[test]
    fn precision_guard() {
        let report = table_reproduce(4).unwrap();
        assert!(report
            .failures()
            .any(|(w, e)| w == 30 && matches!(e, Error::InsufficientPrecision { .. })));
        assert!(!report.all_match());
    }

    #[test]
    fn tsv_layout() {
        assert_eq!(EXPECTED_TABLE[4].to_tsv(), "10\t(2,5)\t39600\t79200\t-");
        let text: String = std::iter::once(TSV_HEADER.to_string())
            .chain(EXPECTED_TABLE.iter().map(TableRow::to_tsv))
            .collect::<Vec<_>>()
            .join("\n");
        assert_eq!(parse_table_tsv(&text).unwrap(), EXPECTED_TABLE.to_vec());
        assert!(matches!(parse_table_tsv("2\t(1,2)\t240\t120\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_table_tsv("\n2\t(1;2)\t240\t120\t+"), Err(Error::Parse { line: 2, .. })));
        assert_eq!(expected_nu(30), Some(IndexPair::new(6, 13)));
    }
}
