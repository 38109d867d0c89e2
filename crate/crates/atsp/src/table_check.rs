//! Recomputes a published comparison table's percentage cells from its raw
//! cost columns and diffs them against the printed values.

use std::fmt;
use std::path::Path;

use atsp_core::{Cost, IMPROVEMENT_PAIRS};

use crate::bench::report_columns;
use crate::error::{read_file, AppError};

/// One transcribed table row: six raw costs and eight printed percentages.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub index: usize,
    pub raw: [Cost; 6],
    pub printed: [f64; 8],
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellCheck {
    pub row: usize,
    /// Position in `IMPROVEMENT_PAIRS`.
    pub pair: usize,
    pub printed: f64,
    pub computed: f64,
    pub matched: bool,
}

impl CellCheck {
    pub fn label(&self) -> String {
        IMPROVEMENT_PAIRS[self.pair].label()
    }
}

#[derive(Debug, Clone)]
pub struct TableCheck {
    pub tolerance: f64,
    pub cells: Vec<CellCheck>,
}

impl TableCheck {
    pub fn matched(&self) -> usize {
        self.cells.iter().filter(|c| c.matched).count()
    }

    pub fn total(&self) -> usize {
        self.cells.len()
    }

    pub fn match_fraction(&self) -> f64 {
        self.matched() as f64 / self.total().max(1) as f64
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CellCheck> {
        self.cells.iter().filter(|c| !c.matched)
    }

    /// The cell for 1-based `row` and the pair at `pair`.
    pub fn cell(&self, row: usize, pair: usize) -> Option<&CellCheck> {
        self.cells.iter().find(|c| c.row == row && c.pair == pair)
    }
}

impl fmt::Display for TableCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}/{} cells match within {} ({:.1}%)",
            self.matched(),
            self.total(),
            self.tolerance,
            100.0 * self.match_fraction()
        )?;
        for c in self.mismatches() {
            writeln!(
                f,
                "  row {:>2} {:<22} printed {:>10} computed {:>10.5} diff {:.5}",
                c.row,
                c.label(),
                c.printed,
                c.computed,
                (c.computed - c.printed).abs()
            )?;
        }
        Ok(())
    }
}

/// A cell whose baseline cost is not positive is reported as a mismatch with
/// a NaN recomputation.
pub fn verify_table(rows: &[TableRow], tolerance: f64) -> TableCheck {
    let mut cells = Vec::with_capacity(rows.len() * IMPROVEMENT_PAIRS.len());
    for row in rows {
        for (k, pair) in IMPROVEMENT_PAIRS.iter().enumerate() {
            let computed = pair.evaluate(&row.raw).unwrap_or(f64::NAN);
            let printed = row.printed[k];
            cells.push(CellCheck {
                row: row.index,
                pair: k,
                printed,
                computed,
                matched: (computed - printed).abs() <= tolerance,
            });
        }
    }
    TableCheck { tolerance, cells }
}

/// Reads a fixture with the same header as a pilot CSV report without the
/// optimum columns.
pub fn parse_table_fixture(text: &str) -> Result<Vec<TableRow>, AppError> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let header: Vec<String> =
        reader.headers().map_err(|e| AppError::parse(1, e.to_string()))?.iter().map(str::to_string).collect();
    if header != report_columns(false) {
        return Err(AppError::parse(1, format!("fixture header must be {}", report_columns(false).join(","))));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| AppError::invalid(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let bad = |i: usize| AppError::parse(line, format!("invalid {} {:?}", header[i], &record[i]));
        let mut raw = [0; 6];
        for (k, cell) in raw.iter_mut().enumerate() {
            *cell = record[1 + k].parse().map_err(|_| bad(1 + k))?;
        }
        let mut printed = [0.0; 8];
        for (k, cell) in printed.iter_mut().enumerate() {
            *cell = record[7 + k].parse().map_err(|_| bad(7 + k))?;
        }
        rows.push(TableRow { index: record[0].parse().map_err(|_| bad(0))?, raw, printed });
    }
    Ok(rows)
}

pub fn load_table_fixture(path: &Path) -> Result<Vec<TableRow>, AppError> {
    parse_table_fixture(&read_file(path)?)
}
