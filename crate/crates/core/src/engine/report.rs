use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cell::{cell_record, CellOptions, CellRecord, CellStatus};
use crate::complex::{Complex, Module};
use crate::error::{Error, Result};

/// Sign and grading conventions a report was computed under.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convention {
    pub weight_shift: i64,
    pub derivative_side: String,
}

impl Default for Convention {
    fn default() -> Self {
        Convention {
            weight_shift: -2,
            derivative_side: "left".into(),
        }
    }
}

impl Convention {
    /// Stable string identifying every sign choice that affects cell contents.
    pub fn fingerprint(&self) -> String {
        format!(
            "weight_shift={};derivative={};skew=odd-commute;canonical=evens-first;d=pairs-front",
            self.weight_shift, self.derivative_side
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub spec: String,
    pub module: Module,
    pub convention: Convention,
    pub cells: Vec<CellRecord>,
}

/// Source of previously computed cells, such as an on-disk cache.
pub trait CellStore: Sync {
    fn load(&self, spec: &str, module: Module, degree: usize, grade: i64) -> Option<CellRecord>;
    fn store(&self, spec: &str, module: Module, record: &CellRecord) -> Result<()>;
}

#[derive(Default)]
pub struct TableOptions<'a> {
    pub cell: CellOptions,
    pub store: Option<&'a dyn CellStore>,
}

/// Computes every cell of the grid in parallel; rows are degrees, columns
/// grades. Cells over the size cap are flagged, not dropped.
pub fn compute_table(
    cx: &Complex,
    degrees: RangeInclusive<usize>,
    grades: RangeInclusive<i64>,
    options: &TableOptions<'_>,
) -> Result<CohomologyReport> {
    if degrees.is_empty() || grades.is_empty() {
        return Err(Error::Precondition("empty degree or grade range".into()));
    }
    let spec = cx.spec().to_string();
    let coords: Vec<(usize, i64)> = degrees.flat_map(|k| grades.clone().map(move |g| (k, g))).collect();
    let cells = coords
        .par_iter()
        .map(|&(k, g)| {
            if let Some(store) = options.store {
                if let Some(hit) = store.load(&spec, cx.module(), k, g) {
                    return Ok(hit);
                }
            }
            let record = cell_record(cx, k, g, &options.cell)?;
            if let Some(store) = options.store {
                if record.status == CellStatus::Ok {
                    store.store(&spec, cx.module(), &record)?;
                }
            }
            Ok(record)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CohomologyReport {
        spec,
        module: cx.module(),
        convention: Convention::default(),
        cells,
    })
}

impl CohomologyReport {
    pub fn cell(&self, degree: usize, grade: i64) -> Option<&CellRecord> {
        self.cells.iter().find(|c| c.degree == degree && c.grade == grade)
    }

    pub fn dim(&self, degree: usize, grade: i64) -> Option<usize> {
        self.cell(degree, grade).and_then(|c| c.dim_h)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Degree rows, grade columns, blank for 0, `*` for capped cells.
    pub fn render_text(&self) -> String {
        let mut degrees: Vec<usize> = self.cells.iter().map(|c| c.degree).collect();
        let mut grades: Vec<i64> = self.cells.iter().map(|c| c.grade).collect();
        degrees.sort_unstable();
        degrees.dedup();
        grades.sort_unstable();
        grades.dedup();
        let width = grades.iter().map(|g| g.to_string().len()).max().unwrap_or(1).max(3);
        let mut out = String::new();
        writeln!(out, "H^k_g({}), {} coefficients", self.spec, self.module).unwrap();
        write!(out, "{:>4} |", "k\\g").unwrap();
        for g in &grades {
            write!(out, " {g:>width$}").unwrap();
        }
        out.push('\n');
        writeln!(out, "{}", "-".repeat(6 + grades.len() * (width + 1))).unwrap();
        for k in &degrees {
            write!(out, "{k:>4} |").unwrap();
            for g in &grades {
                let entry = match self.cell(*k, *g) {
                    Some(c) if c.status == CellStatus::CapExceeded => "*".to_string(),
                    Some(CellRecord { dim_h: Some(d), .. }) if *d > 0 => d.to_string(),
                    _ => String::new(),
                };
                write!(out, " {entry:>width$}").unwrap();
            }
            // trailing blanks are noise in diffs
            let trimmed = out.trim_end_matches(' ').len();
            out.truncate(trimmed);
            out.push('\n');
        }
        if self.cells.iter().any(|c| c.status == CellStatus::CapExceeded) {
            out.push_str("* cell exceeded the size cap; narrow the range or raise --max-cell\n");
        }
        out
    }
}
