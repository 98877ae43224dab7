use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::complex::{Cochain, CochainRecord, Complex};
use crate::error::{Error, Result};
use crate::linalg::{quotient_space, SparseMatrix};

/// Cohomology of one cell `(k, g)`.
#[derive(Clone, Debug)]
pub struct CellComputation {
    pub degree: usize,
    pub grade: i64,
    pub dim_c: usize,
    pub rank_z: usize,
    pub rank_b: usize,
    pub dim_h: usize,
    pub representatives: Vec<Cochain>,
}

#[derive(Clone, Debug, Default)]
pub struct CellOptions {
    /// Directory receiving `Z` and `b` dumps for every computed cell.
    pub dump_matrices: Option<PathBuf>,
}

/// Builds `b = d_{k−1}` and `Z = d_k` for the cell and takes the quotient.
pub fn compute_cell(cx: &Complex, k: usize, g: i64) -> Result<CellComputation> {
    compute_cell_with(cx, k, g, &CellOptions::default())
}

pub fn compute_cell_with(cx: &Complex, k: usize, g: i64, options: &CellOptions) -> Result<CellComputation> {
    let cell = cx.cell(k, g)?;
    let z = cx.differential(k, g)?;
    let b = if k == 0 {
        std::sync::Arc::new(SparseMatrix::zero(cell.len(), 0))
    } else {
        cx.differential(k - 1, g)?
    };
    if let Some(dir) = &options.dump_matrices {
        dump(dir, "Z", k, g, &z)?;
        dump(dir, "b", k, g, &b)?;
    }
    let q = quotient_space(&z, &b)?;
    let representatives = q
        .representatives
        .iter()
        .map(|x| cx.cochain(k, g, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(CellComputation {
        degree: k,
        grade: g,
        dim_c: cell.len(),
        rank_z: q.rank_z,
        rank_b: q.rank_b,
        dim_h: q.dim,
        representatives,
    })
}

fn dump(dir: &Path, name: &str, k: usize, g: i64, m: &SparseMatrix) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(format!("{name}_k{k}_g{g}.txt"));
    std::fs::write(&path, format!("# {} x {}\n{}", m.rows(), m.cols(), m.dump()))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Ok,
    /// The cell or its neighbour exceeded the configured size cap.
    CapExceeded,
}

/// Serialized form of a cell, as it appears in reports and the cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord {
    pub degree: usize,
    pub grade: i64,
    #[serde(rename = "dim_C")]
    pub dim_c: Option<usize>,
    #[serde(rename = "rank_Z")]
    pub rank_z: Option<usize>,
    pub rank_b: Option<usize>,
    #[serde(rename = "dim_H")]
    pub dim_h: Option<usize>,
    pub status: CellStatus,
    pub representatives: Vec<CochainRecord>,
}

impl CellRecord {
    pub fn capped(degree: usize, grade: i64) -> Self {
        CellRecord {
            degree,
            grade,
            dim_c: None,
            rank_z: None,
            rank_b: None,
            dim_h: None,
            status: CellStatus::CapExceeded,
            representatives: vec![],
        }
    }

    pub fn representatives(&self) -> Result<Vec<Cochain>> {
        self.representatives.iter().map(Cochain::from_record).collect()
    }
}

impl From<&CellComputation> for CellRecord {
    fn from(c: &CellComputation) -> Self {
        CellRecord {
            degree: c.degree,
            grade: c.grade,
            dim_c: Some(c.dim_c),
            rank_z: Some(c.rank_z),
            rank_b: Some(c.rank_b),
            dim_h: Some(c.dim_h),
            status: CellStatus::Ok,
            representatives: c.representatives.iter().map(Cochain::to_record).collect(),
        }
    }
}

/// Like [`compute_cell_with`], but a size-cap overflow becomes a flagged
/// record instead of an error.
pub fn cell_record(cx: &Complex, k: usize, g: i64, options: &CellOptions) -> Result<CellRecord> {
    match compute_cell_with(cx, k, g, options) {
        Ok(c) => Ok(CellRecord::from(&c)),
        Err(Error::ResourceCap { .. }) => Ok(CellRecord::capped(k, g)),
        Err(e) => Err(e),
    }
}
