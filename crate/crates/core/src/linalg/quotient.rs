use num_traits::{One, Zero};

use super::echelon::{cokernel_constraints, row_reduce, EchelonForm};
use super::sparse::{dot, lookup, scale, SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// Cohomology of one cell: `ker Z / im b`.
#[derive(Clone, Debug)]
pub struct QuotientResult {
    pub dim: usize,
    /// Coordinate vectors in the cell basis; first nonzero entry is 1.
    pub representatives: Vec<SparseVec>,
    /// Rank of the cocycle system `Zx = 0`.
    pub rank_z: usize,
    /// Rank of the coboundary constraints `Bx = 0`.
    pub rank_bsys: usize,
    /// Rank of the coboundary map `b`.
    pub rank_b: usize,
}

/// Everything needed to classify vectors of a cell modulo coboundaries.
#[derive(Clone, Debug)]
pub struct CoboundarySystem {
    /// Echelon form of the column space of `b` (rows span `im b`).
    pub image: EchelonForm,
    /// Reduced constraints `B` with `ker B = im b`.
    pub constraints: EchelonForm,
}

impl CoboundarySystem {
    pub fn new(b: &SparseMatrix) -> Self {
        CoboundarySystem {
            image: row_reduce(&b.transpose()),
            constraints: row_reduce(&cokernel_constraints(b)),
        }
    }

    /// `y = Bx`: zero exactly for coboundaries, injective on classes.
    pub fn project(&self, x: &SparseVec) -> SparseVec {
        self.constraints
            .rows()
            .iter()
            .enumerate()
            .filter_map(|(p, row)| {
                let v = dot(row, x);
                (!v.is_zero()).then_some((p, v))
            })
            .collect()
    }
}

/// `Z/B = (Y/B)/(Y/Z)`: cocycles `Zx = 0` modulo coboundaries `x = bt`.
///
/// `z` has the cell's cochains as columns; `b` has them as rows.
pub fn quotient_space(z: &SparseMatrix, b: &SparseMatrix) -> Result<QuotientResult> {
    let n = z.cols();
    if b.rows() != n {
        return Err(Error::Dimension(format!(
            "cocycle system has {} columns but coboundary map has {} rows",
            n,
            b.rows()
        )));
    }
    let zb = z.mul(b)?;
    if !zb.is_zero() {
        let col = zb.row_data().iter().flatten().map(|(c, _)| *c).min().unwrap_or(0);
        return Err(Error::Consistency(format!(
            "coboundary column {col} is not annihilated by the cocycle system (d∘d ≠ 0)"
        )));
    }

    // (a) eliminate t from x = bt
    let system = CoboundarySystem::new(b);
    let rank_b = system.image.rank();
    let bsys = &system.constraints;
    // (b) canonical forms and rank comparison
    let zsys = row_reduce(z);
    let (rank_bsys, rank_z) = (bsys.rank(), zsys.rank());

    if rank_z > rank_bsys {
        return Err(Error::Consistency(format!(
            "cocycle system rank {rank_z} exceeds coboundary constraint rank {rank_bsys}"
        )));
    }
    let mut representatives = Vec::new();
    if rank_bsys != rank_z {
        // (c) y = Bx; every row of Z lies in the row space of B, so Zx = Ay
        // with A read off at the pivots of B.
        let a_rows: Vec<SparseVec> = zsys
            .rows()
            .iter()
            .map(|zr| {
                bsys.pivots()
                    .iter()
                    .enumerate()
                    .filter_map(|(p, &col)| lookup(zr, col).map(|v| (p, v.clone())))
                    .collect()
            })
            .collect();
        let a = SparseMatrix::from_rows(rank_bsys, a_rows)?;
        let asys = row_reduce(&a);
        if asys.rank() != rank_z {
            return Err(Error::Consistency(format!(
                "substituted system has rank {} but the cocycle system has rank {}",
                asys.rank(),
                rank_z
            )));
        }
        for y in asys.nullspace() {
            // B is reduced, so x = Σ y_p e_{pivot_p} solves Bx = y
            let mut x: SparseVec = y.iter().map(|(p, v)| (bsys.pivots()[*p], v.clone())).collect();
            x.sort_by_key(|(c, _)| *c);
            representatives.push(normalize_first(&system.image.reduce(&x)));
        }
    }

    let dim = representatives.len();
    let expected = (n - rank_z)
        .checked_sub(rank_b)
        .ok_or_else(|| Error::Consistency(format!("rank b = {rank_b} exceeds dim ker Z = {}", n - rank_z)))?;
    if dim != expected || dim != rank_bsys - rank_z {
        return Err(Error::Consistency(format!(
            "quotient dimension {dim} disagrees with dim ker Z - rank b = {expected}"
        )));
    }
    for x in &representatives {
        if !z.mul_vec(x).is_empty() {
            return Err(Error::Consistency("representative is not a cocycle".into()));
        }
    }
    Ok(QuotientResult {
        dim,
        representatives,
        rank_z,
        rank_bsys,
        rank_b,
    })
}

/// Scales so the first nonzero coordinate is 1.
pub fn normalize_first(v: &SparseVec) -> SparseVec {
    match v.first() {
        Some((_, lead)) if !lead.is_one() && !lead.is_zero() => scale(v, &lead.recip()),
        _ => v.clone(),
    }
}
