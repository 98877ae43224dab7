use num_traits::{One, Zero};

use super::sparse::{axpy, lookup, scale, SparseMatrix, SparseVec};
use crate::rational::Q;

/// Reduced row-echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct EchelonForm {
    cols: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    /// Row `i` of the input equals `Σ_p combination[i][p] · rows[p]`.
    combination: Vec<SparseVec>,
}

impl EchelonForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduced rows; row `p` has its leading `1` at `pivots()[p]`.
    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn combination(&self) -> &[SparseVec] {
        &self.combination
    }

    pub fn reduced_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_rows(self.cols, self.rows.clone()).expect("columns in range")
    }

    /// Rebuilds the input from the elimination record.
    pub fn reconstruct(&self) -> SparseMatrix {
        let rows = self
            .combination
            .iter()
            .map(|comb| {
                comb.iter()
                    .fold(Vec::new(), |acc, (p, c)| axpy(&acc, c, &self.rows[*p]))
            })
            .collect();
        SparseMatrix::from_rows(self.cols, rows).expect("columns in range")
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Subtracts the row space from `v`, zeroing every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (p, &col) in self.pivots.iter().enumerate() {
            if let Some(x) = lookup(&out, col).cloned() {
                out = axpy(&out, &-x, &self.rows[p]);
            }
        }
        out
    }

    pub fn in_row_space(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Basis of `{x : Mx = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<SparseVec> {
        let free = self.free_columns();
        let mut slot = vec![usize::MAX; self.cols];
        for (i, &f) in free.iter().enumerate() {
            slot[f] = i;
        }
        let mut out: Vec<SparseVec> = free.iter().map(|&f| vec![(f, Q::one())]).collect();
        for (p, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                if slot[*c] != usize::MAX {
                    out[slot[*c]].push((self.pivots[p], -v.clone()));
                }
            }
        }
        for v in &mut out {
            v.sort_by_key(|(c, _)| *c);
        }
        out
    }
}

/// Gauss–Jordan elimination over the rationals.
///
/// Columns are processed left to right; among the rows whose leading entry
/// sits in the current column, the sparsest one (then lowest index) becomes
/// the pivot. The output is deterministic for a given input.
pub fn row_reduce(m: &SparseMatrix) -> EchelonForm {
    let cols = m.cols();
    let mut work: Vec<SparseVec> = m.row_data().to_vec();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); cols];
    for (i, row) in work.iter().enumerate() {
        if let Some((c, _)) = row.first() {
            buckets[*c].push(i);
        }
    }
    let mut rows: Vec<SparseVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for c in 0..cols {
        let candidates = std::mem::take(&mut buckets[c]);
        let Some(&chosen) = candidates.iter().min_by_key(|&&i| (work[i].len(), i)) else {
            continue;
        };
        let lead = work[chosen][0].1.clone();
        let pivot_row = scale(&work[chosen], &lead.recip());
        for &i in &candidates {
            if i == chosen {
                continue;
            }
            let factor = -work[i][0].1.clone();
            let reduced = axpy(&work[i], &factor, &pivot_row);
            if let Some((lc, _)) = reduced.first() {
                buckets[*lc].push(i);
            }
            work[i] = reduced;
        }
        work[chosen].clear();
        rows.push(pivot_row);
        pivots.push(c);
    }
    // back substitution
    for i in (0..rows.len()).rev() {
        let col = pivots[i];
        let (above, below) = rows.split_at_mut(i);
        let pivot_row = &below[0];
        for row in above.iter_mut() {
            if let Some(x) = lookup(row, col).cloned() {
                *row = axpy(row, &-x, pivot_row);
            }
        }
    }
    let combination = m
        .row_data()
        .iter()
        .map(|row| {
            pivots
                .iter()
                .enumerate()
                .filter_map(|(p, &col)| lookup(row, col).map(|x| (p, x.clone())))
                .filter(|(_, x)| !x.is_zero())
                .collect()
        })
        .collect();
    EchelonForm {
        cols,
        rows,
        pivots,
        combination,
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    row_reduce(m).rank()
}

pub fn nullspace_basis(m: &SparseMatrix) -> Vec<SparseVec> {
    row_reduce(m).nullspace()
}

/// Constraints `B` whose solution set `Bx = 0` is exactly the column space of `b`.
pub fn cokernel_constraints(b: &SparseMatrix) -> SparseMatrix {
    let left_null = nullspace_basis(&b.transpose());
    SparseMatrix::from_rows(b.rows(), left_null).expect("columns in range")
}

/// Some `x` with `Mx = rhs`, or `None` when the system is inconsistent.
pub fn solve(m: &SparseMatrix, rhs: &SparseVec) -> Option<SparseVec> {
    let cols = m.cols();
    let mut rows: Vec<SparseVec> = m.row_data().to_vec();
    for (r, v) in rhs {
        rows[*r].push((cols, v.clone()));
    }
    let augmented = SparseMatrix::from_rows(cols + 1, rows).expect("columns in range");
    let ech = row_reduce(&augmented);
    if ech.pivots().last() == Some(&cols) {
        return None;
    }
    let mut x: SparseVec = ech
        .pivots()
        .iter()
        .zip(ech.rows())
        .filter_map(|(&p, row)| lookup(row, cols).map(|v| (p, v.clone())))
        .collect();
    x.sort_by_key(|(c, _)| *c);
    Some(x)
}
