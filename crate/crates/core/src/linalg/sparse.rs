use std::fmt::Write as _;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{parse_q, Q};

/// Sorted `(column, value)` pairs without zeros.
pub type SparseVec = Vec<(usize, Q)>;

/// `a + factor * b`, both sorted.
pub fn axpy(a: &SparseVec, factor: &Q, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, factor * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + factor * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn lookup(v: &SparseVec, col: usize) -> Option<&Q> {
    v.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &v[i].1)
}

pub fn dot(a: &SparseVec, b: &SparseVec) -> Q {
    let mut acc = Q::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &a[i].1 * &b[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

pub fn scale(v: &SparseVec, factor: &Q) -> SparseVec {
    if factor.is_zero() {
        return vec![];
    }
    v.iter().map(|(c, x)| (*c, x * factor)).collect()
}

/// Sorts, merges duplicate columns and drops zeros.
pub fn normalize(mut entries: Vec<(usize, Q)>) -> SparseVec {
    entries.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some((last, acc)) if *last == c => *acc += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (c, x) in v {
        out[*c] = x.clone();
    }
    out
}

pub fn from_dense(v: &[Q]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (c, x.clone()))
        .collect()
}

/// Row-major sparse matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, Q::from_integer(1.into()))]).collect(),
        }
    }

    /// Builds from rows; entries are normalized and range-checked.
    pub fn from_rows(cols: usize, rows: Vec<Vec<(usize, Q)>>) -> Result<Self> {
        let data: Vec<SparseVec> = rows.into_iter().map(normalize).collect();
        if let Some(bad) = data.iter().flatten().find(|(c, _)| *c >= cols) {
            return Err(Error::Dimension(format!(
                "column {} out of range for {} columns",
                bad.0, cols
            )));
        }
        Ok(SparseMatrix {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn from_dense(rows: &[Vec<Q>], cols: usize) -> Self {
        SparseMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| from_dense(r)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn row_data(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        lookup(&self.data[r], c).cloned().unwrap_or_else(Q::zero)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let x = dot(row, v);
                (!x.is_zero()).then_some((r, x))
            })
            .collect()
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: SparseVec = Vec::new();
                for (k, v) in row {
                    acc = axpy(&acc, v, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        self.data.iter().map(|r| to_dense(r, self.cols)).collect()
    }

    /// Keeps the listed columns, renumbered in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> SparseMatrix {
        let mut position = vec![usize::MAX; self.cols];
        for (new, &old) in columns.iter().enumerate() {
            position[old] = new;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                normalize(
                    row.iter()
                        .filter(|(c, _)| position[*c] != usize::MAX)
                        .map(|(c, v)| (position[*c], v.clone()))
                        .collect(),
                )
            })
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: columns.len(),
            data,
        }
    }

    /// Debug dump: one row per line as `col:numerator/denominator` pairs.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for row in &self.data {
            let mut first = true;
            for (c, v) in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                write!(out, "{}:{}/{}", c, v.numer(), v.denom()).expect("string write");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_dump(text: &str, cols: usize) -> Result<SparseMatrix> {
        let rows = text
            .lines()
            .map(|line| {
                line.split_whitespace()
                    .map(|pair| {
                        let (c, v) = pair
                            .split_once(':')
                            .ok_or_else(|| Error::Deserialize(format!("bad entry `{pair}`")))?;
                        let c = c.parse().map_err(|_| Error::Deserialize(format!("bad column `{c}`")))?;
                        let v = parse_q(v).ok_or_else(|| Error::Deserialize(format!("bad value `{v}`")))?;
                        Ok((c, v))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SparseMatrix::from_rows(cols, rows)
    }
}
