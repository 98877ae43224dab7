use num_traits::Zero;
use rayon::prelude::*;

use super::cell::{CellBasis, CellEntry, Module};
use super::tuple::{canonicalize, extraction_sign};
use crate::algebra::StructureTable;
use crate::error::{Error, Result};
use crate::linalg::{normalize, SparseMatrix, SparseVec};
use crate::rational::Q;

/// Matrix of `d: C^k_g → C^{k+1}_g`; columns follow `source`, rows follow
/// `target`.
///
/// Row `X = (x_0, …, x_k)` collects, for every pair `i < j`, the term
/// `−s_ij · c([x_i, x_j], X without i, j)` where `s_ij` is the sign of moving
/// `x_i, x_j` to the front. For the adjoint module each `x_i` also acts on the
/// value: `s_i · (−1)^{p(x_i) p(c)} [x_i, c(X without i)]`.
pub fn differential_matrix(table: &StructureTable, source: &CellBasis, target: &CellBasis) -> Result<SparseMatrix> {
    if target.degree() != source.degree() + 1 || target.grade() != source.grade() || target.module() != source.module()
    {
        return Err(Error::Dimension(format!(
            "cannot map cell ({}, {}) to cell ({}, {})",
            source.degree(),
            source.grade(),
            target.degree(),
            target.grade()
        )));
    }
    let rows: Vec<SparseVec> = target
        .entries()
        .par_iter()
        .map(|x| differential_row(table, source, x))
        .collect::<Result<_>>()?;
    SparseMatrix::from_rows(source.len(), rows)
}

fn differential_row(table: &StructureTable, source: &CellBasis, x: &CellEntry) -> Result<SparseVec> {
    let basis = table.basis();
    let parities = basis.parities();
    let xp: Vec<u8> = x.args.iter().map(|&id| parities[id as usize]).collect();
    let len = x.args.len();
    let mut acc: Vec<(usize, Q)> = Vec::new();
    let column = |args: Vec<u32>, value: Option<u32>| -> Result<usize> {
        let entry = CellEntry { args, value };
        source
            .position(&entry)
            .ok_or_else(|| Error::Consistency(format!("differential left the cell basis at {:?}", entry.args)))
    };

    for i in 0..len {
        for j in i + 1..len {
            let s = extraction_sign(&xp, &[i, j]);
            let br = table.bracket(x.args[i], x.args[j])?;
            if br.is_empty() {
                continue;
            }
            let rest: Vec<u32> = x
                .args
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != i && t != j)
                .map(|(_, &id)| id)
                .collect();
            for (m, c) in br.iter() {
                let mut y = Vec::with_capacity(len - 1);
                y.push(*m);
                y.extend_from_slice(&rest);
                let sigma = canonicalize(&mut y, parities);
                if sigma == 0 {
                    continue;
                }
                let col = column(y, x.value)?;
                let sign = -s * sigma;
                acc.push((col, if sign < 0 { -c.clone() } else { c.clone() }));
            }
        }
    }

    if source.module() == Module::Adjoint {
        let v = x.value.expect("adjoint entries carry a value");
        let target_weight = basis.weight(v);
        for i in 0..len {
            let s = extraction_sign(&xp, &[i]);
            let xi = x.args[i];
            let rest: Vec<u32> = x
                .args
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != i)
                .map(|(_, &id)| id)
                .collect();
            let rest_parity: u8 = rest.iter().map(|&id| parities[id as usize]).sum::<u8>() % 2;
            for u in basis.ids_of_weight(target_weight - basis.weight(xi)) {
                let br = table.bracket(xi, u)?;
                let Some((_, c)) = br.iter().find(|(k, _)| *k == v) else {
                    continue;
                };
                let cochain_parity = (parities[u as usize] + rest_parity) % 2;
                let mut sign = s;
                if parities[xi as usize] == 1 && cochain_parity == 1 {
                    sign = -sign;
                }
                let col = column(rest.clone(), Some(u))?;
                acc.push((col, if sign < 0 { -c.clone() } else { c.clone() }));
            }
        }
    }
    let row = normalize(acc);
    debug_assert!(row.iter().all(|(_, v)| !v.is_zero()));
    Ok(row)
}
