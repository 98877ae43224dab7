use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Basis;
use crate::error::{Error, Result};

/// Coefficient module of the complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Module {
    /// The ground field with zero action.
    Trivial,
    /// The algebra acting on itself by the bracket.
    Adjoint,
}

impl fmt::Display for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Module::Trivial => "trivial",
            Module::Adjoint => "adjoint",
        })
    }
}

impl FromStr for Module {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "trivial" => Ok(Module::Trivial),
            "adjoint" => Ok(Module::Adjoint),
            other => Err(Error::Precondition(format!("unknown module `{other}`"))),
        }
    }
}

/// One basis cochain of a cell: canonical arguments plus, for the adjoint
/// module, the id of the value element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellEntry {
    pub args: Vec<u32>,
    pub value: Option<u32>,
}

/// Canonical basis of `C^k_g`.
#[derive(Clone, Debug)]
pub struct CellBasis {
    degree: usize,
    grade: i64,
    module: Module,
    entries: Vec<CellEntry>,
    index: HashMap<CellEntry, usize>,
}

impl CellBasis {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn grade(&self) -> i64 {
        self.grade
    }

    pub fn module(&self) -> Module {
        self.module
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CellEntry] {
        &self.entries
    }

    pub fn position(&self, entry: &CellEntry) -> Option<usize> {
        self.index.get(entry).copied()
    }

    fn from_entries(degree: usize, grade: i64, module: Module, mut entries: Vec<CellEntry>) -> Self {
        entries.sort();
        let index = entries.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        CellBasis {
            degree,
            grade,
            module,
            entries,
            index,
        }
    }
}

/// Enumerates the canonical basis of `C^k_g`.
///
/// Trivial module: argument tuples whose weights sum to `g`. Adjoint module:
/// tuples paired with a value element of weight `Σ args − g`. Even ids occur
/// at most once per tuple, odd ids any number of times. `cap` bounds the
/// number of entries; exceeding it is an error rather than a truncation.
pub fn enumerate_cell_basis(
    basis: &Basis,
    module: Module,
    degree: usize,
    grade: i64,
    cap: Option<usize>,
) -> Result<CellBasis> {
    let cap_err = || Error::ResourceCap {
        degree,
        grade,
        cap: cap.unwrap_or(usize::MAX),
    };
    let mut entries = Vec::new();
    match module {
        Module::Trivial => {
            for args in tuples_of_weight(basis, degree, grade, cap).ok_or_else(cap_err)? {
                entries.push(CellEntry { args, value: None });
            }
        }
        Module::Adjoint => {
            if !basis.spec().is_finite() {
                return Err(Error::Unsupported(format!(
                    "adjoint cells of the infinite-dimensional {} are infinite-dimensional",
                    basis.spec()
                )));
            }
            let Some(lowest) = basis.spec().min_tuple_weight(degree) else {
                return Ok(CellBasis::from_entries(degree, grade, module, entries));
            };
            for total in lowest..=grade + basis.max_weight() {
                let values = basis.ids_of_weight(total - grade);
                if values.is_empty() {
                    continue;
                }
                let room = cap.map(|c| c.saturating_sub(entries.len()));
                let tuples = tuples_of_weight(basis, degree, total, room).ok_or_else(cap_err)?;
                for args in tuples {
                    for v in values.clone() {
                        entries.push(CellEntry {
                            args: args.clone(),
                            value: Some(v),
                        });
                    }
                }
                if cap.is_some_and(|c| entries.len() > c) {
                    return Err(cap_err());
                }
            }
        }
    }
    Ok(CellBasis::from_entries(degree, grade, module, entries))
}

/// Canonical tuples of `count` ids with the given weight sum; `None` when
/// more than `cap` exist.
fn tuples_of_weight(basis: &Basis, count: usize, target: i64, cap: Option<usize>) -> Option<Vec<Vec<u32>>> {
    struct Walk<'a> {
        basis: &'a Basis,
        max_w: i64,
        cap: usize,
        current: Vec<u32>,
        out: Vec<Vec<u32>>,
    }
    impl Walk<'_> {
        fn rec(&mut self, start: u32, left: usize, target: i64) -> bool {
            if left == 0 {
                if target == 0 {
                    if self.out.len() >= self.cap {
                        return false;
                    }
                    let mut t = self.current.clone();
                    // evens first, each group keeps ascending id order
                    let parities = self.basis.parities();
                    t.sort_by_key(|&id| parities[id as usize]);
                    self.out.push(t);
                }
                return true;
            }
            for id in start..self.basis.len() as u32 {
                let w = self.basis.weight(id);
                if w * left as i64 > target {
                    break;
                }
                if target - w > (left as i64 - 1) * self.max_w {
                    continue;
                }
                self.current.push(id);
                let next = if self.basis.parity(id) == 1 { id } else { id + 1 };
                let ok = self.rec(next, left - 1, target - w);
                self.current.pop();
                if !ok {
                    return false;
                }
            }
            true
        }
    }
    let mut walk = Walk {
        basis,
        max_w: basis.max_weight(),
        cap: cap.unwrap_or(usize::MAX),
        current: Vec::with_capacity(count),
        out: Vec::new(),
    };
    walk.rec(0, count, target).then_some(walk.out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::complex::tuple::is_canonical;

    fn basis(spec: &str, max_w: i64) -> Basis {
        Basis::new(spec.parse::<AlgebraSpec>().unwrap(), max_w)
    }

    #[test]
    fn sh4_pairs_of_odd_generators() {
        let b = basis("SH(0|4)", 1);
        let cell = enumerate_cell_basis(&b, Module::Trivial, 2, -2, None).unwrap();
        assert_eq!(cell.len(), 10);
        assert!(cell.entries().iter().all(|e| is_canonical(&e.args, b.parities())));
    }

    #[test]
    fn h2_and_po2_low_cells() {
        let b = basis("H(2|0)", 3);
        let cell = enumerate_cell_basis(&b, Module::Trivial, 2, -2, None).unwrap();
        assert_eq!(cell.len(), 1);
        let names: Vec<_> = cell.entries()[0].args.iter().map(|&i| b.name(i)).collect();
        assert_eq!(names, ["q", "p"]);

        let b = basis("Po(2|0)", 3);
        let cell = enumerate_cell_basis(&b, Module::Trivial, 3, -4, None).unwrap();
        assert_eq!(cell.len(), 1);
        let names: Vec<_> = cell.entries()[0].args.iter().map(|&i| b.name(i)).collect();
        assert_eq!(names, ["1", "q", "p"]);
    }

    #[test]
    fn degree_zero_cell() {
        let b = basis("SH(0|4)", 1);
        let cell = enumerate_cell_basis(&b, Module::Trivial, 0, 0, None).unwrap();
        assert_eq!(cell.len(), 1);
        assert!(enumerate_cell_basis(&b, Module::Trivial, 0, 1, None)
            .unwrap()
            .is_empty());
        let adj = enumerate_cell_basis(&b, Module::Adjoint, 0, 1, None).unwrap();
        // C^0 = M: value weight 0 - 1 = -1
        assert_eq!(adj.len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let b = basis("SH(0|4)", 1);
        assert!(matches!(
            enumerate_cell_basis(&b, Module::Trivial, 2, -2, Some(9)),
            Err(Error::ResourceCap { .. })
        ));
        assert!(enumerate_cell_basis(&b, Module::Trivial, 2, -2, Some(10)).is_ok());
    }

    #[test]
    fn adjoint_requires_finite_algebra() {
        let b = basis("H(2|0)", 3);
        assert!(matches!(
            enumerate_cell_basis(&b, Module::Adjoint, 1, 0, None),
            Err(Error::Unsupported(_))
        ));
    }
}
