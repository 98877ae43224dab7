use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use super::family::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::rational::Q;

/// Basis elements of every weight in `[min_weight, max_weight]`.
///
/// Ids are dense and follow the element order (weight first), so a larger
/// window only appends ids and never renumbers existing ones.
#[derive(Debug)]
pub struct Basis {
    spec: AlgebraSpec,
    min_weight: i64,
    max_weight: i64,
    elements: Vec<Element>,
    parities: Vec<u8>,
    weights: Vec<i64>,
    index: HashMap<Element, u32>,
}

impl Basis {
    pub fn new(spec: AlgebraSpec, max_weight: i64) -> Self {
        let min_weight = spec.min_weight();
        let max_weight = match spec.max_weight() {
            Some(top) => max_weight.min(top),
            None => max_weight,
        };
        let mut elements: Vec<Element> = (min_weight..=max_weight).flat_map(|w| spec.basis_at(w)).collect();
        // id order must agree with element order for canonical tuples
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        Basis {
            spec,
            min_weight,
            max_weight,
            parities: elements.iter().map(Element::parity).collect(),
            weights: elements.iter().map(Element::weight).collect(),
            elements,
            index,
        }
    }

    /// The whole algebra; only for finite families.
    pub fn full(spec: AlgebraSpec) -> Result<Self> {
        let top = spec.max_weight().ok_or_else(|| {
            Error::Unsupported(format!("{spec} is infinite-dimensional; a weight window is required"))
        })?;
        Ok(Basis::new(spec, top))
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn min_weight(&self) -> i64 {
        self.min_weight
    }

    pub fn max_weight(&self) -> i64 {
        self.max_weight
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, id: u32) -> &Element {
        &self.elements[id as usize]
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn parity(&self, id: u32) -> u8 {
        self.parities[id as usize]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parities
    }

    pub fn weight(&self, id: u32) -> i64 {
        self.weights[id as usize]
    }

    pub fn id(&self, element: &Element) -> Option<u32> {
        self.index.get(element).copied()
    }

    pub fn id_or_err(&self, element: &Element) -> Result<u32> {
        self.id(element).ok_or_else(|| {
            if self.spec.contains(element) {
                Error::OutsideWindow {
                    element: self.spec.element_name(element),
                    max_weight: self.max_weight,
                }
            } else {
                Error::not_in_basis(element)
            }
        })
    }

    pub fn name(&self, id: u32) -> String {
        self.spec.element_name(self.element(id))
    }

    /// Ids of weight `w`, as a contiguous range.
    pub fn ids_of_weight(&self, w: i64) -> std::ops::Range<u32> {
        let lo = self.weights.partition_point(|&x| x < w) as u32;
        let hi = self.weights.partition_point(|&x| x <= w) as u32;
        lo..hi
    }
}

/// Sparse structure constants over a [`Basis`], filled on demand.
///
/// Only pairs `i <= j` are stored; the other half follows from super
/// skew-symmetry. Concurrent fills of the same entry compute identical
/// values, so the last writer wins harmlessly.
type Row = Arc<[(u32, Q)]>;

#[derive(Debug)]
pub struct StructureTable {
    basis: Arc<Basis>,
    cache: RwLock<HashMap<(u32, u32), Row>>,
}

impl StructureTable {
    pub fn new(basis: Arc<Basis>) -> Self {
        StructureTable {
            basis,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn spec(&self) -> &AlgebraSpec {
        self.basis.spec()
    }

    /// `[e_i, e_j]` as `(id, coefficient)` pairs.
    pub fn bracket(&self, i: u32, j: u32) -> Result<Arc<[(u32, Q)]>> {
        if i > j {
            let forward = self.bracket(j, i)?;
            let both_odd = self.basis.parity(i) == 1 && self.basis.parity(j) == 1;
            if both_odd {
                return Ok(forward);
            }
            return Ok(forward.iter().map(|(k, c)| (*k, -c.clone())).collect());
        }
        if let Some(hit) = self.cache.read().expect("table lock").get(&(i, j)) {
            return Ok(Arc::clone(hit));
        }
        let raw = self
            .basis
            .spec()
            .bracket(self.basis.element(i), self.basis.element(j))?;
        let mut entry = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            entry.push((self.basis.id_or_err(&e)?, c));
        }
        entry.sort_by_key(|(k, _)| *k);
        let entry: Arc<[(u32, Q)]> = entry.into();
        self.cache
            .write()
            .expect("table lock")
            .insert((i, j), Arc::clone(&entry));
        Ok(entry)
    }

    /// Number of cached pairs.
    pub fn cached_pairs(&self) -> usize {
        self.cache.read().expect("table lock").len()
    }
}

/// Eagerly fills every pair whose bracket lands inside the window.
pub fn build_structure_table(spec: AlgebraSpec, window: (i64, i64)) -> Result<StructureTable> {
    let (lo, hi) = window;
    if lo > hi {
        return Err(Error::Precondition(format!("empty weight window [{lo}, {hi}]")));
    }
    let basis = Arc::new(Basis::new(spec, hi));
    let table = StructureTable::new(Arc::clone(&basis));
    let ids: Vec<u32> = (0..basis.len() as u32).filter(|&id| basis.weight(id) >= lo).collect();
    for (a, &i) in ids.iter().enumerate() {
        for &j in &ids[a..] {
            if basis.weight(i) + basis.weight(j) <= basis.max_weight() {
                table.bracket(i, j)?;
            }
        }
    }
    Ok(table)
}
