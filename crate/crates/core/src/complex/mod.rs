//! Cochain cells `C^k_g` and the Chevalley–Eilenberg differential.

pub mod cell;
pub mod cochain;
pub mod differential;
pub mod tuple;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

pub use cell::{enumerate_cell_basis, CellBasis, CellEntry, Module};
pub use cochain::{Cochain, CochainKey, CochainRecord, TermRecord};
pub use differential::differential_matrix;

use crate::algebra::{AlgebraSpec, Basis, StructureTable};
use crate::error::{Error, Result};
use crate::linalg::{SparseMatrix, SparseVec};

/// Default bound on the number of basis cochains in one cell.
pub const DEFAULT_MAX_CELL: usize = 200_000;

/// Highest element weight that can occur in a degree-`k` tuple of total
/// weight `g`.
pub fn element_weight_bound(spec: &AlgebraSpec, k: usize, g: i64) -> i64 {
    if k == 0 {
        return spec.min_weight();
    }
    g - spec.min_tuple_weight(k - 1).unwrap_or(0)
}

/// Shared state for computing cells of one algebra and module: the basis
/// window, the structure-table cache, and memoized cell bases and matrices.
#[derive(Debug)]
pub struct Complex {
    table: Arc<StructureTable>,
    module: Module,
    cap: Option<usize>,
    cells: Mutex<HashMap<(usize, i64), Arc<CellBasis>>>,
    matrices: Mutex<HashMap<(usize, i64), Arc<SparseMatrix>>>,
}

impl Complex {
    /// A complex able to serve every cell with degree `≤ max_degree` and
    /// grade `≤ max_grade`.
    pub fn new(spec: AlgebraSpec, module: Module, max_degree: usize, max_grade: i64) -> Self {
        let top = (0..=max_degree)
            .map(|k| element_weight_bound(&spec, k, max_grade))
            .max()
            .unwrap_or(0)
            .max(spec.min_weight());
        Complex::with_basis(Arc::new(Basis::new(spec, top)), module)
    }

    pub fn with_basis(basis: Arc<Basis>, module: Module) -> Self {
        Complex {
            table: Arc::new(StructureTable::new(basis)),
            module,
            cap: Some(DEFAULT_MAX_CELL),
            cells: Mutex::new(HashMap::new()),
            matrices: Mutex::new(HashMap::new()),
        }
    }

    /// `None` disables the cell-size cap.
    pub fn with_cap(mut self, cap: Option<usize>) -> Self {
        self.cap = cap;
        self
    }

    pub fn spec(&self) -> &AlgebraSpec {
        self.table.spec()
    }

    pub fn module(&self) -> Module {
        self.module
    }

    pub fn cap(&self) -> Option<usize> {
        self.cap
    }

    pub fn table(&self) -> &Arc<StructureTable> {
        &self.table
    }

    pub fn basis(&self) -> &Arc<Basis> {
        self.table.basis()
    }

    /// Whether cell `(k, g)` lies inside the basis window.
    pub fn covers(&self, k: usize, g: i64) -> bool {
        self.spec().is_finite() || element_weight_bound(self.spec(), k, g) <= self.basis().max_weight()
    }

    pub fn cell(&self, k: usize, g: i64) -> Result<Arc<CellBasis>> {
        if !self.covers(k, g) {
            return Err(Error::Precondition(format!(
                "cell ({k}, {g}) needs elements up to weight {}, window stops at {}",
                element_weight_bound(self.spec(), k, g),
                self.basis().max_weight()
            )));
        }
        if let Some(hit) = self.cells.lock().expect("cell cache").get(&(k, g)) {
            return Ok(Arc::clone(hit));
        }
        let cell = Arc::new(enumerate_cell_basis(self.basis(), self.module, k, g, self.cap)?);
        self.cells.lock().expect("cell cache").insert((k, g), Arc::clone(&cell));
        Ok(cell)
    }

    /// Matrix of `d: C^k_g → C^{k+1}_g`.
    pub fn differential(&self, k: usize, g: i64) -> Result<Arc<SparseMatrix>> {
        if let Some(hit) = self.matrices.lock().expect("matrix cache").get(&(k, g)) {
            return Ok(Arc::clone(hit));
        }
        let source = self.cell(k, g)?;
        let target = self.cell(k + 1, g)?;
        let d = Arc::new(differential_matrix(&self.table, &source, &target)?);
        self.matrices
            .lock()
            .expect("matrix cache")
            .insert((k, g), Arc::clone(&d));
        Ok(d)
    }

    /// Coordinates of `c` in its cell basis.
    pub fn coordinates(&self, c: &Cochain) -> Result<SparseVec> {
        self.check_cochain(c)?;
        let cell = self.cell(c.degree(), c.weight())?;
        let basis = self.basis();
        let mut out = Vec::with_capacity(c.len());
        for (key, coeff) in c.terms() {
            let args = key
                .args
                .iter()
                .map(|e| basis.id_or_err(e))
                .collect::<Result<Vec<_>>>()?;
            let value = key.value.as_ref().map(|e| basis.id_or_err(e)).transpose()?;
            let entry = CellEntry { args, value };
            let pos = cell
                .position(&entry)
                .ok_or_else(|| Error::Consistency(format!("term {:?} is missing from its cell basis", entry.args)))?;
            out.push((pos, coeff.clone()));
        }
        Ok(crate::linalg::normalize(out))
    }

    /// The cochain with coordinates `v` in cell `(k, g)`.
    pub fn cochain(&self, k: usize, g: i64, v: &SparseVec) -> Result<Cochain> {
        let cell = self.cell(k, g)?;
        let basis = self.basis();
        let mut out = Cochain::zero(*self.spec(), self.module, k, g);
        for (pos, coeff) in v {
            let entry = cell
                .entries()
                .get(*pos)
                .ok_or_else(|| Error::Dimension(format!("coordinate {pos} outside cell of size {}", cell.len())))?;
            let key = CochainKey {
                args: entry.args.iter().map(|&id| basis.element(id).clone()).collect(),
                value: entry.value.map(|id| basis.element(id).clone()),
            };
            out.insert_canonical(key, coeff.clone());
        }
        Ok(out)
    }

    /// `d c`.
    pub fn apply_differential(&self, c: &Cochain) -> Result<Cochain> {
        let x = self.coordinates(c)?;
        let d = self.differential(c.degree(), c.weight())?;
        self.cochain(c.degree() + 1, c.weight(), &d.mul_vec(&x))
    }

    fn check_cochain(&self, c: &Cochain) -> Result<()> {
        if c.spec() != self.spec() || c.module() != self.module {
            return Err(Error::Precondition(format!(
                "{} cochain over {} used in the {} complex of {}",
                c.module(),
                c.spec(),
                self.module,
                self.spec()
            )));
        }
        Ok(())
    }
}
