//! Invariant suites behind the `check` command.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::cell::{compute_cell, CellComputation};
use super::ring::cup_product;
use crate::algebra::{AlgebraSpec, Basis, Element};
use crate::complex::{Cochain, Complex, Module};
use crate::error::{Error, Result};
use crate::linalg::SparseVec;
use crate::rational::{int, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, failures: &[String], checked: usize, what: &str) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{checked} {what} checked")
        } else {
            format!("{} of {checked} {what} failed; first: {}", failures.len(), failures[0])
        };
        CheckOutcome {
            name: name.into(),
            passed,
            detail,
        }
    }
}

type Combination = Vec<(Element, Q)>;

fn combine(parts: &[(&Combination, i64)]) -> BTreeMap<Element, Q> {
    let mut acc: BTreeMap<Element, Q> = BTreeMap::new();
    for (part, sign) in parts {
        for (e, c) in part.iter() {
            *acc.entry(e.clone()).or_insert_with(Q::zero) += c * int(*sign);
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

fn koszul(px: u8, py: u8) -> i64 {
    if px == 1 && py == 1 {
        -1
    } else {
        1
    }
}

/// `[x,y] + (−1)^{p(x)p(y)}[y,x]`, which must vanish.
fn skew_defect(spec: &AlgebraSpec, x: &Combination, y: &Combination, px: u8, py: u8) -> Result<BTreeMap<Element, Q>> {
    let xy = spec.bracket_combinations(x, y)?;
    let yx = spec.bracket_combinations(y, x)?;
    Ok(combine(&[(&xy, 1), (&yx, koszul(px, py))]))
}

/// `[x,[y,z]] − [[x,y],z] − (−1)^{p(x)p(y)}[y,[x,z]]`, which must vanish.
fn jacobi_defect(
    spec: &AlgebraSpec,
    (x, px): (&Combination, u8),
    (y, py): (&Combination, u8),
    z: &Combination,
) -> Result<BTreeMap<Element, Q>> {
    let yz = spec.bracket_combinations(y, z)?;
    let lhs = spec.bracket_combinations(x, &yz)?;
    let xy = spec.bracket_combinations(x, y)?;
    let first = spec.bracket_combinations(&xy, z)?;
    let xz = spec.bracket_combinations(x, z)?;
    let second = spec.bracket_combinations(y, &xz)?;
    Ok(combine(&[(&lhs, 1), (&first, -1), (&second, -koszul(px, py))]))
}

/// Super skew-symmetry on all pairs and Jacobi on all triples of a finite
/// algebra's basis.
pub fn skew_and_jacobi_exhaustive(spec: &AlgebraSpec) -> Result<Vec<CheckOutcome>> {
    let basis = Basis::full(*spec)?;
    let single: Vec<(Combination, u8)> = basis
        .elements()
        .iter()
        .map(|e| (vec![(e.clone(), int(1))], e.parity()))
        .collect();
    let mut skew_fail = Vec::new();
    let mut jacobi_fail = Vec::new();
    for (x, px) in &single {
        for (y, py) in &single {
            if !skew_defect(spec, x, y, *px, *py)?.is_empty() {
                skew_fail.push(format!(
                    "[{}, {}]",
                    spec.element_name(&x[0].0),
                    spec.element_name(&y[0].0)
                ));
            }
            for (z, _) in &single {
                if !jacobi_defect(spec, (x, *px), (y, *py), z)?.is_empty() {
                    jacobi_fail.push(format!(
                        "({}, {}, {})",
                        spec.element_name(&x[0].0),
                        spec.element_name(&y[0].0),
                        spec.element_name(&z[0].0)
                    ));
                }
            }
        }
    }
    let n = single.len();
    Ok(vec![
        CheckOutcome::new(format!("skew-symmetry {spec}"), &skew_fail, n * n, "pairs"),
        CheckOutcome::new(format!("Jacobi {spec}"), &jacobi_fail, n * n * n, "triples"),
    ])
}

/// Random homogeneous combination of up to three basis elements of one
/// weight and parity.
fn random_element(basis: &Basis, rng: &mut ChaCha8Rng) -> (Combination, u8) {
    let weights: Vec<i64> = (basis.min_weight()..=basis.max_weight())
        .filter(|&w| !basis.ids_of_weight(w).is_empty())
        .collect();
    let w = *weights.choose(rng).expect("nonempty basis");
    let ids: Vec<u32> = basis.ids_of_weight(w).collect();
    let parity = basis.parity(*ids.choose(rng).expect("nonempty weight"));
    let same: Vec<u32> = ids.into_iter().filter(|&i| basis.parity(i) == parity).collect();
    let terms = rng.gen_range(1..=3.min(same.len()));
    let mut picked: Vec<u32> = same.choose_multiple(rng, terms).copied().collect();
    picked.sort_unstable();
    let combo = picked
        .into_iter()
        .map(|id| {
            let c = loop {
                let v: i64 = rng.gen_range(-5..=5);
                if v != 0 {
                    break v;
                }
            };
            (basis.element(id).clone(), int(c))
        })
        .collect();
    (combo, parity)
}

/// Skew-symmetry and Jacobi on random triples drawn from a weight window.
pub fn skew_and_jacobi_random(
    spec: &AlgebraSpec,
    window: (i64, i64),
    samples: usize,
    seed: u64,
) -> Result<Vec<CheckOutcome>> {
    let basis = Basis::new(*spec, window.1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut skew_fail = Vec::new();
    let mut jacobi_fail = Vec::new();
    for i in 0..samples {
        let (x, px) = random_element(&basis, &mut rng);
        let (y, py) = random_element(&basis, &mut rng);
        let (z, _) = random_element(&basis, &mut rng);
        if !skew_defect(spec, &x, &y, px, py)?.is_empty() {
            skew_fail.push(format!("sample {i}"));
        }
        if !jacobi_defect(spec, (&x, px), (&y, py), &z)?.is_empty() {
            jacobi_fail.push(format!("sample {i}"));
        }
    }
    Ok(vec![
        CheckOutcome::new(format!("skew-symmetry {spec} (random)"), &skew_fail, samples, "pairs"),
        CheckOutcome::new(format!("Jacobi {spec} (random)"), &jacobi_fail, samples, "triples"),
    ])
}

/// `d_k ∘ d_{k−1} = 0` on every listed cell.
pub fn d_squared(cx: &Complex, degrees: RangeInclusive<usize>, grades: RangeInclusive<i64>) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in degrees.clone() {
        for g in grades.clone() {
            checked += 1;
            let next = cx.differential(k, g)?;
            if k == 0 {
                continue;
            }
            let prev = cx.differential(k - 1, g)?;
            if !next.mul(&prev)?.is_zero() {
                failures.push(format!("({k}, {g})"));
            }
        }
    }
    Ok(CheckOutcome::new(
        format!("d∘d = 0 {} {}, k {:?}, g {:?}", cx.spec(), cx.module(), degrees, grades),
        &failures,
        checked,
        "cells",
    ))
}

/// Cohomology of every cell in a grid, computed in parallel. Consistency
/// failures of the quotient procedure are kept per cell rather than aborting.
#[derive(Debug)]
pub struct CellSweep {
    pub label: String,
    pub cells: BTreeMap<(usize, i64), std::result::Result<CellComputation, String>>,
}

pub fn sweep(cx: &Complex, degrees: RangeInclusive<usize>, grades: RangeInclusive<i64>) -> Result<CellSweep> {
    let coords: Vec<(usize, i64)> = degrees
        .clone()
        .flat_map(|k| grades.clone().map(move |g| (k, g)))
        .collect();
    let results = coords
        .par_iter()
        .map(|&(k, g)| match compute_cell(cx, k, g) {
            Ok(c) => Ok(((k, g), Ok(c))),
            Err(Error::Consistency(msg)) => Ok(((k, g), Err(msg))),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CellSweep {
        label: format!("{} {}, k {:?}, g {:?}", cx.spec(), cx.module(), degrees, grades),
        cells: results.into_iter().collect(),
    })
}

impl CellSweep {
    pub fn dim(&self, k: usize, g: i64) -> Option<usize> {
        self.cells.get(&(k, g))?.as_ref().ok().map(|c| c.dim_h)
    }
}

/// `dim H = dim ker Z − rank b` in every swept cell; the quotient procedure
/// aborts on mismatch, which is reported as a failure here.
pub fn dimension_formula(sweep: &CellSweep) -> CheckOutcome {
    let mut failures = Vec::new();
    for ((k, g), cell) in &sweep.cells {
        match cell {
            Ok(c) if c.dim_h + c.rank_b + c.rank_z == c.dim_c => {}
            Ok(c) => failures.push(format!(
                "({k}, {g}): dim H {} vs {} - {} - {}",
                c.dim_h, c.dim_c, c.rank_z, c.rank_b
            )),
            Err(msg) => failures.push(format!("({k}, {g}): {msg}")),
        }
    }
    CheckOutcome::new(
        format!("dim H = dim ker Z - rank b, {}", sweep.label),
        &failures,
        sweep.cells.len(),
        "cells",
    )
}

/// Euler characteristic through degree `top` at each grade:
/// `Σ_{k≤K} (−1)^k dim C^k = Σ_{k≤K} (−1)^k dim H^k + (−1)^K rank d_K`.
///
/// Cells of algebras with odd elements never vanish in high degree, so the
/// sum is truncated and the boundary term `rank d_K` closes the identity.
/// The sweep must cover degrees `0..=top`.
pub fn euler_characteristic(sweep: &CellSweep, top: usize, grades: RangeInclusive<i64>) -> CheckOutcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for g in grades.clone() {
        checked += 1;
        let (mut chi_c, mut chi_h) = (0i64, 0i64);
        let mut rank_top = 0;
        let mut missing = false;
        for k in 0..=top {
            let Some(Ok(c)) = sweep.cells.get(&(k, g)) else {
                missing = true;
                break;
            };
            let s = if k % 2 == 0 { 1 } else { -1 };
            chi_c += s * c.dim_c as i64;
            chi_h += s * c.dim_h as i64;
            rank_top = c.rank_z;
        }
        if missing {
            failures.push(format!("g = {g}: cell missing from sweep"));
            continue;
        }
        let boundary = if top.is_multiple_of(2) {
            rank_top as i64
        } else {
            -(rank_top as i64)
        };
        if chi_c != chi_h + boundary {
            failures.push(format!("g = {g}: {chi_c} vs {chi_h} + {boundary}"));
        }
    }
    CheckOutcome::new(
        format!("Euler characteristic through k = {top}, {}", sweep.label),
        &failures,
        checked,
        "grades",
    )
}

/// A random cochain in cell `(k, g)` with at most `terms` terms.
pub fn random_cochain(cx: &Complex, k: usize, g: i64, terms: usize, rng: &mut impl Rng) -> Result<Cochain> {
    let cell = cx.cell(k, g)?;
    if cell.is_empty() {
        return Ok(Cochain::zero(*cx.spec(), cx.module(), k, g));
    }
    let mut v: Vec<(usize, Q)> = (0..terms)
        .map(|_| {
            let num: i64 = rng.gen_range(-4..=4);
            let den: i64 = rng.gen_range(1..=3);
            (rng.gen_range(0..cell.len()), Q::new(num.into(), den.into()))
        })
        .collect();
    v.sort_by_key(|(c, _)| *c);
    v.dedup_by_key(|(c, _)| *c);
    let v: SparseVec = v.into_iter().filter(|(_, q)| !q.is_zero()).collect();
    cx.cochain(k, g, &v)
}

/// `d(c1 ⌣ c2) = dc1 ⌣ c2 + (−1)^{k1} c1 ⌣ dc2` on random pairs of
/// trivial-coefficient cochains with degrees in `degrees` and grades in
/// `grades`.
pub fn leibniz(
    cx: &Complex,
    pairs: usize,
    degrees: RangeInclusive<usize>,
    grades: RangeInclusive<i64>,
    seed: u64,
) -> Result<CheckOutcome> {
    if cx.module() != Module::Trivial {
        return Err(Error::Unsupported("cup products need trivial coefficients".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut nontrivial = 0;
    for i in 0..pairs {
        let (k1, k2) = (rng.gen_range(degrees.clone()), rng.gen_range(degrees.clone()));
        let (g1, g2) = (rng.gen_range(grades.clone()), rng.gen_range(grades.clone()));
        let c1 = random_cochain(cx, k1, g1, 4, &mut rng)?;
        let c2 = random_cochain(cx, k2, g2, 4, &mut rng)?;
        let product = cup_product(&c1, &c2)?;
        let lhs = cx.apply_differential(&product)?;
        let left = cup_product(&cx.apply_differential(&c1)?, &c2)?;
        let right = cup_product(&c1, &cx.apply_differential(&c2)?)?;
        let sign = if k1 % 2 == 0 { int(1) } else { int(-1) };
        let rhs = left.add_scaled(&sign, &right)?;
        if !lhs.is_zero() {
            nontrivial += 1;
        }
        if lhs != rhs {
            failures.push(format!("pair {i}: degrees ({k1}, {k2}), grades ({g1}, {g2})"));
        }
    }
    let mut outcome = CheckOutcome::new(format!("Leibniz rule {}", cx.spec()), &failures, pairs, "pairs");
    outcome
        .detail
        .push_str(&format!(" ({nontrivial} with nonzero d(c1⌣c2))"));
    Ok(outcome)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub spec: String,
    /// `(degree, grade, dim H)` for every checked off-grade cell.
    pub cells: Vec<(usize, i64, usize)>,
    /// Off-grade cells with nonzero cohomology; any entry signals a bug.
    pub violations: Vec<(usize, i64, usize)>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Cohomology of an algebra with a grading element lives in grade 0; checks
/// every `g ≠ 0` cell with `k ≤ k_max` and `g` in the window.
pub fn grading_element_vanishing_check(
    cx: &Complex,
    k_max: usize,
    grades: RangeInclusive<i64>,
) -> Result<VanishingReport> {
    if !cx.spec().family().has_grading_element() {
        return Err(Error::Precondition(format!("{} has no grading element", cx.spec())));
    }
    let mut cells = Vec::new();
    for k in 0..=k_max {
        for g in grades.clone().filter(|&g| g != 0) {
            cells.push((k, g, compute_cell(cx, k, g)?.dim_h));
        }
    }
    let violations = cells.iter().copied().filter(|c| c.2 != 0).collect();
    Ok(VanishingReport {
        spec: cx.spec().to_string(),
        cells,
        violations,
    })
}

/// A grid of cells of one algebra.
#[derive(Clone, Debug)]
pub struct Region {
    pub spec: &'static str,
    pub degrees: RangeInclusive<usize>,
    pub grades: RangeInclusive<i64>,
}

impl Region {
    const fn new(spec: &'static str, degrees: RangeInclusive<usize>, grades: RangeInclusive<i64>) -> Self {
        Region { spec, degrees, grades }
    }

    pub fn complex(&self) -> Result<Complex> {
        let spec: AlgebraSpec = self.spec.parse()?;
        Ok(Complex::new(
            spec,
            Module::Trivial,
            self.degrees.end() + 1,
            *self.grades.end(),
        ))
    }
}

/// The published tables and spot checks, as cell grids.
pub fn reference_regions() -> Vec<Region> {
    vec![
        Region::new("SH(0|4)", 0..=6, -6..=6),
        Region::new("SH(0|3)", 0..=8, -8..=2),
        Region::new("H(0|4)", 0..=6, -6..=6),
        Region::new("Po(0|4)", 0..=6, -6..=6),
        Region::new("H(2|0)", 0..=8, -4..=0),
        Region::new("Po(2|0)", 0..=8, -4..=0),
        Region::new("HHat(2|0)", 0..=8, 0..=0),
        Region::new("HHat(2|0)", 0..=4, -3..=3),
        Region::new("PoHat(2|0)", 0..=8, 0..=0),
        Region::new("PoHat(2|0)", 0..=3, -1..=1),
    ]
}

/// The full invariant suite: skew-symmetry and Jacobi, `d∘d = 0` and the
/// dimension cross-check on every reference cell, Euler characteristics,
/// the Leibniz rule, and grading-element vanishing. `report` sees each
/// outcome as soon as it is known.
pub fn standard_suite(mut report: impl FnMut(&CheckOutcome)) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let mut push = |o: CheckOutcome, out: &mut Vec<CheckOutcome>| {
        report(&o);
        out.push(o);
    };
    for o in skew_and_jacobi_exhaustive(&"Po(0|4)".parse()?)? {
        push(o, &mut out);
    }
    for o in skew_and_jacobi_random(&"Po(2|0)".parse()?, (-2, 4), 1000, 0x5eed)? {
        push(o, &mut out);
    }
    for region in reference_regions() {
        let cx = region.complex()?;
        push(d_squared(&cx, region.degrees.clone(), region.grades.clone())?, &mut out);
        let sw = sweep(&cx, region.degrees.clone(), region.grades.clone())?;
        push(dimension_formula(&sw), &mut out);
        if matches!(region.spec, "SH(0|4)" | "H(0|4)" | "Po(0|4)") {
            push(
                euler_characteristic(&sw, *region.degrees.end(), region.grades.clone()),
                &mut out,
            );
        }
        if region.spec == "SH(0|4)" {
            push(leibniz(&cx, 100, 1..=3, -2..=1, 0x1eb)?, &mut out);
        }
        if cx.spec().family().has_grading_element() && *region.grades.start() < 0 {
            let v = grading_element_vanishing_check(&cx, *region.degrees.end(), region.grades.clone())?;
            let failures: Vec<String> = v.violations.iter().map(|c| format!("{c:?}")).collect();
            push(
                CheckOutcome::new(
                    format!("grading-element vanishing {}", v.spec),
                    &failures,
                    v.cells.len(),
                    "off-grade cells",
                ),
                &mut out,
            );
        }
    }
    Ok(out)
}
