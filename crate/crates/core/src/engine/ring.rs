use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use super::cell::compute_cell;
use crate::algebra::Element;
use crate::complex::tuple::{canonicalize_by, extraction_sign};
use crate::complex::{Cochain, CochainKey, Complex, Module};
use crate::error::{Error, Result};
use crate::linalg::{row_reduce, solve, CoboundarySystem, SparseMatrix, SparseVec};
use crate::rational::{format_q, Q};

/// Whether `d c = 0`.
pub fn verify_cocycle(cx: &Complex, c: &Cochain) -> Result<bool> {
    Ok(cx.apply_differential(c)?.is_zero())
}

/// A `(k−1)`-cochain `w` with `d w = c`, or `None` when `c` is not a
/// coboundary.
pub fn is_coboundary(cx: &Complex, c: &Cochain) -> Result<Option<Cochain>> {
    if !verify_cocycle(cx, c)? {
        return Err(Error::Precondition(format!("not a cocycle: {c}")));
    }
    let (k, g) = (c.degree(), c.weight());
    if c.is_zero() {
        return Ok(Some(Cochain::zero(*c.spec(), c.module(), k.saturating_sub(1), g)));
    }
    if k == 0 {
        return Ok(None);
    }
    let b = cx.differential(k - 1, g)?;
    let x = cx.coordinates(c)?;
    solve(&b, &x).map(|t| cx.cochain(k - 1, g, &t)).transpose()
}

/// Product of two trivial-coefficient cochains.
///
/// `(c1 ⌣ c2)(X) = Σ_S ε(S) c1(X_S) c2(X_T)` over the `k1`-element position
/// subsets `S` of `X`, where `T` is the complement and `ε(S)` the sign of
/// moving `X_S` to the front.
pub fn cup_product(c1: &Cochain, c2: &Cochain) -> Result<Cochain> {
    if c1.module() != Module::Trivial || c2.module() != Module::Trivial {
        return Err(Error::Unsupported("cup products need trivial coefficients".into()));
    }
    if c1.spec() != c2.spec() {
        return Err(Error::Precondition(format!(
            "cochains over different algebras: {} vs {}",
            c1.spec(),
            c2.spec()
        )));
    }
    let (k1, k2) = (c1.degree(), c2.degree());
    let mut out = Cochain::zero(*c1.spec(), Module::Trivial, k1 + k2, c1.weight() + c2.weight());
    let mut candidates: BTreeSet<Vec<Element>> = BTreeSet::new();
    for (t1, _) in c1.terms() {
        for (t2, _) in c2.terms() {
            let mut x: Vec<Element> = t1.args.iter().chain(&t2.args).cloned().collect();
            if canonicalize_by(&mut x, Element::parity) != 0 {
                candidates.insert(x);
            }
        }
    }
    let subsets = k_subsets(k1 + k2, k1);
    for x in candidates {
        let parities: Vec<u8> = x.iter().map(Element::parity).collect();
        let mut value = Q::zero();
        for s in &subsets {
            let (left, right): (Vec<Element>, Vec<Element>) = {
                let mut l = Vec::with_capacity(k1);
                let mut r = Vec::with_capacity(k2);
                let mut it = s.iter().peekable();
                for (pos, e) in x.iter().enumerate() {
                    if it.peek() == Some(&&pos) {
                        it.next();
                        l.push(e.clone());
                    } else {
                        r.push(e.clone());
                    }
                }
                (l, r)
            };
            let a = c1.evaluate(&left, None);
            if a.is_zero() {
                continue;
            }
            let b = c2.evaluate(&right, None);
            if b.is_zero() {
                continue;
            }
            let term = a * b;
            if extraction_sign(&parities, s) < 0 {
                value -= term;
            } else {
                value += term;
            }
        }
        out.insert_canonical(CochainKey { args: x, value: None }, value);
    }
    Ok(out)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Outcome of comparing two cocycles modulo coboundaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// Both are coboundaries.
    BothCoboundaries,
    /// `c1 − λ c2` is a coboundary for this nonzero `λ`.
    Proportional(Q),
    Independent,
}

impl Comparison {
    pub fn equal(&self) -> bool {
        !matches!(self, Comparison::Independent)
    }

    pub fn scalar(&self) -> Option<&Q> {
        match self {
            Comparison::Proportional(l) => Some(l),
            _ => None,
        }
    }
}

/// Classifies cochains of one cell modulo coboundaries.
pub struct ClassMap<'a> {
    cx: &'a Complex,
    degree: usize,
    grade: i64,
    system: CoboundarySystem,
}

impl<'a> ClassMap<'a> {
    pub fn new(cx: &'a Complex, degree: usize, grade: i64) -> Result<Self> {
        let b = if degree == 0 {
            SparseMatrix::zero(cx.cell(0, grade)?.len(), 0)
        } else {
            (*cx.differential(degree - 1, grade)?).clone()
        };
        Ok(ClassMap {
            cx,
            degree,
            grade,
            system: CoboundarySystem::new(&b),
        })
    }

    /// Coordinates of the class of `c`; zero exactly for coboundaries.
    pub fn class_of(&self, c: &Cochain) -> Result<SparseVec> {
        if (c.degree(), c.weight()) != (self.degree, self.grade) {
            return Err(Error::Precondition(format!(
                "cochain of cell ({}, {}) given to the class map of ({}, {})",
                c.degree(),
                c.weight(),
                self.degree,
                self.grade
            )));
        }
        Ok(self.system.project(&self.cx.coordinates(c)?))
    }
}

/// Whether `c1 − λ c2` is a coboundary for some nonzero `λ`.
pub fn equal_mod_coboundaries(cx: &Complex, c1: &Cochain, c2: &Cochain) -> Result<Comparison> {
    c1.check_same_cell(c2)?;
    for c in [c1, c2] {
        if !verify_cocycle(cx, c)? {
            return Err(Error::Precondition(format!("not a cocycle: {c}")));
        }
    }
    let classes = ClassMap::new(cx, c1.degree(), c1.weight())?;
    let (y1, y2) = (classes.class_of(c1)?, classes.class_of(c2)?);
    Ok(compare_classes(&y1, &y2))
}

fn compare_classes(y1: &SparseVec, y2: &SparseVec) -> Comparison {
    match (y1.is_empty(), y2.is_empty()) {
        (true, true) => Comparison::BothCoboundaries,
        (false, false) => {
            if y1.len() != y2.len() || y1.iter().zip(y2).any(|(a, b)| a.0 != b.0) {
                return Comparison::Independent;
            }
            let lambda = &y1[0].1 / &y2[0].1;
            if y1.iter().zip(y2).all(|(a, b)| a.1 == &lambda * &b.1) {
                Comparison::Proportional(lambda)
            } else {
                Comparison::Independent
            }
        }
        _ => Comparison::Independent,
    }
}

/// Result of matching a cochain written in another sign convention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipMatch {
    /// Basis elements whose sign had to be reversed.
    pub flipped: Vec<Element>,
    pub comparison: Comparison,
}

/// Looks for a sign reversal `e ↦ −e` on a subset of the basis elements in
/// the support of `foreign` that turns it into a cocycle cohomologous (with
/// a free scalar) to `reference`. Smaller subsets are tried first; the first
/// support element is never flipped since that only rescales.
pub fn equal_up_to_sign_flips(cx: &Complex, foreign: &Cochain, reference: &Cochain) -> Result<Option<FlipMatch>> {
    const MAX_SUPPORT: usize = 20;
    foreign.check_same_cell(reference)?;
    if !verify_cocycle(cx, reference)? {
        return Err(Error::Precondition(format!("not a cocycle: {reference}")));
    }
    let support: Vec<Element> = foreign
        .terms()
        .flat_map(|(k, _)| k.args.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if support.len() > MAX_SUPPORT {
        return Err(Error::Unsupported(format!(
            "sign-flip search over {} elements exceeds the limit of {MAX_SUPPORT}",
            support.len()
        )));
    }
    let classes = ClassMap::new(cx, reference.degree(), reference.weight())?;
    let target = classes.class_of(reference)?;
    let free = support.len().saturating_sub(1);
    let mut masks: Vec<u32> = (0..1u32 << free).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let flipped: Vec<Element> = (0..free)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| support[i + 1].clone())
            .collect();
        let mut candidate = Cochain::zero(*foreign.spec(), foreign.module(), foreign.degree(), foreign.weight());
        for (key, c) in foreign.terms() {
            let odd_flips = key.args.iter().filter(|e| flipped.contains(e)).count() % 2 == 1;
            candidate.insert_canonical(key.clone(), if odd_flips { -c.clone() } else { c.clone() });
        }
        if !verify_cocycle(cx, &candidate)? {
            continue;
        }
        let comparison = compare_classes(&classes.class_of(&candidate)?, &target);
        if comparison.equal() {
            return Ok(Some(FlipMatch { flipped, comparison }));
        }
    }
    Ok(None)
}

/// A product of generators, e.g. `a^2 c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeMonomial {
    pub label: String,
    pub exponents: Vec<usize>,
    pub degree: usize,
    pub grade: i64,
    pub is_cocycle: bool,
    pub is_coboundary: bool,
}

/// A linear combination of monomials that is a coboundary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeRelation {
    pub degree: usize,
    pub grade: i64,
    /// `(monomial label, coefficient)` pairs.
    pub terms: Vec<(String, String)>,
}

impl ProbeRelation {
    pub fn involves(&self, labels: &[&str]) -> bool {
        labels.iter().all(|l| self.terms.iter().any(|(t, _)| t == l)) && self.terms.len() == labels.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbeCell {
    pub degree: usize,
    pub grade: i64,
    pub dim_h: usize,
    /// Dimension of the span of the generator monomials in `H`.
    pub generated: usize,
    pub monomials: Vec<String>,
}

impl ProbeCell {
    pub fn covered(&self) -> bool {
        self.generated == self.dim_h
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingProbeResult {
    pub monomials: Vec<ProbeMonomial>,
    pub cells: Vec<ProbeCell>,
    pub relations: Vec<ProbeRelation>,
}

impl RingProbeResult {
    /// Cells whose cohomology is larger than what the generators span.
    pub fn uncovered(&self) -> impl Iterator<Item = &ProbeCell> {
        self.cells.iter().filter(|c| !c.covered())
    }
}

/// Multiplies generators up to total degree `degree_cap` and compares the
/// span of the products with the cohomology of each cell in the grade window.
pub fn ring_probe(
    cx: &Complex,
    generators: &[(String, Cochain)],
    degree_cap: usize,
    grades: std::ops::RangeInclusive<i64>,
) -> Result<RingProbeResult> {
    for (name, g) in generators {
        if g.degree() == 0 {
            return Err(Error::Precondition(format!("generator {name} has degree 0")));
        }
        if !verify_cocycle(cx, g)? {
            return Err(Error::Precondition(format!("generator {name} is not a cocycle")));
        }
    }
    // exponent vectors with total degree in 1..=cap
    let mut exponent_vectors: Vec<Vec<usize>> = vec![vec![0; generators.len()]];
    for (i, (_, g)) in generators.iter().enumerate() {
        let mut next = Vec::new();
        for e in &exponent_vectors {
            let used: usize = e.iter().zip(generators).map(|(n, (_, c))| n * c.degree()).sum();
            let mut e2 = e.clone();
            let mut deg = used;
            loop {
                next.push(e2.clone());
                deg += g.degree();
                if deg > degree_cap {
                    break;
                }
                e2[i] += 1;
            }
        }
        exponent_vectors = next;
    }
    let unit = Cochain::unit(*cx.spec());
    let mut by_cell: BTreeMap<(usize, i64), Vec<(ProbeMonomial, Cochain)>> = BTreeMap::new();
    let mut monomials = Vec::new();
    for e in exponent_vectors {
        if e.iter().all(|&n| n == 0) {
            continue;
        }
        let degree: usize = e.iter().zip(generators).map(|(n, (_, c))| n * c.degree()).sum();
        let grade: i64 = e.iter().zip(generators).map(|(&n, (_, c))| n as i64 * c.weight()).sum();
        if !grades.contains(&grade) {
            continue;
        }
        let mut product = unit.clone();
        for (n, (_, g)) in e.iter().zip(generators) {
            for _ in 0..*n {
                product = cup_product(&product, g)?;
            }
        }
        let label = monomial_label(&e, generators);
        let is_cocycle = verify_cocycle(cx, &product)?;
        if !is_cocycle {
            return Err(Error::Consistency(format!(
                "product {label} of cocycles is not a cocycle"
            )));
        }
        let m = ProbeMonomial {
            label,
            exponents: e,
            degree,
            grade,
            is_cocycle,
            is_coboundary: false,
        };
        by_cell.entry((degree, grade)).or_default().push((m, product));
    }

    let mut cells = Vec::new();
    let mut relations = Vec::new();
    for k in 1..=degree_cap {
        for g in grades.clone() {
            let products = by_cell.remove(&(k, g)).unwrap_or_default();
            if products.is_empty() && !cx.covers(k + 1, g) {
                continue;
            }
            let dim_h = compute_cell(cx, k, g)?.dim_h;
            if products.is_empty() {
                if dim_h > 0 {
                    cells.push(ProbeCell {
                        degree: k,
                        grade: g,
                        dim_h,
                        generated: 0,
                        monomials: vec![],
                    });
                }
                continue;
            }
            let classes = ClassMap::new(cx, k, g)?;
            let mut ys = Vec::with_capacity(products.len());
            let mut labels = Vec::with_capacity(products.len());
            for (mut m, c) in products {
                let y = classes.class_of(&c)?;
                m.is_coboundary = y.is_empty();
                labels.push(m.label.clone());
                monomials.push(m);
                ys.push(y);
            }
            // columns = monomials; the nullspace lists the relations
            let width = ys.iter().flat_map(|y| y.iter().map(|(c, _)| c + 1)).max().unwrap_or(0);
            let mut rows: Vec<Vec<(usize, Q)>> = vec![Vec::new(); width];
            for (j, y) in ys.iter().enumerate() {
                for (r, v) in y {
                    rows[*r].push((j, v.clone()));
                }
            }
            let m = SparseMatrix::from_rows(ys.len(), rows)?;
            let ech = row_reduce(&m);
            for rel in ech.nullspace() {
                let lead = rel[0].1.clone();
                relations.push(ProbeRelation {
                    degree: k,
                    grade: g,
                    terms: rel
                        .iter()
                        .map(|(j, v)| (labels[*j].clone(), format_q(&(v / &lead))))
                        .collect(),
                });
            }
            cells.push(ProbeCell {
                degree: k,
                grade: g,
                dim_h,
                generated: ech.rank(),
                monomials: labels,
            });
        }
    }
    Ok(RingProbeResult {
        monomials,
        cells,
        relations,
    })
}

fn monomial_label(exponents: &[usize], generators: &[(String, Cochain)]) -> String {
    exponents
        .iter()
        .zip(generators)
        .filter(|(n, _)| **n > 0)
        .map(|(n, (name, _))| if *n == 1 { name.clone() } else { format!("{name}^{n}") })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Super-commutativity sign `(−1)^{k1 k2 + p1 p2}` for cochains of degrees
/// `k1, k2` and map parities `p1, p2`.
pub fn commutation_sign(k1: usize, p1: u8, k2: usize, p2: u8) -> Q {
    if (k1 * k2 + (p1 * p2) as usize).is_multiple_of(2) {
        Q::one()
    } else {
        -Q::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::rational::int;

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(k_subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(k_subsets(2, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn unit_is_neutral() {
        let spec: AlgebraSpec = "SH(0|4)".parse().unwrap();
        let a = Cochain::from_terms(spec, &[(&["U_1", "U_1"], int(1)), (&["U_2", "U_3"], int(2))]).unwrap();
        let one = Cochain::unit(spec);
        assert_eq!(cup_product(&one, &a).unwrap(), a);
        assert_eq!(cup_product(&a, &one).unwrap(), a);
    }

    #[test]
    fn coboundary_witness() {
        let spec: AlgebraSpec = "SH(0|4)".parse().unwrap();
        let cx = Complex::new(spec, Module::Trivial, 3, 0);
        let w = Cochain::from_terms(spec, &[(&["U_1 U_2"], int(1)), (&["U_3 U_4"], int(-3))]).unwrap();
        let c = cx.apply_differential(&w).unwrap();
        let t = is_coboundary(&cx, &c).unwrap().expect("witness");
        assert_eq!(cx.apply_differential(&t).unwrap(), c);
        let zero = Cochain::zero(spec, Module::Trivial, 2, 0);
        assert!(is_coboundary(&cx, &zero).unwrap().unwrap().is_zero());
    }

    #[test]
    fn comparison_of_classes() {
        let y = vec![(0, int(2)), (3, int(4))];
        let y2 = vec![(0, int(1)), (3, int(2))];
        assert_eq!(compare_classes(&y, &y2), Comparison::Proportional(int(2)));
        assert_eq!(compare_classes(&y, &vec![(0, int(1))]), Comparison::Independent);
        assert_eq!(compare_classes(&vec![], &vec![]), Comparison::BothCoboundaries);
        assert_eq!(compare_classes(&vec![], &y), Comparison::Independent);
    }
}
