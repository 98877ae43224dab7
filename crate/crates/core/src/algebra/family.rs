//! The algebra families `Po`, `H`, `SH` and their grading-element extensions.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::monomial::{Monomial, VariableSpec};
use super::polynomial::{bracket_monomials, SuperPolynomial};
use crate::error::{Error, Result};
use crate::rational::{int, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// Poisson algebra: all generating functions, constants included.
    Po,
    /// Hamiltonian algebra: `Po` modulo constants.
    H,
    /// Special Hamiltonian algebra `SH(0|m)`: degrees `1..m-1`.
    SH,
    PoHat,
    HHat,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Po => "Po",
            Family::H => "H",
            Family::SH => "SH",
            Family::PoHat => "PoHat",
            Family::HHat => "HHat",
        }
    }

    pub fn has_grading_element(&self) -> bool {
        matches!(self, Family::PoHat | Family::HHat)
    }

    fn keeps_constants(&self) -> bool {
        matches!(self, Family::Po | Family::PoHat)
    }
}

/// A family together with its variables, e.g. `SH(0|4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraSpec {
    family: Family,
    vars: VariableSpec,
}

impl AlgebraSpec {
    pub fn new(family: Family, n: usize, m: usize) -> Result<Self> {
        let vars = VariableSpec::new(n, m)?;
        if family == Family::SH && (n != 0 || m < 3) {
            return Err(Error::SpecParse {
                input: format!("SH({}|{})", 2 * n, m),
                reason: "SH requires n = 0 and m >= 3".into(),
            });
        }
        Ok(AlgebraSpec { family, vars })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn vars(&self) -> &VariableSpec {
        &self.vars
    }

    pub fn is_finite(&self) -> bool {
        self.vars.n() == 0
    }

    /// Lowest weight carrying basis elements.
    pub fn min_weight(&self) -> i64 {
        if self.family.keeps_constants() {
            -2
        } else {
            -1
        }
    }

    /// Highest weight carrying basis elements, `None` for infinite families.
    pub fn max_weight(&self) -> Option<i64> {
        if !self.is_finite() {
            return None;
        }
        let m = self.vars.m() as i64;
        let top = match self.family {
            Family::SH => m - 3,
            _ => m - 2,
        };
        // a hat family always has G at weight 0
        Some(if self.family.has_grading_element() {
            top.max(0)
        } else {
            top
        })
    }

    /// Smallest weight sum of `count` cochain arguments, where even elements
    /// appear at most once and odd ones any number of times. `None` when a
    /// finite algebra has too few elements.
    pub fn min_tuple_weight(&self, count: usize) -> Option<i64> {
        let mut left = count;
        let mut sum = 0;
        let mut w = self.min_weight();
        while left > 0 {
            if self.max_weight().is_some_and(|top| w > top) {
                return None;
            }
            let elements = self.basis_at(w);
            if elements.iter().any(Element::is_odd) {
                return Some(sum + w * left as i64);
            }
            let take = left.min(elements.len());
            sum += w * take as i64;
            left -= take;
            w += 1;
        }
        Some(sum)
    }

    /// Whether a monomial is a basis element of this family.
    pub fn contains_monomial(&self, mono: &Monomial) -> bool {
        if mono.exponents().len() != self.vars.even_count() || mono.mask() & !self.vars.full_mask() != 0 {
            return false;
        }
        let degree = mono.degree() as usize;
        match self.family {
            Family::Po | Family::PoHat => true,
            Family::H | Family::HHat => degree >= 1,
            Family::SH => degree >= 1 && degree < self.vars.m(),
        }
    }

    pub fn contains(&self, element: &Element) -> bool {
        match element {
            Element::Mono(m) => self.contains_monomial(m),
            Element::Grading => self.family.has_grading_element(),
        }
    }

    /// Drops the components the family quotients out.
    pub fn project(&self, poly: &mut SuperPolynomial) {
        if !self.family.keeps_constants() {
            poly.remove(&Monomial::one(&self.vars));
        }
        if self.family == Family::SH {
            poly.remove(&Monomial::new(vec![], self.vars.full_mask()));
        }
    }

    /// Basis elements of the given weight in deterministic order.
    pub fn basis_at(&self, weight: i64) -> Vec<Element> {
        let mut out: Vec<Element> = monomials_of_degree(&self.vars, weight + 2)
            .into_iter()
            .filter(|m| self.contains_monomial(m))
            .map(Element::Mono)
            .collect();
        if weight == 0 && self.family.has_grading_element() {
            out.push(Element::Grading);
        }
        out
    }

    /// Bracket of two basis elements, projected into the family.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Vec<(Element, Q)>> {
        for e in [x, y] {
            if !self.contains(e) {
                return Err(Error::not_in_basis_of(e, self));
            }
        }
        Ok(match (x, y) {
            (Element::Grading, Element::Grading) => vec![],
            (Element::Grading, other) => scaled_by_weight(other, 1),
            (other, Element::Grading) => scaled_by_weight(other, -1),
            (Element::Mono(a), Element::Mono(b)) => {
                let mut poly = bracket_monomials(&self.vars, a, b);
                self.project(&mut poly);
                poly.terms()
                    .map(|(m, c)| (Element::Mono(m.clone()), c.clone()))
                    .collect()
            }
        })
    }

    /// Bilinear extension of [`AlgebraSpec::bracket`] to combinations.
    pub fn bracket_combinations(&self, x: &[(Element, Q)], y: &[(Element, Q)]) -> Result<Vec<(Element, Q)>> {
        let mut acc: std::collections::BTreeMap<Element, Q> = Default::default();
        for (a, ca) in x {
            for (b, cb) in y {
                for (e, c) in self.bracket(a, b)? {
                    let slot = acc.entry(e).or_insert_with(Q::zero);
                    *slot += c * ca * cb;
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn parse_element(&self, input: &str) -> Result<Element> {
        let element = if input.trim() == "G" {
            Element::Grading
        } else {
            Element::Mono(Monomial::parse(&self.vars, input)?)
        };
        if !self.contains(&element) {
            return Err(Error::not_in_basis_of(&element, self));
        }
        Ok(element)
    }

    pub fn element_name(&self, element: &Element) -> String {
        match element {
            Element::Grading => "G".to_string(),
            Element::Mono(m) => m.display(&self.vars).to_string(),
        }
    }
}

impl Error {
    fn not_in_basis_of(element: &Element, spec: &AlgebraSpec) -> Self {
        Error::NotInBasis(format!("{} (in {spec})", spec.element_name(element)))
    }
}

fn scaled_by_weight(x: &Element, sign: i64) -> Vec<(Element, Q)> {
    let w = x.weight() * sign;
    if w == 0 {
        vec![]
    } else {
        vec![(x.clone(), int(w))]
    }
}

/// All monomials of the given total degree, sorted.
pub fn monomials_of_degree(vars: &VariableSpec, degree: i64) -> Vec<Monomial> {
    if degree < 0 {
        return vec![];
    }
    let degree = degree as u32;
    let slots = vars.even_count();
    let mut out = Vec::new();
    for odd in 0..=vars.m().min(degree as usize) {
        let even_degree = degree - odd as u32;
        if slots == 0 && even_degree > 0 {
            continue;
        }
        let masks = masks_with_popcount(vars.m(), odd);
        for exps in compositions(even_degree, slots) {
            for &mask in &masks {
                out.push(Monomial::new(exps.clone(), mask));
            }
        }
    }
    out.sort();
    out
}

fn masks_with_popcount(m: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, m: usize, left: usize, acc: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..m {
            if m - i < left {
                break;
            }
            rec(i + 1, m, left - 1, acc | (1 << i), out);
        }
    }
    rec(0, m, k, 0, &mut out);
    out.sort_unstable();
    out
}

fn compositions(total: u32, slots: usize) -> Vec<Vec<u32>> {
    if slots == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; slots];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
    }
    rec(0, total, &mut cur, &mut out);
    out
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({}|{})", self.family.name(), 2 * self.vars.n(), self.vars.m())
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    /// Parses `Po(2n|m)`, `H(2n|m)`, `SH(0|m)`, `PoHat(2n|m)`, `HHat(2n|m)`,
    /// case-insensitively.
    fn from_str(input: &str) -> Result<Self> {
        let err = |reason: &str| Error::SpecParse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let open = compact.find('(').ok_or_else(|| err("expected `Family(2n|m)`"))?;
        if !compact.ends_with(')') {
            return Err(err("expected closing `)`"));
        }
        let family = match compact[..open].to_ascii_lowercase().as_str() {
            "po" => Family::Po,
            "h" => Family::H,
            "sh" => Family::SH,
            "pohat" => Family::PoHat,
            "hhat" => Family::HHat,
            other => return Err(err(&format!("unknown family `{other}`"))),
        };
        let inner = &compact[open + 1..compact.len() - 1];
        let (even, odd) = inner
            .split_once('|')
            .ok_or_else(|| err("expected `2n|m` inside parentheses"))?;
        let even: usize = even.parse().map_err(|_| err("even dimension is not a number"))?;
        let odd: usize = odd.parse().map_err(|_| err("odd dimension is not a number"))?;
        if !even.is_multiple_of(2) {
            return Err(err("even dimension must be even (2n)"));
        }
        AlgebraSpec::new(family, even / 2, odd).map_err(|e| match e {
            Error::SpecParse { reason, .. } => err(&reason),
            other => other,
        })
    }
}

/// A basis element: a monomial, or the grading element `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Mono(Monomial),
    Grading,
}

impl Element {
    pub fn weight(&self) -> i64 {
        match self {
            Element::Mono(m) => m.weight(),
            Element::Grading => 0,
        }
    }

    pub fn parity(&self) -> u8 {
        match self {
            Element::Mono(m) => m.parity(),
            Element::Grading => 0,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == 1
    }
}

/// Basis order: weight, then monomial order, with `G` last in weight 0.
impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight().cmp(&other.weight()).then_with(|| match (self, other) {
            (Element::Mono(a), Element::Mono(b)) => a.cmp(b),
            (Element::Mono(_), Element::Grading) => Ordering::Less,
            (Element::Grading, Element::Mono(_)) => Ordering::Greater,
            (Element::Grading, Element::Grading) => Ordering::Equal,
        })
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Grading => f.write_str("G"),
            Element::Mono(m) => {
                // without the variable spec, infer n from the exponent count
                let n = m.exponents().len() / 2;
                let vars = VariableSpec::new(n, 64).expect("valid");
                write!(f, "{}", m.display(&vars))
            }
        }
    }
}
