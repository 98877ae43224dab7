use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cell::Module;
use super::tuple::canonicalize_by;
use crate::algebra::{AlgebraSpec, Element};
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};

/// Canonical arguments of one cochain term, plus the value element for the
/// adjoint module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CochainKey {
    pub args: Vec<Element>,
    pub value: Option<Element>,
}

/// A homogeneous cochain: its values on canonical argument tuples.
///
/// Values on any other ordering follow from super skew-symmetry, see
/// [`Cochain::evaluate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    spec: AlgebraSpec,
    module: Module,
    degree: usize,
    weight: i64,
    terms: BTreeMap<CochainKey, Q>,
}

impl Cochain {
    pub fn zero(spec: AlgebraSpec, module: Module, degree: usize, weight: i64) -> Self {
        Cochain {
            spec,
            module,
            degree,
            weight,
            terms: BTreeMap::new(),
        }
    }

    /// The unit 0-cochain of the trivial module.
    pub fn unit(spec: AlgebraSpec) -> Self {
        let mut c = Cochain::zero(spec, Module::Trivial, 0, 0);
        c.terms.insert(
            CochainKey {
                args: vec![],
                value: None,
            },
            Q::one(),
        );
        c
    }

    /// Builds a trivial-module cochain from `(arguments, coefficient)` pairs
    /// written as element strings, e.g. `(&["U_4", "U_1 U_2 U_3"], 1)`.
    /// Degree and weight are read off the first term.
    pub fn from_terms(spec: AlgebraSpec, terms: &[(&[&str], Q)]) -> Result<Self> {
        let (first, _) = terms
            .first()
            .ok_or_else(|| Error::Precondition("at least one term is required".into()))?;
        let parsed: Vec<Vec<Element>> = terms
            .iter()
            .map(|(args, _)| args.iter().map(|a| spec.parse_element(a)).collect())
            .collect::<Result<_>>()?;
        let weight = parsed[0].iter().map(Element::weight).sum();
        let mut out = Cochain::zero(spec, Module::Trivial, first.len(), weight);
        for (args, (_, c)) in parsed.into_iter().zip(terms) {
            out.add_term(args, None, c.clone())?;
        }
        Ok(out)
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.spec
    }

    pub fn module(&self) -> Module {
        self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CochainKey, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Parity of the cochain as a map, if homogeneous.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(|k| {
            let args: u8 = k.args.iter().map(Element::parity).sum();
            (args + k.value.as_ref().map_or(0, Element::parity)) % 2
        });
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Adds `coeff · C(args)` (with value `value` in the adjoint module),
    /// reordering `args` canonically and absorbing the sign.
    pub fn add_term(&mut self, mut args: Vec<Element>, value: Option<Element>, coeff: Q) -> Result<()> {
        if args.len() != self.degree {
            return Err(Error::Precondition(format!(
                "term has {} arguments, cochain degree is {}",
                args.len(),
                self.degree
            )));
        }
        if value.is_some() != (self.module == Module::Adjoint) {
            return Err(Error::Precondition(format!(
                "{} cochains {} a value element",
                self.module,
                if self.module == Module::Adjoint {
                    "need"
                } else {
                    "take no"
                }
            )));
        }
        for e in args.iter().chain(value.iter()) {
            if !self.spec.contains(e) {
                return Err(Error::NotInBasis(self.spec.element_name(e)));
            }
        }
        let w: i64 = args.iter().map(Element::weight).sum::<i64>() - value.as_ref().map_or(0, Element::weight);
        if w != self.weight {
            return Err(Error::Precondition(format!(
                "term has weight {w}, cochain weight is {}",
                self.weight
            )));
        }
        let sign = canonicalize_by(&mut args, Element::parity);
        if sign == 0 || coeff.is_zero() {
            return Ok(());
        }
        let coeff = if sign < 0 { -coeff } else { coeff };
        let key = CochainKey { args, value };
        let slot = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    /// Value on an arbitrary argument order (trivial module), or the
    /// coefficient of `value` (adjoint module).
    pub fn evaluate(&self, args: &[Element], value: Option<&Element>) -> Q {
        let mut args = args.to_vec();
        let sign = canonicalize_by(&mut args, Element::parity);
        if sign == 0 {
            return Q::zero();
        }
        let key = CochainKey {
            args,
            value: value.cloned(),
        };
        match self.terms.get(&key) {
            Some(c) if sign < 0 => -c.clone(),
            Some(c) => c.clone(),
            None => Q::zero(),
        }
    }

    pub fn scaled(&self, factor: &Q) -> Cochain {
        let mut out = Cochain::zero(self.spec, self.module, self.degree, self.weight);
        if !factor.is_zero() {
            out.terms = self.terms.iter().map(|(k, c)| (k.clone(), c * factor)).collect();
        }
        out
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, factor: &Q, other: &Cochain) -> Result<Cochain> {
        self.check_same_cell(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let slot = out.terms.entry(k.clone()).or_insert_with(Q::zero);
            *slot += c * factor;
            if slot.is_zero() {
                out.terms.remove(k);
            }
        }
        Ok(out)
    }

    pub fn check_same_cell(&self, other: &Cochain) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::Precondition(format!(
                "cochains over different algebras: {} vs {}",
                self.spec, other.spec
            )));
        }
        if (self.module, self.degree, self.weight) != (other.module, other.degree, other.weight) {
            return Err(Error::Precondition(format!(
                "cochains in different cells: ({}, {}, {}) vs ({}, {}, {})",
                self.module, self.degree, self.weight, other.module, other.degree, other.weight
            )));
        }
        Ok(())
    }

    pub(crate) fn insert_canonical(&mut self, key: CochainKey, coeff: Q) {
        if !coeff.is_zero() {
            self.terms.insert(key, coeff);
        }
    }

    /// Human-readable sum such as `C(U_4,U_1 U_2 U_3) - 1/2 C(U_1,U_1)`.
    pub fn pretty(&self) -> String {
        self.to_string()
    }

    pub fn to_record(&self) -> CochainRecord {
        CochainRecord {
            algebra: self.spec.to_string(),
            module: self.module,
            degree: self.degree,
            weight: self.weight,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| TermRecord {
                    args: k.args.iter().map(|e| self.spec.element_name(e)).collect(),
                    value: k.value.as_ref().map(|e| self.spec.element_name(e)),
                    coeff: format_q(c),
                })
                .collect(),
            pretty: Some(self.pretty()),
        }
    }

    pub fn from_record(record: &CochainRecord) -> Result<Cochain> {
        let spec: AlgebraSpec = record.algebra.parse()?;
        let mut out = Cochain::zero(spec, record.module, record.degree, record.weight);
        for term in &record.terms {
            let args = term
                .args
                .iter()
                .map(|a| spec.parse_element(a))
                .collect::<Result<Vec<_>>>()?;
            let value = term.value.as_deref().map(|v| spec.parse_element(v)).transpose()?;
            let coeff =
                parse_q(&term.coeff).ok_or_else(|| Error::Deserialize(format!("bad coefficient `{}`", term.coeff)))?;
            out.add_term(args, value, coeff)?;
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_record()).expect("cochain record serializes")
    }

    pub fn from_json(text: &str) -> Result<Cochain> {
        let record: CochainRecord = serde_json::from_str(text).map_err(|e| Error::Deserialize(e.to_string()))?;
        Cochain::from_record(&record)
    }
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
            let negative = c < &Q::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{} ", format_q(&abs))?;
            }
            let args: Vec<String> = key.args.iter().map(|e| self.spec.element_name(e)).collect();
            write!(f, "C({})", args.join(","))?;
            if let Some(v) = &key.value {
                write!(f, "[{}]", self.spec.element_name(v))?;
            }
        }
        Ok(())
    }
}

/// Serialized form of a cochain; round-trips exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainRecord {
    pub algebra: String,
    pub module: Module,
    pub degree: usize,
    pub weight: i64,
    pub terms: Vec<TermRecord>,
    /// Informational; ignored when reading.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pretty: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub args: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    pub coeff: String,
}
