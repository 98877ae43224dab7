use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::monomial::{Monomial, Var, VariableSpec};
use crate::rational::{format_q, int, Q};

/// Sparse rational combination of monomials (a generating function).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SuperPolynomial {
    terms: BTreeMap<Monomial, Q>,
}

impl SuperPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(mono: Monomial) -> Self {
        Self::term(mono, Q::one())
    }

    pub fn term(mono: Monomial, coeff: Q) -> Self {
        let mut out = Self::zero();
        out.add_term(mono, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> Q {
        self.terms.get(mono).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Q) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SuperPolynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scaled(&self, factor: &Q) -> SuperPolynomial {
        if factor.is_zero() {
            return Self::zero();
        }
        SuperPolynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn remove(&mut self, mono: &Monomial) -> Option<Q> {
        self.terms.remove(mono)
    }

    /// Common parity of all terms, if there is one.
    pub fn parity(&self) -> Option<u8> {
        let mut it = self.terms.keys().map(Monomial::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    /// Common weight of all terms, if there is one.
    pub fn weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(Monomial::weight);
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    pub fn mul(&self, other: &SuperPolynomial) -> SuperPolynomial {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some((s, m)) = a.mul(b) {
                    let c = ca * cb;
                    out.add_term(m, if s < 0 { -c } else { c });
                }
            }
        }
        out
    }

    /// Termwise left derivative.
    pub fn derivative(&self, vars: &VariableSpec, var: Var) -> SuperPolynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            if let Some((factor, d)) = m.derivative(vars, var) {
                out.add_term(d, c * int(factor));
            }
        }
        out
    }

    /// Restricts to the terms of the given parity.
    pub fn parity_part(&self, parity: u8) -> SuperPolynomial {
        SuperPolynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.parity() == parity)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn display<'a>(&'a self, vars: &'a VariableSpec) -> PolynomialDisplay<'a> {
        PolynomialDisplay { poly: self, vars }
    }
}

/// Poisson bracket of two generating functions.
///
/// ```text
/// {f,g} = Σ_i (∂f/∂p_i ∂g/∂q_i − ∂f/∂q_i ∂g/∂p_i) − (−1)^{p(f)} Σ_k ∂f/∂U_k ∂g/∂U_k
/// ```
///
/// with left derivatives. Inputs of mixed parity are split into their
/// homogeneous parts and the bracket is extended bilinearly.
pub fn poisson_bracket(vars: &VariableSpec, f: &SuperPolynomial, g: &SuperPolynomial) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero();
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            let coeff = ca * cb;
            for (m, c) in bracket_monomials(vars, a, b).terms {
                out.add_term(m, c * &coeff);
            }
        }
    }
    out
}

/// Bracket of two monomials with unit coefficients.
pub fn bracket_monomials(vars: &VariableSpec, a: &Monomial, b: &Monomial) -> SuperPolynomial {
    let mut out = SuperPolynomial::zero();
    let mut push = |x: Option<(i64, Monomial)>, y: Option<(i64, Monomial)>, sign: i64| {
        if let (Some((fx, mx)), Some((fy, my))) = (x, y) {
            if let Some((s, m)) = mx.mul(&my) {
                out.add_term(m, int(sign * fx * fy * s as i64));
            }
        }
    };
    for i in 0..vars.n() {
        push(a.derivative(vars, Var::P(i)), b.derivative(vars, Var::Q(i)), 1);
        push(a.derivative(vars, Var::Q(i)), b.derivative(vars, Var::P(i)), -1);
    }
    // −(−1)^{p(a)}: +1 for odd a, −1 for even a
    let odd_sign = if a.parity() == 1 { 1 } else { -1 };
    for k in 0..vars.m() {
        push(a.derivative(vars, Var::U(k)), b.derivative(vars, Var::U(k)), odd_sign);
    }
    out
}

pub struct PolynomialDisplay<'a> {
    poly: &'a SuperPolynomial,
    vars: &'a VariableSpec,
}

impl fmt::Display for PolynomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = c < &Q::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_constant() {
                f.write_str(&format_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", m.display(self.vars))?;
            } else {
                write!(f, "{} {}", format_q(&abs), m.display(self.vars))?;
            }
        }
        Ok(())
    }
}
