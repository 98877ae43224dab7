//! Monomials in even variables `p_i, q_i` and Grassmann variables `U_k`.
//!
//! Grassmann monomials are stored as bitmasks: bit `k - 1` is set iff `U_k`
//! occurs. Variables are always written in ascending index order, which is
//! the convention every sign in this crate is measured against.

use std::fmt;

use crate::error::{Error, Result};

/// Number of even coordinate pairs and odd variables.
///
/// Only the standard grading (every variable has grade 1) is supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VariableSpec {
    n: usize,
    m: usize,
}

impl VariableSpec {
    pub const MAX_ODD: usize = 64;

    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n + m == 0 {
            return Err(Error::SpecParse {
                input: format!("({}|{})", 2 * n, m),
                reason: "at least one variable is required".into(),
            });
        }
        if m > Self::MAX_ODD {
            return Err(Error::SpecParse {
                input: format!("({}|{})", 2 * n, m),
                reason: format!("at most {} odd variables are supported", Self::MAX_ODD),
            });
        }
        Ok(VariableSpec { n, m })
    }

    /// Number of even pairs `(p_i, q_i)`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of odd variables.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn even_count(&self) -> usize {
        2 * self.n
    }

    pub fn full_mask(&self) -> u64 {
        if self.m == 64 {
            u64::MAX
        } else {
            (1u64 << self.m) - 1
        }
    }

    /// All variables in the canonical order `p_1..p_n, q_1..q_n, U_1..U_m`.
    pub fn variables(&self) -> Vec<Var> {
        let mut out = Vec::with_capacity(2 * self.n + self.m);
        out.extend((0..self.n).map(Var::P));
        out.extend((0..self.n).map(Var::Q));
        out.extend((0..self.m).map(Var::U));
        out
    }

    pub fn contains(&self, var: Var) -> bool {
        match var {
            Var::P(i) | Var::Q(i) => i < self.n,
            Var::U(k) => k < self.m,
        }
    }
}

/// A single variable. Indices are zero-based; display is one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    P(usize),
    Q(usize),
    U(usize),
}

impl Var {
    pub fn is_odd(&self) -> bool {
        matches!(self, Var::U(_))
    }
}

/// Even exponents (ordered `p_1..p_n, q_1..q_n`) plus the odd bitmask.
///
/// The derived ordering is lexicographic on exponents, then ascending mask,
/// which is the basis order within a fixed weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
    mask: u64,
}

impl Monomial {
    pub fn one(vars: &VariableSpec) -> Self {
        Monomial {
            exps: vec![0; vars.even_count()],
            mask: 0,
        }
    }

    pub fn new(exps: Vec<u32>, mask: u64) -> Self {
        Monomial { exps, mask }
    }

    pub fn var(vars: &VariableSpec, var: Var) -> Self {
        let mut out = Monomial::one(vars);
        match var {
            Var::P(i) => out.exps[i] = 1,
            Var::Q(i) => out.exps[vars.n() + i] = 1,
            Var::U(k) => out.mask = 1 << k,
        }
        out
    }

    /// Grassmann monomial `U_{k_1} ... U_{k_r}` from one-based indices.
    pub fn odd(vars: &VariableSpec, indices: &[usize]) -> Self {
        let mut out = Monomial::one(vars);
        for &k in indices {
            out.mask |= 1 << (k - 1);
        }
        out
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum::<u32>() + self.mask.count_ones()
    }

    /// `0` for even, `1` for odd.
    pub fn parity(&self) -> u8 {
        (self.mask.count_ones() % 2) as u8
    }

    /// Standard grading shifted so the bracket is additive: `degree - 2`.
    pub fn weight(&self) -> i64 {
        self.degree() as i64 - 2
    }

    pub fn is_constant(&self) -> bool {
        self.mask == 0 && self.exps.iter().all(|&e| e == 0)
    }

    /// Product with the Koszul sign of merging the two Grassmann words.
    ///
    /// Returns `None` when the odd parts share a variable.
    pub fn mul(&self, other: &Monomial) -> Option<(i32, Monomial)> {
        if self.mask & other.mask != 0 {
            return None;
        }
        let mut inversions = 0u32;
        let mut rest = other.mask;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            // bits of `self` above i must move past U_{i+1}
            inversions += (self.mask >> i >> 1).count_ones();
        }
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect();
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        Some((
            sign,
            Monomial {
                exps,
                mask: self.mask | other.mask,
            },
        ))
    }

    /// Left partial derivative: `(factor, result)`, or `None` when zero.
    pub fn derivative(&self, vars: &VariableSpec, var: Var) -> Option<(i64, Monomial)> {
        match var {
            Var::P(i) => self.even_derivative(i),
            Var::Q(i) => self.even_derivative(vars.n() + i),
            Var::U(k) => {
                let bit = 1u64 << k;
                if self.mask & bit == 0 {
                    return None;
                }
                let below = (self.mask & (bit - 1)).count_ones();
                let factor = if below.is_multiple_of(2) { 1 } else { -1 };
                Some((
                    factor,
                    Monomial {
                        exps: self.exps.clone(),
                        mask: self.mask & !bit,
                    },
                ))
            }
        }
    }

    fn even_derivative(&self, slot: usize) -> Option<(i64, Monomial)> {
        let e = self.exps[slot];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[slot] -= 1;
        Some((e as i64, Monomial { exps, mask: self.mask }))
    }

    /// Parses `p^2 q U_1 U_3`, `U_1U_2`, `p_2 q_1` or `1`.
    ///
    /// Odd variables must be listed in ascending order; any other order would
    /// carry a sign that a bare monomial cannot express.
    pub fn parse(vars: &VariableSpec, input: &str) -> Result<Self> {
        let err = |reason: &str| Error::ElementParse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut out = Monomial::one(vars);
        let chars: Vec<char> = input.chars().collect();
        let mut pos = 0;
        let mut last_odd: Option<usize> = None;
        let mut saw_factor = false;

        let read_number = |pos: &mut usize| -> Option<usize> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            if start == *pos {
                None
            } else {
                chars[start..*pos].iter().collect::<String>().parse().ok()
            }
        };

        while pos < chars.len() {
            let c = chars[pos];
            if c.is_whitespace() || c == '*' || c == '·' {
                pos += 1;
                continue;
            }
            pos += 1;
            match c {
                '1' if !saw_factor => {
                    // the constant monomial, only when standing alone
                    if chars[pos..].iter().any(|c| !c.is_whitespace()) {
                        return Err(err("`1` must stand alone"));
                    }
                    return Ok(out);
                }
                'p' | 'q' | 'U' => {
                    if pos < chars.len() && chars[pos] == '_' {
                        pos += 1;
                    }
                    let index = match read_number(&mut pos) {
                        Some(i) => i,
                        None if c != 'U' && vars.n() == 1 => 1,
                        None => return Err(err("missing variable index")),
                    };
                    if index == 0 {
                        return Err(err("variable indices start at 1"));
                    }
                    let mut power = 1;
                    if pos < chars.len() && chars[pos] == '^' {
                        pos += 1;
                        power = read_number(&mut pos).ok_or_else(|| err("missing exponent"))?;
                    }
                    let var = match c {
                        'p' => Var::P(index - 1),
                        'q' => Var::Q(index - 1),
                        _ => Var::U(index - 1),
                    };
                    if !vars.contains(var) {
                        return Err(err("variable index out of range"));
                    }
                    match var {
                        Var::P(i) => out.exps[i] += power as u32,
                        Var::Q(i) => out.exps[vars.n() + i] += power as u32,
                        Var::U(k) => {
                            if power != 1 {
                                return Err(err("Grassmann variables square to zero"));
                            }
                            if last_odd.is_some_and(|prev| prev >= k) {
                                return Err(err("odd variables must be in ascending order"));
                            }
                            last_odd = Some(k);
                            out.mask |= 1 << k;
                        }
                    }
                    saw_factor = true;
                }
                _ => return Err(err("unexpected character")),
            }
        }
        if !saw_factor {
            return Err(err("empty monomial"));
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, vars: &'a VariableSpec) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, vars }
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    vars: &'a VariableSpec,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_constant() {
            return f.write_str("1");
        }
        let n = self.vars.n();
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            Ok(())
        };
        for (slot, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            sep(f)?;
            let letter = if slot < n { 'p' } else { 'q' };
            if n == 1 {
                write!(f, "{letter}")?;
            } else {
                write!(f, "{letter}_{}", slot % n + 1)?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        let mut rest = self.mono.mask;
        while rest != 0 {
            let k = rest.trailing_zeros();
            rest &= rest - 1;
            sep(f)?;
            write!(f, "U_{}", k + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(n: usize, m: usize) -> VariableSpec {
        VariableSpec::new(n, m).unwrap()
    }

    #[test]
    fn grassmann_generators_anticommute() {
        let v = vars(0, 4);
        let u1 = Monomial::odd(&v, &[1]);
        let u2 = Monomial::odd(&v, &[2]);
        assert_eq!(u1.mul(&u2), Some((1, Monomial::odd(&v, &[1, 2]))));
        assert_eq!(u2.mul(&u1), Some((-1, Monomial::odd(&v, &[1, 2]))));
        assert_eq!(u1.mul(&u1), None);
    }

    #[test]
    fn mixed_product_sign() {
        // (p q U_2)(p U_1) = -p^2 q U_1 U_2
        let v = vars(1, 2);
        let a = Monomial::new(vec![1, 1], 0b10);
        let b = Monomial::new(vec![1, 0], 0b01);
        assert_eq!(a.mul(&b), Some((-1, Monomial::new(vec![2, 1], 0b11))));
        assert_eq!(a.display(&v).to_string(), "p q U_2");
    }

    #[test]
    fn left_derivatives() {
        let v = vars(1, 3);
        let p2q = Monomial::new(vec![2, 1], 0);
        assert_eq!(p2q.derivative(&v, Var::P(0)), Some((2, Monomial::new(vec![1, 1], 0))));
        let u12 = Monomial::new(vec![0, 0], 0b011);
        assert_eq!(
            u12.derivative(&v, Var::U(1)),
            Some((-1, Monomial::new(vec![0, 0], 0b001)))
        );
        assert_eq!(u12.derivative(&v, Var::U(2)), None);
    }

    #[test]
    fn weights_and_parity() {
        let v = vars(0, 4);
        let top = Monomial::odd(&v, &[1, 2, 3, 4]);
        assert_eq!(top.weight(), 2);
        assert_eq!(top.parity(), 0);
        assert_eq!(Monomial::one(&v).weight(), -2);
        assert_eq!(Monomial::odd(&v, &[3]).parity(), 1);
    }

    #[test]
    fn parse_and_display() {
        let v = vars(1, 4);
        for s in ["1", "p", "p^2 q", "q^3", "U_1 U_2 U_3", "p q^2 U_4"] {
            let m = Monomial::parse(&v, s).unwrap();
            assert_eq!(m.display(&v).to_string(), s);
        }
        assert_eq!(Monomial::parse(&v, "U_1U_2").unwrap(), Monomial::odd(&v, &[1, 2]));
        assert!(Monomial::parse(&v, "U_2 U_1").is_err());
        assert!(Monomial::parse(&v, "U_5").is_err());
        assert!(Monomial::parse(&v, "U_1^2").is_err());
        assert!(Monomial::parse(&v, "").is_err());
        let v2 = vars(2, 0);
        let m = Monomial::parse(&v2, "p_1 q_2^2").unwrap();
        assert_eq!(m.exponents(), &[1, 0, 0, 2]);
        assert_eq!(m.display(&v2).to_string(), "p_1 q_2^2");
    }
}
