//! Dense reference path for Grassmann-only Hamiltonian algebras.
//!
//! Shares nothing with the library: the bracket is recomputed on bitmasks,
//! cochains are monomials in dual generators (elements of even parity give
//! anticommuting generators, odd ones commuting generators), the
//! differential is the odd derivation extending its action on generators,
//! and ranks come from dense elimination over GF(p), p = 2^61 - 1.

use std::collections::HashMap;

pub const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn addmod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn negmod(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        P - a
    }
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, P - 2)
}

fn from_i64(x: i64) -> u64 {
    if x >= 0 {
        x as u64 % P
    } else {
        negmod((-x) as u64 % P)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Po,
    H,
    SH,
}

/// Basis monomials of the algebra as bitmasks over `m` odd variables.
pub struct Algebra {
    pub m: usize,
    pub masks: Vec<u64>,
    index: HashMap<u64, usize>,
    /// `constants[c]` lists `(a, b, value)` with `[x_a, x_b] = Σ value x_c`.
    constants: Vec<Vec<(usize, usize, i64)>>,
}

fn left_derivative(mask: u64, k: usize) -> Option<(i64, u64)> {
    let bit = 1u64 << k;
    if mask & bit == 0 {
        return None;
    }
    let below = (mask & (bit - 1)).count_ones();
    Some((if below.is_multiple_of(2) { 1 } else { -1 }, mask & !bit))
}

fn product(a: u64, b: u64) -> Option<(i64, u64)> {
    if a & b != 0 {
        return None;
    }
    // each bit of b passes the bits of a above it
    let mut swaps = 0;
    for k in 0..64 {
        if b >> k & 1 == 1 {
            swaps += (a >> (k + 1)).count_ones();
        }
    }
    Some((if swaps % 2 == 0 { 1 } else { -1 }, a | b))
}

impl Algebra {
    pub fn new(kind: Kind, m: usize) -> Self {
        let keep = |deg: u32| match kind {
            Kind::Po => true,
            Kind::H => deg >= 1,
            Kind::SH => deg >= 1 && (deg as usize) < m,
        };
        let mut masks: Vec<u64> = (0..1u64 << m).filter(|x| keep(x.count_ones())).collect();
        masks.sort_by_key(|x| (x.count_ones(), *x));
        let index: HashMap<u64, usize> = masks.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut constants = vec![Vec::new(); masks.len()];
        for (ia, &a) in masks.iter().enumerate() {
            for (ib, &b) in masks.iter().enumerate() {
                let mut acc: HashMap<u64, i64> = HashMap::new();
                let sign = if a.count_ones() % 2 == 1 { 1 } else { -1 };
                for k in 0..m {
                    if let (Some((fa, da)), Some((fb, db))) = (left_derivative(a, k), left_derivative(b, k)) {
                        if let Some((s, c)) = product(da, db) {
                            *acc.entry(c).or_default() += sign * fa * fb * s;
                        }
                    }
                }
                for (c, v) in acc {
                    if v != 0 {
                        if let Some(&ic) = index.get(&c) {
                            constants[ic].push((ia, ib, v));
                        }
                    }
                }
            }
        }
        Algebra {
            m,
            masks,
            index,
            constants,
        }
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn parity(&self, e: usize) -> u32 {
        self.masks[e].count_ones() % 2
    }

    pub fn weight(&self, e: usize) -> i64 {
        self.masks[e].count_ones() as i64 - 2
    }

    pub fn element(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    fn anticommuting(&self, e: usize) -> bool {
        self.parity(e) == 0
    }

    /// Sorts a generator word, returning its sign, or `None` if it vanishes.
    fn normal_form(&self, word: &mut [usize]) -> Option<i64> {
        let mut sign = 1;
        for i in 1..word.len() {
            let mut j = i;
            while j > 0 && word[j - 1] > word[j] {
                if self.anticommuting(word[j - 1]) && self.anticommuting(word[j]) {
                    sign = -sign;
                }
                word.swap(j - 1, j);
                j -= 1;
            }
        }
        for w in word.windows(2) {
            if w[0] == w[1] && self.anticommuting(w[0]) {
                return None;
            }
        }
        Some(sign)
    }

    /// `d` of the generator dual to `c`, as a list of sorted quadratic words.
    fn d_generator(&self, c: usize) -> Vec<([usize; 2], u64)> {
        let half = invmod(2);
        let mut acc: HashMap<[usize; 2], u64> = HashMap::new();
        for &(a, b, v) in &self.constants[c] {
            let mut word = [a, b];
            let Some(s) = self.normal_form(&mut word) else { continue };
            let twist = if self.parity(a) == 1 { -1 } else { 1 };
            let coeff = mulmod(half, from_i64(-v * s * twist));
            let slot = acc.entry(word).or_insert(0);
            *slot = addmod(*slot, coeff);
        }
        acc.into_iter().filter(|(_, v)| *v != 0).collect()
    }
}

/// The cochain complex in one grade, up to a top degree.
pub struct DenseComplex<'a> {
    alg: &'a Algebra,
    dgen: Vec<Vec<([usize; 2], u64)>>,
}

impl<'a> DenseComplex<'a> {
    pub fn new(alg: &'a Algebra) -> Self {
        let dgen = (0..alg.len()).map(|c| alg.d_generator(c)).collect();
        DenseComplex { alg, dgen }
    }

    /// All sorted words of length `k` and total weight `g`.
    pub fn words(&self, k: usize, g: i64) -> Vec<Vec<usize>> {
        fn rec(alg: &Algebra, k: usize, g: i64, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                let w: i64 = cur.iter().map(|&e| alg.weight(e)).sum();
                if w == g {
                    out.push(cur.clone());
                }
                return;
            }
            for e in start..alg.len() {
                if cur.last() == Some(&e) && alg.anticommuting(e) {
                    continue;
                }
                cur.push(e);
                rec(alg, k, g, e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(self.alg, k, g, 0, &mut Vec::new(), &mut out);
        out
    }

    /// Image of one word under `d`.
    pub fn d_word(&self, word: &[usize]) -> HashMap<Vec<usize>, u64> {
        let mut out: HashMap<Vec<usize>, u64> = HashMap::new();
        let mut passed_odd = 0;
        for i in 0..word.len() {
            let sign = if passed_odd % 2 == 0 { 1 } else { P - 1 };
            for (pair, coeff) in &self.dgen[word[i]] {
                let mut w: Vec<usize> = word[..i].to_vec();
                w.extend_from_slice(pair);
                w.extend_from_slice(&word[i + 1..]);
                let Some(s) = self.alg.normal_form(&mut w) else {
                    continue;
                };
                let c = mulmod(mulmod(sign, *coeff), from_i64(s));
                let slot = out.entry(w).or_insert(0);
                *slot = addmod(*slot, c);
            }
            if self.alg.anticommuting(word[i]) {
                passed_odd += 1;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Dense matrix of `d: C^k_g -> C^{k+1}_g`, one row per target word.
    pub fn matrix(&self, k: usize, g: i64) -> Vec<Vec<u64>> {
        let src = self.words(k, g);
        let dst = self.words(k + 1, g);
        let pos: HashMap<&Vec<usize>, usize> = dst.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = vec![vec![0u64; src.len()]; dst.len()];
        for (j, w) in src.iter().enumerate() {
            for (t, c) in self.d_word(w) {
                m[pos[&t]][j] = c;
            }
        }
        m
    }

    pub fn dim_c(&self, k: usize, g: i64) -> usize {
        self.words(k, g).len()
    }

    pub fn dim_h(&self, k: usize, g: i64) -> usize {
        let rank_out = rank(self.matrix(k, g));
        let rank_in = if k == 0 { 0 } else { rank(self.matrix(k - 1, g)) };
        self.dim_c(k, g) - rank_out - rank_in
    }

    /// Whether `d∘d` vanishes on every word of the cell.
    pub fn d_squared_vanishes(&self, k: usize, g: i64) -> bool {
        self.words(k, g).iter().all(|w| {
            let mut acc: HashMap<Vec<usize>, u64> = HashMap::new();
            for (t, c) in self.d_word(w) {
                for (u, e) in self.d_word(&t) {
                    let slot = acc.entry(u).or_insert(0);
                    *slot = addmod(*slot, mulmod(c, e));
                }
            }
            acc.values().all(|v| *v == 0)
        })
    }
}

/// Rank over GF(p) by dense Gaussian elimination.
pub fn rank(mut m: Vec<Vec<u64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = invmod(m[r][c]);
        for x in m[r][c..].iter_mut() {
            *x = mulmod(*x, inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = negmod(row[c]);
                for (x, y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    if *y != 0 {
                        *x = addmod(*x, mulmod(f, *y));
                    }
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
