//! Hilbert series numerators of monomial ideals and the Hilbert data derived
//! from them.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::poly::{dim_ring_degree, Monomial};

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(acc: &mut Vec<i64>, b: &[i64], shift: usize) {
    if acc.len() < b.len() + shift {
        acc.resize(b.len() + shift, 0);
    }
    for (j, &y) in b.iter().enumerate() {
        acc[j + shift] += y;
    }
}

/// Numerator K(t) with HS(R/I) = K(t)/(1-t)^4, coefficients by exponent.
pub fn monomial_numerator(gens: &[Monomial]) -> Vec<i64> {
    numerator_rec(minimalize(gens.to_vec()))
}

fn numerator_rec(gens: Vec<Monomial>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    // pick a variable shared by two generators
    let mut counts = [0usize; 4];
    for g in &gens {
        for (v, c) in counts.iter_mut().enumerate() {
            if g.exp(v) > 0 {
                *c += 1;
            }
        }
    }
    let (pivot, &best) = counts.iter().enumerate().max_by_key(|(_, &c)| c).unwrap();
    if best <= 1 {
        let mut k = vec![1i64];
        for g in &gens {
            let mut f = vec![0i64; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] = -1;
            k = poly_mul(&k, &f);
        }
        return k;
    }
    let x = Monomial::var(pivot);
    let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exp(pivot) == 0).copied().collect();
    plus.push(x);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| x.quotient_of(g).unwrap_or(*g))
        .collect();
    let mut k = numerator_rec(minimalize(plus));
    let q = numerator_rec(minimalize(colon));
    poly_add_shifted(&mut k, &q, 1);
    k
}

/// Hilbert series `N(t) / (1-t)^4` with a Laurent numerator; equality of
/// series is equality of Hilbert functions in every degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    numerator: BTreeMap<i32, i64>,
}

impl HilbertSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Series of the twisted free module R(-a).
    pub fn free(a: i32) -> Self {
        let mut s = Self::zero();
        s.add_term(a, 1);
        s
    }

    /// `t^shift · K(t)` for a numerator given by exponent.
    pub fn from_numerator(shift: i32, k: &[i64]) -> Self {
        let mut s = Self::zero();
        for (e, &c) in k.iter().enumerate() {
            s.add_term(shift + e as i32, c);
        }
        s
    }

    fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.numerator.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.numerator.remove(&e);
        }
    }

    pub fn numerator(&self) -> &BTreeMap<i32, i64> {
        &self.numerator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn add(&self, other: &HilbertSeries) -> HilbertSeries {
        let mut s = self.clone();
        for (&e, &c) in &other.numerator {
            s.add_term(e, c);
        }
        s
    }

    pub fn sub(&self, other: &HilbertSeries) -> HilbertSeries {
        let mut s = self.clone();
        for (&e, &c) in &other.numerator {
            s.add_term(e, -c);
        }
        s
    }

    /// Series of M(s) given that of M.
    pub fn shifted(&self, s: i32) -> HilbertSeries {
        HilbertSeries {
            numerator: self.numerator.iter().map(|(&e, &c)| (e - s, c)).collect(),
        }
    }

    /// dim M_n.
    pub fn value(&self, n: i32) -> i64 {
        self.numerator
            .iter()
            .map(|(&e, &c)| c * dim_ring_degree((n - e) as i64))
            .sum()
    }

    pub fn polynomial(&self) -> HilbertPolynomial {
        let mut six = [0i64; 4];
        for (&e, &c) in &self.numerator {
            // 6·C(n-e+3, 3) = (n-e+1)(n-e+2)(n-e+3)
            let mut p = vec![1i64];
            for k in 1..=3 {
                p = poly_mul(&p, &[k - e as i64, 1]);
            }
            for (d, &v) in p.iter().enumerate() {
                six[d] += c * v;
            }
        }
        HilbertPolynomial { six }
    }

    /// Lowest degree with a possibly nonzero piece.
    pub fn initial_degree(&self) -> Option<i32> {
        self.numerator.keys().next().copied()
    }
}

/// Hilbert polynomial stored as `6·P(n)` with integer coefficients
/// (constant term first).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HilbertPolynomial {
    six: [i64; 4],
}

impl HilbertPolynomial {
    pub fn eval(&self, n: i64) -> i64 {
        let v = self.six.iter().rev().fold(0i64, |acc, &c| acc * n + c);
        debug_assert_eq!(v % 6, 0);
        v / 6
    }

    pub fn is_zero(&self) -> bool {
        self.six.iter().all(|&c| c == 0)
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        (0..4).rev().find(|&k| self.six[k] != 0)
    }

    /// `(d, g)` when the polynomial reads `d·n + 1 - g`.
    pub fn curve_degree_genus(&self) -> Option<(i64, i64)> {
        if self.degree() != Some(1) || self.six[1] % 6 != 0 || self.six[0] % 6 != 0 {
            return None;
        }
        Some((self.six[1] / 6, 1 - self.six[0] / 6))
    }

    pub fn six_times_coefficients(&self) -> [i64; 4] {
        self.six
    }
}

impl fmt::Display for HilbertPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..4).rev() {
            let c = self.six[k];
            if c == 0 {
                continue;
            }
            let (num, den) = reduce(c.abs(), 6);
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let coeff = if den == 1 {
                format!("{num}")
            } else {
                format!("{num}/{den}")
            };
            match k {
                0 => write!(f, "{coeff}")?,
                _ => {
                    if coeff != "1" {
                        write!(f, "{coeff}")?;
                    }
                    write!(f, "n")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn reduce(a: i64, b: i64) -> (i64, i64) {
    let mut x = a;
    let mut y = b;
    while y != 0 {
        let t = x % y;
        x = y;
        y = t;
    }
    (a / x, b / x)
}
