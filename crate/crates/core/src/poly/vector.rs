use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::field::PolyRing;
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// A twisted free module ⊕ R(-a_j): component j is generated in degree a_j.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct FreeModule {
    pub twists: Vec<i32>,
}

impl FreeModule {
    pub fn new(twists: Vec<i32>) -> Self {
        FreeModule { twists }
    }

    pub fn zero() -> Self {
        FreeModule { twists: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Hom(F, R) = ⊕ R(a_j).
    pub fn dual(&self) -> FreeModule {
        FreeModule::new(self.twists.iter().map(|a| -a).collect())
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut t = self.twists.clone();
        t.extend_from_slice(&other.twists);
        FreeModule::new(t)
    }

    /// F(s): every generator moves to degree a_j - s.
    pub fn shifted(&self, s: i32) -> FreeModule {
        FreeModule::new(self.twists.iter().map(|a| a - s).collect())
    }

    pub fn dim(&self, n: i32) -> i64 {
        self.twists
            .iter()
            .map(|&a| super::monomial::dim_ring_degree((n - a) as i64))
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u32,
    pub mono: Monomial,
    pub comp: u32,
}

/// Term comparison: the monomial order decides, then lower component index wins.
#[derive(Clone, Copy, Debug)]
pub(crate) struct TermCmp {
    pub order: MonomialOrder,
}

impl TermCmp {
    pub fn plain(order: MonomialOrder) -> Self {
        TermCmp { order }
    }

    /// Ordering::Greater when `a` is the larger term.
    #[inline]
    pub fn cmp(&self, a: &Term, b: &Term) -> Ordering {
        a.mono
            .key(self.order)
            .cmp(&b.mono.key(self.order))
            .then_with(|| b.comp.cmp(&a.comp))
    }

    pub fn sort(&self, terms: &mut [Term]) {
        terms.sort_by(|a, b| self.cmp(b, a));
    }
}

/// `a - c * m * b` for term lists sorted descending under `cmp`.
pub(crate) fn sub_mul(
    ring: &PolyRing,
    cmp: &TermCmp,
    a: &[Term],
    b: &[Term],
    c: u32,
    m: Monomial,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let negc = ring.neg(c);
    while i < a.len() && j < b.len() {
        let tb = Term {
            coeff: b[j].coeff,
            mono: b[j].mono.mul(&m),
            comp: b[j].comp,
        };
        match cmp.cmp(&a[i], &tb) {
            Ordering::Greater => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    coeff: ring.mul(negc, tb.coeff),
                    ..tb
                });
                j += 1;
            }
            Ordering::Equal => {
                let v = ring.sub(a[i].coeff, ring.mul(c, tb.coeff));
                if v != 0 {
                    out.push(Term { coeff: v, ..tb });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        out.push(Term {
            coeff: ring.mul(negc, b[j].coeff),
            mono: b[j].mono.mul(&m),
            comp: b[j].comp,
        });
        j += 1;
    }
    out
}

fn normalize(ring: &PolyRing, cmp: &TermCmp, mut terms: Vec<Term>) -> Vec<Term> {
    cmp.sort(&mut terms);
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for t in terms {
        let t = Term {
            coeff: t.coeff % ring.characteristic(),
            ..t
        };
        match out.last_mut() {
            Some(last) if last.mono == t.mono && last.comp == t.comp => {
                last.coeff = ring.add(last.coeff, t.coeff);
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| t.coeff != 0);
    out
}

/// Element of a twisted free module; terms sorted descending in the ring's
/// monomial order (then by component), no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FreeVector {
    terms: Vec<Term>,
}

impl AsRef<[Term]> for FreeVector {
    fn as_ref(&self) -> &[Term] {
        &self.terms
    }
}

impl FreeVector {
    pub fn zero() -> Self {
        FreeVector { terms: vec![] }
    }

    pub fn from_terms(ring: &PolyRing, terms: Vec<Term>) -> Self {
        FreeVector {
            terms: normalize(ring, &TermCmp::plain(ring.order()), terms),
        }
    }

    pub(crate) fn from_sorted(terms: Vec<Term>) -> Self {
        FreeVector { terms }
    }

    /// Basis vector e_j.
    pub fn unit(comp: usize) -> Self {
        FreeVector {
            terms: vec![Term {
                coeff: 1,
                mono: Monomial::ONE,
                comp: comp as u32,
            }],
        }
    }

    /// Vector whose component j is `polys[j]`.
    pub fn from_components(ring: &PolyRing, polys: &[Polynomial]) -> Self {
        let mut terms = Vec::new();
        for (j, p) in polys.iter().enumerate() {
            for t in p.terms() {
                terms.push(Term {
                    comp: j as u32,
                    ..*t
                });
            }
        }
        FreeVector::from_terms(ring, terms)
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_component(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.comp as usize).max()
    }

    /// Degree in the grading of `shape`, if the vector is homogeneous and nonzero.
    pub fn degree(&self, shape: &FreeModule) -> Option<i32> {
        let mut d = None;
        for t in &self.terms {
            let td = t.mono.degree() + *shape.twists.get(t.comp as usize)?;
            match d {
                None => d = Some(td),
                Some(x) if x != td => return None,
                _ => {}
            }
        }
        d
    }

    pub fn is_homogeneous(&self, shape: &FreeModule) -> bool {
        self.is_zero() || self.degree(shape).is_some()
    }

    pub fn add(&self, ring: &PolyRing, other: &FreeVector) -> FreeVector {
        self.add_scaled(ring, other, 1, Monomial::ONE)
    }

    pub fn sub(&self, ring: &PolyRing, other: &FreeVector) -> FreeVector {
        self.add_scaled(ring, other, ring.neg(1), Monomial::ONE)
    }

    /// `self + c * m * other`
    pub fn add_scaled(&self, ring: &PolyRing, other: &FreeVector, c: u32, m: Monomial) -> FreeVector {
        let cmp = TermCmp::plain(ring.order());
        FreeVector {
            terms: sub_mul(ring, &cmp, &self.terms, &other.terms, ring.neg(c), m),
        }
    }

    pub fn scale(&self, ring: &PolyRing, c: u32) -> FreeVector {
        if c % ring.characteristic() == 0 {
            return FreeVector::zero();
        }
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: ring.mul(t.coeff, c),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> FreeVector {
        FreeVector {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    mono: t.mono.mul(&m),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn mul_poly(&self, ring: &PolyRing, p: &Polynomial) -> FreeVector {
        let mut acc = FreeVector::zero();
        for t in p.terms() {
            acc = acc.add_scaled(ring, self, t.coeff, t.mono);
        }
        acc
    }

    /// Component j as a polynomial.
    pub fn component(&self, j: usize) -> Polynomial {
        Polynomial(FreeVector {
            terms: self
                .terms
                .iter()
                .filter(|t| t.comp as usize == j)
                .map(|t| Term { comp: 0, ..*t })
                .collect(),
        })
    }

    /// Renumber components through `f`; `None` drops the term.
    pub fn map_components(&self, ring: &PolyRing, f: impl Fn(usize) -> Option<usize>) -> FreeVector {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| f(t.comp as usize).map(|c| Term { comp: c as u32, ..*t }))
            .collect();
        FreeVector::from_terms(ring, terms)
    }

    pub fn monic(&self, ring: &PolyRing) -> FreeVector {
        match self.leading_term() {
            None => FreeVector::zero(),
            Some(t) => self.scale(ring, ring.inv(t.coeff)),
        }
    }

    pub fn display(&self, ring: &PolyRing) -> String {
        let rank = self.max_component().map(|c| c + 1).unwrap_or(0);
        let parts: Vec<String> = (0..rank)
            .map(|j| self.component(j).display(ring))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// A polynomial of F_p[X,Y,Z,T].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial(FreeVector);

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial(FreeVector::zero())
    }

    pub fn one() -> Self {
        Polynomial::monomial(1, Monomial::ONE)
    }

    pub fn constant(ring: &PolyRing, c: i64) -> Self {
        Polynomial::monomial(ring.from_i64(c), Monomial::ONE)
    }

    pub fn monomial(coeff: u32, mono: Monomial) -> Self {
        if coeff == 0 {
            return Polynomial::zero();
        }
        Polynomial(FreeVector {
            terms: vec![Term { coeff, mono, comp: 0 }],
        })
    }

    pub fn var(i: usize) -> Self {
        Polynomial::monomial(1, Monomial::var(i))
    }

    pub fn from_terms(ring: &PolyRing, terms: impl IntoIterator<Item = (u32, Monomial)>) -> Self {
        Polynomial(FreeVector::from_terms(
            ring,
            terms
                .into_iter()
                .map(|(coeff, mono)| Term { coeff, mono, comp: 0 })
                .collect(),
        ))
    }

    pub fn terms(&self) -> &[Term] {
        self.0.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms().iter().all(|t| t.mono.is_one())
    }

    pub fn degree(&self) -> Option<i32> {
        self.0.degree(&FreeModule::new(vec![0]))
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.0.leading_term().map(|t| t.mono)
    }

    pub fn add(&self, ring: &PolyRing, o: &Polynomial) -> Polynomial {
        Polynomial(self.0.add(ring, &o.0))
    }

    pub fn sub(&self, ring: &PolyRing, o: &Polynomial) -> Polynomial {
        Polynomial(self.0.sub(ring, &o.0))
    }

    pub fn mul(&self, ring: &PolyRing, o: &Polynomial) -> Polynomial {
        Polynomial(self.0.mul_poly(ring, o))
    }

    pub fn scale(&self, ring: &PolyRing, c: u32) -> Polynomial {
        Polynomial(self.0.scale(ring, c))
    }

    pub fn pow(&self, ring: &PolyRing, e: u32) -> Polynomial {
        let mut r = Polynomial::one();
        for _ in 0..e {
            r = r.mul(ring, self);
        }
        r
    }

    pub fn as_vector(&self) -> &FreeVector {
        &self.0
    }

    pub fn into_vector(self) -> FreeVector {
        self.0
    }

    /// The polynomial placed in component `comp` of a free module.
    pub fn in_component(&self, comp: usize) -> FreeVector {
        FreeVector {
            terms: self
                .terms()
                .iter()
                .map(|t| Term {
                    comp: comp as u32,
                    ..*t
                })
                .collect(),
        }
    }

    /// Normalized text form, e.g. `3*X^2*Y - Z*T^2`.
    pub fn display(&self, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, t) in self.terms().iter().enumerate() {
            let c = ring.symmetric(t.coeff);
            let (neg, a) = if c < 0 { (true, -c) } else { (false, c) };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if t.mono.is_one() {
                s.push_str(&a.to_string());
            } else if a == 1 {
                s.push_str(&t.mono.to_string());
            } else {
                s.push_str(&format!("{}*{}", a, t.mono));
            }
        }
        s
    }
}

impl fmt::Display for FreeModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.twists.iter().map(|a| format!("R({})", -a)).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub(crate) fn check_shape(v: &FreeVector, shape: &FreeModule) -> Result<()> {
    if let Some(c) = v.max_component() {
        if c >= shape.rank() {
            return Err(Error::ShapeMismatch(format!(
                "component {} outside rank {}",
                c,
                shape.rank()
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> PolyRing {
        PolyRing::default()
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let r = ring();
        let x = Polynomial::var(0);
        let y = Polynomial::var(1);
        let s = x.add(&r, &y).sub(&r, &x);
        assert_eq!(s, y);
        assert!(x.sub(&r, &x).is_zero());
    }

    #[test]
    fn product_and_display() {
        let r = ring();
        let x = Polynomial::var(0);
        let y = Polynomial::var(1);
        let p = x.add(&r, &y).mul(&r, &x.sub(&r, &y));
        assert_eq!(p.display(&r), "X^2 - Y^2");
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn vector_degree_uses_twists() {
        let r = ring();
        let v = FreeVector::from_components(&r, &[Polynomial::var(1), Polynomial::var(0).pow(&r, 2)]);
        assert_eq!(v.degree(&FreeModule::new(vec![1, 0])), Some(2));
        assert_eq!(v.degree(&FreeModule::new(vec![0, 0])), None);
    }
}
