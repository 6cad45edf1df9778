//! Finite-length graded modules as graded vector spaces with the four
//! multiplication operators, plus graded duals and isomorphism testing.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::poly::{FreeVector, Monomial, PolyRing, Term};
use crate::resolution::PresentedModule;

/// Randomized trials used by `isomorphic` before answering inconclusive.
pub const DEFAULT_TRIALS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLengthModule {
    ring: PolyRing,
    low: i32,
    dims: Vec<usize>,
    /// ops[v][k]: M_{low+k} -> M_{low+k+1}
    ops: [Vec<DenseMatrix>; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IsoVerdict {
    /// `map[k]` sends `M(shift)_{low+k}` to `N_{low+k}`, with `low` the
    /// lowest degree of N.
    Iso {
        shift: i32,
        #[serde(skip)]
        map: Vec<DenseMatrix>,
    },
    NotIso { obstruction: String },
    Inconclusive { trials: usize },
}

impl IsoVerdict {
    pub fn is_iso(&self) -> bool {
        matches!(self, IsoVerdict::Iso { .. })
    }

    pub fn shift(&self) -> Option<i32> {
        match self {
            IsoVerdict::Iso { shift, .. } => Some(*shift),
            _ => None,
        }
    }
}

impl FiniteLengthModule {
    pub fn zero(ring: &PolyRing) -> Self {
        FiniteLengthModule {
            ring: *ring,
            low: 0,
            dims: vec![],
            ops: Default::default(),
        }
    }

    /// Validates operator shapes and commutativity, then trims zero ends.
    pub fn from_parts(ring: &PolyRing, low: i32, dims: Vec<usize>, ops: [Vec<DenseMatrix>; 4]) -> Result<Self> {
        let n = dims.len();
        for op in &ops {
            if op.len() != n.saturating_sub(1) {
                return Err(Error::ShapeMismatch("one operator per consecutive degree pair".into()));
            }
            for (k, a) in op.iter().enumerate() {
                if a.nrows() != dims[k + 1] || a.ncols() != dims[k] {
                    return Err(Error::ShapeMismatch(format!("operator at offset {k}")));
                }
            }
        }
        let m = FiniteLengthModule {
            ring: *ring,
            low,
            dims,
            ops,
        };
        if !m.operators_commute() {
            return Err(Error::Precondition("multiplication operators do not commute".into()));
        }
        Ok(m.trimmed())
    }

    fn trimmed(mut self) -> Self {
        let first = self.dims.iter().position(|&d| d > 0);
        let Some(first) = first else {
            return Self::zero(&self.ring);
        };
        let last = self.dims.iter().rposition(|&d| d > 0).unwrap();
        self.low += first as i32;
        self.dims = self.dims[first..=last].to_vec();
        for op in self.ops.iter_mut() {
            *op = op[first..last].to_vec();
        }
        self
    }

    /// Standard-monomial realization of a finite-length presented module.
    pub fn from_presentation(m: &PresentedModule) -> Result<Self> {
        let ring = *m.ring();
        let Some((lo, hi)) = m.support_bounds()? else {
            return Ok(Self::zero(&ring));
        };
        let gb = m.gb();
        let twists = &m.generators().twists;
        let lts: Vec<Vec<Monomial>> = (0..twists.len()).map(|j| gb.leading_monomials(j)).collect();
        let basis = |n: i32| -> Vec<(usize, Monomial)> {
            let mut out = Vec::new();
            for (j, &a) in twists.iter().enumerate() {
                for mono in Monomial::all_of_degree(n - a) {
                    if !lts[j].iter().any(|l| l.divides(&mono)) {
                        out.push((j, mono));
                    }
                }
            }
            out
        };
        let bases: Vec<Vec<(usize, Monomial)>> = (lo..=hi).map(basis).collect();
        let index: Vec<HashMap<(usize, Monomial), usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, &k)| (k, i)).collect())
            .collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let mut ops: [Vec<DenseMatrix>; 4] = Default::default();
        for (v, op) in ops.iter_mut().enumerate() {
            let x = Monomial::var(v);
            for k in 0..dims.len().saturating_sub(1) {
                let mut a = DenseMatrix::zeros(dims[k + 1], dims[k]);
                for (col, &(j, mono)) in bases[k].iter().enumerate() {
                    let vec = FreeVector::from_sorted(vec![Term {
                        coeff: 1,
                        mono: mono.mul(&x),
                        comp: j as u32,
                    }]);
                    let nf = gb.normal_form(&vec)?;
                    for t in nf.terms() {
                        let row = index[k + 1][&(t.comp as usize, t.mono)];
                        a.set(row, col, t.coeff);
                    }
                }
                op.push(a);
            }
        }
        Self::from_parts(&ring, lo, dims, ops)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// Lowest nonzero degree (0 for the zero module).
    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn high(&self) -> i32 {
        self.low + self.dims.len() as i32 - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: i32) -> usize {
        let k = n - self.low;
        if k < 0 || k as usize >= self.dims.len() {
            0
        } else {
            self.dims[k as usize]
        }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `{degree: dim}` over the support.
    pub fn hilbert_map(&self) -> BTreeMap<i32, usize> {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| (self.low + k as i32, d))
            .collect()
    }

    /// Multiplication by variable `v` from degree n to n+1.
    pub fn operator(&self, v: usize, n: i32) -> DenseMatrix {
        let k = n - self.low;
        if k >= 0 && (k as usize) + 1 < self.dims.len() {
            self.ops[v][k as usize].clone()
        } else {
            DenseMatrix::zeros(self.dim(n + 1), self.dim(n))
        }
    }

    pub fn operators_commute(&self) -> bool {
        let r = &self.ring;
        for k in 0..self.dims.len().saturating_sub(2) {
            for a in 0..4 {
                for b in a + 1..4 {
                    let ab = self.ops[a][k + 1].mul(r, &self.ops[b][k]);
                    let ba = self.ops[b][k + 1].mul(r, &self.ops[a][k]);
                    if ab != ba {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// M(s): M(s)_n = M_{n+s}.
    pub fn shifted(&self, s: i32) -> Self {
        let mut m = self.clone();
        if !m.is_zero() {
            m.low -= s;
        }
        m
    }

    /// (M^∨)_n = (M_{-n})^*, operators transposed.
    pub fn dual(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let mut ops: [Vec<DenseMatrix>; 4] = Default::default();
        for (v, op) in ops.iter_mut().enumerate() {
            *op = self.ops[v].iter().rev().map(|a| a.transpose()).collect();
        }
        FiniteLengthModule {
            ring: self.ring,
            low: -self.high(),
            dims,
            ops,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let dims: Vec<usize> = (low..=high).map(|n| self.dim(n) + other.dim(n)).collect();
        let mut ops: [Vec<DenseMatrix>; 4] = Default::default();
        for (v, op) in ops.iter_mut().enumerate() {
            for n in low..high {
                let a = self.operator(v, n);
                let b = other.operator(v, n);
                let mut m = DenseMatrix::zeros(a.nrows() + b.nrows(), a.ncols() + b.ncols());
                for i in 0..a.nrows() {
                    for j in 0..a.ncols() {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..b.nrows() {
                    for j in 0..b.ncols() {
                        m.set(a.nrows() + i, a.ncols() + j, b.get(i, j));
                    }
                }
                op.push(m);
            }
        }
        FiniteLengthModule {
            ring: self.ring,
            low,
            dims,
            ops,
        }
        .trimmed()
    }

    /// Basis of the degree-0 operator-commuting maps `self -> other`; each
    /// element lists one matrix per degree of `self`'s support.
    pub fn hom_basis(&self, other: &Self) -> Vec<Vec<DenseMatrix>> {
        let r = &self.ring;
        if self.is_zero() {
            return vec![];
        }
        let degrees: Vec<i32> = (self.low..=self.high()).collect();
        let mut offset = Vec::with_capacity(degrees.len());
        let mut unknowns = 0;
        for &n in &degrees {
            offset.push(unknowns);
            unknowns += other.dim(n) * self.dim(n);
        }
        if unknowns == 0 {
            return vec![];
        }
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for (k, &n) in degrees.iter().enumerate() {
            let dm = self.dim(n);
            let dn_next = other.dim(n + 1);
            let dn = other.dim(n);
            for v in 0..4 {
                let am = self.operator(v, n);
                let an = other.operator(v, n);
                // φ_{n+1} A^M - A^N φ_n = 0, entry (i, j)
                for i in 0..dn_next {
                    for j in 0..dm {
                        let mut row = vec![0u32; unknowns];
                        if k + 1 < degrees.len() {
                            let dm1 = self.dim(n + 1);
                            for kk in 0..dm1 {
                                let c = am.get(kk, j);
                                if c != 0 {
                                    let idx = offset[k + 1] + i * dm1 + kk;
                                    row[idx] = r.add(row[idx], c);
                                }
                            }
                        }
                        for kk in 0..dn {
                            let c = an.get(i, kk);
                            if c != 0 {
                                let idx = offset[k] + kk * dm + j;
                                row[idx] = r.sub(row[idx], c);
                            }
                        }
                        if row.iter().any(|&x| x != 0) {
                            rows.push(row);
                        }
                    }
                }
            }
        }
        let system = if rows.is_empty() {
            DenseMatrix::zeros(0, unknowns)
        } else {
            DenseMatrix::from_rows(&rows, unknowns)
        };
        system
            .kernel(r)
            .into_iter()
            .map(|x| {
                degrees
                    .iter()
                    .enumerate()
                    .map(|(k, &n)| {
                        let (dn, dm) = (other.dim(n), self.dim(n));
                        let mut m = DenseMatrix::zeros(dn, dm);
                        for i in 0..dn {
                            for j in 0..dm {
                                m.set(i, j, x[offset[k] + i * dm + j]);
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks that `map` (one matrix per degree of self) is an isomorphism
    /// of graded modules onto `other`.
    pub fn is_isomorphism(&self, other: &Self, map: &[DenseMatrix]) -> bool {
        let r = &self.ring;
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero() && map.is_empty();
        }
        if self.low != other.low || self.dims != other.dims || map.len() != self.dims.len() {
            return false;
        }
        if !map.iter().all(|m| m.is_invertible(r)) {
            return false;
        }
        for k in 0..self.dims.len() - 1 {
            for v in 0..4 {
                let lhs = map[k + 1].mul(r, &self.ops[v][k]);
                let rhs = other.ops[v][k].mul(r, &map[k]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Decides `self(shift) ≅ other`, searching the shift aligning supports
    /// when `allow_shift`.
    pub fn isomorphic<R: Rng>(&self, other: &Self, allow_shift: bool, trials: usize, rng: &mut R) -> IsoVerdict {
        if self.is_zero() || other.is_zero() {
            return if self.is_zero() && other.is_zero() {
                IsoVerdict::Iso {
                    shift: 0,
                    map: vec![],
                }
            } else {
                IsoVerdict::NotIso {
                    obstruction: "exactly one module is zero".into(),
                }
            };
        }
        let shift = if allow_shift { self.low - other.low } else { 0 };
        let m = self.shifted(shift);
        if m.low != other.low || m.dims != other.dims {
            return IsoVerdict::NotIso {
                obstruction: format!(
                    "Hilbert functions differ: {:?} vs {:?}",
                    m.hilbert_map(),
                    other.hilbert_map()
                ),
            };
        }
        let r = &self.ring;
        let basis = m.hom_basis(other);
        if basis.is_empty() {
            return IsoVerdict::NotIso {
                obstruction: "no nonzero degree-0 homomorphism".into(),
            };
        }
        for (k, &d) in m.dims.iter().enumerate() {
            let n = m.low + k as i32;
            let stacked = basis[1..]
                .iter()
                .fold(basis[0][k].clone(), |acc, b| acc.vstack(&b[k]));
            if stacked.rank(r) < d {
                return IsoVerdict::NotIso {
                    obstruction: format!("every homomorphism has a kernel in degree {n}"),
                };
            }
            let side = basis[1..]
                .iter()
                .fold(basis[0][k].clone(), |acc, b| acc.hstack(&b[k]));
            if side.rank(r) < d {
                return IsoVerdict::NotIso {
                    obstruction: format!("no homomorphism is onto in degree {n}"),
                };
            }
        }
        let p = r.characteristic();
        for _ in 0..trials {
            let coeffs: Vec<u32> = (0..basis.len()).map(|_| rng.gen_range(0..p)).collect();
            let map: Vec<DenseMatrix> = (0..m.dims.len())
                .map(|k| {
                    let (rows, cols) = (basis[0][k].nrows(), basis[0][k].ncols());
                    let mut acc = DenseMatrix::zeros(rows, cols);
                    for (b, &c) in basis.iter().zip(&coeffs) {
                        for i in 0..rows {
                            for j in 0..cols {
                                let v = r.add(acc.get(i, j), r.mul(c, b[k].get(i, j)));
                                acc.set(i, j, v);
                            }
                        }
                    }
                    acc
                })
                .collect();
            if m.is_isomorphism(other, &map) {
                return IsoVerdict::Iso { shift, map };
            }
        }
        IsoVerdict::Inconclusive { trials }
    }
}
