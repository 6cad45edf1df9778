//! Dense accumulators for homogeneous reduction.
//!
//! Every term of a fixed degree in a twisted free module gets one slot, and
//! slots are laid out in decreasing term order. Reducing the term in slot `i`
//! only touches slots after `i`, so a single left-to-right sweep performs a
//! complete reduction without re-merging term lists.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use super::field::PolyRing;
use super::monomial::{Monomial, MonomialOrder};
use super::vector::{Term, TermCmp};

pub(crate) struct DenseSpace {
    /// per component: start of its block in rank order, if any monomial fits
    offsets: Vec<Option<usize>>,
    /// rank-order index -> slot
    slot_of: Vec<u32>,
    /// slot -> (monomial, component)
    terms: Vec<(Monomial, u32)>,
}

fn tetra(n: usize) -> usize {
    n * (n + 1) * (n + 2) / 6
}

fn tri(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of a monomial among those of its degree (any fixed bijection).
#[inline]
fn rank(m: &Monomial) -> usize {
    let [_, b, c, d] = m.exps();
    let s3 = d as usize;
    let s2 = s3 + c as usize;
    let s1 = s2 + b as usize;
    tetra(s1) + tri(s2) + s3
}

type SpaceKey = (MonomialOrder, Vec<i32>);

static SPACES: LazyLock<Mutex<HashMap<SpaceKey, Arc<DenseSpace>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

impl DenseSpace {
    /// Slots for degree `d` in the module with the given twists.
    pub fn get(order: MonomialOrder, twists: &[i32], d: i32) -> Arc<DenseSpace> {
        let degs: Vec<i32> = twists.iter().map(|&t| d.saturating_sub(t).max(-1)).collect();
        let key = (order, degs);
        if let Some(s) = SPACES.lock().unwrap().get(&key) {
            return s.clone();
        }
        let space = Arc::new(Self::build(order, &key.1));
        SPACES.lock().unwrap().insert(key, space.clone());
        space
    }

    fn build(order: MonomialOrder, degs: &[i32]) -> DenseSpace {
        let mut offsets = Vec::with_capacity(degs.len());
        let mut terms = Vec::new();
        let mut total = 0;
        for (c, &e) in degs.iter().enumerate() {
            if e < 0 {
                offsets.push(None);
                continue;
            }
            offsets.push(Some(total));
            let monos = Monomial::all_of_degree(e);
            total += monos.len();
            terms.extend(monos.into_iter().map(|m| (m, c as u32)));
        }
        let cmp = TermCmp::plain(order);
        let as_term = |&(mono, comp): &(Monomial, u32)| Term { coeff: 1, mono, comp };
        terms.sort_by(|a, b| cmp.cmp(&as_term(b), &as_term(a)));
        let mut slot_of = vec![0u32; total];
        for (i, (m, c)) in terms.iter().enumerate() {
            slot_of[offsets[*c as usize].unwrap() + rank(m)] = i as u32;
        }
        DenseSpace {
            offsets,
            slot_of,
            terms,
        }
    }

    #[inline]
    fn slot(&self, mono: &Monomial, comp: u32) -> usize {
        let off = self.offsets[comp as usize].expect("term of the wrong degree");
        self.slot_of[off + rank(mono)] as usize
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }
}

/// Coefficients are kept unreduced below 2^62 and reduced lazily.
const LAZY_BOUND: u64 = 1 << 62;

pub(crate) struct Dense {
    space: Arc<DenseSpace>,
    arr: Vec<u64>,
    p: u64,
    lo: usize,
    hi: usize,
}

impl Dense {
    pub fn new(ring: &PolyRing, space: Arc<DenseSpace>) -> Self {
        let n = space.len();
        Dense {
            space,
            arr: vec![0; n],
            p: ring.characteristic() as u64,
            lo: n,
            hi: 0,
        }
    }

    /// `self += c * q * terms`.
    pub fn add(&mut self, terms: &[Term], c: u32, q: Monomial) {
        if c == 0 {
            return;
        }
        let c = c as u64;
        for t in terms {
            let i = self.space.slot(&t.mono.mul(&q), t.comp);
            let s = self.arr[i] + c * t.coeff as u64;
            self.arr[i] = if s >= LAZY_BOUND { s % self.p } else { s };
            self.lo = self.lo.min(i);
            self.hi = self.hi.max(i + 1);
        }
    }

    /// Reduced coefficient at slot `i`, clearing the slot.
    #[inline]
    fn take(&mut self, i: usize) -> u32 {
        let v = self.arr[i];
        if v == 0 {
            return 0;
        }
        self.arr[i] = 0;
        (v % self.p) as u32
    }

    /// All nonzero terms in decreasing order; leaves the accumulator empty.
    pub fn drain(&mut self) -> Vec<Term> {
        let mut out = Vec::new();
        for i in self.lo..self.hi {
            let v = self.take(i);
            if v != 0 {
                let (mono, comp) = self.space.terms[i];
                out.push(Term { coeff: v, mono, comp });
            }
        }
        self.lo = self.arr.len();
        self.hi = 0;
        out
    }

    /// Sweeps the accumulator against monic `basis` elements (indexed per
    /// component by `by_comp`). Without `full` the sweep stops reducing at
    /// the first irreducible term. `step(k, c, q)` reports each subtraction
    /// of `c * q * basis[k]`. Leaves the accumulator empty.
    pub fn reduce<B: AsRef<[Term]>>(
        &mut self,
        ring: &PolyRing,
        basis: &[B],
        by_comp: &[Vec<usize>],
        skip: Option<usize>,
        full: bool,
        mut step: impl FnMut(usize, u32, Monomial),
    ) -> Vec<Term> {
        let mut out = Vec::new();
        let mut reducing = true;
        let mut i = self.lo;
        while i < self.hi {
            let v = self.take(i);
            if v != 0 {
                let (mono, comp) = self.space.terms[i];
                let div = if reducing {
                    by_comp[comp as usize]
                        .iter()
                        .copied()
                        .find(|&k| Some(k) != skip && basis[k].as_ref()[0].mono.divides(&mono))
                } else {
                    None
                };
                match div {
                    Some(k) => {
                        let b = basis[k].as_ref();
                        let q = b[0].mono.quotient_of(&mono).expect("divisor");
                        self.add(&b[1..], ring.neg(v), q);
                        step(k, v, q);
                    }
                    None => {
                        out.push(Term { coeff: v, mono, comp });
                        reducing &= full;
                    }
                }
            }
            i += 1;
        }
        self.lo = self.arr.len();
        self.hi = 0;
        out
    }
}
