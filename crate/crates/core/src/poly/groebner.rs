//! Homogeneous Buchberger engine for submodules of twisted free modules.
//!
//! S-pairs and input generators are processed degree by degree. Because every
//! input is homogeneous, the basis after finishing degree `d` is a
//! `d`-truncated Gröbner basis, and an input generator that reduces to zero at
//! its own degree lies in the span of lower-degree material plus the
//! generators already kept: this is how minimal generating subsets are found.
//!
//! Syzygies and lifts track, for every basis element, its expression in the
//! input generators. By Schreyer's theorem the S-pairs that reduce to zero
//! (with the product criterion switched off) and the inputs that reduce to
//! zero then give a generating set of the syzygy module.

use super::field::PolyRing;
use super::matrix::Matrix;
use super::monomial::Monomial;
use std::collections::BTreeMap;

use super::dense::{Dense, DenseSpace};
use super::vector::{check_shape, FreeModule, FreeVector, Polynomial, Term, TermCmp};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    comp: u32,
    degree: i32,
}

struct Engine<'a> {
    ring: &'a PolyRing,
    cmp: TermCmp,
    twists: &'a [i32],
    product_criterion: bool,
    basis: Vec<Vec<Term>>,
    /// basis indices per component, for divisor lookup
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    truncate: Option<i32>,
    /// cofactors of each basis element over the inputs, when tracking
    tags: Option<Vec<FreeVector>>,
    tag_twists: &'a [i32],
    syzygies: Vec<FreeVector>,
}

impl<'a> Engine<'a> {
    fn new(ring: &'a PolyRing, twists: &'a [i32], truncate: Option<i32>) -> Self {
        Engine {
            ring,
            cmp: TermCmp::plain(ring.order()),
            twists,
            product_criterion: twists.len() == 1,
            basis: Vec::new(),
            by_comp: vec![Vec::new(); twists.len()],
            pairs: Vec::new(),
            truncate,
            tags: None,
            tag_twists: &[],
            syzygies: Vec::new(),
        }
    }

    /// Tracks cofactors over inputs whose degrees are `tag_twists`.
    fn tracking(mut self, tag_twists: &'a [i32]) -> Self {
        self.product_criterion = false;
        self.tags = Some(Vec::new());
        self.tag_twists = tag_twists;
        self
    }

    fn lead(&self, k: usize) -> &Term {
        &self.basis[k][0]
    }

    fn accumulator(&self, d: i32) -> Dense {
        Dense::new(self.ring, DenseSpace::get(self.ring.order(), self.twists, d))
    }

    fn tag_accumulator(&self, d: i32) -> Option<Dense> {
        self.tags
            .as_ref()
            .map(|_| Dense::new(self.ring, DenseSpace::get(self.ring.order(), self.tag_twists, d)))
    }

    /// Reduces the contents of `acc`; `tag` follows along when tracking.
    fn sweep(&self, acc: &mut Dense, mut tag: Option<&mut Dense>, skip: Option<usize>, full: bool) -> Vec<Term> {
        let ring = self.ring;
        let tags = self.tags.as_ref();
        acc.reduce(ring, &self.basis, &self.by_comp, skip, full, |k, c, q| {
            if let (Some(tg), Some(tags)) = (tag.as_deref_mut(), tags) {
                tg.add(tags[k].terms(), ring.neg(c), q);
            }
        })
    }

    fn monic(&self, v: Vec<Term>, tag: &mut FreeVector) -> Vec<Term> {
        let inv = self.ring.inv(v[0].coeff);
        if self.tags.is_some() {
            *tag = tag.scale(self.ring, inv);
        }
        v.into_iter()
            .map(|t| Term {
                coeff: self.ring.mul(t.coeff, inv),
                ..t
            })
            .collect()
    }

    /// Reduces what was loaded into the accumulators and either inserts the
    /// result or records the syzygy it witnesses.
    fn settle(&mut self, acc: &mut Dense, tag_acc: Option<&mut Dense>) -> bool {
        let mut tag_acc = tag_acc;
        let r = self.sweep(acc, tag_acc.as_deref_mut(), None, false);
        let mut tag = tag_acc.map_or_else(FreeVector::zero, |t| FreeVector::from_sorted(t.drain()));
        if !r.is_empty() {
            let r = self.monic(r, &mut tag);
            self.insert(r, tag);
            true
        } else {
            if self.tags.is_some() && !tag.is_zero() {
                self.syzygies.push(tag);
            }
            false
        }
    }

    fn make_pair(&self, i: usize, j: usize) -> Option<Pair> {
        let a = self.lead(i);
        let b = self.lead(j);
        if a.comp != b.comp {
            return None;
        }
        let lcm = a.mono.lcm(&b.mono);
        Some(Pair {
            i,
            j,
            lcm,
            comp: a.comp,
            degree: lcm.degree() + self.twists[a.comp as usize],
        })
    }

    /// Insert a new monic, reduced element and update the pair set
    /// with the Gebauer-Möller criteria.
    fn insert(&mut self, h: Vec<Term>, tag: FreeVector) {
        let hk = self.basis.len();
        self.by_comp[h[0].comp as usize].push(hk);
        self.basis.push(h);
        if let Some(tags) = &mut self.tags {
            tags.push(tag);
        }
        let ht = *self.lead(hk);
        let mut cand: Vec<Pair> = (0..hk).filter_map(|g| self.make_pair(g, hk)).collect();
        let mut kept: Vec<Pair> = Vec::new();
        let mut coprime_flags: Vec<bool> = Vec::new();
        while let Some(p) = cand.pop() {
            let coprime = self.product_criterion && {
                let g = self.lead(p.i);
                g.mono.is_coprime(&ht.mono)
            };
            let blocked = cand.iter().chain(kept.iter()).any(|q| q.lcm.divides(&p.lcm));
            if coprime || !blocked {
                kept.push(p);
                coprime_flags.push(coprime);
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .zip(coprime_flags)
            .filter(|(_, c)| !c)
            .map(|(p, _)| p)
            .collect();
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if p.comp != ht.comp || !ht.mono.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i][0].mono.lcm(&ht.mono);
            let lj = basis[p.j][0].mono.lcm(&ht.mono);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);
    }

    /// Runs Buchberger over `inputs` (sorted internally by degree); returns
    /// for every input whether it was kept as a minimal generator.
    fn run(&mut self, inputs: &[(Vec<Term>, i32)]) -> Vec<bool> {
        let mut order: Vec<usize> = (0..inputs.len()).collect();
        order.sort_by_key(|&k| inputs[k].1);
        let mut minimal = vec![false; inputs.len()];
        let mut next_input = 0;
        loop {
            let pd = self.pairs.iter().map(|p| p.degree).min();
            let id = order.get(next_input).map(|&k| inputs[k].1);
            let d = match (pd, id) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.min(b),
            };
            if let Some(t) = self.truncate {
                if d > t {
                    break;
                }
            }
            let mut batch: Vec<Pair> = Vec::new();
            self.pairs.retain(|p| {
                if p.degree == d {
                    batch.push(*p);
                    false
                } else {
                    true
                }
            });
            let ord = self.ring.order();
            batch.sort_by(|a, b| {
                (a.lcm.key(ord), a.comp, a.i, a.j).cmp(&(b.lcm.key(ord), b.comp, b.i, b.j))
            });
            let mut acc = self.accumulator(d);
            let mut tag_acc = self.tag_accumulator(d);
            for p in batch {
                let qa = self.basis[p.i][0].mono.quotient_of(&p.lcm).unwrap();
                let qb = self.basis[p.j][0].mono.quotient_of(&p.lcm).unwrap();
                // both monic
                acc.add(&self.basis[p.i], 1, qa);
                acc.add(&self.basis[p.j], self.ring.neg(1), qb);
                if let (Some(t), Some(tags)) = (tag_acc.as_mut(), &self.tags) {
                    t.add(tags[p.i].terms(), 1, qa);
                    t.add(tags[p.j].terms(), self.ring.neg(1), qb);
                }
                self.settle(&mut acc, tag_acc.as_mut());
            }
            while next_input < order.len() && inputs[order[next_input]].1 == d {
                let k = order[next_input];
                next_input += 1;
                if inputs[k].0.is_empty() {
                    if self.tags.is_some() {
                        self.syzygies.push(FreeVector::unit(k));
                    }
                    continue;
                }
                acc.add(&inputs[k].0, 1, Monomial::ONE);
                if let Some(t) = tag_acc.as_mut() {
                    t.add(FreeVector::unit(k).terms(), 1, Monomial::ONE);
                }
                minimal[k] = self.settle(&mut acc, tag_acc.as_mut());
            }
        }
        minimal
    }

    /// Tail-reduce every element and sort by leading term, largest first.
    fn reduced_basis(&self) -> Vec<Vec<Term>> {
        let mut out: Vec<Vec<Term>> = (0..self.basis.len())
            .map(|k| {
                let lt = self.basis[k][0];
                let mut acc = self.accumulator(lt.mono.degree() + self.twists[lt.comp as usize]);
                acc.add(&self.basis[k][1..], 1, Monomial::ONE);
                let mut v = vec![lt];
                v.extend(self.sweep(&mut acc, None, Some(k), true));
                v
            })
            .collect();
        out.sort_by(|a, b| self.cmp.cmp(&b[0], &a[0]));
        out
    }
}

/// Splits a vector into its homogeneous parts.
fn homogeneous_parts(v: &FreeVector, twists: &[i32]) -> BTreeMap<i32, Vec<Term>> {
    let mut parts: BTreeMap<i32, Vec<Term>> = BTreeMap::new();
    for t in v.terms() {
        parts
            .entry(t.mono.degree() + twists[t.comp as usize])
            .or_default()
            .push(*t);
    }
    parts
}

fn index_by_comp<T: AsRef<[Term]>>(basis: &[T], rank: usize) -> Vec<Vec<usize>> {
    let mut by_comp = vec![Vec::new(); rank];
    for (k, b) in basis.iter().enumerate() {
        by_comp[b.as_ref()[0].comp as usize].push(k);
    }
    by_comp
}

fn sorted_terms(cmp: &TermCmp, v: &FreeVector) -> Vec<Term> {
    let mut t = v.terms().to_vec();
    cmp.sort(&mut t);
    t
}

fn validate(shape: &FreeModule, gens: &[FreeVector]) -> Result<Vec<i32>> {
    let mut degs = Vec::with_capacity(gens.len());
    for g in gens {
        check_shape(g, shape)?;
        if g.is_zero() {
            degs.push(i32::MIN);
            continue;
        }
        degs.push(g.degree(shape).ok_or(Error::NotHomogeneous)?);
    }
    Ok(degs)
}

/// Reduced Gröbner basis of a graded submodule of a twisted free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    shape: FreeModule,
    elements: Vec<FreeVector>,
}

impl GroebnerBasis {
    /// Reduced basis of the submodule generated by `gens`.
    pub fn new(ring: &PolyRing, shape: &FreeModule, gens: &[FreeVector]) -> Result<Self> {
        Self::compute(ring, shape, gens, None).map(|(gb, _)| gb)
    }

    /// Basis valid in degrees up to `max_degree` only.
    pub fn truncated(
        ring: &PolyRing,
        shape: &FreeModule,
        gens: &[FreeVector],
        max_degree: i32,
    ) -> Result<Self> {
        Self::compute(ring, shape, gens, Some(max_degree)).map(|(gb, _)| gb)
    }

    /// Ideal of R generated by `gens`.
    pub fn ideal(ring: &PolyRing, gens: &[Polynomial]) -> Result<Self> {
        let v: Vec<FreeVector> = gens.iter().map(|p| p.as_vector().clone()).collect();
        Self::new(ring, &FreeModule::new(vec![0]), &v)
    }

    fn compute(
        ring: &PolyRing,
        shape: &FreeModule,
        gens: &[FreeVector],
        truncate: Option<i32>,
    ) -> Result<(Self, Vec<bool>)> {
        let degs = validate(shape, gens)?;
        let mut eng = Engine::new(ring, &shape.twists, truncate);
        let inputs: Vec<(Vec<Term>, i32)> = gens
            .iter()
            .zip(&degs)
            .map(|(g, &d)| (sorted_terms(&eng.cmp, g), d))
            .collect();
        let minimal = eng.run(&inputs);
        let elements = eng
            .reduced_basis()
            .into_iter()
            .map(FreeVector::from_sorted)
            .collect();
        Ok((
            GroebnerBasis {
                ring: *ring,
                shape: shape.clone(),
                elements,
            },
            minimal,
        ))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn shape(&self) -> &FreeModule {
        &self.shape
    }

    pub fn elements(&self) -> &[FreeVector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements as polynomials (rank-one ambient).
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.elements.iter().map(|e| e.component(0)).collect()
    }

    /// Leading monomials of elements living in component `comp`.
    pub fn leading_monomials(&self, comp: usize) -> Vec<Monomial> {
        self.elements
            .iter()
            .filter_map(|e| e.leading_term())
            .filter(|t| t.comp as usize == comp)
            .map(|t| t.mono)
            .collect()
    }

    /// The whole ambient module (every component contains a unit leading term).
    pub fn is_everything(&self) -> bool {
        (0..self.shape.rank()).all(|c| self.leading_monomials(c).iter().any(|m| m.is_one()))
    }

    pub fn normal_form(&self, f: &FreeVector) -> Result<FreeVector> {
        check_shape(f, &self.shape)?;
        let by_comp = index_by_comp(&self.elements, self.shape.rank());
        let mut out: Vec<Term> = Vec::new();
        for (d, part) in homogeneous_parts(f, &self.shape.twists) {
            let mut acc = Dense::new(&self.ring, DenseSpace::get(self.ring.order(), &self.shape.twists, d));
            acc.add(&part, 1, Monomial::ONE);
            out.extend(acc.reduce(&self.ring, &self.elements, &by_comp, None, true, |_, _, _| {}));
        }
        Ok(FreeVector::from_terms(&self.ring, out))
    }

    pub fn contains(&self, f: &FreeVector) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.contains(f.as_vector()).unwrap_or(false)
    }

    /// Every element of `other` lies in this submodule.
    pub fn contains_all(&self, other: &GroebnerBasis) -> bool {
        other
            .elements
            .iter()
            .all(|e| self.contains(e).unwrap_or(false))
    }
}

/// Indices of a minimal generating subset of the graded submodule generated by `gens`.
pub fn minimal_generators(ring: &PolyRing, shape: &FreeModule, gens: &[FreeVector]) -> Result<Vec<usize>> {
    // minimality in degree d only involves the basis up to degree d
    let top = gens.iter().filter_map(|g| g.degree(shape)).max();
    let (_, minimal) = GroebnerBasis::compute(ring, shape, gens, top)?;
    Ok(minimal
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(k, _)| k)
        .collect())
}

/// Gröbner basis of the image of a matrix, with every element expressed in
/// the columns: provides syzygies and lifts.
pub struct Lifter {
    ring: PolyRing,
    target: FreeModule,
    basis: Vec<Vec<Term>>,
    by_comp: Vec<Vec<usize>>,
    tags: Vec<FreeVector>,
    syzygies: Vec<FreeVector>,
    source: FreeModule,
}

impl Lifter {
    pub fn new(ring: &PolyRing, map: &Matrix) -> Result<Self> {
        let twists = &map.target().twists;
        let mut eng = Engine::new(ring, twists, None).tracking(&map.source().twists);
        let inputs: Vec<(Vec<Term>, i32)> = map
            .columns()
            .iter()
            .enumerate()
            .map(|(j, c)| (sorted_terms(&eng.cmp, c), map.source().twists[j]))
            .collect();
        eng.run(&inputs);
        let tags = eng.tags.take().unwrap_or_default();
        Ok(Lifter {
            ring: *ring,
            target: map.target().clone(),
            basis: std::mem::take(&mut eng.basis),
            by_comp: std::mem::take(&mut eng.by_comp),
            tags,
            syzygies: std::mem::take(&mut eng.syzygies),
            source: map.source().clone(),
        })
    }

    /// Generators of the syzygy module (not necessarily minimal).
    pub fn syzygies(&self) -> Vec<FreeVector> {
        self.syzygies.clone()
    }

    /// Some `u` with `map(u) = v`, if `v` lies in the image.
    pub fn lift(&self, v: &FreeVector) -> Option<FreeVector> {
        if check_shape(v, &self.target).is_err() {
            return None;
        }
        let order = self.ring.order();
        let mut u = Vec::new();
        for (d, part) in homogeneous_parts(v, &self.target.twists) {
            let mut acc = Dense::new(&self.ring, DenseSpace::get(order, &self.target.twists, d));
            let mut tag = Dense::new(&self.ring, DenseSpace::get(order, &self.source.twists, d));
            acc.add(&part, 1, Monomial::ONE);
            let rest = acc.reduce(&self.ring, &self.basis, &self.by_comp, None, false, |k, c, q| {
                tag.add(self.tags[k].terms(), c, q)
            });
            if !rest.is_empty() {
                return None;
            }
            u.extend(tag.drain());
        }
        Some(FreeVector::from_terms(&self.ring, u))
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }
}

/// Columns generating the kernel of `map`, minimal and sorted by ascending degree.
pub fn syzygy_module(ring: &PolyRing, map: &Matrix) -> Result<Matrix> {
    let lifter = Lifter::new(ring, map)?;
    let syz = lifter.syzygies();
    minimal_columns(ring, map.source(), syz)
}

/// Kernel of the map `⊕ R(-deg g_i) -> ambient` sending e_i to g_i.
pub fn syzygies_of(ring: &PolyRing, shape: &FreeModule, gens: &[FreeVector]) -> Result<Matrix> {
    let m = Matrix::from_columns(shape.clone(), gens.to_vec())?;
    syzygy_module(ring, &m)
}

/// Minimal generating subset of `gens`, as a matrix with ascending source twists.
pub fn minimal_columns(ring: &PolyRing, shape: &FreeModule, gens: Vec<FreeVector>) -> Result<Matrix> {
    let gens: Vec<FreeVector> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let keep = minimal_generators(ring, shape, &gens)?;
    let mut cols: Vec<(i32, FreeVector)> = keep
        .into_iter()
        .map(|k| (gens[k].degree(shape).unwrap(), gens[k].clone()))
        .collect();
    cols.sort_by_key(|(d, _)| *d);
    Matrix::new(
        shape.clone(),
        FreeModule::new(cols.iter().map(|(d, _)| *d).collect()),
        cols.into_iter().map(|(_, c)| c).collect(),
    )
}

/// (I : J) = { f : f J ⊆ I }.
pub fn ideal_quotient(ideal: &GroebnerBasis, j: &[Polynomial]) -> Result<GroebnerBasis> {
    let ring = ideal.ring;
    if ideal.shape.rank() != 1 {
        return Err(Error::ShapeMismatch("ideal quotient needs a rank-one ambient".into()));
    }
    let j: Vec<&Polynomial> = j.iter().filter(|p| !p.is_zero()).collect();
    if j.is_empty() {
        return Err(Error::Empty("quotient by the empty ideal".into()));
    }
    let mut degs = Vec::new();
    for p in &j {
        degs.push(p.degree().ok_or(Error::NotHomogeneous)?);
    }
    // ambient ⊕_k R(-(-deg f_k)) so the column (f_1..f_s) has degree 0
    let shape = FreeModule::new(degs.iter().map(|d| -d).collect());
    let mut cols = vec![FreeVector::from_components(
        &ring,
        &j.iter().map(|p| (*p).clone()).collect::<Vec<_>>(),
    )];
    for k in 0..j.len() {
        for g in ideal.polynomials() {
            cols.push(g.in_component(k));
        }
    }
    let m = Matrix::from_columns(shape, cols)?;
    let lifter = Lifter::new(&ring, &m)?;
    let firsts: Vec<FreeVector> = lifter
        .syzygies()
        .iter()
        .map(|s| s.component(0).into_vector())
        .filter(|v| !v.is_zero())
        .collect();
    let mut gens = firsts;
    gens.extend(ideal.elements.iter().cloned());
    GroebnerBasis::new(&ring, &FreeModule::new(vec![0]), &gens)
}

/// The irrelevant ideal (X, Y, Z, T).
pub fn irrelevant_ideal() -> Vec<Polynomial> {
    (0..4).map(Polynomial::var).collect()
}

/// (I : J^∞) by iterated quotients until the reduced basis stabilizes.
pub fn saturate(ideal: &GroebnerBasis, j: &[Polynomial]) -> Result<GroebnerBasis> {
    let mut cur = ideal.clone();
    for _ in 0..64 {
        let next = ideal_quotient(&cur, j)?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::Certification("saturation did not stabilize".into()))
}
