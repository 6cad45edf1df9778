//! Graded modules given by presentations `F1 -> F0 -> M -> 0`, and degree-0
//! maps between them.

use std::sync::OnceLock;

use rand::Rng;

use super::hilbert::{monomial_numerator, HilbertPolynomial, HilbertSeries};
use crate::error::{Error, Result};
use crate::poly::{
    minimal_columns, minimal_generators, syzygy_module, FreeModule, FreeVector, GroebnerBasis,
    Lifter, Matrix, Monomial, PolyRing, Polynomial, Term,
};

/// Largest number of degrees a single Hilbert-function table may span.
pub const MAX_WINDOW: i32 = 400;

/// Cokernel of a homogeneous matrix between twisted free modules.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: PolyRing,
    relations: Matrix,
    gb: OnceLock<GroebnerBasis>,
}

impl PresentedModule {
    pub fn new(ring: &PolyRing, relations: Matrix) -> Self {
        PresentedModule {
            ring: *ring,
            relations,
            gb: OnceLock::new(),
        }
    }

    pub fn free(ring: &PolyRing, module: FreeModule) -> Self {
        Self::new(ring, Matrix::zero(module, FreeModule::zero()))
    }

    pub fn zero(ring: &PolyRing) -> Self {
        Self::free(ring, FreeModule::zero())
    }

    /// R/I.
    pub fn quotient_ring(ring: &PolyRing, gens: &[Polynomial]) -> Result<Self> {
        let cols: Vec<FreeVector> = gens
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| g.as_vector().clone())
            .collect();
        let m = Matrix::from_columns(FreeModule::new(vec![0]), cols)?;
        Ok(Self::new(ring, m))
    }

    /// The ideal I as a module: minimal generators, relations their syzygies.
    pub fn from_ideal(ring: &PolyRing, gens: &[Polynomial]) -> Result<Self> {
        let vecs: Vec<FreeVector> = gens.iter().map(|g| g.as_vector().clone()).collect();
        let gmat = minimal_columns(ring, &FreeModule::new(vec![0]), vecs)?;
        if gmat.ncols() == 0 {
            return Ok(Self::zero(ring));
        }
        Ok(Self::new(ring, syzygy_module(ring, &gmat)?))
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    /// F0: the free module on the generators.
    pub fn generators(&self) -> &FreeModule {
        self.relations.target()
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    /// Gröbner basis of the relation submodule of F0.
    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            GroebnerBasis::new(&self.ring, self.generators(), self.relations.columns())
                .expect("relations are homogeneous by construction")
        })
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        Self::new(&self.ring, self.relations.direct_sum(&self.ring, &other.relations))
    }

    /// M(s), so that M(s)_n = M_{n+s}.
    pub fn shifted(&self, s: i32) -> PresentedModule {
        Self::new(&self.ring, self.relations.shifted(s))
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        let gb = self.gb();
        let mut s = HilbertSeries::zero();
        for (j, &a) in self.generators().twists.iter().enumerate() {
            let k = monomial_numerator(&gb.leading_monomials(j));
            s = s.add(&HilbertSeries::from_numerator(a, &k));
        }
        s
    }

    pub fn hilbert_function(&self, n: i32) -> i64 {
        self.hilbert_series().value(n)
    }

    /// `(n, dim M_n)` for `lo ≤ n ≤ hi`.
    pub fn hilbert_table(&self, lo: i32, hi: i32) -> Result<Vec<(i32, i64)>> {
        check_window(lo, hi)?;
        let s = self.hilbert_series();
        Ok((lo..=hi).map(|n| (n, s.value(n))).collect())
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        self.hilbert_series().polynomial()
    }

    pub fn is_zero(&self) -> bool {
        self.generators().rank() == 0 || self.gb().is_everything()
    }

    pub fn is_finite_length(&self) -> bool {
        self.hilbert_polynomial().is_zero()
    }

    /// Degrees `lo..=hi` outside of which a finite-length module vanishes.
    pub fn support_bounds(&self) -> Result<Option<(i32, i32)>> {
        if !self.is_finite_length() {
            return Err(Error::NotFiniteLength);
        }
        let s = self.hilbert_series();
        let Some(lo) = self.generators().twists.iter().copied().min() else {
            return Ok(None);
        };
        let top_gen = self.generators().twists.iter().copied().max().unwrap();
        let mut hi = None;
        let mut n = lo;
        // past the generator degrees, a vanishing piece forces vanishing above
        loop {
            if s.value(n) != 0 {
                hi = Some(n);
            } else if n >= top_gen {
                break;
            }
            n += 1;
            if n - lo > MAX_WINDOW {
                return Err(Error::WindowTooLarge { lo, hi: n });
            }
        }
        let lo = (lo..=n).find(|&k| s.value(k) != 0);
        Ok(lo.zip(hi))
    }

    /// Presentation with unit entries eliminated and minimal relations.
    pub fn minimal_presentation(&self) -> Result<PresentedModule> {
        let ring = &self.ring;
        let mut target = self.generators().clone();
        let mut cols: Vec<FreeVector> = self
            .relations
            .columns()
            .iter()
            .filter(|c| !c.is_zero())
            .cloned()
            .collect();
        loop {
            let unit = cols.iter().enumerate().find_map(|(j, c)| {
                c.terms()
                    .iter()
                    .find(|t| t.mono.is_one())
                    .map(|t| (j, t.comp as usize, t.coeff))
            });
            let Some((j, i, c)) = unit else { break };
            let pivot = cols.remove(j);
            let inv = ring.inv(c);
            for col in cols.iter_mut() {
                let e = col.component(i);
                if !e.is_zero() {
                    let factor = e.scale(ring, inv);
                    *col = col.sub(ring, &pivot.mul_poly(ring, &factor));
                }
            }
            // drop row i and renumber components above it
            for col in cols.iter_mut() {
                *col = col.map_components(ring, |k| match k.cmp(&i) {
                    std::cmp::Ordering::Less => Some(k),
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Greater => Some(k - 1),
                });
            }
            let mut tw = target.twists.clone();
            tw.remove(i);
            target = FreeModule::new(tw);
            cols.retain(|c| !c.is_zero());
        }
        // sort generators by ascending twist
        let mut perm: Vec<usize> = (0..target.rank()).collect();
        perm.sort_by_key(|&k| (target.twists[k], k));
        let mut inverse = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let target = FreeModule::new(perm.iter().map(|&k| target.twists[k]).collect());
        let cols: Vec<FreeVector> = cols
            .into_iter()
            .map(|c| c.map_components(ring, |k| Some(inverse[k])))
            .collect();
        let rel = minimal_columns(ring, &target, cols)?;
        Ok(Self::new(ring, rel))
    }

    /// A random element of F0 of degree `n` (a combination of all monomial
    /// multiples of the generators).
    pub fn random_element<R: Rng>(&self, n: i32, rng: &mut R) -> FreeVector {
        let p = self.ring.characteristic();
        let mut terms = Vec::new();
        for (j, &a) in self.generators().twists.iter().enumerate() {
            for mono in Monomial::all_of_degree(n - a) {
                terms.push(Term {
                    coeff: rng.gen_range(0..p),
                    mono,
                    comp: j as u32,
                });
            }
        }
        FreeVector::from_terms(&self.ring, terms)
    }

    /// Whether `v ∈ F0` maps to zero in M.
    pub fn is_zero_element(&self, v: &FreeVector) -> Result<bool> {
        self.gb().contains(v)
    }
}

pub(crate) fn check_window(lo: i32, hi: i32) -> Result<()> {
    if hi < lo || hi - lo > MAX_WINDOW {
        return Err(Error::WindowTooLarge { lo, hi });
    }
    Ok(())
}

/// `gens(G) / (gens(G) ∩ image(rels))` as a presented module on the columns of `gens`.
pub fn subquotient(ring: &PolyRing, gens: &Matrix, rels: &Matrix) -> Result<PresentedModule> {
    let g = gens.ncols();
    if g == 0 {
        return Ok(PresentedModule::zero(ring));
    }
    let combined = gens.hstack(rels)?;
    let lifter = Lifter::new(ring, &combined)?;
    let first: Vec<FreeVector> = lifter
        .syzygies()
        .iter()
        .map(|s| s.map_components(ring, |k| (k < g).then_some(k)))
        .filter(|v| !v.is_zero())
        .collect();
    let rel = minimal_columns(ring, gens.source(), first)?;
    Ok(PresentedModule::new(ring, rel))
}

/// Presentation of ker(phi): generators are the syzygies of the columns,
/// relations their syzygies.
pub fn module_kernel(ring: &PolyRing, phi: &Matrix) -> Result<PresentedModule> {
    let k = syzygy_module(ring, phi)?;
    if k.ncols() == 0 {
        return Ok(PresentedModule::zero(ring));
    }
    Ok(PresentedModule::new(ring, syzygy_module(ring, &k)?))
}

/// Degree-0 homomorphism of presented modules, given on generators.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: PresentedModule,
    target: PresentedModule,
    matrix: Matrix,
}

impl GradedMap {
    /// Checks that relations of the source land in the relations of the target.
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Matrix) -> Result<Self> {
        if matrix.source() != source.generators() || matrix.target() != target.generators() {
            return Err(Error::ShapeMismatch(
                "map matrix must go between the generator modules".into(),
            ));
        }
        let ring = *source.ring();
        for c in source.relations().columns() {
            let image = matrix.apply(&ring, c);
            if !target.is_zero_element(&image)? {
                return Err(Error::IllDefinedMap(
                    "a source relation does not map into the target relations".into(),
                ));
            }
        }
        Ok(GradedMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(module: &PresentedModule) -> Self {
        GradedMap {
            source: module.clone(),
            target: module.clone(),
            matrix: Matrix::identity(module.generators()),
        }
    }

    pub fn source(&self) -> &PresentedModule {
        &self.source
    }

    pub fn target(&self) -> &PresentedModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn compose(&self, ring: &PolyRing, after: &GradedMap) -> Result<GradedMap> {
        GradedMap::new(
            self.source.clone(),
            after.target.clone(),
            after.matrix.compose(ring, &self.matrix)?,
        )
    }

    pub fn is_zero(&self) -> Result<bool> {
        for c in self.matrix.columns() {
            if !self.target.is_zero_element(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The kernel with its inclusion into the source.
    pub fn kernel_inclusion(&self) -> Result<GradedMap> {
        let ring = *self.source.ring();
        let both = self.matrix.hstack(self.target.relations())?;
        let lifter = Lifter::new(&ring, &both)?;
        let g = self.matrix.ncols();
        let pre: Vec<FreeVector> = lifter
            .syzygies()
            .iter()
            .map(|s| s.map_components(&ring, |k| (k < g).then_some(k)))
            .filter(|v| !v.is_zero())
            .collect();
        let pre = minimal_columns(&ring, self.source.generators(), pre)?;
        let k = subquotient(&ring, &pre, self.source.relations())?;
        if pre.ncols() == 0 {
            let zero = Matrix::zero(self.source.generators().clone(), FreeModule::zero());
            return GradedMap::new(k, self.source.clone(), zero);
        }
        GradedMap::new(k, self.source.clone(), pre)
    }

    pub fn kernel(&self) -> Result<PresentedModule> {
        Ok(self.kernel_inclusion()?.source)
    }

    pub fn cokernel(&self) -> Result<PresentedModule> {
        let ring = *self.source.ring();
        let rel = self.target.relations().hstack(&self.matrix)?;
        Ok(PresentedModule::new(&ring, rel))
    }

    /// HS(ker) = HS(source) - HS(target) + HS(coker), so no syzygies are needed.
    pub fn is_injective(&self) -> Result<bool> {
        let image = self.target.hilbert_series().sub(&self.cokernel()?.hilbert_series());
        Ok(self.source.hilbert_series() == image)
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.cokernel()?.is_zero())
    }
}

/// Indices of a minimal subset of the generators of `module` that still
/// generates it (relations are processed before generators of equal degree).
pub fn minimal_generator_indices(module: &PresentedModule) -> Result<Vec<usize>> {
    let f0 = module.generators();
    let r = module.relations().ncols();
    let mut gens: Vec<FreeVector> = module.relations().columns().to_vec();
    gens.extend((0..f0.rank()).map(FreeVector::unit));
    let keep = minimal_generators(module.ring(), f0, &gens)?;
    Ok(keep.into_iter().filter(|&k| k >= r).map(|k| k - r).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polys;

    fn ring() -> PolyRing {
        PolyRing::default()
    }

    #[test]
    fn quotient_hilbert_functions() {
        let r = ring();
        let m = PresentedModule::quotient_ring(&r, &parse_polys(&r, "X, Y, Z^2, T^2").unwrap()).unwrap();
        assert_eq!(
            m.hilbert_table(-1, 3).unwrap(),
            vec![(-1, 0), (0, 1), (1, 2), (2, 1), (3, 0)]
        );
        assert_eq!(m.support_bounds().unwrap(), Some((0, 2)));
        let line = PresentedModule::quotient_ring(&r, &parse_polys(&r, "X, Y").unwrap()).unwrap();
        assert_eq!(line.hilbert_function(5), 6);
        assert_eq!(line.hilbert_polynomial().curve_degree_genus(), Some((1, 0)));
        assert!(line.support_bounds().is_err());
        let free = PresentedModule::free(&r, FreeModule::new(vec![2]));
        assert_eq!(free.hilbert_function(3), 4);
        assert!(m.hilbert_table(0, 10_000).is_err());
    }

    #[test]
    fn pruning_removes_units() {
        let r = ring();
        // R^2 / (e0 - X e1) ≅ R(-1)... generator e0 in degree 1
        let rel = crate::poly::parse_matrix(&r, r#"{"target":[1,0],"rows":[["1"],["-X"]]}"#).unwrap();
        let m = PresentedModule::new(&r, rel);
        let p = m.minimal_presentation().unwrap();
        assert_eq!(p.generators().twists, vec![0]);
        assert_eq!(p.relations().ncols(), 0);
        assert_eq!(m.hilbert_series(), p.hilbert_series());
    }

    #[test]
    fn koszul_kernel_and_ideal_module() {
        let r = ring();
        let phi = crate::poly::parse_matrix(&r, r#"{"target":[0],"rows":[["X","Y","Z","T"]]}"#).unwrap();
        let k = module_kernel(&r, &phi).unwrap();
        assert_eq!(k.generators().rank(), 6);
        assert_eq!(k.hilbert_polynomial().six_times_coefficients()[3], 3);
        let id = crate::poly::Matrix::identity(&FreeModule::new(vec![0, 1]));
        assert!(module_kernel(&r, &id).unwrap().is_zero());
        let i = PresentedModule::from_ideal(&r, &parse_polys(&r, "X, Y").unwrap()).unwrap();
        assert_eq!(i.generators().twists, vec![1, 1]);
        assert_eq!(i.hilbert_function(2), 10 - 3);
    }

    #[test]
    fn redundant_generators_are_dropped() {
        let r = ring();
        // R^2 / (e1 - X e0): e1 is redundant
        let rel = crate::poly::parse_matrix(&r, r#"{"target":[0,1],"rows":[["-X"],["1"]]}"#).unwrap();
        let m = PresentedModule::new(&r, rel);
        assert_eq!(minimal_generator_indices(&m).unwrap(), vec![0]);
    }

    #[test]
    fn map_kernel_and_cokernel() {
        let r = ring();
        // R(-1) --X--> R
        let src = PresentedModule::free(&r, FreeModule::new(vec![1]));
        let tgt = PresentedModule::free(&r, FreeModule::new(vec![0]));
        let mx = crate::poly::parse_matrix(&r, r#"{"target":[0],"rows":[["X"]]}"#).unwrap();
        let f = GradedMap::new(src, tgt, mx).unwrap();
        assert!(f.is_injective().unwrap());
        assert!(!f.is_surjective().unwrap());
        assert_eq!(f.cokernel().unwrap().hilbert_function(3), 10);
        // R/(X) --Y--> R/(X) is well defined; R --X--> R/(X) is zero
        let q = PresentedModule::quotient_ring(&r, &parse_polys(&r, "X").unwrap()).unwrap();
        let qs = q.shifted(-1);
        let my = crate::poly::parse_matrix(&r, r#"{"target":[0],"source":[1],"rows":[["Y"]]}"#).unwrap();
        let g = GradedMap::new(qs, q.clone(), my).unwrap();
        assert!(g.is_injective().unwrap());
        let bad = crate::poly::parse_matrix(&r, r#"{"target":[0],"source":[1],"rows":[["Y"]]}"#).unwrap();
        let free1 = PresentedModule::quotient_ring(&r, &parse_polys(&r, "Y").unwrap()).unwrap().shifted(-1);
        assert!(matches!(
            GradedMap::new(free1, PresentedModule::quotient_ring(&r, &parse_polys(&r, "X").unwrap()).unwrap(), bad),
            Err(Error::IllDefinedMap(_))
        ));
    }
}
