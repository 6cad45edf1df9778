//! Space curves: validation, degree and genus, complete-intersection linkage,
//! liaison addition, and curves cut out by sections of rank-2 sheaves.

pub mod scenario;

pub use scenario::{example39_construct, Ex39Scenario, ExpectedVsComputed};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cohomology::{ext_module, first_chern_class, CohomologyTable, FiniteLengthModule, LocalDuality};
use crate::correspondences::{is_reflexive_rank_two, sheaf_rank, ExactTriple};
use crate::error::{Error, Result};
use crate::poly::{
    ideal_quotient, irrelevant_ideal, minimal_columns, saturate, syzygy_module, FreeModule, FreeVector,
    GroebnerBasis, Lifter, Matrix, PolyRing, Polynomial,
};
use crate::resolution::{GradedMap, HilbertPolynomial, PresentedModule};

/// Which clauses of the locally Cohen–Macaulay curve test hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveCheck {
    pub saturated: bool,
    pub one_dimensional: bool,
    pub locally_cm: bool,
    pub failures: Vec<String>,
}

impl CurveCheck {
    pub fn is_curve(&self) -> bool {
        self.saturated && self.one_dimensional && self.locally_cm
    }
}

fn nonzero(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let g: Vec<Polynomial> = gens.iter().filter(|p| !p.is_zero()).cloned().collect();
    if g.is_empty() {
        return Err(Error::Empty("zero ideal".into()));
    }
    if g.iter().any(|p| !p.is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    Ok(g)
}

/// Saturated, Hilbert polynomial of degree one, and H^1_m(R/I) of finite length.
pub fn is_lcm_curve(ring: &PolyRing, gens: &[Polynomial]) -> Result<CurveCheck> {
    let g = nonzero(gens)?;
    let gb = GroebnerBasis::ideal(ring, &g)?;
    if gb.is_everything() {
        return Err(Error::Precondition("unit ideal".into()));
    }
    let mut failures = Vec::new();
    let saturated = saturate(&gb, &irrelevant_ideal())? == gb;
    if !saturated {
        failures.push("ideal is not saturated".to_string());
    }
    let q = PresentedModule::quotient_ring(ring, &gb.polynomials())?;
    let hp = q.hilbert_polynomial();
    let one_dimensional = hp.degree() == Some(1);
    if !one_dimensional {
        failures.push(format!("Hilbert polynomial {hp} does not have degree one"));
    }
    let locally_cm = one_dimensional && ext_module(&q, 3)?.is_finite_length();
    if one_dimensional && !locally_cm {
        failures.push("H^1_m(R/I) is not of finite length".to_string());
    }
    Ok(CurveCheck {
        saturated,
        one_dimensional,
        locally_cm,
        failures,
    })
}

fn require_curve(ring: &PolyRing, gens: &[Polynomial]) -> Result<()> {
    let check = is_lcm_curve(ring, gens)?;
    if !check.is_curve() {
        return Err(Error::NotACurve(check.failures.join("; ")));
    }
    Ok(())
}

fn quotient_polynomial(ring: &PolyRing, gens: &[Polynomial]) -> Result<HilbertPolynomial> {
    Ok(PresentedModule::quotient_ring(ring, gens)?.hilbert_polynomial())
}

/// (d, g) with P_{R/I}(n) = d n + 1 - g.
pub fn curve_degree_genus(ring: &PolyRing, gens: &[Polynomial]) -> Result<(i64, i64)> {
    require_curve(ring, gens)?;
    quotient_polynomial(ring, gens)?
        .curve_degree_genus()
        .ok_or_else(|| Error::NotACurve("Hilbert polynomial is not linear".into()))
}

/// The ideal as a module on exactly the given generators, in order.
pub fn ideal_module(ring: &PolyRing, gens: &[Polynomial]) -> Result<PresentedModule> {
    let g = nonzero(gens)?;
    let cols: Vec<FreeVector> = g.iter().map(|p| p.as_vector().clone()).collect();
    let m = Matrix::from_columns(FreeModule::new(vec![0]), cols)?;
    Ok(PresentedModule::new(ring, syzygy_module(ring, &m)?))
}

/// H^1_*(J_C), the Rao module.
pub fn rao_module(ring: &PolyRing, gens: &[Polynomial]) -> Result<FiniteLengthModule> {
    LocalDuality::new(&PresentedModule::from_ideal(ring, gens)?)?.h1_star()
}

fn minimal_ideal_generators(gb: &GroebnerBasis) -> Result<Vec<Polynomial>> {
    let shape = FreeModule::new(vec![0]);
    let m = minimal_columns(gb.ring(), &shape, gb.elements().to_vec())?;
    Ok(m.columns().iter().map(|c| c.component(0)).collect())
}

/// A validated curve with its numerical and cohomological data.
#[derive(Clone, Debug)]
pub struct CurveRecord {
    pub ring: PolyRing,
    pub ideal: GroebnerBasis,
    pub generators: Vec<Polynomial>,
    pub degree: i64,
    pub genus: i64,
    pub rao: FiniteLengthModule,
    pub table: CohomologyTable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveJson {
    pub ideal_generators: Vec<String>,
    pub degree: i64,
    pub genus: i64,
    pub rao: BTreeMap<i32, usize>,
    pub cohomology_table: CohomologyTable,
}

impl CurveRecord {
    pub fn new(ring: &PolyRing, gens: &[Polynomial], window: Option<(i32, i32)>) -> Result<Self> {
        require_curve(ring, gens)?;
        let ideal = GroebnerBasis::ideal(ring, &nonzero(gens)?)?;
        let generators = minimal_ideal_generators(&ideal)?;
        let (degree, genus) = quotient_polynomial(ring, &generators)?
            .curve_degree_genus()
            .ok_or_else(|| Error::NotACurve("Hilbert polynomial is not linear".into()))?;
        let ld = LocalDuality::new(&ideal_module(ring, &generators)?)?;
        let rao = ld.h1_star()?;
        let (lo, hi) = window.unwrap_or_else(|| ld.default_window());
        let table = ld.table(lo, hi)?;
        Ok(CurveRecord {
            ring: *ring,
            ideal,
            generators,
            degree,
            genus,
            rao,
            table,
        })
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.generators.clone()
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            ideal_generators: self.generators.iter().map(|p| p.display(&self.ring)).collect(),
            degree: self.degree,
            genus: self.genus,
            rao: self.rao.hilbert_map(),
            cohomology_table: self.table.clone(),
        }
    }
}

/// Two forms generate a complete intersection curve: R/(f, g) has a linear
/// Hilbert polynomial of leading coefficient deg f · deg g.
pub fn is_regular_pair(ring: &PolyRing, f: &Polynomial, g: &Polynomial) -> Result<bool> {
    let (Some(a), Some(b)) = (f.degree(), g.degree()) else {
        return Ok(false);
    };
    let hp = quotient_polynomial(ring, &[f.clone(), g.clone()])?;
    Ok(hp.degree() == Some(1) && hp.curve_degree_genus().map(|x| x.0) == Some((a * b) as i64))
}

/// The curve linked to C by the complete intersection (f, g) ⊇ I_C.
pub fn ci_link(ring: &PolyRing, curve: &[Polynomial], f: &Polynomial, g: &Polynomial) -> Result<CurveRecord> {
    require_curve(ring, curve)?;
    let gb = GroebnerBasis::ideal(ring, curve)?;
    if !gb.contains_poly(f) || !gb.contains_poly(g) {
        return Err(Error::Precondition("the linking forms must lie in the ideal".into()));
    }
    if !is_regular_pair(ring, f, g)? {
        return Err(Error::NotRegularSequence("linking forms".into()));
    }
    let ci = GroebnerBasis::ideal(ring, &[f.clone(), g.clone()])?;
    let linked = ideal_quotient(&ci, &gb.polynomials())?;
    CurveRecord::new(ring, &linked.polynomials(), None)
}

/// Liaison addition with its certified exact sequence
/// `0 -> R(-2δ) -> I_{C'}(-δ) ⊕ I_{C''}(-δ) -> I -> 0`, δ = deg P' = deg P''.
#[derive(Clone, Debug)]
pub struct LiaisonAddition {
    pub curve: CurveRecord,
    pub triple: ExactTriple,
    pub delta: i32,
}

fn cofactors(ring: &PolyRing, gens: &[Polynomial], p: &Polynomial) -> Result<FreeVector> {
    let cols: Vec<FreeVector> = gens.iter().map(|g| g.as_vector().clone()).collect();
    let m = Matrix::from_columns(FreeModule::new(vec![0]), cols)?;
    Lifter::new(ring, &m)?
        .lift(p.as_vector())
        .ok_or_else(|| Error::Precondition("form does not lie in the ideal".into()))
}

/// I = P''·I_{C'} + P'·I_{C''} with P' ∈ I_{C'}, P'' ∈ I_{C''} of equal degree
/// and without common divisor.
pub fn liaison_addition(
    ring: &PolyRing,
    c1: &[Polynomial],
    c2: &[Polynomial],
    p1: &Polynomial,
    p2: &Polynomial,
) -> Result<LiaisonAddition> {
    require_curve(ring, c1)?;
    require_curve(ring, c2)?;
    let delta = match (p1.degree(), p2.degree()) {
        (Some(a), Some(b)) if a == b && p1.is_homogeneous() && p2.is_homogeneous() => a,
        _ => return Err(Error::DegreeMismatch("P' and P'' must be forms of equal degree".into())),
    };
    let q = ideal_quotient(&GroebnerBasis::ideal(ring, &[p1.clone()])?, &[p2.clone()])?;
    if q != GroebnerBasis::ideal(ring, &[p1.clone()])? {
        return Err(Error::CommonDivisor("P' and P''".into()));
    }
    let g1 = minimal_ideal_generators(&GroebnerBasis::ideal(ring, c1)?)?;
    let g2 = minimal_ideal_generators(&GroebnerBasis::ideal(ring, c2)?)?;
    let a1 = cofactors(ring, &g1, p1)?;
    let a2 = cofactors(ring, &g2, p2)?;

    let mut products: Vec<Polynomial> = g1.iter().map(|g| g.mul(ring, p2)).collect();
    products.extend(g2.iter().map(|g| g.mul(ring, p1)));
    let i_mod = ideal_module(ring, &products)?;
    let b = ideal_module(ring, &g1)?
        .shifted(-delta)
        .direct_sum(&ideal_module(ring, &g2)?.shifted(-delta));
    let a = PresentedModule::free(ring, FreeModule::new(vec![2 * delta]));
    let off = g1.len();
    let col = a1.add(ring, &a2.map_components(ring, |k| Some(k + off)).scale(ring, ring.neg(1)));
    let i = GradedMap::new(
        a.clone(),
        b.clone(),
        Matrix::new(b.generators().clone(), a.generators().clone(), vec![col])?,
    )?;
    // generator k of the middle maps to product generator k
    let p = GradedMap::new(b.clone(), i_mod.clone(), Matrix::identity(b.generators()))?;
    let triple = ExactTriple::certify(i, p)?;
    let curve = CurveRecord::new(ring, &products, None)?;
    Ok(LiaisonAddition { curve, triple, delta })
}

/// For a module N whose sheaf is J_C(e) on a curve C: the saturated ideal
/// of C and e, read off the unique generator of Hom(N, R).
pub fn rank_one_to_ideal(n: &PresentedModule) -> Result<(Vec<Polynomial>, i32)> {
    let ring = *n.ring();
    let hom = syzygy_module(&ring, &n.relations().transpose(&ring))?;
    if hom.ncols() != 1 {
        return Err(Error::Precondition(format!(
            "Hom(N, R) has {} generators, expected one",
            hom.ncols()
        )));
    }
    let psi = hom.column(0);
    let e = hom.source().twists[0];
    let comps: Vec<Polynomial> = (0..n.generators().rank()).map(|j| psi.component(j)).collect();
    // N -> J(e), generator j ↦ ψ_j; sheaf-iso iff kernel and cokernel have finite length
    let j_mod = ideal_module(&ring, &comps)?.shifted(e);
    let keep: Vec<usize> = (0..comps.len()).filter(|&j| !comps[j].is_zero()).collect();
    let cols: Vec<FreeVector> = (0..comps.len())
        .map(|j| match keep.iter().position(|&k| k == j) {
            Some(pos) => FreeVector::unit(pos),
            None => FreeVector::zero(),
        })
        .collect();
    let map = GradedMap::new(
        n.clone(),
        j_mod.clone(),
        Matrix::new(j_mod.generators().clone(), n.generators().clone(), cols)?,
    )?;
    if !map.kernel()?.is_finite_length() || !map.cokernel()?.is_finite_length() {
        return Err(Error::Certification("the sheaf is not isomorphic to a twisted ideal sheaf".into()));
    }
    let gb = GroebnerBasis::ideal(&ring, &comps)?;
    if gb.is_everything() {
        return Err(Error::Precondition("the section vanishes nowhere".into()));
    }
    let sat = saturate(&gb, &irrelevant_ideal())?;
    let hp = quotient_polynomial(&ring, &sat.polynomials())?;
    if hp.degree() == Some(2) {
        return Err(Error::DivisorialVanishing);
    }
    Ok((minimal_ideal_generators(&sat)?, e))
}

/// The curve of a section s ∈ H^0(E(n)), with `0 -> R(-n) -> E -> N -> 0` and
/// N~ ≅ J_C(twist).
#[derive(Clone, Debug)]
pub struct ZeroLocus {
    pub curve: CurveRecord,
    pub twist: i32,
    pub expected_twist: i64,
    pub degree: i32,
    pub triple: ExactTriple,
}

impl ZeroLocus {
    pub fn twist_matches(&self) -> bool {
        self.twist as i64 == self.expected_twist
    }
}

pub fn section_zero_locus(e: &PresentedModule, s: &FreeVector) -> Result<ZeroLocus> {
    let ring = *e.ring();
    let ld = LocalDuality::new(e)?;
    if sheaf_rank(&ld) != 2 {
        return Err(Error::Precondition(format!("sheaf has rank {}, not 2", sheaf_rank(&ld))));
    }
    if !is_reflexive_rank_two(&ld) {
        return Err(Error::Precondition("sheaf is not reflexive".into()));
    }
    if e.is_zero_element(s)? {
        return Err(Error::Precondition("zero section".into()));
    }
    let n = s.degree(e.generators()).ok_or(Error::NotHomogeneous)?;
    let c1 = first_chern_class(ld.resolution());
    let quotient = PresentedModule::new(&ring, e.relations().hstack(&Matrix::from_columns(e.generators().clone(), vec![s.clone()])?)?);
    let a = PresentedModule::free(&ring, FreeModule::new(vec![n]));
    let i = GradedMap::new(
        a.clone(),
        e.clone(),
        Matrix::new(e.generators().clone(), a.generators().clone(), vec![s.clone()])?,
    )?;
    let p = GradedMap::new(e.clone(), quotient.clone(), Matrix::identity(e.generators()))?;
    let triple = ExactTriple::certify(i, p)?;
    let (ideal, twist) = rank_one_to_ideal(&quotient)?;
    let curve = CurveRecord::new(&ring, &ideal, None)?;
    Ok(ZeroLocus {
        curve,
        twist,
        expected_twist: c1 + n as i64,
        degree: n,
        triple,
    })
}
