//! Sheaf-level predicates read off Ext modules, certified exact triples,
//! pseudo-isomorphism checks, the cone and Horrocks constructions, and the
//! equivalence deciders built on H^1_*.

use rand::Rng;
use serde::Serialize;

use crate::cohomology::{induced_ext_map, IsoVerdict, LocalDuality, DEFAULT_TRIALS};
use crate::error::{Error, Result};
use crate::liaison::{is_lcm_curve, rao_module};
use crate::poly::{syzygy_module, FreeModule, FreeVector, Matrix, PolyRing, Polynomial};
use crate::resolution::{
    lift_chain_map, minimal_generator_indices, subquotient, FreeResolution, GradedMap,
    PresentedModule,
};
use crate::sharp::SupportFunction;

/// The sheafification has projective dimension ≤ 1 at every point.
pub fn sheaf_pd_at_most_one(ld: &LocalDuality) -> bool {
    ld.ext(2).is_finite_length() && ld.ext(3).is_finite_length()
}

pub fn is_locally_free(ld: &LocalDuality) -> bool {
    (1..=3).all(|i| ld.ext(i).is_finite_length())
}

/// Reflexive of rank two: Ext^1 supported in dimension ≤ 1 (points of P^3),
/// Ext^2 and Ext^3 of finite length.
pub fn is_reflexive_rank_two(ld: &LocalDuality) -> bool {
    sheaf_rank(ld) == 2
        && ld.ext(1).hilbert_polynomial().degree().map_or(true, |d| d == 0)
        && ld.ext(2).is_finite_length()
        && ld.ext(3).is_finite_length()
}

pub fn sheaf_rank(ld: &LocalDuality) -> i64 {
    ld.hilbert_polynomial().six_times_coefficients()[3]
}

/// Which exactness checks passed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleCertificate {
    pub composition_zero: bool,
    pub injective: bool,
    pub surjective: bool,
    pub hilbert_additive: bool,
}

impl TripleCertificate {
    pub fn holds(&self) -> bool {
        self.composition_zero && self.injective && self.surjective && self.hilbert_additive
    }
}

/// `0 -> A -i-> B -p-> C -> 0`, certified exact. Hilbert additivity plus
/// injectivity, surjectivity and p∘i = 0 force ker p = im i degreewise.
#[derive(Clone, Debug)]
pub struct ExactTriple {
    i: GradedMap,
    p: GradedMap,
    certificate: TripleCertificate,
}

impl ExactTriple {
    pub fn certify(i: GradedMap, p: GradedMap) -> Result<Self> {
        if i.target().generators() != p.source().generators()
            || i.target().relations() != p.source().relations()
        {
            return Err(Error::ShapeMismatch("the middle modules differ".into()));
        }
        let ring = *i.source().ring();
        let certificate = TripleCertificate {
            composition_zero: i.compose(&ring, &p)?.is_zero()?,
            injective: i.is_injective()?,
            surjective: p.is_surjective()?,
            hilbert_additive: i.target().hilbert_series()
                == i.source().hilbert_series().add(&p.target().hilbert_series()),
        };
        if !certificate.holds() {
            return Err(Error::Certification(format!("triple is not exact: {certificate:?}")));
        }
        Ok(ExactTriple { i, p, certificate })
    }

    pub fn a(&self) -> &PresentedModule {
        self.i.source()
    }

    pub fn b(&self) -> &PresentedModule {
        self.i.target()
    }

    pub fn c(&self) -> &PresentedModule {
        self.p.target()
    }

    pub fn injection(&self) -> &GradedMap {
        &self.i
    }

    pub fn projection(&self) -> &GradedMap {
        &self.p
    }

    pub fn certificate(&self) -> TripleCertificate {
        self.certificate
    }
}

/// Outcome of checking the three pseudo-isomorphism conditions for one map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PsiReport {
    /// H^0 of both sheaves vanishes at `low_degree` and below.
    pub h0_low: bool,
    pub low_degree: i32,
    /// The induced map on H^1_* is bijective in every degree.
    pub h1_iso: bool,
    /// The induced map on H^2_* is injective in every window degree.
    pub h2_injective: bool,
    pub window: (i32, i32),
    pub failures: Vec<String>,
}

impl PsiReport {
    pub fn is_psi(&self) -> bool {
        self.h0_low && self.h1_iso && self.h2_injective
    }
}

fn union_support(a: &PresentedModule, b: &PresentedModule) -> Result<Option<(i32, i32)>> {
    Ok(match (a.support_bounds()?, b.support_bounds()?) {
        (Some((l1, h1)), Some((l2, h2))) => Some((l1.min(l2), h1.max(h2))),
        (x, None) | (None, x) => x,
    })
}

/// Checks whether `f: N -> N'` induces a pseudo-isomorphism of sheaves.
/// H^1_* and H^2_* are handled dually, through the maps
/// Ext^2(N', R) -> Ext^2(N, R) (bijective) and Ext^1(N', R) -> Ext^1(N, R)
/// (surjective in degrees -n-4 for n in the window).
pub fn is_pseudo_isomorphism(f: &GradedMap, window: Option<(i32, i32)>) -> Result<PsiReport> {
    let ring = *f.source().ring();
    let lds = LocalDuality::new(f.source())?;
    let ldt = LocalDuality::new(f.target())?;
    if !sheaf_pd_at_most_one(&lds) || !sheaf_pd_at_most_one(&ldt) {
        return Err(Error::Precondition("a sheaf has projective dimension > 1".into()));
    }
    let window = window.unwrap_or_else(|| {
        let (a, b) = lds.default_window();
        let (c, d) = ldt.default_window();
        (a.min(c), b.max(d))
    });
    crate::resolution::presented::check_window(window.0, window.1)?;
    let src_res = FreeResolution::from_presentation(f.source())?;
    let tgt_res = FreeResolution::from_presentation(f.target())?;
    let chain = lift_chain_map(&ring, &src_res, &tgt_res, f.matrix())?;
    let mut failures = Vec::new();

    // below every generator degree both modules vanish, and so does H^0
    // once H^1_m vanishes there too
    let low = f
        .source()
        .generators()
        .twists
        .iter()
        .chain(&f.target().generators().twists)
        .copied()
        .min()
        .unwrap_or(0)
        - 1;
    let mut h0_low = true;
    for n in (low - 4)..=low {
        if lds.h(0, n) != 0 || ldt.h(0, n) != 0 {
            h0_low = false;
            failures.push(format!("h0 nonzero at n = {n}"));
            break;
        }
    }

    let mut h1_iso = true;
    if let Some((lo, hi)) = union_support(lds.ext(2), ldt.ext(2))? {
        for d in lo..=hi {
            let a = lds.ext(2).hilbert_function(d);
            let b = ldt.ext(2).hilbert_function(d);
            if a != b {
                h1_iso = false;
                failures.push(format!("h1 dimensions differ at n = {}", -d - 4));
                continue;
            }
            if a == 0 {
                continue;
            }
            let m = induced_ext_map(&ring, &src_res, &tgt_res, &chain, 2, d)?;
            if m.rank(&ring) != a as usize {
                h1_iso = false;
                failures.push(format!("induced map on h1 is singular at n = {}", -d - 4));
            }
        }
    }

    let mut h2_injective = true;
    for n in window.0..=window.1 {
        let d = -n - 4;
        let need = lds.ext(1).hilbert_function(d);
        if need == 0 {
            continue;
        }
        let m = induced_ext_map(&ring, &src_res, &tgt_res, &chain, 1, d)?;
        if (m.rank(&ring) as i64) < need {
            h2_injective = false;
            failures.push(format!("induced map on h2 is not injective at n = {n}"));
        }
    }
    Ok(PsiReport {
        h0_low,
        low_degree: low,
        h1_iso,
        h2_injective,
        window,
        failures,
    })
}

/// `0 -> L' -> L ⊕ F -> F' -> 0` for a pseudo-isomorphism `f: F -> F'`, with
/// L free and L' certified dissocié.
#[derive(Clone, Debug)]
pub struct PsiCone {
    pub triple: ExactTriple,
    /// Twists of L, as n ↦ multiplicity of R(-n).
    pub l: SupportFunction,
    pub l_prime: SupportFunction,
    pub report: PsiReport,
}

fn twist_function(m: &FreeModule) -> SupportFunction {
    SupportFunction::new(m.twists.iter().map(|&a| (a, 1)))
}

pub fn psi_cone(f: &GradedMap, window: Option<(i32, i32)>) -> Result<PsiCone> {
    let report = is_pseudo_isomorphism(f, window)?;
    if !report.is_psi() {
        return Err(Error::Precondition(format!(
            "map is not a pseudo-isomorphism: {}",
            report.failures.join("; ")
        )));
    }
    let ring = *f.source().ring();
    let tgt = f.target();
    let idx = minimal_generator_indices(&f.cokernel()?)?;
    let lfree = FreeModule::new(idx.iter().map(|&k| tgt.generators().twists[k]).collect());
    let middle = PresentedModule::free(&ring, lfree.clone()).direct_sum(f.source());
    let mut cols: Vec<FreeVector> = idx.iter().map(|&k| FreeVector::unit(k)).collect();
    cols.extend(f.matrix().columns().iter().cloned());
    let g = GradedMap::new(
        middle.clone(),
        tgt.clone(),
        Matrix::new(tgt.generators().clone(), middle.generators().clone(), cols)?,
    )?;
    let incl = g.kernel_inclusion()?;
    let k = incl.source().clone();
    let triple = ExactTriple::certify(incl, g)?;
    let ldk = LocalDuality::new(&k)?;
    if !ldk.ext(1).is_zero() || !ldk.ext(2).is_zero() || !ldk.ext(3).is_finite_length() {
        return Err(Error::Certification("kernel of the cone is not dissocié".into()));
    }
    let dual = ldk.ext(0).minimal_presentation()?;
    if dual.relations().ncols() != 0 {
        return Err(Error::Certification("dual of the cone kernel is not free".into()));
    }
    // Hom(K, R) ≅ ⊕ R(b) exactly when K~ ≅ ⊕ O(-b)
    let l_prime = SupportFunction::new(dual.generators().twists.iter().map(|&a| (-a, 1)));
    Ok(PsiCone {
        triple,
        l: twist_function(&lfree),
        l_prime,
        report,
    })
}

/// `0 -> L -> F -> N -> 0` with Ext^1(F, R) = 0, so F~ is locally free with
/// H^2_* = 0 and H^1_*(F~) ≅ H^1_*(N~).
#[derive(Clone, Debug)]
pub struct HorrocksExtension {
    pub bundle: PresentedModule,
    /// L as n ↦ multiplicity of R(-n).
    pub l: SupportFunction,
    pub triple: Option<ExactTriple>,
}

pub fn horrocks_extension(n: &PresentedModule) -> Result<HorrocksExtension> {
    let ring = *n.ring();
    let ld = LocalDuality::new(n)?;
    if !sheaf_pd_at_most_one(&ld) {
        return Err(Error::Precondition(
            "sheaf has projective dimension > 1 (Ext^2 or Ext^3 not of finite length)".into(),
        ));
    }
    if ld.ext(1).is_zero() {
        return Ok(HorrocksExtension {
            bundle: n.clone(),
            l: SupportFunction::zero(),
            triple: None,
        });
    }
    let res = FreeResolution::from_presentation(n)?;
    let d1 = res.map(1).clone();
    let f1d = res.module(1).dual();
    let cycles = if res.length() >= 2 {
        syzygy_module(&ring, &res.map(2).transpose(&ring))?
    } else {
        Matrix::identity(&f1d)
    };
    let ext1 = subquotient(&ring, &cycles, &d1.transpose(&ring))?;
    let keep = minimal_generator_indices(&ext1)?;
    let xi = cycles.select_columns(&keep);
    // ξ_j of degree g_j contributes a summand R(g_j), generator twist -g_j
    let lfree = FreeModule::new(xi.source().twists.iter().map(|&g| -g).collect());
    let f0 = res.module(0);
    let r0 = f0.rank();
    let big = f0.direct_sum(&lfree);
    let cols: Vec<FreeVector> = (0..d1.ncols())
        .map(|k| {
            let mut polys: Vec<Polynomial> = (0..r0).map(|i| d1.entry(i, k)).collect();
            for j in 0..xi.ncols() {
                polys.push(xi.entry(k, j).scale(&ring, ring.neg(1)));
            }
            FreeVector::from_components(&ring, &polys)
        })
        .collect();
    let bundle = PresentedModule::new(&ring, Matrix::new(big.clone(), d1.source().clone(), cols)?);
    let lmod = PresentedModule::free(&ring, lfree.clone());
    let i = GradedMap::new(
        lmod,
        bundle.clone(),
        Matrix::new(big.clone(), lfree.clone(), (0..lfree.rank()).map(|j| FreeVector::unit(r0 + j)).collect())?,
    )?;
    let proj: Vec<FreeVector> = (0..big.rank())
        .map(|k| if k < r0 { FreeVector::unit(k) } else { FreeVector::zero() })
        .collect();
    let p = GradedMap::new(bundle.clone(), n.clone(), Matrix::new(f0, big, proj)?)?;
    let triple = ExactTriple::certify(i, p)?;
    if !crate::cohomology::ext_module(&bundle, 1)?.is_zero() {
        return Err(Error::Certification("Ext^1 of the extension does not vanish".into()));
    }
    Ok(HorrocksExtension {
        bundle,
        l: twist_function(&lfree),
        triple: Some(triple),
    })
}

/// An isomorphism verdict plus a short description of what was compared.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceVerdict {
    #[serde(flatten)]
    pub verdict: IsoVerdict,
    pub certificate: String,
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        self.verdict.is_iso()
    }
}

fn bundle_h1(m: &PresentedModule, which: &str) -> Result<crate::cohomology::FiniteLengthModule> {
    let ld = LocalDuality::new(m)?;
    if !is_locally_free(&ld) {
        return Err(Error::Precondition(format!("{which} is not locally free")));
    }
    if !ld.h2_star_vanishes() {
        return Err(Error::Precondition(format!("{which} has H^2_* ≠ 0")));
    }
    ld.h1_star()
}

/// Stable equivalence of bundles with H^2_* = 0, decided by H^1_*.
pub fn stably_equivalent<R: Rng>(f: &PresentedModule, g: &PresentedModule, rng: &mut R) -> Result<EquivalenceVerdict> {
    let a = bundle_h1(f, "first module")?;
    let b = bundle_h1(g, "second module")?;
    Ok(EquivalenceVerdict {
        verdict: a.isomorphic(&b, false, DEFAULT_TRIALS, rng),
        certificate: format!(
            "H1_* dims {:?} vs {:?}",
            a.hilbert_map(),
            b.hilbert_map()
        ),
    })
}

/// Biliaison class comparison by Rao modules up to shift.
pub fn biliaison_equivalent<R: Rng>(
    ring: &PolyRing,
    c: &[Polynomial],
    c2: &[Polynomial],
    rng: &mut R,
) -> Result<EquivalenceVerdict> {
    for (gens, which) in [(c, "first"), (c2, "second")] {
        let check = is_lcm_curve(ring, gens)?;
        if !check.is_curve() {
            return Err(Error::NotACurve(format!("{which} ideal: {}", check.failures.join("; "))));
        }
    }
    let a = rao_module(ring, c)?;
    let b = rao_module(ring, c2)?;
    Ok(EquivalenceVerdict {
        verdict: a.isomorphic(&b, true, DEFAULT_TRIALS, rng),
        certificate: format!("Rao dims {:?} vs {:?}", a.hilbert_map(), b.hilbert_map()),
    })
}
