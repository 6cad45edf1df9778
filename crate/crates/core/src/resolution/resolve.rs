//! Free resolutions: minimal ones for invariants, and resolutions that keep a
//! given presentation (needed to lift maps of presented modules).

use std::collections::BTreeMap;

use super::hilbert::{HilbertPolynomial, HilbertSeries};
use super::presented::PresentedModule;
use crate::error::{Error, Result};
use crate::poly::{syzygy_module, FreeModule, Lifter, Matrix, PolyRing};

/// Safety cap on resolution length; by the syzygy theorem minimal
/// resolutions stop after four steps.
const MAX_STEPS: usize = 8;

/// `0 <- F_0 <-d_1- F_1 <- ... <-d_l- F_l <- 0`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: PolyRing,
    base: FreeModule,
    maps: Vec<Matrix>,
    minimal: bool,
}

impl FreeResolution {
    fn build(ring: &PolyRing, first: Matrix, minimal: bool) -> Result<Self> {
        let base = first.target().clone();
        let mut maps = Vec::new();
        let mut cur = first;
        while cur.ncols() > 0 {
            if maps.len() == MAX_STEPS {
                return Err(Error::Certification("resolution did not terminate".into()));
            }
            let next = syzygy_module(ring, &cur)?;
            maps.push(cur);
            cur = next;
        }
        Ok(FreeResolution {
            ring: *ring,
            base,
            maps,
            minimal,
        })
    }

    /// The minimal graded free resolution; twists ascending in every step.
    pub fn minimal(module: &PresentedModule) -> Result<Self> {
        let p = module.minimal_presentation()?;
        Self::build(module.ring(), p.relations().clone(), true)
    }

    /// A resolution whose first map is the given presentation.
    pub fn from_presentation(module: &PresentedModule) -> Result<Self> {
        let rel = module.relations();
        let nonzero: Vec<usize> = (0..rel.ncols()).filter(|&j| !rel.column(j).is_zero()).collect();
        Self::build(module.ring(), rel.select_columns(&nonzero), false)
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn is_minimal_flag(&self) -> bool {
        self.minimal
    }

    /// d_k for k = 1..=length.
    pub fn map(&self, k: usize) -> &Matrix {
        &self.maps[k - 1]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// F_k (zero beyond the length).
    pub fn module(&self, k: usize) -> FreeModule {
        match k {
            0 => self.base.clone(),
            _ if k <= self.maps.len() => self.maps[k - 1].source().clone(),
            _ => FreeModule::zero(),
        }
    }

    /// Twists of F_0, ..., F_l.
    pub fn betti_twists(&self) -> Vec<Vec<i32>> {
        (0..=self.length()).map(|k| self.module(k).twists).collect()
    }

    /// `{step: [twists]}`.
    pub fn betti_json(&self) -> BTreeMap<usize, Vec<i32>> {
        self.betti_twists().into_iter().enumerate().collect()
    }

    /// Betti table: (step, twist) -> count.
    pub fn betti_numbers(&self) -> BTreeMap<(usize, i32), usize> {
        let mut out = BTreeMap::new();
        for (k, tw) in self.betti_twists().into_iter().enumerate() {
            for a in tw {
                *out.entry((k, a)).or_insert(0) += 1;
            }
        }
        out
    }

    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| {
            w[0].compose(&self.ring, &w[1])
                .map(|c| c.is_zero())
                .unwrap_or(false)
        })
    }

    /// No nonzero constant entries.
    pub fn has_no_units(&self) -> bool {
        self.maps.iter().all(|m| !m.has_unit_entry())
    }

    /// Alternating sum of the free modules' series.
    pub fn hilbert_series(&self) -> HilbertSeries {
        let mut s = HilbertSeries::zero();
        for k in 0..=self.length() {
            for &a in &self.module(k).twists {
                if k % 2 == 0 {
                    s = s.add(&HilbertSeries::free(a));
                } else {
                    s = s.sub(&HilbertSeries::free(a));
                }
            }
        }
        s
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        self.hilbert_series().polynomial()
    }

    /// max_k (max twist of F_k − k); `None` for the zero module.
    pub fn regularity(&self) -> Option<i32> {
        (0..=self.length())
            .flat_map(|k| self.module(k).twists.into_iter().map(move |a| a - k as i32))
            .max()
    }

    /// Alternating rank sum.
    pub fn rank(&self) -> i64 {
        (0..=self.length())
            .map(|k| {
                let r = self.module(k).rank() as i64;
                if k % 2 == 0 {
                    r
                } else {
                    -r
                }
            })
            .sum()
    }

    /// The complex shifted: resolution of M(s).
    pub fn shifted(&self, s: i32) -> FreeResolution {
        FreeResolution {
            ring: self.ring,
            base: self.base.shifted(s),
            maps: self.maps.iter().map(|m| m.shifted(s)).collect(),
            minimal: self.minimal,
        }
    }
}

/// Lift `a0: F_0 -> G_0` (a map of presented modules) to a chain map between
/// the resolutions; entry k of the result is `a_k: F_k -> G_k`.
pub fn lift_chain_map(ring: &PolyRing, src: &FreeResolution, tgt: &FreeResolution, a0: &Matrix) -> Result<Vec<Matrix>> {
    let top = src.length().max(tgt.length());
    let mut out = vec![a0.clone()];
    for k in 1..=top {
        let fk = src.module(k);
        let gk = tgt.module(k);
        if fk.rank() == 0 || gk.rank() == 0 {
            out.push(Matrix::zero(gk, fk));
            continue;
        }
        let lifter = Lifter::new(ring, tgt.map(k))?;
        let prev = &out[k - 1];
        let mut cols = Vec::with_capacity(fk.rank());
        for c in src.map(k).columns() {
            let v = prev.apply(ring, c);
            let u = lifter
                .lift(&v)
                .ok_or_else(|| Error::IllDefinedMap(format!("no lift at step {k}")))?;
            cols.push(u);
        }
        out.push(Matrix::new(gk, fk, cols)?);
    }
    Ok(out)
}

/// Kernel F of d_1 in a minimal resolution of a finite-length module,
/// presented by d_3 on F_2, with its inclusion d_2 into L_1 = F_1.
#[derive(Clone, Debug)]
pub struct SecondSyzygy {
    pub module: PresentedModule,
    pub inclusion: Matrix,
    pub resolution: FreeResolution,
}

impl SecondSyzygy {
    /// L_1 of `0 -> F -> L_1 -> L_0 -> M -> 0`.
    pub fn l1(&self) -> FreeModule {
        self.resolution.module(1)
    }

    pub fn l0(&self) -> FreeModule {
        self.resolution.module(0)
    }
}

pub fn second_syzygy(m: &PresentedModule) -> Result<SecondSyzygy> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    if !m.is_finite_length() {
        return Err(Error::NotFiniteLength);
    }
    let res = FreeResolution::minimal(m)?;
    if res.length() < 3 {
        return Err(Error::Certification("finite-length module with short resolution".into()));
    }
    let module = PresentedModule::new(m.ring(), res.map(3).clone());
    Ok(SecondSyzygy {
        module,
        inclusion: res.map(2).clone(),
        resolution: res,
    })
}

pub fn projective_dimension(m: &PresentedModule) -> Result<usize> {
    Ok(FreeResolution::minimal(m)?.length())
}

/// Castelnuovo–Mumford regularity from the minimal resolution.
pub fn regularity(m: &PresentedModule) -> Result<Option<i32>> {
    Ok(FreeResolution::minimal(m)?.regularity())
}
