//! Sheaf cohomology of M~ on P^3 by local duality:
//! h^i(M~(n)) = dim Ext^{3-i}(M, R)_{-n-4} for i ≥ 1, and h^0 from dim M_n
//! corrected by the local cohomology in degrees 0 and 1.

use std::fmt;

use serde::Serialize;

use super::ext::ext_from_resolution;
use super::finite::FiniteLengthModule;
use crate::error::{Error, Result};
use crate::resolution::{FreeResolution, HilbertPolynomial, HilbertSeries, PresentedModule};

/// A module together with its Ext modules against R.
#[derive(Clone, Debug)]
pub struct LocalDuality {
    module: PresentedModule,
    resolution: FreeResolution,
    ext: Vec<PresentedModule>,
    series: Vec<HilbertSeries>,
    module_series: HilbertSeries,
}

impl LocalDuality {
    pub fn new(module: &PresentedModule) -> Result<Self> {
        let resolution = FreeResolution::minimal(module)?;
        let ext = (0..=4)
            .map(|i| ext_from_resolution(&resolution, i))
            .collect::<Result<Vec<_>>>()?;
        let series = ext.iter().map(|e| e.hilbert_series()).collect();
        Ok(LocalDuality {
            module: module.clone(),
            resolution,
            ext,
            series,
            module_series: module.hilbert_series(),
        })
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn resolution(&self) -> &FreeResolution {
        &self.resolution
    }

    pub fn ext(&self, i: usize) -> &PresentedModule {
        &self.ext[i]
    }

    /// dim H^i_m(M)_n.
    pub fn local_cohomology(&self, i: usize, n: i32) -> i64 {
        self.series[4 - i].value(-n - 4)
    }

    /// h^i(M~(n)).
    pub fn h(&self, i: usize, n: i32) -> i64 {
        match i {
            0 => self.module_series.value(n) - self.local_cohomology(0, n) + self.local_cohomology(1, n),
            1..=3 => self.local_cohomology(i + 1, n),
            _ => 0,
        }
    }

    /// H^1_*(M~) as a finite-length module: the graded dual of Ext^2(M, R)(-4).
    pub fn h1_star(&self) -> Result<FiniteLengthModule> {
        self.dual_of_ext(2)
    }

    /// H^2_*(M~) when it has finite length.
    pub fn h2_star(&self) -> Result<FiniteLengthModule> {
        self.dual_of_ext(1)
    }

    fn dual_of_ext(&self, i: usize) -> Result<FiniteLengthModule> {
        let e = &self.ext[i];
        if !e.is_finite_length() {
            return Err(Error::NotFiniteLength);
        }
        Ok(FiniteLengthModule::from_presentation(e)?.dual().shifted(4))
    }

    /// H^2_*(M~) = 0 exactly (not only on a window).
    pub fn h2_star_vanishes(&self) -> bool {
        self.ext[1].is_zero()
    }

    pub fn hilbert_polynomial(&self) -> HilbertPolynomial {
        self.module_series.polynomial()
    }

    /// Degrees covering the generators, the regularity, and H^1_* when it
    /// has finite length.
    pub fn default_window(&self) -> (i32, i32) {
        let twists = &self.module.generators().twists;
        let mut lo = twists.iter().copied().min().unwrap_or(0) - 1;
        let mut hi = self.resolution.regularity().unwrap_or(lo) + 4;
        for i in [1usize, 2] {
            if let Ok(Some((a, b))) = self.ext[i].support_bounds() {
                lo = lo.min(-b - 4);
                hi = hi.max(-a - 4);
            }
        }
        (lo, hi)
    }

    pub fn table(&self, lo: i32, hi: i32) -> Result<CohomologyTable> {
        crate::resolution::presented::check_window(lo, hi)?;
        let rows = (0..4)
            .map(|i| (lo..=hi).map(|n| self.h(i, n)).collect())
            .collect();
        let p = self.hilbert_polynomial();
        Ok(CohomologyTable {
            lo,
            hi,
            rows,
            rank: p.six_times_coefficients()[3],
            c1: first_chern_class(&self.resolution),
            hilbert_polynomial: p.to_string(),
        })
    }
}

/// c_1 of the sheafification: minus the alternating sum of all twists.
pub fn first_chern_class(res: &FreeResolution) -> i64 {
    (0..=res.length())
        .map(|k| {
            let s: i64 = res.module(k).twists.iter().map(|&a| a as i64).sum();
            if k % 2 == 0 {
                -s
            } else {
                s
            }
        })
        .sum()
}

/// h^i(M~(n)) for i = 0..3 and n in a window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub lo: i32,
    pub hi: i32,
    /// rows[i][n - lo]
    pub rows: Vec<Vec<i64>>,
    pub rank: i64,
    pub c1: i64,
    pub hilbert_polynomial: String,
}

impl CohomologyTable {
    pub fn h(&self, i: usize, n: i32) -> i64 {
        self.rows[i][(n - self.lo) as usize]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    /// Σ (-1)^i h^i(n) for each n of the window.
    pub fn euler_characteristics(&self) -> Vec<i64> {
        (self.lo..=self.hi)
            .map(|n| (0..4).map(|i| if i % 2 == 0 { self.h(i, n) } else { -self.h(i, n) }).sum())
            .collect()
    }
}

impl fmt::Display for CohomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .rows
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .chain((self.lo..=self.hi).map(|n| n.to_string().len()))
            .max()
            .unwrap_or(1);
        write!(f, "{:>4}", "n")?;
        for n in self.lo..=self.hi {
            write!(f, " {n:>width$}")?;
        }
        writeln!(f)?;
        for i in (0..4).rev() {
            write!(f, "{:>4}", format!("h{i}"))?;
            for v in &self.rows[i] {
                write!(f, " {v:>width$}")?;
            }
            writeln!(f)?;
        }
        write!(f, "rank {}  c1 {}  P(n) = {}", self.rank, self.c1, self.hilbert_polynomial)
    }
}

pub fn sheaf_cohomology_table(m: &PresentedModule, window: Option<(i32, i32)>) -> Result<CohomologyTable> {
    let ld = LocalDuality::new(m)?;
    let (lo, hi) = window.unwrap_or_else(|| ld.default_window());
    ld.table(lo, hi)
}

pub fn h1_star_module(m: &PresentedModule) -> Result<FiniteLengthModule> {
    LocalDuality::new(m)?.h1_star()
}
