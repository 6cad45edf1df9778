//! Ext_R(M, R) from the dualized resolution: as presented subquotients (for
//! whole modules) and degree by degree (for maps induced by chain maps).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, QuotientSpace};
use crate::poly::{syzygy_module, FreeModule, FreeVector, Matrix, Monomial, PolyRing};
use crate::resolution::{subquotient, FreeResolution, PresentedModule};

/// `d_{i+1}^T : F_i^* -> F_{i+1}^*`; the zero map to the zero module past the end.
fn coboundary(res: &FreeResolution, i: usize) -> Matrix {
    let ring = res.ring();
    if i < res.length() {
        res.map(i + 1).transpose(ring)
    } else {
        Matrix::zero(FreeModule::zero(), res.module(i).dual())
    }
}

/// Ext^i_R(M, R) computed from a free resolution of M.
pub fn ext_from_resolution(res: &FreeResolution, i: usize) -> Result<PresentedModule> {
    let ring = res.ring();
    if i > 4 {
        return Err(Error::OutOfRange(format!("Ext index {i} (must be 0..4)")));
    }
    let fi = res.module(i);
    if fi.rank() == 0 {
        return Ok(PresentedModule::zero(ring));
    }
    let delta = coboundary(res, i);
    let cycles = if delta.target().rank() == 0 {
        Matrix::identity(&fi.dual())
    } else {
        syzygy_module(ring, &delta)?
    };
    let boundaries = if i == 0 {
        Matrix::zero(fi.dual(), FreeModule::zero())
    } else {
        coboundary(res, i - 1)
    };
    subquotient(ring, &cycles, &boundaries)
}

pub fn ext_module(m: &PresentedModule, i: usize) -> Result<PresentedModule> {
    if i > 4 {
        return Err(Error::OutOfRange(format!("Ext index {i} (must be 0..4)")));
    }
    ext_from_resolution(&FreeResolution::minimal(m)?, i)
}

/// Monomial basis of the degree-d piece of a twisted free module.
#[derive(Clone, Debug)]
pub struct FreePiece {
    entries: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), usize>,
}

impl FreePiece {
    pub fn new(module: &FreeModule, d: i32) -> Self {
        let mut entries = Vec::new();
        for (j, &a) in module.twists.iter().enumerate() {
            for m in Monomial::all_of_degree(d - a) {
                entries.push((j, m));
            }
        }
        let index = entries.iter().enumerate().map(|(i, &k)| (k, i)).collect();
        FreePiece { entries, index }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, Monomial)] {
        &self.entries
    }

    pub fn coordinates(&self, v: &FreeVector) -> Vec<u32> {
        let mut out = vec![0u32; self.entries.len()];
        for t in v.terms() {
            out[self.index[&(t.comp as usize, t.mono)]] = t.coeff;
        }
        out
    }
}

/// The degree-d component of a matrix, as a dense map source_d -> target_d.
pub fn dense_piece(mat: &Matrix, d: i32) -> DenseMatrix {
    let src = FreePiece::new(mat.source(), d);
    let tgt = FreePiece::new(mat.target(), d);
    let mut out = DenseMatrix::zeros(tgt.dim(), src.dim());
    for (col, &(j, m)) in src.entries().iter().enumerate() {
        let image = mat.column(j).mul_monomial(m);
        for t in image.terms() {
            out.set(tgt.index[&(t.comp as usize, t.mono)], col, t.coeff);
        }
    }
    out
}

/// Ext^i(M, R)_d as cycles modulo boundaries of the dual complex.
pub fn ext_piece(res: &FreeResolution, i: usize, d: i32) -> QuotientSpace {
    let ring = res.ring();
    let dual = res.module(i).dual();
    let n = FreePiece::new(&dual, d).dim();
    let delta = coboundary(res, i);
    let cycles = if delta.target().rank() == 0 {
        (0..n)
            .map(|k| {
                let mut e = vec![0u32; n];
                e[k] = 1;
                e
            })
            .collect()
    } else {
        dense_piece(&delta, d).kernel(ring)
    };
    let boundaries: Vec<Vec<u32>> = if i == 0 {
        vec![]
    } else {
        let b = dense_piece(&coboundary(res, i - 1), d);
        (0..b.ncols()).map(|j| b.column(j)).collect()
    };
    QuotientSpace::new(ring, n, &cycles, &boundaries)
}

/// Map Ext^i(N', R)_d -> Ext^i(N, R)_d induced by a chain map
/// `a_k : F_k(N) -> F_k(N')`.
pub fn induced_ext_map(
    ring: &PolyRing,
    src_res: &FreeResolution,
    tgt_res: &FreeResolution,
    chain: &[Matrix],
    i: usize,
    d: i32,
) -> Result<DenseMatrix> {
    let from = ext_piece(tgt_res, i, d);
    let to = ext_piece(src_res, i, d);
    let mut out = DenseMatrix::zeros(to.dim(), from.dim());
    if from.dim() == 0 || to.dim() == 0 {
        return Ok(out);
    }
    let at = dense_piece(&chain[i].transpose(ring), d);
    for (col, z) in from.representatives().iter().enumerate() {
        let w = at.apply(ring, z);
        let c = to
            .coordinates(ring, &w)
            .ok_or_else(|| Error::Certification("induced class is not a cycle".into()))?;
        for (row, v) in c.into_iter().enumerate() {
            out.set(row, col, v);
        }
    }
    Ok(out)
}
