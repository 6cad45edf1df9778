//! Dense linear algebra over F_p: row reduction, kernels, solving, and
//! quotient-space coordinates.

use crate::poly::PolyRing;

/// Row-major dense matrix with entries in F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(r);
        }
        m
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(cols: &[Vec<u32>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, ring: &PolyRing, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let p = ring.characteristic() as u64;
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let mut acc = vec![0u64; other.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * other.get(k, j) as u64) % p;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, v as u32);
            }
        }
        out
    }

    pub fn apply(&self, ring: &PolyRing, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length");
        let p = ring.characteristic() as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (j, &x) in v.iter().enumerate() {
                    acc = (acc + self.get(i, j) as u64 * x as u64) % p;
                }
                acc as u32
            })
            .collect()
    }

    pub fn hstack(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.rows, other.rows, "row counts");
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.cols, other.cols, "column counts");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        DenseMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, ring: &PolyRing) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = ring.inv(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j);
                self.set(r, j, ring.mul(v, inv));
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = ring.sub(self.get(i, j), ring.mul(f, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, ring: &PolyRing) -> usize {
        self.clone().rref(ring).len()
    }

    /// Basis of the right null space.
    pub fn kernel(&self, ring: &PolyRing) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref(ring);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ring.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self · x = b`.
    pub fn solve(&self, ring: &PolyRing, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let bm = DenseMatrix::from_columns(&[b.to_vec()], self.rows);
        let mut aug = self.hstack(&bm);
        let pivots = aug.rref(ring);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self, ring: &PolyRing) -> Option<DenseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&DenseMatrix::identity(n));
        let pivots = aug.rref(ring);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = DenseMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Some(inv)
    }

    pub fn is_invertible(&self, ring: &PolyRing) -> bool {
        self.rows == self.cols && self.rank(ring) == self.rows
    }

    /// Basis (as vectors) of the column space.
    pub fn column_space(&self, ring: &PolyRing) -> Vec<Vec<u32>> {
        let mut t = self.transpose();
        let k = t.rref(ring).len();
        (0..k).map(|i| t.row(i).to_vec()).collect()
    }
}

/// A quotient `Z / B` of subspaces of F_p^n with B ⊆ Z, with chosen
/// representatives for a basis of the quotient.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    ambient: usize,
    boundary_dim: usize,
    reps: Vec<Vec<u32>>,
    /// columns: boundary basis, then representatives
    frame: DenseMatrix,
}

impl QuotientSpace {
    pub fn new(ring: &PolyRing, ambient: usize, cycles: &[Vec<u32>], boundaries: &[Vec<u32>]) -> Self {
        let bmat = DenseMatrix::from_columns(boundaries, ambient);
        let bbasis = bmat.column_space(ring);
        let mut frame_cols = bbasis.clone();
        let mut reps = Vec::new();
        let mut rank = bbasis.len();
        for z in cycles {
            let mut trial = frame_cols.clone();
            trial.push(z.clone());
            let r = DenseMatrix::from_columns(&trial, ambient).rank(ring);
            if r > rank {
                rank = r;
                frame_cols = trial;
                reps.push(z.clone());
            }
        }
        QuotientSpace {
            ambient,
            boundary_dim: bbasis.len(),
            reps,
            frame: DenseMatrix::from_columns(&frame_cols, ambient),
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn representatives(&self) -> &[Vec<u32>] {
        &self.reps
    }

    /// Coordinates of the class of `v` (which must lie in Z).
    pub fn coordinates(&self, ring: &PolyRing, v: &[u32]) -> Option<Vec<u32>> {
        let x = self.frame.solve(ring, v)?;
        Some(x[self.boundary_dim..].to_vec())
    }
}
