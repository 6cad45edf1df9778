use serde::Serialize;

use super::field::PolyRing;
use super::vector::{check_shape, FreeModule, FreeVector, Polynomial, Term};
use crate::error::{Error, Result};

/// A degree-0 homomorphism `source -> target` between twisted free modules,
/// stored column by column (column j is the image of the j-th basis vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    target: FreeModule,
    source: FreeModule,
    columns: Vec<FreeVector>,
}

impl Matrix {
    pub fn new(target: FreeModule, source: FreeModule, columns: Vec<FreeVector>) -> Result<Self> {
        if columns.len() != source.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for source of rank {}",
                columns.len(),
                source.rank()
            )));
        }
        for (j, c) in columns.iter().enumerate() {
            check_shape(c, &target)?;
            if !c.is_zero() && c.degree(&target) != Some(source.twists[j]) {
                return Err(Error::DegreeMismatch(format!(
                    "column {} is not homogeneous of degree {}",
                    j, source.twists[j]
                )));
            }
        }
        Ok(Matrix {
            target,
            source,
            columns,
        })
    }

    /// Builds from a row-major grid of polynomials.
    pub fn from_rows(
        ring: &PolyRing,
        target: FreeModule,
        source: FreeModule,
        rows: &[Vec<Polynomial>],
    ) -> Result<Self> {
        if rows.len() != target.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} rows for target of rank {}",
                rows.len(),
                target.rank()
            )));
        }
        let ncols = source.rank();
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        let cols = (0..ncols)
            .map(|j| {
                let polys: Vec<Polynomial> = rows.iter().map(|r| r[j].clone()).collect();
                FreeVector::from_components(ring, &polys)
            })
            .collect();
        Matrix::new(target, source, cols)
    }

    /// Columns homogeneous in `target`; source twists are their degrees.
    pub fn from_columns(target: FreeModule, columns: Vec<FreeVector>) -> Result<Self> {
        let mut twists = Vec::with_capacity(columns.len());
        for c in &columns {
            check_shape(c, &target)?;
            if c.is_zero() {
                return Err(Error::Precondition("zero generator has no degree".into()));
            }
            twists.push(c.degree(&target).ok_or(Error::NotHomogeneous)?);
        }
        Matrix::new(target, FreeModule::new(twists), columns)
    }

    pub fn identity(module: &FreeModule) -> Matrix {
        Matrix {
            target: module.clone(),
            source: module.clone(),
            columns: (0..module.rank()).map(FreeVector::unit).collect(),
        }
    }

    pub fn zero(target: FreeModule, source: FreeModule) -> Matrix {
        let n = source.rank();
        Matrix {
            target,
            source,
            columns: vec![FreeVector::zero(); n],
        }
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn columns(&self) -> &[FreeVector] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &FreeVector {
        &self.columns[j]
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        self.columns[j].component(i)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    /// Image of a source vector.
    pub fn apply(&self, ring: &PolyRing, v: &FreeVector) -> FreeVector {
        let mut acc = FreeVector::zero();
        for t in v.terms() {
            acc = acc.add_scaled(ring, &self.columns[t.comp as usize], t.coeff, t.mono);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, ring: &PolyRing, other: &Matrix) -> Result<Matrix> {
        if other.target != self.source {
            return Err(Error::ShapeMismatch("composition of incompatible maps".into()));
        }
        let cols = other.columns.iter().map(|c| self.apply(ring, c)).collect();
        Ok(Matrix {
            target: self.target.clone(),
            source: other.source.clone(),
            columns: cols,
        })
    }

    /// The dual map Hom(target, R) -> Hom(source, R).
    pub fn transpose(&self, ring: &PolyRing) -> Matrix {
        let mut cols: Vec<Vec<Term>> = vec![Vec::new(); self.nrows()];
        for (j, c) in self.columns.iter().enumerate() {
            for t in c.terms() {
                cols[t.comp as usize].push(Term {
                    comp: j as u32,
                    ..*t
                });
            }
        }
        Matrix {
            target: self.source.dual(),
            source: self.target.dual(),
            columns: cols
                .into_iter()
                .map(|t| FreeVector::from_terms(ring, t))
                .collect(),
        }
    }

    /// [self | other] with a common target.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.target != other.target {
            return Err(Error::ShapeMismatch("hstack with different targets".into()));
        }
        let mut cols = self.columns.clone();
        cols.extend_from_slice(&other.columns);
        Ok(Matrix {
            target: self.target.clone(),
            source: self.source.direct_sum(&other.source),
            columns: cols,
        })
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, ring: &PolyRing, other: &Matrix) -> Matrix {
        let off = self.nrows();
        let mut cols = self.columns.clone();
        for c in &other.columns {
            cols.push(c.map_components(ring, |k| Some(k + off)));
        }
        Matrix {
            target: self.target.direct_sum(&other.target),
            source: self.source.direct_sum(&other.source),
            columns: cols,
        }
    }

    /// Same map between the shifted modules F(s) -> G(s).
    pub fn shifted(&self, s: i32) -> Matrix {
        Matrix {
            target: self.target.shifted(s),
            source: self.source.shifted(s),
            columns: self.columns.clone(),
        }
    }

    /// Keep the listed columns, in order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix {
            target: self.target.clone(),
            source: FreeModule::new(idx.iter().map(|&j| self.source.twists[j]).collect()),
            columns: idx.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    /// Restrict the target to the listed rows (components outside are dropped).
    pub fn select_rows(&self, ring: &PolyRing, idx: &[usize]) -> Matrix {
        let pos = |k: usize| idx.iter().position(|&i| i == k);
        Matrix {
            target: FreeModule::new(idx.iter().map(|&i| self.target.twists[i]).collect()),
            source: self.source.clone(),
            columns: self
                .columns
                .iter()
                .map(|c| c.map_components(ring, pos))
                .collect(),
        }
    }

    /// True when some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.columns
            .iter()
            .any(|c| c.terms().iter().any(|t| t.mono.is_one()))
    }

    pub fn rows_display(&self, ring: &PolyRing) -> Vec<Vec<String>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.entry(i, j).display(ring)).collect())
            .collect()
    }

    pub fn to_json(&self, ring: &PolyRing) -> MatrixJson {
        MatrixJson {
            target: self.target.twists.clone(),
            source: self.source.twists.clone(),
            rows: self.rows_display(ring),
        }
    }
}

#[derive(Clone, Debug, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct MatrixJson {
    pub target: Vec<i32>,
    pub source: Vec<i32>,
    pub rows: Vec<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transpose_roundtrip_and_degree_check() {
        let r = PolyRing::default();
        let x = Polynomial::var(0);
        let y = Polynomial::var(1);
        let m = Matrix::from_rows(
            &r,
            FreeModule::new(vec![0]),
            FreeModule::new(vec![1, 1]),
            &[vec![x.clone(), y.clone()]],
        )
        .unwrap();
        let t = m.transpose(&r);
        assert_eq!(t.target().twists, vec![-1, -1]);
        assert_eq!(t.source().twists, vec![0]);
        assert_eq!(t.transpose(&r), m);
        let bad = Matrix::from_rows(
            &r,
            FreeModule::new(vec![0]),
            FreeModule::new(vec![2, 1]),
            &[vec![x, y]],
        );
        assert!(bad.is_err());
    }
}
