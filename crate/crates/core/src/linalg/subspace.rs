//! Subspaces in canonical reduced row-echelon form.

use serde::{Deserialize, Serialize};

use super::matrix::{rref_rows, Matrix};
use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// A subspace of `field^ambient_dim`, stored as its RREF basis.
///
/// Equal subspaces have bit-identical bases, so `==` is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the rows of `m`.
    pub fn row_space(m: &Matrix) -> Subspace {
        let (basis, pivots) = m.rref();
        Subspace { basis, pivots }
    }

    pub fn span(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Subspace> {
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::Shape(format!("spanning vector not of length {ambient}")));
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(field, ambient));
        }
        Ok(Subspace::row_space(&Matrix::from_rows(field, vectors)?))
    }

    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// `{v : m v = 0}`.
    pub fn kernel(m: &Matrix) -> Subspace {
        let (r, pivots) = m.rref();
        let n = m.cols();
        let field = m.field();
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        // Built in RREF directly: the free coordinates carry the identity pattern,
        // so after reordering each vector's leading entry is its free column.
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Scalar::zero(field); n];
            v[f] = Scalar::one(field);
            for (i, &p) in pivots.iter().enumerate() {
                let e = r.get(i, f);
                if !e.is_zero() {
                    v[p] = -e;
                }
            }
            rows.push(v);
        }
        let (rows, pivots) = rref_rows(field, rows, n);
        let basis = if rows.is_empty() {
            Matrix::zeros(field, 0, n)
        } else {
            Matrix::from_rows(field, rows).expect("rectangular")
        };
        Subspace { basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch(self.ambient_dim(), other.ambient_dim()));
        }
        if self.field() != other.field() {
            return Err(Error::Field(format!("{} vs {}", self.field(), other.field())));
        }
        Ok(())
    }

    /// Set equality, decided by comparing canonical bases.
    pub fn equal(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self == other)
    }

    /// Image under deleting every coordinate not listed in `coords`.
    pub fn coordinate_project(&self, coords: &[usize]) -> Result<Subspace> {
        let n = self.ambient_dim();
        if let Some(&bad) = coords.iter().find(|&&c| c >= n) {
            return Err(Error::IndexOutOfRange { index: bad, dim: n });
        }
        let rows: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|r| coords.iter().map(|&c| self.basis.get(r, c).clone()).collect())
            .collect();
        Subspace::span(self.field(), coords.len(), rows)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Annihilator under the bilinear pairing `sum x_i y_i` (no conjugation).
    pub fn annihilator(&self) -> Subspace {
        Subspace::kernel(&self.basis)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let ann = self.annihilator().basis.vstack(&other.annihilator().basis)?;
        Ok(Subspace::kernel(&ann))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim() {
            return Err(Error::AmbientMismatch(v.len(), self.ambient_dim()));
        }
        // v is in the span iff v equals the combination read off at the pivots.
        let mut residual = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = residual[p].clone();
            if c.is_zero() {
                continue;
            }
            for (j, r) in residual.iter_mut().enumerate() {
                let b = self.basis.get(i, j);
                if !b.is_zero() {
                    *r = &*r - &(&c * b);
                }
            }
        }
        Ok(residual.iter().all(Scalar::is_zero))
    }

    /// Coordinates of `v` in the canonical basis; `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }
}

/// Incremental echelon basis: rows are reduced and inserted one at a time,
/// so a large constraint system never has to be materialized at once.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    field: Field,
    ambient: usize,
    // Sorted by pivot; each row has a unit pivot and zeros in the other pivot columns.
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl EchelonBuilder {
    pub fn new(field: Field, ambient: usize) -> Self {
        EchelonBuilder { field, ambient, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v`; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length");
        for (p, row) in &self.rows {
            let c = v[*p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, b) in v.iter_mut().zip(row) {
                if !b.is_zero() {
                    *x = &*x - &(&c * b);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero");
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let support: Vec<usize> = (p..self.ambient).filter(|&j| !v[j].is_zero()).collect();
        for (_, row) in self.rows.iter_mut() {
            let c = row[p].clone();
            if c.is_zero() {
                continue;
            }
            for &j in &support {
                row[j] = &row[j] - &(&c * &v[j]);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v));
        true
    }

    pub fn finish(self) -> Subspace {
        if self.rows.is_empty() {
            return Subspace::zero(self.field, self.ambient);
        }
        let pivots = self.rows.iter().map(|(p, _)| *p).collect();
        let basis = Matrix::from_rows(self.field, self.rows.into_iter().map(|(_, r)| r).collect())
            .expect("rectangular");
        Subspace { basis, pivots }
    }

    /// The kernel of the inserted rows, i.e. the joint solution space.
    pub fn solution_space(self) -> Subspace {
        let ambient = self.ambient;
        let field = self.field;
        let rows = self.finish();
        if rows.dim() == 0 {
            return Subspace::full(field, ambient);
        }
        Subspace::kernel(rows.basis())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Scalar::from_int(Field::Rat, v)
    }

    fn span(vs: &[&[i64]]) -> Subspace {
        let n = vs[0].len();
        Subspace::span(Field::Rat, n, vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn kernel_examples() {
        let k = Subspace::kernel(&Matrix::from_i64(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k, span(&[&[1, -1]]));
        assert_eq!(k.basis(), &Matrix::from_i64(&[&[1, -1]]));

        assert_eq!(Subspace::kernel(&Matrix::identity(Field::Rat, 4)).dim(), 0);
        assert_eq!(Subspace::kernel(&Matrix::zeros(Field::Rat, 2, 3)), Subspace::full(Field::Rat, 3));
    }

    #[test]
    fn projection_examples() {
        assert_eq!(span(&[&[1, 0, 5]]).coordinate_project(&[0, 1]).unwrap(), span(&[&[1, 0]]));
        assert_eq!(
            Subspace::full(Field::Rat, 4).coordinate_project(&[3, 1]).unwrap(),
            Subspace::full(Field::Rat, 2)
        );
        assert_eq!(
            Subspace::zero(Field::Rat, 4).coordinate_project(&[0]).unwrap(),
            Subspace::zero(Field::Rat, 1)
        );
        assert!(matches!(
            span(&[&[1, 0]]).coordinate_project(&[2]),
            Err(Error::IndexOutOfRange { index: 2, dim: 2 })
        ));
    }

    #[test]
    fn equality_examples() {
        assert!(span(&[&[1, 1]]).equal(&span(&[&[2, 2]])).unwrap());
        assert!(!span(&[&[1, 0]]).equal(&span(&[&[0, 1]])).unwrap());
        assert!(Subspace::kernel(&Matrix::from_i64(&[&[1, 1]])).equal(&span(&[&[1, -1]])).unwrap());
        assert!(matches!(span(&[&[1, 0]]).equal(&span(&[&[1, 0, 0]])), Err(Error::AmbientMismatch(2, 3))));
    }

    #[test]
    fn intersection_and_membership() {
        let a = span(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(&[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), span(&[&[0, 1, 0]]));
        assert!(a.contains(&[q(3), q(-2), q(0)]).unwrap());
        assert!(!a.contains(&[q(0), q(0), q(1)]).unwrap());
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(Field::Rat, 3));
        let c = span(&[&[1, 2, 3]]);
        assert_eq!(c.coordinates(&[q(2), q(4), q(6)]).unwrap(), Some(vec![q(2)]));
    }

    #[test]
    fn builder_matches_batch_rref() {
        let m = Matrix::from_i64(&[&[0, 2, 4, 1], &[1, 1, 0, 0], &[1, 3, 4, 1], &[0, 0, 0, 3]]);
        let mut b = EchelonBuilder::new(Field::Rat, 4);
        let grew: Vec<bool> = m.row_vecs().into_iter().map(|r| b.insert(r)).collect();
        assert_eq!(grew, vec![true, true, false, true]);
        assert_eq!(b.clone().finish(), Subspace::row_space(&m));
        assert_eq!(b.solution_space(), Subspace::kernel(&m));
    }
}
