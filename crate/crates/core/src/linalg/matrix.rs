//! Dense exact matrices.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Row-major dense matrix whose entries all share one field tag.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::Field(format!("entry {bad} is not in {field}")));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![Scalar::zero(field); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one(field);
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                debug_assert_eq!(v.field(), field);
                data.push(v);
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Rational matrix from integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_i64_in(Field::Rat, rows)
    }

    pub fn from_i64_in(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Self::from_fn(field, r, c, |i, j| Scalar::from_int(field, rows[i][j]))
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field tag mismatch");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    /// Re-tag every entry; fails if an imaginary part would be dropped.
    pub fn to_field(&self, field: Field) -> Result<Matrix> {
        let data = self.data.iter().map(|s| s.to_field(field)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix { field, rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn conj(&self) -> Matrix {
        Matrix { data: self.data.iter().map(Scalar::conj).collect(), ..self.clone() }
    }

    pub fn adjoint(&self) -> Matrix {
        self.conj().transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c { v.is_one() } else { v.is_zero() }
                })
            })
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Field(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * other.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("{}x{} times vector of {}", self.rows, self.cols, v.len())));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape("elementwise operands differ in shape".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { data, ..self.clone() })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix { data: self.data.iter().map(|v| v * s).collect(), ..self.clone() }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    /// Contiguous block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Matrix {
        Matrix::from_fn(self.field, nr, nc, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    /// Square matrix extended by an identity block to size `n`.
    pub fn pad_identity(&self, n: usize) -> Matrix {
        assert!(self.is_square() && n >= self.rows, "pad_identity needs a square core no larger than {n}");
        let k = self.rows;
        Matrix::from_fn(self.field, n, n, |r, c| {
            if r < k && c < k {
                self.get(r, c).clone()
            } else if r == c {
                Scalar::one(self.field)
            } else {
                Scalar::zero(self.field)
            }
        })
    }

    pub fn direct_sum(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let (r1, c1) = (self.rows, self.cols);
        Ok(Matrix::from_fn(self.field, r1 + other.rows, c1 + other.cols, |r, c| {
            if r < r1 && c < c1 {
                self.get(r, c).clone()
            } else if r >= r1 && c >= c1 {
                other.get(r - r1, c - c1).clone()
            } else {
                Scalar::zero(self.field)
            }
        }))
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.rows != other.rows {
            return Err(Error::Shape("hstack row counts differ".into()));
        }
        Ok(Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols { self.get(r, c).clone() } else { other.get(r, c - self.cols).clone() }
        }))
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Shape("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        let (r2, c2) = (other.rows, other.cols);
        Ok(Matrix::from_fn(self.field, self.rows * r2, self.cols * c2, |r, c| {
            self.get(r / r2, c / c2) * other.get(r % r2, c % c2)
        }))
    }

    /// Permutation matrix with `M e_k = e_{perm[k]}`.
    pub fn permutation(field: Field, perm: &[usize]) -> Matrix {
        let n = perm.len();
        let mut m = Matrix::zeros(field, n, n);
        for (k, &p) in perm.iter().enumerate() {
            m.set(p, k, Scalar::one(field));
        }
        m
    }

    /// Reduced row-echelon form with zero rows dropped, plus pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, pivots) = rref_rows(self.field, self.row_vecs(), self.cols);
        let m = Matrix::from_rows(self.field, rows).expect("rref rows are rectangular");
        let m = if m.rows == 0 { Matrix::zeros(self.field, 0, self.cols) } else { m };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape(format!("inverse of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.clone());
        }
        let aug = self.hstack(&Matrix::identity(self.field, n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    /// Determinant via Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::Shape(format!("determinant of {}x{}", self.rows, self.cols)));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one(self.field));
        }
        let mut a = self.row_vecs();
        let mut sign_flip = false;
        let mut prev = Scalar::one(self.field);
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign_flip = !sign_flip;
                    }
                    None => return Ok(Scalar::zero(self.field)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = &num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign_flip { -d } else { d })
    }
}

/// In-place Gauss-Jordan on row vectors. Row updates only touch the nonzero
/// support of the pivot row, which keeps sparse constraint systems cheap.
pub(crate) fn rref_rows(field: Field, mut rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut top = 0;
    for c in 0..cols {
        if top == rows.len() {
            break;
        }
        let Some(p) = (top..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(top, p);
        let inv = rows[top][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for v in rows[top].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let support: Vec<usize> = (c..cols).filter(|&j| !rows[top][j].is_zero()).collect();
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == top || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                row[j] = &row[j] - &(&f * &pivot_row[j]);
            }
        }
        pivots.push(c);
        top += 1;
    }
    rows.truncate(top);
    debug_assert!(rows.iter().all(|r| r.iter().all(|s| s.field() == field)));
    (rows, pivots)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}; {}x{}](", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|r| self.row(r).iter().map(|v| v.to_string()).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::deserialize(d)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom("entries do not match rows/cols"));
        }
        let data = repr
            .entries
            .iter()
            .flatten()
            .map(|s| Scalar::parse(s, repr.field))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Matrix::new(repr.field, repr.rows, repr.cols, data).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(rows: &[&[i64]]) -> Matrix {
        Matrix::from_i64(rows)
    }

    #[test]
    fn rref_examples() {
        let (r, p) = q(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(r, q(&[&[1, 2]]));
        assert_eq!(p, vec![0]);

        let id = Matrix::identity(Field::Rat, 3);
        assert_eq!(id.rref(), (id.clone(), vec![0, 1, 2]));

        let (r, p) = Matrix::zeros(Field::Rat, 2, 2).rref();
        assert_eq!((r.rows(), r.cols()), (0, 2));
        assert!(p.is_empty());
    }

    #[test]
    fn rref_empty_matrix() {
        let (r, p) = Matrix::zeros(Field::Rat, 0, 0).rref();
        assert_eq!((r.rows(), r.cols()), (0, 0));
        assert!(p.is_empty());
    }

    #[test]
    fn inverse_and_determinant() {
        let a = q(&[&[2, 1], &[3, 2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, q(&[&[2, -1], &[-3, 2]]));
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
        assert!(a.determinant().unwrap().is_one());
        assert!(Matrix::identity(Field::Rat, 4).determinant().unwrap().is_one());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        // cofactor oracle on 3x3
        let m = q(&[&[0, 2, 1], &[3, -1, 4], &[5, 2, 0]]);
        let e = |r: usize, c: usize| m.get(r, c).clone();
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &(&e(r1, c1) * &e(r2, c2)) - &(&e(r1, c2) * &e(r2, c1));
        let cof = &(&(&e(0, 0) * &minor(1, 2, 1, 2)) - &(&e(0, 1) * &minor(1, 2, 0, 2))) + &(&e(0, 2) * &minor(1, 2, 0, 1));
        assert_eq!(m.determinant().unwrap(), cof);
    }

    #[test]
    fn singular_and_shape_errors() {
        assert_eq!(q(&[&[1, 2], &[2, 4]]).inverse(), Err(Error::Singular));
        assert!(matches!(q(&[&[1, 2]]).inverse(), Err(Error::Shape(_))));
        assert!(matches!(q(&[&[1, 2]]).mul(&q(&[&[1, 2]])), Err(Error::Shape(_))));
        assert!(q(&[&[1, 2], &[2, 4]]).determinant().unwrap().is_zero());
    }

    #[test]
    fn mixed_fields_rejected() {
        let data = vec![Scalar::one(Field::Rat), Scalar::one(Field::GaussRat)];
        assert!(matches!(Matrix::new(Field::Rat, 1, 2, data), Err(Error::Field(_))));
        let a = Matrix::identity(Field::Rat, 2);
        let b = Matrix::identity(Field::GaussRat, 2);
        assert!(matches!(a.mul(&b), Err(Error::Field(_))));
    }

    #[test]
    fn json_round_trip() {
        let m = q(&[&[1, -2], &[0, 3]]).scale(&Scalar::from_ratio(Field::Rat, 1, 2));
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"field":"Q","rows":2,"cols":2,"entries":[["1/2","-1"],["0","3/2"]]}"#);
        let back: Matrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<Matrix>(r#"{"field":"Q","rows":1,"cols":2,"entries":[["1"]]}"#).is_err());
    }
}
