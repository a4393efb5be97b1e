use serde::{Deserialize, Serialize};

use super::{GroupDescriptor, GroupKind};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// An infinite matrix that differs from the identity only inside its core.
///
/// The core is kept in normal form: trailing coordinates on which the
/// operator is the identity are stripped, so `support()` is minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteSupportOperator {
    group: GroupKind,
    core: Matrix,
}

/// Exact group identity for `core` in `kind`.
pub fn is_member(kind: GroupKind, core: &Matrix) -> bool {
    if !core.is_square() || core.field() != kind.field() {
        return false;
    }
    match kind {
        GroupKind::GlR | GroupKind::GlC => core.determinant().map(|d| !d.is_zero()).unwrap_or(false),
        GroupKind::O => core.transpose().mul(core).map(|m| m.is_identity()).unwrap_or(false),
        GroupKind::U => core.adjoint().mul(core).map(|m| m.is_identity()).unwrap_or(false),
    }
}

fn trailing_identity(m: &Matrix, k: usize) -> bool {
    let n = k;
    (0..n).all(|j| {
        let (r, c) = (m.get(n - 1, j), m.get(j, n - 1));
        if j == n - 1 { r.is_one() } else { r.is_zero() && c.is_zero() }
    })
}

fn strip(core: Matrix) -> Matrix {
    let mut n = core.rows();
    while n > 0 && trailing_identity(&core, n) {
        n -= 1;
    }
    if n == core.rows() {
        core
    } else {
        core.block(0, 0, n, n)
    }
}

impl FiniteSupportOperator {
    /// Builds the operator after checking shape, field and group membership.
    pub fn new(group: GroupKind, core: Matrix) -> Result<Self> {
        let op = Self::unchecked(group, core)?;
        if !op.is_member() {
            return Err(Error::NotMember(format!("core is not in {group}")));
        }
        Ok(op)
    }

    /// Builds the normal form without the membership test.
    pub fn unchecked(group: GroupKind, core: Matrix) -> Result<Self> {
        if !core.is_square() {
            return Err(Error::Shape(format!("core is {}x{}", core.rows(), core.cols())));
        }
        if core.field() != group.field() {
            return Err(Error::Field(format!("{group} needs entries in {}", group.field())));
        }
        Ok(FiniteSupportOperator { group, core: strip(core) })
    }

    pub fn identity(group: GroupKind) -> Self {
        FiniteSupportOperator { group, core: Matrix::identity(group.field(), 0) }
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn core(&self) -> &Matrix {
        &self.core
    }

    pub fn support(&self) -> usize {
        self.core.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.support() == 0
    }

    pub fn is_member(&self) -> bool {
        is_member(self.group, &self.core)
    }

    /// The `n x n` truncation; `n` must cover the support.
    pub fn padded(&self, n: usize) -> Matrix {
        self.core.pad_identity(n)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::PairMismatch(format!("{} times {}", self.group, other.group)));
        }
        let n = self.support().max(other.support());
        Self::unchecked(self.group, self.padded(n).mul(&other.padded(n))?)
    }

    pub fn inverse(&self) -> Result<Self> {
        Self::unchecked(self.group, self.core.inverse()?)
    }

    /// Same matrix regarded in another group with the same field.
    pub fn regard_as(&self, group: GroupKind) -> Result<Self> {
        Self::unchecked(group, self.core.clone())
    }
}

/// Block permutation `1_alpha`, swap of two `m`-blocks, identity tail.
pub fn theta(alpha: usize, m: usize) -> FiniteSupportOperator {
    theta_in(GroupKind::O, alpha, m)
}

pub fn theta_in(group: GroupKind, alpha: usize, m: usize) -> FiniteSupportOperator {
    let n = alpha + 2 * m;
    let perm: Vec<usize> = (0..n)
        .map(|k| if k < alpha { k } else if k < alpha + m { k + m } else { k - m })
        .collect();
    FiniteSupportOperator::unchecked(group, Matrix::permutation(group.field(), &perm))
        .expect("permutation core is square")
}

/// A tuple of operators, one per factor of a group descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    factors: Vec<FiniteSupportOperator>,
}

impl GroupElement {
    pub fn new(factors: Vec<FiniteSupportOperator>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Shape("group element with no factors".into()));
        }
        Ok(GroupElement { factors })
    }

    pub fn single(op: FiniteSupportOperator) -> Self {
        GroupElement { factors: vec![op] }
    }

    pub fn identity(desc: &GroupDescriptor) -> Self {
        GroupElement { factors: desc.factors().iter().map(|&k| FiniteSupportOperator::identity(k)).collect() }
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor::from_factors(self.factors.iter().map(|f| f.group()).collect()).expect("nonempty")
    }

    pub fn factors(&self) -> &[FiniteSupportOperator] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &FiniteSupportOperator {
        &self.factors[i]
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn support(&self) -> usize {
        self.factors.iter().map(|f| f.support()).max().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.factors.iter().all(|f| f.is_identity())
    }

    pub fn is_member(&self) -> bool {
        self.factors.iter().all(|f| f.is_member())
    }

    pub fn matches(&self, desc: &GroupDescriptor) -> bool {
        self.factors.len() == desc.arity() && self.factors.iter().zip(desc.factors()).all(|(f, k)| f.group() == *k)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.arity() != other.arity() {
            return Err(Error::PairMismatch("factor counts differ".into()));
        }
        let factors = self.factors.iter().zip(&other.factors).map(|(a, b)| a.mul(b)).collect::<Result<_>>()?;
        Ok(GroupElement { factors })
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(GroupElement { factors: self.factors.iter().map(|f| f.inverse()).collect::<Result<_>>()? })
    }

    pub fn map_factors(&self, f: impl Fn(&FiniteSupportOperator) -> Result<FiniteSupportOperator>) -> Result<Self> {
        Ok(GroupElement { factors: self.factors.iter().map(f).collect::<Result<_>>()? })
    }
}

impl From<FiniteSupportOperator> for GroupElement {
    fn from(op: FiniteSupportOperator) -> Self {
        GroupElement::single(op)
    }
}

/// Convenience for tests and examples: `1 x 1` diagonal entry as an operator.
pub fn scalar_operator(group: GroupKind, s: Scalar) -> Result<FiniteSupportOperator> {
    FiniteSupportOperator::new(group, Matrix::new(group.field(), 1, 1, vec![s])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    #[test]
    fn membership_examples() {
        for k in [GroupKind::GlR, GroupKind::O] {
            assert!(FiniteSupportOperator::identity(k).is_member());
            assert!(is_member(k, &Matrix::identity(Field::Rat, 3)));
        }
        let swap = Matrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert!(is_member(GroupKind::O, &swap));
        let d = Matrix::from_i64(&[&[2, 0], &[0, 1]]);
        assert!(!is_member(GroupKind::O, &d));
        assert!(is_member(GroupKind::GlR, &d));
        assert!(matches!(FiniteSupportOperator::new(GroupKind::O, d), Err(Error::NotMember(_))));
        let i = Matrix::new(Field::GaussRat, 1, 1, vec![Scalar::imaginary_unit()]).unwrap();
        assert!(is_member(GroupKind::U, &i));
        assert!(!is_member(GroupKind::O, &i));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(0, 1).core(), &Matrix::from_i64(&[&[0, 1], &[1, 0]]));
        assert_eq!(theta(1, 1).core(), &Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
        for a in 0..=4 {
            for m in 1..=4 {
                let t = theta(a, m);
                assert!(t.is_member());
                assert_eq!(t.support(), a + 2 * m);
                assert!(t.mul(&t).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn normal_form_strips_identity_padding() {
        let g = FiniteSupportOperator::new(GroupKind::GlR, Matrix::from_i64(&[&[2, 1], &[3, 2]])).unwrap();
        let padded = FiniteSupportOperator::new(GroupKind::GlR, g.padded(5)).unwrap();
        assert_eq!(padded, g);
        let id = FiniteSupportOperator::new(GroupKind::GlR, Matrix::identity(Field::Rat, 4)).unwrap();
        assert_eq!(id.support(), 0);
        // A non-identity entry in the last column keeps that coordinate.
        let m = Matrix::from_i64(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(FiniteSupportOperator::new(GroupKind::GlR, m).unwrap().support(), 3);
    }

    #[test]
    fn products_pad_to_common_support() {
        let a = scalar_operator(GroupKind::GlR, Scalar::from_int(Field::Rat, 2)).unwrap();
        let b = theta_in(GroupKind::GlR, 0, 1);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.core(), &Matrix::from_i64(&[&[0, 2], &[1, 0]]));
        assert!(ab.mul(&ab.inverse().unwrap()).unwrap().is_identity());
    }
}
