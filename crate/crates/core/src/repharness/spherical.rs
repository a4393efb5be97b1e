//! Closed-form spherical functions of `(GL(∞, R), O(∞))`, in floating point.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{FiniteSupportOperator, GroupKind};
use crate::linalg::Field;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalParams {
    pub s: Vec<f64>,
    pub a: f64,
    pub sigma: u8,
}

impl SphericalParams {
    pub fn new(s: Vec<f64>, a: f64, sigma: u8) -> Result<Self> {
        if sigma > 1 {
            return Err(Error::Parse(format!("sigma must be 0 or 1, got {sigma}")));
        }
        Ok(SphericalParams { s, a, sigma })
    }
}

fn singular_values(g: &FiniteSupportOperator) -> Result<Vec<f64>> {
    let core = g.core();
    let n = core.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = DMatrix::from_fn(n, n, |r, c| core.get(r, c).to_f64_pair().0);
    let sv = m.svd(false, false).singular_values;
    let (lo, hi) = sv.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    if !lo.is_finite() || lo <= hi * 1e-12 {
        return Err(Error::Numeric(format!("ill-conditioned core: singular values in [{lo:e}, {hi:e}]")));
    }
    Ok(sv.iter().copied().collect())
}

/// `Φ(g) = |det g|^{ia} sgn(det g)^σ ∏_k ∏_l ((1 + i s_k)/2 λ_l + (1 - i s_k)/2 λ_l^{-1})^{-1/2}`
/// over the singular values `λ_l` of the core, principal branch.
pub fn spherical_phi(params: &SphericalParams, g: &FiniteSupportOperator) -> Result<Complex64> {
    if g.core().field() != Field::Rat || g.group() != GroupKind::GlR && g.group() != GroupKind::O {
        return Err(Error::Field("spherical functions are defined on real matrices".into()));
    }
    let det = g.core().determinant()?;
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let det = det.to_f64_pair().0;
    let mut phi = Complex64::from_polar(1.0, params.a * det.abs().ln());
    if params.sigma == 1 && det < 0.0 {
        phi = -phi;
    }
    for lambda in singular_values(g)? {
        for &s in &params.s {
            let f = Complex64::new(0.5, s / 2.0) * lambda + Complex64::new(0.5, -s / 2.0) / lambda;
            phi *= f.powf(-0.5);
        }
    }
    Ok(phi)
}

/// `|Φ(g ⊕ h) - Φ(g) Φ(h)| < tol` for the block-diagonal sum of the cores.
pub fn spherical_character_check(
    params: &SphericalParams,
    g: &FiniteSupportOperator,
    h: &FiniteSupportOperator,
    tol: f64,
) -> Result<bool> {
    let sum = FiniteSupportOperator::new(GroupKind::GlR, g.core().direct_sum(h.core())?)?;
    let lhs = spherical_phi(params, &sum)?;
    let rhs = spherical_phi(params, g)? * spherical_phi(params, h)?;
    Ok((lhs - rhs).norm() < tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn op(rows: &[&[i64]]) -> FiniteSupportOperator {
        FiniteSupportOperator::new(GroupKind::GlR, Matrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn identity_is_one() {
        let p = SphericalParams::new(vec![0.3, -1.0], 0.7, 1).unwrap();
        let phi = spherical_phi(&p, &FiniteSupportOperator::identity(GroupKind::GlR)).unwrap();
        assert_eq!(phi, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn diagonal_two() {
        let p = SphericalParams::new(vec![0.0], 0.0, 0).unwrap();
        let phi = spherical_phi(&p, &op(&[&[2]])).unwrap();
        assert!((phi.re - 2.0 / 5f64.sqrt()).abs() < 1e-12 && phi.im.abs() < 1e-12);
    }

    #[test]
    fn sign_character() {
        let p = SphericalParams::new(vec![], 0.0, 1).unwrap();
        assert_eq!(spherical_phi(&p, &op(&[&[-1]])).unwrap(), Complex64::new(-1.0, 0.0));
        assert!(SphericalParams::new(vec![], 0.0, 2).is_err());
    }

    #[test]
    fn disjoint_product() {
        let p = SphericalParams::new(vec![1.0], 0.5, 0).unwrap();
        assert!(spherical_character_check(&p, &op(&[&[2]]), &op(&[&[3]]), 1e-10).unwrap());
        let p = SphericalParams::new(vec![0.4], 0.2, 1).unwrap();
        assert!(spherical_character_check(&p, &op(&[&[-2]]), &op(&[&[0, 3], &[1, 0]]), 1e-10).unwrap());
    }

    #[test]
    fn singular_input() {
        let p = SphericalParams::new(vec![], 0.0, 0).unwrap();
        let g = FiniteSupportOperator::unchecked(GroupKind::GlR, Matrix::from_i64(&[&[1, 2], &[2, 4]])).unwrap();
        assert!(matches!(spherical_phi(&p, &g), Err(Error::Singular)));
    }
}
