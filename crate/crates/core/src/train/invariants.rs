use serde::Serialize;

use super::DoubleCoset;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::relations::{char_function, LinearRelation, ProjectivePoint};

/// The sample points `2, 3, 5/2, 7/3, -2, infinity`; all avoid `lambda^2 = 1`.
pub const LAMBDA_SAMPLES: [(i64, i64); 6] = [(2, 1), (3, 1), (5, 2), (7, 3), (-2, 1), (1, 0)];

pub fn lambda_samples() -> Vec<ProjectivePoint> {
    LAMBDA_SAMPLES.iter().map(|&(n, d)| ProjectivePoint::ratio(n, d)).collect()
}

/// Quantities unchanged by multiplying the representative by level subgroups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetInvariants {
    /// Per factor: rows fixed at level beta, columns fixed at level alpha.
    pub corner_blocks: Vec<Matrix>,
    /// `None` when the characteristic function is not defined for the pair.
    pub chi_samples: Option<Vec<(ProjectivePoint, Vec<LinearRelation>)>>,
}

/// Corner blocks only; cheap enough to run before any search.
pub(crate) fn corner_blocks(g: &DoubleCoset) -> Vec<Matrix> {
    let pair = g.pair();
    let rounds = g.rounds();
    g.truncated(rounds)
        .iter()
        .enumerate()
        .map(|(t, m)| {
            let lay = pair.layout(t);
            let n = m.rows();
            let mut rows = lay.fixed_coords(g.beta(), n);
            let mut cols = lay.fixed_coords(g.alpha(), n);
            // Trailing coordinates of an infinite identity block are shared by
            // both index sets; drop them while they carry a unit pair.
            loop {
                let (Some(&r), Some(&c)) = (rows.last(), cols.last()) else { break };
                let inf = r == c && lay.locate(r).is_some_and(|(lane, _, _)| lay.lanes[lane].hom.is_none());
                let unit = inf
                    && cols.iter().all(|&k| if k == r { m.get(r, k).is_one() } else { m.get(r, k).is_zero() })
                    && rows.iter().all(|&k| k == r || m.get(k, r).is_zero());
                if !unit {
                    break;
                }
                rows.pop();
                cols.pop();
            }
            m.submatrix(&rows, &cols)
        })
        .collect()
}

pub fn coset_invariants(g: &DoubleCoset) -> Result<CosetInvariants> {
    let corner_blocks = corner_blocks(g);
    let chi_samples = match chi_samples(g) {
        Ok(s) => Some(s),
        Err(Error::Unsupported(why)) => {
            log::debug!("characteristic function skipped: {why}");
            None
        }
        Err(e) => return Err(e),
    };
    Ok(CosetInvariants { corner_blocks, chi_samples })
}

/// Every sampled value of `chi` is half-dimensional in its ambient space.
pub fn char_dims_ok(g: &DoubleCoset) -> Result<bool> {
    Ok(chi_samples(g)?.iter().flat_map(|(_, rs)| rs).all(|r| 2 * r.dim() == r.dom() + r.cod()))
}

pub(crate) fn chi_samples(g: &DoubleCoset) -> Result<Vec<(ProjectivePoint, Vec<LinearRelation>)>> {
    lambda_samples().into_iter().map(|l| Ok((l.clone(), char_function(g, &l)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupKind, PairDescriptor};
    use crate::linalg::Field;

    #[test]
    fn unit_invariants() {
        let pair = PairDescriptor::classical(GroupKind::GlR);
        let u = DoubleCoset::unit(&pair, vec![2]).unwrap();
        let inv = coset_invariants(&u).unwrap();
        assert_eq!(inv.corner_blocks, vec![Matrix::identity(Field::Rat, 2)]);
        for (_, r) in inv.chi_samples.unwrap() {
            assert_eq!(r, vec![LinearRelation::identity(Field::Rat, 4)]);
        }
    }

    #[test]
    fn diagonal_cosets_differ() {
        let a = DoubleCoset::classical(GroupKind::GlR, 1, 1, Matrix::from_i64(&[&[2]])).unwrap();
        let b = DoubleCoset::classical(GroupKind::GlR, 1, 1, Matrix::from_i64(&[&[3]])).unwrap();
        let (ia, ib) = (coset_invariants(&a).unwrap(), coset_invariants(&b).unwrap());
        assert_ne!(ia.chi_samples, ib.chi_samples);
    }

    #[test]
    fn mantle_corner_ignores_trailing_units() {
        let pair = PairDescriptor::mantle();
        let u = DoubleCoset::unit(&pair, vec![0]).unwrap();
        let inv = coset_invariants(&u).unwrap();
        assert_eq!(inv.corner_blocks[0].rows(), 0);
        assert!(inv.chi_samples.is_none());
    }
}
