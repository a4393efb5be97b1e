//! Double cosets as morphisms of the train, their product, involution,
//! units, invariants and equality testing.

mod compose;
mod invariants;
mod special;
mod witness;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use compose::{block_product, compose_raw, compose_u2_interleaved, compose_with_support};
pub use invariants::{char_dims_ok, coset_invariants, lambda_samples, CosetInvariants, LAMBDA_SAMPLES};
pub use special::{
    center_witness, commutativity_witness, conjugates, group_to_mantle, mantle_compose, projection_pi,
    shift_to_level, theta_conjugate,
};
pub use witness::{coset_eq, find_witness, SignedPerm, Verdict, Witness};

use crate::error::{Error, Result};
use crate::groups::{GroupElement, GroupKind, PairDescriptor};
use crate::linalg::Matrix;

/// A morphism `alpha -> beta` of the train: the class `L^beta rep L^alpha`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DoubleCoset {
    pair: PairDescriptor,
    beta: Vec<usize>,
    alpha: Vec<usize>,
    rep: GroupElement,
}

impl DoubleCoset {
    pub fn new(pair: PairDescriptor, beta: Vec<usize>, alpha: Vec<usize>, rep: GroupElement) -> Result<Self> {
        pair.check_levels(&beta)?;
        pair.check_levels(&alpha)?;
        pair.check_element(&rep)?;
        if !rep.is_member() {
            return Err(Error::NotMember(format!("representative is not in {}", pair.g())));
        }
        Ok(DoubleCoset { pair, beta, alpha, rep })
    }

    /// Skips the membership test; used for products of known members.
    pub(crate) fn trusted(pair: PairDescriptor, beta: Vec<usize>, alpha: Vec<usize>, rep: GroupElement) -> Self {
        debug_assert!(rep.matches(pair.g()));
        DoubleCoset { pair, beta, alpha, rep }
    }

    /// Single-factor coset on the classical pair `(kind, heavy(kind))`.
    pub fn classical(kind: GroupKind, beta: usize, alpha: usize, core: Matrix) -> Result<Self> {
        let op = crate::groups::FiniteSupportOperator::new(kind, core)?;
        Self::new(PairDescriptor::classical(kind), vec![beta], vec![alpha], GroupElement::single(op))
    }

    pub fn unit(pair: &PairDescriptor, alpha: Vec<usize>) -> Result<Self> {
        Self::new(pair.clone(), alpha.clone(), alpha, GroupElement::identity(pair.g()))
    }

    pub fn pair(&self) -> &PairDescriptor {
        &self.pair
    }
    pub fn beta(&self) -> &[usize] {
        &self.beta
    }
    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }
    pub fn rep(&self) -> &GroupElement {
        &self.rep
    }

    /// Rounds needed to hold the representative and both levels.
    pub fn rounds(&self) -> usize {
        let lv = self.alpha.iter().chain(&self.beta).copied().max().unwrap_or(0);
        self.pair.rounds_of(&self.rep).max(lv)
    }

    /// Representative truncated to `rounds` rounds in every factor.
    pub fn truncated(&self, rounds: usize) -> Vec<Matrix> {
        self.pair.truncate(&self.rep, rounds)
    }

    pub fn is_unit_rep(&self) -> bool {
        self.rep.is_identity()
    }
}

/// The class of `g^{-1}`, a morphism `beta -> alpha`.
pub fn involution(g: &DoubleCoset) -> Result<DoubleCoset> {
    Ok(DoubleCoset::trusted(g.pair.clone(), g.alpha.clone(), g.beta.clone(), g.rep.inverse()?))
}

fn check_order(alpha: &[usize], beta: &[usize]) -> Result<()> {
    if alpha.len() != beta.len() || alpha.iter().zip(beta).any(|(a, b)| a > b) {
        return Err(Error::LevelOrder { alpha: alpha.to_vec(), beta: beta.to_vec() });
    }
    Ok(())
}

/// `lambda_{alpha,beta}`: identity representative, `alpha -> beta`.
pub fn unit_lambda(pair: &PairDescriptor, alpha: &[usize], beta: &[usize]) -> Result<DoubleCoset> {
    check_order(alpha, beta)?;
    DoubleCoset::new(pair.clone(), beta.to_vec(), alpha.to_vec(), GroupElement::identity(pair.g()))
}

/// `mu_{beta,alpha}`: identity representative, `beta -> alpha`.
pub fn unit_mu(pair: &PairDescriptor, beta: &[usize], alpha: &[usize]) -> Result<DoubleCoset> {
    check_order(alpha, beta)?;
    DoubleCoset::new(pair.clone(), alpha.to_vec(), beta.to_vec(), GroupElement::identity(pair.g()))
}

/// `psi = lambda_{alpha,beta} . mu_{beta,alpha}`, an idempotent at `beta`.
pub fn psi(pair: &PairDescriptor, alpha: &[usize], beta: &[usize]) -> Result<DoubleCoset> {
    coset_compose(&unit_lambda(pair, alpha, beta)?, &unit_mu(pair, beta, alpha)?)
}

/// The product `g . h` of `g: beta -> gamma` and `h: alpha -> beta`.
pub fn coset_compose(g: &DoubleCoset, h: &DoubleCoset) -> Result<DoubleCoset> {
    compose_with_support(g, h, g.rounds(), h.rounds())
}

#[derive(Serialize, Deserialize)]
struct CosetRepr {
    #[serde(default = "default_pair")]
    pair: PairDescriptor,
    alpha: Vec<usize>,
    beta: Vec<usize>,
    rep: Vec<Matrix>,
}

fn default_pair() -> PairDescriptor {
    PairDescriptor::classical(GroupKind::GlR)
}

impl Serialize for DoubleCoset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CosetRepr {
            pair: self.pair.clone(),
            alpha: self.alpha.clone(),
            beta: self.beta.clone(),
            rep: self.rep.factors().iter().map(|f| f.core().clone()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DoubleCoset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = CosetRepr::deserialize(d)?;
        let rep = r.pair.element_from(r.rep).map_err(D::Error::custom)?;
        DoubleCoset::new(r.pair, r.beta, r.alpha, rep).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Field;

    fn gl(beta: usize, alpha: usize, rows: &[&[i64]]) -> DoubleCoset {
        DoubleCoset::classical(GroupKind::GlR, beta, alpha, Matrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn product_formula_example() {
        let g = gl(1, 1, &[&[2, 1], &[3, 2]]);
        let h = gl(1, 1, &[&[1, 2], &[0, 1]]);
        let gh = coset_compose(&g, &h).unwrap();
        assert_eq!(gh.rep().factor(0).core(), &Matrix::from_i64(&[&[2, 1, 4], &[3, 2, 6], &[0, 0, 1]]));
        assert_eq!((gh.beta(), gh.alpha()), (&[1][..], &[1][..]));
    }

    #[test]
    fn unit_times_unit() {
        let pair = PairDescriptor::classical(GroupKind::GlR);
        for a in 0..4 {
            let u = DoubleCoset::unit(&pair, vec![a]).unwrap();
            let uu = coset_compose(&u, &u).unwrap();
            assert!(uu.is_unit_rep(), "level {a}: {:?}", uu.rep());
        }
    }

    #[test]
    fn involution_inverts() {
        let g = gl(1, 1, &[&[2, 1], &[3, 2]]);
        let gi = involution(&g).unwrap();
        assert_eq!(gi.rep().factor(0).core(), &Matrix::from_i64(&[&[2, -1], &[-3, 2]]));
        let pair = PairDescriptor::classical(GroupKind::GlR);
        let u = DoubleCoset::unit(&pair, vec![2]).unwrap();
        assert_eq!(involution(&u).unwrap(), u);
        let g = gl(2, 1, &[&[2, 1], &[3, 2]]);
        let gi = involution(&g).unwrap();
        assert_eq!((gi.beta(), gi.alpha()), (&[1][..], &[2][..]));
    }

    #[test]
    fn level_errors() {
        let pair = PairDescriptor::classical(GroupKind::GlR);
        assert!(matches!(unit_lambda(&pair, &[2], &[1]), Err(Error::LevelOrder { .. })));
        let g = gl(1, 2, &[&[2, 1], &[3, 2]]);
        let h = gl(1, 1, &[&[2, 1], &[3, 2]]);
        assert!(matches!(coset_compose(&g, &h), Err(Error::IndexMismatch(_))));
        assert!(matches!(
            DoubleCoset::new(pair, vec![1, 1], vec![1], GroupElement::identity(&crate::groups::GroupDescriptor::simple(GroupKind::GlR))),
            Err(Error::IndexMismatch(_))
        ));
        let singular = DoubleCoset::classical(GroupKind::GlR, 1, 1, Matrix::from_i64(&[&[1, 2], &[2, 4]]));
        assert!(matches!(singular, Err(Error::NotMember(_))));
    }

    #[test]
    fn json_round_trip_with_default_pair() {
        let s = r#"{"alpha":[1],"beta":[1],"rep":[{"field":"Q","rows":2,"cols":2,"entries":[["2","1"],["3","2"]]}]}"#;
        let g: DoubleCoset = serde_json::from_str(s).unwrap();
        assert_eq!(g, gl(1, 1, &[&[2, 1], &[3, 2]]));
        let back: DoubleCoset = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        assert_eq!(back, g);
        assert_eq!(g.rep().factor(0).core().field(), Field::Rat);
    }
}
