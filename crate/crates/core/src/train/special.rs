//! Explicit witnesses: the conjugator for pure-pair commutativity, the
//! centrality exponent, the shift into higher levels and the mantle.

use super::{coset_compose, compose_with_support, unit_lambda, unit_mu, DoubleCoset};
use crate::error::{Error, Result};
use crate::groups::{FiniteSupportOperator, GroupElement, GroupKind, PairDescriptor};
use crate::linalg::Matrix;

fn common_rounds(pair: &PairDescriptor, els: &[&GroupElement]) -> usize {
    els.iter().map(|g| pair.rounds_of(g)).max().unwrap_or(0)
}

/// Whether `E(j) from E(j)^{-1} = to` holds exactly for the L-element `j`.
pub fn conjugates(pair: &PairDescriptor, j: &GroupElement, from: &DoubleCoset, to: &DoubleCoset) -> Result<bool> {
    let rounds = common_rounds(pair, &[from.rep(), to.rep()]).max(pair.rounds_of(&pair.embed_l_element(j)?));
    let e = pair.embed_l(j, rounds)?;
    let ei = pair.embed_l(&j.inverse()?, rounds)?;
    let (f, t) = (from.truncated(rounds), to.truncated(rounds));
    for k in 0..f.len() {
        if e[k].mul(&f[k])?.mul(&ei[k])? != t[k] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The L-element `J` with `J rep(g.h) J^{-1} = rep(h.g)` at level zero of a
/// pure pair: both products are computed at a common support `N` and `J`
/// swaps the two `N`-blocks.
pub fn commutativity_witness(g: &DoubleCoset, h: &DoubleCoset) -> Result<GroupElement> {
    let pair = g.pair();
    if !pair.is_pure() {
        return Err(Error::NotPure);
    }
    if h.pair() != pair {
        return Err(Error::PairMismatch("factors live on different pairs".into()));
    }
    let zero = vec![0; pair.level_arity()];
    for c in [g, h] {
        if c.alpha() != zero || c.beta() != zero {
            return Err(Error::IndexMismatch("commutativity needs both cosets at level zero".into()));
        }
    }
    let n = g.rounds().max(h.rounds()).max(1);
    let gh = compose_with_support(g, h, n, n)?;
    let hg = compose_with_support(h, g, n, n)?;
    let j = pair.theta_element(&zero, n);
    if !conjugates(pair, &j, &gh, &hg)? {
        return Err(Error::Numeric("block swap does not conjugate g.h to h.g".into()));
    }
    Ok(j)
}

/// `h` acts trivially on every coordinate fixed by the level-`alpha` subgroup.
fn fixes_level(pair: &PairDescriptor, h: &GroupElement, alpha: &[usize]) -> bool {
    let rounds = pair.rounds_of(h);
    pair.truncate(h, rounds).iter().enumerate().all(|(t, m)| {
        let n = m.rows();
        pair.layout(t).fixed_coords(alpha, n).iter().all(|&c| {
            (0..n).all(|k| {
                let unit = k == c;
                let (r, col) = (m.get(c, k), m.get(k, c));
                if unit { r.is_one() } else { r.is_zero() && col.is_zero() }
            })
        })
    })
}

/// Least `m` with `g (Θ_m h Θ_m) = (Θ_m h Θ_m) g` exactly, `h` in `G^alpha`.
pub fn center_witness(pair: &PairDescriptor, g: &GroupElement, h: &GroupElement, alpha: &[usize]) -> Result<usize> {
    pair.check_element(g)?;
    pair.check_element(h)?;
    pair.check_levels(alpha)?;
    if !fixes_level(pair, h, alpha) {
        return Err(Error::NotMember(format!("h does not fix level {alpha:?}")));
    }
    let (sg, sh) = (pair.rounds_of(g), pair.rounds_of(h));
    let top = alpha.iter().copied().max().unwrap_or(0);
    for m in 1..=sg.max(sh).max(1) {
        let rounds = sg.max(sh).max(top + 2 * m);
        let theta = pair.embed_l(&pair.theta_element(alpha, m), rounds)?;
        let (gt, ht) = (pair.truncate(g, rounds), pair.truncate(h, rounds));
        let mut ok = true;
        for t in 0..gt.len() {
            let moved = theta[t].mul(&ht[t])?.mul(&theta[t])?;
            if gt[t].mul(&moved)? != moved.mul(&gt[t])? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(m);
        }
    }
    Err(Error::Numeric("no exponent up to the support bound".into()))
}

/// `Θ_m h Θ_m` as a group element.
pub fn theta_conjugate(pair: &PairDescriptor, h: &GroupElement, alpha: &[usize], m: usize) -> Result<GroupElement> {
    let t = pair.embed_l_element(&pair.theta_element(alpha, m))?;
    t.mul(h)?.mul(&t)
}

/// `Π(g) = mu_{beta,alpha} . g . lambda_{alpha,beta}` for an endomorphism `g` of `beta`.
pub fn projection_pi(g: &DoubleCoset, alpha: &[usize]) -> Result<DoubleCoset> {
    if g.alpha() != g.beta() {
        return Err(Error::IndexMismatch(format!("{:?} <- {:?} is not an endomorphism", g.beta(), g.alpha())));
    }
    let pair = g.pair();
    let beta = g.beta();
    let right = coset_compose(g, &unit_lambda(pair, alpha, beta)?)?;
    coset_compose(&unit_mu(pair, beta, alpha)?, &right)
}

/// The endomorphism of `levels` obtained by moving every round `k` of `g` to
/// `k + levels_j`. Defined for pure pairs, where all coordinates are in lanes.
pub fn shift_to_level(pair: &PairDescriptor, g: &GroupElement, levels: &[usize]) -> Result<DoubleCoset> {
    if !pair.is_pure() {
        return Err(Error::NotPure);
    }
    pair.check_element(g)?;
    pair.check_levels(levels)?;
    let rounds = pair.rounds_of(g);
    let top = levels.iter().copied().max().unwrap_or(0);
    let mats = pair.truncate(g, rounds)
        .into_iter()
        .enumerate()
        .map(|(t, m)| {
            let lay = pair.layout(t);
            let shift = |c: usize| {
                let (lane, k, o) = lay.locate(c).expect("pure layouts have no head");
                let (_, j) = lay.lanes[lane].hom.expect("pure layouts have no identity lanes");
                lay.coord(lane, k + levels[j], o)
            };
            let mut out = Matrix::identity(m.field(), lay.size_for(rounds + top));
            let idx: Vec<usize> = (0..m.rows()).map(shift).collect();
            for (i, &r) in idx.iter().enumerate() {
                for (k, &c) in idx.iter().enumerate() {
                    out.set(r, c, m.get(i, k).clone());
                }
            }
            out
        })
        .collect();
    let rep = pair.element_from(mats)?;
    DoubleCoset::new(pair.clone(), levels.to_vec(), levels.to_vec(), rep)
}

/// `g` placed on the even coordinates of the mantle pair, at level zero.
pub fn group_to_mantle(g: &FiniteSupportOperator) -> Result<DoubleCoset> {
    if g.group() != GroupKind::GlR {
        return Err(Error::TagMismatch(format!("mantle holds GL_R elements, got {}", g.group())));
    }
    let n = g.support();
    let core = g.core();
    let mut m = Matrix::identity(core.field(), 2 * n);
    for i in 0..n {
        for j in 0..n {
            m.set(2 * i, 2 * j, core.get(i, j).clone());
        }
    }
    let pair = PairDescriptor::mantle();
    let rep = pair.element_from(vec![m])?;
    DoubleCoset::new(pair, vec![0], vec![0], rep)
}

pub fn mantle_compose(g: &DoubleCoset, h: &DoubleCoset) -> Result<DoubleCoset> {
    let mantle = PairDescriptor::mantle();
    if g.pair() != &mantle || h.pair() != &mantle {
        return Err(Error::PairMismatch("mantle product needs both cosets on the mantle pair".into()));
    }
    coset_compose(g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::train::coset_eq;

    fn op(rows: &[&[i64]]) -> FiniteSupportOperator {
        FiniteSupportOperator::new(GroupKind::GlR, Matrix::from_i64(rows)).unwrap()
    }

    fn level0(rows: &[&[i64]]) -> DoubleCoset {
        DoubleCoset::classical(GroupKind::GlR, 0, 0, Matrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn diagonal_swap() {
        let (g, h) = (level0(&[&[2]]), level0(&[&[3]]));
        let j = commutativity_witness(&g, &h).unwrap();
        assert_eq!(j.factor(0).core(), &Matrix::from_i64(&[&[0, 1], &[1, 0]]));
        let gh = coset_compose(&g, &h).unwrap();
        assert_eq!(gh.rep().factor(0).core(), &Matrix::from_i64(&[&[2, 0], &[0, 3]]));
    }

    #[test]
    fn general_supports_commute_with_n3() {
        let g = level0(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        let h = level0(&[&[1, 4], &[0, -1]]);
        let j = commutativity_witness(&g, &h).unwrap();
        assert_eq!(j.factor(0).support(), 6);
    }

    #[test]
    fn not_pure_is_rejected() {
        let pair = PairDescriptor::mantle();
        let u = DoubleCoset::unit(&pair, vec![0]).unwrap();
        assert!(matches!(commutativity_witness(&u, &u), Err(Error::NotPure)));
    }

    #[test]
    fn center_exponents() {
        let pair = PairDescriptor::classical(GroupKind::GlR);
        let g = GroupElement::single(op(&[&[2, 1, 0], &[1, 1, 1], &[0, 0, 1]]));
        let id = GroupElement::identity(pair.g());
        assert_eq!(center_witness(&pair, &g, &id, &[1]).unwrap(), 1);
        let h = GroupElement::single(op(&[&[1, 0, 0], &[0, 2, 1], &[0, 1, 1]]));
        let m = center_witness(&pair, &g, &h, &[1]).unwrap();
        assert!(m <= 3);
        let moved = theta_conjugate(&pair, &h, &[1], m).unwrap();
        assert_eq!(g.mul(&moved).unwrap(), moved.mul(&g).unwrap());
        if m > 1 {
            let early = theta_conjugate(&pair, &h, &[1], m - 1).unwrap();
            assert_ne!(g.mul(&early).unwrap(), early.mul(&g).unwrap());
        }
        assert!(center_witness(&pair, &g, &g, &[1]).is_err());
    }

    #[test]
    fn projection_of_shifted_diagonal() {
        let pair = PairDescriptor::classical(GroupKind::GlR);
        let d = GroupElement::single(op(&[&[2]]));
        let g = shift_to_level(&pair, &d, &[2]).unwrap();
        assert_eq!(g.rep().factor(0).core(), &Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
        let pi = projection_pi(&g, &[1]).unwrap();
        let expected = shift_to_level(&pair, &d, &[1]).unwrap();
        assert!(coset_eq(&pi, &expected).unwrap().has_witness());
        let unit = DoubleCoset::unit(&pair, vec![2]).unwrap();
        assert!(projection_pi(&unit, &[1]).unwrap().is_unit_rep());
    }

    #[test]
    fn mantle_homomorphism() {
        let g = op(&[&[2, 1], &[1, 1]]);
        let h = op(&[&[1, 3], &[0, 1]]);
        let lhs = mantle_compose(&group_to_mantle(&g).unwrap(), &group_to_mantle(&h).unwrap()).unwrap();
        let rhs = group_to_mantle(&g.mul(&h).unwrap()).unwrap();
        assert_eq!(coset_eq(&lhs, &rhs).unwrap().is_equal(), true);
        assert!(group_to_mantle(&FiniteSupportOperator::identity(GroupKind::GlR)).unwrap().is_unit_rep());
        assert_eq!(
            crate::train::coset_invariants(&lhs).unwrap().corner_blocks,
            vec![g.mul(&h).unwrap().core().clone()]
        );
    }

    #[test]
    fn mantle_commutes_with_odd_unit() {
        let g = group_to_mantle(&op(&[&[2, 1], &[1, 1]])).unwrap();
        let unit = DoubleCoset::unit(&PairDescriptor::mantle(), vec![0]).unwrap();
        let a = mantle_compose(&g, &unit).unwrap();
        let b = mantle_compose(&unit, &g).unwrap();
        assert!(coset_eq(&a, &b).unwrap().is_equal());
        assert!(coset_eq(&a, &g).unwrap().is_equal());
    }
}
