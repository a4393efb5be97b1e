//! The product of double cosets.
//!
//! `g . h` is the class of `g Θ_m h`, with `Θ_m` acting at the middle level.
//! The representative is then brought to block form by source-index
//! permutations: rows of `g` stay first, the tail rows of `h` follow; the
//! first `alpha` columns stay, the tail columns of `g` follow, then those of
//! `h`. What is left over is an identity block and gets stripped.

use super::DoubleCoset;
use crate::error::{Error, Result};
use crate::groups::{GroupElement, PairDescriptor};
use crate::linalg::{Matrix, Scalar};

fn check_composable(g: &DoubleCoset, h: &DoubleCoset) -> Result<()> {
    if g.pair() != h.pair() {
        return Err(Error::PairMismatch("factors live on different pairs".into()));
    }
    if g.alpha() != h.beta() {
        return Err(Error::IndexMismatch(format!(
            "left factor starts at {:?}, right factor ends at {:?}",
            g.alpha(),
            h.beta()
        )));
    }
    Ok(())
}

/// Embedded source-index permutations, truncated to `rounds` rounds.
fn embedded_perms(pair: &PairDescriptor, perms: &[Vec<usize>], rounds: usize) -> Result<Vec<Matrix>> {
    let ops = pair
        .l()
        .factors()
        .iter()
        .zip(perms)
        .map(|(&k, p)| crate::groups::FiniteSupportOperator::unchecked(k, Matrix::permutation(k.field(), p)))
        .collect::<Result<Vec<_>>>()?;
    pair.embed_l(&GroupElement::new(ops)?, rounds)
}

fn theta_product(g: &DoubleCoset, h: &DoubleCoset, m: usize, rounds: usize) -> Result<Vec<Matrix>> {
    let pair = g.pair();
    let theta = pair.embed_l(&pair.theta_element(g.alpha(), m), rounds)?;
    let gt = g.truncated(rounds);
    let ht = h.truncated(rounds);
    gt.iter().zip(&theta).zip(&ht).map(|((a, t), b)| a.mul(t)?.mul(b)).collect()
}

fn rounds_for_theta(middle: &[usize], m: usize) -> usize {
    middle.iter().copied().max().unwrap_or(0) + 2 * m
}

/// `g Θ_m h` without normalization; `m` must be at least both round supports.
pub fn compose_raw(g: &DoubleCoset, h: &DoubleCoset, m: usize) -> Result<DoubleCoset> {
    check_composable(g, h)?;
    if m < g.rounds().max(h.rounds()) {
        return Err(Error::Shape(format!("m = {m} is below the supports")));
    }
    let z = theta_product(g, h, m, rounds_for_theta(g.alpha(), m))?;
    let rep = g.pair().element_from(z)?;
    Ok(DoubleCoset::trusted(g.pair().clone(), g.beta().to_vec(), h.alpha().to_vec(), rep))
}

/// The product computed as if `g` and `h` had round supports `s_g`, `s_h`.
///
/// The class does not depend on the choice; the representative does, which
/// is what componentwise comparisons and the commutativity conjugator use.
pub fn compose_with_support(g: &DoubleCoset, h: &DoubleCoset, s_g: usize, s_h: usize) -> Result<DoubleCoset> {
    check_composable(g, h)?;
    if s_g < g.rounds() || s_h < h.rounds() {
        return Err(Error::Shape(format!("supports ({s_g}, {s_h}) are below the actual ones")));
    }
    let pair = g.pair();
    let m = s_g.max(s_h);
    let total = rounds_for_theta(g.alpha(), m);
    let z = theta_product(g, h, m, total)?;

    let mut row_perms = Vec::new();
    let mut col_perms = Vec::new();
    for j in 0..pair.level_arity() {
        let (b, a) = (g.alpha()[j], h.alpha()[j]);
        let theta = |k: usize| {
            if k >= b && k < b + m {
                k + m
            } else if k >= b + m && k < b + 2 * m {
                k - m
            } else {
                k
            }
        };
        let mut rows: Vec<Option<usize>> = vec![None; total];
        for (r, slot) in rows.iter_mut().enumerate() {
            if r < s_g {
                *slot = Some(r);
            } else if r >= b + m && r < s_h + m {
                *slot = Some(r - m - b + s_g);
            }
        }
        let mut cols: Vec<Option<usize>> = vec![None; total];
        for (c, slot) in cols.iter_mut().enumerate() {
            if c < a {
                *slot = Some(c);
            } else if c < s_h {
                *slot = Some(c + s_g - b);
            } else if c >= b + m && c < s_g + m {
                *slot = Some(c - m - b + a);
            }
        }
        // Leftover rows are unit rows hitting column θ(r); pair them up so the
        // leftover block becomes the identity.
        let mut next = s_g + s_h - b;
        for r in 0..total {
            if rows[r].is_none() {
                rows[r] = Some(next);
                debug_assert!(cols[theta(r)].is_none());
                cols[theta(r)] = Some(next);
                next += 1;
            }
        }
        row_perms.push(rows.into_iter().map(|x| x.expect("assigned")).collect::<Vec<_>>());
        col_perms.push(cols.into_iter().map(|x| x.expect("assigned")).collect::<Vec<_>>());
    }
    let p = embedded_perms(pair, &row_perms, total)?;
    let q = embedded_perms(pair, &col_perms, total)?;
    let normalized = z
        .iter()
        .zip(&p)
        .zip(&q)
        .map(|((z, p), q)| p.mul(z)?.mul(&q.transpose()))
        .collect::<Result<Vec<_>>>()?;
    let rep = pair.element_from(normalized)?;
    Ok(DoubleCoset::trusted(pair.clone(), g.beta().to_vec(), h.alpha().to_vec(), rep))
}

fn classical_only(pair: &PairDescriptor) -> Result<()> {
    let lay = pair.layouts();
    if lay.len() != 1 || lay[0].head != 0 || lay[0].lanes.len() != 1 || lay[0].width != 1 {
        return Err(Error::Unsupported("block formula needs a single factor with a single slot".into()));
    }
    Ok(())
}

/// `[[AP, B, AQ], [CP, D, CQ], [R, 0, T]]` assembled directly from the blocks
/// of `g = [[A, B], [C, D]]` and `h = [[P, Q], [R, T]]`.
pub fn block_product(g: &DoubleCoset, h: &DoubleCoset) -> Result<DoubleCoset> {
    block_product_with_support(g, h, g.rounds(), h.rounds())
}

pub fn block_product_with_support(g: &DoubleCoset, h: &DoubleCoset, s_g: usize, s_h: usize) -> Result<DoubleCoset> {
    check_composable(g, h)?;
    classical_only(g.pair())?;
    let (c, b, a) = (g.beta()[0], g.alpha()[0], h.alpha()[0]);
    let gm = g.rep().factor(0).padded(s_g);
    let hm = h.rep().factor(0).padded(s_h);
    let (ga, gb) = (gm.block(0, 0, c, b), gm.block(0, b, c, s_g - b));
    let (gc, gd) = (gm.block(c, 0, s_g - c, b), gm.block(c, b, s_g - c, s_g - b));
    let (hp, hq) = (hm.block(0, 0, b, a), hm.block(0, a, b, s_h - a));
    let (hr, ht) = (hm.block(b, 0, s_h - b, a), hm.block(b, a, s_h - b, s_h - a));

    let n = s_g + s_h - b;
    let field = gm.field();
    let mut out = Matrix::zeros(field, n, n);
    let mut put = |r0: usize, c0: usize, blk: &Matrix| {
        for i in 0..blk.rows() {
            for j in 0..blk.cols() {
                out.set(r0 + i, c0 + j, blk.get(i, j).clone());
            }
        }
    };
    let (c1, c2) = (a, a + s_g - b);
    put(0, 0, &ga.mul(&hp)?);
    put(0, c1, &gb);
    put(0, c2, &ga.mul(&hq)?);
    put(c, 0, &gc.mul(&hp)?);
    put(c, c1, &gd);
    put(c, c2, &gc.mul(&hq)?);
    put(s_g, 0, &hr);
    put(s_g, c2, &ht);
    let rep = g.pair().element_from(vec![out])?;
    Ok(DoubleCoset::trusted(g.pair().clone(), g.beta().to_vec(), h.alpha().to_vec(), rep))
}

/// The product on the `U / O x O` pair via the six-block interleaving pattern.
///
/// Both factors are rewritten with each orthogonal factor's coordinates
/// contiguous, `g` is padded with identity blocks in third and sixth
/// position, `g'` in second and fifth, the two are multiplied, and the result
/// is interleaved back.
pub fn compose_u2_interleaved(g: &DoubleCoset, gp: &DoubleCoset) -> Result<DoubleCoset> {
    check_composable(g, gp)?;
    let pair = g.pair();
    if *pair != PairDescriptor::unitary_two_orthogonal() {
        return Err(Error::PairMismatch("expected the U / O x O pair".into()));
    }
    let (s_g, s_h) = (g.rounds(), gp.rounds());
    let gm = g.rep().factor(0).padded(2 * s_g);
    let hm = gp.rep().factor(0).padded(2 * s_h);
    let field = gm.field();
    let beta = g.alpha();
    let alpha = gp.alpha();
    let sizes: Vec<usize> = (0..2).map(|j| s_g + s_h - beta[j]).collect();
    let off = [0, sizes[0]];
    let total = sizes[0] + sizes[1];

    // Left factor: g's own coordinates, then an identity block per factor.
    let mut left = Matrix::identity(field, total);
    for i in 0..2 {
        for j in 0..2 {
            for r in 0..s_g {
                for c in 0..s_g {
                    left.set(off[i] + r, off[j] + c, gm.get(2 * r + i, 2 * c + j).clone());
                }
            }
        }
    }
    // Right factor: an identity block joins rows after the first beta and
    // columns after the first alpha of each factor.
    let row_pos = |j: usize, r: usize| if r < beta[j] { r } else { r + s_g - beta[j] };
    let col_pos = |j: usize, c: usize| if c < alpha[j] { c } else { c + s_g - beta[j] };
    let mut right = Matrix::zeros(field, total, total);
    for i in 0..2 {
        for k in 0..s_g - beta[i] {
            right.set(off[i] + beta[i] + k, off[i] + alpha[i] + k, Scalar::one(field));
        }
    }
    for i in 0..2 {
        for r in 0..s_h {
            for j in 0..2 {
                for c in 0..s_h {
                    right.set(off[i] + row_pos(i, r), off[j] + col_pos(j, c), hm.get(2 * r + i, 2 * c + j).clone());
                }
            }
        }
    }
    let prod = left.mul(&right)?;

    let rounds = sizes[0].max(sizes[1]);
    let mut out = Matrix::identity(field, 2 * rounds);
    for i in 0..2 {
        for j in 0..2 {
            for r in 0..sizes[i] {
                for c in 0..sizes[j] {
                    out.set(2 * r + i, 2 * c + j, prod.get(off[i] + r, off[j] + c).clone());
                }
            }
        }
    }
    let rep = pair.element_from(vec![out])?;
    Ok(DoubleCoset::trusted(pair.clone(), g.beta().to_vec(), gp.alpha().to_vec(), rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::sample::{gl_sample, rng_for};
    use crate::groups::{GroupKind, PairDescriptor};
    use crate::train::coset_compose;

    fn random_coset(seed: u64, level: usize, support: usize) -> DoubleCoset {
        let mut rng = rng_for(seed, 0);
        let op = gl_sample(GroupKind::GlR, support, &mut rng);
        DoubleCoset::new(
            PairDescriptor::classical(GroupKind::GlR),
            vec![level],
            vec![level],
            GroupElement::single(op),
        )
        .unwrap()
    }

    #[test]
    fn theta_route_matches_block_formula() {
        for seed in 0..30 {
            let level = (seed % 3) as usize;
            let g = random_coset(seed, level, 1 + (seed % 3) as usize);
            let h = random_coset(seed + 1000, level, 1 + ((seed / 3) % 3) as usize);
            assert_eq!(coset_compose(&g, &h).unwrap(), block_product(&g, &h).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn mixed_levels_match_block_formula() {
        let pair = PairDescriptor::classical(GroupKind::GlR);
        let mut rng = rng_for(4, 4);
        let g = DoubleCoset::new(pair.clone(), vec![1], vec![2], GroupElement::single(gl_sample(GroupKind::GlR, 3, &mut rng)))
            .unwrap();
        let h = DoubleCoset::new(pair, vec![2], vec![0], GroupElement::single(gl_sample(GroupKind::GlR, 2, &mut rng)))
            .unwrap();
        assert_eq!(coset_compose(&g, &h).unwrap(), block_product(&g, &h).unwrap());
    }

    #[test]
    fn raw_product_has_expected_size() {
        let g = random_coset(1, 1, 2);
        let h = random_coset(2, 1, 2);
        let z = compose_raw(&g, &h, 3).unwrap();
        assert!(z.rep().support() <= 1 + 6);
        assert!(compose_raw(&g, &h, 1).is_err());
    }
}
