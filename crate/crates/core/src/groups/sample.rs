//! Seeded exact samplers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FiniteSupportOperator, GroupKind};
use crate::linalg::{Field, Matrix, Scalar};

/// Mixes a base seed with an index (splitmix64 finalizer).
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, index))
}

fn small_ratio(rng: &mut impl Rng, field: Field) -> Scalar {
    Scalar::from_ratio(field, rng.random_range(-2..=2), rng.random_range(1..=3))
}

/// Skew-symmetric (Q) or skew-Hermitian (Q(i)) matrix with entries `p/q`,
/// `p` in `-2..=2`, `q` in `1..=3`.
pub fn random_skew(field: Field, n: usize, rng: &mut impl Rng) -> Matrix {
    let mut s = Matrix::zeros(field, n, n);
    for i in 0..n {
        if field == Field::GaussRat {
            let b = small_ratio(rng, Field::Rat).re();
            s.set(i, i, Scalar::gauss(Scalar::zero(Field::Rat).re(), b));
        }
        for j in i + 1..n {
            let v = match field {
                Field::Rat => small_ratio(rng, field),
                Field::GaussRat => {
                    Scalar::gauss(small_ratio(rng, Field::Rat).re(), small_ratio(rng, Field::Rat).re())
                }
            };
            s.set(j, i, -v.conj());
            s.set(i, j, v);
        }
    }
    s
}

/// `(1 - S)(1 + S)^{-1}`, or `None` when `1 + S` is singular.
pub fn cayley_transform(s: &Matrix) -> Option<Matrix> {
    let id = Matrix::identity(s.field(), s.rows());
    let plus = id.add(s).ok()?.inverse().ok()?;
    id.sub(s).ok()?.mul(&plus).ok()
}

/// Exactly orthogonal (Q) or unitary (Q(i)) element of support exactly `n`:
/// a Cayley transform, with its last column negated on a fair coin.
pub fn cayley_sample(field: Field, n: usize, seed: u64) -> FiniteSupportOperator {
    let group = if field == Field::Rat { GroupKind::O } else { GroupKind::U };
    let mut nonce = 0u64;
    loop {
        let mut rng = rng_for(seed, nonce);
        nonce += 1;
        let Some(mut q) = cayley_transform(&random_skew(field, n, &mut rng)) else { continue };
        // Cayley images have determinant 1 over Q; a coin flip reaches the other component.
        if n > 0 && rng.random::<bool>() {
            for r in 0..n {
                let v = -q.get(r, n - 1).clone();
                q.set(r, n - 1, v);
            }
        }
        let op = FiniteSupportOperator::unchecked(group, q).expect("square core");
        if op.support() == n {
            return op;
        }
    }
}

/// Invertible element of `kind` whose core is an `n x n` matrix.
///
/// GL kinds get independent entries in `-2..=2` (real and imaginary parts for
/// GL_C), resampled while singular; heavy kinds get a Cayley sample.
pub fn gl_sample(kind: GroupKind, n: usize, rng: &mut impl Rng) -> FiniteSupportOperator {
    match kind {
        GroupKind::O | GroupKind::U => cayley_sample(kind.field(), n, rng.random()),
        GroupKind::GlR | GroupKind::GlC => loop {
            let m = Matrix::from_fn(kind.field(), n, n, |_, _| match kind.field() {
                Field::Rat => Scalar::from_int(Field::Rat, rng.random_range(-2..=2)),
                Field::GaussRat => Scalar::gauss_int(rng.random_range(-2..=2), rng.random_range(-2..=2)),
            });
            if let Ok(op) = FiniteSupportOperator::new(kind, m) {
                return op;
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_skew_gives_identity() {
        let q = cayley_transform(&Matrix::zeros(Field::Rat, 3, 3)).unwrap();
        assert!(q.is_identity());
    }

    #[test]
    fn two_by_two_rotation() {
        // S = [[0,1],[-1,0]]: (1-S)(1+S)^{-1} = [[0,-1],[1,0]]
        let s = Matrix::from_i64(&[&[0, 1], &[-1, 0]]);
        let q = cayley_transform(&s).unwrap();
        assert_eq!(q, Matrix::from_i64(&[&[0, -1], &[1, 0]]));
        assert!(q.transpose().mul(&q).unwrap().is_identity());
    }

    #[test]
    fn samples_are_members_with_full_support() {
        for seed in 0..20 {
            for n in 1..=4 {
                let o = cayley_sample(Field::Rat, n, seed);
                assert!(o.is_member() && o.support() == n && o.group() == GroupKind::O);
                let u = cayley_sample(Field::GaussRat, n, seed);
                assert!(u.is_member() && u.support() == n && u.group() == GroupKind::U);
            }
        }
        assert_eq!(cayley_sample(Field::Rat, 3, 9), cayley_sample(Field::Rat, 3, 9));
    }

    #[test]
    fn derived_seeds_differ() {
        assert_ne!(derive_seed(1, 0), derive_seed(1, 1));
        assert_ne!(derive_seed(1, 0), derive_seed(2, 0));
    }
}
