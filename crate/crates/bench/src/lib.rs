//! Fixtures shared by the benchmarks in `benches/`.

use trains::groups::sample::rng_for;
use trains::groups::GroupKind;
use trains::suites::sample_gl;
use trains::train::DoubleCoset;

/// A seeded classical coset with integer entries in `-2..=2`.
pub fn coset(seed: u64, level: usize, support: usize) -> DoubleCoset {
    let op = sample_gl(&mut rng_for(seed, 0), support, 2);
    DoubleCoset::classical(GroupKind::GlR, level, level, op.core().clone()).expect("valid coset")
}
