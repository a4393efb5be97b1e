//! Seeded verification suites, one per algebraic law, with parallel trials
//! and counterexample shrinking.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groups::sample::{derive_seed, rng_for};
use crate::groups::{cayley_sample, FiniteSupportOperator, GroupElement, GroupKind, PairDescriptor};
use crate::linalg::{Field, Matrix, Scalar};
use crate::relations::char_multiplicativity_check;
use crate::repharness::{
    spherical_character_check, spherical_phi, theta_weak_limit_check, verify_repcat, SphericalParams, TensorRep,
};
use crate::train::{
    block_product, center_witness, char_dims_ok, coset_compose, coset_eq, coset_invariants, commutativity_witness,
    group_to_mantle, involution, mantle_compose, psi, theta_conjugate, unit_lambda, unit_mu, DoubleCoset, Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Compose,
    Associativity,
    RepresentativeIndependence,
    ChiMultiplicativity,
    Commutativity,
    Centrality,
    OrderedCategory,
    Mantle,
    Repcat,
    ThetaLimit,
    Spherical,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Compose,
        Suite::Associativity,
        Suite::RepresentativeIndependence,
        Suite::ChiMultiplicativity,
        Suite::Commutativity,
        Suite::Centrality,
        Suite::OrderedCategory,
        Suite::Mantle,
        Suite::Repcat,
        Suite::ThetaLimit,
        Suite::Spherical,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Compose => "compose",
            Suite::Associativity => "associativity",
            Suite::RepresentativeIndependence => "representative_independence",
            Suite::ChiMultiplicativity => "chi_multiplicativity",
            Suite::Commutativity => "commutativity",
            Suite::Centrality => "centrality",
            Suite::OrderedCategory => "ordered_category",
            Suite::Mantle => "mantle",
            Suite::Repcat => "repcat",
            Suite::ThetaLimit => "theta_limit",
            Suite::Spherical => "spherical",
        }
    }

    /// The statement a suite exercises.
    pub fn checks(self) -> &'static str {
        match self {
            Suite::Compose => {
                "product of double cosets: g Θ_m h, normalized, equals the block product [[AP,B,AQ],[CP,D,CQ],[R,0,T]]"
            }
            Suite::Associativity => "the product of double cosets is associative: (f.g).h and f.(g.h) share all invariants",
            Suite::RepresentativeIndependence => {
                "the product is well defined on double cosets: changing representatives by level subgroup elements keeps every invariant"
            }
            Suite::ChiMultiplicativity => {
                "the characteristic function is multiplicative, chi(g.h) = chi(g) chi(h), with half-dimensional values"
            }
            Suite::Commutativity => "for a pure pair the semigroup at level zero is commutative, via an explicit block-swap conjugator",
            Suite::Centrality => {
                "the image of G^alpha is central: g and Θ_m h Θ_m commute for large m, and the cosets commute by witness"
            }
            Suite::OrderedCategory => {
                "ordered category identities: mu.lambda = 1, lambda.lambda = lambda, mu.mu = mu, psi idempotent and self-adjoint"
            }
            Suite::Mantle => "the group embeds into the mantle: the embedding is multiplicative and injective",
            Suite::Repcat => "the compressed operators form a representation of the train: rho_bar(g) rho_bar(h) = rho_bar(g.h)",
            Suite::ThetaLimit => "the compressions of rho(Θ_m) to the fixed space stabilize at the identity",
            Suite::Spherical => {
                "closed-form spherical functions: Phi(1) = 1, bi-invariance, and multiplicativity on disjoint supports"
            }
        }
    }

    pub fn default_trials(self) -> usize {
        match self {
            Suite::Compose => 200,
            Suite::RepresentativeIndependence | Suite::ChiMultiplicativity => 100,
            Suite::OrderedCategory => ordered_triples().len(),
            Suite::Repcat => 20,
            Suite::ThetaLimit => 2,
            Suite::Spherical => 20,
            _ => 50,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub trials: usize,
    pub seed: u64,
    /// Largest core size of sampled elements.
    pub max_support: usize,
    /// Largest absolute value of sampled integer entries.
    pub max_height: i64,
    pub n: Option<usize>,
    pub d: Option<usize>,
}

pub const MAX_SUPPORT_CAP: usize = 6;
pub const MAX_HEIGHT_CAP: i64 = 10;
pub const MAX_N_CAP: usize = 16;
pub const MAX_D_CAP: usize = 2;

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            trials: suite.default_trials(),
            seed: 0,
            max_support: if suite == Suite::Mantle { 4 } else { 3 },
            max_height: 2,
            n: None,
            d: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Parse(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if !(1..=MAX_SUPPORT_CAP).contains(&self.max_support) {
            return bad(format!("max support must be in 1..={MAX_SUPPORT_CAP}"));
        }
        if !(1..=MAX_HEIGHT_CAP).contains(&self.max_height) {
            return bad(format!("max height must be in 1..={MAX_HEIGHT_CAP}"));
        }
        if self.n.is_some_and(|n| n == 0 || n > MAX_N_CAP) {
            return bad(format!("n must be in 1..={MAX_N_CAP}"));
        }
        if self.d.is_some_and(|d| d == 0 || d > MAX_D_CAP) {
            return bad(format!("d must be in 1..={MAX_D_CAP}"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Size {
    pub support: usize,
    pub height: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub index: usize,
    pub seed: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub seed: u64,
    pub size: Size,
    pub detail: String,
    pub case: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: usize,
    pub pass: bool,
    pub results: Vec<TrialReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

struct Outcome {
    pass: bool,
    detail: String,
    case: Value,
}

/// Runs every trial (in parallel, reported in index order) and shrinks the
/// first failure: support size first, then entry height.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let size = Size { support: cfg.max_support, height: cfg.max_height };
    let outcomes: Vec<(u64, Outcome)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let seed = derive_seed(cfg.seed, i as u64);
            (seed, trial(cfg, i, seed, size))
        })
        .collect();
    let results: Vec<TrialReport> = outcomes
        .iter()
        .enumerate()
        .map(|(index, (seed, o))| TrialReport {
            index,
            seed: *seed,
            pass: o.pass,
            detail: (!o.detail.is_empty()).then(|| o.detail.clone()),
        })
        .collect();
    let passed = results.iter().filter(|r| r.pass).count();
    let counterexample = results.iter().find(|r| !r.pass).map(|r| shrink(cfg, r.index, r.seed, size));
    Ok(SuiteReport {
        suite: cfg.suite,
        checks: cfg.suite.checks().to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        passed,
        pass: passed == cfg.trials,
        results,
        counterexample,
    })
}

fn shrink(cfg: &SuiteConfig, index: usize, seed: u64, size: Size) -> Counterexample {
    let mut best = size;
    let mut out = trial(cfg, index, seed, size);
    loop {
        let smaller = [
            (best.support > 1).then(|| Size { support: best.support - 1, ..best }),
            (best.height > 1).then(|| Size { height: best.height - 1, ..best }),
        ];
        let next = smaller.into_iter().flatten().find_map(|s| {
            let o = trial(cfg, index, seed, s);
            (!o.pass).then_some((s, o))
        });
        match next {
            Some((s, o)) => {
                best = s;
                out = o;
            }
            None => break,
        }
    }
    Counterexample { index, seed, size: best, detail: out.detail, case: out.case }
}

fn trial(cfg: &SuiteConfig, index: usize, seed: u64, size: Size) -> Outcome {
    let mut rng = rng_for(seed, 0);
    let mut case = Value::Null;
    let r = match cfg.suite {
        Suite::Compose => compose(&mut rng, size, &mut case),
        Suite::Associativity => associativity(&mut rng, size, &mut case),
        Suite::RepresentativeIndependence => representative_independence(&mut rng, size, &mut case),
        Suite::ChiMultiplicativity => chi_multiplicativity(&mut rng, size, &mut case),
        Suite::Commutativity => commutativity(&mut rng, size, &mut case),
        Suite::Centrality => centrality(&mut rng, size, &mut case),
        Suite::OrderedCategory => ordered_category(index, &mut case),
        Suite::Mantle => mantle(&mut rng, size, &mut case),
        Suite::Repcat => repcat(&mut rng, size, cfg, &mut case),
        Suite::ThetaLimit => theta_limit(index, cfg, &mut case),
        Suite::Spherical => spherical(&mut rng, size, &mut case),
    };
    match r {
        Ok((pass, detail)) => Outcome { pass, detail, case },
        Err(e) => Outcome { pass: false, detail: format!("error: {e}"), case },
    }
}

type Check = Result<(bool, String)>;

fn to_case<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

/// Invertible integer matrix of size `n` with entries in `[-height, height]`.
pub fn sample_gl(rng: &mut ChaCha8Rng, n: usize, height: i64) -> FiniteSupportOperator {
    loop {
        let m = Matrix::from_fn(Field::Rat, n, n, |_, _| Scalar::from_int(Field::Rat, rng.random_range(-height..=height)));
        if let Ok(op) = FiniteSupportOperator::new(GroupKind::GlR, m) {
            return op;
        }
    }
}

fn sample_sized(rng: &mut ChaCha8Rng, size: Size) -> FiniteSupportOperator {
    let n = rng.random_range(1..=size.support);
    sample_gl(rng, n, size.height)
}

fn sample_coset(rng: &mut ChaCha8Rng, beta: usize, alpha: usize, size: Size) -> Result<DoubleCoset> {
    let s = rng.random_range(1..=size.support);
    let op = sample_gl(rng, s, size.height);
    DoubleCoset::classical(GroupKind::GlR, beta, alpha, op.core().clone())
}

/// An element of `K^level` on the classical GL_R pair: `1_level` plus a Cayley sample.
fn sample_k(rng: &mut ChaCha8Rng, level: usize, size: Size) -> Result<GroupElement> {
    let k = rng.random_range(1..=size.support);
    let q = cayley_sample(Field::Rat, k, rng.random());
    let core = Matrix::identity(Field::Rat, level).direct_sum(q.core())?;
    let pair = PairDescriptor::classical(GroupKind::GlR);
    pair.embed_l_element(&GroupElement::single(FiniteSupportOperator::new(GroupKind::O, core)?))
}

fn levels(rng: &mut ChaCha8Rng, count: usize, top: usize) -> Vec<usize> {
    (0..count).map(|_| rng.random_range(0..=top)).collect()
}

fn compose(rng: &mut ChaCha8Rng, size: Size, case: &mut Value) -> Check {
    let a = rng.random_range(0..=2);
    let (g, h) = (sample_coset(rng, a, a, size)?, sample_coset(rng, a, a, size)?);
    *case = json!({ "g": to_case(&g), "h": to_case(&h) });
    let (theta_route, blocks) = (coset_compose(&g, &h)?, block_product(&g, &h)?);
    Ok((theta_route.rep() == blocks.rep(), format!("level {a}")))
}

fn associativity(rng: &mut ChaCha8Rng, size: Size, case: &mut Value) -> Check {
    let l = levels(rng, 4, 2);
    let f = sample_coset(rng, l[3], l[2], size)?;
    let g = sample_coset(rng, l[2], l[1], size)?;
    let h = sample_coset(rng, l[1], l[0], size)?;
    *case = json!({ "f": to_case(&f), "g": to_case(&g), "h": to_case(&h) });
    let left = coset_compose(&coset_compose(&f, &g)?, &h)?;
    let right = coset_compose(&f, &coset_compose(&g, &h)?)?;
    Ok((coset_invariants(&left)? == coset_invariants(&right)?, format!("levels {l:?}")))
}

fn representative_independence(rng: &mut ChaCha8Rng, size: Size, case: &mut Value) -> Check {
    let l = levels(rng, 3, 2);
    let (alpha, beta, gamma) = (l[0], l[1], l[2]);
    let g = sample_coset(rng, gamma, beta, size)?;
    let h = sample_coset(rng, beta, alpha, size)?;
    let (u, v, w) = (sample_k(rng, beta, size)?, sample_k(rng, alpha, size)?, sample_k(rng, gamma, size)?);
    *case = json!({ "g": to_case(&g), "h": to_case(&h), "u": to_case(&u), "v": to_case(&v), "w": to_case(&w) });
    let pair = g.pair().clone();
    let re = |beta: usize, alpha: usize, rep: GroupElement| DoubleCoset::new(pair.clone(), vec![beta], vec![alpha], rep);
    let base = coset_invariants(&coset_compose(&g, &h)?)?;
    let variants = [
        coset_compose(&re(gamma, beta, g.rep().mul(&u)?)?, &h)?,
        coset_compose(&g, &re(beta, alpha, u.mul(h.rep())?)?)?,
        coset_compose(&re(gamma, beta, w.mul(g.rep())?)?, &re(beta, alpha, h.rep().mul(&v)?)?)?,
    ];
    for (k, c) in variants.iter().enumerate() {
        if coset_invariants(c)? != base {
            return Ok((false, format!("variant {k} changed the invariants at levels {l:?}")));
        }
    }
    Ok((true, format!("levels {l:?}")))
}

fn chi_multiplicativity(rng: &mut ChaCha8Rng, size: Size, case: &mut Value) -> Check {
    let l = levels(rng, 3, 2);
    let g = sample_coset(rng, l[2], l[1], size)?;
    let h = sample_coset(rng, l[1], l[0], size)?;
    *case = json!({ "g": to_case(&g), "h": to_case(&h) });
    let gh = coset_compose(&g, &h)?;
    for c in [&g, &h, &gh] {
        if !char_dims_ok(c)? {
            return Ok((false, format!("a value of chi is not half-dimensional at levels {l:?}")));
        }
    }
    let lambdas = crate::train::lambda_samples();
    Ok((char_multiplicativity_check(&g, &h, &lambdas)?, format!("levels {l:?}")))
}

fn commutativity(rng: &mut ChaCha8Rng, size: Size, case: &mut Value) -> Check {
    let (g, h) = (sample_coset(rng, 0, 0, size)?, sample_coset(rng, 0, 0, size)?);
    let pair = PairDescriptor::diagonal(vec![GroupKind::GlR, GroupKind::GlR])?;
    let mut diag = || -> Result<DoubleCoset> {
        let (s1, s2) = (rng.random_range(1..=size.support), rng.random_range(1..=size.support));
        let rep = GroupElement::new(vec![sample_gl(rng, s1, size.height), sample_gl(rng, s2, size.height)])?;
        DoubleCoset::new(pair.clone(), vec![0], vec![0], rep)
    };
    let (dg, dh) = (diag()?, diag()?);
    *case = json!({ "classical": [to_case(&g), to_case(&h)], "diagonal": [to_case(&dg), to_case(&dh)] });
    let j1 = commutativity_witness(&g, &h)?;
    let j2 = commutativity_witness(&dg, &dh)?;
    Ok((true, format!("conjugators of support {} and {}", j1.support(), j2.support())))
}

fn centrality(rng: &mut ChaCha8Rng, size: Size, case: &mut Value) -> Check {
    let alpha = rng.random_range(0..=2);
    let pair = PairDescriptor::classical(GroupKind::GlR);
    let g = GroupElement::single(sample_sized(rng, size));
    let tail = sample_sized(rng, size);
    let h = GroupElement::single(FiniteSupportOperator::new(
        GroupKind::GlR,
        Matrix::identity(Field::Rat, alpha).direct_sum(tail.core())?,
    )?);
    *case = json!({ "alpha": alpha, "g": to_case(&g), "h": to_case(&h) });
    let m = center_witness(&pair, &g, &h, &[alpha])?;
    let bound = g.support().max(h.support()).max(1);
    let moved = theta_conjugate(&pair, &h, &[alpha], m)?;
    if m > bound || g.mul(&moved)? != moved.mul(&g)? {
        return Ok((false, format!("m = {m} exceeds {bound} or fails the identity")));
    }
    let cg = DoubleCoset::new(pair.clone(), vec![alpha], vec![alpha], g)?;
    let ch = DoubleCoset::new(pair, vec![alpha], vec![alpha], h)?;
    let verdict = coset_eq(&coset_compose(&cg, &ch)?, &coset_compose(&ch, &cg)?)?;
    Ok((verdict.has_witness(), format!("m = {m}, verdict {}", verdict_name(&verdict))))
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::Distinct => "distinct",
        Verdict::EqualByInvariants => "equal_by_invariants",
        Verdict::EqualByWitness(_) => "equal_by_witness",
    }
}

/// All `(alpha, beta, gamma)` with `alpha <= beta <= gamma <= 3`.
pub fn ordered_triples() -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for a in 0..=3 {
        for b in a..=3 {
            for c in b..=3 {
                v.push((a, b, c));
            }
        }
    }
    v
}

fn ordered_category(index: usize, case: &mut Value) -> Check {
    let triples = ordered_triples();
    let (a, b, c) = triples[index % triples.len()];
    *case = json!({ "alpha": a, "beta": b, "gamma": c });
    let pair = PairDescriptor::classical(GroupKind::GlR);
    let (a1, b1, c1) = ([a], [b], [c]);
    let p = psi(&pair, &a1, &b1)?;
    let checks = [
        ("mu.lambda = 1", coset_compose(&unit_mu(&pair, &b1, &a1)?, &unit_lambda(&pair, &a1, &b1)?)?, DoubleCoset::unit(&pair, vec![a])?),
        (
            "lambda.lambda = lambda",
            coset_compose(&unit_lambda(&pair, &b1, &c1)?, &unit_lambda(&pair, &a1, &b1)?)?,
            unit_lambda(&pair, &a1, &c1)?,
        ),
        ("mu.mu = mu", coset_compose(&unit_mu(&pair, &b1, &a1)?, &unit_mu(&pair, &c1, &b1)?)?, unit_mu(&pair, &c1, &a1)?),
        ("psi.psi = psi", coset_compose(&p, &p)?, p.clone()),
        ("psi* = psi", involution(&p)?, p.clone()),
    ];
    for (name, lhs, rhs) in &checks {
        let v = coset_eq(lhs, rhs)?;
        if !v.has_witness() {
            return Ok((false, format!("{name} at ({a}, {b}, {c}): {}", verdict_name(&v))));
        }
    }
    Ok((true, format!("({a}, {b}, {c})")))
}

fn mantle(rng: &mut ChaCha8Rng, size: Size, case: &mut Value) -> Check {
    let g = sample_sized(rng, size);
    let h = sample_sized(rng, size);
    *case = json!({ "g": to_case(&g), "h": to_case(&h) });
    let (mg, mh) = (group_to_mantle(&g)?, group_to_mantle(&h)?);
    let lhs = mantle_compose(&mg, &mh)?;
    let rhs = group_to_mantle(&g.mul(&h)?)?;
    let v = coset_eq(&lhs, &rhs)?;
    if !v.has_witness() {
        return Ok((false, format!("product: {}", verdict_name(&v))));
    }
    if g != h && coset_eq(&mg, &mh)? != Verdict::Distinct {
        return Ok((false, "distinct elements were identified".into()));
    }
    Ok((true, String::new()))
}

fn repcat(rng: &mut ChaCha8Rng, size: Size, cfg: &SuiteConfig, case: &mut Value) -> Check {
    let d = cfg.d.unwrap_or(2);
    let n = cfg.n.unwrap_or(10);
    let top = if d >= 2 { 1 } else { 2 };
    let l = levels(rng, 3, top);
    let g = sample_coset(rng, l[2], l[1], size)?;
    let h = sample_coset(rng, l[1], l[0], size)?;
    *case = json!({ "g": to_case(&g), "h": to_case(&h), "n": n, "d": d });
    let r = verify_repcat(&g, &h, TensorRep::new(n, d))?;
    Ok((r.pass, format!("levels {l:?}, exact at n = {n}: {}", r.finite_n_pass)))
}

fn theta_limit(index: usize, cfg: &SuiteConfig, case: &mut Value) -> Check {
    let (n, d) = (cfg.n.unwrap_or(12), cfg.d.unwrap_or(2));
    let alpha = index % 2;
    let top = ((n - alpha.min(n)) / 2).min(4);
    let ms: Vec<usize> = (1..=top).collect();
    *case = json!({ "n": n, "d": d, "alpha": alpha, "m": ms });
    let r = theta_weak_limit_check(TensorRep::new(n, d), alpha, &ms)?;
    Ok((r.pass, format!("alpha {alpha}, stabilized at {:?}", r.stabilized_at)))
}

fn spherical(rng: &mut ChaCha8Rng, size: Size, case: &mut Value) -> Check {
    let k = rng.random_range(0..=3);
    let s: Vec<f64> = (0..k).map(|_| rng.random_range(-2.0..=2.0)).collect();
    let params = SphericalParams::new(s, rng.random_range(-1.0..=1.0), rng.random_range(0..=1))?;
    let g = sample_sized(rng, size);
    let h = sample_sized(rng, size);
    let (u, v) = (cayley_sample(Field::Rat, size.support, rng.random()), cayley_sample(Field::Rat, size.support, rng.random()));
    *case = json!({ "params": to_case(&params), "g": to_case(&g), "h": to_case(&h) });

    let one = spherical_phi(&params, &FiniteSupportOperator::identity(GroupKind::GlR))?;
    if one.re != 1.0 || one.im != 0.0 {
        return Ok((false, format!("Phi(1) = {one}")));
    }
    let base = SphericalParams::new(vec![0.0], 0.0, 0)?;
    let two = spherical_phi(&base, &FiniteSupportOperator::new(GroupKind::GlR, Matrix::from_i64(&[&[2]]))?)?;
    if (two.re - 2.0 / 5f64.sqrt()).abs() >= 1e-9 || two.im.abs() >= 1e-9 {
        return Ok((false, format!("Phi(diag 2) = {two}")));
    }
    let (u, v) = (u.regard_as(GroupKind::GlR)?, v.regard_as(GroupKind::GlR)?);
    let moved = u.mul(&g)?.mul(&v)?;
    // Reflections flip sgn(det), so the sign character picks up det(u) det(v).
    let flip = u.core().determinant()? != v.core().determinant()?;
    let expected = spherical_phi(&params, &g)? * if flip && params.sigma == 1 { -1.0 } else { 1.0 };
    if (spherical_phi(&params, &moved)? - expected).norm() >= 1e-9 {
        return Ok((false, "sign-covariance under O x O fails".into()));
    }
    Ok((spherical_character_check(&params, &g, &h, 1e-10)?, String::new()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert_eq!(serde_json::to_value(s).unwrap(), Value::String(s.name().into()));
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn config_bounds() {
        let mut c = SuiteConfig::new(Suite::Compose);
        assert!(c.validate().is_ok());
        c.trials = 0;
        assert!(c.validate().is_err());
        let mut c = SuiteConfig::new(Suite::Repcat);
        c.d = Some(3);
        assert!(c.validate().is_err());
    }

    #[test]
    fn small_runs_pass_and_are_deterministic() {
        for s in Suite::ALL {
            let mut c = SuiteConfig::new(s);
            c.trials = 2;
            c.seed = 5;
            let a = run_suite(&c).unwrap();
            assert!(a.pass, "{s}: {:?}", a.results);
            let b = run_suite(&c).unwrap();
            assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        }
    }
}
