//! Tensor powers of the natural representation of `O(n)`, their fixed
//! subspaces, the compressed operators `P ρ(g)` and the checks built on them.
//!
//! Everything here is exact except [`spherical`], which works in `f64`.

pub mod spherical;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{theta, FiniteSupportOperator, GroupKind, PairDescriptor};
use crate::linalg::{EchelonBuilder, Field, Matrix, Scalar, Subspace};
use crate::train::{coset_compose, DoubleCoset};

pub use spherical::{spherical_character_check, spherical_phi, SphericalParams};

/// `V^{⊗d}` for `V = Q^n`; basis tuples are read with the first position most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct TensorRep {
    pub n: usize,
    pub d: usize,
}

impl TensorRep {
    pub fn new(n: usize, d: usize) -> Self {
        TensorRep { n, d }
    }

    pub fn total_dim(&self) -> usize {
        self.n.pow(self.d as u32)
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &i| acc * self.n + i)
    }

    pub fn tuple(&self, mut x: usize) -> Vec<usize> {
        let mut t = vec![0; self.d];
        for p in (0..self.d).rev() {
            t[p] = x % self.n;
            x /= self.n;
        }
        t
    }

    fn stride(&self, position: usize) -> usize {
        self.n.pow((self.d - 1 - position) as u32)
    }
}

#[derive(Debug, Clone)]
pub struct FixedData {
    pub rep: TensorRep,
    pub alpha: usize,
    pub subspace: Subspace,
    /// Orthogonal projection onto `subspace`.
    pub projector: Matrix,
    // (B B^T)^{-1} B: coordinates of the projection in the basis rows.
    coords: Matrix,
}

impl FixedData {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Basis coordinates of the orthogonal projection of `w`.
    pub fn coordinates_of(&self, w: &[Scalar]) -> Vec<Scalar> {
        self.coords.mul_vec(w).expect("ambient length")
    }
}

fn q(v: i64) -> Scalar {
    Scalar::from_int(Field::Rat, v)
}

/// Vectors of `V^{⊗d}` fixed by the copy of `O(n - alpha)` on the last coordinates.
pub fn fixed_subspace(rep: TensorRep, alpha: usize) -> Result<FixedData> {
    if alpha > rep.n {
        return Err(Error::IndexOutOfRange { index: alpha, dim: rep.n });
    }
    let total = rep.total_dim();
    let mut eqs = EchelonBuilder::new(Field::Rat, total);
    if rep.n > alpha {
        // diag(1, ..., 1, -1): tensors with an odd count of the last index vanish.
        let last = rep.n - 1;
        for x in 0..total {
            if rep.tuple(x).iter().filter(|&&i| i == last).count() % 2 == 1 {
                let mut row = vec![q(0); total];
                row[x] = q(1);
                eqs.insert(row);
            }
        }
    }
    for i in alpha..rep.n {
        for j in i + 1..rep.n {
            // E_ij - E_ji sends e_j to e_i and e_i to -e_j, in every position.
            for y in 0..total {
                let t = rep.tuple(y);
                let mut row: Option<Vec<Scalar>> = None;
                for (p, &yp) in t.iter().enumerate() {
                    let (to, sign) = match yp {
                        v if v == i => (j, 1),
                        v if v == j => (i, -1),
                        _ => continue,
                    };
                    let x = y - yp * rep.stride(p) + to * rep.stride(p);
                    let r = row.get_or_insert_with(|| vec![q(0); total]);
                    r[x] = &r[x] + &q(sign);
                }
                if let Some(r) = row.filter(|r| r.iter().any(|s| !s.is_zero())) {
                    eqs.insert(r);
                }
            }
        }
    }
    let subspace = eqs.solution_space();
    let (projector, coords) = projection_parts(&subspace)?;
    Ok(FixedData { rep, alpha, subspace, projector, coords })
}

fn projection_parts(s: &Subspace) -> Result<(Matrix, Matrix)> {
    let b = s.basis();
    if s.dim() == 0 {
        return Ok((Matrix::zeros(Field::Rat, s.ambient_dim(), s.ambient_dim()), b.clone()));
    }
    let gram = b.mul(&b.transpose())?;
    let coords = gram.inverse()?.mul(b)?;
    Ok((b.transpose().mul(&coords)?, coords))
}

type CacheKey = (usize, usize, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<FixedData>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<FixedData>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Memoized [`fixed_subspace`]; the data depend only on `(n, d, alpha)`.
pub fn fixed_subspace_cached(rep: TensorRep, alpha: usize) -> Result<Arc<FixedData>> {
    let key = (rep.n, rep.d, alpha);
    if let Some(f) = cache().lock().expect("cache lock").get(&key) {
        return Ok(f.clone());
    }
    let f = Arc::new(fixed_subspace(rep, alpha)?);
    cache().lock().expect("cache lock").insert(key, f.clone());
    Ok(f)
}

fn real_core(g: &FiniteSupportOperator, n: usize) -> Result<Matrix> {
    if g.core().field() != Field::Rat {
        return Err(Error::Field("tensor harness runs over the rationals".into()));
    }
    if g.support() > n {
        return Err(Error::Truncation { support: g.support(), n, min_n: g.support() });
    }
    Ok(g.padded(n))
}

/// The `n^d x n^d` matrix of `g^{⊗d}`.
pub fn rho(g: &FiniteSupportOperator, rep: TensorRep) -> Result<Matrix> {
    let m = real_core(g, rep.n)?;
    let mut out = Matrix::identity(Field::Rat, 1);
    for _ in 0..rep.d {
        out = out.kron(&m)?;
    }
    Ok(out)
}

/// `g^{⊗d} v` without forming the big matrix.
fn apply_rho(m: &Matrix, rep: TensorRep, v: &[Scalar]) -> Vec<Scalar> {
    let mut cur = v.to_vec();
    for p in 0..rep.d {
        let stride = rep.stride(p);
        let mut next = vec![q(0); cur.len()];
        for (x, val) in cur.iter().enumerate() {
            if val.is_zero() {
                continue;
            }
            let xp = (x / stride) % rep.n;
            let base = x - xp * stride;
            for yp in 0..rep.n {
                let c = m.get(yp, xp);
                if !c.is_zero() {
                    let y = base + yp * stride;
                    next[y] = &next[y] + &(c * val);
                }
            }
        }
        cur = next;
    }
    cur
}

fn rho_bar_with(m: &Matrix, from: &FixedData, to: &FixedData) -> Matrix {
    let rep = from.rep;
    let cols: Vec<Vec<Scalar>> =
        from.subspace.basis().row_vecs().iter().map(|b| to.coordinates_of(&apply_rho(m, rep, b))).collect();
    Matrix::from_fn(Field::Rat, to.dim(), from.dim(), |r, c| cols[c][r].clone())
}

/// `P^[beta] ρ(g)` restricted to `H^[alpha]`, in the canonical bases.
pub fn rho_bar(g: &FiniteSupportOperator, alpha: usize, beta: usize, rep: TensorRep) -> Result<Matrix> {
    let m = real_core(g, rep.n)?;
    let (from, to) = (fixed_subspace_cached(rep, alpha)?, fixed_subspace_cached(rep, beta)?);
    Ok(rho_bar_with(&m, &from, &to))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepcatReport {
    pub identity_checked: String,
    pub n: usize,
    pub d: usize,
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    /// The identity for the `n -> infinity` limits of the compressed operators.
    pub pass: bool,
    /// The same identity at the given `n` itself.
    pub finite_n_pass: bool,
    pub min_n: usize,
}

fn single_real(c: &DoubleCoset) -> Result<&FiniteSupportOperator> {
    if c.pair() != &PairDescriptor::classical(GroupKind::GlR) {
        return Err(Error::Unsupported("tensor harness covers the (GL_R, O) pair only".into()));
    }
    Ok(c.rep().factor(0))
}

/// Exact `lim_{n -> inf}` of a matrix whose entries are `a + b / (n - t)`,
/// from its values at `n, n+1`; the value at `n+2` confirms the form.
fn limit_of(vals: &[Matrix; 3], n: usize, t: usize) -> Option<Matrix> {
    let inv = |k: usize| BigRational::new(1.into(), ((n + k - t) as i64).into());
    let (u0, u1, u2) = (inv(0), inv(1), inv(2));
    let lim = Matrix::from_fn(Field::Rat, vals[0].rows(), vals[0].cols(), |r, c| {
        let (x0, x1) = (vals[0].get(r, c).re(), vals[1].get(r, c).re());
        let b = (&x0 - &x1) / (&u0 - &u1);
        Scalar::Rat(x0 - &b * &u0)
    });
    let ok = (0..lim.rows()).all(|r| {
        (0..lim.cols()).all(|c| {
            let a = lim.get(r, c).re();
            let b = (vals[0].get(r, c).re() - &a) / &u0;
            vals[2].get(r, c).re() == a + b * &u2
        })
    });
    ok.then_some(lim)
}

/// Checks `ρ̄(g) ρ̄(h) = ρ̄(g . h)` for `g: beta -> gamma`, `h: alpha -> beta`.
///
/// For `d = 2` the compressed operators at finite `n` carry `1/(n - level)`
/// corrections, so the identity is checked on their exact limits, computed
/// from `n`, `n + 1` and `n + 2`. The finite-`n` verdict is reported too.
pub fn verify_repcat(g: &DoubleCoset, h: &DoubleCoset, rep: TensorRep) -> Result<RepcatReport> {
    if rep.d > 2 {
        return Err(Error::Unsupported(format!("degree {} fixed spaces are not handled", rep.d)));
    }
    let (gop, hop) = (single_real(g)?, single_real(h)?);
    let gh = coset_compose(g, h)?;
    let ghop = gh.rep().factor(0);
    let (gamma, beta, alpha) = (g.beta()[0], g.alpha()[0], h.alpha()[0]);
    let support = gop.support().max(hop.support()).max(ghop.support());
    let min_n = support.max(alpha).max(beta).max(gamma) + 1;
    if rep.n < min_n {
        return Err(Error::Truncation { support, n: rep.n, min_n });
    }
    let at = |k: usize| -> Result<[Matrix; 3]> {
        let r = TensorRep::new(rep.n + k, rep.d);
        let (fa, fb, fc) =
            (fixed_subspace_cached(r, alpha)?, fixed_subspace_cached(r, beta)?, fixed_subspace_cached(r, gamma)?);
        Ok([
            rho_bar_with(&gop.padded(r.n), &fb, &fc),
            rho_bar_with(&hop.padded(r.n), &fa, &fb),
            rho_bar_with(&ghop.padded(r.n), &fa, &fc),
        ])
    };
    let samples = [at(0)?, at(1)?, at(2)?];
    let finite_n_pass = samples[0][0].mul(&samples[0][1])? == samples[0][2];
    let series = |i: usize| -> [Matrix; 3] { [samples[0][i].clone(), samples[1][i].clone(), samples[2][i].clone()] };
    let limits = (limit_of(&series(0), rep.n, gamma), limit_of(&series(1), rep.n, beta), limit_of(&series(2), rep.n, gamma));
    let pass = match limits {
        (Some(a), Some(b), Some(c)) => a.mul(&b)? == c,
        _ => {
            log::warn!("compressed operators do not follow the a + b/(n - t) law");
            false
        }
    };
    Ok(RepcatReport {
        identity_checked: "rho_bar(g) rho_bar(h) = rho_bar(g . h)".into(),
        n: rep.n,
        d: rep.d,
        alpha,
        beta,
        gamma,
        pass,
        finite_n_pass,
        min_n,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub n: usize,
    pub d: usize,
    pub alpha: usize,
    pub m_values: Vec<usize>,
    /// Per `m`: whether `P ρ(Θ_m) P` restricted to `H^[alpha]` is the identity.
    pub identity_at: Vec<bool>,
    /// First `m` from which the compressed operator no longer changes.
    pub stabilized_at: Option<usize>,
    pub pass: bool,
}

/// Compresses `ρ(Θ_m)` to `H^[alpha]` for each `m` and compares the stable value with the identity.
pub fn theta_weak_limit_check(rep: TensorRep, alpha: usize, ms: &[usize]) -> Result<ThetaReport> {
    let top = ms.iter().copied().max().unwrap_or(0);
    if alpha + 2 * top > rep.n {
        return Err(Error::Truncation { support: alpha + 2 * top, n: rep.n, min_n: alpha + 2 * top });
    }
    let fixed = fixed_subspace_cached(rep, alpha)?;
    let ops: Vec<Matrix> = ms.iter().map(|&m| rho_bar_with(&theta(alpha, m).padded(rep.n), &fixed, &fixed)).collect();
    let id = Matrix::identity(Field::Rat, fixed.dim());
    let identity_at: Vec<bool> = ops.iter().map(|m| *m == id).collect();
    let stable_from = (0..ops.len()).rev().take_while(|&i| ops[i] == ops[ops.len() - 1]).last();
    let stabilized_at = stable_from.map(|i| ms[i]);
    let pass = !ops.is_empty() && identity_at[ops.len() - 1] && stabilized_at.is_some();
    Ok(ThetaReport { n: rep.n, d: rep.d, alpha, m_values: ms.to_vec(), identity_at, stabilized_at, pass })
}
