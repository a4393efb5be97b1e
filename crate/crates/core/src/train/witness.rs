//! Equality of double cosets: invariant refutation, then a bounded search for
//! signed source-index permutations `u`, `v` with `b = u a v`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::invariants::{chi_samples, corner_blocks};
use super::DoubleCoset;
use crate::error::{Error, Result};
use crate::groups::{FiniteSupportOperator, GroupElement};
use crate::linalg::{Matrix, Scalar};

/// `e_k -> signs[k] e_{perm[k]}` on source indices of one factor of `L`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPerm {
    pub perm: Vec<usize>,
    pub signs: Vec<i8>,
}

impl SignedPerm {
    pub fn identity(n: usize) -> Self {
        SignedPerm { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn matrix(&self, field: crate::linalg::Field) -> Matrix {
        let n = self.perm.len();
        let mut m = Matrix::zeros(field, n, n);
        for (k, (&p, &s)) in self.perm.iter().zip(&self.signs).enumerate() {
            m.set(p, k, Scalar::from_int(field, s as i64));
        }
        m
    }

    fn fixes_below(&self, level: usize) -> bool {
        (0..level.min(self.perm.len())).all(|k| self.perm[k] == k && self.signs[k] == 1)
    }
}

/// Per factor of `L`: `b = E(left) a E(right)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub left: Vec<SignedPerm>,
    pub right: Vec<SignedPerm>,
}

impl Witness {
    pub fn identity(arity: usize, rounds: usize) -> Self {
        Witness { left: vec![SignedPerm::identity(rounds); arity], right: vec![SignedPerm::identity(rounds); arity] }
    }

    fn embed(&self, a: &DoubleCoset, perms: &[SignedPerm], rounds: usize) -> Result<Vec<Matrix>> {
        let pair = a.pair();
        let ops = pair
            .l()
            .factors()
            .iter()
            .zip(perms)
            .map(|(&k, p)| FiniteSupportOperator::unchecked(k, p.matrix(k.field())))
            .collect::<Result<Vec<_>>>()?;
        let l = GroupElement::new(ops)?;
        pair.embed_l(&l, rounds.max(l.support()))
    }

    /// Checks `b = E(left) a E(right)` exactly, with `left` fixing the first
    /// beta and `right` the first alpha source indices.
    pub fn verify(&self, a: &DoubleCoset, b: &DoubleCoset) -> Result<bool> {
        let arity = a.pair().level_arity();
        if self.left.len() != arity || self.right.len() != arity {
            return Ok(false);
        }
        for j in 0..arity {
            if !self.left[j].fixes_below(a.beta()[j]) || !self.right[j].fixes_below(a.alpha()[j]) {
                return Ok(false);
            }
        }
        let rounds = a.rounds().max(b.rounds());
        let rounds = self.left.iter().chain(&self.right).map(|p| p.perm.len()).fold(rounds, usize::max);
        let (u, v) = (self.embed(a, &self.left, rounds)?, self.embed(a, &self.right, rounds)?);
        let (at, bt) = (a.truncated(rounds), b.truncated(rounds));
        for t in 0..at.len() {
            if u[t].mul(&at[t])?.mul(&v[t])? != bt[t] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Verdict {
    Distinct,
    /// Every invariant agrees but no permutation witness was found.
    EqualByInvariants,
    EqualByWitness(Witness),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        !matches!(self, Verdict::Distinct)
    }

    pub fn has_witness(&self) -> bool {
        matches!(self, Verdict::EqualByWitness(_))
    }
}

pub const DEFAULT_NODE_LIMIT: usize = 20_000;

pub fn coset_eq(a: &DoubleCoset, b: &DoubleCoset) -> Result<Verdict> {
    if a.pair() != b.pair() {
        return Err(Error::PairMismatch("cosets on different pairs".into()));
    }
    if a.beta() != b.beta() || a.alpha() != b.alpha() {
        return Err(Error::IndexMismatch(format!(
            "{:?} <- {:?} vs {:?} <- {:?}",
            a.beta(),
            a.alpha(),
            b.beta(),
            b.alpha()
        )));
    }
    if a.rep() == b.rep() {
        return Ok(Verdict::EqualByWitness(Witness::identity(a.pair().level_arity(), a.rounds())));
    }
    if corner_blocks(a) != corner_blocks(b) {
        return Ok(Verdict::Distinct);
    }
    if let Some(w) = find_witness(a, b, DEFAULT_NODE_LIMIT)? {
        return Ok(Verdict::EqualByWitness(w));
    }
    match (chi_samples(a), chi_samples(b)) {
        (Ok(x), Ok(y)) if x != y => return Ok(Verdict::Distinct),
        (Err(e), _) | (_, Err(e)) if !matches!(e, Error::Unsupported(_)) => return Err(e),
        _ => {}
    }
    Ok(Verdict::EqualByInvariants)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Item {
    Head(usize, usize),
    Tail(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Zero,
    Same,
    Neg,
    Bad,
}

fn relate(b: &[Scalar], a: &[Scalar]) -> Rel {
    let bz = b.iter().all(Scalar::is_zero);
    let az = a.iter().all(Scalar::is_zero);
    if bz && az {
        return Rel::Zero;
    }
    if bz != az {
        return Rel::Bad;
    }
    if a == b {
        Rel::Same
    } else if a.iter().zip(b).all(|(x, y)| *x == -y) {
        Rel::Neg
    } else {
        Rel::Bad
    }
}

/// Coordinates of each item, per factor of `G`, in a fixed (lane, offset) order.
struct Items {
    rows: Vec<Item>,
    cols: Vec<Item>,
    coords: Vec<Vec<Vec<usize>>>,
}

fn tail_coords(a: &DoubleCoset, rounds: usize) -> Vec<Vec<Vec<usize>>> {
    let pair = a.pair();
    let arity = pair.level_arity();
    (0..arity)
        .flat_map(|j| (0..rounds).map(move |k| (j, k)))
        .map(|(j, k)| {
            pair.layouts()
                .iter()
                .map(|lay| {
                    let mut out = Vec::new();
                    for (li, lane) in lay.lanes.iter().enumerate() {
                        if lane.hom.is_some_and(|(_, s)| s == j) {
                            out.extend((0..lane.width).map(|o| lay.coord(li, k, o)));
                        }
                    }
                    out
                })
                .collect()
        })
        .collect()
}

fn items(a: &DoubleCoset, rounds: usize) -> Items {
    let pair = a.pair();
    let coords = tail_coords(a, rounds);
    let side = |levels: &[usize]| {
        let mut v = Vec::new();
        for (t, lay) in pair.layouts().iter().enumerate() {
            for c in 0..lay.size_for(rounds) {
                match lay.source_of(c) {
                    Some((j, k)) if k >= levels[j] => {}
                    _ => v.push(Item::Head(t, c)),
                }
            }
        }
        for (j, &l) in levels.iter().enumerate() {
            v.extend((l..rounds).map(|k| Item::Tail(j, k)));
        }
        v
    };
    Items { rows: side(a.beta()), cols: side(a.alpha()), coords }
}

struct Blocks<'a> {
    mats: &'a [Matrix],
    coords: &'a [Vec<Vec<usize>>],
    rounds: usize,
}

impl Blocks<'_> {
    fn tail(&self, j: usize, k: usize) -> &[Vec<usize>] {
        &self.coords[j * self.rounds + k]
    }

    fn block(&self, r: Item, c: Item) -> Vec<Scalar> {
        let mut out = Vec::new();
        match (r, c) {
            (Item::Head(t, x), Item::Head(u, y)) => {
                if t == u {
                    out.push(self.mats[t].get(x, y).clone());
                }
            }
            (Item::Head(t, x), Item::Tail(j, k)) => {
                out.extend(self.tail(j, k)[t].iter().map(|&y| self.mats[t].get(x, y).clone()));
            }
            (Item::Tail(j, k), Item::Head(t, y)) => {
                out.extend(self.tail(j, k)[t].iter().map(|&x| self.mats[t].get(x, y).clone()));
            }
            (Item::Tail(j, k), Item::Tail(i, l)) => {
                for (t, m) in self.mats.iter().enumerate() {
                    for &x in &self.tail(j, k)[t] {
                        for &y in &self.tail(i, l)[t] {
                            out.push(m.get(x, y).clone());
                        }
                    }
                }
            }
        }
        out
    }
}

/// Union-find over sign variables with parity and an undo log.
struct Signs {
    parent: Vec<usize>,
    parity: Vec<u8>,
    rank: Vec<u8>,
    log: Vec<(usize, usize, bool)>,
}

impl Signs {
    fn new(n: usize) -> Self {
        Signs { parent: (0..n).collect(), parity: vec![0; n], rank: vec![0; n], log: Vec::new() }
    }

    fn find(&self, mut x: usize) -> (usize, u8) {
        let mut p = 0;
        while self.parent[x] != x {
            p ^= self.parity[x];
            x = self.parent[x];
        }
        (x, p)
    }

    /// Records `sign(x) sign(y) = (-1)^p`; false on contradiction.
    fn union(&mut self, x: usize, y: usize, p: u8) -> bool {
        let ((mut rx, px), (mut ry, py)) = (self.find(x), self.find(y));
        if rx == ry {
            return px ^ py == p;
        }
        if self.rank[rx] < self.rank[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        let bump = self.rank[rx] == self.rank[ry];
        self.parent[ry] = rx;
        self.parity[ry] = px ^ py ^ p;
        if bump {
            self.rank[rx] += 1;
        }
        self.log.push((ry, rx, bump));
        true
    }

    fn checkpoint(&self) -> usize {
        self.log.len()
    }

    fn rollback(&mut self, to: usize) {
        while self.log.len() > to {
            let (child, root, bump) = self.log.pop().expect("nonempty");
            self.parent[child] = child;
            self.parity[child] = 0;
            if bump {
                self.rank[root] -= 1;
            }
        }
    }

    fn sign(&self, x: usize) -> i8 {
        let (r, p) = self.find(x);
        let root_sign = if self.find(0).0 == r { self.find(0).1 } else { 0 };
        if p ^ root_sign == 0 { 1 } else { -1 }
    }
}

struct Search {
    // Relations between b-blocks and a-blocks, indexed by tail positions.
    tail_tail: Vec<Rel>,
    row_head: Vec<Rel>,
    col_head: Vec<Rel>,
    nr: usize,
    nc: usize,
    head_rows: usize,
    head_cols: usize,
    row_src: Vec<usize>,
    col_src: Vec<usize>,
    row_cands: Vec<Vec<usize>>,
    col_cands: Vec<Vec<usize>>,
    row_of: Vec<Option<usize>>,
    col_of: Vec<Option<usize>>,
    row_used: Vec<bool>,
    col_used: Vec<bool>,
    signs: Signs,
    nodes: usize,
    limit: usize,
}

impl Search {
    fn tt(&self, p: usize, pa: usize, q: usize, qa: usize) -> Rel {
        self.tail_tail[((p * self.nr + pa) * self.nc + q) * self.nc + qa]
    }

    fn row_node(p: usize) -> usize {
        1 + p
    }

    fn col_node(&self, q: usize) -> usize {
        1 + self.nr + q
    }

    fn apply(&mut self, x: usize, y: usize, rel: Rel) -> bool {
        match rel {
            Rel::Zero => true,
            Rel::Bad => false,
            Rel::Same => self.signs.union(x, y, 0),
            Rel::Neg => self.signs.union(x, y, 1),
        }
    }

    /// Assigns b-row `p` to a-row `pa`, checking all assigned columns.
    fn try_row(&mut self, p: usize, pa: usize) -> bool {
        for hc in 0..self.head_cols {
            let rel = self.row_head[(p * self.nr + pa) * self.head_cols + hc];
            if !self.apply(Self::row_node(p), 0, rel) {
                return false;
            }
        }
        for q in 0..self.nc {
            if let Some(qa) = self.col_of[q] {
                let node = self.col_node(q);
                if !self.apply(Self::row_node(p), node, self.tt(p, pa, q, qa)) {
                    return false;
                }
            }
        }
        true
    }

    fn try_col(&mut self, q: usize, qa: usize) -> bool {
        let node = self.col_node(q);
        for hr in 0..self.head_rows {
            let rel = self.col_head[(q * self.nc + qa) * self.head_rows + hr];
            if !self.apply(node, 0, rel) {
                return false;
            }
        }
        for p in 0..self.nr {
            if let Some(pa) = self.row_of[p] {
                if !self.apply(Self::row_node(p), node, self.tt(p, pa, q, qa)) {
                    return false;
                }
            }
        }
        true
    }

    fn feasible(&mut self, is_row: bool, i: usize) -> Vec<usize> {
        let cands = if is_row { self.row_cands[i].clone() } else { self.col_cands[i].clone() };
        cands
            .into_iter()
            .filter(|&c| {
                let used = if is_row { self.row_used[c] } else { self.col_used[c] };
                if used {
                    return false;
                }
                let cp = self.signs.checkpoint();
                let ok = if is_row { self.try_row(i, c) } else { self.try_col(i, c) };
                self.signs.rollback(cp);
                ok
            })
            .collect()
    }

    /// `Some(true)` on success, `Some(false)` when exhausted, `None` past the limit.
    fn run(&mut self) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.limit {
            return None;
        }
        let mut best: Option<(bool, usize, Vec<usize>)> = None;
        for p in 0..self.nr {
            if self.row_of[p].is_none() {
                let f = self.feasible(true, p);
                if best.as_ref().is_none_or(|b| f.len() < b.2.len()) {
                    best = Some((true, p, f));
                }
            }
        }
        for q in 0..self.nc {
            if self.col_of[q].is_none() {
                let f = self.feasible(false, q);
                if best.as_ref().is_none_or(|b| f.len() < b.2.len()) {
                    best = Some((false, q, f));
                }
            }
        }
        let Some((is_row, i, cands)) = best else { return Some(true) };
        for c in cands {
            let cp = self.signs.checkpoint();
            let ok = if is_row { self.try_row(i, c) } else { self.try_col(i, c) };
            if ok {
                if is_row {
                    self.row_of[i] = Some(c);
                    self.row_used[c] = true;
                } else {
                    self.col_of[i] = Some(c);
                    self.col_used[c] = true;
                }
                match self.run() {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
                if is_row {
                    self.row_of[i] = None;
                    self.row_used[c] = false;
                } else {
                    self.col_of[i] = None;
                    self.col_used[c] = false;
                }
            }
            self.signs.rollback(cp);
        }
        Some(false)
    }
}

fn norms(v: &[Scalar]) -> Vec<BigRational> {
    v.iter().map(Scalar::norm_sqr).collect()
}

/// Per-item signature: norms against head items in order, then the sorted
/// norms against tail items of each source factor.
fn signatures(blocks: &Blocks, mine: &[Item], other: &[Item], arity: usize) -> Vec<Vec<Vec<BigRational>>> {
    mine.iter()
        .map(|&x| {
            let mut sig = Vec::new();
            let mut tails: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); arity];
            for &y in other {
                let blk = |x: Item, y: Item| blocks.block(x, y);
                let n = norms(&blk(x, y));
                match y {
                    Item::Head(..) => sig.push(n),
                    Item::Tail(j, _) => tails[j].push(n),
                }
            }
            for mut t in tails {
                t.sort();
                sig.extend(t);
            }
            sig
        })
        .collect()
}

fn transpose_items(blocks: &Blocks, rows: &[Item], cols: &[Item], arity: usize) -> Vec<Vec<Vec<BigRational>>> {
    cols.iter()
        .map(|&c| {
            let mut sig = Vec::new();
            let mut tails: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); arity];
            for &r in rows {
                let n = norms(&blocks.block(r, c));
                match r {
                    Item::Head(..) => sig.push(n),
                    Item::Tail(j, _) => tails[j].push(n),
                }
            }
            for mut t in tails {
                t.sort();
                sig.extend(t);
            }
            sig
        })
        .collect()
}

/// Searches for `u`, `v` with `b = u a v`; `None` if none was found within
/// `limit` search nodes.
pub fn find_witness(a: &DoubleCoset, b: &DoubleCoset, limit: usize) -> Result<Option<Witness>> {
    if a.pair() != b.pair() || a.beta() != b.beta() || a.alpha() != b.alpha() {
        return Err(Error::IndexMismatch("witness search needs matching pairs and levels".into()));
    }
    let pair = a.pair();
    let arity = pair.level_arity();
    let rounds = a.rounds().max(b.rounds());
    let it = items(a, rounds);
    let (am, bm) = (a.truncated(rounds), b.truncated(rounds));
    let ab = Blocks { mats: &am, coords: &it.coords, rounds };
    let bb = Blocks { mats: &bm, coords: &it.coords, rounds };

    let head_rows: Vec<Item> = it.rows.iter().copied().filter(|x| matches!(x, Item::Head(..))).collect();
    let head_cols: Vec<Item> = it.cols.iter().copied().filter(|x| matches!(x, Item::Head(..))).collect();
    let tail_rows: Vec<Item> = it.rows.iter().copied().filter(|x| matches!(x, Item::Tail(..))).collect();
    let tail_cols: Vec<Item> = it.cols.iter().copied().filter(|x| matches!(x, Item::Tail(..))).collect();
    for &r in &head_rows {
        for &c in &head_cols {
            if bb.block(r, c) != ab.block(r, c) {
                return Ok(None);
            }
        }
    }
    let (nr, nc) = (tail_rows.len(), tail_cols.len());
    let src = |x: &Item| match *x {
        Item::Tail(j, _) => j,
        Item::Head(..) => unreachable!("tail item"),
    };

    let (sig_ra, sig_rb) = (signatures(&ab, &tail_rows, &it.cols, arity), signatures(&bb, &tail_rows, &it.cols, arity));
    let (sig_ca, sig_cb) =
        (transpose_items(&ab, &it.rows, &tail_cols, arity), transpose_items(&bb, &it.rows, &tail_cols, arity));
    let row_cands: Vec<Vec<usize>> = (0..nr)
        .map(|p| (0..nr).filter(|&pa| src(&tail_rows[p]) == src(&tail_rows[pa]) && sig_rb[p] == sig_ra[pa]).collect())
        .collect();
    let col_cands: Vec<Vec<usize>> = (0..nc)
        .map(|q| (0..nc).filter(|&qa| src(&tail_cols[q]) == src(&tail_cols[qa]) && sig_cb[q] == sig_ca[qa]).collect())
        .collect();

    let mut tail_tail = vec![Rel::Bad; nr * nr * nc * nc];
    for p in 0..nr {
        for &pa in &row_cands[p] {
            for q in 0..nc {
                for &qa in &col_cands[q] {
                    tail_tail[((p * nr + pa) * nc + q) * nc + qa] =
                        relate(&bb.block(tail_rows[p], tail_cols[q]), &ab.block(tail_rows[pa], tail_cols[qa]));
                }
            }
        }
    }
    let hc = head_cols.len();
    let mut row_head = vec![Rel::Bad; nr * nr * hc];
    for p in 0..nr {
        for &pa in &row_cands[p] {
            for (k, &c) in head_cols.iter().enumerate() {
                row_head[(p * nr + pa) * hc + k] = relate(&bb.block(tail_rows[p], c), &ab.block(tail_rows[pa], c));
            }
        }
    }
    let hr = head_rows.len();
    let mut col_head = vec![Rel::Bad; nc * nc * hr];
    for q in 0..nc {
        for &qa in &col_cands[q] {
            for (k, &r) in head_rows.iter().enumerate() {
                col_head[(q * nc + qa) * hr + k] = relate(&bb.block(r, tail_cols[q]), &ab.block(r, tail_cols[qa]));
            }
        }
    }

    let mut s = Search {
        tail_tail,
        row_head,
        col_head,
        nr,
        nc,
        head_rows: hr,
        head_cols: hc,
        row_src: tail_rows.iter().map(src).collect(),
        col_src: tail_cols.iter().map(src).collect(),
        row_cands,
        col_cands,
        row_of: vec![None; nr],
        col_of: vec![None; nc],
        row_used: vec![false; nr],
        col_used: vec![false; nc],
        signs: Signs::new(1 + nr + nc),
        nodes: 0,
        limit,
    };
    match s.run() {
        None => {
            log::debug!("witness search stopped after {limit} nodes");
            return Ok(None);
        }
        Some(false) => return Ok(None),
        Some(true) => {}
    }

    let mut left: Vec<SignedPerm> = (0..arity).map(|_| SignedPerm::identity(rounds)).collect();
    let mut right = left.clone();
    let round = |x: &Item| match *x {
        Item::Tail(_, k) => k,
        Item::Head(..) => unreachable!("tail item"),
    };
    for p in 0..nr {
        let pa = s.row_of[p].expect("complete");
        let j = s.row_src[p];
        let (kb, ka) = (round(&tail_rows[p]), round(&tail_rows[pa]));
        left[j].perm[ka] = kb;
        left[j].signs[ka] = s.signs.sign(Search::row_node(p));
    }
    for q in 0..nc {
        let qa = s.col_of[q].expect("complete");
        let j = s.col_src[q];
        let (kb, ka) = (round(&tail_cols[q]), round(&tail_cols[qa]));
        right[j].perm[kb] = ka;
        right[j].signs[kb] = s.signs.sign(s.col_node(q));
    }
    let w = Witness { left, right };
    debug_assert!(w.verify(a, b).unwrap_or(false));
    Ok(Some(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{GroupKind, PairDescriptor};
    use crate::train::{coset_compose, unit_lambda, unit_mu};

    fn gl(level: usize, rows: &[&[i64]]) -> DoubleCoset {
        DoubleCoset::classical(GroupKind::GlR, level, level, Matrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn same_object_is_equal_by_identity() {
        let g = gl(1, &[&[2, 1], &[3, 2]]);
        let v = coset_eq(&g, &g).unwrap();
        let Verdict::EqualByWitness(w) = v else { panic!("expected witness") };
        assert!(w.verify(&g, &g).unwrap());
    }

    #[test]
    fn theta_conjugated_tail_is_found() {
        let g = gl(1, &[&[2, 1, 0], &[3, 2, 1], &[1, 0, 1]]);
        let pair = g.pair().clone();
        let theta = pair.embed_l_element(&pair.theta_element(&[1], 1)).unwrap();
        let conj = theta.mul(g.rep()).unwrap().mul(&theta).unwrap();
        let h = DoubleCoset::new(pair, vec![1], vec![1], conj).unwrap();
        let v = coset_eq(&g, &h).unwrap();
        let Verdict::EqualByWitness(w) = v else { panic!("expected witness, got {v:?}") };
        assert!(w.verify(&g, &h).unwrap());
    }

    #[test]
    fn signed_tail_is_found() {
        let g = gl(1, &[&[2, 1, 0], &[3, 2, 1], &[1, 0, 1]]);
        let flip = Matrix::from_i64(&[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        let rep = flip.mul(g.rep().factor(0).core()).unwrap();
        let h = DoubleCoset::classical(GroupKind::GlR, 1, 1, rep).unwrap();
        assert!(coset_eq(&g, &h).unwrap().has_witness());
    }

    #[test]
    fn distinct_diagonals() {
        assert_eq!(coset_eq(&gl(1, &[&[2]]), &gl(1, &[&[3]])).unwrap(), Verdict::Distinct);
    }

    #[test]
    fn ordered_category_identity_by_witness() {
        let pair = PairDescriptor::classical(GroupKind::GlR);
        let (a, b) = ([1], [3]);
        let ml = coset_compose(&unit_mu(&pair, &b, &a).unwrap(), &unit_lambda(&pair, &a, &b).unwrap()).unwrap();
        let unit = DoubleCoset::unit(&pair, a.to_vec()).unwrap();
        assert!(coset_eq(&ml, &unit).unwrap().has_witness());
    }

    #[test]
    fn verdict_json() {
        let v = Verdict::EqualByWitness(Witness::identity(1, 1));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"verdict":"equal_by_witness","witness":{"left":[{"perm":[0],"signs":[1]}],"right":[{"perm":[0],"signs":[1]}]}}"#
        );
        assert_eq!(serde_json::to_string(&Verdict::Distinct).unwrap(), r#"{"verdict":"distinct"}"#);
    }
}
