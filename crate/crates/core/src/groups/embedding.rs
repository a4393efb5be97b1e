//! Straight embeddings `L -> K` and the coordinate layout they induce.
//!
//! Each target factor is laid out as a finite head (all finite identity
//! blocks) followed by rounds. Round `k` contains, for every infinite slot in
//! slot order, the coordinates fed by source index `k`: one coordinate for
//! `id`, `conj`, `o_to_u` and an infinite identity slot, two for `u_to_o2`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{FiniteSupportOperator, GroupDescriptor, GroupElement, GroupKind};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HomTag {
    #[serde(rename = "id")]
    Id,
    #[serde(rename = "conj")]
    Conj,
    #[serde(rename = "o_to_u")]
    OToU,
    #[serde(rename = "u_to_o2")]
    UToO2,
}

impl HomTag {
    pub fn accepts(self, source: GroupKind, target: GroupKind) -> bool {
        match self {
            HomTag::Id => source == target,
            HomTag::Conj => source == GroupKind::U && target == GroupKind::U,
            HomTag::OToU => source == GroupKind::O && target == GroupKind::U,
            HomTag::UToO2 => source == GroupKind::U && target == GroupKind::O,
        }
    }

    pub fn width(self) -> usize {
        if self == HomTag::UToO2 { 2 } else { 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockSize {
    Finite(usize),
    Inf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Identity(BlockSize),
    Hom { tag: HomTag, source: usize },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SizeRepr {
    Finite(usize),
    Inf(String),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SlotRepr {
    Identity { identity: SizeRepr },
    Hom { hom: HomTag, source: usize },
}

impl Serialize for Slot {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Slot::Identity(BlockSize::Finite(a)) => SlotRepr::Identity { identity: SizeRepr::Finite(a) },
            Slot::Identity(BlockSize::Inf) => SlotRepr::Identity { identity: SizeRepr::Inf("inf".into()) },
            Slot::Hom { tag, source } => SlotRepr::Hom { hom: tag, source },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Slot {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match SlotRepr::deserialize(d)? {
            SlotRepr::Identity { identity: SizeRepr::Finite(a) } => Slot::Identity(BlockSize::Finite(a)),
            SlotRepr::Identity { identity: SizeRepr::Inf(s) } if s == "inf" => Slot::Identity(BlockSize::Inf),
            SlotRepr::Identity { identity: SizeRepr::Inf(s) } => {
                return Err(D::Error::custom(format!("identity size must be a count or \"inf\", got {s}")))
            }
            SlotRepr::Hom { hom, source } => Slot::Hom { tag: hom, source },
        })
    }
}

/// A straight embedding of the heavy group `source` into `target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddingSpec {
    pub source: GroupDescriptor,
    pub target: GroupDescriptor,
    pub slots: Vec<Vec<Slot>>,
}

/// Position of an infinite slot inside one round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lane {
    /// `None` for an infinite identity block.
    pub hom: Option<(HomTag, usize)>,
    pub offset: usize,
    pub width: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TargetLayout {
    pub head: usize,
    pub lanes: Vec<Lane>,
    pub width: usize,
}

impl TargetLayout {
    pub fn coord(&self, lane: usize, round: usize, offset: usize) -> usize {
        self.head + round * self.width + self.lanes[lane].offset + offset
    }

    pub fn size_for(&self, rounds: usize) -> usize {
        self.head + rounds * self.width
    }

    /// Least number of rounds whose coordinates cover `[0, size)`.
    pub fn rounds_for(&self, size: usize) -> usize {
        if size <= self.head { 0 } else { (size - self.head).div_ceil(self.width) }
    }

    /// `(lane, round, offset)` of a coordinate, or `None` inside the head.
    pub fn locate(&self, c: usize) -> Option<(usize, usize, usize)> {
        if c < self.head {
            return None;
        }
        let (k, r) = ((c - self.head) / self.width, (c - self.head) % self.width);
        let lane = self.lanes.iter().rposition(|l| l.offset <= r).expect("lane covers offset");
        Some((lane, k, r - self.lanes[lane].offset))
    }

    /// Source factor and round feeding coordinate `c`, if an L-factor acts there.
    pub fn source_of(&self, c: usize) -> Option<(usize, usize)> {
        let (lane, k, _) = self.locate(c)?;
        self.lanes[lane].hom.map(|(_, j)| (j, k))
    }

    /// Coordinates below `size` fixed pointwise by the level-`levels` subgroup.
    pub fn fixed_coords(&self, levels: &[usize], size: usize) -> Vec<usize> {
        (0..size)
            .filter(|&c| match self.locate(c) {
                None => true,
                Some((lane, k, _)) => match self.lanes[lane].hom {
                    None => true,
                    Some((_, j)) => k < levels[j],
                },
            })
            .collect()
    }
}

impl EmbeddingSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.source.is_heavy() || !self.target.is_heavy() {
            return Err(Error::TagMismatch("embeddings run between heavy groups".into()));
        }
        if self.slots.len() != self.target.arity() {
            return Err(Error::Shape(format!(
                "{} slot lists for {} target factors",
                self.slots.len(),
                self.target.arity()
            )));
        }
        let mut used = vec![false; self.source.arity()];
        for (t, slots) in self.slots.iter().enumerate() {
            let tk = self.target.factors()[t];
            let mut homs = 0;
            for slot in slots {
                match *slot {
                    Slot::Identity(BlockSize::Finite(0)) => {
                        return Err(Error::Shape("identity blocks have size at least 1".into()))
                    }
                    Slot::Identity(_) => {}
                    Slot::Hom { tag, source } => {
                        let Some(&sk) = self.source.factors().get(source) else {
                            return Err(Error::IndexOutOfRange { index: source, dim: self.source.arity() });
                        };
                        if !tag.accepts(sk, tk) {
                            return Err(Error::TagMismatch(format!("{tag:?} does not map {sk} into {tk}")));
                        }
                        used[source] = true;
                        homs += 1;
                    }
                }
            }
            if homs == 0 {
                return Err(Error::TagMismatch(format!("target factor {t} has no homomorphism slot")));
            }
        }
        if let Some(j) = used.iter().position(|u| !u) {
            return Err(Error::TagMismatch(format!("source factor {j} is never embedded")));
        }
        Ok(())
    }

    pub fn layouts(&self) -> Vec<TargetLayout> {
        self.slots
            .iter()
            .map(|slots| {
                let mut head = 0;
                let mut lanes = Vec::new();
                let mut width = 0;
                for slot in slots {
                    let (hom, w) = match *slot {
                        Slot::Identity(BlockSize::Finite(a)) => {
                            head += a;
                            continue;
                        }
                        Slot::Identity(BlockSize::Inf) => (None, 1),
                        Slot::Hom { tag, source } => (Some((tag, source)), tag.width()),
                    };
                    lanes.push(Lane { hom, offset: width, width: w });
                    width += w;
                }
                TargetLayout { head, lanes, width }
            })
            .collect()
    }

    /// Truncated images, one `size_for(rounds)` matrix per target factor.
    pub fn embed_truncated(&self, g: &GroupElement, rounds: usize) -> Result<Vec<Matrix>> {
        if !g.matches(&self.source) {
            return Err(Error::PairMismatch(format!("element of {} for source {}", g.descriptor(), self.source)));
        }
        if g.support() > rounds {
            return Err(Error::Shape(format!("support {} exceeds {rounds} rounds", g.support())));
        }
        let padded: Vec<Matrix> = g.factors().iter().map(|f| f.padded(rounds)).collect();
        Ok(self
            .layouts()
            .iter()
            .zip(self.target.factors())
            .map(|(lay, tk)| {
                let field = tk.field();
                let mut m = Matrix::identity(field, lay.size_for(rounds));
                for (li, lane) in lay.lanes.iter().enumerate() {
                    let Some((tag, j)) = lane.hom else { continue };
                    let src = &padded[j];
                    for k in 0..rounds {
                        for l in 0..rounds {
                            let e = src.get(k, l);
                            let (r, c) = (lay.coord(li, k, 0), lay.coord(li, l, 0));
                            match tag {
                                HomTag::Id => m.set(r, c, e.clone()),
                                HomTag::Conj => m.set(r, c, e.conj()),
                                HomTag::OToU => m.set(r, c, e.to_field(Field::GaussRat).expect("widening")),
                                HomTag::UToO2 => {
                                    let (a, b) = (Scalar::Rat(e.re()), Scalar::Rat(e.im()));
                                    m.set(r, c, a.clone());
                                    m.set(r, c + 1, -b.clone());
                                    m.set(r + 1, c, b);
                                    m.set(r + 1, c + 1, a);
                                }
                            }
                        }
                    }
                }
                m
            })
            .collect())
    }

    /// The image of `g` as an element of the target group.
    pub fn embed_straight(&self, g: &GroupElement) -> Result<GroupElement> {
        self.validate()?;
        let rounds = g.support();
        let mats = self.embed_truncated(g, rounds)?;
        GroupElement::new(
            mats.into_iter()
                .zip(self.target.factors())
                .map(|(m, &k)| FiniteSupportOperator::unchecked(k, m))
                .collect::<Result<_>>()?,
        )
    }
}

/// A group `G` together with a straight embedding of `L` into its maximal
/// heavy subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairDescriptor {
    g: GroupDescriptor,
    embedding: EmbeddingSpec,
    layouts: Vec<TargetLayout>,
}

impl PairDescriptor {
    pub fn new(g: GroupDescriptor, l: GroupDescriptor, slots: Vec<Vec<Slot>>) -> Result<Self> {
        let embedding = EmbeddingSpec { source: l, target: g.heavy(), slots };
        embedding.validate()?;
        let layouts = embedding.layouts();
        Ok(PairDescriptor { g, embedding, layouts })
    }

    /// `(G, K)` with `L = K` embedded by the identity.
    pub fn classical(g: GroupKind) -> Self {
        Self::new(
            GroupDescriptor::simple(g),
            GroupDescriptor::simple(g.heavy()),
            vec![vec![Slot::Hom { tag: HomTag::Id, source: 0 }]],
        )
        .expect("classical pair is valid")
    }

    /// `L` embedded diagonally into every factor of `G` (all factors share one heavy kind).
    pub fn diagonal(factors: Vec<GroupKind>) -> Result<Self> {
        let heavy = factors.first().ok_or_else(|| Error::Shape("no factors".into()))?.heavy();
        if factors.iter().any(|k| k.heavy() != heavy) {
            return Err(Error::TagMismatch("diagonal embedding needs factors with one heavy kind".into()));
        }
        let n = factors.len();
        Self::new(
            GroupDescriptor::from_factors(factors)?,
            GroupDescriptor::simple(heavy),
            vec![vec![Slot::Hom { tag: HomTag::Id, source: 0 }]; n],
        )
    }

    /// `(GL_R, O)` with `O` acting on the odd coordinates only; the even
    /// coordinates form an infinite identity block.
    pub fn mantle() -> Self {
        Self::new(
            GroupDescriptor::simple(GroupKind::GlR),
            GroupDescriptor::simple(GroupKind::O),
            vec![vec![Slot::Identity(BlockSize::Inf), Slot::Hom { tag: HomTag::Id, source: 0 }]],
        )
        .expect("mantle pair is valid")
    }

    /// `U` with `O x O` acting on interleaved real coordinates.
    pub fn unitary_two_orthogonal() -> Self {
        Self::new(
            GroupDescriptor::simple(GroupKind::U),
            GroupDescriptor::product(vec![GroupKind::O, GroupKind::O]).expect("two factors"),
            vec![vec![Slot::Hom { tag: HomTag::OToU, source: 0 }, Slot::Hom { tag: HomTag::OToU, source: 1 }]],
        )
        .expect("U/OxO pair is valid")
    }

    pub fn g(&self) -> &GroupDescriptor {
        &self.g
    }

    pub fn l(&self) -> &GroupDescriptor {
        &self.embedding.source
    }

    pub fn embedding(&self) -> &EmbeddingSpec {
        &self.embedding
    }

    pub fn layouts(&self) -> &[TargetLayout] {
        &self.layouts
    }

    pub fn layout(&self, t: usize) -> &TargetLayout {
        &self.layouts[t]
    }

    /// Number of entries in a level multi-index.
    pub fn level_arity(&self) -> usize {
        self.embedding.source.arity()
    }

    /// No identity block of any size appears in the embedding.
    pub fn is_pure(&self) -> bool {
        self.embedding.slots.iter().flatten().all(|s| matches!(s, Slot::Hom { .. }))
    }

    /// Rounds needed to hold `g` in every factor.
    pub fn rounds_of(&self, g: &GroupElement) -> usize {
        g.factors().iter().zip(&self.layouts).map(|(f, lay)| lay.rounds_for(f.support())).max().unwrap_or(0)
    }

    /// Per-factor truncations of `g` to `rounds` rounds.
    pub fn truncate(&self, g: &GroupElement, rounds: usize) -> Vec<Matrix> {
        g.factors().iter().zip(&self.layouts).map(|(f, lay)| f.padded(lay.size_for(rounds))).collect()
    }

    /// Assembles a G-element from per-factor matrices, normalizing each.
    pub fn element_from(&self, mats: Vec<Matrix>) -> Result<GroupElement> {
        if mats.len() != self.g.arity() {
            return Err(Error::Shape(format!("{} matrices for {} factors", mats.len(), self.g.arity())));
        }
        GroupElement::new(
            mats.into_iter()
                .zip(self.g.factors())
                .map(|(m, &k)| FiniteSupportOperator::unchecked(k, m))
                .collect::<Result<_>>()?,
        )
    }

    /// Image of an L-element inside G, truncated to `rounds`.
    pub fn embed_l(&self, l: &GroupElement, rounds: usize) -> Result<Vec<Matrix>> {
        self.embedding.embed_truncated(l, rounds)
    }

    /// Image of an L-element inside G as a group element.
    pub fn embed_l_element(&self, l: &GroupElement) -> Result<GroupElement> {
        let k = self.embedding.embed_straight(l)?;
        let ops = k.factors().iter().zip(self.g.factors()).map(|(f, &gk)| f.regard_as(gk)).collect::<Result<_>>()?;
        GroupElement::new(ops)
    }

    /// Θ at level `levels`: per source factor, swap the rounds
    /// `[levels_j, levels_j + m)` and `[levels_j + m, levels_j + 2m)`.
    pub fn theta_element(&self, levels: &[usize], m: usize) -> GroupElement {
        let ops = self
            .l()
            .factors()
            .iter()
            .zip(levels)
            .map(|(&k, &a)| super::theta_in(k, a, m))
            .collect();
        GroupElement::new(ops).expect("nonempty")
    }

    pub fn check_levels(&self, levels: &[usize]) -> Result<()> {
        if levels.len() != self.level_arity() {
            return Err(Error::IndexMismatch(format!(
                "level {levels:?} has arity {} but L has {} factors",
                levels.len(),
                self.level_arity()
            )));
        }
        Ok(())
    }

    pub fn check_element(&self, g: &GroupElement) -> Result<()> {
        if !g.matches(&self.g) {
            return Err(Error::PairMismatch(format!("element of {} in pair over {}", g.descriptor(), self.g)));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PairRepr {
    #[serde(rename = "G")]
    g: GroupDescriptor,
    #[serde(rename = "L")]
    l: GroupDescriptor,
    slots: Vec<Vec<Slot>>,
}

impl Serialize for PairDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PairRepr { g: self.g.clone(), l: self.l().clone(), slots: self.embedding.slots.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PairRepr::deserialize(d)?;
        PairDescriptor::new(r.g, r.l, r.slots).map_err(D::Error::custom)
    }
}
