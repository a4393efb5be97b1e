//! Finite-support elements of the infinite classical groups, straight
//! embeddings of heavy subgroups, and samplers.

mod embedding;
mod operator;
pub mod sample;

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use embedding::{BlockSize, EmbeddingSpec, HomTag, Lane, PairDescriptor, Slot, TargetLayout};
pub use operator::{is_member, scalar_operator, theta, theta_in, FiniteSupportOperator, GroupElement};
pub use sample::cayley_sample;

use crate::error::{Error, Result};
use crate::linalg::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupKind {
    #[serde(rename = "GL_R")]
    GlR,
    #[serde(rename = "GL_C")]
    GlC,
    #[serde(rename = "O")]
    O,
    #[serde(rename = "U")]
    U,
}

impl GroupKind {
    pub fn field(self) -> Field {
        match self {
            GroupKind::GlR | GroupKind::O => Field::Rat,
            GroupKind::GlC | GroupKind::U => Field::GaussRat,
        }
    }

    pub fn is_heavy(self) -> bool {
        matches!(self, GroupKind::O | GroupKind::U)
    }

    /// The maximal heavy subgroup of this kind.
    pub fn heavy(self) -> GroupKind {
        match self {
            GroupKind::GlR | GroupKind::O => GroupKind::O,
            GroupKind::GlC | GroupKind::U => GroupKind::U,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::GlR => "GL_R",
            GroupKind::GlC => "GL_C",
            GroupKind::O => "O",
            GroupKind::U => "U",
        })
    }
}

/// A simple group or a finite product of simple groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    factors: Vec<GroupKind>,
}

impl GroupDescriptor {
    pub fn simple(kind: GroupKind) -> Self {
        GroupDescriptor { factors: vec![kind] }
    }

    pub fn product(factors: Vec<GroupKind>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::Shape("a product needs at least two factors".into()));
        }
        Ok(GroupDescriptor { factors })
    }

    /// One factor gives a simple group, several give a product.
    pub fn from_factors(factors: Vec<GroupKind>) -> Result<Self> {
        match factors.len() {
            0 => Err(Error::Shape("empty group descriptor".into())),
            1 => Ok(GroupDescriptor::simple(factors[0])),
            _ => GroupDescriptor::product(factors),
        }
    }

    pub fn factors(&self) -> &[GroupKind] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn is_product(&self) -> bool {
        self.factors.len() > 1
    }

    pub fn is_heavy(&self) -> bool {
        self.factors.iter().all(|k| k.is_heavy())
    }

    pub fn heavy(&self) -> GroupDescriptor {
        GroupDescriptor { factors: self.factors.iter().map(|k| k.heavy()).collect() }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.factors.iter().map(|k| k.to_string()).collect();
        f.write_str(&names.join(" x "))
    }
}

#[derive(Serialize, Deserialize)]
struct DescriptorRepr {
    kind: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    factors: Vec<DescriptorRepr>,
}

impl Serialize for GroupDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let leaf = |k: &GroupKind| DescriptorRepr { kind: k.to_string(), factors: vec![] };
        let repr = if self.is_product() {
            DescriptorRepr { kind: "PRODUCT".into(), factors: self.factors.iter().map(leaf).collect() }
        } else {
            leaf(&self.factors[0])
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        fn kind(s: &str) -> Option<GroupKind> {
            serde_json::from_value(serde_json::Value::String(s.to_string())).ok()
        }
        let repr = DescriptorRepr::deserialize(d)?;
        if repr.kind == "PRODUCT" {
            let factors = repr
                .factors
                .iter()
                .map(|f| {
                    if !f.factors.is_empty() {
                        return Err(D::Error::custom("nested products are flattened; list simple kinds"));
                    }
                    kind(&f.kind).ok_or_else(|| D::Error::custom(format!("unknown group kind {}", f.kind)))
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            GroupDescriptor::product(factors).map_err(D::Error::custom)
        } else {
            if !repr.factors.is_empty() {
                return Err(D::Error::custom("only PRODUCT has factors"));
            }
            kind(&repr.kind)
                .map(GroupDescriptor::simple)
                .ok_or_else(|| D::Error::custom(format!("unknown group kind {}", repr.kind)))
        }
    }
}
