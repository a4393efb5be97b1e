//! Linear relations and the characteristic function of a double coset.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{GroupKind, HomTag};
use crate::linalg::{EchelonBuilder, Field, Matrix, Scalar, Subspace};
use crate::train::{coset_compose, DoubleCoset};

/// A subspace of `codomain (+) domain`, read as a multi-valued linear map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearRelation {
    dom: usize,
    cod: usize,
    graph: Subspace,
}

impl LinearRelation {
    pub fn new(dom: usize, cod: usize, graph: Subspace) -> Result<Self> {
        if graph.ambient_dim() != dom + cod {
            return Err(Error::AmbientMismatch(graph.ambient_dim(), dom + cod));
        }
        Ok(LinearRelation { dom, cod, graph })
    }

    /// `{(M x, x)}` for a `cod x dom` matrix `M`.
    pub fn graph_of(m: &Matrix) -> Self {
        let (cod, dom) = (m.rows(), m.cols());
        let field = m.field();
        let rows = (0..dom)
            .map(|i| {
                let mut v = m.column(i);
                v.extend((0..dom).map(|j| if i == j { Scalar::one(field) } else { Scalar::zero(field) }));
                v
            })
            .collect();
        let graph = Subspace::span(field, cod + dom, rows).expect("lengths match");
        LinearRelation { dom, cod, graph }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::graph_of(&Matrix::identity(field, n))
    }

    pub fn dom(&self) -> usize {
        self.dom
    }
    pub fn cod(&self) -> usize {
        self.cod
    }
    pub fn graph(&self) -> &Subspace {
        &self.graph
    }
    pub fn dim(&self) -> usize {
        self.graph.dim()
    }
    pub fn field(&self) -> Field {
        self.graph.field()
    }
}

/// `s . r`: pairs `(z, x)` with some `y` such that `(y, x) in r`, `(z, y) in s`.
pub fn relation_compose(s: &LinearRelation, r: &LinearRelation) -> Result<LinearRelation> {
    if r.cod != s.dom {
        return Err(Error::Shape(format!("relation into {} composed with one from {}", r.cod, s.dom)));
    }
    if r.field() != s.field() {
        return Err(Error::Field("relations over different fields".into()));
    }
    let field = r.field();
    let (a, b, c) = (r.dom, r.cod, s.cod);
    let n = a + b + c;
    let unit = |i: usize| -> Vec<Scalar> {
        (0..n).map(|k| if k == i { Scalar::one(field) } else { Scalar::zero(field) }).collect()
    };
    // Coordinates (z, y, x).
    let mut lifted_r: Vec<Vec<Scalar>> = (0..c).map(unit).collect();
    for row in r.graph.basis().row_vecs() {
        let mut v = vec![Scalar::zero(field); c];
        v.extend(row);
        lifted_r.push(v);
    }
    let mut lifted_s: Vec<Vec<Scalar>> = (c + b..n).map(unit).collect();
    for row in s.graph.basis().row_vecs() {
        let mut v = row;
        v.extend(std::iter::repeat_n(Scalar::zero(field), a));
        lifted_s.push(v);
    }
    let both = Subspace::span(field, n, lifted_r)?.intersect(&Subspace::span(field, n, lifted_s)?)?;
    let keep: Vec<usize> = (0..c).chain(c + b..n).collect();
    LinearRelation::new(a, c, both.coordinate_project(&keep)?)
}

/// `lambda = num / den`; `den = 0` is the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjectivePoint {
    pub num: Scalar,
    pub den: Scalar,
}

impl ProjectivePoint {
    pub fn new(num: Scalar, den: Scalar) -> Result<Self> {
        if num.is_zero() && den.is_zero() {
            return Err(Error::Shape("(0 : 0) is not a projective point".into()));
        }
        Ok(ProjectivePoint { num, den })
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(Scalar::from_int(Field::Rat, num), Scalar::from_int(Field::Rat, den)).expect("not both zero")
    }

    pub fn infinity() -> Self {
        Self::ratio(1, 0)
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    pub fn to_field(&self, field: Field) -> Result<Self> {
        Ok(ProjectivePoint { num: self.num.to_field(field)?, den: self.den.to_field(field)? })
    }
}

/// How `L` acts on one factor of `G`: by real orthogonal maps (the dual
/// operator is `g^{t -1}`) or by unitary ones (`g^{* -1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Duality {
    Transpose,
    Adjoint,
}

fn duality(g: &DoubleCoset, t: usize) -> Result<Duality> {
    let pair = g.pair();
    let lay = pair.layout(t);
    let mut found = None;
    for lane in &lay.lanes {
        let Some((tag, j)) = lane.hom else {
            return Err(Error::Unsupported("characteristic function with an infinite identity block".into()));
        };
        let d = match (tag, pair.l().factors()[j]) {
            (HomTag::Id, GroupKind::O) | (HomTag::OToU, _) | (HomTag::UToO2, _) => Duality::Transpose,
            _ => Duality::Adjoint,
        };
        if found.is_some_and(|f| f != d) {
            return Err(Error::Unsupported("factor mixes orthogonal and unitary actions".into()));
        }
        found = Some(d);
    }
    Ok(found.expect("every factor has a homomorphism slot"))
}

/// `chi(lambda)` of `g`, one relation per factor of `G`.
///
/// With fixed coordinates `p`, `q` (rows at level beta, columns at level
/// alpha) and free tails `x`, `y`, the relation collects all
/// `(p+, p-; q+, q-)` for which some `x`, `y` solve
/// `[p+; l0 x] = g [q+; l1 y]` and `[p-; l1 x] = g' [q-; l0 y]`,
/// where `g'` is the inverse transpose (or adjoint) and `lambda = l0 / l1`.
pub fn char_function(g: &DoubleCoset, lambda: &ProjectivePoint) -> Result<Vec<LinearRelation>> {
    let pair = g.pair();
    let rounds = g.rounds();
    g.truncated(rounds)
        .into_iter()
        .enumerate()
        .map(|(t, m)| {
            let dual = match duality(g, t)? {
                Duality::Transpose => m.transpose().inverse()?,
                Duality::Adjoint => m.adjoint().inverse()?,
            };
            let lay = pair.layout(t);
            let n = m.rows();
            let fb = lay.fixed_coords(g.beta(), n);
            let fa = lay.fixed_coords(g.alpha(), n);
            char_system(&m, &dual, &fb, &fa, &lambda.to_field(m.field())?)
        })
        .collect()
}

fn char_system(m: &Matrix, dual: &Matrix, fb: &[usize], fa: &[usize], lambda: &ProjectivePoint) -> Result<LinearRelation> {
    let field = m.field();
    let n = m.rows();
    let (pb, qa) = (fb.len(), fa.len());
    // Unknown layout: p+ | p- | q+ | q- | x | y.
    let mut row_slot = vec![None; n];
    for (i, &c) in fb.iter().enumerate() {
        row_slot[c] = Some(i);
    }
    let mut col_slot = vec![None; n];
    for (i, &c) in fa.iter().enumerate() {
        col_slot[c] = Some(i);
    }
    let x_index: Vec<usize> = {
        let mut k = 0;
        (0..n).map(|r| if row_slot[r].is_none() { k += 1; k - 1 } else { usize::MAX }).collect()
    };
    let y_index: Vec<usize> = {
        let mut k = 0;
        (0..n).map(|c| if col_slot[c].is_none() { k += 1; k - 1 } else { usize::MAX }).collect()
    };
    let nx = n - pb;
    let (p_plus, p_minus, q_plus, q_minus) = (0, pb, 2 * pb, 2 * pb + qa);
    let (x0, y0) = (2 * pb + 2 * qa, 2 * pb + 2 * qa + nx);
    let unknowns = y0 + (n - qa);

    let (l0, l1) = (&lambda.num, &lambda.den);
    let mut system = EchelonBuilder::new(field, unknowns);
    for (op, p_off, q_off, lx, ly) in [(m, p_plus, q_plus, l0, l1), (dual, p_minus, q_minus, l1, l0)] {
        for r in 0..n {
            let mut eq = vec![Scalar::zero(field); unknowns];
            match row_slot[r] {
                Some(i) => eq[p_off + i] = Scalar::one(field),
                None => eq[x0 + x_index[r]] = lx.clone(),
            }
            for c in 0..n {
                let e = op.get(r, c);
                if e.is_zero() {
                    continue;
                }
                match col_slot[c] {
                    Some(i) => eq[q_off + i] = &eq[q_off + i] - e,
                    None => {
                        let k = y0 + y_index[c];
                        eq[k] = &eq[k] - &(e * ly);
                    }
                }
            }
            system.insert(eq);
        }
    }
    let solutions = system.solution_space();
    let keep: Vec<usize> = (0..2 * pb + 2 * qa).collect();
    LinearRelation::new(2 * qa, 2 * pb, solutions.coordinate_project(&keep)?)
}

/// `chi(g . h) = chi(g) . chi(h)` at every sample point, factor by factor.
pub fn char_multiplicativity_check(g: &DoubleCoset, h: &DoubleCoset, lambdas: &[ProjectivePoint]) -> Result<bool> {
    let gh = coset_compose(g, h)?;
    for lambda in lambdas {
        let lhs = char_function(&gh, lambda)?;
        let (cg, ch) = (char_function(g, lambda)?, char_function(h, lambda)?);
        for ((l, a), b) in lhs.iter().zip(&cg).zip(&ch) {
            if *l != relation_compose(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether the graph is isotropic for the split pairing `p+ . p-' + p- . p+'
/// - q+ . q-' - q- . q+'`. Diagnostic only; the result is logged.
pub fn isotropy_diagnostic(r: &LinearRelation) -> bool {
    let (pb, qa) = (r.cod / 2, r.dom / 2);
    let basis = r.graph.basis().row_vecs();
    let field = r.field();
    let dot = |u: &[Scalar], v: &[Scalar]| {
        u.iter().zip(v).fold(Scalar::zero(field), |acc, (a, b)| &acc + &(a * b))
    };
    let form = |u: &[Scalar], v: &[Scalar]| {
        let p = &dot(&u[..pb], &v[pb..2 * pb]) + &dot(&u[pb..2 * pb], &v[..pb]);
        let q = &dot(&u[2 * pb..2 * pb + qa], &v[2 * pb + qa..]) + &dot(&u[2 * pb + qa..], &v[2 * pb..2 * pb + qa]);
        &p - &q
    };
    let iso = basis.iter().all(|u| basis.iter().all(|v| form(u, v).is_zero()));
    log::debug!("relation {}x{} of dim {}: isotropic = {iso}", r.cod, r.dom, r.dim());
    iso
}

#[derive(Serialize, Deserialize)]
struct RelationRepr {
    dom: usize,
    cod: usize,
    basis: Matrix,
}

impl Serialize for LinearRelation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RelationRepr { dom: self.dom, cod: self.cod, basis: self.graph.basis().clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinearRelation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = RelationRepr::deserialize(d)?;
        LinearRelation::new(r.dom, r.cod, Subspace::row_space(&r.basis)).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::PairDescriptor;

    fn q(v: i64) -> Scalar {
        Scalar::from_int(Field::Rat, v)
    }

    fn coset(rows: &[&[i64]]) -> DoubleCoset {
        DoubleCoset::classical(GroupKind::GlR, 1, 1, Matrix::from_i64(rows)).unwrap()
    }

    #[test]
    fn single_valued_composition() {
        let m1 = Matrix::from_i64(&[&[1, 2], &[0, 1], &[3, 0]]);
        let m2 = Matrix::from_i64(&[&[1, 1, 1]]);
        let lhs = relation_compose(&LinearRelation::graph_of(&m2), &LinearRelation::graph_of(&m1)).unwrap();
        assert_eq!(lhs, LinearRelation::graph_of(&m2.mul(&m1).unwrap()));
        let id = LinearRelation::identity(Field::Rat, 3);
        let r = LinearRelation::graph_of(&m1);
        assert_eq!(relation_compose(&id, &r).unwrap(), r);
    }

    #[test]
    fn full_after_zero_relation() {
        // zero: {(0, x)} from Q^2 to Q^1; full: everything from Q^1 to Q^2.
        let zero = LinearRelation::graph_of(&Matrix::zeros(Field::Rat, 1, 2));
        let full = LinearRelation::new(1, 2, Subspace::full(Field::Rat, 3)).unwrap();
        let c = relation_compose(&full, &zero).unwrap();
        // oracle: y = 0 is in the image of zero and every z pairs with y = 0.
        assert_eq!(c.graph(), &Subspace::full(Field::Rat, 4));
        let c2 = relation_compose(&zero, &full).unwrap();
        // {(0, x)} for x in Q^1, composed after everything: z must be 0.
        assert_eq!(c2.graph(), &Subspace::span(Field::Rat, 2, vec![vec![q(0), q(1)]]).unwrap());
    }

    #[test]
    fn identity_coset_gives_identity_relation() {
        let pair = PairDescriptor::classical(GroupKind::GlR);
        let u = DoubleCoset::unit(&pair, vec![1]).unwrap();
        for lam in [ProjectivePoint::ratio(2, 1), ProjectivePoint::ratio(-7, 3), ProjectivePoint::infinity()] {
            let r = char_function(&u, &lam).unwrap();
            assert_eq!(r, vec![LinearRelation::identity(Field::Rat, 2)]);
        }
    }

    #[test]
    fn diagonal_coset_relation() {
        let g = coset(&[&[2]]);
        for lam in [ProjectivePoint::ratio(2, 1), ProjectivePoint::ratio(5, 2), ProjectivePoint::infinity()] {
            let r = &char_function(&g, &lam).unwrap()[0];
            // p+ = 2 q+, p- = q- / 2
            let expected = Matrix::from_rows(
                Field::Rat,
                vec![vec![q(2), q(0), q(1), q(0)], vec![q(0), Scalar::from_ratio(Field::Rat, 1, 2), q(0), q(1)]],
            )
            .unwrap();
            assert_eq!(r.graph(), &Subspace::row_space(&expected));
            assert_eq!(r.dim(), 2);
        }
    }

    #[test]
    fn generic_coset_has_half_dimension() {
        let g = coset(&[&[2, 1], &[3, 2]]);
        let r = &char_function(&g, &ProjectivePoint::ratio(3, 1)).unwrap()[0];
        assert_eq!(r.dim(), 2);
        isotropy_diagnostic(r);
    }

    #[test]
    fn diagonal_multiplicativity() {
        let (g, h) = (coset(&[&[2]]), coset(&[&[3]]));
        let lams = [ProjectivePoint::ratio(2, 1), ProjectivePoint::infinity()];
        assert!(char_multiplicativity_check(&g, &h, &lams).unwrap());
        let six = &char_function(&coset(&[&[6]]), &lams[0]).unwrap()[0];
        assert_eq!(&char_function(&coset_compose(&g, &h).unwrap(), &lams[0]).unwrap()[0], six);
    }

    #[test]
    fn relation_json() {
        let r = LinearRelation::graph_of(&Matrix::from_i64(&[&[2]]));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(s, r#"{"dom":1,"cod":1,"basis":{"field":"Q","rows":1,"cols":2,"entries":[["1","1/2"]]}}"#);
        assert_eq!(serde_json::from_str::<LinearRelation>(&s).unwrap(), r);
    }
}
