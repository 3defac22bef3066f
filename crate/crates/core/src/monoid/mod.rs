//! Affine monoids: normalization, seminormalization and the gap `sn(M) \ M`.

mod gap;
mod hilbert;
mod seminormal;

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use gap::{
    ClauseVerdict, ConductorCertificate, ConjectureReport, FaceClause, FrobeniusClause,
    FrobeniusMap, GapModule,
};
pub use hilbert::hilbert_basis;

use crate::linalg::lp::{LinearProgram, LpOutcome, Relation};
use crate::linalg::rational::{primitive_from_rational, to_rational};
use crate::linalg::{dot, hermite_normal_form, is_zero_vector, kernel_lattice, IntegerMatrix, Lattice, Vector};
use crate::polyhedral::Cone;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("expected vectors of length {expected}, found length {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("monoid is not positive (it has nonzero units)")]
    NotPositive,
    #[error("cone is not pointed; quotient by its lineality space first")]
    NotPointed,
    #[error("membership is only decidable here for positive monoids and groups")]
    MembershipUndecided,
    #[error("the cone is not a face of the monoid's cone")]
    NotAFace,
    #[error("no conductor element found up to degree {0}")]
    ConductorNotFound(u64),
    #[error("seminormality check disagrees with the definition at {0:?}")]
    InconsistentSeminormality(Vec<String>),
}

/// A finitely generated submonoid of `Z^rank`.
#[derive(Clone, Debug)]
pub struct AffineMonoid {
    rank: usize,
    generators: Vec<Vector>,
    group: Lattice,
    cone: Cone,
    faces: OnceLock<Vec<seminormal::FaceData>>,
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.generators == other.generators
    }
}

impl Eq for AffineMonoid {}

impl AffineMonoid {
    /// Zero generators are dropped and the rest sorted and deduplicated.
    pub fn new(rank: usize, generators: &[Vector]) -> Result<Self, MonoidError> {
        if let Some(g) = generators.iter().find(|g| g.len() != rank) {
            return Err(MonoidError::DimensionMismatch {
                expected: rank,
                found: g.len(),
            });
        }
        let gens: BTreeSet<Vector> = generators
            .iter()
            .filter(|g| !is_zero_vector(g))
            .cloned()
            .collect();
        let generators: Vec<Vector> = gens.into_iter().collect();
        let group = Lattice::span_of(rank, &generators);
        let cone = Cone::from_generators(rank, &generators).expect("lengths checked");
        Ok(Self {
            rank,
            generators,
            group,
            cone,
            faces: OnceLock::new(),
        })
    }

    pub fn from_ints(rank: usize, generators: &[&[i64]]) -> Result<Self, MonoidError> {
        let gens: Vec<Vector> = generators.iter().map(|g| crate::linalg::vector(g)).collect();
        Self::new(rank, &gens)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    /// `C = R_+ M`.
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    /// `gp(M)`, the subgroup generated by `M`.
    pub fn group_of_differences(&self) -> &Lattice {
        &self.group
    }

    /// `U(M)`: generated by the generators lying in the lineality space of `C`. Those
    /// generate a monoid whose cone is a linear space, which is always a group.
    pub fn units(&self) -> Lattice {
        let in_lineality: Vec<Vector> = self
            .generators
            .iter()
            .filter(|g| self.cone.contains(&neg(g)))
            .cloned()
            .collect();
        Lattice::span_of(self.rank, &in_lineality)
    }

    pub fn is_positive(&self) -> bool {
        self.units().rank() == 0
    }

    /// Whether `M = gp(M)`.
    pub fn is_group(&self) -> bool {
        self.cone.facets().is_empty()
    }

    /// An integral functional `λ` with `λ(g) >= 1` on every generator: an optimal vertex
    /// of `min sum λ(g)` over the rational feasible region, scaled to a primitive
    /// integer vector.
    pub fn grading(&self) -> Result<Vector, MonoidError> {
        if !self.is_positive() {
            return Err(MonoidError::NotPositive);
        }
        if self.generators.is_empty() {
            return Ok(vec![BigInt::zero(); self.rank]);
        }
        let mut lp = LinearProgram::new(self.rank);
        let mut total = vec![BigRational::zero(); self.rank];
        for g in &self.generators {
            for (t, x) in total.iter_mut().zip(to_rational(g)) {
                *t -= x;
            }
            lp.add_constraint(to_rational(g), Relation::GreaterEq, BigRational::one());
        }
        lp.set_objective(total);
        match lp.solve() {
            LpOutcome::Optimal { point, .. } => Ok(primitive_from_rational(&point)),
            other => unreachable!("a positive monoid admits a grading: {other:?}"),
        }
    }

    /// Decides `x ∈ M`. Positive monoids use degree-bounded search; groups use the
    /// lattice.
    pub fn contains(&self, x: &[BigInt]) -> Result<bool, MonoidError> {
        if x.len() != self.rank {
            return Err(MonoidError::DimensionMismatch {
                expected: self.rank,
                found: x.len(),
            });
        }
        if self.is_group() {
            return Ok(self.group.contains(x));
        }
        let lambda = self.grading().map_err(|_| MonoidError::MembershipUndecided)?;
        Ok(MembershipOracle::new(self, lambda).contains(x))
    }

    /// `n(M) = C ∩ gp(M)`.
    pub fn normalization(&self) -> AffineMonoid {
        let generators = if self.cone.is_pointed() {
            hilbert_basis(&self.cone, &self.group).expect("cone of a positive monoid is pointed")
        } else {
            self.normalization_with_lineality()
        };
        AffineMonoid::new(self.rank, &generators).expect("same rank")
    }

    /// Projects along the lineality space `V`, takes the Hilbert basis of the (pointed)
    /// image, and lifts it back; together with a basis of `V ∩ gp(M)` and its negatives
    /// this generates `C ∩ gp(M)`.
    fn normalization_with_lineality(&self) -> Vec<Vector> {
        let lin = Lattice::span_of(self.rank, self.cone.lineality()).saturation();
        let lin_in_group: Vec<Vector> = {
            let both = lattice_intersection(&lin, &self.group);
            both.basis_vectors()
        };
        let w = kernel_lattice(lin.basis()).basis_vectors();
        let image = |x: &Vector| -> Vector { w.iter().map(|row| dot(row, x)).collect() };
        let group_basis = self.group.basis_vectors();
        let images: Vec<Vector> = group_basis.iter().map(image).collect();
        let (h, u) = hermite_normal_form(&IntegerMatrix::from_vectors(w.len(), &images));
        let image_lattice = Lattice::span_of(w.len(), &images);
        debug_assert_eq!(
            image_lattice.basis_vectors(),
            (0..image_lattice.rank()).map(|i| h.row(i).to_vec()).collect::<Vec<_>>()
        );
        let image_cone = Cone::from_generators(
            w.len(),
            &self.generators.iter().map(image).collect::<Vec<_>>(),
        )
        .expect("lengths agree");
        let lifts: Vec<Vector> = (0..image_lattice.rank())
            .map(|j| {
                let mut v = vec![BigInt::zero(); self.rank];
                for (coef, b) in u.row(j).iter().zip(&group_basis) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += coef * bi;
                    }
                }
                v
            })
            .collect();
        let mut out: Vec<Vector> = hilbert_basis(&image_cone, &image_lattice)
            .expect("image of the cone is pointed")
            .iter()
            .map(|h| {
                let c = image_lattice.coordinates(h).expect("in the image lattice");
                let mut v = vec![BigInt::zero(); self.rank];
                for (ci, l) in c.iter().zip(&lifts) {
                    for (vi, li) in v.iter_mut().zip(l) {
                        *vi += ci * li;
                    }
                }
                v
            })
            .collect();
        for b in lin_in_group {
            out.push(neg(&b));
            out.push(b);
        }
        out
    }

    pub fn is_normal(&self) -> Result<bool, MonoidError> {
        for g in &self.normalization().generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub(crate) fn neg(v: &[BigInt]) -> Vector {
    v.iter().map(|x| -x).collect()
}

pub(crate) fn sub(a: &[BigInt], b: &[BigInt]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn add(a: &[BigInt], b: &[BigInt]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn scale(c: &BigInt, a: &[BigInt]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

/// `A ∩ B` as the kernel of `Z^r ⊕ Z^s -> Z^n`, `(a, b) ↦ a - b` in lattice coordinates.
pub(crate) fn lattice_intersection(a: &Lattice, b: &Lattice) -> Lattice {
    let n = a.ambient();
    let mut cols: Vec<Vector> = a.basis_vectors();
    cols.extend(b.basis_vectors().iter().map(|v| neg(v)));
    if cols.is_empty() {
        return Lattice::zero(n);
    }
    let m = IntegerMatrix::from_vectors(n, &cols).transpose();
    let kernel = kernel_lattice(&m);
    let points: Vec<Vector> = kernel
        .basis_vectors()
        .iter()
        .map(|k| a.point(&k[..a.rank()]))
        .collect();
    Lattice::span_of(n, &points)
}

/// Memoized membership test for a positive monoid: `x ∈ M` iff `x = 0` or `x - g ∈ M`
/// for some generator `g`, searched only through points of `C ∩ gp(M)` of smaller
/// degree.
pub(crate) struct MembershipOracle<'a> {
    monoid: &'a AffineMonoid,
    lambda: Vector,
    memo: HashMap<Vector, bool>,
}

impl<'a> MembershipOracle<'a> {
    pub fn new(monoid: &'a AffineMonoid, lambda: Vector) -> Self {
        Self {
            monoid,
            lambda,
            memo: HashMap::new(),
        }
    }

    pub fn contains(&mut self, x: &[BigInt]) -> bool {
        if is_zero_vector(x) {
            return true;
        }
        if let Some(&known) = self.memo.get(x) {
            return known;
        }
        let result = dot(&self.lambda, x).is_positive()
            && self.monoid.cone.contains(x)
            && self.monoid.group.contains(x)
            && self
                .monoid
                .generators
                .iter()
                .any(|g| self.contains(&sub(x, g)));
        self.memo.insert(x.to_vec(), result);
        result
    }
}

/// All sums of `generators` of degree at most `bound`, including 0.
pub(crate) fn elements_up_to(generators: &[Vector], lambda: &[BigInt], bound: u64) -> BTreeSet<Vector> {
    let bound = BigInt::from(bound);
    let zero = vec![BigInt::zero(); lambda.len()];
    let mut seen: BTreeSet<Vector> = BTreeSet::new();
    seen.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = add(&x, g);
            if dot(lambda, &y) <= bound && !seen.contains(&y) {
                seen.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    seen
}

pub(crate) fn degree(lambda: &[BigInt], x: &[BigInt]) -> BigInt {
    dot(lambda, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn numerical_semigroup() {
        let m = AffineMonoid::from_ints(1, &[&[2], &[3]]).unwrap();
        assert_eq!(m.group_of_differences(), &Lattice::full(1));
        assert_eq!(m.units().rank(), 0);
        assert!(m.is_positive());
        assert_eq!(m.grading().unwrap(), vector(&[1]));
        assert!(m.contains(&vector(&[7])).unwrap());
        assert!(!m.contains(&vector(&[1])).unwrap());
        assert!(m.contains(&vector(&[0])).unwrap());
        assert_eq!(m.normalization().generators(), &[vector(&[1])]);
        assert!(!m.is_normal().unwrap());
    }

    #[test]
    fn integers_as_a_monoid() {
        let m = AffineMonoid::from_ints(1, &[&[1], &[-1]]).unwrap();
        assert_eq!(m.units(), Lattice::full(1));
        assert!(!m.is_positive());
        assert_eq!(m.grading(), Err(MonoidError::NotPositive));
        assert!(m.contains(&vector(&[-5])).unwrap());
        assert!(m.is_normal().unwrap());
    }

    #[test]
    fn gradings_are_positive_on_generators() {
        let m = AffineMonoid::from_ints(2, &[&[2, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(m.group_of_differences(), &Lattice::full(2));
        let lambda = m.grading().unwrap();
        for g in m.generators() {
            assert!(dot(&lambda, g) >= BigInt::one());
        }
        let orthant = AffineMonoid::from_ints(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(orthant.grading().unwrap(), vector(&[1, 1, 1]));
    }

    #[test]
    fn normalization_fills_in_lattice_points() {
        let m = AffineMonoid::from_ints(2, &[&[2, 0], &[0, 1], &[1, 1]]).unwrap();
        let n = m.normalization();
        assert_eq!(n.generators(), &[vector(&[0, 1]), vector(&[1, 0])]);
        assert!(!m.is_normal().unwrap());
        assert!(n.is_normal().unwrap());
        assert_eq!(n.normalization(), n);
    }

    #[test]
    fn normalization_with_units() {
        // halfplane x >= 0 generated with an index-2 lattice in the y direction
        let m = AffineMonoid::from_ints(2, &[&[0, 2], &[0, -2], &[1, 0], &[1, 1]]).unwrap();
        assert!(!m.is_positive());
        assert_eq!(m.units(), Lattice::span_of(2, &[vector(&[0, 2])]));
        let n = m.normalization();
        let n_gens: BTreeSet<Vector> = n.generators().iter().cloned().collect();
        assert!(n_gens.contains(&vector(&[0, 1])) || n_gens.contains(&vector(&[0, -1])));
        assert_eq!(n.units(), Lattice::span_of(2, &[vector(&[0, 1])]));
        assert_eq!(n.cone(), m.cone());
    }

    #[test]
    fn intersections_of_lattices() {
        let a = Lattice::span_of(2, &[vector(&[2, 0]), vector(&[0, 1])]);
        let b = Lattice::span_of(2, &[vector(&[1, 0]), vector(&[0, 3])]);
        assert_eq!(
            lattice_intersection(&a, &b),
            Lattice::span_of(2, &[vector(&[2, 0]), vector(&[0, 3])])
        );
    }
}
