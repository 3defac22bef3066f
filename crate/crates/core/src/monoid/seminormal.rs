//! Seminormalization through the faces of the cone: `sn(M)` is the union over faces
//! `F` of `gp(M ∩ F) ∩ relint F`, where `M ∩ F` is generated by the generators of `M`
//! lying on `F` (a sum of elements of the cone lies on a face only if every summand
//! does).

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::hilbert::{parallelepiped_points, triangulate, Frame};
use super::{degree, elements_up_to, AffineMonoid, MonoidError};
use crate::linalg::{dot, is_zero_vector, primitive, Lattice, Vector};
use crate::polyhedral::Cone;

#[derive(Clone, Debug)]
pub(crate) struct FaceData {
    pub cone: Cone,
    /// Generators of `M` lying on the face.
    pub generators: Vec<Vector>,
    /// `gp(M ∩ F)`.
    pub group: Lattice,
}

impl FaceData {
    /// For each simplex of a triangulation of the face, elements of `M` spanning its
    /// rays: the lowest-degree generator on each ray.
    pub fn simplices(&self, lambda: &[BigInt]) -> Vec<Vec<Vector>> {
        triangulate(&self.cone)
            .into_iter()
            .map(|simplex| {
                simplex
                    .iter()
                    .map(|ray| {
                        self.generators
                            .iter()
                            .filter(|g| primitive(g) == *ray)
                            .min_by_key(|g| (degree(lambda, g), (*g).clone()))
                            .expect("every ray of the cone carries a generator")
                            .clone()
                    })
                    .collect()
            })
            .collect()
    }

    /// Points `sum λ_i r_i ∈ gp(M ∩ F)` over every simplex, with `λ` in `[0,1)^k`
    /// (or `[0,1]^k` when `closed`).
    pub fn parallelepiped_points(&self, lambda: &[BigInt], closed: bool) -> BTreeSet<Vector> {
        let frame = Frame::new(&self.cone, &self.group);
        let mut out = BTreeSet::new();
        for simplex in self.simplices(lambda) {
            let coords: Vec<Vector> = simplex
                .iter()
                .map(|r| frame.to_coords(r).expect("generator lies in gp(M ∩ F)"))
                .collect();
            for p in parallelepiped_points(&coords, closed) {
                out.insert(frame.to_ambient(&p));
            }
        }
        out
    }
}

impl AffineMonoid {
    pub(crate) fn face_data(&self) -> &[FaceData] {
        self.faces.get_or_init(|| {
            self.cone
                .faces()
                .into_iter()
                .map(|cone| {
                    let generators: Vec<Vector> = self
                        .generators
                        .iter()
                        .filter(|g| cone.contains(g))
                        .cloned()
                        .collect();
                    let group = Lattice::span_of(self.rank, &generators);
                    FaceData {
                        cone,
                        generators,
                        group,
                    }
                })
                .collect()
        })
    }

    /// The face whose relative interior contains `x`, if `x ∈ C`.
    pub(crate) fn carrier_face(&self, x: &[BigInt]) -> Option<&FaceData> {
        self.face_data()
            .iter()
            .find(|f| f.cone.in_relative_interior(x))
    }

    pub fn seminormal_contains(&self, x: &[BigInt]) -> Result<bool, MonoidError> {
        if x.len() != self.rank {
            return Err(MonoidError::DimensionMismatch {
                expected: self.rank,
                found: x.len(),
            });
        }
        Ok(match self.carrier_face(x) {
            Some(face) => face.group.contains(x),
            None => false,
        })
    }

    /// `sn(M)`, by its minimal generating set.
    ///
    /// Every `x ∈ relint F ∩ gp(M ∩ F)` lying in a simplex `Δ` of a triangulation of `F`
    /// with rays `r_i ∈ M` is `p + sum n_i r_i`, where `p` is a point of the closed
    /// parallelepiped of `Δ` lying in `relint F` (take `λ_i` in `(0, 1]` on the support
    /// of `x`). So those points together with the generators of `M` generate `sn(M)`.
    pub fn seminormalization(&self) -> Result<AffineMonoid, MonoidError> {
        let lambda = self.grading()?;
        let mut candidates: BTreeSet<Vector> = self.generators.iter().cloned().collect();
        for face in self.face_data() {
            if face.cone.dim() == 0 {
                continue;
            }
            for p in face.parallelepiped_points(&lambda, true) {
                if !is_zero_vector(&p) && face.cone.in_relative_interior(&p) {
                    candidates.insert(p);
                }
            }
        }
        let candidates: Vec<Vector> = candidates.into_iter().collect();
        let mut minimal = Vec::new();
        for x in &candidates {
            let mut reducible = false;
            for y in &candidates {
                if y == x {
                    continue;
                }
                let diff = super::sub(x, y);
                if !is_zero_vector(&diff) && self.seminormal_contains(&diff)? {
                    reducible = true;
                    break;
                }
            }
            if !reducible {
                minimal.push(x.clone());
            }
        }
        AffineMonoid::new(self.rank, &minimal)
    }

    /// Whether `sn(M) = M`.
    ///
    /// Also checks the definition directly: no `x ∈ n(M) \ M` of degree at most
    /// `bound` may have `2x, 3x ∈ M` when the answer is yes.
    pub fn is_seminormal(&self, bound: u64) -> Result<bool, MonoidError> {
        let sn = self.seminormalization()?;
        let mut answer = true;
        for g in sn.generators() {
            if !self.contains(g)? {
                answer = false;
                break;
            }
        }
        if answer {
            let lambda = self.grading()?;
            let normal = self.normalization();
            let in_m = elements_up_to(&self.generators, &lambda, 3 * bound);
            for x in elements_up_to(normal.generators(), &lambda, bound) {
                let two: Vector = x.iter().map(|v| v * 2).collect();
                let three: Vector = x.iter().map(|v| v * 3).collect();
                if !in_m.contains(&x) && in_m.contains(&two) && in_m.contains(&three) {
                    return Err(MonoidError::InconsistentSeminormality(
                        x.iter().map(ToString::to_string).collect(),
                    ));
                }
            }
        }
        Ok(answer)
    }

    /// Smallest `c0` such that `c x ∈ M` for every integer `c >= c0`, for `x ∈ sn(M)`.
    ///
    /// Uses the conductor element `m` of the face carrying `x`: once `c x - m ∈ F`,
    /// `c x ∈ m + n(M ∩ F) ⊆ M`. Multiples below that threshold are tested directly.
    pub fn eventual_multiple_threshold(&self, x: &[BigInt], bound: u64) -> Result<Option<u64>, MonoidError> {
        if !self.seminormal_contains(x)? {
            return Ok(None);
        }
        if is_zero_vector(x) {
            return Ok(Some(1));
        }
        let face = self.carrier_face(x).expect("x lies in the cone");
        let cert = self.conductor_element(&face.cone, bound)?;
        let mut threshold = BigInt::from(1);
        for f in face.cone.facets() {
            let fx = dot(f, x);
            let fm = dot(f, &cert.element);
            // c * fx >= fm, fx > 0 in the relative interior
            let c = num_integer::Integer::div_ceil(&fm, &fx);
            if c > threshold {
                threshold = c;
            }
        }
        let threshold: u64 = threshold.try_into().expect("small threshold");
        let mut c0 = threshold;
        for c in (1..threshold).rev() {
            let cx: Vector = x.iter().map(|v| v * BigInt::from(c)).collect();
            if self.contains(&cx)? {
                c0 = c;
            } else {
                break;
            }
        }
        Ok(Some(c0.max(1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn numerical_semigroup() {
        let m = AffineMonoid::from_ints(1, &[&[2], &[3]]).unwrap();
        assert!(m.seminormal_contains(&vector(&[1])).unwrap());
        assert_eq!(m.seminormalization().unwrap().generators(), &[vector(&[1])]);
        assert!(!m.is_seminormal(10).unwrap());
        assert_eq!(m.eventual_multiple_threshold(&vector(&[1]), 20).unwrap(), Some(2));
    }

    #[test]
    fn seminormal_but_not_normal() {
        let m = AffineMonoid::from_ints(2, &[&[2, 0], &[0, 1], &[1, 1]]).unwrap();
        assert!(!m.seminormal_contains(&vector(&[1, 0])).unwrap());
        assert_eq!(m.seminormalization().unwrap(), m);
        assert!(m.is_seminormal(10).unwrap());
        assert!(!m.is_normal().unwrap());
    }

    #[test]
    fn seminormalization_adds_axis_point() {
        let m = AffineMonoid::from_ints(2, &[&[2, 0], &[3, 0], &[0, 1], &[1, 1]]).unwrap();
        let sn = m.seminormalization().unwrap();
        assert_eq!(sn.generators(), &[vector(&[0, 1]), vector(&[1, 0])]);
        assert!(!m.is_seminormal(10).unwrap());
        assert_eq!(sn.seminormalization().unwrap(), sn);
    }

    #[test]
    fn cusp_in_the_interior() {
        // x-axis face is ⟨2⟩ with gp 2Z, but (1, 1) and (1, 2) push odd points into the
        // interior: gp of the whole monoid is Z^2
        let m = AffineMonoid::from_ints(2, &[&[2, 0], &[0, 1], &[1, 2], &[1, 3]]).unwrap();
        let sn = m.seminormalization().unwrap();
        assert!(sn.contains(&vector(&[1, 1])).unwrap());
        assert!(!sn.contains(&vector(&[1, 0])).unwrap());
        assert!(m.seminormal_contains(&vector(&[1, 1])).unwrap());
        assert!(!m.contains(&vector(&[1, 1])).unwrap());
        assert_eq!(sn.seminormalization().unwrap(), sn);
    }

    #[test]
    fn face_data_of_orthant() {
        let m = AffineMonoid::from_ints(2, &[&[1, 0], &[0, 1]]).unwrap();
        let faces = m.face_data();
        assert_eq!(faces.len(), 4);
        assert_eq!(faces[0].generators.len(), 0);
        assert!(faces.iter().all(|f| f.group.rank() == f.cone.dim()));
    }
}
