use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Cone, Fan, FanProvenance, PolyhedralError};
use crate::linalg::{dot, Vector};

/// A full-dimensional lattice polytope, stored by its vertices and facet inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Vector>,
    /// `(a, b)` with `<a, x> + b >= 0` on the polytope.
    facets: Vec<(Vector, BigInt)>,
}

impl LatticePolytope {
    /// Convex hull of the given points. Non-vertices are discarded; vertices keep their
    /// input order (first occurrence).
    pub fn new(dim: usize, points: &[Vector]) -> Result<Self, PolyhedralError> {
        if points.is_empty() {
            return Err(PolyhedralError::EmptyPolytope);
        }
        let lifted: Vec<Vector> = points
            .iter()
            .map(|p| {
                if p.len() != dim {
                    return Err(PolyhedralError::DimensionMismatch {
                        expected: dim,
                        found: p.len(),
                    });
                }
                let mut q = p.clone();
                q.push(BigInt::one());
                Ok(q)
            })
            .collect::<Result<_, _>>()?;
        let cone = Cone::from_generators(dim + 1, &lifted)?;
        if !cone.is_full_dimensional() {
            return Err(PolyhedralError::NotFullDimensional);
        }
        let mut vertices: Vec<Vector> = Vec::new();
        for (p, q) in points.iter().zip(&lifted) {
            if cone.rays().contains(q) && !vertices.contains(p) {
                vertices.push(p.clone());
            }
        }
        let facets = cone
            .facets()
            .iter()
            .map(|f| (f[..dim].to_vec(), f[dim].clone()))
            .collect();
        Ok(Self {
            dim,
            vertices,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn facets(&self) -> &[(Vector, BigInt)] {
        &self.facets
    }

    /// Whether `x` lies in the interior of the dilate `t P`.
    pub fn interior_of_dilate_contains(&self, t: &BigInt, x: &[BigInt]) -> bool {
        self.facets
            .iter()
            .all(|(a, b)| (dot(a, x) + t * b).is_positive())
    }

    /// Integer points in the interior of `t P`, in lexicographic order.
    pub fn interior_points_of_dilate(&self, t: u32) -> Vec<Vector> {
        let t_big = BigInt::from(t);
        let mut lo = vec![BigInt::zero(); self.dim];
        let mut hi = vec![BigInt::zero(); self.dim];
        for k in 0..self.dim {
            lo[k] = self.vertices.iter().map(|v| &v[k] * &t_big).min().expect("nonempty");
            hi[k] = self.vertices.iter().map(|v| &v[k] * &t_big).max().expect("nonempty");
        }
        let mut out = Vec::new();
        let mut x = lo.clone();
        loop {
            if self.interior_of_dilate_contains(&t_big, &x) {
                out.push(x.clone());
            }
            // odometer over the bounding box, last coordinate fastest
            let mut k = self.dim;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if x[k] < hi[k] {
                    x[k] += 1;
                    x[k + 1..].clone_from_slice(&lo[k + 1..]);
                    break;
                }
            }
        }
    }
}

/// The normal fan: one maximal cone per vertex `v`, the dual of the corner cone
/// `cone(w - v : w a vertex)`, in vertex order.
pub fn normal_fan(p: &LatticePolytope) -> Result<Fan, PolyhedralError> {
    let cones = p
        .vertices
        .iter()
        .map(|v| {
            let edges: Vec<Vector> = p
                .vertices
                .iter()
                .filter(|w| *w != v)
                .map(|w| w.iter().zip(v).map(|(a, b)| a - b).collect())
                .collect();
            Ok(Cone::from_generators(p.dim, &edges)?.dual())
        })
        .collect::<Result<Vec<_>, PolyhedralError>>()?;
    Ok(Fan::from_cones(p.dim, cones)?.with_provenance(FanProvenance::NormalFan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    fn polytope(dim: usize, pts: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::new(dim, &pts.iter().map(|p| vector(p)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn redundant_points_are_dropped() {
        let p = polytope(2, &[&[0, 0], &[1, 1], &[2, 0], &[0, 2], &[1, 0]]);
        assert_eq!(p.vertices(), &[vector(&[0, 0]), vector(&[2, 0]), vector(&[0, 2])]);
        assert_eq!(p.facets().len(), 3);
    }

    #[test]
    fn degenerate_polytopes_are_rejected() {
        let pts = vec![vector(&[0, 0]), vector(&[1, 1]), vector(&[2, 2])];
        assert_eq!(
            LatticePolytope::new(2, &pts).unwrap_err(),
            PolyhedralError::NotFullDimensional
        );
        assert_eq!(
            LatticePolytope::new(2, &[]).unwrap_err(),
            PolyhedralError::EmptyPolytope
        );
    }

    #[test]
    fn interior_points() {
        let tri = polytope(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(tri.interior_points_of_dilate(2).is_empty());
        assert_eq!(tri.interior_points_of_dilate(3), vec![vector(&[1, 1])]);
        let square = polytope(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(square.interior_points_of_dilate(1).is_empty());
        assert_eq!(square.interior_points_of_dilate(2), vec![vector(&[1, 1])]);
    }

    #[test]
    fn normal_fan_of_segment() {
        let f = normal_fan(&polytope(1, &[&[0], &[1]])).unwrap();
        assert_eq!(f.max_cones().len(), 2);
        assert_eq!(f.rays(), vec![vector(&[-1]), vector(&[1])]);
        assert!(f.is_complete());
    }

    #[test]
    fn normal_fan_of_triangle_is_p2() {
        let f = normal_fan(&polytope(2, &[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!(
            f.rays(),
            vec![vector(&[-1, -1]), vector(&[0, 1]), vector(&[1, 0])]
        );
        assert_eq!(f.max_cones()[0].rays(), &[vector(&[0, 1]), vector(&[1, 0])]);
        assert!(f.is_complete() && f.is_smooth());
        assert_eq!(f.provenance(), &FanProvenance::NormalFan);
    }

    #[test]
    fn normal_fan_of_square_has_quadrants() {
        let f = normal_fan(&polytope(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(f.max_cones().len(), 4);
        assert_eq!(f.rays().len(), 4);
        assert!(f.is_complete() && f.is_smooth());
    }
}
