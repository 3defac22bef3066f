//! Incremental double description over the integers.
//!
//! Starting from all of `Q^d` (lineality = the unit vectors, no rays), halfspaces
//! `<a, u> >= 0` are inserted one at a time. Adjacency of extreme rays is decided by
//! the algebraic rank test on the constraints tight at both rays.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::rational::{primitive_from_rational, project_orthogonal};
use crate::linalg::{dot, is_zero_vector, primitive, IntegerMatrix, Lattice, Vector};

/// Generators of `{u : <a_i, u> >= 0 for all i}`.
///
/// `lineality` is the canonical (saturated Hermite) basis of the lineality space;
/// `rays` are the extreme rays projected orthogonally to the lineality space, primitive
/// and sorted. Together they form a canonical minimal generating system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Generators {
    pub lineality: Vec<Vector>,
    pub rays: Vec<Vector>,
}

pub(crate) fn double_description(dim: usize, constraints: &[Vector]) -> Generators {
    let mut lineality: Vec<Vector> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Vector> = Vec::new();
    let mut inserted: Vec<Vector> = Vec::new();

    for a in constraints {
        assert_eq!(a.len(), dim, "constraint length must equal the ambient dimension");
        if is_zero_vector(a) {
            continue;
        }
        if let Some(k) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l = lineality.remove(k);
            let mut al = dot(a, &l);
            if al.is_negative() {
                l = l.iter().map(|x| -x).collect();
                al = -al;
            }
            for v in lineality.iter_mut().chain(rays.iter_mut()) {
                let av = dot(a, v);
                if !av.is_zero() {
                    let combined: Vector = v
                        .iter()
                        .zip(&l)
                        .map(|(x, y)| &al * x - &av * y)
                        .collect();
                    *v = primitive(&combined);
                }
            }
            rays.push(l);
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
            let lin_dim = lineality.len();
            let mut next: Vec<Vector> = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (p, sp) in rays.iter().zip(&values).filter(|(_, v)| v.is_positive()) {
                for (n, sn) in rays.iter().zip(&values).filter(|(_, v)| v.is_negative()) {
                    if adjacent(p, n, &inserted, dim, lin_dim) {
                        let combined: Vector =
                            n.iter().zip(p).map(|(x, y)| sp * x - sn * y).collect();
                        next.push(primitive(&combined));
                    }
                }
            }
            rays = next;
        }
        inserted.push(a.clone());
    }
    canonicalize(dim, lineality, rays)
}

fn adjacent(p: &[BigInt], n: &[BigInt], inserted: &[Vector], dim: usize, lin_dim: usize) -> bool {
    let Some(target) = dim.checked_sub(lin_dim + 2) else {
        return false;
    };
    let common: Vec<Vector> = inserted
        .iter()
        .filter(|c| dot(c, p).is_zero() && dot(c, n).is_zero())
        .cloned()
        .collect();
    if common.len() < target {
        return false;
    }
    IntegerMatrix::from_vectors(dim, &common).rank() == target
}

pub(crate) fn canonicalize(dim: usize, lineality: Vec<Vector>, rays: Vec<Vector>) -> Generators {
    let lin = Lattice::span_of(dim, &lineality).saturation();
    let lin_basis = lin.basis_vectors();
    let mut out: BTreeSet<Vector> = BTreeSet::new();
    for r in rays {
        let projected = primitive_from_rational(&project_orthogonal(&r, &lin_basis));
        if !is_zero_vector(&projected) {
            out.insert(projected);
        }
    }
    Generators {
        lineality: lin_basis,
        rays: out.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn orthant_is_self_dual() {
        let g = double_description(2, &[vector(&[1, 0]), vector(&[0, 1])]);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays, vec![vector(&[0, 1]), vector(&[1, 0])]);
    }

    #[test]
    fn halfplane() {
        let g = double_description(2, &[vector(&[1, 0])]);
        assert_eq!(g.lineality, vec![vector(&[0, 1])]);
        assert_eq!(g.rays, vec![vector(&[1, 0])]);
    }

    #[test]
    fn no_constraints_gives_everything() {
        let g = double_description(3, &[]);
        assert_eq!(g.lineality.len(), 3);
        assert!(g.rays.is_empty());
    }

    #[test]
    fn square_pyramid_has_four_rays() {
        // cone over the square [-1,1]^2 at height 1: x3 >= |x1|, x3 >= |x2|
        let cons = vec![
            vector(&[1, 0, 1]),
            vector(&[-1, 0, 1]),
            vector(&[0, 1, 1]),
            vector(&[0, -1, 1]),
        ];
        let g = double_description(3, &cons);
        assert!(g.lineality.is_empty());
        assert_eq!(g.rays.len(), 4);
        for r in &g.rays {
            assert_eq!(r[2], BigInt::from(1));
        }
    }

    #[test]
    fn contradictory_halfspaces_leave_a_line() {
        let g = double_description(2, &[vector(&[1, 0]), vector(&[-1, 0])]);
        assert_eq!(g.lineality, vec![vector(&[0, 1])]);
        assert!(g.rays.is_empty());
    }
}
