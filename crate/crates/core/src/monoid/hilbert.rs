//! Triangulations, fundamental parallelepipeds and Hilbert bases.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::MonoidError;
use crate::linalg::rational::solve_square;
use crate::linalg::{dot, kernel_lattice, IntegerMatrix, Lattice, Vector};
use crate::polyhedral::Cone;

/// A sublattice `L' = L ∩ span(C)` together with `C` written in coordinates of `L'`,
/// where it is full-dimensional.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub lattice: Lattice,
    pub cone: Cone,
}

impl Frame {
    pub fn new(cone: &Cone, lattice: &Lattice) -> Self {
        let mut basis = lattice.basis_vectors();
        loop {
            let k = basis.len();
            let pull = |rows: &[Vector]| -> Vec<Vector> {
                rows.iter()
                    .map(|f| basis.iter().map(|b| dot(f, b)).collect())
                    .collect()
            };
            let coords = Cone::from_inequalities(k, &pull(cone.facets()), &pull(cone.equations()))
                .expect("lengths agree by construction");
            if coords.is_full_dimensional() {
                let lattice = Lattice::span_of(cone.ambient(), &basis);
                // recompute the cone in the canonical basis of the lattice
                let basis = lattice.basis_vectors();
                let pull = |rows: &[Vector]| -> Vec<Vector> {
                    rows.iter()
                        .map(|f| basis.iter().map(|b| dot(f, b)).collect())
                        .collect()
                };
                let cone = Cone::from_inequalities(basis.len(), &pull(cone.facets()), &[])
                    .expect("lengths agree by construction");
                return Self { lattice, cone };
            }
            let kernel = kernel_lattice(&IntegerMatrix::from_vectors(k, coords.equations()));
            basis = kernel
                .basis_vectors()
                .iter()
                .map(|c| {
                    let mut v = vec![BigInt::zero(); cone.ambient()];
                    for (ci, b) in c.iter().zip(&basis) {
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi += ci * bi;
                        }
                    }
                    v
                })
                .collect();
        }
    }

    pub fn to_ambient(&self, coords: &[BigInt]) -> Vector {
        self.lattice.point(coords)
    }

    pub fn to_coords(&self, x: &[BigInt]) -> Option<Vector> {
        self.lattice.coordinates(x)
    }
}

/// Pulling triangulation of a pointed cone: simplices given by their primitive rays.
pub(crate) fn triangulate(cone: &Cone) -> Vec<Vec<Vector>> {
    if cone.rays().len() == cone.dim() {
        return vec![cone.rays().to_vec()];
    }
    let apex = cone.rays()[0].clone();
    let mut out = Vec::new();
    for face in cone.face_rays() {
        if face.dim + 1 != cone.dim() || face.rays.contains(&0) {
            continue;
        }
        for mut simplex in triangulate(&cone.face_from_rays(&face.rays)) {
            simplex.push(apex.clone());
            out.push(simplex);
        }
    }
    out
}

/// Integer points `sum λ_i r_i` with every `λ_i` in `[0, 1)` (or `[0, 1]` when
/// `closed`), for linearly independent `r_1, ..., r_k` in `Z^k`.
pub(crate) fn parallelepiped_points(rays: &[Vector], closed: bool) -> Vec<Vector> {
    let k = rays.len();
    if k == 0 {
        return vec![Vec::new()];
    }
    // columns are the rays
    let a = IntegerMatrix::from_vectors(k, rays).transpose();
    let det = a.determinant().expect("square");
    assert!(!det.is_zero(), "simplex rays must be independent");
    // adj = det * A^{-1}, so that λ = adj x / det
    let mut adj = IntegerMatrix::zeros(k, k);
    for j in 0..k {
        let mut e = vec![BigInt::zero(); k];
        e[j] = BigInt::from(1);
        let col = solve_square(&a, &e).expect("nonsingular");
        for (i, v) in col.into_iter().enumerate() {
            adj.set(i, j, (v * BigRational::from_integer(det.clone())).to_integer());
        }
    }
    if det.is_negative() {
        adj = adj.scaled(&BigInt::from(-1));
    }
    let vol = det.abs();

    let mut lo = vec![BigInt::zero(); k];
    let mut hi = vec![BigInt::zero(); k];
    for r in rays {
        for j in 0..k {
            if r[j].is_negative() {
                lo[j] += &r[j];
            } else {
                hi[j] += &r[j];
            }
        }
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        let lam = adj.apply(&x);
        if lam
            .iter()
            .all(|l| !l.is_negative() && if closed { *l <= vol } else { *l < vol })
        {
            out.push(x.clone());
        }
        let mut j = k;
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            if x[j] < hi[j] {
                x[j] += 1;
                x[j + 1..].clone_from_slice(&lo[j + 1..]);
                break;
            }
        }
    }
}

/// Hilbert basis of a pointed full-dimensional cone in `Z^k`, sorted.
pub(crate) fn hilbert_basis_full(cone: &Cone) -> Vec<Vector> {
    let mut candidates: BTreeSet<Vector> = cone.rays().iter().cloned().collect();
    for simplex in triangulate(cone) {
        for p in parallelepiped_points(&simplex, false) {
            if p.iter().any(|x| !x.is_zero()) {
                candidates.insert(p);
            }
        }
    }
    let candidates: Vec<Vector> = candidates.into_iter().collect();
    candidates
        .iter()
        .filter(|x| {
            !candidates.iter().any(|h| {
                h != *x && cone.contains(&x.iter().zip(h).map(|(a, b)| a - b).collect::<Vec<_>>())
            })
        })
        .cloned()
        .collect()
}

/// The unique minimal generating set of the monoid `C ∩ L`, sorted.
pub fn hilbert_basis(cone: &Cone, lattice: &Lattice) -> Result<Vec<Vector>, MonoidError> {
    if lattice.ambient() != cone.ambient() {
        return Err(MonoidError::DimensionMismatch {
            expected: cone.ambient(),
            found: lattice.ambient(),
        });
    }
    if !cone.is_pointed() {
        return Err(MonoidError::NotPointed);
    }
    let frame = Frame::new(cone, lattice);
    let mut out: Vec<Vector> = hilbert_basis_full(&frame.cone)
        .iter()
        .map(|c| frame.to_ambient(c))
        .collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    fn cone(gens: &[&[i64]]) -> Cone {
        Cone::from_generators(gens[0].len(), &gens.iter().map(|g| vector(g)).collect::<Vec<_>>())
            .unwrap()
    }

    #[test]
    fn orthant() {
        let hb = hilbert_basis(&cone(&[&[1, 0], &[0, 1]]), &Lattice::full(2)).unwrap();
        assert_eq!(hb, vec![vector(&[0, 1]), vector(&[1, 0])]);
    }

    #[test]
    fn skew_cones() {
        for k in 1..=5 {
            let hb = hilbert_basis(&cone(&[&[1, 0], &[1, k]]), &Lattice::full(2)).unwrap();
            let expected: Vec<Vector> = (0..=k).map(|i| vector(&[1, i])).collect();
            assert_eq!(hb, expected);
        }
    }

    #[test]
    fn sublattice_and_lower_dimension() {
        // ray (1,1) inside the even lattice
        let even = Lattice::span_of(2, &[vector(&[2, 0]), vector(&[0, 2])]);
        assert_eq!(hilbert_basis(&cone(&[&[1, 1]]), &even).unwrap(), vec![vector(&[2, 2])]);
        // the cone meets the lattice's span only at the origin
        let line = Lattice::span_of(2, &[vector(&[0, 1])]);
        assert!(hilbert_basis(&cone(&[&[1, 0], &[1, 1]]), &line).unwrap().is_empty());
    }

    #[test]
    fn non_pointed_is_rejected() {
        let halfplane = cone(&[&[1, 0], &[0, 1], &[0, -1]]);
        assert_eq!(
            hilbert_basis(&halfplane, &Lattice::full(2)),
            Err(MonoidError::NotPointed)
        );
    }

    #[test]
    fn three_dimensional_non_simplicial() {
        // cone over the unit square at height 1
        let c = cone(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        assert_eq!(triangulate(&c).len(), 2);
        assert_eq!(hilbert_basis(&c, &Lattice::full(3)).unwrap().len(), 4);
        // simplicial cone of index 2 with an extra interior generator
        let reeve = cone(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let hb = hilbert_basis(&reeve, &Lattice::full(3)).unwrap();
        assert!(hb.contains(&vector(&[1, 1, 1])));
    }

    #[test]
    fn parallelepiped_counts_match_volume() {
        let rays = vec![vector(&[1, 0]), vector(&[1, 3])];
        assert_eq!(parallelepiped_points(&rays, false).len(), 3);
        let rays = vec![vector(&[2, 1]), vector(&[-1, 2])];
        assert_eq!(parallelepiped_points(&rays, false).len(), 5);
    }
}
