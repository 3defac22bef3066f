use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::dd::{double_description, Generators};
use super::PolyhedralError;
use crate::linalg::{dot, kernel_lattice, IntegerMatrix, Lattice, Vector};

/// A rational polyhedral cone in `R^ambient`, held in both representations.
///
/// `rays`/`lineality` generate the cone; `facets`/`equations` cut it out as
/// `{x : <f, x> >= 0, <e, x> = 0}`. Both pairs are canonical (see
/// [`double_description`]), so structural equality is equality of cones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cone {
    ambient: usize,
    rays: Vec<Vector>,
    lineality: Vec<Vector>,
    facets: Vec<Vector>,
    equations: Vec<Vector>,
}

/// A face of a cone, recorded by the indices of the cone's rays it contains.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FaceRays {
    pub dim: usize,
    pub rays: Vec<usize>,
}

impl Cone {
    pub fn from_generators(ambient: usize, generators: &[Vector]) -> Result<Self, PolyhedralError> {
        check_lengths(ambient, generators)?;
        let h = double_description(ambient, generators);
        Ok(Self::from_h(ambient, h))
    }

    /// `{x : <f, x> >= 0 for f in inequalities, <e, x> = 0 for e in equations}`.
    pub fn from_inequalities(
        ambient: usize,
        inequalities: &[Vector],
        equations: &[Vector],
    ) -> Result<Self, PolyhedralError> {
        check_lengths(ambient, inequalities)?;
        check_lengths(ambient, equations)?;
        let mut cons = inequalities.to_vec();
        for e in equations {
            cons.push(e.clone());
            cons.push(e.iter().map(|x| -x).collect());
        }
        let v = double_description(ambient, &cons);
        let mut gens = v.rays.clone();
        for l in &v.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        let h = double_description(ambient, &gens);
        Ok(Self {
            ambient,
            rays: v.rays,
            lineality: v.lineality,
            facets: h.rays,
            equations: h.lineality,
        })
    }

    fn from_h(ambient: usize, h: Generators) -> Self {
        let mut cons = h.rays.clone();
        for e in &h.lineality {
            cons.push(e.clone());
            cons.push(e.iter().map(|x| -x).collect());
        }
        let v = double_description(ambient, &cons);
        Self {
            ambient,
            rays: v.rays,
            lineality: v.lineality,
            facets: h.rays,
            equations: h.lineality,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self::from_generators(ambient, &[]).expect("no generators to check")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Extreme rays (primitive; orthogonal to the lineality space when there is one).
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vector] {
        &self.lineality
    }

    pub fn facets(&self) -> &[Vector] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vector] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.equations.len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| !dot(f, x).is_negative())
    }

    pub fn in_relative_interior(&self, x: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, x).is_zero())
            && self.facets.iter().all(|f| dot(f, x).is_positive())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| {
                self.contains(l) && self.contains(&l.iter().map(|x| -x).collect::<Vec<_>>())
            })
    }

    /// `{u : <u, x> >= 0 for all x in self}`.
    pub fn dual(&self) -> Cone {
        Cone {
            ambient: self.ambient,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, PolyhedralError> {
        if self.ambient != other.ambient {
            return Err(PolyhedralError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        let ineqs: Vec<Vector> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<Vector> = self
            .equations
            .iter()
            .chain(&other.equations)
            .cloned()
            .collect();
        Cone::from_inequalities(self.ambient, &ineqs, &eqs)
    }

    /// `M(σ) = σ^⊥ ∩ Z^d`, the saturated kernel of the generator matrix.
    /// Its rank is `d - dim σ`.
    pub fn m_lattice(&self) -> Lattice {
        let mut gens = self.rays.clone();
        gens.extend(self.lineality.iter().cloned());
        kernel_lattice(&IntegerMatrix::from_vectors(self.ambient, &gens))
    }

    /// Every face (from the minimal face up to the cone itself) by ray indices,
    /// sorted by dimension and then by ray set.
    pub fn face_rays(&self) -> Vec<FaceRays> {
        let tight: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| {
                (0..self.rays.len())
                    .filter(|&i| dot(f, &self.rays[i]).is_zero())
                    .collect()
            })
            .collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
        let mut queue: Vec<BTreeSet<usize>> = vec![(0..self.rays.len()).collect()];
        seen.insert(queue[0].clone());
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            for t in &tight {
                let next: BTreeSet<usize> = current.intersection(t).copied().collect();
                if seen.insert(next.clone()) {
                    queue.push(next);
                }
            }
        }
        let mut faces: Vec<FaceRays> = seen
            .into_iter()
            .map(|set| {
                let rays: Vec<usize> = set.into_iter().collect();
                FaceRays {
                    dim: self.span_dim(&rays),
                    rays,
                }
            })
            .collect();
        faces.sort();
        faces
    }

    pub fn faces(&self) -> Vec<Cone> {
        self.face_rays()
            .iter()
            .map(|f| self.face_from_rays(&f.rays))
            .collect()
    }

    pub fn face_from_rays(&self, ray_indices: &[usize]) -> Cone {
        let mut gens: Vec<Vector> = ray_indices.iter().map(|&i| self.rays[i].clone()).collect();
        for l in &self.lineality {
            gens.push(l.clone());
            gens.push(l.iter().map(|x| -x).collect());
        }
        Cone::from_generators(self.ambient, &gens).expect("rays share the ambient dimension")
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        other.contains_cone(self) && other.faces().iter().any(|f| f == self)
    }

    fn span_dim(&self, ray_indices: &[usize]) -> usize {
        let mut gens: Vec<Vector> = ray_indices.iter().map(|&i| self.rays[i].clone()).collect();
        gens.extend(self.lineality.iter().cloned());
        if gens.is_empty() {
            return 0;
        }
        IntegerMatrix::from_vectors(self.ambient, &gens).rank()
    }
}

fn check_lengths(ambient: usize, vectors: &[Vector]) -> Result<(), PolyhedralError> {
    match vectors.iter().find(|v| v.len() != ambient) {
        Some(v) => Err(PolyhedralError::DimensionMismatch {
            expected: ambient,
            found: v.len(),
        }),
        None => Ok(()),
    }
}
