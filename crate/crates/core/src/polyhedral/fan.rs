use std::collections::BTreeSet;

use super::{Cone, PolyhedralError};
use crate::linalg::{cokernel_structure, IntegerMatrix, Vector};

/// Where a fan came from. Carried along for reporting only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanProvenance {
    User,
    Catalog(String),
    NormalFan,
}

/// A validated finite rational fan.
///
/// The order of the maximal cones is fixed at construction; everything indexed by
/// tuples of maximal cones (Čech signs in particular) refers to it.
#[derive(Clone, Debug)]
pub struct Fan {
    dim: usize,
    max_cones: Vec<Cone>,
    cones: Vec<Cone>,
    provenance: FanProvenance,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.max_cones == other.max_cones
    }
}

impl Eq for Fan {}

impl Fan {
    /// Builds the fan whose maximal cones are generated by the given vectors.
    pub fn new(dim: usize, max_cone_generators: &[Vec<Vector>]) -> Result<Self, PolyhedralError> {
        let cones = max_cone_generators
            .iter()
            .map(|g| Cone::from_generators(dim, g))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_cones(dim, cones)
    }

    pub fn from_cones(dim: usize, max_cones: Vec<Cone>) -> Result<Self, PolyhedralError> {
        if max_cones.is_empty() {
            return Err(PolyhedralError::EmptyFan);
        }
        for (i, c) in max_cones.iter().enumerate() {
            if c.ambient() != dim {
                return Err(PolyhedralError::DimensionMismatch {
                    expected: dim,
                    found: c.ambient(),
                });
            }
            if !c.is_pointed() {
                return Err(PolyhedralError::NotStronglyConvex(i));
            }
        }
        let faces: Vec<Vec<Cone>> = max_cones.iter().map(Cone::faces).collect();
        for i in 0..max_cones.len() {
            for j in 0..max_cones.len() {
                if i != j && max_cones[j].contains_cone(&max_cones[i]) {
                    return Err(PolyhedralError::ContainedMaxCone { inner: i, outer: j });
                }
            }
        }
        for i in 0..max_cones.len() {
            for j in i + 1..max_cones.len() {
                let meet = max_cones[i].intersect(&max_cones[j])?;
                if !faces[i].contains(&meet) || !faces[j].contains(&meet) {
                    return Err(PolyhedralError::NotAFan(i, j));
                }
            }
        }
        let mut all: BTreeSet<(usize, Cone)> = BTreeSet::new();
        for f in faces.into_iter().flatten() {
            all.insert((f.dim(), f));
        }
        Ok(Self {
            dim,
            max_cones,
            cones: all.into_iter().map(|(_, c)| c).collect(),
            provenance: FanProvenance::User,
        })
    }

    pub fn with_provenance(mut self, provenance: FanProvenance) -> Self {
        self.provenance = provenance;
        self
    }

    pub fn provenance(&self) -> &FanProvenance {
        &self.provenance
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    /// Every cone of the fan, sorted by dimension.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn cones_of_dim(&self, k: usize) -> impl Iterator<Item = &Cone> {
        self.cones.iter().filter(move |c| c.dim() == k)
    }

    /// Number of cones of each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim).map(|k| self.cones_of_dim(k).count()).collect()
    }

    /// The rays of the fan, sorted.
    pub fn rays(&self) -> Vec<Vector> {
        let set: BTreeSet<Vector> = self
            .max_cones
            .iter()
            .flat_map(|c| c.rays().iter().cloned())
            .collect();
        set.into_iter().collect()
    }

    /// `σ_{i0} ∩ ... ∩ σ_{ip}`: the face of the first cone spanned by its rays lying in
    /// all the others.
    pub fn intersection(&self, indices: &[usize]) -> Cone {
        let Some((&first, rest)) = indices.split_first() else {
            return Cone::zero(self.dim);
        };
        let base = &self.max_cones[first];
        let keep: Vec<usize> = (0..base.rays().len())
            .filter(|&r| rest.iter().all(|&j| self.max_cones[j].contains(&base.rays()[r])))
            .collect();
        base.face_from_rays(&keep)
    }

    pub fn is_complete(&self) -> bool {
        if self.dim == 0 {
            return true;
        }
        if self.max_cones.iter().any(|c| c.dim() != self.dim) {
            return false;
        }
        self.cones_of_dim(self.dim - 1).all(|wall| {
            self.max_cones
                .iter()
                .filter(|c| c.contains_cone(wall))
                .count()
                == 2
        })
    }

    pub fn is_simplicial(&self) -> bool {
        self.max_cones.iter().all(Cone::is_simplicial)
    }

    /// Simplicial, and the rays of every maximal cone extend to a basis of `Z^d`.
    pub fn is_smooth(&self) -> bool {
        self.is_simplicial() && self.max_cones.iter().all(cone_is_unimodular)
    }

    /// Whether `other` is a subfan: each of its maximal cones is a cone of `self`.
    pub fn contains_fan(&self, other: &Fan) -> bool {
        self.dim == other.dim && other.max_cones.iter().all(|c| self.cones.contains(c))
    }
}

fn cone_is_unimodular(c: &Cone) -> bool {
    if c.rays().is_empty() {
        return true;
    }
    let columns = IntegerMatrix::from_vectors(c.ambient(), c.rays()).transpose();
    cokernel_structure(&columns).torsion.is_empty()
}
