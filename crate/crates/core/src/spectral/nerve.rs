use std::collections::HashMap;

use itertools::Itertools;

use crate::linalg::{IntegerMatrix, Lattice};
use crate::polyhedral::{Cone, Fan};

/// A tuple `i0 < ... < ip` of maximal cones with `σ_I` and `M(σ_I)`.
#[derive(Clone, Debug)]
pub struct NerveTuple {
    pub indices: Vec<usize>,
    pub cone: Cone,
    pub m: Lattice,
    /// For each position `j`, the index of `I` minus its `j`-th entry in the previous
    /// level and the inclusion `M(σ_J) -> M(σ_I)` in the stored bases.
    pub faces: Vec<(usize, IntegerMatrix)>,
}

impl NerveTuple {
    pub fn rank(&self) -> usize {
        self.m.rank()
    }
}

/// The nerve of the cover by maximal cones. Every tuple appears, since all cones of a
/// fan share the face `{0}`.
#[derive(Clone, Debug)]
pub struct Nerve {
    dim: usize,
    levels: Vec<Vec<NerveTuple>>,
}

impl Nerve {
    pub fn build(fan: &Fan) -> Self {
        let n = fan.max_cones().len();
        let mut lattices: HashMap<Cone, Lattice> = HashMap::new();
        let mut levels: Vec<Vec<NerveTuple>> = Vec::with_capacity(n);
        let mut previous: HashMap<Vec<usize>, usize> = HashMap::new();
        for p in 0..n {
            let mut level = Vec::new();
            let mut lookup = HashMap::new();
            for indices in (0..n).combinations(p + 1) {
                let cone = fan.intersection(&indices);
                let m = lattices
                    .entry(cone.clone())
                    .or_insert_with(|| cone.m_lattice())
                    .clone();
                let faces = if p == 0 {
                    Vec::new()
                } else {
                    (0..=p)
                        .map(|j| {
                            let mut sub = indices.clone();
                            sub.remove(j);
                            let k = previous[&sub];
                            let inclusion = levels[p - 1][k]
                                .m
                                .inclusion_matrix(&m)
                                .expect("a face has the larger perpendicular lattice");
                            (k, inclusion)
                        })
                        .collect()
                };
                lookup.insert(indices.clone(), level.len());
                level.push(NerveTuple {
                    indices,
                    cone,
                    m,
                    faces,
                });
            }
            levels.push(level);
            previous = lookup;
        }
        Self {
            dim: fan.dim(),
            levels,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of levels, i.e. the number of maximal cones.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// The `(p+1)`-tuples, lexicographically ordered.
    pub fn level(&self, p: usize) -> &[NerveTuple] {
        self.levels.get(p).map_or(&[], Vec::as_slice)
    }

    pub fn levels(&self) -> &[Vec<NerveTuple>] {
        &self.levels
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::catalog_fan;

    fn ranks(nerve: &Nerve) -> Vec<Vec<usize>> {
        nerve
            .levels()
            .iter()
            .map(|l| l.iter().map(NerveTuple::rank).collect())
            .collect()
    }

    #[test]
    fn projective_line() {
        let nerve = Nerve::build(&catalog_fan("projective_space(1)").unwrap());
        assert_eq!(ranks(&nerve), vec![vec![0, 0], vec![1]]);
    }

    #[test]
    fn projective_plane() {
        let nerve = Nerve::build(&catalog_fan("projective_space(2)").unwrap());
        assert_eq!(ranks(&nerve), vec![vec![0; 3], vec![1; 3], vec![2]]);
        assert_eq!(nerve.level(1)[0].faces.len(), 2);
    }

    #[test]
    fn single_cone() {
        let nerve = Nerve::build(&catalog_fan("affine_orthant(2)").unwrap());
        assert_eq!(nerve.len(), 1);
        assert_eq!(ranks(&nerve), vec![vec![0]]);
    }
}
