use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{hermite_normal_form, smith_normal_form, IntegerMatrix, LinalgError, Vector};

/// A subgroup of `Z^ambient`, stored by a canonical basis.
///
/// The basis rows are the nonzero rows of the Hermite normal form of any generating
/// set, so two lattices are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: IntegerMatrix,
}

impl Lattice {
    /// The subgroup generated by the rows of `generators`.
    pub fn span(generators: &IntegerMatrix) -> Self {
        let (h, _) = hermite_normal_form(generators);
        let r = h.nonzero_row_count();
        let rows: Vec<Vector> = (0..r).map(|i| h.row(i).to_vec()).collect();
        Self {
            ambient: generators.cols(),
            basis: IntegerMatrix::from_vectors(generators.cols(), &rows),
        }
    }

    pub fn span_of(ambient: usize, generators: &[Vector]) -> Self {
        Self::span(&IntegerMatrix::from_vectors(ambient, generators))
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: IntegerMatrix::identity(ambient),
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: IntegerMatrix::zeros(0, ambient),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.row_vectors()
    }

    /// Coordinates of `v` in the stored basis, or `None` when `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient);
        let mut residual = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for k in 0..self.rank() {
            let row = self.basis.row(k);
            let p = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("basis rows are nonzero");
            let (q, r) = residual[p].div_rem(&row[p]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (res, b) in residual.iter_mut().zip(row) {
                    *res -= &q * b;
                }
            }
            coords.push(q);
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// The vector with the given coordinates in the stored basis.
    pub fn point(&self, coords: &[BigInt]) -> Vector {
        assert_eq!(coords.len(), self.rank());
        let mut out = vec![BigInt::zero(); self.ambient];
        for (c, row) in coords.iter().zip(self.basis.row_vectors()) {
            for (o, b) in out.iter_mut().zip(row) {
                *o += c * b;
            }
        }
        out
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        self.ambient == other.ambient
            && (0..self.rank()).all(|i| other.contains(self.basis.row(i)))
    }

    /// Matrix of the inclusion `self -> other` in the stored bases
    /// (`other.rank() x self.rank()`), or `None` if `self` is not contained in `other`.
    pub fn inclusion_matrix(&self, other: &Lattice) -> Option<IntegerMatrix> {
        let mut m = IntegerMatrix::zeros(other.rank(), self.rank());
        for j in 0..self.rank() {
            let c = other.coordinates(self.basis.row(j))?;
            for (i, x) in c.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Some(m)
    }

    /// `Z^ambient ∩ (Q ⊗ self)`.
    pub fn saturation(&self) -> Lattice {
        let perp = kernel_lattice(&self.basis);
        kernel_lattice(perp.basis())
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation() == *self
    }

    /// Index of `self` in its saturation.
    pub fn saturation_index(&self) -> BigInt {
        let sat = self.saturation();
        let m = self
            .inclusion_matrix(&sat)
            .expect("a lattice lies in its saturation");
        m.determinant().map(|d| d.abs()).unwrap_or_else(|_| BigInt::one())
    }
}

/// The saturated integer kernel `{x in Z^cols : A x = 0}`.
pub fn kernel_lattice(a: &IntegerMatrix) -> Lattice {
    let (h, u) = hermite_normal_form(&a.transpose());
    let r = h.nonzero_row_count();
    let rows: Vec<Vector> = (r..u.rows()).map(|i| u.row(i).to_vec()).collect();
    Lattice::span_of(a.cols(), &rows)
}

/// A finitely generated abelian group `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with
/// `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianGroupStructure {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::io::serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

impl AbelianGroupStructure {
    pub fn free(rank: usize) -> Self {
        Self {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Dimension after tensoring with `Q`.
    pub fn rational_dim(&self) -> usize {
        self.free_rank
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.torsion.iter().all(|d| d > &BigInt::one())
            && self.torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]))
    }
}

impl fmt::Display for AbelianGroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Structure of `Z^rows / image(A)`.
pub fn cokernel_structure(a: &IntegerMatrix) -> AbelianGroupStructure {
    let snf = smith_normal_form(a);
    let diag = snf.invariant_factors();
    let rank = diag.iter().filter(|x| !x.is_zero()).count();
    AbelianGroupStructure {
        free_rank: a.rows() - rank,
        torsion: diag
            .into_iter()
            .filter(|x| !x.is_zero() && !x.abs().is_one())
            .map(|x| x.abs())
            .collect(),
    }
}

/// Cohomology `ker(d_out) / im(d_in)` of `Z^a --d_in--> Z^b --d_out--> Z^c`.
pub fn complex_cohomology(
    d_in: &IntegerMatrix,
    d_out: &IntegerMatrix,
) -> Result<AbelianGroupStructure, LinalgError> {
    let composite = d_out.checked_mul(d_in)?;
    if !composite.is_zero() {
        return Err(LinalgError::NotAComplex);
    }
    let kernel = kernel_lattice(d_out);
    let mut restricted = IntegerMatrix::zeros(kernel.rank(), d_in.cols());
    for j in 0..d_in.cols() {
        let coords = kernel
            .coordinates(&d_in.column(j))
            .ok_or(LinalgError::NotAComplex)?;
        for (i, x) in coords.into_iter().enumerate() {
            restricted.set(i, j, x);
        }
    }
    Ok(cokernel_structure(&restricted))
}
