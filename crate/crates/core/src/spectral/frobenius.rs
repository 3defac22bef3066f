use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Pow;

use super::page::E1Page;
use super::SpectralError;
use crate::linalg::{exterior_power_map, IntegerMatrix};

/// `c_*` on the first page: on each summand `Λ^q M(σ_I)` it is `Λ^q` of
/// multiplication by `c` on `M(σ_I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusEndomorphism {
    pub c: u64,
    cells: BTreeMap<(usize, usize), IntegerMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub c: u64,
    /// `c_* d1 = d1 c_*` in every cell.
    pub commutes_with_d1: bool,
    /// Row `q` is multiplication by `c^q`.
    pub row_eigenvalues_hold: bool,
    /// The scalar on row `q` of `E1`, hence of `E2`.
    pub row_scalars: Vec<BigInt>,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.commutes_with_d1 && self.row_eigenvalues_hold
    }
}

impl FrobeniusEndomorphism {
    pub fn on(page: &E1Page, c: u64) -> Self {
        let scalar = BigInt::from(c);
        let mut cells = BTreeMap::new();
        for p in 0..page.columns() {
            for q in 0..page.rows() {
                let mut m = IntegerMatrix::zeros(page.rank(p, q), page.rank(p, q));
                for (i, t) in page.nerve().level(p).iter().enumerate() {
                    let block = exterior_power_map(&IntegerMatrix::scalar(t.rank(), &scalar), q);
                    if block.rows() > 0 {
                        m.set_block(page.offset(p, q, i), page.offset(p, q, i), &block);
                    }
                }
                cells.insert((p, q), m);
            }
        }
        Self { c, cells }
    }

    pub fn cell(&self, p: usize, q: usize) -> &IntegerMatrix {
        &self.cells[&(p, q)]
    }

    /// `self ∘ other`, cell by cell.
    pub fn compose(&self, other: &Self) -> Result<Self, SpectralError> {
        let mut cells = BTreeMap::new();
        for (key, m) in &self.cells {
            cells.insert(*key, m.checked_mul(&other.cells[key])?);
        }
        Ok(Self {
            c: self.c * other.c,
            cells,
        })
    }

    pub fn report(&self, page: &E1Page) -> Result<FrobeniusReport, SpectralError> {
        let mut commutes = true;
        let mut eigen = true;
        for (&(p, q), m) in &self.cells {
            let d = page.differential(p, q);
            let before = d.checked_mul(m)?;
            let after = if p + 1 < page.columns() {
                self.cell(p + 1, q).checked_mul(d)?
            } else {
                IntegerMatrix::zeros(0, m.cols())
            };
            commutes &= before == after;
            let expected = IntegerMatrix::scalar(m.rows(), &BigInt::from(self.c).pow(q as u32));
            eigen &= *m == expected;
        }
        Ok(FrobeniusReport {
            c: self.c,
            commutes_with_d1: commutes,
            row_eigenvalues_hold: eigen,
            row_scalars: (0..page.rows())
                .map(|q| BigInt::from(self.c).pow(q as u32))
                .collect(),
        })
    }
}

/// Builds `c_*` on `E1` and checks it against `d1` and the expected row eigenvalues.
pub fn frobenius_on_e1(page: &E1Page, c: u64) -> Result<(FrobeniusEndomorphism, FrobeniusReport), SpectralError> {
    if c == 0 {
        return Err(SpectralError::InvalidMultiplier);
    }
    let f = FrobeniusEndomorphism::on(page, c);
    let report = f.report(page)?;
    Ok((f, report))
}

/// `(c c')_* = c_* c'_*`.
pub fn frobenius_is_multiplicative(page: &E1Page, c: u64, c2: u64) -> Result<bool, SpectralError> {
    let lhs = FrobeniusEndomorphism::on(page, c * c2);
    let rhs = FrobeniusEndomorphism::on(page, c).compose(&FrobeniusEndomorphism::on(page, c2))?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::catalog_fan;

    #[test]
    fn projective_plane_doubling() {
        let page = E1Page::build(&catalog_fan("projective_space(2)").unwrap()).unwrap();
        let (_, report) = frobenius_on_e1(&page, 2).unwrap();
        assert!(report.passed());
        assert_eq!(report.row_scalars, vec![1.into(), 2.into(), 4.into()]);
        assert!(frobenius_is_multiplicative(&page, 2, 3).unwrap());
    }

    #[test]
    fn identity_and_row_zero() {
        let page = E1Page::build(&catalog_fan("hirzebruch(1)").unwrap()).unwrap();
        let (one, _) = frobenius_on_e1(&page, 1).unwrap();
        for p in 0..page.columns() {
            for q in 0..page.rows() {
                assert_eq!(*one.cell(p, q), IntegerMatrix::identity(page.rank(p, q)));
            }
        }
        let (three, _) = frobenius_on_e1(&page, 3).unwrap();
        for p in 0..page.columns() {
            assert_eq!(*three.cell(p, 0), IntegerMatrix::identity(page.rank(p, 0)));
        }
    }
}
