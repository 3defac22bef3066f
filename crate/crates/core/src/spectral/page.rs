use std::collections::BTreeMap;

use rayon::prelude::*;

use super::nerve::Nerve;
use super::SpectralError;
use crate::linalg::{binomial, complex_cohomology, exterior_power_map, AbelianGroupStructure, IntegerMatrix};
use crate::polyhedral::Fan;

/// The first page: cell `(p, q)` is `⊕_I Λ^q M(σ_I)` over `(p+1)`-tuples `I`, with the
/// Čech differential `d1 : E1^{p,q} -> E1^{p+1,q}`. Row `q` carries weight `q`.
#[derive(Clone, Debug)]
pub struct E1Page {
    nerve: Nerve,
    /// `offsets[q][p][i]`: where tuple `i` of level `p` starts inside cell `(p, q)`.
    offsets: Vec<Vec<Vec<usize>>>,
    /// `ranks[q][p]`.
    ranks: Vec<Vec<usize>>,
    /// `d1[q][p]`, from cell `(p, q)` to `(p+1, q)`; the last one has no rows.
    d1: Vec<Vec<IntegerMatrix>>,
}

impl E1Page {
    pub fn build(fan: &Fan) -> Result<Self, SpectralError> {
        Self::from_nerve(Nerve::build(fan))
    }

    pub fn from_nerve(nerve: Nerve) -> Result<Self, SpectralError> {
        let rows = nerve.dim() + 1;
        let cols = nerve.len();
        let mut offsets = vec![vec![Vec::new(); cols]; rows];
        let mut ranks = vec![vec![0; cols]; rows];
        for q in 0..rows {
            for p in 0..cols {
                let mut at = 0;
                for t in nerve.level(p) {
                    offsets[q][p].push(at);
                    at += binomial(t.rank(), q);
                }
                ranks[q][p] = at;
            }
        }
        let d1: Vec<Vec<IntegerMatrix>> = (0..rows)
            .into_par_iter()
            .map(|q| {
                (0..cols)
                    .map(|p| {
                        let target = if p + 1 < cols { ranks[q][p + 1] } else { 0 };
                        let mut d = IntegerMatrix::zeros(target, ranks[q][p]);
                        for (i, t) in nerve.level(p + 1).iter().enumerate() {
                            if binomial(t.rank(), q) == 0 {
                                continue;
                            }
                            for (j, (k, inclusion)) in t.faces.iter().enumerate() {
                                let mut block = exterior_power_map(inclusion, q);
                                if block.cols() == 0 {
                                    continue;
                                }
                                if j % 2 == 1 {
                                    block = block.scaled(&(-1).into());
                                }
                                d.set_block(offsets[q][p + 1][i], offsets[q][p][*k], &block);
                            }
                        }
                        d
                    })
                    .collect()
            })
            .collect();
        let page = Self {
            nerve,
            offsets,
            ranks,
            d1,
        };
        page.check_complex()?;
        Ok(page)
    }

    fn check_complex(&self) -> Result<(), SpectralError> {
        for q in 0..self.rows() {
            for p in 0..self.columns().saturating_sub(1) {
                let square = self.d1[q][p + 1].checked_mul(&self.d1[q][p])?;
                if !square.is_zero() {
                    return Err(SpectralError::NotAComplex { p, q });
                }
            }
        }
        Ok(())
    }

    pub fn nerve(&self) -> &Nerve {
        &self.nerve
    }

    /// Number of columns `p`, one per maximal cone.
    pub fn columns(&self) -> usize {
        self.nerve.len()
    }

    /// Number of rows `q = 0..=dim`.
    pub fn rows(&self) -> usize {
        self.ranks.len()
    }

    pub fn rank(&self, p: usize, q: usize) -> usize {
        self.ranks
            .get(q)
            .and_then(|row| row.get(p))
            .copied()
            .unwrap_or(0)
    }

    /// `d1` out of cell `(p, q)`.
    pub fn differential(&self, p: usize, q: usize) -> &IntegerMatrix {
        &self.d1[q][p]
    }

    pub(crate) fn offset(&self, p: usize, q: usize, tuple: usize) -> usize {
        self.offsets[q][p][tuple]
    }

    /// `E2`, by the cohomology of each row. Cells are independent and computed in
    /// parallel.
    pub fn page2(&self) -> Result<SpectralPage, SpectralError> {
        let cells: Vec<(usize, usize)> = (0..self.columns())
            .flat_map(|p| (0..self.rows()).map(move |q| (p, q)))
            .collect();
        let groups: Vec<AbelianGroupStructure> = cells
            .par_iter()
            .map(|&(p, q)| {
                let incoming = if p == 0 {
                    IntegerMatrix::zeros(self.rank(0, q), 0)
                } else {
                    self.d1[q][p - 1].clone()
                };
                complex_cohomology(&incoming, &self.d1[q][p])
            })
            .collect::<Result<_, _>>()?;
        Ok(SpectralPage {
            page: 2,
            columns: self.columns(),
            rows: self.rows(),
            cells: cells.into_iter().zip(groups).collect(),
        })
    }
}

/// Integral groups of a page, cell by cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralPage {
    pub page: usize,
    columns: usize,
    rows: usize,
    cells: BTreeMap<(usize, usize), AbelianGroupStructure>,
}

impl SpectralPage {
    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cell(&self, p: usize, q: usize) -> AbelianGroupStructure {
        self.cells
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(AbelianGroupStructure::zero)
    }

    pub fn rational_dim(&self, p: usize, q: usize) -> usize {
        self.cells.get(&(p, q)).map_or(0, |g| g.rational_dim())
    }

    /// All cells in `(p, q)` order, zeros included.
    pub fn cells(&self) -> impl Iterator<Item = (&(usize, usize), &AbelianGroupStructure)> {
        self.cells.iter()
    }

    pub fn nonzero_cells(&self) -> impl Iterator<Item = (&(usize, usize), &AbelianGroupStructure)> {
        self.cells.iter().filter(|(_, g)| !g.is_zero())
    }

    /// Largest total degree `p + q` with a cell.
    pub fn max_degree(&self) -> usize {
        (self.columns + self.rows).saturating_sub(2)
    }

    /// `sum_{p+q=m} dim_Q E^{p,q}`.
    pub fn anti_diagonal(&self, m: usize) -> usize {
        (0..=m.min(self.rows.saturating_sub(1)))
            .map(|q| self.rational_dim(m - q, q))
            .sum()
    }

    pub fn anti_diagonals(&self) -> Vec<usize> {
        (0..=self.max_degree()).map(|m| self.anti_diagonal(m)).collect()
    }

    /// `gr^W_{2q} H^m`, as pairs `(2q, dim_Q E2^{m-q,q})` over the cells of the
    /// anti-diagonal, zeros included.
    pub fn weight_graded_pieces(&self, m: usize) -> Vec<(usize, usize)> {
        let lo = m.saturating_sub(self.columns.saturating_sub(1));
        let hi = m.min(self.rows.saturating_sub(1));
        (lo..=hi)
            .map(|q| (2 * q, self.rational_dim(m - q, q)))
            .collect()
    }
}
