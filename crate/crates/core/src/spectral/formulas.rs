use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::nerve::Nerve;
use super::page::SpectralPage;
use super::SpectralError;
use crate::linalg::binomial;
use crate::polyhedral::Fan;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiNumbers {
    /// `b_0, b_2, ..., b_{2d}`.
    pub even: Vec<i64>,
    pub sum: i64,
    /// `#max(F)`.
    pub max_cones: usize,
}

impl BettiNumbers {
    pub fn sum_rule_holds(&self) -> bool {
        self.sum == self.max_cones as i64
    }
}

fn require_complete_simplicial(fan: &Fan) -> Result<(), SpectralError> {
    if !fan.is_complete() {
        return Err(SpectralError::Hypothesis("fan is not complete"));
    }
    if !fan.is_simplicial() {
        return Err(SpectralError::Hypothesis("fan is not simplicial"));
    }
    Ok(())
}

/// `b_{2p} = sum_{i=p}^{d} (-1)^{i-p} C(i,p) #F(d-i)` from the cone counts.
pub fn betti_formula(fan: &Fan) -> Result<BettiNumbers, SpectralError> {
    require_complete_simplicial(fan)?;
    let d = fan.dim();
    let f = fan.f_vector();
    let even: Vec<i64> = (0..=d)
        .map(|p| {
            (p..=d)
                .map(|i| {
                    let sign = if (i - p) % 2 == 0 { 1 } else { -1 };
                    sign * binomial(i, p) as i64 * f[d - i] as i64
                })
                .sum()
        })
        .collect();
    Ok(BettiNumbers {
        sum: even.iter().sum(),
        even,
        max_cones: fan.max_cones().len(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub passed: bool,
    /// Cells off the diagonal `p = q` with nonzero rational dimension.
    pub offending: Vec<(usize, usize)>,
}

/// Odd anti-diagonals vanish rationally and anti-diagonal `2m` lives only at `(m, m)`.
pub fn purity_check(fan: &Fan, e2: &SpectralPage) -> Result<PurityReport, SpectralError> {
    require_complete_simplicial(fan)?;
    let offending: Vec<(usize, usize)> = e2
        .cells()
        .filter(|(&(p, q), g)| p != q && g.rational_dim() > 0)
        .map(|(&cell, _)| cell)
        .collect();
    Ok(PurityReport {
        passed: offending.is_empty(),
        offending,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionBound {
    pub r: u32,
    /// `(2^{r-1} - 1)(3^{r-1} - 1)`.
    #[serde(serialize_with = "crate::io::serialize_bigint")]
    pub bound: BigInt,
    /// `gcd(c^{q-r+1}(c^{r-1} - 1))` over `c` in `2..=7`, `q` in `r-1..=r+4`.
    #[serde(serialize_with = "crate::io::serialize_bigint")]
    pub empirical_gcd: BigInt,
    pub divides_bound: bool,
    pub odd_part_divides: bool,
    pub two_part_divides: bool,
}

impl TorsionBound {
    pub fn passed(&self) -> bool {
        self.divides_bound && self.odd_part_divides && self.two_part_divides
    }
}

/// Bound on the torsion killed by the `d_r` differentials.
pub fn torsion_bound(r: u32) -> Result<TorsionBound, SpectralError> {
    if r < 2 {
        return Err(SpectralError::InvalidPage(r));
    }
    let big = |x: u32| BigInt::from(x);
    let a: BigInt = big(2).pow(r - 1) - 1;
    let b: BigInt = big(3).pow(r - 1) - 1;
    let bound: BigInt = &a * &b;
    let mut gcd = BigInt::zero();
    for c in 2..=7u32 {
        for q in r - 1..=r + 4 {
            let term = big(c).pow(q + 1 - r) * (big(c).pow(r - 1) - 1);
            gcd = gcd.gcd(&term);
        }
    }
    let mut odd = gcd.clone();
    let mut two = BigInt::one();
    while odd.is_even() {
        odd /= 2;
        two *= 2;
    }
    Ok(TorsionBound {
        r,
        divides_bound: bound.is_multiple_of(&gcd),
        odd_part_divides: a.is_multiple_of(&odd),
        two_part_divides: b.is_multiple_of(&two),
        bound,
        empirical_gcd: gcd,
    })
}

/// Cell `(p, q)` of the K-theoretic first page as pairs `(j, multiplicity)`, meaning
/// `Λ^{q-j}` blocks tensored with `K_j(R)`; zero multiplicities are omitted.
pub fn kh_e1_symbolic(nerve: &Nerve, through_q: usize) -> BTreeMap<(usize, usize), Vec<(usize, usize)>> {
    let mut out = BTreeMap::new();
    for p in 0..nerve.len() {
        for q in 0..=through_q {
            let terms: Vec<(usize, usize)> = (0..=q)
                .map(|j| {
                    let mult = nerve.level(p).iter().map(|t| binomial(t.rank(), q - j)).sum();
                    (j, mult)
                })
                .filter(|&(_, m)| m > 0)
                .collect();
            out.insert((p, q), terms);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::catalog_fan;
    use crate::spectral::E1Page;

    #[test]
    fn betti_examples() {
        let b = betti_formula(&catalog_fan("projective_space(2)").unwrap()).unwrap();
        assert_eq!((b.even.as_slice(), b.sum, b.sum_rule_holds()), (&[1, 1, 1][..], 3, true));
        let b = betti_formula(&catalog_fan("hirzebruch(1)").unwrap()).unwrap();
        assert_eq!((b.even.as_slice(), b.sum), (&[1, 2, 1][..], 4));
        let b = betti_formula(&catalog_fan("weighted_projective(1,1,2)").unwrap()).unwrap();
        assert_eq!(b.even, vec![1, 1, 1]);
        assert!(betti_formula(&catalog_fan("affine_orthant(2)").unwrap()).is_err());
    }

    #[test]
    fn purity_examples() {
        for expr in ["projective_space(2)", "hirzebruch(1)", "product(projective_space(1),projective_space(1))"] {
            let fan = catalog_fan(expr).unwrap();
            let e2 = E1Page::build(&fan).unwrap().page2().unwrap();
            assert!(purity_check(&fan, &e2).unwrap().passed, "{expr}");
        }
    }

    #[test]
    fn torsion_bounds() {
        let t = torsion_bound(2).unwrap();
        assert_eq!(t.bound, 2.into());
        assert!(t.passed());
        assert!(BigInt::from(2).is_multiple_of(&t.empirical_gcd));
        assert_eq!(torsion_bound(3).unwrap().bound, 24.into());
        assert!(torsion_bound(1).is_err());
    }

    #[test]
    fn symbolic_cells() {
        let nerve = Nerve::build(&catalog_fan("projective_space(1)").unwrap());
        let table = kh_e1_symbolic(&nerve, 2);
        assert_eq!(table[&(1, 1)], vec![(0, 1), (1, 1)]);
        assert_eq!(table[&(0, 0)], vec![(0, 2)]);
        // both tuples of level 0 have M = 0
        assert_eq!(table[&(0, 2)], vec![(2, 2)]);
    }
}
