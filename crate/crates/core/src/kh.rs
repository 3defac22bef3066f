//! Rank tables `KH_n(V_R(F))_Q = ⊕_q K_q(R)_Q^{m_{n,q}}` assembled from `E2`, and the
//! split counts for `Proj` of a lattice polytope.

use std::fmt;

use serde::Serialize;

use crate::polyhedral::{
    is_projective, normal_fan, quasi_projective_certificate, Fan, LatticePolytope, PolyhedralError,
    ProjectivityCertificate,
};
use crate::spectral::{kh_e1_symbolic, E1Page, SpectralError, SpectralPage};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum KhError {
    #[error(transparent)]
    Polyhedral(#[from] PolyhedralError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("assembly routes disagree in degree {0}")]
    InconsistentAssembly(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FanRegime {
    ProjectiveSimplicial,
    /// Complete and simplicial but not projective: the numbers are computed anyway.
    CompleteSimplicial,
    QuasiProjective,
    Other,
}

impl FanRegime {
    pub fn is_conjectural(self) -> bool {
        self == FanRegime::CompleteSimplicial
    }
}

impl fmt::Display for FanRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FanRegime::ProjectiveSimplicial => "projective-simplicial",
            FanRegime::CompleteSimplicial => "complete-simplicial",
            FanRegime::QuasiProjective => "quasi-projective",
            FanRegime::Other => "other",
        })
    }
}

/// Whether the weight filtration is Deligne's or only the `N`-weight of `c_*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightProvenance {
    Deligne,
    NWeightOnly,
}

pub fn classify(fan: &Fan, superfan: Option<&Fan>) -> Result<FanRegime, KhError> {
    if fan.is_complete() {
        if !fan.is_simplicial() {
            return Ok(FanRegime::Other);
        }
        return Ok(if is_projective(fan)? {
            FanRegime::ProjectiveSimplicial
        } else {
            FanRegime::CompleteSimplicial
        });
    }
    Ok(match quasi_projective_certificate(fan, superfan)? {
        ProjectivityCertificate::SubfanOf(_) => FanRegime::QuasiProjective,
        _ => FanRegime::Other,
    })
}

/// One degree `n`: the nonzero pairs `(q, m_{n,q})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KRankRow {
    pub n: usize,
    pub terms: Vec<KTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct KTerm {
    pub q: usize,
    pub mult: usize,
}

impl KRankRow {
    fn from_counts(n: usize, counts: Vec<usize>) -> Self {
        let terms = counts
            .into_iter()
            .enumerate()
            .filter(|&(_, m)| m > 0)
            .map(|(q, mult)| KTerm { q, mult })
            .collect();
        Self { n, terms }
    }

    pub fn total(&self) -> usize {
        self.terms.iter().map(|t| t.mult).sum()
    }
}

impl fmt::Display for KRankRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KH_{} =", self.n)?;
        if self.terms.is_empty() {
            return write!(f, " 0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            write!(f, "{sep}K_{}(R)^{}", t.q, t.mult)?;
        }
        Ok(())
    }
}

/// Cell `(P, a)` of `E2` contributes to `K_q` in degree `n` with `q = n + P - a`.
pub fn kh_row_direct(e2: &SpectralPage, n: usize) -> KRankRow {
    let mut counts = vec![0; n + e2.columns() + 1];
    for (&(p, a), g) in e2.cells() {
        if n + p >= a {
            counts[n + p - a] += g.rational_dim();
        }
    }
    KRankRow::from_counts(n, counts)
}

/// `m_{n,q} = sum_p dim gr^W_{2(p+n-q)} H^{2p+n-q}`.
pub fn kh_row_weighted(e2: &SpectralPage, n: usize) -> KRankRow {
    let mut counts = vec![0; n + e2.columns() + 1];
    for (q, count) in counts.iter_mut().enumerate() {
        for p in 0..e2.columns() {
            if p + n < q {
                continue;
            }
            let weight = 2 * (p + n - q);
            *count += e2
                .weight_graded_pieces(2 * p + n - q)
                .into_iter()
                .filter(|&(w, _)| w == weight)
                .map(|(_, dim)| dim)
                .sum::<usize>();
        }
    }
    KRankRow::from_counts(n, counts)
}

/// From the K-theoretic first page: its cell `(p, p + n)` has blocks `Λ^{p+n-j} ⊗ K_j`,
/// and after row cohomology each block contributes `dim E2^{p, p+n-j}` to `K_j`.
pub fn kh_row_symbolic(e1: &E1Page, e2: &SpectralPage, n: usize) -> KRankRow {
    let through = e1.columns() + n;
    let symbolic = kh_e1_symbolic(e1.nerve(), through);
    let mut counts = vec![0; through + 1];
    for p in 0..e1.columns() {
        let big_q = p + n;
        for &(j, mult) in &symbolic[&(p, big_q)] {
            debug_assert_eq!(mult, e1.rank(p, big_q - j));
            counts[j] += e2.rational_dim(p, big_q - j);
        }
    }
    KRankRow::from_counts(n, counts)
}

/// `E1`, `E2` and the regime of a fan, ready for assembling rank tables.
#[derive(Clone, Debug)]
pub struct KhAssembly {
    pub fan: Fan,
    pub e1: E1Page,
    pub e2: SpectralPage,
    pub regime: FanRegime,
}

impl KhAssembly {
    pub fn new(fan: &Fan, superfan: Option<&Fan>) -> Result<Self, KhError> {
        let e1 = E1Page::build(fan)?;
        let e2 = e1.page2()?;
        Ok(Self {
            regime: classify(fan, superfan)?,
            fan: fan.clone(),
            e1,
            e2,
        })
    }

    pub fn provenance(&self) -> WeightProvenance {
        if self.fan.is_complete() {
            WeightProvenance::Deligne
        } else {
            WeightProvenance::NWeightOnly
        }
    }

    /// Degree `n` of the table, after checking that all three assembly routes agree.
    pub fn kh_ranks(&self, n: usize) -> Result<KRankRow, KhError> {
        let direct = kh_row_direct(&self.e2, n);
        if kh_row_weighted(&self.e2, n) != direct || kh_row_symbolic(&self.e1, &self.e2, n) != direct {
            return Err(KhError::InconsistentAssembly(n));
        }
        Ok(direct)
    }

    /// Degrees `0..=max_n`; `None` means `2 dim`.
    pub fn table(&self, max_n: Option<usize>) -> Result<KRankTable, KhError> {
        let max_n = max_n.unwrap_or(2 * self.fan.dim());
        Ok(KRankTable {
            regime: self.regime,
            provenance: self.provenance(),
            conjectural: self.regime.is_conjectural(),
            rows: (0..=max_n).map(|n| self.kh_ranks(n)).collect::<Result<_, _>>()?,
        })
    }

    /// Each degree in `n_range` is exactly `K_n(R)^m` with `m = #max(F)`.
    pub fn check_corollary_c(&self, n_range: std::ops::RangeInclusive<usize>) -> Result<CorollaryReport, KhError> {
        let m = self.fan.max_cones().len();
        let mut rows = Vec::new();
        for n in n_range {
            let row = self.kh_ranks(n)?;
            let holds = row.terms == [KTerm { q: n, mult: m }];
            rows.push((n, holds));
        }
        let informational = self.regime != FanRegime::ProjectiveSimplicial;
        Ok(CorollaryReport {
            regime: self.regime,
            m,
            passed: rows.iter().all(|&(_, ok)| ok),
            informational,
            rows,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KRankTable {
    pub regime: FanRegime,
    pub provenance: WeightProvenance,
    pub conjectural: bool,
    pub rows: Vec<KRankRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub regime: FanRegime,
    pub m: usize,
    pub passed: bool,
    /// Set when the fan is not certified projective simplicial, so the check only
    /// reports what the numbers say.
    pub informational: bool,
    pub rows: Vec<(usize, bool)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCounts {
    /// Least `n >= 0` with an interior lattice point in `(n+1)P`.
    pub n_p: usize,
    pub split_count: usize,
    pub vertices: usize,
    /// `#max` of the normal fan when it is simplicial, where it must equal the vertex
    /// count.
    pub normal_fan_rank: Option<usize>,
}

pub fn proj_lower_bounds(p: &LatticePolytope) -> Result<SplitCounts, KhError> {
    let d = p.dim();
    let n_p = (1..=d as u32 + 1)
        .find(|&t| !p.interior_points_of_dilate(t).is_empty())
        .map(|t| t as usize - 1)
        .expect("(d+1)P always has an interior lattice point");
    let fan = normal_fan(p)?;
    let normal_fan_rank = if fan.is_simplicial() {
        let assembly = KhAssembly::new(&fan, None)?;
        Some(assembly.kh_ranks(0)?.total())
    } else {
        None
    };
    Ok(SplitCounts {
        n_p,
        split_count: n_p + 1,
        vertices: p.vertices().len(),
        normal_fan_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{binomial, vector, Vector};
    use crate::polyhedral::catalog_fan;

    fn assembly(expr: &str) -> KhAssembly {
        KhAssembly::new(&catalog_fan(expr).unwrap(), None).unwrap()
    }

    fn polytope(points: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<Vector> = points.iter().map(|p| vector(p)).collect();
        LatticePolytope::new(points[0].len(), &pts).unwrap()
    }

    #[test]
    fn projective_line_rows() {
        let a = assembly("projective_space(1)");
        assert_eq!(a.regime, FanRegime::ProjectiveSimplicial);
        for n in 0..4 {
            assert_eq!(a.kh_ranks(n).unwrap().terms, vec![KTerm { q: n, mult: 2 }]);
        }
    }

    #[test]
    fn torus_binomials() {
        for d in 0..=3 {
            let a = assembly(&format!("torus({d})"));
            for n in 0..=4 {
                let row = a.kh_ranks(n).unwrap();
                for q in 0..=n {
                    let m = row.terms.iter().find(|t| t.q == q).map_or(0, |t| t.mult);
                    assert_eq!(m, binomial(d, n - q), "d={d} n={n} q={q}");
                }
            }
        }
    }

    #[test]
    fn corollary_examples() {
        for (expr, m) in [
            ("projective_space(2)", 3),
            ("hirzebruch(1)", 4),
            ("weighted_projective(1,1,2)", 3),
        ] {
            let report = assembly(expr).check_corollary_c(0..=3).unwrap();
            assert!(report.passed && !report.informational, "{expr}");
            assert_eq!(report.m, m);
        }
        assert_eq!(
            assembly("projective_space(2)").kh_ranks(0).unwrap().terms,
            vec![KTerm { q: 0, mult: 3 }]
        );
    }

    #[test]
    fn regimes() {
        assert_eq!(assembly("affine_orthant(2)").regime, FanRegime::QuasiProjective);
        assert_eq!(assembly("torus(2)").provenance(), WeightProvenance::NWeightOnly);
        assert_eq!(assembly("projective_space(2)").provenance(), WeightProvenance::Deligne);
    }

    #[test]
    fn split_counts() {
        let triangle = proj_lower_bounds(&polytope(&[&[0, 0], &[1, 0], &[0, 1]])).unwrap();
        assert_eq!((triangle.n_p, triangle.split_count, triangle.vertices), (2, 3, 3));
        assert_eq!(triangle.normal_fan_rank, Some(3));
        let square = proj_lower_bounds(&polytope(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!((square.n_p, square.split_count, square.vertices), (1, 2, 4));
        assert_eq!(square.normal_fan_rank, Some(4));
        let segment = proj_lower_bounds(&polytope(&[&[0], &[1]])).unwrap();
        assert_eq!((segment.n_p, segment.split_count, segment.vertices), (1, 2, 2));
    }
}
