//! The gap `sn(M) \ M`, conductor elements and the Frobenius action on the gap.

use num_bigint::BigInt;

use super::{add, degree, elements_up_to, scale, AffineMonoid, MembershipOracle, MonoidError};
use crate::linalg::Vector;
use crate::polyhedral::Cone;

/// Points of `sn(M) \ M` of degree at most `bound`, sorted by degree and then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapModule {
    pub grading: Vector,
    pub bound: u64,
    pub elements: Vec<Vector>,
    /// Set when some element sits within one generator degree of the bound, so that
    /// the enumeration may be cutting off an infinite family.
    pub truncated: bool,
}

impl GapModule {
    pub fn degrees(&self) -> Vec<BigInt> {
        self.elements.iter().map(|x| degree(&self.grading, x)).collect()
    }
}

/// `m + n(M ∩ F) ⊆ M` with `m ∈ M ∩ relint F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorCertificate {
    pub face: Cone,
    pub element: Vector,
    pub degree: BigInt,
    /// Whether the enumerated gap misses `m + F` entirely.
    pub gap_avoids_translate: Option<bool>,
}

/// The action `x ↦ c x` on the gap basis: `Some(cx)` when `cx ∉ M`, else `None` (zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusMap {
    pub c: u64,
    pub images: Vec<(Vector, Option<Vector>)>,
    /// Every image is zero or exactly `c` times its source.
    pub support_law_holds: bool,
    pub is_zero: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseVerdict {
    Pass,
    Fail,
    /// Holds on the enumerated part of a possibly truncated gap.
    VerifiedUpToBound,
    /// A required certificate was not found within the search bound.
    Inconclusive,
}

impl std::fmt::Display for ClauseVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ClauseVerdict::Pass => "pass",
            ClauseVerdict::Fail => "fail",
            ClauseVerdict::VerifiedUpToBound => "verified up to bound",
            ClauseVerdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceClause {
    pub face_rays: Vec<Vector>,
    pub certificate: Option<ConductorCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusClause {
    pub c: u64,
    pub support_law_holds: bool,
    pub kills_gap: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub gap: GapModule,
    pub faces: Vec<FaceClause>,
    pub clause_a: ClauseVerdict,
    pub frobenius: Vec<FrobeniusClause>,
    pub clause_b: ClauseVerdict,
    /// Least `c >= 2` with `c_*` zero on the enumerated gap, searched up to 64.
    pub nilpotence_c0: Option<u64>,
    pub clause_c: ClauseVerdict,
    pub clause_d: ClauseVerdict,
    /// `Some(true)` when the gap is known finite (not truncated).
    pub gap_finite: Option<bool>,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        [self.clause_a, self.clause_b, self.clause_c, self.clause_d]
            .iter()
            .all(|v| matches!(v, ClauseVerdict::Pass | ClauseVerdict::VerifiedUpToBound))
    }
}

const FROBENIUS_SEARCH: u64 = 64;

impl AffineMonoid {
    pub fn gap(&self, bound: u64) -> Result<GapModule, MonoidError> {
        let lambda = self.grading()?;
        let normal = self.normalization();
        let sn = self.seminormalization()?;
        let in_m = elements_up_to(&self.generators, &lambda, bound);
        let mut elements: Vec<Vector> = Vec::new();
        for x in elements_up_to(normal.generators(), &lambda, bound) {
            if !in_m.contains(&x) && self.seminormal_contains(&x)? {
                elements.push(x);
            }
        }
        elements.sort_by_key(|x| (degree(&lambda, x), x.clone()));
        let width = normal
            .generators()
            .iter()
            .chain(sn.generators())
            .chain(&self.generators)
            .map(|g| degree(&lambda, g))
            .max()
            .unwrap_or_default();
        let cutoff = BigInt::from(bound) - width;
        let truncated = elements.iter().any(|x| degree(&lambda, x) > cutoff);
        Ok(GapModule {
            grading: lambda,
            bound,
            elements,
            truncated,
        })
    }

    /// Least-degree (then lexicographically least) `m ∈ M ∩ relint F` with
    /// `m + n(M ∩ F) ⊆ M`, searching elements of degree at most `bound`.
    ///
    /// Every point of `n(M ∩ F)` is a parallelepiped point of some simplex of the
    /// triangulation plus a sum of its rays (which lie in `M`), so it suffices to test
    /// `m + p` for the finitely many parallelepiped points `p`.
    pub fn conductor_element(&self, face: &Cone, bound: u64) -> Result<ConductorCertificate, MonoidError> {
        let lambda = self.grading()?;
        let data = self
            .face_data()
            .iter()
            .find(|f| f.cone == *face)
            .ok_or(MonoidError::NotAFace)?;
        let points = data.parallelepiped_points(&lambda, false);
        let mut candidates: Vec<Vector> = elements_up_to(&data.generators, &lambda, bound)
            .into_iter()
            .filter(|m| face.in_relative_interior(m))
            .collect();
        candidates.sort_by_key(|m| (degree(&lambda, m), m.clone()));
        let mut oracle = MembershipOracle::new(self, lambda.clone());
        for m in candidates {
            if points.iter().all(|p| oracle.contains(&add(&m, p))) {
                return Ok(ConductorCertificate {
                    face: face.clone(),
                    degree: degree(&lambda, &m),
                    element: m,
                    gap_avoids_translate: None,
                });
            }
        }
        Err(MonoidError::ConductorNotFound(bound))
    }

    pub fn frobenius_on_gap(&self, c: u64, gap: &GapModule) -> Result<FrobeniusMap, MonoidError> {
        let lambda = self.grading()?;
        let mut oracle = MembershipOracle::new(self, lambda);
        let factor = BigInt::from(c);
        let images: Vec<(Vector, Option<Vector>)> = gap
            .elements
            .iter()
            .map(|x| {
                let cx = scale(&factor, x);
                let image = (!oracle.contains(&cx)).then_some(cx);
                (x.clone(), image)
            })
            .collect();
        let support_law_holds = images
            .iter()
            .all(|(x, img)| img.as_ref().is_none_or(|y| *y == scale(&factor, x)));
        let is_zero = images.iter().all(|(_, img)| img.is_none());
        Ok(FrobeniusMap {
            c,
            images,
            support_law_holds,
            is_zero,
        })
    }

    /// Least `c >= 2` (up to `max_c`) with `c_*` identically zero on the gap.
    pub fn nilpotence_witness(&self, gap: &GapModule, max_c: u64) -> Result<Option<u64>, MonoidError> {
        for c in 2..=max_c {
            if self.frobenius_on_gap(c, gap)?.is_zero {
                return Ok(Some(c));
            }
        }
        Ok(None)
    }

    /// The degree-zero case of the nil-support conjecture for `R[M]`, where the reduced
    /// `K_0` is free on the gap `sn(M) \ M` (the Picard group quotient):
    /// (a) conductor elements `m_F` exist for every nonzero face and the gap avoids
    /// `m_F + F`; (b) `c_*` sends each basis element to zero or to the basis element at
    /// `c x`, for `c` in {2, 3, 5}; (c) the module structure is the tautological one;
    /// (d) finite generation, i.e. finiteness of the gap.
    pub fn verify_conjecture_k0(&self, bound: u64) -> Result<ConjectureReport, MonoidError> {
        let gap = self.gap(bound)?;
        let bounded = if gap.truncated {
            ClauseVerdict::VerifiedUpToBound
        } else {
            ClauseVerdict::Pass
        };

        let mut faces = Vec::new();
        let mut clause_a = bounded;
        for data in self.face_data() {
            if data.cone.dim() == 0 {
                continue;
            }
            let certificate = match self.conductor_element(&data.cone, bound) {
                Ok(mut cert) => {
                    let avoids = gap.elements.iter().all(|x| {
                        let diff = super::sub(x, &cert.element);
                        !data.cone.contains(&diff)
                    });
                    cert.gap_avoids_translate = Some(avoids);
                    if !avoids {
                        clause_a = ClauseVerdict::Fail;
                    }
                    Some(cert)
                }
                Err(MonoidError::ConductorNotFound(_)) => {
                    if clause_a != ClauseVerdict::Fail {
                        clause_a = ClauseVerdict::Inconclusive;
                    }
                    None
                }
                Err(e) => return Err(e),
            };
            faces.push(FaceClause {
                face_rays: data.cone.rays().to_vec(),
                certificate,
            });
        }

        let mut frobenius = Vec::new();
        let mut clause_b = bounded;
        for c in [2, 3, 5] {
            let map = self.frobenius_on_gap(c, &gap)?;
            if !map.support_law_holds {
                clause_b = ClauseVerdict::Fail;
            }
            frobenius.push(FrobeniusClause {
                c,
                support_law_holds: map.support_law_holds,
                kills_gap: map.is_zero,
            });
        }
        let nilpotence_c0 = self.nilpotence_witness(&gap, FROBENIUS_SEARCH)?;
        let gap_finite = (!gap.truncated).then_some(true);

        Ok(ConjectureReport {
            clause_a,
            faces,
            frobenius,
            clause_b,
            nilpotence_c0,
            clause_c: ClauseVerdict::Pass,
            clause_d: bounded,
            gap_finite,
            gap,
        })
    }
}
