//! The end-to-end acceptance checks. Each returns a deterministic outcome; randomized
//! checks use fixed ChaCha seeds.

use std::collections::BTreeSet;
use std::fmt;
use std::time::Duration;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::kh::{FanRegime, KhAssembly, KTerm};
use crate::linalg::{
    binomial, cokernel_structure, exterior_power_map, kernel_lattice, smith_normal_form, vector,
    IntegerMatrix, Lattice, Vector,
};
use crate::monoid::{hilbert_basis, AffineMonoid, ClauseVerdict};
use crate::polyhedral::{catalog_fan, Cone, Fan, LatticePolytope};
use crate::spectral::{
    betti_formula, frobenius_is_multiplicative, frobenius_on_e1, torsion_bound, E1Page,
};

/// Catalog fans the cohomological checks run over.
pub const COMPLETE_CATALOG: [&str; 8] = [
    "projective_space(1)",
    "projective_space(2)",
    "projective_space(3)",
    "product(projective_space(1),projective_space(1))",
    "hirzebruch(0)",
    "hirzebruch(1)",
    "hirzebruch(2)",
    "weighted_projective(1,1,2)",
];

const EXTRA_CATALOG: [&str; 3] = ["affine_orthant(2)", "torus(2)", "torus(3)"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Wall-clock budget for the check.
    #[serde(skip)]
    pub limit: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{status}] {}. {}: {}", self.id, self.name, self.detail)
    }
}

struct Checker {
    failures: Vec<String>,
    checks: usize,
}

impl Checker {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            checks: 0,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, id: u8, name: &'static str, limit_secs: u64) -> CriterionOutcome {
        let detail = if self.failures.is_empty() {
            format!("{} checks", self.checks)
        } else {
            format!(
                "{} of {} checks failed; first: {}",
                self.failures.len(),
                self.checks,
                self.failures[0]
            )
        };
        CriterionOutcome {
            id,
            name,
            passed: self.failures.is_empty(),
            detail,
            limit: Duration::from_secs(limit_secs),
        }
    }
}

fn fan(expr: &str) -> Fan {
    catalog_fan(expr).expect("catalog expressions here are valid")
}

/// E2 anti-diagonals against the Betti formula, with odd degrees zero and the sum rule.
pub fn criterion_1() -> CriterionOutcome {
    let mut c = Checker::new();
    for expr in COMPLETE_CATALOG {
        let f = fan(expr);
        let diagonals = match E1Page::build(&f).and_then(|e1| e1.page2()) {
            Ok(e2) => e2.anti_diagonals(),
            Err(e) => {
                c.check(false, || format!("{expr}: {e}"));
                continue;
            }
        };
        let betti = match betti_formula(&f) {
            Ok(b) => b,
            Err(e) => {
                c.check(false, || format!("{expr}: {e}"));
                continue;
            }
        };
        for (m, &dim) in diagonals.iter().enumerate() {
            let expected = if m % 2 == 1 {
                0
            } else {
                betti.even.get(m / 2).copied().unwrap_or(0)
            };
            c.check(dim as i64 == expected, || {
                format!("{expr}: degree {m} has dimension {dim}, formula gives {expected}")
            });
        }
        c.check(betti.sum_rule_holds(), || {
            format!("{expr}: Betti sum {} but {} maximal cones", betti.sum, betti.max_cones)
        });
    }
    c.finish(1, "E2 anti-diagonals match the Betti formula", 10)
}

/// `KH_n = K_n(R)^m` for projective simplicial catalog fans and `n` in `0..=4`.
pub fn criterion_2() -> CriterionOutcome {
    let mut c = Checker::new();
    for expr in COMPLETE_CATALOG {
        let f = fan(expr);
        let m = f.max_cones().len();
        let assembly = match KhAssembly::new(&f, None) {
            Ok(a) => a,
            Err(e) => {
                c.check(false, || format!("{expr}: {e}"));
                continue;
            }
        };
        c.check(assembly.regime == FanRegime::ProjectiveSimplicial, || {
            format!("{expr}: regime {}", assembly.regime)
        });
        for n in 0..=4 {
            match assembly.kh_ranks(n) {
                Ok(row) => c.check(row.terms == [KTerm { q: n, mult: m }], || {
                    format!("{expr}: {row}, expected K_{n}(R)^{m}")
                }),
                Err(e) => c.check(false, || format!("{expr}: {e}")),
            }
        }
    }
    for (expr, m) in [("projective_space(2)", 3), ("hirzebruch(1)", 4)] {
        c.check(fan(expr).max_cones().len() == m, || format!("{expr}: m != {m}"));
    }
    c.finish(2, "rank tables are K_n(R)^m on projective simplicial fans", 5)
}

/// The torus fan `{0}` in `Z^d`: `m_{n,q} = C(d, n-q)`.
pub fn criterion_3() -> CriterionOutcome {
    let mut c = Checker::new();
    for d in 0..=4 {
        let assembly = match KhAssembly::new(&fan(&format!("torus({d})")), None) {
            Ok(a) => a,
            Err(e) => {
                c.check(false, || format!("torus({d}): {e}"));
                continue;
            }
        };
        for n in 0..=2 * d + 1 {
            let row = match assembly.kh_ranks(n) {
                Ok(row) => row,
                Err(e) => {
                    c.check(false, || format!("torus({d}): {e}"));
                    continue;
                }
            };
            for q in 0..=n + 1 {
                let got = row.terms.iter().find(|t| t.q == q).map_or(0, |t| t.mult);
                let expected = if q <= n { binomial(d, n - q) } else { 0 };
                c.check(got == expected, || {
                    format!("torus({d}) n={n} q={q}: {got}, expected {expected}")
                });
            }
        }
    }
    c.finish(3, "torus ranks are binomial", 1)
}

/// `c_*` commutes with `d1`, scales row `q` by `c^q`, and is multiplicative.
pub fn criterion_4() -> CriterionOutcome {
    let mut c = Checker::new();
    let cs = [2u64, 3, 5];
    for expr in COMPLETE_CATALOG.iter().chain(&EXTRA_CATALOG) {
        let e1 = match E1Page::build(&fan(expr)) {
            Ok(e1) => e1,
            Err(e) => {
                c.check(false, || format!("{expr}: {e}"));
                continue;
            }
        };
        for &k in &cs {
            match frobenius_on_e1(&e1, k) {
                Ok((_, report)) => {
                    c.check(report.commutes_with_d1, || format!("{expr} c={k}: does not commute with d1"));
                    c.check(report.row_eigenvalues_hold, || format!("{expr} c={k}: wrong row eigenvalue"));
                }
                Err(e) => c.check(false, || format!("{expr}: {e}")),
            }
            for &k2 in &cs {
                let ok = frobenius_is_multiplicative(&e1, k, k2).unwrap_or(false);
                c.check(ok, || format!("{expr}: ({k}*{k2})_* != {k}_* {k2}_*"));
            }
        }
    }
    c.finish(4, "Frobenius action and weights", 10)
}

/// The empirical torsion gcd divides `(2^{r-1}-1)(3^{r-1}-1)` part by part.
pub fn criterion_5() -> CriterionOutcome {
    let mut c = Checker::new();
    for r in 2..=6 {
        match torsion_bound(r) {
            Ok(t) => {
                c.check(t.divides_bound, || format!("r={r}: gcd {} does not divide {}", t.empirical_gcd, t.bound));
                c.check(t.odd_part_divides, || format!("r={r}: odd part of {} fails", t.empirical_gcd));
                c.check(t.two_part_divides, || format!("r={r}: 2-part of {} fails", t.empirical_gcd));
            }
            Err(e) => c.check(false, || format!("r={r}: {e}")),
        }
    }
    c.finish(5, "torsion bound arithmetic", 1)
}

fn monoid(rank: usize, gens: &[&[i64]]) -> AffineMonoid {
    AffineMonoid::from_ints(rank, gens).expect("fixed generators are valid")
}

/// The three monoid examples: normalizations, gaps, conductors and Frobenius.
pub fn criterion_6() -> CriterionOutcome {
    let mut c = Checker::new();
    let bound = 12;

    let m = monoid(1, &[&[2], &[3]]);
    let one = vec![vector(&[1])];
    c.check(m.normalization().generators() == one.as_slice(), || "<2,3>: n(M) != Z+".into());
    match m.seminormalization() {
        Ok(sn) => c.check(sn.generators() == one.as_slice(), || "<2,3>: sn(M) != Z+".into()),
        Err(e) => c.check(false, || format!("<2,3>: {e}")),
    }
    match m.verify_conjecture_k0(bound) {
        Ok(report) => {
            c.check(report.gap.elements == one, || format!("<2,3>: gap {:?}", report.gap.elements));
            c.check(report.clause_a == ClauseVerdict::Pass, || format!("<2,3>: clause (a) {}", report.clause_a));
            c.check(report.clause_b == ClauseVerdict::Pass, || format!("<2,3>: clause (b) {}", report.clause_b));
            let m_f: Vec<Vector> = report
                .faces
                .iter()
                .filter_map(|f| f.certificate.as_ref().map(|cert| cert.element.clone()))
                .collect();
            c.check(m_f == vec![vector(&[2])], || format!("<2,3>: conductor elements {m_f:?}"));
            c.check(report.nilpotence_c0 == Some(2), || format!("<2,3>: c0 = {:?}", report.nilpotence_c0));
        }
        Err(e) => c.check(false, || format!("<2,3>: {e}")),
    }

    let m = monoid(2, &[&[2, 0], &[0, 1], &[1, 1]]);
    c.check(matches!(m.is_seminormal(bound), Ok(true)), || "<(2,0),(0,1),(1,1)>: not seminormal".into());
    c.check(matches!(m.is_normal(), Ok(false)), || "<(2,0),(0,1),(1,1)>: normal".into());

    let m = monoid(2, &[&[2, 0], &[3, 0], &[0, 1], &[1, 1]]);
    let x = vector(&[1, 0]);
    match m.gap(bound) {
        Ok(gap) => {
            c.check(gap.elements == vec![x.clone()], || format!("axis monoid: gap {:?}", gap.elements));
            for k in 2..=16 {
                let killed = m.frobenius_on_gap(k, &gap).map(|f| f.is_zero).unwrap_or(false);
                c.check(killed, || format!("axis monoid: c={k} does not kill the gap"));
            }
        }
        Err(e) => c.check(false, || format!("axis monoid: {e}")),
    }
    // every c >= threshold has cx in M, which covers all c beyond the sampled range
    c.check(matches!(m.eventual_multiple_threshold(&x, bound), Ok(Some(2))), || {
        "axis monoid: multiples of (1,0) do not all lie in M from c = 2 on".into()
    });
    c.finish(6, "monoid suite", 5)
}

/// Irreducible lattice points of the cone in a box, by brute force: nonzero points
/// that are not a sum of two nonzero cone points.
pub fn brute_force_hilbert_basis(cone: &Cone, lo: &[i64], hi: &[i64]) -> BTreeSet<Vector> {
    let mut points: Vec<Vector> = vec![Vec::new()];
    for (&a, &b) in lo.iter().zip(hi) {
        points = points
            .into_iter()
            .flat_map(|p| {
                (a..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(BigInt::from(x));
                    q
                })
            })
            .collect();
    }
    let inside: Vec<Vector> = points
        .into_iter()
        .filter(|p| cone.contains(p) && p.iter().any(|x| !x.is_zero()))
        .collect();
    let set: BTreeSet<Vector> = inside.iter().cloned().collect();
    inside
        .iter()
        .filter(|p| {
            !inside.iter().any(|q| {
                let diff: Vector = p.iter().zip(q.iter()).map(|(a, b)| a - b).collect();
                q != *p && diff.iter().any(|x| !x.is_zero()) && set.contains(&diff)
            })
        })
        .cloned()
        .collect()
}

/// Hilbert bases of `cone((1,0),(1,k))` for `k <= 5` against brute force.
pub fn criterion_7() -> CriterionOutcome {
    let mut c = Checker::new();
    for k in 1..=5i64 {
        let cone = Cone::from_generators(2, &[vector(&[1, 0]), vector(&[1, k])]).expect("valid cone");
        let expected: BTreeSet<Vector> = (0..=k).map(|i| vector(&[1, i])).collect();
        let brute = brute_force_hilbert_basis(&cone, &[0, 0], &[3, 3 * k]);
        let computed: BTreeSet<Vector> = hilbert_basis(&cone, &Lattice::full(2))
            .map(|v| v.into_iter().collect())
            .unwrap_or_default();
        c.check(brute == expected, || format!("k={k}: brute force gives {brute:?}"));
        c.check(computed == expected, || format!("k={k}: Hilbert basis {computed:?}"));
    }
    c.finish(7, "Hilbert bases against brute force", 5)
}

fn simplex(d: usize) -> LatticePolytope {
    let mut pts = vec![vec![BigInt::zero(); d]];
    for i in 0..d {
        let mut e = vec![BigInt::zero(); d];
        e[i] = BigInt::one();
        pts.push(e);
    }
    LatticePolytope::new(d, &pts).expect("the standard simplex is full-dimensional")
}

/// Split counts `n_P + 1` for standard simplices and the unit square.
pub fn criterion_8() -> CriterionOutcome {
    let mut c = Checker::new();
    for d in 1..=3 {
        match crate::kh::proj_lower_bounds(&simplex(d)) {
            Ok(s) => c.check(s.split_count == d + 1 && s.vertices == d + 1, || {
                format!("simplex {d}: split count {}, vertices {}", s.split_count, s.vertices)
            }),
            Err(e) => c.check(false, || format!("simplex {d}: {e}")),
        }
    }
    let square = LatticePolytope::new(2, &[vector(&[0, 0]), vector(&[1, 0]), vector(&[0, 1]), vector(&[1, 1])])
        .expect("the unit square is full-dimensional");
    match crate::kh::proj_lower_bounds(&square) {
        Ok(s) => c.check(s.split_count == 2 && s.vertices == 4, || {
            format!("square: split count {}, vertices {}", s.split_count, s.vertices)
        }),
        Err(e) => c.check(false, || format!("square: {e}")),
    }
    c.finish(8, "polytope split counts", 1)
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> IntegerMatrix {
    let entries: Vec<BigInt> = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-20i64..=20)))
        .collect();
    IntegerMatrix::new(rows, cols, entries).expect("entry count matches")
}

/// Smith forms, functoriality of exterior powers and kernel saturation on random
/// matrices.
pub fn criterion_9() -> CriterionOutcome {
    let mut c = Checker::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for i in 0..500 {
        let rows = rng.gen_range(1..=6);
        let cols = rng.gen_range(1..=6);
        let a = random_matrix(&mut rng, rows, cols);
        let snf = smith_normal_form(&a);
        let uav = (&(&snf.u * &a)) * &snf.v;
        c.check(uav == snf.d, || format!("matrix {i}: UAV != D"));
        c.check(snf.u.is_unimodular() && snf.v.is_unimodular(), || format!("matrix {i}: transforms not unimodular"));
        c.check(snf.d.is_diagonal(), || format!("matrix {i}: D not diagonal"));
        let diag = snf.invariant_factors();
        let nonzero: Vec<&BigInt> = diag.iter().take_while(|x| !x.is_zero()).collect();
        let chain = nonzero.iter().all(|x| x.sign() == num_bigint::Sign::Plus)
            && nonzero.windows(2).all(|w| (w[1] % w[0]).is_zero())
            && diag[nonzero.len()..].iter().all(|x| x.is_zero());
        c.check(chain, || format!("matrix {i}: diagonal {diag:?} is not a divisibility chain"));

        let kernel = kernel_lattice(&a);
        let basis = kernel.basis_vectors();
        c.check(basis.iter().all(|k| a.apply(k).iter().all(|x| x.is_zero())), || {
            format!("matrix {i}: kernel basis not in the kernel")
        });
        c.check(kernel.rank() == cols - a.rank(), || format!("matrix {i}: kernel rank"));
        // saturated iff Z^cols / kernel is torsion-free
        let quotient = cokernel_structure(&IntegerMatrix::from_vectors(cols, &basis).transpose());
        c.check(quotient.torsion.is_empty(), || format!("matrix {i}: kernel not saturated"));
    }
    for i in 0..200 {
        let (m, k, n) = (rng.gen_range(1..=5), rng.gen_range(1..=5), rng.gen_range(1..=5));
        let f = random_matrix(&mut rng, m, k);
        let g = random_matrix(&mut rng, k, n);
        let a = rng.gen_range(0..=m.min(k).min(n));
        let lhs = exterior_power_map(&(&f * &g), a);
        let rhs = &exterior_power_map(&f, a) * &exterior_power_map(&g, a);
        c.check(lhs == rhs, || format!("pair {i}: Λ^{a}(FG) != Λ^{a}F Λ^{a}G"));
    }
    c.finish(9, "linear algebra property suite", 30)
}

pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}
