//! Cohomological outputs checked against independently computed values.

use std::collections::BTreeSet;

use toric_kh::linalg::{binomial, IntegerMatrix, Vector};
use toric_kh::polyhedral::{catalog_fan, Fan};
use toric_kh::spectral::{torsion_bound, E1Page, Nerve};

/// Rays shared by every cone of the tuple; for simplicial fans they span `σ_I`.
fn common_rays(fan: &Fan, indices: &[usize]) -> Vec<Vector> {
    let sets: Vec<BTreeSet<Vector>> = indices
        .iter()
        .map(|&i| fan.max_cones()[i].rays().iter().cloned().collect())
        .collect();
    sets[0]
        .iter()
        .filter(|r| sets.iter().all(|s| s.contains(*r)))
        .cloned()
        .collect()
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn anti_diagonals(expr: &str) -> Vec<usize> {
    let fan = catalog_fan(expr).unwrap();
    let mut diag = E1Page::build(&fan).unwrap().page2().unwrap().anti_diagonals();
    diag.truncate(2 * fan.dim() + 1);
    diag
}

#[test]
fn nerve_ranks_match_common_rays() {
    for expr in ["projective_space(2)", "hirzebruch(2)", "projective_space(3)", "weighted_projective(1,2,3)"] {
        let fan = catalog_fan(expr).unwrap();
        let nerve = Nerve::build(&fan);
        for level in nerve.levels() {
            for t in level {
                let rays = common_rays(&fan, &t.indices);
                let span = IntegerMatrix::from_vectors(fan.dim(), &rays).rank();
                assert_eq!(t.rank(), fan.dim() - span, "{expr} {:?}", t.indices);
            }
        }
        let e1 = E1Page::from_nerve(nerve.clone()).unwrap();
        for p in 0..e1.columns() {
            for q in 0..e1.rows() {
                let expected: usize = nerve.level(p).iter().map(|t| binomial(t.rank(), q)).sum();
                assert_eq!(e1.rank(p, q), expected);
            }
        }
    }
}

#[test]
fn products_follow_kunneth() {
    let p1 = anti_diagonals("projective_space(1)");
    let p2 = anti_diagonals("projective_space(2)");
    let h2 = anti_diagonals("hirzebruch(2)");
    assert_eq!(
        anti_diagonals("product(projective_space(1),projective_space(2))"),
        convolve(&p1, &p2)
    );
    assert_eq!(
        anti_diagonals("product(projective_space(1),hirzebruch(2))"),
        convolve(&p1, &h2)
    );
}

#[test]
fn projective_spaces_have_one_class_per_even_degree() {
    for d in 1..=3 {
        let expected: Vec<usize> = (0..=2 * d).map(|m| usize::from(m % 2 == 0)).collect();
        assert_eq!(anti_diagonals(&format!("projective_space({d})")), expected);
    }
    assert_eq!(anti_diagonals("weighted_projective(1,1,2)"), vec![1, 0, 1, 0, 1]);
}

#[test]
fn torus_rows_are_exterior_powers() {
    for d in 0..=4 {
        let e2 = E1Page::build(&catalog_fan(&format!("torus({d})")).unwrap())
            .unwrap()
            .page2()
            .unwrap();
        for q in 0..=d {
            assert_eq!(e2.rational_dim(0, q), binomial(d, q));
        }
    }
}

#[test]
fn torsion_gcds_in_machine_integers() {
    for r in 2u32..=6 {
        let mut g: u128 = 0;
        for c in 2u128..=7 {
            for q in r - 1..=r + 4 {
                let term = c.pow(q + 1 - r) * (c.pow(r - 1) - 1);
                g = gcd(g, term);
            }
        }
        let t = torsion_bound(r).unwrap();
        assert_eq!(t.empirical_gcd, g.into());
        assert_eq!(t.bound, ((2u128.pow(r - 1) - 1) * (3u128.pow(r - 1) - 1)).into());
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
