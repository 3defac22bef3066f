use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::catalog::{product, projective_space};
use super::{Fan, PolyhedralError};
use crate::linalg::lp::{LinearProgram, LpOutcome, Relation};
use crate::linalg::rational::to_rational;
use crate::linalg::Vector;

/// How (quasi-)projectivity of a fan was settled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectivityCertificate {
    /// Complete with a strictly convex support function.
    Projective,
    /// A subfan of the named complete projective fan.
    SubfanOf(String),
    /// Complete but admits no strictly convex support function, so it cannot be a
    /// proper subfan of anything either.
    NotQuasiProjective,
    /// No superfan was supplied and none of the standard candidates contains the fan.
    Uncertified,
}

/// Decides projectivity of a complete fan by maximizing the convexity slack of a
/// piecewise linear support function.
pub fn is_projective(fan: &Fan) -> Result<bool, PolyhedralError> {
    Ok(support_function(fan)?.is_some())
}

/// One linear functional per maximal cone, agreeing on common faces and strictly
/// convex across every wall; `None` when no such function exists.
pub fn support_function(fan: &Fan) -> Result<Option<Vec<Vec<BigRational>>>, PolyhedralError> {
    if !fan.is_complete() {
        return Err(PolyhedralError::NotComplete);
    }
    let d = fan.dim();
    let n = fan.max_cones().len();
    if d == 0 {
        return Ok(Some(vec![Vec::new(); n]));
    }
    let slack = n * d;
    let mut lp = LinearProgram::new(n * d + 1);
    let mut objective = vec![BigRational::zero(); n * d + 1];
    objective[slack] = BigRational::one();
    lp.set_objective(objective);
    let mut bound = vec![BigRational::zero(); n * d + 1];
    bound[slack] = BigRational::one();
    lp.add_constraint(bound, Relation::LessEq, BigRational::one());

    // coefficients of <u_a - u_b, r> (+ extra on the slack)
    let row = |a: usize, b: usize, r: &Vector, slack_coeff: i64| {
        let mut coeffs = vec![BigRational::zero(); n * d + 1];
        for (k, x) in to_rational(r).into_iter().enumerate() {
            coeffs[a * d + k] += &x;
            coeffs[b * d + k] -= &x;
        }
        coeffs[slack] = BigRational::from_integer(slack_coeff.into());
        coeffs
    };
    for i in 0..n {
        for j in i + 1..n {
            let meet = fan.intersection(&[i, j]);
            for r in meet.rays() {
                lp.add_constraint(row(i, j, r, 0), Relation::Equal, BigRational::zero());
            }
            if meet.dim() + 1 != d {
                continue;
            }
            for (a, b) in [(i, j), (j, i)] {
                for r in fan.max_cones()[a].rays() {
                    if !meet.contains(r) {
                        lp.add_constraint(row(a, b, r, -1), Relation::GreaterEq, BigRational::zero());
                    }
                }
            }
        }
    }
    match lp.solve() {
        LpOutcome::Optimal { value, point } if value.is_positive() => Ok(Some(
            (0..n).map(|i| point[i * d..(i + 1) * d].to_vec()).collect(),
        )),
        LpOutcome::Optimal { .. } => Ok(None),
        other => unreachable!("support function program is feasible and bounded: {other:?}"),
    }
}

/// Certifies quasi-projectivity.
///
/// A complete fan is decided outright. Otherwise the fan must be a subfan of a
/// complete projective fan: the supplied one if given, else projective space or a
/// product of projective lines of the same dimension.
pub fn quasi_projective_certificate(
    fan: &Fan,
    superfan: Option<&Fan>,
) -> Result<ProjectivityCertificate, PolyhedralError> {
    if fan.is_complete() {
        return Ok(if is_projective(fan)? {
            ProjectivityCertificate::Projective
        } else {
            ProjectivityCertificate::NotQuasiProjective
        });
    }
    if let Some(sup) = superfan {
        if !sup.contains_fan(fan) {
            return Err(PolyhedralError::NotASubfan);
        }
        if !is_projective(sup)? {
            return Ok(ProjectivityCertificate::Uncertified);
        }
        return Ok(ProjectivityCertificate::SubfanOf("supplied fan".into()));
    }
    let d = fan.dim();
    let mut candidates = vec![(format!("projective_space({d})"), projective_space(d)?)];
    if d >= 1 {
        let mut lines = projective_space(1)?;
        for _ in 1..d {
            lines = product(&lines, &projective_space(1)?)?;
        }
        candidates.push((format!("projective_space(1)^{d}"), lines));
    }
    for (name, candidate) in candidates {
        if candidate.contains_fan(fan) && is_projective(&candidate)? {
            return Ok(ProjectivityCertificate::SubfanOf(name));
        }
    }
    Ok(ProjectivityCertificate::Uncertified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;
    use crate::polyhedral::catalog::{hirzebruch, weighted_projective};

    fn fan(dim: usize, cones: &[&[&[i64]]]) -> Fan {
        let gens: Vec<Vec<Vector>> = cones
            .iter()
            .map(|c| c.iter().map(|g| vector(g)).collect())
            .collect();
        Fan::new(dim, &gens).unwrap()
    }

    #[test]
    fn standard_fans_are_projective() {
        assert!(is_projective(&projective_space(2).unwrap()).unwrap());
        assert!(is_projective(&projective_space(3).unwrap()).unwrap());
        let p1 = projective_space(1).unwrap();
        assert!(is_projective(&product(&p1, &p1).unwrap()).unwrap());
        assert!(is_projective(&hirzebruch(2).unwrap()).unwrap());
        assert!(is_projective(&weighted_projective(&[1, 1, 2]).unwrap()).unwrap());
    }

    #[test]
    fn support_function_is_strictly_convex_on_p2() {
        let f = projective_space(2).unwrap();
        let u = support_function(&f).unwrap().unwrap();
        assert_eq!(u.len(), 3);
    }

    #[test]
    fn non_complete_fans_are_rejected() {
        let orthant = fan(2, &[&[&[1, 0], &[0, 1]]]);
        assert_eq!(is_projective(&orthant), Err(PolyhedralError::NotComplete));
    }

    #[test]
    fn non_projective_complete_fan() {
        // cone over a non-regular triangulation of a triangle with a rotated inner
        // triangle, closed off below by the ray (-1,-1,-1)
        let (a, b, c): (&[i64], &[i64], &[i64]) = (&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]);
        let (ia, ib, ic): (&[i64], &[i64], &[i64]) = (&[2, 1, 1], &[1, 2, 1], &[1, 1, 2]);
        let low: &[i64] = &[-1, -1, -1];
        let f = fan(
            3,
            &[
                &[a, b, ib],
                &[a, ib, ia],
                &[b, c, ic],
                &[b, ic, ib],
                &[c, a, ia],
                &[c, ia, ic],
                &[ia, ib, ic],
                &[a, b, low],
                &[b, c, low],
                &[c, a, low],
            ],
        );
        assert!(f.is_complete() && f.is_simplicial());
        assert!(!is_projective(&f).unwrap());
        assert_eq!(
            quasi_projective_certificate(&f, None).unwrap(),
            ProjectivityCertificate::NotQuasiProjective
        );
    }

    #[test]
    fn quasi_projective_certificates() {
        let orthant = fan(2, &[&[&[1, 0], &[0, 1]]]);
        assert_eq!(
            quasi_projective_certificate(&orthant, None).unwrap(),
            ProjectivityCertificate::SubfanOf("projective_space(2)".into())
        );
        let quadrant = fan(2, &[&[&[1, 0], &[0, -1]]]);
        assert_eq!(
            quasi_projective_certificate(&quadrant, None).unwrap(),
            ProjectivityCertificate::SubfanOf("projective_space(1)^2".into())
        );
        let p2 = projective_space(2).unwrap();
        assert_eq!(
            quasi_projective_certificate(&p2, None).unwrap(),
            ProjectivityCertificate::Projective
        );
        assert_eq!(
            quasi_projective_certificate(&quadrant, Some(&p2)),
            Err(PolyhedralError::NotASubfan)
        );
    }
}
