//! Standard fans with fixed ray and maximal-cone orderings.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Cone, Fan, FanProvenance, PolyhedralError};
use crate::linalg::{hermite_normal_form, primitive, vector, IntegerMatrix, Vector};

/// A parsed catalog expression such as `product(projective_space(1),projective_space(1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogEntry {
    ProjectiveSpace(usize),
    Hirzebruch(i64),
    WeightedProjective(Vec<i64>),
    Product(Box<CatalogEntry>, Box<CatalogEntry>),
    AffineOrthant(usize),
    Torus(usize),
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Fan, PolyhedralError> {
        let fan = match self {
            CatalogEntry::ProjectiveSpace(d) => projective_space(*d)?,
            CatalogEntry::Hirzebruch(a) => hirzebruch(*a)?,
            CatalogEntry::WeightedProjective(w) => weighted_projective(w)?,
            CatalogEntry::Product(a, b) => product(&a.build()?, &b.build()?)?,
            CatalogEntry::AffineOrthant(d) => affine_orthant(*d)?,
            CatalogEntry::Torus(d) => torus(*d)?,
        };
        Ok(fan.with_provenance(FanProvenance::Catalog(self.to_string())))
    }
}

impl std::fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CatalogEntry::ProjectiveSpace(d) => write!(f, "projective_space({d})"),
            CatalogEntry::Hirzebruch(a) => write!(f, "hirzebruch({a})"),
            CatalogEntry::WeightedProjective(w) => {
                write!(f, "weighted_projective({})", w.iter().join(","))
            }
            CatalogEntry::Product(a, b) => write!(f, "product({a},{b})"),
            CatalogEntry::AffineOrthant(d) => write!(f, "affine_orthant({d})"),
            CatalogEntry::Torus(d) => write!(f, "torus({d})"),
        }
    }
}

pub fn catalog_fan(expression: &str) -> Result<Fan, PolyhedralError> {
    parse_catalog_expression(expression)?.build()
}

pub fn parse_catalog_expression(expression: &str) -> Result<CatalogEntry, PolyhedralError> {
    let compact: String = expression.chars().filter(|c| !c.is_whitespace()).collect();
    let (entry, rest) = parse_entry(&compact)?;
    if !rest.is_empty() {
        return Err(PolyhedralError::UnknownCatalogEntry(expression.to_string()));
    }
    Ok(entry)
}

fn parse_entry(s: &str) -> Result<(CatalogEntry, &str), PolyhedralError> {
    let open = s
        .find('(')
        .ok_or_else(|| PolyhedralError::UnknownCatalogEntry(s.to_string()))?;
    let name = &s[..open];
    let body = &s[open + 1..];
    if name == "product" {
        let (a, rest) = parse_entry(body)?;
        let rest = rest
            .strip_prefix(',')
            .ok_or_else(|| invalid(name, "expected two comma-separated fans"))?;
        let (b, rest) = parse_entry(rest)?;
        let rest = rest
            .strip_prefix(')')
            .ok_or_else(|| invalid(name, "missing closing parenthesis"))?;
        return Ok((CatalogEntry::Product(Box::new(a), Box::new(b)), rest));
    }
    let close = body
        .find(')')
        .ok_or_else(|| invalid(name, "missing closing parenthesis"))?;
    let args: Vec<i64> = if body[..close].is_empty() {
        Vec::new()
    } else {
        body[..close]
            .split(',')
            .map(|a| a.parse::<i64>().map_err(|_| invalid(name, "arguments must be integers")))
            .collect::<Result<_, _>>()?
    };
    let rest = &body[close + 1..];
    let single = |args: &[i64]| -> Result<i64, PolyhedralError> {
        match args {
            [x] => Ok(*x),
            _ => Err(invalid(name, "expected exactly one argument")),
        }
    };
    let count = |args: &[i64]| -> Result<usize, PolyhedralError> {
        usize::try_from(single(args)?).map_err(|_| invalid(name, "dimension must be nonnegative"))
    };
    let entry = match name {
        "projective_space" => CatalogEntry::ProjectiveSpace(count(&args)?),
        "hirzebruch" => CatalogEntry::Hirzebruch(single(&args)?),
        "weighted_projective" => CatalogEntry::WeightedProjective(args),
        "affine_orthant" => CatalogEntry::AffineOrthant(count(&args)?),
        "torus" => CatalogEntry::Torus(count(&args)?),
        _ => return Err(PolyhedralError::UnknownCatalogEntry(name.to_string())),
    };
    Ok((entry, rest))
}

fn invalid(name: &str, reason: &str) -> PolyhedralError {
    PolyhedralError::InvalidCatalogParameters {
        name: name.to_string(),
        reason: reason.to_string(),
    }
}

fn unit(d: usize, i: usize) -> Vector {
    let mut e = vec![BigInt::zero(); d];
    e[i] = BigInt::one();
    e
}

/// Rays `e_1, ..., e_d, -(e_1 + ... + e_d)`; maximal cones are the `d`-subsets of rays
/// in lexicographic order.
pub fn projective_space(d: usize) -> Result<Fan, PolyhedralError> {
    if d == 0 {
        return torus(0);
    }
    let mut rays: Vec<Vector> = (0..d).map(|i| unit(d, i)).collect();
    rays.push(vec![-BigInt::one(); d]);
    simplicial_from_subsets(d, &rays)
}

/// Rays `(1,0), (0,1), (-1,a), (0,-1)`, maximal cones between cyclically consecutive rays.
pub fn hirzebruch(a: i64) -> Result<Fan, PolyhedralError> {
    let rays = [vector(&[1, 0]), vector(&[0, 1]), vector(&[-1, a]), vector(&[0, -1])];
    let cones: Vec<Vec<Vector>> = (0..4)
        .map(|i| vec![rays[i].clone(), rays[(i + 1) % 4].clone()])
        .collect();
    Fan::new(2, &cones)
}

/// Fan of weighted projective space: primitive rays `v_0, ..., v_d` spanning `Z^d` with
/// `sum w_i v_i = 0`, one ray per weight in weight order.
///
/// When some weight equals 1, say `w_k`, the other rays are the unit vectors in order
/// and `v_k = -sum_{i != k} w_i v_i`. Otherwise the rays are the images of the unit
/// vectors in `Z^{d+1} / Z w`.
pub fn weighted_projective(weights: &[i64]) -> Result<Fan, PolyhedralError> {
    let name = "weighted_projective";
    if weights.len() < 2 {
        return Err(invalid(name, "need at least two weights"));
    }
    if weights.iter().any(|&w| w < 1) {
        return Err(invalid(name, "weights must be positive"));
    }
    let d = weights.len() - 1;
    let wv: Vec<BigInt> = weights.iter().map(|&w| BigInt::from(w)).collect();
    if primitive(&wv) != wv {
        return Err(invalid(name, "weights must be coprime"));
    }
    let rays: Vec<Vector> = match weights.iter().position(|&w| w == 1) {
        Some(k) => {
            let mut rays = Vec::with_capacity(d + 1);
            let mut next = 0;
            for i in 0..=d {
                if i == k {
                    rays.push(Vec::new());
                } else {
                    rays.push(unit(d, next));
                    next += 1;
                }
            }
            rays[k] = (0..d)
                .map(|j| {
                    -(0..=d)
                        .filter(|&i| i != k)
                        .map(|i| &wv[i] * &rays[i][j])
                        .sum::<BigInt>()
                })
                .collect();
            rays
        }
        None => {
            // U w^T = (g, 0, ..., 0)^T with U unimodular; rows 1..=d of U project
            // Z^{d+1} onto the quotient by Z w.
            let col = IntegerMatrix::from_vectors(1, &wv.iter().map(|x| vec![x.clone()]).collect::<Vec<_>>());
            let (_, u) = hermite_normal_form(&col);
            (0..=d)
                .map(|i| primitive(&(1..=d).map(|r| u.get(r, i).clone()).collect::<Vec<_>>()))
                .collect()
        }
    };
    simplicial_from_subsets(d, &rays)
}

fn simplicial_from_subsets(d: usize, rays: &[Vector]) -> Result<Fan, PolyhedralError> {
    let cones: Vec<Vec<Vector>> = rays.iter().cloned().combinations(d).collect();
    Fan::new(d, &cones)
}

/// Maximal cones `σ × τ` in lexicographic order of the factor indices.
pub fn product(a: &Fan, b: &Fan) -> Result<Fan, PolyhedralError> {
    let d = a.dim() + b.dim();
    let mut cones = Vec::new();
    for s in a.max_cones() {
        for t in b.max_cones() {
            let mut gens: Vec<Vector> = Vec::new();
            for r in s.rays() {
                let mut v = r.clone();
                v.extend(std::iter::repeat_n(BigInt::zero(), b.dim()));
                gens.push(v);
            }
            for r in t.rays() {
                let mut v = vec![BigInt::zero(); a.dim()];
                v.extend(r.iter().cloned());
                gens.push(v);
            }
            cones.push(Cone::from_generators(d, &gens)?);
        }
    }
    Fan::from_cones(d, cones)
}

/// The single cone spanned by the unit vectors, with all its faces.
pub fn affine_orthant(d: usize) -> Result<Fan, PolyhedralError> {
    Fan::new(d, &[(0..d).map(|i| unit(d, i)).collect()])
}

/// The fan `{0}` in `R^d`.
pub fn torus(d: usize) -> Result<Fan, PolyhedralError> {
    Fan::new(d, &[Vec::new()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projective_line() {
        let f = projective_space(1).unwrap();
        assert_eq!(f.max_cones().len(), 2);
        assert!(f.is_complete() && f.is_smooth());
    }

    #[test]
    fn hirzebruch_surfaces() {
        for a in 0..4 {
            let f = hirzebruch(a).unwrap();
            assert_eq!(f.max_cones().len(), 4);
            assert!(f.is_complete() && f.is_smooth(), "a = {a}");
        }
        assert_eq!(
            hirzebruch(1).unwrap().rays(),
            vec![vector(&[-1, 1]), vector(&[0, -1]), vector(&[0, 1]), vector(&[1, 0])]
        );
    }

    #[test]
    fn weighted_projective_plane() {
        let f = weighted_projective(&[1, 1, 2]).unwrap();
        assert_eq!(f.max_cones().len(), 3);
        assert_eq!(
            f.rays(),
            vec![vector(&[-1, -2]), vector(&[0, 1]), vector(&[1, 0])]
        );
        assert!(f.is_complete() && f.is_simplicial() && !f.is_smooth());
        assert!(weighted_projective(&[1, 1, 1]).unwrap().is_smooth());
    }

    #[test]
    fn weighted_projective_without_unit_weight() {
        let f = weighted_projective(&[2, 3, 5]).unwrap();
        assert!(f.is_complete() && f.is_simplicial());
        assert!(weighted_projective(&[2, 4]).is_err());
    }

    #[test]
    fn products_and_affine() {
        let p1 = projective_space(1).unwrap();
        let f = product(&p1, &p1).unwrap();
        assert_eq!(f.max_cones().len(), 4);
        assert!(f.is_complete() && f.is_smooth());
        assert_eq!(f.f_vector(), vec![1, 4, 4]);
        let a = affine_orthant(3).unwrap();
        assert_eq!(a.max_cones().len(), 1);
        assert!(!a.is_complete());
        assert_eq!(torus(3).unwrap().f_vector(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn expressions() {
        let e = parse_catalog_expression("product(projective_space(1), projective_space(1))").unwrap();
        assert_eq!(e.to_string(), "product(projective_space(1),projective_space(1))");
        assert_eq!(
            parse_catalog_expression("weighted_projective(1,1,2)").unwrap(),
            CatalogEntry::WeightedProjective(vec![1, 1, 2])
        );
        assert!(matches!(
            parse_catalog_expression("grassmannian(2)"),
            Err(PolyhedralError::UnknownCatalogEntry(_))
        ));
        assert!(parse_catalog_expression("projective_space(x)").is_err());
        let f = catalog_fan("hirzebruch(2)").unwrap();
        assert_eq!(f.provenance(), &FanProvenance::Catalog("hirzebruch(2)".into()));
    }
}
