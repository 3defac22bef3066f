//! JSON input schemas, canonical forms and report serialization.
//!
//! Integers are read from JSON numbers or decimal strings and always written as
//! strings, so nothing passes through a float.

use num_bigint::BigInt;
use serde::Serializer;
use serde_json::{json, Map, Value};

use crate::linalg::Vector;
use crate::monoid::{AffineMonoid, MonoidError};
use crate::polyhedral::{Fan, LatticePolytope, PolyhedralError};
use crate::spectral::{betti_formula, purity_check, E1Page, SpectralError};

pub fn serialize_bigints<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

pub fn serialize_bigint<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("schema violation at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid fan: {0}")]
    Fan(#[from] PolyhedralError),
    #[error("invalid monoid: {0}")]
    Monoid(#[from] MonoidError),
}

fn schema(path: &str, message: impl Into<String>) -> IoError {
    IoError::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn parse_value(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

fn object<'a>(v: &'a Value, path: &str, keys: &[&str]) -> Result<&'a Map<String, Value>, IoError> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    for key in keys {
        if !obj.contains_key(*key) {
            return Err(schema(path, format!("missing key `{key}`")));
        }
    }
    if let Some(extra) = obj.keys().find(|k| !keys.contains(&k.as_str())) {
        return Err(schema(path, format!("unexpected key `{extra}`")));
    }
    Ok(obj)
}

fn integer(v: &Value, path: &str) -> Result<BigInt, IoError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(i.into())
            } else if let Some(u) = n.as_u64() {
                Ok(u.into())
            } else {
                Err(schema(path, "expected an integer, found a float"))
            }
        }
        Value::String(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| schema(path, format!("`{s}` is not a decimal integer"))),
        _ => Err(schema(path, "expected an integer (number or decimal string)")),
    }
}

fn count(v: &Value, path: &str) -> Result<usize, IoError> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| schema(path, "expected a nonnegative integer"))
}

fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, IoError> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn vectors(v: &Value, path: &str, len: usize) -> Result<Vec<Vector>, IoError> {
    array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let here = format!("{path}[{i}]");
            let entries = array(row, &here)?;
            if entries.len() != len {
                return Err(schema(&here, format!("expected {len} entries, found {}", entries.len())));
            }
            entries
                .iter()
                .enumerate()
                .map(|(j, x)| integer(x, &format!("{here}[{j}]")))
                .collect()
        })
        .collect()
}

/// `{"dim": d, "max_cones": [[generator, ...], ...]}`.
pub fn parse_fan(text: &str) -> Result<Fan, IoError> {
    let v = parse_value(text)?;
    let obj = object(&v, "$", &["dim", "max_cones"])?;
    let dim = count(&obj["dim"], "$.dim")?;
    let cones = array(&obj["max_cones"], "$.max_cones")?;
    if cones.is_empty() {
        return Err(schema("$.max_cones", "expected at least one cone"));
    }
    let gens = cones
        .iter()
        .enumerate()
        .map(|(i, c)| vectors(c, &format!("$.max_cones[{i}]"), dim))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Fan::new(dim, &gens)?)
}

/// `{"dim": d, "vertices": [point, ...]}`.
pub fn parse_polytope(text: &str) -> Result<LatticePolytope, IoError> {
    let v = parse_value(text)?;
    let obj = object(&v, "$", &["dim", "vertices"])?;
    let dim = count(&obj["dim"], "$.dim")?;
    let points = vectors(&obj["vertices"], "$.vertices", dim)?;
    Ok(LatticePolytope::new(dim, &points)?)
}

/// `{"rank": r, "generators": [vector, ...]}`.
pub fn parse_monoid(text: &str) -> Result<AffineMonoid, IoError> {
    let v = parse_value(text)?;
    let obj = object(&v, "$", &["rank", "generators"])?;
    let rank = count(&obj["rank"], "$.rank")?;
    let gens = vectors(&obj["generators"], "$.generators", rank)?;
    Ok(AffineMonoid::new(rank, &gens)?)
}

pub fn vector_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn vectors_json(vs: &[Vector]) -> Value {
    Value::Array(vs.iter().map(|v| vector_json(v)).collect())
}

/// The same fan with its maximal cones sorted; rays are already primitive and sorted
/// within each cone.
pub fn canonical_fan(fan: &Fan) -> Fan {
    let mut cones = fan.max_cones().to_vec();
    cones.sort();
    Fan::from_cones(fan.dim(), cones)
        .expect("reordering a valid fan keeps it valid")
        .with_provenance(fan.provenance().clone())
}

/// Canonical JSON of a fan: sorted cones, each by its sorted primitive rays.
pub fn fan_json(fan: &Fan) -> Value {
    let canonical = canonical_fan(fan);
    json!({
        "dim": canonical.dim(),
        "max_cones": canonical
            .max_cones()
            .iter()
            .map(|c| vectors_json(c.rays()))
            .collect::<Vec<_>>(),
    })
}

/// Compact canonical text, the key for result caching.
pub fn canonical_fan_string(fan: &Fan) -> String {
    fan_json(fan).to_string()
}

pub fn monoid_json(m: &AffineMonoid) -> Value {
    json!({ "rank": m.rank(), "generators": vectors_json(m.generators()) })
}

/// `{"E2": [[p, q, free, [torsion...]], ...], "betti", "purity", "checks"}`.
///
/// Only nonzero cells are listed. `betti` and `purity` are `null` unless the fan is
/// complete and simplicial.
pub fn e2_report(fan: &Fan) -> Result<Value, SpectralError> {
    let e1 = E1Page::build(fan)?;
    let e2 = e1.page2()?;
    let cells: Vec<Value> = e2
        .nonzero_cells()
        .map(|(&(p, q), g)| json!([p, q, g.free_rank, g.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()]))
        .collect();
    let mut checks = Map::new();
    checks.insert("d1_squared_zero".into(), Value::Bool(true));
    let (betti, purity) = if fan.is_complete() && fan.is_simplicial() {
        let b = betti_formula(fan)?;
        let pure = purity_check(fan, &e2)?;
        let diagonals = e2.anti_diagonals();
        let matches = (0..diagonals.len()).all(|m| {
            let expected = if m % 2 == 0 {
                b.even.get(m / 2).copied().unwrap_or(0)
            } else {
                0
            };
            diagonals[m] as i64 == expected
        });
        checks.insert("betti_matches_e2".into(), Value::Bool(matches));
        checks.insert("sum_rule".into(), Value::Bool(b.sum_rule_holds()));
        (json!(b.even), Value::Bool(pure.passed))
    } else {
        (Value::Null, Value::Null)
    };
    Ok(json!({ "E2": cells, "betti": betti, "purity": purity, "checks": checks }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedral::catalog_fan;

    #[test]
    fn fan_round_trip() {
        for expr in ["projective_space(2)", "hirzebruch(2)", "affine_orthant(3)", "torus(2)"] {
            let fan = catalog_fan(expr).unwrap();
            let text = canonical_fan_string(&fan);
            let back = parse_fan(&text).unwrap();
            assert_eq!(back, canonical_fan(&fan));
            assert_eq!(canonical_fan_string(&back), text);
        }
    }

    #[test]
    fn numbers_and_strings_are_both_integers() {
        let a = parse_fan(r#"{"dim": 2, "max_cones": [[[1, 0], ["0", "1"]]]}"#).unwrap();
        let b = parse_fan(r#"{"dim": 2, "max_cones": [[["1", 0], [0, 1]]]}"#).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn schema_diagnostics() {
        assert!(matches!(parse_fan("{"), Err(IoError::Json(_))));
        let err = parse_fan(r#"{"dim": 2, "max_cones": [[[1, 0, 0]]]}"#).unwrap_err();
        assert_eq!(
            err,
            IoError::Schema {
                path: "$.max_cones[0][0]".into(),
                message: "expected 2 entries, found 3".into()
            }
        );
        assert!(matches!(
            parse_fan(r#"{"dim": 1, "max_cones": [[[1.5]]]}"#),
            Err(IoError::Schema { .. })
        ));
        assert!(matches!(
            parse_monoid(r#"{"rank": 1, "generators": [[2]], "extra": 0}"#),
            Err(IoError::Schema { .. })
        ));
        assert!(matches!(
            parse_fan(r#"{"dim": 1, "max_cones": [[[1], [-1]]]}"#),
            Err(IoError::Fan(PolyhedralError::NotStronglyConvex(0)))
        ));
    }

    #[test]
    fn single_cone_report() {
        let report = e2_report(&catalog_fan("affine_orthant(2)").unwrap()).unwrap();
        assert_eq!(report["E2"], json!([[0, 0, 1, []]]));
        assert_eq!(report["betti"], Value::Null);
    }
}
