use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{primitive, IntegerMatrix, Vector};

pub fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().cloned().map(BigRational::from_integer).collect()
}

/// Clears denominators and divides by the content, giving the primitive integer
/// vector on the same ray.
pub fn primitive_from_rational(v: &[BigRational]) -> Vector {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vector = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    primitive(&scaled)
}

/// Solves `A x = b` for square nonsingular `A`; `None` when `A` is singular.
pub fn solve_square(a: &IntegerMatrix, b: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = a.rows();
    assert!(a.is_square() && b.len() == n);
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = to_rational(a.row(i));
            row.push(BigRational::from_integer(b[i].clone()));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let pivot = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = &*x / &pivot;
        }
        let prow = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&prow) {
                *x = &*x - &f * y;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// Orthogonal projection of `v` onto the complement of the span of `basis`
/// (rows assumed linearly independent).
pub fn project_orthogonal(v: &[BigInt], basis: &[Vector]) -> Vec<BigRational> {
    let k = basis.len();
    let mut out = to_rational(v);
    if k == 0 {
        return out;
    }
    // Gram system G c = B v
    let gram = IntegerMatrix::from_vectors(
        k,
        &basis
            .iter()
            .map(|bi| basis.iter().map(|bj| super::dot(bi, bj)).collect())
            .collect::<Vec<Vector>>(),
    );
    let rhs: Vector = basis.iter().map(|bi| super::dot(bi, v)).collect();
    let coeffs = solve_square(&gram, &rhs).expect("basis rows are independent");
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o = &*o - c * BigRational::from_integer(x.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::vector;

    #[test]
    fn solve_two_by_two() {
        let a = IntegerMatrix::from_rows(&[vec![1, 1], vec![0, 2]]);
        let x = solve_square(&a, &vector(&[3, 1])).unwrap();
        assert_eq!(x, vec![BigRational::new(5.into(), 2.into()), BigRational::new(1.into(), 2.into())]);
        assert!(solve_square(&IntegerMatrix::zeros(2, 2), &vector(&[0, 0])).is_none());
    }

    #[test]
    fn projection_removes_component() {
        let p = project_orthogonal(&vector(&[1, 1]), &[vector(&[0, 1])]);
        assert_eq!(primitive_from_rational(&p), vector(&[1, 0]));
    }
}
