use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntegerMatrix;

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g` and `g >= 0`.
pub fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `U` unimodular and `U * A = H`. `H` is in row echelon form,
/// pivots are positive, entries above a pivot lie in `[0, pivot)`, and zero rows are last.
pub fn hermite_normal_form(a: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let m = a.rows();
    let n = a.cols();
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row == m {
            break;
        }
        for i in pivot_row + 1..m {
            if h.get(i, col).is_zero() {
                continue;
            }
            let x = h.get(pivot_row, col).clone();
            let y = h.get(i, col).clone();
            let (g, s, t) = extended_gcd(&x, &y);
            let xg = &x / &g;
            let yg = &y / &g;
            let neg_yg = -yg;
            // det [[s, t], [-y/g, x/g]] = (s*x + t*y)/g = 1
            h.combine_rows(pivot_row, i, [&s, &t, &neg_yg, &xg]);
            u.combine_rows(pivot_row, i, [&s, &t, &neg_yg, &xg]);
        }
        if h.get(pivot_row, col).is_zero() {
            continue;
        }
        if h.get(pivot_row, col).is_negative() {
            h.negate_row(pivot_row);
            u.negate_row(pivot_row);
        }
        let pivot = h.get(pivot_row, col).clone();
        for i in 0..pivot_row {
            let q = h.get(i, col).div_floor(&pivot);
            if !q.is_zero() {
                let neg_q = -q;
                h.add_row_multiple(i, pivot_row, &neg_q);
                u.add_row_multiple(i, pivot_row, &neg_q);
            }
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Result of [`smith_normal_form`]: `u * a * v = d`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub d: IntegerMatrix,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1 | d_2 | ...`, zeros last.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.d.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivoting always moves the entry of least absolute value to the diagonal, so the
/// diagonal comes out ordered with `d_1 | d_2 | ...` and zeros at the end.
pub fn smith_normal_form(a: &IntegerMatrix) -> SmithDecomposition {
    let m = a.rows();
    let n = a.cols();
    let mut d = a.clone();
    let mut u = IntegerMatrix::identity(m);
    let mut v = IntegerMatrix::identity(n);

    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = smallest_nonzero(&d, t) else {
                return SmithDecomposition { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..m {
                let q = d.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    let neg_q = -q;
                    d.add_row_multiple(i, t, &neg_q);
                    u.add_row_multiple(i, t, &neg_q);
                }
                clean &= d.get(i, t).is_zero();
            }
            for j in t + 1..n {
                let q = d.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    let neg_q = -q;
                    d.add_col_multiple(j, t, &neg_q);
                    v.add_col_multiple(j, t, &neg_q);
                }
                clean &= d.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !d.get(i, j).is_multiple_of(&pivot))
            });
            match offending {
                Some(i) => {
                    // pull a non-multiple into row t; the next round shrinks the pivot
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => {
                    if pivot.is_negative() {
                        d.negate_row(t);
                        u.negate_row(t);
                    }
                    break;
                }
            }
        }
    }
    SmithDecomposition { d, u, v }
}

fn smallest_nonzero(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn extended_gcd_identity() {
        for (a, b) in [(12, 18), (-4, 6), (0, -5), (7, 0), (0, 0), (17, -31)] {
            let (g, s, t) = extended_gcd(&big(a), &big(b));
            assert_eq!(&s * big(a) + &t * big(b), g);
            assert_eq!(g, big(a).gcd(&big(b)));
        }
    }

    #[test]
    fn hnf_identity_is_fixed() {
        let id = IntegerMatrix::identity(2);
        let (h, u) = hermite_normal_form(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
    }

    #[test]
    fn hnf_zero_matrix() {
        let z = IntegerMatrix::zeros(2, 3);
        let (h, u) = hermite_normal_form(&z);
        assert_eq!(h, z);
        assert_eq!(u, IntegerMatrix::identity(2));
    }

    #[test]
    fn hnf_two_by_two() {
        let a = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(&u * &a, h);
        assert!(u.is_unimodular());
        // row lattice of A is spanned by (2,0),(0,4)
        assert_eq!(h, IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
    }

    #[test]
    fn snf_examples() {
        let a = IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), vec![big(2), big(4)]);
        assert_eq!(&(&s.u * &a) * &s.v, s.d);

        let b = IntegerMatrix::from_rows(&[vec![3, 0], vec![0, 1]]);
        assert_eq!(smith_normal_form(&b).invariant_factors(), vec![big(1), big(3)]);

        let z = IntegerMatrix::from_rows(&[vec![0]]);
        assert_eq!(smith_normal_form(&z).d, z);
    }

    #[test]
    fn snf_needs_divisibility_fix() {
        // diag(2,3) has invariant factors 1, 6
        let a = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.invariant_factors(), vec![big(1), big(6)]);
        assert_eq!(&(&s.u * &a) * &s.v, s.d);
    }
}
