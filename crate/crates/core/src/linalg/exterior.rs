use itertools::Itertools;
use num_bigint::BigInt;

use super::matrix::bareiss_determinant;
use super::IntegerMatrix;

/// `a`-element subsets of `0..n` in lexicographic order; the basis of `Λ^a Z^n`.
pub fn lex_subsets(n: usize, a: usize) -> Vec<Vec<usize>> {
    if a > n {
        return Vec::new();
    }
    (0..n).combinations(a).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Matrix of `Λ^a f` for `f : Z^n -> Z^m` (an `m x n` matrix).
///
/// Rows and columns are indexed by lexicographically ordered subsets; the entry at
/// `(I, J)` is the minor `det f[I, J]`. `Λ^0 f = [1]`, and when `a > n` the result has
/// zero columns.
pub fn exterior_power_map(f: &IntegerMatrix, a: usize) -> IntegerMatrix {
    let rows = lex_subsets(f.rows(), a);
    let cols = lex_subsets(f.cols(), a);
    let mut out = IntegerMatrix::zeros(rows.len(), cols.len());
    for (i, r) in rows.iter().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            let minor: Vec<Vec<BigInt>> = r
                .iter()
                .map(|&ri| c.iter().map(|&cj| f.get(ri, cj).clone()).collect())
                .collect();
            out.set(i, j, bareiss_determinant(minor));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn scalar_power() {
        let c = BigInt::from(3);
        let f = IntegerMatrix::scalar(4, &c);
        for a in 0..=4 {
            let expected = IntegerMatrix::scalar(binomial(4, a), &c.clone().pow(a as u32));
            assert_eq!(exterior_power_map(&f, a), expected);
        }
    }

    #[test]
    fn top_power_is_determinant() {
        let f = IntegerMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(exterior_power_map(&f, 2), IntegerMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn identity_maps_to_identity() {
        for a in 0..=3 {
            assert_eq!(
                exterior_power_map(&IntegerMatrix::identity(3), a),
                IntegerMatrix::identity(binomial(3, a))
            );
        }
    }

    #[test]
    fn power_beyond_source_rank_has_no_columns() {
        let f = IntegerMatrix::from_rows(&[vec![1], vec![2], vec![3]]);
        let p = exterior_power_map(&f, 2);
        assert_eq!((p.rows(), p.cols()), (3, 0));
        let p0 = exterior_power_map(&IntegerMatrix::zeros(0, 0), 0);
        assert_eq!(p0, IntegerMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(2, 3), 0);
    }
}
