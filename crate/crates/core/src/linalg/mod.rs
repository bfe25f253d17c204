//! Exact rational linear algebra: scalars, sparse matrices, graded complexes.

mod complex;
mod dense;
mod sparse;

pub use complex::{ComplexError, Direction, GradedComplex};
pub use dense::{rref, Rref};
pub use sparse::{axpy_entry as axpy, SparseMatrix, SparseVec};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar. `BigRational` keeps itself reduced with a positive
/// denominator.
pub type Scalar = BigRational;

pub fn q(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `"p/q"` or `"p"`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_scalar(s: &str) -> Option<Scalar> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Sign of a permutation given as images `perm[i]` of `0..n`.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// Sign of the permutation sorting `items` (which must be distinct).
pub fn sorting_sign<T: Ord>(items: &[T]) -> i32 {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    idx.sort_by(|&a, &b| items[a].cmp(&items[b]));
    permutation_sign(&idx)
}

/// Determinant of a small integer matrix by exact rational elimination.
pub fn det_i64(m: &[Vec<i64>]) -> Scalar {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .map(|r| r.iter().map(|&x| q(x)).collect())
        .collect();
    let mut det = one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &piv;
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_text_roundtrip() {
        let x = q_frac(-6, 4);
        assert_eq!(format_scalar(&x), "-3/2");
        assert_eq!(parse_scalar("-3/2"), Some(x));
        assert_eq!(parse_scalar("7"), Some(q(7)));
        assert_eq!(parse_scalar("1/0"), None);
    }

    #[test]
    fn signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(sorting_sign(&[3, 1, 2]), 1);
        assert_eq!(sorting_sign(&[2, 1]), -1);
    }

    #[test]
    fn small_det() {
        assert_eq!(det_i64(&[vec![0, 1], vec![1, 0]]), q(-1));
        assert_eq!(det_i64(&[vec![1, 1], vec![0, -1]]), q(-1));
        assert_eq!(det_i64(&[]), q(1));
    }
}
