use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Scalar;

/// Sparse column or row vector keyed by index.
pub type SparseVec = BTreeMap<usize, Scalar>;

/// Add `c * x` into `acc` at `i`, dropping the entry if it cancels.
pub fn axpy_entry(acc: &mut SparseVec, i: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(i) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Rational sparse matrix stored by rows. No stored zeros, no duplicate keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Scalar::one());
        }
        m
    }

    /// Duplicate keys are summed; zeros dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            axpy_entry(&mut m.data[r], c, v);
        }
        m
    }

    /// Build from columns (each column a sparse vector over row indices).
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (&r, v) in col {
                assert!(r < rows);
                if !v.is_zero() {
                    m.data[r].insert(c, v.clone());
                }
            }
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.data[r].insert(c, v.clone());
                }
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r].get(&c).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r, c, v)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.data[c].insert(r, v.clone());
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut m = self.clone();
        for row in &mut m.data {
            for v in row.values_mut() {
                *v *= s;
            }
        }
        m
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[r];
            for (&k, a) in row {
                for (&c, b) in &other.data[k] {
                    axpy_entry(acc, c, a * b);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut s = Scalar::zero();
            for (c, a) in row {
                if let Some(b) = v.get(c) {
                    s += a * b;
                }
            }
            if !s.is_zero() {
                out.insert(r, s);
            }
        }
        out
    }

    /// Rank over the rationals.
    ///
    /// Rows are cleared of denominators and eliminated fraction-free over the
    /// integers, choosing at each column the pivot of smallest magnitude and
    /// dividing every updated row by its content.
    pub fn rank(&self) -> usize {
        let (rows, cols) = if self.rows <= self.cols {
            (self.integer_rows(), self.cols)
        } else {
            (self.transpose().integer_rows(), self.rows)
        };
        integer_rank(rows, cols)
    }

    fn integer_rows(&self) -> Vec<Vec<(usize, BigInt)>> {
        self.data
            .iter()
            .filter(|r| !r.is_empty())
            .map(|row| {
                let l = row
                    .values()
                    .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                row.iter()
                    .map(|(&c, v)| (c, v.numer() * (&l / v.denom())))
                    .collect()
            })
            .collect()
    }
}

fn content_reduce(row: &mut [(usize, BigInt)]) {
    let g = row
        .iter()
        .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a * x - b * y` for sparse integer rows with sorted keys.
fn combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take = match (x.get(i), y.get(j)) {
            (Some((cx, _)), Some((cy, _))) => cx.cmp(cy),
            (Some(_), None) => std::cmp::Ordering::Less,
            (None, Some(_)) => std::cmp::Ordering::Greater,
            (None, None) => unreachable!(),
        };
        match take {
            std::cmp::Ordering::Less => {
                out.push((x[i].0, a * &x[i].1));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((y[j].0, -(b * &y[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let v = a * &x[i].1 - b * &y[j].1;
                if !v.is_zero() {
                    out.push((x[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn integer_rank(mut rows: Vec<Vec<(usize, BigInt)>>, _cols: usize) -> usize {
    let mut rank = 0;
    for r in rows.iter_mut() {
        content_reduce(r);
    }
    rows.retain(|r| !r.is_empty());
    while !rows.is_empty() {
        // column with a nonzero entry of least index among leading entries
        let col = rows.iter().map(|r| r[0].0).min().unwrap();
        let mut best: Option<usize> = None;
        for (i, r) in rows.iter().enumerate() {
            if r[0].0 == col {
                let better = match best {
                    None => true,
                    Some(b) => r[0].1.abs() < rows[b][0].1.abs()
                        || (r[0].1.abs() == rows[b][0].1.abs() && r.len() < rows[b].len()),
                };
                if better {
                    best = Some(i);
                }
            }
        }
        let pivot = rows.swap_remove(best.unwrap());
        rank += 1;
        let p = pivot[0].1.clone();
        let mut next = Vec::with_capacity(rows.len());
        for r in rows.drain(..) {
            if r[0].0 != col {
                next.push(r);
                continue;
            }
            let g = p.gcd(&r[0].1);
            let a = &p / &g;
            let b = &r[0].1 / &g;
            let mut nr = combine(&a, &r, &b, &pivot);
            content_reduce(&mut nr);
            if !nr.is_empty() {
                next.push(nr);
            }
        }
        rows = next;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn rank_examples() {
        assert_eq!(SparseMatrix::identity(2).rank(), 2);
        assert_eq!(SparseMatrix::zeros(3, 5).rank(), 0);
        let m = SparseMatrix::from_dense(&[vec![q(1), q(2)], vec![q(2), q(4)]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn triplets_merge_and_drop_zeros() {
        let m = SparseMatrix::from_triplets(2, 2, [(0, 0, q(1)), (0, 0, q(-1)), (1, 1, q(3))]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 1), q(3));
    }

    #[test]
    fn rank_with_fractions() {
        use crate::linalg::q_frac;
        let m = SparseMatrix::from_dense(&[
            vec![q_frac(1, 2), q_frac(1, 3), q(0)],
            vec![q(3), q(2), q(0)],
            vec![q(0), q(0), q_frac(-5, 7)],
        ]);
        assert_eq!(m.rank(), 2);
    }
}
