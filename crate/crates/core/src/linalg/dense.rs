use num_traits::{One, Zero};

use super::{Scalar, SparseVec};

/// Reduced row echelon form of a dense matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    /// Nonzero rows, each with a 1 at its pivot and 0 at every other pivot.
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of a vector known to lie in the row space.
    pub fn coordinates(&self, v: &SparseVec) -> Vec<Scalar> {
        self.pivots
            .iter()
            .map(|p| v.get(p).cloned().unwrap_or_else(Scalar::zero))
            .collect()
    }

    pub fn row_sparse(&self, i: usize) -> SparseVec {
        self.rows[i]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| (c, v.clone()))
            .collect()
    }
}

pub fn rref(mut a: Vec<Vec<Scalar>>) -> Rref {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = Scalar::one() / &a[r][c];
        for k in c..ncols {
            let t = &a[r][k] * &inv;
            a[r][k] = t;
        }
        for i in 0..nrows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..ncols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Rref { rows: a, pivots }
}
