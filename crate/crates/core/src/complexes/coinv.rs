use std::collections::HashMap;

use num_traits::Zero;

use crate::linalg::{axpy, q, q_frac, rref, Rref, Scalar, SparseVec};

use super::decor::Key;
use super::GraphComplexError;

/// Coinvariants of a finite group acting on a space with basis `keys`,
/// realised as the image of the averaging projector. Basis vectors are the
/// rows of the reduced echelon form of that image; a vector in the image
/// has coordinates equal to its entries at the pivots.
#[derive(Clone, Debug)]
pub(crate) struct Coinvariants {
    pub keys: Vec<Key>,
    pub index: HashMap<Key, usize>,
    /// `P e_t` for every key `t`.
    projector: Vec<SparseVec>,
    pub basis: Rref,
}

impl Coinvariants {
    /// `act(g, t)` returns `ρ(g) e_t` for the `g`-th group element.
    pub fn new(
        keys: Vec<Key>,
        group_order: usize,
        mut act: impl FnMut(usize, &Key) -> Result<Vec<(Key, Scalar)>, GraphComplexError>,
    ) -> Result<Self, GraphComplexError> {
        let index: HashMap<Key, usize> = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let n = keys.len();
        let inv = q_frac(1, group_order as i64);
        let mut trace = Scalar::zero();
        let mut projector = Vec::with_capacity(n);
        for (t, key) in keys.iter().enumerate() {
            let mut col = SparseVec::new();
            for gi in 0..group_order {
                for (k, c) in act(gi, key)? {
                    let &i = index.get(&k).ok_or_else(|| {
                        GraphComplexError::Internal("group action leaves the decoration space".into())
                    })?;
                    if i == t {
                        trace += &c;
                    }
                    axpy(&mut col, i, c * &inv);
                }
            }
            projector.push(col);
        }
        let mut dense = vec![vec![Scalar::zero(); n]; n];
        for (t, col) in projector.iter().enumerate() {
            for (&i, c) in col {
                dense[t][i] = c.clone();
            }
        }
        let basis = rref(dense);
        // character check: rank of the projector equals the average trace
        if trace * &inv != q(basis.rank() as i64) {
            return Err(GraphComplexError::Internal("projector rank disagrees with the character".into()));
        }
        Ok(Coinvariants {
            keys,
            index,
            projector,
            basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    /// Basis vector `r` as a combination of keys.
    pub fn vector(&self, r: usize) -> SparseVec {
        self.basis.row_sparse(r)
    }

    pub fn pivot_key(&self, r: usize) -> &Key {
        &self.keys[self.basis.pivots[r]]
    }

    /// Coordinates of the class of `v` (a combination of keys).
    pub fn coordinates(&self, v: &SparseVec) -> Vec<Scalar> {
        let mut p = SparseVec::new();
        for (&t, c) in v {
            for (&i, e) in &self.projector[t] {
                axpy(&mut p, i, c * e);
            }
        }
        self.basis.coordinates(&p)
    }
}
