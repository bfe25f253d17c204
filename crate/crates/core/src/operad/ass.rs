use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use super::comm::check_arity;
use super::{CyclicOperad, OperadError};
use crate::linalg::{one, SparseVec};

/// Cyclic orders on `0..k`, each written starting from flag 0, in
/// lexicographic order.
#[derive(Debug)]
pub(crate) struct OrderTable {
    pub orders: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
}

pub(crate) fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations_of(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Rotate a cyclic sequence so that its smallest element comes first.
pub fn normalize_cycle(c: &[usize]) -> Vec<usize> {
    let Some(p) = (0..c.len()).min_by_key(|&i| c[i]) else {
        return Vec::new();
    };
    c[p..].iter().chain(&c[..p]).copied().collect()
}

/// The associative cyclic operad: `Ass((S))` has a basis of cyclic orders of
/// `S`. Composition along the edge `(a, b)` splices the two cycles: read the first
/// cycle after `a`, then the second after `b`.
#[derive(Debug, Default)]
pub struct Ass {
    tables: Mutex<HashMap<usize, Arc<OrderTable>>>,
}

impl Ass {
    pub(crate) fn table(&self, k: usize) -> Result<Arc<OrderTable>, OperadError> {
        check_arity(k)?;
        let mut t = self.tables.lock().unwrap();
        Ok(t.entry(k)
            .or_insert_with(|| {
                let rest: Vec<usize> = (1..k).collect();
                let orders: Vec<Vec<usize>> = permutations_of(&rest)
                    .into_iter()
                    .map(|mut p| {
                        p.insert(0, 0);
                        p
                    })
                    .collect();
                let index = orders.iter().cloned().enumerate().map(|(i, o)| (o, i)).collect();
                Arc::new(OrderTable { orders, index })
            })
            .clone())
    }

    /// Cyclic order of basis element `idx`, starting at flag 0.
    pub fn order(&self, k: usize, idx: usize) -> Result<Vec<usize>, OperadError> {
        Ok(self.table(k)?.orders[idx].clone())
    }

    /// Basis index of a cyclic order given from any starting point.
    pub fn index_of(&self, order: &[usize]) -> Result<usize, OperadError> {
        let t = self.table(order.len())?;
        t.index
            .get(&normalize_cycle(order))
            .copied()
            .ok_or_else(|| OperadError::ArityMismatch("not a cyclic order of 0..k".into()))
    }
}

impl CyclicOperad for Ass {
    fn name(&self) -> String {
        "ass".into()
    }

    fn dim(&self, k: usize) -> Result<usize, OperadError> {
        Ok(self.table(k)?.orders.len())
    }

    fn relabel(&self, k: usize, perm: &[usize]) -> Result<Arc<Vec<SparseVec>>, OperadError> {
        let t = self.table(k)?;
        let cols = t
            .orders
            .iter()
            .map(|o| {
                let img: Vec<usize> = o.iter().map(|&f| perm[f]).collect();
                SparseVec::from([(t.index[&normalize_cycle(&img)], one())])
            })
            .collect();
        Ok(Arc::new(cols))
    }

    fn compose(
        &self,
        ka: usize,
        i: usize,
        x: usize,
        kb: usize,
        j: usize,
        y: usize,
    ) -> Result<SparseVec, OperadError> {
        let ox = self.order(ka, x)?;
        let oy = self.order(kb, y)?;
        let after = |o: &[usize], f: usize| -> Vec<usize> {
            let p = o.iter().position(|&g| g == f).unwrap();
            (1..o.len()).map(|s| o[(p + s) % o.len()]).collect()
        };
        let mut spliced: Vec<usize> = after(&ox, i)
            .into_iter()
            .map(|f| if f < i { f } else { f - 1 })
            .collect();
        spliced.extend(
            after(&oy, j)
                .into_iter()
                .map(|f| ka - 1 + if f < j { f } else { f - 1 }),
        );
        Ok(SparseVec::from([(self.index_of(&spliced)?, one())]))
    }

    fn basis_labels(&self, k: usize) -> Result<Vec<Value>, OperadError> {
        Ok(self.table(k)?.orders.iter().map(|o| json!(o)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dims() {
        let a = Ass::default();
        assert_eq!(a.dim(4).unwrap(), 6);
        assert_eq!(a.dim(3).unwrap(), 2);
    }

    #[test]
    fn splice() {
        let a = Ass::default();
        // (a0 p q) with a0 = flag 0, (b0 r s) with b0 = flag 0
        let x = a.index_of(&[0, 1, 2]).unwrap();
        let v = a.compose(3, 0, x, 3, 0, x).unwrap();
        // layout p=0 q=1 r=2 s=3: cycle (p q r s)
        assert_eq!(v, SparseVec::from([(a.index_of(&[0, 1, 2, 3]).unwrap(), one())]));
    }
}
