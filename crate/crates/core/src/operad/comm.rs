use std::sync::Arc;

use serde_json::{json, Value};

use super::{CyclicOperad, OperadError};
use crate::linalg::{one, SparseVec};

/// One basis element in every arity; everything acts trivially.
#[derive(Clone, Copy, Debug, Default)]
pub struct Comm;

pub(super) fn check_arity(k: usize) -> Result<(), OperadError> {
    if k < 2 {
        return Err(OperadError::UnsupportedArity(k));
    }
    Ok(())
}

pub(super) fn unit() -> SparseVec {
    SparseVec::from([(0, one())])
}

impl CyclicOperad for Comm {
    fn name(&self) -> String {
        "comm".into()
    }

    fn dim(&self, k: usize) -> Result<usize, OperadError> {
        check_arity(k)?;
        Ok(1)
    }

    fn relabel(&self, k: usize, _perm: &[usize]) -> Result<Arc<Vec<SparseVec>>, OperadError> {
        check_arity(k)?;
        Ok(Arc::new(vec![unit()]))
    }

    fn compose(
        &self,
        ka: usize,
        _i: usize,
        _x: usize,
        kb: usize,
        _j: usize,
        _y: usize,
    ) -> Result<SparseVec, OperadError> {
        check_arity(ka)?;
        check_arity(kb)?;
        Ok(unit())
    }

    fn basis_labels(&self, k: usize) -> Result<Vec<Value>, OperadError> {
        check_arity(k)?;
        Ok(vec![json!("1")])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comm_is_trivial() {
        assert_eq!(Comm.dim(5).unwrap(), 1);
        assert_eq!(Comm.compose(3, 0, 0, 3, 1, 0).unwrap(), unit());
        assert!(Comm.dim(1).is_err());
    }
}
