use std::sync::Arc;

use serde_json::{json, Value};

use super::comm::{check_arity, unit};
use super::{CyclicOperad, OperadError};
use crate::linalg::SparseVec;

/// The non-Σ cyclic operad with one planar corolla in each arity. Only
/// cyclic rotations of the flags act.
#[derive(Clone, Copy, Debug, Default)]
pub struct NonSigmaT;

/// The rotation amount if `perm` is a cyclic rotation.
pub(crate) fn rotation(perm: &[usize]) -> Option<usize> {
    let k = perm.len();
    let r = *perm.first()?;
    (0..k).all(|f| perm[f] == (f + r) % k).then_some(r)
}

impl CyclicOperad for NonSigmaT {
    fn name(&self) -> String {
        "t".into()
    }

    fn dim(&self, k: usize) -> Result<usize, OperadError> {
        check_arity(k)?;
        Ok(1)
    }

    fn relabel(&self, k: usize, perm: &[usize]) -> Result<Arc<Vec<SparseVec>>, OperadError> {
        check_arity(k)?;
        if rotation(perm).is_none() {
            return Err(OperadError::OutOfScope(
                "a non-symmetric operad admits only cyclic rotations".into(),
            ));
        }
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

    fn is_nonsigma(&self) -> bool {
        true
    }

    fn basis_labels(&self, k: usize) -> Result<Vec<Value>, OperadError> {
        check_arity(k)?;
        Ok(vec![json!((0..k).collect::<Vec<_>>())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotations_only() {
        assert!(NonSigmaT.relabel(4, &[1, 2, 3, 0]).is_ok());
        assert!(NonSigmaT.relabel(4, &[1, 0, 2, 3]).is_err());
        assert_eq!(rotation(&[2, 0, 1]), Some(2));
    }
}
