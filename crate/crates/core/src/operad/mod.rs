//! Cyclic operads on standard flag sets.
//!
//! A component of arity `k` has flags `0..k`; its basis depends only on the
//! order of the flags, so a component `O((S))` for any finite ordered set `S`
//! is read through the order-preserving bijection `S ≅ 0..k`.

mod ass;
mod comm;
mod dual;
mod lie;
mod nonsigma;
mod tree;

use std::sync::Arc;

use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::{Scalar, SparseVec};

pub use ass::{normalize_cycle, Ass};
pub(crate) use ass::permutations_of;
pub use comm::Comm;
pub use dual::{
    dg_dual_component, dt_component, planar_trees, DualOperad, TreeBasis, TreeCombination,
};
pub use lie::{lie_normal_form, Lie, LieWord};
pub use nonsigma::NonSigmaT;
pub use tree::{enumerate_trees, Canonical, DecoratedTree, RawTree, Sym, Tree, INTERNAL_BASE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperadError {
    #[error("unsupported arity {0}")]
    UnsupportedArity(usize),
    #[error("expression is not multilinear: {0}")]
    NotMultilinear(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("unknown operad `{0}`")]
    UnknownOperad(String),
}

/// A cyclic operad with a finite basis in each arity. Arity counts all
/// flags, inputs and output together.
pub trait CyclicOperad: Send + Sync + std::fmt::Debug {
    fn name(&self) -> String;

    fn dim(&self, k: usize) -> Result<usize, OperadError>;

    /// Homological degree of a basis element.
    fn degree(&self, _k: usize, _idx: usize) -> Result<i64, OperadError> {
        Ok(0)
    }

    /// Images of the basis vectors under the flag bijection `f ↦ perm[f]`.
    fn relabel(&self, k: usize, perm: &[usize]) -> Result<Arc<Vec<SparseVec>>, OperadError>;

    /// Compose basis element `x` of arity `ka` along flag `i` with basis
    /// element `y` of arity `kb` along flag `j`. The result lives on flags
    /// laid out as: the flags of `x` other than `i` in order, then those of
    /// `y` other than `j`.
    fn compose(
        &self,
        ka: usize,
        i: usize,
        x: usize,
        kb: usize,
        j: usize,
        y: usize,
    ) -> Result<SparseVec, OperadError>;

    /// Internal differential (degree −1) of a basis element.
    fn differential(&self, _k: usize, _idx: usize) -> Result<SparseVec, OperadError> {
        Ok(SparseVec::new())
    }

    fn has_differential(&self) -> bool {
        false
    }

    /// Only cyclic rotations act.
    fn is_nonsigma(&self) -> bool {
        false
    }

    /// Human-readable description of each basis element.
    fn basis_labels(&self, k: usize) -> Result<Vec<Value>, OperadError>;
}

/// The line `Det⁻¹(S)[−2]` tensored onto `O((S))` by the cyclic suspension.
/// It shifts degrees by `−|S| − 2`; bijections act by their sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuspensionLine {
    pub size: usize,
}

impl SuspensionLine {
    pub fn degree_shift(&self) -> i64 {
        -(self.size as i64) - 2
    }

    pub fn action(&self, perm: &[usize]) -> i32 {
        crate::linalg::permutation_sign(perm)
    }
}

/// Model by command-line name: `comm`, `ass`, `lie`, `t` and their duals
/// `dcomm`, `dass`, `dlie`, `dt`.
pub fn model_by_name(name: &str) -> Result<Arc<dyn CyclicOperad>, OperadError> {
    let base = |n: &str| -> Result<Arc<dyn CyclicOperad>, OperadError> {
        Ok(match n {
            "comm" => Arc::new(Comm),
            "ass" => Arc::new(Ass::default()),
            "lie" => Arc::new(Lie::default()),
            "t" => Arc::new(NonSigmaT),
            other => return Err(OperadError::UnknownOperad(other.to_string())),
        })
    };
    let lower = name.to_ascii_lowercase();
    match lower.as_str() {
        "dcomm" | "dass" | "dlie" | "dt" => Ok(Arc::new(DualOperad::new(base(&lower[1..])?))),
        _ => base(&lower),
    }
}

/// Position of each element of `flags` (distinct) in sorted order.
pub fn sort_positions<T: Ord>(flags: &[T]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..flags.len()).collect();
    idx.sort_by(|&a, &b| flags[a].cmp(&flags[b]));
    let mut pos = vec![0; flags.len()];
    for (p, &i) in idx.iter().enumerate() {
        pos[i] = p;
    }
    pos
}

/// Basis of `O((S))` with degrees, for an arbitrary set of flag labels.
pub fn component_basis(
    model: &dyn CyclicOperad,
    flags: &[u32],
) -> Result<Vec<(Value, i64)>, OperadError> {
    let k = flags.len();
    let mut sorted = flags.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k {
        return Err(OperadError::ArityMismatch("flags must be distinct".into()));
    }
    let labels = model.basis_labels(k)?;
    labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| Ok((json!({"flags": sorted, "element": l}), model.degree(k, i)?)))
        .collect()
}

/// Composition on labeled flag sets. `x` is a basis index of the component
/// on `a_flags` and `y` of the component on `b_flags`; returns the sorted
/// output flags and the result in their basis.
pub fn compose_labeled(
    model: &dyn CyclicOperad,
    a_flags: &[u32],
    x: usize,
    a0: u32,
    b_flags: &[u32],
    y: usize,
    b0: u32,
) -> Result<(Vec<u32>, SparseVec), OperadError> {
    let mut a = a_flags.to_vec();
    a.sort_unstable();
    let mut b = b_flags.to_vec();
    b.sort_unstable();
    let i = a
        .iter()
        .position(|&f| f == a0)
        .ok_or_else(|| OperadError::ArityMismatch(format!("{a0} is not a flag of the first input")))?;
    let j = b
        .iter()
        .position(|&f| f == b0)
        .ok_or_else(|| OperadError::ArityMismatch(format!("{b0} is not a flag of the second input")))?;
    let layout: Vec<u32> = a
        .iter()
        .filter(|&&f| f != a0)
        .chain(b.iter().filter(|&&f| f != b0))
        .copied()
        .collect();
    let mut out = layout.clone();
    out.sort_unstable();
    out.dedup();
    if out.len() != layout.len() {
        return Err(OperadError::ArityMismatch("remaining flags must be disjoint".into()));
    }
    let v = model.compose(a.len(), i, x, b.len(), j, y)?;
    let perm = sort_positions(&layout);
    Ok((out, apply_relabel(model, layout.len(), &perm, &v)?))
}

/// Apply a relabeling to a vector.
pub fn apply_relabel(
    model: &dyn CyclicOperad,
    k: usize,
    perm: &[usize],
    v: &SparseVec,
) -> Result<SparseVec, OperadError> {
    if perm.iter().enumerate().all(|(i, &p)| i == p) {
        return Ok(v.clone());
    }
    let m = model.relabel(k, perm)?;
    let mut out = SparseVec::new();
    for (&i, c) in v {
        for (&r, e) in &m[i] {
            crate::linalg::axpy(&mut out, r, c * e);
        }
    }
    Ok(out)
}

/// Dense matrix `[row][col]` of a relabeling.
pub fn relabel_dense(
    model: &dyn CyclicOperad,
    k: usize,
    perm: &[usize],
) -> Result<Vec<Vec<Scalar>>, OperadError> {
    let d = model.dim(k)?;
    let cols = model.relabel(k, perm)?;
    let mut m = vec![vec![crate::linalg::zero(); d]; d];
    for (c, col) in cols.iter().enumerate() {
        for (&r, v) in col {
            m[r][c] = v.clone();
        }
    }
    Ok(m)
}

pub fn invert_perm(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// JSON dump of the bases in arities `ks`.
pub fn basis_dump(model: &dyn CyclicOperad, ks: &[usize]) -> Result<Value, OperadError> {
    let mut out = serde_json::Map::new();
    for &k in ks {
        let labels = model.basis_labels(k)?;
        let degs: Vec<i64> = (0..labels.len())
            .map(|i| model.degree(k, i))
            .collect::<Result<_, _>>()?;
        out.insert(
            k.to_string(),
            json!({"dim": labels.len(), "basis": labels, "degrees": degs}),
        );
    }
    Ok(json!({"operad": model.name(), "components": out}))
}
