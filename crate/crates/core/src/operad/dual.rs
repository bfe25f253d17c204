use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use super::tree::{internal_pair, Canonical, RawTree};
use super::{
    apply_relabel, enumerate_trees, invert_perm, sort_positions, Ass, CyclicOperad,
    DecoratedTree, OperadError, Sym, INTERNAL_BASE,
};
use crate::graph::Caps;
use crate::linalg::{axpy, one, GradedComplex, Scalar, SparseMatrix, SparseVec};

/// Linear combination of decorated trees.
pub type TreeCombination = BTreeMap<DecoratedTree, Scalar>;

/// Basis of one component of a dual operad.
#[derive(Clone, Debug)]
pub struct TreeBasis {
    pub elems: Vec<DecoratedTree>,
    pub index: HashMap<DecoratedTree, usize>,
}

impl TreeBasis {
    fn new(elems: Vec<DecoratedTree>) -> Self {
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        TreeBasis { elems, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}

const Y_OFFSET: usize = 1 << 28;
const GRAFT_A: usize = 1 << 30;
const GRAFT_B: usize = (1 << 30) + 1;
const SPLIT_P: usize = usize::MAX - 1;
const SPLIT_Q: usize = usize::MAX;

/// The dg-dual `DO`: `DO((S))` is dual to the space of trees with leaves
/// `S` whose vertices carry `O`-decorations and an odd line per vertex and
/// per half-edge. A basis element is a canonical tree with a dual basis
/// element of `O((H(v)))` at each vertex, oriented by the monomial that lists
/// every vertex symbol followed by its sorted flags. Grafting concatenates
/// monomials; the differential splits vertices, dual to edge contraction.
#[derive(Debug)]
pub struct DualOperad {
    base: Arc<dyn CyclicOperad>,
    bases: Mutex<HashMap<usize, Arc<TreeBasis>>>,
    relabels: Mutex<HashMap<(usize, Vec<usize>), Arc<Vec<SparseVec>>>>,
}

impl DualOperad {
    pub fn new(base: Arc<dyn CyclicOperad>) -> Self {
        DualOperad {
            base,
            bases: Mutex::new(HashMap::new()),
            relabels: Mutex::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &Arc<dyn CyclicOperad> {
        &self.base
    }

    pub fn basis(&self, k: usize) -> Result<Arc<TreeBasis>, OperadError> {
        if k < 3 {
            return Err(OperadError::UnsupportedArity(k));
        }
        if let Some(b) = self.bases.lock().unwrap().get(&k) {
            return Ok(b.clone());
        }
        let mut elems = Vec::new();
        for tree in enumerate_trees(k) {
            let dims: Vec<usize> = tree
                .vertices
                .iter()
                .map(|fs| self.base.dim(fs.len()))
                .collect::<Result<_, _>>()?;
            for decos in product(&dims) {
                elems.push(DecoratedTree {
                    tree: tree.clone(),
                    decos,
                });
            }
        }
        let b = Arc::new(TreeBasis::new(elems));
        self.bases.lock().unwrap().insert(k, b.clone());
        Ok(b)
    }

    /// Bring a raw decorated tree to canonical form and add it, with the
    /// orientation sign and the transported vertex decorations, into `acc`.
    fn transport(
        &self,
        raw: &RawTree,
        monomial: &[Sym],
        decos: &[usize],
        coeff: Scalar,
        acc: &mut TreeCombination,
    ) -> Result<(), OperadError> {
        let c: Canonical = raw.canonicalize(monomial);
        let name = |f: usize| if f < INTERNAL_BASE { f } else { c.rename[&f] };
        let mut per_new: Vec<SparseVec> = vec![SparseVec::new(); raw.vertices.len()];
        for (v, fs) in raw.vertices.iter().enumerate() {
            // `fs` lists the flags in the order the decoration refers to
            let nv = c.vertex_map[v];
            let new = &c.tree.vertices[nv];
            let perm: Vec<usize> = fs
                .iter()
                .map(|&f| new.binary_search(&name(f)).unwrap())
                .collect();
            let m = fs.len();
            if perm.iter().enumerate().all(|(i, &p)| i == p) {
                per_new[nv] = SparseVec::from([(decos[v], one())]);
                continue;
            }
            // dual basis transforms by the transpose of the inverse action
            let cols = self.base.relabel(m, &invert_perm(&perm))?;
            let mut w = SparseVec::new();
            for (j, col) in cols.iter().enumerate() {
                if let Some(e) = col.get(&decos[v]) {
                    axpy(&mut w, j, e.clone());
                }
            }
            per_new[nv] = w;
        }
        let coeff = if c.sign < 0 { -coeff } else { coeff };
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), coeff)];
        for w in &per_new {
            let mut next = Vec::with_capacity(partial.len() * w.len());
            for (d, s) in &partial {
                for (&j, e) in w {
                    let mut d2 = d.clone();
                    d2.push(j);
                    next.push((d2, s * e));
                }
            }
            partial = next;
        }
        for (decos, s) in partial {
            add_term(
                acc,
                DecoratedTree {
                    tree: c.tree.clone(),
                    decos,
                },
                s,
            );
        }
        Ok(())
    }

    /// Rename the leaves of a decorated tree by `perm`.
    pub fn relabel_element(
        &self,
        x: &DecoratedTree,
        perm: &[usize],
    ) -> Result<TreeCombination, OperadError> {
        let f = |h: usize| if h < INTERNAL_BASE { perm[h] } else { h };
        let (raw, mono) = renamed(x, &f, 0);
        let mut acc = TreeCombination::new();
        self.transport(&raw, &mono, &x.decos, one(), &mut acc)?;
        Ok(acc)
    }

    /// Graft `x` (leaves `0..ka`) at leaf `i` onto `y` (leaves `0..kb`) at
    /// leaf `j`. Output leaves follow the layout of [`CyclicOperad::compose`].
    pub fn compose_elements(
        &self,
        x: &DecoratedTree,
        i: usize,
        y: &DecoratedTree,
        j: usize,
    ) -> Result<TreeCombination, OperadError> {
        let ka = x.tree.n_leaves();
        let fx = |h: usize| {
            if h >= INTERNAL_BASE || h < i {
                h
            } else if h == i {
                GRAFT_A
            } else {
                h - 1
            }
        };
        let fy = |h: usize| {
            if h >= INTERNAL_BASE {
                h + Y_OFFSET
            } else if h < j {
                ka - 1 + h
            } else if h == j {
                GRAFT_B
            } else {
                ka - 2 + h
            }
        };
        let (mut raw, mut mono) = renamed(x, &fx, 0);
        let (ry, my) = renamed(y, &fy, x.tree.vertices.len());
        raw.vertices.extend(ry.vertices);
        raw.pair.extend(ry.pair);
        raw.pair.insert(GRAFT_A, GRAFT_B);
        raw.pair.insert(GRAFT_B, GRAFT_A);
        mono.extend(my);
        let mut decos = x.decos.clone();
        decos.extend(&y.decos);
        let mut acc = TreeCombination::new();
        self.transport(&raw, &mono, &decos, one(), &mut acc)?;
        Ok(acc)
    }

    /// Sum over all ways of splitting one vertex in two, weighted by the
    /// coefficient of the vertex decoration in the composite of the two new
    /// decorations.
    pub fn differential_element(&self, x: &DecoratedTree) -> Result<TreeCombination, OperadError> {
        let mut acc = TreeCombination::new();
        let (base_raw, base_mono) = renamed(x, &|h| h, 0);
        for (v, fs) in x.tree.vertices.iter().enumerate() {
            let m = fs.len();
            if m < 4 {
                continue;
            }
            let pos_v = base_mono.iter().position(|&s| s == Sym::Vertex(v)).unwrap();
            let sign0 = if pos_v % 2 == 0 { one() } else { -one() };
            let nv = x.tree.vertices.len();
            let mut mono = vec![Sym::Vertex(v), Sym::Vertex(nv), Sym::Flag(SPLIT_P), Sym::Flag(SPLIT_Q)];
            mono.extend(base_mono.iter().copied().filter(|&s| s != Sym::Vertex(v)));
            for mask in 1usize..(1 << (m - 1)) {
                let mut a = vec![fs[0]];
                let mut b = Vec::new();
                for p in 1..m {
                    if mask >> (p - 1) & 1 == 1 {
                        b.push(fs[p]);
                    } else {
                        a.push(fs[p]);
                    }
                }
                if a.len() < 2 || b.len() < 2 {
                    continue;
                }
                let (ka, kb) = (a.len() + 1, b.len() + 1);
                let layout: Vec<usize> = a.iter().chain(&b).copied().collect();
                let perm = sort_positions(&layout);
                let mut raw = base_raw.clone();
                let mut ua = a.clone();
                ua.push(SPLIT_P);
                let mut wb = b.clone();
                wb.push(SPLIT_Q);
                raw.vertices[v] = ua;
                raw.vertices.push(wb);
                raw.pair.insert(SPLIT_P, SPLIT_Q);
                raw.pair.insert(SPLIT_Q, SPLIT_P);
                for xa in 0..self.base.dim(ka)? {
                    for yb in 0..self.base.dim(kb)? {
                        let comp = self.base.compose(ka, ka - 1, xa, kb, kb - 1, yb)?;
                        let comp = apply_relabel(self.base.as_ref(), m, &perm, &comp)?;
                        let Some(c) = comp.get(&x.decos[v]) else {
                            continue;
                        };
                        let mut decos = x.decos.clone();
                        decos[v] = xa;
                        decos.push(yb);
                        self.transport(&raw, &mono, &decos, &sign0 * c, &mut acc)?;
                    }
                }
            }
        }
        Ok(acc)
    }

    fn to_index(&self, k: usize, comb: TreeCombination) -> Result<SparseVec, OperadError> {
        let b = self.basis(k)?;
        let mut out = SparseVec::new();
        for (t, c) in comb {
            let i = b
                .index
                .get(&t)
                .ok_or_else(|| OperadError::ArityMismatch("tree outside the basis".into()))?;
            axpy(&mut out, *i, c);
        }
        Ok(out)
    }

    /// Cyclic order of the leaves around a tree whose decorations are cyclic
    /// orders (the base must be `Ass`), read from leaf 0.
    pub fn boundary_order(x: &DecoratedTree, ass: &Ass) -> Result<Vec<usize>, OperadError> {
        let tree = &x.tree;
        let mut vof = HashMap::new();
        for (v, fs) in tree.vertices.iter().enumerate() {
            for &f in fs {
                vof.insert(f, v);
            }
        }
        let mut orders = Vec::new();
        for (v, fs) in tree.vertices.iter().enumerate() {
            let o = ass.order(fs.len(), x.decos[v])?;
            orders.push(o.into_iter().map(|p| fs[p]).collect::<Vec<usize>>());
        }
        fn walk(
            f: usize,
            vof: &HashMap<usize, usize>,
            orders: &[Vec<usize>],
            out: &mut Vec<usize>,
        ) {
            let o = &orders[vof[&f]];
            let p = o.iter().position(|&g| g == f).unwrap();
            for s in 1..o.len() {
                let g = o[(p + s) % o.len()];
                if g < INTERNAL_BASE {
                    out.push(g);
                } else {
                    walk(internal_pair(g), vof, orders, out);
                }
            }
        }
        let mut out = vec![0];
        walk(0, &vof, &orders, &mut out);
        Ok(out)
    }
}

fn add_term(acc: &mut TreeCombination, t: DecoratedTree, c: Scalar) {
    use num_traits::Zero;
    if c.is_zero() {
        return;
    }
    let e = acc.entry(t).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.retain(|_, v| !v.is_zero());
    }
}

/// Raw copy of a canonical tree with flags renamed by `f` and vertex
/// symbols shifted by `voff`, plus its monomial in the new names.
fn renamed(x: &DecoratedTree, f: &dyn Fn(usize) -> usize, voff: usize) -> (RawTree, Vec<Sym>) {
    let vertices: Vec<Vec<usize>> = x
        .tree
        .vertices
        .iter()
        .map(|fs| fs.iter().map(|&h| f(h)).collect())
        .collect();
    let mut pair = HashMap::new();
    for &h in x.tree.vertices.iter().flatten() {
        if h >= INTERNAL_BASE {
            pair.insert(f(h), f(internal_pair(h)));
        }
    }
    let mono = x
        .tree
        .monomial()
        .into_iter()
        .map(|s| match s {
            Sym::Vertex(v) => Sym::Vertex(v + voff),
            Sym::Flag(h) => Sym::Flag(f(h)),
        })
        .collect();
    (RawTree { vertices, pair }, mono)
}

fn product(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        let mut next = Vec::with_capacity(out.len() * d);
        for p in &out {
            for i in 0..d {
                let mut p2 = p.clone();
                p2.push(i);
                next.push(p2);
            }
        }
        out = next;
    }
    out
}

impl CyclicOperad for DualOperad {
    fn name(&self) -> String {
        format!("d{}", self.base.name())
    }

    fn dim(&self, k: usize) -> Result<usize, OperadError> {
        Ok(self.basis(k)?.len())
    }

    /// `n − 2 − (internal edges)` with `n + 1 = k` leaves.
    fn degree(&self, k: usize, idx: usize) -> Result<i64, OperadError> {
        let b = self.basis(k)?;
        let base: i64 = b.elems[idx]
            .tree
            .vertices
            .iter()
            .zip(&b.elems[idx].decos)
            .map(|(fs, &d)| self.base.degree(fs.len(), d))
            .sum::<Result<i64, _>>()?;
        Ok(k as i64 - 3 - b.elems[idx].tree.n_internal_edges() as i64 - base)
    }

    fn relabel(&self, k: usize, perm: &[usize]) -> Result<Arc<Vec<SparseVec>>, OperadError> {
        let key = (k, perm.to_vec());
        if let Some(m) = self.relabels.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let b = self.basis(k)?;
        let cols = b
            .elems
            .iter()
            .map(|x| self.to_index(k, self.relabel_element(x, perm)?))
            .collect::<Result<Vec<_>, _>>()?;
        let m = Arc::new(cols);
        self.relabels.lock().unwrap().insert(key, m.clone());
        Ok(m)
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
        let bx = self.basis(ka)?;
        let by = self.basis(kb)?;
        let comb = self.compose_elements(&bx.elems[x], i, &by.elems[y], j)?;
        self.to_index(ka + kb - 2, comb)
    }

    fn differential(&self, k: usize, idx: usize) -> Result<SparseVec, OperadError> {
        let b = self.basis(k)?;
        self.to_index(k, self.differential_element(&b.elems[idx])?)
    }

    fn has_differential(&self) -> bool {
        true
    }

    fn basis_labels(&self, k: usize) -> Result<Vec<Value>, OperadError> {
        Ok(self
            .basis(k)?
            .elems
            .iter()
            .map(|x| json!({"tree": x.tree.to_json(), "decorations": x.decos}))
            .collect())
    }
}

/// Chain complex on a list of decorated trees closed under the differential.
fn complex_on(
    dual: &DualOperad,
    elems: &[DecoratedTree],
    k: usize,
) -> Result<GradedComplex, OperadError> {
    let deg = |x: &DecoratedTree| k as i64 - 3 - x.tree.n_internal_edges() as i64;
    let mut by_deg: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (i, x) in elems.iter().enumerate() {
        by_deg.entry(deg(x) as i32).or_default().push(i);
    }
    let mut pos: HashMap<&DecoratedTree, usize> = HashMap::new();
    for ids in by_deg.values() {
        for (p, &i) in ids.iter().enumerate() {
            pos.insert(&elems[i], p);
        }
    }
    let dims: BTreeMap<i32, usize> = by_deg.iter().map(|(&d, v)| (d, v.len())).collect();
    let mut diffs = BTreeMap::new();
    for (&d, ids) in &by_deg {
        let rows = dims.get(&(d - 1)).copied().unwrap_or(0);
        let mut trip = Vec::new();
        for (c, &i) in ids.iter().enumerate() {
            for (t, v) in dual.differential_element(&elems[i])? {
                let r = *pos.get(&t).ok_or_else(|| {
                    OperadError::ArityMismatch("differential leaves the subcomplex".into())
                })?;
                trip.push((r, c, v));
            }
        }
        if rows > 0 {
            diffs.insert(d, SparseMatrix::from_triplets(rows, ids.len(), trip));
        }
    }
    GradedComplex::chain(dims, diffs).map_err(|e| OperadError::ArityMismatch(e.to_string()))
}

fn check_n(n: usize, caps: &Caps) -> Result<(), OperadError> {
    if n < 2 {
        return Err(OperadError::UnsupportedArity(n + 1));
    }
    caps.check_arity(n)
        .map_err(|e| OperadError::OutOfScope(e.to_string()))
}

/// The chain complex `DO(n)` on trees with `n + 1` leaves.
pub fn dg_dual_component(
    model: Arc<dyn CyclicOperad>,
    n: usize,
    caps: &Caps,
) -> Result<GradedComplex, OperadError> {
    check_n(n, caps)?;
    let dual = DualOperad::new(model);
    let b = dual.basis(n + 1)?;
    complex_on(&dual, &b.elems, n + 1)
}

/// Planar trees with `k` leaves whose boundary reads `0, 1, ..., k−1`,
/// each with its unique compatible cyclic order at every vertex.
pub fn planar_trees(k: usize, ass: &Ass) -> Result<Vec<DecoratedTree>, OperadError> {
    let mut out = Vec::new();
    for tree in enumerate_trees(k) {
        let mut vof = HashMap::new();
        for (v, fs) in tree.vertices.iter().enumerate() {
            for &f in fs {
                vof.insert(f, v);
            }
        }
        fn leaves(
            tree: &super::Tree,
            vof: &HashMap<usize, usize>,
            f: usize,
            acc: &mut Vec<usize>,
        ) {
            if f < INTERNAL_BASE {
                acc.push(f);
                return;
            }
            let g = internal_pair(f);
            for &h in &tree.vertices[vof[&g]] {
                if h != g {
                    leaves(tree, vof, h, acc);
                }
            }
        }
        let mut decos = Vec::new();
        let mut ok = true;
        for fs in &tree.vertices {
            let mut starts = Vec::new();
            for &f in fs {
                let mut l = Vec::new();
                leaves(&tree, &vof, f, &mut l);
                let set: std::collections::BTreeSet<usize> = l.iter().copied().collect();
                let heads: Vec<usize> = l
                    .iter()
                    .copied()
                    .filter(|&s| !set.contains(&((s + k - 1) % k)))
                    .collect();
                if heads.len() != 1 {
                    ok = false;
                    break;
                }
                starts.push(heads[0]);
            }
            if !ok {
                break;
            }
            let cyc = sort_positions(&starts);
            let mut order = vec![0; fs.len()];
            for (p, &r) in cyc.iter().enumerate() {
                order[r] = p;
            }
            decos.push(ass.index_of(&order)?);
        }
        if !ok {
            continue;
        }
        let x = DecoratedTree { tree, decos };
        if DualOperad::boundary_order(&x, ass)? == (0..k).collect::<Vec<_>>() {
            out.push(x);
        }
    }
    Ok(out)
}

/// The planar dual `DT(n)`: the subcomplex of `DAss(n)` on planar trees with
/// a fixed boundary order.
pub fn dt_component(n: usize, caps: &Caps) -> Result<GradedComplex, OperadError> {
    check_n(n, caps)?;
    let ass = Arc::new(Ass::default());
    let elems = planar_trees(n + 1, &ass)?;
    let dual = DualOperad::new(ass);
    complex_on(&dual, &elems, n + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operad::{Comm, Lie};

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn dcomm_koszul_small() {
        let caps = Caps::default();
        for n in 2..=5 {
            let c = dg_dual_component(Arc::new(Comm), n, &caps).unwrap();
            let h = c.betti().unwrap();
            assert_eq!(h.len(), 1, "n={n}: {h:?}");
            assert_eq!(*h.values().next().unwrap(), factorial(n - 1), "n={n}");
        }
    }

    #[test]
    fn dt_koszul_small() {
        let caps = Caps::default();
        for n in 2..=5 {
            let c = dt_component(n, &caps).unwrap();
            let h = c.betti().unwrap();
            assert_eq!(h.values().sum::<usize>(), 1, "n={n}: {h:?}");
        }
    }

    #[test]
    fn dual_relabel_functorial() {
        let d = DualOperad::new(Arc::new(Lie::default()));
        let k = 5;
        let p1 = vec![2, 0, 4, 1, 3];
        let p2 = vec![1, 3, 0, 4, 2];
        let both: Vec<usize> = (0..k).map(|f| p2[p1[f]]).collect();
        let m1 = d.relabel(k, &p1).unwrap();
        let m2 = d.relabel(k, &p2).unwrap();
        let m12 = d.relabel(k, &both).unwrap();
        for i in 0..d.dim(k).unwrap() {
            let mut via = SparseVec::new();
            for (&j, c) in &m1[i] {
                for (&r, e) in &m2[j] {
                    axpy(&mut via, r, c * e);
                }
            }
            assert_eq!(via, m12[i]);
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        for base in [Arc::new(Comm) as Arc<dyn CyclicOperad>, Arc::new(Lie::default()), Arc::new(Ass::default())] {
            let d = DualOperad::new(base);
            for k in 3..=5 {
                for i in 0..d.dim(k).unwrap() {
                    let dx = d.differential(k, i).unwrap();
                    let mut ddx = SparseVec::new();
                    for (&j, c) in &dx {
                        for (&r, e) in &d.differential(k, j).unwrap() {
                            axpy(&mut ddx, r, c * e);
                        }
                    }
                    assert!(ddx.is_empty());
                }
            }
        }
    }

    fn same_cycle(a: &[usize], b: &[usize]) -> bool {
        crate::operad::normalize_cycle(a) == crate::operad::normalize_cycle(b)
    }

    #[test]
    fn relabel_moves_boundary_order() {
        let ass = Arc::new(Ass::default());
        let d = DualOperad::new(ass.clone());
        let k = 5;
        let b = d.basis(k).unwrap();
        for perm in [vec![1, 0, 2, 3, 4], vec![4, 2, 0, 3, 1], vec![1, 2, 3, 4, 0]] {
            let m = d.relabel(k, &perm).unwrap();
            for (i, x) in b.elems.iter().enumerate() {
                let o = DualOperad::boundary_order(x, &ass).unwrap();
                let moved: Vec<usize> = o.iter().map(|&f| perm[f]).collect();
                assert_eq!(m[i].len(), 1);
                let (&j, _) = m[i].iter().next().unwrap();
                let o2 = DualOperad::boundary_order(&b.elems[j], &ass).unwrap();
                assert!(same_cycle(&moved, &o2), "{x:?} under {perm:?}");
            }
        }
    }

    #[test]
    fn grafting_splices_boundary_orders() {
        let ass = Arc::new(Ass::default());
        let d = DualOperad::new(ass.clone());
        let (ka, kb) = (4, 3);
        let (ba, bb) = (d.basis(ka).unwrap(), d.basis(kb).unwrap());
        let bc = d.basis(ka + kb - 2).unwrap();
        for i in 0..ka {
            for j in 0..kb {
                for (xi, x) in ba.elems.iter().enumerate() {
                    for (yi, y) in bb.elems.iter().enumerate() {
                        let ox = DualOperad::boundary_order(x, &ass).unwrap();
                        let oy = DualOperad::boundary_order(y, &ass).unwrap();
                        let want = ass
                            .compose(ka, i, ass.index_of(&ox).unwrap(), kb, j, ass.index_of(&oy).unwrap())
                            .unwrap();
                        let got = d.compose(ka, i, xi, kb, j, yi).unwrap();
                        assert_eq!(got.len(), 1);
                        let (&z, _) = got.iter().next().unwrap();
                        let oz = DualOperad::boundary_order(&bc.elems[z], &ass).unwrap();
                        let (&w, _) = want.iter().next().unwrap();
                        assert!(same_cycle(&oz, &ass.order(ka + kb - 2, w).unwrap()));
                    }
                }
            }
        }
    }
}
