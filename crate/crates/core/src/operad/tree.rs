use std::collections::{BTreeSet, HashMap};

use serde_json::{json, Value};

use crate::linalg::permutation_sign;

/// Internal half-edge names start here; leaves are `0..k`.
pub const INTERNAL_BASE: usize = 1 << 20;

/// Unrooted tree with leaves `0..k` and internal vertices of valence at
/// least three, in canonical form: rooted at the vertex carrying leaf 0,
/// vertices in pre-order with children ordered by their smallest leaf, and
/// the `k`-th internal edge (in order of discovery) made of the half-edges
/// `INTERNAL_BASE + 2k` (parent side) and `INTERNAL_BASE + 2k + 1`. Each
/// vertex lists its flags sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tree {
    pub vertices: Vec<Vec<usize>>,
}

/// Odd symbol of the orientation monomial: one per vertex, one per flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sym {
    Vertex(usize),
    Flag(usize),
}

/// Tree with a basis index of the decorating component at every vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecoratedTree {
    pub tree: Tree,
    pub decos: Vec<usize>,
}

pub(crate) fn internal_pair(f: usize) -> usize {
    f ^ 1
}

impl Tree {
    pub fn n_leaves(&self) -> usize {
        self.vertices.iter().flatten().filter(|&&f| f < INTERNAL_BASE).count()
    }

    pub fn n_internal_edges(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The orientation monomial: each vertex symbol followed by its flags.
    pub fn monomial(&self) -> Vec<Sym> {
        let mut m = Vec::new();
        for (v, fs) in self.vertices.iter().enumerate() {
            m.push(Sym::Vertex(v));
            m.extend(fs.iter().map(|&f| Sym::Flag(f)));
        }
        m
    }

    pub fn to_raw(&self) -> RawTree {
        let mut pair = HashMap::new();
        for &f in self.vertices.iter().flatten() {
            if f >= INTERNAL_BASE {
                pair.insert(f, internal_pair(f));
            }
        }
        RawTree {
            vertices: self.vertices.clone(),
            pair,
        }
    }

    pub fn to_json(&self) -> Value {
        let fmt = |f: usize| {
            if f < INTERNAL_BASE {
                json!(f)
            } else {
                json!(format!("e{}{}", (f - INTERNAL_BASE) / 2, if f % 2 == 0 { "+" } else { "-" }))
            }
        };
        json!(self
            .vertices
            .iter()
            .map(|fs| fs.iter().map(|&f| fmt(f)).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }
}

/// Tree with arbitrary internal half-edge names (all `>= INTERNAL_BASE`).
#[derive(Clone, Debug)]
pub struct RawTree {
    pub vertices: Vec<Vec<usize>>,
    pub pair: HashMap<usize, usize>,
}

/// Outcome of bringing a raw tree to canonical form.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub tree: Tree,
    /// `vertex_map[old] = new`.
    pub vertex_map: Vec<usize>,
    pub rename: HashMap<usize, usize>,
    /// Sign of the permutation taking the given monomial to the canonical one.
    pub sign: i32,
}

impl RawTree {
    fn vertex_of_flags(&self) -> HashMap<usize, usize> {
        let mut m = HashMap::new();
        for (v, fs) in self.vertices.iter().enumerate() {
            for &f in fs {
                m.insert(f, v);
            }
        }
        m
    }

    /// Canonical form, and the sign relating `monomial` (written in this
    /// tree's names) to the canonical monomial.
    pub fn canonicalize(&self, monomial: &[Sym]) -> Canonical {
        let vof = self.vertex_of_flags();
        let root = vof[&0];
        // smallest leaf reached through flag f, looking away from its vertex
        fn min_leaf(t: &RawTree, vof: &HashMap<usize, usize>, f: usize) -> usize {
            if f < INTERNAL_BASE {
                return f;
            }
            let g = t.pair[&f];
            let w = vof[&g];
            t.vertices[w]
                .iter()
                .filter(|&&h| h != g)
                .map(|&h| min_leaf(t, vof, h))
                .min()
                .unwrap()
        }
        let mut order = Vec::with_capacity(self.vertices.len());
        let mut rename: HashMap<usize, usize> = HashMap::new();
        fn visit(
            t: &RawTree,
            vof: &HashMap<usize, usize>,
            v: usize,
            into: Option<usize>,
            order: &mut Vec<usize>,
            rename: &mut HashMap<usize, usize>,
        ) {
            order.push(v);
            let mut kids: Vec<(usize, usize)> = t.vertices[v]
                .iter()
                .filter(|&&f| f >= INTERNAL_BASE && Some(f) != into)
                .map(|&f| (min_leaf(t, vof, f), f))
                .collect();
            kids.sort_unstable();
            for (_, f) in kids {
                let k = order.len() - 1;
                let g = t.pair[&f];
                rename.insert(f, INTERNAL_BASE + 2 * k);
                rename.insert(g, INTERNAL_BASE + 2 * k + 1);
                visit(t, vof, vof[&g], Some(g), order, rename);
            }
        }
        visit(self, &vof, root, None, &mut order, &mut rename);
        let mut vertex_map = vec![0; self.vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            vertex_map[old] = new;
        }
        let name = |f: usize| if f < INTERNAL_BASE { f } else { rename[&f] };
        let vertices: Vec<Vec<usize>> = order
            .iter()
            .map(|&old| {
                let mut fs: Vec<usize> = self.vertices[old].iter().map(|&f| name(f)).collect();
                fs.sort_unstable();
                fs
            })
            .collect();
        let tree = Tree { vertices };
        let canon = tree.monomial();
        let pos: HashMap<Sym, usize> = canon.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let perm: Vec<usize> = monomial
            .iter()
            .map(|s| match *s {
                Sym::Vertex(v) => pos[&Sym::Vertex(vertex_map[v])],
                Sym::Flag(f) => pos[&Sym::Flag(name(f))],
            })
            .collect();
        let sign = if perm.is_empty() {
            1
        } else {
            debug_assert_eq!(perm.len(), canon.len());
            permutation_sign(&perm)
        };
        Canonical {
            tree,
            vertex_map,
            rename,
            sign,
        }
    }
}

/// All trees with leaves `0..k` (`k >= 3`), sorted.
pub fn enumerate_trees(k: usize) -> Vec<Tree> {
    // adjacency form: nodes 0..k are leaves, later nodes internal
    #[derive(Clone)]
    struct Adj {
        edges: Vec<(usize, usize)>,
        n_nodes: usize,
    }
    // leaf l is node l; internal nodes are numbered from LEAF_CAP upwards
    const LEAF_CAP: usize = 64;
    let mut level: Vec<Adj> = vec![Adj {
        edges: vec![(0, LEAF_CAP), (1, LEAF_CAP), (2, LEAF_CAP)],
        n_nodes: LEAF_CAP + 1,
    }];
    for l in 3..k {
        let mut next = Vec::new();
        for a in &level {
            for node in LEAF_CAP..a.n_nodes {
                let mut b = a.clone();
                b.edges.push((l, node));
                next.push(b);
            }
            for (ei, &(x, y)) in a.edges.iter().enumerate() {
                let mut b = a.clone();
                let m = b.n_nodes;
                b.n_nodes += 1;
                b.edges[ei] = (x, m);
                b.edges.push((y, m));
                b.edges.push((l, m));
                next.push(b);
            }
        }
        level = next;
    }
    let mut out: BTreeSet<Tree> = BTreeSet::new();
    for a in &level {
        let internal: Vec<usize> = (LEAF_CAP..a.n_nodes).collect();
        let idx: HashMap<usize, usize> = internal.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        let mut vertices = vec![Vec::new(); internal.len()];
        let mut pair = HashMap::new();
        let mut fresh = INTERNAL_BASE;
        for &(x, y) in &a.edges {
            match (x < LEAF_CAP, y < LEAF_CAP) {
                (true, false) => vertices[idx[&y]].push(x),
                (false, true) => vertices[idx[&x]].push(y),
                _ => {
                    vertices[idx[&x]].push(fresh);
                    vertices[idx[&y]].push(fresh + 1);
                    pair.insert(fresh, fresh + 1);
                    pair.insert(fresh + 1, fresh);
                    fresh += 2;
                }
            }
        }
        let raw = RawTree { vertices, pair };
        out.insert(raw.canonicalize(&[]).tree);
    }
    out.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts() {
        // 1, 4, 26, 236, 2752 trees with 3..=7 labelled leaves
        let counts: Vec<usize> = (3..=7).map(|k| enumerate_trees(k).len()).collect();
        assert_eq!(counts, vec![1, 4, 26, 236, 2752]);
    }

    #[test]
    fn canonical_is_idempotent() {
        for t in enumerate_trees(6) {
            let c = t.to_raw().canonicalize(&t.monomial());
            assert_eq!(c.tree, t);
            assert_eq!(c.sign, 1);
        }
    }
}
