use std::collections::{BTreeMap, BTreeSet};

use super::canon::canonicalize_unchecked;
use super::{automorphisms, GraphError, HalfEdgeGraph};

/// Size limits for enumerations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest first Betti number.
    pub rank: usize,
    /// Largest value of `6g + 3b` in ribbon mode.
    pub ribbon: usize,
    /// Largest tree arity `n` for dual operad components.
    pub arity: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            rank: 4,
            ribbon: 15,
            arity: 6,
        }
    }
}

impl Caps {
    /// Parse overrides of the form `rank=5,ribbon=18,arity=7`.
    pub fn parse_overrides(&self, s: &str) -> Result<Caps, String> {
        let mut c = *self;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| format!("cap entry `{part}` is not key=value"))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| format!("cap `{k}` needs a non-negative integer"))?;
            match k.trim() {
                "rank" => c.rank = v,
                "ribbon" => c.ribbon = v,
                "arity" => c.arity = v,
                other => return Err(format!("unknown cap `{other}`")),
            }
        }
        Ok(c)
    }

    pub fn check_rank(&self, n: usize) -> Result<(), GraphError> {
        if n > self.rank {
            return Err(GraphError::OutOfScope(format!("rank {n} exceeds cap {}", self.rank)));
        }
        Ok(())
    }

    pub fn check_ribbon(&self, g: usize, b: usize) -> Result<(), GraphError> {
        if 6 * g + 3 * b > self.ribbon {
            return Err(GraphError::OutOfScope(format!(
                "6g+3b = {} exceeds cap {}",
                6 * g + 3 * b,
                self.ribbon
            )));
        }
        Ok(())
    }

    pub fn check_arity(&self, n: usize) -> Result<(), GraphError> {
        if n > self.arity {
            return Err(GraphError::OutOfScope(format!("arity {n} exceeds cap {}", self.arity)));
        }
        Ok(())
    }
}

/// One vertex with `n` loops.
pub fn rose(n: usize) -> HalfEdgeGraph {
    HalfEdgeGraph::from_edges(1, &vec![(0, 0); n]).expect("rose")
}

/// Move the half-edges `moved` off vertex `v` onto a new vertex joined to
/// `v` by a new edge. Old half-edges and edges keep their ids; the new edge
/// is last, with its low half-edge at `v`.
pub fn split_vertex(g: &HalfEdgeGraph, v: usize, moved: &[usize]) -> HalfEdgeGraph {
    let n = g.n_half_edges();
    let nv = g.n_vertices();
    let mut pair = g.pairing().to_vec();
    let mut vertex_of = g.vertex_map().to_vec();
    for &h in moved {
        debug_assert_eq!(vertex_of[h], v);
        vertex_of[h] = nv;
    }
    pair.push(n + 1);
    pair.push(n);
    vertex_of.push(v);
    vertex_of.push(nv);
    HalfEdgeGraph::from_parts(pair, vertex_of, nv + 1).expect("split of a valid graph")
}

/// All ways to split a vertex into two of valence at least three: pairs
/// `(v, moved)` with the smallest half-edge at `v` staying put.
pub fn vertex_splits(g: &HalfEdgeGraph) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for v in 0..g.n_vertices() {
        let hs = g.half_edges_at(v);
        let k = hs.len();
        if k < 4 {
            continue;
        }
        let rest = &hs[1..];
        for mask in 1usize..(1 << rest.len()) {
            let moved: Vec<usize> = (0..rest.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| rest[i])
                .collect();
            if moved.len() >= 2 && k - moved.len() >= 2 {
                out.push((v, moved));
            }
        }
    }
    out
}

/// Every isomorphism class of connected graphs with all valences at least
/// three and first Betti number `n`, canonical, sorted by edge count and
/// then by encoding.
pub fn enumerate_graphs(n: usize, caps: &Caps) -> Result<Vec<HalfEdgeGraph>, GraphError> {
    if n < 1 {
        return Err(GraphError::InvalidGraph("rank must be at least 1".into()));
    }
    caps.check_rank(n)?;
    let start = canonicalize_unchecked(&rose(n)).0;
    let mut seen: BTreeSet<HalfEdgeGraph> = BTreeSet::from([start.clone()]);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for (v, moved) in vertex_splits(g) {
                let c = canonicalize_unchecked(&split_vertex(g, v, &moved)).0;
                if seen.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<HalfEdgeGraph> = seen.into_iter().collect();
    out.sort_by(|a, b| a.n_edges().cmp(&b.n_edges()).then(a.cmp(b)));
    Ok(out)
}

/// Contract a set of edges forming a forest. Returns the quotient and the
/// image of every half-edge (`None` on contracted edges).
pub fn contract_forest(
    g: &HalfEdgeGraph,
    forest: &[usize],
) -> Result<(HalfEdgeGraph, Vec<Option<usize>>), GraphError> {
    let edges = g.edges();
    let mut pending: Vec<usize> = forest.iter().map(|&e| edges[e].0).collect();
    let mut cur = g.clone();
    let mut map: Vec<Option<usize>> = (0..g.n_half_edges()).map(Some).collect();
    while let Some(h) = pending.pop() {
        let (next, m) = cur.contract_edge(cur.edge_of(h))?;
        for x in map.iter_mut() {
            *x = x.and_then(|y| m[y]);
        }
        for p in pending.iter_mut() {
            *p = m[*p].expect("forest edges survive earlier contractions");
        }
        cur = next;
    }
    Ok((cur, map))
}

/// A graph with a forest whose contraction gives a fixed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexExpansion {
    /// Canonical graph.
    pub graph: HalfEdgeGraph,
    /// Sorted edge indices of the forest.
    pub forest: Vec<usize>,
    /// Image in the contracted (input) graph of every half-edge.
    pub onto: Vec<Option<usize>>,
}

fn forest_key(g: &HalfEdgeGraph, forest: &[usize]) -> (HalfEdgeGraph, Vec<usize>) {
    let (c, iso) = canonicalize_unchecked(g);
    let edges = g.edges();
    let mapped: Vec<usize> = forest
        .iter()
        .map(|&e| c.edge_of(iso.apply(edges[e].0)))
        .collect();
    let cedges = c.edges();
    let best = automorphisms(&c)
        .iter()
        .map(|a| {
            let mut f: Vec<usize> = mapped.iter().map(|&e| c.edge_of(a.apply(cedges[e].0))).collect();
            f.sort_unstable();
            f
        })
        .min()
        .unwrap_or_default();
    (c, best)
}

/// All pairs (graph, forest) up to isomorphism whose contraction is `g`,
/// including `g` with the empty forest.
pub fn vertex_expansions(g: &HalfEdgeGraph, caps: &Caps) -> Result<Vec<VertexExpansion>, GraphError> {
    g.validate()?;
    caps.check_rank(g.rank())?;
    let mut seen: BTreeMap<(HalfEdgeGraph, Vec<usize>), ()> = BTreeMap::new();
    let mut frontier: Vec<(HalfEdgeGraph, Vec<usize>)> = vec![(g.clone(), Vec::new())];
    seen.insert(forest_key(g, &[]), ());
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (h, f) in &frontier {
            for (v, moved) in vertex_splits(h) {
                let s = split_vertex(h, v, &moved);
                let mut nf = f.clone();
                nf.push(s.n_edges() - 1);
                let key = forest_key(&s, &nf);
                if seen.insert(key, ()).is_none() {
                    next.push((s, nf));
                }
            }
        }
        frontier = next;
    }
    let (gc, giso) = canonicalize_unchecked(g);
    let to_input = giso.inverse();
    let mut out = Vec::new();
    for (graph, forest) in seen.into_keys() {
        let (quot, hmap) = contract_forest(&graph, &forest)?;
        let (qc, qiso) = canonicalize_unchecked(&quot);
        debug_assert_eq!(qc, gc);
        let onto = hmap
            .iter()
            .map(|m| m.map(|x| to_input.apply(qiso.apply(x))))
            .collect();
        out.push(VertexExpansion {
            graph,
            forest,
            onto,
        });
    }
    out.sort_by(|a, b| {
        (a.forest.len(), &a.graph, &a.forest).cmp(&(b.forest.len(), &b.graph, &b.forest))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonicalize, is_isomorphic};

    fn theta() -> HalfEdgeGraph {
        HalfEdgeGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }
    fn dumbbell() -> HalfEdgeGraph {
        HalfEdgeGraph::from_edges(2, &[(0, 0), (0, 1), (1, 1)]).unwrap()
    }

    #[test]
    fn rank_two_classes() {
        let gs = enumerate_graphs(2, &Caps::default()).unwrap();
        assert_eq!(gs.len(), 3);
        assert!(gs.iter().all(|g| g.rank() == 2 && g.validate().is_ok()));
        assert!(gs.iter().any(|g| is_isomorphic(g, &theta())));
        assert!(gs.iter().any(|g| is_isomorphic(g, &dumbbell())));
        assert!(gs.iter().any(|g| is_isomorphic(g, &rose(2))));
    }

    #[test]
    fn rank_three_bounds() {
        let gs = enumerate_graphs(3, &Caps::default()).unwrap();
        assert!(gs.iter().all(|g| g.n_edges() <= 6 && g.n_vertices() <= 4));
        assert_eq!(gs.len(), 15);
    }

    #[test]
    fn rank_four_count() {
        // independent count over multiplicity matrices up to vertex relabeling
        assert_eq!(enumerate_graphs(4, &Caps::default()).unwrap().len(), 111);
    }

    #[test]
    fn rank_cap() {
        let caps = Caps {
            rank: 2,
            ..Caps::default()
        };
        assert!(matches!(enumerate_graphs(3, &caps), Err(GraphError::OutOfScope(_))));
        assert_eq!(
            Caps::default().parse_overrides("rank=5, arity=7").unwrap(),
            Caps {
                rank: 5,
                ribbon: 15,
                arity: 7
            }
        );
        assert!(Caps::default().parse_overrides("depth=1").is_err());
    }

    #[test]
    fn expansions_of_rank_two_graphs() {
        let f8 = canonicalize(&rose(2)).unwrap().0;
        let ex = vertex_expansions(&f8, &Caps::default()).unwrap();
        assert_eq!(ex.len(), 3);
        assert!(ex.iter().any(|x| x.forest.is_empty() && x.graph == f8));
        let t = canonicalize(&theta()).unwrap().0;
        let ex = vertex_expansions(&t, &Caps::default()).unwrap();
        assert_eq!(ex.len(), 1);
        for x in vertex_expansions(&f8, &Caps::default()).unwrap() {
            let (q, _) = contract_forest(&x.graph, &x.forest).unwrap();
            assert!(is_isomorphic(&q, &f8));
            let hit: Vec<usize> = x.onto.iter().flatten().copied().collect();
            let mut s = hit.clone();
            s.sort_unstable();
            assert_eq!(s, (0..f8.n_half_edges()).collect::<Vec<_>>());
        }
    }
}
