use std::collections::VecDeque;

use super::{GraphIso, HalfEdgeGraph};
use crate::linalg::det_i64;

/// How the spanning tree is grown from vertex 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum TreePolicy {
    #[default]
    Bfs,
    Dfs,
}

/// Fundamental cycle basis of H₁. Edges are oriented from their lower
/// half-edge to the higher one; cycles are signed edge vectors indexed like
/// [`HalfEdgeGraph::edges`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    pub tree_edges: Vec<usize>,
    pub non_tree_edges: Vec<usize>,
    pub cycles: Vec<Vec<i64>>,
}

impl CycleBasis {
    pub fn new(g: &HalfEdgeGraph, policy: TreePolicy) -> CycleBasis {
        let n = g.n_vertices();
        let edges = g.edges();
        let mut adj: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
        for (e, &(h, k)) in edges.iter().enumerate() {
            let (a, b) = (g.vertex_of(h), g.vertex_of(k));
            if a != b {
                adj[a].push((e, b, h));
                adj[b].push((e, a, k));
            }
        }
        // parent[v] = (edge, half-edge at v on that edge)
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut in_tree = vec![false; edges.len()];
        if n > 0 {
            seen[0] = true;
            match policy {
                TreePolicy::Bfs => {
                    let mut queue = VecDeque::from([0]);
                    while let Some(v) = queue.pop_front() {
                        for &(e, w, _) in &adj[v] {
                            if !seen[w] {
                                seen[w] = true;
                                in_tree[e] = true;
                                let hw = if g.vertex_of(edges[e].0) == w { edges[e].0 } else { edges[e].1 };
                                parent[w] = Some((e, hw));
                                queue.push_back(w);
                            }
                        }
                    }
                }
                TreePolicy::Dfs => {
                    fn visit(
                        v: usize,
                        g: &HalfEdgeGraph,
                        edges: &[(usize, usize)],
                        adj: &[Vec<(usize, usize, usize)>],
                        seen: &mut [bool],
                        in_tree: &mut [bool],
                        parent: &mut [Option<(usize, usize)>],
                    ) {
                        for &(e, w, _) in &adj[v] {
                            if !seen[w] {
                                seen[w] = true;
                                in_tree[e] = true;
                                let hw = if g.vertex_of(edges[e].0) == w { edges[e].0 } else { edges[e].1 };
                                parent[w] = Some((e, hw));
                                visit(w, g, edges, adj, seen, in_tree, parent);
                            }
                        }
                    }
                    visit(0, g, &edges, &adj, &mut seen, &mut in_tree, &mut parent);
                }
            }
        }
        // signed path from v up to the root
        let to_root = |mut v: usize| {
            let mut z = vec![0i64; edges.len()];
            while let Some((e, hv)) = parent[v] {
                // moving from v towards the parent: along the edge iff hv is its low half-edge
                z[e] += if hv == edges[e].0 { 1 } else { -1 };
                v = g.vertex_of(g.pair(hv));
            }
            z
        };
        let mut tree_edges = Vec::new();
        let mut non_tree_edges = Vec::new();
        let mut cycles = Vec::new();
        for (e, &(h, k)) in edges.iter().enumerate() {
            if in_tree[e] {
                tree_edges.push(e);
                continue;
            }
            non_tree_edges.push(e);
            let mut z = vec![0i64; edges.len()];
            z[e] = 1;
            let back = to_root(g.vertex_of(k));
            let fwd = to_root(g.vertex_of(h));
            for i in 0..edges.len() {
                z[i] += back[i] - fwd[i];
            }
            cycles.push(z);
        }
        CycleBasis {
            tree_edges,
            non_tree_edges,
            cycles,
        }
    }

    pub fn rank(&self) -> usize {
        self.cycles.len()
    }

    /// Coordinates of a cycle in this basis: its coefficients on the
    /// non-tree edges.
    pub fn coords(&self, z: &[i64]) -> Vec<i64> {
        self.non_tree_edges.iter().map(|&e| z[e]).collect()
    }
}

/// Whether an edge vector has zero boundary.
pub fn is_cycle(g: &HalfEdgeGraph, z: &[i64]) -> bool {
    let mut bd = vec![0i64; g.n_vertices()];
    for (e, &(h, k)) in g.edges().iter().enumerate() {
        bd[g.vertex_of(k)] += z[e];
        bd[g.vertex_of(h)] -= z[e];
    }
    bd.iter().all(|&x| x == 0)
}

/// Push a cycle forward along an edge correspondence: `map[e]` is the target
/// edge and whether orientation is kept, or `None` for a contracted edge.
pub fn push_cycle(z: &[i64], map: &[Option<(usize, bool)>], n_target: usize) -> Vec<i64> {
    let mut out = vec![0i64; n_target];
    for (e, m) in map.iter().enumerate() {
        if let Some((t, keep)) = *m {
            out[t] += if keep { z[e] } else { -z[e] };
        }
    }
    out
}

/// Determinant of the induced map on H₁ between the two fundamental bases.
pub fn h1_det(
    from: &CycleBasis,
    to: &CycleBasis,
    map: &[Option<(usize, bool)>],
    n_target: usize,
) -> i32 {
    let n = from.rank();
    if n == 0 {
        return 1;
    }
    let cols: Vec<Vec<i64>> = from
        .cycles
        .iter()
        .map(|z| to.coords(&push_cycle(z, map, n_target)))
        .collect();
    let m: Vec<Vec<i64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let d = det_i64(&m);
    if d == crate::linalg::one() {
        1
    } else if d == -crate::linalg::one() {
        -1
    } else {
        panic!("induced map on H1 is not unimodular")
    }
}

/// H₁ determinant of an isomorphism `from → to`.
pub fn iso_h1_det(
    iso: &GraphIso,
    from: &HalfEdgeGraph,
    to: &HalfEdgeGraph,
    policy: TreePolicy,
) -> i32 {
    let map: Vec<Option<(usize, bool)>> = iso.edge_map(from, to).into_iter().map(Some).collect();
    h1_det(
        &CycleBasis::new(from, policy),
        &CycleBasis::new(to, policy),
        &map,
        to.n_edges(),
    )
}

/// Edge correspondence of a contraction given the half-edge map returned by
/// [`HalfEdgeGraph::contract_edge`].
pub fn contraction_edge_map(
    from: &HalfEdgeGraph,
    to: &HalfEdgeGraph,
    half_map: &[Option<usize>],
) -> Vec<Option<(usize, bool)>> {
    from.edges()
        .iter()
        .map(|&(h, _)| half_map[h].map(|t| (to.edge_of(t), t < to.pair(t))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::automorphisms;

    #[test]
    fn figure_eight_and_theta() {
        let f8 = HalfEdgeGraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        let b = CycleBasis::new(&f8, TreePolicy::Bfs);
        assert_eq!(b.cycles, vec![vec![1, 0], vec![0, 1]]);
        let theta = HalfEdgeGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        for p in [TreePolicy::Bfs, TreePolicy::Dfs] {
            let b = CycleBasis::new(&theta, p);
            assert_eq!(b.rank(), 2);
            assert_eq!(b.tree_edges, vec![0]);
            assert_eq!(b.cycles, vec![vec![-1, 1, 0], vec![-1, 0, 1]]);
            assert!(b.cycles.iter().all(|z| is_cycle(&theta, z)));
        }
    }

    #[test]
    fn automorphism_dets_are_units() {
        let theta = HalfEdgeGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let dets: Vec<i32> = automorphisms(&theta)
            .iter()
            .map(|a| iso_h1_det(a, &theta, &theta, TreePolicy::Bfs))
            .collect();
        assert_eq!(dets.iter().filter(|&&d| d == 1).count(), 6);
        let f8 = HalfEdgeGraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap();
        let flip = GraphIso {
            map: vec![1, 0, 2, 3],
        };
        assert_eq!(iso_h1_det(&flip, &f8, &f8, TreePolicy::Bfs), -1);
    }

    #[test]
    fn contraction_is_h1_isomorphism() {
        let dumbbell = HalfEdgeGraph::from_edges(2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        let (c, hm) = dumbbell.contract_edge(1).unwrap();
        let map = contraction_edge_map(&dumbbell, &c, &hm);
        let d = h1_det(
            &CycleBasis::new(&dumbbell, TreePolicy::Bfs),
            &CycleBasis::new(&c, TreePolicy::Bfs),
            &map,
            c.n_edges(),
        );
        assert_eq!(d.abs(), 1);
    }
}
