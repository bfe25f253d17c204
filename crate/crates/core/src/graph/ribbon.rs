use std::collections::BTreeSet;

use serde_json::{Map, Value};

use super::{automorphisms, enumerate_graphs, Caps, GraphError, GraphIso, HalfEdgeGraph};

/// Cyclic order of the half-edges at every vertex, as a successor map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RibbonStructure {
    pub next: Vec<usize>,
}

impl RibbonStructure {
    pub fn new(g: &HalfEdgeGraph, next: Vec<usize>) -> Result<Self, GraphError> {
        let n = g.n_half_edges();
        if next.len() != n {
            return Err(GraphError::InvalidRibbon("successor map has the wrong length".into()));
        }
        let mut hit = vec![false; n];
        for &x in &next {
            if x >= n || hit[x] {
                return Err(GraphError::InvalidRibbon("successor map is not a permutation".into()));
            }
            hit[x] = true;
        }
        for v in 0..g.n_vertices() {
            let hs = g.half_edges_at(v);
            let mut h = hs[0];
            let mut count = 0;
            loop {
                if g.vertex_of(h) != v {
                    return Err(GraphError::InvalidRibbon(format!(
                        "cycle at vertex {v} leaves the vertex"
                    )));
                }
                count += 1;
                h = next[h];
                if h == hs[0] {
                    break;
                }
            }
            if count != hs.len() {
                return Err(GraphError::InvalidRibbon(format!(
                    "vertex {v} is not a single cycle"
                )));
            }
        }
        Ok(RibbonStructure { next })
    }

    /// Build from the cyclic order of half-edges listed per vertex.
    pub fn from_orders(g: &HalfEdgeGraph, orders: &[Vec<usize>]) -> Result<Self, GraphError> {
        let mut next: Vec<usize> = (0..g.n_half_edges()).collect();
        for o in orders {
            for (i, &h) in o.iter().enumerate() {
                if h >= next.len() {
                    return Err(GraphError::InvalidRibbon(format!("half-edge {h} out of range")));
                }
                next[h] = o[(i + 1) % o.len()];
            }
        }
        Self::new(g, next)
    }

    /// Cyclic order at `v` starting from its smallest half-edge.
    pub fn order_at(&self, g: &HalfEdgeGraph, v: usize) -> Vec<usize> {
        let start = g.half_edges_at(v)[0];
        let mut out = vec![start];
        let mut h = self.next[start];
        while h != start {
            out.push(h);
            h = self.next[h];
        }
        out
    }

    /// Transport along an isomorphism.
    pub fn transport(&self, iso: &GraphIso) -> RibbonStructure {
        let mut next = vec![0; self.next.len()];
        for (h, &s) in self.next.iter().enumerate() {
            next[iso.apply(h)] = iso.apply(s);
        }
        RibbonStructure { next }
    }
}

/// Boundary cycles (orbits of `next ∘ pair`), ordered by smallest half-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryCycles {
    pub cycles: Vec<Vec<usize>>,
    pub boundary: usize,
    pub genus: usize,
}

impl BoundaryCycles {
    /// Index of the boundary cycle through each half-edge.
    pub fn face_of(&self, n_half_edges: usize) -> Vec<usize> {
        let mut f = vec![0; n_half_edges];
        for (i, c) in self.cycles.iter().enumerate() {
            for &h in c {
                f[h] = i;
            }
        }
        f
    }
}

pub fn boundary_cycles(g: &HalfEdgeGraph, r: &RibbonStructure) -> Result<BoundaryCycles, GraphError> {
    let n = g.n_half_edges();
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            c.push(h);
            h = r.next[g.pair(h)];
        }
        cycles.push(c);
    }
    let b = cycles.len();
    let rank = g.rank();
    if b > rank + 1 || (rank + 1 - b) % 2 != 0 {
        return Err(GraphError::InvalidRibbon(format!(
            "{b} boundary cycles inconsistent with rank {rank}"
        )));
    }
    Ok(BoundaryCycles {
        cycles,
        boundary: b,
        genus: (rank + 1 - b) / 2,
    })
}

/// Ribbon graph in canonical form, optionally with boundary labels
/// (`labels[i]` is the label of the `i`-th boundary cycle).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RibbonGraph {
    pub graph: HalfEdgeGraph,
    pub ribbon: RibbonStructure,
    pub labels: Option<Vec<usize>>,
}

impl RibbonGraph {
    pub fn to_json(&self) -> Value {
        let mut v = self.graph.to_json();
        let next: Map<String, Value> = self
            .ribbon
            .next
            .iter()
            .enumerate()
            .map(|(h, &s)| (h.to_string(), Value::from(s)))
            .collect();
        v["ribbon_next"] = Value::Object(next);
        if let Some(l) = &self.labels {
            v["boundary_labels"] = Value::from(l.clone());
        }
        v
    }
}

/// Every cyclic-order choice on a graph.
pub(crate) fn all_ribbon_structures(g: &HalfEdgeGraph) -> Vec<RibbonStructure> {
    let mut per_vertex: Vec<Vec<Vec<usize>>> = Vec::new();
    for v in 0..g.n_vertices() {
        let hs = g.half_edges_at(v);
        per_vertex.push(
            cyclic_orders(&hs[1..])
                .into_iter()
                .map(|mut rest| {
                    rest.insert(0, hs[0]);
                    rest
                })
                .collect(),
        );
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; per_vertex.len()];
    loop {
        let orders: Vec<Vec<usize>> = idx
            .iter()
            .enumerate()
            .map(|(v, &i)| per_vertex[v][i].clone())
            .collect();
        out.push(RibbonStructure::from_orders(g, &orders).expect("orders at vertices"));
        let mut k = 0;
        loop {
            if k == idx.len() {
                return out;
            }
            idx[k] += 1;
            if idx[k] < per_vertex[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn cyclic_orders(rest: &[usize]) -> Vec<Vec<usize>> {
    if rest.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..rest.len() {
        let mut r = rest.to_vec();
        let x = r.remove(i);
        for mut tail in cyclic_orders(&r) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// All isomorphism classes of ribbon graphs with genus `g` and `b` boundary
/// cycles. In labeled mode each class is further split by the orbits of its
/// automorphisms on the `b!` boundary labelings.
pub fn enumerate_ribbon_graphs(
    g: usize,
    b: usize,
    labeled: bool,
    caps: &Caps,
) -> Result<Vec<RibbonGraph>, GraphError> {
    if b == 0 || 2 * g + b <= 2 {
        return Err(GraphError::InvalidRibbon(format!(
            "(g,b) = ({g},{b}) violates 2-2g-b < 0"
        )));
    }
    caps.check_ribbon(g, b)?;
    let rank = 2 * g + b - 1;
    let mut out = Vec::new();
    for graph in enumerate_graphs(rank, &Caps { rank: rank.max(caps.rank), ..*caps })? {
        let auts = automorphisms(&graph);
        let mut seen: BTreeSet<RibbonStructure> = BTreeSet::new();
        for r in all_ribbon_structures(&graph) {
            let bc = boundary_cycles(&graph, &r)?;
            if bc.genus != g || bc.boundary != b {
                continue;
            }
            let key = auts.iter().map(|a| r.transport(a)).min().unwrap();
            if !seen.insert(key.clone()) {
                continue;
            }
            if !labeled {
                out.push(RibbonGraph {
                    graph: graph.clone(),
                    ribbon: key,
                    labels: None,
                });
                continue;
            }
            let bc = boundary_cycles(&graph, &key)?;
            let face = bc.face_of(graph.n_half_edges());
            let stab: Vec<&GraphIso> = auts.iter().filter(|a| key.transport(a) == key).collect();
            let mut label_seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for labels in permutations(b) {
                // labels[i] = label of cycle i; an automorphism moves cycle i to cycle j
                let canon = stab
                    .iter()
                    .map(|a| {
                        let mut l = vec![0; b];
                        for (i, c) in bc.cycles.iter().enumerate() {
                            l[face[a.apply(c[0])]] = labels[i];
                        }
                        l
                    })
                    .min()
                    .unwrap();
                if label_seen.insert(canon.clone()) {
                    out.push(RibbonGraph {
                        graph: graph.clone(),
                        ribbon: key.clone(),
                        labels: Some(canon),
                    });
                }
            }
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let items: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    fn rec(rest: &[usize], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let mut r = rest.to_vec();
            let x = r.remove(i);
            cur.push(x);
            rec(&r, cur, out);
            cur.pop();
        }
    }
    rec(&items, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_eight() -> HalfEdgeGraph {
        HalfEdgeGraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap()
    }

    #[test]
    fn figure_eight_orders() {
        let g = figure_eight();
        let planar = RibbonStructure::from_orders(&g, &[vec![0, 1, 2, 3]]).unwrap();
        let bc = boundary_cycles(&g, &planar).unwrap();
        assert_eq!((bc.boundary, bc.genus), (3, 0));
        let inter = RibbonStructure::from_orders(&g, &[vec![0, 2, 1, 3]]).unwrap();
        let bc = boundary_cycles(&g, &inter).unwrap();
        assert_eq!((bc.boundary, bc.genus), (1, 1));
    }

    #[test]
    fn theta_planar() {
        let g = HalfEdgeGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let r = RibbonStructure::from_orders(&g, &[vec![0, 2, 4], vec![5, 3, 1]]).unwrap();
        assert_eq!(boundary_cycles(&g, &r).unwrap().boundary, 3);
        let r = RibbonStructure::from_orders(&g, &[vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        assert_eq!(boundary_cycles(&g, &r).unwrap().boundary, 1);
    }

    #[test]
    fn rejects_bad_successor() {
        let g = figure_eight();
        assert!(RibbonStructure::new(&g, vec![1, 0, 3, 2]).is_err());
    }

    #[test]
    fn torus_and_pants() {
        let caps = Caps::default();
        let t = enumerate_ribbon_graphs(1, 1, false, &caps).unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.iter().all(|r| r.graph.rank() == 2));
        let p = enumerate_ribbon_graphs(0, 3, false, &caps).unwrap();
        assert!(p.iter().all(|r| r.graph.rank() == 2));
        assert!(enumerate_ribbon_graphs(0, 2, false, &caps).is_err());
    }
}
