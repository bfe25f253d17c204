use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopContraction(usize),
    #[error("invalid ribbon structure: {0}")]
    InvalidRibbon(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
}

/// Multigraph given by half-edges `0..2e`, a fixed-point-free involution
/// pairing them into edges, and the vertex each half-edge is attached to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdgeGraph {
    pair: Vec<usize>,
    vertex_of: Vec<usize>,
    n_vertices: usize,
}

impl HalfEdgeGraph {
    /// Checks the involution and vertex map only. Valence and connectivity
    /// are checked by [`HalfEdgeGraph::validate`].
    pub fn from_parts(
        pair: Vec<usize>,
        vertex_of: Vec<usize>,
        n_vertices: usize,
    ) -> Result<Self, GraphError> {
        if pair.len() != vertex_of.len() {
            return Err(GraphError::InvalidGraph("pairing and vertex map differ in length".into()));
        }
        for (h, &p) in pair.iter().enumerate() {
            if p >= pair.len() || p == h || pair[p] != h {
                return Err(GraphError::InvalidGraph(format!(
                    "pairing is not a fixed-point-free involution at half-edge {h}"
                )));
            }
        }
        let mut seen = vec![false; n_vertices];
        for &v in &vertex_of {
            if v >= n_vertices {
                return Err(GraphError::InvalidGraph(format!("vertex {v} out of range")));
            }
            seen[v] = true;
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(GraphError::InvalidGraph(format!("vertex {v} has no half-edges")));
        }
        Ok(HalfEdgeGraph {
            pair,
            vertex_of,
            n_vertices,
        })
    }

    /// Graph from a list of edges given as vertex pairs; edge `k` gets
    /// half-edges `2k` (at the first vertex) and `2k+1`.
    pub fn from_edges(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut pair = Vec::with_capacity(2 * edges.len());
        let mut vertex_of = Vec::with_capacity(2 * edges.len());
        for (k, &(a, b)) in edges.iter().enumerate() {
            pair.push(2 * k + 1);
            pair.push(2 * k);
            vertex_of.push(a);
            vertex_of.push(b);
        }
        Self::from_parts(pair, vertex_of, n_vertices)
    }

    /// Connected, every vertex of valence at least three.
    pub fn validate(&self) -> Result<(), GraphError> {
        for v in 0..self.n_vertices {
            let val = self.valence(v);
            if val < 3 {
                return Err(GraphError::InvalidGraph(format!("vertex {v} has valence {val} < 3")));
            }
        }
        if !self.is_connected() {
            return Err(GraphError::InvalidGraph("graph is not connected".into()));
        }
        Ok(())
    }

    pub fn is_connected(&self) -> bool {
        if self.n_vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.n_vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for h in self.half_edges_at(v) {
                let w = self.vertex_of[self.pair[h]];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn n_half_edges(&self) -> usize {
        self.pair.len()
    }

    pub fn n_edges(&self) -> usize {
        self.pair.len() / 2
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// First Betti number `e - v + 1` (connected graphs).
    pub fn rank(&self) -> usize {
        self.n_edges() + 1 - self.n_vertices
    }

    pub fn pair(&self, h: usize) -> usize {
        self.pair[h]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pair
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_of
    }

    pub fn valence(&self, v: usize) -> usize {
        self.vertex_of.iter().filter(|&&w| w == v).count()
    }

    /// Half-edges at `v` in increasing order.
    pub fn half_edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.pair.len()).filter(|&h| self.vertex_of[h] == v).collect()
    }

    /// Edges as `(h, pair(h))` with `h < pair(h)`, ordered by `h`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.pair.len())
            .filter(|&h| h < self.pair[h])
            .map(|h| (h, self.pair[h]))
            .collect()
    }

    /// Index into [`HalfEdgeGraph::edges`] of the edge containing `h`.
    pub fn edge_of(&self, h: usize) -> usize {
        let low = h.min(self.pair[h]);
        (0..low).filter(|&x| x < self.pair[x]).count()
    }

    pub fn edge_endpoints(&self, e: usize) -> (usize, usize) {
        let (h, k) = self.edges()[e];
        (self.vertex_of[h], self.vertex_of[k])
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.edge_endpoints(e);
        a == b
    }

    /// Contract a non-loop edge. The merged vertex takes the smaller of the
    /// two endpoint ids; remaining vertices and half-edges keep their relative
    /// order. Returns the new graph and, for every old half-edge, its image.
    pub fn contract_edge(&self, e: usize) -> Result<(HalfEdgeGraph, Vec<Option<usize>>), GraphError> {
        if e >= self.n_edges() {
            return Err(GraphError::InvalidGraph(format!("edge {e} out of range")));
        }
        let (h, k) = self.edges()[e];
        let (a, b) = (self.vertex_of[h], self.vertex_of[k]);
        if a == b {
            return Err(GraphError::LoopContraction(e));
        }
        let (keep, gone) = (a.min(b), a.max(b));
        let mut map = vec![None; self.pair.len()];
        let mut next = 0;
        for (x, m) in map.iter_mut().enumerate() {
            if x != h && x != k {
                *m = Some(next);
                next += 1;
            }
        }
        let mut pair = vec![0; next];
        let mut vertex_of = vec![0; next];
        for x in 0..self.pair.len() {
            let Some(nx) = map[x] else { continue };
            pair[nx] = map[self.pair[x]].expect("partner of a surviving half-edge survives");
            let v = self.vertex_of[x];
            let v = if v == gone { keep } else { v };
            vertex_of[nx] = if v > gone { v - 1 } else { v };
        }
        let g = HalfEdgeGraph {
            pair,
            vertex_of,
            n_vertices: self.n_vertices - 1,
        };
        Ok((g, map))
    }

    /// Apply a half-edge bijection, producing the relabelled graph. Vertex ids
    /// follow the first appearance order of their smallest new half-edge.
    pub fn relabel(&self, perm: &[usize]) -> HalfEdgeGraph {
        let n = self.pair.len();
        let mut inv = vec![0; n];
        for (h, &p) in perm.iter().enumerate() {
            inv[p] = h;
        }
        let mut vmap = vec![usize::MAX; self.n_vertices];
        let mut nv = 0;
        let mut vertex_of = vec![0; n];
        let mut pair = vec![0; n];
        for nh in 0..n {
            let h = inv[nh];
            let v = self.vertex_of[h];
            if vmap[v] == usize::MAX {
                vmap[v] = nv;
                nv += 1;
            }
            vertex_of[nh] = vmap[v];
            pair[nh] = perm[self.pair[h]];
        }
        HalfEdgeGraph {
            pair,
            vertex_of,
            n_vertices: nv,
        }
    }

    pub fn to_json(&self) -> Value {
        let pairing: Vec<Value> = self.edges().iter().map(|&(a, b)| json!([a, b])).collect();
        let vertex_of: Map<String, Value> = self
            .vertex_of
            .iter()
            .enumerate()
            .map(|(h, &v)| (h.to_string(), json!(v)))
            .collect();
        json!({
            "half_edges": (0..self.pair.len()).collect::<Vec<_>>(),
            "pairing": pairing,
            "vertex_of": vertex_of,
        })
    }

    /// Parse the graph schema. Half-edge and vertex ids may be arbitrary
    /// integers; they are renumbered densely in increasing order. Returns the
    /// graph and the id list used for half-edges.
    pub fn from_json(v: &Value) -> Result<(Self, Vec<i64>), GraphError> {
        let err = |m: &str| GraphError::InvalidGraph(m.to_string());
        let ids: Vec<i64> = v
            .get("half_edges")
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing half_edges"))?
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| err("half-edge ids must be integers")))
            .collect::<Result<_, _>>()?;
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ids.len() {
            return Err(err("duplicate half-edge id"));
        }
        let idx: BTreeMap<i64, usize> = sorted.iter().enumerate().map(|(i, &h)| (h, i)).collect();
        let look = |h: i64| idx.get(&h).copied().ok_or_else(|| err("unknown half-edge id"));
        let n = sorted.len();
        let mut pair = vec![usize::MAX; n];
        for p in v
            .get("pairing")
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing pairing"))?
        {
            let p = p.as_array().ok_or_else(|| err("pairing entries are [h1,h2]"))?;
            if p.len() != 2 {
                return Err(err("pairing entries are [h1,h2]"));
            }
            let a = look(p[0].as_i64().ok_or_else(|| err("bad id"))?)?;
            let b = look(p[1].as_i64().ok_or_else(|| err("bad id"))?)?;
            if pair[a] != usize::MAX || pair[b] != usize::MAX {
                return Err(err("half-edge paired twice"));
            }
            pair[a] = b;
            pair[b] = a;
        }
        let vo = v
            .get("vertex_of")
            .and_then(Value::as_object)
            .ok_or_else(|| err("missing vertex_of"))?;
        let mut raw = vec![i64::MIN; n];
        for (k, val) in vo {
            let h = look(k.parse().map_err(|_| err("bad vertex_of key"))?)?;
            raw[h] = val.as_i64().ok_or_else(|| err("vertex ids must be integers"))?;
        }
        if raw.contains(&i64::MIN) {
            return Err(err("vertex_of must cover every half-edge"));
        }
        let mut vids = raw.clone();
        vids.sort_unstable();
        vids.dedup();
        let vertex_of = raw
            .iter()
            .map(|x| vids.binary_search(x).unwrap())
            .collect();
        let g = Self::from_parts(pair, vertex_of, vids.len())?;
        Ok((g, sorted))
    }
}

/// Isomorphism between half-edge graphs, as the image of every half-edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphIso {
    pub map: Vec<usize>,
}

impl GraphIso {
    pub fn identity(n: usize) -> Self {
        GraphIso {
            map: (0..n).collect(),
        }
    }

    pub fn apply(&self, h: usize) -> usize {
        self.map[h]
    }

    /// `self` after `first`.
    pub fn after(&self, first: &GraphIso) -> GraphIso {
        GraphIso {
            map: first.map.iter().map(|&h| self.map[h]).collect(),
        }
    }

    pub fn inverse(&self) -> GraphIso {
        let mut inv = vec![0; self.map.len()];
        for (h, &p) in self.map.iter().enumerate() {
            inv[p] = h;
        }
        GraphIso { map: inv }
    }

    /// Checks that the map is a bijection commuting with pairing and
    /// carrying vertex classes onto vertex classes.
    pub fn is_isomorphism(&self, from: &HalfEdgeGraph, to: &HalfEdgeGraph) -> bool {
        let n = from.n_half_edges();
        if to.n_half_edges() != n || self.map.len() != n || from.n_vertices() != to.n_vertices() {
            return false;
        }
        let mut hit = vec![false; n];
        for &p in &self.map {
            if p >= n || hit[p] {
                return false;
            }
            hit[p] = true;
        }
        let mut vmap = vec![usize::MAX; from.n_vertices()];
        for h in 0..n {
            if self.map[from.pair(h)] != to.pair(self.map[h]) {
                return false;
            }
            let (v, w) = (from.vertex_of(h), to.vertex_of(self.map[h]));
            if vmap[v] == usize::MAX {
                vmap[v] = w;
            } else if vmap[v] != w {
                return false;
            }
        }
        let mut vs = vmap.clone();
        vs.sort_unstable();
        vs.dedup();
        vs.len() == vmap.len()
    }

    /// Induced map on vertices.
    pub fn vertex_map(&self, from: &HalfEdgeGraph, to: &HalfEdgeGraph) -> Vec<usize> {
        let mut vmap = vec![usize::MAX; from.n_vertices()];
        for h in 0..from.n_half_edges() {
            vmap[from.vertex_of(h)] = to.vertex_of(self.map[h]);
        }
        vmap
    }

    /// Induced map on edges: target edge index and whether the edge's
    /// orientation (low half-edge to high) is preserved.
    pub fn edge_map(&self, from: &HalfEdgeGraph, to: &HalfEdgeGraph) -> Vec<(usize, bool)> {
        from.edges()
            .iter()
            .map(|&(h, _)| {
                let t = self.map[h];
                (to.edge_of(t), t < to.pair(t))
            })
            .collect()
    }
}
