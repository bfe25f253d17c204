use std::collections::BTreeMap;

use super::{GraphError, GraphIso, HalfEdgeGraph};

/// Edge multiplicity table; diagonal entries count loops.
fn multiplicities(g: &HalfEdgeGraph) -> Vec<Vec<usize>> {
    let n = g.n_vertices();
    let mut m = vec![vec![0; n]; n];
    for (h, k) in g.edges() {
        let (a, b) = (g.vertex_of(h), g.vertex_of(k));
        m[a][b] += 1;
        if a != b {
            m[b][a] += 1;
        }
    }
    m
}

/// Iso-invariant vertex colouring by iterated degree refinement.
fn refined_colors(g: &HalfEdgeGraph, mult: &[Vec<usize>]) -> Vec<usize> {
    let n = g.n_vertices();
    let mut colors: Vec<usize> = {
        let keys: Vec<(usize, usize)> = (0..n).map(|v| (g.valence(v), mult[v][v])).collect();
        rank_keys(&keys)
    };
    loop {
        let keys: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(usize, usize)> = (0..n)
                    .filter(|&w| w != v && mult[v][w] > 0)
                    .map(|w| (colors[w], mult[v][w]))
                    .collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let next = rank_keys(&keys);
        let classes = |c: &[usize]| {
            let mut s = c.to_vec();
            s.sort_unstable();
            s.dedup();
            s.len()
        };
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn rank_keys<K: Ord + Clone>(keys: &[K]) -> Vec<usize> {
    let mut distinct: Vec<K> = keys.to_vec();
    distinct.sort();
    distinct.dedup();
    keys.iter()
        .map(|k| distinct.binary_search(k).unwrap())
        .collect()
}

struct Search<'a> {
    mult: &'a [Vec<usize>],
    /// cell colour required at each position
    slot_color: Vec<usize>,
    colors: Vec<usize>,
    order: Vec<usize>,
    used: Vec<bool>,
    code: Vec<usize>,
    best: Option<(Vec<usize>, Vec<usize>)>,
}

impl Search<'_> {
    /// Code entries contributed when position `p` is filled: column `p` of
    /// the upper triangle.
    fn column(&self, p: usize) -> impl Iterator<Item = usize> + '_ {
        let vp = self.order[p];
        (0..=p).map(move |i| self.mult[self.order[i]][vp])
    }

    fn run(&mut self, p: usize) {
        let n = self.slot_color.len();
        if p == n {
            let better = match &self.best {
                None => true,
                Some((c, _)) => self.code < *c,
            };
            if better {
                self.best = Some((self.code.clone(), self.order.clone()));
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.colors[v] != self.slot_color[p] {
                continue;
            }
            self.used[v] = true;
            self.order.push(v);
            let start = self.code.len();
            let col: Vec<usize> = self.column(p).collect();
            self.code.extend(col);
            let prune = match &self.best {
                Some((best, _)) => self.code[..] > best[..self.code.len()],
                None => false,
            };
            if !prune {
                self.run(p + 1);
            }
            self.code.truncate(start);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

fn slot_colors(colors: &[usize]) -> Vec<usize> {
    let mut s = colors.to_vec();
    s.sort_unstable();
    s
}

/// Canonical representative and an isomorphism from the input onto it.
///
/// The canonical graph has vertices in the order minimising the flattened
/// multiplicity table (over orderings compatible with the refined vertex
/// colouring); edge `k` of the canonical graph owns half-edges `2k`, `2k+1`
/// with `2k` at the smaller vertex, edges sorted by endpoint pair.
pub fn canonicalize(g: &HalfEdgeGraph) -> Result<(HalfEdgeGraph, GraphIso), GraphError> {
    g.validate()?;
    Ok(canonicalize_unchecked(g))
}

pub(crate) fn canonicalize_unchecked(g: &HalfEdgeGraph) -> (HalfEdgeGraph, GraphIso) {
    let mult = multiplicities(g);
    let colors = refined_colors(g, &mult);
    let n = g.n_vertices();
    let mut search = Search {
        mult: &mult,
        slot_color: slot_colors(&colors),
        colors: colors.clone(),
        order: Vec::with_capacity(n),
        used: vec![false; n],
        code: Vec::new(),
        best: None,
    };
    search.run(0);
    let (_, order) = search.best.expect("at least one ordering");
    let mut pos = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    // canonical edge slots per vertex pair
    let mut slots: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut edges = Vec::new();
    for j in 0..n {
        for i in 0..=j {
            for _ in 0..mult[order[i]][order[j]] {
                edges.push((i, j));
            }
        }
    }
    edges.sort_unstable();
    for (k, &e) in edges.iter().enumerate() {
        slots.entry(e).or_default().push(k);
    }
    let canon = HalfEdgeGraph::from_edges(n, &edges).expect("canonical edges are valid");
    let mut map = vec![0; g.n_half_edges()];
    for (h, k) in g.edges() {
        let (a, b) = (pos[g.vertex_of(h)], pos[g.vertex_of(k)]);
        let key = (a.min(b), a.max(b));
        let slot = slots.get_mut(&key).unwrap().remove(0);
        if a <= b {
            map[h] = 2 * slot;
            map[k] = 2 * slot + 1;
        } else {
            map[h] = 2 * slot + 1;
            map[k] = 2 * slot;
        }
    }
    (canon, GraphIso { map })
}

pub fn is_isomorphic(a: &HalfEdgeGraph, b: &HalfEdgeGraph) -> bool {
    a.n_half_edges() == b.n_half_edges()
        && a.n_vertices() == b.n_vertices()
        && canonicalize_unchecked(a).0 == canonicalize_unchecked(b).0
}

/// Vertex permutations preserving the multiplicity table.
fn vertex_automorphisms(g: &HalfEdgeGraph) -> Vec<Vec<usize>> {
    let mult = multiplicities(g);
    let colors = refined_colors(g, &mult);
    let n = g.n_vertices();
    let mut out = Vec::new();
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        n: usize,
        mult: &[Vec<usize>],
        colors: &[usize],
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if v == n {
            out.push(img.clone());
            return;
        }
        for w in 0..n {
            if used[w] || colors[w] != colors[v] {
                continue;
            }
            if (0..v).any(|u| mult[u][v] != mult[img[u]][w]) || mult[v][v] != mult[w][w] {
                continue;
            }
            used[w] = true;
            img[v] = w;
            rec(v + 1, n, mult, colors, img, used, out);
            used[w] = false;
        }
        img[v] = usize::MAX;
    }
    rec(0, n, &mult, &colors, &mut img, &mut used, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Full automorphism group as half-edge bijections (identity first).
pub fn automorphisms(g: &HalfEdgeGraph) -> Vec<GraphIso> {
    let n = g.n_vertices();
    let mut groups: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (h, k) in g.edges() {
        let (a, b) = (g.vertex_of(h), g.vertex_of(k));
        // store each edge with its half-edge at the smaller endpoint first
        let e = if a <= b { (h, k) } else { (k, h) };
        groups.entry((a.min(b), a.max(b))).or_default().push(e);
    }
    let mut result = Vec::new();
    for vperm in vertex_automorphisms(g) {
        let mut partial: Vec<Vec<usize>> = vec![vec![usize::MAX; g.n_half_edges()]];
        for (&(a, b), src) in &groups {
            let (ta, tb) = (vperm[a], vperm[b]);
            let dst = &groups[&(ta.min(tb), ta.max(tb))];
            let flipped = ta > tb;
            let m = src.len();
            let mut options: Vec<Vec<(usize, usize)>> = Vec::new();
            for p in permutations(m) {
                if a == b {
                    for mask in 0..(1usize << m) {
                        let mut assign = Vec::with_capacity(2 * m);
                        for (i, &(h, k)) in src.iter().enumerate() {
                            let (x, y) = dst[p[i]];
                            if mask >> i & 1 == 1 {
                                assign.push((h, y));
                                assign.push((k, x));
                            } else {
                                assign.push((h, x));
                                assign.push((k, y));
                            }
                        }
                        options.push(assign);
                    }
                } else {
                    let mut assign = Vec::with_capacity(2 * m);
                    for (i, &(h, k)) in src.iter().enumerate() {
                        let (x, y) = dst[p[i]];
                        if flipped {
                            assign.push((h, y));
                            assign.push((k, x));
                        } else {
                            assign.push((h, x));
                            assign.push((k, y));
                        }
                    }
                    options.push(assign);
                }
            }
            let mut next = Vec::with_capacity(partial.len() * options.len());
            for base in &partial {
                for opt in &options {
                    let mut m = base.clone();
                    for &(h, t) in opt {
                        m[h] = t;
                    }
                    next.push(m);
                }
            }
            partial = next;
        }
        let _ = n;
        result.extend(partial.into_iter().map(|map| GraphIso { map }));
    }
    result.sort();
    let id = GraphIso::identity(g.n_half_edges());
    if let Some(i) = result.iter().position(|x| *x == id) {
        result.swap(0, i);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theta() -> HalfEdgeGraph {
        HalfEdgeGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap()
    }
    fn dumbbell() -> HalfEdgeGraph {
        HalfEdgeGraph::from_edges(2, &[(0, 0), (0, 1), (1, 1)]).unwrap()
    }
    fn figure_eight() -> HalfEdgeGraph {
        HalfEdgeGraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap()
    }

    /// Brute force over all half-edge bijections.
    fn brute_automorphisms(g: &HalfEdgeGraph) -> usize {
        permutations(g.n_half_edges())
            .into_iter()
            .filter(|p| GraphIso { map: p.clone() }.is_isomorphism(g, g))
            .count()
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(automorphisms(&figure_eight()).len(), 8);
        assert_eq!(automorphisms(&theta()).len(), 12);
        assert_eq!(automorphisms(&dumbbell()).len(), 8);
        for g in [figure_eight(), theta(), dumbbell()] {
            let auts = automorphisms(&g);
            assert_eq!(auts.len(), brute_automorphisms(&g));
            assert_eq!(auts[0], GraphIso::identity(g.n_half_edges()));
            assert!(auts.iter().all(|a| a.is_isomorphism(&g, &g)));
        }
    }

    #[test]
    fn theta_versus_dumbbell() {
        let p = theta().relabel(&[3, 5, 0, 4, 1, 2]);
        assert_eq!(canonicalize(&p).unwrap().0, canonicalize(&theta()).unwrap().0);
        assert_ne!(canonicalize(&theta()).unwrap().0, canonicalize(&dumbbell()).unwrap().0);
    }

    #[test]
    fn witness_is_isomorphism() {
        for g in [figure_eight(), theta(), dumbbell()] {
            let (c, iso) = canonicalize(&g).unwrap();
            assert!(iso.is_isomorphism(&g, &c));
            assert_eq!(canonicalize(&c).unwrap().0, c);
        }
    }
}
