//! Cohomology of the decoration sheaf on the (non-compact) moduli of graphs,
//! through chains of cells in its face poset.
//!
//! A cell chain `G/F₀ < G/F₁ < … < G/F_{p−1} < G` is recorded on `G` by a
//! level per edge: `F_i` is the set of edges of level greater than `i`. The
//! chain sits in degree `p` and carries the decorations of its top cell `G`,
//! taken as coinvariants of the automorphisms of `G` preserving every level.
//! The boundary drops one cell at a time; dropping the top cell contracts
//! the last forest and composes decorations along it.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde_json::json;

use crate::graph::{automorphisms, canonicalize, enumerate_graphs, GraphIso, HalfEdgeGraph};
use crate::linalg::{axpy, GradedComplex, SparseMatrix, SparseVec};

use super::build::{sgn, BettiTable};
use super::coinv::Coinvariants;
use super::decor::{add, Decor, KeyVec};
use super::spec::{ComplexSpec, Orientation};
use super::GraphComplexError;

/// A chain of cells below a canonical graph, up to its automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellChain {
    pub graph: usize,
    /// Level of every edge; the chain has as many cells as the largest
    /// level plus one.
    pub levels: Vec<usize>,
}

impl CellChain {
    pub fn degree(&self) -> usize {
        self.levels.iter().copied().max().unwrap_or(0)
    }
}

struct Poset {
    decor: Decor,
    graphs: Vec<HalfEdgeGraph>,
    lookup: HashMap<HalfEdgeGraph, usize>,
    auts: Vec<Vec<GraphIso>>,
}

fn move_levels(g: &HalfEdgeGraph, a: &GraphIso, to: &HalfEdgeGraph, levels: &[usize]) -> Vec<usize> {
    let mut out = vec![0; levels.len()];
    for (e, (t, _)) in a.edge_map(g, to).into_iter().enumerate() {
        out[t] = levels[e];
    }
    out
}

fn is_forest(g: &HalfEdgeGraph, edges: &[usize]) -> bool {
    let mut parent: Vec<usize> = (0..g.n_vertices()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &e in edges {
        let (a, b) = g.edge_endpoints(e);
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

impl Poset {
    fn new(spec: &ComplexSpec) -> Result<Self, GraphComplexError> {
        let decor = Decor::new(spec)?;
        let graphs = enumerate_graphs(spec.mode.rank(), &spec.caps)?;
        let lookup = graphs.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let auts = graphs.iter().map(automorphisms).collect();
        Ok(Poset {
            decor,
            graphs,
            lookup,
            auts,
        })
    }

    /// Canonical representative of a level vector on graph `gi`, with the
    /// automorphism reaching it.
    fn canonical(&self, gi: usize, levels: &[usize]) -> (Vec<usize>, usize) {
        let g = &self.graphs[gi];
        let mut best: Option<(Vec<usize>, usize)> = None;
        for (i, a) in self.auts[gi].iter().enumerate() {
            let l = move_levels(g, a, g, levels);
            if best.as_ref().is_none_or(|(b, _)| l < *b) {
                best = Some((l, i));
            }
        }
        best.expect("identity is an automorphism")
    }

    fn stabilizer(&self, gi: usize, levels: &[usize]) -> Vec<GraphIso> {
        let g = &self.graphs[gi];
        self.auts[gi]
            .iter()
            .filter(|a| move_levels(g, a, g, levels) == levels)
            .cloned()
            .collect()
    }

    fn chains(&self) -> Vec<CellChain> {
        let mut out = Vec::new();
        for (gi, g) in self.graphs.iter().enumerate() {
            let ne = g.n_edges();
            let mut seen = std::collections::BTreeSet::new();
            for mask in 0usize..(1 << ne) {
                let forest: Vec<usize> = (0..ne).filter(|e| mask >> e & 1 == 1).collect();
                if forest.iter().any(|&e| g.is_loop(e)) || !is_forest(g, &forest) {
                    continue;
                }
                let m = forest.len();
                // every assignment of levels 1..=m to the forest edges that
                // uses each of 1..=max
                let total = (m.max(1)).pow(m as u32);
                for code in 0..total {
                    let mut levels = vec![0; ne];
                    let mut c = code;
                    for &e in &forest {
                        levels[e] = c % m + 1;
                        c /= m;
                    }
                    let p = levels.iter().copied().max().unwrap_or(0);
                    if !(1..=p).all(|l| levels.contains(&l)) {
                        continue;
                    }
                    let (canon, _) = self.canonical(gi, &levels);
                    if seen.insert(canon.clone()) {
                        out.push(CellChain {
                            graph: gi,
                            levels: canon,
                        });
                    }
                }
            }
        }
        out
    }

    /// Decorations and twist line moved along `iso: g1 → g2`.
    fn transport(
        &self,
        g1: &HalfEdgeGraph,
        iso: &GraphIso,
        g2: &HalfEdgeGraph,
        v: &KeyVec,
    ) -> Result<KeyVec, GraphComplexError> {
        let s = sgn(self.decor.twist_sign(g1, iso, g2));
        let mut out = KeyVec::new();
        for (k, c) in v {
            for (k2, a) in self.decor.transport(g1, iso, g2, k)? {
                add(&mut out, k2, c * &s * a);
            }
        }
        Ok(out)
    }

    /// Bring a chain on the canonical graph `gi` to its representative.
    fn settle(&self, gi: usize, levels: &[usize], v: KeyVec) -> Result<(CellChain, KeyVec), GraphComplexError> {
        let (canon, ai) = self.canonical(gi, levels);
        let g = &self.graphs[gi];
        let v = self.transport(g, &self.auts[gi][ai], g, &v)?;
        Ok((
            CellChain {
                graph: gi,
                levels: canon,
            },
            v,
        ))
    }

    /// Contract every edge of the top level, composing decorations.
    fn contract_top(&self, c: &CellChain, v: &KeyVec) -> Result<(CellChain, KeyVec), GraphComplexError> {
        let g0 = &self.graphs[c.graph];
        let p = c.degree();
        let edges = g0.edges();
        let mut cur = g0.clone();
        let mut cur_v = v.clone();
        // image of every original half-edge in the current graph
        let mut hpos: Vec<Option<usize>> = (0..g0.n_half_edges()).map(Some).collect();
        for (e, &l) in c.levels.iter().enumerate() {
            if l != p {
                continue;
            }
            let h = hpos[edges[e].0].expect("forest edges survive earlier contractions");
            let ce = cur.edge_of(h);
            let mut next_v = KeyVec::new();
            let mut next: Option<(HalfEdgeGraph, Vec<Option<usize>>)> = None;
            for (k, a) in &cur_v {
                let (gc, hmap, terms) = self.decor.contract(&cur, ce, k)?;
                for (k2, b) in terms {
                    add(&mut next_v, k2, a * b);
                }
                next = Some((gc, hmap));
            }
            let (gc, hmap) = match next {
                Some(x) => x,
                None => cur.contract_edge(ce)?,
            };
            let s = sgn(self.decor.contraction_det(&cur, &gc, &hmap));
            cur_v = next_v.into_iter().map(|(k, a)| (k, a * &s)).collect();
            for x in hpos.iter_mut() {
                *x = x.and_then(|y| hmap[y]);
            }
            cur = gc;
        }
        let mut levels = vec![0; cur.n_edges()];
        for (e, &l) in c.levels.iter().enumerate() {
            if l != p {
                levels[cur.edge_of(hpos[edges[e].0].unwrap())] = l;
            }
        }
        let (canon, iso) = canonicalize(&cur)?;
        let &ti = self
            .lookup
            .get(&canon)
            .ok_or_else(|| GraphComplexError::Internal("contraction left the enumeration".into()))?;
        let v = self.transport(&cur, &iso, &canon, &cur_v)?;
        let levels = move_levels(&cur, &iso, &canon, &levels);
        self.settle(ti, &levels, v)
    }
}

/// Chain complex of cell chains computing the cohomology of the sheaf of
/// (dual) decorations on the moduli of graphs, optionally tensored with the
/// H₁ determinant line. Its homology dims equal that cohomology.
pub fn forest_complex(spec: &ComplexSpec) -> Result<GradedComplex, GraphComplexError> {
    let mut spec = spec.clone();
    spec.orientation = Orientation::Twisted;
    let poset = Poset::new(&spec)?;
    if poset.decor.model.has_differential() {
        return Err(GraphComplexError::InvalidSpec(
            "cell chains take decorations without internal differential".into(),
        ));
    }
    let chains = poset.chains();
    let mut spaces: HashMap<CellChain, Coinvariants> = HashMap::new();
    let mut generators: BTreeMap<i32, Vec<(CellChain, usize)>> = BTreeMap::new();
    let mut place: HashMap<(CellChain, usize), usize> = HashMap::new();
    for c in chains {
        let g = &poset.graphs[c.graph];
        let stab = poset.stabilizer(c.graph, &c.levels);
        let signs: Vec<i32> = stab.iter().map(|a| poset.decor.twist_sign(g, a, g)).collect();
        let space = Coinvariants::new(poset.decor.keys(g)?, stab.len(), |i, k| {
            let s = sgn(signs[i]);
            Ok(poset
                .decor
                .transport(g, &stab[i], g, k)?
                .into_iter()
                .map(|(k, a)| (k, a * &s))
                .collect())
        })?;
        let list = generators.entry(c.degree() as i32).or_default();
        for r in 0..space.dim() {
            place.insert((c.clone(), r), list.len());
            list.push((c.clone(), r));
        }
        spaces.insert(c, space);
    }
    let mut diffs = BTreeMap::new();
    for (&deg, gens) in &generators {
        let rows = generators.get(&(deg - 1)).map_or(0, |v| v.len());
        let mut columns = Vec::with_capacity(gens.len());
        for (c, r) in gens {
            let space = &spaces[c];
            let v: KeyVec = space
                .vector(*r)
                .into_iter()
                .map(|(i, a)| (space.keys[i].clone(), a))
                .collect();
            let p = c.degree();
            let mut terms: Vec<(CellChain, KeyVec, i32)> = Vec::new();
            for i in 0..p {
                let levels: Vec<usize> = c.levels.iter().map(|&l| if l > i { l - 1 } else { l }).collect();
                let (t, w) = poset.settle(c.graph, &levels, v.clone())?;
                terms.push((t, w, if i % 2 == 0 { 1 } else { -1 }));
            }
            if p > 0 {
                let (t, w) = poset.contract_top(c, &v)?;
                terms.push((t, w, if p % 2 == 0 { 1 } else { -1 }));
            }
            let mut col = SparseVec::new();
            for (t, w, s) in terms {
                let tspace = &spaces[&t];
                if tspace.dim() == 0 {
                    continue;
                }
                let mut x = SparseVec::new();
                for (k, a) in w {
                    let &i = tspace.index.get(&k).ok_or_else(|| {
                        GraphComplexError::Internal("boundary leaves the decoration space".into())
                    })?;
                    axpy(&mut x, i, a * sgn(s));
                }
                for (rr, y) in tspace.coordinates(&x).into_iter().enumerate() {
                    if !y.is_zero() {
                        axpy(&mut col, place[&(t.clone(), rr)], y);
                    }
                }
            }
            columns.push(col);
        }
        diffs.insert(deg, SparseMatrix::from_columns(rows, &columns));
    }
    let dims = generators.iter().map(|(&k, v)| (k, v.len())).collect();
    Ok(GradedComplex::chain(dims, diffs)?)
}

/// Betti table of [`forest_complex`].
pub fn sheaf_betti(spec: &ComplexSpec) -> Result<BettiTable, GraphComplexError> {
    let c = forest_complex(spec)?;
    let mut s = spec.to_json();
    s["orientation"] = json!("none");
    s["sheaf"] = json!(true);
    BettiTable::from_complex(s, &c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn betti(spec: &ComplexSpec) -> BTreeMap<i32, usize> {
        sheaf_betti(spec).unwrap().betti
    }

    #[test]
    fn constant_coefficients_are_acyclic() {
        // moduli of rank 2 and 3 graphs are rationally acyclic
        let point: BTreeMap<i32, usize> = [(0, 1)].into_iter().collect();
        assert_eq!(betti(&ComplexSpec::rank("comm", 2)), point);
        assert_eq!(betti(&ComplexSpec::rank("comm", 3)), point);
        assert!(betti(&ComplexSpec::rank("comm", 2).with_h_twist(true)).is_empty());
    }

    #[test]
    fn ribbon_sectors() {
        let point: BTreeMap<i32, usize> = [(0, 1)].into_iter().collect();
        assert_eq!(betti(&ComplexSpec::ribbon("t", 1, 1, false)), point);
        assert_eq!(betti(&ComplexSpec::ribbon("t", 1, 1, false).with_h_twist(true)), point);
        assert!(betti(&ComplexSpec::ribbon("t", 0, 3, false).with_h_twist(true)).is_empty());
    }

    #[test]
    fn chain_degrees() {
        let c = CellChain { graph: 0, levels: vec![0, 2, 1] };
        assert_eq!(c.degree(), 2);
    }

    #[test]
    fn dual_decorations_are_rejected() {
        assert!(forest_complex(&ComplexSpec::rank("dcomm", 2)).is_err());
    }
}
