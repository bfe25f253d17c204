use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::graph::{automorphisms, canonicalize, enumerate_graphs, GraphIso, HalfEdgeGraph};
use crate::linalg::{axpy, q, GradedComplex, Scalar, SparseMatrix, SparseVec};

use super::coinv::Coinvariants;
use super::decor::{add, Decor, Key, KeyVec};
use super::spec::ComplexSpec;
use super::GraphComplexError;

/// One basis element of the coinvariant graph complex.
#[derive(Clone, Debug)]
pub struct Generator {
    /// Index into [`GraphComplex::graphs`].
    pub graph: usize,
    pub degree: i32,
    /// Combination of decoration keys (an invariant vector).
    pub vector: Vec<(Key, Scalar)>,
}

/// The coinvariant `O`-graph chain complex of a spec.
#[derive(Clone, Debug)]
pub struct GraphComplex {
    pub spec: ComplexSpec,
    pub graphs: Vec<HalfEdgeGraph>,
    /// Generators grouped by degree, in the order of the complex's bases.
    pub generators: BTreeMap<i32, Vec<Generator>>,
    pub complex: GradedComplex,
}

pub(crate) fn sgn(s: i32) -> Scalar {
    q(s as i64)
}

/// Everything needed to apply the differential to decoration keys.
pub(crate) struct Context {
    pub decor: Decor,
    /// One representative per isomorphism class, in any labeling.
    pub graphs: Vec<HalfEdgeGraph>,
    /// Canonical form of each class, with the isomorphism onto its
    /// representative.
    pub lookup: HashMap<HalfEdgeGraph, (usize, GraphIso)>,
    pub spaces: Vec<Coinvariants>,
}

impl Context {
    pub fn new(spec: &ComplexSpec, graphs: Option<Vec<HalfEdgeGraph>>) -> Result<Self, GraphComplexError> {
        let decor = Decor::new(spec)?;
        let canonical = enumerate_graphs(spec.mode.rank(), &spec.caps)?;
        let graphs = graphs.unwrap_or_else(|| canonical.clone());
        let mut lookup = HashMap::new();
        for (i, g) in graphs.iter().enumerate() {
            let (c, iso) = canonicalize(g)?;
            if lookup.insert(c, (i, iso.inverse())).is_some() {
                return Err(GraphComplexError::InvalidSpec("two representatives of one class".into()));
            }
        }
        if canonical.iter().any(|c| !lookup.contains_key(c)) || lookup.len() != canonical.len() {
            return Err(GraphComplexError::InvalidSpec(
                "representatives must cover every class exactly once".into(),
            ));
        }
        let mut spaces = Vec::with_capacity(graphs.len());
        for g in &graphs {
            spaces.push(generator_space_with(&decor, g)?);
        }
        Ok(Context {
            decor,
            graphs,
            lookup,
            spaces,
        })
    }

    /// Transport a combination on any graph to the representative of its
    /// class, including the orientation sign of the isomorphism.
    pub fn canonical_terms(
        &self,
        g: &HalfEdgeGraph,
        terms: &[(Key, Scalar)],
        coeff: &Scalar,
        acc: &mut BTreeMap<usize, KeyVec>,
    ) -> Result<(), GraphComplexError> {
        let (c, iso) = canonicalize(g)?;
        let (ci, to_rep) = self
            .lookup
            .get(&c)
            .ok_or_else(|| GraphComplexError::Internal("contraction left the enumeration".into()))?;
        let iso = to_rep.after(&iso);
        let rep = &self.graphs[*ci];
        let s = sgn(self.decor.iso_sign(g, &iso, rep));
        let slot = acc.entry(*ci).or_default();
        for (k, a) in terms {
            for (k2, b) in self.decor.transport(g, &iso, rep, k)? {
                add(slot, k2, coeff * &s * a * b);
            }
        }
        Ok(())
    }

    /// Differential of a decoration key on graph `gi`.
    pub fn d_key(&self, gi: usize, key: &Key) -> Result<BTreeMap<usize, KeyVec>, GraphComplexError> {
        let g = &self.graphs[gi];
        let mut acc: BTreeMap<usize, KeyVec> = BTreeMap::new();
        for e in 0..g.n_edges() {
            if g.is_loop(e) {
                continue;
            }
            let (gc, hmap, terms) = self.decor.contract(g, e, key)?;
            let mut s = self.decor.contraction_det(g, &gc, &hmap);
            if e % 2 == 1 {
                s = -s;
            }
            self.canonical_terms(&gc, &terms, &sgn(s), &mut acc)?;
        }
        let internal = self.decor.internal(g, key)?;
        if !internal.is_empty() {
            // the orientation line of degree e − 1 sits in front
            let s = if (g.n_edges() - 1) % 2 == 0 { 1 } else { -1 };
            let slot = acc.entry(gi).or_default();
            for (k, c) in internal {
                add(slot, k, c * sgn(s));
            }
        }
        Ok(acc)
    }
}

pub(crate) fn generator_space_with(decor: &Decor, g: &HalfEdgeGraph) -> Result<Coinvariants, GraphComplexError> {
    let auts: Vec<GraphIso> = automorphisms(g);
    let signs: Vec<i32> = auts.iter().map(|a| decor.iso_sign(g, a, g)).collect();
    Coinvariants::new(decor.keys(g)?, auts.len(), |i, k| {
        let s = sgn(signs[i]);
        Ok(decor
            .transport(g, &auts[i], g, k)?
            .into_iter()
            .map(|(k, c)| (k, c * &s))
            .collect())
    })
}

/// Basis of the automorphism coinvariants of the decorated, oriented space
/// of a graph, each vector given on decoration keys.
pub fn generator_space(g: &HalfEdgeGraph, spec: &ComplexSpec) -> Result<Vec<Vec<(Key, Scalar)>>, GraphComplexError> {
    let decor = Decor::new(spec)?;
    let (c, _) = canonicalize(g)?;
    if &c != g {
        return Err(GraphComplexError::InvalidSpec("graph is not canonical".into()));
    }
    let space = generator_space_with(&decor, g)?;
    Ok((0..space.dim())
        .map(|r| {
            space
                .vector(r)
                .into_iter()
                .map(|(i, c)| (space.keys[i].clone(), c))
                .collect()
        })
        .collect())
}

/// The full coinvariant chain complex of a spec.
pub fn build_complex(spec: &ComplexSpec) -> Result<GraphComplex, GraphComplexError> {
    build_on(spec, None)
}

/// The same complex built on the given representatives (one per
/// isomorphism class, in any order and labeling).
pub fn build_complex_on(spec: &ComplexSpec, graphs: Vec<HalfEdgeGraph>) -> Result<GraphComplex, GraphComplexError> {
    build_on(spec, Some(graphs))
}

fn build_on(spec: &ComplexSpec, graphs: Option<Vec<HalfEdgeGraph>>) -> Result<GraphComplex, GraphComplexError> {
    let ctx = Context::new(spec, graphs)?;
    let mut generators: BTreeMap<i32, Vec<Generator>> = BTreeMap::new();
    // position of (graph, basis row) inside its degree
    let mut place: HashMap<(usize, usize), (i32, usize)> = HashMap::new();
    for (gi, space) in ctx.spaces.iter().enumerate() {
        let g = &ctx.graphs[gi];
        for r in 0..space.dim() {
            let deg = ctx.decor.degree(g, &space.pivot_key(r).decos)? + g.n_edges() as i64 - 1;
            let deg = deg as i32;
            let list = generators.entry(deg).or_default();
            place.insert((gi, r), (deg, list.len()));
            list.push(Generator {
                graph: gi,
                degree: deg,
                vector: space
                    .vector(r)
                    .into_iter()
                    .map(|(i, c)| (space.keys[i].clone(), c))
                    .collect(),
            });
        }
    }
    let mut cache: HashMap<(usize, Key), BTreeMap<usize, KeyVec>> = HashMap::new();
    let mut diffs: BTreeMap<i32, SparseMatrix> = BTreeMap::new();
    for (&deg, gens) in &generators {
        let rows = generators.get(&(deg - 1)).map_or(0, |v| v.len());
        let mut columns = Vec::with_capacity(gens.len());
        for gen in gens {
            let mut total: BTreeMap<usize, KeyVec> = BTreeMap::new();
            for (k, c) in &gen.vector {
                let ck = (gen.graph, k.clone());
                if !cache.contains_key(&ck) {
                    cache.insert(ck.clone(), ctx.d_key(gen.graph, k)?);
                }
                for (&ti, kv) in &cache[&ck] {
                    let slot = total.entry(ti).or_default();
                    for (k2, a) in kv {
                        add(slot, k2.clone(), c * a);
                    }
                }
            }
            let mut col = SparseVec::new();
            for (ti, kv) in total {
                let space = &ctx.spaces[ti];
                if space.dim() == 0 || kv.is_empty() {
                    continue;
                }
                let mut v = SparseVec::new();
                for (k, a) in kv {
                    let &i = space.index.get(&k).ok_or_else(|| {
                        GraphComplexError::Internal("differential leaves the decoration space".into())
                    })?;
                    axpy(&mut v, i, a);
                }
                for (r, x) in space.coordinates(&v).into_iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let (tdeg, pos) = place[&(ti, r)];
                    if tdeg != deg - 1 {
                        return Err(GraphComplexError::Internal("differential has the wrong degree".into()));
                    }
                    axpy(&mut col, pos, x);
                }
            }
            columns.push(col);
        }
        diffs.insert(deg, SparseMatrix::from_columns(rows, &columns));
    }
    let dims = generators.iter().map(|(&k, v)| (k, v.len())).collect();
    let complex = GradedComplex::chain(dims, diffs)?;
    Ok(GraphComplex {
        spec: spec.clone(),
        graphs: ctx.graphs,
        generators,
        complex,
    })
}

/// Betti table of a graph complex or of a related computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub spec: Value,
    pub betti: BTreeMap<i32, usize>,
    pub euler: i64,
    pub shift_observed: Option<i32>,
}

impl BettiTable {
    pub fn from_complex(spec: Value, c: &GradedComplex) -> Result<Self, GraphComplexError> {
        Ok(BettiTable {
            spec,
            betti: c.betti()?,
            euler: c.euler_characteristic(),
            shift_observed: None,
        })
    }

    pub fn to_json(&self) -> Value {
        let betti: serde_json::Map<String, Value> =
            self.betti.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        let mut o = json!({"spec": self.spec, "betti": betti, "euler": self.euler});
        if let Some(s) = self.shift_observed {
            o["shift_observed"] = json!(s);
        }
        o
    }
}

/// Homology (or, with `cohomology`, cohomology of the dual complex) of a spec.
pub fn graph_betti(spec: &ComplexSpec, cohomology: bool) -> Result<BettiTable, GraphComplexError> {
    let gc = build_complex(spec)?;
    let c = if cohomology { gc.complex.dualize() } else { gc.complex };
    let mut s = spec.to_json();
    s["cohomology"] = json!(cohomology);
    BettiTable::from_complex(s, &c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{rose, HalfEdgeGraph};

    fn cohom(spec: &ComplexSpec) -> BTreeMap<i32, usize> {
        graph_betti(spec, true).unwrap().betti
    }

    fn table(pairs: &[(i32, usize)]) -> BTreeMap<i32, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn comm_rank_two() {
        assert_eq!(cohom(&ComplexSpec::rank("comm", 2)), table(&[(2, 1)]));
        assert!(cohom(&ComplexSpec::rank("comm", 2).twisted()).is_empty());
        assert!(cohom(&ComplexSpec::rank("comm", 2).with_h_twist(true)).is_empty());
    }

    #[test]
    fn comm_rank_three_dims() {
        let gc = build_complex(&ComplexSpec::rank("comm", 3)).unwrap();
        assert_eq!(gc.complex.dims(), table(&[(4, 1), (5, 2)]));
        assert_eq!(gc.complex.betti().unwrap(), table(&[(5, 1)]));
    }

    #[test]
    fn figure_eight_has_no_standard_comm_generator() {
        let spec = ComplexSpec::rank("comm", 2);
        let (g, _) = canonicalize(&rose(2)).unwrap();
        assert!(generator_space(&g, &spec).unwrap().is_empty());
        let theta = HalfEdgeGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        let (theta, _) = canonicalize(&theta).unwrap();
        assert_eq!(generator_space(&theta, &spec).unwrap().len(), 1);
    }

    #[test]
    fn lie_h_twisted() {
        let spec = ComplexSpec::rank("lie", 2).twisted().with_h_twist(true);
        assert_eq!(cohom(&spec), table(&[(2, 1)]));
        assert!(cohom(&ComplexSpec::rank("lie", 2).twisted()).is_empty());
    }

    #[test]
    fn ribbon_anchors() {
        assert_eq!(cohom(&ComplexSpec::ribbon("t", 1, 1, false)), table(&[(2, 1)]));
        assert_eq!(cohom(&ComplexSpec::ribbon("t", 0, 3, false)), table(&[(2, 1)]));
    }

    #[test]
    fn relabeled_representatives_give_the_same_complex() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for spec in [
            ComplexSpec::rank("lie", 2).twisted().with_h_twist(true),
            ComplexSpec::ribbon("t", 0, 3, false),
        ] {
            let base = build_complex(&spec).unwrap();
            let mut reps: Vec<HalfEdgeGraph> = base
                .graphs
                .iter()
                .map(|g| {
                    let mut p: Vec<usize> = (0..g.n_half_edges()).collect();
                    p.shuffle(&mut rng);
                    g.relabel(&p)
                })
                .collect();
            reps.reverse();
            let other = build_complex_on(&spec, reps).unwrap();
            assert_eq!(other.complex.dims(), base.complex.dims());
            assert_eq!(other.complex.betti().unwrap(), base.complex.betti().unwrap());
        }
    }

    #[test]
    fn representatives_must_cover_each_class_once() {
        let spec = ComplexSpec::rank("comm", 2);
        let gs = build_complex(&spec).unwrap().graphs;
        assert!(build_complex_on(&spec, gs[..1].to_vec()).is_err());
        let mut twice = gs.clone();
        twice.push(gs[0].clone());
        assert!(build_complex_on(&spec, twice).is_err());
    }
}
