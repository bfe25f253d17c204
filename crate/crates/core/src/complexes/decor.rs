//! Vertex decorations of graphs: tensor products of operad components,
//! their transport along isomorphisms and along edge contractions.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::graph::{
    boundary_cycles, contraction_edge_map, h1_det, iso_h1_det, BoundaryCycles, CycleBasis, GraphIso,
    HalfEdgeGraph, RibbonStructure, TreePolicy,
};
use crate::linalg::{one, permutation_sign, q, Scalar, SparseVec};
use crate::operad::{
    apply_relabel, model_by_name, sort_positions, Ass, CyclicOperad, DualOperad,
};

use super::spec::{ComplexSpec, Mode};
use super::GraphComplexError;

/// Basis element of the decoration space of a graph: a basis index at every
/// vertex and, in labeled ribbon mode, the label of every boundary cycle
/// (cycles ordered by smallest half-edge).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub decos: Vec<usize>,
    pub labels: Vec<usize>,
}

/// Linear combination of keys.
pub type KeyVec = BTreeMap<Key, Scalar>;

pub(crate) fn add(acc: &mut KeyVec, k: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = acc.entry(k.clone()).or_insert_with(Scalar::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

#[derive(Debug, Clone)]
enum Cyclic {
    None,
    Ass(Arc<Ass>),
    DualAss(Arc<DualOperad>, Arc<Ass>),
}

#[derive(Debug, Clone)]
pub(crate) struct Decor {
    pub model: Arc<dyn CyclicOperad>,
    cyclic: Cyclic,
    sector: Option<(usize, usize)>,
    labeled: bool,
    pub det_power: u32,
    pub policy: TreePolicy,
}

fn sign(s: i32) -> Scalar {
    q(s as i64)
}

impl Decor {
    pub fn new(spec: &ComplexSpec) -> Result<Self, GraphComplexError> {
        spec.validate()?;
        let (model, cyclic): (Arc<dyn CyclicOperad>, Cyclic) = match spec.mode {
            Mode::Rank(_) => (model_by_name(&spec.operad)?, Cyclic::None),
            Mode::Ribbon { .. } => {
                let ass = Arc::new(Ass::default());
                if spec.operad.starts_with('d') {
                    let d = Arc::new(DualOperad::new(ass.clone()));
                    (d.clone(), Cyclic::DualAss(d, ass))
                } else {
                    (ass.clone(), Cyclic::Ass(ass))
                }
            }
        };
        let (sector, labeled) = match spec.mode {
            Mode::Rank(_) => (None, false),
            Mode::Ribbon {
                genus,
                boundary,
                labeled,
            } => (Some((genus, boundary)), labeled),
        };
        Ok(Decor {
            model,
            cyclic,
            sector,
            labeled,
            det_power: spec.det_power(),
            policy: spec.policy,
        })
    }

    pub fn degree(&self, g: &HalfEdgeGraph, decos: &[usize]) -> Result<i64, GraphComplexError> {
        let mut d = 0;
        for (v, &x) in decos.iter().enumerate() {
            d += self.model.degree(g.valence(v), x)?;
        }
        Ok(d)
    }

    fn vertex_degrees(&self, g: &HalfEdgeGraph, decos: &[usize]) -> Result<Vec<i64>, GraphComplexError> {
        decos
            .iter()
            .enumerate()
            .map(|(v, &x)| Ok(self.model.degree(g.valence(v), x)?))
            .collect()
    }

    /// Ribbon structure read off cyclic-order decorations.
    fn ribbon(&self, g: &HalfEdgeGraph, decos: &[usize]) -> Result<Option<RibbonStructure>, GraphComplexError> {
        let mut orders = Vec::with_capacity(decos.len());
        for (v, &x) in decos.iter().enumerate() {
            let hs = g.half_edges_at(v);
            let k = hs.len();
            let pos = match &self.cyclic {
                Cyclic::None => return Ok(None),
                Cyclic::Ass(a) => a.order(k, x)?,
                Cyclic::DualAss(d, a) => DualOperad::boundary_order(&d.basis(k)?.elems[x], a)?,
            };
            orders.push(pos.iter().map(|&p| hs[p]).collect::<Vec<_>>());
        }
        Ok(Some(RibbonStructure::from_orders(g, &orders)?))
    }

    fn faces(&self, g: &HalfEdgeGraph, decos: &[usize]) -> Result<Option<BoundaryCycles>, GraphComplexError> {
        match self.ribbon(g, decos)? {
            None => Ok(None),
            Some(r) => Ok(Some(boundary_cycles(g, &r)?)),
        }
    }

    /// Basis of the decoration space of `g` (restricted to the sector).
    pub fn keys(&self, g: &HalfEdgeGraph) -> Result<Vec<Key>, GraphComplexError> {
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for v in 0..g.n_vertices() {
            let d = self.model.dim(g.valence(v))?;
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..d).map(move |i| {
                        let mut t = t.clone();
                        t.push(i);
                        t
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for decos in tuples {
            let Some((genus, b)) = self.sector else {
                out.push(Key {
                    decos,
                    labels: Vec::new(),
                });
                continue;
            };
            let f = self.faces(g, &decos)?.expect("ribbon mode");
            if (f.genus, f.boundary) != (genus, b) {
                continue;
            }
            if self.labeled {
                for p in crate::operad::permutations_of(&(0..b).collect::<Vec<_>>()) {
                    out.push(Key {
                        decos: decos.clone(),
                        labels: p,
                    });
                }
            } else {
                out.push(Key {
                    decos,
                    labels: Vec::new(),
                });
            }
        }
        Ok(out)
    }

    /// Expand per-vertex vectors into keys, multiplying by `c`.
    fn expand(per_vertex: &[SparseVec], c: Scalar) -> Vec<(Vec<usize>, Scalar)> {
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), c)];
        for w in per_vertex {
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
        partial
    }

    /// Move boundary labels from `(g1, decos1)` to `(g2, decos2)` along a
    /// half-edge map.
    fn move_labels(
        &self,
        g1: &HalfEdgeGraph,
        decos1: &[usize],
        labels: &[usize],
        g2: &HalfEdgeGraph,
        decos2: &[usize],
        hmap: impl Fn(usize) -> Option<usize>,
    ) -> Result<Vec<usize>, GraphComplexError> {
        if !self.labeled {
            return Ok(Vec::new());
        }
        let f1 = self.faces(g1, decos1)?.expect("ribbon mode");
        let f2 = self.faces(g2, decos2)?.expect("ribbon mode");
        let face2 = f2.face_of(g2.n_half_edges());
        let mut out = vec![usize::MAX; labels.len()];
        for (i, c) in f1.cycles.iter().enumerate() {
            let h = c
                .iter()
                .find_map(|&h| hmap(h))
                .expect("every boundary cycle survives a contraction");
            out[face2[h]] = labels[i];
        }
        Ok(out)
    }

    /// Decorations transported along an isomorphism `g1 → g2`, including the
    /// Koszul sign of reordering the vertex factors. No orientation sign.
    pub fn transport(
        &self,
        g1: &HalfEdgeGraph,
        iso: &GraphIso,
        g2: &HalfEdgeGraph,
        key: &Key,
    ) -> Result<Vec<(Key, Scalar)>, GraphComplexError> {
        let vmap = iso.vertex_map(g1, g2);
        let n = vmap.len();
        let degs = self.vertex_degrees(g1, &key.decos)?;
        let mut koszul = 1;
        for a in 0..n {
            for b in a + 1..n {
                if vmap[a] > vmap[b] && degs[a] * degs[b] % 2 != 0 {
                    koszul = -koszul;
                }
            }
        }
        let mut per_new = vec![SparseVec::new(); n];
        for v in 0..n {
            let w = vmap[v];
            let f1 = g1.half_edges_at(v);
            let f2 = g2.half_edges_at(w);
            let perm: Vec<usize> = f1
                .iter()
                .map(|&h| f2.binary_search(&iso.apply(h)).expect("iso respects vertices"))
                .collect();
            per_new[w] = apply_relabel(
                self.model.as_ref(),
                f1.len(),
                &perm,
                &SparseVec::from([(key.decos[v], one())]),
            )?;
        }
        let mut out = Vec::new();
        for (decos, c) in Self::expand(&per_new, sign(koszul)) {
            let labels = self.move_labels(g1, &key.decos, &key.labels, g2, &decos, |h| Some(iso.apply(h)))?;
            out.push((Key { decos, labels }, c));
        }
        Ok(out)
    }

    /// Contract the non-loop edge `e`, composing the endpoint decorations
    /// along it (low half-edge side first). Includes the Koszul sign of
    /// bringing the two factors together; no orientation sign.
    pub fn contract(
        &self,
        g: &HalfEdgeGraph,
        e: usize,
        key: &Key,
    ) -> Result<(HalfEdgeGraph, Vec<Option<usize>>, Vec<(Key, Scalar)>), GraphComplexError> {
        let (h, h2) = g.edges()[e];
        let (u, w) = (g.vertex_of(h), g.vertex_of(h2));
        let (gc, hmap) = g.contract_edge(e)?;
        let (keep, gone) = (u.min(w), u.max(w));
        let degs = self.vertex_degrees(g, &key.decos)?;
        let between: i64 = degs[keep + 1..gone].iter().sum();
        let parity = if u < w {
            degs[w] * between
        } else {
            degs[u] * (between + degs[w])
        };
        let koszul = if parity % 2 == 0 { 1 } else { -1 };
        let fu = g.half_edges_at(u);
        let fw = g.half_edges_at(w);
        let i = fu.binary_search(&h).unwrap();
        let j = fw.binary_search(&h2).unwrap();
        let comp = self
            .model
            .compose(fu.len(), i, key.decos[u], fw.len(), j, key.decos[w])?;
        let layout: Vec<usize> = fu
            .iter()
            .filter(|&&x| x != h)
            .chain(fw.iter().filter(|&&x| x != h2))
            .map(|&x| hmap[x].unwrap())
            .collect();
        let comp = apply_relabel(self.model.as_ref(), layout.len(), &sort_positions(&layout), &comp)?;
        let mut per_new = Vec::with_capacity(gc.n_vertices());
        for nv in 0..gc.n_vertices() {
            let old = if nv < gone { nv } else { nv + 1 };
            if old == keep {
                per_new.push(comp.clone());
            } else {
                per_new.push(SparseVec::from([(key.decos[old], one())]));
            }
        }
        let mut out = Vec::new();
        for (decos, c) in Self::expand(&per_new, sign(koszul)) {
            let labels = self.move_labels(g, &key.decos, &key.labels, &gc, &decos, |x| hmap[x])?;
            out.push((Key { decos, labels }, c));
        }
        Ok((gc, hmap, out))
    }

    /// Internal differential of the decorations, with the Koszul sign of
    /// passing the preceding vertex factors. No orientation sign.
    pub fn internal(&self, g: &HalfEdgeGraph, key: &Key) -> Result<Vec<(Key, Scalar)>, GraphComplexError> {
        let mut out = Vec::new();
        if !self.model.has_differential() {
            return Ok(out);
        }
        let degs = self.vertex_degrees(g, &key.decos)?;
        let mut before = 0;
        for v in 0..key.decos.len() {
            let dv = self.model.differential(g.valence(v), key.decos[v])?;
            let s = if before % 2 == 0 { 1 } else { -1 };
            for (&x, c) in &dv {
                let mut decos = key.decos.clone();
                decos[v] = x;
                out.push((
                    Key {
                        decos,
                        labels: key.labels.clone(),
                    },
                    c * sign(s),
                ));
            }
            before += degs[v];
        }
        Ok(out)
    }

    /// Action of an isomorphism on the orientation line (and H-twist).
    pub fn iso_sign(&self, g1: &HalfEdgeGraph, iso: &GraphIso, g2: &HalfEdgeGraph) -> i32 {
        let targets: Vec<usize> = iso.edge_map(g1, g2).iter().map(|&(t, _)| t).collect();
        let mut s = permutation_sign(&targets);
        if self.det_power % 2 == 1 {
            s *= iso_h1_det(iso, g1, g2, self.policy);
        }
        s
    }

    /// Action of an isomorphism on the H-twist line alone.
    pub fn twist_sign(&self, g1: &HalfEdgeGraph, iso: &GraphIso, g2: &HalfEdgeGraph) -> i32 {
        if self.det_power % 2 == 1 {
            iso_h1_det(iso, g1, g2, self.policy)
        } else {
            1
        }
    }

    /// H₁ part of the orientation transport along a contraction.
    pub fn contraction_det(&self, g: &HalfEdgeGraph, gc: &HalfEdgeGraph, hmap: &[Option<usize>]) -> i32 {
        if self.det_power % 2 == 0 {
            return 1;
        }
        h1_det(
            &CycleBasis::new(g, self.policy),
            &CycleBasis::new(gc, self.policy),
            &contraction_edge_map(g, gc, hmap),
            gc.n_edges(),
        )
    }
}
