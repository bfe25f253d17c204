use std::collections::{BTreeMap, HashMap, HashSet};

use serde_json::json;

use crate::complexes::BettiTable;
use crate::linalg::{q, GradedComplex, SparseMatrix};

use super::simplicial::{face_key, Face};
use super::system::{to_cochain, ChainMap, CoefficientSystem};
use super::SheafError;

/// Basis layout of `⊕_τ F_τ ⊗ Det(τ)[1]` over a set of faces: in each total
/// degree, the blocks `(τ, internal degree)` with their offsets.
#[derive(Clone, Debug, Default)]
struct Layout {
    blocks: BTreeMap<i32, Vec<(usize, i32, usize)>>,
    dims: BTreeMap<i32, usize>,
    offset: HashMap<(usize, i32), usize>,
}

fn layout(f: &CoefficientSystem, faces: &[usize]) -> Layout {
    let mut l = Layout::default();
    for &t in faces {
        let dim_t = f.complex().dim_of(t);
        for (j, n) in f.stalk(t).dims() {
            let m = j + dim_t;
            let off = l.dims.entry(m).or_insert(0);
            l.blocks.entry(m).or_default().push((t, j, *off));
            l.offset.insert((t, j), *off);
            *off += n;
        }
    }
    l
}

/// Total complex over an upward closed set of faces: `x ∈ F_τ^j` sits in
/// degree `j + dim τ` and maps to `(−1)^{dim τ} d x + Σ ±gen(x)` over the
/// codimension-one cofaces, with the simplicial incidence signs.
fn assemble(f: &CoefficientSystem, faces: &[usize]) -> (GradedComplex, Layout) {
    let l = layout(f, faces);
    let inside: HashSet<usize> = faces.iter().copied().collect();
    let mut diffs = BTreeMap::new();
    for (&m, blocks) in &l.blocks {
        let rows = l.dims.get(&(m + 1)).copied().unwrap_or(0);
        let mut trip = Vec::new();
        let mut place = |src: usize, tgt: usize, mat: &SparseMatrix, s: i64| {
            for (r, c, x) in mat.entries() {
                trip.push((tgt + r, src + c, x * q(s)));
            }
        };
        for &(t, j, off) in blocks {
            let dim_t = f.complex().dim_of(t);
            if let Some(&tgt) = l.offset.get(&(t, j + 1)) {
                let s = if dim_t % 2 == 0 { 1 } else { -1 };
                place(off, tgt, &f.stalk(t).differential(j), s);
            }
            for &(u, s) in f.complex().cofaces(t) {
                if !inside.contains(&u) {
                    continue;
                }
                if let Some(&tgt) = l.offset.get(&(u, j)) {
                    place(off, tgt, &f.gen(t, u, j), s as i64);
                }
            }
        }
        diffs.insert(m, SparseMatrix::from_triplets(rows, l.dims[&m], trip));
    }
    let c = GradedComplex::cochain(l.dims.clone(), diffs).expect("total complex squares to zero");
    (c, l)
}

/// The total complex computing `RΓ(X, F)`.
pub fn total_complex(f: &CoefficientSystem) -> GradedComplex {
    let all: Vec<usize> = (0..f.complex().n_faces()).collect();
    assemble(f, &all).0
}

/// The total complex restricted to the faces containing `σ`; it computes
/// compactly supported cohomology of the open star.
pub fn star_complex(f: &CoefficientSystem, sigma: &[usize]) -> Result<GradedComplex, SheafError> {
    let s = face_index(f, sigma)?;
    Ok(assemble(f, &f.complex().star(s)).0)
}

fn face_index(f: &CoefficientSystem, sigma: &[usize]) -> Result<usize, SheafError> {
    f.complex()
        .index_of(sigma)
        .ok_or_else(|| SheafError::FaceNotFound(face_key(sigma)))
}

pub fn hypercohomology(f: &CoefficientSystem) -> Result<BettiTable, SheafError> {
    let c = total_complex(f);
    let spec = json!({"sheaf": "hypercohomology", "faces": f.complex().n_faces()});
    BettiTable::from_complex(spec, &c).map_err(|e| SheafError::Internal(e.to_string()))
}

pub fn star_compact_cohomology(f: &CoefficientSystem, sigma: &[usize]) -> Result<BettiTable, SheafError> {
    let c = star_complex(f, sigma)?;
    let mut key: Face = sigma.to_vec();
    key.sort_unstable();
    let spec = json!({"sheaf": "star_compact", "face": face_key(&key)});
    BettiTable::from_complex(spec, &c).map_err(|e| SheafError::Internal(e.to_string()))
}

/// The Verdier dual as a coefficient system, with the faces `τ ⊇ σ`
/// contributing to each stalk.
#[derive(Clone, Debug)]
pub struct DualSystem {
    pub system: CoefficientSystem,
    pub summands: Vec<Vec<usize>>,
}

/// `DF_σ = ⊕_{τ⊇σ} (F_τ ⊗ Det(τ)[1])*`: the degree-negated dual of the star
/// complex at `σ`, with coordinate projections as restriction maps.
pub fn verdier_dual(f: &CoefficientSystem) -> DualSystem {
    let x = f.complex();
    let n = x.n_faces();
    let mut layouts = Vec::with_capacity(n);
    let mut stalks = BTreeMap::new();
    let mut summands = Vec::with_capacity(n);
    for s in 0..n {
        let star = x.star(s);
        let (c, l) = assemble(f, &star);
        stalks.insert(s, to_cochain(&c.dualize()));
        layouts.push(l);
        summands.push(star);
    }
    let mut gens = HashMap::new();
    for a in 0..n {
        for &(b, _) in x.cofaces(a) {
            let (la, lb) = (&layouts[a], &layouts[b]);
            let mut m = ChainMap::new();
            for (&deg, blocks) in &lb.blocks {
                let mut trip = Vec::new();
                for &(t, j, off) in blocks {
                    let src = la.offset[&(t, j)];
                    for r in 0..f.stalk(t).dim(j) {
                        trip.push((off + r, src + r, q(1)));
                    }
                }
                m.insert(-deg, SparseMatrix::from_triplets(lb.dims[&deg], la.dims[&deg], trip));
            }
            gens.insert((a, b), m);
        }
    }
    let system = CoefficientSystem::new(x.clone(), stalks, gens).expect("projections are functorial");
    DualSystem { system, summands }
}
