use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::linalg::{GradedComplex, SparseMatrix};

use super::SheafError;

/// A face is the sorted list of its vertex labels.
pub type Face = Vec<usize>;

pub fn face_key(f: &[usize]) -> String {
    f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_face_key(s: &str) -> Result<Face, SheafError> {
    let mut f: Face = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| SheafError::Json(format!("bad face key `{s}`")))?;
    f.sort_unstable();
    Ok(f)
}

/// Finite abstract simplicial complex. Vertices are ordered by label, faces
/// by size and then lexicographically; cofaces therefore come later.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<usize>,
    faces: Vec<Face>,
    index: HashMap<Face, usize>,
    /// Codimension one cofaces with their incidence sign.
    cofaces: Vec<Vec<(usize, i32)>>,
}

impl SimplicialComplex {
    /// Faces must be nonempty, use listed vertices and be closed under
    /// taking nonempty subsets. Every vertex must be a face.
    pub fn new(vertices: &[usize], faces: &[Face]) -> Result<Self, SheafError> {
        let vs: BTreeSet<usize> = vertices.iter().copied().collect();
        if vs.len() != vertices.len() {
            return Err(SheafError::InvalidComplex("repeated vertex".into()));
        }
        let mut set: BTreeSet<Face> = BTreeSet::new();
        for f in faces {
            let mut f = f.clone();
            f.sort_unstable();
            if f.is_empty() || f.windows(2).any(|w| w[0] == w[1]) {
                return Err(SheafError::InvalidComplex(format!("bad face [{}]", face_key(&f))));
            }
            if let Some(v) = f.iter().find(|v| !vs.contains(v)) {
                return Err(SheafError::InvalidComplex(format!("unknown vertex {v}")));
            }
            set.insert(f);
        }
        for f in &set {
            if f.len() > 1 {
                for i in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(i);
                    if !set.contains(&g) {
                        return Err(SheafError::InvalidComplex(format!(
                            "face [{}] is missing its side [{}]",
                            face_key(f),
                            face_key(&g)
                        )));
                    }
                }
            }
        }
        if let Some(v) = vs.iter().find(|&&v| !set.contains(&vec![v])) {
            return Err(SheafError::InvalidComplex(format!("vertex {v} is not listed as a face")));
        }
        let mut faces: Vec<Face> = set.into_iter().collect();
        faces.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let index: HashMap<Face, usize> = faces.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let mut cofaces = vec![Vec::new(); faces.len()];
        for (i, f) in faces.iter().enumerate() {
            for &v in &vs {
                if f.binary_search(&v).is_ok() {
                    continue;
                }
                let pos = f.partition_point(|&w| w < v);
                let mut g = f.clone();
                g.insert(pos, v);
                if let Some(&j) = index.get(&g) {
                    cofaces[i].push((j, if pos % 2 == 0 { 1 } else { -1 }));
                }
            }
            cofaces[i].sort_unstable();
        }
        Ok(SimplicialComplex {
            vertices: vs.into_iter().collect(),
            faces,
            index,
            cofaces,
        })
    }

    /// Downward closure of a list of faces.
    pub fn from_facets(facets: &[Face]) -> Result<Self, SheafError> {
        let mut set: BTreeSet<Face> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let n = f.len();
            for mask in 1u32..(1 << n) {
                set.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        let vertices: Vec<usize> = set.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect();
        Self::new(&vertices, &set.into_iter().collect::<Vec<_>>())
    }

    pub fn point() -> Self {
        Self::from_facets(&[vec![0]]).unwrap()
    }

    pub fn interval() -> Self {
        Self::from_facets(&[vec![0, 1]]).unwrap()
    }

    pub fn triangle_boundary() -> Self {
        Self::from_facets(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn n_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn index_of(&self, f: &[usize]) -> Option<usize> {
        let mut f = f.to_vec();
        f.sort_unstable();
        self.index.get(&f).copied()
    }

    pub fn dim_of(&self, i: usize) -> i32 {
        self.faces[i].len() as i32 - 1
    }

    pub fn cofaces(&self, i: usize) -> &[(usize, i32)] {
        &self.cofaces[i]
    }

    pub fn is_subface(&self, a: usize, b: usize) -> bool {
        let (fa, fb) = (&self.faces[a], &self.faces[b]);
        fa.iter().all(|v| fb.binary_search(v).is_ok())
    }

    /// Indices of the faces containing face `i`, itself included.
    pub fn star(&self, i: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&j| self.is_subface(i, j)).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"vertices": self.vertices, "faces": self.faces})
    }

    pub fn from_json(v: &Value) -> Result<Self, SheafError> {
        let err = |m: &str| SheafError::Json(m.to_string());
        let list = |x: &Value| -> Result<Vec<usize>, SheafError> {
            x.as_array()
                .ok_or_else(|| err("expected an array of vertex labels"))?
                .iter()
                .map(|n| n.as_u64().map(|n| n as usize).ok_or_else(|| err("vertex labels are integers")))
                .collect()
        };
        let vertices = list(v.get("vertices").ok_or_else(|| err("missing \"vertices\""))?)?;
        let faces = v
            .get("faces")
            .and_then(Value::as_array)
            .ok_or_else(|| err("missing \"faces\""))?
            .iter()
            .map(list)
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&vertices, &faces)
    }
}

/// A random complex on at most `max_vertices` vertices with faces of at
/// most four vertices.
pub fn random_complex(seed: u64, max_vertices: usize) -> SimplicialComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_vertices.max(1));
    let mut facets: Vec<Face> = (0..n).map(|v| vec![v]).collect();
    let extra = if n > 1 { rng.gen_range(0..=n + 1) } else { 0 };
    for _ in 0..extra {
        let size = rng.gen_range(2..=n.min(4));
        let mut f: BTreeSet<usize> = BTreeSet::new();
        while f.len() < size {
            f.insert(rng.gen_range(0..n));
        }
        facets.push(f.into_iter().collect());
    }
    SimplicialComplex::from_facets(&facets).unwrap()
}

/// Simplicial coboundary complex with rational coefficients.
pub fn cochain_complex(x: &SimplicialComplex) -> GradedComplex {
    let mut by_dim: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for i in 0..x.n_faces() {
        by_dim.entry(x.dim_of(i)).or_default().push(i);
    }
    let pos: HashMap<usize, usize> = by_dim
        .values()
        .flat_map(|l| l.iter().enumerate().map(|(p, &i)| (i, p)))
        .collect();
    let dims: BTreeMap<i32, usize> = by_dim.iter().map(|(&k, l)| (k, l.len())).collect();
    let mut diffs = BTreeMap::new();
    for (&k, list) in &by_dim {
        let rows = dims.get(&(k + 1)).copied().unwrap_or(0);
        let trip = list
            .iter()
            .flat_map(|&i| x.cofaces(i).iter().map(move |&(j, s)| (j, i, s)))
            .map(|(j, i, s)| (pos[&j], pos[&i], crate::linalg::q(s as i64)));
        diffs.insert(k, SparseMatrix::from_triplets(rows, list.len(), trip));
    }
    GradedComplex::cochain(dims, diffs).expect("coboundary squares to zero")
}

/// Rational simplicial cohomology.
pub fn simplicial_betti(x: &SimplicialComplex) -> BTreeMap<i32, usize> {
    cochain_complex(x).betti().expect("coboundary squares to zero")
}
