use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::linalg::{format_scalar, parse_scalar, q, Direction, GradedComplex, Scalar, SparseMatrix};

use super::simplicial::{face_key, parse_face_key, SimplicialComplex};
use super::SheafError;

/// A chain map given degreewise; absent degrees are zero.
pub type ChainMap = BTreeMap<i32, SparseMatrix>;

/// Regrade a chain complex cohomologically (`V_i` in degree `−i`).
pub fn to_cochain(c: &GradedComplex) -> GradedComplex {
    match c.direction() {
        Direction::Cochain => c.clone(),
        Direction::Chain => {
            let dims = c.dims().into_iter().map(|(k, n)| (-k, n)).collect();
            let diffs = c
                .dims()
                .keys()
                .map(|&k| (-k, c.differential(k)))
                .collect();
            GradedComplex::cochain(dims, diffs).expect("regrading keeps d² = 0")
        }
    }
}

/// Functor from the face poset of `X` to cochain complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSystem {
    complex: SimplicialComplex,
    stalks: Vec<GradedComplex>,
    /// `(σ, τ) ↦ F_σ → F_τ` for every strict inclusion.
    gens: HashMap<(usize, usize), ChainMap>,
}

impl CoefficientSystem {
    /// Stalks not listed are zero. Generization maps may be given for any
    /// strict inclusions: missing codimension-one maps are zero, missing
    /// longer ones are composites. Fails with `NonFunctorialSystem` unless
    /// every map is a chain map and all composites agree.
    pub fn new(
        complex: SimplicialComplex,
        stalks: BTreeMap<usize, GradedComplex>,
        mut given: HashMap<(usize, usize), ChainMap>,
    ) -> Result<Self, SheafError> {
        let n = complex.n_faces();
        let stalks: Vec<GradedComplex> = (0..n)
            .map(|i| stalks.get(&i).map(to_cochain).unwrap_or_else(|| GradedComplex::zero(Direction::Cochain)))
            .collect();
        let bad = |m: String| SheafError::NonFunctorialSystem(m);
        let name = |x: &SimplicialComplex, a: usize, b: usize| format!("{}→{}", face_key(x.face(a)), face_key(x.face(b)));
        for &(a, b) in given.keys() {
            if a >= n || b >= n || a == b || !complex.is_subface(a, b) {
                return Err(bad(format!("map between faces {a} and {b} is not an inclusion")));
            }
        }
        let mut pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && complex.is_subface(a, b))
            .collect();
        pairs.sort_by_key(|&(a, b)| (complex.dim_of(b) - complex.dim_of(a), a, b));
        let mut gens: HashMap<(usize, usize), ChainMap> = HashMap::new();
        for &(a, b) in &pairs {
            let m = match given.remove(&(a, b)) {
                Some(m) => m,
                None if complex.dim_of(b) - complex.dim_of(a) == 1 => ChainMap::new(),
                None => {
                    let (fa, fb) = (complex.face(a), complex.face(b));
                    let v = fb.iter().find(|v| fa.binary_search(v).is_err()).unwrap();
                    let mut mid = fa.clone();
                    mid.push(*v);
                    let c = complex.index_of(&mid).unwrap();
                    compose(&gens[&(c, b)], &gens[&(a, c)])
                }
            };
            let mut m = m;
            for (&k, x) in &m {
                let (r, c) = (stalks[b].dim(k), stalks[a].dim(k));
                if x.rows() != r || x.cols() != c {
                    return Err(bad(format!("{} has shape {}x{} in degree {k}, expected {r}x{c}", name(&complex, a, b), x.rows(), x.cols())));
                }
            }
            m.retain(|_, x| !x.is_zero());
            gens.insert((a, b), m);
        }
        let sys = CoefficientSystem { complex, stalks, gens };
        for &(a, b) in &pairs {
            let g = &sys.gens[&(a, b)];
            for k in sys.degrees(a) {
                let lhs = sys.stalks[b].differential(k).mul(&sys.map_in(a, b, k, g));
                let rhs = sys.map_in(a, b, k + 1, g).mul(&sys.stalks[a].differential(k));
                if lhs != rhs {
                    return Err(bad(format!("{} is not a chain map in degree {k}", name(&sys.complex, a, b))));
                }
            }
        }
        for &(a, c) in &pairs {
            for b in 0..n {
                if b == a || b == c || !sys.complex.is_subface(a, b) || !sys.complex.is_subface(b, c) {
                    continue;
                }
                if compose(&sys.gens[&(b, c)], &sys.gens[&(a, b)]) != sys.gens[&(a, c)] {
                    return Err(bad(format!(
                        "{} differs from the composite through {}",
                        name(&sys.complex, a, c),
                        face_key(sys.complex.face(b))
                    )));
                }
            }
        }
        Ok(sys)
    }

    /// The constant system `k` in degree 0.
    pub fn constant(complex: SimplicialComplex) -> Self {
        let n = complex.n_faces();
        let line = GradedComplex::cochain([(0, 1)].into_iter().collect(), BTreeMap::new()).unwrap();
        let stalks = (0..n).map(|i| (i, line.clone())).collect();
        let mut gens = HashMap::new();
        for a in 0..n {
            for &(b, _) in complex.cofaces(a) {
                gens.insert((a, b), [(0, SparseMatrix::identity(1))].into_iter().collect());
            }
        }
        Self::new(complex, stalks, gens).expect("constant system is functorial")
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn stalk(&self, i: usize) -> &GradedComplex {
        &self.stalks[i]
    }

    /// Degrees where the stalk at `i` is nonzero.
    pub fn degrees(&self, i: usize) -> Vec<i32> {
        self.stalks[i].dims().keys().copied().collect()
    }

    /// `F_σ → F_τ` in degree `k`, the identity when `σ = τ`.
    pub fn gen(&self, a: usize, b: usize, k: i32) -> SparseMatrix {
        if a == b {
            return SparseMatrix::identity(self.stalks[a].dim(k));
        }
        self.map_in(a, b, k, &self.gens[&(a, b)])
    }

    fn map_in(&self, a: usize, b: usize, k: i32, m: &ChainMap) -> SparseMatrix {
        m.get(&k)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.stalks[b].dim(k), self.stalks[a].dim(k)))
    }

    /// `{"complex", "stalks", "gens"}` with codimension-one maps only; the
    /// others are composites.
    pub fn to_json(&self) -> Value {
        let mut stalks = Map::new();
        for (i, s) in self.stalks.iter().enumerate() {
            if s.total_dim() > 0 {
                stalks.insert(face_key(self.complex.face(i)), s.to_json());
            }
        }
        let mut gens = Map::new();
        for a in 0..self.complex.n_faces() {
            for &(b, _) in self.complex.cofaces(a) {
                let m = &self.gens[&(a, b)];
                if m.is_empty() {
                    continue;
                }
                let per: Map<String, Value> = m
                    .iter()
                    .map(|(k, x)| {
                        let e: Vec<Value> = x.entries().map(|(r, c, v)| json!([r, c, format_scalar(v)])).collect();
                        (k.to_string(), Value::Array(e))
                    })
                    .collect();
                gens.insert(
                    format!("{}→{}", face_key(self.complex.face(a)), face_key(self.complex.face(b))),
                    Value::Object(per),
                );
            }
        }
        json!({"complex": self.complex.to_json(), "stalks": stalks, "gens": gens})
    }

    pub fn from_json(v: &Value) -> Result<Self, SheafError> {
        let err = |m: String| SheafError::Json(m);
        let complex = SimplicialComplex::from_json(v.get("complex").ok_or_else(|| err("missing \"complex\"".into()))?)?;
        let face = |k: &str| -> Result<usize, SheafError> {
            let f = parse_face_key(k)?;
            complex.index_of(&f).ok_or_else(|| SheafError::FaceNotFound(face_key(&f)))
        };
        let mut stalks = BTreeMap::new();
        if let Some(s) = v.get("stalks") {
            for (k, c) in s.as_object().ok_or_else(|| err("\"stalks\" must be an object".into()))? {
                stalks.insert(face(k)?, to_cochain(&GradedComplex::from_json(c)?));
            }
        }
        let dim = |i: usize, k: i32| stalks.get(&i).map_or(0, |c: &GradedComplex| c.dim(k));
        let mut gens = HashMap::new();
        if let Some(g) = v.get("gens") {
            for (key, per) in g.as_object().ok_or_else(|| err("\"gens\" must be an object".into()))? {
                let (a, b) = key
                    .split_once('→')
                    .ok_or_else(|| err(format!("map key `{key}` must read σ→τ")))?;
                let (a, b) = (face(a)?, face(b)?);
                let mut m = ChainMap::new();
                for (k, entries) in per.as_object().ok_or_else(|| err(format!("map `{key}` must be an object")))? {
                    let k: i32 = k.parse().map_err(|_| err(format!("bad degree `{k}`")))?;
                    let (rows, cols) = (dim(b, k), dim(a, k));
                    let mut trip = Vec::new();
                    for e in entries.as_array().ok_or_else(|| err("map entries must be arrays".into()))? {
                        let e = e.as_array().filter(|e| e.len() == 3).ok_or_else(|| err("entry must be [r,c,\"p/q\"]".into()))?;
                        let r = e[0].as_u64().ok_or_else(|| err("bad row".into()))? as usize;
                        let c = e[1].as_u64().ok_or_else(|| err("bad column".into()))? as usize;
                        let x = match &e[2] {
                            Value::String(s) => parse_scalar(s),
                            Value::Number(n) => n.as_i64().map(q),
                            _ => None,
                        }
                        .ok_or_else(|| err("bad scalar".into()))?;
                        if r >= rows || c >= cols {
                            return Err(err(format!("entry of `{key}` outside the {rows}x{cols} shape")));
                        }
                        trip.push((r, c, x));
                    }
                    m.insert(k, SparseMatrix::from_triplets(rows, cols, trip));
                }
                gens.insert((a, b), m);
            }
        }
        Self::new(complex, stalks, gens)
    }
}

fn compose(g: &ChainMap, f: &ChainMap) -> ChainMap {
    f.iter()
        .filter_map(|(k, a)| g.get(k).map(|b| (*k, b.mul(a))))
        .filter(|(_, m)| !m.is_zero())
        .collect()
}

fn unit_upper(rng: &mut ChaCha8Rng, n: usize) -> (SparseMatrix, SparseMatrix) {
    let mut a = vec![vec![Scalar::zero(); n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = Scalar::one();
        for x in row.iter_mut().skip(i + 1) {
            *x = q(rng.gen_range(-2..=2));
        }
    }
    // back substitution for the inverse
    let mut inv = vec![vec![Scalar::zero(); n]; n];
    for i in (0..n).rev() {
        inv[i][i] = Scalar::one();
        for j in i + 1..n {
            let mut s = Scalar::zero();
            for k in i + 1..=j {
                s += &a[i][k] * &inv[k][j];
            }
            inv[i][j] = -s;
        }
    }
    (SparseMatrix::from_dense(&a), SparseMatrix::from_dense(&inv))
}

/// Deterministic random functorial system on `x`.
///
/// Stalks are sums of pieces, each a small complex placed on a convex set of
/// faces (the faces of a random subcomplex that contain a random face), with
/// identity maps inside the piece. Every stalk is then conjugated by random
/// unit upper-triangular matrices, degree by degree. `max_dim` bounds the
/// cohomology of each piece in each degree.
pub fn random_system(x: &SimplicialComplex, seed: u64, max_dim: usize) -> CoefficientSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eaf_0000);
    let n = x.n_faces();
    struct Piece {
        support: Vec<bool>,
        dims: BTreeMap<i32, usize>,
        /// Acyclic pairs `k ↦ k+1` sitting on top of the cohomology.
        pairs: Vec<i32>,
    }
    let mut pieces = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let keep: Vec<bool> = x.vertices().iter().map(|_| rng.gen_bool(0.8)).collect();
        let lower = |f: &[usize]| {
            f.iter()
                .all(|v| keep[x.vertices().binary_search(v).unwrap()])
        };
        let root = rng.gen_range(0..n);
        let root = if rng.gen_bool(0.5) { None } else { Some(root) };
        let support: Vec<bool> = (0..n)
            .map(|i| lower(x.face(i)) && root.is_none_or(|r| x.is_subface(r, i)))
            .collect();
        let mut dims = BTreeMap::new();
        for k in -1..=1 {
            let d = rng.gen_range(0..=max_dim);
            if d > 0 {
                dims.insert(k, d);
            }
        }
        let pairs = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(-1..=0)).collect();
        pieces.push(Piece { support, dims, pairs });
    }
    // layout of each stalk: per degree, (piece, slot) in order
    let mut layout: Vec<BTreeMap<i32, Vec<(usize, usize)>>> = vec![BTreeMap::new(); n];
    let mut raw: Vec<BTreeMap<i32, Vec<(usize, usize)>>> = vec![BTreeMap::new(); n];
    for (i, lay) in layout.iter_mut().enumerate() {
        for (p, piece) in pieces.iter().enumerate() {
            if !piece.support[i] {
                continue;
            }
            let mut slot = 0;
            for (&k, &d) in &piece.dims {
                for _ in 0..d {
                    lay.entry(k).or_default().push((p, slot));
                    slot += 1;
                }
            }
            for &k in &piece.pairs {
                lay.entry(k).or_default().push((p, slot));
                lay.entry(k + 1).or_default().push((p, slot + 1));
                raw[i].entry(k).or_default().push((p, slot));
                slot += 2;
            }
        }
    }
    let position = |lay: &BTreeMap<i32, Vec<(usize, usize)>>, k: i32, key: (usize, usize)| {
        lay.get(&k).and_then(|l| l.iter().position(|&e| e == key))
    };
    let mut conj: Vec<BTreeMap<i32, (SparseMatrix, SparseMatrix)>> = Vec::with_capacity(n);
    for lay in &layout {
        conj.push(lay.iter().map(|(&k, l)| (k, unit_upper(&mut rng, l.len()))).collect());
    }
    let dim = |i: usize, k: i32| layout[i].get(&k).map_or(0, |l| l.len());
    let mut stalks = BTreeMap::new();
    for i in 0..n {
        let dims: BTreeMap<i32, usize> = layout[i].iter().map(|(&k, l)| (k, l.len())).collect();
        let mut diffs = BTreeMap::new();
        for (&k, l) in &raw[i] {
            let trip = l.iter().map(|&(p, s)| {
                (position(&layout[i], k + 1, (p, s + 1)).unwrap(), position(&layout[i], k, (p, s)).unwrap(), q(1))
            });
            let d = SparseMatrix::from_triplets(dim(i, k + 1), dim(i, k), trip);
            let d = conj[i][&(k + 1)].0.mul(&d).mul(&conj[i][&k].1);
            diffs.insert(k, d);
        }
        stalks.insert(i, GradedComplex::cochain(dims, diffs).expect("conjugated pairs square to zero"));
    }
    let mut gens = HashMap::new();
    for a in 0..n {
        for &(b, _) in x.cofaces(a) {
            let mut m = ChainMap::new();
            for (&k, l) in &layout[a] {
                let trip = l
                    .iter()
                    .enumerate()
                    .filter_map(|(c, &key)| position(&layout[b], k, key).map(|r| (r, c, q(1))));
                let g = SparseMatrix::from_triplets(dim(b, k), l.len(), trip);
                if g.is_zero() {
                    continue;
                }
                m.insert(k, conj[b][&k].0.mul(&g).mul(&conj[a][&k].1));
            }
            gens.insert((a, b), m);
        }
    }
    CoefficientSystem::new(x.clone(), stalks, gens).expect("random systems are functorial by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sheaves::random_complex;

    #[test]
    fn same_seed_same_system() {
        let x = random_complex(3, 6);
        assert_eq!(random_system(&x, 9, 2), random_system(&x, 9, 2));
    }

    #[test]
    fn random_systems_pass_the_functoriality_check() {
        for seed in 0..20 {
            let x = random_complex(seed, 6);
            let f = random_system(&x, seed, 2);
            let again = CoefficientSystem::from_json(&f.to_json()).unwrap();
            assert_eq!(again, f);
        }
    }

    #[test]
    fn constant_maps_are_identities() {
        let x = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        let f = CoefficientSystem::constant(x.clone());
        let a = x.index_of(&[0]).unwrap();
        let c = x.index_of(&[0, 1, 2]).unwrap();
        assert_eq!(f.gen(a, c, 0), SparseMatrix::identity(1));
    }

    #[test]
    fn path_dependence_is_rejected() {
        let x = SimplicialComplex::from_facets(&[vec![0, 1, 2]]).unwrap();
        let f = CoefficientSystem::constant(x.clone());
        let mut v = f.to_json();
        v["gens"]["0→0,1"]["0"] = json!([[0, 0, "2"]]);
        assert!(matches!(
            CoefficientSystem::from_json(&v),
            Err(SheafError::NonFunctorialSystem(_))
        ));
    }

    #[test]
    fn chain_map_condition_is_checked() {
        let x = SimplicialComplex::interval();
        let mut v = CoefficientSystem::constant(x).to_json();
        v["stalks"]["0"] = json!({"direction":"cochain","dims":{"-1":1,"0":1},"diff":{"-1":[[0,0,"1"]]}});
        assert!(matches!(
            CoefficientSystem::from_json(&v),
            Err(SheafError::NonFunctorialSystem(_))
        ));
    }
}
