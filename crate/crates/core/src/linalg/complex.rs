use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use super::{format_scalar, parse_scalar, SparseMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("not a complex: d∘d is nonzero leaving degree {degree}")]
    NotAComplex { degree: i32 },
    #[error("differential leaving degree {degree} has shape {rows}x{cols}, expected {exp_rows}x{exp_cols}")]
    ShapeMismatch {
        degree: i32,
        rows: usize,
        cols: usize,
        exp_rows: usize,
        exp_cols: usize,
    },
    #[error("malformed complex json: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `d: V_i -> V_{i-1}`
    Chain,
    /// `d: V^i -> V^{i+1}`
    Cochain,
}

/// Finite graded complex of rational vector spaces.
///
/// Storage is cohomological: a chain complex keeps `V_i` at stored degree
/// `-i`, so every stored differential raises the stored degree by one. The
/// public accessors speak the complex's own grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    direction: Direction,
    dims: BTreeMap<i32, usize>,
    diffs: BTreeMap<i32, SparseMatrix>,
}

impl GradedComplex {
    pub fn zero(direction: Direction) -> Self {
        GradedComplex {
            direction,
            dims: BTreeMap::new(),
            diffs: BTreeMap::new(),
        }
    }

    /// `diffs[i]` maps `V_i -> V_{i-1}` (rows = dim `V_{i-1}`).
    pub fn chain(
        dims: BTreeMap<i32, usize>,
        diffs: BTreeMap<i32, SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        Self::build(Direction::Chain, dims, diffs)
    }

    /// `diffs[k]` maps `V^k -> V^{k+1}` (rows = dim `V^{k+1}`).
    pub fn cochain(
        dims: BTreeMap<i32, usize>,
        diffs: BTreeMap<i32, SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        Self::build(Direction::Cochain, dims, diffs)
    }

    fn build(
        direction: Direction,
        dims: BTreeMap<i32, usize>,
        diffs: BTreeMap<i32, SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        let s = |k: i32| match direction {
            Direction::Chain => -k,
            Direction::Cochain => k,
        };
        let c = GradedComplex {
            direction,
            dims: dims
                .into_iter()
                .filter(|&(_, n)| n > 0)
                .map(|(k, n)| (s(k), n))
                .collect(),
            diffs: diffs.into_iter().map(|(k, m)| (s(k), m)).collect(),
        };
        let mut c = c;
        c.check()?;
        c.diffs.retain(|_, m| !m.is_zero());
        Ok(c)
    }

    fn stored(&self, k: i32) -> i32 {
        match self.direction {
            Direction::Chain => -k,
            Direction::Cochain => k,
        }
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn dim(&self, k: i32) -> usize {
        self.dims.get(&self.stored(k)).copied().unwrap_or(0)
    }

    /// Dimensions in the complex's own grading (nonzero entries only).
    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.dims.iter().map(|(&k, &n)| (self.stored(k), n)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Differential leaving degree `k`, or the zero map.
    pub fn differential(&self, k: i32) -> SparseMatrix {
        let s = self.stored(k);
        self.diffs
            .get(&s)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.stored_dim(s + 1), self.stored_dim(s)))
    }

    fn stored_dim(&self, s: i32) -> usize {
        self.dims.get(&s).copied().unwrap_or(0)
    }

    fn stored_diff_rank(&self, s: i32) -> usize {
        self.diffs.get(&s).map_or(0, |m| m.rank())
    }

    /// Shapes agree with the dimensions and consecutive differentials compose to zero.
    pub fn check(&self) -> Result<(), ComplexError> {
        for (&s, m) in &self.diffs {
            let (er, ec) = (self.stored_dim(s + 1), self.stored_dim(s));
            if m.rows() != er || m.cols() != ec {
                return Err(ComplexError::ShapeMismatch {
                    degree: self.stored(s),
                    rows: m.rows(),
                    cols: m.cols(),
                    exp_rows: er,
                    exp_cols: ec,
                });
            }
        }
        for (&s, m) in &self.diffs {
            if let Some(next) = self.diffs.get(&(s + 1)) {
                if !next.mul(m).is_zero() {
                    return Err(ComplexError::NotAComplex {
                        degree: self.stored(s),
                    });
                }
            }
        }
        Ok(())
    }

    /// `dim ker - dim im` in every degree carrying a nonzero space.
    pub fn homology_dims(&self) -> Result<BTreeMap<i32, usize>, ComplexError> {
        self.check()?;
        let ranks: BTreeMap<i32, usize> = self
            .diffs
            .keys()
            .map(|&s| (s, self.stored_diff_rank(s)))
            .collect();
        Ok(self
            .dims
            .iter()
            .map(|(&s, &n)| {
                let out = ranks.get(&s).copied().unwrap_or(0);
                let inc = ranks.get(&(s - 1)).copied().unwrap_or(0);
                (self.stored(s), n - out - inc)
            })
            .collect())
    }

    /// Homology with zero entries dropped.
    pub fn betti(&self) -> Result<BTreeMap<i32, usize>, ComplexError> {
        Ok(self
            .homology_dims()?
            .into_iter()
            .filter(|&(_, n)| n > 0)
            .collect())
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler(&self.dims())
    }

    /// `V -> V^vee`: `(V^vee)^i = (V_i)^*` for chains, and the inverse
    /// functor for cochains. Differentials are transposed.
    pub fn dualize(&self) -> GradedComplex {
        let direction = match self.direction {
            Direction::Chain => Direction::Cochain,
            Direction::Cochain => Direction::Chain,
        };
        // native degree k of the output equals native degree k of the input,
        // so stored degrees negate.
        let dims = self.dims.iter().map(|(&s, &n)| (-s, n)).collect();
        let diffs = self
            .diffs
            .iter()
            .map(|(&s, m)| (-(s + 1), m.transpose()))
            .collect();
        GradedComplex {
            direction,
            dims,
            diffs,
        }
    }

    pub fn to_json(&self) -> Value {
        let dir = match self.direction {
            Direction::Chain => "chain",
            Direction::Cochain => "cochain",
        };
        let dims: Map<String, Value> = self
            .dims()
            .into_iter()
            .map(|(k, n)| (k.to_string(), json!(n)))
            .collect();
        let mut diff = Map::new();
        for (&s, m) in &self.diffs {
            if m.is_zero() {
                continue;
            }
            let e: Vec<Value> = m
                .entries()
                .map(|(r, c, v)| json!([r, c, format_scalar(v)]))
                .collect();
            diff.insert(self.stored(s).to_string(), Value::Array(e));
        }
        json!({"direction": dir, "dims": dims, "diff": diff})
    }

    pub fn from_json(v: &Value) -> Result<Self, ComplexError> {
        let err = |m: &str| ComplexError::Json(m.to_string());
        let direction = match v.get("direction").and_then(Value::as_str) {
            Some("chain") => Direction::Chain,
            Some("cochain") => Direction::Cochain,
            _ => return Err(err("direction must be \"chain\" or \"cochain\"")),
        };
        let mut dims = BTreeMap::new();
        if let Some(d) = v.get("dims") {
            let d = d.as_object().ok_or_else(|| err("dims must be an object"))?;
            for (k, n) in d {
                let k: i32 = k.parse().map_err(|_| err("bad degree key"))?;
                let n = n.as_u64().ok_or_else(|| err("bad dimension"))? as usize;
                dims.insert(k, n);
            }
        }
        let target = |k: i32| match direction {
            Direction::Chain => k - 1,
            Direction::Cochain => k + 1,
        };
        let mut diffs = BTreeMap::new();
        if let Some(d) = v.get("diff") {
            let d = d.as_object().ok_or_else(|| err("diff must be an object"))?;
            for (k, entries) in d {
                let k: i32 = k.parse().map_err(|_| err("bad degree key"))?;
                let rows = dims.get(&target(k)).copied().unwrap_or(0);
                let cols = dims.get(&k).copied().unwrap_or(0);
                let mut trip = Vec::new();
                for e in entries.as_array().ok_or_else(|| err("diff entries must be arrays"))? {
                    let e = e.as_array().ok_or_else(|| err("entry must be [r,c,\"p/q\"]"))?;
                    if e.len() != 3 {
                        return Err(err("entry must be [r,c,\"p/q\"]"));
                    }
                    let r = e[0].as_u64().ok_or_else(|| err("bad row"))? as usize;
                    let c = e[1].as_u64().ok_or_else(|| err("bad col"))? as usize;
                    let x = match &e[2] {
                        Value::String(s) => parse_scalar(s),
                        Value::Number(n) => n.as_i64().map(super::q),
                        _ => None,
                    }
                    .ok_or_else(|| err("bad scalar"))?;
                    if r >= rows || c >= cols {
                        return Err(err("entry outside matrix shape"));
                    }
                    trip.push((r, c, x));
                }
                diffs.insert(k, SparseMatrix::from_triplets(rows, cols, trip));
            }
        }
        Self::build(direction, dims, diffs)
    }
}

pub(crate) fn euler(dims: &BTreeMap<i32, usize>) -> i64 {
    dims.iter()
        .map(|(&k, &n)| if k.rem_euclid(2) == 0 { n as i64 } else { -(n as i64) })
        .sum()
}
