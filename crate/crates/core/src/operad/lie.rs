use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use super::ass::permutations_of;
use super::comm::check_arity;
use super::{CyclicOperad, OperadError};
use crate::linalg::{axpy, q, SparseVec};

/// Bracket expression in flag labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LieWord {
    Leaf(usize),
    Br(Box<LieWord>, Box<LieWord>),
}

impl LieWord {
    pub fn br(a: LieWord, b: LieWord) -> LieWord {
        LieWord::Br(Box::new(a), Box::new(b))
    }

    /// Left-normed bracket `[[[w0, w1], w2], ...]`.
    pub fn comb(letters: &[usize]) -> LieWord {
        let mut w = LieWord::Leaf(letters[0]);
        for &l in &letters[1..] {
            w = LieWord::br(w, LieWord::Leaf(l));
        }
        w
    }

    pub fn letters(&self) -> Vec<usize> {
        match self {
            LieWord::Leaf(l) => vec![*l],
            LieWord::Br(a, b) => {
                let mut v = a.letters();
                v.extend(b.letters());
                v
            }
        }
    }

    fn map_letters(&self, f: &impl Fn(usize) -> usize) -> LieWord {
        match self {
            LieWord::Leaf(l) => LieWord::Leaf(f(*l)),
            LieWord::Br(a, b) => LieWord::br(a.map_letters(f), b.map_letters(f)),
        }
    }

    /// Expansion in the free associative algebra.
    pub fn expand(&self) -> HashMap<Vec<usize>, i64> {
        match self {
            LieWord::Leaf(l) => HashMap::from([(vec![*l], 1)]),
            LieWord::Br(a, b) => {
                let (ea, eb) = (a.expand(), b.expand());
                let mut out: HashMap<Vec<usize>, i64> = HashMap::new();
                for (u, cu) in &ea {
                    for (v, cv) in &eb {
                        let mut uv = u.clone();
                        uv.extend(v);
                        *out.entry(uv).or_default() += cu * cv;
                        let mut vu = v.clone();
                        vu.extend(u);
                        *out.entry(vu).or_default() -= cu * cv;
                    }
                }
                out.retain(|_, c| *c != 0);
                out
            }
        }
    }

    /// Parse `[1,[2,3]]`-style expressions over non-negative integers.
    pub fn parse(s: &str) -> Result<LieWord, OperadError> {
        let toks: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let w = parse_at(&toks, &mut pos)?;
        if pos != toks.len() {
            return Err(OperadError::NotMultilinear(format!("trailing input in `{s}`")));
        }
        Ok(w)
    }
}

fn parse_at(t: &[char], pos: &mut usize) -> Result<LieWord, OperadError> {
    let bad = || OperadError::NotMultilinear("malformed bracket expression".into());
    match t.get(*pos) {
        Some('[') => {
            *pos += 1;
            let a = parse_at(t, pos)?;
            if t.get(*pos) != Some(&',') {
                return Err(bad());
            }
            *pos += 1;
            let b = parse_at(t, pos)?;
            if t.get(*pos) != Some(&']') {
                return Err(bad());
            }
            *pos += 1;
            Ok(LieWord::br(a, b))
        }
        Some(c) if c.is_ascii_digit() => {
            let start = *pos;
            while t.get(*pos).is_some_and(|c| c.is_ascii_digit()) {
                *pos += 1;
            }
            let s: String = t[start..*pos].iter().collect();
            Ok(LieWord::Leaf(s.parse().map_err(|_| bad())?))
        }
        _ => Err(bad()),
    }
}

impl fmt::Display for LieWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieWord::Leaf(l) => write!(f, "{l}"),
            LieWord::Br(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

/// Unrooted trivalent tree with a cyclic order at each internal node.
#[derive(Clone, Debug)]
struct PlanarTree {
    nbrs: Vec<Vec<usize>>,
    label: Vec<Option<usize>>,
}

impl PlanarTree {
    /// Tree of `word` with an extra leaf `root` attached above it.
    fn from_rooted(root: usize, word: &LieWord) -> PlanarTree {
        let mut t = PlanarTree {
            nbrs: vec![Vec::new()],
            label: vec![Some(root)],
        };
        let top = t.add(word, 0);
        t.nbrs[0].push(top);
        t
    }

    fn add(&mut self, w: &LieWord, parent: usize) -> usize {
        let id = self.nbrs.len();
        match w {
            LieWord::Leaf(l) => {
                self.nbrs.push(vec![parent]);
                self.label.push(Some(*l));
            }
            LieWord::Br(a, b) => {
                self.nbrs.push(Vec::new());
                self.label.push(None);
                let ia = self.add(a, id);
                let ib = self.add(b, id);
                self.nbrs[id] = vec![parent, ia, ib];
            }
        }
        id
    }

    fn leaf(&self, l: usize) -> usize {
        self.label.iter().position(|&x| x == Some(l)).expect("leaf present")
    }

    fn relabel(&mut self, f: impl Fn(usize) -> usize) {
        for l in self.label.iter_mut().flatten() {
            *l = f(*l);
        }
    }

    /// Read the tree as a bracket expression with leaf `root` as output.
    fn reroot(&self, root: usize) -> LieWord {
        let r = self.leaf(root);
        self.read(self.nbrs[r][0], r)
    }

    fn read(&self, node: usize, from: usize) -> LieWord {
        if let Some(l) = self.label[node] {
            return LieWord::Leaf(l);
        }
        let n = &self.nbrs[node];
        let p = n.iter().position(|&x| x == from).unwrap();
        let (a, b) = (n[(p + 1) % 3], n[(p + 2) % 3]);
        LieWord::br(self.read(a, node), self.read(b, node))
    }

    /// Remove leaf `a` of `self` and leaf `b` of `other` and join their
    /// neighbours by an edge.
    fn graft(mut self, a: usize, other: &PlanarTree, b: usize) -> PlanarTree {
        let off = self.nbrs.len();
        let la = self.leaf(a);
        let lb = other.leaf(b) + off;
        for (n, l) in other.nbrs.iter().zip(&other.label) {
            self.nbrs.push(n.iter().map(|x| x + off).collect());
            self.label.push(*l);
        }
        let na = self.nbrs[la][0];
        let nb = self.nbrs[lb][0];
        for x in self.nbrs[na].iter_mut() {
            if *x == la {
                *x = nb;
            }
        }
        for x in self.nbrs[nb].iter_mut() {
            if *x == lb {
                *x = na;
            }
        }
        self.label[la] = None;
        self.label[lb] = None;
        self
    }
}

#[derive(Debug)]
struct CombTable {
    combs: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

/// The cyclic Lie operad. `Lie((S))` is written with `min S` as output and
/// has the basis of left-normed combs `[[m, s2], ..., sk]` where `m` is the
/// smallest input. Moving the output is done by re-rooting planar trivalent
/// trees.
#[derive(Debug, Default)]
pub struct Lie {
    combs: Mutex<HashMap<usize, Arc<CombTable>>>,
    relabels: Mutex<HashMap<(usize, Vec<usize>), Arc<Vec<SparseVec>>>>,
}

impl Lie {
    fn table(&self, k: usize) -> Result<Arc<CombTable>, OperadError> {
        check_arity(k)?;
        let mut t = self.combs.lock().unwrap();
        Ok(t.entry(k)
            .or_insert_with(|| {
                let rest: Vec<usize> = (2..k).collect();
                let combs: Vec<Vec<usize>> = permutations_of(&rest)
                    .into_iter()
                    .map(|mut p| {
                        p.insert(0, 1);
                        p
                    })
                    .collect();
                let index = combs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
                Arc::new(CombTable { combs, index })
            })
            .clone())
    }

    /// Comb of basis element `idx` (inputs `1..k`, output 0).
    pub fn comb(&self, k: usize, idx: usize) -> Result<LieWord, OperadError> {
        Ok(LieWord::comb(&self.table(k)?.combs[idx]))
    }

    /// Coordinates of an expression in the inputs `1..k`: the coefficient of
    /// a comb is the coefficient of its word in the associative expansion.
    fn coords(&self, k: usize, w: &LieWord) -> Result<SparseVec, OperadError> {
        let t = self.table(k)?;
        let mut out = SparseVec::new();
        for (word, c) in w.expand() {
            if word[0] == 1 {
                axpy(&mut out, t.index[&word], q(c));
            }
        }
        Ok(out)
    }
}

/// Expand a multilinear bracket expression in the comb basis of `Lie((S))`,
/// where the output is `min S` and the expression uses the other flags once
/// each.
pub fn lie_normal_form(expr: &LieWord, flags: &[usize]) -> Result<SparseVec, OperadError> {
    let mut s = flags.to_vec();
    s.sort_unstable();
    let mut letters = expr.letters();
    letters.sort_unstable();
    if s.len() < 2 || letters != s[1..] {
        return Err(OperadError::NotMultilinear(format!(
            "`{expr}` must use each of {:?} exactly once",
            &s[1.min(s.len())..]
        )));
    }
    let std = expr.map_letters(&|l| s.binary_search(&l).unwrap());
    LIE_TABLES.with(|lie| lie.coords(s.len(), &std))
}

thread_local! {
    static LIE_TABLES: Lie = Lie::default();
}

impl CyclicOperad for Lie {
    fn name(&self) -> String {
        "lie".into()
    }

    fn dim(&self, k: usize) -> Result<usize, OperadError> {
        Ok(self.table(k)?.combs.len())
    }

    fn relabel(&self, k: usize, perm: &[usize]) -> Result<Arc<Vec<SparseVec>>, OperadError> {
        let key = (k, perm.to_vec());
        if let Some(m) = self.relabels.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let t = self.table(k)?;
        let mut cols = Vec::with_capacity(t.combs.len());
        for c in &t.combs {
            let mut tree = PlanarTree::from_rooted(0, &LieWord::comb(c));
            tree.relabel(|l| perm[l]);
            cols.push(self.coords(k, &tree.reroot(0))?);
        }
        let m = Arc::new(cols);
        self.relabels.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    fn compose(
        &self,
        ka: usize,
        i: usize,
        x: usize,
        kb: usize,
        j: usize,
        y: usize,
    ) -> Result<SparseVec, OperadError> {
        const GRAFT: usize = usize::MAX;
        let mut tx = PlanarTree::from_rooted(0, &self.comb(ka, x)?);
        tx.relabel(|f| match f.cmp(&i) {
            std::cmp::Ordering::Less => f,
            std::cmp::Ordering::Equal => GRAFT,
            std::cmp::Ordering::Greater => f - 1,
        });
        let mut ty = PlanarTree::from_rooted(0, &self.comb(kb, y)?);
        ty.relabel(|f| match f.cmp(&j) {
            std::cmp::Ordering::Less => ka - 1 + f,
            std::cmp::Ordering::Equal => GRAFT,
            std::cmp::Ordering::Greater => ka - 2 + f,
        });
        let joined = tx.graft(GRAFT, &ty, GRAFT);
        self.coords(ka + kb - 2, &joined.reroot(0))
    }

    fn basis_labels(&self, k: usize) -> Result<Vec<Value>, OperadError> {
        Ok(self
            .table(k)?
            .combs
            .iter()
            .map(|c| json!(LieWord::comb(c).to_string()))
            .collect())
    }
}
