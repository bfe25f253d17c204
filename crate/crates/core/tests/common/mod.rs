use std::collections::BTreeMap;

use graphhom::sheaves::SimplicialComplex;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn rank(mut a: Vec<Vec<BigRational>>) -> usize {
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[r][c];
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
        }
        r += 1;
    }
    r
}

/// Simplicial cohomology from the face list alone: `δ(σ)` puts `(−1)^i` on
/// every face obtained by inserting a vertex at position `i`.
pub fn simplicial_oracle(x: &SimplicialComplex) -> BTreeMap<i32, usize> {
    let mut by_dim: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for f in x.faces() {
        by_dim.entry(f.len() - 1).or_default().push(f.clone());
    }
    let top = *by_dim.keys().last().unwrap();
    let mut ranks = vec![0usize; top + 2];
    for k in 0..top {
        let (lo, hi) = (&by_dim[&k], &by_dim[&(k + 1)]);
        let m: Vec<Vec<BigRational>> = hi
            .iter()
            .map(|t| {
                lo.iter()
                    .map(|s| {
                        let extra: Vec<usize> = t.iter().copied().filter(|v| !s.contains(v)).collect();
                        if extra.len() != 1 || !s.iter().all(|v| t.contains(v)) {
                            return BigRational::zero();
                        }
                        let pos = t.iter().position(|&v| v == extra[0]).unwrap();
                        if pos % 2 == 0 { BigRational::one() } else { -BigRational::one() }
                    })
                    .collect()
            })
            .collect();
        ranks[k] = rank(m);
    }
    let mut out = BTreeMap::new();
    for (&k, faces) in &by_dim {
        let inc = if k == 0 { 0 } else { ranks[k - 1] };
        let h = faces.len() - ranks[k] - inc;
        if h > 0 {
            out.insert(k as i32, h);
        }
    }
    out
}
