use std::collections::BTreeMap;

use graphhom::linalg::{q, rref, GradedComplex, Scalar, SparseMatrix};
use proptest::prelude::*;

const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(P);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

// Entries are tiny, so every nonzero minor is far below P and the rank mod P
// is the rational rank.
fn rank_mod_p(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|x| x.rem_euclid(P)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        let inv = pow_mod(a[rank][c], P - 2);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % P;
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn to_sparse(m: &[Vec<i64>]) -> SparseMatrix {
    SparseMatrix::from_dense(&m.iter().map(|r| r.iter().map(|&x| q(x)).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
}

/// `d₀` and a matrix `N`; the complex is `V⁰ → V¹ → V²` with `d₁ = N·K`
/// for `K` a basis of the left kernel of `d₀`.
fn complex_strategy() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    (1usize..4, 1usize..5, 1usize..4).prop_flat_map(|(a, b, c)| {
        (
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, a), b),
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, b), c),
        )
    })
}

proptest! {
    #[test]
    fn rank_matches_the_modular_oracle(m in matrix()) {
        let s = to_sparse(&m);
        prop_assert_eq!(s.rank(), rank_mod_p(&m));
        prop_assert_eq!(s.transpose().rank(), s.rank());
    }

    #[test]
    fn product_rank_is_bounded(a in matrix(), seed in 0i64..1000) {
        let inner = a[0].len();
        let b: Vec<Vec<i64>> = (0..inner).map(|i| (0..3).map(|j| (seed + 3 * i as i64 + j) % 5 - 2).collect()).collect();
        let ab = to_sparse(&a).mul(&to_sparse(&b));
        prop_assert!(ab.rank() <= to_sparse(&a).rank().min(to_sparse(&b).rank()));
    }

    #[test]
    fn two_term_complexes((d0, n) in complex_strategy()) {
        let d0s = to_sparse(&d0);
        let (a, b) = (d0[0].len(), d0.len());
        // rows of K span the left kernel of d0
        let t: Vec<Vec<Scalar>> = (0..a).map(|j| (0..b).map(|i| q(d0[i][j])).collect()).collect();
        let r = rref(t);
        let mut kernel: Vec<Vec<Scalar>> = Vec::new();
        for free in (0..b).filter(|c| !r.pivots.contains(c)) {
            let mut v = vec![q(0); b];
            v[free] = q(1);
            for (row, &p) in r.pivots.iter().enumerate() {
                v[p] = -r.rows[row][free].clone();
            }
            kernel.push(v);
        }
        let d1 = if kernel.is_empty() {
            SparseMatrix::zeros(n.len(), b)
        } else {
            let nn = to_sparse(&n.iter().map(|row| row[..kernel.len()].to_vec()).collect::<Vec<_>>());
            nn.mul(&SparseMatrix::from_dense(&kernel))
        };
        prop_assert!(d1.mul(&d0s).is_zero());
        let dims: BTreeMap<i32, usize> = [(0, a), (1, b), (2, d1.rows())].into_iter().collect();
        let diffs: BTreeMap<i32, SparseMatrix> = [(0, d0s.clone()), (1, d1.clone())].into_iter().collect();
        let c = GradedComplex::cochain(dims, diffs).unwrap();
        let h = c.homology_dims().unwrap();
        let (r0, r1) = (d0s.rank(), d1.rank());
        prop_assert_eq!(h.get(&0).copied().unwrap_or(0), a - r0);
        prop_assert_eq!(h.get(&1).copied().unwrap_or(0), b - r0 - r1);
        let euler: i64 = h.iter().map(|(&k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum();
        prop_assert_eq!(euler, c.euler_characteristic());
        let dual = c.dualize();
        prop_assert_eq!(dual.betti().unwrap(), c.betti().unwrap());
        prop_assert_eq!(GradedComplex::from_json(&c.to_json()).unwrap(), c);
    }
}

#[test]
fn nonzero_square_is_rejected() {
    let d = SparseMatrix::from_dense(&[vec![q(1)]]);
    let dims: BTreeMap<i32, usize> = [(0, 1), (1, 1), (2, 1)].into_iter().collect();
    let diffs: BTreeMap<i32, SparseMatrix> = [(0, d.clone()), (1, d)].into_iter().collect();
    assert!(GradedComplex::cochain(dims, diffs).is_err());
}
