use std::collections::BTreeMap;

use graphhom::graph::Caps;
use graphhom::linalg::{Scalar, SparseVec};
use graphhom::operad::{apply_relabel, dg_dual_component, dt_component, model_by_name, CyclicOperad};
use proptest::prelude::*;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn component_dimensions() {
    for k in 2..=6 {
        assert_eq!(model_by_name("comm").unwrap().dim(k).unwrap(), 1);
        assert_eq!(model_by_name("ass").unwrap().dim(k).unwrap(), factorial(k - 1));
        assert_eq!(model_by_name("lie").unwrap().dim(k).unwrap(), factorial(k - 2));
    }
    assert!(model_by_name("pre-lie").is_err());
}

#[test]
fn koszul_duals_small() {
    let caps = Caps::default();
    for n in 2..=4 {
        let c = dg_dual_component(model_by_name("comm").unwrap(), n, &caps).unwrap();
        let h = c.betti().unwrap();
        assert_eq!(h.len(), 1, "DComm({n}) = {h:?}");
        assert_eq!(h.values().sum::<usize>(), factorial(n - 1));
        let l = dg_dual_component(model_by_name("lie").unwrap(), n, &caps).unwrap();
        assert_eq!(l.betti().unwrap().values().sum::<usize>(), 1);
        let t = dt_component(n, &caps).unwrap();
        assert_eq!(t.betti().unwrap().values().sum::<usize>(), 1);
    }
}

fn mat(model: &dyn CyclicOperad, k: usize, perm: &[usize]) -> Vec<SparseVec> {
    (0..model.dim(k).unwrap())
        .map(|i| {
            let e: SparseVec = [(i, Scalar::from_integer(1.into()))].into_iter().collect();
            apply_relabel(model, k, perm, &e).unwrap()
        })
        .collect()
}

fn model_arity_perms() -> impl Strategy<Value = (String, usize, Vec<usize>, Vec<usize>)> {
    let names = ["comm", "ass", "lie", "dcomm", "dass", "dlie"];
    (0..names.len(), 3usize..=5).prop_flat_map(move |(m, k)| {
        let id: Vec<usize> = (0..k).collect();
        (Just(names[m].to_string()), Just(k), Just(id.clone()).prop_shuffle(), Just(id).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relabeling_is_an_action((name, k, p, q) in model_arity_perms()) {
        let model = model_by_name(&name).unwrap();
        let pq: Vec<usize> = (0..k).map(|f| p[q[f]]).collect();
        let direct = mat(model.as_ref(), k, &pq);
        for (i, col) in mat(model.as_ref(), k, &q).iter().enumerate() {
            let twice = apply_relabel(model.as_ref(), k, &p, col).unwrap();
            prop_assert_eq!(&twice, &direct[i], "{} arity {}", name, k);
        }
    }

    #[test]
    fn composition_is_symmetric(m in 0usize..3, ka in 2usize..=4, kb in 2usize..=4, i in 0usize..4, j in 0usize..4, sx in 0usize..24, sy in 0usize..24) {
        let model = model_by_name(["comm", "ass", "lie"][m]).unwrap();
        let (i, j) = (i % ka, j % kb);
        let x = sx % model.dim(ka).unwrap();
        let y = sy % model.dim(kb).unwrap();
        let xy = model.compose(ka, i, x, kb, j, y).unwrap();
        let yx = model.compose(kb, j, y, ka, i, x).unwrap();
        // the flags of y come first in yx; move them behind those of x
        let (a, b) = (ka - 1, kb - 1);
        let swap: Vec<usize> = (0..a + b).map(|f| if f < b { a + f } else { f - b }).collect();
        prop_assert_eq!(apply_relabel(model.as_ref(), a + b, &swap, &yx).unwrap(), xy);
    }
}

#[test]
fn dual_components_have_square_zero_differentials() {
    let caps = Caps::default();
    let mut seen = BTreeMap::new();
    for name in ["comm", "ass", "lie"] {
        for n in 2..=4 {
            // construction fails unless d² = 0
            let c = dg_dual_component(model_by_name(name).unwrap(), n, &caps).unwrap();
            seen.insert((name, n), c.euler_characteristic());
        }
    }
    assert_eq!(seen[&("comm", 3)], 2);
}
