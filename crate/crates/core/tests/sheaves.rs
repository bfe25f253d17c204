use std::collections::BTreeMap;

use graphhom::sheaves::{
    hypercohomology, random_complex, random_system, star_compact_cohomology, verdier_dual, CoefficientSystem,
    SimplicialComplex,
};
use proptest::prelude::*;

mod common;
use common::simplicial_oracle as oracle;

fn negate(t: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    t.iter().map(|(&k, &n)| (-k, n)).collect()
}

#[test]
fn oracle_sanity() {
    let sphere = SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
    let expect: BTreeMap<i32, usize> = [(0, 1), (2, 1)].into_iter().collect();
    assert_eq!(oracle(&sphere), expect);
}

#[test]
fn bundled_examples() {
    let one: BTreeMap<i32, usize> = [(0, 1)].into_iter().collect();
    let f = CoefficientSystem::constant(SimplicialComplex::interval());
    assert_eq!(hypercohomology(&f).unwrap().betti, one);
    assert_eq!(hypercohomology(&verdier_dual(&f).system).unwrap().betti, one);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn constant_systems_match_the_oracle(seed in any::<u64>()) {
        let x = random_complex(seed, 8);
        let f = CoefficientSystem::constant(x.clone());
        prop_assert_eq!(hypercohomology(&f).unwrap().betti, oracle(&x));
    }

    #[test]
    fn duality_identities(seed in 0u64..10_000) {
        let x = random_complex(seed, 6);
        let f = random_system(&x, seed, 2);
        let h = hypercohomology(&f).unwrap().betti;
        let df = verdier_dual(&f);
        prop_assert_eq!(hypercohomology(&df.system).unwrap().betti, negate(&h));
        for (i, face) in x.faces().iter().enumerate() {
            let star = star_compact_cohomology(&f, face).unwrap().betti;
            prop_assert_eq!(df.system.stalk(i).betti().unwrap(), negate(&star));
        }
        let ddf = verdier_dual(&df.system);
        prop_assert_eq!(hypercohomology(&ddf.system).unwrap().betti, h);
    }

    #[test]
    fn systems_survive_json(seed in any::<u64>()) {
        let x = random_complex(seed, 5);
        let f = random_system(&x, seed, 2);
        let back = CoefficientSystem::from_json(&f.to_json()).unwrap();
        prop_assert_eq!(back, f);
    }
}
