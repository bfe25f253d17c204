//! Acceptance run: one pass/fail line per criterion.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use graphhom::complexes::{
    build_complex, build_complex_on, duality_report, forest_complex, graph_betti, sheaf_betti, ComplexSpec,
    GraphComplexError, Pairing,
};
use graphhom::graph::{Caps, HalfEdgeGraph, TreePolicy};
use graphhom::operad::{dg_dual_component, dt_component, model_by_name};
use graphhom::sheaves::{random_complex, selftest, total_complex, CoefficientSystem};
use rand::seq::SliceRandom;
use rand::SeedableRng;

mod common;

type Table = BTreeMap<i32, usize>;

fn table(pairs: &[(i32, usize)]) -> Table {
    pairs.iter().copied().collect()
}

fn fmt(t: &Table) -> String {
    let inner: Vec<String> = t.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    format!("{{{}}}", inner.join(", "))
}

fn cohomology(spec: &ComplexSpec) -> Result<Table, GraphComplexError> {
    Ok(graph_betti(spec, true)?.betti)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn run(n: usize, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let pass = out.pass && took <= limit;
    let timing = if took > limit {
        format!("{:.1}s, over the {}s limit", took.as_secs_f64(), limit.as_secs())
    } else {
        format!("{:.1}s", took.as_secs_f64())
    };
    println!(
        "criterion {n} {}: {title}: {} ({timing})",
        if pass { "PASS" } else { "FAIL" },
        out.detail
    );
    pass
}

fn variants(spec: ComplexSpec) -> Vec<ComplexSpec> {
    let mut out = Vec::new();
    for twisted in [false, true] {
        for h in [false, true] {
            let mut s = spec.clone().with_h_twist(h);
            if twisted {
                s = s.twisted();
            }
            out.push(s);
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut specs = Vec::new();
    for n in [2, 3] {
        for op in ["comm", "ass", "lie"] {
            specs.extend(variants(ComplexSpec::rank(op, n)));
        }
    }
    for (g, b) in [(0, 3), (1, 1), (0, 4), (1, 2)] {
        for op in ["ass", "t"] {
            specs.extend(variants(ComplexSpec::ribbon(op, g, b, false)));
        }
    }
    specs.extend(variants(ComplexSpec::ribbon("t", 0, 4, true)));
    for op in ["dcomm", "dass", "dlie"] {
        specs.extend(variants(ComplexSpec::rank(op, 2)));
    }
    for (g, b) in [(0, 3), (1, 1)] {
        specs.extend(variants(ComplexSpec::ribbon("dt", g, b, false)));
    }
    let mut checked = 0;
    for spec in &specs {
        match build_complex(spec) {
            Ok(gc) => {
                let c = gc.complex;
                for &k in c.dims().keys() {
                    if !c.differential(k - 1).mul(&c.differential(k)).is_zero() {
                        return Outcome { pass: false, detail: format!("d² ≠ 0 for {}", spec.to_json()) };
                    }
                }
                checked += 1;
            }
            Err(e) => return Outcome { pass: false, detail: format!("{} failed: {e}", spec.to_json()) },
        }
    }
    let mut sheaf = 0;
    for base in [ComplexSpec::rank("comm", 2), ComplexSpec::rank("lie", 2), ComplexSpec::ribbon("t", 0, 3, false)] {
        for h in [false, true] {
            if let Err(e) = forest_complex(&base.clone().with_h_twist(h)) {
                return Outcome { pass: false, detail: format!("sheaf complex failed: {e}") };
            }
            sheaf += 1;
        }
    }
    Outcome {
        pass: true,
        detail: format!("{checked} graph complexes and {sheaf} sheaf complexes with d² = 0"),
    }
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for (n, k) in [(2, 2), (3, 5)] {
        let spec = ComplexSpec::rank("lie", n).twisted().with_h_twist(true);
        match cohomology(&spec) {
            Ok(t) => {
                pass &= t == table(&[(k, 1)]);
                notes.push(format!("n={n} {}", fmt(&t)));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("n={n} error {e}"));
            }
        }
    }
    Outcome { pass, detail: notes.join(", ") }
}

fn criterion_3() -> Outcome {
    let cases = [
        ((1, 1, false), table(&[(2, 1)])),
        ((0, 3, false), table(&[(2, 1)])),
        ((0, 4, true), table(&[(5, 1), (4, 2)])),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for ((g, b, labeled), want) in cases {
        let spec = ComplexSpec::ribbon("t", g, b, labeled);
        match cohomology(&spec) {
            Ok(t) => {
                pass &= t == want;
                notes.push(format!("({g},{b}){} {}", if labeled { " labeled" } else { "" }, fmt(&t)));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("({g},{b}) error {e}"));
            }
        }
    }
    Outcome { pass, detail: notes.join(", ") }
}

fn criterion_4() -> Outcome {
    let caps = Caps::default();
    let mut notes = Vec::new();
    let mut pass = true;
    for n in 2..=6 {
        let fact: usize = (1..n).product();
        let dcomm = dg_dual_component(model_by_name("comm").unwrap(), n, &caps).map(|c| c.betti().unwrap());
        let dt = dt_component(n, &caps).map(|c| c.betti().unwrap());
        match (dcomm, dt) {
            (Ok(a), Ok(b)) => {
                let ok = a.len() == 1 && a.values().sum::<usize>() == fact && b.values().sum::<usize>() == 1;
                pass &= ok;
                notes.push(format!("n={n} DComm {} DT {}", fmt(&a), fmt(&b)));
            }
            (a, b) => {
                pass = false;
                notes.push(format!("n={n} errors {:?} {:?}", a.err(), b.err()));
            }
        }
    }
    Outcome { pass, detail: notes.join("; ") }
}

fn criterion_5() -> Outcome {
    let bases = [
        ("comm n=2", ComplexSpec::rank("comm", 2)),
        ("comm n=3", ComplexSpec::rank("comm", 3)),
        ("lie n=2", ComplexSpec::rank("lie", 2)),
        ("t (0,3)", ComplexSpec::ribbon("t", 0, 3, false)),
        ("t (1,1)", ComplexSpec::ribbon("t", 1, 1, false)),
    ];
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, spec) in bases {
        match duality_report(&spec) {
            Ok(r) => {
                let s = match r.pairing {
                    Pairing::Uniform(s) => s.to_string(),
                    other => format!("{other:?}"),
                };
                notes.push(format!("{name} shift {s}"));
            }
            Err(e) => {
                pass = false;
                notes.push(format!("{name} failed: {e}"));
            }
        }
    }
    Outcome { pass, detail: notes.join(", ") }
}

fn criterion_6() -> Outcome {
    let report = match selftest(0, 25) {
        Ok(r) => r,
        Err(e) => return Outcome { pass: false, detail: format!("error {e}") },
    };
    let mut counts = [0usize; 4];
    let mut failures = Vec::new();
    for c in &report.cases {
        let x = random_complex(c.seed, 8);
        let constant = total_complex(&CoefficientSystem::constant(x.clone())).betti().unwrap();
        let a = c.constant_ok && constant == common::simplicial_oracle(&x);
        for (i, ok) in [a, c.global_ok, c.stalk_ok, c.double_ok].into_iter().enumerate() {
            if ok {
                counts[i] += 1;
            } else {
                failures.push(format!("seed {} check {}", c.seed, ["a", "b", "c", "d"][i]));
            }
        }
        if c.vertices > 8 {
            failures.push(format!("seed {} has {} vertices", c.seed, c.vertices));
        }
    }
    let n = report.cases.len();
    let pass = failures.is_empty() && n == 25;
    let mut detail = format!(
        "{n} systems, (a) {}/{n} (b) {}/{n} (c) {}/{n} (d) {}/{n}",
        counts[0], counts[1], counts[2], counts[3]
    );
    if !failures.is_empty() {
        detail.push_str(&format!(", failing: {}", failures.join(", ")));
    }
    Outcome { pass, detail }
}

fn criterion_7() -> Outcome {
    let specs = [
        ComplexSpec::rank("comm", 2),
        ComplexSpec::rank("comm", 3),
        ComplexSpec::rank("comm", 3).twisted(),
        ComplexSpec::rank("ass", 2),
        ComplexSpec::rank("lie", 2).twisted().with_h_twist(true),
        ComplexSpec::rank("lie", 3).twisted().with_h_twist(true),
        ComplexSpec::rank("dcomm", 2),
        ComplexSpec::ribbon("t", 0, 3, false),
        ComplexSpec::ribbon("t", 1, 1, false),
        ComplexSpec::ribbon("t", 0, 4, false),
        ComplexSpec::ribbon("dt", 0, 3, false),
    ];
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut builds = 0;
    for spec in &specs {
        let base = match build_complex(spec) {
            Ok(b) => b,
            Err(e) => return Outcome { pass: false, detail: format!("{} failed: {e}", spec.to_json()) },
        };
        let want = base.complex.betti().unwrap();
        for round in 0..20 {
            let mut reps: Vec<HalfEdgeGraph> = base
                .graphs
                .iter()
                .map(|g| {
                    let mut p: Vec<usize> = (0..g.n_half_edges()).collect();
                    p.shuffle(&mut rng);
                    g.relabel(&p)
                })
                .collect();
            reps.shuffle(&mut rng);
            let got = build_complex_on(spec, reps).map(|c| c.complex.betti().unwrap());
            if got.as_ref() != Ok(&want) {
                return Outcome {
                    pass: false,
                    detail: format!("{} relabeling {round}: {got:?} vs {}", spec.to_json(), fmt(&want)),
                };
            }
            builds += 1;
        }
        let dfs = build_complex(&spec.clone().with_policy(TreePolicy::Dfs)).map(|c| c.complex.betti().unwrap());
        if dfs.as_ref() != Ok(&want) {
            return Outcome { pass: false, detail: format!("{} under the DFS tree: {dfs:?}", spec.to_json()) };
        }
    }
    for base in [ComplexSpec::rank("comm", 2), ComplexSpec::ribbon("t", 1, 1, false)] {
        let h = base.with_h_twist(true);
        let a = sheaf_betti(&h).map(|t| t.betti);
        let b = sheaf_betti(&h.clone().with_policy(TreePolicy::Dfs)).map(|t| t.betti);
        if a != b {
            return Outcome { pass: false, detail: format!("sheaf table depends on the tree: {a:?} vs {b:?}") };
        }
    }
    Outcome {
        pass: true,
        detail: format!("{} specs, {builds} relabeled builds, BFS and DFS trees agree", specs.len()),
    }
}

fn main() {
    let mins = |m: u64| Duration::from_secs(60 * m);
    let results = [
        run(1, "d² = 0 on every built complex", mins(10), criterion_1),
        run(2, "Lie h-twisted cohomology anchors", mins(10), criterion_2),
        run(3, "ribbon anchors", mins(5), criterion_3),
        run(4, "Koszul spot check", mins(2), criterion_4),
        run(5, "uniform-shift duality reports", mins(15), criterion_5),
        run(6, "sheaf duality suite", mins(2), criterion_6),
        run(7, "label and spanning-tree independence", mins(30), criterion_7),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
