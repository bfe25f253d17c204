use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::build::{graph_betti, BettiTable};
use super::forest::sheaf_betti;
use super::spec::{ComplexSpec, Mode, Orientation};
use super::GraphComplexError;

/// How two Betti tables pair under `k ↦ s − k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    /// `left(s − k) = right(k)` for every `k`.
    Uniform(i32),
    /// Both tables vanish.
    Vacuous,
    Mismatch,
}

impl Pairing {
    pub fn find(left: &BTreeMap<i32, usize>, right: &BTreeMap<i32, usize>) -> Pairing {
        match (left.keys().next_back(), right.keys().next()) {
            (None, None) => Pairing::Vacuous,
            (Some(&top), Some(&low)) => {
                let s = top + low;
                let moved: BTreeMap<i32, usize> = left.iter().map(|(&k, &n)| (s - k, n)).collect();
                if &moved == right {
                    Pairing::Uniform(s)
                } else {
                    Pairing::Mismatch
                }
            }
            _ => Pairing::Mismatch,
        }
    }

    fn to_json(self) -> Value {
        match self {
            Pairing::Uniform(s) => json!(s),
            Pairing::Vacuous => json!("vacuous"),
            Pairing::Mismatch => json!("mismatch"),
        }
    }
}

/// Comparison of the decoration sheaf of `O` with graph cohomology
/// decorated by the dual `DO`.
#[derive(Clone, Debug)]
pub struct DualityReport {
    pub operad: String,
    pub dual: String,
    pub mode: Mode,
    /// `O` twisted, `O` standard, `DO` twisted, `DO` standard graph
    /// cohomology, then the sheaf cohomology of `O` and of `O ⊗ H`.
    pub tables: Vec<(String, BettiTable)>,
    pub expected_shift: i32,
    /// `DO` standard against the sheaf of `O`.
    pub pairing: Pairing,
    /// `DO` twisted against the sheaf of `O ⊗ H`.
    pub pairing_h: Pairing,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        let ok = |p: Pairing| match p {
            Pairing::Uniform(s) => s == self.expected_shift,
            Pairing::Vacuous => true,
            Pairing::Mismatch => false,
        };
        ok(self.pairing) && ok(self.pairing_h) && self.pairing != Pairing::Vacuous
    }

    pub fn to_json(&self) -> Value {
        let tables: serde_json::Map<String, Value> = self
            .tables
            .iter()
            .map(|(name, t)| (name.clone(), t.to_json()))
            .collect();
        json!({
            "operad": self.operad,
            "dual": self.dual,
            "mode": match self.mode {
                Mode::Rank(n) => json!({"rank": n}),
                Mode::Ribbon { genus, boundary, labeled } =>
                    json!({"genus": genus, "boundary": boundary, "labeled": labeled}),
            },
            "tables": tables,
            "expected_shift": self.expected_shift,
            "shift_observed": self.pairing.to_json(),
            "shift_observed_h": self.pairing_h.to_json(),
            "pass": self.passed(),
        })
    }
}

/// Degree `s` with `H^{s−k}(DO, standard) ≅ H^k(sheaf of O)`: the real
/// dimension of the moduli space minus one, `3n − 4` or `6g + 3b − 7`.
pub fn expected_shift(mode: &Mode) -> i32 {
    match *mode {
        Mode::Rank(n) => 3 * n as i32 - 4,
        Mode::Ribbon { genus, boundary, .. } => 6 * genus as i32 + 3 * boundary as i32 - 7,
    }
}

/// Build all six tables of `base` (whose operad must be one of `comm`,
/// `ass`, `lie`, `t`) and check the two pairings. Fails with
/// `ShiftMismatch` (carrying the report) when either pairing fails.
pub fn duality_report(base: &ComplexSpec) -> Result<DualityReport, GraphComplexError> {
    if base.operad.starts_with('d') {
        return Err(GraphComplexError::InvalidSpec(
            "the duality report starts from a non-dual operad".into(),
        ));
    }
    let dual = format!("d{}", base.operad);
    let plain = ComplexSpec {
        h_twist: false,
        ..base.clone()
    };
    let of = |op: &str, o: Orientation| ComplexSpec {
        operad: op.to_string(),
        orientation: o,
        ..plain.clone()
    };
    let mut tables = Vec::new();
    for (name, spec) in [
        ("o_twisted", of(&base.operad, Orientation::Twisted)),
        ("o_standard", of(&base.operad, Orientation::Standard)),
        ("do_twisted", of(&dual, Orientation::Twisted)),
        ("do_standard", of(&dual, Orientation::Standard)),
    ] {
        tables.push((name.to_string(), graph_betti(&spec, true)?));
    }
    tables.push(("sheaf".into(), sheaf_betti(&plain)?));
    tables.push(("sheaf_h".into(), sheaf_betti(&plain.clone().with_h_twist(true))?));
    let pairing = Pairing::find(&tables[3].1.betti, &tables[4].1.betti);
    let pairing_h = Pairing::find(&tables[2].1.betti, &tables[5].1.betti);
    if let Pairing::Uniform(s) = pairing {
        tables[3].1.shift_observed = Some(s);
    }
    if let Pairing::Uniform(s) = pairing_h {
        tables[2].1.shift_observed = Some(s);
    }
    let report = DualityReport {
        operad: base.operad.clone(),
        dual,
        mode: base.mode,
        tables,
        expected_shift: expected_shift(&base.mode),
        pairing,
        pairing_h,
    };
    if !report.passed() {
        return Err(GraphComplexError::ShiftMismatch(report.to_json().to_string()));
    }
    Ok(report)
}
