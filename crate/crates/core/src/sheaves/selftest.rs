use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::cech::{hypercohomology, star_compact_cohomology, verdier_dual};
use super::simplicial::{face_key, random_complex, simplicial_betti};
use super::system::{random_system, CoefficientSystem};
use super::SheafError;

/// Outcome of the duality checks on one random system.
#[derive(Clone, Debug)]
pub struct SelftestCase {
    pub seed: u64,
    pub vertices: usize,
    pub faces: usize,
    pub table: BTreeMap<i32, usize>,
    pub dual_table: BTreeMap<i32, usize>,
    /// Constant coefficients agree with simplicial cohomology.
    pub constant_ok: bool,
    /// `table(DF)(k) = table(F)(−k)`.
    pub global_ok: bool,
    /// `H(DF_σ)` is the degree-negated star cohomology at every face.
    pub stalk_ok: bool,
    /// `DDF` has the Betti tables of `F`, globally and at every stalk.
    pub double_ok: bool,
    /// First failing check, if any.
    pub counterexample: Option<String>,
    /// The system itself, kept for failing cases.
    pub system: Option<Value>,
}

impl SelftestCase {
    pub fn passed(&self) -> bool {
        self.constant_ok && self.global_ok && self.stalk_ok && self.double_ok
    }

    pub fn to_json(&self) -> Value {
        let mut o = json!({
            "seed": self.seed,
            "vertices": self.vertices,
            "faces": self.faces,
            "betti": table_json(&self.table),
            "dual_betti": table_json(&self.dual_table),
            "constant": self.constant_ok,
            "global": self.global_ok,
            "stalks": self.stalk_ok,
            "double_dual": self.double_ok,
            "pass": self.passed(),
        });
        if let Some(c) = &self.counterexample {
            o["counterexample"] = json!(c);
        }
        if let Some(s) = &self.system {
            o["system"] = s.clone();
        }
        o
    }
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub seed: u64,
    pub cases: Vec<SelftestCase>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(SelftestCase::passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "cases": self.cases.iter().map(SelftestCase::to_json).collect::<Vec<_>>(),
            "pass": self.passed(),
        })
    }
}

pub(crate) fn table_json(t: &BTreeMap<i32, usize>) -> Value {
    Value::Object(t.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn negate(t: &BTreeMap<i32, usize>) -> BTreeMap<i32, usize> {
    t.iter().map(|(&k, &n)| (-k, n)).collect()
}

/// One case: a random complex on at most 8 vertices with a random system.
pub fn run_case(seed: u64) -> Result<SelftestCase, SheafError> {
    let x = random_complex(seed, 8);
    let f = random_system(&x, seed, 2);
    let mut notes = Vec::new();

    let constant = hypercohomology(&CoefficientSystem::constant(x.clone()))?.betti;
    let constant_ok = constant == simplicial_betti(&x);
    if !constant_ok {
        notes.push(format!("constant coefficients give {constant:?}"));
    }

    let table = hypercohomology(&f)?.betti;
    let df = verdier_dual(&f);
    let dual_table = hypercohomology(&df.system)?.betti;
    let global_ok = dual_table == negate(&table);
    if !global_ok {
        notes.push(format!("H(DF) = {dual_table:?} against H(F) = {table:?}"));
    }

    let mut stalk_ok = true;
    for (i, face) in x.faces().iter().enumerate() {
        let star = star_compact_cohomology(&f, face)?.betti;
        let here = df.system.stalk(i).betti()?;
        if here != negate(&star) {
            stalk_ok = false;
            notes.push(format!("at [{}]: H(DF) = {here:?}, star = {star:?}", face_key(face)));
            break;
        }
    }

    let ddf = verdier_dual(&df.system);
    let mut double_ok = hypercohomology(&ddf.system)?.betti == table;
    if !double_ok {
        notes.push("H(DDF) differs from H(F)".into());
    }
    for i in 0..x.n_faces() {
        if ddf.system.stalk(i).betti()? != f.stalk(i).betti()? {
            double_ok = false;
            notes.push(format!("DDF stalk at [{}] differs", face_key(x.face(i))));
            break;
        }
    }

    let failed = !(constant_ok && global_ok && stalk_ok && double_ok);
    Ok(SelftestCase {
        seed,
        vertices: x.vertices().len(),
        faces: x.n_faces(),
        table,
        dual_table,
        constant_ok,
        global_ok,
        stalk_ok,
        double_ok,
        counterexample: notes.into_iter().next(),
        system: failed.then(|| f.to_json()),
    })
}

/// Cases use the seeds `seed, seed + 1, …`.
pub fn selftest(seed: u64, cases: usize) -> Result<SelftestReport, SheafError> {
    let cases = (0..cases as u64)
        .map(|i| run_case(seed.wrapping_add(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SelftestReport { seed, cases })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_few_cases_pass() {
        let r = selftest(100, 4).unwrap();
        for c in &r.cases {
            assert!(c.passed(), "{}", c.to_json());
        }
    }
}
