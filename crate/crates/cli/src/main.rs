//! `graphhom`: Betti tables of graph complexes, duality reports and sheaf
//! computations on finite simplicial complexes.

mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphhom::complexes::{duality_report, graph_betti, ComplexSpec, GraphComplexError, Orientation};
use graphhom::graph::{Caps, TreePolicy};
use graphhom::sheaves::{
    face_key, hypercohomology, parse_face_key, selftest, star_compact_cohomology, verdier_dual, CoefficientSystem, SheafError,
};
use serde_json::{json, Value};

use output::{Document, Failure, Format};

const CAPS_ENV: &str = "GRAPHHOM_CAPS";

#[derive(Parser, Debug)]
#[command(name = "graphhom", version, about = "Exact graph homology and sheaf duality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Override the rank cap (after GRAPHHOM_CAPS).
    #[arg(long, global = true)]
    cap_rank: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Graph complex of a cyclic operad at fixed loop order.
    Gamma(GammaArgs),
    /// Ribbon graph complex of a non-symmetric operad at fixed (g, b).
    Ribbon(RibbonArgs),
    /// Graph cohomology of the dual operad against sheaf cohomology.
    Duality(DualityArgs),
    /// Coefficient systems on simplicial complexes.
    Sheaf {
        #[command(subcommand)]
        command: SheafCommand,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OrientationArg {
    Standard,
    Twisted,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TreeArg {
    Bfs,
    Dfs,
}

#[derive(Args, Debug)]
struct Twists {
    /// Use the twisted orientation.
    #[arg(long)]
    twisted: bool,
    /// Tensor with the determinant of H₁; implies --twisted unless
    /// --orientation says otherwise.
    #[arg(long)]
    h_twist: bool,
    #[arg(long, value_enum)]
    orientation: Option<OrientationArg>,
    /// Report cohomology instead of homology.
    #[arg(long)]
    cohomology: bool,
    #[arg(long, value_enum, default_value_t = TreeArg::Bfs)]
    tree: TreeArg,
}

impl Twists {
    fn apply(&self, mut spec: ComplexSpec) -> ComplexSpec {
        spec.orientation = match self.orientation {
            Some(OrientationArg::Standard) => Orientation::Standard,
            Some(OrientationArg::Twisted) => Orientation::Twisted,
            None if self.twisted || self.h_twist => Orientation::Twisted,
            None => Orientation::Standard,
        };
        spec.h_twist = self.h_twist;
        spec.policy = match self.tree {
            TreeArg::Bfs => TreePolicy::Bfs,
            TreeArg::Dfs => TreePolicy::Dfs,
        };
        spec
    }
}

#[derive(Args, Debug)]
struct GammaArgs {
    #[arg(long)]
    operad: String,
    #[arg(long)]
    rank: usize,
    #[command(flatten)]
    twists: Twists,
}

#[derive(Args, Debug)]
struct RibbonArgs {
    #[arg(long, default_value = "t")]
    operad: String,
    #[arg(long)]
    genus: usize,
    #[arg(long)]
    boundary: usize,
    /// Label the boundary cycles.
    #[arg(long)]
    labeled: bool,
    #[command(flatten)]
    twists: Twists,
}

#[derive(Args, Debug)]
struct DualityArgs {
    #[arg(long)]
    operad: String,
    #[arg(long, conflicts_with = "ribbon")]
    rank: Option<usize>,
    #[arg(long)]
    ribbon: bool,
    #[arg(long, requires = "ribbon")]
    genus: Option<usize>,
    #[arg(long, requires = "ribbon")]
    boundary: Option<usize>,
    #[arg(long, requires = "ribbon")]
    labeled: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Example {
    Point,
    Interval,
    Circle,
}

impl Example {
    fn source(self) -> &'static str {
        match self {
            Example::Point => include_str!("../data/point.json"),
            Example::Interval => include_str!("../data/interval.json"),
            Example::Circle => include_str!("../data/circle.json"),
        }
    }
}

#[derive(Args, Debug)]
struct SystemInput {
    /// Coefficient system JSON file.
    #[arg(required_unless_present = "example")]
    input: Option<PathBuf>,
    /// Use a bundled system instead of a file.
    #[arg(long, value_enum, conflicts_with = "input")]
    example: Option<Example>,
}

impl SystemInput {
    fn load(&self) -> Result<CoefficientSystem, Failure> {
        let text = match (&self.input, self.example) {
            (_, Some(e)) => e.source().to_string(),
            (Some(p), None) => std::fs::read_to_string(p)
                .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", p.display())))?,
            (None, None) => return Err(Failure::invalid("no input system")),
        };
        let v: Value = serde_json::from_str(&text).map_err(|e| Failure::new(2, "malformed_json", e.to_string()))?;
        CoefficientSystem::from_json(&v).map_err(sheaf_failure)
    }
}

#[derive(Subcommand, Debug)]
enum SheafCommand {
    /// Hypercohomology, or compactly supported cohomology of an open star.
    Cohomology {
        #[command(flatten)]
        input: SystemInput,
        /// Face key such as `0,1`.
        #[arg(long)]
        face: Option<String>,
    },
    /// The Verdier dual system and its hypercohomology.
    Verdier {
        #[command(flatten)]
        input: SystemInput,
    },
    /// Random systems checked against the duality identities.
    Selftest {
        #[arg(long, default_value_t = 25)]
        cases: usize,
    },
}

fn graph_failure(e: GraphComplexError) -> Failure {
    if e.is_out_of_scope() {
        return Failure::new(3, "out_of_scope", e.to_string());
    }
    match e {
        GraphComplexError::InvalidSpec(_) | GraphComplexError::Graph(_) | GraphComplexError::Operad(_) => {
            Failure::invalid(e.to_string())
        }
        GraphComplexError::ShiftMismatch(report) => {
            let mut f = Failure::new(4, "shift_mismatch", "no uniform degree shift at the expected value");
            if let Ok(body) = serde_json::from_str::<Value>(&report) {
                f.partial = Some(duality_document(body));
            }
            f
        }
        GraphComplexError::Complex(_) | GraphComplexError::Internal(_) => Failure::internal(e),
    }
}

fn sheaf_failure(e: SheafError) -> Failure {
    match e {
        SheafError::Internal(_) => Failure::internal(e),
        SheafError::Json(_) => Failure::new(2, "malformed_json", e.to_string()),
        _ => Failure::invalid(e.to_string()),
    }
}

fn caps(cap_rank: Option<usize>) -> Result<Caps, Failure> {
    let mut caps = Caps::default();
    if let Ok(s) = std::env::var(CAPS_ENV) {
        caps = caps
            .parse_overrides(&s)
            .map_err(|e| Failure::invalid(format!("{CAPS_ENV}: {e}")))?;
    }
    if let Some(r) = cap_rank {
        caps.rank = r;
    }
    Ok(caps)
}

fn table_document(command: &str, spec: &ComplexSpec, cohomology: bool) -> Result<Document, Failure> {
    let t = graph_betti(spec, cohomology).map_err(graph_failure)?;
    let kind = if cohomology { "cohomology" } else { "homology" };
    Ok(Document::new(command, json!({"kind": kind, "table": t.to_json()})).table(kind, &t.betti))
}

fn duality_document(body: Value) -> Document {
    let mut doc = Document::new("duality", json!({"report": body.clone()}));
    if let Some(tables) = body["tables"].as_object() {
        for (name, t) in tables {
            let betti = t["betti"]
                .as_object()
                .into_iter()
                .flatten()
                .filter_map(|(k, v)| Some((k.parse().ok()?, v.as_u64()? as usize)))
                .collect();
            doc = doc.table(name.clone(), &betti);
        }
    }
    doc
}

fn run(cli: &Cli) -> Result<Document, Failure> {
    let caps = caps(cli.cap_rank)?;
    match &cli.command {
        Command::Gamma(a) => {
            let spec = a.twists.apply(ComplexSpec::rank(&a.operad, a.rank).with_caps(caps));
            table_document("gamma", &spec, a.twists.cohomology)
        }
        Command::Ribbon(a) => {
            let spec = ComplexSpec::ribbon(&a.operad, a.genus, a.boundary, a.labeled).with_caps(caps);
            table_document("ribbon", &a.twists.apply(spec), a.twists.cohomology)
        }
        Command::Duality(a) => {
            let spec = match (a.rank, a.ribbon, a.genus, a.boundary) {
                (Some(n), false, _, _) => ComplexSpec::rank(&a.operad, n),
                (None, true, Some(g), Some(b)) => ComplexSpec::ribbon(&a.operad, g, b, a.labeled),
                (None, true, _, _) => return Err(Failure::invalid("--ribbon needs --genus and --boundary")),
                _ => return Err(Failure::invalid("duality needs --rank or --ribbon")),
            };
            let report = duality_report(&spec.with_caps(caps)).map_err(graph_failure)?;
            Ok(duality_document(report.to_json()))
        }
        Command::Sheaf { command } => run_sheaf(command, cli.seed),
    }
}

fn run_sheaf(command: &SheafCommand, seed: u64) -> Result<Document, Failure> {
    match command {
        SheafCommand::Cohomology { input, face } => {
            let f = input.load()?;
            let t = match face {
                Some(key) => {
                    let sigma = parse_face_key(key).map_err(sheaf_failure)?;
                    star_compact_cohomology(&f, &sigma)
                }
                None => hypercohomology(&f),
            }
            .map_err(sheaf_failure)?;
            Ok(Document::new("sheaf cohomology", json!({"table": t.to_json()})).table("betti", &t.betti))
        }
        SheafCommand::Verdier { input } => {
            let f = input.load()?;
            let d = verdier_dual(&f);
            let t = hypercohomology(&d.system).map_err(sheaf_failure)?;
            let summands: serde_json::Map<String, Value> = d
                .summands
                .iter()
                .enumerate()
                .map(|(s, star)| {
                    let x = f.complex();
                    let faces: Vec<String> = star.iter().map(|&t| face_key(x.face(t))).collect();
                    (face_key(x.face(s)), json!(faces))
                })
                .collect();
            let body = json!({"dual": d.system.to_json(), "summands": summands, "table": t.to_json()});
            Ok(Document::new("sheaf verdier", body).table("betti", &t.betti))
        }
        SheafCommand::Selftest { cases } => {
            let report = selftest(seed, *cases).map_err(sheaf_failure)?;
            let mut doc = Document::new("sheaf selftest", json!({"report": report.to_json()}));
            for c in &report.cases {
                doc = doc
                    .table(format!("{}.betti", c.seed), &c.table)
                    .table(format!("{}.dual_betti", c.seed), &c.dual_table);
            }
            if !report.passed() {
                let seeds: Vec<String> = report
                    .cases
                    .iter()
                    .filter(|c| !c.passed())
                    .map(|c| c.seed.to_string())
                    .collect();
                let mut f = Failure::new(4, "selftest_failed", format!("failing seeds {}", seeds.join(",")));
                f.partial = Some(doc);
                return Err(f);
            }
            Ok(doc)
        }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                std::process::exit(0);
            }
            let msg = e.render().to_string();
            let body: Vec<&str> = msg
                .lines()
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect();
            let text = body.join(" ");
            eprintln!("{}", Failure::invalid(text.trim_start_matches("error: ")).line());
            std::process::exit(2);
        }
    };
    match run(&cli) {
        Ok(doc) => {
            if let Err(f) = doc.write(cli.format, cli.out.as_deref()) {
                eprintln!("{}", f.line());
                std::process::exit(f.code);
            }
        }
        Err(f) => {
            if let Some(doc) = &f.partial {
                if let Err(w) = doc.write(cli.format, cli.out.as_deref()) {
                    eprintln!("{}", w.line());
                }
            }
            eprintln!("{}", f.line());
            std::process::exit(f.code);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn arguments_are_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn h_twist_implies_twisted_unless_overridden() {
        let parse = |args: &[&str]| match Cli::try_parse_from(args).unwrap().command {
            Command::Gamma(a) => a.twists.apply(ComplexSpec::rank("lie", 2)),
            _ => unreachable!(),
        };
        let s = parse(&["graphhom", "gamma", "--operad", "lie", "--rank", "2", "--h-twist"]);
        assert_eq!((s.orientation, s.h_twist), (Orientation::Twisted, true));
        let s = parse(&["graphhom", "gamma", "--operad", "lie", "--rank", "2", "--h-twist", "--orientation", "standard"]);
        assert_eq!((s.orientation, s.h_twist), (Orientation::Standard, true));
        let s = parse(&["graphhom", "gamma", "--operad", "lie", "--rank", "2"]);
        assert_eq!((s.orientation, s.h_twist), (Orientation::Standard, false));
    }

    #[test]
    fn shift_mismatch_keeps_the_tables() {
        let report = json!({"tables": {"sheaf": {"betti": {"1": 2}}}, "pass": false});
        let f = graph_failure(GraphComplexError::ShiftMismatch(report.to_string()));
        assert_eq!(f.code, 4);
        let doc = f.partial.unwrap();
        assert_eq!(doc.tables, vec![("sheaf".to_string(), [(1, 2)].into_iter().collect())]);
    }

    #[test]
    fn bundled_examples_parse() {
        for e in [Example::Point, Example::Interval, Example::Circle] {
            let input = SystemInput { input: None, example: Some(e) };
            assert!(input.load().is_ok(), "{e:?}");
        }
    }
}
