//! Loads a structure and team from JSON and evaluates formulas on it.

use teamlogic::{parse, satisfies, EvalConfig, ModelDoc, SplitMode};

const MODEL: &str = r#"{
  "version": 1,
  "domain_size": 3,
  "relations": { "Edge": [[0, 1], [1, 2], [2, 0]] },
  "team": [
    { "x": 0, "y": 1 },
    { "x": 1, "y": 2 },
    { "x": 2, "y": 0 },
    { "x": 0, "y": 0 }
  ]
}"#;

pub fn main() {
    let doc = ModelDoc::parse(MODEL).expect("well-formed document");
    let m = doc.structure().unwrap();
    let team = doc.team().unwrap();
    println!("team:\n{team}");

    let formulas = [
        "dep(x, y)",
        "Edge(x, y) | x = y",
        "x _||_ y",
        "incl(x ; y)",
        "excl(x ; y)",
        "E z (dep(x, z) & Edge(z, x))",
        "A z E w (dep(z, w) & !(w = z))",
        "Edge(x, y) | dep(y)",
    ];
    let cfgs = [
        ("strict", EvalConfig::default()),
        ("lax", EvalConfig::lax()),
        (
            "covers",
            EvalConfig::default().with_split_mode(SplitMode::Covers),
        ),
    ];
    for src in formulas {
        let f = parse(src).unwrap();
        let verdicts: Vec<String> = cfgs
            .iter()
            .map(|(name, cfg)| {
                let r = satisfies(&m, &team, &f, cfg).unwrap();
                format!("{name}={} ({} nodes)", r.verdict, r.stats.nodes)
            })
            .collect();
        println!("{src:<32} {}", verdicts.join("  "));
    }

    // the empty team satisfies everything
    let empty = teamlogic::Team::empty(team.vars().to_vec());
    let f = parse("dep(x, y) & !(x = x)").unwrap();
    let r = satisfies(&m, &empty, &f, &EvalConfig::default()).unwrap();
    println!("\non the empty team, {f}: {}", r.verdict);
}
