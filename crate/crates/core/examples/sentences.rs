//! Evaluates the infinity and evenness sentences on small pure structures.
//!
//! Run with `cargo run --release --example sentences -- 4` to go up to size 4.

use std::time::Duration;

use teamlogic::{parse, satisfies_sentence, EvalConfig, Structure};

const SENTENCES: &[(&str, &str)] = &[
    ("infinity (dep)", "E x A y E z (dep(z, y) & !(z = x))"),
    (
        "infinity (indep)",
        "E z A x E y A u E v (x y _||_ u v & (x = u <-> y = v) & !(v = z))",
    ),
    (
        "evenness (dep)",
        "A x E y A u E v (dep(u, v) & (x = v <-> y = u) & !(x = y))",
    ),
    (
        "evenness (indep)",
        "A x E y A u E v (x y _||_ u v & (x = v <-> y = u) & !(x = y))",
    ),
];

fn main() {
    let max: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(3);
    let cfg = EvalConfig::default().with_budget(Duration::from_secs(600));
    for (name, src) in SENTENCES {
        let f = parse(src).expect("sentence parses");
        for n in 1..=max {
            let r = satisfies_sentence(&Structure::pure(n), &f, &cfg).expect("closed sentence");
            println!(
                "{name:<18} |M| = {n}: {:<6} ({} nodes, {:.3}s)",
                r.verdict.to_string(),
                r.stats.nodes,
                r.stats.elapsed.as_secs_f64()
            );
        }
    }
}
