//! Rewrites dependence, constancy and exclusion atoms into independence and
//! inclusion atoms, then checks both sides agree on every team.

use std::collections::BTreeSet;

use teamlogic::eval::Bounds;
use teamlogic::translate::{eliminate_atoms, ELIMINABLE};
use teamlogic::{consequence_check, parse, Consequence, EvalConfig};

pub fn main() {
    let targets: BTreeSet<_> = ELIMINABLE.into_iter().collect();
    let inputs = [
        "dep(x)",
        "dep(x, y)",
        "dep(x y, z) | dep(z)",
        "excl(x ; y)",
        "A z (excl(z ; x) | dep(z, y))",
    ];
    let bounds = Bounds {
        max_domain: 2,
        max_vars: 3,
        ..Bounds::default()
    };
    // inclusion atoms need lax witnesses
    let cfg = EvalConfig::lax();
    for src in inputs {
        let f = parse(src).unwrap();
        let g = eliminate_atoms(&f, &targets).unwrap();
        let both = [
            consequence_check(&f, &g, &bounds, &cfg).unwrap(),
            consequence_check(&g, &f, &bounds, &cfg).unwrap(),
        ];
        let same = both.iter().all(|c| *c == Consequence::Holds);
        println!("{f}\n  => {g}\n  agree up to |M| = 2: {same}");
    }
}
