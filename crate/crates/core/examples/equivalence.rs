//! Bounded consequence checks between formulas, with countermodels.

use teamlogic::eval::Bounds;
use teamlogic::{consequence_check, parse, Consequence, EvalConfig, ModelDoc};

pub fn main() {
    let pairs = [
        ("dep(x, y) & dep(y, z)", "dep(x, z)"),
        ("x _||_ y", "y _||_ x"),
        ("x _||_ y z", "x _||_ y"),
        ("x _||_ y", "x _||_ y z"),
        ("dep(x, y)", "dep(y, x)"),
        ("dep(x) | dep(x)", "dep(x)"),
    ];
    let bounds = Bounds {
        max_domain: 2,
        max_vars: 3,
        ..Bounds::default()
    };
    let cfg = EvalConfig::default();
    for (a, b) in pairs {
        let (phi, psi) = (parse(a).unwrap(), parse(b).unwrap());
        match consequence_check(&phi, &psi, &bounds, &cfg).unwrap() {
            Consequence::Holds => println!("{a}  entails  {b}  (up to |M| = 2)"),
            Consequence::Fails(cm) => {
                println!("{a}  does not entail  {b}");
                let doc = ModelDoc::from_parts(&cm.structure, Some(&cm.team));
                println!("{}", doc.to_json());
            }
            Consequence::BudgetExhausted => println!("{a} / {b}: out of time"),
        }
    }
}
