//! Bounded derivation search for conditional independence.

use teamlogic::axioms::{ci_derive, parse_statement, Statement, System};

fn ci(text: &str) -> teamlogic::axioms::CiStatement {
    match parse_statement(text, System::Conditional).unwrap() {
        Statement::Ci(s) => s,
        other => unreachable!("{other}"),
    }
}

pub fn main() {
    let cases: &[(&[&str], &str)] = &[
        (&["x _||_{z} y"], "y _||_{z} x"),
        (&["x _||_{z} y w"], "x _||_{z} y"),
        (&["x _||_{z} y", "x y _||_{z} w"], "x _||_{z} y w"),
        (&["x _||_{z} y", "u _||_{z x} y"], "y _||_{z} u"),
        (&["x _||_{z} y"], "x _||_{} y"),
    ];
    for (sigma, goal) in cases {
        let premises: Vec<_> = sigma.iter().map(|s| ci(s)).collect();
        let goal = ci(goal);
        for depth in [2, 4] {
            let (found, proof) = ci_derive(&premises, &goal, depth).unwrap();
            println!(
                "{} |- {}  height <= {depth}: {}",
                sigma.join(", "),
                Statement::from(goal.clone()),
                if found { "derivable" } else { "no derivation" }
            );
            if let Some(p) = proof {
                print!("{}", p.to_text());
                break;
            }
        }
    }
}
