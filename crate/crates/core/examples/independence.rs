//! Marginal independence: closure, derivations and parity counterexamples.

use teamlogic::axioms::{gpp_closure, gpp_counterexample, gpp_derives, IndStatement, Statement};
use teamlogic::eval::eval_indep;
use teamlogic::VarTuple;

fn show(s: &IndStatement) -> String {
    Statement::from(s.clone()).to_string()
}

pub fn main() {
    let sigma = [IndStatement::of("x", "y z"), IndStatement::of("y", "z")];
    let premises: Vec<Statement> = sigma.iter().cloned().map(Into::into).collect();

    let goal = IndStatement::of("z", "x y");
    let (ok, proof) = gpp_derives(&sigma, &goal).unwrap();
    println!("{}: derivable = {ok}", show(&goal));
    let proof = proof.unwrap();
    print!("{}", proof.to_text());
    proof.verify(&premises).unwrap();

    let vars = VarTuple::of("x y z").to_set();
    let closure = gpp_closure(&sigma, &vars).unwrap();
    println!("\nclosure over x y z has {} statements", closure.len());

    // the premises say nothing about a group of three
    let sigma = [IndStatement::of("x1", "y1"), IndStatement::of("x1", "y2")];
    let goal = IndStatement::of("x1", "y1 y2");
    println!(
        "\n{}: derivable = {}",
        show(&goal),
        gpp_derives(&sigma, &goal).unwrap().0
    );
    let c = gpp_counterexample(&sigma, &goal).unwrap();
    println!("minimal goal: {}", show(&c.minimal_goal));
    if let Some(p) = &c.parity_variable {
        println!("parity variable: {p}");
    }
    println!("team:\n{}", c.team);
    for s in sigma.iter().chain([&goal]) {
        let lhs: VarTuple = s.lhs.iter().cloned().collect();
        let rhs: VarTuple = s.rhs.iter().cloned().collect();
        println!(
            "  {}: {}",
            show(s),
            eval_indep(&c.team, &lhs, &rhs).unwrap()
        );
    }
}
