//! Functional dependencies: a derivation when the goal follows, a two-row
//! team when it does not.

use teamlogic::axioms::{armstrong_counterexample, armstrong_derives, FdStatement, Statement};
use teamlogic::eval::eval_dep;
use teamlogic::ModelDoc;

pub fn main() {
    let sigma = [FdStatement::of("a", "b"), FdStatement::of("b c", "d")];
    for s in &sigma {
        println!("premise: {}", Statement::from(s.clone()));
    }

    let goal = FdStatement::of("a c", "d");
    let (ok, proof) = armstrong_derives(&sigma, &goal);
    println!("\ngoal {}: derivable = {ok}", Statement::from(goal));
    let proof = proof.expect("derivable goals come with a proof");
    print!("{}", proof.to_text());
    let premises: Vec<Statement> = sigma.iter().cloned().map(Into::into).collect();
    proof.verify(&premises).expect("replays");
    println!("({} steps, height {})", proof.size(), proof.height());

    let goal = FdStatement::of("a", "c d");
    let (ok, _) = armstrong_derives(&sigma, &goal);
    println!("\ngoal {}: derivable = {ok}", Statement::from(goal.clone()));
    let (m, team) = armstrong_counterexample(&sigma, &goal).unwrap();
    println!("counterexample:\n{team}");
    let tuple = |s: &std::collections::BTreeSet<_>| s.iter().cloned().collect();
    for s in sigma.iter().chain([&goal]) {
        let holds = eval_dep(&team, &tuple(&s.antecedent), &tuple(&s.consequent)).unwrap();
        println!("  {}: {holds}", Statement::from(s.clone()));
    }
    println!("{}", ModelDoc::from_parts(&m, Some(&team)).to_json());
}
