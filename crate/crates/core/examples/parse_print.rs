//! Parses a few formulas, prints them back and shows a parse error.

use teamlogic::{parse, print};

pub fn main() {
    let inputs = [
        "A x E y (dep(x, y) & R(x, y))",
        "x y _||_{z} u | !(x = y)",
        "E v / x (incl(v ; y) & excl(x ; v))",
        "dep(x) -o (x y) != (y x)",
    ];
    for src in inputs {
        let f = parse(src).expect("valid formula");
        let again = parse(&print(&f)).expect("printer output parses");
        assert_eq!(f, again);
        let free: Vec<_> = f.free_variables().iter().map(|v| v.to_string()).collect();
        println!("{src}");
        println!("  printed: {}", print(&f));
        println!("  free:    {}", free.join(" "));
        println!("  first order: {}", f.is_first_order());
    }

    let bad = "A x (dep(x, ) & R(x)";
    match parse(bad) {
        Ok(_) => unreachable!(),
        Err(e) => println!("\n{}", e.render(bad)),
    }
}
