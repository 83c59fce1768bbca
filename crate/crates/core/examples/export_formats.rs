// JSON and Graphviz output of a fiber tree, and reading the JSON back.

use fiberlevel::elliptic::WeierstrassCurve;
use fiberlevel::fiber_tree::{build_tree, FiberTree};

pub fn run_example() -> fiberlevel::Result<()> {
    let e = WeierstrassCurve::from_ints([0, 0, 0, 21, 26])?;
    let tree = build_tree(&e, 3, 1, None)?;
    let json = tree.to_json();
    println!("{json}");
    assert_eq!(FiberTree::from_json(&json)?, tree);
    print!("{}", tree.to_dot());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
