// y² = x³ − 2x + 1 through X₁(16): a vertex on X₁(8) attains the maximal
// degree over its parent and still has two children.

use fiberlevel::elliptic::WeierstrassCurve;
use fiberlevel::fiber_tree::build_tree;

pub fn run_example() -> fiberlevel::Result<()> {
    let e = WeierstrassCurve::from_ints([0, 0, 0, -2, 1])?;
    let tree = build_tree(&e, 2, 4, Some(4))?;
    for k in 1..=4 {
        println!("level {k}: {:?}", tree.level_degrees(k));
    }
    let mut found = None;
    for y in tree.level(3) {
        if tree.max_growth_check(y.id)? && y.children.len() == 2 {
            found = Some(y.id);
        }
    }
    let y = found.expect("a maximal-growth vertex on X1(8) with two children");
    let kids: Vec<u64> = tree.node(y)?.children.iter().map(|&c| tree.node(c).unwrap().degree).collect();
    println!("{y} (deg {}) has children of degrees {kids:?}", tree.node(y)?.degree);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
