// The 3-power fiber tree of y² = x³ + 21x + 26, whose 3-adic image has level 9.

use fiberlevel::elliptic::WeierstrassCurve;
use fiberlevel::fiber_tree::build_tree;

pub fn run_example() -> fiberlevel::Result<()> {
    let e = WeierstrassCurve::from_ints([0, 0, 0, 21, 26])?;
    let tree = build_tree(&e, 3, 2, Some(2))?;
    for k in 1..=2 {
        println!("level {k}: degrees {:?}", tree.level_degrees(k));
    }
    assert_eq!(tree.level_degrees(1), vec![1, 1, 2]);
    assert_eq!(tree.level_degrees(2), vec![3, 3, 3, 9, 18]);

    for node in tree.nodes().filter(|n| n.parent.is_some()) {
        println!("  {} (deg {}) <- {}", node.id, node.degree, node.parent.unwrap());
    }
    println!("branch vertices: {:?}", tree.branch_vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>());

    let mut levels: Vec<u64> = tree.fiber_levels().iter().map(|f| f.level.value()).collect();
    levels.sort_unstable();
    println!("fiber levels: {levels:?}");
    assert_eq!(levels, vec![3, 3, 9, 9, 9]);

    let mut next = tree.predict_degrees(3)?;
    next.sort_unstable();
    println!("predicted degrees on X1(27): {next:?}");
    assert_eq!(next, vec![27, 27, 27, 81, 162]);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
