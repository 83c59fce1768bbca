// Loading a subgroup spec from its JSON form and walking its orbit tree.

use fiberlevel::gl2::{orbit_tree, SubgroupSpec};

const SPEC: &str = r#"{
  "ell": 3,
  "defining_exponent": 1,
  "generators": [[[1, 1], [0, 1]], [[2, 0], [0, 1]], [[1, 0], [0, 2]]]
}"#;

pub fn run_example() -> fiberlevel::Result<()> {
    let g = SubgroupSpec::from_json(SPEC)?;
    println!("|G_1| = {}, |G_2| = {}", g.order_at(1), g.order_at(2));
    let tree = orbit_tree(&g, 3)?;
    for k in 1..=3 {
        println!("level {k}: {:?}", tree.level_degrees(k));
    }
    assert_eq!(tree.level_degrees(1), vec![1, 3]);
    assert!(tree.branch_vertices().iter().all(|v| v.level < g.defining_exponent()));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
