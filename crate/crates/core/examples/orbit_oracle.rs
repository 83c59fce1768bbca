// Cross-check: the tree from factoring division polynomials of 50.b1 matches
// the orbit tree of its 3-adic image, the preimage of the Borel group mod 3.

use fiberlevel::elliptic::WeierstrassCurve;
use fiberlevel::fiber_tree::build_tree;
use fiberlevel::gl2::{orbit_tree, SubgroupSpec};

pub fn run_example() -> fiberlevel::Result<()> {
    let e = WeierstrassCurve::from_ints([0, 0, 0, -4066875, -3156806250])?;
    let factored = build_tree(&e, 3, 2, Some(1))?;
    let orbits = orbit_tree(&SubgroupSpec::borel(3)?, 2)?;
    for k in 1..=2 {
        println!("level {k}: factors {:?}, orbits {:?}", factored.level_degrees(k), orbits.level_degrees(k));
    }
    let diff = factored.signature_diff(&orbits);
    assert!(diff.is_empty(), "{diff:?}");
    println!("signatures agree");

    let wrong = orbit_tree(&SubgroupSpec::full(3)?, 2)?;
    println!("against GL2 instead: {} differences", factored.signature_diff(&wrong).len());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
