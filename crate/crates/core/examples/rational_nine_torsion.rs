// Curve 54.b2 has a rational point of order 9; its degree-27 point on X₁(9)
// grows as fast as possible over its image on X₁(3).

use fiberlevel::arith::RatPoly;
use fiberlevel::elliptic::{primitive_division_poly, WeierstrassCurve};
use fiberlevel::fiber_tree::build_tree;

pub fn run_example() -> fiberlevel::Result<()> {
    let e = WeierstrassCurve::from_ints([1, -1, 1, -14, 29])?;
    let f3 = primitive_division_poly(&e, 3, 1)?;
    let expected = &RatPoly::from_i64s(&[-1, 1]) * &RatPoly::from_i64s(&[90, -27, 0, 1]);
    println!("F_3 = {f3}");
    assert_eq!(f3, expected);

    let tree = build_tree(&e, 3, 2, None)?;
    println!("level 1: {:?}", tree.level_degrees(1));
    println!("level 2: {:?}", tree.level_degrees(2));
    assert_eq!(tree.level_degrees(2), vec![1, 1, 1, 6, 27]);

    let big = tree.level(2).iter().find(|n| n.degree == 27).expect("degree-27 node");
    let parent = tree.node(big.parent.unwrap())?;
    println!("{} has parent {} of degree {}", big.id, parent.id, parent.degree);
    assert_eq!(parent.degree, 3);
    assert!(tree.max_growth_check(big.id)?);

    let fiber = tree.fiber_levels().into_iter().find(|f| f.path.contains(&big.id)).unwrap();
    println!("fiber through {}: level {}", big.id, fiber.level);
    assert_eq!(fiber.level.value(), 3);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
