// Indices i_m = [GL₂(ℤ/3^m) : G_m] and the level at which they stabilize.

use fiberlevel::gl2::{MatMod, SubgroupSpec};

pub fn run_example() -> fiberlevel::Result<()> {
    let borel = SubgroupSpec::borel(3)?;
    println!("Borel: {:?}, level {:?}", borel.index_sequence(3), borel.detect_level(3));
    assert_eq!(&borel.index_sequence(2), &[4, 4]);
    assert_eq!(borel.detect_level(3), Some(3));

    // Determinant ±1 mod 9: surjective mod 3, index 3 from level 9 on.
    let det_pm1: Vec<MatMod> = SubgroupSpec::full(3)?
        .elements_at(2)
        .into_iter()
        .filter(|m| matches!(m.det(), 1 | 8))
        .collect();
    let g = SubgroupSpec::from_elements(3, 2, det_pm1)?;
    println!("det = ±1 mod 9: {:?}, level {:?}", g.index_sequence(3), g.detect_level(3));
    assert_eq!(g.detect_level(3), Some(9));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
