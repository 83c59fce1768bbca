// Z/W/H cosets for the Borel-mod-3 image and the failure of the 3-power map
// to be well defined on H₃.

use fiberlevel::gl2::{
    coset_family, hypothesis_check, power_map_injective, power_map_well_defined,
    verify_raising_lemma, MatMod, SubgroupSpec,
};

pub fn run_example() -> fiberlevel::Result<()> {
    let a = MatMod::new(27, [[10, 1], [18, 4]]);
    let b = MatMod::new(27, [[10, 6], [18, 13]]);
    let q = b.inverse()?.mul(&a);
    println!("B^-1 A = {q}");
    assert_eq!(q, MatMod::new(27, [[1, 13], [0, 1]]));

    let borel = SubgroupSpec::borel(3)?;
    let fam = coset_family(&borel, 3)?;
    println!("|Z_3| = {}, |W_3| = {}, |H_3| = {}", fam.z.len(), fam.w.len(), fam.h.len());
    assert!(fam.z.contains(&q));

    let witness = power_map_well_defined(&borel, 2)?.expect("the map is not well defined");
    println!("A = {}\nB = {}\n(B^3)^-1 A^3 = {}", witness.a, witness.b, witness.power_quotient);
    assert_eq!(witness.power_quotient, MatMod::new(81, [[28, 48], [0, 55]]));

    // With Z trivial the map is well defined and injective.
    let small = SubgroupSpec::trivial(3, 2)?;
    assert!(power_map_well_defined(&small, 1)?.is_none());
    assert!(power_map_injective(&small, 1)?);
    assert!(hypothesis_check(&small, 1)?);
    assert!(!hypothesis_check(&SubgroupSpec::full(3)?, 1)?);

    for (ell, n) in [(3, 1), (3, 2), (5, 1)] {
        let ok = verify_raising_lemma(ell, n)?;
        println!("raising lemma for ell = {ell}, n = {n}: {ok}");
        assert!(ok);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
