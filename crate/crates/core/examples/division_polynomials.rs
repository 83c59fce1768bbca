// Division polynomials, primitive ℓ-power division polynomials and the
// x-coordinate of multiplication by ℓ.

use fiberlevel::arith::{factor_over_q, rat};
use fiberlevel::elliptic::{
    division_polynomial, mult_by_ell_x_map, DivisionPolynomials, WeierstrassCurve,
};

pub fn run_example() -> fiberlevel::Result<()> {
    let e = WeierstrassCurve::from_ints([1, -1, 1, -14, 29])?;
    println!("j = {}", e.j_invariant());
    assert_eq!(e.j_invariant(), &(rat(-1167051) / rat(512)));

    let psi3 = division_polynomial(&e, 3)?;
    println!("psi_3 = {psi3}");

    let mut table = DivisionPolynomials::new(&e);
    let f3 = table.primitive(3, 1)?;
    let f9 = table.primitive(3, 2)?;
    println!("deg F_3 = {:?}, deg F_9 = {:?}", f3.degree(), f9.degree());
    for (g, _) in factor_over_q(&f3)?.factors {
        println!("  F_3 factor: {g}");
    }

    let xi = mult_by_ell_x_map(&e, 3);
    println!("x(3P) has numerator degree {:?}, denominator degree {:?}",
        xi.numerator.degree(), xi.denominator.degree());
    // Every root of F_9 maps into a root of F_3.
    assert!(f9.divides(&xi.cleared_compose(&f3)));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
