// Complete factorization over ℚ, with the unit and multiplicities.

use fiberlevel::arith::{factor_over_q, rat, squarefree_decompose, RatPoly};

pub fn run_example() -> fiberlevel::Result<()> {
    let p = RatPoly::from_i64s;
    let f = (p(&[-1, 1]).pow(2) * p(&[-1, 1, 1]) * p(&[1, 0, 1])).scale(&rat(2));
    let fac = factor_over_q(&f)?;
    println!("f = {f}");
    println!("unit = {}", fac.unit);
    for (g, m) in &fac.factors {
        println!("  ({g})^{m}");
    }
    assert_eq!(fac.reconstruct(), f);
    assert_eq!(fac.degrees(), vec![1, 1, 2, 2]);

    let sqf = squarefree_decompose(&f)?;
    println!("squarefree parts: {:?}", sqf.iter().map(|(g, m)| (g.to_string(), *m)).collect::<Vec<_>>());

    // Irreducible over ℚ but split modulo every prime.
    let swinnerton_dyer = RatPoly::from_i64s(&[1, 0, -10, 0, 1]);
    assert_eq!(factor_over_q(&swinnerton_dyer)?.degrees(), vec![4]);
    println!("{swinnerton_dyer} is irreducible");
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
