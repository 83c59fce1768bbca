use std::collections::BTreeMap;

use proptest::prelude::*;

use fiberlevel::arith::{factor_over_q, poly_gcd, rat_frac, squarefree_decompose, RatPoly};
use fiberlevel::elliptic::{mult_by_n_x_map, DivisionPolynomials, WeierstrassCurve};
use fiberlevel::fiber_tree::build_tree;
use fiberlevel::gl2::{
    close_under_product, coset_family, hypothesis_check, orbit_tree, power_map_injective, power_map_well_defined,
    MatMod, SubgroupSpec, VectorMod,
};

/// Monic irreducibles over ℚ to build test products from.
fn irreducible(i: usize, k: i64) -> RatPoly {
    let p = RatPoly::from_i64s;
    match i % 6 {
        0 => p(&[k, 1]),
        1 => p(&[k.abs() + 1, 0, 1]),
        2 => p(&[k.abs() + 1, 1, 1]),
        3 => p(&[-2, 0, 0, 1]),
        4 => p(&[1, 0, -10, 0, 1]),
        _ => p(&[-1, -1, 0, 0, 0, 1]),
    }
}

fn product_strategy() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..6, -6i64..6), 1..6)
}

fn small_curve() -> impl Strategy<Value = WeierstrassCurve> {
    prop::array::uniform5(-4i64..5).prop_filter_map("singular", |a| WeierstrassCurve::from_ints(a).ok())
}

fn random_poly() -> impl Strategy<Value = RatPoly> {
    prop::collection::vec(-9i64..10, 2..9)
        .prop_map(|cs| RatPoly::from_i64s(&cs))
        .prop_filter("constant", |f| !f.is_constant())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factors_products_of_known_irreducibles(parts in product_strategy(), num in 1i64..20, den in 1i64..20) {
        let mut expected: BTreeMap<String, (RatPoly, u32)> = BTreeMap::new();
        let mut f = RatPoly::constant(rat_frac(num, den));
        for &(i, k) in &parts {
            let g = irreducible(i, k);
            f = &f * &g;
            expected.entry(g.to_string()).or_insert((g, 0)).1 += 1;
        }
        prop_assume!(f.degree().unwrap() <= 20);
        let fac = factor_over_q(&f).unwrap();
        prop_assert_eq!(fac.reconstruct(), f.clone());
        prop_assert_eq!(&fac.unit, &rat_frac(num, den));
        let got: BTreeMap<String, u32> = fac.factors.iter().map(|(g, m)| (g.to_string(), *m)).collect();
        let want: BTreeMap<String, u32> = expected.into_iter().map(|(k, (_, m))| (k, m)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn factorization_is_stable_and_scale_invariant(f in random_poly(), c in 1i64..50) {
        let a = factor_over_q(&f).unwrap();
        prop_assert_eq!(a.reconstruct(), f.clone());
        for (g, _) in &a.factors {
            prop_assert!(g.is_monic());
        }
        for (i, (g, _)) in a.factors.iter().enumerate() {
            for (h, _) in &a.factors[i + 1..] {
                prop_assert!(poly_gcd(g, h).is_constant());
            }
        }
        let b = factor_over_q(&f).unwrap();
        prop_assert_eq!(&a.factors, &b.factors);
        let scaled = factor_over_q(&f.scale(&rat_frac(-c, 7))).unwrap();
        prop_assert_eq!(&a.factors, &scaled.factors);
    }

    #[test]
    fn squarefree_parts_are_squarefree(f in random_poly(), g in random_poly()) {
        let h = &(&f * &g) * &g;
        let parts = squarefree_decompose(&h).unwrap();
        let mut back = RatPoly::one();
        for (p, m) in &parts {
            prop_assert!(poly_gcd(p, &p.derivative()).is_constant());
            back = &back * &p.pow(*m);
        }
        prop_assert!(back.divides(&h) && h.divides(&back));
    }

    #[test]
    fn gcd_divides_both(f in random_poly(), g in random_poly(), h in random_poly()) {
        let (a, b) = (&f * &h, &g * &h);
        let d = poly_gcd(&a, &b);
        prop_assert!(d.divides(&a) && d.divides(&b));
        prop_assert!(h.divides(&d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn division_polynomials_match_linear_recurrence(e in small_curve()) {
        let mut table = DivisionPolynomials::new(&e);
        let b = table.psi2_squared();
        let b2 = b.pow(2);
        let mut f: Vec<RatPoly> = (0..=4).map(|n| table.get(n).clone()).collect();
        for m in 3..=8usize {
            let mut num = &f[m + 1] * &f[m - 1];
            if m % 2 == 1 {
                num = &num * &b2;
            }
            num = &num - &(&f[3] * &f[m].pow(2));
            let next = num.div_exact(&f[m - 2]).unwrap();
            f.push(next);
        }
        for n in 1..=10u64 {
            prop_assert_eq!(table.get(n), &f[n as usize], "n = {}", n);
        }
    }

    #[test]
    fn primitive_divides_composition(e in small_curve(), ell in prop::sample::select(vec![2u64, 3])) {
        let mut table = DivisionPolynomials::new(&e);
        let xi = mult_by_n_x_map(&mut table, ell);
        let top = if ell == 2 { 3 } else { 2 };
        for k in 2..=top {
            let lower = table.primitive(ell, k - 1).unwrap();
            let upper = table.primitive(ell, k).unwrap();
            let expected = (ell * ell).pow(k - 1) * (ell * ell - 1) / 2;
            prop_assert_eq!(upper.degree(), Some(expected as usize));
            prop_assert!(upper.divides(&xi.cleared_compose(&lower)));
        }
    }

    #[test]
    fn trees_of_random_curves_satisfy_degree_sums(e in small_curve(), ell in prop::sample::select(vec![2u64, 3])) {
        let depth = if ell == 2 { 3 } else { 2 };
        let t = build_tree(&e, ell, depth, None).unwrap();
        prop_assert!(t.check_degree_sums().is_ok());
        for k in 1..=depth {
            let total: u64 = t.level_degrees(k).iter().sum();
            let all = (ell * ell).pow(k) - (ell * ell).pow(k - 1);
            prop_assert_eq!(total, if ell == 2 && k == 1 { all } else { all / 2 });
        }
    }
}

fn matrix(q: u64) -> impl Strategy<Value = MatMod> {
    prop::array::uniform4(0..q as i64).prop_map(move |[a, b, c, d]| MatMod::new(q, [[a, b], [c, d]]))
}

fn invertible(q: u64) -> impl Strategy<Value = MatMod> {
    matrix(q).prop_filter("singular", MatMod::is_invertible)
}

fn random_spec() -> impl Strategy<Value = SubgroupSpec> {
    (prop::sample::select(vec![(2u64, 1u32), (2, 2), (3, 1), (3, 2)]))
        .prop_flat_map(|(ell, d)| (Just((ell, d)), prop::collection::vec(invertible(ell.pow(d)), 0..3)))
        .prop_map(|((ell, d), gens)| SubgroupSpec::from_generators(ell, d, gens).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reduction_is_a_homomorphism(x in matrix(81), y in matrix(81), m in prop::sample::select(vec![3u64, 9, 27])) {
        let lhs = x.mul(&y).reduce(m).unwrap();
        let rhs = x.reduce(m).unwrap().mul(&y.reduce(m).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(x.reduce(27).unwrap().reduce(m).unwrap(), x.reduce(m).unwrap());
        prop_assert_eq!(x.mul(&y).det(), x.det() * y.det() % 81);
    }

    #[test]
    fn inverses(x in invertible(64)) {
        prop_assert!(x.inverse().unwrap().mul(&x).is_identity());
        prop_assert!(x.mul(&x.inverse().unwrap()).is_identity());
    }

    #[test]
    fn closure_is_a_group(gens in prop::collection::vec(invertible(9), 0..3)) {
        let g = close_under_product(9, &gens).unwrap();
        prop_assert!(g.contains(&MatMod::identity(9)));
        prop_assert_eq!(3888 % g.len(), 0);
        for x in g.iter().take(20) {
            prop_assert!(g.binary_search(&x.inverse().unwrap()).is_ok());
            for y in g.iter().take(20) {
                prop_assert!(g.binary_search(&x.mul(y)).is_ok());
            }
        }
    }

    #[test]
    fn orbit_trees_partition_and_freeze(spec in random_spec()) {
        let ell = spec.ell();
        let d = spec.defining_exponent();
        let depth = d + 1;
        let t = orbit_tree(&spec, depth).unwrap();
        prop_assert!(t.check_degree_sums().is_ok());
        for m in 1..=depth {
            let q = ell.pow(m);
            let size = q * q - (q / ell) * (q / ell);
            let total: u64 = t.level_degrees(m).iter().sum();
            prop_assert_eq!(total, if q >= 3 { size / 2 } else { size });
        }
        prop_assert!(t.branch_vertices().iter().all(|v| v.level < d));
        prop_assert_eq!(spec.order_at(depth), (ell as u128).pow(4) * spec.elements_at_d().len() as u128);
    }

    #[test]
    fn fixed_second_basis_vector_gives_injective_power_map(gens in prop::collection::vec(invertible(9), 1..3)) {
        let spec = SubgroupSpec::from_generators(3, 2, gens).unwrap();
        let fam = coset_family(&spec, 2).unwrap();
        prop_assert_eq!(fam.h.iter().map(Vec::len).sum::<usize>(), fam.w.len());
        if fam.z.len() != 1 {
            prop_assert!(power_map_injective(&spec, 1).is_err());
        } else if hypothesis_check(&spec, 1).unwrap() {
            prop_assert!(power_map_well_defined(&spec, 1).unwrap().is_none());
            prop_assert!(power_map_injective(&spec, 1).unwrap());
            let next = coset_family(&spec, 3).unwrap().h.len();
            prop_assert!(next >= fam.h.len());
        } else {
            prop_assert!(power_map_injective(&spec, 1).is_ok());
        }
    }

    #[test]
    fn vector_orders_divide_modulus(x in 0i64..27, y in 0i64..27) {
        let v = VectorMod::new(27, x, y);
        prop_assert_eq!(27 % v.order(), 0);
        prop_assert!(v.scale(v.order()).components() == [0, 0]);
    }
}
