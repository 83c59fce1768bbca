use super::curve::WeierstrassCurve;
use super::divpoly::DivisionPolynomials;
use crate::arith::{poly_gcd, RatPoly};

/// A rational function in x, `numerator / denominator`, kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XRationalMap {
    pub numerator: RatPoly,
    pub denominator: RatPoly,
}

impl XRationalMap {
    pub fn new(numerator: RatPoly, denominator: RatPoly) -> Self {
        let g = poly_gcd(&numerator, &denominator);
        if g.is_constant() {
            return Self { numerator, denominator };
        }
        Self {
            numerator: numerator.div_exact(&g).expect("gcd divides numerator"),
            denominator: denominator.div_exact(&g).expect("gcd divides denominator"),
        }
    }

    /// `Σ h_i num^i den^(deg h - i)`: the numerator of `h(num/den)` after
    /// clearing `den^(deg h)`.
    pub fn cleared_compose(&self, h: &RatPoly) -> RatPoly {
        let Some(d) = h.degree() else {
            return RatPoly::zero();
        };
        let mut den_pow = RatPoly::one();
        let mut acc = RatPoly::constant(h.coeff(d));
        for i in (0..d).rev() {
            den_pow = &den_pow * &self.denominator;
            acc = &(&acc * &self.numerator) + &den_pow.scale(&h.coeff(i));
        }
        acc
    }
}

/// The x-coordinate of multiplication by `n`: `x(nQ) = ξ_n(x(Q))` whenever
/// `nQ ≠ O`.
pub fn mult_by_n_x_map(table: &mut DivisionPolynomials, n: u64) -> XRationalMap {
    let b = table.psi2_squared();
    let x = RatPoly::x();
    let f_n = table.get(n).clone();
    let f_prev = table.get(n - 1).clone();
    let f_next = table.get(n + 1).clone();
    let f_n_sq = &f_n * &f_n;
    let neighbours = &f_prev * &f_next;
    // φ_n = x ψ_n^2 - ψ_{n+1} ψ_{n-1}; ψ_2 factors pair up into B.
    let (numerator, denominator) = if n % 2 == 1 {
        (&(&x * &f_n_sq) - &(&neighbours * &b), f_n_sq)
    } else {
        let sq = &f_n_sq * &b;
        (&(&x * &sq) - &neighbours, sq)
    };
    XRationalMap::new(numerator, denominator)
}

pub fn mult_by_ell_x_map(curve: &WeierstrassCurve, ell: u64) -> XRationalMap {
    mult_by_n_x_map(&mut DivisionPolynomials::new(curve), ell)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn doubling_map_of_counterexample_curve() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, -2, 1]).unwrap();
        let xi = mult_by_ell_x_map(&e, 2);
        assert_eq!(xi.denominator, RatPoly::from_i64s(&[1, -2, 0, 1]).scale(&rat(4)));
        // x^4 - b4 x^2 - 2 b6 x - b8 = x^4 + 4x^2 - 8x + 4
        assert_eq!(xi.numerator, RatPoly::from_i64s(&[4, -8, 4, 0, 1]));
    }

    #[test]
    fn degrees_of_tripling_map() {
        let e = WeierstrassCurve::from_ints([0, 0, 0, 21, 26]).unwrap();
        let xi = mult_by_ell_x_map(&e, 3);
        assert_eq!(xi.numerator.degree(), Some(9));
        assert_eq!(xi.denominator.degree(), Some(8));
        assert!(xi.numerator.is_monic());
        assert!(poly_gcd(&xi.numerator, &xi.denominator).is_constant());
    }

    #[test]
    fn cleared_compose_of_linear() {
        let xi = XRationalMap::new(RatPoly::from_i64s(&[0, 0, 1]), RatPoly::from_i64s(&[1, 1]));
        // h = x - 4: x^2 - 4(x + 1)
        let h = RatPoly::from_i64s(&[-4, 1]);
        assert_eq!(xi.cleared_compose(&h), RatPoly::from_i64s(&[-4, -4, 1]));
    }

    #[test]
    fn doubling_a_rational_point() {
        // (1, 0) is 2-torsion on y^2 = x^3 - 2x + 1; (0, 1) has 2(0,1) = (1, 0)?
        // Tangent at (0,1): slope = (3x^2 - 2)/(2y) = -1, x(2P) = 1 - 0 - 0 = 1.
        let e = WeierstrassCurve::from_ints([0, 0, 0, -2, 1]).unwrap();
        let xi = mult_by_ell_x_map(&e, 2);
        let x0 = rat(0);
        assert_eq!(xi.numerator.eval(&x0) / xi.denominator.eval(&x0), rat(1));
    }
}
