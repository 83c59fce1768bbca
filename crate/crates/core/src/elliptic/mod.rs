//! Weierstrass curves over ℚ, x-only division polynomials and the x-coordinate
//! of multiplication by ℓ.

mod cache;
mod curve;
mod divpoly;
mod xmap;

pub use cache::{PsiCache, CACHE_DIR_ENV};
pub use curve::WeierstrassCurve;
pub use divpoly::{division_polynomial, primitive_division_poly, DivisionPolynomials};
pub use xmap::{mult_by_ell_x_map, mult_by_n_x_map, XRationalMap};
