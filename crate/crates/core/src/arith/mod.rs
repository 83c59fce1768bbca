//! Exact integer, rational and univariate polynomial arithmetic, including
//! factorization over ℚ.

mod factor;
mod hensel;
pub mod modp;
mod poly;
mod rat;
pub mod zpoly;

pub use factor::{factor_order, factor_over_q, squarefree_decompose, Factorization};
pub use poly::{poly_gcd, RatPoly};
pub(crate) use rat::lcm_of_denominators;
pub use rat::{format_rat, parse_rat, rat, rat_frac, Rat};
