//! Exact arithmetic: rational-exponent monomials, Laurent polynomials, rational
//! functions with binomial denominators, truncated series and identity testing.

pub mod eval;
pub mod frac;
pub mod json;
pub mod monomial;
pub mod poly;
pub mod series;

pub use eval::{
    frac_eq, product_value, products_eq, rand_eq, rand_eq_products, rand_eq_sums, EvalConfig, Point, PointSampler,
    Product,
};
pub use frac::FactoredRat;
pub use monomial::{exp, exp_frac, Exp, Monomial, Subst, Var};
pub use poly::{exp_to_rat, rat, rat_frac, LaurentPoly, Rat};
pub use series::{Coeff, QSeries, Series};
