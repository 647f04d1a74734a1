//! Even functions of the even coordinates: expression trees, a rational
//! normal form, parsing, and equality testing.

mod assume;
mod expr;
mod parse;
mod poly;
mod ratfunc;

pub use assume::{
    expr_equal, leaves_of, ratfunc_equal, zero_test, Assumptions, Equality, DEFAULT_INTERVAL,
    DEFAULT_SEED,
};
pub use expr::ScalarExpr;
pub use num_rational::BigRational;
pub use parse::parse_expr;
pub use poly::{term_cmp, Atom, Monomial, Poly};
pub use ratfunc::RatFunc;
