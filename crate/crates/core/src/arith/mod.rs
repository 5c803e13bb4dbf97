//! Exact arithmetic on multivariate Laurent polynomials and their quotients.
//!
//! Coefficients are arbitrary-precision rationals (`num::BigRational`). Rational
//! functions are not reduced by a gcd; identities are decided by
//! cross-multiplication.

mod laurent;
mod monomial;
mod parse;
mod rational_function;
mod symbol;

pub use laurent::{int, rat, EvalRing, LaurentPolynomial};
pub use monomial::Monomial;
pub use num::{BigInt, BigRational};
pub use rational_function::{substitution, RationalFunction, Substitution};
pub use symbol::{sym, Symbol};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("an intermediate denominator became the zero polynomial during substitution")]
    SubstitutionDenominatorZero,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("symbol {0} has no image")]
    UnboundSymbol(String),
    #[error("negative power of {0} needs an inverse")]
    NoInverse(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// `p(s)` as a polynomial.
pub fn lp(name: &str) -> LaurentPolynomial {
    LaurentPolynomial::named(name)
}

/// `p(s)` as a rational function.
pub fn rf(name: &str) -> RationalFunction {
    RationalFunction::named(name)
}
