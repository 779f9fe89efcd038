//! Exact arithmetic: big rationals, Laurent polynomials, factored rational
//! functions, and the torus-knot Alexander polynomial.

pub mod laurent;
pub mod rational;
pub mod scalar;

pub use laurent::LaurentPoly;
pub use rational::{alexander_torus, binomial_factor, cyclotomic_multiplier, FactoredRationalFn};
pub use scalar::{fmt_rat, rat, rat_int, rat_pow, Rat};
