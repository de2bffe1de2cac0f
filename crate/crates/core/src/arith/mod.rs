//! Exact arithmetic: rationals, polynomials, rational functions, matrices,
//! fraction-free determinants and Smith normal forms.

pub mod frac;
pub mod gaussian;
pub mod matrix;
pub mod mpoly;
pub mod rational;
pub mod ring;
pub mod smith;
pub mod text;
pub mod upoly;

pub use frac::{Frac, RatFunc};
pub use gaussian::Gaussian;
pub use matrix::Matrix;
pub use mpoly::{MPoly, Monomial};
pub use rational::{int, rat, Rational};
pub use ring::{Euclidean, Field, FractionField, Ring};
pub use smith::{smith_normal_form, unit_ratio, SmithData, UnitRatio};
pub use upoly::UPoly;
