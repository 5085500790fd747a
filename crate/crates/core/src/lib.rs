//! Exact algebraic concordance invariants of knots from Seifert matrices.

pub mod amphicheiral;
pub mod ball;
pub mod bigjson;
pub mod concordance;
pub mod corpus;
pub mod covers;
pub mod cyclotomic;
pub mod dense;
pub mod error;
pub mod generate;
pub mod gilmer;
pub mod interval;
pub mod laurent;
pub mod matrix;
pub mod ratfunc;
pub mod scalar;
pub mod seifert;
pub mod signatures;
pub mod snf;
pub mod witt;
pub mod zp;

pub use error::{Error, Result};
pub use laurent::{ConwayPoly, LaurentPoly, Poly};
pub use ratfunc::RatFunc;
pub use scalar::Rational;
