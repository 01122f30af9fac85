//! Exact arithmetic: scalars, polynomials, rational functions, factorization.

pub mod bipoly;
pub mod factor;
pub mod field;
mod heugcd;
pub mod literal;
mod modular;
pub mod point;
pub mod ratfunc;
pub mod residue;
pub mod scalar;
pub mod unipoly;

pub use bipoly::{grlex, BiPoly, Exponent};
pub use factor::{certify_irreducible, factor_rational, factor_univariate, rational_roots, real_root_count};
pub use field::{parse_rational, q, qi, rational_literal, rational_sqrt, Field, Q};
pub use point::{translate_to_origin, AlgebraicPoint, ChartId, Coordinate};
pub use ratfunc::RatFunc;
pub use residue::residue_at;
pub use scalar::{NumberField, Scalar};
pub use unipoly::UniPoly;
