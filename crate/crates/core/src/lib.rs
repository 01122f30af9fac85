//! Exact resolution of planar holomorphic foliations, chain analysis of the
//! exceptional divisor, and projective triples.
//!
//! Everything is generic over [`algebra::Field`]; the aliases below fix the
//! two scalar types the tools work with.

pub mod algebra;
pub mod blowup;
pub mod chains;
pub mod error;
pub mod foliation;
pub mod forms;
pub mod triples;

pub use algebra::{Field, NumberField, Scalar, Q};
pub use blowup::{resolve, ResolutionReport, ResolveOptions, Status};
pub use chains::{chain_verdict, extension_schedule, extract_chains, generate_A};
pub use error::{Error, Result};
pub use foliation::FoliationForm;
pub use triples::{modify_triple, verify_triple, ProjectiveTriple};

/// Bivariate polynomial over ℚ.
pub type QPoly = algebra::BiPoly<Q>;
/// Bivariate polynomial over a number field.
pub type KPoly = algebra::BiPoly<Scalar>;
pub type QForm = forms::OneForm<Q>;
pub type KForm = forms::OneForm<Scalar>;
pub type QTriple = ProjectiveTriple<Q>;
pub type QFoliation = FoliationForm<Q>;
pub type KFoliation = FoliationForm<Scalar>;
