//! Exact construction and verification of strong connection forms on
//! finite-dimensional entwined extensions.
//!
//! All algebraic objects are given by structure-constant matrices over an
//! exact field: the rationals ([`Q`]) or a number field `Q[x]/(p)`
//! ([`NfElem`]). The core is generic over [`Scalar`]; the aliases below fix
//! the two supported scalar types.

pub mod connection;
pub mod entwined;
pub mod error;
pub mod homogeneous;
pub mod instance_file;
pub mod instances;
pub mod library;
pub mod linmap;
pub mod pipeline;
pub mod report;
pub mod scalar;
pub mod structures;

pub use error::{Error, Result};
pub use linmap::{LinMap, Space, Subspace};
pub use report::{Check, Status, VerificationReport};
pub use scalar::{Field, FieldDescriptor, NfElem, NumberField, Rationals, Scalar, ScalarField};

pub type Q = num_rational::BigRational;

pub type RationalMap = LinMap<Q>;
pub type RationalExtension = entwined::EntwinedExtension<Q>;
pub type RationalHopf = structures::HopfAlgebra<Q>;

pub type NumberFieldMap = LinMap<NfElem>;
pub type NumberFieldExtension = entwined::EntwinedExtension<NfElem>;
pub type NumberFieldHopf = structures::HopfAlgebra<NfElem>;
