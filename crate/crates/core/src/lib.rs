pub mod algebra;
pub mod bimodule;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod frobenius;
pub mod homological;
pub mod linalg;
pub mod schema;
pub mod search;
pub mod separability;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp, Rational};

/// The rationals.
pub type Q = Rational;
/// The field with two elements.
pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

pub type QAlgebra = algebra::Algebra<Q>;
pub type QBimodule = bimodule::Bimodule<Q>;
pub type QModule = bimodule::LeftModule<Q>;
pub type QExtension = algebra::RingExtension<Q>;
pub type F2Algebra = algebra::Algebra<F2>;
pub type F2Bimodule = bimodule::Bimodule<F2>;
