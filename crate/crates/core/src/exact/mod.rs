//! Exact arithmetic substrate: Laurent polynomials, rationals, GF(2) matrices,
//! cyclotomic fields and certified signatures of Hermitian forms.

pub mod cyclotomic;
pub mod f2;
pub mod interval;
pub mod intmat;
pub mod laurent;
pub mod rational;
pub mod signature;

pub use cyclotomic::CyclotomicField;
pub use f2::{f2_rank, F2Matrix};
pub use laurent::{laurent_normalize_symmetric, second_derivative_at_one, LaurentError, LaurentPolynomial};
pub use rational::Rational;
pub use signature::{certified_signature, CertifiedSign, CyclotomicMatrix, Inertia, Sign, SignWitness, SignatureError};
