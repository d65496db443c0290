//! Exact computation of Casson-type invariants.
//!
//! The crate computes the Casson and Rohlin invariants of homology spheres presented by
//! `1/q` surgeries, equivariant Casson and Furuta–Ohta invariants of mapping tori of
//! finite-order maps, Floer Lefschetz numbers from graded fixture data, and the mod-2
//! degree-zero Donaldson invariant of homology 4-tori from their GF(2) cup-product
//! rings. Every quantity is exact: integers, reduced rationals, bits, or inertias certified
//! by exact arithmetic in cyclotomic fields.

pub mod bundle;
pub mod equivariant;
pub mod exact;
pub mod families;
pub mod floer;
pub mod knot;
pub mod sphere;
pub mod tori;

pub use exact::{LaurentPolynomial, Rational};
pub use knot::SeifertMatrix;
