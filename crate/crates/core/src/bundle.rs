//! Circle bundles of Euler number one over `0`-surgeries on Alexander-polynomial-one knots.

use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::knot::{alexander_polynomial, arf_invariant, KnotError, SeifertMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("Alexander polynomial is {0}, expected 1")]
    NonTrivialAlexander(String),
    #[error("Euler number is {0}, expected 1")]
    BadEuler(i64),
    #[error("certificate check failed: {0}")]
    CertificateViolated(&'static str),
    #[error(transparent)]
    Knot(#[from] KnotError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleBundleData {
    pub knot: SeifertMatrix,
    pub euler: i64,
}

/// The facts that force both invariants to vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingCertificate {
    pub alexander_trivial: bool,
    pub arf: u8,
    pub alexander_second_derivative: i64,
    /// Both values of `w₂` on the SO(3) side contribute `Δ″(1)`.
    pub sector_counts: [i64; 2],
}

impl VanishingCertificate {
    pub fn is_valid(&self) -> bool {
        self.alexander_trivial && self.arf == 0 && self.alexander_second_derivative == 0 && self.sector_counts == [0, 0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certified<T> {
    pub value: T,
    pub certificate: VanishingCertificate,
}

fn certificate(d: &CircleBundleData) -> Result<VanishingCertificate, BundleError> {
    if d.euler != 1 {
        return Err(BundleError::BadEuler(d.euler));
    }
    let delta = alexander_polynomial(&d.knot)?;
    if !delta.is_one() {
        return Err(BundleError::NonTrivialAlexander(delta.to_string()));
    }
    let d2 = delta.second_derivative_at_one();
    let cert = VanishingCertificate {
        alexander_trivial: true,
        arf: arf_invariant(&d.knot)?,
        alexander_second_derivative: d2,
        sector_counts: [d2, d2],
    };
    if cert.arf != 0 {
        return Err(BundleError::CertificateViolated("arf != 0 although the Alexander polynomial is 1"));
    }
    Ok(cert)
}

pub fn circle_bundle_rho(d: &CircleBundleData) -> Result<Certified<u8>, BundleError> {
    let certificate = certificate(d)?;
    Ok(Certified { value: certificate.arf, certificate })
}

pub fn circle_bundle_furuta_ohta(d: &CircleBundleData) -> Result<Certified<i64>, BundleError> {
    let certificate = certificate(d)?;
    if certificate.sector_counts != [0, 0] {
        return Err(BundleError::CertificateViolated("Alexander polynomial 1 with nonzero second derivative"));
    }
    Ok(Certified { value: certificate.alexander_second_derivative, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::presets::*;

    fn data(knot: SeifertMatrix) -> CircleBundleData {
        CircleBundleData { knot, euler: 1 }
    }

    #[test]
    fn vanishing_examples() {
        for k in [unknot(), trivial_alexander(), trivial_alexander().stabilize(&[1, 2]).unwrap()] {
            let rho = circle_bundle_rho(&data(k.clone())).unwrap();
            let fo = circle_bundle_furuta_ohta(&data(k)).unwrap();
            assert_eq!((rho.value, fo.value), (0, 0));
            assert!(rho.certificate.is_valid() && fo.certificate.is_valid());
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(circle_bundle_rho(&data(right_trefoil())), Err(BundleError::NonTrivialAlexander(_))));
        assert!(matches!(circle_bundle_furuta_ohta(&data(right_trefoil())), Err(BundleError::NonTrivialAlexander(_))));
        let d = CircleBundleData { knot: unknot(), euler: 2 };
        assert_eq!(circle_bundle_rho(&d), Err(BundleError::BadEuler(2)));
    }
}
