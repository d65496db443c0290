//! Homology spheres presented as chains of `1/q` surgeries on knots.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rational;
use crate::knot::{alexander_polynomial, arf_invariant, tl_signature, KnotError, SeifertMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SphereError {
    #[error("surgery coefficient 1/q needs q != 0 (step {0})")]
    ZeroCoefficient(usize),
    #[error("signature {0} is not divisible by 8")]
    NonIntegral(i64),
    #[error(transparent)]
    Knot(#[from] KnotError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryStep {
    pub knot: SeifertMatrix,
    pub q: i64,
}

/// `Y_{i+1} = Y_i + (1/q_i)·k_i`, starting from `S³`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<SurgeryStep>", into = "Vec<SurgeryStep>")]
pub struct SurgeryPresentation {
    steps: Vec<SurgeryStep>,
}

impl TryFrom<Vec<SurgeryStep>> for SurgeryPresentation {
    type Error = SphereError;

    fn try_from(steps: Vec<SurgeryStep>) -> Result<Self, SphereError> {
        Self::new(steps)
    }
}

impl From<SurgeryPresentation> for Vec<SurgeryStep> {
    fn from(p: SurgeryPresentation) -> Self {
        p.steps
    }
}

impl SurgeryPresentation {
    pub fn new(steps: Vec<SurgeryStep>) -> Result<Self, SphereError> {
        if let Some(i) = steps.iter().position(|s| s.q == 0) {
            return Err(SphereError::ZeroCoefficient(i));
        }
        Ok(Self { steps })
    }

    pub fn s3() -> Self {
        Self::default()
    }

    pub fn single(knot: SeifertMatrix, q: i64) -> Result<Self, SphereError> {
        Self::new(vec![SurgeryStep { knot, q }])
    }

    pub fn steps(&self) -> &[SurgeryStep] {
        &self.steps
    }

    /// Orientation reversal: every `q` negated.
    pub fn reversed(&self) -> Self {
        let steps = self.steps.iter().map(|s| SurgeryStep { knot: s.knot.clone(), q: -s.q }).collect();
        Self { steps }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self { steps: self.steps.iter().chain(&other.steps).cloned().collect() }
    }
}

/// `(q/2)·Δ″_k(1)` for one step.
pub fn casson_step(knot: &SeifertMatrix, q: i64) -> Result<i64, SphereError> {
    let d2 = alexander_polynomial(knot)?.second_derivative_at_one();
    // Δ″(1) = Σ 2k²a_k for symmetric Δ
    debug_assert_eq!(d2 % 2, 0);
    Ok(q * (d2 / 2))
}

pub fn casson(p: &SurgeryPresentation) -> Result<i64, SphereError> {
    p.steps.iter().map(|s| casson_step(&s.knot, s.q)).sum()
}

pub fn rohlin(p: &SurgeryPresentation) -> Result<u8, SphereError> {
    let mut acc = 0i64;
    for s in &p.steps {
        acc += s.q * arf_invariant(&s.knot)? as i64;
    }
    Ok(acc.rem_euclid(2) as u8)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereInvariants {
    pub casson: i64,
    pub rohlin: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CassonRohlinReport {
    pub casson: i64,
    pub rohlin: u8,
    pub congruent: bool,
}

pub fn sphere_invariants(p: &SurgeryPresentation) -> Result<SphereInvariants, SphereError> {
    Ok(SphereInvariants { casson: casson(p)?, rohlin: rohlin(p)? })
}

/// `λ ≡ ρ (mod 2)`
pub fn check_casson_rohlin(p: &SurgeryPresentation) -> Result<CassonRohlinReport, SphereError> {
    let SphereInvariants { casson, rohlin } = sphere_invariants(p)?;
    Ok(CassonRohlinReport { casson, rohlin, congruent: casson.rem_euclid(2) as u8 == rohlin })
}

/// `sign^{1/2}(k)/8`, the μ̄-invariant of the double branched cover.
pub fn mubar_double_branched(branch: &SeifertMatrix) -> Result<Rational, SphereError> {
    let sign = tl_signature(branch, Rational::new(1, 2))?;
    if sign % 8 != 0 {
        return Err(SphereError::NonIntegral(sign));
    }
    Ok(Rational::from_integer(sign / 8))
}
