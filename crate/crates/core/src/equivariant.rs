//! Equivariant Casson and Furuta–Ohta invariants of mapping tori of finite-order maps.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::intmat::integer_det;
use crate::exact::rational::{as_integer, format_rational};
use crate::exact::signature::integer_inertia;
use crate::exact::{Rational, SignatureError};
use crate::knot::{
    alexander_polynomial, arf_invariant, mirror, signature_spectrum, KnotError, SeifertMatrix, SignatureSpectrum,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivariantError {
    #[error("order must be positive")]
    ZeroOrder,
    #[error("gcd({n}, {q}) != 1")]
    NotCoprime { n: usize, q: i64 },
    #[error("spectrum has order {got}, expected {expected}")]
    SpectrumOrder { expected: usize, got: usize },
    #[error("equivariant Casson invariant {0} is not an integer")]
    NonIntegralInvariant(String),
    #[error("Rohlin invariant must be 0 or 1, got {0}")]
    InvalidRohlin(u8),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// Quotient data for `τ` with fixed points: `Σ → Σ′` branched along `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchedQuotientData {
    pub n: usize,
    pub quotient_casson: i64,
    pub branch_spectrum: SignatureSpectrum,
}

impl BranchedQuotientData {
    pub fn new(n: usize, quotient_casson: i64, branch_spectrum: SignatureSpectrum) -> Result<Self, EquivariantError> {
        if n == 0 {
            return Err(EquivariantError::ZeroOrder);
        }
        if branch_spectrum.order() != n {
            return Err(EquivariantError::SpectrumOrder { expected: n, got: branch_spectrum.order() });
        }
        Ok(Self { n, quotient_casson, branch_spectrum })
    }

    pub fn from_knot(n: usize, quotient_casson: i64, knot: &SeifertMatrix) -> Result<Self, EquivariantError> {
        if n == 0 {
            return Err(EquivariantError::ZeroOrder);
        }
        Self::new(n, quotient_casson, signature_spectrum(knot, n)?)
    }
}

/// Quotient data for free `τ`: `Σ → Y + (n/q)·k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeQuotientData {
    pub n: usize,
    pub q: i64,
    pub base_casson: i64,
    pub knot: SeifertMatrix,
}

impl FreeQuotientData {
    pub fn new(n: usize, q: i64, base_casson: i64, knot: SeifertMatrix) -> Result<Self, EquivariantError> {
        let d = Self { n, q, base_casson, knot };
        d.check()?;
        Ok(d)
    }

    fn check(&self) -> Result<(), EquivariantError> {
        if self.n == 0 {
            return Err(EquivariantError::ZeroOrder);
        }
        if (self.n as i64).gcd(&self.q) != 1 {
            return Err(EquivariantError::NotCoprime { n: self.n, q: self.q });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MappingTorusData {
    Branched(BranchedQuotientData),
    Free(FreeQuotientData),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingTorusReport {
    pub lambda_fo: Rational,
    pub rho: u8,
    pub congruent: bool,
}

/// `n·λ(Σ′) + (1/8)·Σ_m sign^{m/n}(k)`
pub fn equivariant_casson_branched(d: &BranchedQuotientData) -> Rational {
    Rational::from_integer(d.n as i64 * d.quotient_casson) + Rational::new(d.branch_spectrum.total(), 8)
}

/// `(q/2)·Δ″_k(1)`
pub fn free_correction(d: &FreeQuotientData) -> Result<Rational, EquivariantError> {
    let d2 = alexander_polynomial(&d.knot)?.second_derivative_at_one();
    Ok(Rational::new(d.q * d2, 2))
}

fn free_formula(d: &FreeQuotientData) -> Result<Rational, EquivariantError> {
    let spectrum = signature_spectrum(&d.knot, d.n)?;
    Ok(Rational::from_integer(d.n as i64 * d.base_casson) + Rational::new(spectrum.total(), 8) + free_correction(d)?)
}

/// `n·λ(Y) + (1/8)·Σ_m sign^{m/n}(k) + (q/2)·Δ″_k(1)`
pub fn equivariant_casson_free(d: &FreeQuotientData) -> Result<Rational, EquivariantError> {
    d.check()?;
    free_formula(d)
}

/// True iff the free and branched invariants differ by exactly `(q/2)·Δ″_k(1)`.
pub fn branched_free_relation(d: &FreeQuotientData, cover: &BranchedQuotientData) -> Result<bool, EquivariantError> {
    if d.n == 0 {
        return Err(EquivariantError::ZeroOrder);
    }
    Ok(free_formula(d)? - equivariant_casson_branched(cover) == free_correction(d)?)
}

pub fn furuta_ohta_mapping_torus(d: &MappingTorusData) -> Result<Rational, EquivariantError> {
    match d {
        MappingTorusData::Branched(b) => Ok(equivariant_casson_branched(b)),
        MappingTorusData::Free(f) => equivariant_casson_free(f),
    }
}

/// `λ_FO ≡ ρ (mod 2)`, with `ρ(X_τ) = ρ(Σ)` supplied by the caller.
pub fn conjecture1_check(d: &MappingTorusData, rho_sigma: u8) -> Result<MappingTorusReport, EquivariantError> {
    if rho_sigma > 1 {
        return Err(EquivariantError::InvalidRohlin(rho_sigma));
    }
    let lambda_fo = furuta_ohta_mapping_torus(d)?;
    let Some(value) = as_integer(&lambda_fo) else {
        return Err(EquivariantError::NonIntegralInvariant(format_rational(&lambda_fo)));
    };
    Ok(MappingTorusReport { lambda_fo, rho: rho_sigma, congruent: value.rem_euclid(2) as u8 == rho_sigma })
}

/// Opposite orientation: Casson invariants negated, knot mirrored, and in the free case `q` negated.
pub fn reverse(d: &MappingTorusData) -> MappingTorusData {
    match d {
        MappingTorusData::Branched(b) => MappingTorusData::Branched(BranchedQuotientData {
            n: b.n,
            quotient_casson: -b.quotient_casson,
            branch_spectrum: b.branch_spectrum.negated(),
        }),
        MappingTorusData::Free(f) => MappingTorusData::Free(FreeQuotientData {
            n: f.n,
            q: -f.q,
            base_casson: -f.base_casson,
            knot: mirror(&f.knot),
        }),
    }
}

pub fn orientation_reversal_check(d: &MappingTorusData) -> Result<bool, EquivariantError> {
    Ok(furuta_ohta_mapping_torus(&reverse(d))? == -furuta_ohta_mapping_torus(d)?)
}

/// Intersection form of the `n`-fold cyclic cover of `B⁴` branched along a pushed-in Seifert
/// surface: block tridiagonal with `S + Sᵀ` on the diagonal, `−S` above and `−Sᵀ` below.
pub fn cyclic_cover_form(s: &SeifertMatrix, n: usize) -> Vec<Vec<i64>> {
    let g2 = s.size();
    let blocks = n.saturating_sub(1);
    let dim = blocks * g2;
    let mut m = vec![vec![0i64; dim]; dim];
    for b in 0..blocks {
        for i in 0..g2 {
            for j in 0..g2 {
                m[b * g2 + i][b * g2 + j] = s.get(i, j) + s.get(j, i);
                if b + 1 < blocks {
                    m[b * g2 + i][(b + 1) * g2 + j] = -s.get(i, j);
                    m[(b + 1) * g2 + i][b * g2 + j] = -s.get(j, i);
                }
            }
        }
    }
    m
}

/// Spin filling data of the cyclic branched cover `Y_n` of `S³`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCover {
    pub n: usize,
    pub signature: i64,
    pub order_h1: u64,
}

impl CyclicCover {
    pub fn is_homology_sphere(&self) -> bool {
        self.order_h1 == 1
    }

    /// `sign/8 mod 2` of the even filling, defined when `Y_n` is a homology sphere.
    pub fn rohlin(&self) -> Option<u8> {
        (self.is_homology_sphere() && self.signature % 8 == 0).then(|| (self.signature / 8).rem_euclid(2) as u8)
    }
}

pub fn cyclic_cover(s: &SeifertMatrix, n: usize) -> Result<CyclicCover, EquivariantError> {
    if n == 0 {
        return Err(EquivariantError::ZeroOrder);
    }
    let form = cyclic_cover_form(s, n);
    let det = integer_det(&form);
    let order_h1 = u64::try_from(det.magnitude()).unwrap_or(u64::MAX);
    Ok(CyclicCover { n, signature: integer_inertia(&form)?.signature(), order_h1 })
}

/// `ρ(Y_n + (1/q)·k̃) = ρ(Y_n) + q·arf(k)`, the lift having the same Arf invariant.
pub fn free_cover_rohlin(s: &SeifertMatrix, n: usize, q: i64) -> Result<Option<u8>, EquivariantError> {
    let Some(rho) = cyclic_cover(s, n)?.rohlin() else {
        return Ok(None);
    };
    Ok(Some(((rho as i64 + q * arf_invariant(s)? as i64).rem_euclid(2)) as u8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knot::presets::*;
    use crate::knot::torus_knot_seifert;

    fn spec(v: &[i64]) -> SignatureSpectrum {
        SignatureSpectrum::new(v.to_vec()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn branched_examples() {
        let cork = BranchedQuotientData::new(2, 0, spec(&[0, 16])).unwrap();
        assert_eq!(equivariant_casson_branched(&cork), r(2, 1));
        let flat = BranchedQuotientData::new(3, 1, spec(&[0, 0, 0])).unwrap();
        assert_eq!(equivariant_casson_branched(&flat), r(3, 1));
        let brieskorn = BranchedQuotientData::from_knot(2, 0, &torus_knot_seifert(3, 5).unwrap()).unwrap();
        assert_eq!(equivariant_casson_branched(&brieskorn), r(-1, 1));
    }

    #[test]
    fn spectrum_order_must_match() {
        assert_eq!(
            BranchedQuotientData::new(3, 0, spec(&[0, 16])),
            Err(EquivariantError::SpectrumOrder { expected: 3, got: 2 })
        );
    }

    #[test]
    fn free_examples() {
        let d = FreeQuotientData::new(2, 1, 0, right_trefoil()).unwrap();
        assert_eq!(equivariant_casson_free(&d).unwrap(), r(3, 4));
        assert!(matches!(
            conjecture1_check(&MappingTorusData::Free(d), 0),
            Err(EquivariantError::NonIntegralInvariant(_))
        ));
        let d = FreeQuotientData::new(2, 1, 0, trivial_alexander()).unwrap();
        assert_eq!(equivariant_casson_free(&d).unwrap(), r(0, 1));
        let d = FreeQuotientData::new(3, 2, 0, figure_eight()).unwrap();
        assert_eq!(equivariant_casson_free(&d).unwrap(), r(-2, 1));
        assert_eq!(FreeQuotientData::new(4, 2, 0, figure_eight()), Err(EquivariantError::NotCoprime { n: 4, q: 2 }));
    }

    #[test]
    fn relation() {
        let d = FreeQuotientData { n: 2, q: 0, base_casson: 0, knot: right_trefoil() };
        let cover = BranchedQuotientData::from_knot(2, 0, &right_trefoil()).unwrap();
        assert!(branched_free_relation(&d, &cover).unwrap());
        let d = FreeQuotientData::new(2, 1, 0, right_trefoil()).unwrap();
        assert!(branched_free_relation(&d, &cover).unwrap());
        let wrong = BranchedQuotientData::new(2, 0, spec(&[0, 2])).unwrap();
        assert!(!branched_free_relation(&d, &wrong).unwrap());
    }

    #[test]
    fn conjecture_examples() {
        let cork = MappingTorusData::Branched(BranchedQuotientData::new(2, 0, spec(&[0, 16])).unwrap());
        assert_eq!(
            conjecture1_check(&cork, 0).unwrap(),
            MappingTorusReport { lambda_fo: r(2, 1), rho: 0, congruent: true }
        );
        let poincare = MappingTorusData::Branched(
            BranchedQuotientData::from_knot(2, 0, &torus_knot_seifert(3, 5).unwrap()).unwrap(),
        );
        let rep = conjecture1_check(&poincare, 1).unwrap();
        assert_eq!((rep.lambda_fo, rep.congruent), (r(-1, 1), true));
        let zero = MappingTorusData::Branched(BranchedQuotientData::new(4, 0, spec(&[0; 4])).unwrap());
        assert_eq!(
            conjecture1_check(&zero, 0).unwrap(),
            MappingTorusReport { lambda_fo: r(0, 1), rho: 0, congruent: true }
        );
    }

    #[test]
    fn reversal() {
        let trefoil = MappingTorusData::Branched(BranchedQuotientData::from_knot(2, 1, &right_trefoil()).unwrap());
        assert!(orientation_reversal_check(&trefoil).unwrap());
        let zero = MappingTorusData::Branched(BranchedQuotientData::new(2, 0, spec(&[0, 0])).unwrap());
        assert!(orientation_reversal_check(&zero).unwrap());
        let amphichiral = MappingTorusData::Branched(BranchedQuotientData::from_knot(2, 0, &figure_eight()).unwrap());
        assert!(orientation_reversal_check(&amphichiral).unwrap());
        assert_eq!(furuta_ohta_mapping_torus(&amphichiral).unwrap(), r(0, 1));
        let free = MappingTorusData::Free(FreeQuotientData::new(3, 2, 5, figure_eight()).unwrap());
        assert!(orientation_reversal_check(&free).unwrap());
    }

    #[test]
    fn trivial_cover_recovers_quotient() {
        let d = BranchedQuotientData::from_knot(1, -7, &right_trefoil()).unwrap();
        assert_eq!(equivariant_casson_branched(&d), r(-7, 1));
    }

    #[test]
    fn cyclic_cover_signature_matches_spectrum() {
        for s in [right_trefoil(), figure_eight(), torus_knot_seifert(2, 5).unwrap(), torus_knot_seifert(3, 4).unwrap()]
        {
            for n in 1..=6 {
                let cover = cyclic_cover(&s, n).unwrap();
                assert_eq!(cover.signature, signature_spectrum(&s, n).unwrap().total(), "n = {n}");
            }
        }
    }

    #[test]
    fn poincare_sphere_as_cyclic_covers() {
        // Σ(2,3,5) is the 5-fold cover along the trefoil, the 3-fold along T(2,5), the double along T(3,5)
        for (s, n) in
            [(right_trefoil(), 5), (torus_knot_seifert(2, 5).unwrap(), 3), (torus_knot_seifert(3, 5).unwrap(), 2)]
        {
            let cover = cyclic_cover(&s, n).unwrap();
            assert!(cover.is_homology_sphere());
            assert_eq!(cover.signature, -8);
            assert_eq!(cover.rohlin(), Some(1));
        }
        assert_eq!(cyclic_cover(&right_trefoil(), 2).unwrap().order_h1, 3);
    }
}
