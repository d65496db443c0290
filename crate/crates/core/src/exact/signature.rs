//! Exact inertia of Hermitian matrices over cyclotomic fields.
//!
//! The matrix is reduced by a Hermitian `LDL*` congruence carried out in exact field
//! arithmetic, using 1×1 pivots on nonzero diagonal entries and 2×2 pivots
//! `[[0, b], [b̄, 0]]` when the remaining diagonal vanishes. Sylvester's law of inertia then
//! reads the inertia off the block diagonal: a 2×2 pivot contributes one positive and one
//! negative direction, a 1×1 pivot `d` contributes `sign(d)`, and a fully vanishing
//! remainder contributes exactly-certified zeros. The pivots `d` are real elements of the
//! field whose signs are decided by dyadic interval evaluation at `ζ = e^{2πi/n}`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::cyclotomic::{CyclotomicField, Element};
use super::interval::{cos_two_pi_fraction, DyadicInterval};

/// Initial working precision, in fractional bits.
pub const INITIAL_PRECISION_BITS: u32 = 64;
/// Refinement gives up past this precision; unreachable for nonzero field elements of
/// the sizes handled here, kept only so a logic error cannot loop forever.
const MAX_PRECISION_BITS: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("sign refinement exceeded {0} bits")]
    PrecisionExhausted(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SignWitness {
    /// The value is the zero element of the field.
    ExactZero,
    /// A dyadic enclosure of the value excluding zero.
    Interval(DyadicInterval),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifiedSign {
    pub value: Sign,
    pub witness: SignWitness,
}

impl CertifiedSign {
    /// True if the witness actually supports the claimed sign.
    pub fn is_consistent(&self) -> bool {
        match (&self.witness, self.value) {
            (SignWitness::ExactZero, Sign::Zero) => true,
            (SignWitness::Interval(i), Sign::Positive) => i.sign() == Some(1),
            (SignWitness::Interval(i), Sign::Negative) => i.sign() == Some(-1),
            _ => false,
        }
    }
}

/// Numbers of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

/// Square matrix with entries in `Q(ζ_n)`.
#[derive(Debug, Clone)]
pub struct CyclotomicMatrix {
    field: Arc<CyclotomicField>,
    entries: Vec<Vec<Element>>,
}

impl CyclotomicMatrix {
    pub fn new(field: Arc<CyclotomicField>, entries: Vec<Vec<Element>>) -> Result<Self, SignatureError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(SignatureError::NotSquare);
        }
        Ok(Self { field, entries })
    }

    /// Embed an integer matrix into `Q`.
    pub fn from_integers(m: &[Vec<i64>]) -> Result<Self, SignatureError> {
        let field = Arc::new(CyclotomicField::rationals());
        let entries = m.iter().map(|r| r.iter().map(|&x| field.from_integer(x)).collect()).collect();
        Self::new(field, entries)
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i][j]
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let entries = self.entries.iter().map(|r| r.iter().map(|x| self.field.scale(x, c)).collect()).collect();
        Self { field: self.field.clone(), entries }
    }

    pub fn check_hermitian(&self) -> Result<(), SignatureError> {
        let n = self.dim();
        for i in 0..n {
            for j in i..n {
                if self.field.conj(&self.entries[j][i]) != self.entries[i][j] {
                    return Err(SignatureError::NotHermitian(i, j));
                }
            }
        }
        Ok(())
    }
}

/// Decide the sign of a real field element, refining precision until certified.
pub fn certify_real_sign(field: &CyclotomicField, x: &Element) -> Result<CertifiedSign, SignatureError> {
    if field.is_zero(x) {
        return Ok(CertifiedSign { value: Sign::Zero, witness: SignWitness::ExactZero });
    }
    let mut bits = INITIAL_PRECISION_BITS;
    while bits <= MAX_PRECISION_BITS {
        let enclosure = enclose_real_part(field, x, bits);
        match enclosure.sign() {
            Some(1) => return Ok(CertifiedSign { value: Sign::Positive, witness: SignWitness::Interval(enclosure) }),
            Some(_) => return Ok(CertifiedSign { value: Sign::Negative, witness: SignWitness::Interval(enclosure) }),
            None => bits *= 2,
        }
    }
    Err(SignatureError::PrecisionExhausted(MAX_PRECISION_BITS))
}

/// Enclosure of `Re(Σ c_k ζ^k) = Σ c_k cos(2πk/n)`.
fn enclose_real_part(field: &CyclotomicField, x: &Element, bits: u32) -> DyadicInterval {
    let n = field.order();
    let mut acc = DyadicInterval::exact_integer(0, bits);
    for (k, c) in x.iter().enumerate() {
        if num_traits::Zero::is_zero(c) {
            continue;
        }
        let cos = cos_two_pi_fraction(k as i64, n, bits);
        let coeff = DyadicInterval::from_rational(c, bits);
        acc = acc.add(&coeff.mul(&cos));
    }
    acc
}

/// Result of a certified inertia computation, with one certificate per 1×1 pivot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureCertificate {
    pub inertia: Inertia,
    pub pivot_signs: Vec<CertifiedSign>,
    pub two_by_two_pivots: usize,
}

/// Exact inertia of a Hermitian matrix over `Q(ζ_n)`.
pub fn certified_signature(h: &CyclotomicMatrix) -> Result<Inertia, SignatureError> {
    certified_signature_with_certificate(h).map(|c| c.inertia)
}

pub fn certified_signature_with_certificate(h: &CyclotomicMatrix) -> Result<SignatureCertificate, SignatureError> {
    h.check_hermitian()?;
    let k = h.field();
    let mut a = h.entries.clone();
    let mut active: Vec<usize> = (0..h.dim()).collect();
    let mut inertia = Inertia::default();
    let mut pivot_signs = Vec::new();
    let mut two_by_two = 0;

    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !k.is_zero(&a[i][i])) {
            let p = active.remove(pos);
            let d = a[p][p].clone();
            debug_assert!(k.is_real(&d));
            let cert = certify_real_sign(k, &d)?;
            match cert.value {
                Sign::Positive => inertia.positive += 1,
                Sign::Negative => inertia.negative += 1,
                Sign::Zero => unreachable!("pivot chosen nonzero"),
            }
            pivot_signs.push(cert);
            let d_inv = k.inv(&d).expect("nonzero pivot");
            // A_rc ← A_rc − A_rp d⁻¹ A_pc
            let row_p: Vec<Element> = active.iter().map(|&c| k.mul(&d_inv, &a[p][c])).collect();
            for &r in &active {
                if k.is_zero(&a[r][p]) {
                    continue;
                }
                let arp = a[r][p].clone();
                for (ci, &c) in active.iter().enumerate() {
                    let upd = k.mul(&arp, &row_p[ci]);
                    a[r][c] = k.sub(&a[r][c], &upd);
                }
            }
            continue;
        }
        let pair = active
            .iter()
            .enumerate()
            .flat_map(|(x, &i)| active[x + 1..].iter().map(move |&j| (i, j)))
            .find(|&(i, j)| !k.is_zero(&a[i][j]));
        let Some((i, j)) = pair else {
            inertia.zero += active.len();
            break;
        };
        // Block [[0, b], [b̄, 0]] with inverse [[0, 1/b̄], [1/b, 0]]; inertia (1, 1).
        active.retain(|&x| x != i && x != j);
        inertia.positive += 1;
        inertia.negative += 1;
        two_by_two += 1;
        let b_inv = k.inv(&a[i][j]).expect("nonzero off-diagonal");
        let bbar_inv = k.inv(&a[j][i]).expect("nonzero off-diagonal");
        // A_rc ← A_rc − A_ri (1/b̄) A_jc − A_rj (1/b) A_ic
        let row_j: Vec<Element> = active.iter().map(|&c| k.mul(&bbar_inv, &a[j][c])).collect();
        let row_i: Vec<Element> = active.iter().map(|&c| k.mul(&b_inv, &a[i][c])).collect();
        for &r in &active {
            let (ari, arj) = (a[r][i].clone(), a[r][j].clone());
            if k.is_zero(&ari) && k.is_zero(&arj) {
                continue;
            }
            for (ci, &c) in active.iter().enumerate() {
                let upd = k.add(&k.mul(&ari, &row_j[ci]), &k.mul(&arj, &row_i[ci]));
                a[r][c] = k.sub(&a[r][c], &upd);
            }
        }
    }
    Ok(SignatureCertificate { inertia, pivot_signs, two_by_two_pivots: two_by_two })
}

/// Convenience for rational symmetric integer matrices.
pub fn integer_inertia(m: &[Vec<i64>]) -> Result<Inertia, SignatureError> {
    certified_signature(&CyclotomicMatrix::from_integers(m)?)
}

/// Used by callers that need an exact positive scale factor.
pub fn positive_rational(n: i64, d: i64) -> BigRational {
    assert!(n > 0 && d > 0);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
