//! Knot invariants computed from Seifert matrices.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::cyclotomic::CyclotomicField;
use crate::exact::intmat::{berkowitz_det, integer_det};
use crate::exact::signature::{certified_signature, CyclotomicMatrix, Inertia, SignatureError};
use crate::exact::{F2Matrix, LaurentError, LaurentPolynomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("Seifert matrix is not square")]
    NotSquare,
    #[error("Seifert matrix has odd size {0}")]
    OddSize(usize),
    #[error("det(S - S^T) = {0}, expected 1")]
    NotUnimodular(BigInt),
    #[error("Alexander polynomial: {0}")]
    Alexander(#[from] LaurentError),
    #[error("torus knot parameters ({0}, {1}) are not coprime")]
    NotCoprime(i64, i64),
    #[error("torus knot parameters ({0}, {1}) must both be at least 2")]
    InvalidTorusParameters(i64, i64),
    #[error("S + S^T is singular mod 2")]
    DegeneratePolarization,
    #[error("spectrum order must be positive")]
    ZeroOrder,
    #[error("spectrum entry 0 is {0}, expected 0")]
    NonzeroTrivialSignature(i64),
    #[error("spectrum is not conjugation-symmetric at m = {0}")]
    AsymmetricSpectrum(usize),
    #[error("spectrum has {got} entries, expected {expected}")]
    SpectrumLength { expected: usize, got: usize },
    #[error("stabilization vector has length {got}, expected {expected}")]
    StabilizationLength { expected: usize, got: usize },
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// Integer Seifert matrix of even size `2g`; size 0 is the unknot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for SeifertMatrix {
    type Error = KnotError;

    fn try_from(entries: Vec<Vec<i64>>) -> Result<Self, KnotError> {
        Self::new(entries)
    }
}

impl From<SeifertMatrix> for Vec<Vec<i64>> {
    fn from(s: SeifertMatrix) -> Self {
        s.entries
    }
}

impl SeifertMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<Self, KnotError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(KnotError::NotSquare);
        }
        if n % 2 != 0 {
            return Err(KnotError::OddSize(n));
        }
        let s = Self { entries };
        let d = integer_det(&s.antisymmetrization());
        if !d.is_one() {
            return Err(KnotError::NotUnimodular(d));
        }
        Ok(s)
    }

    pub fn unknot() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn genus(&self) -> usize {
        self.size() / 2
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn transpose(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.entries[j][i]).collect()).collect()
    }

    /// `S − Sᵀ`
    pub fn antisymmetrization(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.entries[i][j] - self.entries[j][i]).collect()).collect()
    }

    /// `S + Sᵀ`
    pub fn symmetrization(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.entries[i][j] + self.entries[j][i]).collect()).collect()
    }

    /// `PᵀSP`; `p` must be unimodular, which is checked through the Seifert invariant.
    pub fn congruence(&self, p: &[Vec<i64>]) -> Result<Self, KnotError> {
        let n = self.size();
        let sp: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.entries[i][k] * p[k][j]).sum()).collect()).collect();
        let ptsp = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| p[k][i] * sp[k][j]).sum()).collect()).collect();
        Self::new(ptsp)
    }

    /// Add a hyperbolic pair: `[[S, ξ, 0], [0, 0, 1], [0, 0, 0]]`.
    pub fn stabilize(&self, xi: &[i64]) -> Result<Self, KnotError> {
        let n = self.size();
        if xi.len() != n {
            return Err(KnotError::StabilizationLength { expected: n, got: xi.len() });
        }
        let mut m = vec![vec![0i64; n + 2]; n + 2];
        for i in 0..n {
            m[i][..n].copy_from_slice(&self.entries[i]);
            m[i][n] = xi[i];
        }
        m[n][n + 1] = 1;
        Self::new(m)
    }
}

/// `−Sᵀ`
pub fn mirror(s: &SeifertMatrix) -> SeifertMatrix {
    let entries = s.transpose().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect();
    SeifertMatrix { entries }
}

/// Block-diagonal sum.
pub fn connected_sum(a: &SeifertMatrix, b: &SeifertMatrix) -> SeifertMatrix {
    let (n, m) = (a.size(), b.size());
    let mut entries = vec![vec![0i64; n + m]; n + m];
    for i in 0..n {
        entries[i][..n].copy_from_slice(&a.entries[i]);
    }
    for i in 0..m {
        entries[n + i][n..].copy_from_slice(&b.entries[i]);
    }
    SeifertMatrix { entries }
}

/// Normalized `det(t^{1/2}S − t^{−1/2}Sᵀ)`, computed as `t^{−g} det(tS − Sᵀ)`.
pub fn alexander_polynomial(s: &SeifertMatrix) -> Result<LaurentPolynomial, KnotError> {
    let n = s.size();
    let m: Vec<Vec<LaurentPolynomial>> = (0..n)
        .map(|i| (0..n).map(|j| LaurentPolynomial::from_terms([(1, s.get(i, j)), (0, -s.get(j, i))])).collect())
        .collect();
    let det = berkowitz_det(&m).shift(-(s.genus() as i32));
    Ok(det.normalize_symmetric()?)
}

/// `(1 − ω)S + (1 − ω̄)Sᵀ` with `ω = e^{2πia}`, over `Q(ζ_n)` for `a = m/n`.
pub fn tl_form(s: &SeifertMatrix, a: Rational) -> CyclotomicMatrix {
    let (m, n) = reduce_fraction(a);
    let k = Arc::new(CyclotomicField::new(n as u32));
    let one = k.one();
    let u = k.sub(&one, &k.zeta_pow(m));
    let ubar = k.conj(&u);
    let size = s.size();
    let entries = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let x = k.scale(&u, &big(s.get(i, j)));
                    let y = k.scale(&ubar, &big(s.get(j, i)));
                    k.add(&x, &y)
                })
                .collect()
        })
        .collect();
    CyclotomicMatrix::new(k, entries).expect("square by construction")
}

fn big(x: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(BigInt::from(x))
}

/// `a mod 1` as `(m, n)` with `0 ≤ m < n`, `gcd(m, n) = 1`.
fn reduce_fraction(a: Rational) -> (i64, i64) {
    let n = *a.denom();
    let m = a.numer().rem_euclid(n);
    (m, n)
}

pub fn tl_inertia(s: &SeifertMatrix, a: Rational) -> Result<Inertia, KnotError> {
    let (m, _) = reduce_fraction(a);
    if m == 0 {
        return Ok(Inertia { positive: 0, negative: 0, zero: s.size() });
    }
    Ok(certified_signature(&tl_form(s, a))?)
}

/// Tristram–Levine signature at `e^{2πia}`.
pub fn tl_signature(s: &SeifertMatrix, a: Rational) -> Result<i64, KnotError> {
    Ok(tl_inertia(s, a)?.signature())
}

/// Entry `m` is `sign^{m/n}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SignatureSpectrum {
    values: Vec<i64>,
}

impl TryFrom<Vec<i64>> for SignatureSpectrum {
    type Error = KnotError;

    fn try_from(values: Vec<i64>) -> Result<Self, KnotError> {
        Self::new(values)
    }
}

impl From<SignatureSpectrum> for Vec<i64> {
    fn from(s: SignatureSpectrum) -> Self {
        s.values
    }
}

impl SignatureSpectrum {
    pub fn new(values: Vec<i64>) -> Result<Self, KnotError> {
        let n = values.len();
        if n == 0 {
            return Err(KnotError::ZeroOrder);
        }
        if values[0] != 0 {
            return Err(KnotError::NonzeroTrivialSignature(values[0]));
        }
        if let Some(m) = (1..n).find(|&m| values[m] != values[n - m]) {
            return Err(KnotError::AsymmetricSpectrum(m));
        }
        Ok(Self { values })
    }

    pub fn zero(n: usize) -> Result<Self, KnotError> {
        Self::new(vec![0; n])
    }

    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }

    /// Sum over `m ≤ n/2`, doubling the terms paired by `m ↔ n − m`.
    pub fn folded_total(&self) -> i64 {
        let n = self.order();
        (1..=n / 2).map(|m| if 2 * m == n { self.values[m] } else { 2 * self.values[m] }).sum()
    }

    pub fn negated(&self) -> Self {
        Self { values: self.values.iter().map(|v| -v).collect() }
    }
}

pub fn signature_spectrum(s: &SeifertMatrix, n: usize) -> Result<SignatureSpectrum, KnotError> {
    if n == 0 {
        return Err(KnotError::ZeroOrder);
    }
    let mut values = vec![0i64; n];
    // sign^{m/n} = sign^{(n−m)/n}; compute the lower half only.
    for m in 1..=n / 2 {
        let v = tl_signature(s, Rational::new(m as i64, n as i64))?;
        values[m] = v;
        values[n - m] = v;
    }
    SignatureSpectrum::new(values)
}

/// `xᵀSx mod 2`
fn quadratic_form(s: &SeifertMatrix, x: &[bool]) -> bool {
    let n = s.size();
    let mut acc = 0i64;
    for i in (0..n).filter(|&i| x[i]) {
        for j in (0..n).filter(|&j| x[j]) {
            acc += s.get(i, j);
        }
    }
    acc.rem_euclid(2) == 1
}

fn xor_into(v: &mut [bool], w: &[bool]) {
    for (a, b) in v.iter_mut().zip(w) {
        *a ^= b;
    }
}

/// Symplectic basis `(a_i, b_i)` of a nondegenerate alternating form over GF(2).
pub fn symplectic_basis(form: &F2Matrix) -> Option<Vec<(Vec<bool>, Vec<bool>)>> {
    let n = form.rows();
    if form.rank() != n {
        return None;
    }
    let mut pool: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    let mut pairs = Vec::new();
    while let Some(a) = pool.pop() {
        let pos = pool.iter().position(|v| form.bilinear(&a, v))?;
        let b = pool.remove(pos);
        for v in pool.iter_mut() {
            // v ← v + B(v,b)·a + B(v,a)·b, making v orthogonal to both
            let (vb, va) = (form.bilinear(v, &b), form.bilinear(v, &a));
            if vb {
                xor_into(v, &a);
            }
            if va {
                xor_into(v, &b);
            }
        }
        pairs.push((a, b));
    }
    Some(pairs)
}

/// Arf invariant of `x ↦ xᵀSx mod 2`.
pub fn arf_invariant(s: &SeifertMatrix) -> Result<u8, KnotError> {
    let polarization = F2Matrix::from_integers(&s.symmetrization());
    let basis = symplectic_basis(&polarization).ok_or(KnotError::DegeneratePolarization)?;
    let arf = basis.iter().filter(|(a, b)| quadratic_form(s, a) && quadratic_form(s, b)).count();
    Ok((arf % 2) as u8)
}

fn fence(k: usize) -> Vec<Vec<i64>> {
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    if i == j {
                        1
                    } else if j == i + 1 {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

/// Seifert matrix of the positive `(p, q)` torus knot from the fiber-surface basis,
/// `−(B_{p−1} ⊗ B_{q−1})` with `B_k` upper bidiagonal `(1, −1)`.
pub fn torus_knot_seifert(p: i64, q: i64) -> Result<SeifertMatrix, KnotError> {
    if p < 2 || q < 2 {
        return Err(KnotError::InvalidTorusParameters(p, q));
    }
    if p.gcd(&q) != 1 {
        return Err(KnotError::NotCoprime(p, q));
    }
    let (a, b) = (fence(p as usize - 1), fence(q as usize - 1));
    let (n, m) = (a.len(), b.len());
    let mut entries = vec![vec![0i64; n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    entries[i * m + k][j * m + l] = -a[i][j] * b[k][l];
                }
            }
        }
    }
    SeifertMatrix::new(entries)
}

/// Named knots with explicit matrices.
pub mod presets {
    use super::*;

    pub fn unknot() -> SeifertMatrix {
        SeifertMatrix::unknot()
    }

    /// Signature −2 at `a = 1/2`.
    pub fn right_trefoil() -> SeifertMatrix {
        SeifertMatrix { entries: vec![vec![-1, 1], vec![0, -1]] }
    }

    /// Signature +2 at `a = 1/2`; `−1` surgery gives `Σ(2,3,5)` with `λ = −1`.
    pub fn left_trefoil() -> SeifertMatrix {
        SeifertMatrix { entries: vec![vec![1, 0], vec![1, 1]] }
    }

    pub fn figure_eight() -> SeifertMatrix {
        SeifertMatrix { entries: vec![vec![1, 1], vec![0, -1]] }
    }

    /// `Δ = 1`, of Whitehead-double type.
    pub fn trivial_alexander() -> SeifertMatrix {
        SeifertMatrix { entries: vec![vec![-1, 1], vec![0, 0]] }
    }

    pub const NAMES: [&str; 5] = ["unknot", "left-trefoil", "right-trefoil", "figure-eight", "trivial-alexander"];

    /// Look up a preset by name; `torus(p,q)` selects a torus knot.
    pub fn by_name(name: &str) -> Option<Result<SeifertMatrix, KnotError>> {
        let s = match name.trim() {
            "unknot" => unknot(),
            "left-trefoil" => left_trefoil(),
            "right-trefoil" | "trefoil" => right_trefoil(),
            "figure-eight" => figure_eight(),
            "trivial-alexander" => trivial_alexander(),
            other => {
                let inner = other.strip_prefix("torus(")?.strip_suffix(')')?;
                let (p, q) = inner.split_once(',')?;
                let (p, q) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
                return Some(torus_knot_seifert(p, q));
            }
        };
        Some(Ok(s))
    }
}

/// Everything computed by [`knot_summary`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotSummary {
    pub alexander: LaurentPolynomial,
    pub alexander_second_derivative: i64,
    pub alexander_at_minus_one: i64,
    pub arf: u8,
    pub spectrum: SignatureSpectrum,
}

pub fn knot_summary(s: &SeifertMatrix, n: usize) -> Result<KnotSummary, KnotError> {
    let alexander = alexander_polynomial(s)?;
    let at_minus_one = alexander.eval_i128(-1).expect("t = -1 always evaluates") as i64;
    Ok(KnotSummary {
        alexander_second_derivative: alexander.second_derivative_at_one(),
        alexander_at_minus_one: at_minus_one,
        alexander,
        arf: arf_invariant(s)?,
        spectrum: signature_spectrum(s, n)?,
    })
}

/// True iff `Δ(−1) ≡ ±1 (mod 8)`.
pub fn murasugi_trivial(alexander: &LaurentPolynomial) -> bool {
    let v = alexander.eval_i128(-1).expect("t = -1 always evaluates").rem_euclid(8);
    v == 1 || v == 7
}

impl Zero for SignatureSpectrum {
    fn zero() -> Self {
        Self { values: vec![0] }
    }

    fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

impl std::ops::Add for SignatureSpectrum {
    type Output = Self;

    /// Entrywise sum, as for connected sums; orders must agree.
    fn add(self, o: Self) -> Self {
        assert_eq!(self.order(), o.order(), "spectra of different orders");
        Self { values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect() }
    }
}
