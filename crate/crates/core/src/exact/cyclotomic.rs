//! Exact arithmetic in the cyclotomic field `Q(ζ_n)`.
//!
//! Elements are rational coefficient vectors in the power basis `1, ζ, …, ζ^{d−1}`,
//! `d = φ(n)`, kept reduced modulo the cyclotomic polynomial `Φ_n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::laurent::LaurentPolynomial;

pub type Element = Vec<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicField {
    order: u32,
    /// Monic `Φ_n`, lowest degree first; length `d + 1`.
    modulus: Vec<i64>,
}

/// Integer polynomial `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic order must be positive");
    // x^n − 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (i, &b) in den.iter().enumerate() {
            rem[k + i] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

impl CyclotomicField {
    pub fn new(order: u32) -> Self {
        Self { order, modulus: cyclotomic_polynomial(order) }
    }

    /// The field `Q` (order 1).
    pub fn rationals() -> Self {
        Self::new(1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> Element {
        vec![BigRational::zero(); self.degree()]
    }

    pub fn one(&self) -> Element {
        self.from_integer(1)
    }

    pub fn from_integer(&self, c: i64) -> Element {
        self.from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn from_rational(&self, c: BigRational) -> Element {
        let mut e = self.zero();
        e[0] = c;
        e
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> Element {
        let n = self.order as i64;
        let k = k.rem_euclid(n) as usize;
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = BigRational::one();
        self.reduce(coeffs)
    }

    /// Reduce an arbitrary-length coefficient vector modulo `Φ_n`.
    pub fn reduce(&self, mut coeffs: Vec<BigRational>) -> Element {
        let d = self.degree();
        for k in (d..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..d {
                let m = self.modulus[i];
                if m != 0 {
                    coeffs[k - d + i] -= &c * BigRational::from_integer(BigInt::from(m));
                }
            }
        }
        coeffs.resize(d, BigRational::zero());
        coeffs
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        a.iter().all(Zero::is_zero)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &Element) -> Element {
        a.iter().map(|x| -x).collect()
    }

    pub fn scale(&self, a: &Element, c: &BigRational) -> Element {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let d = self.degree();
        if d == 1 {
            return vec![&a[0] * &b[0]];
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        self.reduce(prod)
    }

    /// Complex conjugation `ζ ↦ ζ^{-1}`.
    pub fn conj(&self, a: &Element) -> Element {
        let n = self.order as usize;
        let mut out = vec![BigRational::zero(); n.max(1)];
        for (k, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out[(n - k % n) % n] += c;
            }
        }
        self.reduce(out)
    }

    pub fn is_real(&self, a: &Element) -> bool {
        self.conj(a) == *a
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self, a: &Element) -> Option<Element> {
        if self.is_zero(a) {
            return None;
        }
        if self.degree() == 1 {
            return Some(vec![a[0].recip()]);
        }
        let modulus: Vec<BigRational> =
            self.modulus.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        // Invariant: s·a ≡ r (mod Φ_n) for both (r0, s0) and (r1, s1).
        let (mut r0, mut s0) = (trim(modulus), Vec::<BigRational>::new());
        let (mut r1, mut s1) = (trim(a.clone()), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Φ_n is irreducible
        let c = r1[0].recip();
        let inv: Vec<BigRational> = s1.iter().map(|x| x * &c).collect();
        Some(self.reduce(inv))
    }

    /// Exact evaluation `p(ζ^k)`.
    pub fn eval_laurent(&self, p: &LaurentPolynomial, k: i64) -> Element {
        let mut acc = self.zero();
        for (e, c) in p.terms() {
            let term = self.scale(&self.zeta_pow(k * e as i64), &BigRational::from_integer(BigInt::from(c)));
            acc = self.add(&acc, &term);
        }
        acc
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigRational::zero());
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    let out = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    trim(out)
}

/// Division with remainder in `Q[x]`; `b` must be trimmed and nonzero.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], trim(rem));
    }
    let lead = b[db].recip();
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (i, y) in b.iter().enumerate() {
            rem[k + i] -= &c * y;
        }
        q[k] = c;
    }
    rem.truncate(db.max(1));
    (trim(q), trim(rem))
}

/// Largest absolute coefficient, used for rough magnitude bounds.
pub fn max_abs_coefficient(a: &Element) -> BigRational {
    a.iter().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(CyclotomicField::new(11).degree(), 10);
    }

    #[test]
    fn zeta_has_order_n() {
        for n in 1..=12 {
            let k = CyclotomicField::new(n);
            assert_eq!(k.zeta_pow(n as i64), k.one());
            assert_eq!(k.mul(&k.zeta_pow(1), &k.zeta_pow(-1)), k.one());
            if n > 1 {
                assert_ne!(k.zeta_pow(1), k.one());
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        for n in [1, 2, 3, 5, 7, 8, 12] {
            let k = CyclotomicField::new(n);
            // 1 − ζ is invertible for n ≥ 2
            let a = k.sub(&k.one(), &k.zeta_pow(1));
            if n == 1 {
                assert!(k.inv(&a).is_none());
                continue;
            }
            let b = k.add(&a, &k.scale(&k.zeta_pow(2), &q(3)));
            for x in [&a, &b] {
                let xi = k.inv(x).unwrap();
                assert_eq!(k.mul(x, &xi), k.one(), "n = {n}");
            }
        }
    }

    #[test]
    fn conjugation_is_an_involution() {
        let k = CyclotomicField::new(7);
        let a = k.add(&k.zeta_pow(3), &k.scale(&k.zeta_pow(5), &q(-2)));
        assert_eq!(k.conj(&k.conj(&a)), a);
        let r = k.add(&a, &k.conj(&a));
        assert!(k.is_real(&r));
        assert!(!k.is_real(&a));
    }

    #[test]
    fn alexander_of_trefoil_vanishes_at_primitive_sixth_root() {
        let delta = LaurentPolynomial::from_terms([(1, 1), (0, -1), (-1, 1)]);
        let k = CyclotomicField::new(6);
        assert!(k.is_zero(&k.eval_laurent(&delta, 1)));
        assert!(!k.is_zero(&k.eval_laurent(&delta, 2)));
    }
}
