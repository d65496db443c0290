//! Outward-rounded dyadic interval arithmetic, enough to enclose `cos(2πk/n)` to any precision.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// The closed interval `[lo·2^-bits, hi·2^-bits]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyadicInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn floor_shift(x: &BigInt, bits: u32) -> BigInt {
    x.div_floor(&pow2(bits))
}

fn ceil_shift(x: &BigInt, bits: u32) -> BigInt {
    -((-x).div_floor(&pow2(bits)))
}

impl DyadicInterval {
    pub fn exact_integer(n: i64, bits: u32) -> Self {
        let v = BigInt::from(n) << bits;
        Self { lo: v.clone(), hi: v, bits }
    }

    pub fn from_rational(r: &BigRational, bits: u32) -> Self {
        let scaled = r.numer() << bits;
        let (lo, hi) = (scaled.div_floor(r.denom()), -((-&scaled).div_floor(r.denom())));
        Self { lo, hi, bits }
    }

    fn with(lo: BigInt, hi: BigInt, bits: u32) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi, bits }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// `Some(±1)` once the interval excludes zero.
    pub fn sign(&self) -> Option<i8> {
        if self.lo.is_positive() {
            Some(1)
        } else if self.hi.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        Self::with(&self.lo + &o.lo, &self.hi + &o.hi, self.bits)
    }

    pub fn neg(&self) -> Self {
        Self::with(-&self.hi, -&self.lo, self.bits)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let min = p.iter().min().unwrap();
        let max = p.iter().max().unwrap();
        Self::with(floor_shift(min, self.bits), ceil_shift(max, self.bits), self.bits)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k >= 0 {
            Self::with(a, b, self.bits)
        } else {
            Self::with(b, a, self.bits)
        }
    }

    /// Division by a positive integer.
    pub fn div_int(&self, k: u64) -> Self {
        let k = BigInt::from(k);
        Self::with(self.lo.div_floor(&k), -((-&self.hi).div_floor(&k)), self.bits)
    }

    /// Widen symmetrically by `err` units in the last place.
    pub fn widen(&self, err: &BigInt) -> Self {
        Self::with(&self.lo - err, &self.hi + err, self.bits)
    }

    pub fn max_abs(&self) -> BigInt {
        self.lo.abs().max(self.hi.abs())
    }
}

/// Enclosure of `atan(1/k)` for integer `k ≥ 2`.
fn atan_inverse(k: u64, bits: u32) -> DyadicInterval {
    let one = pow2(bits);
    let k2 = BigInt::from(k) * BigInt::from(k);
    let mut power = BigInt::from(k); // k^{2j+1}
    let mut acc = DyadicInterval::exact_integer(0, bits);
    let mut j: u64 = 0;
    loop {
        let denom = &power * BigInt::from(2 * j + 1);
        let t = one.div_floor(&denom);
        // term ∈ [t, t+1]
        let term = DyadicInterval::with(t.clone(), &t + 1, bits);
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        if t.is_zero() {
            // remaining alternating tail is bounded by the next term < 1 ulp
            return acc.widen(&BigInt::one());
        }
        power *= &k2;
        j += 1;
    }
}

/// Enclosure of `π` via Machin's formula.
pub fn pi(bits: u32) -> DyadicInterval {
    let a = atan_inverse(5, bits).mul_int(16);
    let b = atan_inverse(239, bits).mul_int(4);
    a.sub(&b)
}

/// Enclosure of `cos(2πk/n)`.
pub fn cos_two_pi_fraction(k: i64, n: u32, bits: u32) -> DyadicInterval {
    let n_i = n as i64;
    let mut k = k.rem_euclid(n_i);
    if 2 * k > n_i {
        k -= n_i; // |θ| ≤ π
    }
    let k = k.abs();
    if k == 0 {
        return DyadicInterval::exact_integer(1, bits);
    }
    // Work with guard bits, then round outward to the requested precision.
    let g = bits + 32;
    let theta = pi(g).mul_int(2 * k).div_int(n as u64);
    let theta2 = theta.mul(&theta);
    let eps = BigInt::one();
    let mut term = DyadicInterval::exact_integer(1, g);
    let mut sum = term.clone();
    let mut j: u64 = 1;
    loop {
        // term_j = (−1)^j θ^{2j}/(2j)!
        term = term.mul(&theta2).div_int((2 * j - 1) * (2 * j)).neg();
        let decreasing = 16 < (2 * j + 1) * (2 * j + 2); // θ² < 10 < (2j+1)(2j+2)
        if decreasing && term.max_abs() <= eps {
            // Lagrange remainder |R| ≤ θ^{2j}/(2j)!, enclosed by |term_j|
            sum = sum.widen(&(term.max_abs() + 1));
            break;
        }
        sum = sum.add(&term);
        j += 1;
    }
    DyadicInterval::with(floor_shift(&sum.lo, 32), ceil_shift(&sum.hi, 32), bits)
}
