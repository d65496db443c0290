//! Integer Laurent polynomials in one variable `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("no unit multiple of {0} is palindromic")]
    NotSymmetrizable(String),
    #[error("|p(1)| = {0}, expected 1")]
    NotUnimodularAtOne(i64),
}

/// A finitely supported map `exponent -> coefficient`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "BTreeMap<i32, i64>", into = "BTreeMap<i32, i64>")]
pub struct LaurentPolynomial {
    terms: BTreeMap<i32, i64>,
}

impl From<BTreeMap<i32, i64>> for LaurentPolynomial {
    fn from(terms: BTreeMap<i32, i64>) -> Self {
        Self::from_terms(terms)
    }
}

impl From<LaurentPolynomial> for BTreeMap<i32, i64> {
    fn from(p: LaurentPolynomial) -> Self {
        p.terms
    }
}

impl LaurentPolynomial {
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::default();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exponent: i32, coefficient: i64) -> Self {
        Self::from_terms([(exponent, coefficient)])
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn coefficient(&self, exponent: i32) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `t^k · self`
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// `p(t^{-1})`
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    /// Value at `t = 1`, the coefficient sum.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Evaluation at an integer. Negative exponents are only defined for `t = ±1`.
    pub fn eval_i128(&self, t: i128) -> Option<i128> {
        let mut acc = 0i128;
        for (e, c) in self.terms() {
            if e < 0 && t.abs() != 1 {
                return None;
            }
            // for t = ±1, t^{-k} = t^k
            let term = (c as i128).checked_mul(t.checked_pow(e.unsigned_abs())?)?;
            acc = acc.checked_add(term)?;
        }
        Some(acc)
    }

    /// `p'(1) = Σ e·c_e`
    pub fn first_derivative_at_one(&self) -> i64 {
        self.terms().map(|(e, c)| e as i64 * c).sum()
    }

    /// `p''(1) = Σ e(e−1)·c_e`
    pub fn second_derivative_at_one(&self) -> i64 {
        self.terms().map(|(e, c)| (e as i64) * (e as i64 - 1) * c).sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.terms().all(|(e, c)| self.coefficient(-e) == c)
    }

    /// Multiply by `±t^m` so that the result `q` satisfies `q(1) = 1` and `q(t) = q(t^{-1})`.
    pub fn normalize_symmetric(&self) -> Result<Self, LaurentError> {
        let (lo, hi) = match (self.min_exponent(), self.max_exponent()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Err(LaurentError::NotUnimodularAtOne(0)),
        };
        if (lo + hi) % 2 != 0 {
            return Err(LaurentError::NotSymmetrizable(self.to_string()));
        }
        let centered = self.shift(-(lo + hi) / 2);
        if !centered.is_palindromic() {
            return Err(LaurentError::NotSymmetrizable(self.to_string()));
        }
        match centered.eval_one() {
            1 => Ok(centered),
            -1 => Ok(-centered),
            v => Err(LaurentError::NotUnimodularAtOne(v.abs())),
        }
    }
}

/// Free-function form of [`LaurentPolynomial::normalize_symmetric`].
pub fn laurent_normalize_symmetric(p: &LaurentPolynomial) -> Result<LaurentPolynomial, LaurentError> {
    p.normalize_symmetric()
}

/// Free-function form of [`LaurentPolynomial::second_derivative_at_one`].
pub fn second_derivative_at_one(p: &LaurentPolynomial) -> i64 {
    p.second_derivative_at_one()
}

impl Zero for LaurentPolynomial {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPolynomial {
    fn one() -> Self {
        Self::constant(1)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::default();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        self.scale(-1)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: Self) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in self.terms.iter().rev() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        Ok(())
    }
}
