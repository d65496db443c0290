//! Floer Lefschetz numbers from graded endomorphism data.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::Rational;

pub const GRADINGS: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloerError {
    #[error("degree {degree}: map has size {got}, rank is {expected}")]
    SizeMismatch { degree: usize, expected: usize, got: usize },
    #[error("Lefschetz number {0} is odd")]
    OddLefschetz(i64),
    #[error("Lefschetz number {0} is not an integer")]
    NonIntegralTrace(String),
    #[error("degree {degree} has rank {rank}; sign patterns need ranks 0 or 1")]
    RankTooLarge { degree: usize, rank: usize },
    #[error("no sign pattern reaches Lefschetz number {0}")]
    NoSolution(i64),
    #[error("{} sign patterns reach the target", .0.len())]
    AmbiguousSolution(Vec<SignPattern>),
}

/// The induced map `W_k` on `I_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GradedMap {
    Identity,
    MinusIdentity,
    Matrix(Vec<Vec<Rational>>),
}

impl GradedMap {
    pub fn trace(&self, rank: usize) -> Rational {
        match self {
            GradedMap::Identity => Rational::from_integer(rank as i64),
            GradedMap::MinusIdentity => Rational::from_integer(-(rank as i64)),
            GradedMap::Matrix(m) => (0..m.len()).map(|i| m[i][i]).sum(),
        }
    }

    fn size(&self, rank: usize) -> Option<usize> {
        match self {
            GradedMap::Matrix(m) => (m.iter().all(|r| r.len() == m.len())).then_some(m.len()),
            _ => Some(rank),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloerData {
    pub ranks: [usize; GRADINGS],
    pub maps: [GradedMap; GRADINGS],
}

impl FloerData {
    pub fn new(ranks: [usize; GRADINGS], maps: [GradedMap; GRADINGS]) -> Result<Self, FloerError> {
        for (k, map) in maps.iter().enumerate() {
            let got = map.size(ranks[k]).unwrap_or(usize::MAX);
            if got != ranks[k] {
                return Err(FloerError::SizeMismatch { degree: k, expected: ranks[k], got });
            }
        }
        Ok(Self { ranks, maps })
    }

    pub fn uniform(ranks: [usize; GRADINGS], map: GradedMap) -> Result<Self, FloerError> {
        Self::new(ranks, std::array::from_fn(|_| map.clone()))
    }

    /// Degreewise direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let ranks = std::array::from_fn(|k| self.ranks[k] + other.ranks[k]);
        let maps = std::array::from_fn(|k| {
            let (a, b) = (self.expanded(k), other.expanded(k));
            let (n, m) = (a.len(), b.len());
            let mut out = vec![vec![Rational::zero(); n + m]; n + m];
            for i in 0..n {
                out[i][..n].copy_from_slice(&a[i]);
            }
            for i in 0..m {
                out[n + i][n..].copy_from_slice(&b[i]);
            }
            GradedMap::Matrix(out)
        });
        Self { ranks, maps }
    }

    /// `W_k` as an explicit matrix.
    pub fn expanded(&self, k: usize) -> Vec<Vec<Rational>> {
        let n = self.ranks[k];
        let diag = |c: Rational| -> Vec<Vec<Rational>> {
            (0..n).map(|i| (0..n).map(|j| if i == j { c } else { Rational::zero() }).collect()).collect()
        };
        match &self.maps[k] {
            GradedMap::Identity => diag(Rational::one()),
            GradedMap::MinusIdentity => diag(-Rational::one()),
            GradedMap::Matrix(m) => m.clone(),
        }
    }
}

/// `Σ_k (−1)^k tr(W_k)`
pub fn lefschetz(f: &FloerData) -> Result<i64, FloerError> {
    let mut total = Rational::zero();
    for k in 0..GRADINGS {
        let t = f.maps[k].trace(f.ranks[k]);
        total += if k % 2 == 0 { t } else { -t };
    }
    if !total.is_integer() {
        return Err(FloerError::NonIntegralTrace(crate::exact::rational::format_rational(&total)));
    }
    Ok(total.to_integer())
}

pub fn check_evenness(f: &FloerData) -> Result<bool, FloerError> {
    Ok(lefschetz(f)? % 2 == 0)
}

/// `Lef(W)/2`
pub fn lambda_fo_from_lefschetz(f: &FloerData) -> Result<i64, FloerError> {
    let lef = lefschetz(f)?;
    if lef % 2 != 0 {
        return Err(FloerError::OddLefschetz(lef));
    }
    Ok(lef / 2)
}

/// `ε_k = ±1` for each degree of rank 1, in increasing degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignPattern {
    pub signs: Vec<(usize, i8)>,
}

impl SignPattern {
    pub fn is_all_minus(&self) -> bool {
        self.signs.iter().all(|&(_, s)| s == -1)
    }
}

/// All `±1` assignments on the rank-1 degrees with `Σ(−1)^k ε_k = target`.
pub fn sign_patterns(ranks: &[usize; GRADINGS], target: i64) -> Result<Vec<SignPattern>, FloerError> {
    if let Some(degree) = (0..GRADINGS).find(|&k| ranks[k] > 1) {
        return Err(FloerError::RankTooLarge { degree, rank: ranks[degree] });
    }
    let support: Vec<usize> = (0..GRADINGS).filter(|&k| ranks[k] == 1).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << support.len()) {
        let signs: Vec<(usize, i8)> =
            support.iter().enumerate().map(|(i, &k)| (k, if mask >> i & 1 == 1 { 1 } else { -1 })).collect();
        let lef: i64 = signs.iter().map(|&(k, e)| if k % 2 == 0 { e as i64 } else { -(e as i64) }).sum();
        if lef == target {
            out.push(SignPattern { signs });
        }
    }
    Ok(out)
}

/// The unique sign pattern forced by `target`.
pub fn deduce_sign_pattern(ranks: &[usize; GRADINGS], target: i64) -> Result<SignPattern, FloerError> {
    let mut all = sign_patterns(ranks, target)?;
    match all.len() {
        0 => Err(FloerError::NoSolution(target)),
        1 => Ok(all.pop().expect("one element")),
        _ => Err(FloerError::AmbiguousSolution(all)),
    }
}

/// `τ_*` acts on `I_k` as the identity for `k ≡ 1 (mod 4)`, minus the identity for `k ≡ 3`,
/// and the even-degree groups vanish; the Lefschetz number is `−b_1 + b_3 − b_5 + b_7`.
pub fn seifert_tau_lefschetz(b1: usize, b3: usize, b5: usize, b7: usize) -> i64 {
    -(b1 as i64) + b3 as i64 - b5 as i64 + b7 as i64
}

/// Fixture data used throughout the tests and the CLI.
pub mod fixtures {
    use super::*;

    /// Ranks `(0,1,0,1,0,1,0,1)` with every map minus the identity.
    pub fn cork() -> FloerData {
        FloerData::uniform([0, 1, 0, 1, 0, 1, 0, 1], GradedMap::MinusIdentity).expect("valid fixture")
    }

    /// Odd-degree ranks `(b_1, b_3, b_5, b_7) = (1, 0, 1, 0)` of `Σ(2,3,5)`.
    pub const POINCARE_ODD_RANKS: (usize, usize, usize, usize) = (1, 0, 1, 0);

    /// The product cobordism on `Σ(2,3,5)`: identity maps on its Floer groups.
    pub fn poincare_product() -> FloerData {
        FloerData::uniform([0, 1, 0, 0, 0, 1, 0, 0], GradedMap::Identity).expect("valid fixture")
    }

    pub fn poincare_tau() -> FloerData {
        let (b1, b3, b5, b7) = POINCARE_ODD_RANKS;
        let ranks = [0, b1, 0, b3, 0, b5, 0, b7];
        let maps = std::array::from_fn(|k| if k % 4 == 3 { GradedMap::MinusIdentity } else { GradedMap::Identity });
        FloerData::new(ranks, maps).expect("valid fixture")
    }

    pub fn all() -> Vec<(&'static str, FloerData)> {
        vec![("cork", cork()), ("poincare-product", poincare_product()), ("poincare-tau", poincare_tau())]
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn cork_values() {
        let f = cork();
        assert_eq!(lefschetz(&f).unwrap(), 4);
        assert!(check_evenness(&f).unwrap());
        assert_eq!(lambda_fo_from_lefschetz(&f).unwrap(), 2);
        let p = deduce_sign_pattern(&f.ranks, 4).unwrap();
        assert!(p.is_all_minus());
        assert_eq!(p.signs.len(), 4);
    }

    #[test]
    fn identity_maps_give_euler_characteristic() {
        let ranks = [3, 1, 4, 1, 5, 9, 2, 6];
        let f = FloerData::uniform(ranks, GradedMap::Identity).unwrap();
        assert_eq!(lefschetz(&f).unwrap(), 3 - 1 + 4 - 1 + 5 - 9 + 2 - 6);
    }

    #[test]
    fn poincare_product_values() {
        let f = poincare_product();
        assert_eq!(lefschetz(&f).unwrap(), -2);
        assert_eq!(lambda_fo_from_lefschetz(&f).unwrap(), -1);
        assert_eq!(lambda_fo_from_lefschetz(&poincare_tau()).unwrap(), -1);
    }

    #[test]
    fn odd_lefschetz() {
        let f = FloerData::uniform([1, 0, 0, 0, 0, 0, 0, 0], GradedMap::Identity).unwrap();
        assert!(!check_evenness(&f).unwrap());
        assert_eq!(lambda_fo_from_lefschetz(&f), Err(FloerError::OddLefschetz(1)));
        let zero = FloerData::uniform([0; 8], GradedMap::Identity).unwrap();
        assert!(check_evenness(&zero).unwrap());
        assert_eq!(lambda_fo_from_lefschetz(&zero).unwrap(), 0);
    }

    #[test]
    fn size_mismatch() {
        let mut maps: [GradedMap; 8] = std::array::from_fn(|_| GradedMap::Identity);
        maps[2] = GradedMap::Matrix(vec![vec![Rational::one()]]);
        assert_eq!(
            FloerData::new([0, 0, 2, 0, 0, 0, 0, 0], maps),
            Err(FloerError::SizeMismatch { degree: 2, expected: 2, got: 1 })
        );
    }

    #[test]
    fn sign_pattern_examples() {
        assert_eq!(deduce_sign_pattern(&[0; 8], 0).unwrap(), SignPattern { signs: vec![] });
        match deduce_sign_pattern(&[0, 1, 0, 1, 0, 0, 0, 0], 0) {
            Err(FloerError::AmbiguousSolution(c)) => {
                assert_eq!(c.len(), 2);
                assert!(c.contains(&SignPattern { signs: vec![(1, 1), (3, -1)] }));
                assert!(c.contains(&SignPattern { signs: vec![(1, -1), (3, 1)] }));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(deduce_sign_pattern(&[0, 1, 0, 1, 0, 1, 0, 1], 3), Err(FloerError::NoSolution(3)));
        assert!(matches!(deduce_sign_pattern(&[0, 2, 0, 0, 0, 0, 0, 0], 2), Err(FloerError::RankTooLarge { .. })));
    }

    #[test]
    fn seifert_tau() {
        assert_eq!(seifert_tau_lefschetz(1, 0, 1, 0), -2);
        assert_eq!(seifert_tau_lefschetz(0, 0, 0, 0), 0);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(seifert_tau_lefschetz(a, a, b, b), 0);
            }
        }
        let (b1, b3, b5, b7) = POINCARE_ODD_RANKS;
        assert_eq!(seifert_tau_lefschetz(b1, b3, b5, b7), lefschetz(&poincare_tau()).unwrap());
    }

    #[test]
    fn direct_sum_adds() {
        let s = cork().direct_sum(&poincare_product());
        assert_eq!(lefschetz(&s).unwrap(), 4 - 2);
    }

    #[test]
    fn rational_maps() {
        let half = Rational::new(1, 2);
        let mut maps: [GradedMap; 8] = std::array::from_fn(|_| GradedMap::Identity);
        maps[0] = GradedMap::Matrix(vec![vec![half, Rational::from_integer(7)], vec![Rational::zero(), half]]);
        let f = FloerData::new([2, 0, 0, 0, 0, 0, 0, 0], maps).unwrap();
        assert_eq!(lefschetz(&f).unwrap(), 1);
    }
}
