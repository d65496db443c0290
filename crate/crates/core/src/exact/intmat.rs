//! Determinants of integer and polynomial matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::ops::{Add, Mul, Sub};

/// Fraction-free (Bareiss) determinant of a square integer matrix.
pub fn integer_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Division-free determinant (Berkowitz) over any commutative ring.
///
/// Used for matrices over `Z[t, t^{-1}]`, where pivoting divisions are unavailable.
pub fn berkowitz_det<R>(m: &[Vec<R>]) -> R
where
    R: Clone + Zero + One,
    for<'a> &'a R: Add<&'a R, Output = R> + Mul<&'a R, Output = R> + Sub<&'a R, Output = R>,
{
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    // Characteristic-polynomial vector of the leading r×r block, built up one row at a time.
    // Coefficients are stored highest degree first: [1, c_1, ..., c_r] for det(xI − A_r).
    let mut poly: Vec<R> = vec![R::one(), &R::zero() - &m[0][0]];
    for r in 1..n {
        // A_{r+1} = [[A_r, C], [R, a]] with R = m[r][..r], C = m[..r][r], a = m[r][r].
        let a = m[r][r].clone();
        let row: Vec<R> = m[r][..r].to_vec();
        let mut col: Vec<R> = (0..r).map(|i| m[i][r].clone()).collect();
        // Toeplitz column: [1, -a, -R C, -R A C, ..., -R A^{r-1} C]
        let mut toeplitz = Vec::with_capacity(r + 2);
        toeplitz.push(R::one());
        toeplitz.push(&R::zero() - &a);
        for _ in 0..r {
            let rc = dot(&row, &col);
            toeplitz.push(&R::zero() - &rc);
            col = mat_vec(m, r, &col);
        }
        // new poly = T · poly, T lower-triangular Toeplitz of size (r+2)×(r+1)
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = R::zero();
            for (j, pj) in poly.iter().enumerate() {
                if i >= j {
                    acc = &acc + &(&toeplitz[i - j] * pj);
                }
            }
            next.push(acc);
        }
        poly = next;
    }
    // det A = (-1)^n · c_n
    let c = poly[n].clone();
    if n % 2 == 0 {
        c
    } else {
        &R::zero() - &c
    }
}

fn dot<R>(a: &[R], b: &[R]) -> R
where
    R: Clone + Zero,
    for<'a> &'a R: Add<&'a R, Output = R> + Mul<&'a R, Output = R> + Sub<&'a R, Output = R>,
{
    let mut acc = R::zero();
    for (x, y) in a.iter().zip(b) {
        acc = &acc + &(x * y);
    }
    acc
}

/// Leading r×r block of `m` times `v`.
fn mat_vec<R>(m: &[Vec<R>], r: usize, v: &[R]) -> Vec<R>
where
    R: Clone + Zero,
    for<'a> &'a R: Add<&'a R, Output = R> + Mul<&'a R, Output = R> + Sub<&'a R, Output = R>,
{
    (0..r).map(|i| dot(&m[i][..r], v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::laurent::LaurentPolynomial;
    use proptest::prelude::*;

    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(integer_det(&[]), BigInt::one());
        assert_eq!(integer_det(&[vec![0, 1], vec![-1, 0]]), BigInt::one());
        assert_eq!(integer_det(&[vec![0, 2, 1], vec![1, 0, 0], vec![0, 0, 3]]), BigInt::from(-6));
    }

    #[test]
    fn berkowitz_on_laurent_matrix() {
        // t·S − Sᵀ for the trefoil matrix [[−1,1],[0,−1]]
        let t = LaurentPolynomial::t();
        let c = LaurentPolynomial::constant;
        let m = vec![vec![&c(-1) * &t + c(1), t.clone()], vec![c(-1), &c(-1) * &t + c(1)]];
        let det = berkowitz_det(&m);
        assert_eq!(det, LaurentPolynomial::from_terms([(2, 1), (1, -1), (0, 1)]));
    }

    proptest! {
        #[test]
        fn determinants_agree_with_cofactor_expansion(n in 0usize..6, seed in proptest::collection::vec(-4i64..5, 25)) {
            let m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 5 + j]).collect()).collect();
            let expected = cofactor_det(&m);
            prop_assert_eq!(integer_det(&m), BigInt::from(expected));
            let as_poly: Vec<Vec<LaurentPolynomial>> =
                m.iter().map(|r| r.iter().map(|&x| LaurentPolynomial::constant(x)).collect()).collect();
            prop_assert_eq!(berkowitz_det(&as_poly), LaurentPolynomial::constant(expected));
        }
    }
}
