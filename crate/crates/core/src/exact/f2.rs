//! Dense matrices over GF(2), one bit-packed row per `Vec<u64>`.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        Self { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Reduce an integer matrix mod 2.
    pub fn from_integers(entries: &[Vec<i64>]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        Self::from_fn(rows, cols, |i, j| entries[i][j].rem_euclid(2) == 1)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        (self.data[i * self.words + j / 64] >> (j % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.data[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        for w in 0..self.words {
            let v = self.data[src * self.words + w];
            self.data[dst * self.words + w] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for w in 0..self.words {
                self.data.swap(a * self.words + w, b * self.words + w);
            }
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Reduced row echelon form, returned together with the pivot columns.
    pub fn row_reduce(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m.get(i, c)) else { continue };
            m.swap_rows(p, r);
            for i in 0..m.rows {
                if i != r && m.get(i, c) {
                    m.xor_row_into(r, i);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// `xᵀ M y` for bit vectors given as bool slices.
    pub fn bilinear(&self, x: &[bool], y: &[bool]) -> bool {
        let mut acc = false;
        for i in 0..self.rows {
            if !x[i] {
                continue;
            }
            for j in 0..self.cols {
                if y[j] && self.get(i, j) {
                    acc = !acc;
                }
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        (0..self.rows).all(|i| self.row(i).iter().all(|&w| w == 0))
    }
}

/// Gaussian-elimination rank over GF(2).
pub fn f2_rank(m: &F2Matrix) -> usize {
    m.rank()
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = (0..self.cols).map(|j| if self.get(i, j) { '1' } else { '0' }).collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(F2Matrix::identity(3).rank(), 3);
        assert_eq!(F2Matrix::zeros(2, 2).rank(), 0);
        assert_eq!(F2Matrix::from_integers(&[vec![1, 1], vec![1, 1]]).rank(), 1);
        assert_eq!(F2Matrix::from_integers(&[vec![-2, 1], vec![1, -2]]).rank(), 2);
    }

    #[test]
    fn wide_rows_cross_word_boundary() {
        let m = F2Matrix::from_fn(3, 130, |i, j| j == 64 + i || j == 129);
        assert_eq!(m.rank(), 3);
        assert!(m.get(2, 66) && m.get(0, 129) && !m.get(0, 0));
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(bits in proptest::collection::vec(any::<bool>(), 0..=49), cols in 1usize..8) {
            let rows = bits.len() / cols;
            let m = F2Matrix::from_fn(rows, cols, |i, j| bits[i * cols + j]);
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert!(m.rank() <= rows.min(cols));
        }

        #[test]
        fn row_reduction_is_idempotent(bits in proptest::collection::vec(any::<bool>(), 36)) {
            let m = F2Matrix::from_fn(6, 6, |i, j| bits[i * 6 + j]);
            let (r1, p1) = m.row_reduce();
            let (r2, p2) = r1.row_reduce();
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }
    }
}
