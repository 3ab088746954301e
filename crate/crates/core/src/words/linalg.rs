//! Exact row reduction over ℚ.

use num::{BigRational, One, Zero};

/// Sparse-friendly dense matrix of rationals, one `Vec` per row.
#[derive(Clone, Debug, Default)]
pub struct RationalMatrix {
    pub cols: usize,
    pub rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(cols: usize) -> Self {
        RationalMatrix { cols, rows: Vec::new() }
    }

    pub fn push_row(&mut self, row: Vec<BigRational>) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = BigRational::one() / &self.rows[r][c];
            for x in self.rows[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = self.rows[r].clone();
            for i in 0..self.rows.len() {
                if i == r || self.rows[i][c].is_zero() {
                    continue;
                }
                let f = self.rows[i][c].clone();
                for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows.len() {
                break;
            }
        }
        self.rows.truncate(r);
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[BigRational]) -> bool {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut v = v.to_vec();
        for (row, &c) in m.rows.iter().zip(&pivots) {
            if v[c].is_zero() {
                continue;
            }
            let f = v[c].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rank_and_membership() {
        let mut m = RationalMatrix::new(3);
        m.push_row(vec![q(1), q(2), q(3)]);
        m.push_row(vec![q(2), q(4), q(6)]);
        m.push_row(vec![q(0), q(1), q(1)]);
        assert_eq!(m.rank(), 2);
        assert!(m.row_space_contains(&[q(1), q(3), q(4)]));
        assert!(!m.row_space_contains(&[q(0), q(0), q(1)]));
    }

    #[test]
    fn fractions_stay_exact() {
        let mut m = RationalMatrix::new(2);
        m.push_row(vec![q(3), q(1)]);
        let third = BigRational::new(1.into(), 3.into());
        assert!(m.row_space_contains(&[q(1), third]));
    }
}
