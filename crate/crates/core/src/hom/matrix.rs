use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// A dense rational matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect())
            .expect("rectangular literal")
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Rat) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        RatMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Rat] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn zip_with(&self, other: &RatMatrix, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<RatMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::InvalidElement(format!(
                "matrix shape mismatch: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn matmul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidElement("matrix product shape mismatch".into()));
        }
        Ok(RatMatrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).filter(|&k| !self.get(i, k).is_zero()).map(|k| self.get(i, k) * other.get(k, j)).sum()
        }))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rat::is_zero)
    }

    pub fn is_nonneg(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    /// Rank over ℚ by fraction-exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.to_rows();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let f = &row[col] / &pivot_row[col];
                    for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                        *x -= &(&f * p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small() {
        assert_eq!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(RatMatrix::from_ints(&[&[1, 1], &[1, -1]]).rank(), 2);
        assert_eq!(RatMatrix::zeros(3, 2).rank(), 0);
        assert_eq!(RatMatrix::from_ints(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]]).rank(), 2);
    }

    #[test]
    fn product_and_apply() {
        let t = RatMatrix::from_ints(&[&[1, -2], &[-3, 4]]);
        assert_eq!(t.mul_vec(&[Rat::one(), Rat::one()]), vec![Rat::from_int(-1), Rat::from_int(1)]);
        assert_eq!(t.matmul(&RatMatrix::identity(2)).unwrap(), t);
        assert!(t.matmul(&RatMatrix::zeros(3, 3)).is_err());
    }
}
