//! Dense matrices over any [`Ring`], with exact determinant, adjugate, and
//! inverse via cofactor expansion (the systems here are 2×2 or 3×3).

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F: Ring> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

impl<F: Ring> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeError(format!(
                "expected {} entries for a {}x{} matrix, got {}",
                rows * cols,
                rows,
                cols,
                entries.len()
            )));
        }
        Ok(Matrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeError("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![F::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = F::one();
        }
        Matrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn map<G: Ring>(&self, f: &dyn Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise map that can fail (specializations).
    pub fn try_map<G: Ring>(&self, f: &dyn Fn(&F) -> Result<G>) -> Result<Matrix<G>> {
        let entries: Result<Vec<G>> = self.entries.iter().map(f).collect();
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: entries?,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeError("dimension mismatch in add".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeError(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = F::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j)));
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::ShapeError(format!(
                "{}x{} matrix is not square",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }

    fn minor(&self, skip_i: usize, skip_j: usize) -> Matrix<F> {
        let n = self.rows;
        let mut entries = Vec::with_capacity((n - 1) * (n - 1));
        for i in 0..n {
            if i == skip_i {
                continue;
            }
            for j in 0..n {
                if j == skip_j {
                    continue;
                }
                entries.push(self.at(i, j).clone());
            }
        }
        Matrix {
            rows: n - 1,
            cols: n - 1,
            entries,
        }
    }

    pub fn det(&self) -> Result<F> {
        let n = self.require_square()?;
        Ok(match n {
            0 => F::one(),
            1 => self.at(0, 0).clone(),
            _ => {
                let mut acc = F::zero();
                for j in 0..n {
                    let cof = self.minor(0, j).det()?;
                    let term = self.at(0, j).mul(&cof);
                    acc = if j % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
                acc
            }
        })
    }

    /// Classical adjugate: adj(M)·M = det(M)·I, even when det = 0.
    pub fn adjugate(&self) -> Result<Self> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(Matrix::identity(0));
        }
        if n == 1 {
            return Ok(Matrix::identity(1));
        }
        let mut entries = vec![F::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let cof = self.minor(i, j).det()?;
                let signed = if (i + j) % 2 == 0 { cof } else { cof.neg() };
                entries[j * n + i] = signed; // transpose
            }
        }
        Ok(Matrix {
            rows: n,
            cols: n,
            entries,
        })
    }

    /// Inverse when the determinant is a unit.
    pub fn inverse(&self) -> Result<Self> {
        let det = self.det()?;
        let det_inv = det.try_inv()?;
        Ok(self.adjugate()?.scale(&det_inv))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }
}

impl<F: Ring + std::fmt::Display> std::fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        for (i, row) in cells.iter().enumerate() {
            write!(f, "[ ")?;
            for (j, cell) in row.iter().enumerate() {
                write!(f, "{:>width$}", cell, width = widths[j])?;
                if j + 1 < self.cols {
                    write!(f, "  ")?;
                }
            }
            write!(f, " ]")?;
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;

    fn rf(n: i64) -> RatFunc {
        RatFunc::int(n)
    }

    #[test]
    fn chebyshev_a_matrix() {
        // A = [[0,1],[-1,2t]]: det 1, inverse [[2t,-1],[1,0]]
        let t = RatFunc::var("t");
        let a = Matrix::from_rows(vec![
            vec![rf(0), rf(1)],
            vec![rf(-1), t.add(&t)],
        ])
        .unwrap();
        assert_eq!(a.det().unwrap(), RatFunc::one());
        let inv = a.inverse().unwrap();
        let expect = Matrix::from_rows(vec![
            vec![t.add(&t), rf(-1)],
            vec![rf(1), rf(0)],
        ])
        .unwrap();
        assert_eq!(inv, expect);
        assert!(a.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn singular_adjugate() {
        let t = RatFunc::var("t");
        let m = Matrix::from_rows(vec![
            vec![t.clone(), t.clone()],
            vec![t.clone(), t.clone()],
        ])
        .unwrap();
        assert!(m.det().unwrap().is_zero());
        assert!(m.inverse().is_err());
        let adj = m.adjugate().unwrap();
        let prod = adj.mul(&m).unwrap();
        assert_eq!(prod, Matrix::zero(2, 2));
    }

    #[test]
    fn shape_errors() {
        let m = Matrix::from_rows(vec![vec![rf(1), rf(2)]]).unwrap();
        assert!(m.det().is_err());
        assert!(m.mul(&m).is_err());
        assert!(Matrix::from_rows(vec![vec![rf(1)], vec![rf(1), rf(2)]]).is_err());
    }

    #[test]
    fn three_by_three_adjugate_identity() {
        let t = RatFunc::var("t");
        let x = RatFunc::var("x");
        let m = Matrix::from_rows(vec![
            vec![t.clone(), rf(1), rf(0)],
            vec![x.clone(), t.clone(), rf(2)],
            vec![rf(1), rf(0), x.clone()],
        ])
        .unwrap();
        let det = m.det().unwrap();
        let adj = m.adjugate().unwrap();
        assert_eq!(
            adj.mul(&m).unwrap(),
            Matrix::identity(3).scale(&det)
        );
    }
}
