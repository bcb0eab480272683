//! Dense exact matrices over the rationals and the Gaussian rationals.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{GaussianRational, Rational};

/// Row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Rational> {
        self.data
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument("matrix shape mismatch".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::InvalidArgument("matrix shape mismatch".into()));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    /// Row echelon form by exact Gaussian elimination; returns the reduced
    /// matrix, pivot columns, and the determinant sign/product factor.
    fn eliminate(&self) -> (QMatrix, Vec<usize>, Rational) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut factor = Rational::one();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
                factor = -factor;
            }
            let pv = m[(row, col)].clone();
            factor *= &pv;
            for j in col..m.cols {
                m[(row, j)] = &m[(row, j)] / &pv;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for j in col..m.cols {
                    let d = &f * &m[(row, j)];
                    m[(r, j)] -= d;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots, factor)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1.len()
    }

    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
        }
        let (_, pivots, factor) = self.eliminate();
        Ok(if pivots.len() < self.rows {
            Rational::zero()
        } else {
            factor
        })
    }

    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let (red, pivots, _) = aug.eliminate();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (red, pivots, _) = self.eliminate();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -red[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(crate::poly::rational_to_f64).collect()
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Row-major matrix over the Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMatrix {
    n: usize,
    data: Vec<GaussianRational>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![GaussianRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = GaussianRational::one();
        }
        m
    }

    pub fn from_vec(n: usize, data: Vec<GaussianRational>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::InvalidArgument("wrong entry count for complex matrix".into()));
        }
        Ok(CMatrix { n, data })
    }

    /// Reads interleaved `(re, im)` coordinates in row-major order.
    pub fn from_realified(n: usize, coords: &[Rational]) -> Result<Self> {
        if coords.len() != 2 * n * n {
            return Err(Error::InvalidArgument("wrong coordinate count for complex matrix".into()));
        }
        Ok(CMatrix {
            n,
            data: coords
                .chunks(2)
                .map(|c| GaussianRational::new(c[0].clone(), c[1].clone()))
                .collect(),
        })
    }

    /// Interleaved `(re, im)` coordinates in row-major order.
    pub fn to_realified(&self) -> Vec<Rational> {
        self.data
            .iter()
            .flat_map(|z| [z.re.clone(), z.im.clone()])
            .collect()
    }

    /// Real `2n x 2n` matrix replacing each entry `a + bi` by `[[a, -b], [b, a]]`.
    pub fn to_real_blocks(&self) -> QMatrix {
        let n = self.n;
        let mut m = QMatrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                let z = &self[(i, j)];
                m[(2 * i, 2 * j)] = z.re.clone();
                m[(2 * i, 2 * j + 1)] = -z.im.clone();
                m[(2 * i + 1, 2 * j)] = z.im.clone();
                m[(2 * i + 1, 2 * j + 1)] = z.re.clone();
            }
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn conj_transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)].conj();
            }
        }
        t
    }

    pub fn mul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.n != other.n {
            return Err(Error::InvalidArgument("matrix shape mismatch".into()));
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let p = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &p;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    fn eliminate(&self, rhs: Option<&CMatrix>) -> Result<(GaussianRational, Option<CMatrix>)> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = rhs.cloned();
        let mut det = GaussianRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return Ok((GaussianRational::zero(), None));
            };
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                    if let Some(b) = b.as_mut() {
                        b.data.swap(p * n + j, col * n + j);
                    }
                }
                det = -&det;
            }
            let pv = a[(col, col)].clone();
            det = &det * &pv;
            let inv = pv.inv()?;
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &inv;
                if let Some(b) = b.as_mut() {
                    b[(col, j)] = &b[(col, j)] * &inv;
                }
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let d = &f * &a[(col, j)];
                    a[(r, j)] = &a[(r, j)] - &d;
                    if let Some(b) = b.as_mut() {
                        let d = &f * &b[(col, j)];
                        b[(r, j)] = &b[(r, j)] - &d;
                    }
                }
            }
        }
        Ok((det, b))
    }

    pub fn det(&self) -> GaussianRational {
        self.eliminate(None).map(|(d, _)| d).unwrap_or_else(|_| GaussianRational::zero())
    }

    pub fn inverse(&self) -> Result<CMatrix> {
        match self.eliminate(Some(&Self::identity(self.n)))? {
            (_, Some(inv)) => Ok(inv),
            _ => Err(Error::Singular),
        }
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.n + j]
    }
}

/// Cayley transform `(I - A)(I + A)^{-1}`.
pub fn cayley(a: &QMatrix) -> Result<QMatrix> {
    let i = QMatrix::identity(a.rows());
    i.sub(a)?.mul(&i.add(a)?.inverse()?)
}

/// Complex Cayley transform `(I - A)(I + A)^{-1}`.
pub fn cayley_complex(a: &CMatrix) -> Result<CMatrix> {
    let i = CMatrix::identity(a.n());
    i.sub(a).mul(&i.add(a).inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn cayley_of_rotation_parameter_one() {
        let a = QMatrix::from_vec(2, 2, vec![int(0), int(1), int(-1), int(0)]).unwrap();
        let g = cayley(&a).unwrap();
        assert_eq!(g, QMatrix::from_vec(2, 2, vec![int(0), int(-1), int(1), int(0)]).unwrap());
    }

    #[test]
    fn cayley_of_zero_is_identity() {
        assert!(cayley(&QMatrix::zeros(3, 3)).unwrap().is_identity());
        assert!(cayley_complex(&CMatrix::zeros(2)).unwrap().is_identity());
    }

    #[test]
    fn determinant_inverse_rank() {
        let m = QMatrix::from_vec(3, 3, vec![int(2), int(1), int(0), int(1), int(3), int(1), int(0), int(1), int(4)]).unwrap();
        assert_eq!(m.det().unwrap(), int(18));
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
        let s = QMatrix::from_vec(2, 3, vec![int(1), int(2), int(3), int(2), int(4), int(6)]).unwrap();
        assert_eq!(s.rank(), 1);
        let ns = s.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = QMatrix::from_columns(&[v]);
            assert!(s.mul(&col).unwrap().data().iter().all(Zero::is_zero));
        }
        let sing = QMatrix::from_vec(2, 2, vec![int(1), int(2), int(2), int(4)]).unwrap();
        assert_eq!(sing.det().unwrap(), int(0));
        assert!(matches!(sing.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn complex_realification() {
        let mut d = CMatrix::zeros(1);
        d[(0, 0)] = GaussianRational::i();
        let r = d.to_real_blocks();
        assert_eq!(r, QMatrix::from_vec(2, 2, vec![int(0), int(-1), int(1), int(0)]).unwrap());
        let coords = vec![rat(1, 2), rat(1, 3), int(0), int(1), int(2), int(0), rat(-1, 5), int(7)];
        assert_eq!(CMatrix::from_realified(2, &coords).unwrap().to_realified(), coords);
    }

    #[test]
    fn complex_det_and_inverse() {
        let m = CMatrix::from_vec(
            2,
            vec![
                GaussianRational::new(int(1), int(1)),
                GaussianRational::new(int(2), int(0)),
                GaussianRational::new(int(0), int(-1)),
                GaussianRational::new(int(3), int(0)),
            ],
        )
        .unwrap();
        // (1+i)*3 - 2*(-i) = 3 + 5i
        assert_eq!(m.det(), GaussianRational::new(int(3), int(5)));
        assert!(m.mul(&m.inverse().unwrap()).unwrap().is_identity());
    }
}
