use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Polynomial, Rational, VarRegistry};
use crate::error::{Error, Result};

/// Complex number with rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return Err(Error::Singular);
        }
        Ok(GaussianRational::new(&self.re / &n, -&self.im / &n))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i", self.re, self.im)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

/// Complex-valued polynomial in real variables, held as its real and
/// imaginary parts.
///
/// Complex coordinates are introduced by pairing real variables, so every
/// value of this type is already realified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexPoly {
    pub re: Polynomial,
    pub im: Polynomial,
}

impl ComplexPoly {
    pub fn new(re: Polynomial, im: Polynomial) -> Self {
        ComplexPoly { re, im }
    }

    pub fn real(re: Polynomial) -> Self {
        let im = Polynomial::zero(re.registry());
        ComplexPoly { re, im }
    }

    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        Self::real(Polynomial::zero(reg))
    }

    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Self::real(Polynomial::one(reg))
    }

    pub fn constant(reg: &Arc<VarRegistry>, c: &GaussianRational) -> Self {
        ComplexPoly::new(
            Polynomial::constant(reg, c.re.clone()),
            Polynomial::constant(reg, c.im.clone()),
        )
    }

    /// `x_re + i x_im` for the variable pair `(re_var, im_var)`.
    pub fn var_pair(reg: &Arc<VarRegistry>, re_var: usize, im_var: usize) -> Self {
        ComplexPoly::new(Polynomial::var(reg, re_var), Polynomial::var(reg, im_var))
    }

    pub fn conj(&self) -> Self {
        ComplexPoly::new(self.re.clone(), -&self.im)
    }

    /// `|z|^2 = re^2 + im^2`.
    pub fn norm_sqr(&self) -> Polynomial {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn scale_real(&self, p: &Polynomial) -> Self {
        ComplexPoly::new(&self.re * p, &self.im * p)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<GaussianRational> {
        Ok(GaussianRational::new(
            self.re.evaluate(point)?,
            self.im.evaluate(point)?,
        ))
    }
}

impl Add for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, o: &ComplexPoly) -> ComplexPoly {
        ComplexPoly::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, o: &ComplexPoly) -> ComplexPoly {
        ComplexPoly::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, o: &ComplexPoly) -> ComplexPoly {
        ComplexPoly::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        ComplexPoly::new(-&self.re, -&self.im)
    }
}

/// Determinant of a square matrix of complex polynomials.
pub fn complex_poly_det(a: &[Vec<ComplexPoly>]) -> ComplexPoly {
    let n = a.len();
    assert!(n > 0 && a.iter().all(|r| r.len() == n), "square matrix required");
    let cols: Vec<usize> = (0..n).collect();
    det_minor(a, 0, &cols)
}

fn det_minor(a: &[Vec<ComplexPoly>], row: usize, cols: &[usize]) -> ComplexPoly {
    if cols.len() == 1 {
        return a[row][cols[0]].clone();
    }
    let reg = a[0][0].re.registry().clone();
    let mut acc = ComplexPoly::zero(&reg);
    for (k, &c) in cols.iter().enumerate() {
        if a[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &a[row][c] * &det_minor(a, row + 1, &rest);
        acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn gaussian_field_ops() {
        let z = GaussianRational::new(rat(3, 5), rat(4, 5));
        assert_eq!(z.norm_sqr(), int(1));
        assert_eq!(&z * &z.conj(), GaussianRational::one());
        assert_eq!(&z * &z.inv().unwrap(), GaussianRational::one());
        assert!(GaussianRational::zero().inv().is_err());
    }

    #[test]
    fn complex_poly_product_matches_pointwise() {
        let r = VarRegistry::new(["u", "v"]);
        let z = ComplexPoly::var_pair(&r, 0, 1);
        let sq = &z * &z;
        let pt = [rat(1, 2), rat(-2, 3)];
        let zv = z.evaluate(&pt).unwrap();
        assert_eq!(sq.evaluate(&pt).unwrap(), &zv * &zv);
        assert_eq!(z.norm_sqr().evaluate(&pt).unwrap(), zv.norm_sqr());
    }
}
