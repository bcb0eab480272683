//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Variables are identified by their index in a shared [`VarRegistry`].
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded reverse-lexicographic order, so iteration is canonical.

mod gaussian;
mod json;
mod sphere;

pub use gaussian::{complex_poly_det, ComplexPoly, GaussianRational};
pub use sphere::SphereBlock;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"n"` or `"n/d"` with decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Always `num/den`, denominator positive.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Ordered list of variable names shared by polynomials over the same ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarRegistry {
    names: Vec<String>,
}

impl VarRegistry {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        Arc::new(VarRegistry {
            names: names.into_iter().map(Into::into).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn same_registry(a: &Arc<VarRegistry>, b: &Arc<VarRegistry>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Power product of variables; absent variables have exponent zero.
///
/// Stored as `(variable id, exponent)` pairs sorted by id, exponents positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(id: usize) -> Self {
        Monomial(vec![(id as u32, 1)])
    }

    /// Builds a monomial from arbitrary pairs, merging repeated ids and
    /// dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v as u32).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0
            .binary_search_by_key(&(var as u32), |&(v, _)| v)
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v as usize)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Same monomial with `var` raised to `exp` instead.
    pub fn with_exponent(&self, var: usize, exp: u32) -> Monomial {
        let mut pairs: Vec<(u32, u32)> = self.0.iter().copied().filter(|&(v, _)| v as usize != var).collect();
        if exp > 0 {
            pairs.push((var as u32, exp));
            pairs.sort_unstable();
        }
        Monomial(pairs)
    }
}

impl Ord for Monomial {
    /// Graded reverse-lexicographic order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        self.degree().cmp(&other.degree()).then_with(|| {
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (a.len(), b.len());
            loop {
                match (i.checked_sub(1), j.checked_sub(1)) {
                    (None, None) => return Equal,
                    (Some(_), None) => return Less,
                    (None, Some(_)) => return Greater,
                    (Some(ii), Some(jj)) => {
                        let ((va, ea), (vb, eb)) = (a[ii], b[jj]);
                        if va == vb {
                            if ea != eb {
                                return eb.cmp(&ea);
                            }
                            i = ii;
                            j = jj;
                        } else if va > vb {
                            return Less;
                        } else {
                            return Greater;
                        }
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over a variable registry with exact rational coefficients.
#[derive(Debug, Clone)]
pub struct Polynomial {
    reg: Arc<VarRegistry>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_registry(&self.reg, &other.reg) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(reg: &Arc<VarRegistry>) -> Self {
        Polynomial {
            reg: reg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(reg: &Arc<VarRegistry>, c: Rational) -> Self {
        let mut p = Self::zero(reg);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn one(reg: &Arc<VarRegistry>) -> Self {
        Self::constant(reg, Rational::one())
    }

    /// The coordinate function of variable `id`.
    ///
    /// Panics when `id` is outside the registry.
    pub fn var(reg: &Arc<VarRegistry>, id: usize) -> Self {
        assert!(id < reg.len(), "variable id {id} out of range");
        Self::monomial(reg, Monomial::var(id), Rational::one())
    }

    pub fn monomial(reg: &Arc<VarRegistry>, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(reg);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, summing
    /// repeated monomials. Fails when a variable id is out of range.
    pub fn from_terms(
        reg: &Arc<VarRegistry>,
        terms: impl IntoIterator<Item = (Rational, Monomial)>,
    ) -> Result<Self> {
        let mut p = Self::zero(reg);
        for (c, m) in terms {
            if let Some(v) = m.max_var() {
                if v >= reg.len() {
                    return Err(Error::UnknownVariable(v));
                }
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Returns the constant value when the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Same polynomial viewed over an equal registry instance.
    pub fn with_registry(&self, reg: &Arc<VarRegistry>) -> Result<Self> {
        if !same_registry(&self.reg, reg) {
            return Err(Error::RegistryMismatch);
        }
        Ok(Polynomial {
            reg: reg.clone(),
            terms: self.terms.clone(),
        })
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_registry(&self.reg, &other.reg) {
            Ok(())
        } else {
            Err(Error::RegistryMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.reg));
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|x| *x += &c)
                    .or_insert(c);
            }
        }
        Ok(Polynomial {
            reg: self.reg.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.reg);
        }
        Polynomial {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.reg);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn differentiate(&self, var: usize) -> Result<Self> {
        if var >= self.reg.len() {
            return Err(Error::UnknownVariable(var));
        }
        let mut out = Self::zero(&self.reg);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(m.with_exponent(var, e - 1), c * int(e as i64));
            }
        }
        Ok(out)
    }

    /// Exact value at `point`, indexed by variable id.
    ///
    /// Works over the integers: coordinates are scaled to a common
    /// denominator `L` and each term of degree `t` is multiplied by
    /// `L^(deg - t)`, so only the final quotient is normalised.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if let Some(v) = self.terms.keys().filter_map(Monomial::max_var).max() {
            if v >= point.len() {
                return Err(Error::MissingAssignment(v));
            }
        }
        let l = point.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let cd = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let scaled: Vec<BigInt> = point.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        let deg = self.degree() as usize;
        let mut l_pow = vec![BigInt::one()];
        for i in 1..=deg {
            let next = &l_pow[i - 1] * &l;
            l_pow.push(next);
        }
        let mut powers: HashMap<(usize, u32), BigInt> = HashMap::new();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.numer() * (&cd / c.denom());
            for (v, e) in m.iter() {
                let p = powers.entry((v, e)).or_insert_with(|| Pow::pow(&scaled[v], e));
                t *= &*p;
            }
            t *= &l_pow[deg - m.degree() as usize];
            acc += t;
        }
        Ok(Rational::new(acc, cd * &l_pow[deg]))
    }

    /// Floating-point value at `point`, visiting terms in the same order as
    /// [`Polynomial::evaluate`].
    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64> {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rational_to_f64(c);
            for (v, e) in m.iter() {
                let x = point.get(v).ok_or(Error::MissingAssignment(v))?;
                t *= x.powi(e as i32);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for variable `i` (all images over one target
    /// registry).
    pub fn substitute(&self, images: &[Polynomial], target: &Arc<VarRegistry>) -> Result<Self> {
        let one = Polynomial::one(target);
        self.substitute_homogenized(images, &one, self.degree(), target)
    }

    /// Computes `den^degree * self(images / den)` as a polynomial, where
    /// `degree` must be at least the total degree of `self`.
    pub fn substitute_homogenized(
        &self,
        images: &[Polynomial],
        den: &Polynomial,
        degree: u32,
        target: &Arc<VarRegistry>,
    ) -> Result<Self> {
        if images.len() != self.reg.len() {
            return Err(Error::InvalidArgument(format!(
                "substitution needs {} images, got {}",
                self.reg.len(),
                images.len()
            )));
        }
        for img in images.iter().chain(std::iter::once(den)) {
            if !same_registry(img.registry(), target) {
                return Err(Error::RegistryMismatch);
            }
        }
        if self.degree() > degree {
            return Err(Error::InvalidArgument(format!(
                "homogenization degree {degree} below polynomial degree {}",
                self.degree()
            )));
        }
        let mut cache = PowerCache::new(images);
        let den_powers = if den.is_one() {
            None
        } else {
            let mut v = vec![Polynomial::one(target)];
            for i in 1..=degree as usize {
                let next = &v[i - 1] * den;
                v.push(next);
            }
            Some(v)
        };
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (v, e) in m.iter() {
                t = &t * cache.get(v, e);
            }
            if let Some(dp) = &den_powers {
                t = &t * &dp[(degree - m.degree()) as usize];
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Variables that occur in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = self.terms.keys().flat_map(|m| m.iter().map(|(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// True when every coefficient is positive and every exponent even, so
    /// the polynomial is positive wherever its constant term is.
    pub fn is_manifestly_nonnegative(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| c.is_positive() && m.iter().all(|(_, e)| e % 2 == 0))
    }
}

struct PowerCache<'a> {
    images: &'a [Polynomial],
    powers: HashMap<(usize, u32), Polynomial>,
}

impl<'a> PowerCache<'a> {
    fn new(images: &'a [Polynomial]) -> Self {
        PowerCache {
            images,
            powers: HashMap::new(),
        }
    }

    fn get(&mut self, v: usize, e: u32) -> &Polynomial {
        if !self.powers.contains_key(&(v, e)) {
            let p = if e == 1 {
                self.images[v].clone()
            } else {
                let prev = self.get(v, e - 1).clone();
                &prev * &self.images[v]
            };
            self.powers.insert((v, e), p);
        }
        &self.powers[&(v, e)]
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .iter()
                .map(|(v, e)| {
                    if e == 1 {
                        self.reg.name(v).to_string()
                    } else {
                        format!("{}^{}", self.reg.name(v), e)
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics on registry mismatch; use the `checked_*` form to recover.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial registry mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            reg: self.reg.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub fn poly_det(entries: &[Vec<Polynomial>]) -> Polynomial {
    let n = entries.len();
    assert!(n > 0 && entries.iter().all(|r| r.len() == n), "square matrix required");
    let cols: Vec<usize> = (0..n).collect();
    det_minor(entries, 0, &cols)
}

fn det_minor(a: &[Vec<Polynomial>], row: usize, cols: &[usize]) -> Polynomial {
    if cols.len() == 1 {
        return a[row][cols[0]].clone();
    }
    let reg = a[0][0].registry().clone();
    let mut acc = Polynomial::zero(&reg);
    for (k, &c) in cols.iter().enumerate() {
        if a[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &a[row][c] * det_minor(a, row + 1, &rest);
        acc = if k % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg2() -> Arc<VarRegistry> {
        VarRegistry::new(["x1", "x2"])
    }

    #[test]
    fn additive_inverse_cancels() {
        let r = reg2();
        let x1 = Polynomial::var(&r, 0);
        assert!((&x1 + &(-&x1)).is_zero());
    }

    #[test]
    fn disjoint_support_sum() {
        let r = reg2();
        let (x1, x2) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let p = &(&x1 * &x1) + &Polynomial::one(&r);
        let s = &p + &x2;
        assert_eq!(s.to_string(), "x1^2 + x2 + 1");
    }

    #[test]
    fn difference_of_squares() {
        let r = reg2();
        let x1 = Polynomial::var(&r, 0);
        let one = Polynomial::one(&r);
        let p = (&x1 + &one) * (&x1 - &one);
        assert_eq!(p, &(&x1 * &x1) - &one);
        assert!((&p * &Polynomial::zero(&r)).is_zero());
    }

    #[test]
    fn oplus_denominator_subterm_expansion() {
        let r = VarRegistry::new(["x1", "y1"]);
        let (x, y) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let one = Polynomial::one(&r);
        let p = (&one + &x) * (&one + &y);
        let expected = &(&(&one + &x) + &y) + &(&x * &y);
        assert_eq!(p, expected);
    }

    #[test]
    fn derivatives() {
        let r = reg2();
        let x1 = Polynomial::var(&r, 0);
        let sq = &x1 * &x1;
        assert_eq!(sq.differentiate(0).unwrap(), x1.scale(&int(2)));
        assert!(sq.differentiate(1).unwrap().is_zero());
        assert!(matches!(sq.differentiate(5), Err(Error::UnknownVariable(5))));
    }

    #[test]
    fn registry_mismatch_is_reported() {
        let a = Polynomial::var(&reg2(), 0);
        let b = Polynomial::var(&VarRegistry::new(["y1"]), 0);
        assert!(matches!(a.checked_add(&b), Err(Error::RegistryMismatch)));
        assert!(matches!(a.checked_mul(&b), Err(Error::RegistryMismatch)));
    }

    #[test]
    fn evaluation() {
        let r = reg2();
        let (x1, x2) = (Polynomial::var(&r, 0), Polynomial::var(&r, 1));
        let p = &x1 * &x1 + &x2 * &x2;
        assert_eq!(p.evaluate(&[rat(3, 5), rat(4, 5)]).unwrap(), int(1));
        assert!(matches!(p.evaluate(&[rat(3, 5)]), Err(Error::MissingAssignment(1))));
        let q = &p + &Polynomial::constant(&r, rat(7, 3));
        assert_eq!(q.evaluate(&[int(0), int(0)]).unwrap(), rat(7, 3));
    }

    #[test]
    fn oplus_denominator_at_north_pole_pair() {
        // (1+x1)(1+y1) + 2 - 2x1y1 + 2 x2y2 at x = y = (0, 1)
        let r = VarRegistry::new(["x1", "x2", "y1", "y2"]);
        let v = |i| Polynomial::var(&r, i);
        let one = Polynomial::one(&r);
        let d = (&one + &v(0)) * (&one + &v(2)) + Polynomial::constant(&r, int(2))
            - (v(0) * v(2)).scale(&int(2))
            + (v(1) * v(3)).scale(&int(2));
        let pt = [int(0), int(1), int(0), int(1)];
        assert_eq!(d.evaluate(&pt).unwrap(), int(5));
        let fpt = [0.0, 1.0, 0.0, 1.0];
        assert!((d.evaluate_f64(&fpt).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn grevlex_order() {
        // x1^2 > x1 x2 > x2^2 > x1 > x2 > 1 in grevlex with x1 > x2
        let ms = [
            Monomial::from_pairs([(0, 2)]),
            Monomial::from_pairs([(0, 1), (1, 1)]),
            Monomial::from_pairs([(1, 2)]),
            Monomial::var(0),
            Monomial::var(1),
            Monomial::one(),
        ];
        for w in ms.windows(2) {
            assert!(w[0] > w[1], "{:?} should exceed {:?}", w[0], w[1]);
        }
        // degree 3: x1 x2 x3 vs x1^2 x3 vs x1 x2^2 -- the one with smaller last exponent wins
        let a = Monomial::from_pairs([(0, 1), (1, 2)]);
        let b = Monomial::from_pairs([(0, 2), (2, 1)]);
        assert!(a > b);
    }

    #[test]
    fn substitution_homogenized() {
        // p(X) = 1 + X^2 with X = t/(1+t) gives (1+t)^2 + t^2
        let src = VarRegistry::new(["X"]);
        let dst = VarRegistry::new(["t"]);
        let p = Polynomial::one(&src) + Polynomial::var(&src, 0).pow(2);
        let t = Polynomial::var(&dst, 0);
        let den = Polynomial::one(&dst) + t.clone();
        let h = p.substitute_homogenized(std::slice::from_ref(&t), &den, 2, &dst).unwrap();
        assert_eq!(h, den.pow(2) + t.pow(2));
    }

    #[test]
    fn determinant_of_polynomial_matrix() {
        let r = VarRegistry::new(["a", "b", "c", "d"]);
        let v = |i| Polynomial::var(&r, i);
        let det = poly_det(&[vec![v(0), v(1)], vec![v(2), v(3)]]);
        assert_eq!(det, v(0) * v(3) - v(1) * v(2));
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&int(4)), "4/1");
    }
}
