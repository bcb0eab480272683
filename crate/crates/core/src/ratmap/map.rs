use std::sync::Arc;

use num_traits::Zero;

use super::float::CompiledMap;
use super::variety::{PointOnVariety, Variety};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, QMatrix};
use crate::poly::{format_rational, ComplexPoly, Polynomial, Rational};

/// Rational map between embedded varieties: coordinate numerators over one
/// shared denominator, all polynomials in the domain's variables.
#[derive(Debug, Clone)]
pub struct RationalMap {
    domain: Arc<Variety>,
    codomain: Arc<Variety>,
    numerators: Vec<Polynomial>,
    denominator: Polynomial,
    excluded: String,
    positivity: Option<String>,
}

fn same_variety(a: &Arc<Variety>, b: &Arc<Variety>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn require_same(expected: &Arc<Variety>, found: &Arc<Variety>) -> Result<()> {
    if same_variety(expected, found) {
        Ok(())
    } else {
        Err(Error::VarietyMismatch {
            expected: expected.name().to_string(),
            found: found.name().to_string(),
        })
    }
}

impl RationalMap {
    /// Validates shapes and registries, and rejects a denominator that is
    /// identically zero modulo the domain's sphere relations.
    pub fn new(
        domain: Arc<Variety>,
        codomain: Arc<Variety>,
        numerators: Vec<Polynomial>,
        denominator: Polynomial,
        excluded: impl Into<String>,
    ) -> Result<Self> {
        if numerators.len() != codomain.ambient_dim() {
            return Err(Error::InvalidArgument(format!(
                "{} numerators for codomain {} of ambient dimension {}",
                numerators.len(),
                codomain.name(),
                codomain.ambient_dim()
            )));
        }
        let reg = domain.registry().clone();
        let numerators = numerators
            .iter()
            .map(|p| p.with_registry(&reg))
            .collect::<Result<Vec<_>>>()?;
        let denominator = denominator.with_registry(&reg)?;
        if denominator.normal_form(domain.sphere_blocks())?.is_zero() {
            return Err(Error::ZeroDenominator(domain.name().to_string()));
        }
        Ok(RationalMap {
            domain,
            codomain,
            numerators,
            denominator,
            excluded: excluded.into(),
            positivity: None,
        })
    }

    /// Polynomial map (denominator 1).
    pub fn polynomial(
        domain: Arc<Variety>,
        codomain: Arc<Variety>,
        coords: Vec<Polynomial>,
    ) -> Result<Self> {
        let one = Polynomial::one(domain.registry());
        Self::new(domain, codomain, coords, one, "none")
    }

    pub fn identity(v: &Arc<Variety>) -> Self {
        let reg = v.registry();
        let coords = (0..reg.len()).map(|i| Polynomial::var(reg, i)).collect();
        Self::polynomial(v.clone(), v.clone(), coords).expect("identity map is well formed")
    }

    /// Constant map onto `value`.
    pub fn constant(domain: &Arc<Variety>, value: &PointOnVariety) -> Self {
        let reg = domain.registry();
        let coords = value
            .coords()
            .iter()
            .map(|c| Polynomial::constant(reg, c.clone()))
            .collect();
        Self::polynomial(domain.clone(), value.variety().clone(), coords)
            .expect("constant map is well formed")
    }

    /// Attaches the analytic argument for denominator positivity.
    pub fn with_positivity_note(mut self, note: impl Into<String>) -> Self {
        self.positivity = Some(note.into());
        self
    }

    pub fn with_excluded(mut self, excluded: impl Into<String>) -> Self {
        self.excluded = excluded.into();
        self
    }

    pub fn domain(&self) -> &Arc<Variety> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Variety> {
        &self.codomain
    }

    pub fn numerators(&self) -> &[Polynomial] {
        &self.numerators
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn excluded(&self) -> &str {
        &self.excluded
    }

    pub fn positivity_note(&self) -> Option<&str> {
        self.positivity.as_deref()
    }

    /// Largest total degree among numerators and denominator.
    pub fn max_degree(&self) -> u32 {
        self.numerators
            .iter()
            .chain(std::iter::once(&self.denominator))
            .map(Polynomial::degree)
            .max()
            .unwrap_or(0)
    }

    /// `self ∘ inner`.
    ///
    /// With `self = N/D` of maximal degree `d` and `inner = n/m`, the result
    /// is `m^d N(n/m) / m^d D(n/m)`, expanded and reduced by the sphere
    /// blocks of `inner`'s domain. No common factors are cancelled.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        require_same(&self.domain, &inner.codomain)?;
        let d = self.max_degree();
        let reg = inner.domain.registry();
        let blocks = inner.domain.sphere_blocks();
        let lift = |p: &Polynomial| -> Result<Polynomial> {
            p.substitute_homogenized(&inner.numerators, &inner.denominator, d, reg)?
                .normal_form(blocks)
        };
        let numerators = self.numerators.iter().map(lift).collect::<Result<Vec<_>>>()?;
        let denominator = lift(&self.denominator)?;
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator(inner.domain.name().to_string()));
        }
        let excluded = match (inner.excluded.as_str(), self.excluded.as_str()) {
            ("none", "none") => "none".to_string(),
            ("none", outer) => format!("preimage of ({outer})"),
            (inn, "none") => inn.to_string(),
            (inn, outer) => format!("{inn} and the preimage of ({outer})"),
        };
        Ok(RationalMap {
            domain: inner.domain.clone(),
            codomain: self.codomain.clone(),
            numerators,
            denominator,
            excluded,
            positivity: None,
        })
    }

    /// Exact image coordinates, without checking codomain relations.
    pub fn evaluate_coords(&self, coords: &[Rational]) -> Result<Vec<Rational>> {
        let den = self.denominator.evaluate(coords)?;
        if den.is_zero() {
            return Err(Error::DenominatorZeroAtPoint(self.excluded.clone()));
        }
        self.numerators
            .iter()
            .map(|n| Ok(n.evaluate(coords)? / &den))
            .collect()
    }

    /// Exact image of a domain point; the result is checked against the
    /// codomain relations.
    pub fn evaluate(&self, point: &PointOnVariety) -> Result<PointOnVariety> {
        require_same(&self.domain, point.variety())?;
        let image = self.evaluate_coords(point.coords())?;
        PointOnVariety::new(&self.codomain, image).map_err(|e| match e {
            Error::NotOnVariety {
                variety,
                relation,
                value,
            } => Error::CodomainViolation {
                variety,
                relation,
                value,
            },
            other => other,
        })
    }

    /// Floating-point image.
    pub fn evaluate_f64(&self, x: &[f64]) -> Result<Vec<f64>> {
        let den = self.denominator.evaluate_f64(x)?;
        if den == 0.0 {
            return Err(Error::DenominatorZeroAtPoint(self.excluded.clone()));
        }
        self.numerators
            .iter()
            .map(|n| Ok(n.evaluate_f64(x)? / den))
            .collect()
    }

    /// Exact Jacobian of the ambient rational map at `coords`
    /// (codomain ambient dimension x domain ambient dimension).
    pub fn jacobian_exact(&self, coords: &[Rational]) -> Result<QMatrix> {
        let den = self.denominator.evaluate(coords)?;
        if den.is_zero() {
            return Err(Error::DenominatorZeroAtPoint(self.excluded.clone()));
        }
        let n = self.domain.ambient_dim();
        let m = self.codomain.ambient_dim();
        let dden = (0..n)
            .map(|j| self.denominator.differentiate(j)?.evaluate(coords))
            .collect::<Result<Vec<_>>>()?;
        let den_sq = &den * &den;
        let mut jac = QMatrix::zeros(m, n);
        for (i, num) in self.numerators.iter().enumerate() {
            let nv = num.evaluate(coords)?;
            for j in 0..n {
                let dn = num.differentiate(j)?.evaluate(coords)?;
                jac[(i, j)] = (dn * &den - &nv * &dden[j]) / &den_sq;
            }
        }
        Ok(jac)
    }

    /// Float evaluator for values, optionally with the Jacobian.
    pub fn compile(&self, with_jacobian: bool) -> CompiledMap {
        CompiledMap::new(self, with_jacobian)
    }

    /// Human-readable coordinate formulas.
    pub fn describe(&self) -> Vec<String> {
        self.numerators
            .iter()
            .map(|n| format!("({n}) / ({})", self.denominator))
            .collect()
    }
}

/// Whether matrix entries are real coordinates or interleaved `(re, im)` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntryKind {
    Real,
    Complex,
}

/// Rational map whose codomain coordinates form a matrix in row-major order.
#[derive(Debug, Clone)]
pub struct MatrixMap {
    base: RationalMap,
    rows: usize,
    cols: usize,
    kind: EntryKind,
}

impl MatrixMap {
    pub fn new(base: RationalMap, rows: usize, cols: usize, kind: EntryKind) -> Result<Self> {
        let width = match kind {
            EntryKind::Real => 1,
            EntryKind::Complex => 2,
        };
        if rows == 0 || cols == 0 || rows * cols * width != base.codomain().ambient_dim() {
            return Err(Error::InvalidArgument(format!(
                "{rows}x{cols} matrix does not fit codomain {}",
                base.codomain().name()
            )));
        }
        Ok(MatrixMap {
            base,
            rows,
            cols,
            kind,
        })
    }

    /// Real matrix map from numerator entries over a shared denominator.
    pub fn from_entries(
        domain: Arc<Variety>,
        codomain: Arc<Variety>,
        entries: Vec<Vec<Polynomial>>,
        denominator: Polynomial,
        excluded: impl Into<String>,
    ) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let nums = entries.into_iter().flatten().collect();
        let base = RationalMap::new(domain, codomain, nums, denominator, excluded)?;
        Self::new(base, rows, cols, EntryKind::Real)
    }

    /// Complex square matrix map, stored realified.
    pub fn from_complex_entries(
        domain: Arc<Variety>,
        codomain: Arc<Variety>,
        entries: Vec<Vec<ComplexPoly>>,
        denominator: Polynomial,
        excluded: impl Into<String>,
    ) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        let nums = entries
            .into_iter()
            .flatten()
            .flat_map(|z| [z.re, z.im])
            .collect();
        let base = RationalMap::new(domain, codomain, nums, denominator, excluded)?;
        Self::new(base, rows, cols, EntryKind::Complex)
    }

    pub fn base(&self) -> &RationalMap {
        &self.base
    }

    pub fn into_base(self) -> RationalMap {
        self.base
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> EntryKind {
        self.kind
    }

    /// Numerator of entry `(i, j)`; complex maps return the real part.
    pub fn entry_numerator(&self, i: usize, j: usize) -> &Polynomial {
        let w = if self.kind == EntryKind::Complex { 2 } else { 1 };
        &self.base.numerators()[(i * self.cols + j) * w]
    }

    pub fn evaluate_real(&self, coords: &[Rational]) -> Result<QMatrix> {
        if self.kind != EntryKind::Real {
            return Err(Error::InvalidArgument("complex matrix map evaluated as real".into()));
        }
        QMatrix::from_vec(self.rows, self.cols, self.base.evaluate_coords(coords)?)
    }

    pub fn evaluate_complex(&self, coords: &[Rational]) -> Result<CMatrix> {
        if self.kind != EntryKind::Complex || self.rows != self.cols {
            return Err(Error::InvalidArgument("not a square complex matrix map".into()));
        }
        CMatrix::from_realified(self.rows, &self.base.evaluate_coords(coords)?)
    }
}

/// `f ∘ g`.
pub fn compose(f: &RationalMap, g: &RationalMap) -> Result<RationalMap> {
    f.compose(g)
}

pub(crate) fn format_point(coords: &[Rational]) -> Vec<String> {
    coords.iter().map(format_rational).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn compose_with_identity_reduces_to_normal_form() {
        let s1 = Variety::sphere(1);
        let r = s1.registry();
        let (x, y) = (Polynomial::var(r, 0), Polynomial::var(r, 1));
        let sq = RationalMap::polynomial(s1.clone(), s1.clone(), vec![&x * &x - &y * &y, (&x * &y).scale(&int(2))]).unwrap();
        let c = sq.compose(&RationalMap::identity(&s1)).unwrap();
        let blocks = s1.sphere_blocks();
        for (a, b) in c.numerators().iter().zip(sq.numerators()) {
            assert_eq!(*a, b.normal_form(blocks).unwrap());
        }
        assert_eq!(c.denominator(), sq.denominator());
    }

    #[test]
    fn mismatched_composition_rejected() {
        let a = RationalMap::identity(&Variety::sphere(1));
        let b = RationalMap::identity(&Variety::sphere(2));
        assert!(matches!(a.compose(&b), Err(Error::VarietyMismatch { .. })));
    }

    #[test]
    fn zero_denominator_rejected() {
        let s1 = Variety::sphere(1);
        let r = s1.registry();
        // x1^2 + x2^2 - 1 vanishes on the circle
        let den = Polynomial::var(r, 0).pow(2) + Polynomial::var(r, 1).pow(2) - Polynomial::one(r);
        let nums = vec![Polynomial::var(r, 0), Polynomial::var(r, 1)];
        assert!(matches!(
            RationalMap::new(s1.clone(), s1.clone(), nums, den, "all"),
            Err(Error::ZeroDenominator(_))
        ));
    }

    #[test]
    fn evaluation_checks_codomain() {
        let s1 = Variety::sphere(1);
        let r = s1.registry();
        let bad = RationalMap::polynomial(
            s1.clone(),
            s1.clone(),
            vec![Polynomial::var(r, 0).scale(&int(2)), Polynomial::var(r, 1)],
        )
        .unwrap();
        let p = PointOnVariety::new(&s1, vec![rat(3, 5), rat(4, 5)]).unwrap();
        assert!(matches!(bad.evaluate(&p), Err(Error::CodomainViolation { .. })));
    }

    #[test]
    fn exact_jacobian_of_quotient() {
        // t -> t/(1+t^2) has derivative (1 - t^2)/(1+t^2)^2
        let line = Variety::affine(1);
        let r = line.registry();
        let t = Polynomial::var(r, 0);
        let f = RationalMap::new(line.clone(), line.clone(), vec![t.clone()], Polynomial::one(r) + t.pow(2), "none").unwrap();
        let j = f.jacobian_exact(&[int(2)]).unwrap();
        assert_eq!(j[(0, 0)], rat(-3, 25));
    }

    #[test]
    fn matrix_shape_validation() {
        let so2 = Variety::special_orthogonal(2);
        let base = RationalMap::identity(&so2);
        assert!(MatrixMap::new(base.clone(), 2, 2, EntryKind::Real).is_ok());
        assert!(MatrixMap::new(base.clone(), 3, 2, EntryKind::Real).is_err());
        assert!(MatrixMap::new(base, 2, 2, EntryKind::Complex).is_err());
        assert_eq!(format_point(&[rat(1, 2)]), vec!["1/2".to_string()]);
    }
}
