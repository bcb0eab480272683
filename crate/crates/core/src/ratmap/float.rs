use super::map::RationalMap;
use crate::poly::{rational_to_f64, Polynomial};

/// Polynomial flattened to `f64` coefficients for fast repeated evaluation.
#[derive(Debug, Clone)]
pub struct FloatPoly {
    terms: Vec<(f64, Vec<(usize, i32)>)>,
}

impl FloatPoly {
    pub fn new(p: &Polynomial) -> Self {
        FloatPoly {
            terms: p
                .terms()
                .map(|(m, c)| (rational_to_f64(c), m.iter().map(|(v, e)| (v, e as i32)).collect()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (c, m) in &self.terms {
            let mut t = *c;
            for &(v, e) in m {
                t *= if e == 1 { x[v] } else { x[v].powi(e) };
            }
            acc += t;
        }
        acc
    }
}

/// Float evaluator of a rational map and, optionally, its Jacobian.
#[derive(Debug, Clone)]
pub struct CompiledMap {
    nums: Vec<FloatPoly>,
    den: FloatPoly,
    dnums: Vec<Vec<FloatPoly>>,
    dden: Vec<FloatPoly>,
    domain_dim: usize,
}

impl CompiledMap {
    pub fn new(f: &RationalMap, with_jacobian: bool) -> Self {
        let n = f.domain().ambient_dim();
        let (dnums, dden) = if with_jacobian {
            (
                f.numerators()
                    .iter()
                    .map(|p| (0..n).map(|j| FloatPoly::new(&p.differentiate(j).expect("variable in range"))).collect())
                    .collect(),
                (0..n)
                    .map(|j| FloatPoly::new(&f.denominator().differentiate(j).expect("variable in range")))
                    .collect(),
            )
        } else {
            (Vec::new(), Vec::new())
        };
        CompiledMap {
            nums: f.numerators().iter().map(FloatPoly::new).collect(),
            den: FloatPoly::new(f.denominator()),
            dnums,
            dden,
            domain_dim: n,
        }
    }

    pub fn denominator(&self, x: &[f64]) -> f64 {
        self.den.eval(x)
    }

    /// Image at `x` given the already evaluated denominator.
    pub fn value_with_den(&self, x: &[f64], den: f64) -> Vec<f64> {
        self.nums.iter().map(|p| p.eval(x) / den).collect()
    }

    pub fn value(&self, x: &[f64]) -> Option<Vec<f64>> {
        let d = self.den.eval(x);
        (d != 0.0).then(|| self.value_with_den(x, d))
    }

    /// Row-major Jacobian of the ambient map at `x`; `None` when compiled
    /// without derivatives or the denominator vanishes.
    pub fn jacobian(&self, x: &[f64]) -> Option<Vec<f64>> {
        if self.dnums.is_empty() && !self.nums.is_empty() {
            return None;
        }
        let d = self.den.eval(x);
        if d == 0.0 {
            return None;
        }
        let n = self.domain_dim;
        let dd: Vec<f64> = self.dden.iter().map(|p| p.eval(x)).collect();
        let mut jac = Vec::with_capacity(self.nums.len() * n);
        for (num, dnum) in self.nums.iter().zip(&self.dnums) {
            let nv = num.eval(x);
            for j in 0..n {
                jac.push((dnum[j].eval(x) * d - nv * dd[j]) / (d * d));
            }
        }
        Some(jac)
    }
}
