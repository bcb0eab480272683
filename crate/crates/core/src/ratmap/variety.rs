use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{
    complex_poly_det, format_rational, poly_det, ComplexPoly, Polynomial, Rational, SphereBlock,
    VarRegistry,
};

/// Which exact point sampler a variety uses.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SamplerKind {
    /// Bounded-height random rational vectors in `R^n`.
    Affine(usize),
    /// Product of spheres `S^{n_1} x ... x S^{n_r}`, each via inverse stereographic projection.
    Spheres(Vec<usize>),
    /// Cayley transform of a random rational skew-symmetric matrix.
    SpecialOrthogonal(usize),
    /// Cayley transform of a random skew-Hermitian Gaussian-rational matrix.
    Unitary(usize),
    /// Unitary sample with its first column rescaled by the conjugate determinant.
    SpecialUnitary(usize),
    None,
}

/// Real algebraic variety embedded in affine space by explicit relations.
#[derive(Debug, Clone)]
pub struct Variety {
    name: String,
    reg: Arc<VarRegistry>,
    relations: Vec<Polynomial>,
    blocks: Vec<SphereBlock>,
    sampler: SamplerKind,
}

impl PartialEq for Variety {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.reg == other.reg && self.relations == other.relations
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

const FACTOR_PREFIXES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

impl Variety {
    /// Variety with explicit data. The sphere blocks must be disjoint and
    /// their relations are added in front of `extra_relations`.
    pub fn custom(
        name: impl Into<String>,
        reg: Arc<VarRegistry>,
        blocks: Vec<SphereBlock>,
        extra_relations: Vec<Polynomial>,
        sampler: SamplerKind,
    ) -> Result<Arc<Variety>> {
        let probe = Polynomial::zero(&reg);
        probe.normal_form(&blocks)?;
        let mut relations: Vec<Polynomial> = blocks.iter().map(|b| b.relation(&reg)).collect();
        for r in extra_relations {
            relations.push(r.with_registry(&reg)?);
        }
        Ok(Arc::new(Variety {
            name: name.into(),
            reg,
            relations,
            blocks,
            sampler,
        }))
    }

    /// `R^n` with coordinates `X1..Xn`.
    pub fn affine(n: usize) -> Arc<Variety> {
        let reg = VarRegistry::new((1..=n).map(|i| format!("X{i}")));
        Arc::new(Variety {
            name: format!("R^{n}"),
            reg,
            relations: Vec::new(),
            blocks: Vec::new(),
            sampler: SamplerKind::Affine(n),
        })
    }

    /// `S^n` in `R^{n+1}` with coordinates `x1..x_{n+1}`.
    pub fn sphere(n: usize) -> Arc<Variety> {
        Self::sphere_product(&[n])
    }

    /// Product of spheres; factor `i` uses the `i`-th letter of `x, y, z, w, u, v`.
    ///
    /// Panics for more than six factors.
    pub fn sphere_product(dims: &[usize]) -> Arc<Variety> {
        assert!(!dims.is_empty() && dims.len() <= FACTOR_PREFIXES.len(), "1..=6 sphere factors");
        let mut names = Vec::new();
        let mut blocks = Vec::new();
        for (f, &n) in dims.iter().enumerate() {
            blocks.push(SphereBlock::contiguous(names.len(), n + 1));
            names.extend((1..=n + 1).map(|i| format!("{}{i}", FACTOR_PREFIXES[f])));
        }
        let reg = VarRegistry::new(names);
        let relations = blocks.iter().map(|b| b.relation(&reg)).collect();
        let name = dims.iter().map(|n| format!("S^{n}")).collect::<Vec<_>>().join("x");
        Arc::new(Variety {
            name,
            reg,
            relations,
            blocks,
            sampler: SamplerKind::Spheres(dims.to_vec()),
        })
    }

    /// `SO(n)` in `R^{n^2}`, coordinates `g{i}_{j}` in row-major order.
    /// Relations: upper triangle of `G^T G - I`, then `det G - 1`.
    pub fn special_orthogonal(n: usize) -> Arc<Variety> {
        let reg = VarRegistry::new(
            (1..=n).flat_map(|i| (1..=n).map(move |j| format!("g{i}_{j}"))),
        );
        let g = |i: usize, j: usize| Polynomial::var(&reg, i * n + j);
        let mut relations = Vec::new();
        for a in 0..n {
            for b in a..n {
                let mut p = Polynomial::zero(&reg);
                for k in 0..n {
                    p = p + g(k, a) * g(k, b);
                }
                if a == b {
                    p = p - Polynomial::one(&reg);
                }
                relations.push(p);
            }
        }
        let entries: Vec<Vec<Polynomial>> = (0..n).map(|i| (0..n).map(|j| g(i, j)).collect()).collect();
        relations.push(poly_det(&entries) - Polynomial::one(&reg));
        Arc::new(Variety {
            name: format!("SO({n})"),
            reg,
            relations,
            blocks: Vec::new(),
            sampler: SamplerKind::SpecialOrthogonal(n),
        })
    }

    /// Complex `k x k` matrices stored as interleaved `(re, im)` coordinates
    /// in row-major order.
    fn complex_matrix_registry(k: usize) -> Arc<VarRegistry> {
        VarRegistry::new((1..=k).flat_map(|i| {
            (1..=k).flat_map(move |j| [format!("re{i}_{j}"), format!("im{i}_{j}")])
        }))
    }

    pub(crate) fn complex_entries(reg: &Arc<VarRegistry>, k: usize) -> Vec<Vec<ComplexPoly>> {
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| ComplexPoly::var_pair(reg, 2 * (i * k + j), 2 * (i * k + j) + 1))
                    .collect()
            })
            .collect()
    }

    fn unitary_relations(reg: &Arc<VarRegistry>, k: usize) -> Vec<Polynomial> {
        let g = Self::complex_entries(reg, k);
        let mut relations = Vec::new();
        for a in 0..k {
            for b in a..k {
                let mut p = ComplexPoly::zero(reg);
                for row in &g {
                    p = &p + &(&row[a].conj() * &row[b]);
                }
                if a == b {
                    p.re = p.re - Polynomial::one(reg);
                }
                for part in [p.re, p.im] {
                    if !part.is_zero() {
                        relations.push(part);
                    }
                }
            }
        }
        relations
    }

    /// `U(k)`: `G* G = I` split into real and imaginary parts.
    pub fn unitary(k: usize) -> Arc<Variety> {
        let reg = Self::complex_matrix_registry(k);
        let relations = Self::unitary_relations(&reg, k);
        Arc::new(Variety {
            name: format!("U({k})"),
            reg,
            relations,
            blocks: Vec::new(),
            sampler: SamplerKind::Unitary(k),
        })
    }

    /// `SU(k)`: unitary relations plus `Re det = 1`, `Im det = 0`.
    pub fn special_unitary(k: usize) -> Arc<Variety> {
        let reg = Self::complex_matrix_registry(k);
        let mut relations = Self::unitary_relations(&reg, k);
        let det = complex_poly_det(&Self::complex_entries(&reg, k));
        relations.push(det.re - Polynomial::one(&reg));
        relations.push(det.im);
        Arc::new(Variety {
            name: format!("SU({k})"),
            reg,
            relations,
            blocks: Vec::new(),
            sampler: SamplerKind::SpecialUnitary(k),
        })
    }

    /// Resolves the built-in names `R^n`, `S^n`, `S^axS^b...`, `SO(n)`,
    /// `U(k)`, `SU(k)`.
    pub fn by_name(name: &str) -> Result<Arc<Variety>> {
        let unknown = || Error::Parse(format!("unknown variety `{name}`"));
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        let paren = |s: &str, prefix: &str| -> Option<String> {
            s.strip_prefix(prefix)?.strip_suffix(')').map(str::to_string)
        };
        if let Some(n) = name.strip_prefix("R^") {
            let n = num(n)?;
            if n == 0 {
                return Err(unknown());
            }
            return Ok(Self::affine(n));
        }
        if let Some(n) = paren(name, "SO(") {
            let n = num(&n)?;
            if n < 1 {
                return Err(unknown());
            }
            return Ok(Self::special_orthogonal(n));
        }
        if let Some(k) = paren(name, "SU(") {
            let k = num(&k)?;
            if k < 1 {
                return Err(unknown());
            }
            return Ok(Self::special_unitary(k));
        }
        if let Some(k) = paren(name, "U(") {
            let k = num(&k)?;
            if k < 1 {
                return Err(unknown());
            }
            return Ok(Self::unitary(k));
        }
        if name.starts_with("S^") {
            let dims = name
                .split('x')
                .map(|f| f.strip_prefix("S^").ok_or_else(unknown).and_then(num))
                .collect::<Result<Vec<_>>>()?;
            if dims.is_empty() || dims.len() > FACTOR_PREFIXES.len() {
                return Err(unknown());
            }
            return Ok(Self::sphere_product(&dims));
        }
        Err(unknown())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.reg
    }

    pub fn ambient_dim(&self) -> usize {
        self.reg.len()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn sphere_blocks(&self) -> &[SphereBlock] {
        &self.blocks
    }

    pub fn sampler(&self) -> &SamplerKind {
        &self.sampler
    }

    /// True when every relation is a sphere-block relation, so the block
    /// rewriter decides membership in the ideal.
    pub fn is_sphere_reducible(&self) -> bool {
        self.relations.len() == self.blocks.len()
    }

    /// Dimension as a manifold, for the built-in families.
    pub fn dimension(&self) -> Option<usize> {
        match &self.sampler {
            SamplerKind::Affine(n) => Some(*n),
            SamplerKind::Spheres(d) => Some(d.iter().sum()),
            SamplerKind::SpecialOrthogonal(n) => Some(n * (n - 1) / 2),
            SamplerKind::Unitary(k) => Some(k * k),
            SamplerKind::SpecialUnitary(k) => Some(k * k - 1),
            SamplerKind::None => None,
        }
    }

    /// Checks every relation at `coords` exactly; reports the first violation.
    pub fn check_point(&self, coords: &[Rational]) -> Result<()> {
        if coords.len() != self.ambient_dim() {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates for {} (ambient dimension {})",
                coords.len(),
                self.name,
                self.ambient_dim()
            )));
        }
        for (i, r) in self.relations.iter().enumerate() {
            let v = r.evaluate(coords)?;
            if !v.is_zero() {
                return Err(Error::NotOnVariety {
                    variety: self.name.clone(),
                    relation: i,
                    value: format_rational(&v),
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let sampler = match &self.sampler {
            SamplerKind::Affine(_) => "affine",
            SamplerKind::Spheres(_) => "spheres",
            SamplerKind::SpecialOrthogonal(_) => "so",
            SamplerKind::Unitary(_) => "u",
            SamplerKind::SpecialUnitary(_) => "su",
            SamplerKind::None => "none",
        };
        json!({
            "name": self.name,
            "variables": self.reg.to_json(),
            "sphere_blocks": self.blocks.iter().map(|b| b.vars().to_vec()).collect::<Vec<_>>(),
            "relations": self.relations[self.blocks.len()..].iter().map(Polynomial::to_json).collect::<Vec<_>>(),
            "sampler": sampler,
        })
    }

    /// Reads one registry entry. Built-in names resolve to the built-in
    /// construction; other entries keep their relations and only the
    /// `spheres` and `affine` samplers are honoured.
    pub fn from_json(value: &Value) -> Result<Arc<Variety>> {
        let bad = |m: &str| Error::Parse(format!("variety: {m}"));
        let name = value.get("name").and_then(Value::as_str).ok_or_else(|| bad("missing name"))?;
        if let Ok(v) = Self::by_name(name) {
            return Ok(v);
        }
        let reg = VarRegistry::from_json(value.get("variables").ok_or_else(|| bad("missing variables"))?)?;
        let blocks = match value.get("sphere_blocks") {
            None => Vec::new(),
            Some(b) => b
                .as_array()
                .ok_or_else(|| bad("sphere_blocks must be an array"))?
                .iter()
                .map(|blk| {
                    let vars = blk
                        .as_array()
                        .ok_or_else(|| bad("block must be an array"))?
                        .iter()
                        .map(|v| v.as_u64().map(|v| v as usize).ok_or_else(|| bad("block entries must be ids")))
                        .collect::<Result<Vec<_>>>()?;
                    SphereBlock::new(vars)
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let relations = match value.get("relations") {
            None => Vec::new(),
            Some(r) => r
                .as_array()
                .ok_or_else(|| bad("relations must be an array"))?
                .iter()
                .map(|p| Polynomial::from_json(p, &reg))
                .collect::<Result<Vec<_>>>()?,
        };
        let sampler = match value.get("sampler").and_then(Value::as_str).unwrap_or("none") {
            "affine" if blocks.is_empty() && relations.is_empty() => SamplerKind::Affine(reg.len()),
            "spheres" if relations.is_empty() && blocks.iter().enumerate().all(|(i, b)| {
                let start: usize = blocks[..i].iter().map(|b| b.vars().len()).sum();
                b.vars().iter().copied().eq(start..start + b.vars().len())
            }) && blocks.iter().map(|b| b.vars().len()).sum::<usize>() == reg.len() =>
            {
                SamplerKind::Spheres(blocks.iter().map(|b| b.vars().len() - 1).collect())
            }
            _ => SamplerKind::None,
        };
        Variety::custom(name, reg, blocks, relations, sampler)
    }
}

/// Exact point together with the variety it lies on.
#[derive(Debug, Clone, PartialEq)]
pub struct PointOnVariety {
    coords: Vec<Rational>,
    variety: Arc<Variety>,
}

impl PointOnVariety {
    /// Fails unless every relation vanishes exactly at `coords`.
    pub fn new(variety: &Arc<Variety>, coords: Vec<Rational>) -> Result<Self> {
        variety.check_point(&coords)?;
        Ok(PointOnVariety {
            coords,
            variety: variety.clone(),
        })
    }

    /// The point `e = (1, 0, ..., 0)` of a sphere.
    pub fn base_point(variety: &Arc<Variety>) -> Result<Self> {
        let mut c = vec![Rational::zero(); variety.ambient_dim()];
        if let Some(first) = c.first_mut() {
            *first = num_traits::One::one();
        }
        Self::new(variety, c)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn variety(&self) -> &Arc<Variety> {
        &self.variety
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(crate::poly::rational_to_f64).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rational).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn builtin_names_round_trip() {
        for name in ["R^3", "S^2", "S^1xS^1", "SO(3)", "U(2)", "SU(2)"] {
            let v = Variety::by_name(name).unwrap();
            assert_eq!(v.name(), name);
            let again = Variety::from_json(&v.to_json()).unwrap();
            assert_eq!(*again, *v);
        }
        assert!(Variety::by_name("T^2").is_err());
        assert!(Variety::by_name("SO(x)").is_err());
    }

    #[test]
    fn custom_registry_entry() {
        let v = Variety::sphere_product(&[1, 2]);
        let mut j = v.to_json();
        j["name"] = json!("torus-ish");
        let c = Variety::from_json(&j).unwrap();
        assert_eq!(c.sampler(), &SamplerKind::Spheres(vec![1, 2]));
        assert!(c.is_sphere_reducible());
    }

    #[test]
    fn membership() {
        let s1 = Variety::sphere(1);
        assert!(PointOnVariety::new(&s1, vec![rat(3, 5), rat(4, 5)]).is_ok());
        assert!(matches!(
            PointOnVariety::new(&s1, vec![rat(3, 5), rat(3, 5)]),
            Err(Error::NotOnVariety { .. })
        ));
        let so2 = Variety::special_orthogonal(2);
        assert!(PointOnVariety::new(&so2, vec![int(0), int(-1), int(1), int(0)]).is_ok());
        // reflection has det -1
        assert!(PointOnVariety::new(&so2, vec![int(1), int(0), int(0), int(-1)]).is_err());
    }

    #[test]
    fn dimensions() {
        assert_eq!(Variety::special_orthogonal(4).dimension(), Some(6));
        assert_eq!(Variety::unitary(2).dimension(), Some(4));
        assert_eq!(Variety::special_unitary(2).dimension(), Some(3));
        assert_eq!(Variety::sphere_product(&[1, 1]).ambient_dim(), 4);
    }
}
