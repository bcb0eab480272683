//! Explicit maps between spheres: stereographic projection and its inverse,
//! the sum map ⊕, coordinate reflections, the double map φ and circle powers.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{int, Polynomial, Rational};
use crate::ratmap::{Report, RationalMap, SamplerKind, Variety};

fn require_dim(n: usize, what: &str) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("{what} needs dimension >= 1")));
    }
    Ok(())
}

fn vars(v: &Arc<Variety>) -> Vec<Polynomial> {
    let reg = v.registry();
    (0..reg.len()).map(|i| Polynomial::var(reg, i)).collect()
}

fn sum_sq(ps: &[Polynomial]) -> Polynomial {
    ps.iter().fold(Polynomial::zero(ps[0].registry()), |acc, p| acc + p * p)
}

/// Dimension of a single-sphere variety.
pub fn sphere_dim(v: &Variety) -> Option<usize> {
    match v.sampler() {
        SamplerKind::Spheres(d) if d.len() == 1 => Some(d[0]),
        _ => None,
    }
}

/// Stereographic projection `S^n \ {-e} -> R^n`, `x ↦ x_{i+1} / (1 + x_1)`.
pub fn stereo(n: usize) -> Result<RationalMap> {
    require_dim(n, "stereo")?;
    let s = Variety::sphere(n);
    let x = vars(&s);
    let den = Polynomial::one(s.registry()) + &x[0];
    Ok(RationalMap::new(s, Variety::affine(n), x[1..].to_vec(), den, "{-e}")?
        .with_positivity_note("1 + x1 >= 0 on the sphere, with equality only at -e"))
}

/// Inverse stereographic projection `R^n -> S^n`.
pub fn stereo_inv(n: usize) -> Result<RationalMap> {
    require_dim(n, "stereo_inv")?;
    let r = Variety::affine(n);
    let x = vars(&r);
    let one = Polynomial::one(r.registry());
    let q = sum_sq(&x);
    let mut nums = vec![&one - &q];
    nums.extend(x.iter().map(|xi| xi.scale(&int(2))));
    Ok(RationalMap::new(r, Variety::sphere(n), nums, one + q, "none")?
        .with_positivity_note("1 + |X|^2 >= 1"))
}

/// `π × π : S^n × S^n -> R^{2n}` over the common denominator `(1+x1)(1+y1)`.
pub fn stereo_pair(n: usize) -> Result<RationalMap> {
    require_dim(n, "stereo_pair")?;
    let d = Variety::sphere_product(&[n, n]);
    let v = vars(&d);
    let (x, y) = v.split_at(n + 1);
    let one = Polynomial::one(d.registry());
    let (ax, ay) = (&one + &x[0], &one + &y[0]);
    let mut nums: Vec<Polynomial> = x[1..].iter().map(|xi| xi * &ay).collect();
    nums.extend(y[1..].iter().map(|yi| yi * &ax));
    RationalMap::new(d, Variety::affine(2 * n), nums, ax * ay, "{-e} x S^n and S^n x {-e}")
}

/// Vector addition `R^n × R^n -> R^n`.
pub fn vector_add(n: usize) -> Result<RationalMap> {
    require_dim(n, "vector_add")?;
    let d = Variety::affine(2 * n);
    let v = vars(&d);
    let nums = (0..n).map(|i| &v[i] + &v[n + i]).collect();
    RationalMap::polynomial(d, Variety::affine(n), nums)
}

/// Denominator of ⊕: `(1+x1)(1+y1) + 2 - 2x1y1 + 2Σ_{i≥2} x_i y_i`.
fn oplus_denominator(x: &[Polynomial], y: &[Polynomial]) -> Polynomial {
    let one = Polynomial::one(x[0].registry());
    let mut d = (&one + &x[0]) * (&one + &y[0]) + one.scale(&int(2)) - (&x[0] * &y[0]).scale(&int(2));
    for (xi, yi) in x[1..].iter().zip(&y[1..]) {
        d = d + (xi * yi).scale(&int(2));
    }
    d
}

/// Closed form of `a ⊕ b = π⁻¹(π(a) + π(b))` on `S^n × S^n`.
pub fn oplus(n: usize) -> Result<RationalMap> {
    require_dim(n, "oplus")?;
    let d = Variety::sphere_product(&[n, n]);
    let v = vars(&d);
    let (x, y) = v.split_at(n + 1);
    let one = Polynomial::one(d.registry());
    let two = int(2);
    let (ax, ay) = (&one + &x[0], &one + &y[0]);
    let den = oplus_denominator(x, y);
    let mut first = &ax * &ay - one.scale(&two) + (&x[0] * &y[0]).scale(&two);
    for (xi, yi) in x[1..].iter().zip(&y[1..]) {
        first = first - (xi * yi).scale(&two);
    }
    let mut nums = vec![first];
    for (xj, yj) in x[1..].iter().zip(&y[1..]) {
        nums.push((xj * &ay + yj * &ax).scale(&two));
    }
    Ok(RationalMap::new(d, Variety::sphere(n), nums, den, "{(-e,-e)}")?.with_positivity_note(
        "D = (1+x1)(1+y1) + 2(1 - <x', y>) with x' = (x1, -x2, ..., -x_{n+1}); both summands are \
         nonnegative by Cauchy-Schwarz and vanish together only at (-e,-e)",
    ))
}

/// `stereo_inv ∘ (+) ∘ (π × π)`, the definition of ⊕ before simplification.
pub fn oplus_composed(n: usize) -> Result<RationalMap> {
    stereo_inv(n)?.compose(&vector_add(n)?)?.compose(&stereo_pair(n)?)
}

/// Symbolic checks of the ⊕ closed form on `S^n × S^n`: the norm of
/// `π(x) + π(y)`, the positivity form of the denominator, and that ⊕ lands in `S^n`.
pub fn oplus_identity_checks(n: usize) -> Result<Vec<Report>> {
    require_dim(n, "oplus")?;
    let d = Variety::sphere_product(&[n, n]);
    let blocks = d.sphere_blocks();
    let v = vars(&d);
    let (x, y) = v.split_at(n + 1);
    let one = Polynomial::one(d.registry());
    let two = int(2);
    let (ax, ay) = (&one + &x[0], &one + &y[0]);
    let mut dot = Polynomial::zero(d.registry());
    for (xi, yi) in x[1..].iter().zip(&y[1..]) {
        dot = dot + xi * yi;
    }

    // |π(x) + π(y)|^2 in three forms, all over (1+x1)^2 (1+y1)^2.
    let lhs = x[1..]
        .iter()
        .zip(&y[1..])
        .fold(Polynomial::zero(d.registry()), |acc, (xi, yi)| {
            let t = xi * &ay + yi * &ax;
            acc + &t * &t
        });
    let middle = (&one - &x[0] * &x[0]) * &ay * &ay
        + (&dot * &ax * &ay).scale(&two)
        + (&one - &y[0] * &y[0]) * &ax * &ax;
    let rhs = (one.scale(&two) - (&x[0] * &y[0]).scale(&two) + dot.scale(&two)) * &ax * &ay;
    let id1 = (&lhs - &middle).normal_form(blocks)?.is_zero() && (&middle - &rhs).normal_form(blocks)?.is_zero();

    let f = oplus(n)?;
    let reflected_dot = &x[0] * &y[0] - &dot;
    let alt = &ax * &ay + (&one - reflected_dot).scale(&two);
    let den_ok = (f.denominator() - &alt).normal_form(blocks)?.is_zero();

    let norm = (sum_sq(f.numerators()) - f.denominator() * f.denominator()).normal_form(blocks)?;
    Ok(vec![
        Report::symbolic(
            "oplus sum-norm identity",
            id1,
            "|x_>1(1+y1) + y_>1(1+x1)|^2 = (1-x1^2)(1+y1)^2 + 2<x_>1,y_>1>(1+x1)(1+y1) + (1-y1^2)(1+x1)^2 \
             = (2 - 2x1y1 + 2<x_>1,y_>1>)(1+x1)(1+y1) modulo the sphere relations",
        ),
        Report::symbolic(
            "oplus denominator form",
            den_ok,
            "D = (1+x1)(1+y1) + 2(1 - x1y1 + sum_{i>=2} x_i y_i)",
        ),
        Report::symbolic(
            "oplus norm",
            norm.is_zero(),
            "sum of squared numerators minus D^2 reduces to 0",
        ),
    ])
}

/// Reflection of `S^n` negating coordinate `j` (1-based, `2 <= j <= n+1`).
pub fn reflect(n: usize, j: usize) -> Result<RationalMap> {
    require_dim(n, "reflect")?;
    if j < 2 || j > n + 1 {
        return Err(Error::InvalidArgument(format!(
            "reflection axis {j} must lie in 2..={}",
            n + 1
        )));
    }
    let s = Variety::sphere(n);
    let mut x = vars(&s);
    x[j - 1] = -&x[j - 1];
    RationalMap::polynomial(s.clone(), s, x)
}

/// Antipodal map of `S^n`.
pub fn antipodal(n: usize) -> Result<RationalMap> {
    require_dim(n, "antipodal")?;
    let s = Variety::sphere(n);
    let x = vars(&s).iter().map(|p| -p).collect();
    RationalMap::polynomial(s.clone(), s, x)
}

/// `φ(x) = (2x1^2 - 1, 2x1x2, ..., 2x1x_{k+1})`, the map through `P^k`.
pub fn phi_double(k: usize) -> Result<RationalMap> {
    require_dim(k, "phi_double")?;
    let s = Variety::sphere(k);
    let x = vars(&s);
    let one = Polynomial::one(s.registry());
    let mut nums = vec![(&x[0] * &x[0]).scale(&int(2)) - one];
    nums.extend(x[1..].iter().map(|xi| (&x[0] * xi).scale(&int(2))));
    RationalMap::polynomial(s.clone(), s, nums)
}

/// `z ↦ z^d` on the unit circle; negative `d` uses `conj(z)^{|d|}`.
pub fn circle_power(d: i64) -> RationalMap {
    let s = Variety::sphere(1);
    let x = vars(&s);
    let (a, b) = (x[0].clone(), if d < 0 { -&x[1] } else { x[1].clone() });
    let mut re = Polynomial::one(s.registry());
    let mut im = Polynomial::zero(s.registry());
    for _ in 0..d.unsigned_abs() {
        let nre = &re * &a - &im * &b;
        im = &re * &b + &im * &a;
        re = nre;
    }
    RationalMap::polynomial(s.clone(), s, vec![re, im]).expect("circle power is well formed")
}

/// Rotation of `S^1` by the rational unit vector `(c, s)`.
pub fn circle_rotation(c: Rational, s: Rational) -> Result<RationalMap> {
    if &c * &c + &s * &s != int(1) {
        return Err(Error::InvalidArgument("rotation (c, s) must satisfy c^2 + s^2 = 1".into()));
    }
    let v = Variety::sphere(1);
    let x = vars(&v);
    let nums = vec![
        x[0].scale(&c) - x[1].scale(&s),
        x[0].scale(&s) + x[1].scale(&c),
    ];
    RationalMap::polynomial(v.clone(), v, nums)
}

/// `x ↦ (f(x), g(x))` into the product of the two sphere codomains.
pub fn pair(f: &RationalMap, g: &RationalMap) -> Result<RationalMap> {
    crate::ratmap::require_same(f.domain(), g.domain())?;
    let (a, b) = match (sphere_dim(f.codomain()), sphere_dim(g.codomain())) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InvalidArgument("pair needs sphere codomains".into())),
    };
    let mut nums: Vec<Polynomial> = f.numerators().iter().map(|p| p * g.denominator()).collect();
    nums.extend(g.numerators().iter().map(|p| p * f.denominator()));
    let excluded = format!("{} ∪ {}", f.excluded(), g.excluded());
    RationalMap::new(
        f.domain().clone(),
        Variety::sphere_product(&[a, b]),
        nums,
        f.denominator() * g.denominator(),
        excluded,
    )
}

/// Pointwise sum `x ↦ f(x) ⊕ g(x)`.
pub fn pointwise_oplus(f: &RationalMap, g: &RationalMap) -> Result<RationalMap> {
    let n = sphere_dim(f.codomain())
        .ok_or_else(|| Error::InvalidArgument("pointwise sum needs a sphere codomain".into()))?;
    oplus(n)?.compose(&pair(f, g)?)
}
