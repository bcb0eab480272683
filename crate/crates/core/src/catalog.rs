//! Named targets and their verification suites.
//!
//! Target syntax: `stereo:n`, `stereo-inv:n`, `oplus:n`, `oplus-composed:n`,
//! `reflect:n:j`, `antipodal:n`, `phi:k`, `zpow:d`, `p:n`, `p-u:k`, `s:n`,
//! `s-u:k`, `r:n`, `r-u:k`, `chain:m:k`, `su-retract:k`, `embed-u:k`,
//! `jmap:<file>`, `jmap-hopf`, `jmap-rotation`, `jmap-trivial:n:k`, or a path
//! to a map JSON file.

use std::path::Path;
use std::sync::Arc;

use num_traits::Zero;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group_maps::{self as gm, JMapInput};
use crate::linalg::{cayley, cayley_complex, CMatrix, QMatrix};
use crate::poly::{int, GaussianRational, Rational};
use crate::ratmap::{
    denominator_check, equal_mod, equal_symbolic, maps_into, random_skew_hermitian,
    random_skew_symmetric, random_special_unitary, sample_point_indexed, stream_rng,
    MatrixMap, PointOnVariety, RationalMap, Report, SampleConfig, Variety, VarietyRegistry,
};
use crate::sphere_maps as sm;
use crate::topo;

/// A resolved target: the underlying map plus its matrix or J-map structure.
#[derive(Debug, Clone)]
pub struct Target {
    pub name: String,
    pub map: RationalMap,
    pub matrix: Option<MatrixMap>,
    pub jmap: Option<JMapInput>,
}

impl Target {
    fn plain(name: &str, map: RationalMap) -> Self {
        Target { name: name.to_string(), map, matrix: None, jmap: None }
    }

    fn matrix(name: &str, m: MatrixMap) -> Self {
        Target { name: name.to_string(), map: m.base().clone(), matrix: Some(m), jmap: None }
    }

    fn jmap(name: &str, input: JMapInput) -> Result<Self> {
        let map = gm::j_map(&input)?;
        Ok(Target { name: name.to_string(), map, matrix: None, jmap: Some(input) })
    }

    /// Map file JSON (matrix maps include their shape).
    pub fn to_json(&self) -> Value {
        match &self.matrix {
            Some(m) => m.to_json(),
            None => self.map.to_json(),
        }
    }
}

fn unknown(t: &str) -> Error {
    Error::UnknownTarget(t.to_string())
}

fn args<T: std::str::FromStr>(target: &str, parts: &[&str], count: usize) -> Result<Vec<T>> {
    if parts.len() != count {
        return Err(unknown(target));
    }
    parts.iter().map(|p| p.parse::<T>().map_err(|_| unknown(target))).collect()
}

fn read_json(path: &str) -> Result<Value> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

/// Resolves a catalog name or a map file.
pub fn resolve(target: &str, varieties: &VarietyRegistry) -> Result<Target> {
    if let Some(file) = target.strip_prefix("jmap:") {
        let input = JMapInput::from_json(&read_json(file)?, varieties)?;
        return Target::jmap(target, input);
    }
    let mut it = target.split(':');
    let head = it.next().unwrap_or_default();
    let rest: Vec<&str> = it.collect();
    let one = |parts: &[&str]| -> Result<usize> { Ok(args::<usize>(target, parts, 1)?[0]) };
    let t = match head {
        "stereo" => Target::plain(target, sm::stereo(one(&rest)?)?),
        "stereo-inv" => Target::plain(target, sm::stereo_inv(one(&rest)?)?),
        "oplus" => Target::plain(target, sm::oplus(one(&rest)?)?),
        "oplus-composed" => Target::plain(target, sm::oplus_composed(one(&rest)?)?),
        "reflect" => {
            let a = args::<usize>(target, &rest, 2)?;
            Target::plain(target, sm::reflect(a[0], a[1])?)
        }
        "antipodal" => Target::plain(target, sm::antipodal(one(&rest)?)?),
        "phi" => Target::plain(target, sm::phi_double(one(&rest)?)?),
        "zpow" => Target::plain(target, sm::circle_power(args::<i64>(target, &rest, 1)?[0])),
        "p" => Target::plain(target, gm::first_column(one(&rest)?)?),
        "p-u" => Target::plain(target, gm::first_column_u(one(&rest)?)?),
        "s" => Target::matrix(target, gm::section_so(one(&rest)?)?),
        "s-u" => Target::matrix(target, gm::section_u(one(&rest)?)?),
        "r" => Target::matrix(target, gm::retract_so(one(&rest)?)?),
        "r-u" => Target::matrix(target, gm::retract_u(one(&rest)?)?),
        "chain" => {
            let a = args::<usize>(target, &rest, 2)?;
            Target::matrix(target, gm::chain_retract(a[0], a[1])?)
        }
        "su-retract" => Target::matrix(target, gm::su_retract(one(&rest)?)?),
        "embed-u" => Target::matrix(target, gm::embed_u_in_so(one(&rest)?)?),
        "jmap-hopf" if rest.is_empty() => Target::jmap(target, gm::hopf_input()?)?,
        "jmap-rotation" if rest.is_empty() => Target::jmap(target, gm::rotation_literal_input()?)?,
        "jmap-trivial" => {
            let a = args::<usize>(target, &rest, 2)?;
            Target::jmap(target, gm::jmap_trivial_input(a[0], a[1])?)?
        }
        _ if Path::new(target).is_file() => {
            let v = read_json(target)?;
            if v.get("rows").is_some() {
                Target::matrix(target, MatrixMap::from_json(&v, varieties)?)
            } else {
                Target::plain(target, RationalMap::from_json(&v, varieties)?)
            }
        }
        _ => return Err(unknown(target)),
    };
    Ok(t)
}

/// Runs `check` on `count` sampled points of `v`, skipping points where
/// `skip` is true. `check` returns a failure message or `None`.
pub fn sampled_check(
    name: &str,
    v: &Arc<Variety>,
    count: usize,
    seed: u64,
    cfg: &SampleConfig,
    mut skip: impl FnMut(&[Rational]) -> Result<bool>,
    mut check: impl FnMut(&[Rational]) -> Result<Option<String>>,
) -> Result<Report> {
    let mut done = 0;
    let mut skipped = 0usize;
    let mut index = 0u64;
    while done < count {
        if skipped > 8 * count + 8 {
            return Err(Error::InvalidArgument(format!("{name}: too many samples in the excluded locus")));
        }
        let p = sample_point_indexed(v, seed, index, cfg)?;
        index += 1;
        if skip(p.coords())? {
            skipped += 1;
            continue;
        }
        done += 1;
        if let Some(msg) = check(p.coords())? {
            return Ok(Report::sampling(name, false, count, seed, msg, Some(p.to_strings())));
        }
    }
    Ok(Report::sampling(
        name,
        true,
        count,
        seed,
        format!("exact check held at {done} sampled points ({skipped} skipped)"),
        None,
    ))
}

fn den_zero(m: &RationalMap) -> impl FnMut(&[Rational]) -> Result<bool> + '_ {
    move |c| Ok(m.denominator().evaluate(c)?.is_zero())
}

fn never(_: &[Rational]) -> Result<bool> {
    Ok(false)
}

fn fail_if(cond: bool, msg: &str) -> Option<String> {
    (!cond).then(|| msg.to_string())
}

fn e_vec(len: usize) -> Vec<Rational> {
    let mut e = vec![int(0); len];
    e[0] = int(1);
    e
}

fn exact(name: &str, passed: bool, detail: &str) -> Report {
    Report::symbolic(name, passed, detail)
}

/// `diag(I_o, h)`.
pub fn embed_block(h: &QMatrix, o: usize) -> QMatrix {
    let n = h.rows() + o;
    let mut g = QMatrix::identity(n);
    for i in 0..h.rows() {
        for j in 0..h.cols() {
            g[(o + i, o + j)] = h[(i, j)].clone();
        }
    }
    g
}

/// `diag(1, h)` for complex matrices.
pub fn embed_block_complex(h: &CMatrix) -> CMatrix {
    let n = h.n() + 1;
    let mut g = CMatrix::identity(n);
    for i in 0..h.n() {
        for j in 0..h.n() {
            g[(1 + i, 1 + j)] = h[(i, j)].clone();
        }
    }
    g
}

/// Exact random element of `SO(n)`.
pub fn random_so(n: usize, seed: u64, index: u64, cfg: &SampleConfig) -> Result<QMatrix> {
    let mut rng = stream_rng(seed, index);
    cayley(&random_skew_symmetric(n, &mut rng, cfg))
}

/// Exact random element of `U(k)`.
pub fn random_u(k: usize, seed: u64, index: u64, cfg: &SampleConfig) -> Result<CMatrix> {
    let mut rng = stream_rng(seed, index);
    cayley_complex(&random_skew_hermitian(k, &mut rng, cfg))
}

/// Exact random element of `SU(k)`.
pub fn random_su(k: usize, seed: u64, index: u64, cfg: &SampleConfig) -> Result<CMatrix> {
    let mut rng = stream_rng(seed, index);
    random_special_unitary(k, &mut rng, cfg)
}

fn is_so(m: &QMatrix) -> Result<bool> {
    Ok(m.transpose().mul(m)?.is_identity() && m.det()? == int(1))
}

fn is_unitary(m: &CMatrix) -> Result<bool> {
    Ok(m.conj_transpose().mul(m)?.is_identity())
}

/// `p ∘ s = id`, `s(e) = I`, and `s(a)` special orthogonal at samples.
pub fn section_so_suite(n: usize, trials: usize, seed: u64) -> Result<Vec<Report>> {
    let s = gm::section_so(n)?;
    let ps = gm::first_column(n)?.compose(s.base())?;
    let id = RationalMap::identity(s.base().domain());
    let cfg = SampleConfig::default();
    let dom = s.base().domain().clone();
    Ok(vec![
        equal_symbolic(&ps, &id)?.renamed("p o s = id"),
        equal_mod(&ps, &id, trials, seed)?.renamed("p o s = id (samples)"),
        exact("s(e) = I", s.evaluate_real(&e_vec(n))?.is_identity(), "exact evaluation at e"),
        sampled_check("s(a) in SO(n)", &dom, trials, seed, &cfg, den_zero(s.base()), |c| {
            Ok(fail_if(is_so(&s.evaluate_real(c)?)?, "s(a)^T s(a) != I or det != 1"))
        })?,
    ])
}

/// `p ∘ s' = id`, `s'(e) = I`, and `s'(a)` unitary at samples.
pub fn section_u_suite(k: usize, trials: usize, seed: u64) -> Result<Vec<Report>> {
    let s = gm::section_u(k)?;
    let ps = gm::first_column_u(k)?.compose(s.base())?;
    let id = RationalMap::identity(s.base().domain());
    let cfg = SampleConfig::default();
    let dom = s.base().domain().clone();
    Ok(vec![
        equal_symbolic(&ps, &id)?.renamed("p o s' = id"),
        equal_mod(&ps, &id, trials, seed)?.renamed("p o s' = id (samples)"),
        exact("s'(e) = I", s.evaluate_complex(&e_vec(2 * k))?.is_identity(), "exact evaluation at e"),
        sampled_check("s'(a) in U(k)", &dom, trials, seed, &cfg, den_zero(s.base()), |c| {
            Ok(fail_if(is_unitary(&s.evaluate_complex(c)?)?, "s'(a)^* s'(a) != I"))
        })?,
    ])
}

/// `p(r(g)) = e` at samples of `SO(n)` and `r` fixes `diag(1, SO(n-1))`.
pub fn retract_so_suite(n: usize, trials: usize, seed: u64) -> Result<Vec<Report>> {
    let r = gm::retract_so(n)?;
    let cfg = SampleConfig::default();
    let so = r.base().domain().clone();
    let e = e_vec(n);
    let mut fixed_ok = true;
    for i in 0..trials as u64 {
        let g = embed_block(&random_so(n - 1, seed, i, &cfg)?, 1);
        fixed_ok &= r.evaluate_real(g.data())? == g;
    }
    Ok(vec![
        exact("r(I) = I", r.evaluate_real(QMatrix::identity(n).data())?.is_identity(), "exact evaluation"),
        sampled_check("p(r(g)) = e", &so, trials, seed, &cfg, den_zero(r.base()), |c| {
            let out = r.evaluate_real(c)?;
            Ok(fail_if(out.column(0) == e && is_so(&out)?, "first column of r(g) is not e"))
        })?,
        Report::sampling(
            "r fixes SO(n-1)",
            fixed_ok,
            trials,
            seed,
            "r(diag(1, h)) = diag(1, h) for sampled h",
            None,
        ),
    ])
}

/// Unitary analogue of [`retract_so_suite`].
pub fn retract_u_suite(k: usize, trials: usize, seed: u64) -> Result<Vec<Report>> {
    let r = gm::retract_u(k)?;
    let cfg = SampleConfig::default();
    let u = r.base().domain().clone();
    let mut fixed_ok = true;
    for i in 0..trials as u64 {
        let g = embed_block_complex(&random_u(k - 1, seed, i, &cfg)?);
        fixed_ok &= r.evaluate_complex(&g.to_realified())? == g;
    }
    Ok(vec![
        exact(
            "r'(I) = I",
            r.evaluate_complex(&CMatrix::identity(k).to_realified())?.is_identity(),
            "exact evaluation",
        ),
        sampled_check("p(r'(g)) = e", &u, trials, seed, &cfg, den_zero(r.base()), |c| {
            let out = r.evaluate_complex(c)?;
            let col_e = (0..k).all(|i| out[(i, 0)] == if i == 0 { GaussianRational::one() } else { GaussianRational::zero() });
            Ok(fail_if(col_e && is_unitary(&out)?, "first column of r'(g) is not e"))
        })?,
        Report::sampling(
            "r' fixes U(k-1)",
            fixed_ok,
            trials,
            seed,
            "r'(diag(1, h)) = diag(1, h) for sampled h",
            None,
        ),
    ])
}

/// `chain_retract(m, k)` fixes `diag(I, SO(k))` and yields block form near `I`.
pub fn chain_suite(m: usize, k: usize, trials: usize, seed: u64) -> Result<Vec<Report>> {
    let c = gm::chain_retract(m, k)?;
    let cfg = SampleConfig::default();
    let mut fixed_ok = true;
    for i in 0..trials as u64 {
        let g = embed_block(&random_so(k, seed, i, &cfg)?, m - k);
        fixed_ok &= c.evaluate_real(g.data())? == g;
    }
    let near = SampleConfig::with_scale(Rational::new(1.into(), 10.into()));
    let so = c.base().domain().clone();
    Ok(vec![
        exact("chain(I) = I", c.evaluate_real(QMatrix::identity(m).data())?.is_identity(), "exact evaluation"),
        Report::sampling("chain fixes SO(k)", fixed_ok, trials, seed, "chain(diag(I, h)) = diag(I, h)", None),
        sampled_check("chain block form", &so, trials, seed, &near, den_zero(c.base()), |x| {
            let out = c.evaluate_real(x)?;
            let block = (0..m - k).all(|j| out.column(j) == {
                let mut v = vec![int(0); m];
                v[j] = int(1);
                v
            });
            Ok(fail_if(block && is_so(&out)?, "leading columns are not standard basis vectors"))
        })?,
    ])
}

/// `det su_retract(g) = 1` on `U(k)` samples and `su_retract` fixes `SU(k)`.
pub fn su_retract_suite(k: usize, trials: usize, seed: u64) -> Result<Vec<Report>> {
    let r = gm::su_retract(k)?;
    let cfg = SampleConfig::default();
    let u = r.base().domain().clone();
    let mut fixed_ok = true;
    for i in 0..trials as u64 {
        let g = random_su(k, seed, i, &cfg)?;
        fixed_ok &= r.evaluate_complex(&g.to_realified())? == g;
    }
    Ok(vec![
        sampled_check("det su_retract(g) = 1", &u, trials, seed, &cfg, never, |c| {
            Ok(fail_if(r.evaluate_complex(c)?.det() == GaussianRational::one(), "determinant differs from 1"))
        })?,
        Report::sampling("su_retract fixes SU(k)", fixed_ok, trials, seed, "exact matrix equality", None),
    ])
}

/// `embed(g)^T embed(g) = I` and `det = 1` on `U(k)` samples.
pub fn embed_suite(k: usize, trials: usize, seed: u64) -> Result<Vec<Report>> {
    let m = gm::embed_u_in_so(k)?;
    let cfg = SampleConfig::default();
    let u = m.base().domain().clone();
    Ok(vec![
        exact(
            "embed(I) = I",
            m.evaluate_real(&CMatrix::identity(k).to_realified())?.is_identity(),
            "exact evaluation",
        ),
        sampled_check("embed(g) in SO(2k)", &u, trials, seed, &cfg, never, |c| {
            Ok(fail_if(is_so(&m.evaluate_real(c)?)?, "not special orthogonal"))
        })?,
    ])
}

/// Fiber points `(x, 0)` of a J-map, with `x` sampled on `S^n`.
pub fn jmap_fiber(input: &JMapInput, count: usize, seed: u64) -> Result<Vec<PointOnVariety>> {
    let dom = Variety::sphere(input.n() + input.k());
    let sn = Variety::sphere(input.n());
    let cfg = SampleConfig::default();
    (0..count as u64)
        .map(|i| {
            let mut c = sample_point_indexed(&sn, seed, i, &cfg)?.coords().to_vec();
            c.extend(std::iter::repeat_n(int(0), input.k()));
            PointOnVariety::new(&dom, c)
        })
        .collect()
}

/// Fiber of `e`, rank of the differential there, and the differential formula.
pub fn jmap_suite(input: &JMapInput, g: &RationalMap, trials: usize, seed: u64) -> Result<Vec<Report>> {
    let e = PointOnVariety::base_point(g.codomain())?;
    let fiber = jmap_fiber(input, trials, seed)?;
    let probe = topo::regular_value_probe(g, &e, &fiber)?;
    let mut diff_ok = true;
    for p in &fiber {
        diff_ok &= gm::jmap_differential_matches(input, g, &p.coords()[..=input.n()])?;
    }
    Ok(vec![
        Report::sampling(
            "e is a regular value at (x, 0)",
            probe.regular_at_samples,
            trials,
            seed,
            format!(
                "all sampled (x, 0) map to e; ranks {:?} against expected {}",
                probe.points.iter().map(|r| r.rank).collect::<std::collections::BTreeSet<_>>(),
                probe.expected_rank
            ),
            None,
        ),
        Report::sampling(
            "differential at (x, 0)",
            diff_ok,
            trials,
            seed,
            "y-columns of the Jacobian equal (0; (2/Q(x)) f(x)^T)",
            None,
        ),
    ])
}

/// Pointwise boundary behaviour of ⊕: `a ⊕ (-e) = -e` and `e ⊕ a = a`.
pub fn oplus_boundary(n: usize, count: usize, seed: u64) -> Result<Report> {
    let f = sm::oplus(n)?;
    let s = Variety::sphere(n);
    let cfg = SampleConfig::default();
    let minus_e: Vec<Rational> = e_vec(n + 1).into_iter().map(|c| -c).collect();
    let is_minus_e = |c: &[Rational]| Ok(c == minus_e.as_slice());
    sampled_check("oplus boundary", &s, count, seed, &cfg, is_minus_e, |a| {
        let mut x = a.to_vec();
        x.extend(minus_e.iter().cloned());
        if f.evaluate_coords(&x)? != minus_e {
            return Ok(Some("a + (-e) != -e".into()));
        }
        let mut y = e_vec(n + 1);
        y.extend(a.iter().cloned());
        Ok(fail_if(f.evaluate_coords(&y)? == a, "e + a != a"))
    })
}

/// Generic checks plus the suite attached to the target family.
pub fn verify(target: &Target, trials: usize, samples: usize, seed: u64) -> Result<Vec<Report>> {
    let f = &target.map;
    let mut out = vec![maps_into(f, trials, seed)?, denominator_check(f, samples, seed)?];
    let mut parts = target.name.split(':');
    let head = parts.next().unwrap_or_default();
    let nums: Vec<i64> = parts.filter_map(|p| p.parse().ok()).collect();
    let n0 = nums.first().copied().unwrap_or(0).max(0) as usize;
    match head {
        "oplus" => {
            out.extend(sm::oplus_identity_checks(n0)?);
            out.push(equal_mod(f, &sm::oplus_composed(n0)?, trials, seed)?.renamed("closed form = composed definition"));
            out.push(equal_mod(f, &f.compose(&swap_factors(n0)?)?, trials, seed)?.renamed("commutativity"));
            out.push(oplus_boundary(n0, trials, seed)?);
        }
        "stereo" => {
            let back = sm::stereo_inv(n0)?.compose(f)?;
            out.push(equal_mod(&back, &RationalMap::identity(f.domain()), trials, seed)?.renamed("stereo_inv o stereo = id"));
        }
        "stereo-inv" => {
            let back = sm::stereo(n0)?.compose(f)?;
            out.push(equal_mod(&back, &RationalMap::identity(f.domain()), trials, seed)?.renamed("stereo o stereo_inv = id"));
        }
        "reflect" => {
            out.push(equal_symbolic(&f.compose(f)?, &RationalMap::identity(f.domain()))?.renamed("involution"));
            let e = e_vec(n0 + 1);
            out.push(exact("fixes e", f.evaluate_coords(&e)? == e, "exact evaluation"));
        }
        "phi" => {
            out.push(equal_symbolic(f, &f.compose(&sm::antipodal(n0)?)?)?.renamed("phi(x) = phi(-x)"));
            let e = e_vec(n0 + 1);
            out.push(exact("phi(e) = e", f.evaluate_coords(&e)? == e, "exact evaluation"));
        }
        "zpow" => {
            let w = topo::winding(f)?;
            out.push(exact("winding = d", w == nums[0], &format!("winding {w}")));
        }
        "s" => out.extend(section_so_suite(n0, trials, seed)?),
        "s-u" => out.extend(section_u_suite(n0, trials, seed)?),
        "r" => out.extend(retract_so_suite(n0, trials, seed)?),
        "r-u" => out.extend(retract_u_suite(n0, trials, seed)?),
        "chain" => out.extend(chain_suite(n0, nums[1] as usize, trials, seed)?),
        "su-retract" => out.extend(su_retract_suite(n0, trials, seed)?),
        "embed-u" => out.extend(embed_suite(n0, trials, seed)?),
        _ => {}
    }
    if let Some(input) = &target.jmap {
        out.extend(jmap_suite(input, f, trials, seed)?);
    }
    Ok(out)
}

/// `(x, y) ↦ (y, x)` on `S^n × S^n`.
pub fn swap_factors(n: usize) -> Result<RationalMap> {
    let d = Variety::sphere_product(&[n, n]);
    let reg = d.registry();
    let m = n + 1;
    let coords = (0..2 * m)
        .map(|i| crate::poly::Polynomial::var(reg, (i + m) % (2 * m)))
        .collect();
    RationalMap::polynomial(d.clone(), d, coords)
}
