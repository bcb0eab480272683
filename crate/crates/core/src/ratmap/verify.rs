//! Verification of rational maps: symbolic membership of the image,
//! denominator sign sampling, and randomized equality testing.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::map::{format_point, require_same, RationalMap};
use super::sample::{sample_point_indexed, SampleConfig};
use super::variety::PointOnVariety;
use crate::error::{Error, Result};
use crate::poly::{format_rational, Polynomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Exact reduction modulo the sphere relations of the domain.
    Symbolic,
    /// Exact evaluation at sampled rational points.
    Sampling,
    /// Nothing to check.
    Trivial,
}

/// Outcome of one verification. Randomized checks record trials and seed.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub check: String,
    pub method: Method,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

impl Report {
    /// Same report under a different check name.
    pub fn renamed(mut self, check: impl Into<String>) -> Self {
        self.check = check.into();
        self
    }

    pub fn symbolic(check: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            method: Method::Symbolic,
            passed,
            trials: None,
            seed: None,
            detail: detail.into(),
            witness: None,
        }
    }

    pub fn sampling(
        check: impl Into<String>,
        passed: bool,
        trials: usize,
        seed: u64,
        detail: impl Into<String>,
        witness: Option<Vec<String>>,
    ) -> Self {
        Report {
            check: check.into(),
            method: Method::Sampling,
            passed,
            trials: Some(trials),
            seed: Some(seed),
            detail: detail.into(),
            witness,
        }
    }
}

/// Upper bound on skipped samples (denominator zero) per requested trial.
const MAX_SKIPS_PER_TRIAL: u64 = 8;

/// Draws domain points by index, skipping those where `usable` is false,
/// and hands each accepted point to `visit` until `count` were accepted or
/// `visit` returns `false`.
fn for_each_sample(
    f: &RationalMap,
    count: usize,
    seed: u64,
    mut usable: impl FnMut(&PointOnVariety) -> Result<bool>,
    mut visit: impl FnMut(&PointOnVariety) -> Result<bool>,
) -> Result<(usize, u64)> {
    let cfg = SampleConfig::default();
    let mut accepted = 0;
    let mut skipped = 0;
    let mut index = 0u64;
    while accepted < count {
        if skipped > MAX_SKIPS_PER_TRIAL * count as u64 {
            return Err(Error::InvalidArgument(format!(
                "too many samples of {} fall in the excluded locus",
                f.domain().name()
            )));
        }
        let p = sample_point_indexed(f.domain(), seed, index, &cfg)?;
        index += 1;
        if !usable(&p)? {
            skipped += 1;
            continue;
        }
        accepted += 1;
        if !visit(&p)? {
            break;
        }
    }
    Ok((accepted, skipped))
}

fn denominator_nonzero(f: &RationalMap) -> impl FnMut(&PointOnVariety) -> Result<bool> + '_ {
    move |p| Ok(!f.denominator().evaluate(p.coords())?.is_zero())
}

/// Decides whether `f` maps its domain into its codomain.
///
/// For sphere domains every codomain relation `R` is pulled back as
/// `D^deg(R) * R(N/D)` and reduced modulo the sphere blocks; zero means the
/// relation holds identically. Other domains fall back to exact evaluation
/// at `trials` sampled points.
pub fn maps_into(f: &RationalMap, trials: usize, seed: u64) -> Result<Report> {
    let check = format!("maps_into {}", f.codomain().name());
    let relations = f.codomain().relations();
    if relations.is_empty() {
        return Ok(Report {
            check,
            method: Method::Trivial,
            passed: true,
            trials: None,
            seed: None,
            detail: format!("{} has no relations", f.codomain().name()),
            witness: None,
        });
    }
    let domain = f.domain();
    if domain.is_sphere_reducible() {
        let reg = domain.registry();
        let mut failures = Vec::new();
        for (i, rel) in relations.iter().enumerate() {
            let pulled = rel
                .substitute_homogenized(f.numerators(), f.denominator(), rel.degree(), reg)?
                .normal_form(domain.sphere_blocks())?;
            if !pulled.is_zero() {
                failures.push(format!("relation {i} leaves a residue with {} terms", pulled.len()));
            }
        }
        let passed = failures.is_empty();
        let detail = if passed {
            format!(
                "all {} codomain relations reduce to 0 modulo the sphere relations of {}",
                relations.len(),
                domain.name()
            )
        } else {
            failures.join("; ")
        };
        return Ok(Report::symbolic(check, passed, detail));
    }
    let mut witness = None;
    let mut detail = String::new();
    let (done, skipped) = for_each_sample(f, trials, seed, denominator_nonzero(f), |p| {
        let image = f.evaluate_coords(p.coords())?;
        for (i, rel) in relations.iter().enumerate() {
            let v = rel.evaluate(&image)?;
            if !v.is_zero() {
                witness = Some(format_point(p.coords()));
                detail = format!("relation {i} evaluates to {} at the witness", format_rational(&v));
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    let passed = witness.is_none();
    if passed {
        detail = format!(
            "all codomain relations vanish exactly at {done} sampled points ({skipped} skipped in the excluded locus)"
        );
    }
    Ok(Report::sampling(check, passed, trials, seed, detail, witness))
}

/// Samples the denominator at `samples` exact domain points and fails on
/// any nonpositive value.
pub fn denominator_check(f: &RationalMap, samples: usize, seed: u64) -> Result<Report> {
    let mut witness = None;
    let mut min_seen: Option<crate::poly::Rational> = None;
    let mut detail = String::new();
    for_each_sample(f, samples, seed, |_| Ok(true), |p| {
        let v = f.denominator().evaluate(p.coords())?;
        if !v.is_positive() {
            witness = Some(format_point(p.coords()));
            detail = format!("denominator is {} at the witness", format_rational(&v));
            return Ok(false);
        }
        if min_seen.as_ref().is_none_or(|m| v < *m) {
            min_seen = Some(v);
        }
        Ok(true)
    })?;
    let passed = witness.is_none();
    if passed {
        let min = min_seen.map(|m| crate::poly::rational_to_f64(&m)).unwrap_or(f64::NAN);
        detail = format!("denominator positive at all samples (minimum {min:.3e}); excluded locus: {}", f.excluded());
    }
    if let Some(note) = f.positivity_note() {
        detail.push_str("; analytic note: ");
        detail.push_str(note);
    }
    Ok(Report::sampling("denominator_check", passed, samples, seed, detail, witness))
}

/// Randomized equality of two maps with the same domain and codomain.
///
/// Compares `N_f,i * D_g - N_g,i * D_f` at `trials` exact sample points
/// where both denominators are nonzero.
pub fn equal_mod(f: &RationalMap, g: &RationalMap, trials: usize, seed: u64) -> Result<Report> {
    require_same(f.domain(), g.domain())?;
    require_same(f.codomain(), g.codomain())?;
    let mut witness = None;
    let mut detail = String::new();
    let usable = |p: &PointOnVariety| -> Result<bool> {
        Ok(!f.denominator().evaluate(p.coords())?.is_zero() && !g.denominator().evaluate(p.coords())?.is_zero())
    };
    let (done, skipped) = for_each_sample(f, trials, seed, usable, |p| {
        let c = p.coords();
        let (df, dg) = (f.denominator().evaluate(c)?, g.denominator().evaluate(c)?);
        for (i, (nf, ng)) in f.numerators().iter().zip(g.numerators()).enumerate() {
            if nf.evaluate(c)? * &dg != ng.evaluate(c)? * &df {
                witness = Some(format_point(c));
                detail = format!("coordinate {i} differs at the witness");
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    let passed = witness.is_none();
    if passed {
        let deg = f.max_degree() + g.max_degree();
        detail = format!(
            "cross-multiplied coordinates agree exactly at {done} sampled points ({skipped} skipped); \
             a nonzero difference has degree <= {deg} and vanishes on a proper subvariety, \
             so agreement at independent random points is strong evidence (Schwartz-Zippel style, heuristic)"
        );
    }
    Ok(Report::sampling("equal_mod", passed, trials, seed, detail, witness))
}

/// Exact equality for maps on a sphere-product (or affine) domain: every
/// cross-multiplied coordinate difference reduces to 0.
pub fn equal_symbolic(f: &RationalMap, g: &RationalMap) -> Result<Report> {
    require_same(f.domain(), g.domain())?;
    require_same(f.codomain(), g.codomain())?;
    if !f.domain().is_sphere_reducible() {
        return Err(Error::InvalidArgument(format!(
            "{} is not a sphere product; use equal_mod",
            f.domain().name()
        )));
    }
    let blocks = f.domain().sphere_blocks();
    for (i, (nf, ng)) in f.numerators().iter().zip(g.numerators()).enumerate() {
        let diff: Polynomial = nf * g.denominator() - ng * f.denominator();
        if !diff.normal_form(blocks)?.is_zero() {
            return Ok(Report::symbolic("equal_symbolic", false, format!("coordinate {i} differs")));
        }
    }
    Ok(Report::symbolic(
        "equal_symbolic",
        true,
        format!("all cross-multiplied differences reduce to 0 on {}", f.domain().name()),
    ))
}
