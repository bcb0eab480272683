//! Numerical topology of sphere maps: winding numbers, Monte Carlo degrees,
//! exact regular-value probes, and Radon-Hurwitz numbers.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::poly::{format_rational, Rational};
use crate::ratmap::{stream_rng, PointOnVariety, RationalMap, Variety};
use crate::sphere_maps::sphere_dim;

/// Denominators below this magnitude count as hitting the excluded locus.
const DEN_EPS: f64 = 1e-12;
const WINDING_START: usize = 64;
const WINDING_MAX: usize = 1 << 22;

fn circle_self_map(f: &RationalMap) -> Result<()> {
    if sphere_dim(f.domain()) != Some(1) || sphere_dim(f.codomain()) != Some(1) {
        return Err(Error::InvalidArgument(format!(
            "winding needs a map S^1 -> S^1, got {} -> {}",
            f.domain().name(),
            f.codomain().name()
        )));
    }
    Ok(())
}

/// Winding number of `f : S^1 -> S^1` from wrapped angle increments over a
/// uniform partition, refined until every increment is below `π/2`.
pub fn winding(f: &RationalMap) -> Result<i64> {
    circle_self_map(f)?;
    let c = f.compile(false);
    let mut n = WINDING_START;
    loop {
        let mut angles = Vec::with_capacity(n);
        for j in 0..n {
            let t = 2.0 * PI * j as f64 / n as f64;
            let x = [t.cos(), t.sin()];
            let d = c.denominator(&x);
            if d.abs() < DEN_EPS {
                return Err(Error::DenominatorZeroAtPoint(format!(
                    "near angle {t:.6} on S^1 ({})",
                    f.excluded()
                )));
            }
            let v = c.value_with_den(&x, d);
            angles.push(v[1].atan2(v[0]));
        }
        let mut total = 0.0;
        let mut max_step: f64 = 0.0;
        for j in 0..n {
            let mut step = angles[(j + 1) % n] - angles[j];
            step -= 2.0 * PI * (step / (2.0 * PI)).round();
            max_step = max_step.max(step.abs());
            total += step;
        }
        if max_step < PI / 2.0 {
            let turns = total / (2.0 * PI);
            let rounded = turns.round();
            if (turns - rounded).abs() > 1e-6 {
                return Err(Error::NonConvergent(format!(
                    "accumulated {turns} turns is not an integer"
                )));
            }
            return Ok(rounded as i64);
        }
        n *= 2;
        if n > WINDING_MAX {
            return Err(Error::NonConvergent(format!(
                "angle steps still exceed pi/2 with {WINDING_MAX} partition points"
            )));
        }
    }
}

/// Monte Carlo estimate of a mapping degree.
#[derive(Debug, Clone, Serialize)]
pub struct DegreeEstimate {
    pub estimate: f64,
    pub rounded: i64,
    pub half_width: f64,
    pub samples: usize,
    pub seed: u64,
    pub resample_count: u64,
    pub conclusive: bool,
}

/// Uniform point of `S^n` from a normalised Gaussian vector.
fn gaussian_sphere_point(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let r = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if r > 1e-9 {
            return v.into_iter().map(|a| a / r).collect();
        }
    }
}

fn det_f64(mut a: Vec<f64>, n: usize) -> f64 {
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| a[i * n + c].abs().total_cmp(&a[j * n + c].abs()))
            .expect("nonempty range");
        if a[p * n + c] == 0.0 {
            return 0.0;
        }
        if p != c {
            for j in 0..n {
                a.swap(p * n + j, c * n + j);
            }
            det = -det;
        }
        let piv = a[c * n + c];
        det *= piv;
        for i in c + 1..n {
            let f = a[i * n + c] / piv;
            for j in c..n {
                a[i * n + j] -= f * a[c * n + j];
            }
        }
    }
    det
}

/// Orthonormal frame of the tangent space at the unit vector `x`, as
/// columns, oriented so that `det[x | B] > 0`.
///
/// The standard basis vector at the largest coordinate of `x` (lowest index
/// on ties) is dropped and the rest are orthonormalised against `x` in
/// index order.
pub fn tangent_frame(x: &[f64]) -> Vec<Vec<f64>> {
    let m = x.len();
    let pivot = (0..m).fold(0, |b, i| if x[i].abs() > x[b].abs() { i } else { b });
    let mut basis: Vec<Vec<f64>> = vec![x.to_vec()];
    for i in (0..m).filter(|&i| i != pivot) {
        let mut v = vec![0.0; m];
        v[i] = 1.0;
        for b in &basis {
            let d: f64 = v.iter().zip(b).map(|(a, c)| a * c).sum();
            for (vk, bk) in v.iter_mut().zip(b) {
                *vk -= d * bk;
            }
        }
        let r = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        basis.push(v.into_iter().map(|a| a / r).collect());
    }
    let mut full = vec![0.0; m * m];
    for (j, col) in basis.iter().enumerate() {
        for i in 0..m {
            full[i * m + j] = col[i];
        }
    }
    if det_f64(full, m) < 0.0 {
        for a in basis[m - 1].iter_mut() {
            *a = -*a;
        }
    }
    basis.remove(0);
    basis
}

fn sphere_self_map_dim(f: &RationalMap) -> Result<usize> {
    match (sphere_dim(f.domain()), sphere_dim(f.codomain())) {
        (Some(a), Some(b)) if a == b => Ok(a),
        _ => Err(Error::InvalidArgument(format!(
            "degree needs a self-map of a sphere, got {} -> {}",
            f.domain().name(),
            f.codomain().name()
        ))),
    }
}

/// Degree of `f : S^n -> S^n` (`n >= 2`) as the mean of the tangent
/// Jacobian determinant at uniform random points.
///
/// Each sample index draws from its own `(seed, index)` stream, so the
/// estimate does not depend on the number of worker threads.
pub fn degree_mc(f: &RationalMap, samples: usize, seed: u64) -> Result<DegreeEstimate> {
    let n = sphere_self_map_dim(f)?;
    if n < 2 {
        return Err(Error::InvalidArgument("degree_mc needs n >= 2; use winding on S^1".into()));
    }
    if samples < 2 {
        return Err(Error::InvalidArgument("degree_mc needs at least 2 samples".into()));
    }
    let c = f.compile(true);
    let m = n + 1;
    let values: Vec<(f64, u64)> = (0..samples as u64)
        .into_par_iter()
        .map(|idx| {
            let mut rng = stream_rng(seed, idx);
            let mut resamples = 0;
            loop {
                let x = gaussian_sphere_point(&mut rng, m);
                let d = c.denominator(&x);
                if d.abs() < DEN_EPS {
                    resamples += 1;
                    continue;
                }
                let y = c.value_with_den(&x, d);
                let r = y.iter().map(|a| a * a).sum::<f64>().sqrt();
                let y: Vec<f64> = y.iter().map(|a| a / r).collect();
                let jac = c.jacobian(&x).expect("compiled with derivatives");
                let bx = tangent_frame(&x);
                let by = tangent_frame(&y);
                let mut t = vec![0.0; n * n];
                for (a, ya) in by.iter().enumerate() {
                    for (b, xb) in bx.iter().enumerate() {
                        let mut s = 0.0;
                        for i in 0..m {
                            let jx: f64 = (0..m).map(|j| jac[i * m + j] * xb[j]).sum();
                            s += ya[i] * jx;
                        }
                        t[a * n + b] = s;
                    }
                }
                return (det_f64(t, n), resamples);
            }
        })
        .collect();
    let count = samples as f64;
    let mean = values.iter().map(|v| v.0).sum::<f64>() / count;
    let var = values.iter().map(|v| (v.0 - mean).powi(2)).sum::<f64>() / (count - 1.0);
    let half_width = 3.0 * var.sqrt() / count.sqrt();
    let rounded = mean.round();
    Ok(DegreeEstimate {
        estimate: mean,
        rounded: rounded as i64,
        half_width,
        samples,
        seed,
        resample_count: values.iter().map(|v| v.1).sum(),
        conclusive: half_width < 0.5 && (mean - rounded).abs() <= half_width,
    })
}

/// Per-point result of a regular-value probe.
#[derive(Debug, Clone, Serialize)]
pub struct FiberRank {
    pub point: Vec<String>,
    pub rank: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularValueReport {
    pub value: Vec<String>,
    pub expected_rank: usize,
    pub points: Vec<FiberRank>,
    pub regular_at_samples: bool,
}

/// Gradients of the relations at `coords`, as rows.
fn relation_gradients(v: &Variety, coords: &[Rational]) -> Result<QMatrix> {
    let n = v.ambient_dim();
    let rels = v.relations();
    let mut m = QMatrix::zeros(rels.len(), n);
    for (i, r) in rels.iter().enumerate() {
        for j in 0..n {
            m[(i, j)] = r.differentiate(j)?.evaluate(coords)?;
        }
    }
    Ok(m)
}

/// Exact rank of `df` from the tangent space at `coords` onto the tangent
/// space of the codomain at `f(coords)`.
pub fn tangent_rank(f: &RationalMap, coords: &[Rational]) -> Result<usize> {
    let image = f.evaluate_coords(coords)?;
    let jac = f.jacobian_exact(coords)?;
    let tangent = relation_gradients(f.domain(), coords)?.nullspace();
    let normals = relation_gradients(f.codomain(), &image)?;
    let m = f.codomain().ambient_dim();
    let mut cols: Vec<Vec<Rational>> = tangent
        .iter()
        .map(|t| {
            (0..m)
                .map(|i| (0..t.len()).fold(Rational::from_integer(0.into()), |acc, j| acc + &jac[(i, j)] * &t[j]))
                .collect()
        })
        .collect();
    let normal_cols: Vec<Vec<Rational>> = (0..normals.rows())
        .map(|r| (0..m).map(|j| normals[(r, j)].clone()).collect())
        .collect();
    let normal_rank = if normal_cols.is_empty() { 0 } else { QMatrix::from_columns(&normal_cols).rank() };
    cols.extend(normal_cols);
    if cols.is_empty() {
        return Ok(0);
    }
    Ok(QMatrix::from_columns(&cols).rank() - normal_rank)
}

/// Checks that every fiber point maps exactly to `value` and reports the
/// rank of the induced tangent map there.
pub fn regular_value_probe(
    f: &RationalMap,
    value: &PointOnVariety,
    fiber: &[PointOnVariety],
) -> Result<RegularValueReport> {
    let expected_rank = f
        .codomain()
        .dimension()
        .ok_or_else(|| Error::InvalidArgument(format!("dimension of {} unknown", f.codomain().name())))?;
    let mut points = Vec::with_capacity(fiber.len());
    for (i, p) in fiber.iter().enumerate() {
        if f.evaluate_coords(p.coords())? != value.coords() {
            return Err(Error::FiberMismatch(i));
        }
        points.push(FiberRank {
            point: p.to_strings(),
            rank: tangent_rank(f, p.coords())?,
        });
    }
    Ok(RegularValueReport {
        value: value.coords().iter().map(format_rational).collect(),
        expected_rank,
        regular_at_samples: points.iter().all(|r| r.rank == expected_rank),
        points,
    })
}

/// `φ(t) = #{0 < i <= t : i mod 8 in {0, 1, 2, 4}}`, by the closed form
/// `4 (t / 8) + #{r in {1, 2, 4} : r <= t mod 8}`.
pub fn rh_phi(t: u64) -> u64 {
    let r = t % 8;
    4 * (t / 8) + [1, 2, 4].iter().filter(|&&c| c <= r).count() as u64
}

#[derive(Debug, Clone, Serialize)]
pub struct RadonHurwitzQuery {
    pub p: u64,
    pub phi: u64,
    pub a_p: u64,
}

/// `a_p = 2^{φ(p-1)}`.
pub fn radon_hurwitz(p: u64) -> Result<RadonHurwitzQuery> {
    if p == 0 {
        return Err(Error::InvalidArgument("Radon-Hurwitz index must be >= 1".into()));
    }
    let phi = rh_phi(p - 1);
    if phi >= 64 {
        return Err(Error::InvalidArgument(format!("a_{p} does not fit in 64 bits")));
    }
    Ok(RadonHurwitzQuery { p, phi, a_p: 1 << phi })
}

#[derive(Debug, Clone, Serialize)]
pub struct CodimPairVerdict {
    pub m: u64,
    pub k: u64,
    pub a_m_plus_2: u64,
    pub holds: bool,
}

/// Whether `k ≡ -1 (mod a_{m+2})`, for `m >= 1` and `k > m + 1`.
pub fn check_codim_pair(m: u64, k: u64) -> Result<CodimPairVerdict> {
    if m < 1 || k <= m + 1 {
        return Err(Error::InvalidArgument(format!("pair (m={m}, k={k}) needs m >= 1 and k > m + 1")));
    }
    let a = radon_hurwitz(m + 2)?.a_p;
    Ok(CodimPairVerdict {
        m,
        k,
        a_m_plus_2: a,
        holds: (k + 1).is_multiple_of(a),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use crate::sphere_maps::{circle_power, phi_double, reflect};

    #[test]
    fn winding_examples() {
        let s1 = Variety::sphere(1);
        assert_eq!(winding(&RationalMap::identity(&s1)).unwrap(), 1);
        let e = PointOnVariety::base_point(&s1).unwrap();
        assert_eq!(winding(&RationalMap::constant(&s1, &e)).unwrap(), 0);
        assert_eq!(winding(&phi_double(1).unwrap()).unwrap(), 2);
        assert_eq!(winding(&circle_power(-3)).unwrap(), -3);
        let r = reflect(1, 2).unwrap().compose(&circle_power(3)).unwrap();
        assert_eq!(winding(&r).unwrap(), -3);
    }

    #[test]
    fn frames_are_oriented_and_orthonormal() {
        for x in [[1.0, 0.0, 0.0], [0.0, 0.6, -0.8], [-0.48, 0.6, 0.64]] {
            let b = tangent_frame(&x);
            let mut m = Vec::new();
            for i in 0..3 {
                m.push(x[i]);
                m.push(b[0][i]);
                m.push(b[1][i]);
            }
            assert!((det_f64(m, 3) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn degree_of_identity_and_reflection() {
        let s2 = Variety::sphere(2);
        let d = degree_mc(&RationalMap::identity(&s2), 2000, 0).unwrap();
        assert_eq!(d.rounded, 1);
        assert!(d.half_width < 1e-9);
        let r = degree_mc(&reflect(2, 2).unwrap(), 2000, 0).unwrap();
        assert_eq!(r.rounded, -1);
    }

    #[test]
    fn tangent_ranks() {
        let s2 = Variety::sphere(2);
        let e = PointOnVariety::base_point(&s2).unwrap();
        assert_eq!(tangent_rank(&RationalMap::identity(&s2), e.coords()).unwrap(), 2);
        let c = RationalMap::constant(&s2, &e);
        let rep = regular_value_probe(&c, &e, std::slice::from_ref(&e)).unwrap();
        assert_eq!(rep.points[0].rank, 0);
        assert!(!rep.regular_at_samples);
        let q = PointOnVariety::new(&s2, vec![rat(3, 5), rat(4, 5), int(0)]).unwrap();
        assert!(matches!(regular_value_probe(&c, &q, &[e]), Err(Error::FiberMismatch(0))));
    }

    #[test]
    fn radon_hurwitz_small_values() {
        let a: Vec<u64> = (1..=9).map(|p| radon_hurwitz(p).unwrap().a_p).collect();
        assert_eq!(a, vec![1, 2, 4, 4, 8, 8, 8, 8, 16]);
        assert!(check_codim_pair(1, 7).unwrap().holds);
        assert!(!check_codim_pair(1, 8).unwrap().holds);
        assert!(radon_hurwitz(0).is_err() && check_codim_pair(1, 2).is_err());
    }
}
