//! Exact rational point samplers.
//!
//! Each sample index draws from its own ChaCha stream derived from
//! `(seed, index)`, so samples do not depend on how many were drawn before.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::variety::{PointOnVariety, SamplerKind, Variety};
use crate::error::{Error, Result};
use crate::linalg::{cayley, cayley_complex, CMatrix, QMatrix};
use crate::poly::{GaussianRational, Rational};

/// Height bound and scaling applied to sampler parameters.
#[derive(Debug, Clone)]
pub struct SampleConfig {
    /// Numerators lie in `[-height, height]`, denominators in `[1, height]`.
    pub height: u64,
    /// Every parameter is multiplied by this factor; small values give
    /// points near the base point.
    pub scale: Rational,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            height: 1000,
            scale: Rational::one(),
        }
    }
}

impl SampleConfig {
    pub fn with_scale(scale: Rational) -> Self {
        SampleConfig {
            scale,
            ..Default::default()
        }
    }
}

pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_rational(rng: &mut ChaCha8Rng, cfg: &SampleConfig) -> Rational {
    let h = cfg.height.max(1) as i64;
    let num = rng.random_range(-h..=h);
    let den = rng.random_range(1..=h);
    Rational::new(BigInt::from(num), BigInt::from(den)) * &cfg.scale
}

/// Inverse stereographic projection `R^n -> S^n` evaluated exactly.
pub fn stereo_inv_point(x: &[Rational]) -> Vec<Rational> {
    let sq: Rational = x.iter().map(|v| v * v).sum();
    let den = Rational::one() + &sq;
    let mut out = Vec::with_capacity(x.len() + 1);
    out.push((Rational::one() - &sq) / &den);
    for v in x {
        out.push(Rational::from_integer(BigInt::from(2)) * v / &den);
    }
    out
}

pub fn random_skew_symmetric(n: usize, rng: &mut ChaCha8Rng, cfg: &SampleConfig) -> QMatrix {
    let mut a = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = random_rational(rng, cfg);
            a[(j, i)] = -v.clone();
            a[(i, j)] = v;
        }
    }
    a
}

pub fn random_skew_hermitian(k: usize, rng: &mut ChaCha8Rng, cfg: &SampleConfig) -> CMatrix {
    let mut a = CMatrix::zeros(k);
    for i in 0..k {
        a[(i, i)] = GaussianRational::new(Rational::zero(), random_rational(rng, cfg));
        for j in i + 1..k {
            let z = GaussianRational::new(random_rational(rng, cfg), random_rational(rng, cfg));
            a[(j, i)] = -&z.conj();
            a[(i, j)] = z;
        }
    }
    a
}

/// Random special unitary matrix: a Cayley sample with its first column
/// multiplied by the conjugate of its determinant.
pub fn random_special_unitary(k: usize, rng: &mut ChaCha8Rng, cfg: &SampleConfig) -> Result<CMatrix> {
    let mut g = cayley_complex(&random_skew_hermitian(k, rng, cfg))?;
    let c = g.det().conj();
    for i in 0..k {
        g[(i, 0)] = &g[(i, 0)] * &c;
    }
    Ok(g)
}

fn raw_coords(v: &Variety, rng: &mut ChaCha8Rng, cfg: &SampleConfig) -> Result<Vec<Rational>> {
    Ok(match v.sampler() {
        SamplerKind::Affine(n) => (0..*n).map(|_| random_rational(rng, cfg)).collect(),
        SamplerKind::Spheres(dims) => dims
            .iter()
            .flat_map(|&n| {
                let x: Vec<Rational> = (0..n).map(|_| random_rational(rng, cfg)).collect();
                stereo_inv_point(&x)
            })
            .collect(),
        SamplerKind::SpecialOrthogonal(n) => cayley(&random_skew_symmetric(*n, rng, cfg))?.into_vec(),
        SamplerKind::Unitary(k) => cayley_complex(&random_skew_hermitian(*k, rng, cfg))?.to_realified(),
        SamplerKind::SpecialUnitary(k) => random_special_unitary(*k, rng, cfg)?.to_realified(),
        SamplerKind::None => return Err(Error::NoSampler(v.name().to_string())),
    })
}

/// The sample with the given index; membership is checked exactly.
pub fn sample_point_indexed(
    v: &Arc<Variety>,
    seed: u64,
    index: u64,
    cfg: &SampleConfig,
) -> Result<PointOnVariety> {
    let mut rng = stream_rng(seed, index);
    let coords = raw_coords(v, &mut rng, cfg)?;
    PointOnVariety::new(v, coords)
}

pub fn sample_point(v: &Arc<Variety>, seed: u64) -> Result<PointOnVariety> {
    sample_point_indexed(v, seed, 0, &SampleConfig::default())
}

/// Samples with indices `0..count`.
pub fn sample_points(
    v: &Arc<Variety>,
    count: usize,
    seed: u64,
    cfg: &SampleConfig,
) -> Result<Vec<PointOnVariety>> {
    (0..count as u64)
        .map(|i| sample_point_indexed(v, seed, i, cfg))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    #[test]
    fn circle_parameter_one() {
        assert_eq!(stereo_inv_point(&[int(1)]), vec![int(0), int(1)]);
        assert_eq!(stereo_inv_point(&[int(0), int(0)]), vec![int(1), int(0), int(0)]);
    }

    #[test]
    fn samplers_produce_points_on_their_varieties() {
        let cfg = SampleConfig::default();
        for v in [
            Variety::affine(3),
            Variety::sphere(2),
            Variety::sphere_product(&[1, 3]),
            Variety::special_orthogonal(3),
            Variety::unitary(2),
            Variety::special_unitary(2),
        ] {
            for i in 0..5 {
                sample_point_indexed(&v, 11, i, &cfg).unwrap();
            }
        }
    }

    #[test]
    fn indexed_streams_are_stable() {
        let v = Variety::sphere(2);
        let cfg = SampleConfig::default();
        let batch = sample_points(&v, 4, 3, &cfg).unwrap();
        assert_eq!(batch[3], sample_point_indexed(&v, 3, 3, &cfg).unwrap());
        assert_ne!(batch[0], batch[1]);
    }

    #[test]
    fn missing_sampler() {
        let base = Variety::sphere(1);
        let v = Variety::custom("odd", base.registry().clone(), vec![], vec![], SamplerKind::None).unwrap();
        assert!(matches!(sample_point(&v, 0), Err(Error::NoSampler(_))));
    }
}
