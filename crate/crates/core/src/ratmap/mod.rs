//! Rational maps between embedded real varieties.

mod float;
mod json;
mod map;
mod sample;
mod variety;
mod verify;

pub use float::{CompiledMap, FloatPoly};
pub use json::VarietyRegistry;
pub use map::{compose, EntryKind, MatrixMap, RationalMap};
pub use sample::{
    random_skew_hermitian, random_skew_symmetric, random_special_unitary, sample_point,
    sample_point_indexed, sample_points, stereo_inv_point, stream_rng, SampleConfig,
};
pub use variety::{PointOnVariety, SamplerKind, Variety};
pub use verify::{denominator_check, equal_mod, equal_symbolic, maps_into, Method, Report};
pub(crate) use map::require_same;
