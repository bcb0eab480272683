//! Exact construction and verification of regular maps between spheres,
//! orthogonal groups, and unitary groups.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: sparse rational polynomials and sphere normal forms,
//! * [`ratmap`]: varieties, rational maps, exact samplers and verifiers,
//! * [`sphere_maps`] and [`group_maps`]: the catalog of explicit maps,
//! * [`topo`]: winding numbers, Monte Carlo degrees, regular values and
//!   Radon-Hurwitz numbers,
//! * [`catalog`] and [`cli`]: name resolution, verification suites and the
//!   command-line front end.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod group_maps;
pub mod linalg;
pub mod poly;
pub mod ratmap;
pub mod sphere_maps;
pub mod topo;

pub use error::{Error, Result};
