//! Parametrized immersions with analytic second-order jets, their second
//! fundamental forms and curvature invariants, and the explicit
//! constructions of low-curvature tori and expanding maps.

pub mod catalog;
pub mod curvature;
pub mod jet;
pub mod spec;

pub use catalog::*;
pub use curvature::{
    curv_perp_global, curvature_report, expansion_min, focal_radius, normal_curvature, second_fundamental_form,
    spherical_curv, CurvatureReport, Expansion, GlobalCurvature, SecondFundamentalForm,
};
pub use jet::Jet;
pub use spec::{BallBlock, Domain, ImmersionSpec, JetValue, Sampler};

use crate::numkit::NumError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ImmersionError {
    #[error("point has {got} coordinates, expected {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("jacobian has rank {rank} < {m}")]
    RankDeficient { rank: usize, m: usize },
    #[error("sampler produced no points in the domain")]
    EmptySample,
    #[error("euclidean curvature {0} is below 1, impossible inside the unit sphere")]
    BelowSphereCurvature(f64),
    #[error("curvature must be positive, got {0}")]
    NonPositiveCurvature(f64),
    #[error("expansion needs an equidimensional map, got {m} -> {n}")]
    NotEquidimensional { m: usize, n: usize },
    #[error("`{0}` carries no normal frame")]
    MissingFrame(String),
    #[error("radius {radius} is not below the focal bound {limit}")]
    FocalRadius { radius: f64, limit: f64 },
    #[error("{0}")]
    InvalidParameter(String),
    #[error("unknown immersion `{0}`")]
    UnknownImmersion(String),
    #[error(transparent)]
    Num(#[from] NumError),
}

pub type Result<T> = std::result::Result<T, ImmersionError>;
