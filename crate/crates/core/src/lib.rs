//! Curvature of immersions into balls, `l_4` Kolmogorov diameters and
//! spherical designs, with the closed-form scalar-curvature bounds that go
//! with them.

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod designs;
pub mod diameter;
pub mod immersions;
pub mod numkit;
pub mod scalarbounds;
