//! Second fundamental form and the curvature invariants derived from it.

use super::spec::{ImmersionSpec, Sampler};
use super::{ImmersionError, Result};
use crate::numkit::{maximize_on_sphere, random_unit_vector, stream_rng};
use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

const RANK_TOL: f64 = 1e-10;

/// `II` at a point in a g-orthonormal tangent frame, with ambient-valued
/// (normal) components.
#[derive(Debug, Clone)]
pub struct SecondFundamentalForm {
    pub m: usize,
    pub n: usize,
    /// Domain vectors `v_i` with `J v_i` orthonormal.
    pub frame: Vec<Vec<f64>>,
    /// `components[i][j] = II(v_i, v_j)` as a vector of `R^n`.
    pub components: Vec<Vec<Vec<f64>>>,
}

impl SecondFundamentalForm {
    /// `II(u,u)` for `u` given in frame coordinates.
    pub fn quadratic(&self, u: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        for (i, ui) in u.iter().enumerate() {
            for (j, uj) in u.iter().enumerate() {
                for (o, c) in out.iter_mut().zip(&self.components[i][j]) {
                    *o += ui * uj * c;
                }
            }
        }
        out
    }

    /// `‖II‖²` summed over the frame.
    pub fn norm_sq(&self) -> f64 {
        self.components.iter().flatten().map(|v| v.iter().map(|x| x * x).sum::<f64>()).sum()
    }

    /// Mean curvature vector `Σ_i II(v_i, v_i)`, the trace, not divided by `m`.
    pub fn mean(&self) -> Vec<f64> {
        let mut h = vec![0.0; self.n];
        for i in 0..self.m {
            for (o, c) in h.iter_mut().zip(&self.components[i][i]) {
                *o += c;
            }
        }
        h
    }

    /// Frame coordinates of a domain tangent vector.
    pub fn frame_coordinates(&self, w: &[f64]) -> Vec<f64> {
        let v = DMatrix::from_fn(self.m, self.m, |r, c| self.frame[c][r]);
        let rhs = DVector::from_column_slice(w);
        v.lu().solve(&rhs).map(|s| s.iter().copied().collect()).unwrap_or_else(|| vec![f64::NAN; self.m])
    }
}

pub fn second_fundamental_form(spec: &ImmersionSpec, x: &[f64]) -> Result<SecondFundamentalForm> {
    let jet = spec.jet(x)?;
    let (m, n) = (spec.m(), spec.n());
    let qr = jet.jacobian.clone().qr();
    let r = qr.r();
    let q = qr.q();
    let scale = (0..m).map(|i| r[(i, i)].abs()).fold(0.0, f64::max);
    let smallest = (0..m).map(|i| r[(i, i)].abs()).fold(f64::INFINITY, f64::min);
    if !(smallest > RANK_TOL * scale.max(1e-300)) {
        let rank = (0..m).filter(|&i| r[(i, i)].abs() > RANK_TOL * scale).count();
        return Err(ImmersionError::RankDeficient { rank, m });
    }
    let rinv = r.clone().try_inverse().ok_or(ImmersionError::RankDeficient { rank: 0, m })?;
    let frame: Vec<Vec<f64>> = (0..m).map(|i| rinv.column(i).iter().copied().collect()).collect();
    let mut components = vec![vec![vec![0.0; n]; m]; m];
    for i in 0..m {
        for j in i..m {
            let mut h = DVector::from_fn(n, |k, _| {
                let hk = &jet.hessians[k];
                let mut s = 0.0;
                for a in 0..m {
                    for b in 0..m {
                        s += hk[(a, b)] * frame[i][a] * frame[j][b];
                    }
                }
                s
            });
            // Remove the tangential part.
            let t = q.transpose() * &h;
            h -= &q * t;
            let v: Vec<f64> = h.iter().copied().collect();
            components[j][i] = v.clone();
            components[i][j] = v;
        }
    }
    Ok(SecondFundamentalForm { m, n, frame, components })
}

/// Per-point curvature invariants.
#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub point: Vec<f64>,
    pub curv_perp: f64,
    /// Maximizing unit tangent in g-orthonormal frame coordinates.
    pub argmax_dir: Vec<f64>,
    /// The same direction as a domain vector.
    pub argmax_domain: Vec<f64>,
    pub ii_l2: f64,
    pub mean_curv: f64,
    /// Average of `‖II(u,u)‖²` over the unit tangent sphere, by exact cubature.
    pub pi_avg: f64,
    /// `(2/(m(m+2)))(‖II‖² + ½‖H‖²)`.
    pub pi_identity: f64,
    pub pi_mc: f64,
    pub pi_mc_stderr: f64,
    pub gauss_scalar: f64,
}

impl CurvatureReport {
    pub fn pi_residual(&self) -> f64 {
        (self.pi_avg - self.pi_identity).abs()
    }
}

pub const PI_MC_SAMPLES: usize = 2048;

/// Cubature on `S^{m−1}` exact for polynomials of degree up to 5: `±e_i`
/// and `(±e_i ± e_j)/√2` with weights fixed by the second and fourth
/// moments.
fn quartic_cubature(m: usize) -> Vec<(f64, Vec<f64>)> {
    let md = m as f64;
    let w_axis = (4.0 - md) / (2.0 * md * (md + 2.0));
    let w_pair = 1.0 / (md * (md + 2.0));
    let mut nodes = Vec::new();
    for i in 0..m {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; m];
            e[i] = s;
            nodes.push((w_axis, e));
        }
        for j in (i + 1)..m {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                let mut e = vec![0.0; m];
                e[i] = si * std::f64::consts::FRAC_1_SQRT_2;
                e[j] = sj * std::f64::consts::FRAC_1_SQRT_2;
                nodes.push((w_pair, e));
            }
        }
    }
    nodes
}

fn sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// `max_{|u|=1} ‖II(u,u)‖` with its maximizer.
pub fn normal_curvature(ii: &SecondFundamentalForm, restarts: usize, seed: u64) -> (f64, Vec<f64>) {
    let m = ii.m;
    let objective = |u: &[f64]| {
        let w = ii.quadratic(u);
        let value = sq(&w);
        let grad = (0..m)
            .map(|k| {
                let mut s = 0.0;
                for (j, uj) in u.iter().enumerate() {
                    s += uj * ii.components[k][j].iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
                }
                4.0 * s
            })
            .collect();
        (value, grad)
    };
    // One representative of each antipodal pair of cubature nodes.
    let probes: Vec<Vec<f64>> = quartic_cubature(m)
        .into_iter()
        .map(|(_, e)| e)
        .filter(|e| e.iter().find(|v| **v != 0.0).is_some_and(|v| *v > 0.0))
        .collect();
    let best = maximize_on_sphere(m, objective, restarts, seed, &probes);
    (best.value.max(0.0).sqrt(), best.witness)
}

pub fn curvature_report(spec: &ImmersionSpec, x: &[f64], restarts: usize, seed: u64) -> Result<CurvatureReport> {
    let ii = second_fundamental_form(spec, x)?;
    Ok(report_from_form(&ii, x, restarts, seed))
}

pub(crate) fn report_from_form(ii: &SecondFundamentalForm, x: &[f64], restarts: usize, seed: u64) -> CurvatureReport {
    let m = ii.m;
    let (curv_perp, argmax_dir) = normal_curvature(ii, restarts, seed);
    let argmax_domain = (0..m).map(|a| (0..m).map(|i| ii.frame[i][a] * argmax_dir[i]).sum()).collect();
    let ii_sq = ii.norm_sq();
    let h_sq = sq(&ii.mean());
    let md = m as f64;
    let pi_identity = 2.0 / (md * (md + 2.0)) * (ii_sq + 0.5 * h_sq);
    let pi_avg = quartic_cubature(m).iter().map(|(w, e)| w * sq(&ii.quadratic(e))).sum();
    let mut rng = stream_rng(seed, u64::MAX - 1);
    let samples: Vec<f64> = (0..PI_MC_SAMPLES).map(|_| sq(&ii.quadratic(&random_unit_vector(&mut rng, m)))).collect();
    let mean = samples.iter().sum::<f64>() / PI_MC_SAMPLES as f64;
    let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (PI_MC_SAMPLES as f64 - 1.0);
    CurvatureReport {
        point: x.to_vec(),
        curv_perp,
        argmax_dir,
        argmax_domain,
        ii_l2: ii_sq.sqrt(),
        mean_curv: h_sq.sqrt(),
        pi_avg,
        pi_identity,
        pi_mc: mean,
        pi_mc_stderr: (var / PI_MC_SAMPLES as f64).sqrt(),
        gauss_scalar: h_sq - ii_sq,
    }
}

/// Sampled supremum of the normal curvature over the domain.
#[derive(Debug, Clone, Serialize)]
pub struct GlobalCurvature {
    /// A lower bound on the true supremum at this sampling density.
    pub sup: f64,
    pub point: Vec<f64>,
    pub direction: Vec<f64>,
    pub samples: usize,
    pub sampler_seed: u64,
}

pub fn curv_perp_global(spec: &ImmersionSpec, sampler: &Sampler, restarts: usize, seed: u64) -> Result<GlobalCurvature> {
    let points = sampler.points(spec.domain());
    if points.is_empty() {
        return Err(ImmersionError::EmptySample);
    }
    type Hit = (f64, Vec<f64>, Vec<f64>);
    let results: Vec<Result<Hit>> = points
        .par_iter()
        .map(|x| {
            let ii = second_fundamental_form(spec, x)?;
            let (c, dir) = normal_curvature(&ii, restarts, seed);
            Ok((c, x.clone(), dir))
        })
        .collect();
    let mut best: Option<Hit> = None;
    for r in results {
        let r = r?;
        if best.as_ref().is_none_or(|b| r.0 > b.0) {
            best = Some(r);
        }
    }
    let (sup, point, direction) = best.expect("non-empty sample");
    Ok(GlobalCurvature { sup, point, direction, samples: points.len(), sampler_seed: sampler.seed })
}

/// Curvature inside the unit sphere from curvature in the ball.
pub fn spherical_curv(euclidean_curv: f64) -> Result<f64> {
    if !(euclidean_curv >= 1.0 - 1e-12) {
        return Err(ImmersionError::BelowSphereCurvature(euclidean_curv));
    }
    Ok((euclidean_curv * euclidean_curv - 1.0).max(0.0).sqrt())
}

pub fn focal_radius(curv: f64) -> Result<f64> {
    if !(curv > 0.0) {
        return Err(ImmersionError::NonPositiveCurvature(curv));
    }
    Ok(1.0 / curv)
}

/// Smallest singular value of the differential over the sample.
#[derive(Debug, Clone, Serialize)]
pub struct Expansion {
    pub min_singular: f64,
    pub point: Vec<f64>,
    pub samples: usize,
}

pub fn expansion_min(spec: &ImmersionSpec, sampler: &Sampler) -> Result<Expansion> {
    if spec.m() != spec.n() {
        return Err(ImmersionError::NotEquidimensional { m: spec.m(), n: spec.n() });
    }
    let points = sampler.points(spec.domain());
    if points.is_empty() {
        return Err(ImmersionError::EmptySample);
    }
    let values: Vec<Result<f64>> = points
        .par_iter()
        .map(|x| {
            let j = spec.jet(x)?.jacobian;
            Ok(j.singular_values().iter().copied().fold(f64::INFINITY, f64::min))
        })
        .collect();
    let mut best = (f64::INFINITY, 0);
    for (i, v) in values.into_iter().enumerate() {
        let v = v?;
        if v < best.0 {
            best = (v, i);
        }
    }
    Ok(Expansion { min_singular: best.0, point: points[best.1].clone(), samples: points.len() })
}
