//! The `l_4` Kolmogorov diameter `D(m,N,4)`: closed-form limit, Monte Carlo
//! sphere moments, Grassmannian minimization of the quartic ratio, the
//! weighted variant, and the passage from spherical designs to subspaces.

use crate::designs::{verify_design, SphericalDesign};
use crate::numkit::{
    self, orthonormalize, random_unit_vector, stream_rng, sup_ratio, sup_weighted, NumError, SubspaceBasis,
    WeightVector, DEFAULT_RESTARTS, OPT_TOL,
};
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiameterError {
    #[error("exponent must be even and at least {min}, got {p}")]
    BadExponent { p: u32, min: u32 },
    #[error("need 1 <= m <= N, got m={m}, N={n}")]
    Dimensions { m: usize, n: usize },
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("design fails degree-4 verification (residuals {residual2:e}, {residual3:e}, {residual4:e})")]
    DesignNotVerified { residual2: f64, residual3: f64, residual4: f64 },
    #[error(transparent)]
    Num(#[from] NumError),
}

pub type Result<T> = std::result::Result<T, DiameterError>;

pub const MIN_MC_SAMPLES: usize = 10_000;

/// `D(m,p) = m^{p/2−1}·3·5···(p−1) / ((m+2)(m+4)···(m+p−2))`.
pub fn closed_form_d(m: usize, p: u32) -> Result<f64> {
    if p < 4 || p % 2 == 1 {
        return Err(DiameterError::BadExponent { p, min: 4 });
    }
    if m == 0 {
        return Err(DiameterError::Dimensions { m, n: 0 });
    }
    let m = m as f64;
    let mut value = m.powi(p as i32 / 2 - 1);
    for j in 1..(p / 2) {
        value *= (2 * j + 1) as f64 / (m + 2.0 * j as f64);
    }
    Ok(value)
}

/// Monte Carlo estimate of a uniform sphere moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub m: usize,
    pub p: u32,
    /// Estimate of `∫_{S^{m−1}} s₁^p ds`.
    pub estimate: f64,
    pub stderr: f64,
}

impl MomentEstimate {
    /// The implied `D(m,p) = m^{p/2}·∫s₁^p`, using `∫s₁² = 1/m`.
    pub fn diameter(&self) -> f64 {
        (self.m as f64).powi(self.p as i32 / 2) * self.estimate
    }

    pub fn diameter_stderr(&self) -> f64 {
        (self.m as f64).powi(self.p as i32 / 2) * self.stderr
    }
}

/// `∫ s₁^p ds` over the uniform sphere `S^{m−1}`.
///
/// Each sample contributes the mean of `s_i^p` over its coordinates, which
/// has the same expectation as `s₁^p` and smaller variance.
pub fn mc_sphere_moment(m: usize, p: u32, samples: usize, seed: u64) -> Result<MomentEstimate> {
    if p < 2 || p % 2 == 1 {
        return Err(DiameterError::BadExponent { p, min: 2 });
    }
    if m == 0 {
        return Err(DiameterError::Dimensions { m, n: 0 });
    }
    if samples < MIN_MC_SAMPLES {
        return Err(DiameterError::TooFewSamples { min: MIN_MC_SAMPLES, got: samples });
    }
    const CHUNK: usize = 1 << 14;
    let chunks = samples.div_ceil(CHUNK);
    let (sum, sum_sq) = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(seed, k as u64);
            let count = CHUNK.min(samples - k * CHUNK);
            let mut s = 0.0;
            let mut s2 = 0.0;
            for _ in 0..count {
                let v = random_unit_vector(&mut rng, m);
                let val = v.iter().map(|x| x.powi(p as i32)).sum::<f64>() / m as f64;
                s += val;
                s2 += val * val;
            }
            (s, s2)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = samples as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    Ok(MomentEstimate { m, p, estimate: mean, stderr: (var / n).sqrt() })
}

/// Best subspace found for `D(m,N,4)`.
#[derive(Debug, Clone)]
pub struct DiameterEstimate {
    pub m: usize,
    pub n: usize,
    /// Certified `sup_ratio` of `witness`, hence an upper bound on `D(m,N,4)`.
    pub value: f64,
    pub witness: SubspaceBasis,
    pub closed_form_limit: f64,
    pub restarts_used: usize,
}

impl DiameterEstimate {
    /// `(value − 3m/(m+2))·√N/m`, the quantity whose size the unspecified
    /// constants govern.
    pub fn empirical_constant(&self) -> f64 {
        (self.value - self.closed_form_limit) * (self.n as f64).sqrt() / self.m as f64
    }
}

// Fixed probe directions in coefficient space used by the smooth surrogate.
fn surrogate_directions(m: usize, seed: u64) -> Vec<Vec<f64>> {
    match m {
        1 => vec![vec![1.0]],
        2 => (0..512)
            .map(|k| {
                let t = std::f64::consts::PI * k as f64 / 512.0;
                vec![t.cos(), t.sin()]
            })
            .collect(),
        _ => {
            let mut rng = stream_rng(seed ^ 0x5eed_d1a3, u64::MAX);
            (0..1024 * m).map(|_| random_unit_vector(&mut rng, m)).collect()
        }
    }
}

// log of the power mean (mean_k F_k^q)^{1/q} with F_k = Σ_i w_i (Bᵀc_k)_i⁴,
// and its Euclidean gradient in the rows of B.
fn surrogate(rows: &[Vec<f64>], w: &[f64], dirs: &[Vec<f64>], q: f64) -> (f64, Vec<Vec<f64>>, Vec<f64>) {
    let n = w.len();
    let m = rows.len();
    let xs: Vec<Vec<f64>> = dirs
        .iter()
        .map(|c| {
            let mut x = vec![0.0; n];
            for (ci, row) in c.iter().zip(rows) {
                for (xj, rj) in x.iter_mut().zip(row) {
                    *xj += ci * rj;
                }
            }
            x
        })
        .collect();
    let fs: Vec<f64> = xs.iter().map(|x| x.iter().zip(w).map(|(xi, wi)| wi * xi.powi(4)).sum()).collect();
    let fmax = fs.iter().cloned().fold(f64::MIN_POSITIVE, f64::max);
    let ws: Vec<f64> = fs.iter().map(|f| (f / fmax).powf(q)).collect();
    let total: f64 = ws.iter().sum();
    let value = fmax.ln() + (total / dirs.len() as f64).ln() / q;
    let mut grad = vec![vec![0.0; n]; m];
    // Gradient in log-weights w as well, for the weighted problem.
    let mut wgrad = vec![0.0; n];
    for ((c, x), (f, wk)) in dirs.iter().zip(&xs).zip(fs.iter().zip(&ws)) {
        let scale = wk / (total * f);
        for (a, ca) in c.iter().enumerate() {
            for j in 0..n {
                grad[a][j] += scale * 4.0 * w[j] * ca * x[j].powi(3);
            }
        }
        for j in 0..n {
            wgrad[j] += scale * x[j].powi(4);
        }
    }
    (value, grad, wgrad)
}

// Descent on the surrogate with the rows of B moved along the horizontal
// space of the Grassmannian and re-orthonormalized after each step.
fn descend(rows: &mut Vec<Vec<f64>>, w: &[f64], dirs: &[Vec<f64>], q: f64, iters: usize) {
    let mut step = 0.1;
    let (mut value, mut grad, _) = surrogate(rows, w, dirs, q);
    for _ in 0..iters {
        let horiz = horizontal(rows, &grad);
        let gsq: f64 = horiz.iter().map(|g| numkit::dot(g, g)).sum();
        if gsq < 1e-28 {
            break;
        }
        let mut moved = false;
        while step > 1e-12 {
            let cand: Vec<Vec<f64>> =
                rows.iter().zip(&horiz).map(|(r, g)| r.iter().zip(g).map(|(a, b)| a - step * b).collect()).collect();
            let Ok(basis) = orthonormalize(cand) else {
                step *= 0.5;
                continue;
            };
            let cand = basis.into_rows();
            let (cv, cg, _) = surrogate(&cand, w, dirs, q);
            if cv <= value - 1e-4 * step * gsq {
                *rows = cand;
                value = cv;
                grad = cg;
                step *= 1.6;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if !moved {
            break;
        }
    }
}

// Z = G − (G Bᵀ) B removes the component that only rotates within span(B).
fn horizontal(rows: &[Vec<f64>], grad: &[Vec<f64>]) -> Vec<Vec<f64>> {
    grad.iter()
        .map(|g| {
            let mut z = g.clone();
            for r in rows {
                let c = numkit::dot(g, r);
                for (zi, ri) in z.iter_mut().zip(r) {
                    *zi -= c * ri;
                }
            }
            z
        })
        .collect()
}

const POWERS: [f64; 6] = [2.0, 8.0, 32.0, 128.0, 512.0, 2048.0];
const INNER_RESTARTS: usize = 16;

fn single_restart(m: usize, n: usize, seed: u64, index: usize, dirs: &[Vec<f64>]) -> Result<(f64, SubspaceBasis)> {
    let mut rng = stream_rng(seed, index as u64);
    let start = SubspaceBasis::random(m, n, &mut rng)?;
    let w = vec![n as f64; n];
    let mut rows = start.into_rows();
    let inner_seed = rng.random::<u64>();
    let mut best = SubspaceBasis::new(rows.clone())?;
    let mut best_value = sup_ratio(&best, INNER_RESTARTS, inner_seed).value;
    for &q in &POWERS {
        descend(&mut rows, &w, dirs, q, 400);
        let cand = SubspaceBasis::new(rows.clone())?;
        let v = sup_ratio(&cand, INNER_RESTARTS, inner_seed).value;
        // Only certified improvements replace the incumbent.
        if v < best_value {
            best_value = v;
            best = cand;
        } else {
            rows = best.rows().to_vec();
        }
    }
    let certified = sup_ratio(&best, DEFAULT_RESTARTS, inner_seed).value;
    Ok((certified, best))
}

fn check_dims(m: usize, n: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(DiameterError::Dimensions { m, n });
    }
    Ok(())
}

/// Minimizes `sup_ratio` over `m`-dimensional subspaces of `R^N`.
///
/// Every candidate is compared by its converged inner supremum, so the
/// returned value is an upper bound on `D(m,N,4)`, never a claim of
/// optimality.
pub fn estimate_d(m: usize, n: usize, restarts: usize, seed: u64) -> Result<DiameterEstimate> {
    check_dims(m, n)?;
    let closed_form_limit = closed_form_d(m, 4)?;
    let restarts = restarts.max(1);
    if m == n {
        let witness = SubspaceBasis::coordinate(m, n)?;
        return Ok(DiameterEstimate { m, n, value: n as f64, witness, closed_form_limit, restarts_used: 1 });
    }
    let dirs = surrogate_directions(m, seed);
    let runs: Vec<Result<(f64, SubspaceBasis)>> =
        (0..restarts).into_par_iter().map(|i| single_restart(m, n, seed, i, &dirs)).collect();
    let mut best: Option<(f64, SubspaceBasis)> = None;
    for run in runs {
        let (v, b) = run?;
        // Strict comparison keeps the lowest restart index on ties.
        if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
            best = Some((v, b));
        }
    }
    let (value, witness) = best.expect("at least one restart");
    Ok(DiameterEstimate { m, n, value, witness, closed_form_limit, restarts_used: restarts })
}

/// Best `(subspace, weights)` pair found for the weighted diameter.
#[derive(Debug, Clone)]
pub struct LozengeEstimate {
    /// `sup_x Σ(x_i⁴/r_i²)/|x|⁴`, directly comparable with `D(m,N,4)`.
    pub quartic_value: f64,
    pub witness: SubspaceBasis,
    pub weights: WeightVector,
}

impl LozengeEstimate {
    /// The norm-ratio form `sup ‖x‖_{L4(r)}/‖x‖_{L2}`, the fourth root.
    pub fn norm_ratio(&self) -> f64 {
        self.quartic_value.powf(0.25)
    }
}

const MIN_WEIGHT: f64 = 1e-4;

fn clamp_weights(r: &mut [f64]) {
    for x in r.iter_mut() {
        *x = x.abs().max(MIN_WEIGHT);
    }
    let len = numkit::norm(r);
    r.iter_mut().for_each(|x| *x /= len);
}

fn quartic_weights(r: &[f64]) -> Vec<f64> {
    r.iter().map(|x| 1.0 / (x * x)).collect()
}

/// Joint descent over subspaces and weights, started from the unweighted
/// optimum with uniform weights so the result never exceeds it.
pub fn estimate_lozenge(m: usize, n: usize, restarts: usize, seed: u64) -> Result<LozengeEstimate> {
    check_dims(m, n)?;
    let base = estimate_d(m, n, restarts, seed)?;
    let dirs = surrogate_directions(m, seed);
    let mut rows = base.witness.rows().to_vec();
    let mut r = vec![1.0 / (n as f64).sqrt(); n];
    let mut best_value = base.value;
    let mut best_rows = rows.clone();
    let mut best_r = r.clone();
    let inner_seed = seed.wrapping_add(1);
    for &q in &POWERS {
        for _ in 0..60 {
            let w = quartic_weights(&r);
            descend(&mut rows, &w, &dirs, q, 20);
            // Weight step: d/dr_i of Σ x⁴/r² is −2x⁴/r³, projected to the sphere.
            let (value, _, wgrad) = surrogate(&rows, &w, &dirs, q);
            let g: Vec<f64> = wgrad.iter().zip(&r).map(|(d, ri)| -2.0 * d / (ri * ri * ri)).collect();
            let radial = numkit::dot(&g, &r);
            let t: Vec<f64> = g.iter().zip(&r).map(|(gi, ri)| gi - radial * ri).collect();
            let tsq = numkit::dot(&t, &t);
            if tsq < 1e-28 {
                break;
            }
            let mut step = 0.01 / tsq.sqrt();
            let mut moved = false;
            while step > 1e-14 {
                let mut cand: Vec<f64> = r.iter().zip(&t).map(|(a, b)| a - step * b).collect();
                clamp_weights(&mut cand);
                let (cv, _, _) = surrogate(&rows, &quartic_weights(&cand), &dirs, q);
                if cv < value {
                    r = cand;
                    moved = true;
                    break;
                }
                step *= 0.5;
            }
            if !moved {
                break;
            }
        }
        let basis = SubspaceBasis::new(rows.clone())?;
        let v = sup_weighted(&basis, &quartic_weights(&r), INNER_RESTARTS, inner_seed).value;
        if v < best_value {
            best_value = v;
            best_rows = rows.clone();
            best_r = r.clone();
        } else {
            rows = best_rows.clone();
            r = best_r.clone();
        }
    }
    let witness = SubspaceBasis::new(best_rows)?;
    let weights = WeightVector::new(best_r)?;
    let certified = sup_weighted(&witness, &quartic_weights(weights.as_slice()), DEFAULT_RESTARTS, inner_seed).value;
    // A re-certification that lands above the unweighted value keeps the
    // feasible uniform point instead.
    if certified > base.value + OPT_TOL {
        return Ok(LozengeEstimate { quartic_value: base.value, witness: base.witness, weights: WeightVector::uniform(n) });
    }
    Ok(LozengeEstimate { quartic_value: certified, witness, weights })
}

/// `√(m/N)·Sᵀ` for a verified degree-4 design with points as rows of `S`.
pub fn design_to_subspace(d: &SphericalDesign) -> Result<SubspaceBasis> {
    let check = verify_design(d, 4).map_err(|_| DiameterError::DesignNotVerified {
        residual2: f64::NAN,
        residual3: f64::NAN,
        residual4: f64::NAN,
    })?;
    if !check.pass {
        return Err(DiameterError::DesignNotVerified {
            residual2: check.residual2,
            residual3: check.residual3,
            residual4: check.residual4,
        });
    }
    let m = d.m();
    let scale = (m as f64 / d.len() as f64).sqrt();
    let rows = (0..m).map(|a| d.points().iter().map(|s| scale * s[a]).collect()).collect();
    Ok(SubspaceBasis::new(rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{circle_design, icosahedron};
    use approx::assert_relative_eq;

    #[test]
    fn closed_form_examples() {
        assert_relative_eq!(closed_form_d(2, 4).unwrap(), 1.5, epsilon = 1e-15);
        assert_relative_eq!(closed_form_d(1, 4).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(closed_form_d(4, 4).unwrap(), 2.0, epsilon = 1e-15);
        // p = 6: m²·3·5/((m+2)(m+4)).
        assert_relative_eq!(closed_form_d(3, 6).unwrap(), 9.0 * 15.0 / 35.0, epsilon = 1e-14);
        assert!(closed_form_d(2, 3).is_err());
        assert!(closed_form_d(2, 2).is_err());
    }

    // Exact moment by quadrature of the marginal density of s₁ on S^{m−1},
    // proportional to (1−t²)^{(m−3)/2}, with t = sin θ substitution.
    fn quadrature_moment(m: usize, p: i32) -> f64 {
        let k = 200_000;
        let (mut num, mut den) = (0.0, 0.0);
        for i in 0..k {
            let th = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (i as f64 + 0.5) / k as f64;
            let w = th.cos().powi(m as i32 - 2);
            num += w * th.sin().powi(p);
            den += w;
        }
        num / den
    }

    #[test]
    fn monte_carlo_matches_quadrature() {
        for (m, p, exact) in [(3, 4, 0.2), (2, 2, 0.5), (2, 4, 0.375)] {
            assert_relative_eq!(quadrature_moment(m, p), exact, epsilon = 1e-9);
            let e = mc_sphere_moment(m, p as u32, 100_000, 7).unwrap();
            assert!((e.estimate - exact).abs() < 3.0 * e.stderr + 1e-15, "{m} {p}: {e:?}");
        }
        assert!(mc_sphere_moment(2, 4, 10, 0).is_err());
        assert!(mc_sphere_moment(2, 3, 20_000, 0).is_err());
    }

    #[test]
    fn one_dimensional_diameter_is_one() {
        let e = estimate_d(1, 5, 4, 0).unwrap();
        assert!((e.value - 1.0).abs() < 1e-9, "{}", e.value);
    }

    #[test]
    fn plane_in_three_space() {
        let e = estimate_d(2, 3, 4, 0).unwrap();
        assert!(e.value <= 1.5 + 1e-6, "{}", e.value);
        let normal = &e.witness.complement()[0];
        let cos = normal.iter().map(|x| x.abs()).sum::<f64>() / 3f64.sqrt();
        assert!(normal.iter().all(|x| (x.abs() - 1.0 / 3f64.sqrt()).abs() < 1e-3), "{normal:?} {cos}");
    }

    #[test]
    fn full_space_diameter_is_n() {
        let e = estimate_d(3, 3, 2, 0).unwrap();
        assert_eq!(e.value, 3.0);
        assert!(estimate_d(4, 3, 2, 0).is_err());
    }

    #[test]
    fn design_bridge_is_direction_constant() {
        for d in [circle_design(5).unwrap(), circle_design(6).unwrap(), icosahedron()] {
            let b = design_to_subspace(&d).unwrap();
            let target = closed_form_d(d.m(), 4).unwrap();
            let mut rng = stream_rng(3, 0);
            let vals: Vec<f64> = (0..1000)
                .map(|_| numkit::ratio4(&b.combine(&random_unit_vector(&mut rng, d.m()))).unwrap())
                .collect();
            let mean = vals.iter().sum::<f64>() / vals.len() as f64;
            let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / vals.len() as f64;
            assert!((mean - target).abs() < 1e-9 && var < 1e-18, "{mean} {var}");
        }
        assert!(design_to_subspace(&circle_design(4).unwrap()).is_err());
    }

    #[test]
    fn lozenge_never_exceeds_diameter() {
        let d = estimate_d(2, 3, 4, 1).unwrap();
        let l = estimate_lozenge(2, 3, 4, 1).unwrap();
        assert!(l.quartic_value <= d.value + OPT_TOL);
        assert!(l.quartic_value >= 1.0 - 1e-12);
        let l1 = estimate_lozenge(1, 3, 2, 0).unwrap();
        assert!((l1.quartic_value - 1.0).abs() < 1e-9 && (l1.norm_ratio() - 1.0).abs() < 1e-9);
    }
}
