//! Explicit immersions and expanding maps, each with analytic jets.

use super::curvature::curv_perp_global;
use super::jet::Jet;
use super::spec::{BallBlock, Domain, FrameFn, ImmersionSpec, MapFn, Sampler};
use super::{ImmersionError, Result};
use crate::numkit::{gaussian_vector, stream_rng, SubspaceBasis, WeightVector};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

const RADIUS_TOL: f64 = 1e-9;
// Sampling used when a constructor needs the curvature of its input.
const CHECK_SAMPLES: usize = 256;
const CHECK_RESTARTS: usize = 8;

fn zero() -> Jet {
    Jet::constant(0.0)
}

fn lin(coefs: &[f64], xs: &[Jet]) -> Jet {
    coefs.iter().zip(xs).fold(zero(), |acc, (c, x)| acc + x.scale(*c))
}

fn bad(msg: impl Into<String>) -> ImmersionError {
    ImmersionError::InvalidParameter(msg.into())
}

/// `r` scaled so the sphere point `(u,1)/√(1+|u|²)` is written out.
fn gnomonic(u: &[Jet], r: f64) -> Vec<Jet> {
    let len = u.iter().fold(Jet::constant(1.0), |a, x| a + x.square()).sqrt().recip();
    let mut out: Vec<Jet> = u.iter().map(|x| (x * &len).scale(r)).collect();
    out.push(len.scale(r));
    out
}

/// Unit vector of `S^{k−1}` in hyperspherical angles (`k−1` of them).
fn sphere_point(a: &[Jet]) -> Vec<Jet> {
    let k = a.len() + 1;
    let mut out = Vec::with_capacity(k);
    let mut prod = Jet::constant(1.0);
    for (i, ai) in a.iter().enumerate() {
        if i + 1 == a.len() {
            out.push(&prod * ai.cos());
            out.push(&prod * ai.sin());
        } else {
            out.push(&prod * ai.cos());
            prod = prod * ai.sin();
        }
    }
    if a.is_empty() {
        out.push(Jet::constant(1.0));
    }
    out
}

fn sphere_domain(k: usize) -> Domain {
    // Angles stay clear of the coordinate poles.
    let mut lower = vec![1e-3; k - 1];
    let mut upper = vec![PI - 1e-3; k - 1];
    if k >= 2 {
        lower[k - 2] = 0.0;
        upper[k - 2] = 2.0 * PI;
    }
    Domain::boxed(lower, upper)
}

/// `T^N(r̄) = ⨉ S¹(r_i) ⊂ R^{2N}` in arc-length angles; uniform weights give
/// the Clifford torus.
pub fn clifford_torus(n: usize, weights: Option<WeightVector>) -> Result<ImmersionSpec> {
    if n == 0 {
        return Err(bad("torus needs N >= 1"));
    }
    let w = weights.unwrap_or_else(|| WeightVector::uniform(n));
    if w.len() != n {
        return Err(bad(format!("{} weights for N={n}", w.len())));
    }
    let r: Vec<f64> = w.as_slice().to_vec();
    let rm = r.clone();
    let map: MapFn = Arc::new(move |t: &[Jet]| {
        let mut out = Vec::with_capacity(2 * rm.len());
        for (ti, ri) in t.iter().zip(&rm) {
            let th = ti.scale(1.0 / ri);
            out.push(th.cos().scale(*ri));
            out.push(th.sin().scale(*ri));
        }
        out
    });
    let rf = r.clone();
    let frame: FrameFn = Arc::new(move |t: &[Jet]| {
        let n = rf.len();
        (0..n)
            .map(|i| {
                let th = t[i].scale(1.0 / rf[i]);
                let mut v = vec![zero(); 2 * n];
                v[2 * i] = th.cos();
                v[2 * i + 1] = th.sin();
                v
            })
            .collect()
    });
    let upper = r.iter().map(|ri| 2.0 * PI * ri).collect();
    Ok(ImmersionSpec::new("clifford-torus", n, 2 * n, Domain::boxed(vec![0.0; n], upper), map)
        .with_frame(frame)
        .with_ambient_radius(1.0))
}

/// `x ↦ T^N` at arc-length coordinates `Bᵀx`: an isometric immersion of
/// `R^m` whose curvature in direction `u` is `√ratio4(Bᵀu)`.
pub fn equivariant_from_subspace(b: &SubspaceBasis) -> Result<ImmersionSpec> {
    let m = b.dim();
    let n = b.ambient_dim();
    let rows = b.rows().to_vec();
    let sq = (n as f64).sqrt();
    // Column i of B gives angle i as a linear form in x.
    let cols: Vec<Vec<f64>> = (0..n).map(|i| rows.iter().map(|r| r[i]).collect()).collect();
    let cm = cols.clone();
    let map: MapFn = Arc::new(move |x: &[Jet]| {
        let mut out = Vec::with_capacity(2 * cm.len());
        for c in &cm {
            let th = lin(c, x).scale(sq);
            out.push(th.cos().scale(1.0 / sq));
            out.push(th.sin().scale(1.0 / sq));
        }
        out
    });
    let comp = b.complement();
    let cf = cols;
    let frame: FrameFn = Arc::new(move |x: &[Jet]| {
        let angles: Vec<Jet> = cf.iter().map(|c| lin(c, x).scale(sq)).collect();
        let mut frame = Vec::with_capacity(2 * n - m);
        for (i, th) in angles.iter().enumerate() {
            let mut v = vec![zero(); 2 * n];
            v[2 * i] = th.cos();
            v[2 * i + 1] = th.sin();
            frame.push(v);
        }
        // Torus tangents not in the image of the immersion.
        for w in &comp {
            let mut v = vec![zero(); 2 * n];
            for (i, th) in angles.iter().enumerate() {
                v[2 * i] = th.sin().scale(-w[i]);
                v[2 * i + 1] = th.cos().scale(w[i]);
            }
            frame.push(v);
        }
        frame
    });
    Ok(ImmersionSpec::new("equivariant-torus", m, 2 * n, Domain::cube(m, -PI, PI), map)
        .with_frame(frame)
        .with_ambient_radius(1.0))
}

/// `S^m(r) ⊂ R^{m+1}` in a gnomonic chart about the last axis.
pub fn round_sphere(m: usize, r: f64) -> Result<ImmersionSpec> {
    if m == 0 || !(r > 0.0) {
        return Err(bad("sphere needs m >= 1 and r > 0"));
    }
    let map: MapFn = Arc::new(move |u: &[Jet]| gnomonic(u, r));
    let frame: FrameFn = Arc::new(move |u: &[Jet]| vec![gnomonic(u, 1.0)]);
    Ok(ImmersionSpec::new("round-sphere", m, m + 1, Domain::cube(m, -1.0, 1.0), map)
        .with_frame(frame)
        .with_ambient_radius(r))
}

/// `⨉ S^{m_i}(r_i)` with `Σ r_i² = 1`, each factor in its own `R^{m_i+1}`.
pub fn product_of_spheres(dims: &[usize], radii: &[f64]) -> Result<ImmersionSpec> {
    if dims.is_empty() || dims.len() != radii.len() || dims.contains(&0) {
        return Err(bad("need matching nonzero dimensions and radii"));
    }
    let total: f64 = radii.iter().map(|r| r * r).sum();
    if (total - 1.0).abs() > RADIUS_TOL || radii.iter().any(|r| !(*r > 0.0)) {
        return Err(bad(format!("radii must be positive with squares summing to 1, got {total}")));
    }
    let m: usize = dims.iter().sum();
    let n = m + dims.len();
    let (d1, r1) = (dims.to_vec(), radii.to_vec());
    let map: MapFn = Arc::new(move |u: &[Jet]| {
        let mut out = Vec::with_capacity(n);
        let mut at = 0;
        for (d, r) in d1.iter().zip(&r1) {
            out.extend(gnomonic(&u[at..at + d], *r));
            at += d;
        }
        out
    });
    let d2 = dims.to_vec();
    let frame: FrameFn = Arc::new(move |u: &[Jet]| {
        let mut frame = Vec::with_capacity(d2.len());
        let (mut at, mut out_at) = (0, 0);
        for d in &d2 {
            let mut v = vec![zero(); n];
            for (k, c) in gnomonic(&u[at..at + d], 1.0).into_iter().enumerate() {
                v[out_at + k] = c;
            }
            frame.push(v);
            at += d;
            out_at += d + 1;
        }
        frame
    });
    Ok(ImmersionSpec::new("product-of-spheres", m, n, Domain::cube(m, -1.0, 1.0), map)
        .with_frame(frame)
        .with_ambient_radius(1.0))
}

/// Circle of radius `r` in the first coordinate plane of `R^n`, by arc
/// length, with the radial vector and the remaining axes as normal frame.
pub fn planar_circle(r: f64, n: usize) -> Result<ImmersionSpec> {
    if n < 2 || !(r > 0.0) {
        return Err(bad("circle needs r > 0 in dimension >= 2"));
    }
    let map: MapFn = Arc::new(move |t: &[Jet]| {
        let th = t[0].scale(1.0 / r);
        let mut out = vec![th.cos().scale(r), th.sin().scale(r)];
        out.resize(n, zero());
        out
    });
    let frame: FrameFn = Arc::new(move |t: &[Jet]| {
        let th = t[0].scale(1.0 / r);
        let mut radial = vec![th.cos(), th.sin()];
        radial.resize(n, zero());
        let mut frame = vec![radial];
        for k in 2..n {
            let mut e = vec![zero(); n];
            e[k] = Jet::constant(1.0);
            frame.push(e);
        }
        frame
    });
    Ok(ImmersionSpec::new("planar-circle", 1, n, Domain::boxed(vec![0.0], vec![2.0 * PI * r]), map)
        .with_frame(frame)
        .with_ambient_radius(r))
}

/// A single point, the zero-dimensional input of a semidirect product.
pub fn point(p: Vec<f64>) -> ImmersionSpec {
    let n = p.len();
    let radius = p.iter().map(|x| x * x).sum::<f64>().sqrt();
    let map: MapFn = Arc::new(move |_: &[Jet]| Jet::constants(&p));
    ImmersionSpec::new("point", 0, n, Domain::boxed(vec![], vec![]), map).with_ambient_radius(radius)
}

/// `S^m → S^{M_m−2}`, `x ↦ √((m+1)/m)(xxᵀ − I/(m+1))` in orthonormal
/// coordinates of traceless symmetric matrices, where `M_m = (m+1)(m+2)/2`.
pub fn veronese(m: usize) -> Result<ImmersionSpec> {
    if m == 0 {
        return Err(bad("veronese needs m >= 1"));
    }
    let d = m + 1;
    let out_dim = m * (m + 3) / 2;
    let c = ((m as f64 + 1.0) / m as f64).sqrt();
    let map: MapFn = Arc::new(move |u: &[Jet]| {
        let x = gnomonic(u, 1.0);
        let mut out = Vec::with_capacity(out_dim);
        for i in 0..d {
            for j in (i + 1)..d {
                out.push((&x[i] * &x[j]).scale(c * std::f64::consts::SQRT_2));
            }
        }
        // Helmert basis of the trace-free diagonal; the I/(m+1) term has
        // zero component along each of these.
        let sq: Vec<Jet> = x.iter().map(Jet::square).collect();
        for k in 1..d {
            let norm = ((k * (k + 1)) as f64).sqrt();
            let mut coefs = vec![1.0 / norm; k];
            coefs.push(-(k as f64) / norm);
            out.push(lin(&coefs, &sq[..=k]).scale(c));
        }
        out
    });
    Ok(ImmersionSpec::new("veronese", m, out_dim, Domain::cube(m, -1.0, 1.0), map).with_ambient_radius(1.0))
}

/// Whether a tube is rescaled into the unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TubeScale {
    /// Divide by `sup|f| + ρ`.
    UnitBall,
    Raw,
}

fn sampled_curvature(spec: &ImmersionSpec) -> Result<f64> {
    if spec.m() == 0 {
        return Ok(0.0);
    }
    let sampler = Sampler { grid_per_axis: 4.min(CHECK_SAMPLES), random: CHECK_SAMPLES, seed: 0 };
    let sampler = if spec.m() > 4 { Sampler::light(CHECK_SAMPLES, 0) } else { sampler };
    Ok(curv_perp_global(spec, &sampler, CHECK_RESTARTS, 0)?.sup)
}

fn require_frame(spec: &ImmersionSpec) -> Result<FrameFn> {
    spec.frame_fn()
        .cloned()
        .ok_or_else(|| ImmersionError::MissingFrame(spec.name().to_string()))
}

/// Boundary of the `ρ`-neighbourhood: `(x, θ) ↦ s·(f(x) + ρ Σ ω_j(θ) ν_j(x))`
/// over the unit normal sphere, with `s = (sup|f| + ρ)⁻¹` for
/// [`TubeScale::UnitBall`].
pub fn tube_boundary_scaled(base: &ImmersionSpec, rho: f64, scale: TubeScale) -> Result<ImmersionSpec> {
    let frame = require_frame(base)?;
    let k = base.codim();
    if k == 0 {
        return Err(bad("tube over an equidimensional map"));
    }
    if !(rho > 0.0) {
        return Err(bad("tube radius must be positive"));
    }
    let curv = sampled_curvature(base)?;
    if curv > 0.0 && rho >= 1.0 / curv {
        return Err(ImmersionError::FocalRadius { radius: rho, limit: 1.0 / curv });
    }
    let s = match scale {
        TubeScale::UnitBall if base.ambient_radius().is_finite() => 1.0 / (base.ambient_radius() + rho),
        TubeScale::UnitBall => return Err(bad("base has no recorded ambient radius")),
        TubeScale::Raw => 1.0,
    };
    let m = base.m();
    let n = base.n();
    let f = base.map_fn().clone();
    let f1 = frame.clone();
    let map: MapFn = Arc::new(move |z: &[Jet]| {
        let (x, a) = z.split_at(m);
        let omega = sphere_point(a);
        let nu = f1(x);
        let mut out = f(x);
        for (w, v) in omega.iter().zip(&nu) {
            for (o, c) in out.iter_mut().zip(v) {
                *o = &*o + (w * c).scale(rho);
            }
        }
        out.into_iter().map(|o| o.scale(s)).collect()
    });
    let tube_frame: FrameFn = Arc::new(move |z: &[Jet]| {
        let (x, a) = z.split_at(m);
        let omega = sphere_point(a);
        let nu = frame(x);
        let mut v = vec![zero(); n];
        for (w, nv) in omega.iter().zip(&nu) {
            for (o, c) in v.iter_mut().zip(nv) {
                *o = &*o + w * c;
            }
        }
        vec![v]
    });
    let domain = base.domain().product(&sphere_domain(k));
    let radius = match scale {
        TubeScale::UnitBall => 1.0,
        TubeScale::Raw => base.ambient_radius() + rho,
    };
    Ok(ImmersionSpec::new("tube", m + k - 1, n, domain, map).with_frame(tube_frame).with_ambient_radius(radius))
}

pub fn tube_boundary(base: &ImmersionSpec, rho: f64) -> Result<ImmersionSpec> {
    tube_boundary_scaled(base, rho, TubeScale::UnitBall)
}

/// Torus of revolution: the `r`-tube about the circle of radius `R` in
/// `R³`, scaled into the unit ball.
pub fn round_torus(big_r: f64, r: f64) -> Result<ImmersionSpec> {
    tube_boundary(&planar_circle(big_r, 3)?, r)
}

/// `S^m(r) × S¹ → R^{m+2}`: the sphere of radius `r` centred at distance
/// `R` from the rotation axis, unscaled.
pub fn rotation_torus(m: usize, r: f64, big_r: f64) -> Result<ImmersionSpec> {
    if !(big_r > r) {
        return Err(bad("rotation needs R > r"));
    }
    tube_boundary_scaled(&planar_circle(big_r, m + 2)?, r, TubeScale::Raw)
}

/// `(x₁, x₂) ↦ f₁(x₁) + Σ_j φ₂(x₂)_j ν_j(x₁)`.
pub fn semidirect_product(phi1: &ImmersionSpec, phi2: &ImmersionSpec) -> Result<ImmersionSpec> {
    let frame = require_frame(phi1)?;
    let k = phi1.codim();
    if phi2.n() != k {
        return Err(ImmersionError::Dimension { expected: k, got: phi2.n() });
    }
    let r = phi2.ambient_radius();
    if !r.is_finite() {
        return Err(bad("inner map has no recorded ambient radius"));
    }
    let curv = sampled_curvature(phi1)?;
    if r * curv >= 1.0 {
        return Err(ImmersionError::FocalRadius { radius: r, limit: 1.0 / curv });
    }
    let m1 = phi1.m();
    let n = phi1.n();
    let (f1, f2) = (phi1.map_fn().clone(), phi2.map_fn().clone());
    let nu = frame.clone();
    let map: MapFn = Arc::new(move |z: &[Jet]| {
        let (x1, x2) = z.split_at(m1);
        let y = f2(x2);
        let frame = nu(x1);
        let mut out = f1(x1);
        for (yj, vj) in y.iter().zip(&frame) {
            for (o, c) in out.iter_mut().zip(vj) {
                *o = &*o + yj * c;
            }
        }
        out
    });
    let mut spec = ImmersionSpec::new("semidirect", m1 + phi2.m(), n, phi1.domain().product(phi2.domain()), map)
        .with_ambient_radius(phi1.ambient_radius() + r);
    if let Some(inner) = phi2.frame_fn().cloned() {
        let prod_frame: FrameFn = Arc::new(move |z: &[Jet]| {
            let (x1, x2) = z.split_at(m1);
            let outer = frame(x1);
            inner(x2)
                .iter()
                .map(|mu| {
                    let mut v = vec![zero(); n];
                    for (mj, vj) in mu.iter().zip(&outer) {
                        for (o, c) in v.iter_mut().zip(vj) {
                            *o = &*o + mj * c;
                        }
                    }
                    v
                })
                .collect()
        });
        spec = spec.with_frame(prod_frame);
    } else if phi2.m() == phi2.n() {
        // Full-dimensional inner map: no normal directions remain.
        spec = spec.with_frame(Arc::new(|_: &[Jet]| Vec::new()));
    }
    Ok(spec)
}

/// The central torus `T^{k·2^i − k}` of the recursive annulus construction,
/// scaled from the cube `[−2^i, 2^i]^{k·2^i}` into the unit ball.
///
/// Level one wraps each of `k` coordinates around a unit circle; level `l`
/// replaces every coordinate `z` by `(2^{l−1} + z)(cos φ, sin φ)` with a new
/// angle `φ`.
pub fn torus_by_torus(k: usize, i: u32) -> Result<ImmersionSpec> {
    if k == 0 || i == 0 {
        return Err(bad("torus-by-torus needs k >= 1 and i >= 1"));
    }
    let levels = i;
    let m = k * ((1usize << i) - 1);
    let n = k << i;
    let scale = 1.0 / ((1u64 << i) as f64 * (n as f64).sqrt());
    let map: MapFn = Arc::new(move |t: &[Jet]| {
        let mut coords: Vec<Jet> = Vec::with_capacity(n);
        for a in &t[..k] {
            coords.push(a.cos());
            coords.push(a.sin());
        }
        let mut used = k;
        for l in 2..=levels {
            let shift = (1u64 << (l - 1)) as f64;
            let count = coords.len();
            let mut next = Vec::with_capacity(2 * count);
            for (z, phi) in coords.iter().zip(&t[used..used + count]) {
                let rad = z.add_const(shift);
                next.push(&rad * phi.cos());
                next.push(&rad * phi.sin());
            }
            used += count;
            coords = next;
        }
        coords.into_iter().map(|c| c.scale(scale)).collect()
    });
    Ok(ImmersionSpec::new("torus-by-torus", m, n, Domain::cube(m, 0.0, 2.0 * PI), map).with_ambient_radius(1.0))
}

/// `B^{n−1}(r) × R → B^n(2r)`: pre-scale `(s,t) ↦ (σs, λt)` with
/// `σ = (r−ε)/r`, `λ = (r−ε)/ε`, then wrap `t` around the circle of radius
/// `r` carrying the fibre disc of radius `r−ε`.
pub fn rolled_band(n: usize, r: f64, eps: f64) -> Result<ImmersionSpec> {
    if n < 2 || !(r > 0.0) || !(eps > 0.0 && eps < r) {
        return Err(bad(format!("rolled band needs n >= 2 and 0 < eps < r, got n={n}, r={r}, eps={eps}")));
    }
    let sigma = (r - eps) / r;
    let lambda = (r - eps) / eps;
    let map: MapFn = Arc::new(move |z: &[Jet]| {
        let (s, t) = z.split_at(n - 1);
        let phi = t[0].scale(lambda / r);
        let rad = s[0].scale(sigma).add_const(r);
        let mut out = vec![&rad * phi.cos(), &rad * phi.sin()];
        out.extend(s[1..].iter().map(|x| x.scale(sigma)));
        out
    });
    let period = 2.0 * PI * r / lambda;
    let mut lower = vec![-r; n - 1];
    let mut upper = vec![r; n - 1];
    lower.push(0.0);
    upper.push(period);
    let domain = Domain { lower, upper, ball: Some(BallBlock { start: 0, len: n - 1, radius: r }) };
    Ok(ImmersionSpec::new("rolled-band", n, n, domain, map).with_ambient_radius(2.0 * r - eps))
}

/// `B^m(r) × R^m → R^{2m}`: every pair `(s_j, t_j)` wrapped around a circle of
/// radius `1/√m` with the angular speed raised so lengths never shrink.
pub fn rolled_band_product(m: usize, r: f64) -> Result<ImmersionSpec> {
    let rho = 1.0 / (m as f64).sqrt();
    if m == 0 || !(r > 0.0 && r < rho) {
        return Err(bad(format!("product band needs 0 < r < 1/sqrt(m), got r={r}")));
    }
    let lambda = rho / (rho - r);
    let map: MapFn = Arc::new(move |z: &[Jet]| {
        let (s, t) = z.split_at(m);
        let mut out = Vec::with_capacity(2 * m);
        for (sj, tj) in s.iter().zip(t) {
            let phi = tj.scale(lambda / rho);
            let rad = sj.add_const(rho);
            out.push(&rad * phi.cos());
            out.push(&rad * phi.sin());
        }
        out
    });
    let period = 2.0 * PI * rho / lambda;
    let mut lower = vec![-r; m];
    let mut upper = vec![r; m];
    lower.extend(vec![0.0; m]);
    upper.extend(vec![period; m]);
    let domain = Domain { lower, upper, ball: Some(BallBlock { start: 0, len: m, radius: r }) };
    Ok(ImmersionSpec::new("rolled-band-product", 2 * m, 2 * m, domain, map).with_ambient_radius(1.0 + r))
}

/// Normal exponential map into the unit ball,
/// `(x, b) ↦ s·f(λx) + Σ_j b_j ν_j(λx)` on `|b| < r`, with `s = (1−r)/sup|f|`
/// and `λ` stretching the base until the tangential singular values pass 1.
///
/// The tangential stretch is `λ(s − rκ)σ_min(df)`, so the construction
/// exists only for `r < 1/(1 + κ·sup|f|)`.
pub fn normal_exponential(base: &ImmersionSpec, r: f64) -> Result<ImmersionSpec> {
    let frame = require_frame(base)?;
    let big_r = base.ambient_radius();
    if !big_r.is_finite() {
        return Err(bad("base has no recorded ambient radius"));
    }
    if !(r > 0.0 && r < 1.0) {
        return Err(bad("fibre radius must lie in (0, 1)"));
    }
    let kappa = sampled_curvature(base)?;
    let s = (1.0 - r) / big_r;
    let margin = s - r * kappa;
    let limit = 1.0 / (1.0 + kappa * big_r);
    if margin <= 0.0 {
        return Err(ImmersionError::FocalRadius { radius: r, limit });
    }
    let sampler = Sampler::light(CHECK_SAMPLES, 1);
    let mut sigma_min = f64::INFINITY;
    for x in sampler.points(base.domain()) {
        let j = base.jet(&x)?.jacobian;
        sigma_min = sigma_min.min(j.singular_values().iter().copied().fold(f64::INFINITY, f64::min));
    }
    let lambda = 1.01 / (margin * sigma_min);
    let (m, k, n) = (base.m(), base.codim(), base.n());
    let f = base.map_fn().clone();
    let map: MapFn = Arc::new(move |z: &[Jet]| {
        let (x, b) = z.split_at(m);
        let xs: Vec<Jet> = x.iter().map(|v| v.scale(lambda)).collect();
        let nu = frame(&xs);
        let mut out: Vec<Jet> = f(&xs).into_iter().map(|v| v.scale(s)).collect();
        for (bj, vj) in b.iter().zip(&nu) {
            for (o, c) in out.iter_mut().zip(vj) {
                *o = &*o + bj * c;
            }
        }
        out
    });
    let bd = base.domain();
    let mut lower: Vec<f64> = bd.lower.iter().map(|v| v / lambda).collect();
    let mut upper: Vec<f64> = bd.upper.iter().map(|v| v / lambda).collect();
    lower.extend(vec![-r; k]);
    upper.extend(vec![r; k]);
    let domain = Domain { lower, upper, ball: Some(BallBlock { start: m, len: k, radius: r }) };
    Ok(ImmersionSpec::new("normal-exponential", m + k, n, domain, map).with_ambient_radius(1.0))
}

pub fn identity(n: usize) -> ImmersionSpec {
    let map: MapFn = Arc::new(|x: &[Jet]| x.to_vec());
    ImmersionSpec::new("identity", n, n, Domain::cube(n, -1.0, 1.0), map)
}

/// `x ↦ Ax + ½(xᵀQ_k x)_k` with Gaussian `A` and symmetric Gaussian `Q_k`,
/// on a small box around the origin.
pub fn random_quadratic(m: usize, n: usize, seed: u64) -> Result<ImmersionSpec> {
    if m == 0 || n < m {
        return Err(bad("need 1 <= m <= n"));
    }
    let mut rng = stream_rng(seed, 0);
    let a: Vec<Vec<f64>> = (0..n).map(|_| gaussian_vector(&mut rng, m)).collect();
    let q: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let g = gaussian_vector(&mut rng, m * m);
            let mut s = vec![0.0; m * m];
            for i in 0..m {
                for j in 0..m {
                    s[i * m + j] = 0.5 * (g[i * m + j] + g[j * m + i]);
                }
            }
            s
        })
        .collect();
    let map: MapFn = Arc::new(move |x: &[Jet]| {
        (0..n)
            .map(|k| {
                let mut v = lin(&a[k], x);
                for i in 0..m {
                    for j in 0..m {
                        v = v + (&x[i] * &x[j]).scale(0.5 * q[k][i * m + j]);
                    }
                }
                v
            })
            .collect()
    });
    Ok(ImmersionSpec::new("random-quadratic", m, n, Domain::cube(m, -0.1, 0.1), map))
}

/// One catalog entry: name, parameter names, description.
pub const CATALOG: &[(&str, &str, &str)] = &[
    ("clifford-torus", "N", "Clifford torus T^N in the unit ball of R^2N"),
    ("equivariant-design", "N", "T^2 subtorus from the N-point circle design (N >= 5)"),
    ("round-sphere", "m r", "round sphere S^m(r) in R^(m+1)"),
    ("product-of-spheres", "l", "product of l unit-scaled circles of radius 1/sqrt(l)"),
    ("veronese", "m", "Veronese embedding of RP^m into the unit sphere"),
    ("round-torus", "R r", "torus of revolution, scaled into the unit ball"),
    ("rotation-torus", "m r R", "S^m(r) x S^1 by rotation at distance R, unscaled"),
    ("tube-clifford", "rho", "boundary of the rho-tube about the Clifford T^2 in B^4"),
    ("torus-by-torus", "k i", "central torus of the recursive annulus construction"),
    ("rolled-band", "n r eps", "rolled band into B^n(2r)"),
    ("rolled-band-product", "m r", "Cartesian power of rolled bands"),
    ("normal-exp-round-torus", "r", "normal exponential map of the round torus into B^3"),
    ("normal-exp-clifford", "r", "normal exponential map of the Clifford T^2 into B^4"),
    ("normal-exp-diagonal", "r", "normal exponential map of the T^2 normal to the diagonal of T^3"),
    ("identity", "n", "identity map of R^n"),
    ("random-quadratic", "m n seed", "random quadratic map near the origin"),
];

fn param(params: &BTreeMap<String, f64>, key: &str) -> Result<f64> {
    params.get(key).copied().ok_or_else(|| bad(format!("missing parameter `{key}`")))
}

fn count(params: &BTreeMap<String, f64>, key: &str) -> Result<usize> {
    let v = param(params, key)?;
    if v < 0.0 || v.fract() != 0.0 {
        return Err(bad(format!("`{key}` must be a non-negative integer")));
    }
    Ok(v as usize)
}

/// The plane in `R³` normal to `(1,1,1)`.
pub fn diagonal_normal_plane() -> SubspaceBasis {
    let a = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
    let b = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
    SubspaceBasis::new(vec![a.to_vec(), b.to_vec()]).expect("orthonormal by construction")
}

/// Builds a catalog immersion from its name and parameters.
pub fn by_name(name: &str, params: &BTreeMap<String, f64>) -> Result<ImmersionSpec> {
    match name {
        "clifford-torus" => clifford_torus(count(params, "N")?, None),
        "equivariant-design" => {
            let d = crate::designs::circle_design(count(params, "N")?).map_err(|e| bad(e.to_string()))?;
            let b = crate::diameter::design_to_subspace(&d).map_err(|e| bad(e.to_string()))?;
            equivariant_from_subspace(&b)
        }
        "round-sphere" => round_sphere(count(params, "m")?, param(params, "r")?),
        "product-of-spheres" => {
            let l = count(params, "l")?;
            product_of_spheres(&vec![1; l], &vec![1.0 / (l as f64).sqrt(); l])
        }
        "veronese" => veronese(count(params, "m")?),
        "round-torus" => round_torus(param(params, "R")?, param(params, "r")?),
        "rotation-torus" => rotation_torus(count(params, "m")?, param(params, "r")?, param(params, "R")?),
        "tube-clifford" => tube_boundary(&clifford_torus(2, None)?, param(params, "rho")?),
        "torus-by-torus" => torus_by_torus(count(params, "k")?, count(params, "i")? as u32),
        "rolled-band" => rolled_band(count(params, "n")?, param(params, "r")?, param(params, "eps")?),
        "rolled-band-product" => rolled_band_product(count(params, "m")?, param(params, "r")?),
        "normal-exp-round-torus" => normal_exponential(&round_torus(2.0 / 3.0, 1.0 / 3.0)?, param(params, "r")?),
        "normal-exp-clifford" => normal_exponential(&clifford_torus(2, None)?, param(params, "r")?),
        "normal-exp-diagonal" => {
            normal_exponential(&equivariant_from_subspace(&diagonal_normal_plane())?, param(params, "r")?)
        }
        "identity" => Ok(identity(count(params, "n")?)),
        "random-quadratic" => random_quadratic(count(params, "m")?, count(params, "n")?, count(params, "seed")? as u64),
        other => Err(ImmersionError::UnknownImmersion(other.to_string())),
    }
}
