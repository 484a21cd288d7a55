use super::jet::Jet;
use super::{ImmersionError, Result};
use crate::numkit::{self, stream_rng};
use nalgebra::DMatrix;
use rand::Rng;
use std::fmt;
use std::sync::Arc;

pub type MapFn = Arc<dyn Fn(&[Jet]) -> Vec<Jet> + Send + Sync>;
pub type FrameFn = Arc<dyn Fn(&[Jet]) -> Vec<Vec<Jet>> + Send + Sync>;

/// A coordinate box, optionally with a block of coordinates restricted to
/// a Euclidean ball.
#[derive(Debug, Clone, PartialEq)]
pub struct Domain {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub ball: Option<BallBlock>,
}

/// Coordinates `start..start+len` must satisfy `|x| < radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallBlock {
    pub start: usize,
    pub len: usize,
    pub radius: f64,
}

impl Domain {
    pub fn boxed(lower: Vec<f64>, upper: Vec<f64>) -> Self {
        Self { lower, upper, ball: None }
    }

    pub fn cube(m: usize, lo: f64, hi: f64) -> Self {
        Self::boxed(vec![lo; m], vec![hi; m])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        let in_box = x.iter().zip(self.lower.iter().zip(&self.upper)).all(|(v, (a, b))| *v >= *a && *v <= *b);
        in_box
            && self.ball.is_none_or(|b| {
                let r2: f64 = x[b.start..b.start + b.len].iter().map(|v| v * v).sum();
                r2 < b.radius * b.radius
            })
    }

    /// Concatenation `self × other`.
    pub fn product(&self, other: &Domain) -> Domain {
        let mut lower = self.lower.clone();
        lower.extend(&other.lower);
        let mut upper = self.upper.clone();
        upper.extend(&other.upper);
        let shift = self.dim();
        let ball = match (self.ball, other.ball) {
            (Some(b), None) => Some(b),
            (None, Some(b)) => Some(BallBlock { start: b.start + shift, ..b }),
            (None, None) => None,
            (Some(b), Some(_)) => Some(b),
        };
        Domain { lower, upper, ball }
    }

    /// The largest extent of the box, used as the finite-difference scale.
    pub fn scale(&self) -> f64 {
        self.lower.iter().zip(&self.upper).map(|(a, b)| b - a).fold(0.0, f64::max)
    }
}

/// Grid cell centers plus seeded uniform random points, both restricted to
/// the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sampler {
    pub grid_per_axis: usize,
    pub random: usize,
    pub seed: u64,
}

pub const MAX_GRID_POINTS: usize = 4096;

impl Sampler {
    /// 8 points per axis, thinned so the grid stays within
    /// [`MAX_GRID_POINTS`], plus 4096 random points.
    pub fn default_for(m: usize, seed: u64) -> Self {
        let mut per_axis = 8usize;
        while per_axis > 1 && (per_axis as f64).powi(m as i32) > MAX_GRID_POINTS as f64 {
            per_axis -= 1;
        }
        Self { grid_per_axis: per_axis, random: 4096, seed }
    }

    pub fn light(random: usize, seed: u64) -> Self {
        Self { grid_per_axis: 0, random, seed }
    }

    pub fn points(&self, domain: &Domain) -> Vec<Vec<f64>> {
        let m = domain.dim();
        let mut out = Vec::new();
        if self.grid_per_axis > 0 && m > 0 {
            let k = self.grid_per_axis;
            let total = k.pow(m as u32);
            for idx in 0..total {
                let mut rem = idx;
                let x: Vec<f64> = (0..m)
                    .map(|a| {
                        let i = rem % k;
                        rem /= k;
                        let t = (i as f64 + 0.5) / k as f64;
                        domain.lower[a] + t * (domain.upper[a] - domain.lower[a])
                    })
                    .collect();
                if domain.contains(&x) {
                    out.push(x);
                }
            }
        }
        let mut rng = stream_rng(self.seed, 0);
        let mut produced = 0;
        let mut attempts = 0;
        while produced < self.random && attempts < 1000 * self.random.max(1) {
            attempts += 1;
            let x: Vec<f64> = (0..m).map(|a| rng.random_range(domain.lower[a]..=domain.upper[a])).collect();
            if domain.contains(&x) {
                out.push(x);
                produced += 1;
            }
        }
        out
    }
}

/// Value, Jacobian (`n×m`) and per-component Hessians (`m×m`) at a point.
#[derive(Debug, Clone)]
pub struct JetValue {
    pub value: Vec<f64>,
    pub jacobian: DMatrix<f64>,
    pub hessians: Vec<DMatrix<f64>>,
}

/// A parametrized map from an `m`-dimensional coordinate domain into `R^n`
/// with second-order jets, optionally carrying an orthonormal normal frame.
#[derive(Clone)]
pub struct ImmersionSpec {
    name: String,
    m: usize,
    n: usize,
    map: MapFn,
    frame: Option<FrameFn>,
    domain: Domain,
    ambient_radius: f64,
}

impl fmt::Debug for ImmersionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ImmersionSpec")
            .field("name", &self.name)
            .field("m", &self.m)
            .field("n", &self.n)
            .field("has_frame", &self.frame.is_some())
            .field("domain", &self.domain)
            .finish()
    }
}

impl ImmersionSpec {
    pub fn new(name: impl Into<String>, m: usize, n: usize, domain: Domain, map: MapFn) -> Self {
        assert_eq!(domain.dim(), m, "domain dimension");
        Self { name: name.into(), m, n, map, frame: None, domain, ambient_radius: f64::INFINITY }
    }

    pub fn with_frame(mut self, frame: FrameFn) -> Self {
        self.frame = Some(frame);
        self
    }

    /// Records `sup |f|` over the domain, when known.
    pub fn with_ambient_radius(mut self, r: f64) -> Self {
        self.ambient_radius = r;
        self
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        assert_eq!(domain.dim(), self.m, "domain dimension");
        self.domain = domain;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn ambient_radius(&self) -> f64 {
        self.ambient_radius
    }

    pub fn has_frame(&self) -> bool {
        self.frame.is_some()
    }

    /// Normal rank `n − m`.
    pub fn codim(&self) -> usize {
        self.n - self.m
    }

    pub(crate) fn map_fn(&self) -> &MapFn {
        &self.map
    }

    pub(crate) fn frame_fn(&self) -> Option<&FrameFn> {
        self.frame.as_ref()
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.m {
            return Err(ImmersionError::Dimension { expected: self.m, got: x.len() });
        }
        Ok(())
    }

    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_point(x)?;
        Ok((self.map)(&Jet::constants(x)).iter().map(Jet::value).collect())
    }

    pub fn jet(&self, x: &[f64]) -> Result<JetValue> {
        self.check_point(x)?;
        let m = self.m;
        let out = (self.map)(&Jet::seed(x));
        let value = out.iter().map(Jet::value).collect();
        let mut jacobian = DMatrix::zeros(self.n, m);
        let mut hessians = Vec::with_capacity(self.n);
        for (k, c) in out.iter().enumerate() {
            for (a, g) in c.gradient(m).into_iter().enumerate() {
                jacobian[(k, a)] = g;
            }
            hessians.push(DMatrix::from_row_slice(m, m, &c.hessian(m)));
        }
        Ok(JetValue { value, jacobian, hessians })
    }

    /// The normal frame at `x`, if this immersion carries one.
    pub fn normal_frame(&self, x: &[f64]) -> Result<Option<Vec<Vec<f64>>>> {
        self.check_point(x)?;
        Ok(self
            .frame
            .as_ref()
            .map(|f| f(&Jet::constants(x)).iter().map(|v| v.iter().map(Jet::value).collect()).collect()))
    }

    /// Worst deviation of the frame from being orthonormal and normal to
    /// the Jacobian columns at `x`.
    pub fn frame_residual(&self, x: &[f64]) -> Result<Option<f64>> {
        let Some(frame) = self.normal_frame(x)? else {
            return Ok(None);
        };
        let j = self.jet(x)?.jacobian;
        let mut worst = 0.0_f64;
        for (a, u) in frame.iter().enumerate() {
            for (b, v) in frame.iter().enumerate() {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((numkit::dot(u, v) - target).abs());
            }
            let len = j.column_iter().fold(0.0_f64, |w, c| {
                let col: Vec<f64> = c.iter().copied().collect();
                w.max(numkit::dot(&col, u).abs() / numkit::norm(&col))
            });
            worst = worst.max(len);
        }
        Ok(Some(worst))
    }
}
