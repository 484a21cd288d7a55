//! Closed-form values of the torus-stabilized scalar curvature `Sc⋊`, the
//! Bessel-zero bracket used for balls, the band-width inequalities and the
//! catalog of curvature lower bounds.

use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// First positive zero of `J_0`, from the standard tables.
pub const J0_FIRST_ZERO: f64 = 2.404_825_557_695_773;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("unsupported kind `{0}`")]
    UnsupportedKind(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("nu = {0} has an exact first zero; the bracket needs nu > 1/2")]
    NuTooSmall(f64),
}

pub type Result<T> = std::result::Result<T, BoundsError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundsKind {
    Rectangle,
    Hemisphere,
    Ball,
    Band,
    Petrunin,
    Codim,
    SphereLower,
    SphereCodim,
    PiForm,
    Corollary53,
}

impl BoundsKind {
    pub const ALL: [BoundsKind; 10] = [
        BoundsKind::Rectangle,
        BoundsKind::Hemisphere,
        BoundsKind::Ball,
        BoundsKind::Band,
        BoundsKind::Petrunin,
        BoundsKind::Codim,
        BoundsKind::SphereLower,
        BoundsKind::SphereCodim,
        BoundsKind::PiForm,
        BoundsKind::Corollary53,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundsKind::Rectangle => "rectangle",
            BoundsKind::Hemisphere => "hemisphere",
            BoundsKind::Ball => "ball",
            BoundsKind::Band => "band",
            BoundsKind::Petrunin => "petrunin",
            BoundsKind::Codim => "codim",
            BoundsKind::SphereLower => "sphere_lower",
            BoundsKind::SphereCodim => "sphere_codim",
            BoundsKind::PiForm => "pi_form",
            BoundsKind::Corollary53 => "corollary53",
        }
    }
}

impl fmt::Display for BoundsKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundsKind {
    type Err = BoundsError;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_");
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == norm)
            .ok_or_else(|| BoundsError::UnsupportedKind(s.to_string()))
    }
}

/// Named parameters of a bounds query; unused fields stay `None`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BoundsQuery {
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub sigma: Option<f64>,
    pub sc: Option<f64>,
    pub r: Option<f64>,
    pub sides: Vec<f64>,
    pub d: Vec<f64>,
}

fn need<T: Copy>(v: Option<T>, name: &'static str) -> Result<T> {
    v.ok_or(BoundsError::MissingParameter(name))
}

fn positive_count(v: Option<usize>, name: &'static str) -> Result<f64> {
    let v = need(v, name)?;
    if v == 0 {
        return Err(BoundsError::InvalidParameter(format!("{name} must be positive")));
    }
    Ok(v as f64)
}

fn positive(v: Option<f64>, name: &'static str) -> Result<f64> {
    let v = need(v, name)?;
    if !(v > 0.0) {
        return Err(BoundsError::InvalidParameter(format!("{name} must be positive, got {v}")));
    }
    Ok(v)
}

/// An exact value or a two-sided enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ScValue {
    Exact(f64),
    Bracket { low: f64, high: f64 },
}

impl ScValue {
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        match *self {
            ScValue::Exact(v) => (v - x).abs() <= tol,
            ScValue::Bracket { low, high } => low - tol <= x && x <= high + tol,
        }
    }
}

/// `Sc⋊` of a rectangular solid (`sides`), a unit hemisphere or a unit ball
/// (`n`).
pub fn sc_rtimes(kind: BoundsKind, q: &BoundsQuery) -> Result<ScValue> {
    match kind {
        BoundsKind::Rectangle => {
            if q.sides.is_empty() {
                return Err(BoundsError::MissingParameter("sides"));
            }
            if q.sides.iter().any(|s| !(*s > 0.0)) {
                return Err(BoundsError::InvalidParameter("side lengths must be positive".into()));
            }
            Ok(ScValue::Exact(q.sides.iter().map(|s| 4.0 * PI * PI / (s * s)).sum()))
        }
        BoundsKind::Hemisphere => {
            let n = positive_count(q.n, "n")?;
            Ok(ScValue::Exact(n * (n + 3.0)))
        }
        BoundsKind::Ball => {
            let n = need(q.n, "n")?;
            match n {
                0 => Err(BoundsError::InvalidParameter("n must be positive".into())),
                1 => Ok(ScValue::Exact(4.0 * (PI / 2.0).powi(2))),
                2 => Ok(ScValue::Exact(4.0 * J0_FIRST_ZERO * J0_FIRST_ZERO)),
                3 => Ok(ScValue::Exact(4.0 * PI * PI)),
                _ => {
                    let (low, high) = bessel_zero_bracket(n as f64 / 2.0 - 1.0)?;
                    Ok(ScValue::Bracket { low: 4.0 * low * low, high: 4.0 * high * high })
                }
            }
        }
        other => Err(BoundsError::UnsupportedKind(other.to_string())),
    }
}

/// `ν + aν^{1/3}/2^{1/3} < j_ν < ν + aν^{1/3}/2^{1/3} + (3/20)·2^{2/3}a²/ν^{1/2}`
/// with `a = (9π/8)^{2/3}(1+ε)`; the lower end takes `ε = 0` and the upper
/// end `ε = 0.1`, the bound on `ε`.
pub fn bessel_zero_bracket(nu: f64) -> Result<(f64, f64)> {
    if !(nu > 0.5) {
        return Err(BoundsError::NuTooSmall(nu));
    }
    let a0 = (9.0 * PI / 8.0).powf(2.0 / 3.0);
    let cube = 2f64.powf(1.0 / 3.0);
    let low = nu + a0 * nu.cbrt() / cube;
    let a = a0 * 1.1;
    let high = nu + a * nu.cbrt() / cube + 0.15 * cube * cube * a * a / nu.sqrt();
    Ok((low, high))
}

/// `r ≤ π/√Sc⋊`.
pub fn band_radius_simple(sc: f64) -> Result<f64> {
    if !(sc > 0.0) {
        return Err(BoundsError::InvalidParameter(format!("Sc must be positive, got {sc}")));
    }
    Ok(PI / sc.sqrt())
}

fn band_lhs(d: &[f64], r: f64) -> f64 {
    PI * PI / (4.0 * r * r) + d.iter().filter(|x| x.is_finite()).map(|x| PI * PI / (x - 2.0 * r).powi(2)).sum::<f64>()
}

fn check_band(sc: f64, d: &[f64]) -> Result<()> {
    if !(sc > 0.0) {
        return Err(BoundsError::InvalidParameter(format!("Sc must be positive, got {sc}")));
    }
    if d.iter().any(|x| !(*x > 0.0)) {
        return Err(BoundsError::InvalidParameter("widths must be positive".into()));
    }
    Ok(())
}

/// `π²/(4r²) + Σ π²/(d_i−2r)² ≥ Sc⋊/4`; infinite widths contribute nothing.
pub fn band_inequality(sc: f64, d: &[f64], r: f64) -> Result<bool> {
    check_band(sc, d)?;
    if !(r > 0.0) || d.iter().any(|x| *x <= 2.0 * r) {
        return Err(BoundsError::InvalidParameter(format!("need 0 < 2r < d_i, got r={r}")));
    }
    Ok(band_lhs(d, r) >= sc / 4.0)
}

/// The first `r` at which the band inequality stops holding, found by a
/// scan and bisection on `(0, min d_i/2)`; `None` if it never fails there.
pub fn band_max_radius(sc: f64, d: &[f64]) -> Result<Option<f64>> {
    check_band(sc, d)?;
    let cap = d.iter().copied().fold(f64::INFINITY, f64::min) / 2.0;
    let upper = if cap.is_finite() { cap } else { 2.0 * band_radius_simple(sc)? };
    let g = |r: f64| band_lhs(d, r) - sc / 4.0;
    const SCAN: usize = 4096;
    let mut prev = upper * 1e-9;
    for i in 1..=SCAN {
        let r = upper * i as f64 / (SCAN as f64 + 1.0);
        if g(r) < 0.0 {
            let (mut lo, mut hi) = (prev, r);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if g(mid) >= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Ok(Some(0.5 * (lo + hi)));
        }
        prev = r;
    }
    Ok(None)
}

/// Closed-form lower bounds on normal curvature:
///
/// * `petrunin`: `√(3m/(m+2))` for tori in a unit ball
/// * `corollary53`: `√(8m/(9k))`
/// * `sphere_lower`: `√((2m−2)/(m+2))` into unit spheres
/// * `sphere_codim`: `√((m−1)/k)` into unit spheres
/// * `codim`: `√(σ/(km))`
/// * `pi_form`: `√(2σ/(m(m+2)))`
pub fn lower_bound_catalog(kind: BoundsKind, q: &BoundsQuery) -> Result<f64> {
    let m = || positive_count(q.m, "m");
    let k = || positive_count(q.k, "k");
    let sigma = || positive(q.sigma, "sigma");
    match kind {
        BoundsKind::Petrunin => {
            let m = m()?;
            Ok((3.0 * m / (m + 2.0)).sqrt())
        }
        BoundsKind::Corollary53 => Ok((8.0 * m()? / (9.0 * k()?)).sqrt()),
        BoundsKind::SphereLower => {
            let m = m()?;
            Ok(((2.0 * m - 2.0) / (m + 2.0)).sqrt())
        }
        BoundsKind::SphereCodim => Ok(((m()? - 1.0) / k()?).sqrt()),
        BoundsKind::Codim => Ok((sigma()? / (k()? * m()?)).sqrt()),
        BoundsKind::PiForm => {
            let m = m()?;
            Ok((2.0 * sigma()? / (m * (m + 2.0))).sqrt())
        }
        other => Err(BoundsError::UnsupportedKind(other.to_string())),
    }
}

/// Result of [`evaluate`] across all kinds.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundsValue {
    Sc(ScValue),
    Real(f64),
    Holds(bool),
}

/// Dispatches one query; `band` evaluates the inequality when `r` is given
/// and the implied maximal radius otherwise.
pub fn evaluate(kind: BoundsKind, q: &BoundsQuery) -> Result<BoundsValue> {
    match kind {
        BoundsKind::Rectangle | BoundsKind::Hemisphere | BoundsKind::Ball => Ok(BoundsValue::Sc(sc_rtimes(kind, q)?)),
        BoundsKind::Band => {
            let sc = positive(q.sc, "sc")?;
            match (q.r, q.d.is_empty()) {
                (Some(r), false) => Ok(BoundsValue::Holds(band_inequality(sc, &q.d, r)?)),
                (Some(r), true) => Ok(BoundsValue::Holds(r <= band_radius_simple(sc)?)),
                (None, true) => Ok(BoundsValue::Real(band_radius_simple(sc)?)),
                (None, false) => {
                    Ok(BoundsValue::Real(band_max_radius(sc, &q.d)?.unwrap_or(f64::INFINITY)))
                }
            }
        }
        _ => Ok(BoundsValue::Real(lower_bound_catalog(kind, q)?)),
    }
}
