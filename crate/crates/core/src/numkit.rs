//! Vectors, normalized `L_p` norms, orthonormal subspace bases and the
//! quartic ratio functional `N·Σx⁴/(Σx²)²` shared by every other module.
//!
//! The only optimizer in the crate lives here as well: projected gradient
//! ascent with step halving on a unit sphere, run from seeded random
//! restarts. Both the subspace supremum and the tangent-sphere curvature
//! maximization go through [`maximize_on_sphere`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use thiserror::Error;

/// Orthonormality residual allowed for exact-arithmetic invariants.
pub const GRAM_TOL: f64 = 1e-12;
/// Accuracy of iterative maximizers.
pub const OPT_TOL: f64 = 1e-9;
/// Agreement required between two independent numerical routes.
pub const REPORT_TOL: f64 = 1e-6;

/// Restart count used when a caller does not pick one.
pub const DEFAULT_RESTARTS: usize = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumError {
    #[error("empty vector")]
    Empty,
    #[error("zero vector has no direction")]
    ZeroVector,
    #[error("norm exponent must be an even integer >= 2, got {0}")]
    BadExponent(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("rows are rank deficient: numerical rank {rank} of {rows}")]
    RankDeficient { rank: usize, rows: usize },
    #[error("invalid subspace: {0}")]
    InvalidBasis(String),
    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),
}

pub type Result<T> = std::result::Result<T, NumError>;

fn check_exponent(p: u32) -> Result<()> {
    if p < 2 || !p.is_multiple_of(2) {
        return Err(NumError::BadExponent(p));
    }
    Ok(())
}

/// Atom-normalized norm `((1/N) Σ|x_i|^p)^{1/p}`.
pub fn lp_norm(x: &[f64], p: u32) -> Result<f64> {
    Ok(lp_norm_unnormalized(x, p)? / (x.len() as f64).powf(1.0 / p as f64))
}

/// Plain `l_p` norm `(Σ|x_i|^p)^{1/p}`.
pub fn lp_norm_unnormalized(x: &[f64], p: u32) -> Result<f64> {
    check_exponent(p)?;
    if x.is_empty() {
        return Err(NumError::Empty);
    }
    let scale = x.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if scale == 0.0 {
        return Ok(0.0);
    }
    let s: f64 = x.iter().map(|v| (v / scale).powi(p as i32)).sum();
    Ok(scale * s.powf(1.0 / p as f64))
}

/// `‖x‖⁴_{L4} / ‖x‖⁴_{L2} = N Σx_i⁴ / (Σx_i²)²`, a value in `[1, N]`.
pub fn ratio4(x: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(NumError::Empty);
    }
    let (s2, s4) = power_sums(x)?;
    Ok(x.len() as f64 * s4 / (s2 * s2))
}

fn power_sums(x: &[f64]) -> Result<(f64, f64)> {
    let scale = x.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return Err(NumError::ZeroVector);
    }
    let mut s2 = 0.0;
    let mut s4 = 0.0;
    for v in x {
        let t = (v / scale) * (v / scale);
        s2 += t;
        s4 += t * t;
    }
    Ok((s2, s4))
}

/// Positive unit vector `r` with `Σ r_i² = 1`; the radii of a
/// non-equilateral Clifford torus.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(r: Vec<f64>) -> Result<Self> {
        if r.is_empty() {
            return Err(NumError::InvalidWeights("no entries".into()));
        }
        if let Some(bad) = r.iter().find(|v| !(**v > 0.0) || !v.is_finite()) {
            return Err(NumError::InvalidWeights(format!("entry {bad} is not positive")));
        }
        let s: f64 = r.iter().map(|v| v * v).sum();
        if (s - 1.0).abs() > GRAM_TOL {
            return Err(NumError::InvalidWeights(format!("sum of squares is {s}, not 1")));
        }
        Ok(Self(r))
    }

    /// Rescales a positive vector onto the unit sphere.
    pub fn normalized(r: Vec<f64>) -> Result<Self> {
        let s: f64 = r.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(s > 0.0) {
            return Err(NumError::InvalidWeights("zero vector".into()));
        }
        Self::new(r.into_iter().map(|v| v / s).collect())
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / (n as f64).sqrt(); n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Quartic coefficients `1/r_i²` used by [`weighted_ratio4`].
    pub fn quartic_coefficients(&self) -> Vec<f64> {
        self.0.iter().map(|r| 1.0 / (r * r)).collect()
    }
}

/// Squared normal curvature of `T^N(r)` along `x`: `Σ(x_i⁴/r_i²) / (Σx_i²)²`.
///
/// Equals [`ratio4`] when every `r_i = 1/√N`.
pub fn weighted_ratio4(x: &[f64], r: &WeightVector) -> Result<f64> {
    if x.len() != r.len() {
        return Err(NumError::DimensionMismatch { expected: r.len(), got: x.len() });
    }
    let scale = x.iter().fold(0.0_f64, |a, v| a.max(v.abs()));
    if scale == 0.0 {
        return Err(NumError::ZeroVector);
    }
    let mut s2 = 0.0;
    let mut s4 = 0.0;
    for (v, ri) in x.iter().zip(r.as_slice()) {
        let t = (v / scale) * (v / scale);
        s2 += t;
        s4 += t * t / (ri * ri);
    }
    Ok(s4 / (s2 * s2))
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// An `m`-dimensional subspace of `R^N` held as `m` orthonormal rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    rows: Vec<Vec<f64>>,
}

impl SubspaceBasis {
    /// Wraps rows that are already orthonormal to within [`GRAM_TOL`].
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let b = Self { rows };
        b.validate_shape()?;
        let res = b.gram_residual();
        if res > GRAM_TOL {
            return Err(NumError::InvalidBasis(format!("gram residual {res:e}")));
        }
        Ok(b)
    }

    fn validate_shape(&self) -> Result<()> {
        let m = self.rows.len();
        if m == 0 {
            return Err(NumError::InvalidBasis("no rows".into()));
        }
        let n = self.rows[0].len();
        if let Some(r) = self.rows.iter().find(|r| r.len() != n) {
            return Err(NumError::DimensionMismatch { expected: n, got: r.len() });
        }
        if m > n {
            return Err(NumError::InvalidBasis(format!("{m} rows in dimension {n}")));
        }
        Ok(())
    }

    /// The first `m` coordinate axes of `R^N`.
    pub fn coordinate(m: usize, n: usize) -> Result<Self> {
        if m == 0 || m > n {
            return Err(NumError::InvalidBasis(format!("{m} rows in dimension {n}")));
        }
        Ok(Self {
            rows: (0..m)
                .map(|i| {
                    let mut r = vec![0.0; n];
                    r[i] = 1.0;
                    r
                })
                .collect(),
        })
    }

    /// Uniformly distributed random subspace (orthonormalized Gaussian rows).
    pub fn random<R: Rng>(m: usize, n: usize, rng: &mut R) -> Result<Self> {
        let rows = (0..m).map(|_| gaussian_vector(rng, n)).collect();
        orthonormalize(rows)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<f64>> {
        self.rows
    }

    /// Max entry of `B Bᵀ − I`.
    pub fn gram_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in self.rows.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot(a, b) - target).abs());
            }
        }
        worst
    }

    /// The ambient vector `Bᵀc = Σ c_i row_i`.
    pub fn combine(&self, c: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.ambient_dim()];
        for (ci, row) in c.iter().zip(&self.rows) {
            for (yj, rj) in y.iter_mut().zip(row) {
                *yj += ci * rj;
            }
        }
        y
    }

    /// Orthonormal rows spanning the orthogonal complement.
    pub fn complement(&self) -> Vec<Vec<f64>> {
        let n = self.ambient_dim();
        let mut basis: Vec<Vec<f64>> = self.rows.clone();
        let mut out = Vec::new();
        for k in 0..n {
            let mut e = vec![0.0; n];
            e[k] = 1.0;
            if let Some(v) = reduce_against(&basis, e) {
                basis.push(v.clone());
                out.push(v);
            }
            if basis.len() == n {
                break;
            }
        }
        out
    }

    /// Canonical projector `BᵀB`, independent of the chosen row basis.
    pub fn projector(&self) -> Vec<Vec<f64>> {
        let n = self.ambient_dim();
        let mut p = vec![vec![0.0; n]; n];
        for row in &self.rows {
            for i in 0..n {
                for j in 0..n {
                    p[i][j] += row[i] * row[j];
                }
            }
        }
        p
    }
}

// Two passes of Gram-Schmidt against an orthonormal set; None when the
// residual is numerically zero.
fn reduce_against(basis: &[Vec<f64>], mut v: Vec<f64>) -> Option<Vec<f64>> {
    let start = norm(&v);
    if !(start > 0.0) {
        return None;
    }
    for _ in 0..2 {
        for b in basis {
            let c = dot(&v, b);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= c * bi;
            }
        }
    }
    let len = norm(&v);
    if len <= 1e-10 * start {
        return None;
    }
    v.iter_mut().for_each(|x| *x /= len);
    Some(v)
}

/// Modified Gram-Schmidt with re-orthogonalization.
pub fn orthonormalize(rows: Vec<Vec<f64>>) -> Result<SubspaceBasis> {
    let count = rows.len();
    let shape = SubspaceBasis { rows: rows.clone() };
    shape.validate_shape()?;
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(count);
    let mut rank = 0;
    let mut deficient = false;
    for r in rows {
        match reduce_against(&out, r) {
            Some(v) => {
                out.push(v);
                rank += 1;
            }
            None => deficient = true,
        }
    }
    if deficient {
        return Err(NumError::RankDeficient { rank, rows: count });
    }
    Ok(SubspaceBasis { rows: out })
}

/// Independent random stream for `(seed, index)`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn gaussian_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)).collect()
}

/// Uniform point on `S^{dim-1}`.
pub fn random_unit_vector<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let mut v = gaussian_vector(rng, dim);
        let len = norm(&v);
        if len > 1e-12 {
            v.iter_mut().for_each(|x| *x /= len);
            return v;
        }
    }
}

/// Result of a restarted maximization on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereMax {
    pub value: f64,
    pub witness: Vec<f64>,
}

/// Projected gradient ascent with step halving from a single start point,
/// followed by a Newton polish on the tangent space.
///
/// `objective` returns the value and the Euclidean gradient; it is also
/// queried slightly off the sphere to difference the gradient.
pub fn sphere_ascent<F>(objective: &F, start: Vec<f64>) -> SphereMax
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    let mut u = start;
    let len = norm(&u);
    u.iter_mut().for_each(|x| *x /= len);
    let (mut value, mut grad) = objective(&u);
    let mut step = 1.0;
    let mut stalls = 0;
    for _ in 0..60 {
        let radial = dot(&grad, &u);
        let tangent: Vec<f64> = grad.iter().zip(&u).map(|(g, x)| g - radial * x).collect();
        let gnorm = norm(&tangent);
        if gnorm <= 1e-9 * (1.0 + value.abs()) {
            break;
        }
        let mut accepted = false;
        while step * gnorm > 1e-17 {
            let cand = retract(&u, &tangent, step);
            let (cv, cg) = objective(&cand);
            if cv > value {
                let gain = cv - value;
                u = cand;
                value = cv;
                grad = cg;
                step *= 2.0;
                accepted = true;
                if gain <= 1e-16 * (1.0 + value.abs()) {
                    stalls += 1;
                } else {
                    stalls = 0;
                }
                break;
            }
            step *= 0.5;
        }
        if !accepted || stalls >= 4 {
            break;
        }
    }
    newton_polish(objective, &mut u, &mut value, &mut grad);
    SphereMax { value, witness: canonical_sign(u) }
}

fn retract(u: &[f64], d: &[f64], t: f64) -> Vec<f64> {
    let mut c: Vec<f64> = u.iter().zip(d).map(|(x, y)| x + t * y).collect();
    let l = norm(&c);
    c.iter_mut().for_each(|x| *x /= l);
    c
}

// Saddle-free Newton steps: the tangent Hessian is differenced from the
// gradient and its eigenvalues replaced by their magnitudes, so every step
// is an ascent direction and degenerate maxima still converge.
fn newton_polish<F>(objective: &F, u: &mut Vec<f64>, value: &mut f64, grad: &mut Vec<f64>)
where
    F: Fn(&[f64]) -> (f64, Vec<f64>),
{
    let m = u.len();
    if m < 2 {
        return;
    }
    const H: f64 = 1e-5;
    for _ in 0..80 {
        let basis = match SubspaceBasis::new(vec![u.clone()]) {
            Ok(b) => b.complement(),
            Err(_) => return,
        };
        let gt: Vec<f64> = basis.iter().map(|e| dot(e, grad)).collect();
        if norm(&gt) <= 1e-13 * (1.0 + value.abs()) {
            return;
        }
        let mut hess = nalgebra::DMatrix::<f64>::zeros(m, m);
        for j in 0..m {
            let mut up = u.clone();
            let mut dn = u.clone();
            up[j] += H;
            dn[j] -= H;
            let (_, gp) = objective(&up);
            let (_, gm) = objective(&dn);
            for i in 0..m {
                hess[(i, j)] = (gp[i] - gm[i]) / (2.0 * H);
            }
        }
        let radial = dot(grad, u);
        let k = m - 1;
        let ht = nalgebra::DMatrix::<f64>::from_fn(k, k, |a, b| {
            let mut s = 0.0;
            for i in 0..m {
                for j in 0..m {
                    s += basis[a][i] * 0.5 * (hess[(i, j)] + hess[(j, i)]) * basis[b][j];
                }
            }
            if a == b {
                s - radial
            } else {
                s
            }
        });
        let eig = ht.symmetric_eigen();
        let scale = eig.eigenvalues.iter().fold(0.0_f64, |a, v| a.max(v.abs())).max(1e-300);
        let mut coef = vec![0.0; k];
        for (q, lam) in eig.eigenvectors.column_iter().zip(eig.eigenvalues.iter()) {
            let proj: f64 = q.iter().zip(&gt).map(|(a, b)| a * b).sum();
            let c = proj / lam.abs().max(1e-10 * scale);
            for (ci, qi) in coef.iter_mut().zip(q.iter()) {
                *ci += c * qi;
            }
        }
        let mut dir = vec![0.0; m];
        for (c, e) in coef.iter().zip(&basis) {
            for (d, ei) in dir.iter_mut().zip(e) {
                *d += c * ei;
            }
        }
        let mut t = 1.0;
        let mut moved = false;
        for _ in 0..30 {
            let cand = retract(u, &dir, t);
            let (cv, cg) = objective(&cand);
            if cv > *value {
                *u = cand;
                *value = cv;
                *grad = cg;
                moved = true;
                break;
            }
            t *= 0.5;
        }
        if !moved {
            return;
        }
    }
}

/// Flips `u` so its first non-negligible coordinate is positive.
pub fn canonical_sign(mut u: Vec<f64>) -> Vec<f64> {
    if let Some(first) = u.iter().find(|v| v.abs() > 1e-9) {
        if *first < 0.0 {
            u.iter_mut().for_each(|x| *x = -*x);
        }
    }
    u
}

fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > 1e-12 {
            return x < y;
        }
    }
    false
}

/// Picks the best candidate; near-ties go to the lexicographically
/// smallest witness.
pub fn select_best(candidates: Vec<SphereMax>) -> SphereMax {
    let best = candidates.iter().map(|c| c.value).fold(f64::NEG_INFINITY, f64::max);
    let tie = 1e-12 * (1.0 + best.abs());
    candidates
        .into_iter()
        .filter(|c| c.value >= best - tie)
        .reduce(|a, b| if lex_less(&b.witness, &a.witness) { b } else { a })
        .expect("at least one candidate")
}

/// Maximizes an even objective on `S^{dim-1}` from `restarts` seeded random
/// starts plus any explicit `probes`.
pub fn maximize_on_sphere<F>(
    dim: usize,
    objective: F,
    restarts: usize,
    seed: u64,
    probes: &[Vec<f64>],
) -> SphereMax
where
    F: Fn(&[f64]) -> (f64, Vec<f64>) + Sync,
{
    if dim == 1 {
        let (value, _) = objective(&[1.0]);
        return SphereMax { value, witness: vec![1.0] };
    }
    let restarts = restarts.max(1);
    let mut starts: Vec<Vec<f64>> = probes.to_vec();
    starts.extend((0..restarts).map(|i| random_unit_vector(&mut stream_rng(seed, i as u64), dim)));
    let candidates: Vec<SphereMax> = if starts.len() >= 8 {
        starts.into_par_iter().map(|s| sphere_ascent(&objective, s)).collect()
    } else {
        starts.into_iter().map(|s| sphere_ascent(&objective, s)).collect()
    };
    select_best(candidates)
}

/// Value and gradient of `Σ w_i y_i⁴` at unit `c`, with `y = Bᵀc`.
pub(crate) fn weighted_quartic(basis: &SubspaceBasis, weights: &[f64], c: &[f64]) -> (f64, Vec<f64>) {
    let y = basis.combine(c);
    let mut value = 0.0;
    let mut dy = vec![0.0; y.len()];
    for ((yi, wi), di) in y.iter().zip(weights).zip(dy.iter_mut()) {
        let y2 = yi * yi;
        value += wi * y2 * y2;
        *di = 4.0 * wi * y2 * yi;
    }
    let grad = basis.rows().iter().map(|row| dot(row, &dy)).collect();
    (value, grad)
}

/// `sup_{x ∈ span(B)} ratio4(x)`, with the maximizing unit coefficient vector.
pub fn sup_ratio(basis: &SubspaceBasis, restarts: usize, seed: u64) -> SphereMax {
    let n = basis.ambient_dim();
    sup_weighted(basis, &vec![n as f64; n], restarts, seed)
}

/// `sup` over unit `c` of `Σ w_i (Bᵀc)_i⁴`; [`sup_ratio`] is `w_i = N`.
pub fn sup_weighted(basis: &SubspaceBasis, weights: &[f64], restarts: usize, seed: u64) -> SphereMax {
    let m = basis.dim();
    // Coordinate axes of the coefficient space are cheap extra probes.
    let probes: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut e = vec![0.0; m];
            e[i] = 1.0;
            e
        })
        .collect();
    maximize_on_sphere(m, |c| weighted_quartic(basis, weights, c), restarts, seed, &probes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lp_norm_examples() {
        assert_relative_eq!(lp_norm(&[1.0, 1.0, 1.0, 1.0], 4).unwrap(), 1.0, epsilon = 1e-15);
        let mut e = vec![0.0; 7];
        e[0] = 1.0;
        assert_relative_eq!(lp_norm(&e, 4).unwrap(), (1.0_f64 / 7.0).powf(0.25), epsilon = 1e-15);
        assert_relative_eq!(lp_norm(&[1.0, -1.0, 2.0, 0.0], 2).unwrap(), 1.5_f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(
            lp_norm_unnormalized(&[1.0, -1.0, 2.0, 0.0], 2).unwrap(),
            6.0_f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn lp_norm_errors() {
        assert_eq!(lp_norm(&[], 4), Err(NumError::Empty));
        assert_eq!(lp_norm(&[1.0], 3), Err(NumError::BadExponent(3)));
        assert_eq!(lp_norm(&[1.0], 0), Err(NumError::BadExponent(0)));
    }

    #[test]
    fn ratio4_examples() {
        assert_relative_eq!(ratio4(&[1.0; 5]).unwrap(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(ratio4(&[0.0, 0.0, 3.0, 0.0]).unwrap(), 4.0, epsilon = 1e-15);
        assert_relative_eq!(ratio4(&[1.0, 1.0, 0.0, 0.0]).unwrap(), 2.0, epsilon = 1e-15);
        assert_eq!(ratio4(&[0.0, 0.0]), Err(NumError::ZeroVector));
    }

    #[test]
    fn weighted_ratio_examples() {
        let x = [0.3, -1.2, 0.7];
        let u = WeightVector::uniform(3);
        assert_relative_eq!(weighted_ratio4(&x, &u).unwrap(), ratio4(&x).unwrap(), epsilon = 1e-14);
        let half = WeightVector::new(vec![0.5_f64.sqrt(), 0.5_f64.sqrt()]).unwrap();
        // Direct evaluation: x = e1 gives (1 / (1/2)) / 1².
        assert_relative_eq!(weighted_ratio4(&[1.0, 0.0], &half).unwrap(), 2.0, epsilon = 1e-14);
        assert_relative_eq!(weighted_ratio4(&[1.0, 1.0], &half).unwrap(), 1.0, epsilon = 1e-14);
        assert!(weighted_ratio4(&[0.0, 0.0], &half).is_err());
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(vec![0.6, 0.8]).is_ok());
        assert!(WeightVector::new(vec![0.6, 0.7]).is_err());
        assert!(WeightVector::new(vec![-0.6, 0.8]).is_err());
        assert!(WeightVector::new(vec![]).is_err());
    }

    #[test]
    fn orthonormalize_examples() {
        let id = orthonormalize(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        assert_eq!(id.rows(), &[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);

        let b = orthonormalize(vec![vec![1.0, 1.0, 0.0], vec![0.0, 1.0, 1.0]]).unwrap();
        assert!(b.gram_residual() < GRAM_TOL);
        // Span preserved: both inputs project onto themselves.
        for v in [[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]] {
            let c: Vec<f64> = b.rows().iter().map(|r| dot(r, &v)).collect();
            let back = b.combine(&c);
            for (x, y) in back.iter().zip(v) {
                assert!((x - y).abs() < 1e-14);
            }
        }

        let err = orthonormalize(vec![vec![1.0, 2.0, 3.0], vec![1.0, 2.0, 3.0]]).unwrap_err();
        assert_eq!(err, NumError::RankDeficient { rank: 1, rows: 2 });
    }

    #[test]
    fn complement_is_orthonormal() {
        let b = orthonormalize(vec![vec![1.0, 1.0, 1.0]]).unwrap();
        let c = b.complement();
        assert_eq!(c.len(), 2);
        let mut all = b.rows().to_vec();
        all.extend(c);
        assert!(SubspaceBasis::new(all).is_ok());
    }

    #[test]
    fn sup_ratio_full_space_is_n() {
        let b = SubspaceBasis::coordinate(4, 4).unwrap();
        let s = sup_ratio(&b, 8, 0);
        assert_relative_eq!(s.value, 4.0, epsilon = 1e-12);
        let ones = s.witness.iter().filter(|v| (v.abs() - 1.0).abs() < 1e-9).count();
        assert_eq!(ones, 1);
    }

    #[test]
    fn sup_ratio_plane_normal_to_diagonal() {
        let b = orthonormalize(vec![vec![1.0, -1.0, 0.0], vec![1.0, 1.0, -2.0]]).unwrap();
        let s = sup_ratio(&b, 16, 3);
        assert_relative_eq!(s.value, 1.5, epsilon = 1e-12);
    }

    #[test]
    fn sup_ratio_of_a_line() {
        let row = vec![0.2, -0.5, 0.1, 0.8];
        let b = orthonormalize(vec![row.clone()]).unwrap();
        assert_relative_eq!(sup_ratio(&b, 4, 0).value, ratio4(&row).unwrap(), epsilon = 1e-14);
    }

    #[test]
    fn sup_ratio_is_deterministic() {
        let b = SubspaceBasis::random(3, 7, &mut stream_rng(11, 0)).unwrap();
        assert_eq!(sup_ratio(&b, 16, 5), sup_ratio(&b, 16, 5));
    }
}
