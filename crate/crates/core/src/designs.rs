//! Spherical designs of degree 2 and 4: verification by full moment
//! tensors, the equally spaced circle family, the icosahedron, a numerical
//! search, and the plain-text design file format.
//!
//! A degree-4 design on `S^{m-1}` reproduces the uniform measure's moments
//! of degrees 2, 3 and 4; the odd third moment must vanish.

use crate::numkit::{self, random_unit_vector, stream_rng};
use nalgebra::{DMatrix, DVector};
use std::fmt::Write as _;
use thiserror::Error;

/// Moment residual below which a point set counts as a design.
pub const DESIGN_TOL: f64 = 1e-10;
/// Success threshold reported by [`search_design`].
pub const SEARCH_TOL: f64 = 1e-8;
const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DesignError {
    #[error("point {index} has norm {norm}, not 1")]
    NonUnitPoint { index: usize, norm: f64 },
    #[error("point {index} has {got} coordinates, expected {expected}")]
    WrongDimension { index: usize, expected: usize, got: usize },
    #[error("design needs at least one point")]
    Empty,
    #[error("unsupported design degree {0}; use 2 or 4")]
    UnsupportedDegree(u8),
    #[error("design file: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, DesignError>;

/// A finite multiset of unit vectors of `R^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalDesign {
    m: usize,
    points: Vec<Vec<f64>>,
    degree_claimed: u8,
}

impl SphericalDesign {
    pub fn new(m: usize, points: Vec<Vec<f64>>, degree_claimed: u8) -> Result<Self> {
        if points.is_empty() || m == 0 {
            return Err(DesignError::Empty);
        }
        if degree_claimed != 2 && degree_claimed != 4 {
            return Err(DesignError::UnsupportedDegree(degree_claimed));
        }
        for (index, p) in points.iter().enumerate() {
            if p.len() != m {
                return Err(DesignError::WrongDimension { index, expected: m, got: p.len() });
            }
            let norm = numkit::norm(p);
            if (norm - 1.0).abs() > UNIT_TOL {
                return Err(DesignError::NonUnitPoint { index, norm });
            }
        }
        Ok(Self { m, points, degree_claimed })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn degree_claimed(&self) -> u8 {
        self.degree_claimed
    }

    /// `d ∪ (−d)`.
    pub fn antipodal_union(&self) -> Self {
        let mut points = self.points.clone();
        points.extend(self.points.iter().map(|p| p.iter().map(|x| -x).collect::<Vec<_>>()));
        Self { m: self.m, points, degree_claimed: self.degree_claimed }
    }

    /// Applies the linear map with the given rows to every point.
    pub fn transformed(&self, rows: &[Vec<f64>]) -> Result<Self> {
        let points = self
            .points
            .iter()
            .map(|p| rows.iter().map(|r| numkit::dot(r, p)).collect())
            .collect();
        Self::new(self.m, points, self.degree_claimed)
    }
}

/// Outcome of [`verify_design`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignCheck {
    pub pass: bool,
    /// Frobenius norm of `(1/N)Σ ssᵀ − I/m`.
    pub residual2: f64,
    /// Largest entry of the averaged third-moment tensor.
    pub residual3: f64,
    /// Largest entry of `(1/N)Σ s⊗s⊗s⊗s` minus the isotropic tensor.
    pub residual4: f64,
}

/// Checks the moment conditions of the requested degree (2 or 4).
pub fn verify_design(d: &SphericalDesign, degree: u8) -> Result<DesignCheck> {
    if degree != 2 && degree != 4 {
        return Err(DesignError::UnsupportedDegree(degree));
    }
    let m = d.m;
    let n = d.len() as f64;
    let mut m2 = vec![0.0; m * m];
    let mut m3 = vec![0.0; m * m * m];
    let mut m4 = vec![0.0; m * m * m * m];
    for s in d.points() {
        for i in 0..m {
            for j in 0..m {
                let sij = s[i] * s[j];
                m2[i * m + j] += sij;
                for k in 0..m {
                    let sijk = sij * s[k];
                    m3[(i * m + j) * m + k] += sijk;
                    if degree == 4 {
                        for l in 0..m {
                            m4[((i * m + j) * m + k) * m + l] += sijk * s[l];
                        }
                    }
                }
            }
        }
    }
    let mut r2 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let target = if i == j { 1.0 / m as f64 } else { 0.0 };
            r2 += (m2[i * m + j] / n - target).powi(2);
        }
    }
    let residual2 = r2.sqrt();
    if degree == 2 {
        return Ok(DesignCheck {
            pass: residual2 < DESIGN_TOL,
            residual2,
            residual3: f64::NAN,
            residual4: f64::NAN,
        });
    }
    let residual3 = m3.iter().fold(0.0_f64, |a, v| a.max((v / n).abs()));
    let denom = (m * (m + 2)) as f64;
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let mut residual4 = 0.0_f64;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let iso = (delta(i, j) * delta(k, l) + delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k)) / denom;
                    let v = m4[((i * m + j) * m + k) * m + l] / n;
                    residual4 = residual4.max((v - iso).abs());
                }
            }
        }
    }
    Ok(DesignCheck {
        pass: residual2 < DESIGN_TOL && residual3 < DESIGN_TOL && residual4 < DESIGN_TOL,
        residual2,
        residual3,
        residual4,
    })
}

/// `n` equally spaced unit vectors on the circle.
///
/// Only `n ≥ 5` passes the degree-4 check; smaller sets are still returned
/// so the failure can be observed through [`verify_design`].
pub fn circle_design(n: usize) -> Result<SphericalDesign> {
    if n == 0 {
        return Err(DesignError::Empty);
    }
    let points = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            vec![t.cos(), t.sin()]
        })
        .collect();
    SphericalDesign::new(2, points, 4)
}

/// The 12 vertices of the regular icosahedron, normalized.
pub fn icosahedron() -> SphericalDesign {
    let phi = (1.0 + 5.0_f64.sqrt()) / 2.0;
    let len = (1.0 + phi * phi).sqrt();
    let mut points = Vec::with_capacity(12);
    for &a in &[-1.0, 1.0] {
        for &b in &[-phi, phi] {
            points.push(vec![0.0, a / len, b / len]);
            points.push(vec![a / len, b / len, 0.0]);
            points.push(vec![b / len, 0.0, a / len]);
        }
    }
    SphericalDesign::new(3, points, 4).expect("icosahedron vertices are unit vectors")
}

/// Result of [`search_design`].
#[derive(Debug, Clone)]
pub struct DesignSearch {
    pub design: SphericalDesign,
    pub check: DesignCheck,
    /// `residual2² + ‖M3‖²_F + ‖M4 − T‖²_F` at the returned configuration.
    pub objective: f64,
    pub iterations: usize,
    /// Whether every residual reached [`SEARCH_TOL`].
    pub converged: bool,
}

impl DesignSearch {
    pub fn residual4(&self) -> f64 {
        self.check.residual4
    }

    /// Largest of the three moment residuals.
    pub fn residual(&self) -> f64 {
        self.check.residual2.max(self.check.residual3).max(self.check.residual4)
    }
}

// Stacked entries of M2 − I/m, M3 and M4 − T over the full tensors, so the
// squared norm is residual2² + ‖M3‖²_F + ‖M4 − T‖²_F.
fn residual_vector(points: &[Vec<f64>], m: usize) -> Vec<f64> {
    let n = points.len() as f64;
    let denom = (m * (m + 2)) as f64;
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let mut out = Vec::with_capacity(m * m + m * m * m + m * m * m * m);
    for i in 0..m {
        for j in 0..m {
            let v: f64 = points.iter().map(|s| s[i] * s[j]).sum::<f64>() / n;
            out.push(v - delta(i, j) / m as f64);
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                out.push(points.iter().map(|s| s[i] * s[j] * s[k]).sum::<f64>() / n);
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    let iso = (delta(i, j) * delta(k, l) + delta(i, k) * delta(j, l) + delta(i, l) * delta(j, k)) / denom;
                    out.push(points.iter().map(|s| s[i] * s[j] * s[k] * s[l]).sum::<f64>() / n - iso);
                }
            }
        }
    }
    out
}

// Jacobian of `residual_vector` in the tangent coordinates of every point.
fn residual_jacobian(points: &[Vec<f64>], frames: &[Vec<Vec<f64>>], m: usize) -> DMatrix<f64> {
    let n = points.len();
    let rows = m * m + m * m * m + m * m * m * m;
    let cols = n * (m - 1);
    let nf = n as f64;
    let mut jac = DMatrix::zeros(rows, cols);
    for (p, (s, frame)) in points.iter().zip(frames).enumerate() {
        // Ambient derivative of each tensor entry with respect to s_p.
        let mut grad = vec![vec![0.0; m]; rows];
        let mut row = 0;
        for i in 0..m {
            for j in 0..m {
                grad[row][i] += s[j] / nf;
                grad[row][j] += s[i] / nf;
                row += 1;
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    grad[row][i] += s[j] * s[k] / nf;
                    grad[row][j] += s[i] * s[k] / nf;
                    grad[row][k] += s[i] * s[j] / nf;
                    row += 1;
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        grad[row][i] += s[j] * s[k] * s[l] / nf;
                        grad[row][j] += s[i] * s[k] * s[l] / nf;
                        grad[row][k] += s[i] * s[j] * s[l] / nf;
                        grad[row][l] += s[i] * s[j] * s[k] / nf;
                        row += 1;
                    }
                }
            }
        }
        for (r, g) in grad.iter().enumerate() {
            for (t, e) in frame.iter().enumerate() {
                jac[(r, p * (m - 1) + t)] = numkit::dot(g, e);
            }
        }
    }
    jac
}

fn tangent_frame(p: &[f64]) -> Vec<Vec<f64>> {
    numkit::SubspaceBasis::new(vec![p.to_vec()]).map(|b| b.complement()).unwrap_or_default()
}

fn sum_sq(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Levenberg-Marquardt on the squared moment residuals over a product of
/// `n` spheres in `R^m`, from a seeded random start.
///
/// Non-convergence is a reported outcome, not an error.
pub fn search_design(m: usize, n: usize, seed: u64, max_iters: usize) -> Result<DesignSearch> {
    if m == 0 || n == 0 {
        return Err(DesignError::Empty);
    }
    let mut rng = stream_rng(seed, 0);
    let mut pts: Vec<Vec<f64>> = (0..n).map(|_| random_unit_vector(&mut rng, m)).collect();
    let mut res = residual_vector(&pts, m);
    let mut value = sum_sq(&res);
    let mut mu = 1e-3;
    let mut iterations = 0;
    while m > 1 && iterations < max_iters && value > 1e-30 {
        iterations += 1;
        let frames: Vec<Vec<Vec<f64>>> = pts.iter().map(|p| tangent_frame(p)).collect();
        let jac = residual_jacobian(&pts, &frames, m);
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let rhs = -(&jt * DVector::from_column_slice(&res));
        let mut accepted = false;
        while mu < 1e12 {
            let mut lhs = jtj.clone();
            for d in 0..lhs.nrows() {
                lhs[(d, d)] += mu * (1.0 + jtj[(d, d)]);
            }
            let Some(delta) = lhs.cholesky().map(|c| c.solve(&rhs)) else {
                mu *= 4.0;
                continue;
            };
            let cand: Vec<Vec<f64>> = pts
                .iter()
                .zip(&frames)
                .enumerate()
                .map(|(p, (s, frame))| {
                    let mut c = s.clone();
                    for (t, e) in frame.iter().enumerate() {
                        let d = delta[p * (m - 1) + t];
                        c.iter_mut().zip(e).for_each(|(ci, ei)| *ci += d * ei);
                    }
                    let l = numkit::norm(&c);
                    c.iter_mut().for_each(|x| *x /= l);
                    c
                })
                .collect();
            let cres = residual_vector(&cand, m);
            let cv = sum_sq(&cres);
            if cv < value {
                pts = cand;
                res = cres;
                value = cv;
                mu = (mu / 3.0).max(1e-15);
                accepted = true;
                break;
            }
            mu *= 4.0;
        }
        if !accepted {
            break;
        }
    }
    let design = SphericalDesign::new(m, pts, 4)?;
    let check = verify_design(&design, 4)?;
    let converged = check.residual2 < SEARCH_TOL && check.residual3 < SEARCH_TOL && check.residual4 < SEARCH_TOL;
    Ok(DesignSearch { design, check, objective: value, iterations, converged })
}

/// Serializes as `m N degree` followed by one line of `m` reals per point,
/// each with 17 significant digits.
pub fn write_design(d: &SphericalDesign) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {}", d.m, d.len(), d.degree_claimed).unwrap();
    for p in d.points() {
        let line: Vec<String> = p.iter().map(|x| format!("{x:.16e}")).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

pub fn read_design(text: &str) -> Result<SphericalDesign> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| DesignError::Parse("missing header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(DesignError::Parse(format!("header needs `m N degree`, got `{header}`")));
    }
    let parse_usize = |s: &str| s.parse::<usize>().map_err(|e| DesignError::Parse(format!("`{s}`: {e}")));
    let m = parse_usize(fields[0])?;
    let n = parse_usize(fields[1])?;
    let degree = fields[2].parse::<u8>().map_err(|e| DesignError::Parse(format!("`{}`: {e}", fields[2])))?;
    let mut points = Vec::with_capacity(n);
    for (index, line) in lines.enumerate() {
        let row: std::result::Result<Vec<f64>, _> = line.split_whitespace().map(str::parse::<f64>).collect();
        let row = row.map_err(|e| DesignError::Parse(format!("line {}: {e}", index + 2)))?;
        if row.len() != m {
            return Err(DesignError::WrongDimension { index, expected: m, got: row.len() });
        }
        points.push(row);
    }
    if points.len() != n {
        return Err(DesignError::Parse(format!("header announces {n} points, found {}", points.len())));
    }
    SphericalDesign::new(m, points, degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Finite-sum oracle for equally spaced circle points:
    // (1/N) Σ_k cos^d(2πk/N + φ) averaged against the uniform value.
    fn circle_moment(n: usize, d: i32, phase: f64) -> f64 {
        (0..n)
            .map(|k| (2.0 * std::f64::consts::PI * k as f64 / n as f64 + phase).cos().powi(d))
            .sum::<f64>()
            / n as f64
    }

    #[test]
    fn circle_oracle_values() {
        // Uniform circle moments: E cos² = 1/2, E cos³ = 0, E cos⁴ = 3/8.
        for n in [5, 6, 7] {
            assert!((circle_moment(n, 2, 0.3) - 0.5).abs() < 1e-15);
            assert!(circle_moment(n, 3, 0.3).abs() < 1e-15);
            assert!((circle_moment(n, 4, 0.3) - 0.375).abs() < 1e-15);
        }
        assert!((circle_moment(4, 4, 0.0) - 0.5).abs() < 1e-15);
        assert!((circle_moment(3, 3, 0.0) - 0.25).abs() < 1e-15);
        assert!((circle_moment(3, 4, 0.0) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn circles_of_five_and_six_pass() {
        for n in [5, 6] {
            let c = verify_design(&circle_design(n).unwrap(), 4).unwrap();
            assert!(c.pass, "{n}: {c:?}");
            assert!(c.residual2 < 1e-14 && c.residual3 < 1e-14 && c.residual4 < 1e-14);
        }
    }

    #[test]
    fn circle_of_four_fails_fourth_moment() {
        let c = verify_design(&circle_design(4).unwrap(), 4).unwrap();
        assert!(!c.pass);
        // (1/4)Σcos⁴ = 1/2 against 3/8.
        assert!((c.residual4 - 0.125).abs() < 1e-14);
    }

    #[test]
    fn circle_of_three_is_only_a_two_design() {
        let d = circle_design(3).unwrap();
        assert!(verify_design(&d, 2).unwrap().pass);
        let c = verify_design(&d, 4).unwrap();
        assert!(!c.pass);
        assert!((c.residual3 - 0.25).abs() < 1e-14);
        assert!(c.residual4 < 1e-14);
    }

    #[test]
    fn icosahedron_is_a_four_design() {
        let c = verify_design(&icosahedron(), 4).unwrap();
        assert!(c.pass, "{c:?}");
    }

    #[test]
    fn non_unit_points_rejected() {
        let err = SphericalDesign::new(2, vec![vec![1.0, 0.1]], 4).unwrap_err();
        assert!(matches!(err, DesignError::NonUnitPoint { index: 0, .. }));
        assert!(verify_design(&circle_design(5).unwrap(), 3).is_err());
    }

    #[test]
    fn antipodal_union_keeps_design() {
        let d = icosahedron().antipodal_union();
        assert!(verify_design(&d, 4).unwrap().pass);
        let d = circle_design(5).unwrap().antipodal_union();
        assert!(verify_design(&d, 4).unwrap().pass);
    }

    #[test]
    fn search_finds_pentagon() {
        let s = search_design(2, 5, 1, 20_000).unwrap();
        assert!(s.converged, "{:?}", s.check);
    }

    #[test]
    fn file_round_trip_is_bit_exact() {
        let d = search_design(3, 7, 4, 50).unwrap().design;
        let text = write_design(&d);
        let back = read_design(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(write_design(&back), text);
    }

    #[test]
    fn corrupted_files_are_rejected() {
        assert!(read_design("").is_err());
        assert!(read_design("2 2 4\n1 0\n").is_err());
        assert!(read_design("2 1 4\n1 zero\n").is_err());
        assert!(read_design("2 1 4\n1 0 0\n").is_err());
        assert!(read_design("2 1 4\n0.5 0.5\n").is_err());
    }
}
