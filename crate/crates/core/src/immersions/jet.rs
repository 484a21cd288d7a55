//! Second-order forward-mode jets in `m` variables: value, gradient and
//! Hessian carried through arithmetic and elementary functions.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// A scalar with its first and second derivatives.
///
/// Constants carry no derivative storage and act as zero there.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet {
    pub v: f64,
    g: Vec<f64>,
    h: Vec<f64>,
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        Self { v, g: Vec::new(), h: Vec::new() }
    }

    /// The `i`-th coordinate function evaluated at `v`.
    pub fn variable(v: f64, i: usize, m: usize) -> Self {
        let mut g = vec![0.0; m];
        g[i] = 1.0;
        Self { v, g, h: vec![0.0; m * m] }
    }

    /// Coordinate jets at the point `x`.
    pub fn seed(x: &[f64]) -> Vec<Jet> {
        x.iter().enumerate().map(|(i, &v)| Jet::variable(v, i, x.len())).collect()
    }

    pub fn constants(x: &[f64]) -> Vec<Jet> {
        x.iter().map(|&v| Jet::constant(v)).collect()
    }

    pub fn value(&self) -> f64 {
        self.v
    }

    pub fn is_constant(&self) -> bool {
        self.g.is_empty()
    }

    /// Gradient, zero-padded to `m` entries for constants.
    pub fn gradient(&self, m: usize) -> Vec<f64> {
        if self.g.is_empty() {
            vec![0.0; m]
        } else {
            self.g.clone()
        }
    }

    /// Row-major `m×m` Hessian, zero for constants.
    pub fn hessian(&self, m: usize) -> Vec<f64> {
        if self.h.is_empty() {
            vec![0.0; m * m]
        } else {
            self.h.clone()
        }
    }

    // f(self) given f(v), f'(v), f''(v).
    fn chain(&self, f0: f64, f1: f64, f2: f64) -> Self {
        if self.is_constant() {
            return Self::constant(f0);
        }
        let m = self.g.len();
        let g = self.g.iter().map(|x| f1 * x).collect();
        let mut h: Vec<f64> = self.h.iter().map(|x| f1 * x).collect();
        for i in 0..m {
            for j in 0..m {
                h[i * m + j] += f2 * self.g[i] * self.g[j];
            }
        }
        Self { v: f0, g, h }
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn sqrt(&self) -> Self {
        let r = self.v.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.v))
    }

    pub fn recip(&self) -> Self {
        let r = 1.0 / self.v;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn powi(&self, n: i32) -> Self {
        let v = self.v;
        let nf = n as f64;
        self.chain(v.powi(n), nf * v.powi(n - 1), nf * (nf - 1.0) * v.powi(n - 2))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self { v: k * self.v, g: self.g.iter().map(|x| k * x).collect(), h: self.h.iter().map(|x| k * x).collect() }
    }

    pub fn add_const(&self, k: f64) -> Self {
        Self { v: self.v + k, g: self.g.clone(), h: self.h.clone() }
    }

    pub fn square(&self) -> Self {
        self * self
    }
}

fn combine(a: &[f64], b: &[f64], ka: f64, kb: f64) -> Vec<f64> {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => Vec::new(),
        (false, true) => a.iter().map(|x| ka * x).collect(),
        (true, false) => b.iter().map(|x| kb * x).collect(),
        (false, false) => a.iter().zip(b).map(|(x, y)| ka * x + kb * y).collect(),
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, o: &Jet) -> Jet {
        Jet { v: self.v + o.v, g: combine(&self.g, &o.g, 1.0, 1.0), h: combine(&self.h, &o.h, 1.0, 1.0) }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, o: &Jet) -> Jet {
        Jet { v: self.v - o.v, g: combine(&self.g, &o.g, 1.0, -1.0), h: combine(&self.h, &o.h, 1.0, -1.0) }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, o: &Jet) -> Jet {
        let g = combine(&self.g, &o.g, o.v, self.v);
        let mut h = combine(&self.h, &o.h, o.v, self.v);
        if !self.g.is_empty() && !o.g.is_empty() {
            let m = self.g.len();
            for i in 0..m {
                for j in 0..m {
                    h[i * m + j] += self.g[i] * o.g[j] + o.g[i] * self.g[j];
                }
            }
        }
        Jet { v: self.v * o.v, g, h }
    }
}

impl Div for &Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Jet) -> Jet {
        self * &o.recip()
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Jet {
            type Output = Jet;
            fn $f(self, o: Jet) -> Jet { (&self).$f(&o) }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $f(self, o: &Jet) -> Jet { (&self).$f(o) }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $f(self, o: Jet) -> Jet { self.$f(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

/// `Σ a_i b_i` over jets.
pub fn dot(a: &[Jet], b: &[Jet]) -> Jet {
    a.iter().zip(b).fold(Jet::constant(0.0), |acc, (x, y)| acc + x * y)
}
