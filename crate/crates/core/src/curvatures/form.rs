//! Normal curvature function `K_v = <II, v>` on the tangent cylinder.

use crate::jetcore::MongeJet;
use crate::locus::TangentParam;
use nalgebra::DVector;

/// Coefficients of `K_v`.
///
/// Surfaces: `K(y) = l + 2 m y + n y^2`.
/// 3-manifolds: `K(theta, gamma) = A(theta) + B(theta) gamma + c gamma^2` with
/// `A = a200 cos^2 + 2 a110 cos sin + a020 sin^2` and `B = 2 (b1 cos + b2 sin)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormalCurvatureForm {
    Surface { l: f64, m: f64, n: f64 },
    Solid { a200: f64, a110: f64, a020: f64, b1: f64, b2: f64, c: f64 },
}

pub fn normal_curvature_function(jet: &MongeJet, v: &DVector<f64>) -> NormalCurvatureForm {
    let p = |i: usize, j: usize| v.dot(&jet.coeff_vec(i, j));
    match jet.n {
        2 => NormalCurvatureForm::Surface { l: p(0, 0), m: p(0, 1), n: p(1, 1) },
        _ => NormalCurvatureForm::Solid {
            a200: p(0, 0),
            a110: p(0, 1),
            a020: p(1, 1),
            b1: p(0, 2),
            b2: p(1, 2),
            c: p(2, 2),
        },
    }
}

impl NormalCurvatureForm {
    pub fn coefficients(&self) -> Vec<f64> {
        match *self {
            NormalCurvatureForm::Surface { l, m, n } => vec![l, m, n],
            NormalCurvatureForm::Solid { a200, a110, a020, b1, b2, c } => vec![a200, a110, a020, b1, b2, c],
        }
    }

    /// Largest absolute coefficient, at least one.
    pub fn scale(&self) -> f64 {
        self.coefficients().iter().fold(1.0f64, |s, x| s.max(x.abs()))
    }

    pub fn eval(&self, p: TangentParam) -> f64 {
        match (*self, p) {
            (NormalCurvatureForm::Surface { l, m, n }, TangentParam::Surface { y }) => l + 2.0 * m * y + n * y * y,
            (NormalCurvatureForm::Solid { c, .. }, TangentParam::Cylinder { theta, gamma }) => {
                self.theta_part(theta) + self.gamma_slope(theta) * gamma + c * gamma * gamma
            }
            _ => f64::NAN,
        }
    }

    /// `A(theta)` for 3-manifolds.
    pub fn theta_part(&self, t: f64) -> f64 {
        match *self {
            NormalCurvatureForm::Solid { a200, a110, a020, .. } => {
                let (s, c) = t.sin_cos();
                a200 * c * c + 2.0 * a110 * c * s + a020 * s * s
            }
            _ => f64::NAN,
        }
    }

    /// `B(theta)` for 3-manifolds.
    pub fn gamma_slope(&self, t: f64) -> f64 {
        match *self {
            NormalCurvatureForm::Solid { b1, b2, .. } => {
                let (s, c) = t.sin_cos();
                2.0 * (b1 * c + b2 * s)
            }
            _ => f64::NAN,
        }
    }
}
