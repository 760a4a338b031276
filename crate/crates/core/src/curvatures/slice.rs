//! Regular slice `z = 0`, principal curvatures and curve curvature.

use crate::error::{Error, Result};
use crate::jetcore::{jet2, Jet2, MongeJet, PolyMapGerm};
use crate::linalg;
use nalgebra::{DMatrix, DVector};

/// Second fundamental form of the slice: leading `(n-1) x (n-1)` blocks.
pub fn regular_slice(m: &MongeJet) -> Vec<DMatrix<f64>> {
    m.a.iter().map(|a| a.view((0, 0), (m.n - 1, m.n - 1)).into_owned()).collect()
}

/// Eigenvalues of `sum v_l S_l`, ascending.
pub fn principal_curvatures(slice: &[DMatrix<f64>], v: &DVector<f64>) -> Vec<f64> {
    let d = slice[0].nrows();
    let mut s = DMatrix::zeros(d, d);
    for (l, b) in slice.iter().enumerate() {
        s += b * v[l];
    }
    linalg::sym_eigenvalues(&s)
}

/// Curvature `sqrt(|g'|^2 |g''|^2 - <g', g''>^2) / |g'|^3` from velocity and acceleration.
pub fn curvature_from_derivatives(vel: &DVector<f64>, acc: &DVector<f64>) -> Result<f64> {
    let s = vel.norm();
    if s <= crate::tol::DEFAULT_TOL {
        return Err(Error::SingularCurve);
    }
    Ok(linalg::cross_norm(vel, acc) / s.powi(3))
}

/// Curvature at the origin of the curve `t -> f(t d + t^2 e / 2)`.
pub fn curve_curvature_along(j: &Jet2, d: &DVector<f64>, e: &DVector<f64>) -> Result<f64> {
    let (vel, acc) = j.curve(d, e);
    curvature_from_derivatives(&vel, &acc)
}

/// Curvature at the origin of `t -> f(t e_axis)`.
pub fn curve_curvature(f: &PolyMapGerm, axis: usize) -> Result<f64> {
    let j = jet2(f);
    if axis >= f.n {
        return Err(Error::Precondition(format!("axis {axis} out of range for n = {}", f.n)));
    }
    curve_curvature_along(&j, &linalg::unit(f.n, axis), &DVector::zeros(f.n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_like_curve() {
        // (x, y, 3x^2/2 + ..., 2x^2 + ...): x-axis curve has curvature |(3, 4)| = 5
        let f = PolyMapGerm::from_terms(
            2,
            2,
            vec![
                vec![(vec![1, 0], 1.0)],
                vec![(vec![2, 0], 1.5), (vec![0, 2], 1.0)],
                vec![(vec![2, 0], 2.0)],
                vec![(vec![0, 3], 1.0)],
            ],
        );
        assert!((curve_curvature(&f, 0).unwrap() - 5.0).abs() < 1e-14);
        assert_eq!(curve_curvature(&f, 1), Err(Error::SingularCurve));
    }

    #[test]
    fn principal_of_r4_slice() {
        let m = MongeJet::from_nested(
            3,
            1,
            &[
                vec![vec![1.0, 0.0, 0.0], vec![0.0, 7.0, 0.0], vec![0.0, 0.0, 0.0]],
                vec![vec![3.0, 1.0, 0.0], vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
            ],
        );
        let s = regular_slice(&m);
        let p = principal_curvatures(&s, &DVector::from_vec(vec![-1.0, 0.0]));
        assert_eq!(p, vec![-7.0, -1.0]);
    }
}
