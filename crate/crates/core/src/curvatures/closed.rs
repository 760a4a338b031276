//! Closed-form axial curvatures.

use super::form::{normal_curvature_function, NormalCurvatureForm};
use crate::classify::Orbit;
use crate::error::Result;
use crate::frames::AdaptedFrame;
use crate::jetcore::{reduce_lemma_change, LemmaReduction, MongeJet};
use crate::linalg::{self, cross_norm};
use crate::locus::{boundedness, Boundedness};
use crate::tol::Tol;
use nalgebra::DVector;

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedValues {
    pub values: Vec<f64>,
    pub formula: &'static str,
}

fn closed(values: Vec<f64>, formula: &'static str) -> Option<ClosedValues> {
    Some(ClosedValues { values: dedupe_sorted(values), formula })
}

fn dedupe_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| super::oracle::same_value(*a, *b));
    v
}

fn eig2(a200: f64, a110: f64, a020: f64) -> Vec<f64> {
    linalg::sym2_eigen(a200, a110, a020).0.to_vec()
}

/// Primary values from the reduced form: eigenvalues of the last normal's `xy` block.
pub fn primary_closed_n3(m: &MongeJet, tol: Tol) -> Result<(Vec<f64>, LemmaReduction)> {
    let r = reduce_lemma_change(m, tol)?;
    let a = &r.jet.a[m.k];
    Ok((dedupe_sorted(eig2(a[(0, 0)], a[(0, 1)], a[(1, 1)])), r))
}

/// Trigonometric case split for the critical values of
/// `a200 cos^2 + 2 a110 cos sin + a020 sin^2`, as published.
///
/// In the equal-diagonal case only `a200 - |a110|` is returned, although
/// `a200 + |a110|` is a critical value as well.
pub fn formula_m3_case_split(a200: f64, a110: f64, a020: f64, tol: Tol) -> Vec<f64> {
    let k = |t: f64| {
        let (s, c) = t.sin_cos();
        a200 * c * c + 2.0 * a110 * c * s + a020 * s * s
    };
    let scale = a200.abs().max(a110.abs()).max(a020.abs());
    if (a020 - a200).abs() > tol.abs(scale) {
        let t = 0.5 * (2.0 * a110 / (a200 - a020)).atan();
        dedupe_sorted(vec![k(t), k(t + std::f64::consts::FRAC_PI_2)])
    } else {
        vec![a200 - a110.abs()]
    }
}

/// `A_v` along the direction where `B_v` vanishes.
fn unbounded_value(f: &NormalCurvatureForm) -> f64 {
    match *f {
        NormalCurvatureForm::Solid { a200, a110, a020, b1, b2, .. } => {
            let nb = b1.hypot(b2);
            let (c, s) = (-b2 / nb, b1 / nb);
            a200 * c * c + 2.0 * a110 * c * s + a020 * s * s
        }
        _ => f64::NAN,
    }
}

/// Closed forms for surfaces; `None` where no closed form applies.
pub fn closed_n2(m: &MongeJet, frame: &AdaptedFrame, orbit: Orbit) -> Vec<Option<ClosedValues>> {
    let (a20, a11, a02) = (m.coeff_vec(0, 0), m.coeff_vec(0, 1), m.coeff_vec(1, 1));
    let v2 = &frame.vectors[1];
    let sign = |x: f64| if x < 0.0 { -1.0 } else { 1.0 };
    match orbit {
        Orbit::NondegParabola | Orbit::HalfLine => {
            let c = a02.norm();
            let k1 = (a02.dot(&a20) - a02.dot(&a11).powi(2) / (c * c)) / c;
            let k2 = (orbit == Orbit::HalfLine).then(|| sign(a20.dot(v2)) * cross_norm(&a02, &a20) / c);
            vec![closed(vec![k1], "vertex of the primary parabola"), k2.and_then(|x| closed(vec![x], "distance to the half-line"))]
        }
        Orbit::Line => {
            let k2 = sign(a20.dot(v2)) * cross_norm(&a20, &a11) / a11.norm();
            vec![None, closed(vec![k2], "distance to the line")]
        }
        _ => {
            let k2 = if frame.unique { a20.norm() } else { a20.dot(v2) };
            vec![closed(vec![0.0], "point locus"), closed(vec![k2], "point locus")]
        }
    }
}

/// Closed forms for 3-manifolds, one entry per frame vector.
pub fn closed_n3(m: &MongeJet, frame: &AdaptedFrame, orbit: Orbit, tol: Tol) -> Vec<Option<ClosedValues>> {
    let lemma = if orbit.has_z2() { reduce_lemma_change(m, tol).ok() } else { None };
    frame
        .vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            if let Some(r) = &lemma {
                let a = &r.jet.a[m.k];
                if i == 0 {
                    return closed(eig2(a[(0, 0)], a[(0, 1)], a[(1, 1)]), "reduced last normal");
                }
                if matches!(orbit, Orbit::Z2_0 | Orbit::Z2_0_0) {
                    let w: DVector<f64> = r.to_reduced(v);
                    let b = r.jet.contract(&w);
                    return closed(eig2(b[(0, 0)], b[(0, 1)], b[(1, 1)]), "reduced coordinates, bounded direction");
                }
            }
            let f = normal_curvature_function(m, v);
            let NormalCurvatureForm::Solid { a200, a110, a020, b1, b2, c } = f else {
                return None;
            };
            match boundedness(m, v, tol) {
                Boundedness::UnboundedBoth => closed(vec![unbounded_value(&f)], "zero of B along the unbounded direction"),
                Boundedness::BoundedBoth => closed(eig2(a200, a110, a020), "bounded direction"),
                _ => closed(
                    eig2(a200 - b1 * b1 / c, a110 - b1 * b2 / c, a020 - b2 * b2 / c),
                    "gamma eliminated",
                ),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_split_generic_matches_eigenvalues() {
        let v = formula_m3_case_split(3.0, 1.0, 1.0, Tol::default());
        assert!((v[0] - (2.0 - 2f64.sqrt())).abs() < 1e-14);
        assert!((v[1] - (2.0 + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn case_split_equal_diagonal_reports_one_value() {
        assert_eq!(formula_m3_case_split(2.0, 1.0, 2.0, Tol::default()), vec![1.0]);
        assert_eq!(eig2(2.0, 1.0, 2.0), vec![1.0, 3.0]);
    }
}
