//! Brute-force critical values of `K_v` on the tangent cylinder.
//!
//! Works from the coefficients of `K_v` alone: a dense theta grid, sign
//! changes of an analytic derivative, and bisection.

use super::form::NormalCurvatureForm;
use crate::error::{Error, Result};
use crate::locus::TangentParam;
use crate::tol::{Tol, DEDUPE_FLOOR, DEDUPE_REL, ORACLE_BISECT, ORACLE_GRID};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CriticalKind {
    Min,
    Max,
    Saddle,
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalValue {
    pub value: f64,
    pub param: TangentParam,
    pub kind: CriticalKind,
}

pub fn same_value(a: f64, b: f64) -> bool {
    (a - b).abs() <= DEDUPE_REL * a.abs().max(b.abs()).max(DEDUPE_FLOOR)
}

/// Keeps the first point of every value class, then sorts by value.
fn dedupe(points: Vec<CriticalValue>) -> Vec<CriticalValue> {
    let mut kept: Vec<CriticalValue> = vec![];
    for p in points {
        if !kept.iter().any(|q| same_value(p.value, q.value)) {
            kept.push(p);
        }
    }
    kept.sort_by(|a, b| a.value.total_cmp(&b.value));
    kept
}

/// Roots of `d` on `[0, 2 pi)` from sign changes on a `grid`-point mesh.
/// Returns `None` when `d` is negligible on the whole mesh.
fn periodic_roots(d: impl Fn(f64) -> f64, grid: usize, negligible: f64) -> Option<Vec<f64>> {
    let h = 2.0 * PI / grid as f64;
    let vals: Vec<f64> = (0..grid).map(|i| d(i as f64 * h)).collect();
    if vals.iter().all(|v| v.abs() <= negligible) {
        return None;
    }
    let mut roots = vec![];
    for i in 0..grid {
        let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
        let (da, db) = (vals[i], vals[(i + 1) % grid]);
        if da == 0.0 {
            roots.push(a);
        } else if da * db < 0.0 {
            let (mut lo, mut hi, mut dlo) = (a, b, da);
            while hi - lo > ORACLE_BISECT {
                let mid = 0.5 * (lo + hi);
                let dm = d(mid);
                if dm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if dm * dlo < 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    dlo = dm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
    }
    Some(roots)
}

pub fn axial_oracle(form: &NormalCurvatureForm, tol: Tol) -> Result<Vec<CriticalValue>> {
    axial_oracle_with_grid(form, tol, ORACLE_GRID)
}

pub fn axial_oracle_with_grid(form: &NormalCurvatureForm, tol: Tol, grid: usize) -> Result<Vec<CriticalValue>> {
    if form.coefficients().iter().any(|x| !x.is_finite()) {
        return Err(Error::NoCriticalValue("non-finite coefficient".into()));
    }
    let thr = tol.abs(form.scale());
    match *form {
        NormalCurvatureForm::Surface { l, m, n } => Ok(if n.abs() > thr {
            let y = -m / n;
            let kind = if n > 0.0 { CriticalKind::Min } else { CriticalKind::Max };
            vec![CriticalValue { value: l - m * m / n, param: TangentParam::Surface { y }, kind }]
        } else if m.abs() > thr {
            vec![]
        } else {
            vec![CriticalValue { value: l, param: TangentParam::Surface { y: 0.0 }, kind: CriticalKind::Degenerate }]
        }),
        NormalCurvatureForm::Solid { a200, a110, a020, b1, b2, c } => {
            let p = |t: f64| b1 * t.cos() + b2 * t.sin();
            let dp = |t: f64| -b1 * t.sin() + b2 * t.cos();
            let a = |t: f64| form.theta_part(t);
            let da = |t: f64| {
                let (s, co) = t.sin_cos();
                2.0 * (a020 - a200) * co * s + 2.0 * a110 * (co * co - s * s)
            };
            let dda = |t: f64| {
                let (s, co) = t.sin_cos();
                2.0 * (a020 - a200) * (co * co - s * s) - 8.0 * a110 * co * s
            };
            let b_zero = b1.hypot(b2) <= thr;
            let mut pts = vec![];
            if c.abs() > thr {
                let g = |t: f64| a(t) - p(t) * p(t) / c;
                let dg = |t: f64| da(t) - 2.0 * p(t) * dp(t) / c;
                let ddg = |t: f64| dda(t) - 2.0 * (dp(t) * dp(t) - p(t) * p(t)) / c;
                let roots = periodic_roots(dg, grid, thr).unwrap_or_else(|| vec![0.0]);
                for t in roots {
                    let curv = ddg(t);
                    let kind = match (c > 0.0, curv) {
                        (_, x) if x.abs() <= thr => CriticalKind::Degenerate,
                        (true, x) if x > 0.0 => CriticalKind::Min,
                        (false, x) if x < 0.0 => CriticalKind::Max,
                        _ => CriticalKind::Saddle,
                    };
                    let param = TangentParam::Cylinder { theta: t, gamma: -p(t) / c };
                    pts.push(CriticalValue { value: g(t), param, kind });
                }
            } else if !b_zero {
                let roots = periodic_roots(p, grid, 0.0).unwrap_or_default();
                for t in roots {
                    let param = TangentParam::Cylinder { theta: t, gamma: -da(t) / (2.0 * dp(t)) };
                    pts.push(CriticalValue { value: a(t), param, kind: CriticalKind::Saddle });
                }
            } else {
                let roots = periodic_roots(da, grid, thr);
                match roots {
                    None => pts.push(CriticalValue {
                        value: a(0.0),
                        param: TangentParam::Cylinder { theta: 0.0, gamma: 0.0 },
                        kind: CriticalKind::Degenerate,
                    }),
                    Some(rs) => {
                        for t in rs {
                            let kind = if dda(t) > 0.0 { CriticalKind::Min } else { CriticalKind::Max };
                            let param = TangentParam::Cylinder { theta: t, gamma: 0.0 };
                            pts.push(CriticalValue { value: a(t), param, kind });
                        }
                    }
                }
            }
            Ok(dedupe(pts))
        }
    }
}

/// Values only.
pub fn values(points: &[CriticalValue]) -> Vec<f64> {
    points.iter().map(|p| p.value).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solid(a200: f64, a110: f64, a020: f64, b1: f64, b2: f64, c: f64) -> NormalCurvatureForm {
        NormalCurvatureForm::Solid { a200, a110, a020, b1, b2, c }
    }

    #[test]
    fn r4_primary_values() {
        // v = (0, 1) on (x, y, x^2/2 + 7y^2/2, 3x^2/2 + xy + y^2/2 + z^2/2)
        let pts = axial_oracle(&solid(3.0, 1.0, 1.0, 0.0, 0.0, 1.0), Tol::default()).unwrap();
        let v = values(&pts);
        assert_eq!(v.len(), 2);
        assert!((v[0] - (2.0 - 2f64.sqrt())).abs() < 1e-12);
        assert!((v[1] - (2.0 + 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(pts[0].kind, CriticalKind::Min);
        assert_eq!(pts[1].kind, CriticalKind::Saddle);
    }

    #[test]
    fn unbounded_direction_single_value() {
        // K = 3 cos^2 + cos sin + sin^2 + sin(theta) gamma: B vanishes at theta = 0
        let pts = axial_oracle(&solid(3.0, 0.5, 1.0, 0.0, 0.5, 0.0), Tol::default()).unwrap();
        assert_eq!(values(&pts), vec![3.0]);
        assert_eq!(pts[0].kind, CriticalKind::Saddle);
    }

    #[test]
    fn rotationally_symmetric_gives_one_value() {
        let pts = axial_oracle(&solid(2.0, 0.0, 2.0, 0.0, 0.0, 1.0), Tol::default()).unwrap();
        assert_eq!(values(&pts), vec![2.0]);
    }

    #[test]
    fn bounded_direction_uses_theta_form() {
        let pts = axial_oracle(&solid(2.0, 0.0, 5.0, 0.0, 0.0, 0.0), Tol::default()).unwrap();
        let v = values(&pts);
        assert!((v[0] - 2.0).abs() < 1e-14 && (v[1] - 5.0).abs() < 1e-14);
    }

    #[test]
    fn surface_cases() {
        let t = Tol::default();
        let s = |l, m, n| NormalCurvatureForm::Surface { l, m, n };
        assert_eq!(values(&axial_oracle(&s(1.0, 1.0, 2.0), t).unwrap()), vec![0.5]);
        assert!(axial_oracle(&s(1.0, 1.0, 0.0), t).unwrap().is_empty());
        assert_eq!(values(&axial_oracle(&s(4.0, 0.0, 0.0), t).unwrap()), vec![4.0]);
    }

    #[test]
    fn nan_rejected() {
        assert!(matches!(
            axial_oracle(&solid(f64::NAN, 0.0, 0.0, 0.0, 0.0, 1.0), Tol::default()),
            Err(Error::NoCriticalValue(_))
        ));
    }

    #[test]
    fn grid_doubling_is_stable() {
        let f = solid(0.3, -1.2, 2.0, 0.7, -0.4, 1.3);
        let a = values(&axial_oracle_with_grid(&f, Tol::default(), 4096).unwrap());
        let b = values(&axial_oracle_with_grid(&f, Tol::default(), 8192).unwrap());
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-9);
        }
    }
}
