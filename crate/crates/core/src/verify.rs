//! Cross-checks between axial curvatures and classical invariants.

use crate::analysis::Analysis;
use crate::classify::Orbit;
use crate::curvatures::{self, normal_curvature_function, oracle, regular_slice, same_multiset};
use crate::error::Result;
use crate::jetcore::{reduce_lemma_change, MongeJet, PolyMapGerm};
use crate::linalg;
use crate::locus::{affine_span, TangentParam};
use crate::tol::Tol;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
    pub residual: Option<f64>,
}

impl CheckResult {
    fn na(name: &str, why: impl Into<String>) -> Self {
        CheckResult { name: name.into(), status: CheckStatus::NotApplicable, detail: why.into(), residual: None }
    }

    fn judged(name: &str, residual: f64, limit: f64, detail: impl Into<String>) -> Self {
        let status = if residual <= limit { CheckStatus::Pass } else { CheckStatus::Fail };
        CheckResult { name: name.into(), status, detail: detail.into(), residual: Some(residual) }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }
}

/// Tolerance for the algebraic identities.
const IDENTITY_TOL: f64 = 1e-10;
/// Tolerance for the normal-section sweep.
const SECTION_TOL: f64 = 1e-6;
/// Points of the normal-section sweep.
const SECTION_GRID: usize = 720;

fn rel(x: f64) -> f64 {
    x.abs().max(1.0)
}

fn theta_of(p: TangentParam) -> f64 {
    match p {
        TangentParam::Cylinder { theta, .. } => theta,
        TangentParam::Surface { .. } => 0.0,
    }
}

/// Curvature of the curve through the Monge direction `u`, taken from the original germ.
fn curve_through(a: &Analysis, u: &[f64]) -> Result<f64> {
    let (d, e) = a.record.source_curve(&DVector::from_column_slice(u));
    curvatures::curve_curvature_along(&a.jet, &d, &e)
}

pub fn check_curve_identity(f: &PolyMapGerm, tol: Tol) -> Result<CheckResult> {
    Ok(curve_identity(&Analysis::new(f, tol)?))
}

fn curve_identity(a: &Analysis) -> CheckResult {
    const NAME: &str = "curve_identity";
    let one = |i: usize| match a.values(i) {
        [x] => Some(*x),
        _ => None,
    };
    match (a.monge.n, a.monge.k, a.class.orbit) {
        (2, _, Orbit::HalfLine) => {
            let (Some(k1), Some(k2)) = (one(1), one(2)) else {
                return CheckResult::na(NAME, "axial curvatures not single-valued");
            };
            let y = match a.axial[0].params[0] {
                TangentParam::Surface { y } => y,
                _ => 0.0,
            };
            match curve_through(a, &[1.0, y]) {
                Ok(kappa) => {
                    let rhs = k1 * k1 + k2 * k2;
                    CheckResult::judged(
                        NAME,
                        (kappa * kappa - rhs).abs() / rel(rhs),
                        IDENTITY_TOL,
                        format!("kappa^2 = {:.12}, k_a1^2 + k_a2^2 = {rhs:.12}", kappa * kappa),
                    )
                }
                Err(e) => CheckResult::na(NAME, e.to_string()),
            }
        }
        (3, 1, Orbit::Z2_0) => {
            for (p, v1) in a.axial[0].params.iter().zip(&a.axial[0].values) {
                for (q, v2) in a.axial[1].params.iter().zip(&a.axial[1].values) {
                    let dt = (theta_of(*p) - theta_of(*q)).rem_euclid(PI);
                    if dt.min(PI - dt) > 1e-6 {
                        continue;
                    }
                    let TangentParam::Cylinder { theta, gamma } = *p else { continue };
                    if let Ok(kappa) = curve_through(a, &[theta.cos(), theta.sin(), gamma]) {
                        let rhs = v1 * v1 + v2 * v2;
                        return CheckResult::judged(
                            NAME,
                            (kappa * kappa - rhs).abs() / rel(rhs),
                            IDENTITY_TOL,
                            format!("theta = {theta:.9}: kappa^2 = {:.12}, sum of squares = {rhs:.12}", kappa * kappa),
                        );
                    }
                }
            }
            CheckResult::na(NAME, "primary and secondary critical directions differ")
        }
        _ => CheckResult::na(NAME, format!("needs a half-line surface or orbit Z2_0, got {}", a.class.orbit)),
    }
}

/// Regular slice in the coordinates where the reduction applies.
fn reduced_slice(m: &MongeJet, tol: Tol) -> (Vec<DMatrix<f64>>, Option<DMatrix<f64>>) {
    match reduce_lemma_change(m, tol) {
        Ok(r) => (regular_slice(&r.jet), Some(r.normal_rotation)),
        Err(_) => (regular_slice(m), None),
    }
}

pub fn check_gauss(m: &MongeJet, tol: Tol) -> Result<CheckResult> {
    Ok(gauss(&Analysis::from_monge(m, tol)?))
}

fn gauss(a: &Analysis) -> CheckResult {
    const NAME: &str = "gauss";
    if (a.monge.n, a.monge.k) != (3, 1) || !matches!(a.class.orbit, Orbit::Z2_0 | Orbit::Zero) {
        return CheckResult::na(NAME, "needs n = 3, k = 1 and orbit Z2_0 or ZERO");
    }
    let (slice, _) = reduced_slice(&a.monge, a.tol);
    let k_slice: f64 = slice.iter().map(|s| s.determinant()).sum();
    let mut rhs = 0.0;
    for i in 1..=2 {
        rhs += match a.values(i) {
            [x, y] => x * y,
            [x] => x * x,
            _ => return CheckResult::na(NAME, format!("direction {i} has no critical value")),
        };
    }
    CheckResult::judged(
        NAME,
        (k_slice - rhs).abs() / rel(k_slice),
        IDENTITY_TOL,
        format!("K = {k_slice:.12}, axial products = {rhs:.12}"),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightType {
    A1Plus,
    A1Minus,
    A2OrWorse,
}

impl HeightType {
    fn of(x: f64, thr: f64) -> Self {
        if x > thr {
            HeightType::A1Plus
        } else if x < -thr {
            HeightType::A1Minus
        } else {
            HeightType::A2OrWorse
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HeightType::A1Plus => "A1+",
            HeightType::A1Minus => "A1-",
            HeightType::A2OrWorse => "A>=2",
        }
    }
}

pub fn check_height_singularity(m: &MongeJet, tol: Tol) -> Result<CheckResult> {
    Ok(height_singularity(&Analysis::from_monge(m, tol)?))
}

fn height_singularity(a: &Analysis) -> CheckResult {
    const NAME: &str = "height_singularity";
    if a.monge.n != 2 || !matches!(a.class.orbit, Orbit::NondegParabola | Orbit::HalfLine) {
        return CheckResult::na(NAME, "needs a surface whose locus is a parabola or half-line");
    }
    let Some(&k1) = a.values(1).first() else {
        return CheckResult::na(NAME, "no primary axial curvature");
    };
    let v1 = &a.frame.vectors[0];
    let c = v1.dot(&a.monge.coeff_vec(1, 1));
    let s = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0 / c.sqrt()]));
    let hess = &s * a.monge.contract(v1) * &s;
    let det = hess.determinant();

    let nu = a.record.normal_rows(2).transpose() * v1;
    let mut h0 = DMatrix::zeros(2, 2);
    for (mcomp, h) in a.jet.hess.iter().enumerate() {
        h0 += h * nu[mcomp];
    }
    let thr = a.tol.abs(a.monge.scale());
    let from_germ = HeightType::of(h0.determinant(), thr * a.jet.scale().powi(2));
    let from_axial = HeightType::of(k1, thr);
    let detail = format!(
        "height function {} (det {det:.12}), primary axial curvature {k1:.12} gives {}",
        from_germ.label(),
        from_axial.label()
    );
    if from_germ != from_axial {
        return CheckResult { name: NAME.into(), status: CheckStatus::Fail, detail, residual: Some((det - k1).abs()) };
    }
    CheckResult::judged(NAME, (det - k1).abs() / rel(k1), IDENTITY_TOL, detail)
}

pub fn check_umbilic_relation(m: &MongeJet, tol: Tol) -> Result<CheckResult> {
    Ok(umbilic_relation(&Analysis::from_monge(m, tol)?))
}

fn umbilic_relation(a: &Analysis) -> CheckResult {
    const NAME: &str = "umbilic_relation";
    let Some(ku) = a.umbilic else {
        return CheckResult::na(NAME, "umbilic curvature undefined");
    };
    let l = a.frame.vectors.len();
    let dim = affine_span(&a.monge, a.tol).dim();
    if dim >= l {
        return match &a.frame.extended {
            Some(e) => CheckResult::judged(
                NAME,
                (ku - e.kappa.abs()).abs() / rel(ku),
                IDENTITY_TOL,
                format!("kappa_u = {ku:.12}, extended curvature = {:.12}", e.kappa),
            ),
            None => CheckResult::na(NAME, "no extended vector"),
        };
    }
    let i = if dim == 0 { 2 } else { dim + 1 };
    let [ki] = a.values(i) else {
        return CheckResult::na(NAME, format!("direction {i} is not single-valued"));
    };
    let mut residual = (ku - ki.abs()).abs() / rel(ku);
    for j in i + 1..=l {
        for x in a.values(j) {
            residual = residual.max(x.abs() / rel(ku));
        }
    }
    CheckResult::judged(NAME, residual, IDENTITY_TOL, format!("kappa_u = {ku:.12}, |kappa_a{i}| = {:.12}", ki.abs()))
}

/// Critical value of the section's normal curvature along `v` at angle `g`.
pub fn section_value(m: &MongeJet, v: &DVector<f64>, g: f64, tol: Tol) -> Option<f64> {
    let t = g.tan();
    let w = (1.0 + t * t).sqrt();
    let p = |i: usize, j: usize| v.dot(&m.coeff_vec(i, j));
    let l = (p(0, 0) + 2.0 * p(0, 1) * t + p(1, 1) * t * t) / (1.0 + t * t);
    let mm = (p(0, 2) + p(1, 2) * t) / w;
    let n = p(2, 2);
    let pts = oracle::axial_oracle(&curvatures::NormalCurvatureForm::Surface { l, m: mm, n }, tol).ok()?;
    pts.first().map(|c| c.value)
}

fn golden(h: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, sign: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    while b - a > 1e-11 {
        if sign * h(c) > sign * h(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    h(0.5 * (a + b))
}

/// Critical values of a sampled periodic function, refined by golden-section search.
fn periodic_critical_values(samples: &[(f64, f64)], h: &dyn Fn(f64) -> f64) -> Vec<f64> {
    let (lo, hi) = samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(_, y)| (lo.min(y), hi.max(y)));
    if hi - lo <= 1e-12 * rel(hi) {
        return vec![samples[0].1];
    }
    let n = samples.len();
    let mut out: Vec<f64> = vec![];
    for j in 0..n {
        let (gp, yp) = samples[(j + n - 1) % n];
        let (_, y) = samples[j];
        let (gn, yn) = samples[(j + 1) % n];
        let gn = if gn < gp { gn + 2.0 * PI } else { gn };
        let sign = if y >= yp && y >= yn {
            1.0
        } else if y <= yp && y <= yn {
            -1.0
        } else {
            continue;
        };
        let v = golden(h, gp, gn, sign);
        if !out.iter().any(|w| oracle::same_value(*w, v)) {
            out.push(v);
        }
    }
    out.sort_by(f64::total_cmp);
    out
}

pub fn check_section_relation(m: &MongeJet, tol: Tol) -> Result<CheckResult> {
    Ok(section_relation(&Analysis::from_monge(m, tol)?))
}

fn section_relation(a: &Analysis) -> CheckResult {
    const NAME: &str = "section_relation";
    if (a.monge.n, a.monge.k) != (3, 2) {
        return CheckResult::na(NAME, "needs n = 3, k = 2");
    }
    let grid: Vec<f64> = (0..SECTION_GRID)
        .map(|i| 2.0 * PI * i as f64 / SECTION_GRID as f64)
        .filter(|g| g.cos().abs() > 1e-12)
        .collect();
    let mut worst: f64 = 0.0;
    let mut notes = vec![];
    let mut compared = 0;
    let mut mismatch = false;
    for (i, v) in a.frame.vectors.iter().enumerate() {
        let samples: Option<Vec<(f64, f64)>> =
            grid.iter().map(|&g| section_value(&a.monge, v, g, a.tol).map(|h| (g, h))).collect();
        let Some(samples) = samples else {
            notes.push(format!("v{}: section curvature undefined for some angle", i + 1));
            continue;
        };
        let h = |g: f64| section_value(&a.monge, v, g, a.tol).unwrap_or(f64::NAN);
        let crit = periodic_critical_values(&samples, &h);
        let want = &a.axial[i].values;
        compared += 1;
        if same_multiset(&crit, want, SECTION_TOL) {
            let gap = crit.iter().zip(want).map(|(x, y)| (x - y).abs() / rel(*y)).fold(0.0, f64::max);
            worst = worst.max(gap);
            notes.push(format!("v{}: {crit:.9?}", i + 1));
        } else {
            mismatch = true;
            notes.push(format!("v{}: sections give {crit:.9?}, axial {want:.9?}", i + 1));
        }
    }
    if compared == 0 {
        return CheckResult::na(NAME, notes.join("; "));
    }
    if mismatch {
        return CheckResult { name: NAME.into(), status: CheckStatus::Fail, detail: notes.join("; "), residual: None };
    }
    CheckResult::judged(NAME, worst, SECTION_TOL, notes.join("; "))
}

pub fn check_curve_corollaries(f: &PolyMapGerm, tol: Tol) -> Result<CheckResult> {
    Ok(curve_corollaries(&Analysis::new(f, tol)?))
}

fn curve_corollaries(a: &Analysis) -> CheckResult {
    const NAME: &str = "curve_corollaries";
    let (unb, other) = match (a.monge.n, a.monge.k, a.class.orbit) {
        (3, 1, Orbit::XZ_Z2) => (1, 0),
        (3, 1, Orbit::XZ_0) => (0, 1),
        _ => return CheckResult::na(NAME, "needs n = 3, k = 1 and orbit XZ_Z2 or XZ_0"),
    };
    let (Some(p), [kappa_a]) = (a.axial[unb].params.first(), a.axial[unb].values.as_slice()) else {
        return CheckResult::na(NAME, "unbounded direction has no single critical value");
    };
    let theta = theta_of(*p);
    let off = normal_curvature_function(&a.monge, &a.frame.vectors[other]).theta_part(theta);
    if off.abs() > a.tol.abs(a.monge.scale()) {
        return CheckResult::na(NAME, format!("curve leaves the unbounded direction ({off:.3e})"));
    }
    match curve_through(a, &[theta.cos(), theta.sin(), 0.0]) {
        Ok(kappa) => CheckResult::judged(
            NAME,
            (kappa - kappa_a.abs()).abs() / rel(kappa),
            IDENTITY_TOL,
            format!("curve curvature {kappa:.12}, |kappa_a{}| = {:.12}", unb + 1, kappa_a.abs()),
        ),
        Err(e) => CheckResult::na(NAME, e.to_string()),
    }
}

pub fn check_segment_corollary(m: &MongeJet, tol: Tol) -> Result<CheckResult> {
    Ok(segment_corollary(&Analysis::from_monge(m, tol)?))
}

fn segment_corollary(a: &Analysis) -> CheckResult {
    const NAME: &str = "segment_corollary";
    if (a.monge.n, a.monge.k) != (3, 1) || !matches!(a.class.orbit, Orbit::Z2_0 | Orbit::Zero) {
        return CheckResult::na(NAME, "needs n = 3, k = 1 and orbit Z2_0 or ZERO");
    }
    let (slice, rot) = reduced_slice(&a.monge, a.tol);
    let comm = (&slice[0] * &slice[1] - &slice[1] * &slice[0]).amax();
    if comm > IDENTITY_TOL {
        return CheckResult::na(NAME, format!("shape operators do not commute ({comm:.3e})"));
    }
    let mix = &slice[0] + &slice[1] * 0.618_033_988_749_895;
    let (_, vecs) = linalg::sym2_eigen(mix[(0, 0)], mix[(0, 1)], mix[(1, 1)]);
    let frame: Vec<DVector<f64>> = a
        .frame
        .vectors
        .iter()
        .map(|v| match &rot {
            Some(q) => q * v,
            None => v.clone(),
        })
        .collect();
    let mut residual: f64 = 0.0;
    let mut ends = vec![];
    for e in vecs {
        let e = DVector::from_vec(e.to_vec());
        let p = DVector::from_vec(slice.iter().map(|s| (e.transpose() * s * &e)[(0, 0)]).collect());
        let (x, y) = (p.dot(&frame[0]), p.dot(&frame[1]));
        let gap = |x: f64, vals: &[f64]| vals.iter().map(|v| (v - x).abs()).fold(f64::INFINITY, f64::min);
        residual = residual.max(gap(x, a.values(1)) / rel(x)).max(gap(y, a.values(2)) / rel(y));
        ends.push(format!("({x:.9}, {y:.9})"));
    }
    CheckResult::judged(NAME, residual, IDENTITY_TOL, format!("segment endpoints {}", ends.join(" ")))
}

/// All checks on an analysed germ.
pub fn run_all(a: &Analysis) -> Vec<CheckResult> {
    vec![
        curve_identity(a),
        gauss(a),
        height_singularity(a),
        umbilic_relation(a),
        section_relation(a),
        curve_corollaries(a),
        segment_corollary(a),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r4() -> MongeJet {
        MongeJet::from_nested(
            3,
            1,
            &[
                vec![vec![1.0, 0.0, 0.0], vec![0.0, 7.0, 0.0], vec![0.0, 0.0, 0.0]],
                vec![vec![3.0, 1.0, 0.0], vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
            ],
        )
    }

    #[test]
    fn gauss_on_r4_example() {
        let c = check_gauss(&r4(), Tol::default()).unwrap();
        assert_eq!(c.status, CheckStatus::Pass, "{}", c.detail);
        assert!(c.detail.contains("K = 9.0"));
    }

    #[test]
    fn periodic_extrema_of_cosine() {
        let h = |g: f64| (2.0 * g).cos();
        let s: Vec<(f64, f64)> = (0..360).map(|i| i as f64 * PI / 180.0).map(|g| (g, h(g))).collect();
        let v = periodic_critical_values(&s, &h);
        assert_eq!(v.len(), 2);
        assert!((v[0] + 1.0).abs() < 1e-12 && (v[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn not_applicable_outside_preconditions() {
        let c = check_section_relation(&r4(), Tol::default()).unwrap();
        assert_eq!(c.status, CheckStatus::NotApplicable);
    }
}
