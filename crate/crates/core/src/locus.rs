//! Curvature locus: parametrization, sampling, affine span, axial space,
//! boundedness and the umbilic curvature.

use crate::classify::Orbit;
use crate::error::{Error, Result};
use crate::jetcore::MongeJet;
use crate::linalg;
use crate::tol::Tol;
use nalgebra::DVector;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Point of the unit tangent cylinder `C_q`.
///
/// For surfaces `u = (1, y)`; `(-1, y)` has the same image. For 3-manifolds
/// `u = (cos theta, sin theta, gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TangentParam {
    Cylinder { theta: f64, gamma: f64 },
    Surface { y: f64 },
}

impl TangentParam {
    pub fn vector(self) -> Vec<f64> {
        match self {
            TangentParam::Surface { y } => vec![1.0, y],
            TangentParam::Cylinder { theta, gamma } => vec![theta.cos(), theta.sin(), gamma],
        }
    }
}

/// `II(u, u)` at a point of the cylinder.
pub fn locus_param(m: &MongeJet, u: TangentParam) -> Result<DVector<f64>> {
    match (m.n, u) {
        (2, TangentParam::Surface { y }) | (2, TangentParam::Cylinder { gamma: y, .. }) => {
            if !y.is_finite() {
                return Err(Error::InfiniteParam);
            }
            Ok(m.coeff_vec(0, 0) + m.coeff_vec(0, 1) * (2.0 * y) + m.coeff_vec(1, 1) * (y * y))
        }
        (3, TangentParam::Cylinder { theta, gamma }) => {
            if !theta.is_finite() || !gamma.is_finite() {
                return Err(Error::InfiniteParam);
            }
            Ok(m.second(&u.vector()))
        }
        (n, _) => Err(Error::Precondition(format!("no cylinder parametrization for n = {n} with {u:?}"))),
    }
}

/// Sampling grid: `thetas` angles in `[0, 2 pi)` and `gammas` evenly spaced
/// values in `gamma_range`. Surfaces use the gamma values for `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGrid {
    pub thetas: usize,
    pub gamma_range: (f64, f64),
    pub gammas: usize,
}

impl Default for SampleGrid {
    fn default() -> Self {
        SampleGrid { thetas: 360, gamma_range: (-10.0, 10.0), gammas: 201 }
    }
}

impl SampleGrid {
    pub fn gamma_values(&self) -> Vec<f64> {
        let (lo, hi) = self.gamma_range;
        match self.gammas {
            0 => vec![],
            1 => vec![0.5 * (lo + hi)],
            g => (0..g).map(|i| lo + (hi - lo) * i as f64 / (g - 1) as f64).collect(),
        }
    }

    pub fn theta_values(&self) -> Vec<f64> {
        (0..self.thetas).map(|i| 2.0 * PI * i as f64 / self.thetas as f64).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocusSamples {
    pub n: usize,
    pub k: usize,
    pub params: Vec<TangentParam>,
    pub points: Vec<DVector<f64>>,
}

/// Samples the locus, theta-major for 3-manifolds.
pub fn sample_locus(m: &MongeJet, grid: &SampleGrid) -> Result<LocusSamples> {
    let mut params = vec![];
    match m.n {
        2 => params.extend(grid.gamma_values().into_iter().map(|y| TangentParam::Surface { y })),
        3 => {
            let gs = grid.gamma_values();
            for theta in grid.theta_values() {
                params.extend(gs.iter().map(|&gamma| TangentParam::Cylinder { theta, gamma }));
            }
        }
        n => return Err(Error::Unsupported { n, k: m.k }),
    }
    let points = params.iter().map(|&p| locus_param(m, p)).collect::<Result<_>>()?;
    Ok(LocusSamples { n: m.n, k: m.k, params, points })
}

impl LocusSamples {
    /// CSV with header `theta,gamma,c1..` (or `y,c1..` for surfaces) and 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(if self.n == 2 { "y" } else { "theta,gamma" });
        for i in 1..=self.k + 1 {
            out.push_str(&format!(",c{i}"));
        }
        out.push('\n');
        for (p, x) in self.params.iter().zip(&self.points) {
            let head = match p {
                TangentParam::Surface { y } => vec![*y],
                TangentParam::Cylinder { theta, gamma } => vec![*theta, *gamma],
            };
            let row: Vec<String> = head.iter().chain(x.iter()).map(|v| format!("{v:.16e}")).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

/// Affine span `base + span(dirs)` of the locus, `dirs` orthonormal.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineSpan {
    pub base: DVector<f64>,
    pub dirs: Vec<DVector<f64>>,
}

impl AffineSpan {
    pub fn dim(&self) -> usize {
        self.dirs.len()
    }

    pub fn closest_point(&self) -> DVector<f64> {
        linalg::closest_point(&self.base, &self.dirs)
    }
}

/// Generators of the direction space of the locus.
///
/// On the cylinder `II` is a combination of `1, cos 2theta, sin 2theta,
/// gamma cos theta, gamma sin theta, gamma^2` (or `1, y, y^2`), which are
/// linearly independent functions, so the coefficient vectors span it.
pub fn span_generators(m: &MongeJet) -> Vec<DVector<f64>> {
    match m.n {
        2 => vec![m.coeff_vec(1, 1), m.coeff_vec(0, 1)],
        _ => vec![
            m.coeff_vec(0, 0) - m.coeff_vec(1, 1),
            m.coeff_vec(0, 1),
            m.coeff_vec(0, 2),
            m.coeff_vec(1, 2),
            m.coeff_vec(2, 2),
        ],
    }
}

pub fn affine_span(m: &MongeJet, tol: Tol) -> AffineSpan {
    let dirs = linalg::span_basis(&span_generators(m), m.k + 1, tol.0, m.scale());
    AffineSpan { base: m.coeff_vec(0, 0), dirs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxialKind {
    /// `Ax_p` is the whole normal space.
    NormalSpace,
    /// `Ax_p` equals the affine span of the locus.
    EqualsAff,
    /// Affine span extended through the origin, then completed.
    ExtendedThroughOrigin,
}

/// Axial space: `l = min(n, k+1)` orthonormal vectors in a fixed order used
/// for orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct AxialSpace {
    pub l: usize,
    pub kind: AxialKind,
    pub basis: Vec<DVector<f64>>,
}

pub fn axial_space(m: &MongeJet, tol: Tol) -> AxialSpace {
    let l = m.n.min(m.k + 1);
    let aff = affine_span(m, tol);
    if l == m.k + 1 {
        return AxialSpace {
            l,
            kind: AxialKind::NormalSpace,
            basis: (0..l).map(|i| linalg::unit(l, i)).collect(),
        };
    }
    if aff.dim() >= l {
        return AxialSpace { l, kind: AxialKind::EqualsAff, basis: aff.dirs[..l].to_vec() };
    }
    let mut basis = aff.dirs.clone();
    let c = aff.closest_point();
    let cn = c.norm();
    if cn > tol.abs(m.scale()) {
        basis.push(c / cn);
    }
    let basis = linalg::complete_standard(&basis, m.k + 1, l);
    AxialSpace { l, kind: AxialKind::ExtendedThroughOrigin, basis }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundedness {
    UnboundedAbove,
    UnboundedBelow,
    UnboundedBoth,
    BoundedBoth,
}

/// Behaviour of `<II, v>` on the cylinder.
pub fn boundedness(m: &MongeJet, v: &DVector<f64>, tol: Tol) -> Boundedness {
    let thr = tol.abs(m.scale()) * v.norm().max(1.0);
    let (c, b) = match m.n {
        2 => (v.dot(&m.coeff_vec(1, 1)), v.dot(&m.coeff_vec(0, 1)).abs()),
        _ => (v.dot(&m.coeff_vec(2, 2)), v.dot(&m.coeff_vec(0, 2)).hypot(v.dot(&m.coeff_vec(1, 2)))),
    };
    if c > thr {
        Boundedness::UnboundedAbove
    } else if c < -thr {
        Boundedness::UnboundedBelow
    } else if b > thr {
        Boundedness::UnboundedBoth
    } else {
        Boundedness::BoundedBoth
    }
}

/// Distance from the origin to the affine span of the locus.
///
/// Defined when `k + 1 > n` or when the locus spans less than the normal space.
pub fn umbilic_curvature(m: &MongeJet, tol: Tol) -> Result<f64> {
    let aff = affine_span(m, tol);
    if m.k + 1 <= m.n && aff.dim() >= m.k + 1 {
        return Err(Error::Undefined("umbilic curvature needs k + 1 > n or a degenerate locus".into()));
    }
    Ok(aff.closest_point().norm())
}

/// Normal vector beyond the axial frame and the constant projection of the locus on it.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedVector {
    pub vector: DVector<f64>,
    pub kappa: f64,
}

/// Defined when `n < k + 1` and the affine span has dimension `l`.
pub fn extended_vector(m: &MongeJet, tol: Tol) -> Option<ExtendedVector> {
    let l = m.n.min(m.k + 1);
    let aff = affine_span(m, tol);
    if m.n >= m.k + 1 || aff.dim() != l {
        return None;
    }
    let c = aff.closest_point();
    let cn = c.norm();
    let vector = if cn > tol.abs(m.scale()) {
        c / cn
    } else {
        linalg::complete_standard(&aff.dirs, m.k + 1, l + 1)[l].clone()
    };
    let kappa = aff.base.dot(&vector);
    Some(ExtendedVector { vector, kappa })
}

/// Shape of a regular-surface curvature ellipse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EllipseKind {
    Ellipse,
    Segment,
    Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape")]
pub enum LocusShape {
    Parabola,
    HalfLine,
    Line,
    Point,
    PlanarRegion,
    Plane,
    HalfStrip,
    Strip,
    /// Curvature ellipse of the slice `z = 0`.
    RegularSurfaceLocus { kind: EllipseKind },
    /// Ellipse swept along a ray: not contained in a plane.
    HalfTube,
    /// Ellipse swept along a line: not contained in a plane.
    Tube,
    /// Spatial region for `n = 3, k = 2`, tagged by its case number.
    Region { case: String, description: String },
}

/// Center and conjugate semi-diameters of the theta-part `c + cos 2t u + sin 2t w`.
pub fn theta_ellipse(m: &MongeJet) -> (DVector<f64>, DVector<f64>, DVector<f64>) {
    let (a200, a020) = (m.coeff_vec(0, 0), m.coeff_vec(1, 1));
    ((&a200 + &a020) * 0.5, (&a200 - &a020) * 0.5, m.coeff_vec(0, 1))
}

/// Dimension of the theta-ellipse after removing the components along `drop`.
fn ellipse_rank(m: &MongeJet, drop: &[DVector<f64>], tol: Tol) -> usize {
    let (_, u, w) = theta_ellipse(m);
    let gens = [linalg::reject(&u, drop), linalg::reject(&w, drop)];
    linalg::span_basis(&gens, m.k + 1, tol.0, m.scale()).len()
}

pub fn ellipse_kind(m: &MongeJet, drop: &[DVector<f64>], tol: Tol) -> EllipseKind {
    match ellipse_rank(m, drop, tol) {
        0 => EllipseKind::Point,
        1 => EllipseKind::Segment,
        _ => EllipseKind::Ellipse,
    }
}

/// Unit direction spanned by the columns `a_101`, `a_011` when they are parallel.
pub fn unbounded_direction(m: &MongeJet, tol: Tol) -> Option<DVector<f64>> {
    let b = linalg::span_basis(&[m.coeff_vec(0, 2), m.coeff_vec(1, 2)], m.k + 1, tol.0, m.scale());
    b.first().map(|d| linalg::sign_normalize(d.clone()))
}

pub fn locus_shape(m: &MongeJet, orbit: Orbit, tol: Tol) -> LocusShape {
    let ray = |d: DVector<f64>, half: bool| -> LocusShape {
        match (ellipse_kind(m, &[d], tol), half) {
            (EllipseKind::Point, true) => LocusShape::HalfLine,
            (EllipseKind::Point, false) => LocusShape::Line,
            (EllipseKind::Segment, true) => LocusShape::HalfStrip,
            (EllipseKind::Segment, false) => LocusShape::Strip,
            (EllipseKind::Ellipse, true) => LocusShape::HalfTube,
            (EllipseKind::Ellipse, false) => LocusShape::Tube,
        }
    };
    let a002_dir = || {
        let v = m.coeff_vec(2, 2);
        let n = v.norm();
        v / n
    };
    let region = |case: &str, description: &str| LocusShape::Region { case: case.into(), description: description.into() };
    match orbit {
        Orbit::NondegParabola => LocusShape::Parabola,
        Orbit::HalfLine => LocusShape::HalfLine,
        Orbit::Line => LocusShape::Line,
        Orbit::Point => LocusShape::Point,
        Orbit::XZ_Z2 => LocusShape::PlanarRegion,
        Orbit::XZ_YZ => LocusShape::Plane,
        Orbit::Z2_0 | Orbit::Z2_0_0 => ray(a002_dir(), true),
        Orbit::XZ_0 | Orbit::XZ_0_0 => match unbounded_direction(m, tol) {
            Some(d) => ray(d, false),
            None => LocusShape::Line,
        },
        Orbit::Zero => LocusShape::RegularSurfaceLocus { kind: ellipse_kind(m, &[], tol) },
        Orbit::XZ_YZ_Z2 => region("i", "bounded below along v1, unbounded both ways across the orthogonal plane"),
        Orbit::Z2_YZ_0 => region("ii", "bounded below along v1, unbounded both ways along v2, bounded along v3"),
        Orbit::XZ_YZ_0 => region("iii", "unbounded both ways across a plane, bounded along its normal"),
    }
}

/// Projection of the locus onto the orthogonal complement of the span, as seen from samples.
pub fn normal_offsets(samples: &LocusSamples, aff: &AffineSpan) -> Vec<f64> {
    samples.points.iter().map(|p| linalg::reject(p, &aff.dirs).norm()).collect()
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
    fn locus_point_at_pi_over_8() {
        let p = locus_param(&r4(), TangentParam::Cylinder { theta: PI / 8.0, gamma: 0.0 }).unwrap();
        assert!((p[1] - (2.0 + 2f64.sqrt())).abs() < 1e-14);
    }

    #[test]
    fn infinite_param_rejected() {
        let r = locus_param(&r4(), TangentParam::Cylinder { theta: 0.0, gamma: f64::INFINITY });
        assert_eq!(r, Err(Error::InfiniteParam));
    }

    #[test]
    fn csv_layout() {
        let g = SampleGrid { thetas: 2, gamma_range: (-1.0, 1.0), gammas: 3 };
        let s = sample_locus(&r4(), &g).unwrap();
        let csv = s.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "theta,gamma,c1,c2");
        assert_eq!(lines.len(), 7);
        assert!(lines[1].starts_with("0.0000000000000000e0,-1.0000000000000000e0,"));
    }

    #[test]
    fn affine_span_of_half_strip() {
        let aff = affine_span(&r4(), Tol::default());
        assert_eq!(aff.dim(), 2);
        assert!(umbilic_curvature(&r4(), Tol::default()).is_err());
    }

    #[test]
    fn boundedness_of_xz_z2() {
        // (x, y, 3x^2/2 + xy + y^2/2 + z^2/2, x^2 + 5y^2/2 + xz/2)
        let m = MongeJet::from_nested(
            3,
            1,
            &[
                vec![vec![3.0, 1.0, 0.0], vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
                vec![vec![2.0, 0.0, 0.5], vec![0.0, 5.0, 0.0], vec![0.5, 0.0, 0.0]],
            ],
        );
        let t = Tol::default();
        let v = |a: f64, b: f64| DVector::from_vec(vec![a, b]);
        assert_eq!(boundedness(&m, &v(1.0, 0.0), t), Boundedness::UnboundedAbove);
        assert_eq!(boundedness(&m, &v(-1.0, 0.0), t), Boundedness::UnboundedBelow);
        assert_eq!(boundedness(&m, &v(0.0, 1.0), t), Boundedness::UnboundedBoth);
        assert_eq!(locus_shape(&m, Orbit::XZ_Z2, t), LocusShape::PlanarRegion);
    }

    #[test]
    fn half_line_surface_extends_through_origin() {
        // a02 = (2, 0, 0), a20 = (3, 4, 0)
        let m = MongeJet::from_nested(
            2,
            2,
            &[
                vec![vec![3.0, 0.0], vec![0.0, 2.0]],
                vec![vec![4.0, 0.0], vec![0.0, 0.0]],
                vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            ],
        );
        let t = Tol::default();
        let ax = axial_space(&m, t);
        assert_eq!(ax.kind, AxialKind::ExtendedThroughOrigin);
        assert!((ax.basis[0].dot(&linalg::unit(3, 0)).abs() - 1.0).abs() < 1e-12);
        assert!((ax.basis[1].dot(&linalg::unit(3, 1)).abs() - 1.0).abs() < 1e-12);
        assert!((umbilic_curvature(&m, t).unwrap() - 4.0).abs() < 1e-12);
        assert!(extended_vector(&m, t).is_none());
    }

    #[test]
    fn parabola_in_plane_through_origin_has_zero_extended_curvature() {
        let m = MongeJet::from_nested(
            2,
            2,
            &[
                vec![vec![0.0, 1.0], vec![1.0, 0.0]],
                vec![vec![0.0, 0.0], vec![0.0, 1.0]],
                vec![vec![0.0, 0.0], vec![0.0, 0.0]],
            ],
        );
        let e = extended_vector(&m, Tol::default()).unwrap();
        assert!(e.kappa.abs() < 1e-14);
        assert!((e.vector.clone() - linalg::unit(3, 2)).norm() < 1e-12);
    }

    #[test]
    fn regular_slice_ellipse_kinds() {
        let t = Tol::default();
        let z = |a: [[f64; 2]; 2], b: [[f64; 2]; 2]| {
            let e = |m: [[f64; 2]; 2]| vec![vec![m[0][0], m[0][1], 0.0], vec![m[1][0], m[1][1], 0.0], vec![0.0; 3]];
            MongeJet::from_nested(3, 1, &[e(a), e(b)])
        };
        let ell = z([[3.0, 1.0], [1.0, 1.0]], [[2.0, 0.0], [0.0, 5.0]]);
        assert_eq!(ellipse_kind(&ell, &[], t), EllipseKind::Ellipse);
        let seg = z([[1.0, 0.0], [0.0, 2.0]], [[3.0, 0.0], [0.0, 1.0]]);
        assert_eq!(ellipse_kind(&seg, &[], t), EllipseKind::Segment);
        let pt = z([[1.0, 0.0], [0.0, 1.0]], [[2.0, 0.0], [0.0, 2.0]]);
        assert_eq!(ellipse_kind(&pt, &[], t), EllipseKind::Point);
    }
}
