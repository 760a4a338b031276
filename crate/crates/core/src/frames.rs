//! Adapted frames of the axial space.

use crate::classify::{Classification, Orbit};
use crate::error::{Error, Result};
use crate::jetcore::MongeJet;
use crate::linalg::{self, complete_standard, cross3, reject, rot90, sign_normalize, span_basis};
use crate::locus::{self, AxialSpace, ExtendedVector};
use crate::tol::Tol;
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedFrame {
    /// `v_a^1 .. v_a^l`, orthonormal and positively oriented in `Ax_p`.
    pub vectors: Vec<DVector<f64>>,
    /// Case label, for instance `n3k1(iv)`.
    pub case: String,
    /// False when the construction leaves a free choice.
    pub unique: bool,
    /// Indices of the vectors that may be rotated among themselves.
    pub free: Vec<usize>,
    /// Vector beyond the frame when `n < k + 1` and the locus spans `l` dimensions.
    pub extended: Option<ExtendedVector>,
}

/// Unit direction of `II(u_inf, u_inf) = a_0..02`, when it does not vanish.
pub fn primary_axial_vector(m: &MongeJet, tol: Tol) -> Option<DVector<f64>> {
    let v = m.coeff_vec(m.n - 1, m.n - 1);
    let nv = v.norm();
    (nv > tol.abs(m.scale())).then(|| v / nv)
}

/// Coordinates of `v` in the axial basis.
fn coords(ax: &AxialSpace, v: &DVector<f64>) -> [f64; 2] {
    [v.dot(&ax.basis[0]), v.dot(&ax.basis[1])]
}

fn from_coords(ax: &AxialSpace, c: [f64; 2]) -> DVector<f64> {
    &ax.basis[0] * c[0] + &ax.basis[1] * c[1]
}

/// Second vector completing `v1` to a positive frame of a plane `Ax_p`.
fn after(ax: &AxialSpace, v1: &DVector<f64>) -> DVector<f64> {
    let [x1, x2] = coords(ax, v1);
    let w = from_coords(ax, [-x2, x1]);
    let nw = w.norm();
    w / nw
}

/// First vector such that `(v1, v2)` is a positive frame of a plane `Ax_p`.
fn before(ax: &AxialSpace, v2: &DVector<f64>) -> DVector<f64> {
    let [y1, y2] = coords(ax, v2);
    let w = from_coords(ax, [y2, -y1]);
    let nw = w.norm();
    w / nw
}

/// Flips `v` so that `p` projects non-negatively on it. Falls back to the
/// coordinate sign rule when `p` is (nearly) orthogonal to `v`.
fn orient(v: DVector<f64>, p: &DVector<f64>, thr: f64) -> DVector<f64> {
    let d = v.dot(p);
    if d.abs() <= thr {
        sign_normalize(v)
    } else if d < 0.0 {
        -v
    } else {
        v
    }
}

/// Locus point over the source direction where the `z`-linear term has no
/// component along `v`; it does not move under shears of `z`.
fn strip_anchor(m: &MongeJet, v: &DVector<f64>) -> DVector<f64> {
    let (b1, b2) = (m.coeff_vec(0, 2).dot(v), m.coeff_vec(1, 2).dot(v));
    let r = b1.hypot(b2);
    let (c, s) = if r == 0.0 { (1.0, 0.0) } else { (-b2 / r, b1 / r) };
    m.coeff_vec(0, 0) * (c * c) + m.coeff_vec(0, 1) * (2.0 * c * s) + m.coeff_vec(1, 1) * (s * s)
}

fn frame(vectors: Vec<DVector<f64>>, case: &str, free: Vec<usize>) -> AdaptedFrame {
    AdaptedFrame { vectors, case: case.into(), unique: free.is_empty(), free, extended: None }
}

pub fn adapted_frame(m: &MongeJet, class: &Classification, tol: Tol) -> Result<AdaptedFrame> {
    match (m.n, m.k) {
        (2, _) => Ok(frame_n2(m, class.orbit, tol)),
        (3, 1) => Ok(frame_n3k1(m, class.orbit, tol)),
        (3, 2) => Ok(frame_n3k2(m, class.orbit, tol)),
        (n, k) => Err(Error::Unsupported { n, k }),
    }
}

pub fn frame_n2(m: &MongeJet, orbit: Orbit, tol: Tol) -> AdaptedFrame {
    let thr = tol.abs(m.scale());
    let ax = locus::axial_space(m, tol);
    let a20 = m.coeff_vec(0, 0);
    let mut f = match orbit {
        Orbit::NondegParabola | Orbit::HalfLine => {
            let v1 = primary_axial_vector(m, tol).expect("a_02 does not vanish on these orbits");
            let v2 = after(&ax, &v1);
            frame(vec![v1, v2], "n2(a)", vec![])
        }
        Orbit::Line => {
            let a11 = m.coeff_vec(0, 1);
            let mut v1 = sign_normalize(&a11 / a11.norm());
            let mut v2 = after(&ax, &v1);
            if a20.dot(&v2) < -thr {
                v1 = -v1;
                v2 = after(&ax, &v1);
            }
            frame(vec![v1, v2], "n2(b)", vec![])
        }
        _ => {
            let ny = a20.norm();
            if ny > thr {
                let v2 = &a20 / ny;
                let v1 = before(&ax, &v2);
                frame(vec![v1, v2], "n2(c)", vec![])
            } else {
                frame(ax.basis.clone(), "n2(d)", vec![0, 1])
            }
        }
    };
    f.extended = locus::extended_vector(m, tol);
    f
}

/// Semi-axes of the ellipse `c + cos t u + sin t w` with its singular values.
fn semi_axes(u: &DVector<f64>, w: &DVector<f64>) -> (DMatrix<f64>, Vec<f64>) {
    let s = linalg::svd(&DMatrix::from_columns(&[u.clone(), w.clone()]));
    (s.u, s.sigma)
}

pub fn frame_n3k1(m: &MongeJet, orbit: Orbit, tol: Tol) -> AdaptedFrame {
    let thr = tol.abs(m.scale());
    let canonical = || vec![linalg::unit(2, 0), linalg::unit(2, 1)];
    match orbit {
        Orbit::XZ_Z2 | Orbit::Z2_0 => {
            let v1 = primary_axial_vector(m, tol).expect("a_002 does not vanish on these orbits");
            let v2 = rot90(&v1);
            frame(vec![v1, v2], "n3k1(i)", vec![])
        }
        Orbit::XZ_YZ => frame(canonical(), "n3k1(ii)", vec![0, 1]),
        Orbit::XZ_0 => {
            let v1 = locus::unbounded_direction(m, tol).expect("rank one A has a direction");
            let v1 = orient(v1.clone(), &strip_anchor(m, &v1), thr);
            let v2 = rot90(&v1);
            frame(vec![v1, v2], "n3k1(iii)", vec![])
        }
        _ => {
            let (c, u, w) = locus::theta_ellipse(m);
            let (axes, sigma) = semi_axes(&u, &w);
            if sigma[0] > thr && sigma[0] - sigma[1] > thr {
                let v1 = orient(axes.column(0).into_owned(), &c, thr);
                let v2 = rot90(&v1);
                frame(vec![v1, v2], "n3k1(iv)", vec![])
            } else if sigma[0] > thr {
                frame(canonical(), "n3k1(iv)", vec![0, 1])
            } else if c.norm() > thr {
                let v2 = &c / c.norm();
                let v1 = -rot90(&v2);
                frame(vec![v1, v2], "n3k1(iv)", vec![])
            } else {
                frame(canonical(), "n3k1(iv)", vec![0, 1])
            }
        }
    }
}

fn oriented3(v1: DVector<f64>, v2: DVector<f64>, case: &str, free: Vec<usize>) -> AdaptedFrame {
    let v3 = cross3(&v1, &v2);
    frame(vec![v1, v2, v3], case, free)
}

/// Frame for the orbits whose locus is the theta-ellipse swept along `v1`.
fn swept_frame(m: &MongeJet, v1: DVector<f64>, case: &str, tol: Tol) -> AdaptedFrame {
    let thr = tol.abs(m.scale());
    let aff = locus::affine_span(m, tol);
    let across: Vec<DVector<f64>> = aff.dirs.iter().map(|d| reject(d, &[v1.clone()])).collect();
    let w = span_basis(&across, 3, tol.0, m.scale());
    match w.len() {
        0 => {
            let c = reject(&aff.base, &[v1.clone()]);
            if c.norm() > thr {
                let v2 = &c / c.norm();
                oriented3(v1, v2, case, vec![])
            } else {
                let v2 = complete_standard(&[v1.clone()], 3, 2)[1].clone();
                oriented3(v1, v2, case, vec![1, 2])
            }
        }
        1 => {
            let v2 = sign_normalize(w[0].clone());
            oriented3(v1, v2, case, vec![])
        }
        _ => {
            let (_, u, e) = locus::theta_ellipse(m);
            let (axes, sigma) =
                semi_axes(&reject(&u, &[v1.clone()]), &reject(&e, &[v1.clone()]));
            let label = format!("{case}-nonplanar");
            if sigma[0] - sigma[1] > thr {
                let v2 = sign_normalize(axes.column(0).into_owned());
                oriented3(v1, v2, &label, vec![])
            } else {
                let v2 = complete_standard(&[v1.clone()], 3, 2)[1].clone();
                oriented3(v1, v2, &label, vec![1, 2])
            }
        }
    }
}

pub fn frame_n3k2(m: &MongeJet, orbit: Orbit, tol: Tol) -> AdaptedFrame {
    let thr = tol.abs(m.scale());
    match orbit {
        Orbit::XZ_YZ_Z2 => {
            let v1 = primary_axial_vector(m, tol).expect("a_002 does not vanish");
            let v2 = complete_standard(&[v1.clone()], 3, 2)[1].clone();
            oriented3(v1, v2, "n3k2(i)", vec![1, 2])
        }
        Orbit::Z2_YZ_0 => {
            let v1 = primary_axial_vector(m, tol).expect("a_002 does not vanish");
            let gens = [reject(&m.coeff_vec(0, 2), &[v1.clone()]), reject(&m.coeff_vec(1, 2), &[v1.clone()])];
            let d = span_basis(&gens, 3, tol.0, m.scale());
            let v2 = sign_normalize(d[0].clone());
            oriented3(v1, v2, "n3k2(ii)", vec![])
        }
        Orbit::XZ_YZ_0 => {
            let plane = span_basis(&[m.coeff_vec(0, 2), m.coeff_vec(1, 2)], 3, tol.0, m.scale());
            let nrm = sign_normalize(cross3(&plane[0], &plane[1]));
            let v1 = complete_standard(&[nrm.clone()], 3, 2)[1].clone();
            let v2 = cross3(&nrm, &v1);
            frame(vec![v1, v2, nrm], "n3k2(iii)", vec![0, 1])
        }
        Orbit::Z2_0_0 => {
            let v1 = primary_axial_vector(m, tol).expect("a_002 does not vanish");
            swept_frame(m, v1, "n3k2(iv)", tol)
        }
        Orbit::XZ_0_0 => {
            let v1 = locus::unbounded_direction(m, tol).expect("rank one A has a direction");
            let v1 = orient(v1.clone(), &strip_anchor(m, &v1), thr);
            swept_frame(m, v1, "n3k2(v)", tol)
        }
        _ => {
            let (c, u, w) = locus::theta_ellipse(m);
            let (axes, sigma) = semi_axes(&u, &w);
            if sigma[1] > thr {
                let v1 = orient(axes.column(0).into_owned(), &c, thr);
                let v2 = orient(axes.column(1).into_owned(), &c, thr);
                if sigma[0] - sigma[1] > thr {
                    oriented3(v1, v2, "n3k2(vi)", vec![])
                } else {
                    oriented3(v1, v2, "n3k2(vi)", vec![0, 1])
                }
            } else if sigma[0] > thr {
                let v1 = orient(axes.column(0).into_owned(), &c, thr);
                let off = reject(&c, &[v1.clone()]);
                if off.norm() > thr {
                    let v2 = &off / off.norm();
                    oriented3(v1, v2, "n3k2(vi)", vec![])
                } else {
                    let v2 = complete_standard(&[v1.clone()], 3, 2)[1].clone();
                    oriented3(v1, v2, "n3k2(vi)", vec![1, 2])
                }
            } else if c.norm() > thr {
                let v2 = &c / c.norm();
                let v1 = complete_standard(&[v2.clone()], 3, 2)[1].clone();
                oriented3(v1, v2, "n3k2(vi)", vec![0, 2])
            } else {
                oriented3(linalg::unit(3, 0), linalg::unit(3, 1), "n3k2(vi)", vec![0, 1, 2])
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify;

    fn v(x: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(x)
    }

    fn build(m: &MongeJet) -> AdaptedFrame {
        let c = classify(m, Tol::default()).unwrap();
        adapted_frame(m, &c, Tol::default()).unwrap()
    }

    #[test]
    fn r4_example_frame() {
        let m = MongeJet::from_nested(
            3,
            1,
            &[
                vec![vec![1.0, 0.0, 0.0], vec![0.0, 7.0, 0.0], vec![0.0, 0.0, 0.0]],
                vec![vec![3.0, 1.0, 0.0], vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
            ],
        );
        let f = build(&m);
        assert_eq!(f.vectors, vec![v(&[0.0, 1.0]), v(&[-1.0, 0.0])]);
        assert!(f.unique);
    }

    #[test]
    fn half_line_frame_points_to_locus() {
        let m = MongeJet::from_nested(
            2,
            2,
            &[vec![vec![3.0, 0.0], vec![0.0, 2.0]], vec![vec![4.0, 0.0], vec![0.0, 0.0]], vec![vec![0.0; 2]; 2]],
        );
        let f = build(&m);
        assert!((&f.vectors[0] - v(&[1.0, 0.0, 0.0])).norm() < 1e-12);
        assert!((&f.vectors[1] - v(&[0.0, 1.0, 0.0])).norm() < 1e-12);
    }

    #[test]
    fn point_locus_frame() {
        let m = MongeJet::from_nested(2, 1, &[vec![vec![3.0, 0.0], vec![0.0, 0.0]], vec![vec![4.0, 0.0], vec![0.0, 0.0]]]);
        let f = build(&m);
        assert!((&f.vectors[1] - v(&[0.6, 0.8])).norm() < 1e-12);
        assert!(f.vectors[0].dot(&m.coeff_vec(0, 0)).abs() < 1e-12);
        let det = f.vectors[0][0] * f.vectors[1][1] - f.vectors[0][1] * f.vectors[1][0];
        assert!(det > 0.0);
    }

    #[test]
    fn frames_are_orthonormal_and_positive_in_r3() {
        let m = MongeJet::from_nested(
            3,
            2,
            &[
                vec![vec![3.0, 1.0, 0.0], vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]],
                vec![vec![2.0, 0.0, 0.0], vec![0.0, 5.0, 0.0], vec![0.0, 0.0, 0.0]],
                vec![vec![1.0, 0.0, 0.0], vec![0.0, 2.0, 0.0], vec![0.0, 0.0, 0.0]],
            ],
        );
        let f = build(&m);
        let g = DMatrix::from_columns(&f.vectors);
        assert!((g.transpose() * &g - DMatrix::identity(3, 3)).amax() < 1e-12);
        assert!(g.determinant() > 0.0);
        assert_eq!(f.case, "n3k2(iv)");
    }

    #[test]
    fn strip_direction_follows_xz_component() {
        // (x, y, 3x^2/2 + xy/2 + y^2/2, x^2 + 5y^2/2 + xz/2)
        let m = MongeJet::from_nested(
            3,
            1,
            &[
                vec![vec![3.0, 0.5, 0.0], vec![0.5, 1.0, 0.0], vec![0.0, 0.0, 0.0]],
                vec![vec![2.0, 0.0, 0.5], vec![0.0, 5.0, 0.0], vec![0.5, 0.0, 0.0]],
            ],
        );
        let f = build(&m);
        assert_eq!(f.case, "n3k1(iii)");
        assert!((&f.vectors[0] - v(&[0.0, 1.0])).norm() < 1e-12);
    }
}
