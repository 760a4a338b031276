//! Orbit of the 2-jet under the isometry-and-reparametrization action.

use crate::error::{Error, Result};
use crate::jetcore::MongeJet;
use crate::linalg;
use crate::tol::Tol;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Orbit tag. The `n = 3` tags name the `z`-dependent part of the 2-jet,
/// one slot per normal; the `n = 2` tags name the shape of the locus.
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orbit {
    XZ_Z2,
    XZ_YZ,
    Z2_0,
    XZ_0,
    XZ_YZ_Z2,
    Z2_YZ_0,
    XZ_YZ_0,
    Z2_0_0,
    XZ_0_0,
    #[serde(rename = "ZERO")]
    Zero,
    NondegParabola,
    HalfLine,
    Line,
    Point,
}

impl Orbit {
    pub fn as_str(self) -> &'static str {
        match self {
            Orbit::XZ_Z2 => "XZ_Z2",
            Orbit::XZ_YZ => "XZ_YZ",
            Orbit::Z2_0 => "Z2_0",
            Orbit::XZ_0 => "XZ_0",
            Orbit::XZ_YZ_Z2 => "XZ_YZ_Z2",
            Orbit::Z2_YZ_0 => "Z2_YZ_0",
            Orbit::XZ_YZ_0 => "XZ_YZ_0",
            Orbit::Z2_0_0 => "Z2_0_0",
            Orbit::XZ_0_0 => "XZ_0_0",
            Orbit::Zero => "ZERO",
            Orbit::NondegParabola => "NondegParabola",
            Orbit::HalfLine => "HalfLine",
            Orbit::Line => "Line",
            Orbit::Point => "Point",
        }
    }

    /// True for the orbits where `a_002` does not vanish.
    pub fn has_z2(self) -> bool {
        matches!(self, Orbit::XZ_Z2 | Orbit::Z2_0 | Orbit::XZ_YZ_Z2 | Orbit::Z2_YZ_0 | Orbit::Z2_0_0)
    }
}

impl std::fmt::Display for Orbit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Orbit together with the witnesses used to decide it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub orbit: Orbit,
    pub rank_a: Option<usize>,
    pub norm_a002: Option<f64>,
    /// The three 2x2 minors of `A` for `k = 1`, columns (1,2), (1,3), (2,3).
    pub minors: Option<[f64; 3]>,
    /// Some witness lies within a factor ten of its threshold.
    pub near_degenerate: bool,
}

/// The `(k+1) x 3` matrix with columns `a_101`, `a_011`, `a_002`.
pub fn matrix_a(m: &MongeJet) -> DMatrix<f64> {
    assert_eq!(m.n, 3, "matrix A is defined for n = 3");
    DMatrix::from_columns(&[m.coeff_vec(0, 2), m.coeff_vec(1, 2), m.coeff_vec(2, 2)])
}

/// Rank of `A`; singular values count above `tol * max(sigma_max, jet scale)`.
pub fn rank_a(m: &MongeJet, tol: Tol) -> usize {
    linalg::rank(&matrix_a(m), tol.0, m.scale())
}

fn rank_witnesses(m: &MongeJet, tol: Tol) -> (usize, f64, bool) {
    let a = matrix_a(m);
    let s = linalg::svd(&a).sigma;
    let scale = m.scale();
    let top = s.first().copied().unwrap_or(0.0);
    let thr = tol.0 * top.max(scale);
    let r = if top == 0.0 { 0 } else { s.iter().filter(|&&x| x > thr).count() };
    let near_rank = s.iter().any(|&x| x > thr / crate::tol::BORDER_FACTOR && x <= thr * crate::tol::BORDER_FACTOR);
    let c = m.coeff_vec(2, 2).norm();
    (r, c, near_rank || tol.borderline(c, scale))
}

pub fn orbit_n3k1(m: &MongeJet, tol: Tol) -> Result<Classification> {
    if (m.n, m.k) != (3, 1) {
        return Err(Error::Precondition("orbit_n3k1 needs n = 3, k = 1".into()));
    }
    let (r, c, near) = rank_witnesses(m, tol);
    let z2 = c > tol.abs(m.scale());
    let orbit = match (r, z2) {
        (2, true) => Orbit::XZ_Z2,
        (2, false) => Orbit::XZ_YZ,
        (1, true) => Orbit::Z2_0,
        (1, false) => Orbit::XZ_0,
        _ => Orbit::Zero,
    };
    let a = matrix_a(m);
    let minor = |i: usize, j: usize| a[(0, i)] * a[(1, j)] - a[(1, i)] * a[(0, j)];
    Ok(Classification {
        orbit,
        rank_a: Some(r),
        norm_a002: Some(c),
        minors: Some([minor(0, 1), minor(0, 2), minor(1, 2)]),
        near_degenerate: near,
    })
}

pub fn orbit_n3k2(m: &MongeJet, tol: Tol) -> Result<Classification> {
    if (m.n, m.k) != (3, 2) {
        return Err(Error::Precondition("orbit_n3k2 needs n = 3, k = 2".into()));
    }
    let (r, c, near) = rank_witnesses(m, tol);
    let z2 = c > tol.abs(m.scale());
    let orbit = match (r, z2) {
        (3, _) => Orbit::XZ_YZ_Z2,
        (2, true) => Orbit::Z2_YZ_0,
        (2, false) => Orbit::XZ_YZ_0,
        (1, true) => Orbit::Z2_0_0,
        (1, false) => Orbit::XZ_0_0,
        _ => Orbit::Zero,
    };
    Ok(Classification { orbit, rank_a: Some(r), norm_a002: Some(c), minors: None, near_degenerate: near })
}

pub fn orbit_n2(m: &MongeJet, tol: Tol) -> Result<Classification> {
    if m.n != 2 {
        return Err(Error::Precondition("orbit_n2 needs n = 2".into()));
    }
    let scale = m.scale();
    let a02 = m.coeff_vec(1, 1);
    let a11 = m.coeff_vec(0, 1);
    let (n02, n11) = (a02.norm(), a11.norm());
    let s = linalg::svd(&DMatrix::from_columns(&[a02.clone(), a11.clone()])).sigma;
    let thr = tol.0 * s[0].max(scale);
    let parallel = s.get(1).map_or(true, |&x| x <= thr);
    let near = tol.borderline(n02, scale)
        || tol.borderline(n11, scale)
        || s.get(1).is_some_and(|&x| x > thr / crate::tol::BORDER_FACTOR && x <= thr * crate::tol::BORDER_FACTOR);
    let orbit = if n02 > tol.abs(scale) {
        if parallel {
            Orbit::HalfLine
        } else {
            Orbit::NondegParabola
        }
    } else if n11 > tol.abs(scale) {
        Orbit::Line
    } else {
        Orbit::Point
    };
    Ok(Classification { orbit, rank_a: None, norm_a002: Some(n02), minors: None, near_degenerate: near })
}

/// Dispatches on `(n, k)`.
pub fn classify(m: &MongeJet, tol: Tol) -> Result<Classification> {
    match (m.n, m.k) {
        (2, _) => orbit_n2(m, tol),
        (3, 1) => orbit_n3k1(m, tol),
        (3, 2) => orbit_n3k2(m, tol),
        (n, k) => Err(Error::Unsupported { n, k }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n3(a: &[[[f64; 3]; 3]]) -> MongeJet {
        let nested: Vec<Vec<Vec<f64>>> = a.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
        MongeJet::from_nested(3, a.len() - 1, &nested)
    }

    fn with_z(k: usize, entries: &[(usize, usize, usize, f64)]) -> MongeJet {
        let mut a = vec![[[0.0; 3]; 3]; k + 1];
        for &(l, i, j, v) in entries {
            a[l][i][j] = v;
            a[l][j][i] = v;
        }
        n3(&a)
    }

    #[test]
    fn k1_normal_forms() {
        let t = Tol::default();
        let cases = [
            (with_z(1, &[(0, 0, 2, 1.0), (1, 2, 2, 2.0)]), Orbit::XZ_Z2),
            (with_z(1, &[(0, 0, 2, 1.0), (1, 1, 2, 1.0)]), Orbit::XZ_YZ),
            (with_z(1, &[(0, 2, 2, 2.0)]), Orbit::Z2_0),
            (with_z(1, &[(0, 0, 2, 1.0)]), Orbit::XZ_0),
            (with_z(1, &[(0, 0, 0, 1.0)]), Orbit::Zero),
        ];
        for (m, want) in cases {
            assert_eq!(orbit_n3k1(&m, t).unwrap().orbit, want);
        }
    }

    #[test]
    fn matrix_a_of_xz_z2() {
        // (x, y, xz, z^2): z^2 = 1/2 * 2 z^2 gives a_002 = 2
        let m = with_z(1, &[(0, 0, 2, 1.0), (1, 2, 2, 2.0)]);
        assert_eq!(matrix_a(&m), DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 0.0, 2.0]));
        assert_eq!(rank_a(&m, Tol::default()), 2);
    }

    #[test]
    fn k2_normal_forms() {
        let t = Tol::default();
        let cases = [
            (with_z(2, &[(0, 2, 2, 1.0), (1, 0, 2, 1.0), (2, 1, 2, 1.0)]), Orbit::XZ_YZ_Z2),
            (with_z(2, &[(0, 2, 2, 1.0), (1, 1, 2, 1.0)]), Orbit::Z2_YZ_0),
            (with_z(2, &[(0, 0, 2, 1.0), (1, 1, 2, 1.0)]), Orbit::XZ_YZ_0),
            (with_z(2, &[(0, 2, 2, 1.0)]), Orbit::Z2_0_0),
            (with_z(2, &[(2, 0, 2, 1.0)]), Orbit::XZ_0_0),
            (with_z(2, &[]), Orbit::Zero),
        ];
        for (m, want) in cases {
            assert_eq!(orbit_n3k2(&m, t).unwrap().orbit, want);
        }
    }

    #[test]
    fn n2_loci() {
        let t = Tol::default();
        let mk = |a20: [f64; 2], a11: [f64; 2], a02: [f64; 2]| {
            MongeJet::from_nested(
                2,
                1,
                &[vec![vec![a20[0], a11[0]], vec![a11[0], a02[0]]], vec![vec![a20[1], a11[1]], vec![a11[1], a02[1]]]],
            )
        };
        assert_eq!(orbit_n2(&mk([1.0, 0.0], [1.0, 0.0], [0.0, 1.0]), t).unwrap().orbit, Orbit::NondegParabola);
        assert_eq!(orbit_n2(&mk([1.0, 0.0], [0.0, 2.0], [0.0, 1.0]), t).unwrap().orbit, Orbit::HalfLine);
        assert_eq!(orbit_n2(&mk([1.0, 0.0], [0.0, 2.0], [0.0, 0.0]), t).unwrap().orbit, Orbit::Line);
        assert_eq!(orbit_n2(&mk([1.0, 0.0], [0.0, 0.0], [0.0, 0.0]), t).unwrap().orbit, Orbit::Point);
    }

    #[test]
    fn roundoff_noise_does_not_raise_rank() {
        let m = with_z(1, &[(0, 0, 2, 1e-17), (1, 1, 2, 3e-18), (0, 0, 0, 1.0)]);
        assert_eq!(orbit_n3k1(&m, Tol::default()).unwrap().orbit, Orbit::Zero);
    }

    #[test]
    fn borderline_flagged() {
        let m = with_z(1, &[(0, 2, 2, 2e-9), (1, 0, 0, 1.0)]);
        let c = orbit_n3k1(&m, Tol::default()).unwrap();
        assert_eq!(c.orbit, Orbit::Zero);
        assert!(c.near_degenerate);
    }

    #[test]
    fn unsupported_dimensions() {
        let m = MongeJet::new(3, 3, vec![DMatrix::zeros(3, 3); 4]);
        assert!(matches!(classify(&m, Tol::default()), Err(Error::Unsupported { n: 3, k: 3 })));
    }
}
