//! Reduction of a Monge 3-jet with `a_002 != 0` to the form where the
//! last normal carries `z^2/2` and no `xz`, `yz` terms.

use super::monge::{MongeJet, TransformRecord};
use crate::error::{Error, Result};
use crate::tol::Tol;
use nalgebra::{DMatrix, DVector};

#[derive(Debug, Clone)]
pub struct LemmaReduction {
    /// Reduced jet: `a[k][2][2] = 1`, `a[k][0][2] = a[k][1][2] = 0`, `a[l][2][2] = 0` for `l < k`.
    pub jet: MongeJet,
    /// Normal rotation `Q` with `Q a_002 = |a_002| e_{k+1}`.
    pub normal_rotation: DMatrix<f64>,
    /// Source change `(x, y, z) = S (x'', y'', z'')`.
    pub source: DMatrix<f64>,
    /// `(a200, a110, a020)` of the last normal from the closed formulas.
    pub closed: [f64; 3],
    /// Largest gap between `closed` and the composed transform.
    pub gap: f64,
}

impl LemmaReduction {
    /// The reduction as a transform acting on the Monge jet.
    pub fn record(&self) -> TransformRecord {
        let k = self.normal_rotation.nrows() - 1;
        let mut rot = DMatrix::identity(k + 3, k + 3);
        rot.view_mut((2, 2), (k + 1, k + 1)).copy_from(&self.normal_rotation);
        TransformRecord {
            source_linear: self.source.clone(),
            source_quadratic: vec![DMatrix::zeros(3, 3); 2],
            target_rotation: rot,
        }
    }

    /// Normal vector expressed in the reduced coordinates.
    pub fn to_reduced(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.normal_rotation * v
    }
}

/// Givens rotations taking `c` to `|c| e_last`.
pub fn align_to_last(c: &DVector<f64>) -> DMatrix<f64> {
    let d = c.len();
    let last = d - 1;
    let mut q = DMatrix::identity(d, d);
    let mut c = c.clone();
    for i in 0..last {
        let (x, y) = (c[i], c[last]);
        let r = x.hypot(y);
        if r == 0.0 {
            continue;
        }
        let (cs, sn) = (y / r, x / r);
        let mut g = DMatrix::identity(d, d);
        g[(i, i)] = cs;
        g[(i, last)] = -sn;
        g[(last, i)] = sn;
        g[(last, last)] = cs;
        c = &g * c;
        q = g * q;
    }
    q
}

pub fn reduce_lemma_change(m: &MongeJet, tol: Tol) -> Result<LemmaReduction> {
    if m.n != 3 {
        return Err(Error::Precondition(format!("reduction needs n = 3, got n = {}", m.n)));
    }
    let k = m.k;
    let a002 = m.coeff_vec(2, 2);
    let c = a002.norm();
    if c <= tol.abs(m.scale()) {
        return Err(Error::Degenerate("a_002 vanishes".into()));
    }
    let q = align_to_last(&a002);
    let rotated = m.rotate_normals(&q);
    let t101 = rotated.a[k][(0, 2)];
    let t011 = rotated.a[k][(1, 2)];
    let tc = rotated.a[k][(2, 2)];
    let s = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0, -t101 / tc, -t011 / tc, 1.0 / tc.sqrt()]);
    let a = rotated.a.iter().map(|h| s.transpose() * h * &s).collect();
    let jet = MongeJet::new(3, k, a);

    let a101 = m.coeff_vec(0, 2);
    let a011 = m.coeff_vec(1, 2);
    let (p1, p2) = (a002.dot(&a101), a002.dot(&a011));
    let c2 = c * c;
    let closed = [
        (a002.dot(&m.coeff_vec(0, 0)) - p1 * p1 / c2) / c,
        (a002.dot(&m.coeff_vec(0, 1)) - p1 * p2 / c2) / c,
        (a002.dot(&m.coeff_vec(1, 1)) - p2 * p2 / c2) / c,
    ];
    let got = [jet.a[k][(0, 0)], jet.a[k][(0, 1)], jet.a[k][(1, 1)]];
    let gap = closed.iter().zip(got).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    Ok(LemmaReduction { jet, normal_rotation: q, source: s, closed, gap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tol::LEMMA_AGREE;

    fn jet(a: &[[[f64; 3]; 3]]) -> MongeJet {
        let nested: Vec<Vec<Vec<f64>>> = a.iter().map(|m| m.iter().map(|r| r.to_vec()).collect()).collect();
        MongeJet::from_nested(3, a.len() - 1, &nested)
    }

    #[test]
    fn already_reduced_is_fixed() {
        let m = jet(&[
            [[1.0, 0.0, 0.0], [0.0, 7.0, 0.0], [0.0, 0.0, 0.0]],
            [[3.0, 1.0, 0.0], [1.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
        ]);
        let r = reduce_lemma_change(&m, Tol::default()).unwrap();
        for (x, y) in r.jet.a.iter().zip(&m.a) {
            assert!((x - y).amax() < 1e-14);
        }
        assert_eq!(r.closed, [3.0, 1.0, 1.0]);
    }

    #[test]
    fn z_squared_in_last_normal_is_rescaled() {
        // a_002 = (0, 2): no rotation, z'' = sqrt(2) z
        let m = jet(&[[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 0.0]], [[0.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 2.0]]]);
        let r = reduce_lemma_change(&m, Tol::default()).unwrap();
        assert!((r.normal_rotation.clone() - DMatrix::identity(2, 2)).amax() < 1e-15);
        assert!((r.jet.a[1][(2, 2)] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn z_squared_in_first_normal_is_rotated() {
        // a_002 = (2, 0): rotation moves it to the last normal
        let m = jet(&[[[1.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.0, 0.0, 2.0]], [[0.0, 0.0, 0.0], [0.0, 5.0, 0.0], [0.0, 0.0, 0.0]]]);
        let r = reduce_lemma_change(&m, Tol::default()).unwrap();
        let a002 = r.jet.coeff_vec(2, 2);
        assert!(a002[0].abs() < 1e-15 && (a002[1] - 1.0).abs() < 1e-14);
        assert!((r.jet.a[1][(0, 0)] - 1.0).abs() < 1e-14);
        assert!((r.closed[0] - 1.0).abs() < 1e-14);
        assert!(r.normal_rotation.determinant() > 0.0);
    }

    #[test]
    fn shear_kills_mixed_terms_and_matches_closed_form() {
        let m = jet(&[
            [[2.0, 0.3, 1.0], [0.3, -1.0, 0.5], [1.0, 0.5, 0.7]],
            [[0.4, 1.0, -0.6], [1.0, 3.0, 0.2], [-0.6, 0.2, 1.5]],
            [[-1.0, 0.0, 0.9], [0.0, 0.5, -0.4], [0.9, -0.4, -0.8]],
        ]);
        let r = reduce_lemma_change(&m, Tol::default()).unwrap();
        let k = 2;
        assert!(r.jet.a[k][(0, 2)].abs() < 1e-12);
        assert!(r.jet.a[k][(1, 2)].abs() < 1e-12);
        assert!((r.jet.a[k][(2, 2)] - 1.0).abs() < 1e-12);
        for l in 0..k {
            assert!(r.jet.a[l][(2, 2)].abs() < 1e-12);
        }
        assert!(r.gap < LEMMA_AGREE, "gap {}", r.gap);
    }

    #[test]
    fn rank_one_has_no_mixed_terms_in_lower_normals() {
        // a_101 and a_011 parallel to a_002 = (1, 2)
        let m = jet(&[
            [[2.0, 0.3, 0.5], [0.3, -1.0, -1.0], [0.5, -1.0, 1.0]],
            [[0.4, 1.0, 1.0], [1.0, 3.0, -2.0], [1.0, -2.0, 2.0]],
        ]);
        let r = reduce_lemma_change(&m, Tol::default()).unwrap();
        assert!(r.jet.a[0][(0, 2)].abs() < 1e-12);
        assert!(r.jet.a[0][(1, 2)].abs() < 1e-12);
    }

    #[test]
    fn vanishing_a002_is_degenerate() {
        let m = jet(&[[[1.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]], [[0.0; 3]; 3]]);
        assert!(matches!(reduce_lemma_change(&m, Tol::default()), Err(Error::Degenerate(_))));
    }
}
