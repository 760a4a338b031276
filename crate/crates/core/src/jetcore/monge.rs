//! Monge normal form of a corank-1 2-jet.

use super::germ::PolyMapGerm;
use super::jet::Jet2;
use crate::error::{Error, Result};
use crate::linalg;
use crate::tol::{DEFAULT_TOL, ORTHO_TOL};
use nalgebra::{DMatrix, DVector};

/// 2-jet in Monge form: the first `n-1` components are the coordinates
/// `x_1..x_{n-1}` and component `n-1+l` has 2-jet `1/2 sum a[l][i][j] x_i x_j`.
///
/// Indices are zero-based, so for a surface `a[l][0][0]`, `a[l][0][1]` and
/// `a[l][1][1]` are the classical `l`, `m`, `n` of the `l`-th normal.
#[derive(Debug, Clone, PartialEq)]
pub struct MongeJet {
    pub n: usize,
    pub k: usize,
    pub a: Vec<DMatrix<f64>>,
}

impl MongeJet {
    pub fn new(n: usize, k: usize, a: Vec<DMatrix<f64>>) -> Self {
        assert_eq!(a.len(), k + 1);
        assert!(a.iter().all(|m| m.shape() == (n, n)));
        MongeJet { n, k, a }
    }

    /// Builds from nested row-major arrays, symmetrizing each block.
    pub fn from_nested(n: usize, k: usize, a: &[Vec<Vec<f64>>]) -> Self {
        let a = a
            .iter()
            .map(|rows| {
                let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
                (&m + m.transpose()) * 0.5
            })
            .collect();
        MongeJet::new(n, k, a)
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<f64>>> {
        self.a
            .iter()
            .map(|m| (0..self.n).map(|i| (0..self.n).map(|j| m[(i, j)]).collect()).collect())
            .collect()
    }

    /// Vector `(a[l][i][j])_l` in the normal space.
    pub fn coeff_vec(&self, i: usize, j: usize) -> DVector<f64> {
        DVector::from_fn(self.k + 1, |l, _| self.a[l][(i, j)])
    }

    /// Second fundamental form `II(u, u)`.
    pub fn second(&self, u: &[f64]) -> DVector<f64> {
        let u = DVector::from_column_slice(u);
        DVector::from_fn(self.k + 1, |l, _| (u.transpose() * &self.a[l] * &u)[(0, 0)])
    }

    /// Quadratic form `sum v_l a[l]`.
    pub fn contract(&self, v: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.n, self.n);
        for (l, a) in self.a.iter().enumerate() {
            m += a * v[l];
        }
        m
    }

    /// Largest absolute coefficient, at least one.
    pub fn scale(&self) -> f64 {
        self.a.iter().flat_map(|m| m.iter()).fold(1.0f64, |s, x| s.max(x.abs()))
    }

    /// Image of the jet under an orthogonal change of normal coordinates.
    pub fn rotate_normals(&self, q: &DMatrix<f64>) -> MongeJet {
        let a = (0..=self.k)
            .map(|p| {
                let mut acc = DMatrix::zeros(self.n, self.n);
                for (l, m) in self.a.iter().enumerate() {
                    acc += m * q[(p, l)];
                }
                acc
            })
            .collect();
        MongeJet::new(self.n, self.k, a)
    }

    /// Full 2-jet of the Monge germ.
    pub fn to_jet2(&self) -> Jet2 {
        let (n, k) = (self.n, self.k);
        let linear = DMatrix::from_fn(n + k, n, |i, j| if i == j && i < n - 1 { 1.0 } else { 0.0 });
        let mut hess = vec![DMatrix::zeros(n, n); n - 1];
        hess.extend(self.a.iter().cloned());
        Jet2 { n, k, linear, hess }
    }

    /// Polynomial germ whose 2-jet is this Monge jet.
    pub fn to_germ(&self) -> PolyMapGerm {
        let n = self.n;
        let mut comps: Vec<Vec<(Vec<u32>, f64)>> = (0..n - 1)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                vec![(e, 1.0)]
            })
            .collect();
        for a in &self.a {
            let mut c = vec![];
            for i in 0..n {
                for j in i..n {
                    let mut e = vec![0; n];
                    e[i] += 1;
                    e[j] += 1;
                    let v = if i == j { 0.5 * a[(i, i)] } else { a[(i, j)] };
                    if v != 0.0 {
                        c.push((e, v));
                    }
                }
            }
            comps.push(c);
        }
        PolyMapGerm::from_terms(n, self.k, comps)
    }
}

/// Coordinate changes taking a jet to Monge form.
///
/// The normalized map is `x -> R f(S (x - 1/2 sum_i (x^T Q_i x) e_i))` with
/// `S = source_linear`, `Q_i = source_quadratic[i]` for `i < n-1`, and
/// `R = target_rotation`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformRecord {
    pub source_linear: DMatrix<f64>,
    pub source_quadratic: Vec<DMatrix<f64>>,
    pub target_rotation: DMatrix<f64>,
}

impl TransformRecord {
    pub fn identity(n: usize, k: usize) -> Self {
        TransformRecord {
            source_linear: DMatrix::identity(n, n),
            source_quadratic: vec![DMatrix::zeros(n, n); n - 1],
            target_rotation: DMatrix::identity(n + k, n + k),
        }
    }

    /// Applies the recorded changes to `j` and returns the resulting 2-jet.
    pub fn replay(&self, j: &Jet2) -> Jet2 {
        let mut out = j.transform(&self.target_rotation, &self.source_linear);
        for p in 0..j.n + j.k {
            for (c, q) in self.source_quadratic.iter().enumerate() {
                let w = out.linear[(p, c)];
                if w != 0.0 {
                    out.hess[p] -= q * w;
                }
            }
        }
        out
    }

    /// Source 2-jet `(d, e)` of the curve `t -> phi(t u)` in original coordinates,
    /// where `phi` is the recorded source change.
    pub fn source_curve(&self, u: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
        let n = u.len();
        let mut psi2 = DVector::zeros(n);
        for (i, q) in self.source_quadratic.iter().enumerate() {
            psi2[i] = -(u.transpose() * q * u)[(0, 0)];
        }
        (&self.source_linear * u, &self.source_linear * psi2)
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        let n = self.source_linear.nrows();
        let m = self.target_rotation.nrows();
        (&self.source_linear - DMatrix::identity(n, n)).amax() <= tol
            && (&self.target_rotation - DMatrix::identity(m, m)).amax() <= tol
            && self.source_quadratic.iter().all(|q| q.amax() <= tol)
    }

    /// Rows of the target rotation spanning the normal space, as a `(k+1) x (n+k)` block.
    pub fn normal_rows(&self, n: usize) -> DMatrix<f64> {
        let m = self.target_rotation.nrows();
        self.target_rotation.rows(n - 1, m - n + 1).into_owned()
    }
}

/// Brings a corank-1 2-jet to Monge form by an isometry of the target and
/// a source change of coordinates.
pub fn monge_normalize(j: &Jet2) -> Result<(MongeJet, TransformRecord)> {
    let (n, k) = (j.n, j.k);
    let dim = n + k;
    let s = linalg::svd(&j.linear);
    let top = s.sigma.first().copied().unwrap_or(0.0);
    let r = if top == 0.0 { 0 } else { s.sigma.iter().filter(|&&x| x > DEFAULT_TOL * top).count() };
    if r != n - 1 {
        return Err(Error::Corank { rank: r, expected: n - 1 });
    }

    let ur = s.u.columns(0, n - 1).into_owned();
    let p = &ur * ur.transpose();
    let mut rows = linalg::pivoted_basis(&p, n - 1);
    rows.extend(linalg::pivoted_basis(&(DMatrix::identity(dim, dim) - &p), k + 1));
    let mut rot = DMatrix::from_fn(dim, dim, |i, c| rows[i][c]);
    if rot.determinant() < 0.0 {
        let mut last = rot.row_mut(dim - 1);
        last *= -1.0;
    }
    let ortho = (&rot * rot.transpose() - DMatrix::identity(dim, dim)).amax();
    if ortho > ORTHO_TOL {
        return Err(Error::Degenerate(format!("target rotation not orthogonal ({ortho:e})")));
    }

    let b = (&rot * &j.linear).rows(0, n - 1).into_owned();
    let w = linalg::sign_normalize(s.v.column(n - 1).into_owned());
    let bbt = &b * b.transpose();
    let bpinv = b.transpose()
        * bbt.try_inverse().ok_or_else(|| Error::Degenerate("singular differential block".into()))?;
    let mut src = DMatrix::zeros(n, n);
    src.columns_mut(0, n - 1).copy_from(&bpinv);
    src.column_mut(n - 1).copy_from(&w);

    let j1 = j.transform(&rot, &src);
    let quad: Vec<DMatrix<f64>> = j1.hess[..n - 1].to_vec();
    let a = j1.hess[n - 1..].to_vec();
    let rec = TransformRecord { source_linear: src, source_quadratic: quad, target_rotation: rot };
    Ok((MongeJet::new(n, k, a), rec))
}

/// First and second fundamental forms at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalForms {
    /// Pull-back metric: identity on the first `n-1` coordinates, degenerate along `u_inf = e_n`.
    pub gram: DMatrix<f64>,
    pub second: Vec<DMatrix<f64>>,
}

impl FundamentalForms {
    pub fn first(&self, u: &DVector<f64>) -> f64 {
        (u.transpose() * &self.gram * u)[(0, 0)]
    }
}

pub fn fundamental_forms(m: &MongeJet) -> FundamentalForms {
    let n = m.n;
    let gram = DMatrix::from_fn(n, n, |i, j| if i == j && i < n - 1 { 1.0 } else { 0.0 });
    FundamentalForms { gram, second: m.a.clone() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jetcore::jet::jet2;

    fn monge_r4() -> MongeJet {
        // (x, y, x^2/2 + 7y^2/2, 3x^2/2 + xy + y^2/2 + z^2/2)
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
    fn monge_input_gives_identity_transform() {
        let m = monge_r4();
        let (m2, rec) = monge_normalize(&m.to_jet2()).unwrap();
        assert!(rec.is_identity(1e-12));
        for (x, y) in m.a.iter().zip(&m2.a) {
            assert!((x - y).amax() < 1e-12);
        }
    }

    #[test]
    fn germ_roundtrip_through_polynomial() {
        let m = monge_r4();
        let j = jet2(&m.to_germ());
        assert_eq!(j, m.to_jet2());
    }

    #[test]
    fn swapped_coordinates_normalize() {
        // (y, x, x^2/2, 0)
        let f = PolyMapGerm::from_terms(
            3,
            1,
            vec![vec![(vec![0, 1, 0], 1.0)], vec![(vec![1, 0, 0], 1.0)], vec![(vec![2, 0, 0], 0.5)], vec![]],
        );
        let (m, rec) = monge_normalize(&jet2(&f)).unwrap();
        let rep = rec.replay(&jet2(&f));
        assert!((&rep.linear - m.to_jet2().linear).amax() < 1e-12);
        // x^2 of the source is y^2 of the Monge coordinates
        assert!((m.a[0][(1, 1)] - 1.0).abs() < 1e-12);
        assert!(m.a[1].amax() < 1e-12);
    }

    #[test]
    fn corank_rejected() {
        let m = monge_r4();
        let mut j = m.to_jet2();
        j.linear[(2, 2)] = 1.0;
        assert!(matches!(monge_normalize(&j), Err(Error::Corank { rank: 3, expected: 2 })));
    }

    #[test]
    fn fundamental_forms_degenerate_along_null_direction() {
        let ff = fundamental_forms(&monge_r4());
        let u = DVector::from_vec(vec![0.0, 0.0, 1.0]);
        assert_eq!(ff.first(&u), 0.0);
        assert_eq!(ff.second[1][(2, 2)], 1.0);
    }
}
