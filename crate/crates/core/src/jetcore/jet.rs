//! Second-order jets at the origin.

use super::germ::PolyMapGerm;
use nalgebra::{DMatrix, DVector};

/// 2-jet of a map germ: the differential and one Hessian per target component.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    pub n: usize,
    pub k: usize,
    /// `(n+k) x n` differential at the origin.
    pub linear: DMatrix<f64>,
    /// `n x n` Hessian of each of the `n+k` components.
    pub hess: Vec<DMatrix<f64>>,
}

/// Exact first and second derivatives of `f` at the origin.
pub fn jet2(f: &PolyMapGerm) -> Jet2 {
    let (n, k) = (f.n, f.k);
    let mut linear = DMatrix::zeros(n + k, n);
    let mut hess = vec![DMatrix::zeros(n, n); n + k];
    for (m, comp) in f.components.iter().enumerate() {
        for t in comp {
            let c = t.coeff.value().unwrap_or(f64::NAN);
            let deg: u32 = t.exp.iter().sum();
            let nz: Vec<usize> = (0..n).filter(|&i| t.exp[i] > 0).collect();
            match (deg, nz.as_slice()) {
                (1, [i]) => linear[(m, *i)] += c,
                (2, [i]) => hess[m][(*i, *i)] += 2.0 * c,
                (2, [i, j]) => {
                    hess[m][(*i, *j)] += c;
                    hess[m][(*j, *i)] += c;
                }
                _ => {}
            }
        }
    }
    Jet2 { n, k, linear, hess }
}

impl Jet2 {
    /// Jet of `x -> rot * f(src * x)`.
    pub fn transform(&self, rot: &DMatrix<f64>, src: &DMatrix<f64>) -> Jet2 {
        let linear = rot * &self.linear * src;
        let pulled: Vec<DMatrix<f64>> = self.hess.iter().map(|h| src.transpose() * h * src).collect();
        let hess = (0..self.n + self.k)
            .map(|p| {
                let mut acc = DMatrix::zeros(self.n, self.n);
                for (q, h) in pulled.iter().enumerate() {
                    acc += h * rot[(p, q)];
                }
                acc
            })
            .collect();
        Jet2 { n: self.n, k: self.k, linear, hess }
    }

    /// Second derivative of the curve `t -> f(t d + t^2 e / 2)` at zero, and its velocity.
    pub fn curve(&self, d: &DVector<f64>, e: &DVector<f64>) -> (DVector<f64>, DVector<f64>) {
        let vel = &self.linear * d;
        let acc = DVector::from_fn(self.n + self.k, |m, _| (d.transpose() * &self.hess[m] * d)[(0, 0)])
            + &self.linear * e;
        (vel, acc)
    }

    /// Polynomial germ of degree two with this jet.
    pub fn to_germ(&self) -> PolyMapGerm {
        let n = self.n;
        let comps = (0..n + self.k)
            .map(|m| {
                let mut c = vec![];
                for i in 0..n {
                    let mut e = vec![0; n];
                    e[i] = 1;
                    if self.linear[(m, i)] != 0.0 {
                        c.push((e, self.linear[(m, i)]));
                    }
                }
                for i in 0..n {
                    for j in i..n {
                        let mut e = vec![0; n];
                        e[i] += 1;
                        e[j] += 1;
                        let h = &self.hess[m];
                        let v = if i == j { 0.5 * h[(i, i)] } else { h[(i, j)] };
                        if v != 0.0 {
                            c.push((e, v));
                        }
                    }
                }
                c
            })
            .collect();
        PolyMapGerm::from_terms(n, self.k, comps)
    }

    /// Largest absolute entry across the jet, at least one.
    pub fn scale(&self) -> f64 {
        let mut s: f64 = 1.0;
        for x in self.linear.iter().chain(self.hess.iter().flat_map(|h| h.iter())) {
            s = s.max(x.abs());
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hessian_convention() {
        // (x, y, x^2/2 + 3xy + 2 y^2)
        let f = PolyMapGerm::from_terms(
            2,
            1,
            vec![
                vec![(vec![1, 0], 1.0)],
                vec![(vec![0, 1], 1.0)],
                vec![(vec![2, 0], 0.5), (vec![1, 1], 3.0), (vec![0, 2], 2.0), (vec![3, 0], 9.0)],
            ],
        );
        let j = jet2(&f);
        assert_eq!(j.hess[2], DMatrix::from_row_slice(2, 2, &[1.0, 3.0, 3.0, 4.0]));
        assert_eq!(j.linear, DMatrix::from_row_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn transform_identity_is_noop() {
        let f = PolyMapGerm::from_terms(
            2,
            1,
            vec![vec![(vec![1, 0], 1.0)], vec![(vec![1, 1], 1.0)], vec![(vec![0, 2], 2.0)]],
        );
        let j = jet2(&f);
        let t = j.transform(&DMatrix::identity(3, 3), &DMatrix::identity(2, 2));
        assert_eq!(t, j);
    }

    #[test]
    fn germ_round_trip() {
        let f = PolyMapGerm::from_terms(
            2,
            1,
            vec![vec![(vec![1, 0], 2.0)], vec![(vec![1, 1], 1.0)], vec![(vec![0, 2], 2.0), (vec![2, 0], -0.5)]],
        );
        let j = jet2(&f);
        assert_eq!(jet2(&j.to_germ()), j);
    }
}
