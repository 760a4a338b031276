//! Random jets in prescribed orbits, and random changes of coordinates.
#![allow(dead_code)]

use axialcurv::classify::{classify, Orbit};
use axialcurv::jetcore::{MongeJet, PolyMapGerm};
use axialcurv::tol::Tol;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const N2_ORBITS: [Orbit; 4] = [Orbit::NondegParabola, Orbit::HalfLine, Orbit::Line, Orbit::Point];
pub const N3K1_ORBITS: [Orbit; 5] = [Orbit::XZ_Z2, Orbit::XZ_YZ, Orbit::Z2_0, Orbit::XZ_0, Orbit::Zero];
pub const N3K2_ORBITS: [Orbit; 6] =
    [Orbit::XZ_YZ_Z2, Orbit::Z2_YZ_0, Orbit::XZ_YZ_0, Orbit::Z2_0_0, Orbit::XZ_0_0, Orbit::Zero];

pub fn orbits(n: usize, k: usize) -> &'static [Orbit] {
    match (n, k) {
        (2, _) => &N2_ORBITS,
        (3, 1) => &N3K1_ORBITS,
        _ => &N3K2_ORBITS,
    }
}

fn vec(rng: &mut impl Rng, d: usize) -> DVector<f64> {
    DVector::from_fn(d, |_, _| rng.gen_range(-3.0..3.0))
}

fn coef(rng: &mut impl Rng) -> f64 {
    rng.gen_range(-2.0..2.0)
}

fn assemble(n: usize, k: usize, cols: &[(usize, usize, DVector<f64>)]) -> MongeJet {
    let mut a = vec![DMatrix::zeros(n, n); k + 1];
    for (i, j, v) in cols {
        for (l, x) in v.iter().enumerate() {
            a[l][(*i, *j)] = *x;
            a[l][(*j, *i)] = *x;
        }
    }
    MongeJet::new(n, k, a)
}

/// One draw whose coefficient vectors have the incidence pattern of `orbit`.
fn draw(orbit: Orbit, n: usize, k: usize, rng: &mut impl Rng) -> MongeJet {
    let d = k + 1;
    let zero = DVector::zeros(d);
    if n == 2 {
        let a20 = vec(rng, d);
        let (a11, a02) = match orbit {
            Orbit::NondegParabola => (vec(rng, d), vec(rng, d)),
            Orbit::HalfLine => {
                let a02 = vec(rng, d);
                (&a02 * coef(rng), a02)
            }
            Orbit::Line => (vec(rng, d), zero),
            _ => (zero.clone(), zero),
        };
        return assemble(2, k, &[(0, 0, a20), (0, 1, a11), (1, 1, a02)]);
    }
    let (a101, a011, a002) = match orbit {
        Orbit::XZ_Z2 | Orbit::XZ_YZ_Z2 => (vec(rng, d), vec(rng, d), vec(rng, d)),
        Orbit::XZ_YZ | Orbit::XZ_YZ_0 => (vec(rng, d), vec(rng, d), zero),
        Orbit::Z2_0 | Orbit::Z2_0_0 => {
            let c = vec(rng, d);
            (&c * coef(rng), &c * coef(rng), c)
        }
        Orbit::XZ_0 | Orbit::XZ_0_0 => {
            let w = vec(rng, d);
            (w.clone(), &w * coef(rng), zero)
        }
        Orbit::Z2_YZ_0 => {
            let (c, w) = (vec(rng, d), vec(rng, d));
            (&c * coef(rng) + &w * coef(rng), &c * coef(rng) + &w * coef(rng), c)
        }
        _ => (zero.clone(), zero.clone(), zero),
    };
    assemble(
        3,
        k,
        &[(0, 0, vec(rng, d)), (0, 1, vec(rng, d)), (1, 1, vec(rng, d)), (0, 2, a101), (1, 2, a011), (2, 2, a002)],
    )
}

/// Random Monge jet classified as `orbit` away from stratum boundaries.
pub fn monge_in(orbit: Orbit, n: usize, k: usize, rng: &mut impl Rng) -> MongeJet {
    loop {
        let m = draw(orbit, n, k, rng);
        if n == 3 && m.coeff_vec(2, 2).norm() <= 0.1 && orbit.has_z2() {
            continue;
        }
        match classify(&m, Tol::default()) {
            Ok(c) if c.orbit == orbit && !c.near_degenerate => return m,
            _ => {}
        }
    }
}

pub fn rotation(d: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..d {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

/// Well-conditioned invertible matrix: rotation, scaling in [0.5, 2], rotation.
pub fn linear_change(d: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let s = DMatrix::from_diagonal(&DVector::from_fn(d, |_, _| rng.gen_range(0.5..2.0)));
    rotation(d, rng) * s * rotation(d, rng)
}

/// Germ `x -> R f(P x + q(P x)/2)` for a random rotation `R`, linear change `P`
/// and quadratic source term `q`, where `f` is the Monge germ of `m`.
pub fn scramble(m: &MongeJet, rng: &mut impl Rng) -> PolyMapGerm {
    let mut j = m.to_jet2();
    let n = m.n;
    let q: Vec<DMatrix<f64>> = (0..n)
        .map(|_| {
            let a = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
            &a + a.transpose()
        })
        .collect();
    let lin = j.linear.clone();
    for (c, h) in j.hess.iter_mut().enumerate() {
        for (i, qi) in q.iter().enumerate() {
            *h += qi * lin[(c, i)];
        }
    }
    j.transform(&rotation(n + m.k, rng), &linear_change(n, rng)).to_germ()
}

/// Supported `(n, k)` pairs exercised by the random suites.
pub const DIMS: [(usize, usize); 5] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)];
