//! Small dense linear-algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

/// Thin SVD with singular values sorted in decreasing order.
pub struct Svd {
    pub u: DMatrix<f64>,
    pub sigma: Vec<f64>,
    pub v: DMatrix<f64>,
}

pub fn svd(m: &DMatrix<f64>) -> Svd {
    let (r, c) = m.shape();
    if r == 0 || c == 0 {
        return Svd { u: DMatrix::zeros(r, 0), sigma: vec![], v: DMatrix::zeros(c, 0) };
    }
    if r < c {
        let t = svd(&m.transpose());
        return Svd { u: t.v, sigma: t.sigma, v: t.u };
    }
    // nalgebra's bidiagonal SVD can lose several digits on rank-deficient
    // input, so the right factor comes from the Gram matrix instead and the
    // singular values are recomputed as column norms of `m v`.
    let eig = (m.transpose() * m).symmetric_eigen();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let v = DMatrix::from_columns(&order.iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect::<Vec<_>>());
    let mv = m * &v;
    let sigma: Vec<f64> = mv.column_iter().map(|col| col.norm()).collect();
    let top = sigma[0];
    let mut u: Vec<DVector<f64>> = Vec::with_capacity(c);
    for (i, &s) in sigma.iter().enumerate() {
        let col = reject(&mv.column(i).into_owned(), &u);
        let n = col.norm();
        if s > 1e-13 * top && n > 0.0 {
            u.push(col / n);
        } else {
            let extra = complete_standard(&u, r, u.len() + 1);
            u.push(extra[u.len()].clone());
        }
    }
    Svd { u: DMatrix::from_columns(&u), sigma, v }
}

/// Number of singular values above `tol * max(sigma_max, floor)`.
///
/// A zero `floor` gives the purely relative rule.
pub fn rank(m: &DMatrix<f64>, tol: f64, floor: f64) -> usize {
    let s = svd(m).sigma;
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    let thr = tol * top.max(floor);
    s.iter().filter(|&&x| x > thr).count()
}

/// Eigenvalues of `[[a, b], [b, c]]`, ascending, with unit eigenvectors.
pub fn sym2_eigen(a: f64, b: f64, c: f64) -> ([f64; 2], [[f64; 2]; 2]) {
    let mean = 0.5 * (a + c);
    let half = 0.5 * (a - c);
    let r = half.hypot(b);
    let lo = mean - r;
    let hi = mean + r;
    // eigenvector of hi: angle phi with tan(2 phi) = 2b/(a-c)
    let phi = 0.5 * b.atan2(half);
    let vhi = [phi.cos(), phi.sin()];
    let vlo = [-phi.sin(), phi.cos()];
    ([lo, hi], [vlo, vhi])
}

/// Eigenvalues of a symmetric matrix, ascending.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    match m.nrows() {
        0 => vec![],
        1 => vec![m[(0, 0)]],
        2 => sym2_eigen(m[(0, 0)], 0.5 * (m[(0, 1)] + m[(1, 0)]), m[(1, 1)]).0.to_vec(),
        _ => {
            let mut e: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
            e.sort_by(f64::total_cmp);
            e
        }
    }
}

/// Orthonormal basis of the span of `gens`, keeping singular directions above
/// `tol * max(sigma_max, floor)`.
pub fn span_basis(gens: &[DVector<f64>], dim: usize, tol: f64, floor: f64) -> Vec<DVector<f64>> {
    if gens.is_empty() {
        return vec![];
    }
    let m = DMatrix::from_columns(gens);
    debug_assert_eq!(m.nrows(), dim);
    let s = svd(&m);
    let top = s.sigma.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return vec![];
    }
    let thr = tol * top.max(floor);
    s.sigma
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > thr)
        .map(|(i, _)| s.u.column(i).into_owned())
        .collect()
}

/// Removes from `v` its components along the orthonormal vectors `basis`.
pub fn reject(v: &DVector<f64>, basis: &[DVector<f64>]) -> DVector<f64> {
    let mut r = v.clone();
    for b in basis {
        let c = r.dot(b);
        r.axpy(-c, b, 1.0);
    }
    // second pass for numerical orthogonality
    for b in basis {
        let c = r.dot(b);
        r.axpy(-c, b, 1.0);
    }
    r
}

/// Extends an orthonormal set to `count` vectors by Gram-Schmidt against the
/// standard basis vectors taken in index order.
pub fn complete_standard(basis: &[DVector<f64>], dim: usize, count: usize) -> Vec<DVector<f64>> {
    let mut out = basis.to_vec();
    for i in 0..dim {
        if out.len() >= count {
            break;
        }
        let e = DVector::from_fn(dim, |j, _| if i == j { 1.0 } else { 0.0 });
        let r = reject(&e, &out);
        let nr = r.norm();
        if nr > 0.1 {
            out.push(r / nr);
        }
    }
    out
}

/// Orthonormal basis of a subspace picked by column-pivoted Gram-Schmidt on
/// the projections of the standard basis. Ties go to the lowest index, so a
/// coordinate subspace yields its own coordinate vectors in order.
pub fn pivoted_basis(proj: &DMatrix<f64>, count: usize) -> Vec<DVector<f64>> {
    let dim = proj.nrows();
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(count);
    let mut used = vec![false; dim];
    while out.len() < count {
        let mut best: Option<(usize, f64, DVector<f64>)> = None;
        for i in (0..dim).filter(|&i| !used[i]) {
            let r = reject(&proj.column(i).into_owned(), &out);
            let nr = r.norm();
            if best.as_ref().map_or(true, |b| nr > b.1 * (1.0 + 1e-12)) {
                best = Some((i, nr, r));
            }
        }
        let (i, nr, r) = best.expect("subspace dimension exceeds ambient dimension");
        used[i] = true;
        out.push(r / nr);
    }
    out
}

/// Point of the affine subspace `base + span(dirs)` closest to the origin;
/// `dirs` must be orthonormal.
pub fn closest_point(base: &DVector<f64>, dirs: &[DVector<f64>]) -> DVector<f64> {
    reject(base, dirs)
}

/// Counter-clockwise rotation by a right angle in the plane.
pub fn rot90(v: &DVector<f64>) -> DVector<f64> {
    DVector::from_vec(vec![-v[1], v[0]])
}

pub fn cross3(a: &DVector<f64>, b: &DVector<f64>) -> DVector<f64> {
    DVector::from_vec(vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])
}

/// Norm of the generalized cross product, `sqrt(|u|^2 |w|^2 - <u,w>^2)`.
pub fn cross_norm(u: &DVector<f64>, w: &DVector<f64>) -> f64 {
    let g = u.norm_squared() * w.norm_squared() - u.dot(w).powi(2);
    g.max(0.0).sqrt()
}

/// Flips `v` so that its largest-magnitude entry is positive.
pub fn sign_normalize(v: DVector<f64>) -> DVector<f64> {
    let mut best = 0usize;
    for i in 1..v.len() {
        if v[i].abs() > v[best].abs() * (1.0 + 1e-9) {
            best = i;
        }
    }
    if v.len() > 0 && v[best] < 0.0 {
        -v
    } else {
        v
    }
}

pub fn unit(dim: usize, i: usize) -> DVector<f64> {
    DVector::from_fn(dim, |j, _| if i == j { 1.0 } else { 0.0 })
}
