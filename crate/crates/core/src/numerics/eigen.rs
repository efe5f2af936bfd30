//! Deterministic symmetric eigensolvers.
//!
//! Two paths, selected by problem size:
//!
//! * dense Householder tridiagonalization followed by implicit-shift QL
//!   (EISPACK `tred2`/`tql2` lineage) for small matrices — also the engine
//!   behind the complex-Hermitian q-Fock diagonalization via a real
//!   symmetric embedding;
//! * Lanczos with full reorthogonalization and a fixed integer-LCG start
//!   vector for large banded operators with few wanted eigenpairs.
//!
//! Both report per-pair residuals `||A v - lambda v||`; everything is
//! single-threaded and bit-reproducible for fixed inputs.

use thiserror::Error;

use super::band::Band;
use crate::real::{r, Real};

#[derive(Debug, Error, PartialEq)]
pub enum EigenError {
    #[error("QL iteration failed to converge at index {0}")]
    QlFailure(usize),
    #[error(
        "Lanczos failed to converge: {converged} of {requested} pairs after {iterations} steps"
    )]
    ConvergenceFailure { iterations: usize, converged: usize, requested: usize },
    #[error("requested {requested} eigenpairs from a {n}-dimensional operator")]
    TooManyRequested { requested: usize, n: usize },
}

/// Ascending eigenvalues, matching eigenvectors, and residuals
/// `||A v_i - lambda_i v_i||_2`.
#[derive(Debug, Clone)]
pub struct EigenResult<R: Real> {
    pub eigenvalues: Vec<R>,
    pub eigenvectors: Vec<Vec<R>>,
    pub residuals: Vec<R>,
}

/// Householder reduction of a dense symmetric matrix to tridiagonal form,
/// accumulating the orthogonal transformation in `a`.
fn tred2<R: Real>(a: &mut [Vec<R>], d: &mut [R], e: &mut [R]) {
    let n = a.len();
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = R::zero();
        if l > 0 {
            let mut scale = R::zero();
            for k in 0..=l {
                scale += a[i][k].abs();
            }
            if scale == R::zero() {
                e[i] = a[i][l];
            } else {
                for k in 0..=l {
                    a[i][k] /= scale;
                    h += a[i][k] * a[i][k];
                }
                let f = a[i][l];
                let g = if f >= R::zero() { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i][l] = f - g;
                let mut f_acc = R::zero();
                for j in 0..=l {
                    a[j][i] = a[i][j] / h;
                    let mut g_acc = R::zero();
                    for k in 0..=j {
                        g_acc += a[j][k] * a[i][k];
                    }
                    for k in (j + 1)..=l {
                        g_acc += a[k][j] * a[i][k];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[i][j];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[i][j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        let upd = f * e[k] + g * a[i][k];
                        a[j][k] -= upd;
                    }
                }
            }
        } else {
            e[i] = a[i][l];
        }
        d[i] = h;
    }
    d[0] = R::zero();
    e[0] = R::zero();
    for i in 0..n {
        if d[i] != R::zero() {
            for j in 0..i {
                let mut g = R::zero();
                for k in 0..i {
                    g += a[i][k] * a[k][j];
                }
                for k in 0..i {
                    let upd = g * a[k][i];
                    a[k][j] -= upd;
                }
            }
        }
        d[i] = a[i][i];
        a[i][i] = R::one();
        for j in 0..i {
            a[j][i] = R::zero();
            a[i][j] = R::zero();
        }
    }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. `d` holds the
/// diagonal (becomes the eigenvalues), `e` the subdiagonal in `e[1..]`.
/// When `z` is given, its columns are rotated along (pass the identity to
/// get tridiagonal eigenvectors, or the `tred2` basis for dense ones).
fn tql2<R: Real>(d: &mut [R], e: &mut [R], mut z: Option<&mut [Vec<R>]>) -> Result<(), EigenError> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = R::zero();
    let two = r::<R>(2.0);
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= R::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(EigenError::QlFailure(l));
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut rr = g.hypot(R::one());
            let sign_r = if g >= R::zero() { rr } else { -rr };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = R::one();
            let mut c = R::one();
            let mut p = R::zero();
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                rr = f.hypot(g);
                e[i + 1] = rr;
                if rr == R::zero() {
                    d[i + 1] -= p;
                    e[m] = R::zero();
                    break;
                }
                s = f / rr;
                c = g / rr;
                g = d[i + 1] - p;
                rr = (d[i] - g) * s + two * c * b;
                p = s * rr;
                d[i + 1] = g + p;
                g = c * rr - b;
                if let Some(zz) = z.as_deref_mut() {
                    for row in zz.iter_mut() {
                        let f = row[i + 1];
                        row[i + 1] = s * row[i] + c * f;
                        row[i] = c * row[i] - s * f;
                    }
                }
                f = R::zero();
                let _ = f;
            }
            if rr == R::zero() && i > l {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = R::zero();
        }
    }
    Ok(())
}

fn sort_pairs<R: Real>(d: Vec<R>, vectors: Option<Vec<Vec<R>>>) -> (Vec<R>, Option<Vec<Vec<R>>>) {
    let mut idx: Vec<usize> = (0..d.len()).collect();
    idx.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
    let dv = idx.iter().map(|&i| d[i]).collect();
    let vv = vectors.map(|v| idx.iter().map(|&i| v[i].clone()).collect());
    (dv, vv)
}

/// Full eigendecomposition of a dense symmetric matrix (rows of `a`).
/// Returns ascending eigenvalues and unit eigenvectors.
pub fn dense_symmetric_eigen<R: Real>(
    a: &[Vec<R>],
) -> Result<(Vec<R>, Vec<Vec<R>>), EigenError> {
    let n = a.len();
    let mut work: Vec<Vec<R>> = a.to_vec();
    let mut d = vec![R::zero(); n];
    let mut e = vec![R::zero(); n];
    tred2(&mut work, &mut d, &mut e);
    tql2(&mut d, &mut e, Some(&mut work))?;
    // columns of `work` are the eigenvectors
    let vectors: Vec<Vec<R>> = (0..n).map(|j| (0..n).map(|i| work[i][j]).collect()).collect();
    let (d, v) = sort_pairs(d, Some(vectors));
    Ok((d, v.unwrap()))
}

/// Eigenvalues and eigenvectors of a symmetric tridiagonal matrix.
pub fn tridiagonal_eigen<R: Real>(
    diag: &[R],
    sub: &[R],
) -> Result<(Vec<R>, Vec<Vec<R>>), EigenError> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![R::zero(); n];
    e[1..n].copy_from_slice(&sub[..n - 1]);
    let mut z: Vec<Vec<R>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { R::one() } else { R::zero() }).collect())
        .collect();
    tql2(&mut d, &mut e, Some(&mut z))?;
    let vectors: Vec<Vec<R>> = (0..n).map(|j| (0..n).map(|i| z[i][j]).collect()).collect();
    let (d, v) = sort_pairs(d, Some(vectors));
    Ok((d, v.unwrap()))
}

const DENSE_CUTOFF: usize = 600;
const LANCZOS_MAX: usize = 960;
const LANCZOS_CHECK: usize = 80;

/// `k` lowest eigenpairs of a symmetric banded operator.
///
/// Dispatches to the dense path for small matrices and to Lanczos (full
/// reorthogonalization, deterministic start) otherwise. Residuals are
/// always computed from the banded operator itself.
pub fn eigensolve<R: Real>(op: &Band<R>, k_lowest: usize) -> Result<EigenResult<R>, EigenError> {
    let n = op.n();
    if k_lowest > n {
        return Err(EigenError::TooManyRequested { requested: k_lowest, n });
    }
    debug_assert!(op.is_symmetric());
    if n <= DENSE_CUTOFF || k_lowest * 4 > n {
        let (d, v) = dense_symmetric_eigen(&op.to_dense())?;
        let eigenvalues: Vec<R> = d[..k_lowest].to_vec();
        let eigenvectors: Vec<Vec<R>> = v[..k_lowest].to_vec();
        let residuals = residuals_for(op, &eigenvalues, &eigenvectors);
        return Ok(EigenResult { eigenvalues, eigenvectors, residuals });
    }
    lanczos_lowest(op, k_lowest)
}

fn residuals_for<R: Real>(op: &Band<R>, vals: &[R], vecs: &[Vec<R>]) -> Vec<R> {
    vals.iter()
        .zip(vecs)
        .map(|(&lam, v)| {
            let av = op.matvec(v);
            let mut s = R::zero();
            for (avi, vi) in av.iter().zip(v) {
                let d = *avi - lam * *vi;
                s += d * d;
            }
            s.sqrt()
        })
        .collect()
}

/// Deterministic pseudo-random unit vector (64-bit LCG, fixed seed).
fn lcg_vector<R: Real>(n: usize, stream: u64) -> Vec<R> {
    let mut state = 0x9E3779B97F4A7C15u64 ^ stream.wrapping_mul(0xBF58476D1CE4E5B9);
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let u = ((state >> 11) as f64) / ((1u64 << 53) as f64);
        v.push(r::<R>(u - 0.5));
    }
    normalize(&mut v);
    v
}

fn normalize<R: Real>(v: &mut [R]) {
    let nrm = v.iter().map(|&x| x * x).sum::<R>().sqrt();
    for x in v {
        *x /= nrm;
    }
}

fn lanczos_lowest<R: Real>(op: &Band<R>, k: usize) -> Result<EigenResult<R>, EigenError> {
    let n = op.n();
    let m_max = LANCZOS_MAX.min(n);
    let scale = op.inf_norm();
    let tol = r::<R>(1e-10) * scale;

    let mut basis: Vec<Vec<R>> = Vec::with_capacity(m_max);
    let mut alpha: Vec<R> = Vec::new();
    let mut beta: Vec<R> = Vec::new(); // beta[j] couples q_j and q_{j+1}
    basis.push(lcg_vector(n, 0));
    let mut restarts = 1u64;

    let mut converged_data: Option<(Vec<R>, Vec<Vec<R>>)> = None;
    while alpha.len() < m_max {
        let j = alpha.len();
        let qj = basis[j].clone();
        let mut w = op.matvec(&qj);
        if j > 0 {
            let b = beta[j - 1];
            for (wi, qi) in w.iter_mut().zip(&basis[j - 1]) {
                *wi -= b * *qi;
            }
        }
        let mut a = R::zero();
        for (wi, qi) in w.iter().zip(&qj) {
            a += *wi * *qi;
        }
        alpha.push(a);
        for (wi, qi) in w.iter_mut().zip(&qj) {
            *wi -= a * *qi;
        }
        // full reorthogonalization, two passes
        for _ in 0..2 {
            for q in &basis {
                let mut dot = R::zero();
                for (wi, qi) in w.iter().zip(q) {
                    dot += *wi * *qi;
                }
                for (wi, qi) in w.iter_mut().zip(q) {
                    *wi -= dot * *qi;
                }
            }
        }
        let b = w.iter().map(|&x| x * x).sum::<R>().sqrt();
        if b <= r::<R>(1e-14) * scale.max(R::one()) {
            // invariant subspace: restart with a fresh orthogonalized vector
            if alpha.len() >= n {
                break;
            }
            let mut fresh = lcg_vector(n, restarts);
            restarts += 1;
            for _ in 0..2 {
                for q in &basis {
                    let mut dot = R::zero();
                    for (fi, qi) in fresh.iter().zip(q) {
                        dot += *fi * *qi;
                    }
                    for (fi, qi) in fresh.iter_mut().zip(q) {
                        *fi -= dot * *qi;
                    }
                }
            }
            normalize(&mut fresh);
            beta.push(R::zero());
            basis.push(fresh);
            continue;
        }
        for wi in w.iter_mut() {
            *wi /= b;
        }
        beta.push(b);
        basis.push(w);

        let m = alpha.len();
        let done = m == m_max || m == n;
        if m >= k && (m % LANCZOS_CHECK == 0 || done) {
            let (vals, vecs) = tridiagonal_eigen(&alpha, &beta[..m - 1])?;
            let all_tight = (0..k.min(m)).all(|i| {
                let last = vecs[i][m - 1].abs();
                beta[m - 1] * last <= tol
            });
            if (all_tight && m >= k + 2) || done {
                converged_data = Some((vals, vecs));
                if all_tight {
                    break;
                }
            }
        }
    }

    let m = alpha.len();
    let (vals, vecs) = match converged_data {
        Some(v) => v,
        None => tridiagonal_eigen(&alpha, &beta[..m.saturating_sub(1)])?,
    };
    // Ritz vectors y_i = V s_i
    let mut eigenvalues = Vec::with_capacity(k);
    let mut eigenvectors = Vec::with_capacity(k);
    for i in 0..k {
        eigenvalues.push(vals[i]);
        let mut y = vec![R::zero(); n];
        for (sj, q) in vecs[i].iter().zip(basis.iter()) {
            for (yi, qi) in y.iter_mut().zip(q) {
                *yi += *sj * *qi;
            }
        }
        normalize(&mut y);
        eigenvectors.push(y);
    }
    let residuals = residuals_for(op, &eigenvalues, &eigenvectors);
    let bad = residuals.iter().filter(|&&res| res > tol * r::<R>(10.0)).count();
    if bad > 0 {
        return Err(EigenError::ConvergenceFailure {
            iterations: m,
            converged: k - bad,
            requested: k,
        });
    }
    Ok(EigenResult { eigenvalues, eigenvectors, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::grid::{p2_matrix, GridSpec};
    use approx::assert_relative_eq;

    #[test]
    fn dense_diagonal_matrix() {
        let a = vec![
            vec![3.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ];
        let (d, v) = dense_symmetric_eigen(&a).unwrap();
        assert_eq!(d, vec![-1.0, 2.0, 3.0]);
        assert_relative_eq!(v[0][1].abs(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn dense_2x2_exact() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 2.0]];
        let (d, _) = dense_symmetric_eigen(&a).unwrap();
        assert_relative_eq!(d[0], 1.0, epsilon = 1e-14);
        assert_relative_eq!(d[1], 3.0, epsilon = 1e-14);
    }

    /// Dirichlet Laplacian eigenvalues have the classical closed form
    /// `(2/h^2)(1 - cos(k pi h / L))`; the solver must hit the *discrete*
    /// values to near machine precision, which in turn approach `(k pi/L)^2`
    /// (here halved: the operator is `p^2/2`) at `O(h^2)`.
    #[test]
    fn laplacian_dispersion_oracle() {
        let n = 199usize; // interior points of [0, pi] with h = pi/200
        let l = std::f64::consts::PI;
        let h = l / (n as f64 + 1.0);
        let grid = GridSpec::new(h, l - h, n).unwrap();
        let op = p2_matrix(&grid).scaled(0.5);
        let res = eigensolve(&op, 5).unwrap();
        for (i, &lam) in res.eigenvalues.iter().enumerate() {
            let k = (i + 1) as f64;
            let discrete = (1.0 - (k * h).cos()) / (h * h); // (2/h^2) sin^2(kh/2), halved
            assert_relative_eq!(lam, discrete, max_relative = 1e-12);
            let continuum = 0.5 * k * k;
            assert!((lam - continuum).abs() < 0.5 * k * k * k * k * h * h / 12.0 * 1.5 + 1e-9);
        }
        let norm = op.inf_norm();
        for &resid in &res.residuals {
            assert!(resid <= 1e-10 * norm);
        }
    }

    #[test]
    fn lanczos_matches_dense_on_banded() {
        // random-ish symmetric pentadiagonal, n just over the dense cutoff
        let n = 700usize;
        let diag: Vec<f64> = (0..n).map(|i| ((i as f64) * 0.37).sin() * 2.0 + 3.0).collect();
        let s1: Vec<f64> = (0..n - 1).map(|i| ((i as f64) * 0.11).cos() * 0.7).collect();
        let s2: Vec<f64> = (0..n - 2).map(|i| ((i as f64) * 0.23).sin() * 0.3).collect();
        let op = Band::symmetric_from_diags(&diag, &[s1, s2]);
        let lz = eigensolve(&op, 4).unwrap();
        let (dense_vals, _) = dense_symmetric_eigen(&op.to_dense()).unwrap();
        for i in 0..4 {
            assert_relative_eq!(lz.eigenvalues[i], dense_vals[i], epsilon = 1e-9);
        }
        let norm = op.inf_norm();
        for &resid in &lz.residuals {
            assert!(resid <= 1e-10 * norm, "residual {resid:.3e} vs norm {norm:.3e}");
        }
    }

    #[test]
    fn too_many_requested() {
        let op = Band::diagonal(&[1.0, 2.0]);
        assert!(matches!(eigensolve(&op, 3), Err(EigenError::TooManyRequested { .. })));
    }

    #[test]
    fn determinism() {
        let n = 800usize;
        let diag: Vec<f64> = (0..n).map(|i| ((i as f64) * 0.5).cos() + 2.0).collect();
        let s1: Vec<f64> = (0..n - 1).map(|i| ((i as f64) * 0.7).sin() * 0.4).collect();
        let op = Band::symmetric_from_diags(&diag, &[s1]);
        let a = eigensolve(&op, 3).unwrap();
        let b = eigensolve(&op, 3).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(a.eigenvectors, b.eigenvectors);
    }
}
