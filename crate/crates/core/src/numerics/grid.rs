//! Uniform grids and the standard central-difference operators on them.

use thiserror::Error;

use super::band::Band;
use crate::real::{r, Real};

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("grid needs at least 16 points, got {0}")]
    TooFewPoints(usize),
    #[error("grid bounds must satisfy x_lo < x_hi")]
    EmptyInterval,
}

/// Uniform grid `x_j = x_lo + j h`, `j = 0..n_points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<R: Real> {
    pub x_lo: R,
    pub x_hi: R,
    pub n_points: usize,
}

impl<R: Real> GridSpec<R> {
    pub fn new(x_lo: R, x_hi: R, n_points: usize) -> Result<Self, GridError> {
        if n_points < 16 {
            return Err(GridError::TooFewPoints(n_points));
        }
        if x_lo >= x_hi {
            return Err(GridError::EmptyInterval);
        }
        Ok(Self { x_lo, x_hi, n_points })
    }

    pub fn spacing(&self) -> R {
        (self.x_hi - self.x_lo) / r::<R>((self.n_points - 1) as f64)
    }

    pub fn point(&self, j: usize) -> R {
        self.x_lo + r::<R>(j as f64) * self.spacing()
    }

    pub fn points(&self) -> Vec<R> {
        (0..self.n_points).map(|j| self.point(j)).collect()
    }

    /// Samples a function on the grid.
    pub fn sample(&self, f: impl Fn(R) -> R) -> Vec<R> {
        self.points().into_iter().map(f).collect()
    }
}

/// Antisymmetric central first difference: `(v_{j+1} - v_{j-1}) / 2h`
/// (Dirichlet truncation at the ends).
pub fn first_difference<R: Real>(grid: &GridSpec<R>) -> Band<R> {
    let n = grid.n_points;
    let h = grid.spacing();
    Band::antisymmetric_from_diags(n, &[vec![R::one() / (r::<R>(2.0) * h); n - 1]])
}

/// Symmetric matrix of `p^2 = -d^2/dx^2`: `tridiag(-1, 2, -1) / h^2`.
pub fn p2_matrix<R: Real>(grid: &GridSpec<R>) -> Band<R> {
    let n = grid.n_points;
    let h2 = grid.spacing() * grid.spacing();
    Band::symmetric_from_diags(&vec![r::<R>(2.0) / h2; n], &[vec![-R::one() / h2; n - 1]])
}

/// Antisymmetric central third difference:
/// `(v_{j+2} - 2 v_{j+1} + 2 v_{j-1} - v_{j-2}) / 2h^3`.
pub fn third_difference<R: Real>(grid: &GridSpec<R>) -> Band<R> {
    let n = grid.n_points;
    let h3 = grid.spacing().powi(3);
    let two = r::<R>(2.0);
    Band::antisymmetric_from_diags(
        n,
        &[vec![-two / (two * h3); n - 1], vec![R::one() / (two * h3); n - 2]],
    )
}

/// Flux-form (Sturm-Liouville) discretization of `p c(x) p = -d/dx c d/dx`
/// with arithmetic-mean interface coefficients; symmetric by construction.
pub fn flux_matrix<R: Real>(grid: &GridSpec<R>, c: &[R]) -> Band<R> {
    let n = grid.n_points;
    debug_assert_eq!(c.len(), n);
    let h2 = grid.spacing() * grid.spacing();
    let half = r::<R>(0.5);
    let mut diag = vec![R::zero(); n];
    let mut sup = vec![R::zero(); n - 1];
    for j in 0..n - 1 {
        let chalf = half * (c[j] + c[j + 1]);
        sup[j] = -chalf / h2;
        diag[j] += chalf / h2;
        diag[j + 1] += chalf / h2;
    }
    // boundary rows: constant extrapolation of c beyond the ends
    diag[0] += c[0] / h2;
    diag[n - 1] += c[n - 1] / h2;
    Band::symmetric_from_diags(&diag, &[sup])
}

/// `1/2 {G, B}` for diagonal `G = diag(g)`: `(G B + B G) / 2`. Preserves the
/// (anti)symmetry of `B` exactly.
pub fn anticommutator_with_diagonal<R: Real>(g: &[R], b: &Band<R>) -> Band<R> {
    let gd = Band::diagonal(g);
    gd.mul(b).add(&b.mul(&gd)).scaled(r::<R>(0.5))
}
