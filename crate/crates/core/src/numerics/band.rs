//! General banded matrices with exact-symmetry constructors.
//!
//! Storage is LAPACK-like: row `i` holds entries for columns
//! `i - kl ..= i + ku`, flattened row-major. Bandwidths stay tiny here
//! (`<= 5`), so products and factorizations are all `O(n)`.

use crate::real::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct Band<R: Real> {
    n: usize,
    kl: usize,
    ku: usize,
    data: Vec<R>,
}

impl<R: Real> Band<R> {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        Self { n, kl, ku, data: vec![R::zero(); n * (kl + ku + 1)] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.kl
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.ku
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> Option<usize> {
        let (i, j) = (i as isize, j as isize);
        let d = j - i + self.kl as isize;
        if i < 0 || i >= self.n as isize || j < 0 || j >= self.n as isize {
            return None;
        }
        if d < 0 || d > (self.kl + self.ku) as isize {
            return None;
        }
        Some(i as usize * (self.kl + self.ku + 1) + d as usize)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> R {
        self.idx(i, j).map_or(R::zero(), |k| self.data[k])
    }

    /// Sets `(i, j)`; panics outside the band.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: R) {
        let k = self.idx(i, j).expect("index inside band");
        self.data[k] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: R) {
        let k = self.idx(i, j).expect("index inside band");
        self.data[k] += v;
    }

    /// Diagonal matrix.
    pub fn diagonal(values: &[R]) -> Self {
        let mut m = Self::zeros(values.len(), 0, 0);
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Symmetric matrix from its diagonal and superdiagonals
    /// (`supers[k]` has length `n - k - 1`).
    pub fn symmetric_from_diags(diag: &[R], supers: &[Vec<R>]) -> Self {
        let n = diag.len();
        let kd = supers.len();
        let mut m = Self::zeros(n, kd, kd);
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, v);
        }
        for (k, sd) in supers.iter().enumerate() {
            debug_assert_eq!(sd.len(), n - k - 1);
            for (i, &v) in sd.iter().enumerate() {
                m.set(i, i + k + 1, v);
                m.set(i + k + 1, i, v);
            }
        }
        m
    }

    /// Antisymmetric matrix from its superdiagonals (zero main diagonal).
    pub fn antisymmetric_from_diags(n: usize, supers: &[Vec<R>]) -> Self {
        let kd = supers.len();
        let mut m = Self::zeros(n, kd, kd);
        for (k, sd) in supers.iter().enumerate() {
            debug_assert_eq!(sd.len(), n - k - 1);
            for (i, &v) in sd.iter().enumerate() {
                m.set(i, i + k + 1, v);
                m.set(i + k + 1, i, -v);
            }
        }
        m
    }

    pub fn matvec(&self, v: &[R]) -> Vec<R> {
        debug_assert_eq!(v.len(), self.n);
        let mut out = vec![R::zero(); self.n];
        let w = self.kl + self.ku + 1;
        for i in 0..self.n {
            let jlo = i.saturating_sub(self.kl);
            let jhi = (i + self.ku).min(self.n - 1);
            let row = &self.data[i * w..(i + 1) * w];
            let mut acc = R::zero();
            for j in jlo..=jhi {
                acc += row[j + self.kl - i] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Banded product; bandwidths add.
    pub fn mul(&self, other: &Band<R>) -> Band<R> {
        assert_eq!(self.n, other.n);
        let kl = self.kl + other.kl;
        let ku = self.ku + other.ku;
        let mut out = Band::zeros(self.n, kl, ku);
        for i in 0..self.n {
            let klo = i.saturating_sub(self.kl);
            let khi = (i + self.ku).min(self.n - 1);
            for k in klo..=khi {
                let aik = self.get(i, k);
                if aik == R::zero() {
                    continue;
                }
                let jlo = k.saturating_sub(other.kl).max(i.saturating_sub(kl));
                let jhi = (k + other.ku).min(self.n - 1).min(i + ku);
                for j in jlo..=jhi {
                    out.add_at(i, j, aik * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn scaled(&self, s: R) -> Band<R> {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= s;
        }
        out
    }

    /// Sum; the result carries the wider bandwidths.
    pub fn add(&self, other: &Band<R>) -> Band<R> {
        assert_eq!(self.n, other.n);
        let kl = self.kl.max(other.kl);
        let ku = self.ku.max(other.ku);
        let mut out = Band::zeros(self.n, kl, ku);
        for i in 0..self.n {
            let jlo = i.saturating_sub(kl);
            let jhi = (i + ku).min(self.n - 1);
            for j in jlo..=jhi {
                out.set(i, j, self.get(i, j) + other.get(i, j));
            }
        }
        out
    }

    pub fn sub(&self, other: &Band<R>) -> Band<R> {
        self.add(&other.scaled(-R::one()))
    }

    /// Exact transpose-equality check (no tolerance).
    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.n {
            let jhi = (i + self.ku.max(self.kl)).min(self.n - 1);
            for j in i..=jhi {
                if self.get(i, j) != self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_antisymmetric(&self) -> bool {
        for i in 0..self.n {
            let jhi = (i + self.ku.max(self.kl)).min(self.n - 1);
            for j in i..=jhi {
                if self.get(i, j) != -self.get(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Largest `|a_ij|` over rows and columns in `[lo, hi)`.
    pub fn max_abs_in(&self, lo: usize, hi: usize) -> R {
        let mut m = R::zero();
        for i in lo..hi.min(self.n) {
            let jlo = i.saturating_sub(self.kl).max(lo);
            let jhi = (i + self.ku).min(hi.min(self.n) - 1);
            for j in jlo..=jhi {
                m = m.max(self.get(i, j).abs());
            }
        }
        m
    }

    pub fn to_dense(&self) -> Vec<Vec<R>> {
        let mut d = vec![vec![R::zero(); self.n]; self.n];
        for i in 0..self.n {
            let jlo = i.saturating_sub(self.kl);
            let jhi = (i + self.ku).min(self.n - 1);
            for j in jlo..=jhi {
                d[i][j] = self.get(i, j);
            }
        }
        d
    }

    /// Frobenius-ish scale: max row sum of |entries| (infinity norm).
    pub fn inf_norm(&self) -> R {
        let mut m = R::zero();
        for i in 0..self.n {
            let jlo = i.saturating_sub(self.kl);
            let jhi = (i + self.ku).min(self.n - 1);
            let mut s = R::zero();
            for j in jlo..=jhi {
                s += self.get(i, j).abs();
            }
            m = m.max(s);
        }
        m
    }
}

/// Number of eigenvalues of a symmetric banded matrix strictly below `sigma`,
/// via the inertia of the `L D L^T` factorization of `A - sigma I`
/// (Sylvester's law). Tiny pivots are perturbed; `sigma` should not be an
/// eigenvalue.
pub fn count_eigenvalues_below<R: Real>(a: &Band<R>, sigma: R) -> usize {
    assert!(a.is_symmetric(), "inertia count requires a symmetric matrix");
    let n = a.n;
    let kd = a.ku;
    // work rows: for column j we keep the active trailing block entries.
    // Straightforward O(n kd^2) LDL^T without pivoting.
    let mut cols: Vec<Vec<R>> = (0..n)
        .map(|j| {
            let ihi = (j + kd).min(n - 1);
            (j..=ihi).map(|i| a.get(i, j) - if i == j { sigma } else { R::zero() }).collect()
        })
        .collect();
    let mut negatives = 0usize;
    let tiny = R::epsilon() * (a.inf_norm() + sigma.abs() + R::one());
    for j in 0..n {
        let mut d = cols[j][0];
        if d.abs() < tiny {
            d = if d < R::zero() { -tiny } else { tiny };
        }
        if d < R::zero() {
            negatives += 1;
        }
        let ihi = (j + kd).min(n - 1);
        // rank-1 update of the trailing block
        for i in (j + 1)..=ihi {
            let lij = cols[j][i - j] / d;
            let khi = ihi;
            for k in i..=khi {
                let upd = lij * cols[j][k - j];
                cols[i][k - i] -= upd;
            }
        }
    }
    negatives
}
