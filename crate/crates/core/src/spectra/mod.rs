//! Dense symmetric spectra.
//!
//! [`SymMatrix`] stores the lower triangle only, so symmetry holds by
//! construction. Eigenvalues come from cyclic Jacobi rotations; exact PSD
//! decisions over the rationals live in [`exact`].

mod exact;

pub use exact::{exact_psd_certify, quadratic_form, PsdVerdict, RationalSymMatrix};

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::{Error, Rational, Result};

const MAX_SWEEPS: usize = 100;

/// Relative off-diagonal threshold at which Jacobi stops.
pub const JACOBI_REL_TOL: f64 = 1e-12;

/// Gap below which neighbouring eigenvalues count as one eigenvalue.
pub const MULTIPLICITY_GAP: f64 = 1e-6;

#[inline]
pub(crate) fn tri(i: usize, j: usize) -> usize {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    i * (i + 1) / 2 + j
}

/// Real symmetric matrix, lower triangle stored row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct SymMatrix {
    dim: usize,
    lower: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            lower: vec![0.0; dim * (dim + 1) / 2],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// Builds from `f(i, j)` evaluated on the lower triangle (`j <= i`).
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut lower = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..dim {
            for j in 0..=i {
                lower.push(f(i, j));
            }
        }
        Self { dim, lower }
    }

    /// Row-major lower triangle, `dim * (dim + 1) / 2` values.
    pub fn from_lower(dim: usize, lower: Vec<f64>) -> Result<Self> {
        let expected = dim * (dim + 1) / 2;
        if lower.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: lower.len(),
            });
        }
        Ok(Self { dim, lower })
    }

    /// Symmetric matrix from a full square array; fails unless it is
    /// exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: r.len(),
                });
            }
            for j in 0..i {
                if r[j] != rows[j][i] {
                    return Err(Error::InvalidArgument(alloc::format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::from_fn(dim, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.lower[tri(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.lower[tri(i, j)] = v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim {
            for j in 0..=i {
                let v = self.get(i, j);
                s += if i == j { v * v } else { 2.0 * v * v };
            }
        }
        libm::sqrt(s)
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.dim;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = self.get(i, j);
                a[i * n + j] = v;
                a[j * n + i] = v;
            }
        }
        a
    }

    fn check_finite(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..=i {
                if !self.get(i, j).is_finite() {
                    return Err(Error::NonFinite(i, j));
                }
            }
        }
        Ok(())
    }
}

/// All eigenvalues in descending order.
///
/// Rotations continue until the off-diagonal Frobenius norm is at most
/// `1e-12 * ‖M‖_F` (or `tol`, whichever is smaller); each eigenvalue is then
/// within that norm of the true spectrum.
pub fn sym_eigenvalues(m: &SymMatrix, tol: f64) -> Result<Vec<f64>> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    m.check_finite()?;
    let n = m.dim;
    let mut a = m.to_dense();
    let norm = m.frobenius_norm();
    let target = (JACOBI_REL_TOL * norm).min(tol);

    let off_norm = |a: &[f64]| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..i {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        libm::sqrt(s)
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= target || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            if off <= tol {
                break;
            }
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
    }

    let mut eig: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    Ok(eig)
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if libm::fabs(theta) > 1e150 {
        0.5 / theta
    } else {
        let s = if theta >= 0.0 { 1.0 } else { -1.0 };
        s / (libm::fabs(theta) + libm::sqrt(theta * theta + 1.0))
    };
    let c = 1.0 / libm::sqrt(t * t + 1.0);
    let s = t * c;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let kp = c * akp - s * akq;
        let kq = s * akp + c * akq;
        a[k * n + p] = kp;
        a[p * n + k] = kp;
        a[k * n + q] = kq;
        a[q * n + k] = kq;
    }
    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
}

pub fn lambda_max(m: &SymMatrix, tol: f64) -> Result<f64> {
    Ok(sym_eigenvalues(m, tol)?.first().copied().unwrap_or(0.0))
}

pub fn lambda_min(m: &SymMatrix, tol: f64) -> Result<f64> {
    Ok(sym_eigenvalues(m, tol)?.last().copied().unwrap_or(0.0))
}

/// `λ_min(M) >= -tol`.
pub fn psd_check(m: &SymMatrix, tol: f64) -> Result<bool> {
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(
            "tolerance must be non-negative".into(),
        ));
    }
    let eig_tol = if tol > 0.0 { tol } else { f64::MIN_POSITIVE };
    Ok(lambda_min(m, eig_tol)? >= -tol)
}

/// Groups a descending spectrum into `(value, multiplicity)` runs whose
/// consecutive gaps are below `gap`. The value reported is the run mean.
pub fn group_eigenvalues(descending: &[f64], gap: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let mut run_sum = 0.0;
    let mut prev: Option<f64> = None;
    for &v in descending {
        match prev {
            Some(p) if libm::fabs(p - v) < gap => {
                run_sum += v;
                let last = out.last_mut().expect("run started");
                last.1 += 1;
                last.0 = run_sum / last.1 as f64;
            }
            _ => {
                run_sum = v;
                out.push((v, 1));
            }
        }
        prev = Some(v);
    }
    out
}

/// `-n·λ_min / (d - λ_min)` for a `d`-regular graph of order `n`; an upper
/// bound on the Lovász theta function, tight for edge-transitive graphs.
pub fn hoffman_bound(n: usize, d: usize, lam_min: &Rational) -> Result<Rational> {
    let d = Rational::from_integer(d.into());
    let denom = &d - lam_min;
    if denom.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if !lam_min.is_negative() || denom.is_negative() {
        return Err(Error::InvalidArgument(alloc::format!(
            "need λ_min < 0 and d > λ_min, got λ_min = {lam_min}"
        )));
    }
    let n = Rational::from_integer(n.into());
    Ok(-(n * lam_min) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{hamming_graph, Graph};
    use num_bigint::BigInt;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn identity_spectrum() {
        let e = sym_eigenvalues(&SymMatrix::identity(5), 1e-12).unwrap();
        assert_eq!(e, vec![1.0; 5]);
    }

    #[test]
    fn zero_matrix_extremes() {
        let z = SymMatrix::zeros(4);
        assert_eq!(lambda_max(&z, 1e-9).unwrap(), 0.0);
        assert_eq!(lambda_min(&z, 1e-9).unwrap(), 0.0);
    }

    #[test]
    fn cube5_graph_extremes() {
        let a = hamming_graph(5, &[1, 2]).unwrap().adjacency_matrix();
        let e = sym_eigenvalues(&a, 1e-10).unwrap();
        assert!((e[0] - 15.0).abs() < 1e-9);
        assert!((e[31] + 3.0).abs() < 1e-9);
        let groups = group_eigenvalues(&e, MULTIPLICITY_GAP);
        let mults: Vec<usize> = groups.iter().map(|g| g.1).collect();
        assert_eq!(mults, vec![1, 6, 15, 10]);
    }

    #[test]
    fn psd_check_cases() {
        assert!(psd_check(&SymMatrix::identity(3), 0.0).unwrap());
        let m = SymMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 0) => 1.0,
            (1, 1) => -1.0,
            _ => 0.0,
        });
        assert!(!psd_check(&m, 1e-9).unwrap());
        assert!(psd_check(&m, -1.0).is_err());
    }

    #[test]
    fn non_finite_rejected() {
        let mut m = SymMatrix::identity(2);
        m.set(1, 0, f64::NAN);
        assert_eq!(sym_eigenvalues(&m, 1e-9), Err(Error::NonFinite(1, 0)));
        assert!(sym_eigenvalues(&SymMatrix::identity(2), 0.0).is_err());
    }

    #[test]
    fn hoffman_cases() {
        assert_eq!(hoffman_bound(32, 15, &r(-3, 1)).unwrap(), r(16, 3));
        assert_eq!(hoffman_bound(10, 4, &r(-4, 1)).unwrap(), r(5, 1));
        assert_eq!(hoffman_bound(0, 0, &r(0, 1)), Err(Error::DivisionByZero));
        assert!(hoffman_bound(4, 1, &r(1, 2)).is_err());
    }

    #[test]
    fn hoffman_petersen_from_computed_spectrum() {
        let e = sym_eigenvalues(&Graph::petersen().adjacency_matrix(), 1e-12).unwrap();
        let lmin = e[9];
        assert!((lmin + 2.0).abs() < 1e-9);
        assert_eq!(
            hoffman_bound(10, 3, &r(lmin.round() as i64, 1)).unwrap(),
            r(4, 1)
        );
    }

    #[test]
    fn grouping_handles_close_values() {
        let g = group_eigenvalues(&[4.0, 4.0 + 1e-9, 1.0, -2.0, -2.0], 1e-6);
        assert_eq!(g.len(), 3);
        assert_eq!((g[0].1, g[1].1, g[2].1), (2, 1, 2));
    }
}
