//! Exact PSD certification over the rationals.
//!
//! Symmetric Gaussian elimination with diagonal pivoting. The accumulated
//! transform `T` satisfies `W = T·M·Tᵀ` for the working matrix `W`, so a
//! negative quadratic form found in `W` maps back to an explicit direction
//! `x = Tᵀy` with `xᵀMx < 0`.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{tri, SymMatrix};
use crate::{Error, Rational, Result};

/// Symmetric matrix of exact rationals, lower triangle stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalSymMatrix {
    dim: usize,
    lower: Vec<Rational>,
}

impl RationalSymMatrix {
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut lower = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..dim {
            for j in 0..=i {
                lower.push(f(i, j));
            }
        }
        Self { dim, lower }
    }

    pub fn from_lower(dim: usize, lower: Vec<Rational>) -> Result<Self> {
        let expected = dim * (dim + 1) / 2;
        if lower.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: lower.len(),
            });
        }
        Ok(Self { dim, lower })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
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
        Ok(Self::from_fn(dim, |i, j| {
            Rational::from_integer(rows[i][j].into())
        }))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.lower[tri(i, j)]
    }

    /// `c·I - self`.
    pub fn shifted_negation(&self, c: &Rational) -> Self {
        Self::from_fn(self.dim, |i, j| {
            let v = -self.get(i, j);
            if i == j {
                v + c
            } else {
                v
            }
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            dim: self.dim,
            lower: self.lower.iter().map(|v| v * c).collect(),
        }
    }

    /// `self²`, which is again symmetric.
    pub fn square(&self) -> Self {
        let n = self.dim;
        Self::from_fn(n, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..n {
                acc += self.get(i, k) * self.get(k, j);
            }
            acc
        })
    }

    pub fn to_f64(&self) -> SymMatrix {
        use num_traits::ToPrimitive;
        SymMatrix::from_fn(self.dim, |i, j| self.get(i, j).to_f64().unwrap_or(f64::NAN))
    }
}

/// Outcome of [`exact_psd_certify`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PsdVerdict {
    /// Positive semidefinite; `rank` is the number of positive pivots.
    Psd { rank: usize },
    /// Not PSD. `direction` is a rational vector with
    /// `directionᵀ·M·direction = value < 0`.
    NotPsd {
        witness: NotPsdWitness,
        direction: Vec<Rational>,
        value: Rational,
    },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd { .. })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NotPsdWitness {
    /// A negative pivot at this index.
    NegativePivot { index: usize },
    /// A vanishing pivot whose row does not vanish: the 2×2 minor on
    /// `(i, j)` of the reduced matrix is `[[0, a], [a, 0]]` with `a ≠ 0`.
    ZeroPivotCoupling { i: usize, j: usize },
}

/// `xᵀ·M·x` in exact arithmetic.
pub fn quadratic_form(m: &RationalSymMatrix, x: &[Rational]) -> Result<Rational> {
    if x.len() != m.dim {
        return Err(Error::DimensionMismatch {
            expected: m.dim,
            got: x.len(),
        });
    }
    let mut acc = Rational::zero();
    for i in 0..m.dim {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..m.dim {
            acc += &x[i] * m.get(i, j) * &x[j];
        }
    }
    Ok(acc)
}

/// Decides `M ⪰ 0` exactly.
pub fn exact_psd_certify(m: &RationalSymMatrix) -> PsdVerdict {
    let n = m.dim;
    let mut w: Vec<Rational> = (0..n * n).map(|k| m.get(k / n, k % n).clone()).collect();
    let mut t: Vec<Rational> = (0..n * n)
        .map(|k| {
            if k / n == k % n {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let mut active: Vec<bool> = alloc::vec![true; n];
    let mut rank = 0;

    let row_of = |t: &[Rational], k: usize| t[k * n..(k + 1) * n].to_vec();

    loop {
        if let Some(i) = (0..n).find(|&i| active[i] && w[i * n + i].is_negative()) {
            return PsdVerdict::NotPsd {
                witness: NotPsdWitness::NegativePivot { index: i },
                direction: row_of(&t, i),
                value: w[i * n + i].clone(),
            };
        }
        let Some(p) = (0..n).find(|&i| active[i] && w[i * n + i].is_positive()) else {
            break;
        };
        active[p] = false;
        rank += 1;
        let pivot = w[p * n + p].clone();
        for r in 0..n {
            if !active[r] || w[r * n + p].is_zero() {
                continue;
            }
            let factor = &w[r * n + p] / &pivot;
            // row r -= factor * row p, then the same on columns
            for c in 0..n {
                let delta = &factor * &w[p * n + c];
                w[r * n + c] -= delta;
            }
            for c in 0..n {
                let delta = &factor * &w[c * n + p];
                w[c * n + r] -= delta;
            }
            for c in 0..n {
                let delta = &factor * &t[p * n + c];
                t[r * n + c] -= delta;
            }
        }
    }

    // Remaining active diagonal is all zero; any nonzero coupling breaks PSD.
    for i in 0..n {
        if !active[i] {
            continue;
        }
        for j in i + 1..n {
            if active[j] && !w[i * n + j].is_zero() {
                let a = &w[i * n + j];
                let c = if a.is_positive() {
                    -Rational::one()
                } else {
                    Rational::one()
                };
                let direction: Vec<Rational> =
                    (0..n).map(|k| &t[i * n + k] + &c * &t[j * n + k]).collect();
                let value = Rational::from_integer(2.into()) * &c * a;
                return PsdVerdict::NotPsd {
                    witness: NotPsdWitness::ZeroPivotCoupling { i, j },
                    direction,
                    value,
                };
            }
        }
    }
    PsdVerdict::Psd { rank }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> RationalSymMatrix {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        RationalSymMatrix::from_integer_rows(&rows).unwrap()
    }

    fn check_witness(m: &RationalSymMatrix, v: &PsdVerdict) {
        if let PsdVerdict::NotPsd {
            direction, value, ..
        } = v
        {
            assert!(value.is_negative());
            assert_eq!(&quadratic_form(m, direction).unwrap(), value);
        }
    }

    #[test]
    fn diag_zero_minus_one() {
        let m = int(&[&[0, 0], &[0, -1]]);
        let v = exact_psd_certify(&m);
        assert!(matches!(
            v,
            PsdVerdict::NotPsd {
                witness: NotPsdWitness::NegativePivot { index: 1 },
                ..
            }
        ));
        check_witness(&m, &v);
    }

    #[test]
    fn zero_pivot_with_coupling() {
        let m = int(&[&[0, 1], &[1, 0]]);
        let v = exact_psd_certify(&m);
        assert!(matches!(
            v,
            PsdVerdict::NotPsd {
                witness: NotPsdWitness::ZeroPivotCoupling { i: 0, j: 1 },
                ..
            }
        ));
        check_witness(&m, &v);
    }

    #[test]
    fn singular_psd() {
        // all-ones 3x3 is rank one
        let m = int(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
        assert_eq!(exact_psd_certify(&m), PsdVerdict::Psd { rank: 1 });
        assert_eq!(
            exact_psd_certify(&RationalSymMatrix::identity(4)),
            PsdVerdict::Psd { rank: 4 }
        );
    }

    #[test]
    fn indefinite_after_elimination() {
        // positive diagonal but det < 0
        let m = int(&[&[1, 2], &[2, 1]]);
        let v = exact_psd_certify(&m);
        assert!(!v.is_psd());
        check_witness(&m, &v);
    }

    #[test]
    fn shift_and_square() {
        let m = int(&[&[2, 1], &[1, 2]]);
        let s = m.shifted_negation(&Rational::from_integer(3.into()));
        assert_eq!(s, int(&[&[1, -1], &[-1, 1]]));
        assert_eq!(s.square(), s.scale(&Rational::from_integer(2.into())));
        assert!(quadratic_form(&m, &[Rational::one()]).is_err());
    }
}
