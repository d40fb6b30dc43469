//! Binary Hamming scheme: distance-profile matrices on `{0,1}^m` and their
//! exact spectra via Krawtchouk polynomials.
//!
//! A profile `f: {0..m} → ℚ` defines the matrix with `(u, v)` entry
//! `f(d_H(u, v))`. Such matrices lie in the Bose–Mesner algebra of the cube,
//! so on the `j`-th common eigenspace (dimension `C(m, j)`) the eigenvalue
//! is `Σ_k f(k)·K_k(j)`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::MAX_CUBE_DIM;
use crate::spectra::RationalSymMatrix;
use crate::{Error, Rational, Result};

/// Largest `m` for which [`profile_matrix`] materialises the `2^m × 2^m`
/// matrix.
pub const MAX_MATRIX_CUBE_DIM: usize = 12;

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binary Krawtchouk polynomial `K_k(j) = Σ_s (-1)^s C(j,s) C(m-j,k-s)`.
pub fn krawtchouk(m: usize, k: usize, j: usize) -> Result<BigInt> {
    if m > MAX_CUBE_DIM {
        return Err(Error::DimensionOutOfRange(m, MAX_CUBE_DIM));
    }
    if k > m || j > m {
        return Err(Error::InvalidArgument(alloc::format!(
            "Krawtchouk index out of range: k = {k}, j = {j}, m = {m}"
        )));
    }
    let mut acc = BigInt::zero();
    for s in 0..=k.min(j) {
        let term = binomial(j, s) * binomial(m - j, k - s);
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

/// Values `f(0), …, f(m)` of a distance profile on the `m`-cube.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistanceProfile {
    values: Vec<Rational>,
}

impl DistanceProfile {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        let m = values.len().saturating_sub(1);
        if m == 0 || m > MAX_CUBE_DIM {
            return Err(Error::DimensionOutOfRange(m, MAX_CUBE_DIM));
        }
        Ok(Self { values })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        )
    }

    /// Profile of the distance-`distances` graph's adjacency matrix.
    pub fn indicator(m: usize, distances: &[usize]) -> Result<Self> {
        let mut values = alloc::vec![Rational::zero(); m + 1];
        for &d in distances {
            if d == 0 || d > m {
                return Err(Error::InvalidArgument(alloc::format!(
                    "distance {d} outside 1..={m}"
                )));
            }
            values[d] = Rational::one();
        }
        Self::new(values)
    }

    pub fn m(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn at(&self, distance: usize) -> &Rational {
        &self.values[distance]
    }
}

/// `2^m × 2^m` matrix with entry `f(popcount(u XOR v))`.
pub fn profile_matrix(p: &DistanceProfile) -> Result<RationalSymMatrix> {
    let m = p.m();
    if m > MAX_MATRIX_CUBE_DIM {
        return Err(Error::DimensionOutOfRange(m, MAX_MATRIX_CUBE_DIM));
    }
    let n = 1usize << m;
    Ok(RationalSymMatrix::from_fn(n, |i, j| {
        p.at((i ^ j).count_ones() as usize).clone()
    }))
}

/// Exact spectrum of a profile matrix, one entry per eigenspace `j = 0..=m`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemeSpectrum {
    /// `(eigenvalue, multiplicity)` with multiplicity `C(m, j)`.
    pub eigenspaces: Vec<(Rational, u64)>,
}

impl SchemeSpectrum {
    pub fn lambda_max(&self) -> Rational {
        self.eigenspaces
            .iter()
            .map(|(v, _)| v)
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn lambda_min(&self) -> Rational {
        self.eigenspaces
            .iter()
            .map(|(v, _)| v)
            .min()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Distinct eigenvalues, descending, with merged multiplicities.
    pub fn distinct(&self) -> Vec<(Rational, u64)> {
        let mut out: Vec<(Rational, u64)> = Vec::new();
        let mut sorted = self.eigenspaces.clone();
        sorted.sort_by(|a, b| b.0.cmp(&a.0));
        for (v, k) in sorted {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += k,
                _ => out.push((v, k)),
            }
        }
        out
    }

    pub fn multiplicity_of(&self, value: &Rational) -> u64 {
        self.eigenspaces
            .iter()
            .filter(|(v, _)| v == value)
            .map(|(_, k)| k)
            .sum()
    }

    pub fn dimension(&self) -> u64 {
        self.eigenspaces.iter().map(|(_, k)| k).sum()
    }

    /// `Σ_j C(m,j)·λ(j)`, which equals the matrix trace `2^m·f(0)`.
    pub fn trace(&self) -> Rational {
        self.eigenspaces
            .iter()
            .map(|(v, k)| v * Rational::from_integer(BigInt::from(*k)))
            .sum()
    }

    /// All eigenvalues in descending order, with repetition, as floats.
    pub fn to_f64_descending(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        let mut out = Vec::new();
        for (v, k) in self.distinct() {
            let x = v.to_f64().unwrap_or(f64::NAN);
            out.extend(core::iter::repeat_n(x, k as usize));
        }
        out
    }
}

pub fn profile_spectrum(p: &DistanceProfile) -> SchemeSpectrum {
    let m = p.m();
    let eigenspaces = (0..=m)
        .map(|j| {
            let mut lam = Rational::zero();
            for k in 0..=m {
                let kr = krawtchouk(m, k, j).expect("indices within 0..=m");
                lam += p.at(k) * Rational::from_integer(kr);
            }
            let mult = u64::try_from(binomial(m, j)).expect("C(m, j) fits u64 for m <= 16");
            (lam, mult)
        })
        .collect();
    SchemeSpectrum { eigenspaces }
}

/// The two certificate profiles on the 5-cube: the Schrijver-feasible
/// `(1, -1, -1, 1, 1, 3)` with `λ_max = 4` and the Lovász-feasible
/// `(1, -7/9, -7/9, 1, 1, 1)` with `λ_max = 16/3`.
pub fn cube5_certificates() -> (DistanceProfile, DistanceProfile) {
    let schrijver = DistanceProfile::from_integers(&[1, -1, -1, 1, 1, 3]).expect("m = 5");
    let r = |p: i64, q: i64| Rational::new(p.into(), q.into());
    let lovasz = DistanceProfile::new(alloc::vec![
        r(1, 1),
        r(-7, 9),
        r(-7, 9),
        r(1, 1),
        r(1, 1),
        r(1, 1),
    ])
    .expect("m = 5");
    (schrijver, lovasz)
}
