//! Dense symmetric linear algebra.

mod cholesky;
pub(crate) mod dense;
mod eigen;

pub use cholesky::{cholesky_spd, solve_spd, Cholesky};
pub use eigen::{eigh, EigenDecomposition};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense real symmetric matrix, stored full and row-major.
///
/// Every mutator writes both `(i, j)` and `(j, i)`, so the stored array is
/// exactly symmetric at all times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![1.0; n])
    }

    pub fn from_diag(d: &[f64]) -> Self {
        let mut m = Self::zeros(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.data[i * d.len() + i] = x;
        }
        m
    }

    /// Builds from `f(i, j)` evaluated on the upper triangle (`i <= j`).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Builds from rows; the upper triangle is authoritative.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix rows must all have length n"));
        }
        Ok(Self::from_fn(n, |i, j| rows[i][j]))
    }

    /// Symmetric part `(A + Aᵀ)/2` of a dense row-major square array.
    pub fn from_dense_symmetrized(n: usize, a: &[f64]) -> Self {
        assert_eq!(a.len(), n * n);
        Self::from_fn(n, |i, j| 0.5 * (a[i * n + j] + a[j * n + i]))
    }

    /// `v vᵀ`.
    pub fn outer(v: &[f64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        self.data[i * self.n..(i + 1) * self.n].to_vec()
    }

    /// Row-major full storage.
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Frobenius inner product `⟨A, B⟩ = tr(AB)`.
    pub fn dot(&self, other: &SymMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    /// `vᵀ A v`.
    pub fn quadratic_form(&self, v: &[f64]) -> f64 {
        self.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.data[i * self.n..(i + 1) * self.n]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn scaled(&self, c: f64) -> SymMatrix {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: f64, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.n, other.n);
        SymMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + c * b).collect(),
        }
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        self.add_scaled(1.0, other)
    }

    pub fn sub(&self, other: &SymMatrix) -> SymMatrix {
        self.add_scaled(-1.0, other)
    }

    /// `D A D` for a diagonal `D = diag(d)`.
    pub fn conjugate_diag(&self, d: &[f64]) -> SymMatrix {
        SymMatrix::from_fn(self.n, |i, j| d[i] * self.get(i, j) * d[j])
    }

    /// Matrix product as a dense row-major array (not symmetric in general).
    pub fn matmul(&self, other: &SymMatrix) -> Vec<f64> {
        dense::matmul(self.n, &self.data, &other.data)
    }
}

/// Sum of the `k` largest eigenvalues, linearly interpolated for real `k`:
/// `λ₁ + … + λ_⌊k⌋ + (k − ⌊k⌋) λ_⌊k⌋₊₁`.
pub fn kyfan_sum(m: &SymMatrix, k: f64) -> Result<f64> {
    let eig = eigh(m)?;
    kyfan_from_values(&eig.values, k)
}

/// Ky Fan sum from an already sorted (descending) spectrum.
pub fn kyfan_from_values(values: &[f64], k: f64) -> Result<f64> {
    let n = values.len();
    if !(0.0..=n as f64).contains(&k) {
        return Err(Error::invalid(format!("k = {k} outside [0, {n}]")));
    }
    let whole = k.floor() as usize;
    let frac = k - whole as f64;
    let mut s: f64 = values[..whole].iter().sum();
    if whole < n && frac > 0.0 {
        s += frac * values[whole];
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetry_enforced() {
        let m = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![5.0, 3.0]]).unwrap();
        assert_eq!(m.get(1, 0), 2.0);
        let mut z = SymMatrix::zeros(3);
        z.set(2, 0, 4.0);
        assert_eq!(z.get(0, 2), 4.0);
    }

    #[test]
    fn kyfan_examples() {
        let m = SymMatrix::from_diag(&[3.0, 1.0, 0.0]);
        assert_eq!(kyfan_sum(&m, 2.0).unwrap(), 4.0);
        assert_eq!(kyfan_sum(&m, 1.5).unwrap(), 3.5);
        assert_eq!(kyfan_sum(&m, 0.0).unwrap(), 0.0);
        assert_eq!(kyfan_sum(&m, 3.0).unwrap(), 4.0);
        assert!(kyfan_sum(&m, 3.5).is_err());
        assert!(kyfan_sum(&m, -0.1).is_err());
    }

    #[test]
    fn kyfan_fractional_matches_sdp_by_enumeration() {
        // max ⟨M, X⟩ over tr X = k, 0 ≼ X ≼ I; for diagonal M the optimum is
        // attained at diagonal X, i.e. a fractional knapsack over the
        // diagonal, which we brute-force on a grid of step 1/4.
        let d = [3.0, 1.0, 0.0];
        let k = 1.5;
        let mut best = f64::NEG_INFINITY;
        for a in 0..=4 {
            for b in 0..=4 {
                for c in 0..=4 {
                    let x = [a as f64 / 4.0, b as f64 / 4.0, c as f64 / 4.0];
                    if (x.iter().sum::<f64>() - k).abs() < 1e-12 {
                        best = best.max(x.iter().zip(&d).map(|(p, q)| p * q).sum());
                    }
                }
            }
        }
        let m = SymMatrix::from_diag(&d);
        assert_eq!(kyfan_sum(&m, k).unwrap(), best);
    }
}
