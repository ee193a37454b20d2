use super::SymMatrix;
use crate::error::{Error, Result};

/// Lower-triangular Cholesky factor `L` with `M = L Lᵀ`.
#[derive(Clone, Debug)]
pub struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

/// Factors a symmetric positive definite matrix. A pivot at or below
/// `1e-12 · ‖M‖_F` is reported as not positive definite.
pub fn cholesky_spd(m: &SymMatrix) -> Result<Cholesky> {
    let tol = 1e-12 * m.frobenius_norm();
    Cholesky::factor(m.n(), m.as_slice(), tol)
}

/// Solves `M x = b` for symmetric positive definite `M`.
pub fn solve_spd(m: &SymMatrix, b: &[f64]) -> Result<Vec<f64>> {
    if b.len() != m.n() {
        return Err(Error::invalid("right-hand side length does not match matrix"));
    }
    Ok(cholesky_spd(m)?.solve(b))
}

impl Cholesky {
    /// Factors the row-major `n × n` array `a` (only the lower triangle is
    /// read). Pivots `<= tol` fail.
    pub(crate) fn factor(n: usize, a: &[f64], tol: f64) -> Result<Self> {
        let mut l = vec![0.0; n * n];
        for j in 0..n {
            let mut d = a[j * n + j];
            for k in 0..j {
                d -= l[j * n + k] * l[j * n + k];
            }
            if !(d > tol) {
                return Err(Error::NotPositiveDefinite { pivot: j, value: d });
            }
            let d = d.sqrt();
            l[j * n + j] = d;
            for i in j + 1..n {
                let mut s = a[i * n + j];
                let (ri, rj) = (&l[i * n..i * n + j], &l[j * n..j * n + j]);
                for k in 0..j {
                    s -= ri[k] * rj[k];
                }
                l[i * n + j] = s / d;
            }
        }
        Ok(Cholesky { n, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The factor `L` as a row-major array.
    pub fn lower(&self) -> &[f64] {
        &self.l
    }

    /// Solves `L y = b` in place.
    pub(crate) fn forward(&self, b: &mut [f64]) {
        let n = self.n;
        for i in 0..n {
            let mut s = b[i];
            for k in 0..i {
                s -= self.l[i * n + k] * b[k];
            }
            b[i] = s / self.l[i * n + i];
        }
    }

    /// Solves `Lᵀ x = y` in place.
    pub(crate) fn backward(&self, b: &mut [f64]) {
        let n = self.n;
        for i in (0..n).rev() {
            let mut s = b[i];
            for k in i + 1..n {
                s -= self.l[k * n + i] * b[k];
            }
            b[i] = s / self.l[i * n + i];
        }
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = b.to_vec();
        self.forward(&mut x);
        self.backward(&mut x);
        x
    }

    /// `M⁻¹`, symmetric.
    pub fn inverse(&self) -> SymMatrix {
        let n = self.n;
        let mut inv = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|x| *x = 0.0);
            e[j] = 1.0;
            let col = self.solve(&e);
            for i in 0..n {
                inv[i * n + j] = col[i];
            }
        }
        SymMatrix::from_dense_symmetrized(n, &inv)
    }

    /// `L⁻¹ A L⁻ᵀ` for symmetric `A`, symmetrized.
    pub(crate) fn whiten(&self, a: &SymMatrix) -> SymMatrix {
        let n = self.n;
        // T = L⁻¹ A, column by column of A (A symmetric: column j = row j)
        let mut t = vec![0.0; n * n];
        for j in 0..n {
            let mut col = a.row(j);
            self.forward(&mut col);
            for i in 0..n {
                t[i * n + j] = col[i];
            }
        }
        // R = L⁻¹ Tᵀ = L⁻¹ A L⁻ᵀ (transposed), rows of T are columns of Tᵀ
        let mut r = vec![0.0; n * n];
        for i in 0..n {
            let mut col = t[i * n..(i + 1) * n].to_vec();
            self.forward(&mut col);
            for k in 0..n {
                r[k * n + i] = col[k];
            }
        }
        SymMatrix::from_dense_symmetrized(n, &r)
    }
}
