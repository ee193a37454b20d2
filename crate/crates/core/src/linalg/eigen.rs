use super::SymMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;
const OFF_TOL: f64 = 1e-12;

/// Full spectral factorization `M = V Λ Vᵀ` with eigenvalues descending.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    /// `λ₁ ≥ λ₂ ≥ … ≥ λₙ`.
    pub values: Vec<f64>,
    /// Row-major `n × n`; column `j` is the unit eigenvector for `values[j]`.
    pub vectors: Vec<f64>,
}

impl EigenDecomposition {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, j: usize) -> Vec<f64> {
        let n = self.n();
        (0..n).map(|i| self.vectors[i * n + j]).collect()
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// `Σ f(λᵢ) vᵢ vᵢᵀ` over the indices `i` in `which`.
    pub fn spectral_sum(&self, which: impl IntoIterator<Item = usize>, f: impl Fn(f64) -> f64) -> SymMatrix {
        let n = self.n();
        let mut out = SymMatrix::zeros(n);
        for k in which {
            let c = f(self.values[k]);
            if c == 0.0 {
                continue;
            }
            let v = self.vector(k);
            for i in 0..n {
                for j in i..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + c * v[i] * v[j]);
                }
            }
        }
        out
    }

    pub fn reconstruct(&self) -> SymMatrix {
        self.spectral_sum(0..self.n(), |x| x)
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Sweeps until the off-diagonal Frobenius norm is at most
/// `1e-12 · ‖M‖_F` (at most 60 sweeps). Output is sorted by descending
/// eigenvalue, ties by ascending diagonal position, and is deterministic.
pub fn eigh(m: &SymMatrix) -> Result<EigenDecomposition> {
    let n = m.n();
    if n == 0 {
        return Err(Error::invalid("eigh needs n >= 1"));
    }
    let mut a = m.as_slice().to_vec();
    let mut v = SymMatrix::identity(n).as_slice().to_vec();
    let norm = m.frobenius_norm();
    let target = OFF_TOL * norm;

    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                s += a[i * n + j] * a[i * n + j];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let r = off(&a);
        if r <= target || norm == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenNoConvergence { residual: r, sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let np = arp - s * (arq + tau * arp);
                    let nq = arq + s * (arp - tau * arq);
                    a[r * n + p] = np;
                    a[p * n + r] = np;
                    a[r * n + q] = nq;
                    a[q * n + r] = nq;
                }
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = vrp - s * (vrq + tau * vrp);
                    v[r * n + q] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[j * n + j]
            .partial_cmp(&a[i * n + i])
            .expect("eigenvalues are finite")
            .then(i.cmp(&j))
    });
    let values = order.iter().map(|&i| a[i * n + i]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + col] = v[r * n + src];
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::rng::Rng64;

    fn check_invariants(m: &SymMatrix, e: &EigenDecomposition) {
        let n = m.n();
        let rec = e.reconstruct();
        assert!(rec.sub(m).frobenius_norm() <= 1e-10 * m.frobenius_norm().max(1.0));
        let mut gram_err = 0.0;
        for a in 0..n {
            for b in 0..n {
                let va = e.vector(a);
                let vb = e.vector(b);
                let d: f64 = va.iter().zip(&vb).map(|(x, y)| x * y).sum();
                let target = if a == b { 1.0 } else { 0.0 };
                gram_err += (d - target).powi(2);
            }
        }
        assert!(gram_err.sqrt() <= 1e-10 * n as f64);
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        let tr: f64 = e.values.iter().sum();
        assert!((tr - m.trace()).abs() <= 1e-9 * m.frobenius_norm().max(1.0));
        let sq: f64 = e.values.iter().map(|x| x * x).sum();
        assert!((sq - m.frobenius_norm().powi(2)).abs() <= 1e-9 * m.frobenius_norm().powi(2).max(1.0));
    }

    #[test]
    fn identity_and_ones() {
        let e = eigh(&SymMatrix::identity(3)).unwrap();
        assert_eq!(e.values, vec![1.0, 1.0, 1.0]);
        let j = SymMatrix::from_fn(4, |_, _| 1.0);
        let e = eigh(&j).unwrap();
        assert!((e.values[0] - 4.0).abs() < 1e-12);
        assert!(e.values[1..].iter().all(|x| x.abs() < 1e-12));
        check_invariants(&j, &e);
    }

    #[test]
    fn cycle_spectrum_matches_cosines() {
        let a = Family::Cycle(5).generate().unwrap().adjacency_matrix();
        let e = eigh(&a).unwrap();
        let mut expect: Vec<f64> = (0..5)
            .map(|j| 2.0 * (2.0 * std::f64::consts::PI * j as f64 / 5.0).cos())
            .collect();
        expect.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (x, y) in e.values.iter().zip(&expect) {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
        assert!((e.values[1] - 0.618034).abs() < 1e-6);
        check_invariants(&a, &e);
    }

    #[test]
    fn random_matrices() {
        let mut rng = Rng64::new(3);
        for n in [1, 2, 5, 13, 30] {
            let m = SymMatrix::from_fn(n, |_, _| rng.uniform(-2.0, 2.0));
            let e = eigh(&m).unwrap();
            check_invariants(&m, &e);
        }
    }

    #[test]
    fn zero_matrix_and_determinism() {
        let e = eigh(&SymMatrix::zeros(3)).unwrap();
        assert_eq!(e.values, vec![0.0; 3]);
        let m = Family::Petersen.generate().unwrap().adjacency_matrix();
        let a = eigh(&m).unwrap();
        let b = eigh(&m).unwrap();
        assert_eq!(a.values, b.values);
        assert_eq!(a.vectors, b.vectors);
    }
}
