//! Heuristic searches: projected subgradient ascent of `S(m)` over unit
//! edge matrices, and descent of `ϑ_k(G; s∘s)` over the unit sphere.

use super::{hoffman_partial_sum, EdgeMatrix};
use crate::error::{Error, Result};
use crate::graph::{Graph, WeightVector};
use crate::linalg::{eigh, SymMatrix};
use crate::par;
use crate::rng::Rng64;
use crate::theta;

#[derive(Clone, Debug)]
pub struct ZSearchResult {
    /// Unit Frobenius norm.
    pub z: EdgeMatrix,
    pub value: f64,
    pub restart: usize,
}

fn from_edge_values(g: &Graph, vals: &[f64]) -> SymMatrix {
    let mut z = SymMatrix::zeros(g.n());
    for (&(i, j), &v) in g.edges().iter().zip(vals) {
        z.set(i, j, v);
    }
    z
}

fn normalize(v: &mut [f64]) -> bool {
    let f = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if f == 0.0 {
        return false;
    }
    v.iter_mut().for_each(|x| *x /= f);
    true
}

/// Multistart ascent of `S(m)` over unit-norm `Z` supported on the edges.
///
/// Restart 0 starts from the adjacency matrix; restart `r > 0` from edge
/// values uniform in `[−1, 1]` drawn from stream `(seed, r)`. Each step
/// moves along `v₁v₁ᵀ + Σ_{i<m} u_iu_iᵀ` (top eigenvector, `m − 1` bottom
/// eigenvectors) restricted to the edges, with step `1/√t`, then
/// renormalizes. The best iterate over all restarts wins, lowest restart on
/// ties.
pub fn z_search(g: &Graph, m: usize, restarts: usize, iterations: usize, seed: u64) -> Result<ZSearchResult> {
    let n = g.n();
    if m < 2 || m > n {
        return Err(Error::invalid(format!("m = {m} outside [2, {n}]")));
    }
    if g.edge_count() == 0 {
        return Err(Error::Precondition("z_search needs at least one edge".into()));
    }
    let edges = g.edges();
    let runs: Vec<Result<(f64, Vec<f64>)>> = par::map_range(restarts.max(1), |r| {
        let mut vals: Vec<f64> = if r == 0 {
            vec![1.0; edges.len()]
        } else {
            let mut rng = Rng64::stream(seed, r as u64);
            edges.iter().map(|_| rng.uniform(-1.0, 1.0)).collect()
        };
        if !normalize(&mut vals) {
            vals = vec![1.0; edges.len()];
            normalize(&mut vals);
        }
        let mut best = (f64::NEG_INFINITY, vals.clone());
        for t in 0..=iterations {
            let e = eigh(&from_edge_values(g, &vals))?;
            let s = hoffman_partial_sum(&e.values, m)?;
            if s > best.0 {
                best = (s, vals.clone());
            }
            if t == iterations {
                break;
            }
            let mut dirs = vec![e.vector(0)];
            dirs.extend((n + 1 - m..n).map(|j| e.vector(j)));
            let step = 1.0 / ((t + 1) as f64).sqrt();
            for (v, &(i, j)) in vals.iter_mut().zip(edges) {
                let grad: f64 = dirs.iter().map(|d| d[i] * d[j]).sum();
                *v += step * grad;
            }
            if !normalize(&mut vals) {
                break;
            }
        }
        Ok(best)
    });
    let mut winner: Option<(f64, Vec<f64>, usize)> = None;
    for (r, run) in runs.into_iter().enumerate() {
        let (s, vals) = run?;
        if winner.as_ref().is_none_or(|w| s > w.0) {
            winner = Some((s, vals, r));
        }
    }
    let (value, vals, restart) = winner.expect("at least one restart");
    Ok(ZSearchResult {
        z: EdgeMatrix(from_edge_values(g, &vals)),
        value,
        restart,
    })
}

/// Multistart search for `w >= 0` with `wᵀ1 = 1` and `ϑ_k(G; w) < 1 − 1e-6`.
///
/// Minimizes `s ↦ ϑ_k(G; s∘s)` on the nonnegative unit sphere with the
/// subgradient `2Xs` (`X` the maximizer of the matrix program), projected to
/// the tangent space, step `0.5/√t`, clipped at zero and renormalized.
/// Restart 0 starts at the uniform vector; restart `r > 0` at uniform
/// `[0, 1)` entries from stream `(seed, r)`. A candidate is accepted only
/// when the certified upper bound is below `1 − 1e-6`.
pub fn w_search_refute(
    g: &Graph,
    k: usize,
    restarts: usize,
    iterations: usize,
    seed: u64,
) -> Result<Option<WeightVector>> {
    let n = g.n();
    if k < 1 || k > n {
        return Err(Error::invalid(format!("k = {k} outside [1, {n}]")));
    }
    if k == n {
        return Ok(None);
    }
    let kf = k as f64;
    let runs: Vec<Result<Option<WeightVector>>> = par::map_range(restarts.max(1), |r| {
        let mut s: Vec<f64> = if r == 0 {
            vec![1.0; n]
        } else {
            let mut rng = Rng64::stream(seed ^ 0x005e_ed0f_3e16, r as u64);
            (0..n).map(|_| rng.next_f64()).collect()
        };
        if !normalize(&mut s) {
            s = vec![1.0; n];
            normalize(&mut s);
        }
        for t in 0..iterations.max(1) {
            let w = WeightVector::from_sqrt(&s);
            let (val, x) = theta::theta_k_dual(g, &w, kf)?;
            if val < 1.0 - 1e-6 {
                let cert = theta::theta_k(g, &w, kf)?;
                if cert.primal_value < 1.0 - 1e-6 {
                    return Ok(Some(w));
                }
            }
            let grad: Vec<f64> = x.mul_vec(&s).iter().map(|v| 2.0 * v).collect();
            let radial: f64 = grad.iter().zip(&s).map(|(a, b)| a * b).sum();
            let step = 0.5 / ((t + 1) as f64).sqrt();
            for (si, gi) in s.iter_mut().zip(&grad) {
                *si = (*si - step * (gi - radial * *si)).max(0.0);
            }
            if !normalize(&mut s) {
                break;
            }
        }
        Ok(None)
    });
    for run in runs {
        if let Some(w) = run? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn pentagon_level_two() {
        let g = Family::Cycle(5).generate().unwrap();
        let r = z_search(&g, 2, 4, 100, 0).unwrap();
        let adj = (2.0 - 1.618034) / 10f64.sqrt();
        assert!(r.value >= adj - 1e-6, "{}", r.value);
        assert!(w_search_refute(&g, 2, 2, 10, 0).unwrap().is_some());
        assert!(w_search_refute(&g, 5, 2, 10, 0).unwrap().is_none());
    }

    #[test]
    fn bipartite_has_no_certificate() {
        let g = Family::CompleteMultipartite(vec![2, 3]).generate().unwrap();
        let r = z_search(&g, 2, 4, 200, 1).unwrap();
        assert!(r.value <= 1e-7, "{}", r.value);
    }

    #[test]
    fn complete_graph_uniform_weights_refute() {
        let g = Family::Complete(5).generate().unwrap();
        let w = w_search_refute(&g, 4, 1, 1, 0).unwrap().unwrap();
        assert!(w.as_slice().iter().all(|x| (x - 0.2).abs() < 1e-12));
    }

    #[test]
    fn search_is_deterministic() {
        let g = Family::Petersen.generate().unwrap();
        let a = z_search(&g, 2, 3, 50, 9).unwrap();
        let b = z_search(&g, 2, 3, 50, 9).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.z, b.z);
    }
}
