//! Lovász ϑ and the weighted eigenvalue-sum function
//!
//! ```text
//!   ϑ_k(G; w) = min { λ₁ + … + λ_k of √w√wᵀ + Z : Z symmetric, supported on E(G) }
//! ```
//!
//! computed two ways and cross-checked:
//!
//! * the matrix program `max ⟨√w√wᵀ, X⟩ : tr X = k, X_ij = 0 (ij ∈ E), 0 ≼ X ≼ I`
//!   ([`theta_k_dual`]);
//! * the program `min kη + tr Y : Y − (√w√wᵀ + Z) + ηI ≽ 0, Y ≽ 0`
//!   ([`theta_k_primal`]), whose edge matrix `Z` is then re-evaluated
//!   directly with a Ky Fan sum.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, WeightVector};
use crate::linalg::{eigh, SymMatrix};
use crate::sdp::{solve_sdp, BlockSdp, Entry, Sense};

/// Relative tolerance of the cross-formulation check.
pub const GAP_TOL: f64 = 1e-6;
/// Off-support entries of `Z` above this are rejected.
pub const SUPPORT_TOL: f64 = 1e-12;

static SOLVES: AtomicUsize = AtomicUsize::new(0);
static MAX_GAP_BITS: AtomicU64 = AtomicU64::new(0);

fn record_gap(rel: f64) {
    SOLVES.fetch_add(1, Ordering::Relaxed);
    // nonnegative floats order like their bit patterns
    MAX_GAP_BITS.fetch_max(rel.max(0.0).to_bits(), Ordering::Relaxed);
}

/// `(number of certified ϑ_k solves, largest relative gap seen)` in this
/// process.
pub fn gap_stats() -> (usize, f64) {
    (
        SOLVES.load(Ordering::Relaxed),
        f64::from_bits(MAX_GAP_BITS.load(Ordering::Relaxed)),
    )
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThetaKResult {
    /// Midpoint of the two certified values.
    pub value: f64,
    pub k: f64,
    pub w: WeightVector,
    pub dual_value: f64,
    pub dual_x: SymMatrix,
    /// Ky Fan value of `√w√wᵀ + Z`, an upper bound for every such `Z`.
    pub primal_value: f64,
    pub primal_z: SymMatrix,
    pub primal_y: SymMatrix,
    pub eta: f64,
    /// `|primal_value − dual_value|`.
    pub gap: f64,
}

impl ThetaKResult {
    pub fn relative_gap(&self) -> f64 {
        self.gap / (1.0 + self.value.abs())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PrimalWitness {
    pub value: f64,
    pub z: SymMatrix,
    pub y: SymMatrix,
    pub eta: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LovaszResult {
    pub value: f64,
    pub x: SymMatrix,
    pub primal_objective: f64,
    pub dual_objective: f64,
}

fn check_k(n: usize, k: f64) -> Result<()> {
    if !k.is_finite() || k < 0.0 || k > n as f64 {
        return Err(Error::invalid(format!("k = {k} outside [0, {n}]")));
    }
    Ok(())
}

fn rank_one(w: &WeightVector) -> SymMatrix {
    SymMatrix::outer(&w.sqrt())
}

/// `max ⟨J, X⟩ : tr X = 1, X_ij = 0 (ij ∈ E), X ≽ 0`.
pub fn lovasz_theta(g: &Graph) -> Result<f64> {
    Ok(lovasz_theta_witness(g)?.value)
}

pub fn lovasz_theta_witness(g: &Graph) -> Result<LovaszResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("lovasz_theta needs n >= 1"));
    }
    let mut p = BlockSdp::new(vec![n], Sense::Maximize);
    for i in 0..n {
        for j in i..n {
            p.objective.push(Entry::new(0, i, j, 1.0));
        }
    }
    p.add_constraint((0..n).map(|i| Entry::new(0, i, i, 1.0)).collect(), 1.0);
    for &(i, j) in g.edges() {
        p.add_constraint(vec![Entry::new(0, i, j, 1.0)], 0.0);
    }
    let sol = solve_sdp(&p)?.into_result()?;
    let value = sol.value();
    let gap = (sol.primal_objective - sol.dual_objective).abs();
    if gap > GAP_TOL * (1.0 + value.abs()) {
        return Err(Error::DualityCertification {
            primal: sol.primal_objective,
            dual: sol.dual_objective,
            gap,
        });
    }
    Ok(LovaszResult {
        value,
        x: sol.x.blocks[0].clone(),
        primal_objective: sol.primal_objective,
        dual_objective: sol.dual_objective,
    })
}

/// Closed forms for `k ∈ {0, n}`, `w = 0` and `n = 1`, where a solver run
/// is either ill-posed or pointless.
fn analytic(g: &Graph, w: &WeightVector, k: f64) -> Option<(f64, SymMatrix)> {
    let n = g.n();
    if k == 0.0 {
        Some((0.0, SymMatrix::zeros(n)))
    } else if k == n as f64 {
        Some((w.sum(), SymMatrix::identity(n)))
    } else if w.is_zero() {
        Some((0.0, SymMatrix::identity(n).scaled(k / n as f64)))
    } else if n == 1 {
        Some((k * w.as_slice()[0], SymMatrix::from_diag(&[k])))
    } else {
        None
    }
}

/// Value and maximizer of `max ⟨√w√wᵀ, X⟩ : tr X = k, X_ij = 0 (ij ∈ E),
/// 0 ≼ X ≼ I`.
pub fn theta_k_dual(g: &Graph, w: &WeightVector, k: f64) -> Result<(f64, SymMatrix)> {
    let n = g.n();
    w.check_len(n)?;
    check_k(n, k)?;
    if let Some(r) = analytic(g, w, k) {
        return Ok(r);
    }
    let s = w.sqrt();
    // blocks: X, and the slack S' = I − X
    let mut p = BlockSdp::new(vec![n, n], Sense::Maximize);
    for i in 0..n {
        for j in i..n {
            let v = s[i] * s[j];
            if v != 0.0 {
                p.objective.push(Entry::new(0, i, j, v));
            }
        }
    }
    for i in 0..n {
        for j in i..n {
            let rhs = if i == j { 1.0 } else { 0.0 };
            p.add_constraint(vec![Entry::new(0, i, j, 1.0), Entry::new(1, i, j, 1.0)], rhs);
        }
    }
    p.add_constraint((0..n).map(|i| Entry::new(0, i, i, 1.0)).collect(), k);
    for &(i, j) in g.edges() {
        p.add_constraint(vec![Entry::new(0, i, j, 1.0)], 0.0);
    }
    let sol = solve_sdp(&p)?.into_result()?;
    let mut x = sol.x.blocks[0].clone();
    // edge entries are zero up to solver noise; store the projection
    for &(i, j) in g.edges() {
        x.set(i, j, 0.0);
    }
    let value = rank_one(w).dot(&x);
    Ok((value, x))
}

/// Upper-bound witness `(Z, Y, η)`: `Z` is edge supported, `(η, Y)` is the
/// spectral recovery for `√w√wᵀ + Z`, and `value` is its Ky Fan sum.
pub fn theta_k_primal(g: &Graph, w: &WeightVector, k: f64) -> Result<PrimalWitness> {
    let n = g.n();
    w.check_len(n)?;
    check_k(n, k)?;
    let z = if analytic(g, w, k).is_some() {
        SymMatrix::zeros(n)
    } else {
        primal_z_by_sdp(g, w, k)?
    };
    let value = evaluate_z(g, w, k, &z)?;
    let m = rank_one(w).add(&z);
    let (eta, y) = recover_primal(&m, k)?;
    Ok(PrimalWitness { value, z, y, eta })
}

/// Solves the primal program with `T = Y − √w√wᵀ − Z + ηI` as a second
/// cone block; `Z` and `η` are eliminated through the entries of `T − Y`.
fn primal_z_by_sdp(g: &Graph, w: &WeightVector, k: f64) -> Result<SymMatrix> {
    let n = g.n();
    let s = w.sqrt();
    let wv = w.as_slice();
    // blocks: Y, T
    let mut p = BlockSdp::new(vec![n, n], Sense::Minimize);
    // tr Y + k (T_00 − Y_00)   (+ k w_0, a constant)
    p.objective.push(Entry::new(0, 0, 0, 1.0 - k));
    for i in 1..n {
        p.objective.push(Entry::new(0, i, i, 1.0));
    }
    p.objective.push(Entry::new(1, 0, 0, k));
    for (i, j) in g.non_edges() {
        // off-diagonal rows count twice in ⟨A, ·⟩
        p.add_constraint(
            vec![Entry::new(1, i, j, 1.0), Entry::new(0, i, j, -1.0)],
            -2.0 * s[i] * s[j],
        );
    }
    for q in 1..n {
        p.add_constraint(
            vec![
                Entry::new(1, q, q, 1.0),
                Entry::new(0, q, q, -1.0),
                Entry::new(1, 0, 0, -1.0),
                Entry::new(0, 0, 0, 1.0),
            ],
            wv[0] - wv[q],
        );
    }
    let sol = solve_sdp(&p)?.into_result()?;
    let (yb, tb) = (&sol.x.blocks[0], &sol.x.blocks[1]);
    let mut z = SymMatrix::zeros(n);
    for &(i, j) in g.edges() {
        z.set(i, j, yb.get(i, j) - tb.get(i, j) - s[i] * s[j]);
    }
    Ok(z)
}

/// Certified `ϑ_k(G; w)` from both programs; fails when they disagree by
/// more than `1e-6 · (1 + |value|)`.
pub fn theta_k(g: &Graph, w: &WeightVector, k: f64) -> Result<ThetaKResult> {
    let (dual_value, dual_x) = theta_k_dual(g, w, k)?;
    let primal = theta_k_primal(g, w, k)?;
    let value = 0.5 * (dual_value + primal.value);
    let gap = (primal.value - dual_value).abs();
    if gap > GAP_TOL * (1.0 + value.abs()) {
        return Err(Error::DualityCertification {
            primal: primal.value,
            dual: dual_value,
            gap,
        });
    }
    record_gap(gap / (1.0 + value.abs()));
    Ok(ThetaKResult {
        value,
        k,
        w: w.clone(),
        dual_value,
        dual_x,
        primal_value: primal.value,
        primal_z: primal.z,
        primal_y: primal.y,
        eta: primal.eta,
        gap,
    })
}

/// Rejects `Z` with a diagonal or non-edge entry above [`SUPPORT_TOL`].
pub fn check_edge_support(g: &Graph, z: &SymMatrix) -> Result<()> {
    let n = g.n();
    if z.n() != n {
        return Err(Error::invalid(format!("Z has order {}, graph has {n} vertices", z.n())));
    }
    for i in 0..n {
        for j in i..n {
            if (i == j || !g.has_edge(i, j)) && z.get(i, j).abs() > SUPPORT_TOL {
                return Err(Error::invalid(format!(
                    "Z[{i}][{j}] = {:e} is off the edge support",
                    z.get(i, j)
                )));
            }
        }
    }
    Ok(())
}

/// `kyfan_sum(√w√wᵀ + Z, k)`, an upper bound on `ϑ_k(G; w)`.
pub fn evaluate_z(g: &Graph, w: &WeightVector, k: f64, z: &SymMatrix) -> Result<f64> {
    w.check_len(g.n())?;
    check_k(g.n(), k)?;
    check_edge_support(g, z)?;
    crate::linalg::kyfan_sum(&rank_one(w).add(z), k)
}

/// With `λ_i, v_i` the spectrum of `√w√wᵀ + Z` and `c = ⌈k⌉`:
/// `η = λ_c` and `Y = Σ_{i ≤ c} (λ_i − λ_c) v_i v_iᵀ` (`η = λ₁`, `Y = 0` for
/// `k = 0`). For integer `k` this is the classical recovery; for real `k`
/// the same pair has objective `kη + tr Y` equal to the interpolated Ky Fan
/// sum.
pub fn recover_primal_from_z(z: &SymMatrix, w: &WeightVector, k: f64) -> Result<(f64, SymMatrix)> {
    w.check_len(z.n())?;
    check_k(z.n(), k)?;
    recover_primal(&rank_one(w).add(z), k)
}

fn recover_primal(m: &SymMatrix, k: f64) -> Result<(f64, SymMatrix)> {
    let e = eigh(m)?;
    let c = k.ceil() as usize;
    if c == 0 {
        return Ok((e.max(), SymMatrix::zeros(m.n())));
    }
    let eta = e.values[c - 1];
    let y = e.spectral_sum(0..c, |l| (l - eta).max(0.0));
    Ok((eta, y))
}

/// `X' = (1 − t) X + t I` with `t = (ℓ − k)/(n − k)`: feasible at level ℓ
/// whenever `X` is feasible at level `k`, with objective no smaller.
pub fn interpolate_dual(x: &SymMatrix, k: f64, ell: f64, n: usize) -> Result<SymMatrix> {
    let nf = n as f64;
    if x.n() != n {
        return Err(Error::invalid("X order does not match n"));
    }
    if k == nf {
        return Err(Error::invalid("interpolation needs k < n"));
    }
    if !(0.0 <= k && k < ell && ell <= nf) {
        return Err(Error::invalid(format!("need 0 <= k < ell <= n, got k={k}, ell={ell}, n={n}")));
    }
    let t = (ell - k) / (nf - k);
    Ok(x.scaled(1.0 - t).add(&SymMatrix::identity(n).scaled(t)))
}
