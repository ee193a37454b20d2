//! HKM primal-dual path following with a Mehrotra predictor-corrector.
//!
//! Internally the program is `min ⟨C, X⟩` (a `max` program negates `C` and
//! the reported `y`). Each iteration solves the Schur complement system
//! `M Δy = r` with `M_ij = ⟨A_i, X A_j S⁻¹⟩`, assembled row by row in
//! parallel.

use super::{BlockMatrix, BlockSdp, Entry, SdpSolution, SdpStatus, Sense};
use crate::error::Result;
use crate::linalg::dense::matmul;
use crate::linalg::{eigh, Cholesky, SymMatrix};
use crate::par;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub max_iterations: usize,
    /// Stop as soon as residuals and the relative gap are below this.
    pub target: f64,
    /// Level at which a stopped iterate is reported optimal.
    pub accept: f64,
    /// Fraction-to-boundary factor.
    pub step_fraction: f64,
    /// Starting point `X = S = τ I`; `None` uses `τ = 1 + ‖data‖∞`.
    pub start_scale: Option<f64>,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_iterations: 200,
            target: 1e-8,
            accept: 1e-7,
            step_fraction: 0.98,
            start_scale: None,
        }
    }
}

pub fn solve_sdp(p: &BlockSdp) -> Result<SdpSolution> {
    solve_sdp_with(p, &SolverOptions::default())
}

/// Constraint stored with both mirrored triplets of each off-diagonal
/// entry, grouped by block.
struct Expanded {
    terms: Vec<(usize, usize, usize, f64)>,
    blocks: Vec<usize>,
}

fn expand(entries: &[Entry]) -> Expanded {
    let mut terms = Vec::with_capacity(2 * entries.len());
    for e in entries {
        terms.push((e.block, e.row, e.col, e.value));
        if e.row != e.col {
            terms.push((e.block, e.col, e.row, e.value));
        }
    }
    terms.sort_by_key(|t| t.0);
    let mut blocks: Vec<usize> = terms.iter().map(|t| t.0).collect();
    blocks.dedup();
    Expanded { terms, blocks }
}

/// Dense (generally nonsymmetric) block matrix in row-major storage.
type Dense = Vec<Vec<f64>>;

/// `⟨A, Y⟩ = Σ v Y[r][c]` over expanded triplets.
fn apply_dense(a: &Expanded, y: &Dense, dims: &[usize]) -> f64 {
    a.terms.iter().map(|&(b, r, c, v)| v * y[b][r * dims[b] + c]).sum()
}

fn to_dense(m: &BlockMatrix) -> Dense {
    m.blocks.iter().map(|b| b.as_slice().to_vec()).collect()
}

fn sym_dense(dims: &[usize], d: &Dense) -> BlockMatrix {
    BlockMatrix {
        blocks: dims
            .iter()
            .zip(d)
            .map(|(&n, a)| SymMatrix::from_dense_symmetrized(n, a))
            .collect(),
    }
}

/// `A B C` blockwise.
fn triple(dims: &[usize], a: &BlockMatrix, b: &Dense, c: &BlockMatrix) -> Dense {
    dims.iter()
        .enumerate()
        .map(|(k, &n)| {
            let ab = matmul(n, a.blocks[k].as_slice(), &b[k]);
            matmul(n, &ab, c.blocks[k].as_slice())
        })
        .collect()
}

/// Largest `α ≤ 1` keeping `M + α D ≽ 0` after the fraction-to-boundary
/// factor, via `λ_min(L⁻¹ D L⁻ᵀ)`.
fn step_length(chol: &[Cholesky], d: &BlockMatrix, fraction: f64) -> Result<f64> {
    let mut alpha: f64 = 1.0;
    for (l, db) in chol.iter().zip(&d.blocks) {
        let lam = eigh(&l.whiten(db))?.min();
        if lam < 0.0 {
            alpha = alpha.min(-fraction / lam);
        }
    }
    Ok(alpha)
}

fn factor_blocks(m: &BlockMatrix) -> Option<Vec<Cholesky>> {
    m.blocks
        .iter()
        .map(|b| Cholesky::factor(b.n(), b.as_slice(), 0.0).ok())
        .collect()
}

/// Schur complement `M_ij = Σ_{(a,b,u) ∈ A_i} Σ_{(c,d,v) ∈ A_j} u v X[c][a] W[b][d]`,
/// computed through `K_i = X A_i W` per touched block.
fn schur(cons: &[Expanded], dims: &[usize], x: &BlockMatrix, w: &BlockMatrix) -> Vec<f64> {
    let m = cons.len();
    let rows: Vec<Vec<f64>> = par::map_range(m, |i| {
        let ai = &cons[i];
        let mut k: Vec<Option<Vec<f64>>> = vec![None; dims.len()];
        for &blk in &ai.blocks {
            let n = dims[blk];
            let xs = x.blocks[blk].as_slice();
            let ws = w.blocks[blk].as_slice();
            let mut kb = vec![0.0; n * n];
            for &(b, ra, cb, u) in &ai.terms {
                if b != blk {
                    continue;
                }
                // K[c][d] += u X[c][a] W[b][d]
                let wrow = &ws[cb * n..(cb + 1) * n];
                for c in 0..n {
                    let f = u * xs[c * n + ra];
                    if f != 0.0 {
                        let krow = &mut kb[c * n..(c + 1) * n];
                        for (kv, wv) in krow.iter_mut().zip(wrow) {
                            *kv += f * wv;
                        }
                    }
                }
            }
            k[blk] = Some(kb);
        }
        (i..m)
            .map(|j| {
                cons[j]
                    .terms
                    .iter()
                    .map(|&(b, r, c, v)| match &k[b] {
                        Some(kb) => v * kb[r * dims[b] + c],
                        None => 0.0,
                    })
                    .sum()
            })
            .collect()
    });
    let mut out = vec![0.0; m * m];
    for (i, row) in rows.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            let j = i + off;
            out[i * m + j] = v;
            out[j * m + i] = v;
        }
    }
    out
}

fn factor_schur(mut mat: Vec<f64>, m: usize) -> Option<Cholesky> {
    if let Ok(c) = Cholesky::factor(m, &mat, 0.0) {
        return Some(c);
    }
    let scale = (0..m).map(|i| mat[i * m + i].abs()).fold(0.0, f64::max).max(1e-300);
    let mut added = 0.0;
    for delta in [1e-14, 1e-12, 1e-10, 1e-8] {
        let shift = delta * scale - added;
        for i in 0..m {
            mat[i * m + i] += shift;
        }
        added = delta * scale;
        if let Ok(c) = Cholesky::factor(m, &mat, 0.0) {
            return Some(c);
        }
    }
    None
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn solve_sdp_with(p: &BlockSdp, opts: &SolverOptions) -> Result<SdpSolution> {
    p.validate()?;
    let dims = p.blocks.clone();
    let n_total: usize = dims.iter().sum();
    let m = p.constraints.len();
    let sign = match p.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let c = p.objective_matrix().scaled(sign);
    let b = p.rhs();
    let cons: Vec<Expanded> = p.constraints.iter().map(|k| expand(&k.entries)).collect();
    let b_norm = norm2(&b);
    let c_norm = c.frobenius_norm();

    let tau = opts.start_scale.unwrap_or(1.0 + p.data_norm_inf());
    let mut x = BlockMatrix::scaled_identity(&dims, tau);
    let mut s = BlockMatrix::scaled_identity(&dims, tau);
    let mut y = vec![0.0; m];

    let mut iterations = 0;
    let mut broke_down = false;
    loop {
        let ax = p.apply(&x);
        let rp: Vec<f64> = b.iter().zip(&ax).map(|(bi, a)| bi - a).collect();
        let rd = c.sub(&p.adjoint(&y)).sub(&s);
        let pobj = c.dot(&x);
        let dobj: f64 = b.iter().zip(&y).map(|(a, b)| a * b).sum();
        let pres = norm2(&rp) / (1.0 + b_norm);
        let dres = rd.frobenius_norm() / (1.0 + c_norm);
        let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
        let worst = pres.max(dres).max(gap);
        if worst <= opts.target || iterations >= opts.max_iterations || broke_down {
            let status = if worst <= opts.accept {
                SdpStatus::Optimal
            } else if broke_down {
                SdpStatus::Failed
            } else {
                SdpStatus::Inaccurate
            };
            let (y_out, s_out) = (y.iter().map(|v| sign * v).collect(), s);
            return Ok(SdpSolution {
                status,
                x,
                y: y_out,
                s: s_out,
                primal_objective: sign * pobj,
                dual_objective: sign * dobj,
                primal_residual: pres,
                dual_residual: dres,
                gap,
                iterations,
            });
        }
        iterations += 1;

        let mu = x.dot(&s) / n_total as f64;
        let (Some(lx), Some(ls)) = (factor_blocks(&x), factor_blocks(&s)) else {
            broke_down = true;
            continue;
        };
        let w = BlockMatrix {
            blocks: ls.iter().map(|l| l.inverse()).collect(),
        };
        let Some(mchol) = factor_schur(schur(&cons, &dims, &x, &w), m) else {
            broke_down = true;
            continue;
        };

        // rhs = Rp − A(H) + A(X Rd W)
        let xrdw = triple(&dims, &x, &to_dense(&rd), &w);
        let base: Vec<f64> = cons
            .iter()
            .zip(&rp)
            .map(|(a, r)| r + apply_dense(a, &xrdw, &dims))
            .collect();

        let direction = |h: &Dense| -> (Vec<f64>, BlockMatrix, BlockMatrix) {
            let rhs: Vec<f64> = cons
                .iter()
                .zip(&base)
                .map(|(a, r)| r - apply_dense(a, h, &dims))
                .collect();
            let dy = mchol.solve(&rhs);
            let ds = rd.sub(&p.adjoint(&dy));
            let xdsw = triple(&dims, &x, &to_dense(&ds), &w);
            let raw: Dense = h
                .iter()
                .zip(&xdsw)
                .map(|(hb, kb)| hb.iter().zip(kb).map(|(a, b)| a - b).collect())
                .collect();
            (dy, sym_dense(&dims, &raw), ds)
        };

        // predictor
        let h_pred: Dense = to_dense(&x.scaled(-1.0));
        let (_, dxa, dsa) = direction(&h_pred);
        let ap = step_length(&lx, &dxa, 1.0)?;
        let ad = step_length(&ls, &dsa, 1.0)?;
        let mu_aff = x.add_scaled(ap, &dxa).dot(&s.add_scaled(ad, &dsa)) / n_total as f64;
        let sigma = (mu_aff / mu).clamp(0.0, 1.0).powi(3);

        // corrector: H = σμW − X − ΔXa ΔSa W
        let cross = triple(&dims, &dxa, &to_dense(&dsa), &w);
        let h_corr: Dense = dims
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let wk = w.blocks[k].as_slice();
                let xk = x.blocks[k].as_slice();
                (0..wk.len())
                    .map(|t| sigma * mu * wk[t] - xk[t] - cross[k][t])
                    .collect()
            })
            .collect();
        let (dy, dx, ds) = direction(&h_corr);
        let ap = step_length(&lx, &dx, opts.step_fraction)?;
        let ad = step_length(&ls, &ds, opts.step_fraction)?;

        x = x.add_scaled(ap, &dx);
        s = s.add_scaled(ad, &ds);
        for (yi, d) in y.iter_mut().zip(&dy) {
            *yi += ad * d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::{Entry, SdpStatus};

    #[test]
    fn scalar_lp() {
        // min x s.t. x = 1, x >= 0
        let mut p = BlockSdp::new(vec![1], Sense::Minimize);
        p.objective.push(Entry::new(0, 0, 0, 1.0));
        p.add_constraint(vec![Entry::new(0, 0, 0, 1.0)], 1.0);
        let s = solve_sdp(&p).unwrap();
        assert_eq!(s.status, SdpStatus::Optimal);
        assert!((s.value() - 1.0).abs() < 1e-7);
    }

    #[test]
    fn corner_of_psd_cone() {
        // min tr X s.t. X_00 = 1 → X = e0 e0ᵀ
        let mut p = BlockSdp::new(vec![2], Sense::Minimize);
        p.objective.push(Entry::new(0, 0, 0, 1.0));
        p.objective.push(Entry::new(0, 1, 1, 1.0));
        p.add_constraint(vec![Entry::new(0, 0, 0, 1.0)], 1.0);
        let s = solve_sdp(&p).unwrap();
        assert!(s.is_optimal());
        assert!((s.value() - 1.0).abs() < 1e-7);
        let x = &s.x.blocks[0];
        assert!((x.get(0, 0) - 1.0).abs() < 1e-6);
        assert!(x.get(1, 1).abs() < 1e-6 && x.get(0, 1).abs() < 1e-6);
    }

    #[test]
    fn maximize_reports_dual_in_its_own_sign() {
        // max x0 + 2 x1 s.t. x0 + x1 = 1 (two 1x1 blocks) → 2, y = 2
        let mut p = BlockSdp::new(vec![1, 1], Sense::Maximize);
        p.objective.push(Entry::new(0, 0, 0, 1.0));
        p.objective.push(Entry::new(1, 0, 0, 2.0));
        p.add_constraint(vec![Entry::new(0, 0, 0, 1.0), Entry::new(1, 0, 0, 1.0)], 1.0);
        let s = solve_sdp(&p).unwrap();
        assert!(s.is_optimal());
        assert!((s.value() - 2.0).abs() < 1e-7);
        assert!((s.y[0] - 2.0).abs() < 1e-6);
        assert!(s.primal_objective <= s.dual_objective + 1e-9);
    }

    #[test]
    fn pentagon_theta() {
        let g = crate::graph::Family::Cycle(5).generate().unwrap();
        let n = 5;
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
        let s = solve_sdp(&p).unwrap();
        assert!(s.is_optimal());
        assert!((s.value() - 5f64.sqrt()).abs() < 1e-6, "{}", s.value());
    }

    #[test]
    fn start_point_does_not_change_the_optimum() {
        let mut p = BlockSdp::new(vec![3], Sense::Maximize);
        for i in 0..3 {
            for j in i..3 {
                p.objective.push(Entry::new(0, i, j, (1 + i + j) as f64));
            }
        }
        p.add_constraint((0..3).map(|i| Entry::new(0, i, i, 1.0)).collect(), 2.0);
        p.add_constraint(vec![Entry::new(0, 0, 1, 1.0)], 0.0);
        let a = solve_sdp(&p).unwrap();
        let b = solve_sdp_with(
            &p,
            &SolverOptions {
                start_scale: Some(0.5),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(a.is_optimal() && b.is_optimal());
        assert!((a.value() - b.value()).abs() <= 1e-6 * (1.0 + a.value().abs()));
    }
}
