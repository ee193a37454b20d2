use serde::{Deserialize, Serialize};

use super::{BlockMatrix, BlockSdp, SdpSolution, Sense};
use crate::error::Result;

/// Independent residual check of a primal-dual pair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    /// `max_i |⟨A_i, X⟩ − b_i|`.
    pub primal_residual: f64,
    /// `max |S − (±)(C − A*y)|` entrywise.
    pub dual_residual: f64,
    pub min_eig_x: f64,
    pub min_eig_s: f64,
    /// `|⟨C, X⟩ − bᵀy| / (1 + |⟨C, X⟩| + |bᵀy|)`.
    pub gap: f64,
    pub tol: f64,
    pub passed: bool,
}

/// Recomputes residuals from scratch. Passing requires absolute residuals
/// and negative eigenvalues within `tol · (1 + ‖data‖∞)` and the relative
/// gap within `tol`.
pub fn check_solution(p: &BlockSdp, sol: &SdpSolution, tol: f64) -> Result<CheckReport> {
    check_pair(p, &sol.x, &sol.y, &sol.s, tol)
}

pub(crate) fn check_pair(
    p: &BlockSdp,
    x: &BlockMatrix,
    y: &[f64],
    s: &BlockMatrix,
    tol: f64,
) -> Result<CheckReport> {
    let ax = p.apply(x);
    let primal_residual = ax
        .iter()
        .zip(p.rhs())
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    let c = p.objective_matrix();
    let expected_s = match p.sense {
        Sense::Minimize => c.sub(&p.adjoint(y)),
        Sense::Maximize => p.adjoint(y).sub(&c),
    };
    let dual_residual = expected_s
        .sub(s)
        .blocks
        .iter()
        .fold(0.0_f64, |m, b| m.max(b.max_abs()));
    let min_eig_x = x.min_eigenvalue()?;
    let min_eig_s = s.min_eigenvalue()?;
    let pobj = c.dot(x);
    let dobj: f64 = p.rhs().iter().zip(y).map(|(a, b)| a * b).sum();
    let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
    let scale = tol * (1.0 + p.data_norm_inf());
    let passed = primal_residual <= scale
        && dual_residual <= scale
        && min_eig_x >= -scale
        && min_eig_s >= -scale
        && gap <= tol;
    Ok(CheckReport {
        primal_residual,
        dual_residual,
        min_eig_x,
        min_eig_s,
        gap,
        tol,
        passed,
    })
}
