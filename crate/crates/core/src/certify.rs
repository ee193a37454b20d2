//! Constructive certificates: the coclique matrix `M` feasible for the
//! `ϑ_k` maximization at `k = χ_f`, a feasibility checker for that program,
//! and the end-to-end inequality chain.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::chromatic::{self, FractionalColoring};
use crate::error::{Error, Result};
use crate::graph::{encode_graph6, Graph, WeightVector};
use crate::hoffman::{self, HBracket, SearchBudget};
use crate::linalg::{eigh, SymMatrix};
use crate::theta;

/// Tolerance of the four matrix claims.
pub const CERT_TOL: f64 = 1e-7;
/// Edge entries of `M` must vanish to this level.
pub const EDGE_TOL: f64 = 1e-9;
/// Tolerance of [`verify_dual_feasible`].
pub const FEASIBLE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Theorem2Certificate {
    pub m: SymMatrix,
    /// The trace level, `χ_f` as the value of the coloring.
    pub k: f64,
    pub w: WeightVector,
    pub trace_value: f64,
    pub objective_value: f64,
    /// Named residuals: `trace`, `min_eigenvalue`, `max_eigenvalue`,
    /// `edge_entries`, `objective`, `fixed_point`.
    pub checks: BTreeMap<String, f64>,
}

/// `M = Σ_S y(S) Diag(x_S) √w√wᵀ Diag(x_S) / w(S)` over the cocliques with
/// `w(S) > 0`. A nonempty coclique with `w(S) = 0` contributes
/// `y(S) Diag(x_S) / |S|` instead, which keeps `tr M = 1ᵀy` and adds
/// nothing to `⟨√w√wᵀ, M⟩`.
pub fn build_theorem2_matrix(
    g: &Graph,
    w: &WeightVector,
    coloring: &FractionalColoring,
) -> Result<Theorem2Certificate> {
    let n = g.n();
    w.check_len(n)?;
    coloring.verify(g, true, 1e-9).map_err(|e| {
        Error::Precondition(format!("coloring is not in equality form: {e}"))
    })?;
    let s = w.sqrt();
    let wv = w.as_slice();
    let mut m = SymMatrix::zeros(n);
    for (set, &y) in coloring.cocliques.iter().zip(&coloring.weights) {
        if y == 0.0 || set.is_empty() {
            continue;
        }
        let ws: f64 = set.iter().map(|&v| wv[v]).sum();
        if ws > 0.0 {
            for &a in set {
                for &b in set {
                    if a <= b {
                        let cur = m.get(a, b);
                        m.set(a, b, cur + y * s[a] * s[b] / ws);
                    }
                }
            }
        } else {
            let d = y / set.len() as f64;
            for &a in set {
                let cur = m.get(a, a);
                m.set(a, a, cur + d);
            }
        }
    }
    let k = coloring.value();
    let trace_value = m.trace();
    let objective_value = m.quadratic_form(&s);
    let e = eigh(&m)?;
    let edge = g.edges().iter().fold(0.0_f64, |a, &(i, j)| a.max(m.get(i, j).abs()));
    let ms = m.mul_vec(&s);
    let fixed = ms.iter().zip(&s).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
    let s_norm = s.iter().map(|x| x * x).sum::<f64>().sqrt();

    let mut checks = BTreeMap::new();
    checks.insert("trace".to_string(), (trace_value - k).abs());
    checks.insert("min_eigenvalue".to_string(), e.min());
    checks.insert("max_eigenvalue".to_string(), e.max());
    checks.insert("edge_entries".to_string(), edge);
    checks.insert("objective".to_string(), (objective_value - w.sum()).abs());
    checks.insert("fixed_point".to_string(), fixed);

    let fail = |claim: &str, detail: String| Err(Error::certification(claim, detail));
    if (trace_value - k).abs() > CERT_TOL {
        return fail("tr M = chi_f", format!("trace {trace_value}, chi_f {k}"));
    }
    if e.min() < -CERT_TOL || e.max() > 1.0 + CERT_TOL {
        return fail("0 <= M <= I", format!("spectrum [{}, {}]", e.min(), e.max()));
    }
    if edge > EDGE_TOL {
        return fail("M_ij = 0 on edges", format!("max edge entry {edge:e}"));
    }
    if (objective_value - w.sum()).abs() > CERT_TOL {
        return fail(
            "<sqrt(w) sqrt(w)^T, M> = w^T 1",
            format!("objective {objective_value}, w^T 1 {}", w.sum()),
        );
    }
    if fixed > CERT_TOL * s_norm.max(f64::MIN_POSITIVE) && s_norm > 0.0 {
        return fail("M sqrt(w) = sqrt(w)", format!("residual {fixed:e}"));
    }
    Ok(Theorem2Certificate {
        m,
        k,
        w: w.clone(),
        trace_value,
        objective_value,
        checks,
    })
}

/// Theorem-2 certificate for `w` from the graph's own optimal fractional
/// coloring.
pub fn theorem2_for_weights(g: &Graph, w: &WeightVector) -> Result<Theorem2Certificate> {
    let fc = chromatic::fractional_chromatic(g)?;
    let eq = chromatic::equality_form(&fc.witness, g)?;
    build_theorem2_matrix(g, w, &eq)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub trace_deviation: f64,
    pub max_edge_entry: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub objective: f64,
    pub passed: bool,
}

/// Checks `tr X = k`, `X_ij = 0` on edges and `0 ≼ X ≼ I` at `1e-6`, and
/// reports `⟨√w√wᵀ, X⟩`.
pub fn verify_dual_feasible(g: &Graph, x: &SymMatrix, k: f64, w: &WeightVector) -> Result<FeasibilityReport> {
    let n = g.n();
    w.check_len(n)?;
    if x.n() != n {
        return Err(Error::invalid("X order does not match the graph"));
    }
    let e = eigh(x)?;
    let trace_deviation = (x.trace() - k).abs();
    let max_edge_entry = g.edges().iter().fold(0.0_f64, |a, &(i, j)| a.max(x.get(i, j).abs()));
    let objective = x.quadratic_form(&w.sqrt());
    let passed = trace_deviation <= FEASIBLE_TOL
        && max_edge_entry <= FEASIBLE_TOL
        && e.min() >= -FEASIBLE_TOL
        && e.max() <= 1.0 + FEASIBLE_TOL;
    Ok(FeasibilityReport {
        trace_deviation,
        max_edge_entry,
        min_eigenvalue: e.min(),
        max_eigenvalue: e.max(),
        objective,
        passed,
    })
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Timings {
    pub theta: f64,
    pub chromatic: f64,
    pub bracket: f64,
    pub total: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChainReport {
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub alpha: usize,
    pub theta: f64,
    pub theta_complement: f64,
    pub chi_f: f64,
    pub chi_f_rational: Option<String>,
    pub chi: usize,
    pub hoffman_adj: usize,
    pub ratio_adj: f64,
    pub h_lo: i64,
    pub h_hi: i64,
    pub chain_ok: bool,
    pub bracket: HBracket,
    pub timings: Timings,
}

/// Computes every parameter and checks
/// `⌈ϑ(Ḡ) − 1e-6⌉ <= lo <= hi = ⌈χ_f⌉ <= χ`. Any violation is an error
/// carrying the full report.
pub fn verify_chain(g: &Graph, budget: &SearchBudget, seed: u64) -> Result<ChainReport> {
    if g.n() == 0 {
        return Err(Error::invalid("chain verification needs n >= 1"));
    }
    let start = Instant::now();
    let t = Instant::now();
    let theta_g = theta::lovasz_theta(g)?;
    let theta_time = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let alpha = chromatic::stability_number(g)?;
    let chi = chromatic::chromatic_number(g)?;
    let chromatic_time = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let bracket = hoffman::h_bracket(g, budget, seed)?;
    let bracket_time = t.elapsed().as_secs_f64();

    let (hoffman_adj, ratio_adj) = if g.edge_count() == 0 {
        (1, 1.0)
    } else {
        let a = g.adjacency_matrix();
        (hoffman::hoffman_bound(&a)?, hoffman::ratio_bound(&a)?)
    };

    let chi_f_ceil = bracket.chi_f.ceil();
    let theta_ceil = crate::ceil_tol(bracket.theta_complement);
    let chain_ok = theta_ceil <= bracket.lo
        && bracket.lo <= bracket.hi
        && bracket.hi == chi_f_ceil
        && chi_f_ceil <= chi as i64;

    let report = ChainReport {
        graph6: encode_graph6(g),
        n: g.n(),
        m: g.edge_count(),
        alpha,
        theta: theta_g,
        theta_complement: bracket.theta_complement,
        chi_f: bracket.chi_f.best_value(),
        chi_f_rational: bracket.chi_f.rational_string(),
        chi,
        hoffman_adj,
        ratio_adj,
        h_lo: bracket.lo,
        h_hi: bracket.hi,
        chain_ok,
        timings: Timings {
            theta: theta_time,
            chromatic: chromatic_time,
            bracket: bracket_time,
            total: start.elapsed().as_secs_f64(),
        },
        bracket,
    };
    if !chain_ok {
        return Err(Error::ChainViolation(format!(
            "ceil(theta(complement)) = {theta_ceil}, h in [{}, {}], ceil(chi_f) = {chi_f_ceil}, chi = {chi}; report: {}",
            report.h_lo,
            report.h_hi,
            serde_json::to_string(&report).unwrap_or_default()
        )));
    }
    Ok(report)
}
