//! Eigenvalue-sum bounds on the chromatic number.
//!
//! For an edge-supported symmetric `Z` with spectrum `λ₁ >= … >= λ_n`, the
//! partial sum `S(m) = λ₁ + λ_{n−m+2} + … + λ_n` is nonpositive whenever
//! `G` is `m`-colorable. `h(G)` is the least `m` for which this holds for
//! every such `Z`; [`h_bracket`] returns certified bounds on it.

mod search;

pub use search::{w_search_refute, z_search, ZSearchResult};

use serde::{Deserialize, Serialize};

use crate::certify::{build_theorem2_matrix, Theorem2Certificate};
use crate::chromatic::{self, FractionalChromatic};
use crate::error::{Error, Result};
use crate::graph::{encode_graph6, parse_graph6, Graph, WeightVector};
use crate::linalg::{eigh, SymMatrix};
use crate::theta;

/// A stored certificate must have `S(m) >` this at unit Frobenius norm.
pub const CERT_THRESHOLD: f64 = 1e-7;

/// Symmetric matrix supported on the edges of a graph (zero diagonal).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeMatrix(SymMatrix);

impl EdgeMatrix {
    pub fn new(g: &Graph, z: SymMatrix) -> Result<Self> {
        theta::check_edge_support(g, &z)?;
        Ok(EdgeMatrix(z))
    }

    pub fn adjacency(g: &Graph) -> Self {
        EdgeMatrix(g.adjacency_matrix())
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> SymMatrix {
        self.0
    }

    /// Scaled to unit Frobenius norm (unchanged if zero).
    pub fn normalized(&self) -> Self {
        let f = self.0.frobenius_norm();
        if f == 0.0 {
            self.clone()
        } else {
            EdgeMatrix(self.0.scaled(1.0 / f))
        }
    }
}

/// `λ₁ + Σ_{j=n−m+2}^{n} λ_j` of a descending spectrum.
pub fn hoffman_partial_sum(spectrum: &[f64], m: usize) -> Result<f64> {
    let n = spectrum.len();
    if m < 2 || m > n {
        return Err(Error::invalid(format!("m = {m} outside [2, {n}]")));
    }
    Ok(spectrum[0] + spectrum[n + 1 - m..].iter().sum::<f64>())
}

/// `S(m)` of `z`.
pub fn partial_sum_of(z: &SymMatrix, m: usize) -> Result<f64> {
    hoffman_partial_sum(&eigh(z)?.values, m)
}

fn nonzero(z: &SymMatrix) -> Result<()> {
    if z.n() == 0 || z.max_abs() == 0.0 {
        return Err(Error::invalid("Z must be nonzero"));
    }
    Ok(())
}

/// `1 + max{m ∈ [2, n] : S(m) > 1e-9 ‖Z‖_F}`, or 1 when no `m` qualifies.
pub fn hoffman_bound(z: &SymMatrix) -> Result<usize> {
    nonzero(z)?;
    let e = eigh(z)?;
    let tau = 1e-9 * z.frobenius_norm();
    let mut best = 1;
    for m in 2..=z.n() {
        if hoffman_partial_sum(&e.values, m)? > tau {
            best = m + 1;
        }
    }
    Ok(best)
}

/// `1 − λ₁/λ_n`.
pub fn ratio_bound(z: &SymMatrix) -> Result<f64> {
    nonzero(z)?;
    let e = eigh(z)?;
    if e.min() >= 0.0 {
        return Err(Error::invalid(format!("ratio bound needs λ_n < 0, got {}", e.min())));
    }
    Ok(1.0 - e.max() / e.min())
}

/// From `Z` with `S(m) > 0`, a weight vector with `ϑ_m(G; w) < wᵀ1`.
///
/// `Z` is conjugated by a ±1 diagonal so that its top eigenvector `v` is
/// nonnegative, then `√w = c v` with `c² = λ₁ − λ_n`. The strict inequality
/// is verified with the Ky Fan upper bound of a certified `ϑ_m` solve.
pub fn z_to_w(g: &Graph, z: &EdgeMatrix, m: usize) -> Result<WeightVector> {
    theta::check_edge_support(g, z.matrix())?;
    let e = eigh(z.matrix())?;
    let s = hoffman_partial_sum(&e.values, m)?;
    if !(s > 1e-12 * z.matrix().frobenius_norm()) {
        return Err(Error::Precondition(format!("S({m}) = {s:e} is not positive")));
    }
    let v = e.vector(0);
    let c2 = e.max() - e.min();
    let w = WeightVector::new(v.iter().map(|x| c2 * x * x).collect())?;
    let r = theta::theta_k(g, &w, m as f64)?;
    let total = w.sum();
    if r.primal_value < total - 1e-9 * (1.0 + total) {
        Ok(w)
    } else {
        Err(Error::certification(
            "theta_m(G;w) < w^T 1",
            format!("theta_{m} <= {}, w^T 1 = {total}", r.primal_value),
        ))
    }
}

/// From `w` with `ϑ_m(G; w) < wᵀ1 − 1e-6`, the edge matrix `−Z` of an
/// optimal upper-bound witness, normalized and checked to have
/// `S(m) > 1e-7`.
pub fn w_to_z(g: &Graph, w: &WeightVector, m: usize) -> Result<EdgeMatrix> {
    let r = theta::theta_k(g, w, m as f64)?;
    let total = w.sum();
    if !(r.value < total - 1e-6) {
        return Err(Error::Precondition(format!(
            "theta_{m}(G;w) = {} is not below w^T 1 = {total}",
            r.value
        )));
    }
    let z = EdgeMatrix::new(g, r.primal_z.scaled(-1.0))?.normalized();
    let e = eigh(z.matrix())?;
    let s = hoffman_partial_sum(&e.values, m)?;
    if s > CERT_THRESHOLD {
        Ok(z)
    } else {
        Err(Error::certification(
            format!("S({m})(-Z) > 0"),
            format!("S = {s:e}, spectrum {:?}", e.values),
        ))
    }
}

/// Smallest integer `k >= 1` with `ϑ_k(G; w) >= wᵀ1 − 1e-6`, by binary
/// search over the nondecreasing map `k ↦ ϑ_k`.
pub fn min_k_for_weight(g: &Graph, w: &WeightVector) -> Result<usize> {
    w.check_len(g.n())?;
    if w.is_zero() {
        return Err(Error::Precondition("w must be nonzero".into()));
    }
    let total = w.sum();
    let (mut lo, mut hi) = (1, g.n());
    while lo < hi {
        let mid = (lo + hi) / 2;
        if theta::theta_k(g, w, mid as f64)?.value >= total - 1e-6 {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub restarts: usize,
    pub iterations: usize,
    pub w_restarts: usize,
    pub w_iterations: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            restarts: 20,
            iterations: 500,
            w_restarts: 4,
            w_iterations: 25,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateSource {
    ZSearch,
    WeightRefutation,
}

/// Witness that `h(G) >= m + 1`: an edge matrix with `S(m) > 1e-7`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoCertificate {
    pub graph6: String,
    pub m: usize,
    pub source: CertificateSource,
    /// Unit Frobenius norm.
    pub z: EdgeMatrix,
    /// The refuting weights, for [`CertificateSource::WeightRefutation`].
    pub w: Option<WeightVector>,
    pub value: f64,
    pub tol: f64,
}

impl LoCertificate {
    /// Re-checks support and positivity from a fresh eigendecomposition.
    pub fn verify(&self) -> Result<f64> {
        let g = parse_graph6(&self.graph6)?;
        theta::check_edge_support(&g, self.z.matrix())?;
        let z = self.z.normalized();
        let s = partial_sum_of(z.matrix(), self.m)?;
        if s > self.tol {
            Ok(s)
        } else {
            Err(Error::certification(
                format!("S({}) > {}", self.m, self.tol),
                format!("recomputed S = {s:e}"),
            ))
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Parses and re-verifies.
    pub fn from_json(text: &str) -> Result<Self> {
        let c: LoCertificate = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("certificate JSON: {e}")))?;
        c.verify()?;
        Ok(c)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HBracket {
    pub lo: i64,
    pub hi: i64,
    pub theta_complement: f64,
    pub chi_f: FractionalChromatic,
    pub lo_certificates: Vec<LoCertificate>,
    pub hi_certificate: Theorem2Certificate,
}

/// Certified `[lo, hi]` around `h(G)`.
///
/// `hi = ⌈χ_f⌉` with the coclique matrix attached. `lo` is the larger of
/// `⌈ϑ(Ḡ) − 1e-6⌉` and `1 + m` for the highest level `m < hi` with a
/// verified `S(m) > 0` certificate, found first by [`z_search`], then by
/// [`w_search_refute`] followed by [`w_to_z`]. Levels are tried from the
/// top down and the search stops at the first certificate.
pub fn h_bracket(g: &Graph, budget: &SearchBudget, seed: u64) -> Result<HBracket> {
    let n = g.n();
    if n == 0 {
        return Err(Error::invalid("h_bracket needs n >= 1"));
    }
    if n > chromatic::MAX_VERTICES {
        return Err(Error::SizeLimit {
            n,
            limit: chromatic::MAX_VERTICES,
        });
    }
    let chi_f = chromatic::fractional_chromatic(g)?;
    let hi = chi_f.ceil();
    let eq = chromatic::equality_form(&chi_f.witness, g)?;
    let hi_certificate = build_theorem2_matrix(g, &WeightVector::ones(n), &eq)?;
    let theta_complement = theta::lovasz_theta(&g.complement())?;

    let floor = crate::ceil_tol(theta_complement).max(1);
    let mut lo = floor;
    let mut lo_certificates = Vec::new();
    if g.edge_count() > 0 {
        for m in (floor.max(2)..hi).rev() {
            if let Some(c) = certify_level(g, m as usize, budget, seed)? {
                lo_certificates.push(c);
                lo = m + 1;
                break;
            }
        }
    }
    if lo > hi {
        return Err(Error::Consistency(format!(
            "h bracket inverted: lo {lo} > hi {hi} (theta(complement) = {theta_complement}, chi_f = {})",
            chi_f.value
        )));
    }
    Ok(HBracket {
        lo,
        hi,
        theta_complement,
        chi_f,
        lo_certificates,
        hi_certificate,
    })
}

fn certify_level(g: &Graph, m: usize, budget: &SearchBudget, seed: u64) -> Result<Option<LoCertificate>> {
    let graph6 = encode_graph6(g);
    let found = z_search(g, m, budget.restarts, budget.iterations, seed)?;
    if found.value > CERT_THRESHOLD {
        let c = LoCertificate {
            graph6,
            m,
            source: CertificateSource::ZSearch,
            value: found.value,
            z: found.z,
            w: None,
            tol: CERT_THRESHOLD,
        };
        c.verify()?;
        return Ok(Some(c));
    }
    let Some(w) = w_search_refute(g, m, budget.w_restarts, budget.w_iterations, seed)? else {
        return Ok(None);
    };
    match w_to_z(g, &w, m) {
        Ok(z) => {
            let value = partial_sum_of(z.matrix(), m)?;
            let c = LoCertificate {
                graph6,
                m,
                source: CertificateSource::WeightRefutation,
                z,
                w: Some(w),
                value,
                tol: CERT_THRESHOLD,
            };
            c.verify()?;
            Ok(Some(c))
        }
        Err(Error::Certification { .. } | Error::Precondition(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
