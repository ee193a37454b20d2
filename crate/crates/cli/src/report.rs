//! Report types and their JSON, CSV and text renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use spectral_chroma::certify::ChainReport;
use spectral_chroma::SymMatrix;

pub const SCHEMA: u32 = 1;

/// Fixed batch/bounds CSV header.
pub const CSV_COLUMNS: [&str; 15] = [
    "name",
    "n",
    "m",
    "alpha",
    "theta",
    "theta_complement",
    "chi_f",
    "chi_f_rational",
    "chi",
    "hoffman_adj",
    "ratio_adj",
    "h_lo",
    "h_hi",
    "chain_ok",
    "seconds",
];

/// Rounds to 9 significant digits.
pub fn sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.8e}").parse().unwrap_or(x)
}

fn sig_text(x: f64) -> String {
    format!("{}", sig(x))
}

pub fn matrix(m: &SymMatrix) -> Vec<Vec<f64>> {
    (0..m.n()).map(|i| m.row(i).into_iter().map(sig).collect()).collect()
}

/// `"p/q"` when a verified rational exists, the rounded real otherwise.
fn rational_or_real(rational: &Option<String>, value: f64) -> Value {
    match rational {
        Some(s) => Value::String(s.clone()),
        None => serde_json::json!(sig(value)),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timing {
    pub theta: f64,
    pub chromatic: f64,
    pub bracket: f64,
    pub total: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub schema: u32,
    pub command: &'static str,
    pub name: String,
    pub graph6: String,
    pub n: usize,
    pub m: usize,
    pub alpha: usize,
    pub theta: f64,
    pub theta_complement: f64,
    pub chi_f: Value,
    pub chi_f_value: f64,
    pub chi: usize,
    pub hoffman_adj: usize,
    pub ratio_adj: f64,
    pub h_bracket: [i64; 2],
    pub chain_ok: bool,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
}

impl BoundsReport {
    pub fn new(name: &str, r: &ChainReport, seed: u64) -> Self {
        BoundsReport {
            schema: SCHEMA,
            command: "bounds",
            name: name.to_string(),
            graph6: r.graph6.clone(),
            n: r.n,
            m: r.m,
            alpha: r.alpha,
            theta: sig(r.theta),
            theta_complement: sig(r.theta_complement),
            chi_f: rational_or_real(&r.chi_f_rational, r.chi_f),
            chi_f_value: sig(r.chi_f),
            chi: r.chi,
            hoffman_adj: r.hoffman_adj,
            ratio_adj: sig(r.ratio_adj),
            h_bracket: [r.h_lo, r.h_hi],
            chain_ok: r.chain_ok,
            seed,
            timings: None,
            generated_unix: None,
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let chi_f = match &self.chi_f {
            Value::String(r) => format!("{r} ({})", self.chi_f_value),
            v => v.to_string(),
        };
        let rows: [(&str, String); 13] = [
            ("graph", format!("{} ({})", self.name, self.graph6)),
            ("vertices", self.n.to_string()),
            ("edges", self.m.to_string()),
            ("alpha", self.alpha.to_string()),
            ("theta", self.theta.to_string()),
            ("theta(complement)", self.theta_complement.to_string()),
            ("chi_f", chi_f),
            ("chi", self.chi.to_string()),
            ("hoffman(adjacency)", self.hoffman_adj.to_string()),
            ("ratio(adjacency)", self.ratio_adj.to_string()),
            ("h bracket", format!("[{}, {}]", self.h_bracket[0], self.h_bracket[1])),
            ("chain", if self.chain_ok { "ok" } else { "violation" }.to_string()),
            ("seed", self.seed.to_string()),
        ];
        for (k, v) in rows {
            let _ = writeln!(s, "{k:<20} {v}");
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(s, "{:<20} {:.3}", "seconds", t.total);
        }
        s
    }
}

/// One CSV row in [`CSV_COLUMNS`] order.
pub fn csv_row(name: &str, r: &ChainReport) -> Vec<String> {
    vec![
        name.to_string(),
        r.n.to_string(),
        r.m.to_string(),
        r.alpha.to_string(),
        sig_text(r.theta),
        sig_text(r.theta_complement),
        sig_text(r.chi_f),
        r.chi_f_rational.clone().unwrap_or_default(),
        r.chi.to_string(),
        r.hoffman_adj.to_string(),
        sig_text(r.ratio_adj),
        r.h_lo.to_string(),
        r.h_hi.to_string(),
        if r.chain_ok { "ok" } else { "violation" }.to_string(),
        format!("{:.3}", r.timings.total),
    ]
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub dual_x: Vec<Vec<f64>>,
    pub primal_z: Vec<Vec<f64>>,
    pub primal_y: Vec<Vec<f64>>,
    pub eta: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaKReport {
    pub schema: u32,
    pub command: &'static str,
    pub name: String,
    pub graph6: String,
    pub n: usize,
    pub k: f64,
    pub weights: Vec<f64>,
    pub value: f64,
    pub dual_value: f64,
    pub primal_value: f64,
    pub gap: f64,
    pub relative_gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
}

impl ThetaKReport {
    pub fn text(&self) -> String {
        let mut s = format!(
            "theta_{}({}) = {}\n  dual {}  primal {}  gap {:e}\n",
            self.k, self.name, self.value, self.dual_value, self.primal_value, self.gap
        );
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "  eta {}", w.eta);
            for (label, m) in [("X", &w.dual_x), ("Z", &w.primal_z), ("Y", &w.primal_y)] {
                let _ = writeln!(s, "  {label}:");
                for row in m {
                    let cells: Vec<String> = row.iter().map(|v| format!("{v:>12.6}")).collect();
                    let _ = writeln!(s, "   {}", cells.join(""));
                }
            }
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LoSummary {
    pub m: usize,
    pub source: String,
    pub value: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelProbe {
    pub m: usize,
    pub best_partial_sum: f64,
    pub certifies: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HBracketReport {
    pub schema: u32,
    pub command: &'static str,
    pub name: String,
    pub graph6: String,
    pub n: usize,
    pub h_bracket: [i64; 2],
    pub theta_complement: f64,
    pub chi_f: Value,
    pub chi_f_value: f64,
    pub lo_certificates: Vec<LoSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub probe: Option<LevelProbe>,
    /// Paths of the certificate files written, relative to the report.
    pub certificate_files: Vec<String>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_unix: Option<u64>,
}

impl HBracketReport {
    pub fn chi_f_from(rational: &Option<String>, value: f64) -> Value {
        rational_or_real(rational, value)
    }

    pub fn text(&self) -> String {
        let chi_f = match &self.chi_f {
            Value::String(r) => r.clone(),
            v => v.to_string(),
        };
        let mut s = format!(
            "h({}) in [{}, {}]\n  theta(complement) {}  chi_f {chi_f}\n",
            self.name, self.h_bracket[0], self.h_bracket[1], self.theta_complement
        );
        for c in &self.lo_certificates {
            let _ = writeln!(s, "  level {}: S = {} via {}", c.m, c.value, c.source);
        }
        if let Some(p) = &self.probe {
            let _ = writeln!(
                s,
                "  probe m = {}: best S = {} ({})",
                p.m,
                p.best_partial_sum,
                if p.certifies { "certifies" } else { "no certificate" }
            );
        }
        for f in &self.certificate_files {
            let _ = writeln!(s, "  wrote {f}");
        }
        s
    }
}
