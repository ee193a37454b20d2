//! Block-diagonal semidefinite programs in equality standard form and a
//! dense primal-dual interior-point solver for them.
//!
//! A program is
//!
//! ```text
//!   max/min ⟨C, X⟩   s.t.   ⟨A_i, X⟩ = b_i,   X = diag(X_1, …, X_p) ≽ 0,
//! ```
//!
//! with symmetric data listed as sparse triplets. The dual is written with
//! a slack `S ≽ 0`: `S = C − Σ y_i A_i` for `min`, `S = Σ y_i A_i − C` for
//! `max`, so that `bᵀy` bounds `⟨C, X⟩` from the correct side in both senses.
//!
//! # JSON
//!
//! [`BlockSdp`] round-trips through serde:
//!
//! ```json
//! { "blocks": [2], "sense": "minimize",
//!   "objective": [ {"block": 0, "row": 0, "col": 0, "value": 1.0},
//!                  {"block": 0, "row": 1, "col": 1, "value": 1.0} ],
//!   "constraints": [ { "entries": [ {"block": 0, "row": 0, "col": 0, "value": 1.0} ],
//!                      "rhs": 1.0 } ] }
//! ```
//!
//! An entry with `row != col` sets both mirrored positions, so it contributes
//! `2 · value · X[row][col]` to an inner product.

mod check;
mod solver;

pub use check::{check_solution, CheckReport};
pub use solver::{solve_sdp, solve_sdp_with, SolverOptions};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
pub use crate::lp::Sense;
use crate::linalg::SymMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub block: usize,
    pub row: usize,
    pub col: usize,
    pub value: f64,
}

impl Entry {
    pub fn new(block: usize, row: usize, col: usize, value: f64) -> Self {
        Entry { block, row, col, value }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub entries: Vec<Entry>,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSdp {
    pub blocks: Vec<usize>,
    pub sense: Sense,
    pub objective: Vec<Entry>,
    pub constraints: Vec<Constraint>,
}

impl BlockSdp {
    pub fn new(blocks: Vec<usize>, sense: Sense) -> Self {
        BlockSdp {
            blocks,
            sense,
            objective: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn add_constraint(&mut self, entries: Vec<Entry>, rhs: f64) {
        self.constraints.push(Constraint { entries, rhs });
    }

    pub fn validate(&self) -> Result<()> {
        if self.blocks.is_empty() || self.blocks.contains(&0) {
            return Err(Error::invalid("SDP needs at least one block, all of positive order"));
        }
        if self.constraints.is_empty() {
            return Err(Error::invalid("SDP needs at least one constraint"));
        }
        let check = |e: &Entry| -> Result<()> {
            let dim = *self.blocks.get(e.block).ok_or_else(|| {
                Error::invalid(format!("entry refers to missing block {}", e.block))
            })?;
            if e.row >= dim || e.col >= dim {
                return Err(Error::invalid(format!(
                    "entry ({}, {}) outside block {} of order {dim}",
                    e.row, e.col, e.block
                )));
            }
            if !e.value.is_finite() {
                return Err(Error::invalid("SDP data must be finite"));
            }
            Ok(())
        };
        for e in &self.objective {
            check(e)?;
        }
        for c in &self.constraints {
            if !c.rhs.is_finite() {
                return Err(Error::invalid("SDP data must be finite"));
            }
            for e in &c.entries {
                check(e)?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("SDP serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: BlockSdp = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("SDP JSON: {e}")))?;
        p.validate()?;
        Ok(p)
    }

    /// `max(|C|, |A_i|, |b|)` entrywise.
    pub fn data_norm_inf(&self) -> f64 {
        let mut m: f64 = 0.0;
        for e in &self.objective {
            m = m.max(e.value.abs());
        }
        for c in &self.constraints {
            m = m.max(c.rhs.abs());
            for e in &c.entries {
                m = m.max(e.value.abs());
            }
        }
        m
    }

    pub fn objective_matrix(&self) -> BlockMatrix {
        BlockMatrix::from_entries(&self.blocks, &self.objective)
    }

    /// `⟨A_i, X⟩` for every constraint.
    pub fn apply(&self, x: &BlockMatrix) -> Vec<f64> {
        self.constraints.iter().map(|c| entries_dot(&c.entries, x)).collect()
    }

    /// `Σ y_i A_i`.
    pub fn adjoint(&self, y: &[f64]) -> BlockMatrix {
        let mut out = BlockMatrix::zeros(&self.blocks);
        for (c, &yi) in self.constraints.iter().zip(y) {
            for e in &c.entries {
                let b = &mut out.blocks[e.block];
                let v = b.get(e.row, e.col) + yi * e.value;
                b.set(e.row, e.col, v);
            }
        }
        out
    }

    pub fn rhs(&self) -> Vec<f64> {
        self.constraints.iter().map(|c| c.rhs).collect()
    }
}

/// `⟨A, X⟩` for `A` given as triplets (mirrored off-diagonal entries count
/// twice).
pub fn entries_dot(entries: &[Entry], x: &BlockMatrix) -> f64 {
    entries
        .iter()
        .map(|e| {
            let f = if e.row == e.col { 1.0 } else { 2.0 };
            f * e.value * x.blocks[e.block].get(e.row, e.col)
        })
        .sum()
}

/// Block-diagonal symmetric matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockMatrix {
    pub blocks: Vec<SymMatrix>,
}

impl BlockMatrix {
    pub fn zeros(dims: &[usize]) -> Self {
        BlockMatrix {
            blocks: dims.iter().map(|&d| SymMatrix::zeros(d)).collect(),
        }
    }

    pub fn scaled_identity(dims: &[usize], c: f64) -> Self {
        BlockMatrix {
            blocks: dims.iter().map(|&d| SymMatrix::identity(d).scaled(c)).collect(),
        }
    }

    /// Sums duplicate triplets.
    pub fn from_entries(dims: &[usize], entries: &[Entry]) -> Self {
        let mut m = Self::zeros(dims);
        for e in entries {
            let b = &mut m.blocks[e.block];
            let v = b.get(e.row, e.col) + e.value;
            b.set(e.row, e.col, v);
        }
        m
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.n()).collect()
    }

    pub fn dot(&self, other: &BlockMatrix) -> f64 {
        self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.dot(b)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn add_scaled(&self, c: f64, other: &BlockMatrix) -> BlockMatrix {
        BlockMatrix {
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add_scaled(c, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &BlockMatrix) -> BlockMatrix {
        self.add_scaled(-1.0, other)
    }

    pub fn scaled(&self, c: f64) -> BlockMatrix {
        BlockMatrix {
            blocks: self.blocks.iter().map(|b| b.scaled(c)).collect(),
        }
    }

    /// Smallest eigenvalue over all blocks.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        let mut m = f64::INFINITY;
        for b in &self.blocks {
            m = m.min(crate::linalg::eigh(b)?.min());
        }
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SdpStatus {
    /// All residuals and the relative gap are within the acceptance level.
    Optimal,
    /// Best iterate returned after the iteration cap without meeting it.
    Inaccurate,
    /// The normal equations broke down before the acceptance level was met.
    Failed,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SdpSolution {
    pub status: SdpStatus,
    pub x: BlockMatrix,
    pub y: Vec<f64>,
    pub s: BlockMatrix,
    pub primal_objective: f64,
    pub dual_objective: f64,
    /// `‖b − A(X)‖₂ / (1 + ‖b‖₂)`.
    pub primal_residual: f64,
    /// `‖S − (±)(C − A*y)‖_F / (1 + ‖C‖_F)`.
    pub dual_residual: f64,
    /// `|p − d| / (1 + |p| + |d|)`.
    pub gap: f64,
    pub iterations: usize,
}

impl SdpSolution {
    pub fn is_optimal(&self) -> bool {
        self.status == SdpStatus::Optimal
    }

    /// Midpoint of the primal and dual objectives.
    pub fn value(&self) -> f64 {
        0.5 * (self.primal_objective + self.dual_objective)
    }

    pub fn into_result(self) -> Result<Self> {
        match self.status {
            SdpStatus::Optimal => Ok(self),
            _ => Err(Error::Solver(format!(
                "SDP {:?} after {} iterations: pres {:.2e}, dres {:.2e}, gap {:.2e}",
                self.status, self.iterations, self.primal_residual, self.dual_residual, self.gap
            ))),
        }
    }
}
