//! Dense two-phase primal simplex with Bland's rule.
//!
//! Rows keep their native relation (`<=`, `=`, `>=`); every row owns one
//! identity column (its slack for `<=`, its artificial otherwise), which lets
//! the final tableau yield row duals directly from reduced costs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinearProgram {
    pub sense: Sense,
    pub cost: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
    pub relations: Vec<Relation>,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<Option<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    pub x: Vec<f64>,
    /// One multiplier per user row, in the sign convention of `sense`
    /// (for a minimization, `>=` rows have nonnegative duals).
    pub duals: Vec<f64>,
    pub objective: f64,
    pub dual_objective: f64,
    /// Basic column indices of the final tableau, row by row.
    pub basis: Vec<usize>,
    pub iterations: usize,
}

impl LinearProgram {
    pub fn new(sense: Sense, cost: Vec<f64>) -> Self {
        let n = cost.len();
        LinearProgram {
            sense,
            cost,
            rows: Vec::new(),
            relations: Vec::new(),
            rhs: Vec::new(),
            lower: vec![0.0; n],
            upper: vec![None; n],
        }
    }

    pub fn add_row(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        self.rows.push(coeffs);
        self.relations.push(relation);
        self.rhs.push(rhs);
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: f64, upper: Option<f64>) -> &mut Self {
        self.lower[var] = lower;
        self.upper[var] = upper;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.cost.len();
        let m = self.rows.len();
        if self.relations.len() != m || self.rhs.len() != m {
            return Err(Error::invalid("row, relation and rhs counts differ"));
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(Error::invalid("bound vectors must match the variable count"));
        }
        if let Some(i) = self.rows.iter().position(|r| r.len() != n) {
            return Err(Error::invalid(format!("row {i} has the wrong length")));
        }
        let finite = self.cost.iter().chain(self.rhs.iter()).chain(self.lower.iter())
            .chain(self.rows.iter().flatten())
            .chain(self.upper.iter().flatten())
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::invalid("linear program data must be finite"));
        }
        for (j, (l, u)) in self.lower.iter().zip(&self.upper).enumerate() {
            if matches!(u, Some(u) if u < l) {
                return Err(Error::invalid(format!("variable {j} has upper < lower")));
            }
        }
        Ok(())
    }
}

const PIVOT_EPS: f64 = 1e-9;
const COST_EPS: f64 = 1e-9;

struct Tableau {
    /// `(rows) × (cols + 1)`, last column is the right-hand side.
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    cols: usize,
    iterations: usize,
    max_iterations: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.t[i][self.cols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c];
        for x in self.t[r].iter_mut() {
            *x /= p;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= f * y;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
        self.iterations += 1;
    }

    /// Reduced costs `d_j = c_j − c_Bᵀ B⁻¹ A_j` for all columns.
    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut d = cost.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost[b];
            if cb != 0.0 {
                for (dj, tij) in d.iter_mut().zip(&self.t[i][..self.cols]) {
                    *dj -= cb * tij;
                }
            }
        }
        d
    }

    /// Minimizes `cost` over the current basis, only letting columns with
    /// `allowed[j]` enter.
    fn run(&mut self, cost: &[f64], allowed: &[bool]) -> Result<Outcome> {
        loop {
            if self.iterations > self.max_iterations {
                return Err(Error::Lp(format!(
                    "iteration limit {} exceeded (cycling guard)",
                    self.max_iterations
                )));
            }
            let d = self.reduced_costs(cost);
            let Some(enter) = (0..self.cols).find(|&j| allowed[j] && d[j] < -COST_EPS) else {
                return Ok(Outcome::Optimal);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.t.len() {
                let a = self.t[i][enter];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((r, best)) => {
                            if ratio < best - 1e-12
                                || (ratio <= best + 1e-12 && self.basis[i] < self.basis[r])
                            {
                                Some((i, ratio))
                            } else {
                                Some((r, best))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Ok(Outcome::Unbounded),
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

/// Solves `p` to optimality, or reports infeasibility / unboundedness.
pub fn solve_lp(p: &LinearProgram) -> Result<LpSolution> {
    p.validate()?;
    let n = p.num_vars();

    // shift x = x' + lower, append upper-bound rows x'_j <= u_j - l_j
    let mut rows: Vec<Vec<f64>> = p.rows.clone();
    let mut rels = p.relations.clone();
    let mut rhs: Vec<f64> = p
        .rows
        .iter()
        .zip(&p.rhs)
        .map(|(r, b)| b - r.iter().zip(&p.lower).map(|(a, l)| a * l).sum::<f64>())
        .collect();
    for (j, u) in p.upper.iter().enumerate() {
        if let Some(u) = u {
            let mut r = vec![0.0; n];
            r[j] = 1.0;
            rows.push(r);
            rels.push(Relation::Le);
            rhs.push(u - p.lower[j]);
        }
    }
    let m = rows.len();
    let user_rows = p.rows.len();

    // b >= 0
    let mut flip = vec![1.0; m];
    for i in 0..m {
        if rhs[i] < 0.0 {
            flip[i] = -1.0;
            rhs[i] = -rhs[i];
            rows[i].iter_mut().for_each(|a| *a = -*a);
            rels[i] = match rels[i] {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    // column layout: structural | slack/surplus (Le, Ge rows) | artificial (Ge, Eq rows)
    let n_slack = rels.iter().filter(|r| **r != Relation::Eq).count();
    let n_art = rels.iter().filter(|r| **r != Relation::Le).count();
    let cols = n + n_slack + n_art;
    let mut t = vec![vec![0.0; cols + 1]; m];
    let mut basis = vec![0; m];
    let mut identity_col = vec![0; m];
    let (mut s, mut a) = (n, n + n_slack);
    for i in 0..m {
        t[i][..n].copy_from_slice(&rows[i]);
        t[i][cols] = rhs[i];
        match rels[i] {
            Relation::Le => {
                t[i][s] = 1.0;
                basis[i] = s;
                identity_col[i] = s;
                s += 1;
            }
            Relation::Ge => {
                t[i][s] = -1.0;
                s += 1;
                t[i][a] = 1.0;
                basis[i] = a;
                identity_col[i] = a;
                a += 1;
            }
            Relation::Eq => {
                t[i][a] = 1.0;
                basis[i] = a;
                identity_col[i] = a;
                a += 1;
            }
        }
    }
    let is_art = |j: usize| j >= n + n_slack;
    let mut tab = Tableau {
        t,
        basis,
        cols,
        iterations: 0,
        max_iterations: 50_000 + 200 * (m + cols),
    };

    // phase 1
    if n_art > 0 {
        let cost1: Vec<f64> = (0..cols).map(|j| if is_art(j) { 1.0 } else { 0.0 }).collect();
        let allowed = vec![true; cols];
        tab.run(&cost1, &allowed)?;
        let infeas: f64 = (0..m).filter(|&i| is_art(tab.basis[i])).map(|i| tab.rhs(i)).sum();
        let bnorm = rhs.iter().map(|x| x * x).sum::<f64>().sqrt();
        if infeas > 1e-9 * (1.0 + bnorm) {
            return Ok(LpSolution {
                status: LpStatus::Infeasible,
                x: vec![],
                duals: vec![],
                objective: f64::NAN,
                dual_objective: f64::NAN,
                basis: tab.basis.clone(),
                iterations: tab.iterations,
            });
        }
        // drive remaining artificials out where possible; rows where it is
        // impossible are redundant and keep a zero-valued artificial
        for i in 0..m {
            if is_art(tab.basis[i]) {
                if let Some(j) = (0..n + n_slack).find(|&j| tab.t[i][j].abs() > PIVOT_EPS) {
                    tab.pivot(i, j);
                }
            }
        }
    }

    // phase 2 (always minimize)
    let sign = match p.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut cost2 = vec![0.0; cols];
    for j in 0..n {
        cost2[j] = sign * p.cost[j];
    }
    let allowed: Vec<bool> = (0..cols).map(|j| !is_art(j)).collect();
    let outcome = tab.run(&cost2, &allowed)?;
    if let Outcome::Unbounded = outcome {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: vec![],
            duals: vec![],
            objective: sign * f64::NEG_INFINITY,
            dual_objective: f64::NAN,
            basis: tab.basis.clone(),
            iterations: tab.iterations,
        });
    }

    let mut xs = vec![0.0; n];
    for (i, &b) in tab.basis.iter().enumerate() {
        if b < n {
            xs[b] = tab.rhs(i);
        }
    }
    let x: Vec<f64> = xs.iter().zip(&p.lower).map(|(v, l)| v + l).collect();
    let objective: f64 = x.iter().zip(&p.cost).map(|(a, b)| a * b).sum();

    let d = tab.reduced_costs(&cost2);
    // y_i (minimization, standardized rows) = -d(identity column); an
    // artificial identity column has zero phase-2 cost, as does a slack.
    let y_std: Vec<f64> = (0..m).map(|i| -d[identity_col[i]]).collect();
    let shift: f64 = p.cost.iter().zip(&p.lower).map(|(c, l)| c * l).sum();
    let dual_std: f64 = y_std.iter().zip(&rhs).map(|(y, b)| y * b).sum();
    let dual_objective = sign * dual_std + shift;
    let duals = (0..user_rows).map(|i| sign * flip[i] * y_std[i]).collect();

    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        duals,
        objective,
        dual_objective,
        basis: tab.basis.clone(),
        iterations: tab.iterations,
    })
}

/// Max absolute row violation of `x` for `p`.
pub fn primal_residual(p: &LinearProgram, x: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for ((row, rel), b) in p.rows.iter().zip(&p.relations).zip(&p.rhs) {
        let ax: f64 = row.iter().zip(x).map(|(a, v)| a * v).sum();
        let v = match rel {
            Relation::Le => (ax - b).max(0.0),
            Relation::Ge => (b - ax).max(0.0),
            Relation::Eq => (ax - b).abs(),
        };
        worst = worst.max(v);
    }
    for (j, v) in x.iter().enumerate() {
        worst = worst.max(p.lower[j] - v);
        if let Some(u) = p.upper[j] {
            worst = worst.max(v - u);
        }
    }
    worst
}

/// `Σ |y_i · (a_iᵀx − b_i)|` over user rows.
pub fn complementary_slackness(p: &LinearProgram, sol: &LpSolution) -> f64 {
    p.rows
        .iter()
        .zip(&p.rhs)
        .zip(&sol.duals)
        .map(|((row, b), y)| {
            let ax: f64 = row.iter().zip(&sol.x).map(|(a, v)| a * v).sum();
            (y * (ax - b)).abs()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_certified(p: &LinearProgram, s: &LpSolution) {
        assert_eq!(s.status, LpStatus::Optimal);
        let bn = p.rhs.iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!(primal_residual(p, &s.x) <= 1e-9 * (1.0 + bn));
        assert!(complementary_slackness(p, s) <= 1e-8);
        assert!((s.objective - s.dual_objective).abs() <= 1e-8 * (1.0 + s.objective.abs()));
    }

    #[test]
    fn single_bound() {
        let mut p = LinearProgram::new(Sense::Minimize, vec![1.0]);
        p.add_row(vec![1.0], Relation::Ge, 3.0);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.x, vec![3.0]);
        assert_eq!(s.objective, 3.0);
        assert_eq!(s.duals, vec![1.0]);
        assert_certified(&p, &s);
    }

    #[test]
    fn triangle_cover() {
        let mut p = LinearProgram::new(Sense::Minimize, vec![1.0; 3]);
        for v in 0..3 {
            let mut r = vec![0.0; 3];
            r[v] = 1.0;
            p.add_row(r, Relation::Ge, 1.0);
        }
        let s = solve_lp(&p).unwrap();
        assert!((s.objective - 3.0).abs() < 1e-12);
        assert_certified(&p, &s);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut p = LinearProgram::new(Sense::Minimize, vec![1.0]);
        p.add_row(vec![1.0], Relation::Le, -1.0);
        assert_eq!(solve_lp(&p).unwrap().status, LpStatus::Infeasible);

        let mut q = LinearProgram::new(Sense::Maximize, vec![1.0, 1.0]);
        q.add_row(vec![1.0, -1.0], Relation::Le, 1.0);
        assert_eq!(solve_lp(&q).unwrap().status, LpStatus::Unbounded);
    }

    #[test]
    fn equality_rows_and_bounds() {
        // max 3x + 2y, x + y = 4, x <= 3, y >= 0.5
        let mut p = LinearProgram::new(Sense::Maximize, vec![3.0, 2.0]);
        p.add_row(vec![1.0, 1.0], Relation::Eq, 4.0);
        p.set_bounds(0, 0.0, Some(3.0));
        p.set_bounds(1, 0.5, None);
        let s = solve_lp(&p).unwrap();
        assert!((s.objective - 11.0).abs() < 1e-12);
        assert!((s.x[0] - 3.0).abs() < 1e-12 && (s.x[1] - 1.0).abs() < 1e-12);
        // equality dual: increasing rhs buys one more unit of y, worth 2
        assert!((s.duals[0] - 2.0).abs() < 1e-12);
        assert_certified(&p, &s);
    }

    #[test]
    fn degenerate_program_terminates_deterministically() {
        // Beale's classic cycling example (cycles under the textbook rule).
        let mut p = LinearProgram::new(Sense::Minimize, vec![-0.75, 150.0, -0.02, 6.0]);
        p.add_row(vec![0.25, -60.0, -0.04, 9.0], Relation::Le, 0.0);
        p.add_row(vec![0.5, -90.0, -0.02, 3.0], Relation::Le, 0.0);
        p.add_row(vec![0.0, 0.0, 1.0, 0.0], Relation::Le, 1.0);
        let a = solve_lp(&p).unwrap();
        let b = solve_lp(&p).unwrap();
        assert!((a.objective + 0.05).abs() < 1e-12);
        assert_eq!(a.basis, b.basis);
        assert_eq!(a.x, b.x);
        assert_certified(&p, &a);
    }

    #[test]
    fn negative_rhs_rows_keep_dual_signs() {
        // min x + y, -x - y <= -2 (i.e. x + y >= 2)
        let mut p = LinearProgram::new(Sense::Minimize, vec![1.0, 1.0]);
        p.add_row(vec![-1.0, -1.0], Relation::Le, -2.0);
        let s = solve_lp(&p).unwrap();
        assert!((s.objective - 2.0).abs() < 1e-12);
        assert!((s.duals[0] + 1.0).abs() < 1e-12);
        assert_certified(&p, &s);
    }
}
