//! Exact combinatorial parameters: maximal cocliques, α, χ and χ_f with a
//! fractional-coloring witness.

mod cliques;
mod coloring;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{solve_lp, LinearProgram, LpStatus, Relation, Sense};

/// Enumeration guard for every routine in this module.
pub const MAX_VERTICES: usize = 40;

/// Tolerance of rational reconstruction.
pub const RATIONAL_TOL: f64 = 1e-7;

fn guard(g: &Graph) -> Result<()> {
    if g.n() > MAX_VERTICES {
        return Err(Error::SizeLimit {
            n: g.n(),
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

fn complement_masks(g: &Graph) -> Vec<u64> {
    g.complement().neighbor_masks().expect("n <= 40")
}

/// Inclusion-maximal cocliques, each sorted, the list sorted
/// lexicographically.
pub fn maximal_cocliques(g: &Graph) -> Result<Vec<Vec<usize>>> {
    guard(g)?;
    let mut sets: Vec<Vec<usize>> = cliques::maximal_cliques(&complement_masks(g))
        .into_iter()
        .map(cliques::mask_to_vec)
        .collect();
    sets.sort();
    Ok(sets)
}

/// `α(G)`.
pub fn stability_number(g: &Graph) -> Result<usize> {
    guard(g)?;
    Ok(cliques::maximal_cliques(&complement_masks(g))
        .into_iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// `ω(G)`.
pub fn clique_number(g: &Graph) -> Result<usize> {
    guard(g)?;
    Ok(cliques::maximal_cliques(&g.neighbor_masks().expect("n <= 40"))
        .into_iter()
        .map(|m| m.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// `χ(G)`.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    Ok(optimal_coloring(g)?.0)
}

/// `(χ(G), color of each vertex)`.
pub fn optimal_coloring(g: &Graph) -> Result<(usize, Vec<usize>)> {
    guard(g)?;
    let nb = g.neighbor_masks().expect("n <= 40");
    let lower = clique_number(g)?;
    Ok(coloring::Dsatur::new(&nb, lower).solve())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FractionalColoring {
    pub cocliques: Vec<Vec<usize>>,
    pub weights: Vec<f64>,
}

impl FractionalColoring {
    pub fn value(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// `Σ_S y(S) x_S`.
    pub fn coverage(&self, n: usize) -> Vec<f64> {
        let mut c = vec![0.0; n];
        for (s, y) in self.cocliques.iter().zip(&self.weights) {
            for &v in s {
                c[v] += y;
            }
        }
        c
    }

    /// Checks that every set is a coclique, weights are nonnegative and
    /// coverage is at least `1 − tol` (exactly `1 ± tol` when `equality`).
    pub fn verify(&self, g: &Graph, equality: bool, tol: f64) -> Result<()> {
        if self.cocliques.len() != self.weights.len() {
            return Err(Error::invalid("cocliques and weights differ in length"));
        }
        for (s, &y) in self.cocliques.iter().zip(&self.weights) {
            if s.iter().any(|&v| v >= g.n()) || !g.is_coclique(s) {
                return Err(Error::certification("coclique", format!("{s:?} is not a coclique")));
            }
            if !(y >= 0.0) {
                return Err(Error::certification("weights", format!("negative weight {y}")));
            }
        }
        for (v, c) in self.coverage(g.n()).into_iter().enumerate() {
            if c < 1.0 - tol || (equality && c > 1.0 + tol) {
                return Err(Error::certification(
                    "coverage",
                    format!("vertex {v} covered {c}"),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FractionalChromatic {
    pub value: f64,
    pub witness: FractionalColoring,
    /// `(p, q)` with `|p/q − value| <= 1e-7` and `q <= n`, when one exists.
    pub rational: Option<(u64, u64)>,
}

impl FractionalChromatic {
    /// `p/q` when reconstructed, else the float.
    pub fn best_value(&self) -> f64 {
        match self.rational {
            Some((p, q)) => p as f64 / q as f64,
            None => self.value,
        }
    }

    /// `⌈χ_f⌉`, exact when the rational form verified.
    pub fn ceil(&self) -> i64 {
        match self.rational {
            Some((p, q)) => p.div_ceil(q) as i64,
            None => crate::ceil_tol(self.value),
        }
    }

    pub fn rational_string(&self) -> Option<String> {
        self.rational.map(|(p, q)| format!("{p}/{q}"))
    }
}

/// `min 1ᵀy : Ny >= 1, y >= 0` over the maximal cocliques.
///
/// Solved by column generation: the restricted program starts from the
/// first listed coclique through each vertex, and columns whose reduced
/// cost `1 − Σ_{v ∈ S} π_v` is below `−1e-9` are added (most negative
/// first, at most `n` per round) until none remains.
pub fn fractional_chromatic(g: &Graph) -> Result<FractionalChromatic> {
    guard(g)?;
    let n = g.n();
    if n == 0 {
        return Ok(FractionalChromatic {
            value: 0.0,
            witness: FractionalColoring {
                cocliques: vec![],
                weights: vec![],
            },
            rational: Some((0, 1)),
        });
    }
    let sets = maximal_cocliques(g)?;
    let mut active: Vec<usize> = Vec::new();
    for v in 0..n {
        let i = sets.iter().position(|s| s.contains(&v)).expect("every vertex is covered");
        if !active.contains(&i) {
            active.push(i);
        }
    }
    let sol = loop {
        let mut lp = LinearProgram::new(Sense::Minimize, vec![1.0; active.len()]);
        for v in 0..n {
            let row = active.iter().map(|&i| if sets[i].contains(&v) { 1.0 } else { 0.0 }).collect();
            lp.add_row(row, Relation::Ge, 1.0);
        }
        let sol = solve_lp(&lp)?;
        if sol.status != LpStatus::Optimal {
            return Err(Error::Lp(format!("covering LP ended {:?}", sol.status)));
        }
        let mut priced: Vec<(f64, usize)> = (0..sets.len())
            .filter(|i| !active.contains(i))
            .map(|i| (1.0 - sets[i].iter().map(|&v| sol.duals[v]).sum::<f64>(), i))
            .filter(|(rc, _)| *rc < -1e-9)
            .collect();
        if priced.is_empty() {
            break (sol, active);
        }
        priced.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        active.extend(priced.into_iter().take(n).map(|(_, i)| i));
    };
    let (sol, active) = sol;
    let (mut cocliques, mut weights) = (Vec::new(), Vec::new());
    for (&i, &y) in active.iter().zip(&sol.x) {
        if y > 0.0 {
            cocliques.push(sets[i].clone());
            weights.push(y);
        }
    }
    let witness = FractionalColoring { cocliques, weights };
    let value = witness.value();
    witness.verify(g, false, 1e-9)?;
    Ok(FractionalChromatic {
        value,
        rational: rational_reconstruct(value, n as u64, RATIONAL_TOL),
        witness,
    })
}

/// Smallest-denominator continued-fraction convergent `p/q` of `x >= 0` with
/// `q <= max_den` and `|p/q − x| <= tol`.
pub fn rational_reconstruct(x: f64, max_den: u64, tol: f64) -> Option<(u64, u64)> {
    if !x.is_finite() || x < 0.0 {
        return None;
    }
    let (mut h1, mut h2) = (1u64, 0u64);
    let (mut k1, mut k2) = (0u64, 1u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a > 1e15 {
            return None;
        }
        let a = a as u64;
        let h = a.checked_mul(h1)?.checked_add(h2)?;
        let k = a.checked_mul(k1)?.checked_add(k2)?;
        if k > max_den {
            return None;
        }
        if (h as f64 / k as f64 - x).abs() <= tol {
            return Some((h, k));
        }
        let frac = r - a as f64;
        if frac <= 0.0 {
            return None;
        }
        r = 1.0 / frac;
        (h2, h1, k2, k1) = (h1, h, k1, k);
    }
    None
}

/// Rewrites a covering witness (`Ny >= 1`) into one with `Ny = 1` and the
/// same value, by moving weight from each over-covered vertex's sets onto
/// copies of those sets with the vertex removed. Non-singleton sets are
/// split first, in list order; identical sets are merged.
pub fn equality_form(witness: &FractionalColoring, g: &Graph) -> Result<FractionalColoring> {
    witness.verify(g, false, 1e-9)?;
    let n = g.n();
    let mut sets: Vec<(Vec<usize>, f64)> = witness
        .cocliques
        .iter()
        .cloned()
        .zip(witness.weights.iter().copied())
        .filter(|(_, y)| *y > 0.0)
        .collect();
    for v in 0..n {
        let cover: f64 = sets.iter().filter(|(s, _)| s.contains(&v)).map(|(_, y)| y).sum();
        let mut excess = cover - 1.0;
        if excess <= 1e-12 {
            continue;
        }
        let containing: Vec<usize> = {
            let mut idx: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].0.contains(&v)).collect();
            idx.sort_by_key(|&i| (sets[i].0.len() == 1, i));
            idx
        };
        for i in containing {
            if excess <= 0.0 {
                break;
            }
            let take = excess.min(sets[i].1);
            sets[i].1 -= take;
            excess -= take;
            let reduced: Vec<usize> = sets[i].0.iter().copied().filter(|&u| u != v).collect();
            sets.push((reduced, take));
        }
    }
    let mut merged: Vec<(Vec<usize>, f64)> = Vec::new();
    for (s, y) in sets {
        if y <= 0.0 {
            continue;
        }
        match merged.iter_mut().find(|(t, _)| *t == s) {
            Some(e) => e.1 += y,
            None => merged.push((s, y)),
        }
    }
    let out = FractionalColoring {
        cocliques: merged.iter().map(|(s, _)| s.clone()).collect(),
        weights: merged.iter().map(|(_, y)| *y).collect(),
    };
    out.verify(g, true, 1e-9)?;
    Ok(out)
}
