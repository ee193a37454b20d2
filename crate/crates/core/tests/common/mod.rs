//! Brute-force oracles and generators shared by the integration tests.
#![allow(dead_code)]

use spectral_chroma::rng::Rng64;
use spectral_chroma::{Graph, WeightVector};

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Smallest edge bitmask over all relabelings.
fn canonical(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| {
            edges
                .iter()
                .fold(0u64, |m, &(i, j)| m | 1 << pair_index(n, p[i], p[j]))
        })
        .min()
        .unwrap_or(0)
}

/// One representative of every isomorphism class on `n` vertices.
///
/// Every graph on `n` vertices is a graph on `n − 1` vertices plus one new
/// vertex, so classes are grown one vertex at a time and deduplicated by
/// canonical form.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for size in 2..=n {
        let perms = permutations(size);
        let mut seen = std::collections::BTreeMap::new();
        for base in &level {
            for nbrs in 0u32..1 << (size - 1) {
                let mut edges = base.clone();
                edges.extend((0..size - 1).filter(|&v| nbrs >> v & 1 == 1).map(|v| (v, size - 1)));
                let key = canonical(size, &edges, &perms);
                seen.entry(key).or_insert(edges);
            }
        }
        level = seen.into_values().collect();
    }
    if n == 0 {
        return vec![Graph::empty(0)];
    }
    level
        .into_iter()
        .map(|e| Graph::from_edges(n, e).unwrap())
        .collect()
}

fn masks(g: &Graph) -> Vec<u64> {
    g.neighbor_masks().expect("small graph")
}

fn coclique_masks(g: &Graph) -> Vec<u64> {
    let nb = masks(g);
    let n = g.n();
    (0u64..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || nb[v] & s == 0))
        .collect()
}

/// Largest weight of an induced subgraph coverable by `k` cocliques.
pub fn alpha_k_weighted(g: &Graph, w: &[f64], k: usize) -> f64 {
    let n = g.n();
    let cocliques = coclique_masks(g);
    let mut reach = vec![false; 1 << n];
    reach[0] = true;
    for _ in 0..k {
        let mut next = reach.clone();
        for s in 0..1usize << n {
            if reach[s] {
                for &c in &cocliques {
                    next[s | c as usize] = true;
                }
            }
        }
        reach = next;
    }
    (0..1usize << n)
        .filter(|&s| reach[s])
        .map(|s| (0..n).filter(|&v| s >> v & 1 == 1).map(|v| w[v]).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn alpha_k(g: &Graph, k: usize) -> usize {
    alpha_k_weighted(g, &vec![1.0; g.n()], k).round() as usize
}

pub fn alpha(g: &Graph) -> usize {
    alpha_k(g, 1)
}

/// Smallest `k` with `α_k = n`.
pub fn chromatic_number(g: &Graph) -> usize {
    (0..=g.n()).find(|&k| alpha_k(g, k) == g.n()).unwrap()
}

pub fn random_graph(rng: &mut Rng64, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_f64() < p {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Uniform `[0, 1)` entries, each zeroed with probability `zero_p`.
pub fn random_weights(rng: &mut Rng64, n: usize, zero_p: f64) -> WeightVector {
    let w = (0..n)
        .map(|_| {
            let x = rng.next_f64();
            if rng.next_f64() < zero_p {
                0.0
            } else {
                x
            }
        })
        .collect();
    WeightVector::new(w).unwrap()
}

pub fn is_bipartite(g: &Graph) -> bool {
    let n = g.n();
    let mut side = vec![usize::MAX; n];
    for s in 0..n {
        if side[s] != usize::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for u in g.neighbors(v) {
                if side[u] == usize::MAX {
                    side[u] = 1 - side[v];
                    stack.push(u);
                } else if side[u] == side[v] {
                    return false;
                }
            }
        }
    }
    true
}

/// Graph on `n` vertices whose pair `{i, j}` (lexicographic order) is an
/// edge iff the matching entry of `bits` is set.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[idx] {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn graph_strategy(min_n: usize, max_n: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    use proptest::prelude::*;
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n.max(1) - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}
