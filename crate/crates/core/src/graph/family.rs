use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::rng::Rng64;

/// Deterministic graph families.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Family {
    Cycle(usize),
    Complete(usize),
    Empty(usize),
    /// Vertices are the `k`-subsets of `0..n` in colexicographic order;
    /// disjoint subsets are adjacent.
    Kneser { n: usize, k: usize },
    CompleteMultipartite(Vec<usize>),
    Petersen,
    /// `G(n, p)`: the pair `{i, j}` (`i < j`, lexicographic order) is an edge
    /// iff the next uniform draw from SplitMix64(`seed`) is below `p`.
    ErdosRenyi { n: usize, p: f64, seed: u64 },
}

impl Family {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(Error::invalid(format!("cycle needs n >= 3, got {n}")));
                }
                Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Complete(n) => {
                Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            }
            Family::Empty(n) => Ok(Graph::empty(n)),
            Family::Kneser { n, k } => kneser(n, k),
            Family::CompleteMultipartite(ref parts) => {
                if parts.is_empty() || parts.contains(&0) {
                    return Err(Error::invalid("complete multipartite parts must be positive"));
                }
                let mut part_of = Vec::new();
                for (p, &size) in parts.iter().enumerate() {
                    part_of.extend(std::iter::repeat_n(p, size));
                }
                let n = part_of.len();
                let part_of = &part_of;
                Graph::from_edges(
                    n,
                    (0..n).flat_map(|i| {
                        (i + 1..n)
                            .filter(move |&j| part_of[i] != part_of[j])
                            .map(move |j| (i, j))
                    }),
                )
            }
            Family::Petersen => kneser(5, 2),
            Family::ErdosRenyi { n, p, seed } => {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::invalid(format!("edge probability {p} outside [0,1]")));
                }
                let mut rng = Rng64::new(seed);
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        if rng.next_f64() < p {
                            edges.push((i, j));
                        }
                    }
                }
                Graph::from_edges(n, edges)
            }
        }
    }

    /// Short human-readable label, e.g. `kneser(7,3)`.
    pub fn name(&self) -> String {
        match self {
            Family::Cycle(n) => format!("cycle({n})"),
            Family::Complete(n) => format!("complete({n})"),
            Family::Empty(n) => format!("empty({n})"),
            Family::Kneser { n, k } => format!("kneser({n},{k})"),
            Family::CompleteMultipartite(parts) => format!(
                "complete-multipartite({})",
                parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
            ),
            Family::Petersen => "petersen".to_string(),
            Family::ErdosRenyi { n, p, seed } => format!("erdos-renyi({n},{p},{seed})"),
        }
    }
}

/// `k`-subsets of `0..n` as bitmasks in colex order.
pub(crate) fn colex_subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out: Vec<u64> = (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect();
    // colex order on sets coincides with numeric order of the bitmask
    out.sort_unstable();
    out
}

fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k || n > 30 {
        return Err(Error::invalid(format!(
            "kneser({n},{k}) requires n >= 2k >= 2 (and n <= 30)"
        )));
    }
    let sets = colex_subsets(n, k);
    let mut edges = Vec::new();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if sets[a] & sets[b] == 0 {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(sets.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kneser_5_2_is_petersen_shaped() {
        let g = Family::Kneser { n: 5, k: 2 }.generate().unwrap();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
        assert_eq!(g, Family::Petersen.generate().unwrap());
    }

    #[test]
    fn colex_order() {
        // {0,1}, {0,2}, {1,2}, {0,3}, ...
        assert_eq!(&colex_subsets(4, 2)[..4], &[0b0011, 0b0101, 0b0110, 0b1001]);
    }

    #[test]
    fn small_families() {
        let c5 = Family::Cycle(5).generate().unwrap();
        assert_eq!((c5.n(), c5.edge_count()), (5, 5));
        let k222 = Family::CompleteMultipartite(vec![2, 2, 2]).generate().unwrap();
        assert_eq!((k222.n(), k222.edge_count()), (6, 12));
        let k7_3 = Family::Kneser { n: 7, k: 3 }.generate().unwrap();
        assert_eq!((k7_3.n(), k7_3.edge_count()), (35, 70));
    }

    #[test]
    fn invalid_parameters() {
        assert!(Family::Kneser { n: 3, k: 2 }.generate().is_err());
        assert!(Family::Cycle(2).generate().is_err());
        assert!(Family::CompleteMultipartite(vec![2, 0]).generate().is_err());
        assert!(Family::ErdosRenyi { n: 4, p: 1.5, seed: 0 }.generate().is_err());
    }

    #[test]
    fn erdos_renyi_is_reproducible() {
        let f = Family::ErdosRenyi { n: 12, p: 0.5, seed: 42 };
        let a = f.generate().unwrap();
        assert_eq!(a, f.generate().unwrap());
        let other = Family::ErdosRenyi { n: 12, p: 0.5, seed: 43 }.generate().unwrap();
        assert_ne!(a, other);
    }
}
