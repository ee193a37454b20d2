//! The built-in test corpus.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Family, Graph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub family: Family,
}

impl CorpusEntry {
    fn new(family: Family) -> Self {
        CorpusEntry {
            name: family.name(),
            family,
        }
    }

    pub fn graph(&self) -> Result<Graph> {
        self.family.generate()
    }
}

/// Cycles `C3..C11`, `K1..K8`, Petersen, Kneser(5,2), Kneser(7,3) and
/// complete multipartite graphs on at most 12 vertices.
pub fn named() -> Vec<CorpusEntry> {
    let mut out: Vec<CorpusEntry> = (3..=11).map(|n| CorpusEntry::new(Family::Cycle(n))).collect();
    out.extend((1..=8).map(|n| CorpusEntry::new(Family::Complete(n))));
    out.push(CorpusEntry::new(Family::Petersen));
    out.push(CorpusEntry::new(Family::Kneser { n: 5, k: 2 }));
    out.push(CorpusEntry::new(Family::Kneser { n: 7, k: 3 }));
    for parts in [
        vec![2, 2],
        vec![2, 3],
        vec![3, 3],
        vec![1, 2, 3],
        vec![2, 2, 2],
        vec![1, 1, 1, 2],
        vec![3, 3, 3],
        vec![2, 2, 2, 2],
        vec![3, 4, 5],
        vec![4, 4, 4],
    ] {
        out.push(CorpusEntry::new(Family::CompleteMultipartite(parts)));
    }
    out
}

/// 50 graphs `G(n, 1/2)`, seed `i` in `0..50` with `n = 4 + i mod 7`.
pub fn random() -> Vec<CorpusEntry> {
    (0..50u64)
        .map(|seed| {
            CorpusEntry::new(Family::ErdosRenyi {
                n: 4 + (seed % 7) as usize,
                p: 0.5,
                seed,
            })
        })
        .collect()
}

/// [`named`] followed by [`random`].
pub fn full() -> Vec<CorpusEntry> {
    let mut out = named();
    out.extend(random());
    out
}
