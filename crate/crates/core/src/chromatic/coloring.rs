//! Exact coloring by DSATUR-ordered branch and bound.

pub(crate) struct Dsatur<'a> {
    nb: &'a [u64],
    color: Vec<usize>,
    best: usize,
    best_coloring: Vec<usize>,
    lower: usize,
}

const NONE: usize = usize::MAX;

impl<'a> Dsatur<'a> {
    pub(crate) fn new(nb: &'a [u64], lower: usize) -> Self {
        let n = nb.len();
        Dsatur {
            nb,
            color: vec![NONE; n],
            best: n + 1,
            best_coloring: (0..n).collect(),
            lower,
        }
    }

    /// Returns `(χ, coloring)`.
    pub(crate) fn solve(mut self) -> (usize, Vec<usize>) {
        let n = self.nb.len();
        if n == 0 {
            return (0, Vec::new());
        }
        let sat = vec![0u64; n];
        self.search(0, 0, &sat);
        (self.best, self.best_coloring)
    }

    fn pick(&self, sat: &[u64]) -> usize {
        let n = self.nb.len();
        let uncolored: u64 = (0..n).filter(|&v| self.color[v] == NONE).fold(0, |m, v| m | 1 << v);
        let mut best = (0u32, 0u32, NONE);
        for v in 0..n {
            if self.color[v] != NONE {
                continue;
            }
            let key = (sat[v].count_ones(), (self.nb[v] & uncolored).count_ones());
            if best.2 == NONE || key > (best.0, best.1) {
                best = (key.0, key.1, v);
            }
        }
        best.2
    }

    fn search(&mut self, colored: usize, used: usize, sat: &[u64]) {
        let n = self.nb.len();
        if used >= self.best {
            return;
        }
        if colored == n {
            self.best = used;
            self.best_coloring = self.color.clone();
            return;
        }
        let v = self.pick(sat);
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if sat[v] >> c & 1 == 1 {
                continue;
            }
            self.color[v] = c;
            let mut next = sat.to_vec();
            let mut m = self.nb[v];
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                next[u] |= 1 << c;
            }
            self.search(colored + 1, used.max(c + 1), &next);
            self.color[v] = NONE;
            if self.best <= self.lower {
                return;
            }
        }
    }
}
