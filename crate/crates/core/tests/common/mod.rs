//! Brute-force oracles and shared sweeps.
//!
//! Everything here works from the raw specification with boolean matrices
//! and direct definitions, so it shares no code with the library beyond the
//! spec type.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use eventlab::gen::{enumerate_small, generate, GenParams, Shape};
use eventlab::{EventStructure, EventStructureSpec};

pub struct Oracle {
    pub n: usize,
    pub leq: Vec<Vec<bool>>,
    pub conflict: Vec<Vec<bool>>,
}

impl Oracle {
    pub fn new(spec: &EventStructureSpec) -> Self {
        let n = spec.events.len();
        let idx: HashMap<&str, usize> = spec.events.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (p, c) in &spec.covers {
            leq[idx[p.as_str()]][idx[c.as_str()]] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        let mut conflict = vec![vec![false; n]; n];
        for (a, b) in &spec.base_conflicts {
            let (a, b) = (idx[a.as_str()], idx[b.as_str()]);
            conflict[a][b] = true;
            conflict[b][a] = true;
        }
        // Heredity to a fixpoint: a # b and b <= c give a # c.
        loop {
            let new: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |c| (a, c)))
                .filter(|&(a, c)| !conflict[a][c] && (0..n).any(|b| conflict[a][b] && leq[b][c]))
                .collect();
            if new.is_empty() {
                break;
            }
            for (a, c) in new {
                conflict[a][c] = true;
                conflict[c][a] = true;
            }
        }
        Self { n, leq, conflict }
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq[x][y] || self.leq[y][x]
    }

    pub fn covers(&self, x: usize, y: usize) -> bool {
        self.lt(x, y) && !(0..self.n).any(|z| self.lt(x, z) && self.lt(z, y))
    }

    pub fn minimal_conflict(&self, x: usize, y: usize) -> bool {
        self.conflict[x][y]
            && (0..self.n).all(|x1| !self.lt(x1, x) || !self.conflict[x1][y])
            && (0..self.n).all(|y1| !self.lt(y1, y) || !self.conflict[x][y1])
    }

    pub fn concurrent(&self, x: usize, y: usize) -> bool {
        !self.comparable(x, y) && !self.conflict[x][y]
    }

    pub fn weak_concurrent(&self, x: usize, y: usize) -> bool {
        !self.conflict[x][y]
    }

    pub fn orthogonal(&self, x: usize, y: usize) -> bool {
        self.minimal_conflict(x, y) || self.concurrent(x, y)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.orthogonal(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn height(&self, x: usize) -> usize {
        (0..self.n).filter(|&y| self.lt(y, x)).map(|y| self.height(y) + 1).max().unwrap_or(0)
    }

    pub fn lower_covers(&self, x: usize) -> Vec<usize> {
        (0..self.n).filter(|&y| self.covers(y, x)).collect()
    }

    pub fn brothers(&self, x: usize) -> Vec<usize> {
        let mine = self.lower_covers(x);
        (0..self.n).filter(|&y| y != x && self.lower_covers(y) == mine).collect()
    }

    pub fn society(&self, x: usize) -> Vec<usize> {
        let bros = self.brothers(x);
        (0..self.n)
            .filter(|&y| self.orthogonal(x, y) && !bros.iter().any(|&b| self.leq[b][y]))
            .collect()
    }

    pub fn clique_number(&self) -> usize {
        let adj = self.adjacency();
        fn grow(adj: &[Vec<bool>], clique: &mut Vec<usize>, from: usize, best: &mut usize) {
            *best = (*best).max(clique.len());
            for v in from..adj.len() {
                if clique.iter().all(|&u| adj[u][v]) {
                    clique.push(v);
                    grow(adj, clique, v + 1, best);
                    clique.pop();
                }
            }
        }
        let mut best = 0;
        grow(&adj, &mut Vec::new(), 0, &mut best);
        best
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        (0..self.n).map(|x| (0..self.n).map(|y| x != y && self.orthogonal(x, y)).collect()).collect()
    }

    /// Whether the orthogonality graph is `k`-colourable, by plain
    /// backtracking in index order.
    pub fn colorable(&self, k: usize) -> bool {
        let adj = self.adjacency();
        fn place(adj: &[Vec<bool>], colors: &mut Vec<usize>, k: usize) -> bool {
            let v = colors.len();
            if v == adj.len() {
                return true;
            }
            for c in 0..k {
                if (0..v).all(|u| !adj[u][v] || colors[u] != c) {
                    colors.push(c);
                    if place(adj, colors, k) {
                        return true;
                    }
                    colors.pop();
                }
            }
            false
        }
        place(&adj, &mut Vec::new(), k)
    }

    pub fn chromatic_number(&self) -> usize {
        (0..=self.n).find(|&k| self.colorable(k)).unwrap()
    }

    /// Largest antichain, by subset enumeration.
    pub fn width(&self) -> usize {
        assert!(self.n <= 20);
        (0u32..1 << self.n)
            .filter(|&m| {
                let s: Vec<usize> = (0..self.n).filter(|&i| m & (1 << i) != 0).collect();
                s.iter().all(|&a| s.iter().all(|&b| a == b || !self.comparable(a, b)))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Lower-closed conflict-free subsets, as bit masks.
    pub fn configurations(&self) -> Vec<u32> {
        assert!(self.n <= 20);
        (0u32..1 << self.n)
            .filter(|&m| {
                let s: Vec<usize> = (0..self.n).filter(|&i| m & (1 << i) != 0).collect();
                s.iter().all(|&a| {
                    (0..self.n).all(|b| !self.leq[b][a] || m & (1 << b) != 0)
                        && s.iter().all(|&b| !self.conflict[a][b])
                })
            })
            .collect()
    }

    /// Pairs of orthogonal events sharing a symbol.
    pub fn violations(&self, symbols: &[usize]) -> Vec<(usize, usize)> {
        self.edges().into_iter().filter(|&(a, b)| symbols[a] == symbols[b]).collect()
    }
}

/// Parameters of the `i`-th seeded structure of the degree-3 sweep.
pub fn sweep_params(i: u64) -> GenParams {
    let shape = [Shape::General, Shape::Forest, Shape::Graded][(i % 3) as usize];
    let events = 1 + (i as usize * 7) % 30;
    let density = [0.1, 0.3, 0.5, 0.7][(i / 3 % 4) as usize];
    GenParams::new(events, 3, shape, density, 1000 + i)
}

/// 1000 seeded degree-3 structures with at most 30 events.
pub fn seeded_sweep() -> &'static [EventStructure] {
    static SWEEP: OnceLock<Vec<EventStructure>> = OnceLock::new();
    SWEEP.get_or_init(|| (0..1000).map(|i| generate(&sweep_params(i)).unwrap()).collect())
}

/// Every degree-3 structure with at most 5 events, in every linear
/// presentation.
pub fn exhaustive_sweep() -> &'static [EventStructure] {
    static SWEEP: OnceLock<Vec<EventStructure>> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let mut all = Vec::new();
        enumerate_small(5, 3, false, |e| all.push(e.clone()));
        all
    })
}

pub fn degree3_sweep() -> impl Iterator<Item = &'static EventStructure> {
    seeded_sweep().iter().chain(exhaustive_sweep())
}
