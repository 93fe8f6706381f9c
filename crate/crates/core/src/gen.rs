//! Seeded random structures of bounded degree, and an exhaustive
//! enumerator of small ones.
//!
//! Events are added one at a time as new maximal events. Adding a maximal
//! event never changes the orthogonality of older pairs, so the degree bound
//! only has to be checked around the newcomer.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::structure::{EventStructure, EventStructureSpec};

/// Attempts per event before falling back to a construction that always
/// respects the bound.
const ATTEMPTS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    General,
    /// At most one lower cover per event.
    Forest,
    /// Every covering step raises the height by one.
    Graded,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Shape::General => "general",
            Shape::Forest => "forest",
            Shape::Graded => "graded",
        })
    }
}

impl FromStr for Shape {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general" => Ok(Shape::General),
            "forest" => Ok(Shape::Forest),
            "graded" => Ok(Shape::Graded),
            other => Err(GenError::InvalidParams(format!("unknown shape `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenParams {
    pub event_count: usize,
    pub degree_bound: usize,
    pub shape: Shape,
    /// Probability that the newcomer gets a base conflict with a given
    /// older event it is incomparable with.
    pub conflict_density: f64,
    pub seed: u64,
}

impl GenParams {
    pub fn new(event_count: usize, degree_bound: usize, shape: Shape, conflict_density: f64, seed: u64) -> Self {
        Self {
            event_count,
            degree_bound,
            shape,
            conflict_density,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("InvalidParams: {0}")]
    InvalidParams(String),
    #[error("GenerationBudgetExceeded: no admissible extension found for event {0}")]
    GenerationBudgetExceeded(usize),
}

/// Relations of a structure under construction, for events `0..len`.
#[derive(Debug, Clone)]
struct Builder {
    cap: usize,
    bound: usize,
    parents: Vec<Vec<usize>>,
    base: Vec<(usize, usize)>,
    level: Vec<usize>,
    down: Vec<FixedBitSet>,
    up: Vec<FixedBitSet>,
    conf: Vec<FixedBitSet>,
    adj: Vec<FixedBitSet>,
}

/// A checked extension by one maximal event.
struct Candidate {
    parents: Vec<usize>,
    base: Vec<usize>,
    down: FixedBitSet,
    conf: FixedBitSet,
    adj: FixedBitSet,
}

impl Builder {
    fn new(cap: usize, bound: usize) -> Self {
        Self {
            cap,
            bound,
            parents: Vec::new(),
            base: Vec::new(),
            level: Vec::new(),
            down: Vec::new(),
            up: Vec::new(),
            conf: Vec::new(),
            adj: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.parents.len()
    }

    /// The extension with lower covers `parents` (an antichain) and base
    /// conflicts with `base`, or `None` if it is incoherent or breaks the
    /// degree bound.
    fn candidate(&self, parents: &[usize], base: &[usize]) -> Option<Candidate> {
        let x = self.len();
        let mut down = FixedBitSet::with_capacity(self.cap);
        down.insert(x);
        let mut conf = FixedBitSet::with_capacity(self.cap);
        for &p in parents {
            down.union_with(&self.down[p]);
            conf.union_with(&self.conf[p]);
        }
        for &q in base {
            if down.contains(q) {
                return None;
            }
            conf.union_with(&self.up[q]);
        }
        if !conf.is_disjoint(&down) {
            return None;
        }
        let mut adj = FixedBitSet::with_capacity(self.cap);
        for y in 0..x {
            if down.contains(y) {
                continue;
            }
            let orthogonal = !conf.contains(y)
                || (parents.iter().all(|&p| !self.conf[p].contains(y))
                    && self.parents[y].iter().all(|&c| !conf.contains(c)));
            if orthogonal {
                adj.insert(y);
            }
        }
        let nbrs: Vec<usize> = adj.ones().collect();
        if self.has_clique(&nbrs, self.bound) {
            return None;
        }
        Some(Candidate {
            parents: parents.to_vec(),
            base: base.to_vec(),
            down,
            conf,
            adj,
        })
    }

    /// Whether `vertices` contain `k` pairwise adjacent events.
    fn has_clique(&self, vertices: &[usize], k: usize) -> bool {
        if k == 0 {
            return true;
        }
        if vertices.len() < k {
            return false;
        }
        vertices.iter().enumerate().any(|(i, &v)| {
            let rest: Vec<usize> = vertices[i + 1..].iter().copied().filter(|&w| self.adj[v].contains(w)).collect();
            self.has_clique(&rest, k - 1)
        })
    }

    fn commit(&mut self, c: Candidate) {
        let x = self.len();
        let level = c.parents.iter().map(|&p| self.level[p] + 1).max().unwrap_or(0);
        for w in c.down.ones() {
            if w != x {
                self.up[w].insert(x);
            }
        }
        for y in c.conf.ones() {
            self.conf[y].insert(x);
        }
        for y in c.adj.ones() {
            self.adj[y].insert(x);
        }
        let mut up = FixedBitSet::with_capacity(self.cap);
        up.insert(x);
        self.up.push(up);
        self.down.push(c.down);
        self.conf.push(c.conf);
        self.adj.push(c.adj);
        self.level.push(level);
        self.base.extend(c.base.iter().map(|&q| (q, x)));
        self.parents.push(c.parents);
    }

    fn comparable(&self, a: usize, b: usize) -> bool {
        self.down[a].contains(b) || self.down[b].contains(a)
    }

    fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&p| self.up[p].count_ones(..) == 1).collect()
    }

    /// A child of a maximal event in conflict with everything it is
    /// incomparable with. Its neighbours form, with the parent, a clique of
    /// the current graph, so the bound is kept.
    fn fallback(&self) -> Option<Candidate> {
        let parents: Vec<usize> = self.maximal().into_iter().take(1).collect();
        let down: FixedBitSet = match parents.first() {
            Some(&p) => self.down[p].clone(),
            None => FixedBitSet::with_capacity(self.cap),
        };
        let base: Vec<usize> = (0..self.len()).filter(|&y| !down.contains(y)).collect();
        self.candidate(&parents, &base)
    }

    fn spec(&self) -> EventStructureSpec {
        let name = |i: usize| format!("e{i}");
        let mut spec = EventStructureSpec::new((0..self.len()).map(name));
        for (x, ps) in self.parents.iter().enumerate() {
            for &p in ps {
                spec.covers.push((name(p), name(x)));
            }
        }
        for &(a, b) in &self.base {
            spec.base_conflicts.push((name(a), name(b)));
        }
        spec
    }
}

fn pick_parents(b: &Builder, shape: Shape, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = b.len();
    if n == 0 || rng.random_bool(0.15) {
        return Vec::new();
    }
    match shape {
        Shape::Forest => vec![rng.random_range(0..n)],
        Shape::General => {
            let p = rng.random_range(0..n);
            if rng.random_bool(0.35) {
                let q = rng.random_range(0..n);
                if q != p && !b.comparable(p, q) {
                    return vec![p.min(q), p.max(q)];
                }
            }
            vec![p]
        }
        Shape::Graded => {
            let p = rng.random_range(0..n);
            let same: Vec<usize> = (0..n).filter(|&q| q != p && b.level[q] == b.level[p]).collect();
            match same.choose(rng) {
                Some(&q) if rng.random_bool(0.35) => vec![p.min(q), p.max(q)],
                _ => vec![p],
            }
        }
    }
}

/// A random structure with the requested shape whose degree is at most
/// `degree_bound`; equal parameters give equal structures.
pub fn generate(params: &GenParams) -> Result<EventStructure, GenError> {
    if !(2..=3).contains(&params.degree_bound) {
        return Err(GenError::InvalidParams(format!(
            "degree bound {} is not 2 or 3",
            params.degree_bound
        )));
    }
    if !(0.0..=1.0).contains(&params.conflict_density) {
        return Err(GenError::InvalidParams(format!(
            "conflict density {} is outside [0, 1]",
            params.conflict_density
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut b = Builder::new(params.event_count, params.degree_bound);
    for x in 0..params.event_count {
        let mut chosen = None;
        for _ in 0..ATTEMPTS {
            let parents = pick_parents(&b, params.shape, &mut rng);
            let mut down = FixedBitSet::with_capacity(params.event_count);
            for &p in &parents {
                down.union_with(&b.down[p]);
            }
            let base: Vec<usize> = (0..x)
                .filter(|&y| !down.contains(y) && rng.random_bool(params.conflict_density))
                .collect();
            if let Some(c) = b.candidate(&parents, &base) {
                chosen = Some(c);
                break;
            }
        }
        let c = chosen
            .or_else(|| b.fallback())
            .ok_or(GenError::GenerationBudgetExceeded(x))?;
        b.commit(c);
    }
    Ok(EventStructure::build(b.spec()).expect("generated structures are coherent"))
}

/// Calls `f` on every structure with at most `max_events` events and degree
/// at most `degree_bound`, presented with events in a linear extension of the
/// order. Isomorphic structures are visited several times. With `forest`,
/// only structures with at most one lower cover per event are visited.
pub fn enumerate_small<F: FnMut(&EventStructure)>(max_events: usize, degree_bound: usize, forest: bool, mut f: F) {
    let b = Builder::new(max_events, degree_bound);
    extend_all(&b, max_events, forest, &mut f);
}

fn extend_all<F: FnMut(&EventStructure)>(b: &Builder, max_events: usize, forest: bool, f: &mut F) {
    f(&EventStructure::build(b.spec()).expect("enumerated structures are coherent"));
    if b.len() == max_events {
        return;
    }
    let n = b.len();
    for mask in 0u32..(1 << n) {
        let parents: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if forest && parents.len() > 1 {
            continue;
        }
        if parents
            .iter()
            .enumerate()
            .any(|(i, &p)| parents[i + 1..].iter().any(|&q| b.comparable(p, q)))
        {
            continue;
        }
        let mut down = FixedBitSet::with_capacity(max_events);
        let mut inherited = FixedBitSet::with_capacity(max_events);
        for &p in &parents {
            down.union_with(&b.down[p]);
            inherited.union_with(&b.conf[p]);
        }
        let free: Vec<usize> = (0..n).filter(|&y| !down.contains(y) && !inherited.contains(y)).collect();
        for sub in 0u32..(1 << free.len()) {
            let chosen: Vec<usize> = (0..free.len())
                .filter(|&i| sub & (1 << i) != 0)
                .map(|i| free[i])
                .collect();
            let mut row = inherited.clone();
            for &q in &chosen {
                row.insert(q);
            }
            // Each conflict row is visited once: it must already be upward closed.
            if !chosen.iter().all(|&q| b.up[q].is_subset(&row)) {
                continue;
            }
            if let Some(c) = b.candidate(&parents, &chosen) {
                let mut next = b.clone();
                next.commit(c);
                extend_all(&next, max_events, forest, f);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{clique_number, OrthoGraph};
    use crate::report::{is_forest, is_graded};

    fn degree(e: &EventStructure) -> usize {
        clique_number(&OrthoGraph::from_structure(e)).0
    }

    #[test]
    fn trivial_sizes() {
        let e = generate(&GenParams::new(0, 3, Shape::General, 0.0, 7)).unwrap();
        assert!(e.is_empty());
        let e = generate(&GenParams::new(1, 3, Shape::Forest, 0.0, 7)).unwrap();
        assert_eq!(e.len(), 1);
    }

    #[test]
    fn deterministic_per_seed() {
        let p = GenParams::new(20, 3, Shape::Forest, 0.3, 42);
        assert_eq!(generate(&p).unwrap().spec(), generate(&p).unwrap().spec());
        let q = GenParams { seed: 43, ..p.clone() };
        assert_ne!(generate(&p).unwrap().spec(), generate(&q).unwrap().spec());
    }

    #[test]
    fn shapes_and_bounds_hold() {
        for seed in 0..60 {
            for shape in [Shape::General, Shape::Forest, Shape::Graded] {
                for bound in [2, 3] {
                    let e = generate(&GenParams::new(25, bound, shape, 0.3, seed)).unwrap();
                    assert_eq!(e.len(), 25);
                    assert!(degree(&e) <= bound, "{shape} {bound} {seed}");
                    match shape {
                        Shape::Forest => assert!(is_forest(&e)),
                        Shape::Graded => assert!(is_graded(&e)),
                        Shape::General => {}
                    }
                }
            }
        }
    }

    #[test]
    fn fallback_keeps_the_bound_without_conflicts() {
        // With no sampled conflicts concurrency quickly saturates the bound.
        let e = generate(&GenParams::new(30, 2, Shape::General, 0.0, 1)).unwrap();
        assert!(degree(&e) <= 2);
    }

    #[test]
    fn bad_params() {
        assert!(matches!(
            generate(&GenParams::new(3, 4, Shape::General, 0.0, 0)),
            Err(GenError::InvalidParams(_))
        ));
        assert!(matches!(
            generate(&GenParams::new(3, 3, Shape::General, 1.5, 0)),
            Err(GenError::InvalidParams(_))
        ));
        assert!("tree".parse::<Shape>().is_err());
        assert_eq!("graded".parse::<Shape>().unwrap(), Shape::Graded);
    }

    #[test]
    fn enumeration_counts() {
        // Two events: empty, one event, and a pair that is concurrent,
        // conflicting or ordered.
        let mut count = 0;
        enumerate_small(2, 3, false, |_| count += 1);
        assert_eq!(count, 1 + 1 + 3);
        let mut forests = 0;
        enumerate_small(3, 2, true, |e| {
            assert!(is_forest(e) && degree(e) <= 2);
            forests += 1;
        });
        assert!(forests > 5);
    }
}
