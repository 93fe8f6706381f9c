//! Finite coherent event structures.
//!
//! A structure is given by its events, the covering pairs of the causality
//! order and a set of base conflicts. Construction closes the order
//! transitively, closes conflict upwards along causality and caches every
//! derived relation as a dense bit matrix, so relation queries are O(1).
//!
//! Coherence means configurations are exactly the cliques of weak
//! concurrency, so the conflict table fully determines them and they are
//! never materialized here.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::bits::BitMatrix;

/// Dense index of an event inside one [`EventStructure`].
///
/// Indices follow declaration order, which is also the tie-break used by
/// every deterministic choice in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventId(usize);

impl EventId {
    pub const fn new(index: usize) -> Self {
        Self(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EventId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Unvalidated input presentation: events, covers and base conflicts by name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EventStructureSpec {
    pub events: Vec<String>,
    /// `(parent, child)` pairs. Transitive pairs are tolerated.
    pub covers: Vec<(String, String)>,
    /// Unordered pairs; need not be minimal.
    pub base_conflicts: Vec<(String, String)>,
}

impl EventStructureSpec {
    pub fn new<I, S>(events: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            events: events.into_iter().map(Into::into).collect(),
            ..Self::default()
        }
    }

    pub fn cover(mut self, parent: &str, child: &str) -> Self {
        self.covers.push((parent.to_owned(), child.to_owned()));
        self
    }

    pub fn conflict(mut self, a: &str, b: &str) -> Self {
        self.base_conflicts.push((a.to_owned(), b.to_owned()));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("DuplicateEvent: event `{0}` is declared twice")]
    DuplicateEvent(String),
    #[error("UnknownEvent: `{0}` is not an event of the structure")]
    UnknownEvent(String),
    #[error("CycleInCovers: the cover relation has a cycle through `{0}`")]
    CycleInCovers(String),
    #[error("SelfConflict: `{0}` is declared in conflict with itself")]
    SelfConflict(String),
    #[error("ConflictOnComparablePair: the hereditary closure puts comparable events `{0}` and `{1}` in conflict")]
    ConflictOnComparablePair(String, String),
}

/// The derived relations that can be queried with [`EventStructure::relation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Leq,
    Covers,
    Conflict,
    MinimalConflict,
    Concurrent,
    WeakConcurrent,
    Orthogonal,
}

impl RelationKind {
    pub const ALL: [RelationKind; 7] = [
        RelationKind::Leq,
        RelationKind::Covers,
        RelationKind::Conflict,
        RelationKind::MinimalConflict,
        RelationKind::Concurrent,
        RelationKind::WeakConcurrent,
        RelationKind::Orthogonal,
    ];
}

/// A validated coherent event structure with cached derived relations.
#[derive(Debug, Clone)]
pub struct EventStructure {
    spec: EventStructureSpec,
    index: HashMap<String, usize>,
    /// `down[x]` = `{ y | y <= x }`.
    down: BitMatrix,
    /// `up[x]` = `{ y | x <= y }`.
    up: BitMatrix,
    covers: BitMatrix,
    conflict: BitMatrix,
    concurrent: BitMatrix,
    weak_concurrent: BitMatrix,
    minimal_conflict: BitMatrix,
    orthogonal: BitMatrix,
    height: Vec<usize>,
    lower_covers: Vec<Vec<EventId>>,
    upper_covers: Vec<Vec<EventId>>,
}

impl EventStructure {
    /// Validates `spec` and computes every derived relation.
    pub fn build(spec: EventStructureSpec) -> Result<Self, StructureError> {
        let n = spec.events.len();
        let mut index = HashMap::with_capacity(n);
        for (i, name) in spec.events.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(StructureError::DuplicateEvent(name.clone()));
            }
        }
        let lookup = |name: &String| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| StructureError::UnknownEvent(name.clone()))
        };

        let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (p, c) in &spec.covers {
            let (p, c) = (lookup(p)?, lookup(c)?);
            if p == c {
                return Err(StructureError::CycleInCovers(spec.events[p].clone()));
            }
            if !parents[c].contains(&p) {
                parents[c].push(p);
                children[p].push(c);
            }
        }
        let mut base: Vec<(usize, usize)> = Vec::with_capacity(spec.base_conflicts.len());
        for (a, b) in &spec.base_conflicts {
            let (a, b) = (lookup(a)?, lookup(b)?);
            if a == b {
                return Err(StructureError::SelfConflict(spec.events[a].clone()));
            }
            base.push((a, b));
        }

        let topo = topological_order(&parents, &children).map_err(|i| {
            StructureError::CycleInCovers(spec.events[i].clone())
        })?;

        let mut down = BitMatrix::new(n);
        for &x in &topo {
            down.set(x, x);
            for &p in &parents[x] {
                let row = down.row(p).clone();
                down.row_mut(x).union_with(&row);
            }
        }
        let mut up = BitMatrix::new(n);
        for x in 0..n {
            for y in down.row(x).ones() {
                up.set(y, x);
            }
        }

        // y is a lower cover of x iff y < x with nothing strictly between.
        let mut covers = BitMatrix::new(n);
        let mut lower_covers = vec![Vec::new(); n];
        let mut upper_covers = vec![Vec::new(); n];
        for (x, lower) in lower_covers.iter_mut().enumerate() {
            let mut strict = down.row(x).clone();
            strict.set(x, false);
            let mut shadowed = FixedBitSet::with_capacity(n);
            for z in strict.ones() {
                let mut below_z = down.row(z).clone();
                below_z.set(z, false);
                shadowed.union_with(&below_z);
            }
            for y in strict.ones() {
                if !shadowed.contains(y) {
                    covers.set(y, x);
                    lower.push(EventId(y));
                }
            }
        }
        for (x, lower) in lower_covers.iter().enumerate() {
            for &EventId(y) in lower {
                upper_covers[y].push(EventId(x));
            }
        }
        let mut height = vec![0usize; n];
        for &x in &topo {
            height[x] = lower_covers[x]
                .iter()
                .map(|p| height[p.0] + 1)
                .max()
                .unwrap_or(0);
        }

        // x # y iff some base pair (a, b) has a <= x and b <= y.
        let mut base_up = BitMatrix::new(n);
        for &(a, b) in &base {
            let (ua, ub) = (up.row(a).clone(), up.row(b).clone());
            base_up.row_mut(a).union_with(&ub);
            base_up.row_mut(b).union_with(&ua);
        }
        let mut conflict = BitMatrix::new(n);
        for x in 0..n {
            let mut row = FixedBitSet::with_capacity(n);
            for a in down.row(x).ones() {
                row.union_with(base_up.row(a));
            }
            *conflict.row_mut(x) = row;
        }
        for x in 0..n {
            let mut comparable = down.row(x).clone();
            comparable.union_with(up.row(x));
            comparable.intersect_with(conflict.row(x));
            if let Some(y) = comparable.ones().find(|&y| y != x) {
                let (a, b) = (x.min(y), x.max(y));
                return Err(StructureError::ConflictOnComparablePair(
                    spec.events[a].clone(),
                    spec.events[b].clone(),
                ));
            }
        }

        let mut weak_concurrent = BitMatrix::new(n);
        let mut concurrent = BitMatrix::new(n);
        for x in 0..n {
            let mut weak = conflict.row(x).clone();
            weak.toggle_range(..);
            let mut conc = weak.clone();
            conc.difference_with(down.row(x));
            conc.difference_with(up.row(x));
            *weak_concurrent.row_mut(x) = weak;
            *concurrent.row_mut(x) = conc;
        }

        let mut minimal_conflict = BitMatrix::new(n);
        for x in 0..n {
            let mut strict_x = down.row(x).clone();
            strict_x.set(x, false);
            for y in conflict.row(x).ones() {
                let mut strict_y = down.row(y).clone();
                strict_y.set(y, false);
                if strict_x.is_disjoint(conflict.row(y)) && strict_y.is_disjoint(conflict.row(x)) {
                    minimal_conflict.set(x, y);
                }
            }
        }
        let orthogonal: BitMatrix = (0..n)
            .map(|x| {
                let mut row = minimal_conflict.row(x).clone();
                row.union_with(concurrent.row(x));
                row
            })
            .collect();

        Ok(Self {
            spec,
            index,
            down,
            up,
            covers,
            conflict,
            concurrent,
            weak_concurrent,
            minimal_conflict,
            orthogonal,
            height,
            lower_covers,
            upper_covers,
        })
    }

    pub fn len(&self) -> usize {
        self.spec.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spec.events.is_empty()
    }

    pub fn spec(&self) -> &EventStructureSpec {
        &self.spec
    }

    pub fn events(&self) -> impl ExactSizeIterator<Item = EventId> + DoubleEndedIterator {
        (0..self.len()).map(EventId)
    }

    pub fn name(&self, x: EventId) -> &str {
        &self.spec.events[x.0]
    }

    pub fn names(&self) -> &[String] {
        &self.spec.events
    }

    pub fn event(&self, name: &str) -> Result<EventId, StructureError> {
        self.index
            .get(name)
            .map(|&i| EventId(i))
            .ok_or_else(|| StructureError::UnknownEvent(name.to_owned()))
    }

    pub fn check(&self, x: EventId) -> Result<EventId, StructureError> {
        if x.0 < self.len() {
            Ok(x)
        } else {
            Err(StructureError::UnknownEvent(x.to_string()))
        }
    }

    /// Checked relation query.
    pub fn relation(&self, kind: RelationKind, x: EventId, y: EventId) -> Result<bool, StructureError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.table(kind).get(x.0, y.0))
    }

    /// Row `x`, column `y` holds `x kind y`; for `Leq` that is `x <= y`,
    /// for `Covers` that `x` is a lower cover of `y`.
    fn table(&self, kind: RelationKind) -> &BitMatrix {
        match kind {
            RelationKind::Leq => &self.up,
            RelationKind::Covers => &self.covers,
            RelationKind::Conflict => &self.conflict,
            RelationKind::MinimalConflict => &self.minimal_conflict,
            RelationKind::Concurrent => &self.concurrent,
            RelationKind::WeakConcurrent => &self.weak_concurrent,
            RelationKind::Orthogonal => &self.orthogonal,
        }
    }

    #[inline]
    pub fn leq(&self, x: EventId, y: EventId) -> bool {
        self.up.get(x.0, y.0)
    }

    #[inline]
    pub fn lt(&self, x: EventId, y: EventId) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: EventId, y: EventId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// `x` is a lower cover of `y`.
    #[inline]
    pub fn covers(&self, x: EventId, y: EventId) -> bool {
        self.covers.get(x.0, y.0)
    }

    #[inline]
    pub fn conflict(&self, x: EventId, y: EventId) -> bool {
        self.conflict.get(x.0, y.0)
    }

    #[inline]
    pub fn minimal_conflict(&self, x: EventId, y: EventId) -> bool {
        self.minimal_conflict.get(x.0, y.0)
    }

    #[inline]
    pub fn concurrent(&self, x: EventId, y: EventId) -> bool {
        self.concurrent.get(x.0, y.0)
    }

    #[inline]
    pub fn weak_concurrent(&self, x: EventId, y: EventId) -> bool {
        self.weak_concurrent.get(x.0, y.0)
    }

    #[inline]
    pub fn orthogonal(&self, x: EventId, y: EventId) -> bool {
        self.orthogonal.get(x.0, y.0)
    }

    pub fn orthogonal_table(&self) -> &BitMatrix {
        &self.orthogonal
    }

    pub fn conflict_table(&self) -> &BitMatrix {
        &self.conflict
    }

    /// Events below or equal to `x`, as a bitset over indices.
    pub fn down_set(&self, x: EventId) -> &FixedBitSet {
        self.down.row(x.0)
    }

    /// Events above or equal to `x`, as a bitset over indices.
    pub fn up_set(&self, x: EventId) -> &FixedBitSet {
        self.up.row(x.0)
    }

    pub fn orthogonal_set(&self, x: EventId) -> &FixedBitSet {
        self.orthogonal.row(x.0)
    }

    pub fn conflict_set(&self, x: EventId) -> &FixedBitSet {
        self.conflict.row(x.0)
    }

    pub fn neighbors(&self, x: EventId) -> impl Iterator<Item = EventId> + '_ {
        self.orthogonal.row(x.0).ones().map(EventId)
    }

    /// 0 for minimal events, else one more than the highest lower cover.
    pub fn height(&self, x: EventId) -> usize {
        self.height[x.0]
    }

    /// Largest event height, 0 on the empty structure.
    pub fn max_height(&self) -> usize {
        self.height.iter().copied().max().unwrap_or(0)
    }

    pub fn lower_covers(&self, x: EventId) -> &[EventId] {
        &self.lower_covers[x.0]
    }

    pub fn upper_covers(&self, x: EventId) -> &[EventId] {
        &self.upper_covers[x.0]
    }

    pub fn is_minimal(&self, x: EventId) -> bool {
        self.lower_covers[x.0].is_empty()
    }

    /// Every covering pair `(parent, child)` of the order, child-major.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (EventId, EventId)> + '_ {
        self.events()
            .flat_map(move |x| self.lower_covers(x).iter().map(move |&p| (p, x)))
    }

    pub fn orthogonal_pairs(&self) -> impl Iterator<Item = (EventId, EventId)> + '_ {
        self.orthogonal.upper_pairs().map(|(a, b)| (EventId(a), EventId(b)))
    }

    pub fn is_antichain(&self, set: &[EventId]) -> bool {
        set.iter().enumerate().all(|(i, &x)| {
            set[i + 1..].iter().all(|&y| x != y && !self.comparable(x, y))
        })
    }

    /// Distinct events sharing the lower covers of `x`.
    pub fn brothers(&self, x: EventId) -> Result<Vec<EventId>, StructureError> {
        self.check(x)?;
        let mut mine = self.lower_covers(x).to_vec();
        mine.sort_unstable();
        Ok(self
            .events()
            .filter(|&y| y != x && self.lower_covers(y).len() == mine.len())
            .filter(|&y| {
                let mut theirs = self.lower_covers(y).to_vec();
                theirs.sort_unstable();
                theirs == mine
            })
            .collect())
    }

    /// `x` and its unique brother form a proper pair.
    pub fn proper_brother(&self, x: EventId) -> Result<Option<EventId>, StructureError> {
        let brothers = self.brothers(x)?;
        Ok(match brothers.as_slice() {
            [y] => Some(*y),
            _ => None,
        })
    }

    /// Orthogonal neighbours of `x` lying above none of its brothers.
    pub fn society(&self, x: EventId) -> Result<Vec<EventId>, StructureError> {
        let brothers = self.brothers(x)?;
        Ok(self
            .neighbors(x)
            .filter(|&z| brothers.iter().all(|&y| !self.leq(y, z)))
            .collect())
    }

    /// Orthogonal neighbours of `x` lying above some brother of `x`.
    pub fn family(&self, x: EventId) -> Result<Vec<EventId>, StructureError> {
        let brothers = self.brothers(x)?;
        Ok(self
            .neighbors(x)
            .filter(|&z| brothers.iter().any(|&y| self.leq(y, z)))
            .collect())
    }

    /// Adds a fresh bottom event below every event.
    ///
    /// The new event is appended last, so original indices are unchanged and
    /// the bottom is `EventId::new(self.len())`. It is isolated in the
    /// orthogonality graph.
    pub fn lift_bottom(&self) -> EventStructure {
        let mut bottom = String::from("bot");
        while self.index.contains_key(&bottom) {
            bottom.push('_');
        }
        let mut spec = self.spec.clone();
        spec.events.push(bottom.clone());
        for x in self.events().filter(|&x| self.is_minimal(x)) {
            spec.covers.push((bottom.clone(), self.name(x).to_owned()));
        }
        EventStructure::build(spec).expect("adding a bottom preserves validity")
    }

    /// The substructure carried by the orthogonal neighbours of `x`, with
    /// order and conflict restricted.
    pub fn star_substructure(&self, x: EventId) -> Result<EventStructure, StructureError> {
        self.check(x)?;
        let carrier: Vec<EventId> = self.neighbors(x).collect();
        Ok(self.restrict(&carrier))
    }

    /// Restriction of order and conflict to `carrier` (kept in index order).
    pub fn restrict(&self, carrier: &[EventId]) -> EventStructure {
        let mut carrier = carrier.to_vec();
        carrier.sort_unstable();
        carrier.dedup();
        let mut spec = EventStructureSpec::new(carrier.iter().map(|&y| self.name(y).to_owned()));
        for (i, &a) in carrier.iter().enumerate() {
            for &b in &carrier {
                if self.lt(a, b)
                    && !carrier
                        .iter()
                        .any(|&c| self.lt(a, c) && self.lt(c, b))
                {
                    spec.covers.push((self.name(a).to_owned(), self.name(b).to_owned()));
                }
            }
            for &b in &carrier[i + 1..] {
                if self.conflict(a, b) {
                    spec.base_conflicts
                        .push((self.name(a).to_owned(), self.name(b).to_owned()));
                }
            }
        }
        EventStructure::build(spec).expect("restriction of a valid structure is valid")
    }
}

/// Kahn's algorithm over the cover digraph, lowest index first. On a cycle,
/// returns some event lying on or above it.
fn topological_order(parents: &[Vec<usize>], children: &[Vec<usize>]) -> Result<Vec<usize>, usize> {
    let n = parents.len();
    let mut pending: Vec<usize> = parents.iter().map(Vec::len).collect();
    let mut ready: std::collections::BTreeSet<usize> =
        (0..n).filter(|&i| pending[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = ready.pop_first() {
        order.push(x);
        for &c in &children[x] {
            pending[c] -= 1;
            if pending[c] == 0 {
                ready.insert(c);
            }
        }
    }
    if order.len() == n {
        Ok(order)
    } else {
        Err((0..n).find(|&i| pending[i] > 0).unwrap_or(0))
    }
}
