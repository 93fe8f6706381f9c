//! Three-letter labelling of trees, and through the bottom lifting, of
//! forests of degree at most 3.
//!
//! A tree `T` is a convex set of events each having exactly one lower cover
//! `pi(x)`, whose minimal members share that cover. Events are processed in
//! an age order compatible with tree height and with proper pairs of
//! brothers (the brother with the strictly larger society is older). For
//! each event `x`, `O_x` is its set of older orthogonal neighbours in `T`,
//! split into `C_x` (those above `pi(x)`, necessarily older brothers) and
//! `L_x`. The symbol of `x` is then:
//!
//! 1. `a0` if `C_x` is empty and `x` is minimal in `T`;
//! 2. the symbol of `pi(x)` if `C_x` is empty otherwise;
//! 3. the least symbol missing from `C_x` if `L_x` is empty;
//! 4. otherwise `C_x = {y}`, `L_x` has a least element `z0`, and `x` gets
//!    the one symbol different from both `y` and `z0`.
//!
//! Every structural fact the last clause relies on is checked while
//! labelling and reported as `InternalContradiction` if it fails.

use crate::report::is_forest;
use crate::structure::{EventId, EventStructure};

use super::{check_degree, symbol_name, LabelError, Labelling};

const ALPHABET: usize = 3;

/// Age order on a tree, compatible with height and proper pairs of brothers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeOrder {
    order: Vec<EventId>,
    /// Indexed by event index of the ambient structure.
    position: Vec<Option<usize>>,
    parent: Vec<Option<EventId>>,
    tree_height: Vec<usize>,
}

impl TreeOrder {
    /// Events oldest first.
    pub fn events(&self) -> &[EventId] {
        &self.order
    }

    pub fn contains(&self, x: EventId) -> bool {
        self.position.get(x.index()).is_some_and(Option::is_some)
    }

    pub fn position(&self, x: EventId) -> Option<usize> {
        self.position.get(x.index()).copied().flatten()
    }

    /// `x` is strictly older than `y`.
    pub fn before(&self, x: EventId, y: EventId) -> bool {
        matches!((self.position(x), self.position(y)), (Some(a), Some(b)) if a < b)
    }

    /// The unique lower cover of a tree event.
    pub fn parent(&self, x: EventId) -> EventId {
        self.parent[x.index()].expect("tree event")
    }

    /// Number of tree events strictly below `x`.
    pub fn tree_height(&self, x: EventId) -> usize {
        self.tree_height[x.index()]
    }
}

/// Orders the tree `tree` inside `e`: by tree height, then proper pairs of
/// brothers kept adjacent with the strictly more experienced brother first,
/// then declaration order.
pub fn tree_order(e: &EventStructure, tree: &[EventId]) -> Result<TreeOrder, LabelError> {
    let n = e.len();
    let mut members = tree.to_vec();
    members.sort_unstable();
    members.dedup();
    for &x in &members {
        e.check(x)?;
    }
    let mut in_tree = vec![false; n];
    for &x in &members {
        in_tree[x.index()] = true;
    }

    let mut parent = vec![None; n];
    for &x in &members {
        match e.lower_covers(x) {
            [p] => parent[x.index()] = Some(*p),
            other => {
                return Err(LabelError::NotATree(format!(
                    "`{}` has {} lower covers",
                    e.name(x),
                    other.len()
                )))
            }
        }
    }
    for &z in &members {
        for y in e.down_set(z).ones().map(EventId::new) {
            if y == z || in_tree[y.index()] {
                continue;
            }
            if let Some(&x) = members.iter().find(|&&x| e.lt(x, y)) {
                return Err(LabelError::NotATree(format!(
                    "not convex: `{}` < `{}` < `{}` with the middle event outside",
                    e.name(x),
                    e.name(y),
                    e.name(z)
                )));
            }
        }
    }
    let mut tree_height = vec![0; n];
    for &x in &members {
        tree_height[x.index()] = members.iter().filter(|&&y| e.lt(y, x)).count();
    }
    let minimal: Vec<EventId> = members.iter().copied().filter(|&x| tree_height[x.index()] == 0).collect();
    if let Some(w) = minimal.windows(2).find(|w| parent[w[0].index()] != parent[w[1].index()]) {
        return Err(LabelError::NotATree(format!(
            "minimal events `{}` and `{}` have different lower covers",
            e.name(w[0]),
            e.name(w[1])
        )));
    }

    // (anchor, rank) keeps each proper pair adjacent, elder first.
    let mut key = Vec::with_capacity(members.len());
    for &x in &members {
        let (mut anchor, mut rank) = (x.index(), 0usize);
        if let Some(y) = e.proper_brother(x)? {
            if in_tree[y.index()] {
                let sx = e.society(x)?;
                let sy = e.society(y)?;
                let y_first = if strictly_contains(&sy, &sx) {
                    true
                } else if strictly_contains(&sx, &sy) {
                    false
                } else {
                    y < x
                };
                anchor = x.index().min(y.index());
                rank = usize::from(y_first);
            }
        }
        key.push((tree_height[x.index()], anchor, rank, x));
    }
    key.sort_unstable();
    let order: Vec<EventId> = key.into_iter().map(|(_, _, _, x)| x).collect();
    let mut position = vec![None; n];
    for (i, &x) in order.iter().enumerate() {
        position[x.index()] = Some(i);
    }
    Ok(TreeOrder {
        order,
        position,
        parent,
        tree_height,
    })
}

/// `big` is a strict superset of `small`; both sorted.
pub(crate) fn strictly_contains(big: &[EventId], small: &[EventId]) -> bool {
    big.len() > small.len() && small.iter().all(|x| big.binary_search(x).is_ok())
}

/// `O_x`, `C_x` and `L_x` for a tree event under a tree order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodSets {
    pub older: Vec<EventId>,
    pub close: Vec<EventId>,
    pub remote: Vec<EventId>,
}

pub fn neighborhood_sets(
    e: &EventStructure,
    order: &TreeOrder,
    x: EventId,
) -> Result<NeighborhoodSets, LabelError> {
    e.check(x)?;
    if !order.contains(x) {
        return Err(crate::structure::StructureError::UnknownEvent(e.name(x).to_owned()).into());
    }
    let parent = order.parent(x);
    let older: Vec<EventId> = e.neighbors(x).filter(|&y| order.before(y, x)).collect();
    let (close, remote) = older.iter().partition(|&&y| e.lt(parent, y));
    Ok(NeighborhoodSets { older, close, remote })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Clause {
    EldestRoot,
    EldestInherits,
    YoungerFree,
    YoungerAvoidsTwo,
}

/// One labelling decision, kept for inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeStep {
    pub event: EventId,
    pub clause: Clause,
    pub sets: NeighborhoodSets,
    /// Least element of `L_x`, for the fourth clause.
    pub anchor: Option<EventId>,
    pub symbol: usize,
}

/// The order used, a symbol per event of the structure, and the steps.
pub type TreeLabelling = (TreeOrder, Vec<Option<usize>>, Vec<TreeStep>);

/// Labels the events of `tree` with symbols `0..3`.
///
/// The result is indexed by event index of `e`; events outside the tree get
/// `None`. The steps are in age order.
pub fn label_tree(e: &EventStructure, tree: &[EventId]) -> Result<TreeLabelling, LabelError> {
    let order = tree_order(e, tree)?;
    let mut symbol: Vec<Option<usize>> = vec![None; e.len()];
    let mut steps = Vec::with_capacity(order.events().len());
    let contradiction = |msg: String| LabelError::InternalContradiction(msg);

    for &x in order.events() {
        let sets = neighborhood_sets(e, &order, x)?;
        let label_of = |y: EventId| symbol[y.index()].expect("older events are labelled");
        let (clause, value, anchor) = if sets.close.is_empty() {
            if order.tree_height(x) == 0 {
                (Clause::EldestRoot, 0, None)
            } else {
                let p = order.parent(x);
                let inherited = symbol[p.index()]
                    .ok_or_else(|| contradiction(format!("parent of `{}` is unlabelled", e.name(x))))?;
                (Clause::EldestInherits, inherited, None)
            }
        } else {
            if sets.close.len() > 2 {
                return Err(contradiction(format!("`{}` has {} close neighbours", e.name(x), sets.close.len())));
            }
            for &y in &sets.close {
                if e.lower_covers(y) != e.lower_covers(x) {
                    return Err(contradiction(format!(
                        "close neighbour `{}` of `{}` is not a brother",
                        e.name(y),
                        e.name(x)
                    )));
                }
            }
            if sets.remote.is_empty() {
                let used: Vec<usize> = sets.close.iter().map(|&y| label_of(y)).collect();
                let free = (0..ALPHABET).find(|s| !used.contains(s)).expect("at most two close neighbours");
                (Clause::YoungerFree, free, None)
            } else {
                let y = match sets.close.as_slice() {
                    [y] if e.proper_brother(x)? == Some(*y) => *y,
                    _ => {
                        return Err(contradiction(format!(
                            "`{}` has remote neighbours but no proper brother among its close ones",
                            e.name(x)
                        )))
                    }
                };
                let z0 = least_remote(e, x, &sets.remote)?;
                let (ly, lz) = (label_of(y), label_of(z0));
                if ly == lz {
                    return Err(contradiction(format!(
                        "brother `{}` and anchor `{}` of `{}` share a symbol",
                        e.name(y),
                        e.name(z0),
                        e.name(x)
                    )));
                }
                let value = (0..ALPHABET).find(|&s| s != ly && s != lz).expect("three symbols");
                (Clause::YoungerAvoidsTwo, value, Some(z0))
            }
        };
        symbol[x.index()] = Some(value);
        steps.push(TreeStep {
            event: x,
            clause,
            sets,
            anchor,
            symbol: value,
        });
    }
    Ok((order, symbol, steps))
}

/// Checks that `remote` is a lower set of the society of `x` and that both
/// share their least element, which is returned.
fn least_remote(e: &EventStructure, x: EventId, remote: &[EventId]) -> Result<EventId, LabelError> {
    let society = e.society(x)?;
    let bad = |msg: String| Err(LabelError::InternalContradiction(msg));
    if let Some(z) = remote.iter().find(|z| society.binary_search(z).is_err()) {
        return bad(format!("remote neighbour `{}` of `{}` is outside its society", e.name(*z), e.name(x)));
    }
    for &z in remote {
        if let Some(w) = society.iter().find(|&&w| e.lt(w, z) && !remote.contains(&w)) {
            return bad(format!(
                "remote neighbours of `{}` are not a lower set: `{}` < `{}`",
                e.name(x),
                e.name(*w),
                e.name(z)
            ));
        }
    }
    let Some(&z0) = remote.iter().find(|&&z| remote.iter().all(|&w| e.leq(z, w))) else {
        return bad(format!("remote neighbours of `{}` have no least element", e.name(x)));
    };
    if !society.iter().all(|&w| e.leq(z0, w)) {
        return bad(format!("`{}` is not the least element of the society of `{}`", e.name(z0), e.name(x)));
    }
    Ok(z0)
}

/// Three-letter nice labelling of a forest of degree at most 3.
pub fn label_forest3(e: &EventStructure) -> Result<Labelling, LabelError> {
    label_forest3_traced(e).map(|(lam, _)| lam)
}

/// As [`label_forest3`], also returning the steps taken on the lifted
/// structure (whose extra bottom event is never labelled).
pub fn label_forest3_traced(e: &EventStructure) -> Result<(Labelling, Vec<TreeStep>), LabelError> {
    if !is_forest(e) {
        let x = e.events().find(|&x| e.lower_covers(x).len() > 1).expect("some event has two covers");
        return Err(LabelError::NotAForest(e.name(x).to_owned()));
    }
    check_degree(e, 3)?;
    let lifted = e.lift_bottom();
    let tree: Vec<EventId> = e.events().collect();
    let (_, symbol, steps) = label_tree(&lifted, &tree)?;
    let assignment = symbol[..e.len()].iter().map(|s| s.expect("every event is in the tree")).collect();
    let lam = Labelling::new((0..ALPHABET).map(symbol_name).collect(), assignment)?;
    Ok((lam, steps))
}
