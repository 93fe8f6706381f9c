//! Order-only computations: chain partitions, width, antichains.

use fixedbitset::FixedBitSet;

use crate::structure::{EventId, EventStructure};

/// Minimum partition of the events into chains (Dilworth), via maximum
/// matching on the strict-order bipartite graph.
///
/// Chains are listed by their least element; each chain is ascending.
pub fn min_chain_partition(e: &EventStructure) -> Vec<Vec<EventId>> {
    let n = e.len();
    // next[x] = successor of x in its chain; prev[y] = predecessor.
    let mut prev: Vec<Option<usize>> = vec![None; n];
    let mut next: Vec<Option<usize>> = vec![None; n];
    for x in 0..n {
        let mut seen = vec![false; n];
        augment(e, x, &mut seen, &mut prev, &mut next);
    }
    let mut chains = Vec::new();
    for start in (0..n).filter(|&y| prev[y].is_none()) {
        let mut chain = vec![EventId::new(start)];
        let mut cur = start;
        while let Some(nx) = next[cur] {
            chain.push(EventId::new(nx));
            cur = nx;
        }
        chains.push(chain);
    }
    chains
}

fn augment(
    e: &EventStructure,
    x: usize,
    seen: &mut [bool],
    prev: &mut [Option<usize>],
    next: &mut [Option<usize>],
) -> bool {
    for y in e.up_set(EventId::new(x)).ones().filter(|&y| y != x) {
        if seen[y] {
            continue;
        }
        seen[y] = true;
        let free = match prev[y] {
            None => true,
            Some(other) => augment(e, other, seen, prev, next),
        };
        if free {
            if let Some(old) = next[x] {
                prev[old] = None;
            }
            prev[y] = Some(x);
            next[x] = Some(y);
            return true;
        }
    }
    false
}

/// Size of a largest antichain.
pub fn width(e: &EventStructure) -> usize {
    min_chain_partition(e).len()
}

/// Calls `f` on every maximal antichain (Bron–Kerbosch with pivoting on the
/// incomparability graph). Members are in index order.
pub fn for_each_maximal_antichain<F: FnMut(&[EventId])>(e: &EventStructure, mut f: F) {
    let n = e.len();
    if n == 0 {
        return;
    }
    let incomparable: Vec<FixedBitSet> = e
        .events()
        .map(|x| {
            let mut row = e.down_set(x).clone();
            row.union_with(e.up_set(x));
            row.toggle_range(..);
            row
        })
        .collect();
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    bron_kerbosch(&incomparable, &mut r, p, x, &mut f);
}

fn bron_kerbosch<F: FnMut(&[EventId])>(
    adj: &[FixedBitSet],
    r: &mut Vec<EventId>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    f: &mut F,
) {
    if p.is_clear() {
        if x.is_clear() {
            let mut out = r.clone();
            out.sort_unstable();
            f(&out);
        }
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| p.intersection(&adj[u]).count())
        .expect("p is non-empty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).collect();
    for v in candidates {
        r.push(EventId::new(v));
        let np = p.intersection(&adj[v]).collect::<FixedBitSet>();
        let nx = x.intersection(&adj[v]).collect::<FixedBitSet>();
        bron_kerbosch(adj, r, grow(np, adj.len()), grow(nx, adj.len()), f);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

fn grow(mut set: FixedBitSet, n: usize) -> FixedBitSet {
    set.grow(n);
    set
}

pub fn maximal_antichains(e: &EventStructure) -> Vec<Vec<EventId>> {
    let mut out = Vec::new();
    for_each_maximal_antichain(e, |a| out.push(a.to_vec()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn widths_of_fixtures() {
        assert_eq!(width(&fixtures::chain3()), 1);
        assert_eq!(width(&fixtures::pair_conc()), 2);
        // {4,6,7,8,9} is an antichain.
        assert_eq!(width(&fixtures::fig1()), 5);
        assert_eq!(width(&fixtures::fork()), 3);
    }

    #[test]
    fn chain_partition_is_a_partition_into_chains() {
        let e = fixtures::fig1();
        let chains = min_chain_partition(&e);
        let mut all: Vec<EventId> = chains.iter().flatten().copied().collect();
        all.sort();
        assert_eq!(all, e.events().collect::<Vec<_>>());
        for c in &chains {
            assert!(c.windows(2).all(|w| e.lt(w[0], w[1])));
        }
    }

    #[test]
    fn maximal_antichains_of_fork() {
        let e = fixtures::fork();
        let got: Vec<Vec<&str>> = maximal_antichains(&e)
            .iter()
            .map(|a| a.iter().map(|&x| e.name(x)).collect())
            .collect();
        let mut got = got;
        got.sort();
        assert_eq!(got, vec![vec!["r"], vec!["x", "y"], vec!["y", "u", "v"]]);
    }
}
