mod common;

use eventlab::chordal::{antichain_chordal_coloring, ChordalError};
use eventlab::cycles::find_straight_cycle;
use eventlab::graph::OrthoGraph;
use eventlab::poset::maximal_antichains;
use eventlab::{fixtures, EventId, EventStructure, EventStructureSpec};
use proptest::prelude::*;

/// Structures of unbounded degree on at most 9 events.
fn structure() -> impl Strategy<Value = EventStructure> {
    (1usize..10, proptest::collection::vec(any::<u8>(), 45), proptest::collection::vec((0usize..9, 0usize..9), 0..3))
        .prop_filter_map("incoherent", |(n, bits, conflicts)| {
            let name = |i: usize| format!("v{i}");
            let mut spec = EventStructureSpec::new((0..n).map(name));
            let mut k = 0;
            for j in 0..n {
                for i in 0..j {
                    if bits[k] < 40 {
                        spec.covers.push((name(i), name(j)));
                    }
                    k += 1;
                }
            }
            for (a, b) in conflicts {
                if a < n && b < n && a != b {
                    spec.base_conflicts.push((name(a), name(b)));
                }
            }
            EventStructure::build(spec).ok()
        })
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|&i| m & (1 << i) != 0).collect())
}

fn is_antichain(e: &EventStructure, s: &[usize]) -> bool {
    s.iter()
        .all(|&a| s.iter().all(|&b| a == b || !e.comparable(EventId::new(a), EventId::new(b))))
}

/// Whether the subgraph induced by `s` has a cycle through all of `s`.
fn hamiltonian(g: &OrthoGraph, s: &[usize]) -> bool {
    fn extend(g: &OrthoGraph, s: &[usize], path: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if path.len() == s.len() {
            return g.adjacent(*path.last().unwrap(), path[0]);
        }
        for (i, &v) in s.iter().enumerate() {
            if !used[i] && g.adjacent(*path.last().unwrap(), v) {
                used[i] = true;
                path.push(v);
                if extend(g, s, path, used) {
                    return true;
                }
                path.pop();
                used[i] = false;
            }
        }
        false
    }
    let mut used = vec![false; s.len()];
    used[0] = true;
    extend(g, s, &mut vec![s[0]], &mut used)
}

/// Whether `s` induces a chordless cycle.
fn induced_cycle(g: &OrthoGraph, s: &[usize]) -> bool {
    s.iter().all(|&v| s.iter().filter(|&&u| g.adjacent(u, v)).count() == 2) && hamiltonian(g, s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn straight_cycle_search_is_complete(e in structure()) {
        let g = OrthoGraph::from_structure(&e);
        let expected = subsets(e.len())
            .any(|s| (4..=6).contains(&s.len()) && is_antichain(&e, &s) && hamiltonian(&g, &s));
        let found = find_straight_cycle(&e, 6);
        prop_assert_eq!(found.is_some(), expected);
        if let Some(c) = found {
            prop_assert_eq!(c.vertices.first(), c.vertices.last());
            let v: Vec<usize> = c.vertices[..c.len()].iter().map(|x| x.index()).collect();
            prop_assert!(v.len() >= 4 && v.len() <= 6);
            prop_assert!(is_antichain(&e, &v));
            for i in 0..v.len() {
                prop_assert!(g.adjacent(v[i], v[(i + 1) % v.len()]));
            }
        }
    }

    #[test]
    fn not_chordal_exactly_on_chordless_cycles(e in structure()) {
        let g = OrthoGraph::from_structure(&e);
        for a in maximal_antichains(&e) {
            let idx: Vec<usize> = a.iter().map(|x| x.index()).collect();
            let expected_chordal = !subsets(idx.len()).any(|s| {
                let s: Vec<usize> = s.iter().map(|&i| idx[i]).collect();
                s.len() >= 4 && induced_cycle(&g, &s)
            });
            match antichain_chordal_coloring(&e, &a) {
                Ok(c) => {
                    prop_assert!(expected_chordal);
                    prop_assert!(c.coloring.is_proper(&g.induced(&idx)));
                }
                Err(ChordalError::NotChordal(_)) => prop_assert!(!expected_chordal),
                Err(err) => prop_assert!(false, "unexpected {}", err),
            }
        }
    }

    #[test]
    fn maximal_antichains_are_maximal(e in structure()) {
        let found: Vec<Vec<usize>> = maximal_antichains(&e)
            .iter()
            .map(|a| a.iter().map(|x| x.index()).collect())
            .collect();
        let expected: Vec<Vec<usize>> = subsets(e.len())
            .filter(|s| !s.is_empty() && is_antichain(&e, s))
            .filter(|s| (0..e.len()).all(|v| s.contains(&v) || !is_antichain(&e, &[s.as_slice(), &[v]].concat())))
            .collect();
        let mut sorted = found.clone();
        sorted.sort();
        let mut want = expected;
        want.sort();
        prop_assert_eq!(sorted, want);
    }
}

#[test]
fn chordless_square_on_an_antichain() {
    // a, b, c, d concurrent around the square; the diagonals inherit their
    // conflicts from below and so are not orthogonal.
    let spec = EventStructureSpec::new(["p", "q", "r", "s", "a", "b", "c", "d"])
        .cover("p", "a")
        .cover("r", "b")
        .cover("q", "c")
        .cover("s", "d")
        .conflict("p", "q")
        .conflict("r", "s");
    let e = EventStructure::build(spec).unwrap();
    let square: Vec<EventId> = ["a", "b", "c", "d"].iter().map(|n| e.event(n).unwrap()).collect();
    assert!(!e.orthogonal(square[0], square[2]) && !e.orthogonal(square[1], square[3]));
    let c = find_straight_cycle(&e, 8).unwrap();
    assert_eq!(c.len(), 4);
    assert_eq!(c.vertices.first(), c.vertices.last());
    assert!(matches!(
        antichain_chordal_coloring(&e, &square),
        Err(ChordalError::NotChordal(_))
    ));
}

#[test]
fn fig1_has_no_straight_cycle() {
    assert!(find_straight_cycle(&fixtures::fig1(), 8).is_none());
}
