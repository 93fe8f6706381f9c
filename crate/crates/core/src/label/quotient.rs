//! Product labellings through a partition of the events, and the twelve
//! letter labelling of simple structures built on it.

use crate::bits::BitMatrix;
use crate::graph::{Coloring, OrthoGraph};
use crate::report::StructuralReport;
use crate::structure::{EventId, EventStructure};

use super::tree::label_tree;
use super::{LabelError, Labelling};

/// Disjoint classes covering every event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub classes: Vec<Vec<EventId>>,
}

impl Partition {
    pub fn singletons(e: &EventStructure) -> Self {
        Self {
            classes: e.events().map(|x| vec![x]).collect(),
        }
    }

    pub fn whole(e: &EventStructure) -> Self {
        Self {
            classes: if e.is_empty() { Vec::new() } else { vec![e.events().collect()] },
        }
    }

    /// Class index of every event.
    pub fn class_of(&self, e: &EventStructure) -> Result<Vec<usize>, LabelError> {
        let mut owner = vec![usize::MAX; e.len()];
        for (i, class) in self.classes.iter().enumerate() {
            if class.is_empty() {
                return Err(LabelError::InvalidPartition(format!("class {i} is empty")));
            }
            for &x in class {
                if x.index() >= e.len() {
                    return Err(LabelError::InvalidPartition(format!("class {i} names an unknown event")));
                }
                if owner[x.index()] != usize::MAX {
                    return Err(LabelError::InvalidPartition(format!("`{}` lies in two classes", e.name(x))));
                }
                owner[x.index()] = i;
            }
        }
        if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(LabelError::InvalidPartition(format!(
                "`{}` lies in no class",
                e.name(EventId::new(x))
            )));
        }
        Ok(owner)
    }
}

/// Classes are adjacent iff some members are orthogonal; no self-loops.
pub fn quotient_graph(e: &EventStructure, p: &Partition) -> Result<OrthoGraph, LabelError> {
    let owner = p.class_of(e)?;
    let mut edges = Vec::new();
    for (a, b) in e.orthogonal_pairs() {
        let (ca, cb) = (owner[a.index()], owner[b.index()]);
        if ca != cb {
            edges.push((ca.min(cb), ca.max(cb)));
        }
    }
    let names = p
        .classes
        .iter()
        .map(|c| {
            let members: Vec<&str> = c.iter().map(|&x| e.name(x)).collect();
            format!("[{}]", members.join(","))
        })
        .collect();
    Ok(OrthoGraph::from_edges(names, &edges))
}

/// Pairs each event's colour inside its class with its class's colour in
/// the quotient graph.
///
/// `class_colorings[i]` is indexed like `p.classes[i]`.
pub fn label_quotient(
    e: &EventStructure,
    p: &Partition,
    class_colorings: &[Coloring],
    quot: &Coloring,
) -> Result<Labelling, LabelError> {
    let owner = p.class_of(e)?;
    if class_colorings.len() != p.classes.len() {
        return Err(LabelError::InvalidPartition(format!(
            "{} class colourings for {} classes",
            class_colorings.len(),
            p.classes.len()
        )));
    }
    let g = OrthoGraph::from_structure(e);
    let mut inner = vec![0usize; e.len()];
    for (i, (class, coloring)) in p.classes.iter().zip(class_colorings).enumerate() {
        let idx: Vec<usize> = class.iter().map(|x| x.index()).collect();
        if !coloring.is_proper(&g.induced(&idx)) {
            return Err(LabelError::ImproperClassColoring(i));
        }
        for (k, &x) in class.iter().enumerate() {
            inner[x.index()] = coloring.color(k);
        }
    }
    if !quot.is_proper(&quotient_graph(e, p)?) {
        return Err(LabelError::ImproperQuotientColoring);
    }
    let raw: Vec<String> = e
        .events()
        .map(|x| format!("c{}q{}", inner[x.index()], quot.color(owner[x.index()])))
        .collect();
    Ok(Labelling::canonical(&raw))
}

/// Intermediate results of the simple-structure construction, on the
/// structure lifted with a bottom event.
#[derive(Debug, Clone)]
pub struct Simple12Parts {
    pub lifted: EventStructure,
    pub bottom: EventId,
    /// Events with two lower covers.
    pub two_covers: Vec<EventId>,
    /// For events with one lower cover, the greatest event below them whose
    /// lower-cover count is not one.
    pub root: Vec<Option<EventId>>,
    /// Classes: the bottom, then the trees by age of their root, then the
    /// events with two lower covers (if any).
    pub partition: Partition,
    pub class_colorings: Vec<Coloring>,
    pub quotient_coloring: Coloring,
}

fn assertion(msg: String) -> LabelError {
    LabelError::GreedyAssertionFailed(msg)
}

/// Builds the partition and colourings used by [`label_simple12`], checking
/// each greedy bound on the way.
pub fn simple12_partition(e: &EventStructure) -> Result<Simple12Parts, LabelError> {
    super::check_degree(e, 3)?;
    if !StructuralReport::of(e).is_simple {
        return Err(LabelError::NotSimple);
    }
    let lifted = e.lift_bottom();
    let le = &lifted;
    let bottom = EventId::new(e.len());
    let covers = |x: EventId| le.lower_covers(x).len();
    if let Some(x) = le.events().find(|&x| covers(x) >= 3) {
        return Err(assertion(format!("`{}` has three lower covers", le.name(x))));
    }

    // Age: by height, then declaration order.
    let mut age: Vec<EventId> = le.events().collect();
    age.sort_by_key(|&x| (le.height(x), x));
    let mut rank = vec![0usize; le.len()];
    for (i, &x) in age.iter().enumerate() {
        rank[x.index()] = i;
    }
    let older = |y: EventId, x: EventId| rank[y.index()] < rank[x.index()];
    let below_of = |x: EventId| -> Vec<EventId> {
        let mut v = le.lower_covers(x).to_vec();
        v.sort_unstable();
        v
    };
    // B_x: neighbours all of whose lower covers are lower covers of x.
    let b_set = |x: EventId| -> Vec<EventId> {
        let mine = below_of(x);
        le.neighbors(x)
            .filter(|&y| le.lower_covers(y).iter().all(|c| mine.binary_search(c).is_ok()))
            .collect()
    };

    let two_covers: Vec<EventId> = age.iter().copied().filter(|&x| covers(x) == 2).collect();
    let mut two_color = vec![usize::MAX; le.len()];
    for &x in &two_covers {
        let b = b_set(x);
        if b.len() > 2 {
            return Err(assertion(format!("B of `{}` has {} elements", le.name(x), b.len())));
        }
        let older_nbrs: Vec<EventId> = le.neighbors(x).filter(|&y| older(y, x)).collect();
        if let Some(y) = older_nbrs.iter().find(|y| !b.contains(y)) {
            return Err(assertion(format!(
                "older neighbour `{}` of `{}` is outside B",
                le.name(*y),
                le.name(x)
            )));
        }
        let taken: Vec<usize> = older_nbrs.iter().map(|y| two_color[y.index()]).collect();
        two_color[x.index()] = (0..3)
            .find(|c| !taken.contains(c))
            .ok_or_else(|| assertion(format!("no colour left for `{}`", le.name(x))))?;
    }

    let mut root = vec![None; le.len()];
    for x in le.events().filter(|&x| covers(x) == 1) {
        let mut z = x;
        while covers(z) == 1 {
            z = le.lower_covers(z)[0];
        }
        let escapes = le
            .down_set(x)
            .ones()
            .map(EventId::new)
            .any(|w| covers(w) != 1 && !le.leq(w, z));
        if escapes {
            return Err(assertion(format!("no greatest non-tree event below `{}`", le.name(x))));
        }
        root[x.index()] = Some(z);
    }

    let mut roots: Vec<EventId> = root.iter().flatten().copied().collect();
    roots.sort_by_key(|&z| rank[z.index()]);
    roots.dedup();
    let trees: Vec<Vec<EventId>> = roots
        .iter()
        .map(|&z| le.events().filter(|&x| root[x.index()] == Some(z)).collect())
        .collect();

    let mut tree_of = vec![usize::MAX; le.len()];
    for (t, members) in trees.iter().enumerate() {
        for &x in members {
            tree_of[x.index()] = t;
        }
    }
    let mut tree_adj = BitMatrix::new(trees.len());
    // First witnessing pair (older tree member, younger tree member).
    let mut witness = vec![vec![None; trees.len()]; trees.len()];
    for (a, b) in le.orthogonal_pairs() {
        let (ta, tb) = (tree_of[a.index()], tree_of[b.index()]);
        if ta == usize::MAX || tb == usize::MAX || ta == tb {
            continue;
        }
        tree_adj.set_sym(ta, tb);
        witness[ta][tb].get_or_insert((a, b));
        witness[tb][ta].get_or_insert((b, a));
    }

    let mut tree_color = vec![usize::MAX; trees.len()];
    for t in 0..trees.len() {
        let rho_x = roots[t];
        let earlier: Vec<usize> = (0..t).filter(|&s| tree_adj.get(s, t)).collect();
        let b = b_set(rho_x);
        let mut images = Vec::with_capacity(earlier.len());
        for &s in &earlier {
            let (y1, x1) = witness[s][t].expect("adjacent trees have a witness");
            if !le.orthogonal(y1, rho_x) {
                return Err(assertion(format!(
                    "`{}` is not orthogonal to root `{}`",
                    le.name(y1),
                    le.name(rho_x)
                )));
            }
            let _ = x1;
            // Chain from y1 down to the root of its tree.
            let mut chain = vec![y1];
            let mut z = y1;
            while z != roots[s] {
                z = le.lower_covers(z)[0];
                chain.push(z);
            }
            let image = chain
                .iter()
                .rev()
                .copied()
                .find(|&z| !le.leq(z, rho_x))
                .ok_or_else(|| assertion(format!("tree of `{}` has no image", le.name(y1))))?;
            if !b.contains(&image) {
                return Err(assertion(format!(
                    "image `{}` is outside B of root `{}`",
                    le.name(image),
                    le.name(rho_x)
                )));
            }
            if images.contains(&image) {
                return Err(assertion(format!("two trees map to `{}`", le.name(image))));
            }
            images.push(image);
        }
        if earlier.len() > 2 {
            return Err(assertion(format!(
                "tree rooted at `{}` has {} older neighbouring trees",
                le.name(rho_x),
                earlier.len()
            )));
        }
        let taken: Vec<usize> = earlier.iter().map(|&s| tree_color[s]).collect();
        tree_color[t] = (0..3).find(|c| !taken.contains(c)).expect("at most two older trees");
    }

    let mut classes = vec![vec![bottom]];
    let mut class_colorings = vec![Coloring::normalized(&[0])];
    let mut quot = vec![0usize];
    for (t, members) in trees.iter().enumerate() {
        let (_, symbol, _) = label_tree(le, members)?;
        let raw: Vec<usize> = members.iter().map(|x| symbol[x.index()].expect("tree member")).collect();
        classes.push(members.clone());
        class_colorings.push(Coloring::normalized(&raw));
        quot.push(tree_color[t]);
    }
    if !two_covers.is_empty() {
        let mut members = two_covers.clone();
        members.sort_unstable();
        let raw: Vec<usize> = members.iter().map(|x| two_color[x.index()]).collect();
        classes.push(members);
        class_colorings.push(Coloring::normalized(&raw));
        quot.push(3);
    }
    let mut two_covers = two_covers;
    two_covers.sort_unstable();
    Ok(Simple12Parts {
        bottom,
        two_covers,
        root,
        partition: Partition { classes },
        class_colorings,
        quotient_coloring: Coloring::normalized(&quot),
        lifted,
    })
}

/// Nice labelling with at most twelve symbols of a simple structure of
/// degree at most 3.
pub fn label_simple12(e: &EventStructure) -> Result<Labelling, LabelError> {
    let parts = simple12_partition(e)?;
    let lam = label_quotient(
        &parts.lifted,
        &parts.partition,
        &parts.class_colorings,
        &parts.quotient_coloring,
    )?;
    let original: Vec<usize> = lam.assignment()[..e.len()].to_vec();
    Ok(Labelling::canonical(&original))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::chromatic_number;
    use crate::label::verify_nice;
    use crate::structure::EventStructureSpec;

    #[test]
    fn quotient_graph_examples() {
        let e = fixtures::fig1();
        let single = quotient_graph(&e, &Partition::singletons(&e)).unwrap();
        assert_eq!(single.edges(), OrthoGraph::from_structure(&e).edges());
        let whole = quotient_graph(&e, &Partition::whole(&e)).unwrap();
        assert_eq!(whole.len(), 1);
        assert!(whole.edges().is_empty());
    }

    #[test]
    fn invalid_partitions() {
        let e = fixtures::pair_conc();
        let (a, b) = (EventId::new(0), EventId::new(1));
        let bad = |classes| quotient_graph(&e, &Partition { classes }).unwrap_err();
        assert!(matches!(bad(vec![vec![a]]), LabelError::InvalidPartition(_)));
        assert!(matches!(bad(vec![vec![a, b], vec![b]]), LabelError::InvalidPartition(_)));
        assert!(matches!(bad(vec![vec![a, b], vec![]]), LabelError::InvalidPartition(_)));
    }

    #[test]
    fn singleton_quotient_reproduces_the_coloring() {
        let e = fixtures::fig1();
        let p = Partition::singletons(&e);
        let (_, exact) = chromatic_number(&OrthoGraph::from_structure(&e)).unwrap();
        let ones = vec![Coloring::normalized(&[0]); e.len()];
        let lam = label_quotient(&e, &p, &ones, &exact).unwrap();
        assert_eq!(lam.assignment(), Labelling::canonical(exact.colors()).assignment());
    }

    #[test]
    fn two_class_pair_conc() {
        let e = fixtures::pair_conc();
        let p = Partition::singletons(&e);
        let ones = vec![Coloring::normalized(&[0]); 2];
        let lam = label_quotient(&e, &p, &ones, &Coloring::normalized(&[0, 1])).unwrap();
        assert_eq!(lam.symbols_used(), 2);
        assert_eq!(
            label_quotient(&e, &p, &ones, &Coloring::normalized(&[0, 0])).unwrap_err(),
            LabelError::ImproperQuotientColoring
        );
        let whole = Partition::whole(&e);
        assert_eq!(
            label_quotient(&e, &whole, &[Coloring::normalized(&[0, 0])], &Coloring::normalized(&[0])).unwrap_err(),
            LabelError::ImproperClassColoring(0)
        );
    }

    #[test]
    fn fig1_simple12() {
        let e = fixtures::fig1();
        let parts = simple12_partition(&e).unwrap();
        let le = &parts.lifted;
        let name = |x: EventId| le.name(x).to_owned();
        assert_eq!(parts.two_covers.iter().map(|&x| name(x)).collect::<Vec<_>>(), ["4"]);
        let classes: Vec<Vec<String>> = parts
            .partition
            .classes
            .iter()
            .map(|c| c.iter().map(|&x| name(x)).collect())
            .collect();
        assert_eq!(
            classes,
            vec![
                vec!["bot".to_string()],
                vec!["1".into(), "2".into(), "3".into(), "5".into(), "6".into(), "7".into(), "8".into(), "9".into()],
                vec!["4".into()],
            ]
        );
        let lam = label_simple12(&e).unwrap();
        assert!(lam.symbols_used() <= 12);
        assert!(verify_nice(&e, &lam).unwrap().is_empty());
    }

    #[test]
    fn simple12_on_chain_and_fork() {
        let chain = fixtures::chain3();
        let lam = label_simple12(&chain).unwrap();
        assert!(lam.symbols_used() <= 3);
        let fork = fixtures::fork();
        let lam = label_simple12(&fork).unwrap();
        assert!(lam.symbols_used() <= 12);
        assert!(verify_nice(&fork, &lam).unwrap().is_empty());
    }

    #[test]
    fn simple12_preconditions() {
        let tri = EventStructure::build(EventStructureSpec::new(["a", "b", "c"])).unwrap();
        assert_eq!(label_simple12(&tri).unwrap_err(), LabelError::NotSimple);
        let k4 = EventStructure::build(EventStructureSpec::new(["a", "b", "c", "d"])).unwrap();
        assert_eq!(label_simple12(&k4).unwrap_err(), LabelError::DegreeTooHigh { degree: 4, max: 3 });
    }
}
