//! Constructive width-2 flipper strategies for totally decomposable graphs:
//! cross-edge elimination from a triple of bi-joins, the recursive strategy
//! compiled from the decomposition tree, and the scripted radius-1
//! strategies for the gem and the co-gem.

use std::collections::HashMap;

use thiserror::Error;

use crate::bijoin::{build_decomposition, check_bijoin, BiJoinError, DecompTree, NodeId};
use crate::flips::{apply_flip, FlipError, FlipSpec, Partition};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::obstructions::{obstruction_witness, ObstructionKind};
use crate::verify::FlipperStrategy;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrategyError {
    #[error("({a}, {b}, {c}) is not a triple of bi-joins: {side} vs the rest is not a bi-join")]
    NotATriple { a: VertexSet, b: VertexSet, c: VertexSet, side: VertexSet },
    #[error("no orientation/case of the cross-edge elimination validates for ({a}, {b}, {c})")]
    TripleInvalid { a: VertexSet, b: VertexSet, c: VertexSet },
    #[error("graph is not totally decomposable: induced {kind} on {witness:?}")]
    NotDecomposable { kind: ObstructionKind, witness: Vec<Vertex> },
    #[error(transparent)]
    BiJoin(#[from] BiJoinError),
    #[error(transparent)]
    Flip(#[from] FlipError),
}

/// A partition of V(G) into three (possibly empty) sets, each of which forms
/// a bi-join against the union of the other two. Empty members degenerate to
/// the two-set case with empty halves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BiJoinTriple {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
}

impl BiJoinTriple {
    pub fn new(g: &Graph, a: VertexSet, b: VertexSet, c: VertexSet) -> Result<BiJoinTriple, StrategyError> {
        let full = g.vertex_set();
        assert!(
            !a.intersects(b) && !a.intersects(c) && !b.intersects(c)
                && a.union(b).union(c) == full,
            "members must partition the vertex set"
        );
        for side in [a, b, c] {
            if !side.is_empty() && !side.complement_in(g.order()).is_empty()
                && check_bijoin(g, side).is_none()
            {
                return Err(StrategyError::NotATriple { a, b, c, side });
            }
        }
        Ok(BiJoinTriple { a, b, c })
    }

    pub fn members(&self) -> [VertexSet; 3] {
        [self.a, self.b, self.c]
    }
}

/// The aligned halves (M1, M2) of one member against the rest; empty members
/// (and a member equal to V) get empty halves, making every alignment
/// condition on them vacuous.
fn member_halves(g: &Graph, m: VertexSet) -> (VertexSet, VertexSet) {
    if m.is_empty() || m.complement_in(g.order()).is_empty() {
        return (VertexSet::EMPTY, VertexSet::EMPTY);
    }
    let w = check_bijoin(g, m).expect("validated bi-join");
    (w.half1, m.difference(w.half1))
}

/// (p1, p2, q1, q2) is a bi-join partition of (P, Q) within G[P u Q]:
/// p1 complete to q1 and anti-complete to q2; p2 the reverse.
fn aligned(g: &Graph, p1: VertexSet, p2: VertexSet, q1: VertexSet, q2: VertexSet) -> bool {
    crate::bijoin::complete_between(g, p1, q1)
        && crate::bijoin::anticomplete_between(g, p1, q2)
        && crate::bijoin::complete_between(g, p2, q2)
        && crate::bijoin::anticomplete_between(g, p2, q1)
}

fn no_cross_edges(h: &Graph, triple: &BiJoinTriple) -> bool {
    let [a, b, c] = triple.members();
    for u in h.vertices() {
        let nbrs = h.neighbors(u);
        let own = if a.contains(u) {
            a
        } else if b.contains(u) {
            b
        } else {
            c
        };
        if !nbrs.is_subset_of(own) {
            return false;
        }
    }
    true
}

fn spec_from_sides(n: usize, x: VertexSet, y: VertexSet, cross_only: bool) -> FlipSpec {
    // drop empty parts; pairs naming a dropped part disappear with it
    let mut parts = Vec::new();
    for s in [x, y] {
        if !s.is_empty() {
            parts.push(s);
        }
    }
    if parts.is_empty() {
        return FlipSpec::identity(n);
    }
    let partition = Partition::new(parts).expect("sides are disjoint and nonempty");
    let idx = |s: VertexSet| partition.parts().iter().position(|&p| p == s);
    let mut pairs = Vec::new();
    if cross_only {
        if let (Some(i), Some(j)) = (idx(x), idx(y)) {
            pairs.push((i, j));
        }
    } else {
        for s in [x, y] {
            if let Some(i) = idx(s) {
                pairs.push((i, i));
            }
        }
    }
    FlipSpec::new(partition, pairs).expect("indices in range")
}

/// A 2-flip after which no edge joins two distinct members of the triple.
///
/// The member halves are aligned by bounded search: anchor on A's canonical
/// orientation, try the four orientation assignments of B and C, and for
/// each aligned combination fire whichever of the two case constructions
/// matches the (B, C) alignment; the emitted flip is validated by a direct
/// edge scan before being returned.
pub fn eliminate_cross_edges(g: &Graph, triple: &BiJoinTriple) -> Result<FlipSpec, StrategyError> {
    let n = g.order();
    let (a1, a2) = member_halves(g, triple.a);
    let (b1_0, b2_0) = member_halves(g, triple.b);
    let (c1_0, c2_0) = member_halves(g, triple.c);

    for swap_b in [false, true] {
        let (b1, b2) = if swap_b { (b2_0, b1_0) } else { (b1_0, b2_0) };
        if !aligned(g, a1, a2, b1, b2) {
            continue;
        }
        for swap_c in [false, true] {
            let (c1, c2) = if swap_c { (c2_0, c1_0) } else { (c1_0, c2_0) };
            if !aligned(g, a1, a2, c1, c2) {
                continue;
            }
            // case 1: (B1,B2,C1,C2) aligns -> flip inside X and inside Y
            if aligned(g, b1, b2, c1, c2) {
                let x = a1.union(b1).union(c1);
                let y = a2.union(b2).union(c2);
                let spec = spec_from_sides(n, x, y, false);
                let h = apply_flip(g, &spec)?;
                if no_cross_edges(&h, triple) {
                    return Ok(spec);
                }
            }
            // case 2: (B1,B2,C2,C1) aligns -> flip between X and Y
            if aligned(g, b1, b2, c2, c1) {
                let x = a1.union(b2).union(c2);
                let y = a2.union(b1).union(c1);
                let spec = spec_from_sides(n, x, y, true);
                let h = apply_flip(g, &spec)?;
                if no_cross_edges(&h, triple) {
                    return Ok(spec);
                }
            }
        }
    }
    Err(StrategyError::TripleInvalid { a: triple.a, b: triple.b, c: triple.c })
}

/// One compiled phase of the recursive strategy: at tree node `node`, after
/// announcing `spec` the runner is either inside `descend_into` (the i-th
/// child's vertex set) or still in the tail of later children.
#[derive(Clone, Debug)]
pub struct Phase {
    pub spec: FlipSpec,
    pub triple: BiJoinTriple,
    pub descend_into: VertexSet,
    /// vertex set of the last child; after the final phase the runner is
    /// either in `descend_into` or here
    pub tail_last: VertexSet,
}

/// Program state of the synthesized strategy.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum SynthState {
    Start,
    /// `phase` (1-based) was just announced at `node`
    Announced { node: NodeId, phase: usize },
    /// direct one-round flip was announced (n <= 2)
    DirectDone,
    /// preconditions violated: loop the identity flip so the verifier
    /// reports a clean escape instead of panicking
    Stuck,
}

/// Width-2 strategy compiled from the bi-join decomposition: at each internal
/// node, phase i announces the cross-edge-eliminating flip of the i-th child
/// triple; observing the runner decides descent.
pub struct SynthesizedStrategy {
    g: Graph,
    tree: Option<DecompTree>,
    root: Option<NodeId>,
    /// (node, phase) -> compiled phase, phases numbered 1..=m-1
    plan: HashMap<(NodeId, usize), Phase>,
    /// child lists per rooted node
    children: HashMap<NodeId, Vec<NodeId>>,
    /// direct one-round flip for n <= 2
    direct: Option<FlipSpec>,
}

impl SynthesizedStrategy {
    pub fn tree(&self) -> Option<&DecompTree> {
        self.tree.as_ref()
    }

    pub fn root(&self) -> Option<NodeId> {
        self.root
    }

    pub fn plan(&self) -> &HashMap<(NodeId, usize), Phase> {
        &self.plan
    }

    pub fn children_of(&self, t: NodeId) -> &[NodeId] {
        self.children.get(&t).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn direct_spec(&self) -> Option<&FlipSpec> {
        self.direct.as_ref()
    }

    /// Phase soundness: each announced phase flip leaves no edges incident
    /// with two distinct members of its triple (so the tail of unvisited
    /// children is cut off from the rest).
    pub fn check_phase_soundness(&self) -> bool {
        self.plan.values().all(|phase| {
            apply_flip(&self.g, &phase.spec)
                .map(|h| no_cross_edges(&h, &phase.triple))
                .unwrap_or(false)
        })
    }

    /// Recursion precondition: whenever the program can descend after a
    /// phase flip (into the phase's child, or into the tail that the runner
    /// is confined to), the announced graph has no edges between that set
    /// and the rest. Both sets are members of the phase triple, so this
    /// re-derives the guarantee from the announced graph itself.
    pub fn check_descent_preconditions(&self) -> bool {
        self.plan.values().all(|phase| {
            let h = match apply_flip(&self.g, &phase.spec) {
                Ok(h) => h,
                Err(_) => return false,
            };
            let cut_off = |x: VertexSet| {
                x.iter().all(|u| h.neighbors(u).is_subset_of(x))
            };
            cut_off(phase.triple.b) && cut_off(phase.triple.c)
        })
    }
}

/// Compiles the recursive strategy for an obstruction-free graph. Fails with
/// the obstruction witness otherwise.
pub fn synthesize_strategy(g: &Graph) -> Result<SynthesizedStrategy, StrategyError> {
    if let Some((kind, witness)) = obstruction_witness(g) {
        return Err(StrategyError::NotDecomposable { kind, witness });
    }
    let n = g.order();
    if n <= 2 {
        let spec = FlipSpec::new(Partition::singletons(n), g.edges())
            .expect("edge pairs index singleton parts");
        return Ok(SynthesizedStrategy {
            g: *g,
            tree: None,
            root: None,
            plan: HashMap::new(),
            children: HashMap::new(),
            direct: Some(spec),
        });
    }

    let tree = build_decomposition(g)?;
    debug_assert!(
        tree.all_labels_complete(),
        "obstruction-free graphs decompose into complete nodes"
    );
    let root = tree.default_root().expect("n >= 3 has an internal node");

    let mut plan = HashMap::new();
    let mut children_map = HashMap::new();
    // walk the rooted tree, compiling phases at every internal node
    let mut stack = vec![(root, None::<NodeId>)];
    while let Some((t, parent)) = stack.pop() {
        if tree.is_leaf(t) {
            continue;
        }
        let children = tree.children(t, parent);
        let m = children.len();
        debug_assert!(m >= 2, "internal nodes have at least two children");
        let x_t = match parent {
            Some(p) => tree.leaf_set_toward(t, p),
            None => g.vertex_set(),
        };
        let y_t = x_t.complement_in(n);
        let child_sets: Vec<VertexSet> =
            children.iter().map(|&c| tree.leaf_set_toward(c, t)).collect();

        let mut prefix = VertexSet::EMPTY;
        for i in 1..m {
            let first = y_t.union(prefix);
            let mid = child_sets[i - 1];
            let tail = child_sets[i..].iter().fold(VertexSet::EMPTY, |acc, s| acc.union(*s));
            let triple = BiJoinTriple::new(g, first, mid, tail)?;
            let spec = eliminate_cross_edges(g, &triple)?;
            plan.insert(
                (t, i),
                Phase {
                    spec,
                    triple,
                    descend_into: mid,
                    tail_last: child_sets[m - 1],
                },
            );
            prefix = prefix.union(mid);
        }
        children_map.insert(t, children.clone());
        for &c in &children {
            stack.push((c, Some(t)));
        }
    }

    Ok(SynthesizedStrategy {
        g: *g,
        tree: Some(tree),
        root: Some(root),
        plan,
        children: children_map,
        direct: None,
    })
}

impl SynthesizedStrategy {
    fn child_set(&self, t: NodeId, i: usize) -> VertexSet {
        let c = self.children_of(t)[i];
        match &self.tree {
            Some(tree) => tree.leaf_set_toward(c, t),
            None => VertexSet::EMPTY,
        }
    }

    /// Enter node `t`: announce its first phase, or recurse into the single
    /// structure below when `t` is a leaf (unreachable for non-captured
    /// runners).
    fn enter(&self, t: NodeId) -> (SynthState, FlipSpec) {
        if self.plan.contains_key(&(t, 1)) {
            let phase = &self.plan[&(t, 1)];
            (SynthState::Announced { node: t, phase: 1 }, phase.spec.clone())
        } else {
            // leaf entered: the runner would already be captured; loop identity
            (SynthState::Stuck, FlipSpec::identity(self.g.order()))
        }
    }
}

impl FlipperStrategy for SynthesizedStrategy {
    type State = SynthState;

    fn initial_state(&self) -> SynthState {
        SynthState::Start
    }

    fn next_flip(&self, state: &SynthState, runner: Vertex) -> (SynthState, FlipSpec) {
        match state {
            SynthState::Start => match (&self.direct, self.root) {
                (Some(spec), _) => (SynthState::DirectDone, spec.clone()),
                (None, Some(root)) => self.enter(root),
                (None, None) => (SynthState::Stuck, FlipSpec::identity(self.g.order())),
            },
            SynthState::Announced { node, phase } => {
                let t = *node;
                let i = *phase;
                let m = self.children_of(t).len();
                let phase_data = &self.plan[&(t, i)];
                if phase_data.descend_into.contains(runner) {
                    return self.enter(self.children_of(t)[i - 1]);
                }
                if i < m - 1 {
                    let next = &self.plan[&(t, i + 1)];
                    return (SynthState::Announced { node: t, phase: i + 1 }, next.spec.clone());
                }
                if self.child_set(t, m - 1).contains(runner) {
                    return self.enter(self.children_of(t)[m - 1]);
                }
                (SynthState::Stuck, FlipSpec::identity(self.g.order()))
            }
            SynthState::DirectDone | SynthState::Stuck => {
                (SynthState::Stuck, FlipSpec::identity(self.g.order()))
            }
        }
    }

    fn declared_width(&self) -> usize {
        2
    }
}

/// One instruction of a scripted strategy.
#[derive(Clone, Debug)]
pub enum ScriptStep {
    Announce { spec: FlipSpec, next: usize },
    /// first arm whose set contains the observed runner wins
    Branch { arms: Vec<(VertexSet, usize)>, fallback: usize },
    /// loop the identity flip forever
    Halt,
}

/// A short branching script of flips (at most 4 announcements per play).
#[derive(Clone, Debug)]
pub struct ScriptedStrategy {
    width: usize,
    n: usize,
    steps: Vec<ScriptStep>,
}

impl ScriptedStrategy {
    pub fn steps(&self) -> &[ScriptStep] {
        &self.steps
    }

    /// XOR every announced pair set with the all-pairs set of its partition;
    /// running the result on the complement graph announces the same graphs.
    pub fn complement_conjugate(&self) -> ScriptedStrategy {
        let steps = self
            .steps
            .iter()
            .map(|s| match s {
                ScriptStep::Announce { spec, next } => ScriptStep::Announce {
                    spec: spec.complement_conjugate(),
                    next: *next,
                },
                other => other.clone(),
            })
            .collect();
        ScriptedStrategy { width: self.width, n: self.n, steps }
    }

}

impl FlipperStrategy for ScriptedStrategy {
    type State = usize;

    fn initial_state(&self) -> usize {
        0
    }

    fn next_flip(&self, state: &usize, runner: Vertex) -> (usize, FlipSpec) {
        let mut pc = *state;
        loop {
            match &self.steps[pc] {
                ScriptStep::Announce { spec, next } => return (*next, spec.clone()),
                ScriptStep::Branch { arms, fallback } => {
                    pc = arms
                        .iter()
                        .find(|(s, _)| s.contains(runner))
                        .map(|&(_, j)| j)
                        .unwrap_or(*fallback);
                }
                ScriptStep::Halt => return (pc, FlipSpec::identity(self.n)),
            }
        }
    }

    fn declared_width(&self) -> usize {
        self.width
    }
}

/// The literal 4-round branching radius-1 script on a co-gem labeled with
/// isolated vertex `w` and induced path `a-b-c-d`.
fn cogem_script(w: Vertex, a: Vertex, b: Vertex, c: Vertex, d: Vertex) -> ScriptedStrategy {
    let set = |vs: &[Vertex]| VertexSet::from_iter(vs.iter().copied());
    let spec = |p1: &[Vertex], p2: &[Vertex], pairs: &[(usize, usize)]| {
        let parts = vec![set(p1), set(p2)];
        // Partition::new sorts parts by smallest member; keep index 0 = p1
        let sorted = {
            let mut ps = parts.clone();
            ps.sort_by_key(|p| p.min_vertex().unwrap());
            ps
        };
        let pos = |target: VertexSet| sorted.iter().position(|&p| p == target).unwrap();
        let mapped: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(i, j)| (pos(parts[i]), pos(parts[j])))
            .collect();
        FlipSpec::new(Partition::new(sorted).unwrap(), mapped).unwrap()
    };

    // round 1: (A1,B1) = ({w,d},{a,b,c}), announce G + (B1,B1)
    let s1 = spec(&[w, d], &[a, b, c], &[(1, 1)]);
    // round 2: (A2,B2) = ({w,a,b},{c,d}), announce G + (A2,A2) + (B2,B2)
    let s2 = spec(&[w, a, b], &[c, d], &[(0, 0), (1, 1)]);
    // case 1 (runner at a): (A3,B3) = ({a,b},{w,c,d}), announce G + (A3,A3)
    let s3_case1 = spec(&[a, b], &[w, c, d], &[(0, 0)]);
    // case 2 (runner at c): (A3,B3) = ({w,a,c},{b,d}), announce G + (A3,B3)
    let s3_case2 = spec(&[w, a, c], &[b, d], &[(0, 1)]);
    // then (A4,B4) = ({a,b,c},{w,d}), announce G + (A4,A4)
    let s4 = spec(&[a, b, c], &[w, d], &[(0, 0)]);

    ScriptedStrategy {
        width: 2,
        n: 5,
        steps: vec![
            ScriptStep::Announce { spec: s1, next: 1 },          // 0
            ScriptStep::Announce { spec: s2, next: 2 },          // 1
            ScriptStep::Branch {
                arms: vec![(VertexSet::singleton(a), 3), (VertexSet::singleton(c), 4)],
                fallback: 6,
            }, // 2
            ScriptStep::Announce { spec: s3_case1, next: 6 },    // 3
            ScriptStep::Announce { spec: s3_case2, next: 5 },    // 4
            ScriptStep::Announce { spec: s4, next: 6 },          // 5
            ScriptStep::Halt,                                    // 6
        ],
    }
}

/// The scripted radius-1 strategies: the literal co-gem script on the
/// canonical co-gem, and its complement-conjugate on the canonical gem
/// (whose complement is a co-gem with isolated vertex 4 and path 2-0-3-1).
/// Returns `None` for C5 and the bull.
pub fn radius1_script(kind: ObstructionKind) -> Option<ScriptedStrategy> {
    match kind {
        ObstructionKind::CoGem => Some(cogem_script(4, 0, 1, 2, 3)),
        ObstructionKind::Gem => Some(cogem_script(4, 2, 0, 3, 1).complement_conjugate()),
        ObstructionKind::C5 | ObstructionKind::Bull => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Radius;
    use crate::verify::verify_strategy;

    #[test]
    fn k6_triple_collapses_to_one_part() {
        let g = Graph::complete(6);
        let triple = BiJoinTriple::new(
            &g,
            VertexSet::from_iter([0, 1]),
            VertexSet::from_iter([2, 3]),
            VertexSet::from_iter([4, 5]),
        )
        .unwrap();
        let spec = eliminate_cross_edges(&g, &triple).unwrap();
        assert_eq!(spec.width(), 1);
        assert_eq!(spec.partition().parts(), &[VertexSet::full(6)]);
        let h = apply_flip(&g, &spec).unwrap();
        assert!(h.is_edgeless());
    }

    #[test]
    fn c6_antipodal_triple_fires_the_cross_case() {
        let g = Graph::cycle(6);
        let triple = BiJoinTriple::new(
            &g,
            VertexSet::from_iter([0, 3]),
            VertexSet::from_iter([1, 4]),
            VertexSet::from_iter([2, 5]),
        )
        .unwrap();
        let spec = eliminate_cross_edges(&g, &triple).unwrap();
        assert_eq!(
            spec.to_string(),
            "parts=[{0,2,4},{1,3,5}] pairs=[(0,1)]"
        );
        let h = apply_flip(&g, &spec).unwrap();
        assert_eq!(h.edges(), vec![(0, 3), (1, 4), (2, 5)]);
    }

    #[test]
    fn anticomplete_triple_postcondition() {
        let g = Graph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]);
        let triple = BiJoinTriple::new(
            &g,
            VertexSet::from_iter([0, 1]),
            VertexSet::from_iter([2, 3]),
            VertexSet::from_iter([4, 5]),
        )
        .unwrap();
        let spec = eliminate_cross_edges(&g, &triple).unwrap();
        let h = apply_flip(&g, &spec).unwrap();
        assert!(no_cross_edges(&h, &triple));
    }

    #[test]
    fn empty_member_degenerates() {
        let g = Graph::cycle(6);
        let triple = BiJoinTriple::new(
            &g,
            VertexSet::EMPTY,
            VertexSet::from_iter([0, 3]),
            VertexSet::from_iter([1, 2, 4, 5]),
        )
        .unwrap();
        let spec = eliminate_cross_edges(&g, &triple).unwrap();
        let h = apply_flip(&g, &spec).unwrap();
        assert!(no_cross_edges(&h, &triple));
    }

    #[test]
    fn synthesized_strategy_verifies_on_c6_and_p4() {
        for g in [Graph::cycle(6), Graph::path(4)] {
            let strat = synthesize_strategy(&g).unwrap();
            assert!(strat.check_phase_soundness());
            assert!(strat.check_descent_preconditions());
            let report = verify_strategy(&g, Radius::Infinite, &strat).unwrap();
            assert!(report.captures, "escape on {g:?}");
        }
    }

    #[test]
    fn edgeless_five_captured_in_one_round() {
        let g = Graph::empty(5);
        let strat = synthesize_strategy(&g).unwrap();
        let report = verify_strategy(&g, Radius::Infinite, &strat).unwrap();
        assert!(report.captures);
        assert_eq!(report.max_rounds, 1);
    }

    #[test]
    fn synthesis_rejects_obstructions() {
        match synthesize_strategy(&Graph::cycle(5)) {
            Err(StrategyError::NotDecomposable { kind, .. }) => {
                assert_eq!(kind, ObstructionKind::C5);
            }
            other => panic!("expected rejection, got {:?}", other.is_ok()),
        }
    }

    #[test]
    fn tiny_graphs_direct_script() {
        for g in [Graph::empty(1), Graph::complete(2), Graph::empty(2)] {
            let strat = synthesize_strategy(&g).unwrap();
            assert!(strat.direct_spec().is_some());
            let report = verify_strategy(&g, Radius::finite(1), &strat).unwrap();
            assert!(report.captures);
            assert_eq!(report.max_rounds, 1);
        }
    }

    #[test]
    fn cogem_script_wins_at_radius_1() {
        let g = ObstructionKind::CoGem.graph();
        let script = radius1_script(ObstructionKind::CoGem).unwrap();
        let report = verify_strategy(&g, Radius::finite(1), &script).unwrap();
        assert!(report.captures);
        assert!(report.max_rounds <= 4);
    }

    #[test]
    fn gem_script_wins_at_radius_1() {
        let g = ObstructionKind::Gem.graph();
        let script = radius1_script(ObstructionKind::Gem).unwrap();
        let report = verify_strategy(&g, Radius::finite(1), &script).unwrap();
        assert!(report.captures);
    }

    #[test]
    fn cogem_script_fails_at_radius_2() {
        let g = ObstructionKind::CoGem.graph();
        let script = radius1_script(ObstructionKind::CoGem).unwrap();
        let report = verify_strategy(&g, Radius::finite(2), &script).unwrap();
        assert!(!report.captures);
        assert!(report.escape.is_some());
    }

    #[test]
    fn all_emitted_specs_have_width_at_most_2() {
        for n in 3..=6 {
            for g in crate::iso::enumerate_classes(n).unwrap() {
                if !crate::obstructions::is_obstruction_free(&g) {
                    continue;
                }
                let strat = synthesize_strategy(&g).unwrap();
                for phase in strat.plan().values() {
                    assert!(phase.spec.width() <= 2);
                }
            }
        }
    }
}
