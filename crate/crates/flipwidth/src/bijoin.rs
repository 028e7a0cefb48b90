//! Bi-joins, strong bi-joins, and the bi-join decomposition tree.
//!
//! A bipartition (V1,V2) is a bi-join when V1 splits into halves (W1, V1\W1)
//! with W1 complete to some W2 <= V2 and anti-complete to the rest, and
//! V1\W1 the other way around. Detection works on neighborhood traces: the
//! bipartition is a bi-join iff V1's vertices see at most two distinct
//! traces on V2 and, if two, they are complementary in V2.
//!
//! Strong bi-joins overlap no other bi-join, so they form a cross-free
//! family realizable as a tree: leaves are vertices and every tree edge's
//! bipartition is a strong bi-join. Internal nodes are labeled complete when
//! every union of neighbor-side sets is again a bi-join, else prime.

use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};

/// Default cap for brute-force bi-join enumeration (2^(n-1) bipartitions).
pub const MAX_BIJOIN_N: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BiJoinError {
    #[error("bi-join enumeration supported for n <= {max}, got {n}")]
    CapExceeded { n: usize, max: usize },
    #[error("strong bi-joins failed to form a cross-free family at {side:?}")]
    NotCrossFree { side: VertexSet },
    #[error("decomposability routes disagree: induced-subgraph route says {by_subgraphs}, tree route says {by_tree}")]
    RouteDisagreement { by_subgraphs: bool, by_tree: bool },
}

/// Witness of a bi-join: `half1` is complete to `half2` and anti-complete to
/// `side2 \ half2`; `side1 \ half1` the reverse. Swapping both halves gives
/// the equivalent witness; the stored orientation takes `half2` to be the
/// trace of the smallest vertex of `side1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BiJoinWitness {
    pub side1: VertexSet,
    pub side2: VertexSet,
    pub half1: VertexSet,
    pub half2: VertexSet,
}

pub(crate) fn complete_between(g: &Graph, a: VertexSet, b: VertexSet) -> bool {
    a.iter().all(|u| b.is_subset_of(g.neighbors(u)))
}

pub(crate) fn anticomplete_between(g: &Graph, a: VertexSet, b: VertexSet) -> bool {
    a.iter().all(|u| !g.neighbors(u).intersects(b))
}

/// Decides whether (v1, V \ v1) is a bi-join and returns the witness with
/// the deterministic orientation.
pub fn check_bijoin(g: &Graph, v1: VertexSet) -> Option<BiJoinWitness> {
    let v2 = v1.complement_in(g.order());
    debug_assert!(!v1.is_empty() && !v2.is_empty(), "bipartition sides must be nonempty");

    let mut traces: Vec<VertexSet> = Vec::with_capacity(2);
    for x in v1.iter() {
        let t = g.neighbors(x).intersection(v2);
        if !traces.contains(&t) {
            traces.push(t);
            if traces.len() > 2 {
                return None;
            }
        }
    }
    if traces.len() == 2 {
        let (t0, t1) = (traces[0], traces[1]);
        if t0.intersects(t1) || t0.union(t1) != v2 {
            return None;
        }
    }

    let lowest = v1.min_vertex().expect("side1 nonempty");
    let half2 = g.neighbors(lowest).intersection(v2);
    let half1 = VertexSet::from_iter(
        v1.iter().filter(|&x| g.neighbors(x).intersection(v2) == half2),
    );
    let witness = BiJoinWitness { side1: v1, side2: v2, half1, half2 };

    // verify the four completeness conditions explicitly
    let rest1 = v1.difference(half1);
    let rest2 = v2.difference(half2);
    let ok = complete_between(g, half1, half2)
        && anticomplete_between(g, half1, rest2)
        && complete_between(g, rest1, rest2)
        && anticomplete_between(g, rest1, half2);
    ok.then_some(witness)
}

/// All bipartitions of V(g) that are bi-joins, in canonical order (the side
/// containing vertex 0 first, ascending by its bitmask).
pub fn enumerate_bijoins(g: &Graph) -> Result<Vec<(VertexSet, VertexSet)>, BiJoinError> {
    let n = g.order();
    if n > MAX_BIJOIN_N {
        return Err(BiJoinError::CapExceeded { n, max: MAX_BIJOIN_N });
    }
    let mut out = Vec::new();
    if n < 2 {
        return Ok(out);
    }
    for bits in 0u16..(1 << (n - 1)) - 1 {
        let v1 = VertexSet((bits << 1) | 1);
        if check_bijoin(g, v1).is_some() {
            out.push((v1, v1.complement_in(n)));
        }
    }
    Ok(out)
}

/// Two bipartitions overlap when all four mutual intersections are nonempty.
pub fn bipartitions_overlap(p: (VertexSet, VertexSet), q: (VertexSet, VertexSet)) -> bool {
    p.0.intersects(q.0) && p.0.intersects(q.1) && p.1.intersects(q.0) && p.1.intersects(q.1)
}

/// The bi-joins overlapping no other bi-join of g. Trivial bipartitions
/// (singleton side) are always strong.
pub fn strong_bijoins(g: &Graph) -> Result<Vec<(VertexSet, VertexSet)>, BiJoinError> {
    let all = enumerate_bijoins(g)?;
    Ok(all
        .iter()
        .filter(|p| !all.iter().any(|q| bipartitions_overlap(**p, *q)))
        .copied()
        .collect())
}

pub type NodeId = usize;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NodeLabel {
    Complete,
    Prime,
}

#[derive(Clone, Debug)]
enum NodeKind {
    Leaf(Vertex),
    Internal(NodeLabel),
}

#[derive(Clone, Debug)]
struct Node {
    kind: NodeKind,
    neighbors: Vec<NodeId>,
}

/// The bi-join decomposition: leaves 0..n-1 are the vertices (leaf node id =
/// vertex id), internal nodes are numbered from n in creation order, and
/// every tree edge's bipartition (leaf sets of the two sides) is a strong
/// bi-join.
#[derive(Clone, Debug)]
pub struct DecompTree {
    n: usize,
    nodes: Vec<Node>,
}

impl DecompTree {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_leaf(&self, t: NodeId) -> bool {
        matches!(self.nodes[t].kind, NodeKind::Leaf(_))
    }

    pub fn leaf_vertex(&self, t: NodeId) -> Option<Vertex> {
        match self.nodes[t].kind {
            NodeKind::Leaf(v) => Some(v),
            NodeKind::Internal(_) => None,
        }
    }

    pub fn label(&self, t: NodeId) -> Option<NodeLabel> {
        match self.nodes[t].kind {
            NodeKind::Leaf(_) => None,
            NodeKind::Internal(l) => Some(l),
        }
    }

    pub fn neighbors(&self, t: NodeId) -> &[NodeId] {
        &self.nodes[t].neighbors
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).filter(|&t| !self.is_leaf(t))
    }

    /// Lowest-id internal node, the canonical root for strategy synthesis.
    pub fn default_root(&self) -> Option<NodeId> {
        self.internal_nodes().next()
    }

    pub fn all_labels_complete(&self) -> bool {
        self.internal_nodes().all(|t| self.label(t) == Some(NodeLabel::Complete))
    }

    /// Leaf set of the component of T - excluding that contains `toward`.
    pub fn leaf_set_toward(&self, toward: NodeId, excluding: NodeId) -> VertexSet {
        let mut acc = VertexSet::EMPTY;
        let mut stack = vec![(toward, excluding)];
        while let Some((cur, parent)) = stack.pop() {
            if let NodeKind::Leaf(v) = self.nodes[cur].kind {
                acc.insert(v);
            }
            for &nb in &self.nodes[cur].neighbors {
                if nb != parent {
                    stack.push((nb, cur));
                }
            }
        }
        acc
    }

    /// The bipartition realized by each tree edge, in edge order (u < v).
    pub fn edge_bipartitions(&self) -> Vec<(VertexSet, VertexSet)> {
        let mut out = Vec::new();
        for t in 0..self.nodes.len() {
            for &nb in &self.nodes[t].neighbors {
                if t < nb {
                    let a = self.leaf_set_toward(nb, t);
                    out.push((a, a.complement_in(self.n)));
                }
            }
        }
        out
    }

    /// Children of `t` when rooted at `root`, in ascending node-id order.
    pub fn children(&self, t: NodeId, parent: Option<NodeId>) -> Vec<NodeId> {
        let mut c: Vec<NodeId> =
            self.nodes[t].neighbors.iter().copied().filter(|&nb| Some(nb) != parent).collect();
        c.sort_unstable();
        c
    }
}

/// Builds the decomposition: start from a star and split the center along
/// every nontrivial strong bi-join, then label the internal nodes.
pub fn build_decomposition(g: &Graph) -> Result<DecompTree, BiJoinError> {
    let n = g.order();
    let mut nodes: Vec<Node> =
        (0..n).map(|v| Node { kind: NodeKind::Leaf(v), neighbors: vec![] }).collect();

    if n <= 2 {
        if n == 2 {
            nodes[0].neighbors.push(1);
            nodes[1].neighbors.push(0);
        }
        return Ok(DecompTree { n, nodes });
    }

    // star
    nodes.push(Node { kind: NodeKind::Internal(NodeLabel::Complete), neighbors: (0..n).collect() });
    for v in 0..n {
        nodes[v].neighbors.push(n);
    }
    let mut tree = DecompTree { n, nodes };

    for (side0, _) in strong_bijoins(g)? {
        if side0.len() <= 1 || side0.len() >= n - 1 {
            continue; // trivial bipartitions are the leaf edges
        }
        insert_bipartition(&mut tree, side0)?;
    }

    for t in 0..tree.nodes.len() {
        if tree.is_leaf(t) {
            continue;
        }
        let label = label_node(g, &tree, t);
        tree.nodes[t].kind = NodeKind::Internal(label);
    }
    Ok(tree)
}

/// Splits the unique internal node all of whose neighbor subtrees nest into
/// the bipartition {x, V \ x}; the new edge realizes it.
fn insert_bipartition(tree: &mut DecompTree, x: VertexSet) -> Result<(), BiJoinError> {
    let y = x.complement_in(tree.n);
    let mut t = tree
        .default_root()
        .expect("tree with n >= 3 has an internal node");
    'walk: loop {
        for &nb in &tree.nodes[t].neighbors {
            let leaves = tree.leaf_set_toward(nb, t);
            if leaves == x || leaves == y {
                // already realized by an existing edge
                return Ok(());
            }
            if !leaves.is_subset_of(x) && !leaves.is_subset_of(y) {
                // the new bipartition must nest entirely inside this subtree
                if x.is_subset_of(leaves) || y.is_subset_of(leaves) {
                    t = nb;
                    continue 'walk;
                }
                return Err(BiJoinError::NotCrossFree { side: x });
            }
        }
        break;
    }

    let (x_side, y_side): (Vec<NodeId>, Vec<NodeId>) = {
        let nbs = tree.nodes[t].neighbors.clone();
        nbs.into_iter().partition(|&nb| tree.leaf_set_toward(nb, t).is_subset_of(x))
    };
    debug_assert!(x_side.len() >= 2 && y_side.len() >= 2, "split must leave degree >= 3");

    let t2 = tree.nodes.len();
    tree.nodes.push(Node { kind: NodeKind::Internal(NodeLabel::Complete), neighbors: vec![] });
    for &nb in &y_side {
        let pos = tree.nodes[nb].neighbors.iter().position(|&p| p == t).unwrap();
        tree.nodes[nb].neighbors[pos] = t2;
        tree.nodes[t2].neighbors.push(nb);
    }
    tree.nodes[t].neighbors = x_side;
    tree.nodes[t].neighbors.push(t2);
    tree.nodes[t2].neighbors.push(t);
    Ok(())
}

/// Complete iff every union of neighbor-side leaf sets over a proper
/// nonempty index subset is a bi-join of g.
fn label_node(g: &Graph, tree: &DecompTree, t: NodeId) -> NodeLabel {
    let sets: Vec<VertexSet> =
        tree.neighbors(t).iter().map(|&nb| tree.leaf_set_toward(nb, t)).collect();
    let k = sets.len();
    debug_assert!(k <= 20, "node degree beyond subset-testing range");
    for mask in 1u32..(1 << k) - 1 {
        let mut union = VertexSet::EMPTY;
        for (i, s) in sets.iter().enumerate() {
            if mask >> i & 1 == 1 {
                union = union.union(*s);
            }
        }
        if check_bijoin(g, union).is_none() {
            return NodeLabel::Prime;
        }
    }
    NodeLabel::Complete
}

/// Total decomposability by two independent routes: every induced subgraph
/// on >= 4 vertices has a nontrivial bi-join (brute force, n <= 10), and
/// every node of the decomposition tree is complete.
#[derive(Clone, Copy, Debug)]
pub struct Decomposability {
    /// `None` when the graph is too large for the brute-force route
    pub by_subgraphs: Option<bool>,
    pub by_tree: bool,
}

impl Decomposability {
    pub fn value(&self) -> bool {
        self.by_tree
    }
}

pub const MAX_SUBGRAPH_ROUTE_N: usize = 10;

pub fn is_completely_decomposable(g: &Graph) -> Result<Decomposability, BiJoinError> {
    let by_tree = build_decomposition(g)?.all_labels_complete();
    let by_subgraphs = if g.order() <= MAX_SUBGRAPH_ROUTE_N {
        Some(subgraph_route(g))
    } else {
        None
    };
    if let Some(a) = by_subgraphs {
        if a != by_tree {
            return Err(BiJoinError::RouteDisagreement { by_subgraphs: a, by_tree });
        }
    }
    Ok(Decomposability { by_subgraphs, by_tree })
}

fn subgraph_route(g: &Graph) -> bool {
    let n = g.order();
    for bits in 0u32..(1 << n) {
        let s = VertexSet(bits as u16);
        if s.len() < 4 {
            continue;
        }
        let (h, _) = g.induced_subgraph(s);
        if !has_nontrivial_bijoin(&h) {
            return false;
        }
    }
    true
}

fn has_nontrivial_bijoin(h: &Graph) -> bool {
    let m = h.order();
    for bits in 0u16..(1 << (m - 1)) - 1 {
        let v1 = VertexSet((bits << 1) | 1);
        if v1.len() >= 2 && v1.len() <= m - 2 && check_bijoin(h, v1).is_some() {
            return true;
        }
    }
    false
}
