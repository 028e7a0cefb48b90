//! The four-obstruction pattern library (C5, bull, gem, co-gem),
//! induced-subgraph detection, the closure of the obstruction set under
//! single-bipartition flips, and the exhaustive flip censuses on isolated
//! vertices and two-vertex components.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::flips::flip_pair;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::iso::find_isomorphism;

/// The obstruction set for width 2. Canonical vertex numbering: C5 cyclic
/// 0-4; bull triangle {0,1,2} with pendants 3-0 and 4-1; gem path 0-1-2-3
/// with apex 4 complete to it; co-gem path 0-1-2-3 with 4 isolated.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum ObstructionKind {
    C5,
    Bull,
    Gem,
    CoGem,
}

impl ObstructionKind {
    pub const ALL: [ObstructionKind; 4] =
        [ObstructionKind::C5, ObstructionKind::Bull, ObstructionKind::Gem, ObstructionKind::CoGem];

    pub fn graph(&self) -> Graph {
        match self {
            ObstructionKind::C5 => Graph::cycle(5),
            ObstructionKind::Bull => {
                Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (3, 0), (4, 1)])
            }
            ObstructionKind::Gem => {
                Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)])
            }
            ObstructionKind::CoGem => Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3)]),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ObstructionKind::C5 => "C5",
            ObstructionKind::Bull => "bull",
            ObstructionKind::Gem => "gem",
            ObstructionKind::CoGem => "co-gem",
        }
    }

    /// Which obstruction `g` is isomorphic to, if any.
    pub fn identify(g: &Graph) -> Option<ObstructionKind> {
        ObstructionKind::ALL
            .into_iter()
            .find(|k| find_isomorphism(&k.graph(), g).is_some())
    }
}

impl fmt::Display for ObstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Injective map from pattern vertices into `g` inducing exactly the
/// pattern's edges; deterministic first witness (5-subsets in lexicographic
/// order, lexicographically least bijection within the subset).
pub fn find_induced(g: &Graph, kind: ObstructionKind) -> Option<Vec<Vertex>> {
    let n = g.order();
    if n < 5 {
        return None;
    }
    let pattern = kind.graph();
    for subset in subsets_of_size(n, 5) {
        let (h, map) = g.induced_subgraph(subset);
        if let Some(emb) = find_isomorphism(&pattern, &h) {
            return Some(emb.into_iter().map(|w| map[w]).collect());
        }
    }
    None
}

fn subsets_of_size(n: usize, k: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<Vertex>, out: &mut Vec<VertexSet>) {
        if cur.len() == k {
            out.push(VertexSet::from_iter(cur.iter().copied()));
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, k, v + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// `None` when `g` is (C5, bull, gem, co-gem)-free, else the first witness.
pub fn obstruction_witness(g: &Graph) -> Option<(ObstructionKind, Vec<Vertex>)> {
    ObstructionKind::ALL
        .into_iter()
        .find_map(|k| find_induced(g, k).map(|emb| (k, emb)))
}

pub fn is_obstruction_free(g: &Graph) -> bool {
    obstruction_witness(g).is_none()
}

/// For each of the 15 unordered bipartitions (A,B) of the obstruction's five
/// vertices, the isomorphism type of the flipped graph. Every row lands back
/// in the obstruction set; a row that does not is an internal consistency
/// failure of this implementation.
pub fn flip_closure_table(
    kind: ObstructionKind,
) -> Result<Vec<(VertexSet, ObstructionKind)>, (VertexSet, Graph)> {
    let g = kind.graph();
    let mut rows = Vec::with_capacity(15);
    for bits in 0u16..(1 << 4) - 1 {
        // sides containing vertex 0 enumerate unordered bipartitions once;
        // bits = 15 would make B empty
        let a = VertexSet((bits << 1) | 1);
        let b = a.complement_in(5);
        let flipped = flip_pair(&g, a, b);
        match ObstructionKind::identify(&flipped) {
            Some(k) => rows.push((a, k)),
            None => return Err((a, flipped)),
        }
    }
    Ok(rows)
}

/// Which of {(A,A),(B,B),(A,B)} a census flip used.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CensusPairs(pub u8);

impl CensusPairs {
    pub const AA: u8 = 1;
    pub const BB: u8 = 2;
    pub const AB: u8 = 4;

    pub fn has(&self, flag: u8) -> bool {
        self.0 & flag != 0
    }

    pub fn includes_cross(&self) -> bool {
        self.has(Self::AB)
    }
}

impl fmt::Display for CensusPairs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = Vec::new();
        if self.has(Self::AA) {
            names.push("(A,A)");
        }
        if self.has(Self::BB) {
            names.push("(B,B)");
        }
        if self.has(Self::AB) {
            names.push("(A,B)");
        }
        write!(f, "{{{}}}", names.join(","))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CensusOutcome {
    IsolatedVertices(usize),
    /// connected-component orders, ascending
    ComponentOrders(Vec<usize>),
}

/// One bipartition flip of an obstruction satisfying a census predicate.
/// `a` is the smaller side (|A| < |B|, possibly empty, where A = empty
/// degenerates to the trivial partition with flips drawn from {(B,B)}).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FlipCensusHit {
    pub a: VertexSet,
    pub pairs: CensusPairs,
    pub outcome: CensusOutcome,
}

fn census_flip(g: &Graph, a: VertexSet, pairs: CensusPairs) -> Graph {
    let b = a.complement_in(g.order());
    let mut h = *g;
    if pairs.has(CensusPairs::AA) {
        h = flip_pair(&h, a, a);
    }
    if pairs.has(CensusPairs::BB) {
        h = flip_pair(&h, b, b);
    }
    if pairs.has(CensusPairs::AB) {
        h = flip_pair(&h, a, b);
    }
    h
}

fn census_frame(kind: ObstructionKind, mut predicate: impl FnMut(&Graph) -> Option<CensusOutcome>) -> Vec<FlipCensusHit> {
    let g = kind.graph();
    let mut hits = Vec::new();
    for bits in 0u16..(1 << 5) {
        let a = VertexSet(bits);
        if a.len() * 2 >= 5 {
            continue; // |A| < |B|
        }
        let pair_choices: &[u8] = if a.is_empty() {
            // empty A encodes the trivial partition; only (B,B) is meaningful
            &[0, CensusPairs::BB]
        } else {
            &[0, 1, 2, 3, 4, 5, 6, 7]
        };
        for &p in pair_choices {
            let pairs = CensusPairs(p);
            let h = census_flip(&g, a, pairs);
            if let Some(outcome) = predicate(&h) {
                hits.push(FlipCensusHit { a, pairs, outcome });
            }
        }
    }
    hits
}

/// Every bipartition flip of the obstruction yielding at least two isolated
/// vertices. The outcome records the exact isolated count (always exactly 2).
pub fn isolation_census(kind: ObstructionKind) -> Vec<FlipCensusHit> {
    census_frame(kind, |h| {
        let iso = h.isolated_vertices().len();
        (iso >= 2).then_some(CensusOutcome::IsolatedVertices(iso))
    })
}

/// Every bipartition flip of the obstruction yielding a connected component
/// on exactly two vertices.
pub fn two_vertex_component_census(kind: ObstructionKind) -> Vec<FlipCensusHit> {
    census_frame(kind, |h| {
        let orders: Vec<usize> = h.components().iter().map(|c| c.len()).collect();
        let mut sorted = orders.clone();
        sorted.sort_unstable();
        orders.contains(&2).then_some(CensusOutcome::ComponentOrders(sorted))
    })
}
