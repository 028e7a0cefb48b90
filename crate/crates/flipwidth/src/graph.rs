//! Simple undirected graphs on up to 16 vertices, stored as symmetric
//! irreflexive bit-matrices, plus the vertex-set and radius types shared by
//! every other module.
//!
//! Graphs are value types: cheap to copy, hashable, immutable after
//! construction. Vertices are 0-indexed and all sets are bitmasks.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Hard limit of the bit-matrix representation.
pub const MAX_VERTICES: usize = 16;

/// Environment variable overriding the configured order cap (1..=16).
pub const MAX_N_ENV: &str = "FLIPWIDTH_MAX_N";

pub type Vertex = usize;

/// Configured order cap: `FLIPWIDTH_MAX_N` if set and valid, else 16.
pub fn max_order() -> usize {
    static CAP: std::sync::OnceLock<usize> = std::sync::OnceLock::new();
    *CAP.get_or_init(|| match std::env::var(MAX_N_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if (1..=MAX_VERTICES).contains(&n) => n,
            _ => {
                eprintln!(
                    "warning: ignoring {MAX_N_ENV}={s:?} (must be 1..={MAX_VERTICES})"
                );
                MAX_VERTICES
            }
        },
        Err(_) => MAX_VERTICES,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {n} exceeds the configured cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("vertex {v} out of range for order {n}")]
    VertexOutOfRange { v: Vertex, n: usize },
}

/// A subset of `{0..n-1}` with bitmask semantics.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(pub u16);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn singleton(v: Vertex) -> VertexSet {
        debug_assert!(v < MAX_VERTICES);
        VertexSet(1 << v)
    }

    /// The full set `{0..n-1}`.
    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_VERTICES);
        if n == 0 {
            VertexSet(0)
        } else {
            VertexSet(u16::MAX >> (16 - n))
        }
    }

    pub fn from_iter<I: IntoIterator<Item = Vertex>>(vs: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0 & (1 << v) != 0
    }

    pub fn insert(&mut self, v: Vertex) {
        debug_assert!(v < MAX_VERTICES);
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: Vertex) {
        self.0 &= !(1 << v);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    /// Smallest member, if any.
    pub fn min_vertex(&self) -> Option<Vertex> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as Vertex)
        }
    }

    pub fn is_subset_of(&self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(&self, other: VertexSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    /// Complement within the full set `{0..n-1}`.
    pub fn complement_in(self, n: usize) -> VertexSet {
        VertexSet(!self.0 & VertexSet::full(n).0)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        let bits = self.0;
        (0..MAX_VERTICES).filter(move |v| bits & (1 << v) != 0)
    }
}

impl fmt::Display for VertexSet {
    /// `{0,3,4}`; the empty set prints as `{}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for v in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for VertexSet {
    type Err = String;

    /// Parses the `Display` form `{0,3,4}` (whitespace tolerated).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(|| format!("vertex set must be braced: {s:?}"))?;
        let mut set = VertexSet::EMPTY;
        for tok in inner.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let v: usize = tok
                .parse()
                .map_err(|_| format!("bad vertex {tok:?} in {s:?}"))?;
            if v >= MAX_VERTICES {
                return Err(format!("vertex {v} out of range"));
            }
            set.insert(v);
        }
        Ok(set)
    }
}

/// Runner move radius: a positive integer or infinity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Radius {
    Finite(u32),
    Infinite,
}

impl Radius {
    /// Finite radii must be >= 1.
    pub fn finite(r: u32) -> Radius {
        assert!(r >= 1, "radius must be positive");
        Radius::Finite(r)
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Radius::Finite(r) => write!(f, "{r}"),
            Radius::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Radius {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Radius::Infinite),
            t => match t.parse::<u32>() {
                Ok(r) if r >= 1 => Ok(Radius::Finite(r)),
                _ => Err(format!("radius must be a positive integer or 'inf', got {s:?}")),
            },
        }
    }
}

/// Simple undirected graph as a symmetric irreflexive bit-matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: [u16; MAX_VERTICES],
}

impl Graph {
    /// Edgeless graph on `n` vertices. Panics if `n` exceeds the configured cap.
    pub fn empty(n: usize) -> Graph {
        assert!(
            n <= max_order(),
            "graph order {n} exceeds the configured cap {} (see {MAX_N_ENV})",
            max_order()
        );
        Graph { n, rows: [0; MAX_VERTICES] }
    }

    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            assert!(u < n && v < n && u != v, "bad edge ({u},{v}) for order {n}");
            g.rows[u] |= 1 << v;
            g.rows[v] |= 1 << u;
        }
        g
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        let full = VertexSet::full(n).0;
        for v in 0..n {
            g.rows[v] = full & !(1 << v);
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.rows[u] & (1 << v) != 0
    }

    pub fn neighbors(&self, v: Vertex) -> VertexSet {
        debug_assert!(v < self.n);
        VertexSet(self.rows[v])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn edge_count(&self) -> usize {
        self.rows[..self.n].iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_edgeless(&self) -> bool {
        self.rows[..self.n].iter().all(|&r| r == 0)
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn isolated_vertices(&self) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in 0..self.n {
            if self.rows[v] == 0 {
                s.insert(v);
            }
        }
        s
    }

    /// Toggles one adjacency; internal to construction and the flip algebra.
    pub(crate) fn toggle_edge(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u] ^= 1 << v;
        self.rows[v] ^= 1 << u;
    }

    pub(crate) fn xor_row(&mut self, v: Vertex, mask: u16) {
        self.rows[v] ^= mask;
    }

    /// Union of the neighborhoods of `set`.
    pub fn neighbors_of_set(&self, set: VertexSet) -> VertexSet {
        let mut acc = 0u16;
        for v in 0..self.n {
            if set.contains(v) {
                acc |= self.rows[v];
            }
        }
        VertexSet(acc)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph { n: self.n, rows: [0; MAX_VERTICES] };
        let full = VertexSet::full(self.n).0;
        for v in 0..self.n {
            g.rows[v] = !self.rows[v] & full & !(1 << v);
        }
        g
    }

    /// Induced subgraph on `s`, plus the order-preserving relabeling map
    /// (new index -> old vertex).
    pub fn induced_subgraph(&self, s: VertexSet) -> (Graph, Vec<Vertex>) {
        debug_assert!(s.is_subset_of(self.vertex_set()));
        let map: Vec<Vertex> = s.iter().collect();
        let mut g = Graph { n: map.len(), rows: [0; MAX_VERTICES] };
        for (i, &u) in map.iter().enumerate() {
            for (j, &v) in map.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    g.rows[i] |= 1 << j;
                }
            }
        }
        (g, map)
    }

    /// Vertices reachable from `v` by a path of length <= `r`; always
    /// contains `v`. Infinite radius yields the connected component.
    pub fn ball(&self, v: Vertex, r: Radius) -> VertexSet {
        debug_assert!(v < self.n);
        let mut cur = VertexSet::singleton(v);
        let mut steps = 0u32;
        loop {
            if let Radius::Finite(k) = r {
                if steps >= k {
                    break;
                }
            }
            let next = cur.union(self.neighbors_of_set(cur));
            if next == cur {
                break;
            }
            cur = next;
            steps += 1;
        }
        cur
    }

    pub fn component_of(&self, v: Vertex) -> VertexSet {
        self.ball(v, Radius::Infinite)
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for v in 0..self.n {
            if !seen.contains(v) {
                let c = self.component_of(v);
                seen = seen.union(c);
                out.push(c);
            }
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}
