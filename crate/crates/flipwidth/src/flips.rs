//! The flip algebra: single-pair flips G (+) (A,B), partition-based flip
//! specifications, and exhaustive enumeration of all k-flips of a graph.
//!
//! A flip toggles exactly the vertex pairs with one end in A and the other in
//! B (loops excluded). Flip specs name part *indices* of a canonical
//! partition, so the same spec applies uniformly across modules; parts are
//! kept sorted by smallest member and pair lists sorted ascending, which
//! gives stable dedupe keys and reproducible strategy extraction.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlipError {
    #[error("partition invalid: {0}")]
    BadPartition(String),
    #[error("pair ({0},{1}) out of range for {2} parts")]
    PairOutOfRange(usize, usize, usize),
    #[error("flip spec does not cover the vertex set of the graph (parts cover {parts}, graph has {graph})")]
    SpecGraphMismatch { parts: VertexSet, graph: VertexSet },
    #[error("k-flip enumeration needs {needed} raw specs, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("cannot parse flip spec {input:?}: {reason}")]
    ParseError { input: String, reason: String },
}

/// Ordered partition of a vertex set into nonempty, pairwise disjoint parts,
/// canonically sorted by smallest member.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Partition {
    parts: Vec<VertexSet>,
}

impl Partition {
    pub fn new(mut parts: Vec<VertexSet>) -> Result<Partition, FlipError> {
        if parts.iter().any(|p| p.is_empty()) {
            return Err(FlipError::BadPartition("empty part".into()));
        }
        let mut seen = VertexSet::EMPTY;
        for p in &parts {
            if seen.intersects(*p) {
                return Err(FlipError::BadPartition(format!("parts overlap at {}", seen.intersection(*p))));
            }
            seen = seen.union(*p);
        }
        parts.sort_by_key(|p| p.min_vertex().unwrap());
        Ok(Partition { parts })
    }

    /// The one-part partition of `{0..n-1}`.
    pub fn trivial(n: usize) -> Partition {
        if n == 0 {
            Partition { parts: vec![] }
        } else {
            Partition { parts: vec![VertexSet::full(n)] }
        }
    }

    pub fn singletons(n: usize) -> Partition {
        Partition { parts: (0..n).map(VertexSet::singleton).collect() }
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn ground_set(&self) -> VertexSet {
        self.parts.iter().fold(VertexSet::EMPTY, |a, p| a.union(*p))
    }

    /// Index of the part containing `v`, if any.
    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }
}

/// A vertex partition plus a set of unordered part-index pairs to flip;
/// self-pairs (i,i) are allowed. A spec with at most k parts is a k-flip.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FlipSpec {
    partition: Partition,
    pairs: Vec<(usize, usize)>,
}

impl FlipSpec {
    pub fn new(partition: Partition, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<FlipSpec, FlipError> {
        let p = partition.len();
        let mut norm: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(i, j)| if i <= j { (i, j) } else { (j, i) })
            .collect();
        norm.sort_unstable();
        norm.dedup();
        for &(i, j) in &norm {
            if j >= p {
                return Err(FlipError::PairOutOfRange(i, j, p));
            }
        }
        Ok(FlipSpec { partition, pairs: norm })
    }

    /// The identity flip of `{0..n-1}`: trivial partition, no pairs.
    pub fn identity(n: usize) -> FlipSpec {
        FlipSpec { partition: Partition::trivial(n), pairs: vec![] }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of parts; a spec of width <= k is a k-flip.
    pub fn width(&self) -> usize {
        self.partition.len()
    }

    /// Pair set XOR'd with the all-pairs set of the same partition. Applying
    /// the conjugate to the complement graph announces the same graph.
    pub fn complement_conjugate(&self) -> FlipSpec {
        let p = self.partition.len();
        let mut pairs = Vec::new();
        for i in 0..p {
            for j in i..p {
                if !self.pairs.contains(&(i, j)) {
                    pairs.push((i, j));
                }
            }
        }
        FlipSpec { partition: self.partition.clone(), pairs }
    }
}

impl fmt::Display for FlipSpec {
    /// `parts=[{0,3},{1,2,4}] pairs=[(0,0),(0,1)]` — stable and re-parseable.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parts=[")?;
        for (i, p) in self.partition.parts().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "] pairs=[")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "]")
    }
}

impl FromStr for FlipSpec {
    type Err = FlipError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| FlipError::ParseError { input: s.to_string(), reason: reason.to_string() };
        let s_trim = s.trim();
        let rest = s_trim.strip_prefix("parts=[").ok_or_else(|| err("expected leading 'parts=['"))?;
        let (parts_str, rest) = rest.split_once(']').ok_or_else(|| err("unterminated parts list"))?;
        let rest = rest.trim_start();
        let pairs_str = rest
            .strip_prefix("pairs=[")
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| err("expected trailing 'pairs=[...]'"))?;

        let mut parts = Vec::new();
        let mut depth = 0usize;
        let mut cur = String::new();
        for c in parts_str.chars() {
            match c {
                '{' => {
                    depth += 1;
                    cur.push(c);
                }
                '}' => {
                    depth = depth.checked_sub(1).ok_or_else(|| err("unbalanced braces"))?;
                    cur.push(c);
                    if depth == 0 {
                        parts.push(cur.parse::<VertexSet>().map_err(|e| err(&e))?);
                        cur.clear();
                    }
                }
                ',' if depth == 0 => {}
                _ if depth > 0 => cur.push(c),
                c if c.is_whitespace() => {}
                _ => return Err(err(&format!("unexpected character {c:?} in parts"))),
            }
        }
        let partition = Partition::new(parts)?;

        let mut pairs = Vec::new();
        for tok in pairs_str.split(')') {
            let tok = tok.trim().trim_start_matches(',').trim();
            if tok.is_empty() {
                continue;
            }
            let tok = tok.strip_prefix('(').ok_or_else(|| err("pair must start with '('"))?;
            let (a, b) = tok.split_once(',').ok_or_else(|| err("pair must be (i,j)"))?;
            let a: usize = a.trim().parse().map_err(|_| err("bad pair index"))?;
            let b: usize = b.trim().parse().map_err(|_| err("bad pair index"))?;
            pairs.push((a, b));
        }
        FlipSpec::new(partition, pairs)
    }
}

/// Toggles exactly the pairs {u,v}, u != v, with one end in `a` and the other
/// in `b`. The sets may be equal, disjoint, or overlapping.
pub fn flip_pair(g: &Graph, a: VertexSet, b: VertexSet) -> Graph {
    let mut out = *g;
    for u in g.vertices() {
        let mut mask = 0u16;
        if a.contains(u) {
            mask |= b.0;
        }
        if b.contains(u) {
            mask |= a.0;
        }
        mask &= !(1u16 << u); // no loops
        mask &= g.vertex_set().0;
        out.xor_row(u, mask);
    }
    out
}

/// Applies every pair of the spec; the order is immaterial since flips
/// commute. Errors if the partition does not cover V(g) exactly.
pub fn apply_flip(g: &Graph, spec: &FlipSpec) -> Result<Graph, FlipError> {
    if spec.partition.ground_set() != g.vertex_set() {
        return Err(FlipError::SpecGraphMismatch {
            parts: spec.partition.ground_set(),
            graph: g.vertex_set(),
        });
    }
    let mut out = *g;
    for &(i, j) in &spec.pairs {
        out = flip_pair(&out, spec.partition.parts()[i], spec.partition.parts()[j]);
    }
    Ok(out)
}

/// Number of raw (partition, pair-subset) specs enumerate_kflips would visit,
/// or `None` on overflow (definitely over any sane budget).
pub fn count_kflip_specs(n: usize, k: usize) -> Option<u128> {
    // Stirling numbers of the second kind, S[m][p]
    let mut stirling = vec![vec![0u128; k + 1]; n + 1];
    stirling[0][0] = 1;
    for m in 1..=n {
        for p in 1..=k.min(m) {
            stirling[m][p] = stirling[m - 1][p - 1]
                .checked_add(stirling[m - 1][p].checked_mul(p as u128)?)?;
        }
    }
    let mut total: u128 = 0;
    for p in 1..=k.min(n) {
        let pair_count = p * (p + 1) / 2;
        if pair_count >= 128 {
            return None;
        }
        total = total.checked_add(stirling[n][p].checked_mul(1u128 << pair_count)?)?;
    }
    if n == 0 {
        total = 1; // the empty graph has exactly the identity flip
    }
    Some(total)
}

pub const DEFAULT_SPEC_BUDGET: u128 = 2_000_000;

/// All distinct k-flips of `g`: one entry per distinct resulting labeled
/// graph, with the first witnessing spec in deterministic enumeration order
/// (partitions by restricted-growth strings, then pair subsets in
/// binary-counter order). The identity flip is always entry 0.
pub fn enumerate_kflips(g: &Graph, k: usize) -> Result<Vec<(FlipSpec, Graph)>, FlipError> {
    enumerate_kflips_budgeted(g, k, DEFAULT_SPEC_BUDGET)
}

pub fn enumerate_kflips_budgeted(
    g: &Graph,
    k: usize,
    budget: u128,
) -> Result<Vec<(FlipSpec, Graph)>, FlipError> {
    assert!(k >= 1, "width must be at least 1");
    let n = g.order();
    let needed = count_kflip_specs(n, k).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(FlipError::BudgetExceeded { needed, budget });
    }
    if n == 0 {
        return Ok(vec![(FlipSpec::identity(0), *g)]);
    }

    let mut seen: HashMap<Graph, ()> = HashMap::new();
    let mut out = Vec::new();
    for partition in partitions_up_to(n, k) {
        let p = partition.len();
        let pair_list: Vec<(usize, usize)> =
            (0..p).flat_map(|i| (i..p).map(move |j| (i, j))).collect();
        let m = pair_list.len();
        for subset in 0u64..(1u64 << m) {
            let pairs: Vec<(usize, usize)> = (0..m).filter(|t| subset >> t & 1 == 1).map(|t| pair_list[t]).collect();
            let spec = FlipSpec { partition: partition.clone(), pairs };
            let result = apply_flip(g, &spec).expect("enumerated partitions cover V");
            if !seen.contains_key(&result) {
                seen.insert(result, ());
                out.push((spec, result));
            }
        }
    }
    debug_assert_eq!(out[0].1, *g, "the identity flip must come first");
    Ok(out)
}

/// Partitions of `{0..n-1}` into at most `k` nonempty parts, by
/// restricted-growth strings in lexicographic order. The parts of each
/// partition come out sorted by smallest member automatically.
fn partitions_up_to(n: usize, k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let p = rgs.iter().copied().max().unwrap_or(0) + 1;
        let mut parts = vec![VertexSet::EMPTY; p];
        for (v, &b) in rgs.iter().enumerate() {
            parts[b].insert(v);
        }
        out.push(Partition { parts });

        // next RGS with every prefix-max bounded by k-1
        let mut i = n;
        loop {
            if i == 1 {
                return out;
            }
            i -= 1;
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if rgs[i] <= prefix_max && rgs[i] + 1 < k {
                rgs[i] += 1;
                for x in rgs[i + 1..].iter_mut() {
                    *x = 0;
                }
                break;
            }
        }
    }
}
