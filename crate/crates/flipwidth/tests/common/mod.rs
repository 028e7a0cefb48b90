//! Independent oracle for the flipper game: naive recursive minimax with
//! memoization on (announced graph, runner vertex), evaluated by iterative
//! deepening on the capture depth. No attractor machinery, no bitmask
//! tricks, and its own flip enumeration, so it shares no solving code with
//! the implementation it cross-checks.

use std::collections::{HashMap, HashSet};

use flipwidth::graph::{Graph, Radius, Vertex};

pub struct MinimaxOracle {
    flips: Vec<Graph>,
    n: usize,
    r: Radius,
}

type State = (usize, Vertex);

pub struct OracleVerdict {
    pub flipper_wins: bool,
    /// capture depth per winnable (announced graph, runner vertex) state
    pub depth: HashMap<(Graph, Vertex), u32>,
}

impl MinimaxOracle {
    pub fn new(g: &Graph, k: usize, r: Radius) -> MinimaxOracle {
        let mut flips = Vec::new();
        let mut seen = HashSet::new();
        let mut assignment = vec![0usize; g.order()];
        enumerate_partitions(g.order(), k, 0, &mut assignment, &mut |parts| {
            for subset in 0u64..1 << (parts.len() * (parts.len() + 1) / 2) {
                let h = apply_pair_subset(g, parts, subset);
                if seen.insert(h) {
                    flips.push(h);
                }
            }
        });
        MinimaxOracle { flips, n: g.order(), r }
    }

    fn ball(&self, h: usize, v: Vertex) -> Vec<Vertex> {
        let g = &self.flips[h];
        let mut dist = vec![u32::MAX; self.n];
        dist[v] = 0;
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for w in 0..self.n {
                if g.has_edge(u, w) && dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        (0..self.n)
            .filter(|&w| match self.r {
                Radius::Finite(r) => dist[w] <= r,
                Radius::Infinite => dist[w] != u32::MAX,
            })
            .collect()
    }

    fn isolated(&self, h: usize, v: Vertex) -> bool {
        (0..self.n).all(|w| !self.flips[h].has_edge(v, w))
    }

    /// Can the flipper force a capture from `state` within `budget` more
    /// announced flips? Memo entries are monotone in the budget.
    fn catch_within(
        &self,
        state: State,
        budget: u32,
        memo: &mut HashMap<State, (u32, bool)>,
    ) -> bool {
        if budget == 0 {
            return false;
        }
        if let Some(&(b, val)) = memo.get(&state) {
            if val && b <= budget {
                return true;
            }
            if !val && b >= budget {
                return false;
            }
        }
        let (h, v) = state;
        let ball = self.ball(h, v);
        let result = (0..self.flips.len()).any(|hp| {
            ball.iter()
                .all(|&u| self.isolated(hp, u) || self.catch_within((hp, u), budget - 1, memo))
        });
        memo.insert(state, (budget, result));
        result
    }

    pub fn solve(&self) -> OracleVerdict {
        let mut memo: HashMap<State, (u32, bool)> = HashMap::new();
        let mut depth: HashMap<State, u32> = HashMap::new();
        let max_depth = (self.flips.len() * self.n.max(1) + 1) as u32;
        for d in 1..=max_depth {
            let mut grew = false;
            for h in 0..self.flips.len() {
                for v in 0..self.n {
                    if !depth.contains_key(&(h, v)) && self.catch_within((h, v), d, &mut memo) {
                        depth.insert((h, v), d);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let flipper_wins = (0..self.n).all(|v| depth.contains_key(&(0, v)));
        OracleVerdict {
            flipper_wins,
            depth: depth
                .into_iter()
                .map(|((h, v), d)| ((self.flips[h], v), d))
                .collect(),
        }
    }
}

/// All partitions of {0..n-1} into at most k blocks, via direct block
/// assignment (vertex i joins an existing block or opens a new one).
fn enumerate_partitions(
    n: usize,
    k: usize,
    vertex: usize,
    assignment: &mut Vec<usize>,
    emit: &mut impl FnMut(&[Vec<Vertex>]),
) {
    if vertex == n {
        let blocks = assignment[..n].iter().copied().max().map_or(0, |m| m + 1);
        let mut parts = vec![Vec::new(); blocks];
        for (v, &b) in assignment[..n].iter().enumerate() {
            parts[b].push(v);
        }
        emit(&parts);
        return;
    }
    let used = assignment[..vertex].iter().copied().max().map_or(0, |m| m + 1);
    for b in 0..=used.min(k - 1) {
        assignment[vertex] = b;
        enumerate_partitions(n, k, vertex + 1, assignment, emit);
    }
}

/// Applies the pair subset directly by toggling unordered vertex pairs one
/// at a time.
fn apply_pair_subset(g: &Graph, parts: &[Vec<Vertex>], subset: u64) -> Graph {
    fn toggle(edges: &mut HashSet<(Vertex, Vertex)>, u: Vertex, v: Vertex) {
        let e = (u.min(v), u.max(v));
        if !edges.remove(&e) {
            edges.insert(e);
        }
    }
    let p = parts.len();
    let mut edges: HashSet<(Vertex, Vertex)> = g.edges().into_iter().collect();
    let mut bit = 0;
    for i in 0..p {
        for j in i..p {
            if subset >> bit & 1 == 1 {
                if i == j {
                    let a = &parts[i];
                    for x in 0..a.len() {
                        for y in x + 1..a.len() {
                            toggle(&mut edges, a[x], a[y]);
                        }
                    }
                } else {
                    for &u in &parts[i] {
                        for &v in &parts[j] {
                            toggle(&mut edges, u, v);
                        }
                    }
                }
            }
            bit += 1;
        }
    }
    build_graph(g.order(), &edges)
}

fn build_graph(n: usize, edges: &HashSet<(Vertex, Vertex)>) -> Graph {
    Graph::from_edges(n, &edges.iter().copied().collect::<Vec<_>>())
}
