//! Exact decision of the flipper game via a least-fixpoint attractor over
//! (announced graph, runner vertex) states, plus exact flip-width.
//!
//! Semantics: W0 = {}; W_{j+1} = { (H,v) : some k-flip H' of the base graph
//! has every u in ball(H,v,r) isolated in H' or already in W_j }. The flipper
//! wins iff every initial state (base, v0) lies in the least fixpoint; the
//! runner picks v0 seeing the base graph, and capture is only declared from
//! round 1 on (a runner starting on an isolated vertex is caught at round 1
//! via the identity flip, which the flip enumeration always contains).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::flips::{enumerate_kflips_budgeted, FlipError, FlipSpec, DEFAULT_SPEC_BUDGET};
use crate::graph::{Graph, Radius, Vertex, VertexSet};

/// Bump when the fixpoint / tie-breaking semantics change; cached census
/// records are keyed by this.
pub const SOLVER_VERSION: &str = "1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Flip(#[from] FlipError),
    #[error("arena would need {states} states, budget is {budget}")]
    StateBudgetExceeded { states: u128, budget: u128 },
}

/// Solver knobs; the defaults handle n <= 10 at width 2.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub spec_budget: u128,
    pub state_budget: u128,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { spec_budget: DEFAULT_SPEC_BUDGET, state_budget: 1_000_000 }
    }
}

/// Game position: the most recently announced graph (as an index into the
/// arena's flip list; initially 0 = the base graph) and the runner's vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GameState {
    pub graph: usize,
    pub runner: Vertex,
}

/// The full game arena: base graph, every distinct announced graph the
/// flipper may pick, and the game parameters.
pub struct Arena {
    base: Graph,
    flips: Vec<(FlipSpec, Graph)>,
    radius: Radius,
    width: usize,
    /// isolated-vertex mask per flip
    iso: Vec<VertexSet>,
    /// ball(flips[f], v, radius) per flip and vertex
    balls: Vec<Vec<VertexSet>>,
}

impl Arena {
    pub fn new(g: &Graph, width: usize, radius: Radius, opts: &SolveOptions) -> Result<Arena, SolveError> {
        let flips = enumerate_kflips_budgeted(g, width, opts.spec_budget)?;
        debug_assert_eq!(flips[0].1, *g, "the identity flip must be entry 0");
        let states = flips.len() as u128 * g.order().max(1) as u128;
        if states > opts.state_budget {
            return Err(SolveError::StateBudgetExceeded { states, budget: opts.state_budget });
        }
        let iso = flips.iter().map(|(_, h)| h.isolated_vertices()).collect();
        let balls = flips
            .iter()
            .map(|(_, h)| (0..g.order()).map(|v| h.ball(v, radius)).collect())
            .collect();
        Ok(Arena { base: *g, flips, radius, width, iso, balls })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn flips(&self) -> &[(FlipSpec, Graph)] {
        &self.flips
    }

    pub fn radius(&self) -> Radius {
        self.radius
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn ball(&self, s: GameState) -> VertexSet {
        self.balls[s.graph][s.runner]
    }

    pub fn isolated(&self, flip: usize) -> VertexSet {
        self.iso[flip]
    }
}

/// Solver output. `ranks` and `strategy` cover exactly the flipper-won
/// states; `safe_region` is their complement (nonempty iff the flipper
/// loses, and closed under the runner's evasion rule).
pub struct GameVerdict {
    pub flipper_wins: bool,
    pub ranks: BTreeMap<GameState, u32>,
    pub strategy: BTreeMap<GameState, usize>,
    pub safe_region: BTreeSet<GameState>,
}

/// Decides the flipper game with width `k` and radius `r` on `g`.
pub fn solve(g: &Graph, k: usize, r: Radius) -> Result<GameVerdict, SolveError> {
    solve_with(g, k, r, &SolveOptions::default()).map(|(v, _)| v)
}

/// As `solve`, also returning the arena for strategy extraction and play.
pub fn solve_with(
    g: &Graph,
    k: usize,
    r: Radius,
    opts: &SolveOptions,
) -> Result<(GameVerdict, Arena), SolveError> {
    let arena = Arena::new(g, k, r, opts)?;
    let verdict = solve_arena(&arena);
    Ok((verdict, arena))
}

fn solve_arena(arena: &Arena) -> GameVerdict {
    let n = arena.base.order();
    let nf = arena.flips.len();

    // won[f] = runner vertices v with (f, v) in W
    let mut won = vec![VertexSet::EMPTY; nf];
    let mut rank = vec![vec![u32::MAX; n]; nf];
    let mut level = 0u32;
    loop {
        level += 1;
        // membership tests use the previous level only (level-synchronous)
        let prev: Vec<u16> = arena.iso.iter().zip(&won).map(|(i, w)| i.0 | w.0).collect();
        let mut grew = false;
        for f in 0..nf {
            for v in 0..n {
                if won[f].contains(v) {
                    continue;
                }
                let ball = arena.balls[f][v].0;
                if (0..nf).any(|fp| ball & !prev[fp] == 0) {
                    won[f].insert(v);
                    rank[f][v] = level;
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }

    // strategy: lowest-index flip among those of minimal successor rank
    let mut ranks = BTreeMap::new();
    let mut strategy = BTreeMap::new();
    let mut safe_region = BTreeSet::new();
    for f in 0..nf {
        for v in 0..n {
            let s = GameState { graph: f, runner: v };
            if !won[f].contains(v) {
                safe_region.insert(s);
                continue;
            }
            ranks.insert(s, rank[f][v]);
            let ball = arena.balls[f][v];
            let mut best: Option<(u32, usize)> = None;
            for fp in 0..nf {
                if ball.0 & !(arena.iso[fp].0 | won[fp].0) != 0 {
                    continue;
                }
                let succ = ball
                    .iter()
                    .filter(|&u| !arena.iso[fp].contains(u))
                    .map(|u| rank[fp][u])
                    .max()
                    .unwrap_or(0);
                if best.map_or(true, |(br, _)| succ < br) {
                    best = Some((succ, fp));
                }
            }
            strategy.insert(s, best.expect("won state must have a witness flip").1);
        }
    }

    let flipper_wins = (0..n).all(|v| won[0].contains(v));
    GameVerdict { flipper_wins, ranks, strategy, safe_region }
}

/// Least k for which the flipper wins at radius `r`. Bounded above by n:
/// with the singleton partition the flipper can flip away every edge and
/// announce the edgeless graph.
pub fn flip_width(g: &Graph, r: Radius) -> Result<usize, SolveError> {
    flip_width_with(g, r, &SolveOptions::default())
}

pub fn flip_width_with(g: &Graph, r: Radius, opts: &SolveOptions) -> Result<usize, SolveError> {
    let n = g.order();
    if n == 0 {
        return Ok(1);
    }
    for k in 1..=n {
        if solve_with(g, k, r, opts)?.0.flipper_wins {
            return Ok(k);
        }
    }
    unreachable!("width n always wins: flip all adjacent singleton pairs");
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_caught_at_width_1() {
        let verdict = solve(&Graph::complete(3), 1, Radius::finite(2)).unwrap();
        assert!(verdict.flipper_wins);
        // announce the complement: every starting state has rank 1
        for v in 0..3 {
            assert_eq!(verdict.ranks[&GameState { graph: 0, runner: v }], 1);
        }
    }

    #[test]
    fn c5_escapes_width_2_radius_2() {
        let verdict = solve(&Graph::cycle(5), 2, Radius::finite(2)).unwrap();
        assert!(!verdict.flipper_wins);
        assert!(!verdict.safe_region.is_empty());
    }

    #[test]
    fn p4_caught_width_2_radius_inf() {
        let verdict = solve(&Graph::path(4), 2, Radius::Infinite).unwrap();
        assert!(verdict.flipper_wins);
    }

    #[test]
    fn safe_region_closed_under_evasion() {
        let (verdict, arena) = solve_with(
            &Graph::cycle(5),
            2,
            Radius::finite(2),
            &SolveOptions::default(),
        )
        .unwrap();
        for s in &verdict.safe_region {
            let ball = arena.ball(*s);
            for fp in 0..arena.flips().len() {
                let escape = ball.iter().any(|u| {
                    !arena.isolated(fp).contains(u)
                        && verdict.safe_region.contains(&GameState { graph: fp, runner: u })
                });
                assert!(escape, "state {s:?} has no evasion against flip {fp}");
            }
        }
    }

    #[test]
    fn rank_strictly_decreases_along_strategy() {
        let (verdict, arena) =
            solve_with(&Graph::path(4), 2, Radius::Infinite, &SolveOptions::default()).unwrap();
        assert!(verdict.flipper_wins);
        for (&s, &f) in &verdict.strategy {
            let r = verdict.ranks[&s];
            for u in arena.ball(s).iter() {
                if !arena.isolated(f).contains(u) {
                    let next = GameState { graph: f, runner: u };
                    assert!(verdict.ranks[&next] < r, "no descent at {s:?} -> {next:?}");
                }
            }
        }
    }

    #[test]
    fn flip_width_of_complete_and_edgeless_is_1() {
        for r in [Radius::finite(1), Radius::finite(2), Radius::Infinite] {
            assert_eq!(flip_width(&Graph::complete(4), r).unwrap(), 1);
            assert_eq!(flip_width(&Graph::empty(4), r).unwrap(), 1);
            assert_eq!(flip_width(&Graph::empty(1), r).unwrap(), 1);
        }
    }

    #[test]
    fn flip_width_of_c6_at_radius_inf_is_2() {
        assert_eq!(flip_width(&Graph::cycle(6), Radius::Infinite).unwrap(), 2);
    }

    #[test]
    fn isolated_start_is_caught_in_round_one() {
        // runner starting on the isolated vertex of the co-gem is caught by
        // the identity flip at rank 1
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3)]);
        let verdict = solve(&g, 2, Radius::finite(2)).unwrap();
        let s = GameState { graph: 0, runner: 4 };
        assert_eq!(verdict.ranks.get(&s), Some(&1));
        assert_eq!(verdict.strategy.get(&s), Some(&0), "identity flip is the lowest-index witness");
    }

    #[test]
    fn state_budget_refusal() {
        let opts = SolveOptions { state_budget: 10, ..Default::default() };
        match solve_with(&Graph::cycle(5), 2, Radius::finite(2), &opts) {
            Err(SolveError::StateBudgetExceeded { states, budget: 10 }) => assert!(states > 10),
            other => panic!("expected state budget refusal, got {:?}", other.err()),
        }
    }
}
