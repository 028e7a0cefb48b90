//! Universal strategy verifier: exhaustively branches over every runner
//! behavior against a reactive flipper procedure and reports capture on all
//! plays, or an escape witness (a repeated configuration means the runner
//! can evade forever).

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::flips::{apply_flip, FlipError, FlipSpec};
use crate::graph::{Graph, Radius, Vertex};
use crate::solver::{GameState, GameVerdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("strategy emitted a {got}-part flip, declared width is {declared}")]
    WidthViolation { declared: usize, got: usize },
    #[error("strategy emitted an inapplicable flip spec: {0}")]
    BadSpec(#[from] FlipError),
    #[error("verification state space exceeded {0} configurations")]
    StateExplosion(usize),
}

/// A reactive flipper procedure: a pure transition function over an
/// observable finite state. `next_flip` receives the runner's current
/// vertex (its position after the previous round's move) and returns the
/// flip to announce plus the successor state.
pub trait FlipperStrategy {
    type State: Clone + Eq + Hash;

    fn initial_state(&self) -> Self::State;
    fn next_flip(&self, state: &Self::State, runner: Vertex) -> (Self::State, FlipSpec);
    fn declared_width(&self) -> usize;
}

/// One announced round of an escaping play.
#[derive(Debug, Clone)]
pub struct TraceRound {
    pub spec: FlipSpec,
    pub runner_from: Vertex,
    pub runner_to: Vertex,
}

/// A play on which the runner survives: the rounds from the starting vertex
/// up to a repeated (strategy state, announced graph, runner vertex)
/// configuration.
#[derive(Debug, Clone)]
pub struct EscapeTrace {
    pub start: Vertex,
    pub rounds: Vec<TraceRound>,
    /// index into `rounds` where the repeated configuration first occurred
    pub cycle_from: usize,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub captures: bool,
    pub escape: Option<EscapeTrace>,
    /// max announced flips until capture over all plays (when captures)
    pub max_rounds: u32,
}

const MAX_CONFIGS: usize = 1_000_000;

/// True iff for every runner behavior the runner eventually lands on a vertex
/// isolated in the just-announced graph. The runner moves with knowledge of
/// the announced graph; any repeated configuration yields an escape trace.
pub fn verify_strategy<S: FlipperStrategy + Sync>(
    g: &Graph,
    r: Radius,
    strat: &S,
) -> Result<VerifyReport, VerifyError>
where
    S::State: Send,
{
    // the path-based DFS can get as deep as the configuration space; give
    // it a roomy stack instead of the caller's
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .stack_size(256 << 20)
            .spawn_scoped(scope, || verify_strategy_inner(g, r, strat))
            .expect("spawn verifier thread")
            .join()
            .expect("verifier thread panicked")
    })
}

fn verify_strategy_inner<S: FlipperStrategy>(
    g: &Graph,
    r: Radius,
    strat: &S,
) -> Result<VerifyReport, VerifyError> {
    let mut v = Verifier {
        g,
        r,
        strat,
        memo: HashMap::new(),
        path: HashMap::new(),
        announced: HashMap::new(),
    };
    let mut max_rounds = 0;
    for start in g.vertices() {
        let cfg = Config { state: strat.initial_state(), last: *g, runner: start };
        match v.explore(cfg.clone(), 0)? {
            Outcome::Captured(rounds) => max_rounds = max_rounds.max(rounds),
            Outcome::Escapes(mut partial) => {
                partial.rounds.reverse();
                let cycle_from = partial.cycle_from;
                return Ok(VerifyReport {
                    captures: false,
                    escape: Some(EscapeTrace { start, rounds: partial.rounds, cycle_from }),
                    max_rounds: 0,
                });
            }
        }
    }
    Ok(VerifyReport { captures: true, escape: None, max_rounds })
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Config<S> {
    state: S,
    last: Graph,
    runner: Vertex,
}

enum Outcome {
    /// all branches captured; payload = max rounds to capture from here
    Captured(u32),
    /// some branch survives; rounds collected in reverse while unwinding
    Escapes(PartialTrace),
}

struct PartialTrace {
    rounds: Vec<TraceRound>,
    cycle_from: usize,
}

struct Verifier<'a, S: FlipperStrategy> {
    g: &'a Graph,
    r: Radius,
    strat: &'a S,
    memo: HashMap<Config<S::State>, Option<u32>>,
    path: HashMap<Config<S::State>, usize>,
    announced: HashMap<FlipSpec, Graph>,
}

impl<S: FlipperStrategy> Verifier<'_, S> {
    fn explore(&mut self, cfg: Config<S::State>, depth: usize) -> Result<Outcome, VerifyError> {
        if let Some(&cached) = self.memo.get(&cfg) {
            return Ok(match cached {
                Some(rounds) => Outcome::Captured(rounds),
                // a reachable cycle was already proven from this configuration
                None => Outcome::Escapes(PartialTrace { rounds: vec![], cycle_from: depth }),
            });
        }
        if let Some(&at) = self.path.get(&cfg) {
            // repeated configuration on the current play: the runner loops forever
            self.memo.insert(cfg, None);
            return Ok(Outcome::Escapes(PartialTrace { rounds: vec![], cycle_from: at }));
        }
        if self.memo.len() + self.path.len() > MAX_CONFIGS {
            return Err(VerifyError::StateExplosion(MAX_CONFIGS));
        }

        self.path.insert(cfg.clone(), depth);
        let (next_state, spec) = self.strat.next_flip(&cfg.state, cfg.runner);
        if spec.width() > self.strat.declared_width() {
            return Err(VerifyError::WidthViolation {
                declared: self.strat.declared_width(),
                got: spec.width(),
            });
        }
        let announced = match self.announced.get(&spec) {
            Some(h) => *h,
            None => {
                let h = apply_flip(self.g, &spec)?;
                self.announced.insert(spec.clone(), h);
                h
            }
        };

        let mut worst = 0u32;
        let mut escape: Option<PartialTrace> = None;
        for to in cfg.last.ball(cfg.runner, self.r).iter() {
            if announced.neighbors(to).is_empty() {
                worst = worst.max(1); // captured at this announcement
                continue;
            }
            let next = Config { state: next_state.clone(), last: announced, runner: to };
            match self.explore(next, depth + 1)? {
                Outcome::Captured(rounds) => worst = worst.max(rounds + 1),
                Outcome::Escapes(mut t) => {
                    t.rounds.push(TraceRound {
                        spec: spec.clone(),
                        runner_from: cfg.runner,
                        runner_to: to,
                    });
                    escape = Some(t);
                    break;
                }
            }
        }

        self.path.remove(&cfg);
        match escape {
            Some(t) => {
                self.memo.insert(cfg, None);
                Ok(Outcome::Escapes(t))
            }
            None => {
                self.memo.insert(cfg, Some(worst));
                Ok(Outcome::Captured(worst))
            }
        }
    }
}

/// Positional strategy read off a solver verdict: announce the table's flip
/// for the current (announced graph, runner) state. Falls back to the
/// identity flip outside the winning region, which the verifier then
/// correctly reports as an escape.
pub struct TableStrategy {
    flips: Vec<FlipSpec>,
    graph_index: HashMap<Graph, usize>,
    table: HashMap<GameState, usize>,
    width: usize,
}

impl TableStrategy {
    pub fn from_verdict(verdict: &GameVerdict, arena: &crate::solver::Arena) -> TableStrategy {
        TableStrategy {
            flips: arena.flips().iter().map(|(s, _)| s.clone()).collect(),
            graph_index: arena
                .flips()
                .iter()
                .enumerate()
                .map(|(i, (_, h))| (*h, i))
                .collect(),
            table: verdict.strategy.iter().map(|(&s, &f)| (s, f)).collect(),
            width: arena.width(),
        }
    }
}

impl FlipperStrategy for TableStrategy {
    type State = usize;

    fn initial_state(&self) -> usize {
        0 // the base graph is always flip 0
    }

    fn next_flip(&self, state: &usize, runner: Vertex) -> (usize, FlipSpec) {
        let key = GameState { graph: *state, runner };
        match self.table.get(&key) {
            Some(&f) => (f, self.flips[f].clone()),
            None => (0, self.flips[0].clone()),
        }
    }

    fn declared_width(&self) -> usize {
        self.width
    }
}

impl TableStrategy {
    pub fn index_of_graph(&self, h: &Graph) -> Option<usize> {
        self.graph_index.get(h).copied()
    }
}

/// The width-n upper-bound strategy: flip every adjacent singleton pair,
/// announcing the edgeless graph each round.
pub struct IsolateAllStrategy {
    spec: FlipSpec,
}

impl IsolateAllStrategy {
    pub fn new(g: &Graph) -> IsolateAllStrategy {
        let partition = crate::flips::Partition::singletons(g.order());
        let spec = FlipSpec::new(partition, g.edges()).unwrap();
        IsolateAllStrategy { spec }
    }
}

impl FlipperStrategy for IsolateAllStrategy {
    type State = ();

    fn initial_state(&self) {}

    fn next_flip(&self, _: &(), _: Vertex) -> ((), FlipSpec) {
        ((), self.spec.clone())
    }

    fn declared_width(&self) -> usize {
        self.spec.width().max(1)
    }
}
