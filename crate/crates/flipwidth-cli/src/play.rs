//! Text-mode play loop for the flipper game. The machine side is driven by
//! the solver: a positional strategy when the flipper wins, safe-region
//! evasion for the runner when it does not.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use anyhow::{Context, Result};
use clap::ValueEnum;

use flipwidth::flips::FlipSpec;
use flipwidth::graph::{Graph, Radius, Vertex, VertexSet};
use flipwidth::solver::{solve_with, Arena, GameState, GameVerdict, SolveOptions};

/// The human's role; the machine plays the other side.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Role {
    Runner,
    Flipper,
}

fn show_graph(out: &mut impl Write, label: &str, g: &Graph) -> Result<()> {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
    let iso = g.isolated_vertices();
    writeln!(
        out,
        "{label}: n={} edges[{}] isolated {}",
        g.order(),
        edges.join(" "),
        iso
    )?;
    Ok(())
}

fn read_line(input: &mut impl BufRead) -> Result<Option<String>> {
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        return Ok(None); // EOF ends the session
    }
    Ok(Some(line.trim().to_string()))
}

pub fn run_play(
    g: &Graph,
    width: usize,
    radius: Radius,
    role: Role,
    mut input: impl BufRead,
    mut output: impl Write,
) -> Result<()> {
    let (verdict, arena) =
        solve_with(g, width, radius, &SolveOptions::default()).context("solving the game")?;
    writeln!(
        output,
        "flipper game: width {width}, radius {radius}; exact verdict: flipper {}",
        if verdict.flipper_wins { "wins" } else { "loses" }
    )?;
    show_graph(&mut output, "base graph", g)?;
    match role {
        Role::Runner => human_runner(&arena, &verdict, &mut input, &mut output),
        Role::Flipper => human_flipper(&arena, &verdict, &mut input, &mut output),
    }
}

/// Machine flipper move: the winning table when available, otherwise the
/// flip that leaves the runner the fewest escape vertices.
fn machine_flip(arena: &Arena, verdict: &GameVerdict, state: GameState) -> usize {
    if let Some(&f) = verdict.strategy.get(&state) {
        return f;
    }
    let ball = arena.ball(state);
    let mut best = (usize::MAX, 0usize);
    for f in 0..arena.flips().len() {
        let escapes = ball
            .iter()
            .filter(|&u| {
                !arena.isolated(f).contains(u)
                    && verdict.safe_region.contains(&GameState { graph: f, runner: u })
            })
            .count();
        if escapes < best.0 {
            best = (escapes, f);
        }
    }
    best.1
}

fn human_runner(
    arena: &Arena,
    verdict: &GameVerdict,
    input: &mut impl BufRead,
    output: &mut impl Write,
) -> Result<()> {
    let n = arena.base().order();
    let all = VertexSet::full(n);
    writeln!(output, "you are the runner; pick a starting vertex from {all}")?;
    write!(output, "start> ")?;
    output.flush()?;
    let mut runner: Vertex = loop {
        match read_line(input)? {
            None => return Ok(()),
            Some(line) => match line.parse::<usize>() {
                Ok(v) if v < n => break v,
                _ => {
                    write!(output, "pick one of {all}\nstart> ")?;
                    output.flush()?;
                }
            },
        }
    };

    let mut state = GameState { graph: 0, runner };
    let mut seen: HashSet<GameState> = HashSet::new();
    for round in 1.. {
        let f = machine_flip(arena, verdict, state);
        let (spec, announced) = &arena.flips()[f];
        writeln!(output, "round {round}: flipper announces {spec}")?;
        show_graph(output, "announced", announced)?;
        let legal = arena.ball(state);
        writeln!(output, "legal moves (paths of length <= {} in the previous graph): {legal}", arena.radius())?;
        write!(output, "move> ")?;
        output.flush()?;
        runner = loop {
            match read_line(input)? {
                None => return Ok(()),
                Some(line) => match line.parse::<usize>() {
                    Ok(v) if legal.contains(v) => break v,
                    _ => {
                        writeln!(output, "illegal move; legal moves are {legal}")?;
                        write!(output, "move> ")?;
                        output.flush()?;
                    }
                },
            }
        };
        if announced.neighbors(runner).is_empty() {
            writeln!(output, "caught: vertex {runner} is isolated in round {round}'s graph")?;
            return Ok(());
        }
        state = GameState { graph: f, runner };
        if !seen.insert(state) {
            writeln!(output, "configuration repeated: the runner survives")?;
            return Ok(());
        }
    }
    Ok(())
}

/// Machine runner move: prefer a safe non-isolated vertex, else delay
/// capture by maximizing the attractor rank.
fn machine_run(
    arena: &Arena,
    verdict: &GameVerdict,
    legal: VertexSet,
    announced: usize,
) -> Option<Vertex> {
    let safe = legal.iter().find(|&u| {
        !arena.isolated(announced).contains(u)
            && verdict.safe_region.contains(&GameState { graph: announced, runner: u })
    });
    safe.or_else(|| {
        legal
            .iter()
            .filter(|&u| !arena.isolated(announced).contains(u))
            .max_by_key(|&u| verdict.ranks.get(&GameState { graph: announced, runner: u }).copied())
    })
}

fn human_flipper(
    arena: &Arena,
    verdict: &GameVerdict,
    input: &mut impl BufRead,
    output: &mut impl Write,
) -> Result<()> {
    let n = arena.base().order();
    // the runner sees the base graph when picking its start
    let start = (0..n)
        .map(|v| GameState { graph: 0, runner: v })
        .max_by_key(|s| {
            if verdict.safe_region.contains(s) {
                (1, 0)
            } else {
                (0, verdict.ranks.get(s).copied().unwrap_or(0))
            }
        });
    let Some(mut state) = start else {
        writeln!(output, "empty graph; nothing to play")?;
        return Ok(());
    };
    writeln!(output, "you are the flipper; the runner starts at {}", state.runner)?;
    writeln!(
        output,
        "enter flips as: parts=[{{0,1}},{{2}}] pairs=[(0,0),(0,1)]  (at most {} parts)",
        arena.width()
    )?;

    let mut seen: HashSet<GameState> = HashSet::new();
    for round in 1.. {
        write!(output, "flip {round}> ")?;
        output.flush()?;
        let announced_idx = loop {
            match read_line(input)? {
                None => return Ok(()),
                Some(line) => {
                    let spec: FlipSpec = match line.parse() {
                        Ok(s) => s,
                        Err(e) => {
                            writeln!(output, "cannot parse flip: {e}")?;
                            write!(output, "flip {round}> ")?;
                            output.flush()?;
                            continue;
                        }
                    };
                    if spec.width() > arena.width() {
                        writeln!(
                            output,
                            "width violation: {} parts announced, game width is {}",
                            spec.width(),
                            arena.width()
                        )?;
                        write!(output, "flip {round}> ")?;
                        output.flush()?;
                        continue;
                    }
                    match flipwidth::flips::apply_flip(arena.base(), &spec) {
                        Ok(h) => {
                            match arena.flips().iter().position(|(_, g)| *g == h) {
                                Some(idx) => break idx,
                                None => unreachable!("arena enumerates every k-flip"),
                            }
                        }
                        Err(e) => {
                            writeln!(output, "inapplicable flip: {e}")?;
                            write!(output, "flip {round}> ")?;
                            output.flush()?;
                        }
                    }
                }
            }
        };
        let announced = &arena.flips()[announced_idx].1;
        show_graph(output, "announced", announced)?;
        let legal = arena.ball(state);
        match machine_run(arena, verdict, legal, announced_idx) {
            None => {
                writeln!(
                    output,
                    "caught: every vertex the runner can reach is isolated (round {round})"
                )?;
                return Ok(());
            }
            Some(u) => {
                writeln!(output, "runner moves to {u}")?;
                state = GameState { graph: announced_idx, runner: u };
                if !seen.insert(state) {
                    writeln!(output, "configuration repeated: the runner survives")?;
                    return Ok(());
                }
            }
        }
    }
    Ok(())
}
