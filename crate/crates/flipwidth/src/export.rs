//! Deterministic exporters: verdict JSON, decomposition-tree DOT/JSON/text,
//! strategy DOT/JSON, census JSONL. Keys are sorted and node ids stable, so
//! exports are byte-identical across runs.

use serde_json::{json, Map, Value};

use crate::bijoin::{DecompTree, NodeLabel};
use crate::census::{CensusRecord, CensusReport};
use crate::graph::Radius;
use crate::graph6::emit_graph6;
use crate::obstructions::{FlipCensusHit, ObstructionKind};
use crate::solver::{Arena, GameVerdict};
use crate::strategy::{ScriptStep, ScriptedStrategy, SynthesizedStrategy};

/// `"<announced graph6>#<runner vertex>"`; '#' cannot occur inside graph6.
fn state_key(arena: &Arena, state: crate::solver::GameState) -> String {
    format!("{}#{}", emit_graph6(&arena.flips()[state.graph].1), state.runner)
}

/// Verdict JSON: `ranks`/`strategy` present iff the flipper wins,
/// `safe_region` present iff not.
pub fn verdict_to_json(arena: &Arena, verdict: &GameVerdict) -> Value {
    let mut obj = Map::new();
    obj.insert("graph6".into(), json!(emit_graph6(arena.base())));
    obj.insert("k".into(), json!(arena.width()));
    obj.insert("r".into(), json!(arena.radius().to_string()));
    obj.insert("flipper_wins".into(), json!(verdict.flipper_wins));
    if verdict.flipper_wins {
        let ranks: Map<String, Value> = verdict
            .ranks
            .iter()
            .map(|(&s, &r)| (state_key(arena, s), json!(r)))
            .collect();
        obj.insert("ranks".into(), Value::Object(ranks));
        let mut strategy: Vec<(String, String)> = verdict
            .strategy
            .iter()
            .map(|(&s, &f)| (state_key(arena, s), arena.flips()[f].0.to_string()))
            .collect();
        strategy.sort();
        obj.insert(
            "strategy".into(),
            Value::Array(strategy.into_iter().map(|(s, f)| json!([s, f])).collect()),
        );
    } else {
        let mut safe: Vec<String> =
            verdict.safe_region.iter().map(|&s| state_key(arena, s)).collect();
        safe.sort();
        obj.insert("safe_region".into(), json!(safe));
    }
    Value::Object(obj)
}

fn label_str(l: NodeLabel) -> &'static str {
    match l {
        NodeLabel::Complete => "complete",
        NodeLabel::Prime => "prime",
    }
}

/// DOT: leaves labeled by vertex id, internal nodes `complete`/`prime`,
/// nodes named `n0, n1, ...` by creation order.
pub fn decomposition_to_dot(tree: &DecompTree) -> String {
    let mut out = String::from("graph decomposition {\n");
    for t in 0..tree.node_count() {
        match tree.leaf_vertex(t) {
            Some(v) => out.push_str(&format!("  n{t} [shape=circle label=\"{v}\"];\n")),
            None => out.push_str(&format!(
                "  n{t} [shape=box label=\"{}\"];\n",
                label_str(tree.label(t).unwrap())
            )),
        }
    }
    for t in 0..tree.node_count() {
        for &nb in tree.neighbors(t) {
            if t < nb {
                out.push_str(&format!("  n{t} -- n{nb};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn decomposition_to_json(tree: &DecompTree) -> Value {
    let nodes: Vec<Value> = (0..tree.node_count())
        .map(|t| match tree.leaf_vertex(t) {
            Some(v) => json!({"id": format!("n{t}"), "kind": "leaf", "vertex": v}),
            None => json!({
                "id": format!("n{t}"),
                "kind": label_str(tree.label(t).unwrap()),
            }),
        })
        .collect();
    let mut edges = Vec::new();
    for t in 0..tree.node_count() {
        for &nb in tree.neighbors(t) {
            if t < nb {
                edges.push(json!([format!("n{t}"), format!("n{nb}")]));
            }
        }
    }
    json!({"order": tree.order(), "nodes": nodes, "edges": edges})
}

pub fn decomposition_to_text(tree: &DecompTree) -> String {
    let mut out = String::new();
    for t in 0..tree.node_count() {
        let line = match tree.leaf_vertex(t) {
            Some(v) => format!("n{t}: leaf {v}"),
            None => {
                let nbs: Vec<String> =
                    tree.neighbors(t).iter().map(|nb| format!("n{nb}")).collect();
                format!("n{t}: {} node, neighbors [{}]", label_str(tree.label(t).unwrap()), nbs.join(", "))
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Strategy decision tree: nodes `(tree node, phase)`, edges labeled by the
/// observed-runner set that selects them, payload = flip spec text.
pub fn strategy_to_dot(strat: &SynthesizedStrategy) -> String {
    let mut out = String::from("digraph strategy {\n");
    if let Some(spec) = strat.direct_spec() {
        out.push_str(&format!("  s [label=\"{spec}\"];\n"));
        out.push_str("}\n");
        return out;
    }
    let mut keys: Vec<(usize, usize)> = strat.plan().keys().copied().collect();
    keys.sort_unstable();
    for &(t, i) in &keys {
        let phase = &strat.plan()[&(t, i)];
        out.push_str(&format!("  p{t}_{i} [label=\"n{t} phase {i}: {}\"];\n", phase.spec));
    }
    for &(t, i) in &keys {
        let phase = &strat.plan()[&(t, i)];
        let children = strat.children_of(t);
        let m = children.len();
        let descend = children[i - 1];
        if strat.plan().contains_key(&(descend, 1)) {
            out.push_str(&format!(
                "  p{t}_{i} -> p{descend}_1 [label=\"runner in {}\"];\n",
                phase.descend_into
            ));
        } else {
            out.push_str(&format!(
                "  p{t}_{i} -> capture_n{descend} [label=\"runner in {}\"];\n",
                phase.descend_into
            ));
            out.push_str(&format!("  capture_n{descend} [label=\"capture\" shape=doublecircle];\n"));
        }
        if i < m - 1 {
            out.push_str(&format!(
                "  p{t}_{i} -> p{t}_{} [label=\"runner outside {}\"];\n",
                i + 1,
                phase.descend_into
            ));
        } else {
            let last = children[m - 1];
            if strat.plan().contains_key(&(last, 1)) {
                out.push_str(&format!(
                    "  p{t}_{i} -> p{last}_1 [label=\"runner in {}\"];\n",
                    phase.tail_last
                ));
            } else {
                out.push_str(&format!(
                    "  p{t}_{i} -> capture_n{last} [label=\"runner in {}\"];\n",
                    phase.tail_last
                ));
                out.push_str(&format!("  capture_n{last} [label=\"capture\" shape=doublecircle];\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn strategy_to_json(strat: &SynthesizedStrategy) -> Value {
    if let Some(spec) = strat.direct_spec() {
        return json!({"kind": "direct", "flip": spec.to_string()});
    }
    let mut keys: Vec<(usize, usize)> = strat.plan().keys().copied().collect();
    keys.sort_unstable();
    let phases: Vec<Value> = keys
        .iter()
        .map(|&(t, i)| {
            let phase = &strat.plan()[&(t, i)];
            json!({
                "node": format!("n{t}"),
                "phase": i,
                "flip": phase.spec.to_string(),
                "descend_into": phase.descend_into.to_string(),
                "triple": [
                    phase.triple.a.to_string(),
                    phase.triple.b.to_string(),
                    phase.triple.c.to_string(),
                ],
            })
        })
        .collect();
    json!({
        "kind": "recursive",
        "root": format!("n{}", strat.root().unwrap()),
        "phases": phases,
    })
}

pub fn script_to_json(script: &ScriptedStrategy) -> Value {
    let steps: Vec<Value> = script
        .steps()
        .iter()
        .map(|s| match s {
            ScriptStep::Announce { spec, next } => {
                json!({"announce": spec.to_string(), "next": next})
            }
            ScriptStep::Branch { arms, fallback } => json!({
                "branch": arms
                    .iter()
                    .map(|(set, j)| json!([set.to_string(), j]))
                    .collect::<Vec<_>>(),
                "fallback": fallback,
            }),
            ScriptStep::Halt => json!("halt"),
        })
        .collect();
    json!({"steps": steps})
}

pub fn census_to_jsonl(report: &CensusReport) -> String {
    let mut out = String::new();
    for r in &report.records {
        out.push_str(&serde_json::to_string(r).expect("census records serialize"));
        out.push('\n');
    }
    out
}

pub fn record_to_json(record: &CensusRecord) -> Value {
    serde_json::to_value(record).expect("census records serialize")
}

pub fn census_hits_to_json(kind: ObstructionKind, hits: &[FlipCensusHit]) -> Value {
    json!({
        "graph": kind.name(),
        "hits": hits
            .iter()
            .map(|h| {
                json!({
                    "a": h.a.to_string(),
                    "pairs": h.pairs.to_string(),
                    "outcome": serde_json::to_value(&h.outcome).unwrap(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

pub fn census_hits_to_text(kind: ObstructionKind, hits: &[FlipCensusHit]) -> String {
    if hits.is_empty() {
        return format!("{}: no qualifying flip\n", kind.name());
    }
    let mut out = String::new();
    for h in hits {
        let outcome = match &h.outcome {
            crate::obstructions::CensusOutcome::IsolatedVertices(k) => {
                format!("{k} isolated vertices")
            }
            crate::obstructions::CensusOutcome::ComponentOrders(orders) => {
                format!("component orders {orders:?}")
            }
        };
        out.push_str(&format!("{}: A = {}, flips {} -> {}\n", kind.name(), h.a, h.pairs, outcome));
    }
    out
}

/// Verdict as a short human-readable block.
pub fn verdict_to_text(arena: &Arena, verdict: &GameVerdict) -> String {
    let mut out = format!(
        "graph {} | width {} | radius {}\nflipper wins: {}\n",
        emit_graph6(arena.base()),
        arena.width(),
        arena.radius(),
        verdict.flipper_wins
    );
    if verdict.flipper_wins {
        let worst = verdict.ranks.values().max().copied().unwrap_or(0);
        out.push_str(&format!(
            "distinct announced graphs: {}\nworst-case rank: {worst}\n",
            arena.flips().len()
        ));
    } else {
        out.push_str(&format!(
            "safe region size: {} of {} states\n",
            verdict.safe_region.len(),
            arena.flips().len() * arena.base().order()
        ));
    }
    out
}

pub fn radius_json(r: Radius) -> Value {
    json!(r.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijoin::build_decomposition;
    use crate::graph::Graph;
    use crate::solver::{solve_with, SolveOptions};

    #[test]
    fn k4_decomposition_dot() {
        let tree = build_decomposition(&Graph::complete(4)).unwrap();
        let dot = decomposition_to_dot(&tree);
        assert!(dot.contains("n4 [shape=box label=\"complete\"]"));
        assert_eq!(dot.matches("shape=circle").count(), 4);
        assert_eq!(dot.matches(" -- ").count(), 4);
    }

    #[test]
    fn verdict_json_shape() {
        let (verdict, arena) =
            solve_with(&Graph::complete(3), 1, Radius::finite(2), &SolveOptions::default())
                .unwrap();
        let v = verdict_to_json(&arena, &verdict);
        assert_eq!(v["flipper_wins"], serde_json::json!(true));
        assert_eq!(v["k"], serde_json::json!(1));
        assert_eq!(v["r"], serde_json::json!("2"));
        assert!(v["ranks"].is_object());
        assert!(v["strategy"].is_array());
        assert!(v.get("safe_region").is_none());
    }

    #[test]
    fn losing_verdict_exports_safe_region() {
        let (verdict, arena) =
            solve_with(&Graph::cycle(5), 2, Radius::finite(2), &SolveOptions::default()).unwrap();
        let v = verdict_to_json(&arena, &verdict);
        assert_eq!(v["flipper_wins"], serde_json::json!(false));
        assert!(v["safe_region"].is_array());
        assert!(v.get("ranks").is_none());
    }

    #[test]
    fn exports_are_deterministic() {
        let tree = build_decomposition(&Graph::cycle(6)).unwrap();
        assert_eq!(decomposition_to_dot(&tree), decomposition_to_dot(&tree));
        let (verdict, arena) =
            solve_with(&Graph::cycle(6), 2, Radius::Infinite, &SolveOptions::default()).unwrap();
        assert_eq!(
            verdict_to_json(&arena, &verdict).to_string(),
            verdict_to_json(&arena, &verdict).to_string()
        );
    }
}
