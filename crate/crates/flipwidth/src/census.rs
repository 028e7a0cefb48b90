//! Census harness: for every input graph, record obstruction-freeness, total
//! decomposability (both routes), the width-1/width-2 solver verdicts at the
//! configured radius, and whether the synthesized strategy verifies; flag
//! any record where the three width-2 characterizations disagree.

use serde::{Deserialize, Serialize};

use crate::bijoin::is_completely_decomposable;
use crate::graph::{Graph, Radius};
use crate::graph6::emit_graph6;
use crate::obstructions::obstruction_witness;
use crate::solver::{solve_with, SolveOptions};
use crate::strategy::synthesize_strategy;
use crate::verify::verify_strategy;

#[derive(Debug, Clone, Copy)]
pub struct CensusConfig {
    pub radius: Radius,
    /// verify the synthesized strategy for obstruction-free graphs
    pub verify_strategies: bool,
    pub solve_opts: SolveOptions,
}

impl CensusConfig {
    pub fn new(radius: Radius) -> CensusConfig {
        CensusConfig { radius, verify_strategies: true, solve_opts: SolveOptions::default() }
    }
}

/// One census row, keyed by the graph6 of the labeled input graph.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusRecord {
    pub graph6: String,
    pub n: usize,
    pub obstruction_free: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub obstruction: Option<String>,
    pub completely_decomposable: Option<bool>,
    /// solver verdict at width 1 (flipper wins <=> fw_r <= 1)
    pub fw_le_1: Option<bool>,
    /// solver verdict at width 2 (flipper wins <=> fw_r <= 2)
    pub fw_le_2: Option<bool>,
    /// synthesized strategy passed adversarial verification (obstruction-free
    /// graphs only)
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub strategy_verified: Option<bool>,
    /// observed number of announced flips until capture, worst case
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub strategy_rounds: Option<u32>,
    pub consistent: bool,
    pub skipped: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub skip_reason: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusSummary {
    pub total: usize,
    pub obstruction_free: usize,
    pub inconsistent: usize,
    pub skipped: usize,
    pub strategy_failures: usize,
}

#[derive(Debug, Clone)]
pub struct CensusReport {
    pub records: Vec<CensusRecord>,
    pub summary: CensusSummary,
}

/// Runs the full per-graph battery. Budget refusals are recorded as skipped,
/// not failed.
pub fn census_graph(g: &Graph, config: &CensusConfig) -> CensusRecord {
    let graph6 = emit_graph6(g);
    let n = g.order();

    let witness = obstruction_witness(g);
    let obstruction_free = witness.is_none();
    let obstruction = witness.map(|(kind, _)| kind.name().to_string());

    let decomposable = match is_completely_decomposable(g) {
        Ok(d) => d.value(),
        Err(e) => {
            return skipped_record(graph6, n, format!("decomposability failed: {e}"));
        }
    };

    let solve_at = |k: usize| solve_with(g, k, config.radius, &config.solve_opts);
    let fw_le_1 = match solve_at(1) {
        Ok((v, _)) => v.flipper_wins,
        Err(e) => return skipped_record(graph6, n, format!("width-1 solve refused: {e}")),
    };
    let fw_le_2 = match solve_at(2) {
        Ok((v, _)) => v.flipper_wins,
        Err(e) => return skipped_record(graph6, n, format!("width-2 solve refused: {e}")),
    };

    let (strategy_verified, strategy_rounds) = if obstruction_free && config.verify_strategies {
        match synthesize_strategy(g)
            .map_err(|e| e.to_string())
            .and_then(|s| {
                if !s.check_phase_soundness() || !s.check_descent_preconditions() {
                    return Err("phase soundness violated".to_string());
                }
                verify_strategy(g, config.radius, &s).map_err(|e| e.to_string())
            }) {
            Ok(report) => (Some(report.captures), report.captures.then_some(report.max_rounds)),
            Err(_) => (Some(false), None),
        }
    } else {
        (None, None)
    };

    let three_way = obstruction_free == decomposable && decomposable == fw_le_2;
    let consistent = three_way && strategy_verified != Some(false);

    CensusRecord {
        graph6,
        n,
        obstruction_free: Some(obstruction_free),
        obstruction,
        completely_decomposable: Some(decomposable),
        fw_le_1: Some(fw_le_1),
        fw_le_2: Some(fw_le_2),
        strategy_verified,
        strategy_rounds,
        consistent,
        skipped: false,
        skip_reason: None,
    }
}

fn skipped_record(graph6: String, n: usize, reason: String) -> CensusRecord {
    CensusRecord {
        graph6,
        n,
        obstruction_free: None,
        obstruction: None,
        completely_decomposable: None,
        fw_le_1: None,
        fw_le_2: None,
        strategy_verified: None,
        strategy_rounds: None,
        consistent: true,
        skipped: true,
        skip_reason: Some(reason),
    }
}

/// Census over a graph list; records come back sorted by graph6 key so runs
/// are byte-identical regardless of parallel scheduling.
pub fn run_census(graphs: &[Graph], config: &CensusConfig) -> CensusReport {
    let mut records = census_all(graphs, config);
    records.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    let summary = CensusSummary {
        total: records.len(),
        obstruction_free: records.iter().filter(|r| r.obstruction_free == Some(true)).count(),
        inconsistent: records.iter().filter(|r| !r.consistent).count(),
        skipped: records.iter().filter(|r| r.skipped).count(),
        strategy_failures: records.iter().filter(|r| r.strategy_verified == Some(false)).count(),
    };
    CensusReport { records, summary }
}

#[cfg(feature = "parallel")]
fn census_all(graphs: &[Graph], config: &CensusConfig) -> Vec<CensusRecord> {
    use rayon::prelude::*;
    graphs.par_iter().map(|g| census_graph(g, config)).collect()
}

#[cfg(not(feature = "parallel"))]
fn census_all(graphs: &[Graph], config: &CensusConfig) -> Vec<CensusRecord> {
    graphs.iter().map(|g| census_graph(g, config)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::enumerate_classes;

    #[test]
    fn n4_census_all_caught_at_width_2() {
        let graphs = enumerate_classes(4).unwrap();
        let report = run_census(&graphs, &CensusConfig::new(Radius::Infinite));
        assert_eq!(report.summary.total, 11);
        assert_eq!(report.summary.inconsistent, 0);
        assert_eq!(report.summary.skipped, 0);
        assert!(report.records.iter().all(|r| r.fw_le_2 == Some(true)));
    }

    #[test]
    fn n5_radius2_escapees_are_exactly_the_obstructions() {
        let graphs = enumerate_classes(5).unwrap();
        let report = run_census(&graphs, &CensusConfig::new(Radius::finite(2)));
        assert_eq!(report.summary.total, 34);
        assert_eq!(report.summary.inconsistent, 0);
        let escapees: Vec<&CensusRecord> =
            report.records.iter().filter(|r| r.fw_le_2 == Some(false)).collect();
        assert_eq!(escapees.len(), 4);
        for r in escapees {
            assert_eq!(r.obstruction_free, Some(false));
            assert!(r.obstruction.is_some());
        }
    }

    #[test]
    fn census_runs_are_deterministic() {
        let graphs = enumerate_classes(4).unwrap();
        let config = CensusConfig::new(Radius::Infinite);
        let a = run_census(&graphs, &config);
        let b = run_census(&graphs, &config);
        assert_eq!(a.records, b.records);
    }

    #[test]
    fn budget_refusal_recorded_as_skipped() {
        let config = CensusConfig {
            radius: Radius::Infinite,
            verify_strategies: false,
            solve_opts: SolveOptions { state_budget: 1, ..Default::default() },
        };
        let report = run_census(&[Graph::cycle(5)], &config);
        assert_eq!(report.summary.skipped, 1);
        assert_eq!(report.summary.inconsistent, 0);
        assert!(report.records[0].skip_reason.is_some());
    }
}
