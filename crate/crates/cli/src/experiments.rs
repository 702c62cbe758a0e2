//! Configurations behind the published sweep figures.
//!
//! Cases `a` and `b` use values `(20, 10)` and `(10, 20)` on the
//! (high-centrality, low-centrality) classes, with zero costs.

use netreg::{Error, Result};

use crate::scenario::{parse_scenario, Scenario};
use crate::sweep::{run_sweep, SweepRow};

pub const EXPERIMENTS: [&str; 10] =
    ["fig52a", "fig52b", "figB1a", "figB1b", "figB2a", "figB2b", "figB3a", "figB3b", "figB4a", "figB4b"];

/// Price-difference bounds of the multi-curve figures.
pub const DIFFERENCE_BOUNDS: [f64; 3] = [0.0, 2.5, 5.0];

#[derive(Debug, Clone)]
pub struct ExperimentRun {
    /// File stem, e.g. `figB2a_delta2.5`.
    pub label: String,
    pub scenario: Scenario,
    pub rows: Vec<SweepRow>,
}

const CORE_PERIPHERY: &str = "kind = core_periphery\ncore = 3\nperiphery = 2\n";
const COMPLETE: &str = "kind = complete\nn = 9\n";
const BIPARTITE: &str = "kind = complete_bipartite\nm = 2\nk = 10\n";

fn scenario_text(network: &str, levels: (f64, f64), part1: Option<&str>, regulation: &str) -> String {
    let part = part1.map(|p| format!("part1 = {p}\n")).unwrap_or_default();
    format!(
        "[network]\n{network}\n[values]\nlevels = {} {}\n{part}\n[regulation]\n{regulation}\n",
        levels.0, levels.1
    )
}

/// The scenarios of a named experiment, labeled by output file stem.
pub fn experiment_scenarios(name: &str) -> Result<Vec<(String, Scenario)>> {
    let (figure, case) = name.split_at(name.len().saturating_sub(1));
    let levels = match case {
        "a" => (20.0, 10.0),
        "b" => (10.0, 20.0),
        _ => return Err(Error::UnknownExperiment(name.into())),
    };
    let uniform = "kind = uniform\n";
    let single = |network: &str, part1: Option<&str>| -> Result<Vec<(String, Scenario)>> {
        Ok(vec![(name.to_string(), parse_scenario(&scenario_text(network, levels, part1, uniform))?)])
    };
    let family = |network: &str| -> Result<Vec<(String, Scenario)>> {
        DIFFERENCE_BOUNDS
            .iter()
            .map(|d| {
                let reg = format!("kind = price_difference\nbound = {d}\n");
                Ok((format!("{name}_delta{d}"), parse_scenario(&scenario_text(network, levels, None, &reg))?))
            })
            .collect()
    };
    match figure {
        "fig52" => single(CORE_PERIPHERY, None),
        "figB1" => single(COMPLETE, Some("0 1 2")),
        "figB2" => family(CORE_PERIPHERY),
        "figB3" => single(BIPARTITE, None),
        "figB4" => family(BIPARTITE),
        _ => Err(Error::UnknownExperiment(name.into())),
    }
}

pub fn run_named_experiment(name: &str) -> Result<Vec<ExperimentRun>> {
    experiment_scenarios(name)?
        .into_iter()
        .map(|(label, scenario)| {
            let rows = run_sweep(&scenario)?;
            Ok(ExperimentRun { label, scenario, rows })
        })
        .collect()
}
