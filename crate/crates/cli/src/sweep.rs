use std::io::Write;

use rayon::prelude::*;

use netreg::regulation::{equilibrium_outcome, frontier_gap};
use netreg::{Error, Result};

use crate::scenario::Scenario;

pub const CSV_HEADER: &str = "delta,r_v_star,r_pi_star,r_v_plus,a_stat,gap";

/// Regulated equilibrium and frontier values at one spillover intensity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub delta: f64,
    pub r_v_star: f64,
    pub r_pi_star: f64,
    pub r_v_plus: f64,
    pub a_stat: f64,
    pub gap: f64,
}

pub fn sweep_row(scenario: &Scenario, delta: f64) -> Result<SweepRow> {
    let prim = scenario.primitives(delta)?;
    let outcome = equilibrium_outcome(&prim, scenario.regulation_set())?;
    let (r_v_plus, gap) = frontier_gap(&prim, &outcome)?;
    Ok(SweepRow {
        delta,
        r_v_star: outcome.r_v,
        r_pi_star: outcome.r_pi,
        r_v_plus,
        a_stat: outcome.a_stat,
        gap,
    })
}

/// One row per grid point, in ascending `δ`. The first failing point aborts
/// the sweep and is named in the error.
pub fn run_sweep(scenario: &Scenario) -> Result<Vec<SweepRow>> {
    let deltas = scenario.deltas();
    let work = || {
        deltas
            .par_iter()
            .map(|&delta| {
                sweep_row(scenario, delta).map_err(|e| Error::AtDelta { delta, source: Box::new(e) })
            })
            .collect::<Result<Vec<_>>>()
    };
    match max_threads() {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(work),
            Err(_) => work(),
        },
        None => work(),
    }
}

/// Thread cap from `NETREG_MAX_THREADS`, if set to a positive integer.
pub fn max_threads() -> Option<usize> {
    std::env::var("NETREG_MAX_THREADS").ok()?.trim().parse().ok().filter(|k: &usize| *k > 0)
}

fn format_row(r: &SweepRow) -> String {
    [r.delta, r.r_v_star, r.r_pi_star, r.r_v_plus, r.a_stat, r.gap]
        .iter()
        .map(|x| format!("{x:.16e}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Writes the header and one line per row, 17 significant digits.
pub fn emit_csv(rows: &[SweepRow], out: &mut impl Write) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::EmptyRows);
    }
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", format_row(r))?;
    }
    Ok(())
}

/// Reads rows written by [`emit_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim() == CSV_HEADER => {}
        _ => return Err(Error::Parse { line: 1, msg: "missing CSV header".into() }),
    }
    lines
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let v = l
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() })?;
            match v.as_slice() {
                &[delta, r_v_star, r_pi_star, r_v_plus, a_stat, gap] => {
                    Ok(SweepRow { delta, r_v_star, r_pi_star, r_v_plus, a_stat, gap })
                }
                _ => Err(Error::Parse { line: i + 1, msg: format!("expected 6 fields, found {}", v.len()) }),
            }
        })
        .collect()
}
