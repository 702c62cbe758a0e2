use netreg::Error;
use netreg_cli::{
    emit_csv, experiment_scenarios, parse_csv, parse_scenario, run_named_experiment, run_sweep, SweepRow,
    CSV_HEADER, EXPERIMENTS,
};

fn fig(name: &str) -> Vec<SweepRow> {
    let runs = run_named_experiment(name).unwrap();
    assert_eq!(runs.len(), 1);
    runs.into_iter().next().unwrap().rows
}

#[test]
fn high_core_values_recover_efficiency_near_the_bound() {
    let rows = fig("fig52a");
    assert!(rows[0].r_v_star > 1.0, "{:?}", rows[0]);
    let last = rows.last().unwrap();
    assert!((last.r_v_star - 1.0).abs() < 0.02, "{last:?}");
}

#[test]
fn high_periphery_values_lose_surplus_near_the_bound() {
    let rows = fig("fig52b");
    assert!(rows.last().unwrap().r_v_star < 1.0);
}

#[test]
fn unrestricted_sweep_is_trivial() {
    let s = parse_scenario("[network]\nkind = core_periphery\ncore = 3\nperiphery = 2\n[values]\nlevels = 20 10\n")
        .unwrap();
    for r in run_sweep(&s).unwrap() {
        assert_eq!((r.r_v_star, r.r_pi_star, r.r_v_plus), (1.0, 1.0, 1.0));
        assert!(r.a_stat.abs() < 1e-12 && r.gap.abs() < 1e-12, "{r:?}");
    }
}

#[test]
fn frontier_dominates_equilibrium_in_every_experiment() {
    for name in EXPERIMENTS {
        for run in run_named_experiment(name).unwrap() {
            for r in &run.rows {
                assert!(r.r_v_plus >= r.r_v_star - 1e-9, "{}: {r:?}", run.label);
                assert!(r.r_pi_star <= 1.0 + 1e-12);
            }
        }
    }
}

#[test]
fn loose_difference_bound_matches_unrestricted() {
    for name in ["figB2a", "figB2b", "figB4a", "figB4b"] {
        let runs = run_named_experiment(name).unwrap();
        let labels: Vec<&str> = runs.iter().map(|r| r.label.as_str()).collect();
        assert_eq!(labels, [format!("{name}_delta0"), format!("{name}_delta2.5"), format!("{name}_delta5")]);
        // Level gap 10 means p^ur differs by 5 across classes.
        for r in &runs[2].rows {
            assert!((r.r_v_star - 1.0).abs() < 1e-9 && (r.r_pi_star - 1.0).abs() < 1e-9, "{r:?}");
        }
        let mid = runs[0].rows.len() / 2;
        let dev = |k: usize| (runs[k].rows[mid].r_v_star - 1.0).abs();
        assert!(dev(2) < dev(0), "{name}");
    }
}

#[test]
fn unknown_experiments_are_rejected() {
    for name in ["fig99a", "fig52c", "", "a"] {
        assert!(matches!(experiment_scenarios(name), Err(Error::UnknownExperiment(_))), "{name}");
    }
}

#[test]
fn sweeps_are_deterministic() {
    let (_, s) = experiment_scenarios("figB3a").unwrap().remove(0);
    let csv = |rows: &[SweepRow]| {
        let mut buf = Vec::new();
        emit_csv(rows, &mut buf).unwrap();
        buf
    };
    assert_eq!(csv(&run_sweep(&s).unwrap()), csv(&run_sweep(&s).unwrap()));
}

#[test]
fn csv_round_trip_is_exact() {
    let rows = fig("figB1b");
    let mut buf = Vec::new();
    emit_csv(&rows, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert_eq!(text.lines().next(), Some(CSV_HEADER));
    assert_eq!(text.lines().count(), rows.len() + 1);
    let back = parse_csv(&text).unwrap();
    assert_eq!(back.len(), rows.len());
    for (a, b) in back.iter().zip(&rows) {
        let bits = |r: &SweepRow| [r.delta, r.r_v_star, r.r_pi_star, r.r_v_plus, r.a_stat, r.gap].map(f64::to_bits);
        assert_eq!(bits(a), bits(b));
    }
}

#[test]
fn csv_errors() {
    assert!(matches!(emit_csv(&[], &mut Vec::new()), Err(Error::EmptyRows)));
    assert!(parse_csv("delta,x\n1,2\n").is_err());
    assert!(parse_csv(&format!("{CSV_HEADER}\n1,2,3\n")).is_err());
    assert!(parse_csv(&format!("{CSV_HEADER}\n1,2,3,4,5,z\n")).is_err());
}
