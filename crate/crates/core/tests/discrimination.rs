mod common;

use std::sync::Arc;

use approx::assert_abs_diff_eq;
use netreg::discrimination::*;
use netreg::linalg::{norm, norm_inf};
use netreg::netcore::{corr, demean, gen_complete, gen_complete_bipartite, gen_core_periphery};
use netreg::regulation::project;
use netreg::{Error, MarketPrimitivesF64, NetworkF64, RegulationSetF64, WelfareDirection};
use rand::Rng;

use common::*;

fn market(net: NetworkF64, a: Vec<f64>, delta: f64) -> MarketPrimitivesF64 {
    let n = net.n();
    MarketPrimitivesF64::new(Arc::new(net), a, vec![0.0; n], delta).unwrap()
}

#[test]
fn uniform_price_examples() {
    let flat = core_periphery((20.0, 10.0), 0.0);
    let mean = flat.a().iter().sum::<f64>() / 9.0;
    for p in uniform_price(&flat) {
        assert_abs_diff_eq!(p, mean / 2.0, epsilon = 1e-12);
    }
    let level = market(gen_core_periphery(3, 2).unwrap(), vec![7.0; 9], 0.3);
    assert!(max_diff(&uniform_price(&level), level.unrestricted_price()) <= 1e-12);

    let mut rng = rng(51);
    for _ in 0..20 {
        let n = rng.gen_range(2..=16);
        let f = rng.gen_range(0.0..0.999);
        let prim = random_market(&mut rng, n, f);
        let spectral = uniform_price(&prim);
        let direct = project(&prim, &RegulationSetF64::Uniform).unwrap();
        assert!(max_diff(&spectral, &direct) <= 1e-10 * (1.0 + norm_inf(&direct)));
    }
}

#[test]
fn psi_examples() {
    let k9 = psi(&gen_complete::<f64>(9).unwrap());
    assert!(norm_inf(&k9.psi) <= 1e-10);
    assert_eq!(k9.corr_psi_w1, None);

    let cp = psi(&gen_core_periphery::<f64>(3, 2).unwrap());
    assert!(cp.psi.iter().sum::<f64>().abs() <= 1e-10 * norm(&cp.psi));
    assert_abs_diff_eq!(cp.psi[0] / cp.psi[3], -2.0, epsilon = 1e-10);
    assert!(cp.corr_psi_w1.unwrap() > 0.0);
}

#[test]
fn spectral_and_finite_delta_forms_agree() {
    let mut rng = rng(52);
    for _ in 0..50 {
        let n = rng.gen_range(3..=32);
        let net = random_irregular(&mut rng, n);
        let spectral = psi(&net).psi;
        let finite = psi_finite_delta(&net, near_bound(net.lambda1(), 6)).unwrap();
        let diff: Vec<f64> = spectral.iter().zip(&finite).map(|(a, b)| a - b).collect();
        assert!(norm(&diff) <= 1e-4 * norm(&spectral), "{} vs {}", norm(&diff), norm(&spectral));
    }
}

fn permute(g: &[Vec<f64>], perm: &[usize]) -> Vec<Vec<f64>> {
    let n = perm.len();
    (0..n).map(|i| (0..n).map(|j| g[perm[i]][perm[j]]).collect()).collect()
}

fn check_automorphism(net: &NetworkF64, perm: &[usize]) {
    let g = net.adjacency().rows();
    assert_eq!(permute(&g, perm), g, "not an automorphism: {perm:?}");
    let stat = psi(net);
    let w1 = net.eigencentrality();
    for i in 0..perm.len() {
        assert!((stat.psi[perm[i]] - stat.psi[i]).abs() <= 1e-10);
        assert!((w1[perm[i]] - w1[i]).abs() <= 1e-10);
    }
}

#[test]
fn automorphisms_fix_psi_and_centrality() {
    let cp = gen_core_periphery::<f64>(3, 2).unwrap();
    // Swap cores 0 and 1 together with their leaves.
    check_automorphism(&cp, &[1, 0, 2, 5, 6, 3, 4, 7, 8]);
    // Swap the two leaves of core 2.
    check_automorphism(&cp, &[0, 1, 2, 3, 4, 5, 6, 8, 7]);
    // Rotate the cores.
    check_automorphism(&cp, &[1, 2, 0, 5, 6, 7, 8, 3, 4]);

    let kb = gen_complete_bipartite::<f64>(2, 10).unwrap();
    let mut perm: Vec<usize> = (0..12).collect();
    perm.swap(0, 1);
    check_automorphism(&kb, &perm);
    let mut perm: Vec<usize> = (0..12).collect();
    perm[2..].rotate_left(3);
    check_automorphism(&kb, &perm);
}

#[test]
fn psi_sides_with_centrality_aligned_values() {
    let mut rng = rng(53);
    for _ in 0..100 {
        let n = rng.gen_range(3..=24);
        let net = random_irregular(&mut rng, n);
        let w = demean(&net.eigencentrality());
        let unit: Vec<f64> = w.iter().map(|x| x / norm(&w)).collect();
        let psi = psi(&net).psi;
        for sign in [1.0, -1.0] {
            let noise = demean(&(0..n).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<_>>());
            let a: Vec<f64> = (0..n).map(|i| 10.0 + sign * unit[i] + 0.02 * noise[i] / norm(&noise)).collect();
            let aligned = corr(&demean(&a), &w).unwrap();
            assert!(aligned * sign > 0.999);
            assert!(corr(&psi, &a).unwrap() * sign > 0.0);
        }
    }
}

#[test]
fn predicted_direction_matches_measured_surplus() {
    let mut rng = rng(54);
    let mut checked = 0;
    while checked < 60 {
        let n = rng.gen_range(3..=16);
        let net = random_irregular(&mut rng, n);
        let stat = psi(&net);
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..20.0)).collect();
        // Keep instances where the leading term clearly dominates.
        if corr(&stat.psi, &a).unwrap().abs() < 0.2 {
            continue;
        }
        let direction = welfare_direction_large_delta(&net, &a).unwrap();
        let lambda1 = net.lambda1();
        let prim = market(net, a, near_bound(lambda1, 4));
        let p0 = uniform_price(&prim);
        let (r_v, r_pi) = prim.ratios(&p0).unwrap();
        match direction {
            WelfareDirection::ConsumersGain => assert!(r_v > 1.0),
            WelfareDirection::ConsumersLose => assert!(r_v < 1.0),
            WelfareDirection::Indeterminate => unreachable!(),
        }
        assert!(r_pi < 1.0);
        checked += 1;
    }
}

#[test]
fn first_order_welfare_approximation_is_second_order_accurate() {
    let mut rng = rng(55);
    for _ in 0..10 {
        let n = rng.gen_range(3..=12);
        let net = Arc::new(random_irregular(&mut rng, n));
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..20.0)).collect();
        let lambda1 = net.lambda1();
        let ratios: Vec<f64> = (2..=5)
            .map(|k| {
                let prim = MarketPrimitivesF64::new(net.clone(), a.clone(), vec![0.0; n], near_bound(lambda1, k))
                    .unwrap();
                let p0 = uniform_price(&prim);
                let (r_v, _) = prim.ratios(&p0).unwrap();
                let a_stat = prim.a_statistic(&p0).unwrap();
                let t = 1.0 / lambda1 - prim.delta();
                (r_v - (1.0 - a_stat).powi(2)).abs() / (t * t)
            })
            .collect();
        assert!(ratios.iter().all(|r| r.is_finite()));
        let hi = ratios.iter().cloned().fold(0.0, f64::max);
        assert!(hi <= 10.0 * ratios[0].max(1e-12) + 1.0, "{ratios:?}");
    }
}

#[test]
fn uniform_statistic_expansion() {
    let mut rng = rng(56);
    for _ in 0..10 {
        let n = rng.gen_range(3..=12);
        let net = Arc::new(random_irregular(&mut rng, n));
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..20.0)).collect();
        let lambda1 = net.lambda1();
        let mut ratios = Vec::new();
        let mut exacts = Vec::new();
        for k in 2..=5 {
            let prim =
                MarketPrimitivesF64::new(net.clone(), a.clone(), vec![0.0; n], near_bound(lambda1, k)).unwrap();
            let (exact, coeff) = a_stat_uniform(&prim).unwrap();
            let t = 1.0 / lambda1 - prim.delta();
            ratios.push((exact - coeff * t).abs() / (t * t));
            exacts.push(exact.abs());
        }
        assert!(exacts.windows(2).all(|w| w[1] < w[0]));
        let hi = ratios.iter().cloned().fold(0.0, f64::max);
        assert!(hi <= 10.0 * ratios[0] + 1e-6, "{ratios:?}");
    }
}

#[test]
fn uniform_statistic_preconditions() {
    let cp = gen_core_periphery::<f64>(3, 2).unwrap();
    let constant = market(cp.clone(), vec![5.0; 9], 0.1);
    assert!(matches!(a_stat_uniform(&constant), Err(Error::AssumptionViolated(_))));
    let costly =
        MarketPrimitivesF64::new(Arc::new(cp), vec![5.0; 9], (0..9).map(|i| i as f64 * 0.1).collect(), 0.1).unwrap();
    assert!(matches!(a_stat_uniform(&costly), Err(Error::AssumptionViolated(_))));
    let regular = market(gen_complete(9).unwrap(), (0..9).map(|i| 1.0 + i as f64).collect(), 0.1);
    assert!(matches!(a_stat_uniform(&regular), Err(Error::AssumptionViolated(_))));
}

#[test]
fn welfare_direction_examples() {
    let net = gen_core_periphery::<f64>(3, 2).unwrap();
    let w1 = net.eigencentrality();
    let along: Vec<f64> = w1.iter().map(|x| 3.0 * x).collect();
    assert_eq!(welfare_direction_large_delta(&net, &along).unwrap(), WelfareDirection::ConsumersGain);
    let w = demean(&w1);
    let against: Vec<f64> = w.iter().map(|x| 5.0 - x).collect();
    assert_eq!(welfare_direction_large_delta(&net, &against).unwrap(), WelfareDirection::ConsumersLose);

    let mut rng = rng(57);
    for _ in 0..20 {
        let a: Vec<f64> = (0..9).map(|_| rng.gen_range(1.0..10.0)).collect();
        let mirror: Vec<f64> = a.iter().map(|x| 11.0 - x).collect();
        let d1 = welfare_direction_large_delta(&net, &a).unwrap();
        let d2 = welfare_direction_large_delta(&net, &mirror).unwrap();
        assert_ne!(d1, WelfareDirection::Indeterminate);
        assert_ne!(d1, d2);
        assert_ne!(d2, WelfareDirection::Indeterminate);
    }
    assert!(matches!(welfare_direction_large_delta(&net, &[2.0; 9]), Err(Error::AssumptionViolated(_))));
}

#[test]
fn two_type_examples() {
    let cp = gen_core_periphery::<f64>(3, 2).unwrap();
    let tt = verify_two_type(&cp, &[0, 1, 2]).unwrap();
    assert!(tt.verified);
    assert_abs_diff_eq!(tt.psi_levels.0 / tt.psi_levels.1, -2.0, epsilon = 1e-8);
    let flipped = verify_two_type(&cp, &[3, 4, 5, 6, 7, 8]).unwrap();
    assert_eq!(flipped.part1, vec![0, 1, 2]);

    let kb = gen_complete_bipartite::<f64>(2, 10).unwrap();
    let tt = verify_two_type(&kb, &[0, 1]).unwrap();
    assert!(tt.verified);
    assert_abs_diff_eq!(tt.psi_levels.0 / tt.psi_levels.1, -5.0, epsilon = 1e-8);

    let k9 = gen_complete::<f64>(9).unwrap();
    assert!(!verify_two_type(&k9, &[0, 1, 2]).unwrap().verified);
    assert!(!verify_two_type(&cp, &[0, 3]).unwrap().verified);

    assert!(matches!(verify_two_type(&cp, &[]), Err(Error::BadPartition(_))));
    assert!(matches!(verify_two_type(&cp, &[0, 0]), Err(Error::BadPartition(_))));
    assert!(matches!(verify_two_type(&cp, &[9]), Err(Error::BadPartition(_))));
    assert!(matches!(verify_two_type(&cp, &(0..9).collect::<Vec<_>>()), Err(Error::BadPartition(_))));
}

#[test]
fn two_type_direction_examples() {
    let cp = gen_core_periphery::<f64>(3, 2).unwrap();
    let tt = verify_two_type(&cp, &[0, 1, 2]).unwrap();
    let levels = |hi: f64, lo: f64| (0..9).map(|i| if i < 3 { hi } else { lo }).collect::<Vec<_>>();
    assert_eq!(two_type_welfare_direction(&tt, &levels(20.0, 10.0)).unwrap(), WelfareDirection::ConsumersGain);
    assert_eq!(two_type_welfare_direction(&tt, &levels(10.0, 20.0)).unwrap(), WelfareDirection::ConsumersLose);
    assert_eq!(two_type_welfare_direction(&tt, &levels(15.0, 15.0)).unwrap(), WelfareDirection::Indeterminate);
    let bad = verify_two_type(&gen_complete::<f64>(9).unwrap(), &[0, 1, 2]).unwrap();
    assert!(matches!(two_type_welfare_direction(&bad, &levels(20.0, 10.0)), Err(Error::Unverified)));

    // The two-type rule agrees with the spectral rule.
    let mut rng = rng(58);
    for _ in 0..20 {
        let a: Vec<f64> = (0..9).map(|_| rng.gen_range(1.0..10.0)).collect();
        assert_eq!(
            two_type_welfare_direction(&tt, &a).unwrap(),
            welfare_direction_large_delta(&cp, &a).unwrap()
        );
    }
}

#[test]
fn small_delta_gain_examples() {
    let cp = gen_core_periphery::<f64>(3, 2).unwrap();
    assert_eq!(small_delta_gain(&market(cp.clone(), vec![4.0; 9], 0.2)).unwrap(), 0.0);
    assert!(small_delta_gain(&core_periphery((20.0, 10.0), 0.3)).unwrap() > 0.0);

    // a = (2, 4): p^ur = (1, 2), p⁰ = (1.5, 1.5), so
    // V(p⁰) - V(p^ur) = ½(0.25 + 6.25) - ½(1 + 4) = 0.75.
    let pair = market(NetworkF64::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(), vec![2.0, 4.0], 0.4);
    assert_abs_diff_eq!(small_delta_gain(&pair).unwrap(), 0.75, epsilon = 1e-14);

    let costly = dyad(0.0, [2.0, 4.0], [0.5, 0.5]);
    assert!(matches!(small_delta_gain(&costly), Err(Error::AssumptionViolated(_))));
}

#[test]
fn small_delta_gain_is_three_eighths_of_scaled_variance() {
    let mut rng = rng(59);
    for _ in 0..30 {
        let n = rng.gen_range(2..=16);
        let net = NetworkF64::from_rows(&random_graph(&mut rng, n, 0.3, false)).unwrap();
        let a: Vec<f64> = (0..n).map(|_| rng.gen_range(1.0..30.0)).collect();
        let mean = a.iter().sum::<f64>() / n as f64;
        let var = a.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        let gain = small_delta_gain(&market(net, a, 0.0)).unwrap();
        assert!((gain - 0.375 * (n as f64 - 1.0) * var).abs() <= 1e-10 * gain);
    }
}

#[test]
fn regular_graph_shift_examples() {
    let k9 = gen_complete::<f64>(9).unwrap();
    let lambda1 = k9.lambda1();
    let a: Vec<f64> = (0..9).map(|i| if i < 3 { 20.0 } else { 10.0 }).collect();
    let (shift, expr) = regular_graph_rv_shift(&market(k9.clone(), a.clone(), 0.05)).unwrap();
    assert!(shift > 0.0 && expr > 0.0);

    let c: Vec<f64> = a.iter().map(|x| x - 0.01).collect();
    let near_a = MarketPrimitivesF64::new(Arc::new(k9.clone()), a.clone(), c, 0.05).unwrap();
    let (shift, expr) = regular_graph_rv_shift(&near_a).unwrap();
    assert!(shift > 0.0 && expr > 0.0);

    let scaled: Vec<f64> = (2..=5)
        .map(|k| {
            let delta = near_bound(lambda1, k);
            let (shift, _) = regular_graph_rv_shift(&market(k9.clone(), a.clone(), delta)).unwrap();
            shift / (1.0 / lambda1 - delta).powi(2)
        })
        .collect();
    assert!(bounded_ratio(&scaled, 1.5), "{scaled:?}");

    let cp = core_periphery((20.0, 10.0), 0.1);
    assert!(matches!(regular_graph_rv_shift(&cp), Err(Error::NotRegular)));

    let mut rng = rng(60);
    for _ in 0..20 {
        let a: Vec<f64> = (0..9).map(|_| rng.gen_range(1.0..10.0)).collect();
        let c: Vec<f64> = a.iter().map(|x| rng.gen_range(0.0..*x)).collect();
        let prim = MarketPrimitivesF64::new(Arc::new(k9.clone()), a, c, rng.gen_range(0.0..0.12)).unwrap();
        let (shift, expr) = regular_graph_rv_shift(&prim).unwrap();
        assert_eq!(shift > 0.0, expr > 0.0);
    }
}
