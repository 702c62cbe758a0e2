#![allow(dead_code)]

use std::sync::Arc;

use netreg::{MarketPrimitivesF64, NetworkF64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const LAMBDA_CP: f64 = 2.732_050_807_568_877_2; // 1 + √3

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random spanning tree plus extra edges with probability `p_extra`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p_extra: f64, weighted: bool) -> Vec<Vec<f64>> {
    let mut g = vec![vec![0.0; n]; n];
    for i in 1..n {
        let j = rng.gen_range(0..i);
        let w = if weighted { rng.gen_range(0.5..2.0) } else { 1.0 };
        g[i][j] = w;
        g[j][i] = w;
    }
    for i in 0..n {
        for j in i + 1..n {
            if g[i][j] == 0.0 && rng.gen_bool(p_extra) {
                let w = if weighted { rng.gen_range(0.5..2.0) } else { 1.0 };
                g[i][j] = w;
                g[j][i] = w;
            }
        }
    }
    g
}

pub fn random_network(rng: &mut ChaCha8Rng, n: usize) -> NetworkF64 {
    let p = rng.gen_range(0.05..0.6);
    let weighted = rng.gen_bool(0.3);
    NetworkF64::from_rows(&random_graph(rng, n, p, weighted)).unwrap()
}

pub fn random_irregular(rng: &mut ChaCha8Rng, n: usize) -> NetworkF64 {
    loop {
        let net = random_network(rng, n);
        if !net.is_regular() {
            return net;
        }
    }
}

pub fn random_values(rng: &mut ChaCha8Rng, n: usize) -> (Vec<f64>, Vec<f64>) {
    let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..3.0)).collect();
    let a = c.iter().map(|ci| ci + rng.gen_range(0.5..5.0)).collect();
    (a, c)
}

pub fn random_market(rng: &mut ChaCha8Rng, n: usize, fraction: f64) -> MarketPrimitivesF64 {
    let net = Arc::new(random_network(rng, n));
    let (a, c) = random_values(rng, n);
    let delta = fraction / net.lambda1().max(1e-300);
    MarketPrimitivesF64::new(net, a, c, delta).unwrap()
}

pub fn near_bound(lambda1: f64, k: i32) -> f64 {
    (1.0 - 10f64.powi(-k)) / lambda1
}

/// Core-periphery(3,2) with core value `levels.0`, periphery value `levels.1`, `c = 0`.
pub fn core_periphery(levels: (f64, f64), delta: f64) -> MarketPrimitivesF64 {
    let net = Arc::new(netreg::netcore::gen_core_periphery::<f64>(3, 2).unwrap());
    let a: Vec<f64> = (0..9).map(|i| if i < 3 { levels.0 } else { levels.1 }).collect();
    MarketPrimitivesF64::new(net, a, vec![0.0; 9], delta).unwrap()
}

pub fn dyad(delta: f64, a: [f64; 2], c: [f64; 2]) -> MarketPrimitivesF64 {
    let net = Arc::new(NetworkF64::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap());
    MarketPrimitivesF64::new(net, a.to_vec(), c.to_vec(), delta).unwrap()
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

/// Ratio sequence is bounded and does not blow up: max/min within `factor`.
pub fn bounded_ratio(values: &[f64], factor: f64) -> bool {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    lo > 0.0 && hi / lo <= factor
}
