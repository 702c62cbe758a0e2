//! Seeded random instances.

use std::sync::Arc;

use netreg::{MarketPrimitivesF64, MatrixF64, NetworkF64, RegulationSetF64};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracle::{Constraint, Dense};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random connected graph: a random spanning tree plus each remaining pair
/// with probability `p_extra`. Weights are 1 or uniform in [0.5, 2].
pub fn connected_graph(rng: &mut ChaCha8Rng, n: usize, p_extra: f64, weighted: bool) -> Dense {
    let mut g = vec![vec![0.0; n]; n];
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let weight = |rng: &mut ChaCha8Rng| if weighted { rng.gen_range(0.5..2.0) } else { 1.0 };
    for k in 1..n {
        let (i, j) = (order[k], order[rng.gen_range(0..k)]);
        let w = weight(rng);
        g[i][j] = w;
        g[j][i] = w;
    }
    for i in 0..n {
        for j in i + 1..n {
            if g[i][j] == 0.0 && rng.gen_bool(p_extra) {
                let w = weight(rng);
                g[i][j] = w;
                g[j][i] = w;
            }
        }
    }
    g
}

/// A connected graph that is not regular (redrawn until degrees differ).
pub fn non_regular_graph(rng: &mut ChaCha8Rng, n: usize, weighted: bool) -> Dense {
    loop {
        let p_extra = rng.gen_range(0.05..0.5);
        let g = connected_graph(rng, n, p_extra, weighted);
        let deg: Vec<f64> = g.iter().map(|r| r.iter().sum()).collect();
        let (lo, hi) = deg.iter().fold((f64::MAX, f64::MIN), |(l, h), d| (l.min(*d), h.max(*d)));
        if hi - lo > 1e-6 {
            return g;
        }
    }
}

pub fn network(g: &Dense) -> NetworkF64 {
    NetworkF64::from_rows(g).expect("generated graph is valid")
}

/// `c ~ U(0, 3)`, `a = c + U(0.5, 5)`.
pub fn values(rng: &mut ChaCha8Rng, n: usize) -> (Vec<f64>, Vec<f64>) {
    let c: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..3.0)).collect();
    let a = c.iter().map(|ci| ci + rng.gen_range(0.5..5.0)).collect();
    (a, c)
}

/// Random primitives on a random connected graph of size `n`, at
/// `δ = fraction / λ₁`.
pub fn primitives(rng: &mut ChaCha8Rng, n: usize, fraction: f64) -> MarketPrimitivesF64 {
    let (p_extra, weighted) = (rng.gen_range(0.1..0.6), rng.gen_bool(0.3));
    let g = connected_graph(rng, n, p_extra, weighted);
    let net = Arc::new(network(&g));
    let delta = fraction / net.lambda1().max(1e-300);
    let (a, c) = values(rng, n);
    MarketPrimitivesF64::new(net, a, c, delta).expect("valid primitives")
}

/// `δ = (1 - 10⁻ᵏ)/λ₁`
pub fn near_bound(lambda1: f64, k: i32) -> f64 {
    (1.0 - 10f64.powi(-k)) / lambda1
}

/// A box around a random point near `p^ur`, always nonempty. Some bounds
/// are infinite.
pub fn random_box(rng: &mut ChaCha8Rng, prim: &MarketPrimitivesF64) -> RegulationSetF64 {
    let pur = prim.unrestricted_price();
    let spread = pur.iter().fold(1.0f64, |s, x| s.max(x.abs()));
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for &p in pur {
        let centre = p + rng.gen_range(-1.0..1.0) * spread;
        let half = rng.gen_range(0.05..0.5) * spread;
        lower.push(if rng.gen_bool(0.2) { f64::NEG_INFINITY } else { centre - half });
        upper.push(if rng.gen_bool(0.2) { f64::INFINITY } else { centre + half });
    }
    RegulationSetF64::Box { lower, upper }
}

/// A symmetric nonnegative bound matrix with zero diagonal; some pairs are
/// left unbounded.
pub fn random_difference(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> RegulationSetF64 {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = if rng.gen_bool(0.15) { f64::INFINITY } else { rng.gen_range(0.0..scale) };
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    RegulationSetF64::PriceDifference(MatrixF64::from_rows(&d).expect("square"))
}

/// A price-difference set that `p^ur` violates: every finite bound is below
/// `0.9·(max p^ur - min p^ur)` and the extreme pair is always bounded.
pub fn binding_difference(rng: &mut ChaCha8Rng, prim: &MarketPrimitivesF64) -> RegulationSetF64 {
    let pur = prim.unrestricted_price();
    let n = pur.len();
    let (imin, imax) = extreme_indices(pur);
    let spread = pur[imax] - pur[imin];
    let RegulationSetF64::PriceDifference(mut d) = random_difference(rng, n, 0.9 * spread) else { unreachable!() };
    if !d[(imin, imax)].is_finite() {
        let v = rng.gen_range(0.0..0.9 * spread);
        d[(imin, imax)] = v;
        d[(imax, imin)] = v;
    }
    RegulationSetF64::PriceDifference(d)
}

fn extreme_indices(v: &[f64]) -> (usize, usize) {
    let mut lo = 0;
    let mut hi = 0;
    for (i, x) in v.iter().enumerate() {
        if *x < v[lo] {
            lo = i;
        }
        if *x > v[hi] {
            hi = i;
        }
    }
    (lo, hi)
}

/// An average-price cap with a random weight vector not proportional to
/// anything special, binding at `p^ur`.
pub fn random_average_cap(rng: &mut ChaCha8Rng, prim: &MarketPrimitivesF64) -> RegulationSetF64 {
    let n = prim.n();
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let theta: Vec<f64> = raw.iter().map(|x| x / total).collect();
    let at_pur: f64 = theta.iter().zip(prim.unrestricted_price()).map(|(t, p)| t * p).sum();
    let cap = at_pur - rng.gen_range(0.05..0.5) * at_pur.abs().max(1.0);
    RegulationSetF64::AveragePrice { theta, cap }
}

/// The halfspace rows of a set, as oracle constraints.
pub fn constraints(k: &RegulationSetF64, n: usize) -> Vec<Constraint> {
    k.halfspaces(n)
        .into_iter()
        .map(|h| Constraint { normal: h.normal, offset: h.offset })
        .collect()
}
