//! Welfare effects of banning price discrimination (forcing a uniform price).

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, norm_inf};
use crate::market::MarketPrimitives;
use crate::netcore::{corr, demean, Network};
use crate::scalar::Scalar;

/// `p⁰ = (1ᵀH p^ur / 1ᵀH1)·1`, evaluated in eigen-coordinates.
pub fn uniform_price<T: Scalar>(prim: &MarketPrimitives<T>) -> Vec<T> {
    let n = prim.n();
    let spectrum = prim.network().spectrum();
    let ones = vec![T::one(); n];
    let b = spectrum.to_spectral(&ones);
    let p = spectrum.to_spectral(prim.unrestricted_price());
    let delta = prim.delta();
    let (num, den) = spectrum.eigenvalues().iter().enumerate().fold(
        (T::zero(), T::zero()),
        |(num, den), (i, l)| {
            let d = T::one() - delta * *l;
            (num + b[i] * p[i] / d, den + b[i] * b[i] / d)
        },
    );
    vec![num / den; n]
}

/// The network statistic `ψ(G)` with its relation to centrality.
#[derive(Debug, Clone, PartialEq)]
pub struct PsiStatistic<T> {
    pub psi: Vec<T>,
    pub w1_demeaned: Vec<T>,
    /// `corr(ψ, w̃₁)`; `None` when either vector is below `1e-10`
    /// (regular graphs).
    pub corr_psi_w1: Option<T>,
}

/// `ψ = (Σ_{i≥2} ⟨wᵢ,1⟩²/(1 - λᵢ/λ₁))·w₁ - Σ_{i≥2} ⟨wᵢ,1⟩⟨w₁,1⟩/(1 - λᵢ/λ₁)·wᵢ`.
///
/// Sums run over every non-Perron eigenpair, so repeated eigenvalues are
/// handled through their eigenspace projections.
pub fn psi<T: Scalar>(net: &Network<T>) -> PsiStatistic<T> {
    let n = net.n();
    let spectrum = net.spectrum();
    let lambda = spectrum.eigenvalues();
    let b = spectrum.to_spectral(&vec![T::one(); n]);
    let mut coords = vec![T::zero(); n];
    for i in 1..n {
        let weight = b[i] / (T::one() - lambda[i] / lambda[0]);
        coords[0] = coords[0] + weight * b[i];
        coords[i] = -weight * b[0];
    }
    let psi = spectrum.from_spectral(&coords);
    let w1_demeaned = demean(&net.eigencentrality());
    let negligible = |v: &[T]| norm_inf(v) <= T::tol(1e-10);
    let corr_psi_w1 = if negligible(&psi) || negligible(&w1_demeaned) {
        None
    } else {
        corr(&psi, &w1_demeaned).ok()
    };
    PsiStatistic { psi, w1_demeaned, corr_psi_w1 }
}

/// `w₁(1ᵀH1) - H1⟨w₁, 1⟩` at a finite `δ`; tends to `ψ` as `δ ↑ 1/λ₁`.
pub fn psi_finite_delta<T: Scalar>(net: &Network<T>, delta: T) -> Result<Vec<T>> {
    let ones = vec![T::one(); net.n()];
    let h1 = net.h_apply(delta, &ones)?;
    let w1 = net.eigencentrality();
    let total = dot(&ones, &h1);
    let w1_sum = dot(&w1, &ones);
    Ok(w1.iter().zip(&h1).map(|(w, h)| *w * total - *h * w1_sum).collect())
}

fn require_nonconstant<T: Scalar>(a: &[T]) -> Result<()> {
    if norm(&demean(a)) <= T::tol(1e-12) * norm(a) {
        return Err(Error::AssumptionViolated("intrinsic values are constant across markets".into()));
    }
    Ok(())
}

fn require_zero_cost<T: Scalar>(prim: &MarketPrimitives<T>) -> Result<()> {
    if prim.c().iter().any(|c| *c != T::zero()) {
        return Err(Error::AssumptionViolated("marginal costs must be zero".into()));
    }
    Ok(())
}

fn require_irregular<T: Scalar>(net: &Network<T>) -> Result<()> {
    if net.is_regular() {
        return Err(Error::AssumptionViolated("network is regular".into()));
    }
    Ok(())
}

/// `𝒜(p⁰(δ))` together with the coefficient `κ` of its expansion
/// `𝒜(p⁰(δ)) = κ·(1/λ₁ - δ) + O((1/λ₁ - δ)²)`,
/// `κ = -λ₁⟨ψ, a⟩ / (⟨w₁, a⟩⟨w₁, 1⟩²)`.
pub fn a_stat_uniform<T: Scalar>(prim: &MarketPrimitives<T>) -> Result<(T, T)> {
    require_zero_cost(prim)?;
    require_nonconstant(prim.a())?;
    let net = prim.network();
    require_irregular(net)?;
    let exact = prim.a_statistic(&uniform_price(prim))?;
    let w1 = net.eigencentrality();
    let w1_sum: T = w1.iter().copied().sum();
    let psi = psi(net).psi;
    let coeff = -net.lambda1() * dot(&psi, prim.a()) / (dot(&w1, prim.a()) * w1_sum * w1_sum);
    Ok((exact, coeff))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WelfareDirection {
    ConsumersGain,
    ConsumersLose,
    Indeterminate,
}

impl WelfareDirection {
    fn from_sign<T: Scalar>(x: T, tol: T) -> Self {
        if x > tol {
            WelfareDirection::ConsumersGain
        } else if x < -tol {
            WelfareDirection::ConsumersLose
        } else {
            WelfareDirection::Indeterminate
        }
    }
}

/// Effect of a uniform-price mandate on consumers for `δ` near `1/λ₁`:
/// the sign of `corr(ψ(G), a)`.
pub fn welfare_direction_large_delta<T: Scalar>(net: &Network<T>, a: &[T]) -> Result<WelfareDirection> {
    net.check_dim(a.len())?;
    require_nonconstant(a)?;
    require_irregular(net)?;
    let c = corr(&psi(net).psi, a)?;
    Ok(WelfareDirection::from_sign(c, T::tol(1e-10)))
}

/// A two-class node partition, checked against the spectral conditions a
/// two-type network must satisfy. Automorphisms are not computed, so
/// `verified` means "consistent with two types", not a proof.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoTypePartition<T> {
    /// The class with the larger centrality.
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
    pub w1_levels: (T, T),
    pub psi_levels: (T, T),
    pub verified: bool,
}

fn mean_over<T: Scalar>(v: &[T], idx: &[usize]) -> T {
    idx.iter().map(|&i| v[i]).sum::<T>() / T::from_count(idx.len())
}

fn spread_over<T: Scalar>(v: &[T], idx: &[usize]) -> T {
    let (lo, hi) = idx
        .iter()
        .fold((T::infinity(), T::neg_infinity()), |(lo, hi), &i| (lo.min(v[i]), hi.max(v[i])));
    hi - lo
}

/// Checks that `w₁` and `ψ` are constant on each class and that
/// `w̃₁⁽¹⁾/w̃₁⁽²⁾ = ψ⁽¹⁾/ψ⁽²⁾ = -|V₂|/|V₁|`. Classes are relabeled so that
/// `part1` has the larger centrality.
pub fn verify_two_type<T: Scalar>(net: &Network<T>, part1: &[usize]) -> Result<TwoTypePartition<T>> {
    let n = net.n();
    let mut member = vec![false; n];
    for &i in part1 {
        if i >= n {
            return Err(Error::BadPartition(format!("node {i} out of range")));
        }
        if member[i] {
            return Err(Error::BadPartition(format!("node {i} listed twice")));
        }
        member[i] = true;
    }
    if part1.is_empty() || part1.len() == n {
        return Err(Error::BadPartition("both classes must be nonempty".into()));
    }
    let mut p1: Vec<usize> = part1.to_vec();
    p1.sort_unstable();
    let mut p2: Vec<usize> = (0..n).filter(|i| !member[*i]).collect();

    let w1 = net.eigencentrality();
    if mean_over(&w1, &p1) < mean_over(&w1, &p2) {
        std::mem::swap(&mut p1, &mut p2);
    }
    let stat = psi(net);
    let w1_levels = (mean_over(&w1, &p1), mean_over(&w1, &p2));
    let psi_levels = (mean_over(&stat.psi, &p1), mean_over(&stat.psi, &p2));

    let tol = T::tol(1e-8);
    let psi_scale = norm_inf(&stat.psi);
    let constant = spread_over(&w1, &p1) <= tol
        && spread_over(&w1, &p2) <= tol
        && spread_over(&stat.psi, &p1) <= tol * T::one().max(psi_scale)
        && spread_over(&stat.psi, &p2) <= tol * T::one().max(psi_scale);
    let target = -T::from_count(p2.len()) / T::from_count(p1.len());
    let ratio_ok = |x: T, y: T| y != T::zero() && ((x / y - target) / target).abs() <= T::tol(1e-6);
    let w1_mean = w1.iter().copied().sum::<T>() / T::from_count(n);
    let nondegenerate = psi_scale > T::tol(1e-10);
    let verified = constant
        && nondegenerate
        && ratio_ok(psi_levels.0, psi_levels.1)
        && ratio_ok(w1_levels.0 - w1_mean, w1_levels.1 - w1_mean);
    Ok(TwoTypePartition { part1: p1, part2: p2, w1_levels, psi_levels, verified })
}

/// On a two-type network, consumers gain from a uniform price at large `δ`
/// iff the high-centrality class has the higher average value.
pub fn two_type_welfare_direction<T: Scalar>(tt: &TwoTypePartition<T>, a: &[T]) -> Result<WelfareDirection> {
    if !tt.verified {
        return Err(Error::Unverified);
    }
    let n = tt.part1.len() + tt.part2.len();
    if a.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.len() });
    }
    let diff = mean_over(a, &tt.part1) - mean_over(a, &tt.part2);
    Ok(WelfareDirection::from_sign(diff, T::tol(1e-12) * T::one().max(norm_inf(a))))
}

/// `V(p⁰) - V(p^ur)` at `δ = 0`, where `p⁰` is the mean of `p^ur`.
pub fn small_delta_gain<T: Scalar>(prim: &MarketPrimitives<T>) -> Result<T> {
    require_zero_cost(prim)?;
    let base = prim.with_delta(T::zero())?;
    let p0 = uniform_price(&base);
    Ok(base.consumer_surplus(&p0)? - base.consumer_surplus(base.unrestricted_price())?)
}

/// On a regular graph: `R_V(p⁰) - 1` and the spectral expression
/// `Σ_{i≥2} (⟨wᵢ,a⟩² - ⟨wᵢ,(a-c)/2⟩²)/(1 - δλᵢ)²`, which has the same sign.
pub fn regular_graph_rv_shift<T: Scalar>(prim: &MarketPrimitives<T>) -> Result<(T, T)> {
    let net = prim.network();
    if !net.is_regular() {
        return Err(Error::NotRegular);
    }
    let n = prim.n();
    let p_ur = prim.unrestricted_price();
    let level = p_ur.iter().copied().sum::<T>() / T::from_count(n);
    let (r_v, _) = prim.ratios(&vec![level; n])?;
    let spectrum = net.spectrum();
    let a_hat = spectrum.to_spectral(prim.a());
    let h_hat = spectrum.to_spectral(prim.margin());
    let delta = prim.delta();
    let expr = (1..n)
        .map(|i| {
            let d = T::one() - delta * spectrum.eigenvalues()[i];
            (a_hat[i] * a_hat[i] - h_hat[i] * h_hat[i]) / (d * d)
        })
        .sum();
    Ok((r_v - T::one(), expr))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::netcore::{gen_complete, gen_complete_bipartite, gen_core_periphery};

    #[test]
    fn psi_vanishes_on_regular_graphs() {
        let stat = psi(&gen_complete::<f64>(9).unwrap());
        assert!(norm_inf(&stat.psi) < 1e-12);
        assert!(stat.corr_psi_w1.is_none());
    }

    #[test]
    fn core_periphery_two_types() {
        let net = gen_core_periphery::<f64>(3, 2).unwrap();
        let tt = verify_two_type(&net, &[3, 4, 5, 6, 7, 8]).unwrap();
        assert!(tt.verified);
        assert_eq!(tt.part1, vec![0, 1, 2]);
        assert!((tt.psi_levels.0 / tt.psi_levels.1 + 2.0).abs() < 1e-10);
        let a = |hi: f64, lo: f64| (0..9).map(|i| if i < 3 { hi } else { lo }).collect::<Vec<_>>();
        assert_eq!(two_type_welfare_direction(&tt, &a(20.0, 10.0)).unwrap(), WelfareDirection::ConsumersGain);
        assert_eq!(two_type_welfare_direction(&tt, &a(10.0, 20.0)).unwrap(), WelfareDirection::ConsumersLose);
        assert_eq!(two_type_welfare_direction(&tt, &a(15.0, 15.0)).unwrap(), WelfareDirection::Indeterminate);
    }

    #[test]
    fn bipartite_ratio() {
        let net = gen_complete_bipartite::<f64>(2, 10).unwrap();
        let tt = verify_two_type(&net, &[0, 1]).unwrap();
        assert!(tt.verified);
        assert!((tt.psi_levels.0 / tt.psi_levels.1 + 5.0).abs() < 1e-9);
    }

    #[test]
    fn bad_partitions() {
        let net = gen_complete::<f64>(4).unwrap();
        assert!(matches!(verify_two_type(&net, &[]), Err(Error::BadPartition(_))));
        assert!(matches!(verify_two_type(&net, &[0, 0]), Err(Error::BadPartition(_))));
        assert!(matches!(verify_two_type(&net, &[7]), Err(Error::BadPartition(_))));
        assert!(!verify_two_type(&net, &[0]).unwrap().verified);
    }

    #[test]
    fn small_delta_gain_dyad() {
        let net = Network::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let m = MarketPrimitives::new(Arc::new(net), vec![2.0, 4.0], vec![0.0, 0.0], 0.3).unwrap();
        assert!((small_delta_gain::<f64>(&m).unwrap() - 0.75).abs() < 1e-14);
        let m = MarketPrimitives::new(m.network_arc().clone(), vec![2.0, 4.0], vec![1.0, 0.0], 0.0).unwrap();
        assert!(matches!(small_delta_gain(&m), Err(Error::AssumptionViolated(_))));
    }

    #[test]
    fn uniform_price_without_spillovers_is_mean() {
        let net = Arc::new(gen_core_periphery::<f64>(3, 2).unwrap());
        let a: Vec<f64> = (0..9).map(|i| if i < 3 { 20.0 } else { 10.0 }).collect();
        let m = MarketPrimitives::new(net, a, vec![0.0; 9], 0.0).unwrap();
        let p0 = uniform_price(&m);
        assert!(p0.iter().all(|p| (*p - 40.0 / 6.0).abs() < 1e-12));
    }
}
