//! The Pareto-optimal price family `𝕡(η)` and the frontier of
//! `(R_V, R_Π)` pairs.
//!
//! In eigen-coordinates `𝕡(η)` moves each component of `p^ur` by
//! `-ρᵢ(η)·ĥᵢ` with `ρᵢ(η) = η/(2 - 2δλᵢ - η)` and `ĥᵢ = ⟨wᵢ, (a - c)/2⟩`.
//! The multiplier of the regulator's profit constraint enters only through
//! `η = 2γ/μ`. The negative branch is parametrized by `u = -η/(2 - η) ∈ [0, 1]`,
//! for which `ρᵢ = -u/(1 - δλᵢ(1 - u))`; `u = 1` is the limit `η → -∞`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::market::MarketPrimitives;
use crate::scalar::Scalar;

const MAX_BISECTIONS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `η ≥ 0`: maximizes consumer surplus at the profit floor.
    Plus,
    /// `η ≤ 0`: minimizes it.
    Minus,
}

/// One sample of the frontier at profit ratio `tau`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParetoPoint<T> {
    pub tau: T,
    pub eta_plus: T,
    pub eta_minus_u: T,
    pub price_plus: Vec<T>,
    pub price_minus: Vec<T>,
    pub r_v_plus: T,
    pub r_v_minus: T,
}

impl<T: Scalar> ParetoPoint<T> {
    /// `η⁻ = -2u/(1 - u)`, `-∞` at `u = 1`.
    pub fn eta_minus(&self) -> T {
        u_to_eta(self.eta_minus_u)
    }
}

pub fn u_to_eta<T: Scalar>(u: T) -> T {
    if u >= T::one() {
        T::neg_infinity()
    } else {
        -(u + u) / (T::one() - u)
    }
}

pub(crate) fn check_tau<T: Scalar>(tau: T) -> Result<()> {
    if !(tau >= T::zero() && tau <= T::one()) {
        return Err(Error::TauOutOfRange(tau.to_f64_lossy()));
    }
    Ok(())
}

/// Spectral data of one market needed by the family.
struct Family<'a, T> {
    prim: &'a MarketPrimitives<T>,
    lambda: &'a [T],
    h: Vec<T>,
    /// `ĥᵢ² / (1 - δλᵢ)`
    k: Vec<T>,
    k_sum: T,
}

impl<'a, T: Scalar> Family<'a, T> {
    fn new(prim: &'a MarketPrimitives<T>) -> Self {
        let spectrum = prim.network().spectrum();
        let lambda = spectrum.eigenvalues();
        let h = spectrum.to_spectral(prim.margin());
        let delta = prim.delta();
        let k: Vec<T> = h
            .iter()
            .zip(lambda)
            .map(|(hi, li)| *hi * *hi / (T::one() - delta * *li))
            .collect();
        let k_sum = k.iter().copied().sum();
        Self { prim, lambda, h, k, k_sum }
    }

    fn eta_max(&self) -> T {
        T::lit(2.0) * (T::one() - self.prim.delta() * self.lambda[0])
    }

    fn gap(&self, i: usize, eta: T) -> T {
        T::lit(2.0) - T::lit(2.0) * self.prim.delta() * self.lambda[i] - eta
    }

    fn rho_eta(&self, eta: T) -> Vec<T> {
        (0..self.h.len()).map(|i| eta / self.gap(i, eta)).collect()
    }

    fn rho_u(&self, u: T) -> Vec<T> {
        let delta = self.prim.delta();
        self.lambda.iter().map(|l| -u / (T::one() - delta * *l * (T::one() - u))).collect()
    }

    fn r_pi(&self, rho: &[T]) -> T {
        let loss: T = rho.iter().zip(&self.k).map(|(r, k)| *r * *r * *k).sum();
        T::one() - loss / self.k_sum
    }

    fn price(&self, rho: &[T]) -> Vec<T> {
        let shift: Vec<T> = rho.iter().zip(&self.h).map(|(r, h)| *r * *h).collect();
        let shift = self.prim.network().spectrum().from_spectral(&shift);
        self.prim.unrestricted_price().iter().zip(shift).map(|(p, s)| *p - s).collect()
    }

    /// `d R_Π / dη` on the positive branch.
    fn r_pi_slope_eta(&self, eta: T) -> T {
        let s: T = (0..self.h.len())
            .map(|i| {
                let g = self.gap(i, eta);
                let rho = eta / g;
                let drho = (g + eta) / (g * g);
                rho * drho * self.k[i]
            })
            .sum();
        -T::lit(2.0) * s / self.k_sum
    }

    /// `d R_Π / du` on the negative branch.
    fn r_pi_slope_u(&self, u: T) -> T {
        let delta = self.prim.delta();
        let s: T = (0..self.h.len())
            .map(|i| {
                let dl = delta * self.lambda[i];
                let den = T::one() - dl * (T::one() - u);
                let rho = -u / den;
                let drho = -(T::one() - dl) / (den * den);
                rho * drho * self.k[i]
            })
            .sum();
        -T::lit(2.0) * s / self.k_sum
    }

    /// Root of the decreasing map `x ↦ R_Π(x) - tau` on `[lo, hi]`.
    fn solve(
        &self,
        tau: T,
        mut lo: T,
        mut hi: T,
        r_pi: impl Fn(T) -> T,
        slope: impl Fn(T) -> T,
    ) -> Result<T> {
        let tol = T::tol(1e-12);
        let mut best = lo;
        let mut best_res = r_pi(lo) - tau;
        for _ in 0..MAX_BISECTIONS {
            let mid = (lo + hi) * T::lit(0.5);
            if mid <= lo || mid >= hi {
                break;
            }
            let res = r_pi(mid) - tau;
            if res.abs() < best_res.abs() {
                best = mid;
                best_res = res;
            }
            if res.abs() <= tol {
                break;
            }
            if res > T::zero() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let d = slope(best);
        if d < T::zero() {
            let x = best - best_res / d;
            if x >= lo && x <= hi {
                let res = r_pi(x) - tau;
                if res.abs() < best_res.abs() {
                    best = x;
                    best_res = res;
                }
            }
        }
        if !best_res.is_finite() || best_res.abs() > T::tol(1e-9) {
            return Err(Error::NoConvergence("profit-ratio root solve"));
        }
        Ok(best)
    }

    fn solve_plus(&self, tau: T) -> Result<T> {
        if tau >= T::one() {
            return Ok(T::zero());
        }
        self.solve(
            tau,
            T::zero(),
            self.eta_max(),
            |eta| self.r_pi(&self.rho_eta(eta)),
            |eta| self.r_pi_slope_eta(eta),
        )
    }

    fn solve_minus(&self, tau: T) -> Result<T> {
        if tau >= T::one() {
            return Ok(T::zero());
        }
        if tau <= T::zero() {
            return Ok(T::one());
        }
        self.solve(
            tau,
            T::zero(),
            T::one(),
            |u| self.r_pi(&self.rho_u(u)),
            |u| self.r_pi_slope_u(u),
        )
    }
}

/// `𝕡(η)`. Positive `η` must stay below `2 - 2δλ₁`; any `η ≤ 0` is accepted,
/// including `-∞` (which gives `a`).
pub fn pareto_price<T: Scalar>(prim: &MarketPrimitives<T>, eta: T) -> Result<Vec<T>> {
    let fam = Family::new(prim);
    let bound = fam.eta_max();
    if eta.is_nan() || eta >= bound {
        return Err(Error::EtaOutOfRange { eta: eta.to_f64_lossy(), bound: bound.to_f64_lossy() });
    }
    if eta > T::zero() {
        return Ok(fam.price(&fam.rho_eta(eta)));
    }
    Ok(fam.price(&fam.rho_u(eta_to_u(eta))))
}

fn eta_to_u<T: Scalar>(eta: T) -> T {
    if eta == T::neg_infinity() {
        T::one()
    } else {
        -eta / (T::lit(2.0) - eta)
    }
}

/// Negative-branch price `p^ur + u·[I - δ(1 - u)G]⁻¹(a - c)/2`, `u ∈ [0, 1]`.
pub fn pareto_price_u<T: Scalar>(prim: &MarketPrimitives<T>, u: T) -> Result<Vec<T>> {
    if !(u >= T::zero() && u <= T::one()) {
        return Err(Error::EtaOutOfRange { eta: u_to_eta(u).to_f64_lossy(), bound: 0.0 });
    }
    let fam = Family::new(prim);
    Ok(fam.price(&fam.rho_u(u)))
}

/// Weights `ρᵢ(η)` of the status-quo adjustment, in eigenvalue order.
pub fn status_quo_weights<T: Scalar>(prim: &MarketPrimitives<T>, eta: T) -> Result<Vec<T>> {
    let fam = Family::new(prim);
    let bound = fam.eta_max();
    if eta.is_nan() || eta >= bound {
        return Err(Error::EtaOutOfRange { eta: eta.to_f64_lossy(), bound: bound.to_f64_lossy() });
    }
    Ok(if eta > T::zero() { fam.rho_eta(eta) } else { fam.rho_u(eta_to_u(eta)) })
}

/// `R_Π(𝕡(η))` computed in eigen-coordinates.
pub fn profit_ratio_at<T: Scalar>(prim: &MarketPrimitives<T>, eta: T) -> Result<T> {
    let fam = Family::new(prim);
    Ok(fam.r_pi(&status_quo_weights(prim, eta)?))
}

/// Root of `R_Π(𝕡(η)) = τ`: `η⁺ ∈ [0, η̂⁺]` on [`Branch::Plus`], and
/// `u ∈ [0, 1]` on [`Branch::Minus`].
pub fn solve_eta_for_tau<T: Scalar>(prim: &MarketPrimitives<T>, tau: T, branch: Branch) -> Result<T> {
    check_tau(tau)?;
    let fam = Family::new(prim);
    match branch {
        Branch::Plus => fam.solve_plus(tau),
        Branch::Minus => fam.solve_minus(tau),
    }
}

/// `η̂⁺`, the positive-branch root at `τ = 0`.
pub fn eta_hat_plus<T: Scalar>(prim: &MarketPrimitives<T>) -> Result<T> {
    Family::new(prim).solve_plus(T::zero())
}

/// `(R_V(𝕡(η⁻)), R_V(𝕡(η⁺)))` at profit ratio `τ`.
pub fn rv_bounds<T: Scalar>(prim: &MarketPrimitives<T>, tau: T) -> Result<(T, T)> {
    let point = pareto_point(prim, tau)?;
    Ok((point.r_v_minus, point.r_v_plus))
}

pub fn pareto_point<T: Scalar>(prim: &MarketPrimitives<T>, tau: T) -> Result<ParetoPoint<T>> {
    check_tau(tau)?;
    let fam = Family::new(prim);
    let eta_plus = fam.solve_plus(tau)?;
    let u = fam.solve_minus(tau)?;
    let price_plus = fam.price(&fam.rho_eta(eta_plus));
    let price_minus = fam.price(&fam.rho_u(u));
    let (r_v_plus, _) = prim.ratios(&price_plus)?;
    let (r_v_minus, _) = prim.ratios(&price_minus)?;
    Ok(ParetoPoint { tau, eta_plus, eta_minus_u: u, price_plus, price_minus, r_v_plus, r_v_minus })
}

/// Maximizer of `Π + η⁺V`, from its first-order condition
/// `((η - 2)I + 2δG)(p - p^ur) = η(a - c)/2` solved by dense LU.
pub fn ramsey_price<T: Scalar>(prim: &MarketPrimitives<T>, eta_plus: T) -> Result<Vec<T>> {
    let bound = Family::new(prim).eta_max();
    if !(eta_plus >= T::zero() && eta_plus < bound) {
        return Err(Error::EtaOutOfRange {
            eta: eta_plus.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }
    let m: Matrix<T> = prim
        .network()
        .adjacency()
        .scaled_plus_identity(T::lit(2.0) * prim.delta(), eta_plus - T::lit(2.0));
    let rhs: Vec<T> = prim.margin().iter().map(|x| eta_plus * *x).collect();
    let shift = m.solve(&rhs)?;
    Ok(prim.unrestricted_price().iter().zip(shift).map(|(p, s)| *p + s).collect())
}

/// `n` evenly spaced profit ratios from 0 to 1.
pub fn tau_grid<T: Scalar>(n: usize) -> Vec<T> {
    match n {
        0 => Vec::new(),
        1 => vec![T::one()],
        _ => (0..n).map(|i| T::from_count(i) / T::from_count(n - 1)).collect(),
    }
}

/// Frontier samples, evaluated in parallel over `taus`.
pub fn frontier<T: Scalar>(prim: &MarketPrimitives<T>, taus: &[T]) -> Result<Vec<ParetoPoint<T>>> {
    taus.par_iter().map(|tau| pareto_point(prim, *tau)).collect()
}

/// `(1 + √(1 - τ))²`, the limit of `R_V⁺(τ)` as `δ ↑ 1/λ₁`.
pub fn frontier_limit<T: Scalar>(tau: T) -> T {
    let s = T::one() + (T::one() - tau).sqrt();
    s * s
}

/// Frontier price for the representative-consumer surplus:
/// `p^ur ∓ √(1 - τ)·(a - c)/2`.
pub fn av_pareto_price<T: Scalar>(prim: &MarketPrimitives<T>, tau: T, branch: Branch) -> Result<Vec<T>> {
    check_tau(tau)?;
    let s = (T::one() - tau).sqrt();
    Ok(prim.along_margin(match branch {
        Branch::Plus => -s,
        Branch::Minus => s,
    }))
}

/// `((1 - √(1 - τ))², (1 + √(1 - τ))²)`; does not depend on `δ`.
pub fn av_rv_bounds<T: Scalar>(tau: T) -> Result<(T, T)> {
    check_tau(tau)?;
    let s = (T::one() - tau).sqrt();
    Ok(((T::one() - s) * (T::one() - s), (T::one() + s) * (T::one() + s)))
}
