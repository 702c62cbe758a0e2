//! Demand, profit, consumer surplus and the welfare ratios for one market
//! configuration `(G, a, c, δ)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{dot, scale, sub};
use crate::netcore::{Network, SpilloverOperator};
use crate::scalar::Scalar;

/// Intrinsic values `a`, marginal costs `c` and spillover intensity `δ` on a
/// network, with `H` factorized once.
#[derive(Debug, Clone)]
pub struct MarketPrimitives<T> {
    net: Arc<Network<T>>,
    a: Vec<T>,
    c: Vec<T>,
    op: SpilloverOperator<T>,
    p_ur: Vec<T>,
    margin: Vec<T>,
    margin_h2: T,
    v_ur: T,
    w1_margin: T,
}

/// Full welfare evaluation at one price vector.
#[derive(Debug, Clone, PartialEq)]
pub struct WelfareOutcome<T> {
    pub price: Vec<T>,
    pub quantity: Vec<T>,
    pub profit: T,
    pub surplus: T,
    pub r_v: T,
    pub r_pi: T,
    pub a_stat: T,
}

impl<T: Scalar> MarketPrimitives<T> {
    /// Requires `aᵢ > cᵢ`, matching dimensions and `0 ≤ δ < 1/λ₁`.
    pub fn new(net: Arc<Network<T>>, a: Vec<T>, c: Vec<T>, delta: T) -> Result<Self> {
        net.check_dim(a.len())?;
        net.check_dim(c.len())?;
        for (i, (ai, ci)) in a.iter().zip(&c).enumerate() {
            if !ai.is_finite() || !ci.is_finite() {
                return Err(Error::InvalidPrimitives(format!("non-finite value at market {i}")));
            }
            if !(*ai > *ci) {
                return Err(Error::InvalidPrimitives(format!("a[{i}] = {ai} is not above c[{i}] = {ci}")));
            }
        }
        let op = net.spillover(delta)?;
        let half = T::lit(0.5);
        let p_ur: Vec<T> = a.iter().zip(&c).map(|(x, y)| (*x + *y) * half).collect();
        let margin: Vec<T> = a.iter().zip(&c).map(|(x, y)| (*x - *y) * half).collect();
        let margin_h2 = op.quad(&margin);
        let x_ur = op.apply(&margin);
        let v_ur = half * dot(&x_ur, &x_ur);
        let w1_margin = dot(&net.eigencentrality(), &margin);
        debug_assert!(w1_margin > T::zero());
        Ok(Self { net, a, c, op, p_ur, margin, margin_h2, v_ur, w1_margin })
    }

    /// Same network and values at another spillover intensity.
    pub fn with_delta(&self, delta: T) -> Result<Self> {
        Self::new(self.net.clone(), self.a.clone(), self.c.clone(), delta)
    }

    pub fn network(&self) -> &Network<T> {
        &self.net
    }

    pub fn network_arc(&self) -> &Arc<Network<T>> {
        &self.net
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[T] {
        &self.a
    }

    pub fn c(&self) -> &[T] {
        &self.c
    }

    pub fn delta(&self) -> T {
        self.op.delta()
    }

    pub fn operator(&self) -> &SpilloverOperator<T> {
        &self.op
    }

    /// `(a - c)/2`
    pub fn margin(&self) -> &[T] {
        &self.margin
    }

    /// `‖(a - c)/2‖²_H`, the unregulated profit.
    pub fn margin_h_norm2(&self) -> T {
        self.margin_h2
    }

    /// `p^ur = (a + c)/2`; does not depend on `δ`.
    pub fn unrestricted_price(&self) -> &[T] {
        &self.p_ur
    }

    /// `x = H(a - p)`
    pub fn demand(&self, p: &[T]) -> Result<Vec<T>> {
        self.net.check_dim(p.len())?;
        Ok(self.op.apply(&sub(&self.a, p)))
    }

    /// `Π = (p - c)ᵀ H (a - p)`
    pub fn profit(&self, p: &[T]) -> Result<T> {
        let x = self.demand(p)?;
        Ok(dot(&sub(p, &self.c), &x))
    }

    /// `V = ½‖x‖²`
    pub fn consumer_surplus(&self, p: &[T]) -> Result<T> {
        let x = self.demand(p)?;
        Ok(T::lit(0.5) * dot(&x, &x))
    }

    /// Representative-consumer surplus `½(a - p)ᵀ H (a - p)`.
    pub fn consumer_surplus_av(&self, p: &[T]) -> Result<T> {
        self.net.check_dim(p.len())?;
        Ok(T::lit(0.5) * self.op.quad(&sub(&self.a, p)))
    }

    /// `‖p - p^ur‖²_H`, the profit lost relative to `p^ur`.
    pub fn profit_loss(&self, p: &[T]) -> Result<T> {
        self.net.check_dim(p.len())?;
        Ok(self.op.quad(&sub(p, &self.p_ur)))
    }

    /// `(R_V, R_Π)`
    pub fn ratios(&self, p: &[T]) -> Result<(T, T)> {
        let r_v = self.consumer_surplus(p)? / self.v_ur;
        let r_pi = T::one() - self.profit_loss(p)? / self.margin_h2;
        Ok((r_v, r_pi))
    }

    /// `𝒜(p) = ⟨w₁, p - p^ur⟩ / ⟨w₁, (a - c)/2⟩`
    pub fn a_statistic(&self, p: &[T]) -> Result<T> {
        self.net.check_dim(p.len())?;
        Ok(dot(&self.net.eigencentrality(), &sub(p, &self.p_ur)) / self.w1_margin)
    }

    pub fn evaluate(&self, p: &[T]) -> Result<WelfareOutcome<T>> {
        let quantity = self.demand(p)?;
        let profit = dot(&sub(p, &self.c), &quantity);
        let surplus = T::lit(0.5) * dot(&quantity, &quantity);
        let (_, r_pi) = self.ratios(p)?;
        Ok(WelfareOutcome {
            price: p.to_vec(),
            quantity,
            profit,
            surplus,
            r_v: surplus / self.v_ur,
            r_pi,
            a_stat: self.a_statistic(p)?,
        })
    }

    /// Scales `(a - c)/2` by `s` around `p^ur`: `p^ur + s·(a - c)/2`.
    pub(crate) fn along_margin(&self, s: T) -> Vec<T> {
        self.p_ur.iter().zip(scale(s, &self.margin)).map(|(p, m)| *p + m).collect()
    }
}

/// Limit ratios `((1 - 𝒜)², 1 - 𝒜²)` as `δ ↑ 1/λ₁`; requires `|𝒜| ≤ 1`.
pub fn limit_ratios<T: Scalar>(a_stat: T) -> Result<(T, T)> {
    if !(a_stat.abs() <= T::one()) {
        return Err(Error::OutOfRange(a_stat.to_f64_lossy()));
    }
    Ok(limit_ratios_raw(a_stat))
}

/// [`limit_ratios`] without the range check.
pub fn limit_ratios_raw<T: Scalar>(a_stat: T) -> (T, T) {
    let d = T::one() - a_stat;
    (d * d, T::one() - a_stat * a_stat)
}
