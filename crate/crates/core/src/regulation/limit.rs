//! Large-spillover classification through the image `𝒜(K)`.

use super::{dykstra, RegulationSet};
use crate::error::Result;
use crate::linalg::{dot, norm};
use crate::market::{limit_ratios_raw, MarketPrimitives};
use crate::scalar::Scalar;

/// Closed interval with possibly infinite endpoints. `approximate` marks
/// bounds obtained by probing rather than exact support analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
    pub approximate: bool,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Self { lo, hi, approximate: false }
    }

    pub fn real_line() -> Self {
        Self::new(T::neg_infinity(), T::infinity())
    }

    pub fn contains(&self, z: T) -> bool {
        self.lo <= z && z <= self.hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitLabel {
    ParetoInefficient,
    Neutral,
    ParetoEfficient,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LimitClassification<T> {
    pub label: LimitLabel,
    /// Element of `𝒜(K)` closest to zero.
    pub a_star: T,
    pub a_interval: Interval<T>,
    pub limit_r_v: T,
    pub limit_r_pi: T,
}

/// `𝒜(K) = {𝒜(p) : p ∈ K}`.
pub fn a_interval<T: Scalar>(prim: &MarketPrimitives<T>, k: &RegulationSet<T>) -> Result<Interval<T>> {
    let n = prim.n();
    k.validate(n)?;
    let w1 = prim.network().eigencentrality();
    let base = dot(&w1, prim.unrestricted_price());
    let denom = dot(&w1, prim.margin());
    let to_a = |support: T| (support - base) / denom;
    Ok(match k {
        RegulationSet::Unrestricted | RegulationSet::Uniform | RegulationSet::PriceDifference(_) => {
            Interval::real_line()
        }
        RegulationSet::Box { lower, upper } => Interval::new(to_a(dot(&w1, lower)), to_a(dot(&w1, upper))),
        RegulationSet::AveragePrice { theta, cap } => single_halfspace(&w1, theta, *cap, &to_a),
        RegulationSet::Halfspaces(list) if list.len() == 1 => {
            single_halfspace(&w1, &list[0].normal, list[0].offset, &to_a)
        }
        RegulationSet::Halfspaces(list) => {
            let halfspaces = list.clone();
            let probe = |dir: T| -> Result<T> {
                let scale = T::one() + crate::linalg::norm_inf(prim.unrestricted_price());
                let mut values = [T::zero(); 2];
                for (slot, t) in values.iter_mut().zip([T::lit(1e3), T::lit(1e6)]) {
                    let start: Vec<T> = prim
                        .unrestricted_price()
                        .iter()
                        .zip(&w1)
                        .map(|(p, w)| *p + dir * t * scale * *w)
                        .collect();
                    let p = dykstra::project_halfspaces(prim.operator(), &halfspaces, &start)?;
                    *slot = to_a(dot(&w1, &p));
                }
                let spread = (values[1] - values[0]).abs();
                Ok(if spread > T::lit(1e-6) * (T::one() + values[0].abs()) {
                    dir * T::infinity()
                } else {
                    values[1]
                })
            };
            Interval { lo: probe(-T::one())?, hi: probe(T::one())?, approximate: true }
        }
    })
}

/// Image of `{⟨v, p⟩ ≤ m}`: bounded above iff `v` is a positive multiple of
/// `w₁`, below iff a negative one.
fn single_halfspace<T: Scalar>(w1: &[T], v: &[T], m: T, to_a: &impl Fn(T) -> T) -> Interval<T> {
    let nv = norm(v);
    let cos = dot(w1, v) / nv;
    let tol = T::tol(1e-10);
    if cos >= T::one() - tol {
        Interval::new(T::neg_infinity(), to_a(m / nv))
    } else if cos <= -T::one() + tol {
        Interval::new(to_a(-m / nv), T::infinity())
    } else {
        Interval::real_line()
    }
}

/// Limit welfare of `K` as `δ ↑ 1/λ₁` from the sign pattern of `𝒜(K)`.
///
/// An endpoint within `1e-12` of zero counts as touching it.
pub fn classify_limit<T: Scalar>(
    prim: &MarketPrimitives<T>,
    k: &RegulationSet<T>,
) -> Result<LimitClassification<T>> {
    let interval = a_interval(prim, k)?;
    let touch = T::lit(1e-12);
    let (label, a_star) = if interval.lo > touch {
        (LimitLabel::ParetoInefficient, interval.lo)
    } else if interval.hi < -touch {
        (LimitLabel::ParetoEfficient, interval.hi)
    } else {
        (LimitLabel::Neutral, T::zero())
    };
    let (limit_r_v, limit_r_pi) = limit_ratios_raw(a_star);
    Ok(LimitClassification { label, a_star, a_interval: interval, limit_r_v, limit_r_pi })
}
