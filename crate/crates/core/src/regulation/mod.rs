//! Convex price regulations, the firm's constrained optimum and its welfare
//! diagnostics.
//!
//! Under a regulation `K` the firm charges the `H`-norm projection of
//! `p^ur` onto `K`, since its profit is `Π(p^ur) - ‖p - p^ur‖²_H`.

mod dykstra;
mod limit;

pub use limit::{a_interval, classify_limit, Interval, LimitClassification, LimitLabel};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm, Matrix};
use crate::market::{MarketPrimitives, WelfareOutcome};
use crate::pareto::{self, Branch};
use crate::scalar::Scalar;

/// `{p : ⟨normal, p⟩ ≤ offset}`
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace<T> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Scalar> Halfspace<T> {
    pub fn new(normal: Vec<T>, offset: T) -> Self {
        Self { normal, offset }
    }
}

/// A nonempty closed convex set of admissible price vectors.
#[derive(Debug, Clone, PartialEq)]
pub enum RegulationSet<T> {
    Unrestricted,
    /// Price floors and ceilings; infinite bounds are allowed.
    Box { lower: Vec<T>, upper: Vec<T> },
    /// `pᵢ - pⱼ ≤ Δᵢⱼ` for all pairs.
    PriceDifference(Matrix<T>),
    /// `⟨θ, p⟩ ≤ cap` with `θ` a probability vector.
    AveragePrice { theta: Vec<T>, cap: T },
    /// All prices equal.
    Uniform,
    Halfspaces(Vec<Halfspace<T>>),
}

impl<T: Scalar> RegulationSet<T> {
    pub fn kind_name(&self) -> &'static str {
        match self {
            RegulationSet::Unrestricted => "unrestricted",
            RegulationSet::Box { .. } => "box",
            RegulationSet::PriceDifference(_) => "price_difference",
            RegulationSet::AveragePrice { .. } => "average_price",
            RegulationSet::Uniform => "uniform",
            RegulationSet::Halfspaces(_) => "halfspaces",
        }
    }

    /// `Δᵢⱼ = delta` for every pair `i ≠ j`.
    pub fn constant_difference(n: usize, delta: T) -> Self {
        RegulationSet::PriceDifference(Matrix::from_fn(n, n, |i, j| if i == j { T::zero() } else { delta }))
    }

    /// Checks the structural invariants of the set for `n` markets.
    pub fn validate(&self, n: usize) -> Result<()> {
        let dim = |got: usize| {
            if got != n {
                Err(Error::DimensionMismatch { expected: n, got })
            } else {
                Ok(())
            }
        };
        match self {
            RegulationSet::Unrestricted | RegulationSet::Uniform => Ok(()),
            RegulationSet::Box { lower, upper } => {
                dim(lower.len())?;
                dim(upper.len())?;
                for i in 0..n {
                    if lower[i].is_nan() || upper[i].is_nan() {
                        return Err(Error::InvalidRegulation(format!("NaN bound at market {i}")));
                    }
                    if lower[i] > upper[i] || lower[i] == T::infinity() || upper[i] == T::neg_infinity() {
                        return Err(Error::InvalidRegulation(format!("empty bound interval at market {i}")));
                    }
                }
                Ok(())
            }
            RegulationSet::PriceDifference(d) => {
                dim(d.n_rows())?;
                dim(d.n_cols())?;
                for i in 0..n {
                    if d[(i, i)] != T::zero() {
                        return Err(Error::InvalidRegulation(format!("nonzero diagonal at {i}")));
                    }
                    for j in 0..n {
                        if d[(i, j)].is_nan() || d[(i, j)] < T::zero() {
                            return Err(Error::InvalidRegulation(format!("invalid bound at ({i}, {j})")));
                        }
                        if d[(i, j)] != d[(j, i)] {
                            return Err(Error::InvalidRegulation(format!("asymmetric bound at ({i}, {j})")));
                        }
                    }
                }
                Ok(())
            }
            RegulationSet::AveragePrice { theta, cap } => {
                dim(theta.len())?;
                if !cap.is_finite() {
                    return Err(Error::InvalidRegulation("cap must be finite".into()));
                }
                if theta.iter().any(|t| !t.is_finite() || *t < T::zero()) {
                    return Err(Error::InvalidRegulation("weights must be nonnegative".into()));
                }
                let total: T = theta.iter().copied().sum();
                if (total - T::one()).abs() > T::tol(1e-10) * T::from_count(n) {
                    return Err(Error::InvalidRegulation(format!("weights sum to {total}, not 1")));
                }
                Ok(())
            }
            RegulationSet::Halfspaces(list) => {
                for (k, h) in list.iter().enumerate() {
                    dim(h.normal.len())?;
                    if !h.offset.is_finite() || h.normal.iter().any(|v| !v.is_finite()) {
                        return Err(Error::InvalidRegulation(format!("non-finite halfspace {k}")));
                    }
                    if norm(&h.normal) == T::zero() {
                        return Err(Error::InvalidRegulation(format!("zero normal in halfspace {k}")));
                    }
                }
                Ok(())
            }
        }
    }

    /// Decomposition into halfspaces; infinite bounds are dropped.
    pub fn halfspaces(&self, n: usize) -> Vec<Halfspace<T>> {
        let unit = |i: usize, s: T| {
            let mut v = vec![T::zero(); n];
            v[i] = s;
            v
        };
        match self {
            RegulationSet::Unrestricted => Vec::new(),
            RegulationSet::Box { lower, upper } => {
                let mut out = Vec::new();
                for i in 0..n {
                    if upper[i].is_finite() {
                        out.push(Halfspace::new(unit(i, T::one()), upper[i]));
                    }
                    if lower[i].is_finite() {
                        out.push(Halfspace::new(unit(i, -T::one()), -lower[i]));
                    }
                }
                out
            }
            RegulationSet::PriceDifference(d) => {
                let mut out = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i != j && d[(i, j)].is_finite() {
                            let mut v = unit(i, T::one());
                            v[j] = -T::one();
                            out.push(Halfspace::new(v, d[(i, j)]));
                        }
                    }
                }
                out
            }
            RegulationSet::AveragePrice { theta, cap } => vec![Halfspace::new(theta.clone(), *cap)],
            RegulationSet::Uniform => RegulationSet::constant_difference(n, T::zero()).halfspaces(n),
            RegulationSet::Halfspaces(list) => list.clone(),
        }
    }

    /// Membership with slack `tol·(1 + |offset| + ‖normal‖·‖p‖)` per constraint.
    pub fn contains(&self, p: &[T], tol: T) -> bool {
        let scale = norm(p);
        self.halfspaces(p.len()).iter().all(|h| {
            dot(&h.normal, p) - h.offset <= tol * (T::one() + h.offset.abs() + norm(&h.normal) * scale)
        })
    }
}

/// The firm's optimal price under `k`: the `H`-norm projection of `p^ur`.
pub fn project<T: Scalar>(prim: &MarketPrimitives<T>, k: &RegulationSet<T>) -> Result<Vec<T>> {
    let n = prim.n();
    k.validate(n)?;
    let p_ur = prim.unrestricted_price();
    let op = prim.operator();
    match k {
        RegulationSet::Unrestricted => Ok(p_ur.to_vec()),
        RegulationSet::Uniform => {
            let ones = vec![T::one(); n];
            let h1 = op.apply(&ones);
            Ok(vec![dot(&h1, p_ur) / dot(&h1, &ones); n])
        }
        RegulationSet::AveragePrice { theta, cap } => {
            let hinv_theta = op.apply_inverse(theta);
            let excess = (dot(theta, p_ur) - *cap) / dot(theta, &hinv_theta);
            let step = excess.max(T::zero());
            Ok(p_ur.iter().zip(&hinv_theta).map(|(p, v)| *p - step * *v).collect())
        }
        RegulationSet::Box { .. } | RegulationSet::PriceDifference(_) | RegulationSet::Halfspaces(_) => {
            dykstra::project_halfspaces(op, &k.halfspaces(n), p_ur)
        }
    }
}

/// Welfare at the regulated equilibrium; `r_pi` is `τ*`.
pub fn equilibrium_outcome<T: Scalar>(
    prim: &MarketPrimitives<T>,
    k: &RegulationSet<T>,
) -> Result<WelfareOutcome<T>> {
    prim.evaluate(&project(prim, k)?)
}

/// `ι(η⁺) = H[I - (2δ/(2 - η⁺))G]⁻¹(a - c)`, the normal of the tangent
/// halfspace at `𝕡(η⁺)`.
pub fn iota<T: Scalar>(prim: &MarketPrimitives<T>, eta_plus: T) -> Result<Vec<T>> {
    let two = T::lit(2.0);
    let bound = two * (T::one() - prim.delta() * prim.network().lambda1());
    if !(eta_plus >= T::zero() && eta_plus < bound) {
        return Err(Error::EtaOutOfRange { eta: eta_plus.to_f64_lossy(), bound: bound.to_f64_lossy() });
    }
    let m = prim
        .network()
        .adjacency()
        .scaled_plus_identity(-two * prim.delta() / (two - eta_plus), T::one());
    let a_minus_c: Vec<T> = prim.margin().iter().map(|x| two * *x).collect();
    Ok(prim.operator().apply(&m.solve(&a_minus_c)?))
}

/// Outcome of [`pareto_certificate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate<T> {
    /// The equilibrium is `𝕡(eta)` and lies on the frontier.
    Efficient { eta: T },
    Inefficient(String),
}

impl<T> Certificate<T> {
    pub fn is_efficient(&self) -> bool {
        matches!(self, Certificate::Efficient { .. })
    }
}

/// Decides whether the equilibrium under `k` lies on the Pareto frontier.
///
/// A set containing `p^ur` is efficient with `η = 0`. Otherwise uniform and
/// price-difference sets are never efficient; a box is efficient iff its
/// ceiling is a frontier price; an average-price cap iff it is the tangent
/// halfspace at a frontier price. Generic halfspace lists can only be
/// falsified and yield [`Error::Unsupported`] when not falsified.
pub fn pareto_certificate<T: Scalar>(prim: &MarketPrimitives<T>, k: &RegulationSet<T>) -> Result<Certificate<T>> {
    let n = prim.n();
    k.validate(n)?;
    let p_ur = prim.unrestricted_price();
    if k.contains(p_ur, T::tol(1e-12)) {
        return Ok(Certificate::Efficient { eta: T::zero() });
    }
    let frontier_eta = |p_star: &[T]| -> Result<Option<T>> {
        let (_, tau) = prim.ratios(p_star)?;
        if tau < T::zero() {
            return Ok(None);
        }
        pareto::solve_eta_for_tau(prim, tau.min(T::one()), Branch::Plus).map(Some)
    };
    let scale = T::one() + crate::linalg::norm_inf(p_ur);
    let close = |x: &[T], y: &[T]| crate::linalg::max_abs_diff(x, y) <= T::tol(1e-9) * scale;
    let negative = || Certificate::Inefficient("equilibrium profit is negative".into());
    match k {
        RegulationSet::Unrestricted => Ok(Certificate::Efficient { eta: T::zero() }),
        RegulationSet::Uniform => Ok(Certificate::Inefficient(
            "uniform pricing leaves the price level free, so no tangent halfspace contains the set".into(),
        )),
        RegulationSet::PriceDifference(_) => Ok(Certificate::Inefficient(
            "price-difference sets contain every common shift t·1 and lie in no tangent halfspace".into(),
        )),
        RegulationSet::Box { upper, .. } => {
            if upper.iter().any(|u| !u.is_finite()) {
                return Ok(Certificate::Inefficient("ceiling has infinite entries".into()));
            }
            let p_star = project(prim, k)?;
            let Some(eta) = frontier_eta(&p_star)? else { return Ok(negative()) };
            if close(upper, &pareto::pareto_price(prim, eta)?) {
                Ok(Certificate::Efficient { eta })
            } else {
                Ok(Certificate::Inefficient("ceiling is not a frontier price".into()))
            }
        }
        RegulationSet::AveragePrice { theta, cap } => {
            let p_star = project(prim, k)?;
            let Some(eta) = frontier_eta(&p_star)? else { return Ok(negative()) };
            let iota = iota(prim, eta)?;
            let cos = dot(theta, &iota) / (norm(theta) * norm(&iota));
            if cos < T::one() - T::tol(1e-10) {
                return Ok(Certificate::Inefficient("weights are not proportional to ι(η⁺)".into()));
            }
            let target = dot(theta, &pareto::pareto_price(prim, eta)?);
            if (target - *cap).abs() <= T::tol(1e-9) * T::one().max(cap.abs()) {
                Ok(Certificate::Efficient { eta })
            } else {
                Ok(Certificate::Inefficient("cap differs from the weighted frontier price".into()))
            }
        }
        RegulationSet::Halfspaces(_) => {
            let p_star = project(prim, k)?;
            let Some(eta) = frontier_eta(&p_star)? else { return Ok(negative()) };
            if !close(&p_star, &pareto::pareto_price(prim, eta)?) {
                return Ok(Certificate::Inefficient(
                    "equilibrium differs from the frontier price at its profit ratio".into(),
                ));
            }
            Err(Error::Unsupported("efficiency of generic halfspace lists".into()))
        }
    }
}

/// `R_V⁺(τ*)` at the equilibrium of `outcome`, and `Gap = R_V⁺(τ*) - R_V(p*)`.
pub fn frontier_gap<T: Scalar>(prim: &MarketPrimitives<T>, outcome: &WelfareOutcome<T>) -> Result<(T, T)> {
    let tau = outcome.r_pi.min(T::one());
    let eta = pareto::solve_eta_for_tau(prim, tau, Branch::Plus)?;
    let (r_v_plus, _) = prim.ratios(&pareto::pareto_price(prim, eta)?)?;
    Ok((r_v_plus, r_v_plus - outcome.r_v))
}

/// Vertical distance from the regulated equilibrium to the frontier.
pub fn gap<T: Scalar>(prim: &MarketPrimitives<T>, k: &RegulationSet<T>) -> Result<T> {
    let outcome = equilibrium_outcome(prim, k)?;
    Ok(frontier_gap(prim, &outcome)?.1)
}
