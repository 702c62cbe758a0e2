//! Dykstra's alternating projection onto an intersection of halfspaces in
//! the inner product `⟨x, y⟩_H = xᵀHy`.
//!
//! Every correction term of halfspace `j` is a multiple `αⱼ·H⁻¹vⱼ`, so the
//! iteration only stores the scalars `αⱼ`.

use super::Halfspace;
use crate::error::{Error, Result};
use crate::linalg::{dot, Matrix};
use crate::netcore::SpilloverOperator;
use crate::scalar::Scalar;

const MAX_CYCLES: usize = 100_000;
/// Cycles between attempts to certify the current active set.
const CERTIFY_EVERY: usize = 32;

pub(crate) fn project_halfspaces<T: Scalar>(
    op: &SpilloverOperator<T>,
    halfspaces: &[Halfspace<T>],
    start: &[T],
) -> Result<Vec<T>> {
    if halfspaces.is_empty() {
        return Ok(start.to_vec());
    }
    let scale = T::one() + op.quad(start).sqrt();
    let tol = T::tol(1e-10) * scale;
    let blowup = T::lit(1e8) * scale;

    let u: Vec<Vec<T>> = halfspaces.iter().map(|h| op.apply_inverse(&h.normal)).collect();
    let s: Vec<T> = halfspaces.iter().zip(&u).map(|(h, uj)| dot(&h.normal, uj)).collect();
    let mut alpha = vec![T::zero(); halfspaces.len()];
    let mut x = start.to_vec();

    for cycle in 1..=MAX_CYCLES {
        let mut change2 = T::zero();
        for (j, h) in halfspaces.iter().enumerate() {
            let old = alpha[j];
            let excess = dot(&h.normal, &x) + old * s[j] - h.offset;
            let new = (excess / s[j]).max(T::zero());
            let d = old - new;
            if d != T::zero() {
                for (xi, ui) in x.iter_mut().zip(&u[j]) {
                    *xi = *xi + d * *ui;
                }
                change2 = change2 + d * d * s[j];
            }
            alpha[j] = new;
        }
        if !change2.is_finite() || alpha.iter().zip(&s).any(|(a, sj)| *a * sj.sqrt() > blowup) {
            return Err(Error::Infeasible);
        }
        if change2.sqrt() <= tol {
            return Ok(certify(halfspaces, &u, &s, &alpha, start, scale).unwrap_or(x));
        }
        // Near the spectral bound H is badly conditioned and the iterate
        // crawls long after the active set has settled.
        if cycle % CERTIFY_EVERY == 0 {
            if let Some(p) = certify(halfspaces, &u, &s, &alpha, start, scale) {
                return Ok(p);
            }
        }
    }
    let worst = halfspaces
        .iter()
        .map(|h| dot(&h.normal, &x) - h.offset)
        .fold(T::zero(), T::max);
    Err(if worst > T::tol(1e-6) * scale {
        Error::Infeasible
    } else {
        Error::NoConvergence("Dykstra projection")
    })
}

/// Solves the KKT system on the active face suggested by `alpha`. Returns
/// the point only if it is feasible with nonnegative multipliers, which
/// makes it the exact projection.
fn certify<T: Scalar>(
    halfspaces: &[Halfspace<T>],
    u: &[Vec<T>],
    s: &[T],
    alpha: &[T],
    start: &[T],
    scale: T,
) -> Option<Vec<T>> {
    let active: Vec<usize> = (0..halfspaces.len()).filter(|&j| alpha[j] > T::zero()).collect();
    if active.is_empty() {
        return None;
    }
    // Greedy independent subset, by Gram-Schmidt in the metric vᵀH⁻¹w.
    let mut basis: Vec<usize> = Vec::new();
    let mut ortho: Vec<(Vec<T>, Vec<T>, T)> = Vec::new();
    for &j in &active {
        let mut r = halfspaces[j].normal.clone();
        let mut t = u[j].clone();
        for (rk, tk, nk) in &ortho {
            let c = dot(&r, tk) / *nk;
            for i in 0..r.len() {
                r[i] = r[i] - c * rk[i];
                t[i] = t[i] - c * tk[i];
            }
        }
        let nr = dot(&r, &t);
        if nr > T::tol(1e-10) * s[j] {
            basis.push(j);
            ortho.push((r, t, nr));
        }
    }
    let m = basis.len();
    let gram = Matrix::from_fn(m, m, |a, b| dot(&halfspaces[basis[a]].normal, &u[basis[b]]));
    let rhs: Vec<T> = basis.iter().map(|&j| dot(&halfspaces[j].normal, start) - halfspaces[j].offset).collect();
    let mu = gram.solve(&rhs).ok()?;
    if basis.iter().zip(&mu).any(|(&j, v)| *v * s[j].sqrt() < -T::tol(1e-9) * scale) {
        return None;
    }
    let mut p = start.to_vec();
    for (k, &j) in basis.iter().enumerate() {
        for (pi, ui) in p.iter_mut().zip(&u[j]) {
            *pi = *pi - mu[k].max(T::zero()) * *ui;
        }
    }
    let feas = T::tol(1e-12) * scale;
    if halfspaces.iter().any(|h| dot(&h.normal, &p) - h.offset > feas * (T::one() + h.offset.abs())) {
        return None;
    }
    Some(p)
}
