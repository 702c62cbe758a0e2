//! Spillover networks: validation, cached spectrum, centralities and the
//! Leontief-type operator `H = (I - δG)⁻¹`.

mod generators;
mod text;

pub use generators::{gen_complete, gen_complete_bipartite, gen_core_periphery};
pub use text::{emit_dense, emit_edge_list, parse_dense, parse_edge_list};

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::linalg::{self, Lu, Matrix};
use crate::scalar::Scalar;

/// Eigenpairs of the adjacency matrix, eigenvalues in descending order.
#[derive(Debug, Clone)]
pub struct SpectralData<T> {
    eigenvalues: Vec<T>,
    eigenvectors: Matrix<T>,
}

impl<T: Scalar> SpectralData<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// Orthonormal eigenvectors as columns.
    pub fn eigenvectors(&self) -> &Matrix<T> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, i: usize) -> Vec<T> {
        self.eigenvectors.column(i)
    }

    pub fn lambda1(&self) -> T {
        self.eigenvalues[0]
    }

    /// Coordinates `⟨wᵢ, z⟩` of `z` in the eigenbasis.
    pub fn to_spectral(&self, z: &[T]) -> Vec<T> {
        let n = self.eigenvalues.len();
        (0..n)
            .map(|i| (0..n).fold(T::zero(), |s, k| s + self.eigenvectors[(k, i)] * z[k]))
            .collect()
    }

    /// Inverse of [`SpectralData::to_spectral`].
    pub fn from_spectral(&self, coords: &[T]) -> Vec<T> {
        self.eigenvectors.mul_vec(coords)
    }
}

/// A validated, connected, symmetric spillover network with its spectrum.
#[derive(Debug, Clone)]
pub struct Network<T> {
    adjacency: Matrix<T>,
    degrees: Vec<T>,
    spectrum: SpectralData<T>,
}

impl<T: Scalar> Network<T> {
    /// Validates `adjacency` and computes its spectrum.
    ///
    /// Entries that are symmetric up to `1e-12·max(1, |gᵢⱼ|)` are averaged.
    pub fn from_adjacency(adjacency: Matrix<T>) -> Result<Self> {
        let n = adjacency.n_rows();
        if n == 0 {
            return Err(Error::Empty);
        }
        if !adjacency.is_square() {
            return Err(Error::NotSquare { rows: n, row: 0, cols: adjacency.n_cols() });
        }
        let mut g = adjacency;
        for i in 0..n {
            for j in 0..n {
                if !g[(i, j)].is_finite() {
                    return Err(Error::NonFinite { i, j });
                }
            }
        }
        let sym_tol = T::tol(1e-12);
        for i in 0..n {
            for j in (i + 1)..n {
                let (gij, gji) = (g[(i, j)], g[(j, i)]);
                if (gij - gji).abs() > sym_tol * T::one().max(gij.abs()) {
                    return Err(Error::NotSymmetric { i, j });
                }
                let avg = (gij + gji) / T::lit(2.0);
                g[(i, j)] = avg;
                g[(j, i)] = avg;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if g[(i, j)] < T::zero() {
                    return Err(Error::NegativeWeight { i, j });
                }
            }
            if g[(i, i)] != T::zero() {
                return Err(Error::NonzeroDiagonal { i });
            }
        }
        if let Some(unreachable) = first_unreachable(&g) {
            return Err(Error::Disconnected { unreachable });
        }

        let (eigenvalues, mut eigenvectors) = linalg::symmetric_eigen(&g)?;
        // Perron vector: all coordinates share a sign; make them positive.
        let s: T = (0..n).map(|k| eigenvectors[(k, 0)]).sum();
        if s < T::zero() {
            for k in 0..n {
                eigenvectors[(k, 0)] = -eigenvectors[(k, 0)];
            }
        }
        let degrees = (0..n).map(|i| g.row(i).iter().copied().sum()).collect();
        Ok(Self { adjacency: g, degrees, spectrum: SpectralData { eigenvalues, eigenvectors } })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        Self::from_adjacency(Matrix::from_rows(rows)?)
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn adjacency(&self) -> &Matrix<T> {
        &self.adjacency
    }

    pub fn spectrum(&self) -> &SpectralData<T> {
        &self.spectrum
    }

    pub fn lambda1(&self) -> T {
        self.spectrum.lambda1()
    }

    pub fn degrees(&self) -> &[T] {
        &self.degrees
    }

    /// Eigenvector centrality `w₁`: unit norm, strictly positive.
    pub fn eigencentrality(&self) -> Vec<T> {
        self.spectrum.eigenvector(0)
    }

    /// True iff all weighted degrees agree within `1e-10·max(1, max degree)`.
    pub fn is_regular(&self) -> bool {
        let (lo, hi) = self
            .degrees
            .iter()
            .fold((T::infinity(), T::neg_infinity()), |(lo, hi), d| (lo.min(*d), hi.max(*d)));
        hi - lo <= T::tol(1e-10) * T::one().max(hi)
    }

    /// Checks `0 ≤ δ` and `δλ₁ < 1`.
    pub fn check_delta(&self, delta: T) -> Result<()> {
        if !(delta >= T::zero()) || !(delta * self.lambda1() < T::one()) {
            return Err(Error::SpectralBound {
                delta: delta.to_f64_lossy(),
                lambda1: self.lambda1().to_f64_lossy(),
            });
        }
        Ok(())
    }

    /// Factorizes `I - δG` for repeated application of `H`.
    pub fn spillover(&self, delta: T) -> Result<SpilloverOperator<T>> {
        self.check_delta(delta)?;
        SpilloverOperator::new(&self.adjacency, delta)
    }

    /// `x` solving `(I - δG)x = v`.
    pub fn h_apply(&self, delta: T, v: &[T]) -> Result<Vec<T>> {
        self.check_dim(v.len())?;
        Ok(self.spillover(delta)?.apply(v))
    }

    /// Katz-Bonacich centrality `b(G, δ, z) = H z`.
    pub fn katz_bonacich(&self, delta: T, z: &[T]) -> Result<Vec<T>> {
        self.h_apply(delta, z)
    }

    pub(crate) fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.n() {
            return Err(Error::DimensionMismatch { expected: self.n(), got });
        }
        Ok(())
    }
}

/// `H = (I - δG)⁻¹`, held as an LU factorization of the explicit `I - δG`.
#[derive(Debug, Clone)]
pub struct SpilloverOperator<T> {
    delta: T,
    inverse: Matrix<T>,
    lu: Lu<T>,
}

impl<T: Scalar> SpilloverOperator<T> {
    /// Builds `I - δ·g` without checking the spectral bound; callers that
    /// need a valid `H` go through [`Network::spillover`].
    pub(crate) fn new(g: &Matrix<T>, delta: T) -> Result<Self> {
        let inverse = g.scaled_plus_identity(-delta, T::one());
        let lu = inverse.lu()?;
        Ok(Self { delta, inverse, lu })
    }

    pub fn delta(&self) -> T {
        self.delta
    }

    /// `H v`
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        self.lu.solve(v)
    }

    /// `H⁻¹ v = (I - δG) v`
    pub fn apply_inverse(&self, v: &[T]) -> Vec<T> {
        self.inverse.mul_vec(v)
    }

    /// The explicit matrix `I - δG`.
    pub fn inverse_matrix(&self) -> &Matrix<T> {
        &self.inverse
    }

    /// `zᵀ H z`
    pub fn quad(&self, z: &[T]) -> T {
        linalg::dot(z, &self.apply(z))
    }
}

fn first_unreachable<T: Scalar>(g: &Matrix<T>) -> Option<usize> {
    let n = g.n_rows();
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(i) = queue.pop_front() {
        for (j, w) in g.row(i).iter().enumerate() {
            if *w > T::zero() && !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    seen.iter().position(|s| !s)
}

/// `z - (⟨z,1⟩/n)·1`
pub fn demean<T: Scalar>(z: &[T]) -> Vec<T> {
    if z.is_empty() {
        return Vec::new();
    }
    let mean = z.iter().copied().sum::<T>() / T::from_count(z.len());
    z.iter().map(|x| *x - mean).collect()
}

/// Cosine similarity `⟨z,z'⟩ / (‖z‖‖z'‖)`, clamped to `[-1, 1]`.
pub fn corr<T: Scalar>(z: &[T], z2: &[T]) -> Result<T> {
    if z.len() != z2.len() {
        return Err(Error::DimensionMismatch { expected: z.len(), got: z2.len() });
    }
    let (nz, nz2) = (linalg::norm(z), linalg::norm(z2));
    if nz == T::zero() || nz2 == T::zero() {
        return Err(Error::ZeroVector);
    }
    Ok((linalg::dot(z, z2) / (nz * nz2)).max(-T::one()).min(T::one()))
}
