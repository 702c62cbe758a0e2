use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::netcore::Network;
use crate::scalar::Scalar;

/// Complete graph on `core_size` core nodes, each with `periphery_per_core`
/// degree-one leaves. Cores come first, then each core's leaves in order.
pub fn gen_core_periphery<T: Scalar>(core_size: usize, periphery_per_core: usize) -> Result<Network<T>> {
    if core_size < 2 || periphery_per_core < 1 {
        return Err(Error::InvalidSize(format!(
            "core-periphery needs core_size >= 2 and periphery_per_core >= 1, got ({core_size}, {periphery_per_core})"
        )));
    }
    let n = core_size * (1 + periphery_per_core);
    let mut g = Matrix::zeros(n, n);
    for i in 0..core_size {
        for j in 0..core_size {
            if i != j {
                g[(i, j)] = T::one();
            }
        }
        for k in 0..periphery_per_core {
            let leaf = core_size + i * periphery_per_core + k;
            g[(i, leaf)] = T::one();
            g[(leaf, i)] = T::one();
        }
    }
    Network::from_adjacency(g)
}

/// Complete bipartite graph `K_{m,k}`, part-one nodes first.
pub fn gen_complete_bipartite<T: Scalar>(m: usize, k: usize) -> Result<Network<T>> {
    if m < 1 || k < 1 {
        return Err(Error::InvalidSize(format!("complete bipartite needs m, k >= 1, got ({m}, {k})")));
    }
    let n = m + k;
    let g = Matrix::from_fn(n, n, |i, j| if (i < m) != (j < m) { T::one() } else { T::zero() });
    Network::from_adjacency(g)
}

pub fn gen_complete<T: Scalar>(n: usize) -> Result<Network<T>> {
    if n < 2 {
        return Err(Error::InvalidSize(format!("complete graph needs n >= 2, got {n}")));
    }
    let g = Matrix::from_fn(n, n, |i, j| if i != j { T::one() } else { T::zero() });
    Network::from_adjacency(g)
}
