//! Monopoly pricing and price regulation in markets linked by network demand
//! spillovers.
//!
//! The numerical core is generic over [`Scalar`] (`f32` or `f64`); the `F64`
//! aliases at the crate root fix it to double precision.

pub mod discrimination;
pub mod error;
pub mod linalg;
pub mod market;
pub mod netcore;
pub mod pareto;
pub mod regulation;
pub mod scalar;

pub use discrimination::{PsiStatistic, TwoTypePartition, WelfareDirection};
pub use error::{Error, Result};
pub use linalg::Matrix;
pub use market::{MarketPrimitives, WelfareOutcome};
pub use netcore::{Network, SpectralData, SpilloverOperator};
pub use pareto::{Branch, ParetoPoint};
pub use regulation::{Certificate, Halfspace, Interval, LimitClassification, LimitLabel, RegulationSet};
pub use scalar::Scalar;

pub type MatrixF64 = Matrix<f64>;
pub type NetworkF64 = Network<f64>;
pub type MarketPrimitivesF64 = MarketPrimitives<f64>;
pub type WelfareOutcomeF64 = WelfareOutcome<f64>;
pub type ParetoPointF64 = ParetoPoint<f64>;
pub type RegulationSetF64 = RegulationSet<f64>;
pub type LimitClassificationF64 = LimitClassification<f64>;
pub type PsiStatisticF64 = PsiStatistic<f64>;
pub type TwoTypePartitionF64 = TwoTypePartition<f64>;
