//! Reference computations that share no code with `netreg`'s solvers, and
//! generators of random test instances.

pub mod instances;
pub mod oracle;
