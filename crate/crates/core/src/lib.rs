//! Fixed-point iteration core.
//!
//! This crate is `no_std` (it needs `alloc`) and holds everything that does
//! not touch IO: dense vectors and norms, an oracle wrapper that counts
//! operator evaluations, a zoo of benchmark operators, the Halpern-family
//! solvers (fixed-step, gradual and adaptive-gradual), a resolvent evaluator,
//! sampling-based checkers for operator classes and closed-form evaluators of
//! the iteration-count bounds those solvers come with.
//!
//! Every solver performs exactly one operator evaluation per iterate; the
//! evaluation `T(x)` is cached and reused for the residual test and the next
//! update, so the query counts reported in traces are the true oracle
//! complexity of a run.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod oracle;
mod sampler;
mod vector;

pub mod operators;
pub mod solvers;
pub mod verify;

pub use error::{Error, Result};
pub use operators::{OperatorKind, OperatorSpec, Parity, Region};
pub use oracle::{CountedOperator, Residual};
pub use sampler::DomainSampler;
pub use solvers::{
    HaltMode, IterationTrace, RunEvents, RunResult, SolverConfig, Termination, TraceRecord,
};
pub use vector::{combine, norm, NormKind, RealVector};
