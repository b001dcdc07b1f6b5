//! Compiler and exact simulator for symmetry-based singlet-triplet pulse
//! sequences on spin-1/2 pairs.

pub mod engine;
pub mod error;
pub mod exact;
pub mod scalar;
pub mod sequence;
pub mod spinops;
pub mod symmetry;
pub mod experiments;

pub use error::{Error, Result};
pub use exact::Exact;
pub use scalar::Real;

pub type Operator = spinops::Operator<f64>;
pub type Operator32 = spinops::Operator<f32>;
pub type DensityMatrix = engine::DensityMatrix<f64>;
pub type SpinSystem = engine::SpinSystem<f64>;
pub type SpinSystem32 = engine::SpinSystem<f32>;
pub type ExecutionContext = engine::ExecutionContext<f64>;
pub type ExecutionContext32 = engine::ExecutionContext<f32>;
