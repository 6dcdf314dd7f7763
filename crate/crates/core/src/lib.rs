//! Block design mechanisms for locally private frequency estimation.
//!
//! A `(v, b, r, k, λ)` block design on `v` symbols gives an ε-LDP channel whose
//! output is one of its `b` blocks. Splitting the blocks into resolution classes
//! turns it into a mechanism with shared randomness `U` that only needs to send
//! a position within class `U`. The modules follow that pipeline:
//!
//! - [`designs`]: complete designs, affine geometries, Hadamard 3-designs,
//!   round robin tournaments, and a design verifier.
//! - [`resolutions`]: cyclic shift orbits, Baranyai partitions, parallel
//!   classes, and a resolution verifier.
//! - [`mechanisms`]: the channel, its decompositions, and LDP and marginal
//!   checks.
//! - [`estimation`]: the unbiased estimator, its risk, and Monte Carlo runs.
//! - [`analysis`]: optimal block sizes and communication costs.
//! - [`json`]: the interchange formats.
//!
//! ```
//! use bdldp::analysis::comm_cost;
//! use bdldp::mechanisms::decompose;
//! use bdldp::resolutions::cyclic_shift_resolution;
//! use bdldp::Mechanism;
//!
//! let (design, resolution) = cyclic_shift_resolution(4, 2)?;
//! let mech = Mechanism::new(design, 2f64.ln())?;
//! let split = decompose(&mech, &resolution)?;
//! assert!((comm_cost(&split) - 5.0 / 3.0).abs() < 1e-12);
//! # Ok::<(), bdldp::Error>(())
//! ```

pub mod analysis;
pub mod designs;
pub mod error;
pub mod estimation;
pub mod json;
pub mod mechanisms;
pub mod resolutions;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision block design mechanism.
pub type Mechanism = mechanisms::BlockDesignMechanism<f64>;
/// Single-precision block design mechanism.
pub type Mechanism32 = mechanisms::BlockDesignMechanism<f32>;
pub type Decomposition = mechanisms::DecomposedMechanism<f64>;
pub type Decomposition32 = mechanisms::DecomposedMechanism<f32>;
