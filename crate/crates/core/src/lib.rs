//! Increasing continuous solutions of the functional equation
//!
//! ```text
//! φ(x) = Σ_{n=0}^{N} φ(f_n(x)) - Σ_{n=1}^{N} φ(f_n(0)),   x ∈ [0,1],
//! ```
//!
//! for probabilistic iterated function systems on the unit interval.
//!
//! The distinguished solution is the distribution function `φ(x) = μ([0,x])`
//! of the invariant measure `μ` of the system. This crate evaluates it with
//! a certified one-sided error bound, checks the equation numerically,
//! classifies the solution for similitude systems and cross-validates
//! everything against a seeded chaos-game sampler.
//!
//! ```
//! use ifs_cdf::{ifs::IfsSystem, measure::phi_eval};
//!
//! let system = IfsSystem::similitudes(&[0.5, 0.5], vec![0.3, 0.7]).unwrap();
//! let phi = phi_eval(&system, 0.625, 1e-12).unwrap();
//! assert!((phi.value - 0.363).abs() < 1e-15);
//! ```
//!
//! Modules:
//! - [`ifs`]: maps, systems, cylinder cells and digit expansions.
//! - [`measure`]: cylinder masses and CDF evaluation.
//! - [`analysis`]: residuals, classification, integrals, the extension to
//!   the real line and the linear span of the binary family `φ_p`.
//! - [`mc`]: chaos-game sampling and Kolmogorov–Smirnov distances.
//! - [`cli`]: configuration files and the command-line front end.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod ifs;
pub mod mc;
pub mod measure;

pub use error::{IfsError, Result};
pub use ifs::{validate_system, ContractionMap, DigitString, IfsSystem, MapKind};
pub use measure::{CdfValue, DEFAULT_MAX_DEPTH, DEFAULT_TOL};
