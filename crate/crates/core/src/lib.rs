//! Algebraic basis functions for the one-dimensional wave equation
//! `u'' + k²(x) u = 0`.
//!
//! The crate is organised around a handful of modules:
//!
//! - [`profiles`]: potentials and permittivity profiles, the wavenumber
//!   function `k²(x; E)`, turning points and the quadratures of `k²` and `k`.
//! - [`bases`]: the algebraic pair `C(x) = cos√(x∫₀ˣk²)`,
//!   `S(x) = x·sinc√(x∫₀ˣk²)`, the WKB pair, the simple WKB cosine and the
//!   Airy-improved pair.
//! - [`dtmm`]: the complex-plane 4×4 differential transfer matrix.
//! - [`spectra`]: closed-form and root-found bound-state spectra.
//! - [`bloch`]: Bloch dispersion of periodic media and the homogenization limit.
//! - [`oracle`]: an independent Numerov shooting eigensolver and RK4 integrator.
//! - [`cli`]: the table-producing commands behind the `wavebasis` binary.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod bases;
pub mod bloch;
pub mod cli;
pub mod dtmm;
mod error;
pub mod oracle;
pub mod profiles;
pub mod quadrature;
pub mod roots;
pub mod special;
pub mod spectra;

pub use error::{Result, WaveError};
