//! Quantum speed limits of one-dimensional nonlinear Schrödinger dynamics.
//!
//! * [`wave`]: periodic grids, wavefunctions and observables
//! * [`special`]: complete elliptic integrals and Jacobi `sn`
//! * [`dynamics`]: potentials, protocols and the split-step propagator
//! * [`qsl`]: the speed-limit functional `∫|ψ̇|² dx`, numerically and in
//!   closed form for scale-invariant driving
//! * [`square_well`]: nonlinear stationary states of the (expanding) box
//! * [`scaleinv`]: exact scale-invariant solutions and their verification
//! * [`par`]: batch evaluation, parallel when the `parallel` feature is on

pub mod dynamics;
pub mod error;
pub mod par;
pub mod qsl;
pub mod quad;
pub mod scaleinv;
pub mod special;
pub mod spectral;
pub mod square_well;
pub mod wave;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub use wave::{SpatialGrid, WaveFunction};
