//! Single-excitation physics of a two-level emitter coupled to one site of a
//! semi-infinite coupled-resonator array.
//!
//! * [`params`]: physical configuration and lattice dispersion.
//! * [`analytic`]: semi-infinite closed forms and root finders for the
//!   scattering states, bound states outside the band and the bound state in
//!   the continuum.
//! * [`numeric`]: finite-truncation Hamiltonian and exact diagonalization,
//!   the independent check on every analytic result.
//! * [`dynamics`]: emission dynamics `P_e(t)` and long-time classification.
//! * [`phase_map`]: bound-state census over `(g, Δ_c)` grids.
//! * [`export`]: CSV/JSON output formats.

pub mod analytic;
pub mod dynamics;
pub mod error;
pub mod export;
pub mod numeric;
pub mod params;
pub mod phase_map;
pub mod root;

pub use error::{Error, Result};
pub use params::{dispersion, DispersionPoint, SystemParams};
