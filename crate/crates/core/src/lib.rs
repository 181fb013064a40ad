//! Photon-number correlations in four-mode interferometers: Fock-space
//! states, beamsplitter networks, correlation amplitudes, Bell and
//! stochastic-field bounds, homodyne setups and classical Monte Carlo.

pub mod classical;
pub mod cli;
pub mod correlation;
pub mod error;
pub mod fock;
pub mod homodyne;
pub mod inequalities;
pub mod optics;
pub mod zoo;

pub use error::{Error, Result};
pub use fock::{MixedState, ModeLayout, MomentSpec, MultiModeState, StateLike};
