//! Local-oscillator setup: coherent oscillators |β_k e^{iθ_k}⟩ fill channels
//! b₁, b₂ while the signal occupies a₁, a₂.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{coherent_cutoff, MixedState, ModeLayout, MomentSpec, MultiModeState, StateLike};
use crate::optics::FOUR_MODES;

/// Signal-arm labels expected on two-mode inputs.
pub const SIGNAL_MODES: [&str; 2] = ["a1", "a2"];

/// Mean photon numbers and ⟨n̂₁n̂₂⟩ below this count as zero.
pub const INTENSITY_EPS: f64 = 1e-12;

/// Amplitudes of the combined signal-oscillator state below this modulus are
/// dropped; the discarded weight stays far below the coherent tail tolerance.
pub const NETWORK_PRUNE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoherenceFunctions {
    pub g11: C64,
    pub g20: C64,
    pub g22: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LoConfig {
    pub beta1: f64,
    pub beta2: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl LoConfig {
    pub fn new(beta1: f64, beta2: f64, theta1: f64, theta2: f64) -> Result<Self> {
        if !(beta1 >= 0.0 && beta2 >= 0.0) || ![beta1, beta2, theta1, theta2].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParams(format!("oscillator amplitudes ({beta1}, {beta2}) must be finite and ≥ 0")));
        }
        Ok(LoConfig {
            beta1,
            beta2,
            theta1,
            theta2,
        })
    }
}

struct SignalMoments {
    n1: f64,
    n2: f64,
    n1n2: f64,
    a1d_a2: C64,
    a1d_a2d: C64,
}

fn signal_moments<S: StateLike + ?Sized>(state_a: &S) -> Result<SignalMoments> {
    state_a.layout().expect_labels(&SIGNAL_MODES)?;
    let m = |f: &[(&str, u32, u32)]| -> Result<C64> { state_a.normal_moment(&MomentSpec::new(f.iter().copied())?) };
    Ok(SignalMoments {
        n1: m(&[("a1", 1, 1)])?.re,
        n2: m(&[("a2", 1, 1)])?.re,
        n1n2: m(&[("a1", 1, 1), ("a2", 1, 1)])?.re,
        a1d_a2: m(&[("a1", 1, 0), ("a2", 0, 1)])?,
        a1d_a2d: m(&[("a1", 1, 0), ("a2", 1, 0)])?,
    })
}

/// g^{(1,1)}, g^{(2,0)}, g^{(2,2)} of the signal arms.
pub fn coherence_functions<S: StateLike + ?Sized>(state_a: &S) -> Result<CoherenceFunctions> {
    let m = signal_moments(state_a)?;
    if m.n1 <= INTENSITY_EPS {
        return Err(Error::ZeroIntensity("a1".into()));
    }
    if m.n2 <= INTENSITY_EPS {
        return Err(Error::ZeroIntensity("a2".into()));
    }
    let norm = (m.n1 * m.n2).sqrt();
    Ok(CoherenceFunctions {
        g11: m.a1d_a2 / norm,
        g20: m.a1d_a2d / norm,
        g22: (m.n1n2 / (m.n1 * m.n2)).max(0.0),
    })
}

/// Real oscillator amplitudes with β₁β₂ = √⟨n̂₁n̂₂⟩ and β₁/β₂ = √(⟨n̂₁⟩/⟨n̂₂⟩).
pub fn optimal_lo<S: StateLike + ?Sized>(state_a: &S) -> Result<(f64, f64)> {
    let m = signal_moments(state_a)?;
    if m.n1 <= INTENSITY_EPS {
        return Err(Error::ZeroIntensity("a1".into()));
    }
    if m.n2 <= INTENSITY_EPS {
        return Err(Error::ZeroIntensity("a2".into()));
    }
    if m.n1n2 <= INTENSITY_EPS {
        return Err(Error::DegenerateLo(m.n1n2));
    }
    let product = m.n1n2.sqrt();
    let ratio = (m.n1 / m.n2).sqrt();
    Ok(((product * ratio).sqrt(), (product / ratio).sqrt()))
}

/// A₁ = |g^{(1,1)}|/(1+√g^{(2,2)}), A₂ = |g^{(2,0)}|/(1+√g^{(2,2)}).
pub fn amplitudes_from_g(g: &CoherenceFunctions) -> (f64, f64) {
    let den = 1.0 + g.g22.max(0.0).sqrt();
    (g.g11.norm() / den, g.g20.norm() / den)
}

fn oscillators(lo: &LoConfig) -> Result<MultiModeState> {
    let b1 = MultiModeState::coherent(
        ModeLayout::new(["b1"], coherent_cutoff(lo.beta1))?,
        &[C64::from_polar(lo.beta1, lo.theta1)],
    )?;
    let b2 = MultiModeState::coherent(
        ModeLayout::new(["b2"], coherent_cutoff(lo.beta2))?,
        &[C64::from_polar(lo.beta2, lo.theta2)],
    )?;
    b1.tensor(&b2)
}

/// ρ_a ⊗ |β₁e^{iθ₁}⟩⟨·| ⊗ |β₂e^{iθ₂}⟩⟨·| on (a1, b1, a2, b2).
pub fn homodyne_network_state(state_a: &MultiModeState, lo: &LoConfig) -> Result<MultiModeState> {
    state_a.layout().expect_labels(&SIGNAL_MODES)?;
    state_a.tensor(&oscillators(lo)?)?.pruned(NETWORK_PRUNE)?.reorder(&FOUR_MODES)
}

/// [`homodyne_network_state`] applied to every component of a mixture.
pub fn homodyne_network_mixed<S: StateLike + ?Sized>(state_a: &S, lo: &LoConfig) -> Result<MixedState> {
    state_a.layout().expect_labels(&SIGNAL_MODES)?;
    let osc = oscillators(lo)?;
    state_a
        .to_mixed()
        .map(|s| s.tensor(&osc)?.pruned(NETWORK_PRUNE)?.reorder(&FOUR_MODES))
}
