//! Output-channel photon-number correlators, the normalized correlation E
//! and the correlation amplitudes (A₁, A₂, ξ, ζ).
//!
//! Two independent routes compute the correlators:
//!
//! * [`Backend::Evolution`] pushes the state through the phase shifters and
//!   beamsplitters and takes number-product moments of the outputs.
//! * [`Backend::Expansion`] writes n̂_{c/d,k} = ½(n̂_a + n̂_b ± â†b̂ e^{iθ} ± h.c.)
//!   and combines the 16 input-mode moments, which do not depend on the phases.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{StateLike};
use crate::optics::{beamsplitter, phase_shift, PhaseSetting, FOUR_MODES};

/// Raw coincidence denominator below which E and A_k are undefined.
pub const COINCIDENCE_EPS: f64 = 1e-12;

/// Largest negative roundoff (per unit of total coincidence) clipped to zero.
pub const NEGATIVE_CLIP: f64 = 1e-12;

/// Tolerance between the two backends.
pub const BACKEND_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Expansion,
    Evolution,
}

/// ⟨n̂_{c₁}n̂_{c₂}⟩, ⟨n̂_{c₁}n̂_{d₂}⟩, ⟨n̂_{d₁}n̂_{c₂}⟩, ⟨n̂_{d₁}n̂_{d₂}⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutputCorrelators {
    pub cc: f64,
    pub cd: f64,
    pub dc: f64,
    pub dd: f64,
}

impl OutputCorrelators {
    fn clipped(raw: [f64; 4]) -> Result<Self> {
        let scale = raw.iter().map(|v| v.abs()).sum::<f64>().max(1.0);
        let mut out = [0.0; 4];
        for (o, &v) in out.iter_mut().zip(&raw) {
            if v < -NEGATIVE_CLIP * scale {
                return Err(Error::NegativeCorrelator(v));
            }
            *o = v.max(0.0);
        }
        Ok(OutputCorrelators {
            cc: out[0],
            cd: out[1],
            dc: out[2],
            dd: out[3],
        })
    }

    /// ⟨Ŝ₁Ŝ₂⟩.
    pub fn total(&self) -> f64 {
        self.cc + self.cd + self.dc + self.dd
    }

    /// ⟨D̂₁D̂₂⟩.
    pub fn difference(&self) -> f64 {
        self.cc - self.cd - self.dc + self.dd
    }

    pub fn e(&self) -> Result<f64> {
        let s = self.total();
        if s <= COINCIDENCE_EPS {
            return Err(Error::ZeroCoincidence(s));
        }
        Ok(self.difference() / s)
    }

    pub fn max_abs_diff(&self, other: &OutputCorrelators) -> f64 {
        [
            self.cc - other.cc,
            self.cd - other.cd,
            self.dc - other.dc,
            self.dd - other.dd,
        ]
        .iter()
        .fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Correlation amplitudes and their phases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CorrelationAmplitudes {
    pub a1: f64,
    pub a2: f64,
    pub xi: f64,
    pub zeta: f64,
}

impl CorrelationAmplitudes {
    pub fn new(a1: f64, a2: f64, xi: f64, zeta: f64) -> Self {
        CorrelationAmplitudes { a1, a2, xi, zeta }
    }

    /// A = A₁ + A₂.
    pub fn total(&self) -> f64 {
        self.a1 + self.a2
    }

    pub fn sum_sq(&self) -> f64 {
        self.a1 * self.a1 + self.a2 * self.a2
    }
}

// side-k operators: n̂_a, n̂_b, â†b̂, âb̂†  as (a-exponents, b-exponents)
const SIDE_OPS: [((u32, u32), (u32, u32)); 4] = [((1, 1), (0, 0)), ((0, 0), (1, 1)), ((1, 0), (0, 1)), ((0, 1), (1, 0))];

/// The 16 moments ⟨X_i Y_j⟩ with X_i, Y_j ∈ {n̂_a, n̂_b, â†b̂, âb̂†} on sides 1, 2.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InputMoments {
    m: [[C64; 4]; 4],
}

impl InputMoments {
    pub fn of<S: StateLike + ?Sized>(state: &S) -> Result<Self> {
        state.layout().expect_labels(&FOUR_MODES)?;
        let mut m = [[C64::new(0.0, 0.0); 4]; 4];
        for (i, &(a1, b1)) in SIDE_OPS.iter().enumerate() {
            for (j, &(a2, b2)) in SIDE_OPS.iter().enumerate() {
                // layout order a1, b1, a2, b2
                let ops = [(0, a1.0, a1.1), (1, b1.0, b1.1), (2, a2.0, a2.1), (3, b2.0, b2.1)];
                let ops: Vec<_> = ops.into_iter().filter(|&(_, p, q)| p + q > 0).collect();
                m[i][j] = state.moment_indexed(&ops);
            }
        }
        Ok(InputMoments { m })
    }

    /// ⟨(n̂_{a₁}+n̂_{b₁})(n̂_{a₂}+n̂_{b₂})⟩.
    pub fn denominator(&self) -> f64 {
        (self.m[0][0] + self.m[0][1] + self.m[1][0] + self.m[1][1]).re
    }

    /// ⟨â₁†b̂₁â₂b̂₂†⟩, the phase-difference moment.
    pub fn difference_moment(&self) -> C64 {
        self.m[2][3]
    }

    /// ⟨â₁†b̂₁â₂†b̂₂⟩, the phase-sum moment.
    pub fn sum_moment(&self) -> C64 {
        self.m[2][2]
    }

    pub fn correlators(&self, phases: PhaseSetting) -> Result<OutputCorrelators> {
        let coeffs = |theta: f64, sign: f64| {
            let e = C64::from_polar(1.0, theta);
            [C64::new(1.0, 0.0), C64::new(1.0, 0.0), e * sign, e.conj() * sign]
        };
        let combine = |u: [C64; 4], v: [C64; 4]| -> f64 {
            let acc: C64 = u
                .iter()
                .zip(&self.m)
                .flat_map(|(ui, row)| v.iter().zip(row).map(move |(vj, m)| ui * vj * m))
                .sum();
            0.25 * acc.re
        };
        let c1 = coeffs(phases.theta1, 1.0);
        let d1 = coeffs(phases.theta1, -1.0);
        let c2 = coeffs(phases.theta2, 1.0);
        let d2 = coeffs(phases.theta2, -1.0);
        OutputCorrelators::clipped([combine(c1, c2), combine(c1, d2), combine(d1, c2), combine(d1, d2)])
    }

    pub fn amplitudes(&self) -> Result<CorrelationAmplitudes> {
        let den = self.denominator();
        if den <= COINCIDENCE_EPS {
            return Err(Error::ZeroCoincidence(den));
        }
        let n1 = self.difference_moment();
        let n2 = self.sum_moment();
        Ok(CorrelationAmplitudes {
            a1: 2.0 * n1.norm() / den,
            a2: 2.0 * n2.norm() / den,
            xi: moment_phase(n1, den),
            zeta: moment_phase(n2, den),
        })
    }
}

/// arg of a moment, with vanishing moments assigned phase 0.
fn moment_phase(z: C64, den: f64) -> f64 {
    if z.norm() <= 1e-14 * den {
        0.0
    } else {
        z.arg()
    }
}

fn evolved_correlators<S: StateLike + ?Sized>(state: &S, phases: PhaseSetting) -> Result<OutputCorrelators> {
    state.layout().expect_labels(&FOUR_MODES)?;
    let mut raw = [0.0; 4];
    for (w, s) in state.components() {
        let s = phase_shift(s, "b1", phases.theta1)?;
        let s = phase_shift(&s, "b2", phases.theta2)?;
        let s = beamsplitter(&s, "a1", "b1")?;
        let s = beamsplitter(&s, "a2", "b2")?;
        // after the beamsplitters slots a_k hold c_k and b_k hold d_k
        for (r, (x, y)) in raw.iter_mut().zip([(0, 2), (0, 3), (1, 2), (1, 3)]) {
            *r += w * s.moment_indexed(&[(x, 1, 1), (y, 1, 1)]).re;
        }
    }
    OutputCorrelators::clipped(raw)
}

pub fn output_correlators<S: StateLike + ?Sized>(
    state: &S,
    phases: PhaseSetting,
    backend: Backend,
) -> Result<OutputCorrelators> {
    match backend {
        Backend::Expansion => InputMoments::of(state)?.correlators(phases),
        Backend::Evolution => evolved_correlators(state, phases),
    }
}

/// Runs both backends and fails with [`Error::BackendMismatch`] if they
/// differ by more than [`BACKEND_TOL`].
pub fn checked_correlators<S: StateLike + ?Sized>(state: &S, phases: PhaseSetting) -> Result<OutputCorrelators> {
    let a = output_correlators(state, phases, Backend::Expansion)?;
    let b = output_correlators(state, phases, Backend::Evolution)?;
    let diff = a.max_abs_diff(&b);
    if diff > BACKEND_TOL {
        return Err(Error::BackendMismatch(diff));
    }
    Ok(b)
}

pub fn correlation_e<S: StateLike + ?Sized>(state: &S, phases: PhaseSetting, backend: Backend) -> Result<f64> {
    output_correlators(state, phases, backend)?.e()
}

/// E at raw phases (θ₁, θ₂).
pub fn evaluate_e<S: StateLike + ?Sized>(state: &S, theta1: f64, theta2: f64, backend: Backend) -> Result<f64> {
    correlation_e(state, PhaseSetting::new(theta1, theta2)?, backend)
}

pub fn amplitudes<S: StateLike + ?Sized>(state: &S) -> Result<CorrelationAmplitudes> {
    InputMoments::of(state)?.amplitudes()
}

/// A₁cos(θ₁−θ₂+ξ) + A₂cos(θ₁+θ₂+ζ).
pub fn predict_e(amps: &CorrelationAmplitudes, phases: PhaseSetting) -> f64 {
    amps.a1 * (phases.theta1 - phases.theta2 + amps.xi).cos() + amps.a2 * (phases.theta1 + phases.theta2 + amps.zeta).cos()
}

/// Largest deviation between the computed E and the two-cosine prediction
/// over a uniform `grid_size`² phase grid.
pub fn sinusoid_residual<S: StateLike + Sync + ?Sized>(state: &S, grid_size: usize, backend: Backend) -> Result<f64> {
    if grid_size < 4 {
        return Err(Error::InvalidParams(format!("grid size {grid_size} < 4")));
    }
    let moments = InputMoments::of(state)?;
    let amps = moments.amplitudes()?;
    let step = TAU / grid_size as f64;
    let points: Vec<(usize, usize)> = (0..grid_size).flat_map(|i| (0..grid_size).map(move |j| (i, j))).collect();
    let residuals = points
        .par_iter()
        .map(|&(i, j)| {
            let phases = PhaseSetting::new(i as f64 * step, j as f64 * step)?;
            let e = match backend {
                Backend::Expansion => moments.correlators(phases)?.e()?,
                Backend::Evolution => evolved_correlators(state, phases)?.e()?,
            };
            Ok((e - predict_e(&amps, phases)).abs())
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(residuals.into_iter().fold(0.0, f64::max))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EprVerdict {
    pub is_epr: bool,
    pub amplitudes: CorrelationAmplitudes,
    /// Phases at which cross-side coincidences vanish (E = +1).
    pub phases: Option<PhaseSetting>,
    /// Correlators at `phases`.
    pub witness: Option<OutputCorrelators>,
}

impl EprVerdict {
    /// Shifting θ₁ by π flips both cosines: E = −1 with cc = dd = 0.
    pub fn anti_phases(&self) -> Option<PhaseSetting> {
        self.phases
            .map(|p| PhaseSetting::new(p.theta1 + PI, p.theta2).expect("finite phases"))
    }
}

/// Decide whether the state is an EPR state: A₁ + A₂ = 1 within `tol`, and
/// the phases solving θ₁−θ₂+ξ ≡ 0, θ₁+θ₂+ζ ≡ 0 really make the cross-side
/// coincidences vanish (relative to ⟨Ŝ₁Ŝ₂⟩).
pub fn epr_check<S: StateLike + ?Sized>(state: &S, tol: f64) -> Result<EprVerdict> {
    let moments = InputMoments::of(state)?;
    let amps = moments.amplitudes()?;
    if (amps.total() - 1.0).abs() > tol {
        return Ok(EprVerdict {
            is_epr: false,
            amplitudes: amps,
            phases: None,
            witness: None,
        });
    }
    // a vanishing amplitude leaves its constraint vacuous
    let (t1, t2) = if amps.a1 <= tol {
        (-amps.zeta, 0.0)
    } else if amps.a2 <= tol {
        (-amps.xi, 0.0)
    } else {
        (-(amps.xi + amps.zeta) / 2.0, (amps.xi - amps.zeta) / 2.0)
    };
    let phases = PhaseSetting::new(t1, t2)?;
    let witness = moments.correlators(phases)?;
    let cross = witness.cd + witness.dc;
    Ok(EprVerdict {
        is_epr: cross <= tol * witness.total(),
        amplitudes: amps,
        phases: Some(phases),
        witness: Some(witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{ModeLayout, MultiModeState};

    fn parallel_pair() -> MultiModeState {
        let l = ModeLayout::new(FOUR_MODES, 2).unwrap();
        MultiModeState::from_terms(l, [(&[1u32, 0, 1, 0][..], C64::new(1.0, 0.0)), (&[0, 1, 0, 1][..], C64::new(1.0, 0.0))])
            .unwrap()
    }

    #[test]
    fn vacuum_has_no_coincidences() {
        let v = MultiModeState::vacuum(ModeLayout::new(FOUR_MODES, 2).unwrap());
        for backend in [Backend::Expansion, Backend::Evolution] {
            let c = output_correlators(&v, PhaseSetting::zero(), backend).unwrap();
            assert_eq!(c.total(), 0.0);
            assert!(matches!(correlation_e(&v, PhaseSetting::zero(), backend), Err(Error::ZeroCoincidence(_))));
        }
        assert!(matches!(amplitudes(&v), Err(Error::ZeroCoincidence(_))));
    }

    #[test]
    fn wrong_layout_rejected() {
        let s = MultiModeState::vacuum(ModeLayout::new(["a1", "a2"], 1).unwrap());
        assert!(matches!(amplitudes(&s), Err(Error::WrongLayout { .. })));
    }

    #[test]
    fn entangled_correlators_at_zero_phase() {
        let s = parallel_pair();
        for backend in [Backend::Expansion, Backend::Evolution] {
            let c = output_correlators(&s, PhaseSetting::zero(), backend).unwrap();
            assert!(c.cd.abs() < 1e-14 && c.dc.abs() < 1e-14, "{c:?}");
            assert!((c.cc + c.dd - 1.0).abs() < 1e-14);
            assert!((c.e().unwrap() - 1.0).abs() < 1e-14);
        }
        let anti = PhaseSetting::new(PI, 0.0).unwrap();
        assert!((correlation_e(&s, anti, Backend::Evolution).unwrap() + 1.0).abs() < 1e-14);
    }

    #[test]
    fn entangled_amplitudes() {
        let a = amplitudes(&parallel_pair()).unwrap();
        assert!(a.a1.abs() < 1e-15);
        assert!((a.a2 - 1.0).abs() < 1e-15);
        assert_eq!(a.zeta, 0.0);
        assert_eq!(a.xi, 0.0);
    }

    #[test]
    fn predict_e_examples() {
        let p = |a, b| PhaseSetting::new(a, b).unwrap();
        let amps = CorrelationAmplitudes::new(1.0, 0.0, 0.0, 0.0);
        assert!((predict_e(&amps, p(0.7, 0.7)) - 1.0).abs() < 1e-15);
        let amps = CorrelationAmplitudes::new(0.0, 1.0, 0.0, 0.0);
        assert!((predict_e(&amps, p(PI / 2.0, PI / 2.0)) + 1.0).abs() < 1e-15);
        let amps = CorrelationAmplitudes::new(0.5, 0.5, 0.0, 0.0);
        assert!((predict_e(&amps, p(0.0, 0.0)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn residual_small_for_entangled() {
        assert!(sinusoid_residual(&parallel_pair(), 8, Backend::Evolution).unwrap() < 1e-9);
        assert!(sinusoid_residual(&parallel_pair(), 3, Backend::Expansion).is_err());
    }

    #[test]
    fn epr_verdict_for_entangled() {
        let v = epr_check(&parallel_pair(), 1e-9).unwrap();
        assert!(v.is_epr);
        let w = v.witness.unwrap();
        assert!(w.cd < 1e-12 && w.dc < 1e-12);
        let anti = output_correlators(&parallel_pair(), v.anti_phases().unwrap(), Backend::Evolution).unwrap();
        assert!(anti.cc < 1e-12 && anti.dd < 1e-12);
    }

    #[test]
    fn product_state_not_epr() {
        // |1⟩_{a1}|1⟩_{a2}: A₁ = A₂ = 0
        let l = ModeLayout::new(FOUR_MODES, 2).unwrap();
        let s = MultiModeState::fock(l, &[1, 0, 1, 0]).unwrap();
        let v = epr_check(&s, 1e-9).unwrap();
        assert!(!v.is_epr);
        assert!(v.phases.is_none());
        let e = correlation_e(&s, PhaseSetting::zero(), Backend::Evolution).unwrap();
        assert!(e.abs() < 1e-14);
    }

    #[test]
    fn amplitudes_phase_follow_b_phase() {
        // a phase on b₂ before the network rotates ζ and ξ in opposite directions
        let s = parallel_pair();
        let shifted = phase_shift(&s, "b2", 0.4).unwrap();
        let a = amplitudes(&shifted).unwrap();
        assert!((a.zeta - 0.4).abs() < 1e-14);
        let e = correlation_e(&shifted, PhaseSetting::zero(), Backend::Evolution).unwrap();
        assert!((e - 0.4f64.cos()).abs() < 1e-14);
    }
}
