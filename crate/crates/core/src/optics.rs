//! Phase shifters, 50/50 beamsplitters and the splitting networks.
//!
//! Beamsplitter convention, used everywhere:
//!
//! ```text
//! ĉ = (â + b̂)/√2,   d̂ = (−â + b̂)/√2
//! ```
//!
//! The output mode ĉ reuses the slot of the first input mode and d̂ the slot of
//! the second. A coherent input (α, 0) therefore leaves as (α/√2, −α/√2).

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_1_SQRT_2, TAU};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::fock::{ModeLayout, MixedState, MultiModeState, Occupation, StateLike};

/// Labels of the four interferometer input channels, in layout order.
pub const FOUR_MODES: [&str; 4] = ["a1", "b1", "a2", "b2"];

/// Phase delays (θ₁, θ₂) inserted into channels b₁ and b₂.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseSetting {
    pub theta1: f64,
    pub theta2: f64,
}

impl PhaseSetting {
    /// Canonicalizes both phases into [0, 2π).
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        if !theta1.is_finite() || !theta2.is_finite() {
            return Err(Error::InvalidParams("phase must be finite".into()));
        }
        Ok(PhaseSetting {
            theta1: canonical_angle(theta1),
            theta2: canonical_angle(theta2),
        })
    }

    pub fn zero() -> Self {
        PhaseSetting { theta1: 0.0, theta2: 0.0 }
    }
}

pub fn canonical_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// Multiply each ket by e^{i n θ}, n the occupation of `mode`.
pub fn phase_shift(state: &MultiModeState, mode: &str, theta: f64) -> Result<MultiModeState> {
    let m = state.layout().index_of(mode)?;
    let amps = state
        .iter()
        .map(|(k, c)| (k.clone(), c * C64::from_polar(1.0, k[m] as f64 * theta)))
        .collect();
    Ok(MultiModeState::from_map_unchecked(state.layout().clone(), amps))
}

/// Column-major unitary block for total photon number N: entry
/// `[m * (N + 1) + p]` is ⟨p, N−p|_{cd} |m, N−m⟩_{ab}.
type Sector = Arc<[f64]>;

fn sector_cache() -> &'static RwLock<Vec<Sector>> {
    static CACHE: OnceLock<RwLock<Vec<Sector>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![Arc::from(vec![1.0])]))
}

/// Apply (x c† + y d†)/√2 to a sector-(N−1) vector indexed by c-occupation.
fn raise(prev: &[f64], x: f64, y: f64) -> Vec<f64> {
    let n_prev = prev.len() - 1;
    let mut out = vec![0.0; prev.len() + 1];
    for (p, &v) in prev.iter().enumerate() {
        let q = n_prev - p;
        out[p + 1] += x * v * ((p + 1) as f64).sqrt();
        out[p] += y * v * ((q + 1) as f64).sqrt();
    }
    for o in &mut out {
        *o *= FRAC_1_SQRT_2;
    }
    out
}

fn build_sector(prev: &[f64], n: usize) -> Vec<f64> {
    let dim_prev = n;
    let col = |m: usize| &prev[m * dim_prev..(m + 1) * dim_prev];
    let mut block = Vec::with_capacity((n + 1) * (n + 1));
    // |0, N⟩ = b̂†|0, N−1⟩/√N with b̂† = (ĉ† + d̂†)/√2
    let mut first = raise(col(0), 1.0, 1.0);
    first.iter_mut().for_each(|v| *v /= (n as f64).sqrt());
    block.extend_from_slice(&first);
    // |m, N−m⟩ = â†|m−1, N−m⟩/√m with â† = (ĉ† − d̂†)/√2
    for m in 1..=n {
        let mut c = raise(col(m - 1), 1.0, -1.0);
        c.iter_mut().for_each(|v| *v /= (m as f64).sqrt());
        block.extend_from_slice(&c);
    }
    block
}

/// Unitary block of the beamsplitter on the N-photon sector, built once and
/// cached for the process.
pub fn sector_matrix(n: usize) -> Sector {
    {
        let cache = sector_cache().read().expect("sector cache poisoned");
        if let Some(s) = cache.get(n) {
            return s.clone();
        }
    }
    let mut cache = sector_cache().write().expect("sector cache poisoned");
    while cache.len() <= n {
        let k = cache.len();
        let next = build_sector(&cache[k - 1], k);
        cache.push(Arc::from(next));
    }
    cache[n].clone()
}

/// 50/50 beamsplitter between `mode_a` and `mode_b` (see module docs).
pub fn beamsplitter(state: &MultiModeState, mode_a: &str, mode_b: &str) -> Result<MultiModeState> {
    if mode_a == mode_b {
        return Err(Error::IdenticalModes(mode_a.to_string()));
    }
    let layout = state.layout();
    let ia = layout.index_of(mode_a)?;
    let ib = layout.index_of(mode_b)?;

    // group kets by (spectator occupations, photons in the pair)
    let mut groups: BTreeMap<(Occupation, u16), Vec<(u16, C64)>> = BTreeMap::new();
    for (k, c) in state.iter() {
        let mut rest = k.clone();
        rest[ia] = 0;
        rest[ib] = 0;
        groups.entry((rest, k[ia] + k[ib])).or_default().push((k[ia], *c));
    }

    let max_n = groups.keys().map(|(_, n)| *n as usize).max().unwrap_or(0);
    let sectors: Vec<Sector> = (0..=max_n).map(sector_matrix).collect();

    let mut amps = BTreeMap::new();
    let mut out = Vec::new();
    for ((rest, n), inputs) in groups {
        let n = n as usize;
        let block = &sectors[n];
        out.clear();
        out.resize(n + 1, C64::new(0.0, 0.0));
        for (m, c) in inputs {
            let col = &block[m as usize * (n + 1)..(m as usize + 1) * (n + 1)];
            for (o, &u) in out.iter_mut().zip(col) {
                *o += c * u;
            }
        }
        for (p, &c) in out.iter().enumerate() {
            if c != C64::new(0.0, 0.0) {
                let mut key = rest.clone();
                key[ia] = p as u16;
                key[ib] = (n - p) as u16;
                amps.insert(key, c);
            }
        }
    }
    Ok(MultiModeState::from_map_unchecked(layout.clone(), amps))
}

fn split_pure(input: &MultiModeState) -> Result<MultiModeState> {
    let a1 = input.relabel(&["a1"])?;
    let vac = MultiModeState::vacuum(ModeLayout::new(["b1", "a2", "b2"], 0)?);
    let s = a1.tensor(&vac)?;
    let s = beamsplitter(&s, "a1", "a2")?;
    let s = beamsplitter(&s, "a1", "b1")?;
    beamsplitter(&s, "a2", "b2")
}

/// Mix a single-mode state with vacuum, then mix each output with vacuum
/// again: three beamsplitters feeding channels (a1, b1, a2, b2).
pub fn epr_split_network<S: StateLike>(input: &S) -> Result<MixedState> {
    if input.layout().len() != 1 {
        return Err(Error::WrongLayout {
            expected: vec!["<single mode>".into()],
            found: input.layout().labels().to_vec(),
        });
    }
    input.to_mixed().map(split_pure)
}

/// Two independent photons, each split against vacuum: photon one over
/// (a1, a2), photon two over (b1, b2).
pub fn two_photon_network() -> Result<MultiModeState> {
    let layout = ModeLayout::new(FOUR_MODES, 2)?;
    let s = MultiModeState::fock(layout, &[1, 1, 0, 0])?;
    let s = beamsplitter(&s, "a1", "a2")?;
    beamsplitter(&s, "b1", "b2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::MomentSpec;
    use std::f64::consts::PI;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn pair(cutoff: usize) -> ModeLayout {
        ModeLayout::new(["a", "b"], cutoff).unwrap()
    }

    #[test]
    fn phase_zero_is_identity() {
        let s = MultiModeState::coherent(pair(25), &[c(1.0), C64::new(0.3, -0.2)]).unwrap();
        assert_eq!(phase_shift(&s, "b", 0.0).unwrap(), s);
    }

    #[test]
    fn phase_pi_flips_single_photon() {
        let s = MultiModeState::fock(pair(1), &[0, 1]).unwrap();
        let t = phase_shift(&s, "b", PI).unwrap();
        assert!((t.amplitude(&[0, 1]) + c(1.0)).norm() < 1e-15);
        assert!(phase_shift(&s, "z", PI).is_err());
    }

    #[test]
    fn phase_rotates_coherent_amplitude() {
        let alpha = C64::new(0.7, 0.2);
        let theta = 1.1;
        let l = ModeLayout::new(["a"], 20).unwrap();
        let s = MultiModeState::coherent(l.clone(), &[alpha]).unwrap();
        let rotated = phase_shift(&s, "a", theta).unwrap();
        let expected = MultiModeState::coherent(l, &[alpha * C64::from_polar(1.0, theta)]).unwrap();
        assert!(rotated.fidelity(&expected).unwrap() > 1.0 - 1e-12);
        // ⟨â⟩ = α e^{iθ}
        let mean_a = rotated.normal_moment(&MomentSpec::new([("a", 0, 1)]).unwrap()).unwrap();
        assert!((mean_a - alpha * C64::from_polar(1.0, theta)).norm() < 1e-10);
    }

    #[test]
    fn beamsplitter_single_photon() {
        let s = MultiModeState::fock(pair(1), &[1, 0]).unwrap();
        let t = beamsplitter(&s, "a", "b").unwrap();
        assert!((t.amplitude(&[1, 0]) - c(FRAC_1_SQRT_2)).norm() < 1e-15);
        assert!((t.amplitude(&[0, 1]) + c(FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn beamsplitter_vacuum_invariant() {
        let s = MultiModeState::vacuum(pair(3));
        assert_eq!(beamsplitter(&s, "a", "b").unwrap(), s);
        assert_eq!(beamsplitter(&s, "a", "a"), Err(Error::IdenticalModes("a".into())));
    }

    #[test]
    fn beamsplitter_hong_ou_mandel() {
        let s = MultiModeState::fock(pair(2), &[1, 1]).unwrap();
        let t = beamsplitter(&s, "a", "b").unwrap();
        assert!(t.amplitude(&[1, 1]).norm() < 1e-15);
        assert!((t.amplitude(&[2, 0]).norm_sqr() - 0.5).abs() < 1e-14);
    }

    #[test]
    fn beamsplitter_transports_coherent_amplitude() {
        let alpha = C64::new(1.2, 0.4);
        let s = MultiModeState::coherent(pair(30), &[alpha, c(0.0)]).unwrap();
        let t = beamsplitter(&s, "a", "b").unwrap();
        let h = alpha * FRAC_1_SQRT_2;
        let expected = MultiModeState::coherent(pair(30), &[h, -h]).unwrap();
        assert!(t.fidelity(&expected).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn sector_blocks_are_orthogonal() {
        for n in 0..=30 {
            let u = sector_matrix(n);
            let d = n + 1;
            let mut worst: f64 = 0.0;
            for i in 0..d {
                for j in 0..d {
                    let dot: f64 = (0..d).map(|p| u[i * d + p] * u[j * d + p]).sum();
                    let target = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((dot - target).abs());
                }
            }
            assert!(worst < 1e-12, "sector {n}: {worst:e}");
        }
    }

    #[test]
    fn mach_zehnder_returns_input() {
        // U P U = P for P = π phase on the second arm, so U P U P = 1.
        let s = MultiModeState::from_terms(
            pair(3),
            [
                (&[1u32, 0][..], C64::new(0.3, 0.1)),
                (&[2, 1][..], C64::new(-0.5, 0.2)),
                (&[0, 3][..], C64::new(0.1, 0.7)),
            ],
        )
        .unwrap();
        let t = beamsplitter(&s, "a", "b").unwrap();
        let t = phase_shift(&t, "b", PI).unwrap();
        let t = beamsplitter(&t, "a", "b").unwrap();
        let t = phase_shift(&t, "b", PI).unwrap();
        assert!(t.fidelity(&s).unwrap() > 1.0 - 1e-12);
    }

    #[test]
    fn split_network_rejects_multimode() {
        let s = MultiModeState::vacuum(pair(1));
        assert!(matches!(epr_split_network(&s), Err(Error::WrongLayout { .. })));
    }

    #[test]
    fn split_network_quarter_intensity() {
        let l = ModeLayout::new(["x"], 3).unwrap();
        let input = MultiModeState::from_terms(l, [(&[1u32][..], c(1.0)), (&[3][..], C64::new(0.0, 2.0))]).unwrap();
        let n_in = input.mean_number("x").unwrap();
        let out = epr_split_network(&input).unwrap();
        for m in FOUR_MODES {
            assert!((out.mean_number(m).unwrap() - n_in / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn two_photon_network_amplitudes() {
        let s = two_photon_network().unwrap();
        assert_eq!(s.num_terms(), 4);
        for (_, a) in s.iter() {
            assert!((a.norm() - 0.5).abs() < 1e-14);
        }
        // both photons on one side: (a1, b1) or (a2, b2)
        let same_side = s.amplitude(&[1, 1, 0, 0]).norm_sqr() + s.amplitude(&[0, 0, 1, 1]).norm_sqr();
        assert!((same_side - 0.5).abs() < 1e-14);
    }

    #[test]
    fn canonical_angles() {
        let p = PhaseSetting::new(-PI / 2.0, 5.0 * PI).unwrap();
        assert!((p.theta1 - 1.5 * PI).abs() < 1e-12);
        assert!((p.theta2 - PI).abs() < 1e-12);
        assert!(canonical_angle(-1e-18) < TAU);
        assert!(PhaseSetting::new(f64::NAN, 0.0).is_err());
    }
}
