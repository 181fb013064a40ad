//! Example states: entangled photon pairs, two independent photons, coherent
//! pairs, the split single photon and split Schrödinger cats, together with
//! the closed-form predictions for the cats.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use smallvec::smallvec;

use crate::error::{Error, Result};
use crate::fock::{coherent_cutoff, MixedState, ModeLayout, MultiModeState, Occupation, COHERENT_TAIL_TOL};
use crate::homodyne::{optimal_lo, CoherenceFunctions, LoConfig, SIGNAL_MODES};
use crate::optics::{beamsplitter, epr_split_network, phase_shift, two_photon_network, FOUR_MODES};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entangled {
    /// Photons in (a1, a2) or in (b1, b2); CLI name `eq28`.
    Parallel,
    /// Photons in (a1, b2) or in (b1, a2); CLI name `eq29`.
    Crossed,
}

pub fn entangled(variant: Entangled) -> MultiModeState {
    let (x, y): ([u32; 4], [u32; 4]) = match variant {
        Entangled::Parallel => ([1, 0, 1, 0], [0, 1, 0, 1]),
        Entangled::Crossed => ([1, 0, 0, 1], [0, 1, 1, 0]),
    };
    let one = C64::new(1.0, 0.0);
    MultiModeState::from_terms(ModeLayout::new(FOUR_MODES, 2).expect("fixed layout"), [(&x[..], one), (&y[..], one)])
        .expect("fixed state")
}

/// |α₁⟩_{a1} ⊗ |α₂⟩_{a2}, cut off by the coherent tail policy.
pub fn coherent_pair(alpha1: C64, alpha2: C64) -> Result<MultiModeState> {
    let total = (alpha1.norm_sqr() + alpha2.norm_sqr()).sqrt();
    let layout = ModeLayout::new(SIGNAL_MODES, coherent_cutoff(total))?;
    MultiModeState::coherent(layout, &[alpha1, alpha2])
}

/// (|1,0⟩ + |0,1⟩)/√2 on (a1, a2).
pub fn split_single_photon() -> MultiModeState {
    let one = C64::new(1.0, 0.0);
    MultiModeState::from_terms(
        ModeLayout::new(SIGNAL_MODES, 1).expect("fixed layout"),
        [(&[1u32, 0][..], one), (&[0, 1][..], one)],
    )
    .expect("fixed state")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatParams {
    pub alpha: C64,
    pub phi: f64,
}

impl CatParams {
    pub fn new(alpha: C64, phi: f64) -> Self {
        CatParams { alpha, phi }
    }

    /// e^{−4|α|²} cos φ, the overlap term every closed form depends on.
    pub fn overlap(&self) -> f64 {
        (-4.0 * self.alpha.norm_sqr()).exp() * self.phi.cos()
    }

    /// N = [2(1 + e^{−4|α|²} cos φ)]^{−1/2}.
    pub fn normalization(&self) -> Result<f64> {
        let x = 2.0 * (1.0 + self.overlap());
        if x <= 1e-300 {
            return Err(Error::CatDegenerate);
        }
        Ok(x.sqrt().recip())
    }

    /// Default cutoff: the coherent policy for the undivided amplitude √2|α|.
    pub fn default_cutoff(&self) -> usize {
        coherent_cutoff(std::f64::consts::SQRT_2 * self.alpha.norm())
    }
}

/// N(|α⟩|α⟩ + e^{iφ}|−α⟩|−α⟩) on (a1, a2), expanded directly in the Fock
/// basis up to `cutoff` total photons (default [`CatParams::default_cutoff`]).
/// The norm lost to truncation must stay below 1e-12.
pub fn split_cat(p: CatParams, cutoff: Option<usize>) -> Result<MultiModeState> {
    let cutoff = cutoff.unwrap_or_else(|| p.default_cutoff());
    let norm = p.normalization()?;
    let layout = ModeLayout::new(SIGNAL_MODES, cutoff)?;
    let rel = C64::from_polar(1.0, p.phi);
    let prefactor = norm * (-p.alpha.norm_sqr()).exp();
    // αⁿ/√n! for n ≤ cutoff
    let mut powers = vec![C64::new(1.0, 0.0); cutoff + 1];
    for n in 1..=cutoff {
        powers[n] = powers[n - 1] * p.alpha / (n as f64).sqrt();
    }
    let mut amps: BTreeMap<Occupation, C64> = BTreeMap::new();
    let mut kept = 0.0;
    for n1 in 0..=cutoff {
        for n2 in 0..=cutoff - n1 {
            let sign = if (n1 + n2) % 2 == 0 { 1.0 } else { -1.0 };
            let c = powers[n1] * powers[n2] * (C64::new(1.0, 0.0) + rel * sign) * prefactor;
            if c.norm_sqr() > 0.0 {
                kept += c.norm_sqr();
                amps.insert(smallvec![n1 as u16, n2 as u16], c);
            }
        }
    }
    let tail = (1.0 - kept).max(0.0);
    if tail >= COHERENT_TAIL_TOL {
        return Err(Error::CutoffTooSmall {
            cutoff,
            tail,
            tolerance: COHERENT_TAIL_TOL,
        });
    }
    let scale = kept.sqrt().recip();
    for c in amps.values_mut() {
        *c *= scale;
    }
    Ok(MultiModeState::from_map_unchecked(layout, amps))
}

/// Second construction of the split cat: the single-mode cat
/// N(|√2α⟩ + e^{iφ}|−√2α⟩) mixed with vacuum. The beamsplitter sends
/// (√2α, 0) to (α, −α); a π phase on a2 restores the (α, α) form.
pub fn split_cat_by_beamsplitter(p: CatParams, cutoff: Option<usize>) -> Result<MultiModeState> {
    let cutoff = cutoff.unwrap_or_else(|| p.default_cutoff());
    let big = p.alpha * std::f64::consts::SQRT_2;
    let layout = ModeLayout::new(["a1"], cutoff)?;
    let plus = MultiModeState::coherent(layout.clone(), &[big])?;
    let minus = MultiModeState::coherent(layout.clone(), &[-big])?;
    let rel = C64::from_polar(1.0, p.phi);
    let mut amps: BTreeMap<Occupation, C64> = BTreeMap::new();
    for (k, c) in plus.iter() {
        *amps.entry(k.clone()).or_default() += c;
    }
    for (k, c) in minus.iter() {
        *amps.entry(k.clone()).or_default() += c * rel;
    }
    let terms: Vec<(Vec<u32>, C64)> = amps.into_iter().map(|(k, c)| (vec![k[0] as u32], c)).collect();
    let cat = MultiModeState::from_terms(layout, terms.iter().map(|(k, c)| (k.as_slice(), *c)))?;
    let s = cat.tensor(&MultiModeState::vacuum(ModeLayout::new(["a2"], 0)?))?;
    let s = beamsplitter(&s, "a1", "a2")?;
    phase_shift(&s, "a2", PI)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CatPredictions {
    pub g: CoherenceFunctions,
    pub a1: f64,
    pub a2: f64,
    pub sum_sq: f64,
}

/// Closed forms for the split cat with x = e^{−4|α|²}cos φ:
/// g11 = 1, g20 = (1+x)/(1−x), g22 = g20², A₁,₂ = ½(1 ∓ x),
/// A₁² + A₂² = ½(1 + x²).
pub fn cat_predictions(p: CatParams) -> Result<CatPredictions> {
    let x = p.overlap();
    if (1.0 - x).abs() <= 1e-15 || (1.0 + x).abs() <= 1e-15 {
        return Err(Error::CatDegenerate);
    }
    let g20 = (1.0 + x) / (1.0 - x);
    Ok(CatPredictions {
        g: CoherenceFunctions {
            g11: C64::new(1.0, 0.0),
            g20: C64::new(g20, 0.0),
            g22: g20 * g20,
        },
        a1: 0.5 * (1.0 - x),
        a2: 0.5 * (1.0 + x),
        sum_sq: 0.5 * (1.0 + x * x),
    })
}

/// Zoo names accepted on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZooName {
    Parallel,
    Crossed,
    TwoPhoton,
    Coherent,
    SplitPhoton,
    SplitCat,
}

impl ZooName {
    pub const ALL: [ZooName; 6] = [
        ZooName::Parallel,
        ZooName::Crossed,
        ZooName::TwoPhoton,
        ZooName::Coherent,
        ZooName::SplitPhoton,
        ZooName::SplitCat,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ZooName::Parallel => "eq28",
            ZooName::Crossed => "eq29",
            ZooName::TwoPhoton => "two-photon",
            ZooName::Coherent => "coherent",
            ZooName::SplitPhoton => "split-photon",
            ZooName::SplitCat => "split-cat",
        }
    }
}

impl fmt::Display for ZooName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ZooName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ZooName::ALL
            .into_iter()
            .find(|z| z.as_str() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown zoo state `{s}`")))
    }
}

/// A four-mode state ready for the interferometer.
#[derive(Clone, Debug)]
pub struct ZooEntry {
    pub name: String,
    pub state: MixedState,
}

fn with_optimal_lo(name: String, signal: &MultiModeState) -> Result<ZooEntry> {
    let (b1, b2) = optimal_lo(signal)?;
    let lo = LoConfig::new(b1, b2, 0.0, 0.0)?;
    Ok(ZooEntry {
        name,
        state: crate::homodyne::homodyne_network_state(signal, &lo)?.into(),
    })
}

/// Four-mode states covering every construction: the entangled pairs, the
/// two-photon network, homodyne setups with optimal oscillators, the split
/// single photon with weak oscillators, and single-mode states split by the
/// three-beamsplitter network.
pub fn four_mode_catalog() -> Result<Vec<ZooEntry>> {
    let mut out = vec![
        ZooEntry {
            name: "eq28".into(),
            state: entangled(Entangled::Parallel).into(),
        },
        ZooEntry {
            name: "eq29".into(),
            state: entangled(Entangled::Crossed).into(),
        },
        ZooEntry {
            name: "two-photon".into(),
            state: two_photon_network()?.into(),
        },
    ];
    out.push(with_optimal_lo("coherent(1,1)+lo".into(), &coherent_pair(C64::new(1.0, 0.0), C64::new(1.0, 0.0))?)?);
    out.push(ZooEntry {
        name: "split-photon+lo(0.3)".into(),
        state: crate::homodyne::homodyne_network_state(&split_single_photon(), &LoConfig::new(0.3, 0.3, 0.0, 0.0)?)?.into(),
    });
    for (alpha, phi) in [(0.5, 0.0), (0.5, PI / 2.0), (0.25, PI)] {
        let p = CatParams::new(C64::new(alpha, 0.0), phi);
        out.push(with_optimal_lo(format!("split-cat({alpha},{phi:.4})+lo"), &split_cat(p, Some(20))?)?);
    }
    let single = |cutoff| ModeLayout::new(["a"], cutoff);
    let photon = MultiModeState::fock(single(2)?, &[2])?;
    out.push(ZooEntry {
        name: "split(|2>)".into(),
        state: epr_split_network(&photon)?,
    });
    let coh = MultiModeState::coherent(single(coherent_cutoff(1.0))?, &[C64::new(1.0, 0.0)])?;
    out.push(ZooEntry {
        name: "split(coherent 1)".into(),
        state: epr_split_network(&coh)?,
    });
    out.push(ZooEntry {
        name: "split(thermal 0.5)".into(),
        state: epr_split_network(&thermal(0.5, 10)?)?,
    });
    Ok(out)
}

/// Bose–Einstein populations p_n ∝ n̄ⁿ/(1+n̄)^{n+1}, n ≤ max_n, as a mixture
/// of number states on mode "a".
pub fn thermal(nbar: f64, max_n: usize) -> Result<MixedState> {
    if nbar < 0.0 || !nbar.is_finite() {
        return Err(Error::InvalidParams(format!("mean photon number {nbar}")));
    }
    let layout = ModeLayout::new(["a"], max_n)?;
    let p: Vec<f64> = (0..=max_n).map(|n| nbar.powi(n as i32) / (1.0 + nbar).powi(n as i32 + 1)).collect();
    let total: f64 = p.iter().sum();
    let components = p
        .iter()
        .enumerate()
        .filter(|(_, &w)| w > 0.0)
        .map(|(n, &w)| Ok((w / total, MultiModeState::fock(layout.clone(), &[n as u32])?)))
        .collect::<Result<Vec<_>>>()?;
    MixedState::new(components)
}
