//! Stochastic field models: ensembles of classical complex amplitudes
//! (α₁, α₂, β₁, β₂) drawn from a nonnegative P-distribution, and Monte Carlo
//! estimates of the correlation amplitudes they produce.

use num_complex::Complex64 as C64;
use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Normal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Samples generated per RNG stream.
pub const CHUNK: usize = 8192;

/// Bootstrap resamples used for standard errors.
pub const BOOTSTRAP_RESAMPLES: usize = 200;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const BOOTSTRAP_SALT: u64 = 0xB007_5742_D1CE_5EED;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldSample {
    pub weight: f64,
    pub alpha1: C64,
    pub alpha2: C64,
    pub beta1: C64,
    pub beta2: C64,
}

impl FieldSample {
    /// α₁*β₁α₂β₂*, the integrand paired with A₁.
    pub fn numerator1(&self) -> C64 {
        self.alpha1.conj() * self.beta1 * self.alpha2 * self.beta2.conj()
    }

    /// α₁*β₁α₂*β₂, the integrand paired with A₂.
    pub fn numerator2(&self) -> C64 {
        self.alpha1.conj() * self.beta1 * self.alpha2.conj() * self.beta2
    }

    /// (|α₁|²+|β₁|²)(|α₂|²+|β₂|²).
    pub fn denominator(&self) -> f64 {
        (self.alpha1.norm_sqr() + self.beta1.norm_sqr()) * (self.alpha2.norm_sqr() + self.beta2.norm_sqr())
    }

    /// |α_k|² + |β_k|² ≥ 2|α_kβ_k| for k = 1, 2, up to a few ulps.
    pub fn pointwise_bound_holds(&self) -> [bool; 2] {
        let check = |a: C64, b: C64| {
            let lhs = a.norm_sqr() + b.norm_sqr();
            lhs - 2.0 * (a * b).norm() >= -4.0 * f64::EPSILON * lhs
        };
        [check(self.alpha1, self.beta1), check(self.alpha2, self.beta2)]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EnsembleKind {
    /// A point mass at (α₁, α₂, β₁, β₂).
    Delta { point: [C64; 4] },
    /// Independent circular Gaussians with E|·|² = n̄ for (α₁, α₂, β₁, β₂).
    Thermal { nbar: [f64; 4] },
    /// Thermal (α₁, α₂) with each oscillator copying its signal: β_k = α_k.
    CorrelatedLo { nbar: [f64; 2] },
    Mixture(Vec<(f64, EnsembleKind)>),
}

impl EnsembleKind {
    fn id(&self) -> String {
        match self {
            EnsembleKind::Delta { point } => {
                let p: Vec<String> = point.iter().map(|z| format!("{}{:+}i", z.re, z.im)).collect();
                format!("delta({})", p.join(", "))
            }
            EnsembleKind::Thermal { nbar } => format!("thermal(nbar={nbar:?})"),
            EnsembleKind::CorrelatedLo { nbar } => format!("correlated_lo(nbar={nbar:?})"),
            EnsembleKind::Mixture(parts) => {
                let inner: Vec<String> = parts.iter().map(|(w, k)| format!("{w}*{}", k.id())).collect();
                format!("mixture[{}]", inner.join(", "))
            }
        }
    }

    fn validate(&self) -> Result<()> {
        let bad_nbar = |v: &[f64]| v.iter().any(|x| !x.is_finite() || *x < 0.0);
        match self {
            EnsembleKind::Delta { point } => {
                if point.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                    return Err(Error::InvalidParams("delta point must be finite".into()));
                }
            }
            EnsembleKind::Thermal { nbar } if bad_nbar(nbar) => {
                return Err(Error::InvalidParams(format!("thermal mean photon numbers {nbar:?}")));
            }
            EnsembleKind::CorrelatedLo { nbar } if bad_nbar(nbar) => {
                return Err(Error::InvalidParams(format!("thermal mean photon numbers {nbar:?}")));
            }
            EnsembleKind::Mixture(parts) => {
                if parts.is_empty() {
                    return Err(Error::InvalidParams("empty mixture".into()));
                }
                if parts.iter().any(|(w, _)| !w.is_finite() || *w < 0.0) {
                    return Err(Error::InvalidParams("mixture weights must be finite and ≥ 0".into()));
                }
                if parts.iter().map(|(w, _)| w).sum::<f64>() <= 0.0 {
                    return Err(Error::InvalidParams("mixture weights sum to zero".into()));
                }
                for (_, k) in parts {
                    k.validate()?;
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalEnsemble {
    pub samples: Vec<FieldSample>,
    pub seed: u64,
    pub generator_id: String,
}

fn circular(rng: &mut ChaCha8Rng, nbar: f64) -> C64 {
    if nbar == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let normal = Normal::new(0.0, (nbar / 2.0).sqrt()).expect("finite positive deviation");
    C64::new(normal.sample(rng), normal.sample(rng))
}

fn gaussian_samples<F>(n: usize, seed: u64, draw: F) -> Vec<FieldSample>
where
    F: Fn(&mut ChaCha8Rng) -> [C64; 4] + Sync,
{
    let weight = 1.0 / n as f64;
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64 + 1);
            let len = CHUNK.min(n - c * CHUNK);
            (0..len)
                .map(|_| {
                    let [alpha1, alpha2, beta1, beta2] = draw(&mut rng);
                    FieldSample {
                        weight,
                        alpha1,
                        alpha2,
                        beta1,
                        beta2,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn generate(kind: &EnsembleKind, n: usize, seed: u64) -> Vec<FieldSample> {
    match kind {
        EnsembleKind::Delta { point } => vec![FieldSample {
            weight: 1.0,
            alpha1: point[0],
            alpha2: point[1],
            beta1: point[2],
            beta2: point[3],
        }],
        EnsembleKind::Thermal { nbar } => gaussian_samples(n, seed, |rng| {
            [
                circular(rng, nbar[0]),
                circular(rng, nbar[1]),
                circular(rng, nbar[2]),
                circular(rng, nbar[3]),
            ]
        }),
        EnsembleKind::CorrelatedLo { nbar } => gaussian_samples(n, seed, |rng| {
            let a1 = circular(rng, nbar[0]);
            let a2 = circular(rng, nbar[1]);
            [a1, a2, a1, a2]
        }),
        EnsembleKind::Mixture(parts) => {
            let total: f64 = parts.iter().map(|(w, _)| w).sum();
            parts
                .iter()
                .enumerate()
                .filter(|(_, (w, _))| *w > 0.0)
                .flat_map(|(i, (w, k))| {
                    let sub_seed = seed.wrapping_add(GOLDEN.wrapping_mul(i as u64 + 1));
                    let scale = w / total;
                    generate(k, n, sub_seed).into_iter().map(move |mut s| {
                        s.weight *= scale;
                        s
                    })
                })
                .collect()
        }
    }
}

/// Draws an ensemble; continuous components get `n` samples each, point
/// masses a single one. Identical arguments give identical ensembles.
pub fn make_ensemble(kind: &EnsembleKind, n: usize, seed: u64) -> Result<ClassicalEnsemble> {
    if n == 0 {
        return Err(Error::InvalidParams("sample count must be ≥ 1".into()));
    }
    kind.validate()?;
    Ok(ClassicalEnsemble {
        samples: generate(kind, n, seed),
        seed,
        generator_id: format!("{}/chacha8/chunk{CHUNK}", kind.id()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AmplitudeEstimate {
    pub a1_hat: f64,
    pub a2_hat: f64,
    pub se1: f64,
    pub se2: f64,
    pub n: usize,
}

/// Neumaier-compensated sum.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

struct Terms {
    num1: Vec<C64>,
    num2: Vec<C64>,
    den: Vec<f64>,
}

/// 2·Σwᵢnumᵢ / Σwᵢdenᵢ for both numerators, with per-sample multiplicities.
fn ratio(t: &Terms, weights: &[f64]) -> Result<(C64, C64)> {
    let den = compensated_sum(t.den.iter().zip(weights).map(|(d, w)| d * w));
    if den.is_nan() || den <= 0.0 {
        return Err(Error::ZeroDenominator(den));
    }
    let sum = |v: &[C64]| {
        C64::new(
            compensated_sum(v.iter().zip(weights).map(|(z, w)| z.re * w)),
            compensated_sum(v.iter().zip(weights).map(|(z, w)| z.im * w)),
        )
    };
    Ok((sum(&t.num1) * 2.0 / den, sum(&t.num2) * 2.0 / den))
}

/// Complex-valued ratio spread sqrt(E|Z* − E Z*|²) over resamples.
fn spread(values: &[C64]) -> f64 {
    let b = values.len() as f64;
    let mean = values.iter().sum::<C64>() / b;
    (values.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / (b - 1.0)).sqrt()
}

/// Â_k = |2·mean(numerator_k)| / mean(denominator) with bootstrap standard
/// errors taken over the complex ratio before the modulus.
pub fn estimate_amplitudes(e: &ClassicalEnsemble) -> Result<AmplitudeEstimate> {
    let s = &e.samples;
    if s.is_empty() {
        return Err(Error::ZeroDenominator(0.0));
    }
    let terms = Terms {
        num1: s.iter().map(FieldSample::numerator1).collect(),
        num2: s.iter().map(FieldSample::numerator2).collect(),
        den: s.iter().map(FieldSample::denominator).collect(),
    };
    let weights: Vec<f64> = s.iter().map(|x| x.weight).collect();
    let (z1, z2) = ratio(&terms, &weights)?;

    let (se1, se2) = if s.len() < 2 {
        (0.0, 0.0)
    } else {
        let picker = WeightedIndex::new(&weights).map_err(|err| Error::InvalidParams(err.to_string()))?;
        let resamples: Vec<(C64, C64)> = (0..BOOTSTRAP_RESAMPLES)
            .into_par_iter()
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(e.seed ^ BOOTSTRAP_SALT);
                rng.set_stream(r as u64);
                let mut counts = vec![0.0; s.len()];
                for _ in 0..s.len() {
                    counts[picker.sample(&mut rng)] += 1.0;
                }
                ratio(&terms, &counts)
            })
            .collect::<Result<_>>()?;
        let (r1, r2): (Vec<C64>, Vec<C64>) = resamples.into_iter().unzip();
        (spread(&r1), spread(&r2))
    };
    Ok(AmplitudeEstimate {
        a1_hat: z1.norm(),
        a2_hat: z2.norm(),
        se1,
        se2,
        n: s.len(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub within_bound: [bool; 2],
    pub margin: [f64; 2],
}

/// Â_k ≤ ½ + 3·se_k, margins ½ − Â_k.
pub fn bound_report(est: &AmplitudeEstimate) -> BoundReport {
    BoundReport {
        within_bound: [est.a1_hat <= 0.5 + 3.0 * est.se1, est.a2_hat <= 0.5 + 3.0 * est.se2],
        margin: [0.5 - est.a1_hat, 0.5 - est.a2_hat],
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassicalReport {
    pub a1_hat: f64,
    pub a2_hat: f64,
    pub se1: f64,
    pub se2: f64,
    pub n: usize,
    pub seed: u64,
    pub within_bound: [bool; 2],
    pub margin: [f64; 2],
    pub generator_id: String,
}

pub fn classical_report(e: &ClassicalEnsemble) -> Result<ClassicalReport> {
    let est = estimate_amplitudes(e)?;
    let b = bound_report(&est);
    Ok(ClassicalReport {
        a1_hat: est.a1_hat,
        a2_hat: est.a2_hat,
        se1: est.se1,
        se2: est.se2,
        n: est.n,
        seed: e.seed,
        within_bound: b.within_bound,
        margin: b.margin,
        generator_id: e.generator_id.clone(),
    })
}

/// Uniform real draws used by tests and the CLI to pick random points.
pub fn random_point(rng: &mut impl Rng, scale: f64) -> [C64; 4] {
    std::array::from_fn(|_| C64::new(rng.random_range(-scale..scale), rng.random_range(-scale..scale)))
}
