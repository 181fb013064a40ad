//! The Bell quantity B, its maximum over phase settings, and the four bounds
//! on the correlation amplitudes:
//!
//! | bound            | condition           |
//! |------------------|---------------------|
//! | stochastic field | A_k ≤ ½             |
//! | local realism    | A₁² + A₂² ≤ ½       |
//! | Tsirelson        | A₁² + A₂² ≤ 1       |
//! | quantum          | A₁ + A₂ ≤ 1         |

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, SQRT_2, TAU};
use std::fmt;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::correlation::{evaluate_e, Backend, CorrelationAmplitudes, InputMoments};
use crate::error::{Error, Result};
use crate::fock::StateLike;
use crate::optics::PhaseSetting;

/// Tolerance used when placing amplitude pairs on the boundaries.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Numeric search may fall short of the analytic optimum by at most this.
pub const SHORTFALL_TOL: f64 = 1e-4;

/// Grid points per phase axis in the coarse search.
pub const GRID: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BellSettings {
    pub theta1: f64,
    pub theta1p: f64,
    pub theta2: f64,
    pub theta2p: f64,
}

impl BellSettings {
    pub fn new(theta1: f64, theta1p: f64, theta2: f64, theta2p: f64) -> Result<Self> {
        if ![theta1, theta1p, theta2, theta2p].iter().all(|t| t.is_finite()) {
            return Err(Error::InvalidParams("Bell settings must be finite".into()));
        }
        Ok(BellSettings {
            theta1,
            theta1p,
            theta2,
            theta2p,
        })
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.theta1, self.theta1p, self.theta2, self.theta2p]
    }

    fn from_array(t: [f64; 4]) -> Self {
        BellSettings {
            theta1: t[0],
            theta1p: t[1],
            theta2: t[2],
            theta2p: t[3],
        }
    }
}

/// B = E(θ₁,θ₂) − E(θ₁′,θ₂) + E(θ₁,θ₂′) + E(θ₁′,θ₂′) for any E(θ₁, θ₂).
pub fn bell_combination<F>(mut e: F, s: &BellSettings) -> Result<f64>
where
    F: FnMut(f64, f64) -> Result<f64>,
{
    Ok(e(s.theta1, s.theta2)? - e(s.theta1p, s.theta2)? + e(s.theta1, s.theta2p)? + e(s.theta1p, s.theta2p)?)
}

pub fn bell_b<S: StateLike + ?Sized>(state: &S, settings: &BellSettings, backend: Backend) -> Result<f64> {
    match backend {
        Backend::Expansion => {
            let m = InputMoments::of(state)?;
            bell_combination(|t1, t2| m.correlators(PhaseSetting::new(t1, t2)?)?.e(), settings)
        }
        Backend::Evolution => bell_combination(|t1, t2| evaluate_e(state, t1, t2, Backend::Evolution), settings),
    }
}

/// 2√2 √(A₁² + A₂²).
pub fn analytic_b_max(amps: &CorrelationAmplitudes) -> f64 {
    2.0 * SQRT_2 * amps.sum_sq().sqrt()
}

/// Settings attaining [`analytic_b_max`] for E = A₁cos(θ₁−θ₂+ξ) + A₂cos(θ₁+θ₂+ζ).
///
/// Writing E = Re[e^{iθ₁} f(θ₂)] with f(y) = A₁e^{i(ξ−y)} + A₂e^{i(ζ+y)},
/// B ≤ |f(θ₂)+f(θ₂′)| + |f(θ₂′)−f(θ₂)|. f traces an ellipse; taking θ₂, θ₂′
/// on its major and minor axes and θ₁, θ₁′ against the phases of the sum and
/// difference saturates the bound.
pub fn analytic_settings(amps: &CorrelationAmplitudes) -> BellSettings {
    let f = |y: f64| C64::from_polar(amps.a1, amps.xi - y) + C64::from_polar(amps.a2, amps.zeta + y);
    let theta2 = (amps.xi - amps.zeta) / 2.0;
    let theta2p = theta2 + FRAC_PI_2;
    let (p, q) = (f(theta2), f(theta2p));
    BellSettings {
        theta1: -(p + q).arg(),
        theta1p: -(q - p).arg(),
        theta2,
        theta2p,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BellMax {
    /// Best value found by the numeric search.
    pub b_max: f64,
    pub settings: BellSettings,
    pub b_max_analytic: f64,
    pub analytic_settings: BellSettings,
}

fn lex_less(a: &[f64; 4], b: &[f64; 4]) -> bool {
    a.iter().zip(b).find(|(x, y)| x != y).is_some_and(|(x, y)| x < y)
}

fn better(a: (f64, [f64; 4]), b: (f64, [f64; 4])) -> (f64, [f64; 4]) {
    if a.0 > b.0 || (a.0 == b.0 && lex_less(&a.1, &b.1)) {
        a
    } else {
        b
    }
}

/// Coarse grid over the 4-torus followed by Nelder–Mead refinement.
///
/// For fixed (θ₂, θ₂′), B splits into a θ₁ part and a θ₁′ part, so each
/// (θ₂, θ₂′) cell needs two 1-D scans instead of a 2-D one.
pub fn search_b_max<F>(e: F) -> Result<(f64, BellSettings)>
where
    F: Fn(f64, f64) -> Result<f64> + Sync,
{
    let step = TAU / GRID as f64;
    let cells: Vec<(usize, usize)> = (0..GRID).flat_map(|i| (0..GRID).map(move |j| (i, j))).collect();
    let best = cells
        .par_iter()
        .map(|&(i, j)| {
            let (t2, t2p) = (i as f64 * step, j as f64 * step);
            let mut best1 = (f64::NEG_INFINITY, 0.0);
            let mut best1p = (f64::NEG_INFINITY, 0.0);
            for k in 0..GRID {
                let t = k as f64 * step;
                let v1 = e(t, t2)? + e(t, t2p)?;
                let v1p = e(t, t2p)? - e(t, t2)?;
                if v1 > best1.0 {
                    best1 = (v1, t);
                }
                if v1p > best1p.0 {
                    best1p = (v1p, t);
                }
            }
            Ok((best1.0 + best1p.0, [best1.1, best1p.1, t2, t2p]))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold((f64::NEG_INFINITY, [0.0; 4]), better);

    let objective = |t: &[f64; 4]| -> Result<f64> { bell_combination(&e, &BellSettings::from_array(*t)) };
    let refined = nelder_mead(&objective, best.1, step / 2.0)?;
    let refined = better(refined, (objective(&best.1)?, best.1));
    Ok((refined.0, BellSettings::from_array(refined.1)))
}

/// Maximizes `f` starting from `x0` with initial simplex edge `scale`.
fn nelder_mead<F>(f: &F, x0: [f64; 4], scale: f64) -> Result<(f64, [f64; 4])>
where
    F: Fn(&[f64; 4]) -> Result<f64>,
{
    const N: usize = 4;
    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((x0, f(&x0)?));
    for i in 0..N {
        let mut x = x0;
        x[i] += scale;
        simplex.push((x, f(&x)?));
    }
    let lerp = |a: &[f64; N], b: &[f64; N], t: f64| -> [f64; N] {
        let mut out = [0.0; N];
        for k in 0..N {
            out[k] = a[k] + t * (b[k] - a[k]);
        }
        out
    };
    for _ in 0..5000 {
        // descending by value
        simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
        let spread = simplex[0].1 - simplex[N].1;
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if spread.abs() < 1e-15 && size < 1e-9 {
            break;
        }
        let mut centroid = [0.0; N];
        for (x, _) in &simplex[..N] {
            for k in 0..N {
                centroid[k] += x[k] / N as f64;
            }
        }
        let worst = simplex[N];
        let reflected = lerp(&centroid, &worst.0, -1.0);
        let fr = f(&reflected)?;
        if fr > simplex[0].1 {
            let expanded = lerp(&centroid, &worst.0, -2.0);
            let fe = f(&expanded)?;
            simplex[N] = if fe > fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr > simplex[N - 1].1 {
            simplex[N] = (reflected, fr);
        } else {
            let contracted = if fr > worst.1 {
                lerp(&centroid, &reflected, 0.5)
            } else {
                lerp(&centroid, &worst.0, 0.5)
            };
            let fc = f(&contracted)?;
            if fc > worst.1.max(fr) {
                simplex[N] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for v in simplex.iter_mut().skip(1) {
                    let x = lerp(&best, &v.0, 0.5);
                    *v = (x, f(&x)?);
                }
            }
        }
    }
    simplex.sort_by(|a, b| b.1.total_cmp(&a.1));
    Ok((simplex[0].1, simplex[0].0))
}

/// Maximum of B over phases. The numeric search treats E as a black box and
/// is checked against the closed form 2√2 √(A₁² + A₂²).
pub fn bell_max<S: StateLike + ?Sized>(state: &S) -> Result<BellMax> {
    let moments = InputMoments::of(state)?;
    let amps = moments.amplitudes()?;
    let e = |t1: f64, t2: f64| moments.correlators(PhaseSetting::new(t1, t2)?)?.e();
    let (found, settings) = search_b_max(e)?;
    let analytic = analytic_b_max(&amps);
    if found < analytic - SHORTFALL_TOL {
        return Err(Error::OptimizerShortfall { found, analytic });
    }
    Ok(BellMax {
        b_max: found,
        settings,
        b_max_analytic: analytic,
        analytic_settings: analytic_settings(&amps),
    })
}

/// Region of the (A₁, A₂) quadrant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Classical,
    NonclassicalLocal,
    BellViolating,
    Unphysical,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::Classical => "classical",
            Region::NonclassicalLocal => "nonclassical-local",
            Region::BellViolating => "bell-violating",
            Region::Unphysical => "unphysical",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub a1: f64,
    pub a2: f64,
    pub stochastic_ok: [bool; 2],
    /// ½ − A_k.
    pub stochastic_margin: [f64; 2],
    pub bell_ok: bool,
    /// ½ − (A₁² + A₂²).
    pub bell_margin: f64,
    pub tsirelson_ok: bool,
    /// 1 − (A₁² + A₂²).
    pub tsirelson_margin: f64,
    pub quantum_ok: bool,
    /// 1 − (A₁ + A₂).
    pub quantum_margin: f64,
    pub b_max: f64,
    pub region: Region,
    /// A₁ + A₂ = 1 within [`BOUNDARY_TOL`]: the EPR line.
    pub epr_boundary: bool,
}

impl InequalityReport {
    /// `region`, with `+epr-boundary` appended when on the EPR line.
    pub fn region_label(&self) -> String {
        if self.epr_boundary {
            format!("{}+epr-boundary", self.region)
        } else {
            self.region.to_string()
        }
    }
}

pub fn classify(amps: &CorrelationAmplitudes, state_b_max: f64) -> InequalityReport {
    let (a1, a2) = (amps.a1, amps.a2);
    let sum_sq = amps.sum_sq();
    let stochastic_margin = [0.5 - a1, 0.5 - a2];
    let stochastic_ok = stochastic_margin.map(|m| m >= -BOUNDARY_TOL);
    let bell_margin = 0.5 - sum_sq;
    let tsirelson_margin = 1.0 - sum_sq;
    let quantum_margin = 1.0 - (a1 + a2);
    let bell_ok = bell_margin >= -BOUNDARY_TOL && state_b_max <= 2.0 + BOUNDARY_TOL;
    let region = if quantum_margin < -BOUNDARY_TOL {
        Region::Unphysical
    } else if bell_margin < -BOUNDARY_TOL {
        Region::BellViolating
    } else if stochastic_ok[0] && stochastic_ok[1] {
        Region::Classical
    } else {
        Region::NonclassicalLocal
    };
    InequalityReport {
        a1,
        a2,
        stochastic_ok,
        stochastic_margin,
        bell_ok,
        bell_margin,
        tsirelson_ok: tsirelson_margin >= -BOUNDARY_TOL,
        tsirelson_margin,
        quantum_ok: quantum_margin >= -BOUNDARY_TOL,
        quantum_margin,
        b_max: state_b_max,
        region,
        epr_boundary: quantum_margin.abs() <= BOUNDARY_TOL,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Curve {
    Quantum,
    Bell,
    Stochastic,
    Tsirelson,
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Curve::Quantum => "quantum",
            Curve::Bell => "bell",
            Curve::Stochastic => "stochastic",
            Curve::Tsirelson => "tsirelson",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundaryPoint {
    pub curve: Curve,
    pub a1: f64,
    pub a2: f64,
}

/// Boundary curves in the first quadrant: the line A₁+A₂=1, the circles of
/// radius 1/√2 and 1, and the box A_k = ½ (drawn from (½,0) via (½,½) to
/// (0,½)). An odd sample count puts a sample exactly on each midpoint.
pub fn boundary_curves(samples_per_curve: usize) -> Result<Vec<BoundaryPoint>> {
    if samples_per_curve < 2 {
        return Err(Error::InvalidParams("need at least 2 samples per curve".into()));
    }
    let n = samples_per_curve;
    let frac = |i: usize| i as f64 / (n - 1) as f64;
    let mut out = Vec::with_capacity(4 * n);
    for i in 0..n {
        let t = frac(i);
        out.push(BoundaryPoint {
            curve: Curve::Quantum,
            a1: t,
            a2: 1.0 - t,
        });
    }
    // ends and midpoints pinned exactly: r/√2 for r = 1/√2 and 1
    for (curve, radius, mid) in [(Curve::Bell, FRAC_1_SQRT_2, 0.5), (Curve::Tsirelson, 1.0, FRAC_1_SQRT_2)] {
        for i in 0..n {
            let phi = FRAC_PI_2 * (1.0 - frac(i));
            let (a1, a2) = if 2 * i + 1 == n {
                (mid, mid)
            } else if i == 0 {
                (0.0, radius)
            } else if i == n - 1 {
                (radius, 0.0)
            } else {
                (radius * phi.cos(), radius * phi.sin())
            };
            out.push(BoundaryPoint { curve, a1, a2 });
        }
    }
    for i in 0..n {
        let t = frac(i);
        let (a1, a2) = if t <= 0.5 { (0.5, t) } else { (1.0 - t, 0.5) };
        out.push(BoundaryPoint {
            curve: Curve::Stochastic,
            a1,
            a2,
        });
    }
    Ok(out)
}
