//! Command-line front end. `run` turns parsed arguments into the text that
//! `main` prints; every number is rounded before formatting so identical
//! arguments give byte-identical output.

use std::f64::consts::{PI, SQRT_2};
use std::fmt::Write as _;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::classical::{classical_report, make_ensemble, EnsembleKind};
use crate::correlation::{amplitudes, epr_check, CorrelationAmplitudes};
use crate::error::{Error, Result};
use crate::fock::{MixedState, ModeLayout, MultiModeState};
use crate::homodyne::{amplitudes_from_g, coherence_functions, homodyne_network_state, optimal_lo, CoherenceFunctions, LoConfig, SIGNAL_MODES};
use crate::inequalities::{analytic_b_max, bell_max, classify, boundary_curves};
use crate::optics::{epr_split_network, two_photon_network, FOUR_MODES};
use crate::zoo::{cat_predictions, coherent_pair, entangled, split_cat, split_single_photon, CatParams, Entangled, ZooName};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Delta,
    Thermal,
    #[value(name = "correlated_lo", alias = "correlated-lo")]
    CorrelatedLo,
    Mixture,
}

#[derive(Debug, Parser)]
#[command(name = "eprlab", version, about = "Correlation amplitudes, Bell and stochastic-field bounds for photon-number interferometry")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Amplitudes, B_max, EPR verdict and bound margins for one state.
    State {
        /// Zoo name (eq28, eq29, two-photon, coherent, split-photon, split-cat) or a state JSON file.
        source: String,
        /// Coherent amplitude for `coherent` (both arms) and `split-cat`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Second-arm amplitude for `coherent`.
        #[arg(long, allow_hyphen_values = true)]
        alpha2: Option<f64>,
        /// Cat superposition phase; accepts numbers and forms like `pi/2`.
        #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
        phi: Option<f64>,
        /// Local-oscillator amplitudes `b` or `b1,b2` instead of the optimal ones.
        #[arg(long, value_delimiter = ',', num_args = 1..=2)]
        beta: Option<Vec<f64>>,
        /// Total-photon cutoff override.
        #[arg(long)]
        cutoff: Option<usize>,
        /// Tolerance of the EPR verdict.
        #[arg(long, default_value_t = 1e-9, value_parser = parse_tol)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Boundary curves of the amplitude diagram plus one point per zoo state.
    Figure3 {
        /// Points per boundary curve.
        #[arg(long, default_value_t = 51)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Monte Carlo estimate of the amplitudes of a classical field ensemble.
    Classical {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Mean photon numbers: one value for every arm, or one per arm.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        nbar: Option<Vec<f64>>,
        /// Delta point (α₁, α₂, β₁, β₂): four reals or four `re,im` pairs.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        point: Option<Vec<f64>>,
        /// Mixture components `w:kind:values` separated by `;`, e.g. `0.5:thermal:1;0.5:delta:1,1,1,1`.
        #[arg(long, allow_hyphen_values = true)]
        components: Option<String>,
        #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Cat-state grid comparing numerics with the closed forms.
    SweepCat {
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.25, 0.5, 1.0])]
        alphas: Vec<f64>,
        #[arg(long, value_delimiter = ',', value_parser = parse_angle, allow_hyphen_values = true, default_values = ["0", "pi/4", "pi/2", "pi"])]
        phis: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        cutoff: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
}

fn parse_tol(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got `{s}`")),
    }
}

/// Reads `1.2`, `pi`, `-pi/4`, `3pi/4` or `3*pi/4`.
pub fn parse_angle(s: &str) -> std::result::Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let err = || format!("cannot read angle `{s}`");
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().map_err(|_| err())?),
        None => (t.as_str(), 1.0),
    };
    let coeff = num.strip_suffix("pi").ok_or_else(err)?.trim_end_matches('*').trim();
    let c = match coeff {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| err())?,
    };
    Ok(c * PI / den)
}

/// Rounds to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let v: f64 = format!("{:.*e}", digits - 1, x).parse().expect("formatted float");
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

fn round_value(v: Value, digits: usize) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            json!(round_sig(n.as_f64().expect("f64"), digits))
        }
        Value::Array(a) => Value::Array(a.into_iter().map(|x| round_value(x, digits)).collect()),
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, x)| (k, round_value(x, digits))).collect()),
        other => other,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable report");
    serde_json::to_string_pretty(&round_value(v, 9)).expect("json") + "\n"
}

/// CSV cell at six significant digits; exponent form outside [1e-4, 1e15).
fn cell(x: f64) -> String {
    let v = round_sig(x, 6);
    if v != 0.0 && !(1e-4..1e15).contains(&v.abs()) {
        format!("{v:e}")
    } else {
        v.to_string()
    }
}

struct Csv {
    out: String,
}

impl Csv {
    fn new(header: &[&str]) -> Self {
        Csv {
            out: header.join(",") + "\n",
        }
    }

    fn row(&mut self, cells: &[String]) {
        let _ = writeln!(self.out, "{}", cells.join(","));
    }
}

/// Error document printed by `main`.
pub fn error_json(e: &Error) -> String {
    serde_json::to_string(&json!({"error": e.kind(), "message": e.to_string()})).expect("json")
}

enum Resolved {
    /// Four-mode state ready for the interferometer.
    Network(MixedState),
    /// Two-mode signal on (a1, a2) to be mixed with local oscillators.
    Signal(MultiModeState),
}

struct StateArgs<'a> {
    source: &'a str,
    alpha: Option<f64>,
    alpha2: Option<f64>,
    phi: Option<f64>,
    cutoff: Option<usize>,
}

fn resolve(a: &StateArgs) -> Result<Resolved> {
    if let Ok(name) = a.source.parse::<ZooName>() {
        return Ok(match name {
            ZooName::Parallel => Resolved::Network(entangled(Entangled::Parallel).into()),
            ZooName::Crossed => Resolved::Network(entangled(Entangled::Crossed).into()),
            ZooName::TwoPhoton => Resolved::Network(two_photon_network()?.into()),
            ZooName::Coherent => {
                let a1 = a.alpha.unwrap_or(1.0);
                let a2 = a.alpha2.unwrap_or(a1);
                let (c1, c2) = (C64::new(a1, 0.0), C64::new(a2, 0.0));
                Resolved::Signal(match a.cutoff {
                    Some(n) => MultiModeState::coherent(ModeLayout::new(SIGNAL_MODES, n)?, &[c1, c2])?,
                    None => coherent_pair(c1, c2)?,
                })
            }
            ZooName::SplitPhoton => Resolved::Signal(split_single_photon()),
            ZooName::SplitCat => {
                let p = CatParams::new(C64::new(a.alpha.unwrap_or(0.5), 0.0), a.phi.unwrap_or(0.0));
                Resolved::Signal(split_cat(p, a.cutoff)?)
            }
        });
    }
    let path = Path::new(a.source);
    if !path.exists() {
        return Err(Error::InvalidParams(format!(
            "`{}` is neither a zoo state ({}) nor an existing file",
            a.source,
            ZooName::ALL.map(|z| z.as_str()).join(", ")
        )));
    }
    let state = MultiModeState::load(path)?;
    let layout = state.layout();
    if layout.has_labels(&FOUR_MODES) {
        Ok(Resolved::Network(state.into()))
    } else if layout.has_labels(&SIGNAL_MODES) {
        Ok(Resolved::Signal(state))
    } else if layout.len() == 1 {
        Ok(Resolved::Network(epr_split_network(&state)?))
    } else {
        Err(Error::WrongLayout {
            expected: FOUR_MODES.iter().map(|s| s.to_string()).collect(),
            found: layout.labels().to_vec(),
        })
    }
}

fn complex_json(z: C64) -> Value {
    json!([z.re, z.im])
}

fn g_json(g: &CoherenceFunctions) -> Value {
    json!({"g11": complex_json(g.g11), "g20": complex_json(g.g20), "g22": g.g22})
}

#[derive(Serialize)]
struct StateReport {
    state: String,
    amplitude_source: &'static str,
    a1: f64,
    a2: f64,
    xi: Option<f64>,
    zeta: Option<f64>,
    a1_plus_a2: f64,
    sum_sq: f64,
    b_max: f64,
    b_max_analytic: f64,
    bell_settings: Option<Value>,
    local_oscillators: Option<Value>,
    coherence: Option<Value>,
    epr: Option<Value>,
    region: String,
    inequalities: Value,
}

fn network_report(name: &str, state: &MixedState, tol: f64) -> Result<StateReport> {
    let amps = amplitudes(state)?;
    let bm = bell_max(state)?;
    let verdict = epr_check(state, tol)?;
    let report = classify(&amps, bm.b_max);
    let epr = json!({
        "is_epr": verdict.is_epr,
        "phases": verdict.phases.map(|p| json!([p.theta1, p.theta2])),
        "anti_phases": verdict.anti_phases().map(|p| json!([p.theta1, p.theta2])),
        "witness": verdict.witness.map(|w| json!({"cc": w.cc, "cd": w.cd, "dc": w.dc, "dd": w.dd})),
    });
    Ok(StateReport {
        state: name.to_string(),
        amplitude_source: "interferometer",
        a1: amps.a1,
        a2: amps.a2,
        xi: Some(amps.xi),
        zeta: Some(amps.zeta),
        a1_plus_a2: amps.total(),
        sum_sq: amps.sum_sq(),
        b_max: bm.b_max,
        b_max_analytic: bm.b_max_analytic,
        bell_settings: Some(serde_json::to_value(bm.settings).expect("json")),
        local_oscillators: None,
        coherence: None,
        epr: Some(epr),
        region: report.region_label(),
        inequalities: serde_json::to_value(report).expect("json"),
    })
}

fn state_report(args: &StateArgs, beta: Option<&[f64]>, tol: f64) -> Result<StateReport> {
    let name = args.source.to_string();
    match resolve(args)? {
        Resolved::Network(state) => network_report(&name, &state, tol),
        Resolved::Signal(signal) => {
            let g = coherence_functions(&signal)?;
            let lo = match beta {
                Some(&[b]) => Some((b, b)),
                Some(&[b1, b2]) => Some((b1, b2)),
                Some(_) => return Err(Error::InvalidParams("--beta takes one or two values".into())),
                None => match optimal_lo(&signal) {
                    Ok(b) => Some(b),
                    Err(Error::DegenerateLo(_)) => None,
                    Err(e) => return Err(e),
                },
            };
            match lo {
                Some((b1, b2)) => {
                    let cfg = LoConfig::new(b1, b2, 0.0, 0.0)?;
                    let four = homodyne_network_state(&signal, &cfg)?;
                    let mut r = network_report(&name, &four.into(), tol)?;
                    r.local_oscillators = Some(json!({"beta1": b1, "beta2": b2, "optimal": beta.is_none()}));
                    r.coherence = Some(g_json(&g));
                    Ok(r)
                }
                None => {
                    // optimal oscillators degenerate: amplitudes follow from g alone
                    let (a1, a2) = amplitudes_from_g(&g);
                    let amps = CorrelationAmplitudes::new(a1, a2, 0.0, 0.0);
                    let b = analytic_b_max(&amps);
                    let report = classify(&amps, b);
                    Ok(StateReport {
                        state: name,
                        amplitude_source: "coherence-functions",
                        a1,
                        a2,
                        xi: None,
                        zeta: None,
                        a1_plus_a2: a1 + a2,
                        sum_sq: amps.sum_sq(),
                        b_max: b,
                        b_max_analytic: b,
                        bell_settings: None,
                        local_oscillators: None,
                        coherence: Some(g_json(&g)),
                        epr: None,
                        region: report.region_label(),
                        inequalities: serde_json::to_value(report).expect("json"),
                    })
                }
            }
        }
    }
}

fn state_csv(r: &StateReport) -> String {
    let mut csv = Csv::new(&["state", "a1", "a2", "xi", "zeta", "a1_plus_a2", "sum_sq", "b_max", "is_epr", "region"]);
    let opt = |x: Option<f64>| x.map(cell).unwrap_or_default();
    let is_epr = r
        .epr
        .as_ref()
        .and_then(|e| e.get("is_epr"))
        .and_then(Value::as_bool)
        .map(|b| b.to_string())
        .unwrap_or_default();
    csv.row(&[
        r.state.clone(),
        cell(r.a1),
        cell(r.a2),
        opt(r.xi),
        opt(r.zeta),
        cell(r.a1_plus_a2),
        cell(r.sum_sq),
        cell(r.b_max),
        is_epr,
        r.region.clone(),
    ]);
    csv.out
}

/// (label, a1, a2, region) for every zoo state, using closed-form B_max.
fn zoo_points() -> Result<Vec<(String, f64, f64, String)>> {
    let mut pts = Vec::new();
    let mut push = |label: String, amps: CorrelationAmplitudes| {
        let r = classify(&amps, analytic_b_max(&amps));
        pts.push((label, amps.a1, amps.a2, r.region_label()));
    };
    push("eq28".into(), amplitudes(&entangled(Entangled::Parallel))?);
    push("eq29".into(), amplitudes(&entangled(Entangled::Crossed))?);
    push("two-photon".into(), amplitudes(&two_photon_network()?)?);
    let from_g = |s: &MultiModeState| -> Result<CorrelationAmplitudes> {
        let (a1, a2) = amplitudes_from_g(&coherence_functions(s)?);
        Ok(CorrelationAmplitudes::new(a1, a2, 0.0, 0.0))
    };
    push("coherent".into(), from_g(&coherent_pair(C64::new(1.0, 0.0), C64::new(1.0, 0.0))?)?);
    push("split-photon".into(), from_g(&split_single_photon())?);
    for (alpha, phi, phi_label) in [
        (0.25, 0.0, "0"),
        (0.5, 0.0, "0"),
        (0.5, PI / 2.0, "pi/2"),
        (0.5, PI, "pi"),
        (1.0, 0.0, "0"),
    ] {
        let s = split_cat(CatParams::new(C64::new(alpha, 0.0), phi), None)?;
        push(format!("split-cat(alpha={alpha};phi={phi_label})"), from_g(&s)?);
    }
    Ok(pts)
}

fn amplitude_diagram(points: usize, format: Format) -> Result<String> {
    let curves = boundary_curves(points)?;
    let zoo = zoo_points()?;
    Ok(match format {
        Format::Csv => {
            let mut csv = Csv::new(&["kind", "label", "a1", "a2", "region"]);
            for p in &curves {
                csv.row(&["boundary".into(), p.curve.to_string(), cell(p.a1), cell(p.a2), String::new()]);
            }
            for (label, a1, a2, region) in &zoo {
                csv.row(&["state".into(), label.clone(), cell(*a1), cell(*a2), region.clone()]);
            }
            csv.out
        }
        Format::Json => {
            let states: Vec<Value> = zoo
                .iter()
                .map(|(label, a1, a2, region)| json!({"label": label, "a1": a1, "a2": a2, "region": region}))
                .collect();
            to_json(&json!({"boundaries": curves, "states": states}))
        }
    })
}

fn complex_point(values: &[f64]) -> Result<[C64; 4]> {
    match values.len() {
        4 => Ok(std::array::from_fn(|i| C64::new(values[i], 0.0))),
        8 => Ok(std::array::from_fn(|i| C64::new(values[2 * i], values[2 * i + 1]))),
        n => Err(Error::InvalidParams(format!("--point needs 4 reals or 4 re,im pairs, got {n} values"))),
    }
}

fn nbar_array<const N: usize>(values: &[f64]) -> Result<[f64; N]> {
    match values.len() {
        1 => Ok([values[0]; N]),
        n if n == N => Ok(std::array::from_fn(|i| values[i])),
        n => Err(Error::InvalidParams(format!("--nbar needs 1 or {N} values, got {n}"))),
    }
}

fn parse_numbers(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Error::InvalidParams(format!("bad number `{x}`"))))
        .collect()
}

fn parse_components(spec: &str) -> Result<EnsembleKind> {
    let mut parts = Vec::new();
    for item in spec.split(';').filter(|s| !s.trim().is_empty()) {
        let mut it = item.splitn(3, ':');
        let (w, k, v) = match (it.next(), it.next(), it.next()) {
            (Some(w), Some(k), Some(v)) => (w, k.trim(), v),
            _ => return Err(Error::InvalidParams(format!("mixture component `{item}` is not w:kind:values"))),
        };
        let w: f64 = w.trim().parse().map_err(|_| Error::InvalidParams(format!("bad weight `{w}`")))?;
        let values = parse_numbers(v)?;
        let kind = match k {
            "delta" => EnsembleKind::Delta {
                point: complex_point(&values)?,
            },
            "thermal" => EnsembleKind::Thermal {
                nbar: nbar_array(&values)?,
            },
            "correlated_lo" | "correlated-lo" => EnsembleKind::CorrelatedLo {
                nbar: nbar_array(&values)?,
            },
            other => return Err(Error::InvalidParams(format!("unknown mixture component kind `{other}`"))),
        };
        parts.push((w, kind));
    }
    Ok(EnsembleKind::Mixture(parts))
}

fn ensemble_kind(kind: Kind, nbar: Option<&[f64]>, point: Option<&[f64]>, components: Option<&str>) -> Result<EnsembleKind> {
    let missing = |flag: &str| Error::InvalidParams(format!("--kind {kind:?} needs {flag}").to_lowercase());
    match kind {
        Kind::Delta => Ok(EnsembleKind::Delta {
            point: complex_point(point.ok_or_else(|| missing("--point"))?)?,
        }),
        Kind::Thermal => Ok(EnsembleKind::Thermal {
            nbar: nbar_array(nbar.ok_or_else(|| missing("--nbar"))?)?,
        }),
        Kind::CorrelatedLo => Ok(EnsembleKind::CorrelatedLo {
            nbar: nbar_array(nbar.ok_or_else(|| missing("--nbar"))?)?,
        }),
        Kind::Mixture => parse_components(components.ok_or_else(|| missing("--components"))?),
    }
}

fn sweep_cat(alphas: &[f64], phis: &[f64], cutoff: usize, format: Format) -> Result<String> {
    #[derive(Serialize)]
    struct Row {
        alpha: f64,
        phi: f64,
        g11: [f64; 2],
        g20: [f64; 2],
        g22: f64,
        g20_pred: f64,
        g22_pred: f64,
        a1: f64,
        a2: f64,
        a1_pred: f64,
        a2_pred: f64,
        a1_plus_a2: f64,
        sum_sq: f64,
        sum_sq_pred: f64,
        b_max: f64,
        b_max_pred: f64,
    }
    let mut rows = Vec::new();
    for &alpha in alphas {
        for &phi in phis {
            let p = CatParams::new(C64::new(alpha, 0.0), phi);
            let pred = cat_predictions(p)?;
            let signal = split_cat(p, Some(cutoff))?;
            let g = coherence_functions(&signal)?;
            let (b1, b2) = optimal_lo(&signal)?;
            let four: MixedState = homodyne_network_state(&signal, &LoConfig::new(b1, b2, 0.0, 0.0)?)?.into();
            let amps = amplitudes(&four)?;
            let bm = bell_max(&four)?;
            rows.push(Row {
                alpha,
                phi,
                g11: [g.g11.re, g.g11.im],
                g20: [g.g20.re, g.g20.im],
                g22: g.g22,
                g20_pred: pred.g.g20.re,
                g22_pred: pred.g.g22,
                a1: amps.a1,
                a2: amps.a2,
                a1_pred: pred.a1,
                a2_pred: pred.a2,
                a1_plus_a2: amps.total(),
                sum_sq: amps.sum_sq(),
                sum_sq_pred: pred.sum_sq,
                b_max: bm.b_max,
                b_max_pred: 2.0 * SQRT_2 * pred.sum_sq.sqrt(),
            });
        }
    }
    Ok(match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut csv = Csv::new(&[
                "alpha", "phi", "g11_re", "g11_im", "g20_re", "g20_im", "g22", "g20_pred", "g22_pred", "a1", "a2", "a1_pred",
                "a2_pred", "a1_plus_a2", "sum_sq", "sum_sq_pred", "b_max", "b_max_pred",
            ]);
            for r in &rows {
                csv.row(
                    &[
                        r.alpha,
                        r.phi,
                        r.g11[0],
                        r.g11[1],
                        r.g20[0],
                        r.g20[1],
                        r.g22,
                        r.g20_pred,
                        r.g22_pred,
                        r.a1,
                        r.a2,
                        r.a1_pred,
                        r.a2_pred,
                        r.a1_plus_a2,
                        r.sum_sq,
                        r.sum_sq_pred,
                        r.b_max,
                        r.b_max_pred,
                    ]
                    .map(cell),
                );
            }
            csv.out
        }
    })
}

pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::State {
            source,
            alpha,
            alpha2,
            phi,
            beta,
            cutoff,
            tol,
            format,
        } => {
            let args = StateArgs {
                source,
                alpha: *alpha,
                alpha2: *alpha2,
                phi: *phi,
                cutoff: *cutoff,
            };
            let r = state_report(&args, beta.as_deref(), *tol)?;
            Ok(match format {
                Format::Json => to_json(&r),
                Format::Csv => state_csv(&r),
            })
        }
        Command::Figure3 { points, format } => amplitude_diagram(*points, *format),
        Command::Classical {
            kind,
            nbar,
            point,
            components,
            samples,
            seed,
            format,
        } => {
            let k = ensemble_kind(*kind, nbar.as_deref(), point.as_deref(), components.as_deref())?;
            let n = usize::try_from(*samples).map_err(|_| Error::InvalidParams("sample count too large".into()))?;
            let report = classical_report(&make_ensemble(&k, n, *seed)?)?;
            Ok(match format {
                Format::Json => to_json(&report),
                Format::Csv => {
                    let mut csv = Csv::new(&["a1_hat", "a2_hat", "se1", "se2", "n", "seed", "within_bound1", "within_bound2"]);
                    csv.row(&[
                        cell(report.a1_hat),
                        cell(report.a2_hat),
                        cell(report.se1),
                        cell(report.se2),
                        report.n.to_string(),
                        report.seed.to_string(),
                        report.within_bound[0].to_string(),
                        report.within_bound[1].to_string(),
                    ]);
                    csv.out
                }
            })
        }
        Command::SweepCat {
            alphas,
            phis,
            cutoff,
            format,
        } => sweep_cat(alphas, phis, *cutoff, *format),
    }
}
