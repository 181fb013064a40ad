//! Acceptance criteria. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line; exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};
use std::process::ExitCode;
use std::time::Instant;

use eprlab::classical::{bound_report, estimate_amplitudes, make_ensemble, EnsembleKind};
use eprlab::correlation::{amplitudes, output_correlators, sinusoid_residual, Backend};
use eprlab::fock::{coherent_cutoff, mixture_from_density, ModeLayout, MultiModeState};
use eprlab::homodyne::{amplitudes_from_g, coherence_functions, homodyne_network_state, optimal_lo, LoConfig};
use eprlab::inequalities::{bell_b, bell_max, classify, boundary_curves, BellSettings, Curve};
use eprlab::optics::{epr_split_network, two_photon_network, PhaseSetting, FOUR_MODES};
use eprlab::zoo::{cat_predictions, coherent_pair, entangled, four_mode_catalog, split_cat, split_single_photon, thermal, CatParams, Entangled};
use eprlab::{Error, MixedState};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn close(x: f64, y: f64, tol: f64, what: &str) -> Result<(), String> {
    check((x - y).abs() <= tol, format!("{what}: {x:.15} vs {y:.15} (tol {tol:e})"))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn coherent_pair_with_optimal_lo() -> Outcome {
    let signal = coherent_pair(c(1.0), c(1.0)).map_err(err)?;
    let (b1, b2) = optimal_lo(&signal).map_err(err)?;
    let four = homodyne_network_state(&signal, &LoConfig::new(b1, b2, 0.0, 0.0).map_err(err)?).map_err(err)?;
    let amps = amplitudes(&four).map_err(err)?;
    close(amps.a1, 0.5, 1e-8, "A1")?;
    close(amps.a2, 0.5, 1e-8, "A2")?;
    let bm = bell_max(&four).map_err(err)?;
    close(bm.b_max, 2.0, 1e-6, "b_max")?;
    Ok(format!("A = ({:.10}, {:.10}), b_max = {:.9}", amps.a1, amps.a2, bm.b_max))
}

fn split_single_photon_case() -> Outcome {
    let s = split_single_photon();
    let g = coherence_functions(&s).map_err(err)?;
    check(g.g11 == c(1.0) && g.g20 == c(0.0) && g.g22 == 0.0, format!("g = {g:?}"))?;
    let (a1, a2) = amplitudes_from_g(&g);
    close(a1, 1.0, 1e-12, "A1")?;
    close(a2, 0.0, 1e-12, "A2")?;
    check(matches!(optimal_lo(&s), Err(Error::DegenerateLo(_))), "optimal_lo did not report a degenerate oscillator")?;
    Ok("g = (1, 0, 0), A = (1, 0), optimal LO degenerate".into())
}

fn entangled_states() -> Outcome {
    let mut notes = Vec::new();
    for (variant, expected, settings) in [
        (Entangled::Parallel, (0.0, 1.0), (0.0, FRAC_PI_2, FRAC_PI_4, -FRAC_PI_4)),
        (Entangled::Crossed, (1.0, 0.0), (0.0, FRAC_PI_2, -FRAC_PI_4, FRAC_PI_4)),
    ] {
        let s = entangled(variant);
        let amps = amplitudes(&s).map_err(err)?;
        close(amps.a1, expected.0, 1e-12, "A1")?;
        close(amps.a2, expected.1, 1e-12, "A2")?;
        let bm = bell_max(&s).map_err(err)?;
        close(bm.b_max, 2.0 * SQRT_2, 1e-9, "b_max")?;
        let explicit = BellSettings::new(settings.0, settings.1, settings.2, settings.3).map_err(err)?;
        for backend in [Backend::Expansion, Backend::Evolution] {
            let b = bell_b(&s, &explicit, backend).map_err(err)?;
            close(b, 2.0 * SQRT_2, 1e-9, "B at explicit settings")?;
        }
        notes.push(format!("{variant:?}: A = ({}, {}), b_max = {:.12}", amps.a1, amps.a2, bm.b_max));
    }
    Ok(notes.join("; "))
}

fn two_photon_case() -> Outcome {
    let amps = amplitudes(&two_photon_network().map_err(err)?).map_err(err)?;
    close(amps.a1, 1.0, 1e-12, "A1")?;
    close(amps.a2, 0.0, 1e-12, "A2")?;
    Ok(format!("A = ({}, {})", amps.a1, amps.a2))
}

fn cat_sweep() -> Outcome {
    let mut worst = [0.0f64; 4];
    for alpha in [0.25, 0.5, 1.0] {
        for phi in [0.0, FRAC_PI_4, FRAC_PI_2, PI] {
            let p = CatParams::new(c(alpha), phi);
            let tag = format!("alpha={alpha}, phi={phi:.4}");
            let pred = cat_predictions(p).map_err(err)?;
            let s = split_cat(p, Some(20)).map_err(err)?;
            let g = coherence_functions(&s).map_err(err)?;
            let dg = (g.g11 - pred.g.g11)
                .norm()
                .max((g.g20 - pred.g.g20).norm())
                .max((g.g22 - pred.g.g22).abs());
            check(dg <= 1e-8, format!("{tag}: coherence functions off by {dg:e}"))?;
            let (b1, b2) = optimal_lo(&s).map_err(err)?;
            let four: MixedState = homodyne_network_state(&s, &LoConfig::new(b1, b2, 0.0, 0.0).map_err(err)?)
                .map_err(err)?
                .into();
            let amps = amplitudes(&four).map_err(err)?;
            close(amps.a1, pred.a1, 1e-8, &format!("{tag}: A1"))?;
            close(amps.a2, pred.a2, 1e-8, &format!("{tag}: A2"))?;
            close(amps.total(), 1.0, 1e-10, &format!("{tag}: A1 + A2"))?;
            let bm = bell_max(&four).map_err(err)?;
            let b_pred = 2.0 * SQRT_2 * pred.sum_sq.sqrt();
            close(bm.b_max, b_pred, 1e-6, &format!("{tag}: b_max"))?;
            if phi == FRAC_PI_2 {
                close(bm.b_max, 2.0, 1e-8, &format!("{tag}: b_max"))?;
            }
            worst[0] = worst[0].max(dg);
            worst[1] = worst[1].max((amps.a1 - pred.a1).abs().max((amps.a2 - pred.a2).abs()));
            worst[2] = worst[2].max((amps.total() - 1.0).abs());
            worst[3] = worst[3].max((bm.b_max - b_pred).abs());
        }
    }
    Ok(format!(
        "12 points; max deviations g {:.1e}, A {:.1e}, A1+A2-1 {:.1e}, b_max {:.1e}",
        worst[0], worst[1], worst[2], worst[3]
    ))
}

/// ρ = GG†/tr(GG†) for a Gaussian random complex G.
fn random_density(dim: usize, rng: &mut ChaCha8Rng) -> DMatrix<C64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let rho = &g * g.adjoint();
    let tr = rho.trace();
    rho / tr
}

fn single_mode_splitting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut inputs: Vec<(String, MixedState)> = Vec::new();
    for dim in [3, 4, 5, 6] {
        inputs.push((format!("random rho dim {dim}"), mixture_from_density(&random_density(dim, &mut rng), "a").map_err(err)?));
    }
    let layout = |n| ModeLayout::new(["a"], n).map_err(err);
    inputs.push(("|1>".into(), MultiModeState::fock(layout(1)?, &[1]).map_err(err)?.into()));
    inputs.push((
        "coherent(1)".into(),
        MultiModeState::coherent(layout(coherent_cutoff(1.0))?, &[c(1.0)]).map_err(err)?.into(),
    ));
    inputs.push(("thermal(0.5)".into(), thermal(0.5, 12).map_err(err)?));
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for (name, input) in &inputs {
        let outcome = epr_split_network(input)
            .and_then(|s| amplitudes(&s))
            .map_err(err)
            .and_then(|amps| {
                close(amps.a1, 0.5, 1e-9, &format!("{name}: A1"))?;
                close(amps.a2, 0.5, 1e-9, &format!("{name}: A2"))?;
                worst = worst.max((amps.a1 - 0.5).abs()).max((amps.a2 - 0.5).abs());
                Ok(())
            });
        if let Err(why) = outcome {
            failures.push(format!("{name}: {why}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{} inputs, max |A_k - 1/2| = {worst:.1e}", inputs.len()))
    } else {
        Err(format!(
            "{} of {} inputs fail ({}); the others agree within {worst:.1e}",
            failures.len(),
            inputs.len(),
            failures.join("; ")
        ))
    }
}

fn backend_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut max_diff = 0.0f64;
    let mut max_residual = 0.0f64;
    let zoo = four_mode_catalog().map_err(err)?;
    for entry in &zoo {
        for _ in 0..25 {
            let phases = PhaseSetting::new(rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI)).map_err(err)?;
            let a = output_correlators(&entry.state, phases, Backend::Expansion).map_err(err)?;
            let b = output_correlators(&entry.state, phases, Backend::Evolution).map_err(err)?;
            let d = a.max_abs_diff(&b);
            check(d <= 1e-9, format!("{}: backends differ by {d:e}", entry.name))?;
            max_diff = max_diff.max(d);
        }
        for backend in [Backend::Expansion, Backend::Evolution] {
            let r = sinusoid_residual(&entry.state, 8, backend).map_err(err)?;
            check(r < 1e-8, format!("{}: sinusoid residual {r:e}", entry.name))?;
            max_residual = max_residual.max(r);
        }
    }
    Ok(format!(
        "{} states x 25 phase pairs, max correlator diff {max_diff:.1e}, max residual {max_residual:.1e}",
        zoo.len()
    ))
}

/// Random normalized superposition of every occupation with total ≤ 3.
fn random_four_mode(rng: &mut ChaCha8Rng) -> MultiModeState {
    let mut terms = Vec::new();
    for total in 0..=3u32 {
        for a in 0..=total {
            for b in 0..=total - a {
                for c2 in 0..=total - a - b {
                    let occ = vec![a, b, c2, total - a - b - c2];
                    let z = C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
                    terms.push((occ, z));
                }
            }
        }
    }
    // sparsify so that some states have few terms
    let keep = rng.random_range(2..=terms.len());
    let mut picked = Vec::new();
    for (i, t) in terms.into_iter().enumerate() {
        if i < keep || rng.random::<f64>() < 0.2 {
            picked.push(t);
        }
    }
    MultiModeState::from_terms(
        ModeLayout::new(FOUR_MODES, 3).expect("layout"),
        picked.iter().map(|(o, z)| (o.as_slice(), *z)),
    )
    .expect("nonzero state")
}

fn quantum_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let (mut max_total, mut max_e, mut skipped) = (0.0f64, 0.0f64, 0);
    for _ in 0..200 {
        let s = random_four_mode(&mut rng);
        match amplitudes(&s) {
            Ok(a) => {
                check(a.total() <= 1.0 + 1e-9, format!("A1 + A2 = {}", a.total()))?;
                max_total = max_total.max(a.total());
            }
            Err(Error::ZeroCoincidence(_)) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        }
        for _ in 0..4 {
            let phases = PhaseSetting::new(rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI)).map_err(err)?;
            for backend in [Backend::Expansion, Backend::Evolution] {
                let e = output_correlators(&s, phases, backend).map_err(err)?.e().map_err(err)?;
                check(e.abs() <= 1.0 + 1e-12, format!("|E| = {}", e.abs()))?;
                max_e = max_e.max(e.abs());
            }
        }
    }
    check(skipped < 20, format!("{skipped} of 200 states had no coincidences"))?;
    Ok(format!("200 states ({skipped} without coincidences), max A1+A2 = {max_total:.6}, max |E| = {max_e:.6}"))
}

fn classical_monte_carlo() -> Outcome {
    let n = 100_000;
    let thermal = make_ensemble(&EnsembleKind::Thermal { nbar: [1.0; 4] }, n, 7).map_err(err)?;
    let est = estimate_amplitudes(&thermal).map_err(err)?;
    check(est.a1_hat <= 3.0 * est.se1, format!("thermal a1 = {} vs 3 SE = {}", est.a1_hat, 3.0 * est.se1))?;
    check(est.a2_hat <= 3.0 * est.se2, format!("thermal a2 = {} vs 3 SE = {}", est.a2_hat, 3.0 * est.se2))?;

    let corr = make_ensemble(&EnsembleKind::CorrelatedLo { nbar: [1.0, 1.0] }, n, 7).map_err(err)?;
    let est_corr = estimate_amplitudes(&corr).map_err(err)?;
    close(est_corr.a1_hat, 0.5, 0.01, "correlated_lo a1")?;

    let kinds = [
        EnsembleKind::Delta { point: [c(1.0); 4] },
        EnsembleKind::Delta {
            point: [C64::new(0.3, 1.2), c(-2.0), C64::new(0.0, 0.7), c(0.1)],
        },
        EnsembleKind::Thermal { nbar: [0.2, 3.0, 1.0, 0.5] },
        EnsembleKind::CorrelatedLo { nbar: [0.5, 2.0] },
        EnsembleKind::Mixture(vec![
            (0.4, EnsembleKind::CorrelatedLo { nbar: [1.0, 1.0] }),
            (0.6, EnsembleKind::Delta { point: [c(1.0), c(1.0), c(0.5), c(2.0)] }),
        ]),
    ];
    let mut ensembles = vec![thermal, corr];
    for (i, k) in kinds.iter().enumerate() {
        ensembles.push(make_ensemble(k, n, 100 + i as u64).map_err(err)?);
    }
    let mut samples = 0;
    for e in &ensembles {
        let report = bound_report(&estimate_amplitudes(e).map_err(err)?);
        check(report.within_bound == [true, true], format!("{}: bound exceeded", e.generator_id))?;
        for s in &e.samples {
            check(s.pointwise_bound_holds() == [true, true], format!("pointwise bound fails at {s:?}"))?;
        }
        samples += e.samples.len();
    }
    Ok(format!(
        "thermal a = ({:.5}, {:.5}) with SE ({:.5}, {:.5}); correlated_lo a1 = {:.6}; {} ensembles, {samples} samples pointwise-checked",
        est.a1_hat,
        est.a2_hat,
        est.se1,
        est.se2,
        est_corr.a1_hat,
        ensembles.len()
    ))
}

fn diagram_geometry() -> Outcome {
    let amps = eprlab::correlation::CorrelationAmplitudes::new(0.5, 0.5, 0.0, 0.0);
    let r = classify(&amps, 2.0);
    for (m, what) in [
        (r.stochastic_margin[0], "stochastic margin A1"),
        (r.stochastic_margin[1], "stochastic margin A2"),
        (r.bell_margin, "Bell margin"),
        (r.quantum_margin, "quantum margin"),
    ] {
        check(m.abs() < 1e-12, format!("{what} = {m:e}"))?;
    }
    let pts = boundary_curves(51).map_err(err)?;
    let has = |curve: Curve, a1: f64, a2: f64| {
        pts.iter()
            .any(|p| p.curve == curve && (p.a1 - a1).abs() < 1e-12 && (p.a2 - a2).abs() < 1e-12)
    };
    for curve in [Curve::Stochastic, Curve::Bell, Curve::Quantum] {
        check(has(curve, 0.5, 0.5), format!("{curve} curve misses (0.5, 0.5)"))?;
    }
    check(has(Curve::Bell, 0.0, FRAC_1_SQRT_2), "Bell curve misses (0, 1/sqrt2)")?;
    check(has(Curve::Quantum, 0.0, 1.0), "quantum line misses (0, 1)")?;
    check(has(Curve::Tsirelson, 0.0, 1.0), "Tsirelson circle misses (0, 1)")?;
    Ok("(0.5, 0.5) on stochastic, Bell and quantum boundaries; intercepts (0, 0.707107), (0, 1)".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("coherent pair with optimal oscillators", coherent_pair_with_optimal_lo),
        ("split single photon", split_single_photon_case),
        ("maximally entangled photon pairs", entangled_states),
        ("two-photon network", two_photon_case),
        ("cat-state sweep", cat_sweep),
        ("single-mode splitting network", single_mode_splitting),
        ("backend equivalence and sinusoid form", backend_equivalence),
        ("quantum bound on random states", quantum_bound),
        ("classical Monte Carlo", classical_monte_carlo),
        ("amplitude-diagram geometry", diagram_geometry),
    ];
    let mut failed = 0;
    let start = Instant::now();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} [{secs:.2}s]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} [{secs:.2}s]: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
