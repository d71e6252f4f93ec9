//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dtqw_core::algebra::{angle_distance, Mat2, Vec3};
use dtqw_core::coin::CoinParams;
use dtqw_core::edge::{
    analytic_edge_state, count_gap_states, default_ring_for_steps, eigen_residual, interface_experiment, truncated_norm,
    InitialCase, InterfaceSpec,
};
use dtqw_core::lattice::{build_walk, diagonalize, ThetaProfile};
use dtqw_core::momentum::{band_structure, bloch_hamiltonian, bloch_vector, dispersion, gap_report, step_matrix};
use dtqw_core::symmetry::{
    chiral_residual, eigenphases, parity_residual_bloch, phase_multiset_distance, phs_residual, sublattice_residual,
    timeshift_walk, timeshift_winding,
};
use dtqw_core::topology::{
    eighth_turn_thetas, pole_assignment, predicted_edge_states, rotated_winding, winding_mt, Band, FrameVariant, Pole,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn taylor_exp(m: &Mat2) -> Mat2 {
    let s = (m.norm().log2().ceil().max(0.0) as i32) + 4;
    let scaled = m.scale(Complex64::new(0.5f64.powi(s), 0.0));
    let (mut term, mut sum) = (Mat2::IDENTITY, Mat2::IDENTITY);
    for j in 1..30 {
        term = (term * scaled).scale(Complex64::new(1.0 / j as f64, 0.0));
        sum = sum + term;
    }
    for _ in 0..s {
        sum = sum * sum;
    }
    sum
}

fn dispersion_reproduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (t, a, k) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        let w = dispersion(&CoinParams::new(0.0, a, 0.0, t), k);
        worst = worst.max((w.cos() - t.cos() * (k - a).cos()).abs());
    }
    ensure(worst < 1e-12, || format!("cos ω residual {worst:e}"))?;
    for theta in [0.0, PI] {
        let g = gap_report(&band_structure(&CoinParams::new(0.0, 0.4, 0.0, theta), 512).map_err(err)?);
        let closed = g.gap_at_delta.min(g.gap_at_delta_plus_pi);
        ensure(closed < 1e-9 && !g.is_gapped, || format!("θ={theta}: gap {closed:e}"))?;
    }
    for theta in [FRAC_PI_4, -3.0 * PI / 8.0, 7.0 * PI / 8.0] {
        let p = CoinParams::new(0.0, 0.4, 0.0, theta);
        let g = gap_report(&band_structure(&p, 512).map_err(err)?);
        let lo = theta.cos().abs().acos();
        ensure((g.gap_at_delta - 2.0 * lo).abs() < 1e-12 && (g.gap_at_delta_plus_pi - 2.0 * lo).abs() < 1e-12, || {
            format!("θ={theta}: gaps {g:?}")
        })?;
    }
    Ok(format!("max |cos ω − cosθ cos(k−α)| = {worst:.1e}"))
}

fn bloch_map_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut unit, mut anti, mut expo): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..1000 {
        let t = rng.random_range(0.05..PI - 0.05) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let p = CoinParams::new(rng.random_range(-PI..PI), rng.random_range(-PI..PI), rng.random_range(-PI..PI), t);
        let k = rng.random_range(-PI..PI);
        let n = bloch_vector(&p, k).map_err(err)?;
        unit = unit.max((n.norm() - 1.0).abs());
        anti = anti.max((n + bloch_vector(&p, k + PI).map_err(err)?).norm());
        let h = bloch_hamiltonian(&p, k).map_err(err)?;
        expo = expo.max(taylor_exp(&h.scale(Complex64::new(0.0, -1.0))).max_abs_diff(&step_matrix(&p, k)));
    }
    ensure(unit < 1e-12 && anti < 1e-12 && expo < 1e-12, || format!("{unit:e} {anti:e} {expo:e}"))?;
    Ok(format!("‖n‖−1 {unit:.1e}, n_k+n_(k+π) {anti:.1e}, e^(−iH)−U {expo:.1e}"))
}

fn rotated_winding_values() -> Outcome {
    let mut v2 = Vec::new();
    for t in eighth_turn_thetas() {
        let p = CoinParams::real(t);
        let w1 = rotated_winding(&p, FrameVariant::V1, &Vec3::X, 512).map_err(err)?;
        let expect = if t > 0.0 { -1 } else { 1 };
        ensure(w1 == expect, || format!("V1 winding {w1} at θ={t}"))?;
        v2.push(rotated_winding(&p, FrameVariant::V2, &Vec3::Z, 512).map_err(err)?);
    }
    ensure(v2.iter().all(|&w| w == v2[0]), || format!("V2 windings {v2:?}"))?;
    Ok(format!("V1 = −sgn θ on 14 angles, V2 = {} throughout", v2[0]))
}

fn mt_invariant() -> Outcome {
    let mut values = Vec::new();
    for t in eighth_turn_thetas() {
        let p = CoinParams::real(t);
        values.push(winding_mt(&p, Band::Upper, 512).map_err(err)?);
        values.push(winding_mt(&p, Band::Lower, 512).map_err(err)?);
    }
    ensure(values.iter().all(|&w| w == values[0]), || format!("windings {values:?}"))?;
    let pos = pole_assignment(&CoinParams::real(FRAC_PI_4)).map_err(err)?;
    let neg = pole_assignment(&CoinParams::real(-FRAC_PI_4)).map_err(err)?;
    // P_N = f_{θ>0,+}(k1) = f_{θ<0,+}(k0), P_S = f_{θ>0,+}(k0) = f_{θ<0,+}(k1)
    ensure(pos.at_k1 == Pole::North && neg.at_k0 == Pole::North, || "north pole equation".into())?;
    ensure(pos.at_k0 == Pole::South && neg.at_k1 == Pole::South, || "south pole equation".into())?;
    Ok(format!("winding_mt = {} for both bands and all 14 angles; poles match", values[0]))
}

fn symmetry_residuals() -> Outcome {
    let mut worst: f64 = 0.0;
    let ring = |p: &CoinParams, n| build_walk(p, &ThetaProfile::homogeneous(p.theta, n)?, n);
    for n in [8usize, 16] {
        let interface = build_walk(
            &CoinParams::new(0.3, 0.0, 0.9, 0.0),
            &ThetaProfile::sharp_interface(-FRAC_PI_4, FRAC_PI_4, n).map_err(err)?,
            n,
        )
        .map_err(err)?;
        worst = worst.max(sublattice_residual(&interface).map_err(err)?.value);
        for p in [CoinParams::real(FRAC_PI_4), CoinParams::new(0.0, 2.0 * PI * 3.0 / n as f64, PI / 3.0, -1.1)] {
            let u = ring(&p, n).map_err(err)?;
            worst = worst.max(sublattice_residual(&u).map_err(err)?.value);
            worst = worst.max(phs_residual(&u).map_err(err)?.residual.value);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let k = rng.random_range(-PI..PI);
        let t = rng.random_range(0.1..3.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let p = CoinParams::new(rng.random_range(-PI..PI), rng.random_range(-PI..PI), rng.random_range(-PI..PI), t);
        worst = worst.max(parity_residual_bloch(&p, k).map_err(err)?);
        worst = worst.max(chiral_residual(&CoinParams::new(p.delta, p.alpha, 0.0, t), k).map_err(err)?);
    }
    ensure(worst < 1e-12, || format!("residual {worst:e}"))?;

    let mut spectral: f64 = 0.0;
    for t in [FRAC_PI_4, -FRAC_PI_4] {
        let p = CoinParams::real(t);
        let plain = eigenphases(&ring(&p, 16).map_err(err)?).map_err(err)?;
        for v in [FrameVariant::V1, FrameVariant::V2] {
            let shifted = eigenphases(&timeshift_walk(&p, v, 16).map_err(err)?).map_err(err)?;
            spectral = spectral.max(phase_multiset_distance(&plain, &shifted));
        }
    }
    ensure(spectral < 1e-10, || format!("spectra differ by {spectral:e}"))?;

    let w = |t: f64, v, axis: &Vec3| timeshift_winding(&CoinParams::real(t), v, axis, 512).map_err(err);
    let (a, b) = (w(FRAC_PI_4, FrameVariant::V1, &Vec3::X)?, w(-FRAC_PI_4, FrameVariant::V1, &Vec3::X)?);
    let (c, d) = (w(FRAC_PI_4, FrameVariant::V2, &Vec3::Z)?, w(-FRAC_PI_4, FrameVariant::V2, &Vec3::Z)?);
    ensure(a == -1 && b == 1 && c == d, || format!("time-shifted windings V1 ({a},{b}) V2 ({c},{d})"))?;
    Ok(format!(
        "max residual {worst:.1e}; U, Ũ1, Ũ2 spectra within {spectral:.1e}; windings V1 ({a},{b}) V2 ({c},{d})"
    ))
}

fn edge_state_oracle() -> Outcome {
    let spec = InterfaceSpec::reference(64).map_err(err)?;
    let u = spec.walk().map_err(err)?;
    let data = diagonalize(&u).map_err(err)?;
    let (near0, near_pi) = (data.near(0.0, 1e-6).len(), data.near(PI, 1e-6).len());
    ensure(near0 == 2 && near_pi == 2, || format!("gap states {near0} + {near_pi}"))?;
    let mut worst: f64 = 0.0;
    for (eta, target) in [(0.0, spec.delta), (PI, spec.delta + PI)] {
        let e = analytic_edge_state(&spec, eta).map_err(err)?;
        let r = eigen_residual(&u, &e).map_err(err)?;
        ensure(r.residual < 1e-8, || format!("η={eta}: residual {:e}", r.residual))?;
        ensure(angle_distance(r.quasienergy, target) < 1e-8, || format!("η={eta}: ω = {}", r.quasienergy))?;
        worst = worst.max(r.residual);
    }
    let sum = truncated_norm(&spec, 200);
    ensure((sum - 2.0 * SQRT_2).abs() < 1e-10, || format!("norm sum {sum}"))?;
    Ok(format!("2+2 gap states; residual {worst:.1e}; Σ|a|²+|b|² − 2√2 = {:.1e}", sum - 2.0 * SQRT_2))
}

fn interface_dynamics_cases() -> Outcome {
    let steps = 200;
    let spec = InterfaceSpec::reference(default_ring_for_steps(steps)).map_err(err)?;
    let mut details = Vec::new();
    for case in InitialCase::ALL {
        let r = interface_experiment(&spec, case, steps).map_err(err)?.record;
        ensure(r.passed, || format!("{case:?}: {r:?}"))?;
        details.push(match case {
            InitialCase::OrthogonalToBoth => format!("orth P={:.1e}", r.final_interface_prob),
            InitialCase::OverlapOne => format!("one {:.4}/{:.4}", r.plateau, r.predicted),
            InitialCase::OverlapBoth => format!("both {:.4}/{:.4} osc {:.3}", r.plateau, r.predicted, r.oscillation_amplitude),
        });
    }
    Ok(details.join(", "))
}

fn bulk_boundary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 128;
    let mut magnitude = || rng.random_range(PI / 8.0..=7.0 * PI / 8.0);
    let mut pairs = Vec::new();
    for i in 0..40 {
        let (a, b) = (magnitude(), magnitude());
        let opposite = i < 20;
        pairs.push(if opposite { (-a, b) } else if i % 2 == 0 { (a, b) } else { (-a, -b) });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (i, &(t1, t2)) in pairs.iter().enumerate() {
        let (d, a, b) = (rng.random_range(-PI..PI), rng.random_range(-PI..PI), rng.random_range(-PI..PI));
        let p1 = CoinParams::new(d, a, b, t1);
        let p2 = CoinParams::new(d, a, b, t2);
        let predicted = predicted_edge_states(&p1, &p2).map_err(err)?;
        let count = count_gap_states(&p1, t1, t2, n).map_err(err)?;
        let (origin, wrap) = count.per_interface();
        let expect = if i < 20 { 2 } else { 0 };
        ensure(predicted == expect, || format!("pair {i}: predicted {predicted}"))?;
        ensure(origin == predicted && wrap == predicted && count.total() == 2 * predicted, || {
            format!("pair {i} (θ1={t1:.3}, θ2={t2:.3}): predicted {predicted}, found {count:?}")
        })?;
    }
    Ok("20 opposite-sign pairs: 2 per interface; 20 same-sign pairs: none".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("dispersion reproduction", dispersion_reproduction, Duration::from_secs(1)),
        ("Bloch-map identities", bloch_map_identities, Duration::from_secs(1)),
        ("rotated winding values", rotated_winding_values, Duration::from_secs(1)),
        ("M_T invariant and poles", mt_invariant, Duration::from_secs(1)),
        ("symmetry residuals", symmetry_residuals, Duration::from_secs(5)),
        ("edge-state oracle", edge_state_oracle, Duration::from_secs(10)),
        ("interface dynamics", interface_dynamics_cases, Duration::from_secs(30)),
        ("bulk-boundary consistency", bulk_boundary, Duration::from_secs(120)),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *budget => Err(format!("{detail}; over time budget {budget:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({:.2} s): {detail}", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failures += 1;
                println!("FAIL {} {name} ({:.2} s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
