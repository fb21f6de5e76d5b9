//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use cauchy_kit::airfoil::{
    circulation_routes, endpoint_exponent, finite_hilbert_inverse, finite_hilbert_transform, lift,
    plate_limits, surface_velocities, ChordEnd, FlowConfig, PlateSide,
};
use cauchy_kit::cauchy::{
    boundary_value, derivative_bound_check, generalized_functional, mean_value_check, one_sided_limit,
    vanishing_contour_integrals, DensityKind, Side,
};
use cauchy_kit::geometry::{build_unit_circle, JordanArc};
use cauchy_kit::hilbert::{
    hilbert_circular, hilbert_circular_complementary, hilbert_line, hilbert_line_inverse, parseval_circle,
    parseval_line, PeriodicFunction, RealLineFunction,
};
use cauchy_kit::plemelj::{
    arc_cauchy_integral, default_arc_grid, plemelj_limits, poincare_bertrand_residual, reconstruct_from_jump,
    ArcDensity,
};
use cauchy_kit::singularity::{exterior_annihilation_check, probe_boundary, BoundarySamples, SingularityPrescription};
use cauchy_kit::{BoundaryFunction, Complex64};

type Outcome = Result<Vec<(String, f64, f64)>, String>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn exp_fn() -> BoundaryFunction {
    let mut f = BoundaryFunction::new(|t: Complex64| t.exp());
    for _ in 0..4 {
        f = f.with_derivative(|t: Complex64| t.exp());
    }
    f
}

fn pole_fn() -> BoundaryFunction {
    BoundaryFunction::new(|t: Complex64| 1.0 / (t - 2.0)).with_derivative(|t: Complex64| -1.0 / ((t - 2.0) * (t - 2.0)))
}

fn max_abs(it: impl Iterator<Item = f64>) -> f64 {
    it.fold(0.0, f64::max)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn boundary_relations() -> Outcome {
    let (contour, grid) = build_unit_circle(256).map_err(err)?;
    let points: Vec<Complex64> = (0..32).map(|k| Complex64::from_polar(1.0, 2.0 * PI * (k as f64 + 0.37) / 32.0)).collect();
    let exact: [fn(Complex64) -> Complex64; 2] = [|t| 1.0 / (t - 2.0), |t| t.exp()];
    let mut rows = Vec::new();
    for (name, f, exact) in [("1/(t-2)", pole_fn(), exact[0]), ("e^t", exp_fn(), exact[1])] {
        let (mut r1, mut r2) = (0.0f64, 0.0f64);
        for &t0 in &points {
            let plus = one_sided_limit(&f, &contour, &grid, t0, Side::Interior).map_err(err)?;
            r1 = r1.max((plus.value - exact(t0)).norm());
            let bv = boundary_value(&f, &contour, &grid, t0, 0).map_err(err)?;
            r2 = r2.max((bv.value - exact(t0)).norm());
        }
        rows.push((format!("relation I, {name}"), r1, 1e-8));
        rows.push((format!("relation II, {name}"), r2, 1e-8));
    }
    Ok(rows)
}

fn exterior_annihilation() -> Outcome {
    let (contour, grid) = build_unit_circle(256).map_err(err)?;
    let targets: Vec<Complex64> = (0..50)
        .map(|k| Complex64::from_polar(1.1 * (10.0f64 / 1.1).powf(k as f64 / 49.0), 2.399963 * k as f64))
        .collect();
    let cases = [
        ("pole at 2", SingularityPrescription::pole(c(2.0, 0.0), 1, c(1.0, 0.0)).map_err(err)?),
        ("branch at 2", SingularityPrescription::algebraic_branch(c(2.0, 0.0), -0.5, c(1.0, 0.0)).map_err(err)?),
        ("constant", SingularityPrescription::constant(c(1.0, 0.0))),
    ];
    let mut rows = Vec::new();
    for (name, p) in cases {
        for n in 0..3 {
            let r = exterior_annihilation_check(&p, &contour, &grid, &targets, n).map_err(err)?;
            rows.push((format!("{name}, n={n}"), r, 1e-9));
        }
    }
    Ok(rows)
}

fn equivalent_formulas() -> Outcome {
    let (contour, grid) = build_unit_circle(256).map_err(err)?;
    let f = exp_fn();
    let mut worst = 0.0f64;
    for z in [c(0.0, 0.0), c(0.3, -0.2), Complex64::from_polar(0.7, 2.0), c(0.95, 0.0)] {
        let vals: Vec<Complex64> = (0..=3)
            .map(|m| generalized_functional(&f, &contour, &grid, z, 3, m).map(|v| v.value))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        for a in &vals {
            for b in &vals {
                worst = worst.max((a - b).norm());
            }
        }
    }
    Ok(vec![("pairwise J_(3,m) spread, e^t".into(), worst, 1e-9)])
}

fn vanishing_integrals() -> Outcome {
    let (contour, grid) = build_unit_circle(256).map_err(err)?;
    let mut rows = Vec::new();
    for (name, f) in [("1/(t-2)", pole_fn()), ("e^t", exp_fn())] {
        for n in 0..2 {
            let v = vanishing_contour_integrals(&f, &contour, &grid, n, DensityKind::Cauchy).map_err(err)?;
            rows.push((format!("{name}, n={n}"), v.norm(), 1e-8));
        }
    }
    Ok(rows)
}

fn line_pair() -> Outcome {
    let targets: Vec<f64> = (0..=40).map(|k| -5.0 + 0.25 * k as f64).collect();
    let v = RealLineFunction::decaying(|x| -1.0 / (x * x + 1.0), 2.0).with_window(50.0);
    let h = hilbert_line(&v, &targets).map_err(err)?;
    let forward = max_abs(h.values.iter().zip(&targets).map(|(u, x)| (u - x / (x * x + 1.0)).abs()));

    let inner = v.clone().with_window(100.0);
    let u = RealLineFunction::decaying(
        move |x| hilbert_line(&inner, &[x]).map(|r| r.values[0]).unwrap_or(f64::NAN),
        1.0,
    )
    .with_window(50.0);
    let back = hilbert_line_inverse(&u, &targets).map_err(err)?;
    let round = max_abs(back.values.iter().zip(&targets).map(|(w, x)| (w + 1.0 / (x * x + 1.0)).abs()));
    Ok(vec![
        ("H[-1/(x^2+1)] vs x/(x^2+1)".into(), forward, 5e-6),
        ("round trip inverse(H)".into(), round, 5e-6),
    ])
}

fn circular_transform() -> Outcome {
    let v = PeriodicFunction::from_fn(512, f64::sin).map_err(err)?;
    let u = hilbert_circular(&v).map_err(err)?;
    let sin_err = max_abs(u.samples().iter().zip(v.angles()).map(|(a, t)| (a - t.cos()).abs()));
    let comp = hilbert_circular_complementary(&v).map_err(err)?;
    let negation = max_abs(comp.samples().iter().zip(u.samples()).map(|(a, b)| (a + b).abs()));
    let mut table = 0.0f64;
    for k in 1..=16 {
        let kf = k as f64;
        let cos_k = PeriodicFunction::from_fn(512, |t| (kf * t).cos()).map_err(err)?;
        let sin_k = PeriodicFunction::from_fn(512, |t| (kf * t).sin()).map_err(err)?;
        let hc = hilbert_circular(&cos_k).map_err(err)?;
        let hs = hilbert_circular(&sin_k).map_err(err)?;
        for (j, t) in cos_k.angles().iter().enumerate() {
            table = table.max((hc.samples()[j] + (kf * t).sin()).abs());
            table = table.max((hs.samples()[j] - (kf * t).cos()).abs());
        }
    }
    Ok(vec![
        ("H[sin] vs cos, 512 nodes".into(), sin_err, 1e-10),
        ("complementary + plain".into(), negation, 0.0),
        ("Fourier modes k <= 16".into(), table, 1e-9),
    ])
}

fn parseval() -> Outcome {
    let v = PeriodicFunction::from_fn(256, |t| t.sin() + 0.3 * (4.0 * t).cos() - 0.2 * (7.0 * t).sin()).map_err(err)?;
    let u = hilbert_circular(&v).map_err(err)?;
    let circle = parseval_circle(&u, &v).map_err(err)?;
    let lu = RealLineFunction::decaying(|x| x / (x * x + 1.0), 1.0);
    let lv = RealLineFunction::decaying(|x| -1.0 / (x * x + 1.0), 2.0);
    let line = parseval_line(&lu, &lv).map_err(err)?;
    Ok(vec![("circle pair gap".into(), circle.gap, 1e-8), ("line pair gap".into(), line.gap, 1e-5)])
}

fn plemelj() -> Outcome {
    let arc = JordanArc::real_interval(-1.0, 1.0).map_err(err)?;
    let grid = default_arc_grid();
    let g = ArcDensity::new(|t| 1.0 - t * t);
    let mut jump = 0.0f64;
    for k in 0..16 {
        let x = -0.9 + 1.8 * k as f64 / 15.0;
        let (plus, minus) = plemelj_limits(&g, &arc, &grid, c(x, 0.0)).map_err(err)?;
        jump = jump.max((plus.value - minus.value - (1.0 - x * x)).norm());
    }
    // (1/2πi) ∫ (1-t²)/(t-z) dt = (1/2πi) [-2z + (1-z²) log((z-1)/(z+1))]
    let closed = |z: Complex64| (-2.0 * z + (1.0 - z * z) * ((z - 1.0) / (z + 1.0)).ln()) / c(0.0, 2.0 * PI);
    let mut recon = 0.0f64;
    for k in 0..20 {
        let z = c(0.0, 0.0) + Complex64::from_polar(0.3 + 0.1 * k as f64, 0.45 + 2.0 * PI * k as f64 / 20.0);
        let r = reconstruct_from_jump(&g, &arc, &grid, z).map_err(err)?;
        let d = arc_cauchy_integral(&g, &arc, &grid, z, 0).map_err(err)?;
        recon = recon.max((r.value - d.value).norm()).max((d.value - closed(z)).norm());
    }
    Ok(vec![("jump f+ - f- = g".into(), jump, 1e-8), ("reconstruction vs direct".into(), recon, 1e-8)])
}

fn poincare_bertrand() -> Outcome {
    let arc = JordanArc::real_interval(-1.0, 1.0).map_err(err)?;
    let cases: [(&str, Box<dyn Fn(f64, f64) -> f64>); 3] = [
        ("1", Box::new(|_, _| 1.0)),
        ("t t'", Box::new(|t, tp| t * tp)),
        ("t^2 + t'^2", Box::new(|t, tp| t * t + tp * tp)),
    ];
    let mut rows = Vec::new();
    for (name, f2) in cases {
        let mut worst = 0.0f64;
        let mut gap = 0.0f64;
        for x0 in [-0.6, 0.0, 0.35] {
            let r = poincare_bertrand_residual(&f2, &arc, x0, 1e-5).map_err(err)?;
            if r.slow_convergence {
                return Err(format!("{name}: grid levels disagree by {:.2e}", r.level_gap));
            }
            worst = worst.max(r.residual);
            gap = gap.max(r.level_gap);
        }
        rows.push((format!("f2 = {name}"), worst, 1e-5));
        rows.push((format!("f2 = {name}, level gap"), gap, 1e-4));
    }
    Ok(rows)
}

fn airfoil() -> Outcome {
    let cfg = FlowConfig::new(1.0, PI / 6.0, 1.0).map_err(err)?;
    let routes = circulation_routes(&cfg, 128).map_err(err)?;
    let gamma = 2.0 * PI * cfg.speed * cfg.alpha.sin();
    let l = lift(&cfg).map_err(err)?;
    let l_exact = 2.0 * PI * cfg.density * cfg.speed.powi(2) * cfg.alpha.sin();
    let (up, _) = surface_velocities(&cfg, 0.0, PlateSide::Upper).map_err(err)?;
    let (um, _) = surface_velocities(&cfg, 0.0, PlateSide::Lower).map_err(err)?;
    let d = cfg.downwash();
    let (wp, wm) = plate_limits(|_| d, 0.0, 128).map_err(err)?;
    let surface = max_abs([(up - 0.5).abs(), (um + 0.5).abs(), (wp.re - 0.5).abs(), (wm.re + 0.5).abs()].into_iter());
    let dot = l.vector[0] * cfg.alpha.cos() + l.vector[1] * cfg.alpha.sin();
    Ok(vec![
        ("circulation relative error".into(), (routes.surface - gamma).abs() / gamma, 1e-8),
        ("lift relative error".into(), (l.magnitude - l_exact).abs() / l_exact, 1e-8),
        ("surface u(0) upper/lower".into(), surface, 1e-10),
        ("circulation route spread".into(), routes.max_disagreement(), 1e-8),
        ("lift . free stream".into(), dot.abs(), 1e-12),
    ])
}

fn finite_inversion() -> Outcome {
    let v = |x: f64| -1.0 + 0.3 * x;
    let gamma = finite_hilbert_inverse(v, 128).map_err(err)?;
    let xs: Vec<f64> = (1..40).map(|k| -1.0 + k as f64 / 20.0).collect();
    let back = finite_hilbert_transform(&gamma, &xs, 128).map_err(err)?;
    let round = max_abs(back.iter().zip(&xs).map(|(b, &x)| (b - v(x)).abs()));
    let lead = endpoint_exponent(&gamma, ChordEnd::Leading).abs();
    Ok(vec![
        ("G(G^-1 v) - v".into(), round, 1e-8),
        ("|leading-edge exponent| - 0.5".into(), (lead - 0.5).abs(), 0.02),
        ("gamma(1)".into(), gamma.eval(1.0).abs(), 0.0),
    ])
}

fn inverse_probe() -> Outcome {
    let one = BoundarySamples::from_fn(|t| 1.0 / (t - 2.0), 256).map_err(err)?;
    let r1 = probe_boundary(&one, None, 64).map_err(err)?;
    if !r1.poles_asserted || r1.poles.len() != 1 {
        return Err(format!("single pole not asserted: {}", r1.note));
    }
    let e1 = (r1.poles[0].location - 2.0).norm() / 2.0;

    let a2 = c(0.0, -3.0);
    let two = BoundarySamples::from_fn(move |t| 1.0 / (t - 2.0) + 1.0 / (t - a2), 256).map_err(err)?;
    let r2 = probe_boundary(&two, None, 64).map_err(err)?;
    if r2.poles.len() != 2 {
        return Err(format!("expected two poles, got {}", r2.poles.len()));
    }
    let e2 = [c(2.0, 0.0), a2]
        .iter()
        .map(|a| r2.poles.iter().map(|p| (p.location - a).norm() / a.norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);

    let branch = BoundarySamples::from_fn(|t| (t - 2.0).powf(-0.5), 256).map_err(err)?;
    let rb = probe_boundary(&branch, None, 64).map_err(err)?;
    let asserted = if rb.poles_asserted { 1.0 } else { 0.0 };
    Ok(vec![
        ("single pole relative error".into(), e1, 1e-4),
        ("two poles relative error".into(), e2, 1e-3),
        ("branch input asserted (0 = no)".into(), asserted, 0.0),
    ])
}

fn mean_value() -> Outcome {
    let f = exp_fn();
    let mut gap = 0.0f64;
    for (center, r, n) in [(c(0.0, 0.0), 1.0, 0), (c(0.3, -0.2), 0.5, 1), (c(-0.4, 0.1), 0.8, 2)] {
        gap = gap.max(mean_value_check(&f, center, r, n, 64).map_err(err)?.gap);
    }
    let mut equality = 0.0f64;
    let mut violated = 0.0;
    for k in 1..=6 {
        let mono = BoundaryFunction::new(move |t: Complex64| t.powi(k as i32));
        let b = derivative_bound_check(&mono, c(0.0, 0.0), 1.0, k, 0, 64).map_err(err)?;
        equality = equality.max((b.bound - b.actual).abs() / b.bound);
        if !b.satisfied {
            violated = 1.0;
        }
        let b = derivative_bound_check(&exp_fn(), c(0.1, 0.0), 0.7, k, 0, 64).map_err(err)?;
        if !b.satisfied {
            violated = 1.0;
        }
    }
    Ok(vec![
        ("mean-value gap, e^t".into(), gap, 1e-10),
        ("monomial equality witness".into(), equality, 1e-12),
        ("inequality violations".into(), violated, 0.0),
    ])
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 13] = [
        ("boundary relations", boundary_relations),
        ("exterior annihilation", exterior_annihilation),
        ("equivalent derivative formulas", equivalent_formulas),
        ("vanishing contour integrals", vanishing_integrals),
        ("Hilbert line pair", line_pair),
        ("circular transform", circular_transform),
        ("Parseval", parseval),
        ("Plemelj jump and reconstruction", plemelj),
        ("Poincare-Bertrand exchange", poincare_bertrand),
        ("flat-plate airfoil", airfoil),
        ("finite Hilbert inversion", finite_inversion),
        ("inverse pole probe (experimental)", inverse_probe),
        ("mean value and Cauchy inequality", mean_value),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(rows) => {
                let ok = rows.iter().all(|(_, v, tol)| v.is_finite() && v <= tol);
                let detail: Vec<String> = rows
                    .iter()
                    .map(|(label, v, tol)| format!("{label}: {v:.2e} (tol {tol:.0e})"))
                    .collect();
                println!("{} {:>2} {name}: {}", if ok { "PASS" } else { "FAIL" }, i + 1, detail.join("; "));
                if !ok {
                    failures += 1;
                }
            }
            Err(e) => {
                println!("FAIL {:>2} {name}: {e}", i + 1);
                failures += 1;
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
