//! Invariant suites behind `verify`: each returns rows of
//! (check id, max residual, tolerance).

use std::f64::consts::PI;

use cauchy_kit::airfoil::{finite_hilbert_inverse, finite_hilbert_transform};
use cauchy_kit::cauchy::{
    boundary_value, complement_boundary_value, derivative_bound_check, generalized_functional, mean_value_check,
    one_sided_limit, uniform_convergence_residuals, vanishing_contour_integrals, DensityKind, Side,
};
use cauchy_kit::geometry::{build_unit_circle, ClosedContour, JordanArc};
use cauchy_kit::hilbert::{
    hilbert_circular, hilbert_circular_complementary, hilbert_line, hilbert_line_inverse, parseval_circle,
    parseval_line, PeriodicFunction, RealLineFunction,
};
use cauchy_kit::plemelj::{
    arc_cauchy_integral, default_arc_grid, plemelj_limits, poincare_bertrand_residual, reconstruct_from_jump,
    ArcDensity,
};
use cauchy_kit::singularity::{
    coefficient_decay_rate, exterior_annihilation_check, interior_reproduction_check, probe_boundary,
    taylor_coefficients, BoundarySamples, SingularityPrescription,
};
use cauchy_kit::{BoundaryFunction, Complex64, Result};
use clap::ValueEnum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    BoundaryRelations,
    Convergence,
    IntegralTheorems,
    Hilbert,
    Plemelj,
    DirectProblem,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::BoundaryRelations => "boundary-relations",
            Suite::Convergence => "convergence",
            Suite::IntegralTheorems => "integral-theorems",
            Suite::Hilbert => "hilbert",
            Suite::Plemelj => "plemelj",
            Suite::DirectProblem => "direct-problem",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: String,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    fn new(id: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self { id: id.into(), residual, tolerance }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

pub fn run(suite: Suite, n: usize, seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::BoundaryRelations => boundary_relations(n, &mut rng),
        Suite::Convergence => convergence(n, &mut rng),
        Suite::IntegralTheorems => integral_theorems(n),
        Suite::Hilbert => hilbert(n),
        Suite::Plemelj => plemelj(),
        Suite::DirectProblem => direct_problem(n, &mut rng),
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn pole() -> BoundaryFunction {
    BoundaryFunction::new(|t: Complex64| 1.0 / (t - 2.0)).with_derivative(|t: Complex64| -1.0 / ((t - 2.0) * (t - 2.0)))
}

fn exponential() -> BoundaryFunction {
    let mut f = BoundaryFunction::new(|t: Complex64| t.exp());
    for _ in 0..4 {
        f = f.with_derivative(|t: Complex64| t.exp());
    }
    f
}

fn worst(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn boundary_relations(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (circle, grid) = build_unit_circle(n)?;
    let ellipse = ClosedContour::ellipse(c(0.0, 0.0), 1.5, 1.0)?;
    let params: Vec<f64> = (0..32).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
    let mut rows = Vec::new();
    let exact: [(&str, BoundaryFunction, fn(Complex64) -> Complex64); 2] = [
        ("pole", pole(), |t| 1.0 / (t - 2.0)),
        ("exp", exponential(), |t| t.exp()),
    ];
    for (name, f, g) in &exact {
        let mut inner = Vec::new();
        let mut outer = Vec::new();
        let mut bv = Vec::new();
        let mut on_ellipse = Vec::new();
        for &s in &params {
            let t0 = circle.point(s);
            inner.push((one_sided_limit(f, &circle, &grid, t0, Side::Interior)?.value - g(t0)).norm());
            outer.push(one_sided_limit(f, &circle, &grid, t0, Side::Exterior)?.value.norm());
            bv.push((boundary_value(f, &circle, &grid, t0, 0)?.value - g(t0)).norm());
            let e0 = ellipse.point(s);
            on_ellipse.push((boundary_value(f, &ellipse, &grid, e0, 0)?.value - g(e0)).norm());
        }
        rows.push(Check::new(format!("interior-limit/{name}"), worst(inner), 1e-8));
        rows.push(Check::new(format!("exterior-limit/{name}"), worst(outer), 1e-8));
        rows.push(Check::new(format!("boundary-value/{name}"), worst(bv), 1e-8));
        rows.push(Check::new(format!("boundary-value-ellipse/{name}"), worst(on_ellipse), 1e-8));
    }
    let big_f = BoundaryFunction::new(|t: Complex64| 1.0 / (t * t)).with_decay(2.0);
    let comp = params.iter().map(|&s| {
        let t0 = circle.point(s);
        complement_boundary_value(&big_f, &circle, &grid, t0, 0).map(|v| (v.value - 1.0 / (t0 * t0)).norm())
    });
    rows.push(Check::new("complement-boundary-value/inverse-square", worst(comp.collect::<Result<Vec<_>>>()?), 1e-8));
    Ok(rows)
}

fn random_targets(rng: &mut ChaCha8Rng, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            let r = if rng.random_bool(0.5) { rng.random_range(0.0..0.95) } else { rng.random_range(1.05..4.0) };
            Complex64::from_polar(r, rng.random_range(-PI..PI))
        })
        .collect()
}

fn convergence(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (circle, grid) = build_unit_circle(n)?;
    let targets = random_targets(rng, 200);
    let mut rows = Vec::new();
    for (name, f, order) in [("pole", pole(), 0), ("pole", pole(), 1), ("exp", exponential(), 2)] {
        let r = uniform_convergence_residuals(&f, &circle, &grid, &targets, order)?;
        rows.push(Check::new(format!("interior/{name}/n={order}"), r.max_interior, 1e-9));
        rows.push(Check::new(format!("exterior/{name}/n={order}"), r.max_exterior, 1e-9));
        rows.push(Check::new(format!("near-zone/{name}/n={order}"), r.max_near_zone, 1e-8));
    }
    Ok(rows)
}

fn integral_theorems(n: usize) -> Result<Vec<Check>> {
    let (circle, grid) = build_unit_circle(n)?;
    let mut rows = Vec::new();
    for (name, f) in [("pole", pole()), ("exp", exponential())] {
        for order in 0..2 {
            let v = vanishing_contour_integrals(&f, &circle, &grid, order, DensityKind::Cauchy)?;
            rows.push(Check::new(format!("vanishing-integral/{name}/n={order}"), v.norm(), 1e-8));
        }
    }
    let big_f = BoundaryFunction::new(|t: Complex64| 1.0 / (t * t)).with_decay(2.0);
    let v = vanishing_contour_integrals(&big_f, &circle, &grid, 0, DensityKind::Complement)?;
    rows.push(Check::new("vanishing-integral/complement", v.norm(), 1e-8));

    let f = exponential();
    let mut spread = 0.0f64;
    for z in [c(0.0, 0.0), c(0.3, -0.2), Complex64::from_polar(0.7, 2.0)] {
        let vals = (0..=3)
            .map(|m| generalized_functional(&f, &circle, &grid, z, 3, m).map(|v| v.value))
            .collect::<Result<Vec<_>>>()?;
        for a in &vals {
            for b in &vals {
                spread = spread.max((a - b).norm());
            }
        }
    }
    rows.push(Check::new("equivalent-formulas/exp/n=3", spread, 1e-9));

    let mut gap = 0.0f64;
    for (center, r, order) in [(c(0.0, 0.0), 1.0, 0), (c(0.3, -0.2), 0.5, 1), (c(-0.4, 0.1), 0.8, 2)] {
        gap = gap.max(mean_value_check(&f, center, r, order, 64)?.gap);
    }
    rows.push(Check::new("mean-value/exp", gap, 1e-10));

    let mut equality = 0.0f64;
    let mut excess = 0.0f64;
    for k in 1..=6usize {
        let mono = BoundaryFunction::new(move |t: Complex64| t.powi(k as i32));
        let b = derivative_bound_check(&mono, c(0.0, 0.0), 1.0, k, 0, 64)?;
        equality = equality.max((b.bound - b.actual).abs() / b.bound);
        let b = derivative_bound_check(&f, c(0.1, 0.0), 0.7, k, 0, 64)?;
        excess = excess.max(b.actual - b.bound);
    }
    rows.push(Check::new("cauchy-inequality/monomial-equality", equality, 1e-12));
    rows.push(Check::new("cauchy-inequality/exp-excess", excess.max(0.0), 1e-12));
    Ok(rows)
}

fn hilbert(n: usize) -> Result<Vec<Check>> {
    let mut rows = Vec::new();
    let targets: Vec<f64> = (0..=40).map(|k| -5.0 + 0.25 * k as f64).collect();
    let v = RealLineFunction::decaying(|x| -1.0 / (x * x + 1.0), 2.0);
    let h = hilbert_line(&v, &targets)?;
    rows.push(Check::new(
        "line/lorentzian",
        worst(h.values.iter().zip(&targets).map(|(u, x)| (u - x / (x * x + 1.0)).abs())),
        5e-6,
    ));
    let inner = v.clone().with_window(100.0);
    let u = RealLineFunction::decaying(
        move |x| hilbert_line(&inner, &[x]).map(|r| r.values[0]).unwrap_or(f64::NAN),
        1.0,
    );
    let back = hilbert_line_inverse(&u, &targets)?;
    rows.push(Check::new(
        "line/round-trip",
        worst(back.values.iter().zip(&targets).map(|(w, x)| (w + 1.0 / (x * x + 1.0)).abs())),
        5e-6,
    ));

    let sin = PeriodicFunction::from_fn(n, f64::sin)?;
    let hs = hilbert_circular(&sin)?;
    rows.push(Check::new(
        "circular/sin-to-cos",
        worst(hs.samples().iter().zip(sin.angles()).map(|(a, t)| (a - t.cos()).abs())),
        1e-10,
    ));
    let comp = hilbert_circular_complementary(&sin)?;
    rows.push(Check::new(
        "circular/complementary-negation",
        worst(comp.samples().iter().zip(hs.samples()).map(|(a, b)| (a + b).abs())),
        1e-15,
    ));
    let mut modes = 0.0f64;
    for k in 1..=16.min(n / 2 - 1) {
        let kf = k as f64;
        let ck = PeriodicFunction::from_fn(n, |t| (kf * t).cos())?;
        let hc = hilbert_circular(&ck)?;
        modes = modes.max(worst(hc.samples().iter().zip(ck.angles()).map(|(a, t)| (a + (kf * t).sin()).abs())));
    }
    rows.push(Check::new("circular/fourier-modes", modes, 1e-9));

    let mix = PeriodicFunction::from_fn(n, |t| t.sin() + 0.3 * (3.0 * t).cos())?;
    let gap = parseval_circle(&hilbert_circular(&mix)?, &mix)?;
    rows.push(Check::new("parseval/circle", gap.gap, 1e-8));
    let lu = RealLineFunction::decaying(|x| x / (x * x + 1.0), 1.0);
    let line = parseval_line(&lu, &v)?;
    rows.push(Check::new("parseval/line", line.gap, 1e-5));

    let lin = |x: f64| -1.0 + 0.3 * x;
    let gamma = finite_hilbert_inverse(lin, 128)?;
    let xs: Vec<f64> = (1..40).map(|k| -1.0 + k as f64 / 20.0).collect();
    let back = finite_hilbert_transform(&gamma, &xs, 128)?;
    rows.push(Check::new(
        "finite/round-trip",
        worst(back.iter().zip(&xs).map(|(b, &x)| (b - lin(x)).abs())),
        1e-8,
    ));
    Ok(rows)
}

fn plemelj() -> Result<Vec<Check>> {
    let arc = JordanArc::real_interval(-1.0, 1.0)?;
    let grid = default_arc_grid();
    let g = ArcDensity::new(|t| 1.0 - t * t);
    let mut jump = 0.0f64;
    for k in 0..16 {
        let x = -0.9 + 1.8 * k as f64 / 15.0;
        let (plus, minus) = plemelj_limits(&g, &arc, &grid, c(x, 0.0))?;
        jump = jump.max((plus.value - minus.value - (1.0 - x * x)).norm());
    }
    let mut recon = 0.0f64;
    for k in 0..20 {
        let z = Complex64::from_polar(0.3 + 0.1 * k as f64, 0.45 + 2.0 * PI * k as f64 / 20.0);
        let r = reconstruct_from_jump(&g, &arc, &grid, z)?;
        let d = arc_cauchy_integral(&g, &arc, &grid, z, 0)?;
        recon = recon.max((r.value - d.value).norm());
    }
    let mut rows = vec![Check::new("jump/1-t^2", jump, 1e-8), Check::new("reconstruction/1-t^2", recon, 1e-8)];
    let cases: [(&str, fn(f64, f64) -> f64); 3] =
        [("1", |_, _| 1.0), ("t*t'", |t, tp| t * tp), ("t^2+t'^2", |t, tp| t * t + tp * tp)];
    for (name, f2) in cases {
        let mut residual = 0.0f64;
        let mut gap = 0.0f64;
        for x0 in [-0.6, 0.0, 0.35] {
            let r = poincare_bertrand_residual(f2, &arc, x0, 1e-5)?;
            residual = residual.max(r.residual);
            gap = gap.max(r.level_gap);
        }
        rows.push(Check::new(format!("exchange/{name}"), residual, 1e-5));
        rows.push(Check::new(format!("exchange-level-gap/{name}"), gap, 1e-4));
    }
    Ok(rows)
}

fn direct_problem(n: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (circle, grid) = build_unit_circle(n)?;
    let outside: Vec<Complex64> = (0..50)
        .map(|_| Complex64::from_polar(rng.random_range(1.1..10.0), rng.random_range(-PI..PI)))
        .collect();
    let inside: Vec<Complex64> = (0..50)
        .map(|_| Complex64::from_polar(rng.random_range(0.0..0.9), rng.random_range(-PI..PI)))
        .collect();
    let cases = [
        ("pole", SingularityPrescription::pole(c(2.0, 0.0), 1, c(1.0, 0.0))?),
        ("double-pole", SingularityPrescription::pole(c(0.0, -3.0), 2, c(0.5, 1.0))?),
        ("branch", SingularityPrescription::algebraic_branch(c(2.0, 0.0), -0.5, c(1.0, 0.0))?),
        ("log", SingularityPrescription::log_branch(c(-1.5, 1.5), c(1.0, 0.0))?),
        ("constant", SingularityPrescription::constant(c(1.0, 0.0))),
    ];
    let mut rows = Vec::new();
    for (name, p) in &cases {
        for order in 0..3 {
            let ext = exterior_annihilation_check(p, &circle, &grid, &outside, order)?;
            rows.push(Check::new(format!("exterior/{name}/n={order}"), ext, 1e-9));
            let int = interior_reproduction_check(p, &circle, &grid, &inside, order)?;
            rows.push(Check::new(format!("interior/{name}/n={order}"), int, 1e-9));
        }
    }
    let samples = BoundarySamples::from_fn(|t| 1.0 / (t - 2.0), n)?;
    let n_max = 40.min(n / 2 - 1);
    let tc = taylor_coefficients(&samples, n_max)?;
    let coeff_err = tc
        .coefficients
        .iter()
        .enumerate()
        .map(|(k, ck)| (ck + 0.5f64.powi(k as i32 + 1)).norm());
    rows.push(Check::new("taylor/pole", worst(coeff_err), 1e-12));
    if n_max >= 20 {
        let rate = coefficient_decay_rate(&tc.coefficients, 10..=n_max);
        rows.push(Check::new("taylor/decay-rate", (rate - 0.5).abs() / 0.5, 0.02));
    }
    let probe = probe_boundary(&samples, None, 64)?;
    let err = probe.poles.first().map_or(f64::INFINITY, |p| (p.location - 2.0).norm() / 2.0);
    rows.push(Check::new("probe/pole-location", err, 1e-4));
    Ok(rows)
}
