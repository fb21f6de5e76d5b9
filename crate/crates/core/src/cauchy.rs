//! Cauchy functionals `J_n`, `J_(n,m)`, `K_n`, the complement functional and
//! the boundary relations, convergence residuals and mean-value checks built on
//! them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::BoundaryFunction;
use crate::geometry::contour::{classify_point, golden_min, ClosedContour, Discretization, PointClassification, Verdict};
use crate::geometry::integrate::{on_contour_parameter, SubtractedKernel};
use crate::geometry::quadrature::QuadratureGrid;
use crate::geometry::spectral;

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);
const PI_I: Complex64 = Complex64::new(0.0, PI);

/// Value of a Cauchy-type functional at one target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FunctionalValue {
    pub value: Complex64,
    pub target: Complex64,
    pub verdict: Verdict,
    /// `(n, m)`: derivative order produced and derivative order integrated.
    pub order: (usize, usize),
    /// Target in the near zone; the kernel peak is narrower than the grid.
    pub ill_conditioned: bool,
    /// The density did not look smooth at an on-contour target.
    pub accuracy_warning: bool,
}

/// Side of the contour from which a boundary limit is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Interior,
    Exterior,
}

/// Which family of density a contour integral refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityKind {
    /// Regular inside the contour.
    Cauchy,
    /// Regular outside the contour and vanishing at infinity.
    Complement,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `Σ g_j / (t_j - z)^p dt_j`.
fn kernel_sum(disc: &Discretization, g: &[Complex64], z: Complex64, p: i32) -> Complex64 {
    disc.t
        .iter()
        .zip(&disc.dt)
        .zip(g)
        .map(|((t, dt), v)| v / (t - z).powi(p) * dt)
        .sum()
}

/// `(1/2πi) ∮ g(t)/(t - z) dt` with the value at the nearest contour point
/// subtracted, which keeps the trapezoid rule accurate close to the contour.
fn subtracted_first_order(
    disc: &Discretization,
    g: &[Complex64],
    g_near: Complex64,
    z: Complex64,
    winding: i64,
) -> Complex64 {
    let sum: Complex64 = disc
        .t
        .iter()
        .zip(&disc.dt)
        .zip(g)
        .map(|((t, dt), v)| (v - g_near) / (t - z) * dt)
        .sum();
    sum / TWO_PI_I + g_near * winding as f64
}

/// `f^(m)` at contour parameter `s`, from the supplied evaluator or by
/// interpolating the node values `g`.
fn value_at_parameter(f: &BoundaryFunction, m: usize, contour: &ClosedContour, g: &[Complex64], s: f64) -> Complex64 {
    match f.derivative_fn(m) {
        Some(d) => d(contour.point(s)),
        None => spectral::trig_interpolate(g, s),
    }
}

/// A finer periodic grid for a target at `distance` from the contour, so that
/// the first-order kernel is resolved; `None` when `grid` already suffices.
fn near_zone_grid(contour: &ClosedContour, grid: &QuadratureGrid, z: Complex64) -> Result<Option<QuadratureGrid>> {
    let (s, distance) = contour.locate(z);
    let speed = contour.derivative(s).norm();
    let param_distance = distance / speed;
    let wanted = (40.0 / param_distance).min((1usize << 17) as f64).ceil() as usize;
    if wanted <= grid.len() {
        return Ok(None);
    }
    Ok(Some(QuadratureGrid::periodic_trapezoid(wanted.next_power_of_two())?))
}

/// Near-zone evaluation of `(1/2πi) ∮ f^(n)(t)/(t - z) dt` on a refined grid.
fn near_zone_first_order(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    z: Complex64,
    n: usize,
    winding: i64,
) -> Result<Complex64> {
    let fine = near_zone_grid(contour, grid, z)?;
    let grid = fine.as_ref().unwrap_or(grid);
    let disc = contour.discretize(grid)?;
    let g = f.node_derivatives(n, &disc)?;
    let (s, _) = contour.locate(z);
    let g_near = value_at_parameter(f, n, contour, &g, s);
    Ok(subtracted_first_order(&disc, &g, g_near, z, winding))
}

fn off_contour(contour: &ClosedContour, grid: &QuadratureGrid, z: Complex64) -> Result<PointClassification> {
    let cls = classify_point(contour, grid, z, contour.default_tolerance())?;
    if cls.is_on_contour() {
        return Err(Error::OnContour { re: z.re, im: z.im });
    }
    Ok(cls)
}

/// `J_n[f](z) = (n!/2πi) ∮ f(t)/(t-z)^{n+1} dt`: `f^(n)(z)` inside, `0` outside.
///
/// In the near zone the equivalent first-order form `(1/2πi) ∮ f^(n)/(t-z) dt`
/// is used on a grid refined to the target distance, with the nearest boundary
/// value subtracted.
pub fn cauchy_functional(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    z: Complex64,
    n: usize,
) -> Result<FunctionalValue> {
    let cls = off_contour(contour, grid, z)?;
    let disc = contour.discretize(grid)?;
    let near_form = if cls.near_zone {
        near_zone_first_order(f, contour, grid, z, n, cls.winding).ok()
    } else {
        None
    };
    let value = match near_form {
        Some(v) => v,
        None => {
            let g = f.node_derivatives(0, &disc)?;
            kernel_sum(&disc, &g, z, n as i32 + 1) * factorial(n) / TWO_PI_I
        }
    };
    Ok(FunctionalValue {
        value,
        target: z,
        verdict: cls.verdict,
        order: (n, 0),
        ill_conditioned: cls.near_zone,
        accuracy_warning: false,
    })
}

/// `J_(n,m)[f](z) = ((n-m)!/2πi) ∮ f^(m)(t)/(t-z)^{n-m+1} dt`.
pub fn generalized_functional(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    z: Complex64,
    n: usize,
    m: usize,
) -> Result<FunctionalValue> {
    if m > n {
        return Err(Error::Contract(format!("integrated order m = {m} exceeds n = {n}")));
    }
    let cls = off_contour(contour, grid, z)?;
    let value = if cls.near_zone && m == n {
        near_zone_first_order(f, contour, grid, z, n, cls.winding)?
    } else {
        let fine = if cls.near_zone { near_zone_grid(contour, grid, z)? } else { None };
        let disc = contour.discretize(fine.as_ref().unwrap_or(grid))?;
        let g = f.node_derivatives(m, &disc)?;
        kernel_sum(&disc, &g, z, (n - m) as i32 + 1) * factorial(n - m) / TWO_PI_I
    };
    Ok(FunctionalValue {
        value,
        target: z,
        verdict: cls.verdict,
        order: (n, m),
        ill_conditioned: cls.near_zone,
        accuracy_warning: false,
    })
}

/// `P∮ f^(n)(t)/(t - t0) dt` and the density value at `t0`.
fn principal_value_of_derivative(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    t0: Complex64,
    n: usize,
) -> Result<(Complex64, Complex64, bool)> {
    let s0 = on_contour_parameter(contour, t0)?;
    let disc = contour.discretize(grid)?;
    let g = f.node_derivatives(n, &disc)?;
    let kernel = SubtractedKernel::new(contour, &disc, &g);
    let h0 = value_at_parameter(f, n, contour, &g, s0);
    let pv = kernel.at(s0, |_| h0);
    Ok((pv.value, h0, pv.accuracy_warning))
}

fn boundary_result(value: Complex64, t0: Complex64, n: usize, warning: bool) -> FunctionalValue {
    FunctionalValue {
        value,
        target: t0,
        verdict: Verdict::OnContour,
        order: (n, n),
        ill_conditioned: false,
        accuracy_warning: warning,
    }
}

/// `K_n[f](t0) = (1/πi) P∮ f^(n)(t)/(t - t0) dt`, which reproduces `f^(n)(t0)`.
pub fn boundary_value(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    t0: Complex64,
    n: usize,
) -> Result<FunctionalValue> {
    let (pv, _, warn) = principal_value_of_derivative(f, contour, grid, t0, n)?;
    Ok(boundary_result(pv / PI_I, t0, n, warn))
}

/// Limit of `J[f](z)` as `z → t0` from one side:
/// `±½ f(t0) + (1/2πi) P∮ f(t)/(t - t0) dt`.
pub fn one_sided_limit(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    t0: Complex64,
    side: Side,
) -> Result<FunctionalValue> {
    one_sided_limit_of_order(f, contour, grid, t0, 0, side)
}

/// One-sided limit of `J_n[f]`, using the density `f^(n)`.
pub fn one_sided_limit_of_order(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    t0: Complex64,
    n: usize,
    side: Side,
) -> Result<FunctionalValue> {
    let (pv, h0, warn) = principal_value_of_derivative(f, contour, grid, t0, n)?;
    let half = match side {
        Side::Interior => 0.5,
        Side::Exterior => -0.5,
    };
    Ok(boundary_result(h0 * half + pv / TWO_PI_I, t0, n, warn))
}

fn check_decay(f: &BoundaryFunction) -> Result<()> {
    match f.decay() {
        Some(p) if p >= 2.0 => Ok(()),
        Some(p) => Err(Error::Contract(format!(
            "complement density must decay at least like |z|^-2, declared exponent {p}"
        ))),
        None => Err(Error::Contract(
            "complement density needs a declared decay exponent (>= 2)".into(),
        )),
    }
}

/// `J⁻_n[F](z) = (-1/2πi) ∮ F^(n)(t)/(t - z) dt`: `F^(n)(z)` outside, `0` inside.
pub fn complement_functional(
    big_f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    z: Complex64,
    n: usize,
) -> Result<FunctionalValue> {
    check_decay(big_f)?;
    let cls = off_contour(contour, grid, z)?;
    let value = if cls.near_zone {
        -near_zone_first_order(big_f, contour, grid, z, n, cls.winding)?
    } else {
        let disc = contour.discretize(grid)?;
        let g = big_f.node_derivatives(n, &disc)?;
        -kernel_sum(&disc, &g, z, 1) / TWO_PI_I
    };
    Ok(FunctionalValue {
        value,
        target: z,
        verdict: cls.verdict,
        order: (n, n),
        ill_conditioned: cls.near_zone,
        accuracy_warning: false,
    })
}

/// `(-1/πi) P∮ F^(n)(t)/(t - t0) dt`, which reproduces `F^(n)(t0)`.
pub fn complement_boundary_value(
    big_f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    t0: Complex64,
    n: usize,
) -> Result<FunctionalValue> {
    let (pv, _, warn) = principal_value_of_derivative(big_f, contour, grid, t0, n)?;
    Ok(boundary_result(-pv / PI_I, t0, n, warn))
}

/// Worst-case residuals of `J_n[f]` against `f^(n)` (inside and on the
/// contour) and against `0` (outside and on the contour).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// `max |J_n[f] - f^(n)|` over interior targets and interior limits on the contour.
    pub max_interior: f64,
    /// `max |J_n[f]|` over exterior targets and exterior limits on the contour.
    pub max_exterior: f64,
    /// Largest residual among near-zone targets, kept apart from the maxima above.
    pub max_near_zone: f64,
    pub evaluated: usize,
    pub near_zone_targets: usize,
}

/// Evaluate the convergence residuals over a mixed set of targets.
///
/// The reference `f^(n)(z)` needs the density's evaluator (`n = 0`) or a
/// supplied derivative evaluator of order `n`.
pub fn uniform_convergence_residuals(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    targets: &[Complex64],
    n: usize,
) -> Result<ConvergenceReport> {
    let exact = f.derivative_fn(n).ok_or(Error::MissingDerivative {
        order: n,
        smoothness: f.smoothness(),
    })?;
    let mut report = ConvergenceReport {
        max_interior: 0.0,
        max_exterior: 0.0,
        max_near_zone: 0.0,
        evaluated: 0,
        near_zone_targets: 0,
    };
    for &z in targets {
        let cls = classify_point(contour, grid, z, contour.default_tolerance())?;
        report.evaluated += 1;
        if cls.is_on_contour() {
            let t0 = contour.point(contour.locate(z).0);
            let inner = one_sided_limit_of_order(f, contour, grid, t0, n, Side::Interior)?;
            let outer = one_sided_limit_of_order(f, contour, grid, t0, n, Side::Exterior)?;
            report.max_interior = report.max_interior.max((inner.value - exact(t0)).norm());
            report.max_exterior = report.max_exterior.max(outer.value.norm());
            continue;
        }
        let j = cauchy_functional(f, contour, grid, z, n)?;
        let residual = if cls.is_inside() {
            (j.value - exact(z)).norm()
        } else {
            j.value.norm()
        };
        if cls.near_zone {
            report.near_zone_targets += 1;
            report.max_near_zone = report.max_near_zone.max(residual);
        } else if cls.is_inside() {
            report.max_interior = report.max_interior.max(residual);
        } else {
            report.max_exterior = report.max_exterior.max(residual);
        }
    }
    Ok(report)
}

/// `∮ K_n[f](t) dt` where every integrand value is itself a principal value
/// evaluated at a node. Vanishes for both density kinds.
pub fn vanishing_contour_integrals(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    n: usize,
    kind: DensityKind,
) -> Result<Complex64> {
    let disc = contour.discretize(grid)?;
    let g = f.node_derivatives(n, &disc)?;
    let kernel = SubtractedKernel::new(contour, &disc, &g);
    let sign = match kind {
        DensityKind::Cauchy => 1.0,
        DensityKind::Complement => -1.0,
    };
    let sum: Complex64 = (0..disc.len())
        .map(|j| kernel.at_node(j).value / PI_I * sign * disc.dt[j])
        .sum();
    Ok(sum)
}

/// Both sides of the mean-value identity and their gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanValueCheck {
    /// `f^(n)(z)`.
    pub lhs: Complex64,
    /// Mean of `f^(n)` over the circle `|t - z| = r`.
    pub rhs: Complex64,
    pub gap: f64,
}

/// `f^(n)` sampled on the circle `|t - z| = r`, plus the circle's discretization.
fn circle_derivative_samples(
    f: &BoundaryFunction,
    center: Complex64,
    radius: f64,
    n: usize,
    nodes: usize,
) -> Result<(ClosedContour, QuadratureGrid, Discretization, Vec<Complex64>)> {
    let circle = ClosedContour::circle(center, radius)?;
    let grid = QuadratureGrid::periodic_trapezoid(nodes)?;
    let disc = circle.discretize(&grid)?;
    let g = f.node_derivatives(n, &disc)?;
    Ok((circle, grid, disc, g))
}

/// Compare `f^(n)(z)` with the mean of `f^(n)` over a circle about `z`.
///
/// Without a supplied evaluator of order `n`, the left side comes from the
/// Cauchy integral formula on the same circle and the circle samples from
/// spectral differentiation.
pub fn mean_value_check(
    f: &BoundaryFunction,
    center: Complex64,
    radius: f64,
    n: usize,
    nodes: usize,
) -> Result<MeanValueCheck> {
    let (circle, grid, _, g) = circle_derivative_samples(f, center, radius, n, nodes)?;
    let rhs = g.iter().sum::<Complex64>() / nodes as f64;
    let lhs = match f.derivative_fn(n) {
        Some(d) => d(center),
        None => cauchy_functional(f, &circle, &grid, center, n)?.value,
    };
    Ok(MeanValueCheck { lhs, rhs, gap: (lhs - rhs).norm() })
}

/// Outcome of the Cauchy inequality `|f^(n)(z)| ≤ (n-m)! R^{-(n-m)} max |f^(m)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeBound {
    pub bound: f64,
    pub actual: f64,
    pub satisfied: bool,
}

/// Check the derivative bound on the circle `|t - z| = R`.
pub fn derivative_bound_check(
    f: &BoundaryFunction,
    center: Complex64,
    radius: f64,
    n: usize,
    m: usize,
    nodes: usize,
) -> Result<DerivativeBound> {
    if m > n {
        return Err(Error::Contract(format!("m = {m} exceeds n = {n}")));
    }
    let (circle, grid, disc, g) = circle_derivative_samples(f, center, radius, m, nodes)?;
    let magnitude = |s: f64| -> f64 { value_at_parameter(f, m, &circle, &g, s).norm() };
    let (best, _) = g
        .iter()
        .enumerate()
        .map(|(j, v)| (j, v.norm()))
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty grid");
    let (_, refined) = golden_min(|s| -magnitude(s), disc.s[best] - disc.h, disc.s[best] + disc.h);
    let max_abs = (-refined).max(g[best].norm());
    let k = n - m;
    let bound = factorial(k) * radius.powi(-(k as i32)) * max_abs;
    let actual = match f.derivative_fn(n) {
        Some(d) => d(center).norm(),
        None => cauchy_functional(f, &circle, &grid, center, n)?.value.norm(),
    };
    Ok(DerivativeBound {
        bound,
        actual,
        satisfied: actual <= bound * (1.0 + 1e-12),
    })
}
