//! Cauchy-type integrals over open arcs, their sided boundary values, the
//! reconstruction from a jump, and the nested principal-value exchange formula.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::ComplexFn;
use crate::geometry::arc::{ArcShape, JordanArc};
use crate::geometry::quadrature::{panel_rule, split_graded_breakpoints, QuadratureGrid, RuleKind};

const TWO_PI_I: Complex64 = Complex64::new(0.0, 2.0 * PI);

/// Fraction of the arc length kept clear of each endpoint for sided limits.
pub const ENDPOINT_MARGIN: f64 = 0.02;

/// A density `g(t)` on an arc.
#[derive(Clone)]
pub struct ArcDensity {
    g: ComplexFn,
    antiderivative: Option<ComplexFn>,
}

impl fmt::Debug for ArcDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ArcDensity")
            .field("antiderivative", &self.antiderivative.is_some())
            .finish()
    }
}

impl ArcDensity {
    pub fn new<F>(g: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self { g: Arc::new(g), antiderivative: None }
    }

    pub fn zero() -> Self {
        Self::new(|_| Complex64::new(0.0, 0.0))
    }

    /// Attach a closed-form antiderivative, used only for cross-checks.
    pub fn with_antiderivative<F>(mut self, big_g: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        self.antiderivative = Some(Arc::new(big_g));
        self
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        (self.g)(t)
    }

    pub fn antiderivative(&self) -> Option<&ComplexFn> {
        self.antiderivative.as_ref()
    }
}

/// Side of an arc: plus is to the left of the direction of traversal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcSide {
    Plus,
    Minus,
}

/// Boundary value of a Cauchy-type integral from one side of the arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SidedLimit {
    pub value: Complex64,
    pub side: ArcSide,
    pub location: Complex64,
    /// Arc parameter of `location`.
    pub parameter: f64,
}

/// Value of an arc integral at an off-arc point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArcValue {
    pub value: Complex64,
    /// Target is within ten node spacings of the arc.
    pub ill_conditioned: bool,
}

/// Panel count and order of a Gauss–Legendre arc grid on `[0, 1]`.
fn panel_layout(grid: &QuadratureGrid) -> Result<(usize, usize)> {
    match grid.kind() {
        RuleKind::GaussLegendrePanels { panels, order } if grid.interval() == (0.0, 1.0) => Ok((panels, order)),
        _ => Err(Error::InvalidGrid(
            "arc integrals need Gauss-Legendre panels on the parameter interval [0, 1]".into(),
        )),
    }
}

/// Default arc grid: 16 panels of 20 nodes.
pub fn default_arc_grid() -> QuadratureGrid {
    QuadratureGrid::gauss_legendre_panels(0.0, 1.0, 16, 20).expect("valid layout")
}

fn tolerance(arc: &JordanArc) -> f64 {
    1e-8 * arc.length()
}

/// Uniform breakpoints on [0, 1] with extra points closing in on `s` so that
/// the panels next to it are no wider than the parameter distance `d`.
fn breakpoints_toward(s: f64, d: f64, panels: usize) -> Vec<f64> {
    let mut breaks: Vec<f64> = (0..=panels).map(|k| k as f64 / panels as f64).collect();
    let width = 1.0 / panels as f64;
    let mut w = width;
    while w > 0.5 * d {
        for p in [s - w, s + w] {
            if p > 0.0 && p < 1.0 {
                breaks.push(p);
            }
        }
        w *= 0.5;
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    breaks
}

/// `f^(n)(z) = (n!/2πi) ∫_L g(t)/(t - z)^{n+1} dt` for `z` off the arc.
///
/// Panels are refined geometrically toward the nearest arc point when `z` is
/// close to the arc.
pub fn arc_cauchy_integral(
    g: &ArcDensity,
    arc: &JordanArc,
    grid: &QuadratureGrid,
    z: Complex64,
    n: usize,
) -> Result<ArcValue> {
    let (panels, order) = panel_layout(grid)?;
    if !z.is_finite() {
        return Err(Error::InvalidPoint(format!("{z} is not finite")));
    }
    let (s_near, dist) = arc.locate(z);
    let tol = tolerance(arc);
    if dist < tol {
        return Err(Error::OnContour { re: z.re, im: z.im });
    }
    let len = arc.length();
    let near = dist < 10.0 * len / grid.len() as f64;
    let param_dist = dist / arc.derivative(s_near).norm();
    let (nodes, weights) = if param_dist < 2.0 / panels as f64 {
        panel_rule(&breakpoints_toward(s_near, param_dist, panels), order)
    } else {
        (grid.nodes().to_vec(), grid.weights().to_vec())
    };
    let p = n as i32 + 1;
    let sum: Complex64 = nodes
        .iter()
        .zip(&weights)
        .map(|(&s, &w)| {
            let (t, dz) = arc.eval(s);
            g.eval(t) / (t - z).powi(p) * dz * w
        })
        .sum();
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    Ok(ArcValue {
        value: sum * fact / TWO_PI_I,
        ill_conditioned: near,
    })
}

/// The limit `lim z f(z) = -(1/2πi) ∫_L g dt` as `z → ∞`.
pub fn decay_coefficient(g: &ArcDensity, arc: &JordanArc, grid: &QuadratureGrid) -> Result<Complex64> {
    panel_layout(grid)?;
    let total: Complex64 = grid
        .iter()
        .map(|(s, w)| {
            let (t, dz) = arc.eval(s);
            g.eval(t) * dz * w
        })
        .sum();
    Ok(-total / TWO_PI_I)
}

/// Arc length between parameters `a < b`.
fn length_between(arc: &JordanArc, a: f64, b: f64) -> f64 {
    if let ArcShape::Segment { .. } = arc.shape() {
        return (b - a) * arc.length();
    }
    let (nodes, weights) = panel_rule(&[a, 0.5 * (a + b), b], 24);
    nodes.iter().zip(&weights).map(|(&s, &w)| arc.derivative(s).norm() * w).sum()
}

/// Continuous change of `arg(t(s) - z0)` from `from` to `to`, with the
/// first or last vector replaced by the tangent direction at `z0`.
fn arg_sweep(vectors: impl Iterator<Item = Complex64>) -> f64 {
    let mut total = 0.0;
    let mut prev: Option<Complex64> = None;
    for v in vectors {
        if let Some(p) = prev {
            total += (v / p).arg();
        }
        prev = Some(v);
    }
    total
}

/// `P∫_L dt/(t - z0)` for `z0 = z(s0)` on the arc.
fn log_term(arc: &JordanArc, s0: f64, z0: Complex64) -> Complex64 {
    let a = arc.start();
    let b = arc.end();
    let re = ((b - z0).norm() / (a - z0).norm()).ln();
    if arc.is_straight() {
        return Complex64::new(re, 0.0);
    }
    let steps = 512;
    let tangent = arc.derivative(s0);
    let before = arg_sweep(
        (0..steps)
            .map(|k| arc.point(s0 * k as f64 / steps as f64) - z0)
            .chain(std::iter::once(-tangent)),
    );
    let after = arg_sweep(
        std::iter::once(tangent).chain((1..=steps).map(|k| arc.point(s0 + (1.0 - s0) * k as f64 / steps as f64) - z0)),
    );
    Complex64::new(re, before + after)
}

fn on_arc_parameter(arc: &JordanArc, z0: Complex64) -> Result<f64> {
    if !z0.is_finite() {
        return Err(Error::InvalidPoint(format!("{z0} is not finite")));
    }
    let (s0, dist) = arc.locate(z0);
    let tol = tolerance(arc);
    if dist > tol {
        return Err(Error::OffContour { distance: dist, tolerance: tol });
    }
    let len = arc.length();
    let from_start = length_between(arc, 0.0, s0);
    if from_start < ENDPOINT_MARGIN * len || len - from_start < ENDPOINT_MARGIN * len {
        return Err(Error::Endpoint(format!(
            "{z0} is within {ENDPOINT_MARGIN} of the arc length from an endpoint"
        )));
    }
    Ok(s0)
}

/// `P∫_L g(t)/(t - z0) dt` by subtraction of `g(z0)`, with panels split at `z0`.
pub fn arc_principal_value(g: &ArcDensity, arc: &JordanArc, grid: &QuadratureGrid, z0: Complex64) -> Result<Complex64> {
    let (panels, order) = panel_layout(grid)?;
    let s0 = on_arc_parameter(arc, z0)?;
    let z0 = arc.point(s0);
    let g0 = g.eval(z0);
    let left = ((s0 * panels as f64).ceil() as usize).max(1);
    let right = (((1.0 - s0) * panels as f64).ceil() as usize).max(1);
    let mut breaks: Vec<f64> = (0..=left).map(|k| s0 * k as f64 / left as f64).collect();
    breaks.extend((1..=right).map(|k| s0 + (1.0 - s0) * k as f64 / right as f64));
    let (nodes, weights) = panel_rule(&breaks, order);
    let sum: Complex64 = nodes
        .iter()
        .zip(&weights)
        .map(|(&s, &w)| {
            let (t, dz) = arc.eval(s);
            (g.eval(t) - g0) / (t - z0) * dz * w
        })
        .sum();
    Ok(sum + g0 * log_term(arc, s0, z0))
}

/// Sided limits `f±(z0) = ±g(z0)/2 + (1/2πi) P∫_L g(t)/(t - z0) dt`.
pub fn plemelj_limits(
    g: &ArcDensity,
    arc: &JordanArc,
    grid: &QuadratureGrid,
    z0: Complex64,
) -> Result<(SidedLimit, SidedLimit)> {
    let pv = arc_principal_value(g, arc, grid, z0)?;
    let s0 = arc.locate(z0).0;
    let location = arc.point(s0);
    let half = g.eval(location) * 0.5;
    let mean = pv / TWO_PI_I;
    let limit = |value, side| SidedLimit { value, side, location, parameter: s0 };
    Ok((limit(mean + half, ArcSide::Plus), limit(mean - half, ArcSide::Minus)))
}

/// `(1/2πi) ∫_L jump(t)/(t - z) dt`: the sectionally regular function with the
/// given jump that vanishes at infinity.
pub fn reconstruct_from_jump(
    jump: &ArcDensity,
    arc: &JordanArc,
    grid: &QuadratureGrid,
    z: Complex64,
) -> Result<ArcValue> {
    arc_cauchy_integral(jump, arc, grid, z, 0)
}

/// Both orders of the nested principal-value integral and their difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExchangeReport {
    /// `P∫ dt'/(t' - x0) P∫ f(t, t')/(t - t') dt`.
    pub lhs: f64,
    /// `P∫ dt P∫ f(t, t')/((t' - x0)(t - t')) dt' - π² f(x0, x0)`.
    pub rhs: f64,
    pub residual: f64,
    /// Largest change of either side between the two grid levels.
    pub level_gap: f64,
    pub slow_convergence: bool,
}

/// `P∫_lo^hi h(t)/(t - x) dt` with `h(x)` subtracted; panels split at `x`.
fn interval_pv<F: Fn(f64) -> f64>(h: F, lo: f64, hi: f64, x: f64, per_unit: f64, order: usize) -> f64 {
    let h0 = h(x);
    let mut sum = h0 * ((hi - x) / (x - lo)).ln();
    for (a, b) in [(lo, x), (x, hi)] {
        let panels = ((b - a) * per_unit).ceil().max(1.0) as usize;
        let breaks: Vec<f64> = (0..=panels).map(|k| a + (b - a) * k as f64 / panels as f64).collect();
        let (nodes, weights) = panel_rule(&breaks, order);
        sum += nodes.iter().zip(&weights).map(|(&t, &w)| (h(t) - h0) / (t - x) * w).sum::<f64>();
    }
    sum
}

fn exchange_sides<F: Fn(f64, f64) -> f64>(f2: &F, lo: f64, hi: f64, x0: f64, per_unit: f64, order: usize) -> (f64, f64) {
    // inner density of the left side, singular like ln at the interval ends
    let phi = |tp: f64| interval_pv(|t| f2(t, tp), lo, hi, tp, per_unit, order);
    let breaks = split_graded_breakpoints(lo, x0, hi, per_unit, 30, 0.5);
    let (nodes, weights) = panel_rule(&breaks, order);

    let phi0 = phi(x0);
    let lhs = nodes
        .iter()
        .zip(&weights)
        .map(|(&tp, &w)| (phi(tp) - phi0) / (tp - x0) * w)
        .sum::<f64>()
        + phi0 * ((hi - x0) / (x0 - lo)).ln();

    // 1/((t'-x0)(t-t')) = [1/(t'-x0) + 1/(t-t')]/(t-x0)
    let psi = |t: f64| {
        let a = interval_pv(|tp| f2(t, tp), lo, hi, x0, per_unit, order);
        let b = interval_pv(|tp| f2(t, tp), lo, hi, t, per_unit, order);
        (a - b) / (t - x0)
    };
    let rhs = nodes.iter().zip(&weights).map(|(&t, &w)| psi(t) * w).sum::<f64>() - PI * PI * f2(x0, x0);
    (lhs, rhs)
}

/// Evaluate both sides of the nested principal-value exchange formula on a
/// real interval at two grid levels.
///
/// `tolerance` sets the level-agreement threshold: the slow-convergence flag
/// is raised when the levels differ by more than ten times it.
pub fn poincare_bertrand_residual<F>(f2: F, arc: &JordanArc, x0: f64, tolerance: f64) -> Result<ExchangeReport>
where
    F: Fn(f64, f64) -> f64,
{
    let (a, b) = match arc.shape() {
        ArcShape::Segment { a, b } if a.im == 0.0 && b.im == 0.0 && a.re < b.re => (a.re, b.re),
        _ => {
            return Err(Error::InvalidContour(
                "the exchange formula is evaluated on increasing real intervals".into(),
            ))
        }
    };
    let margin = ENDPOINT_MARGIN * (b - a);
    if !(x0 > a + margin && x0 < b - margin) {
        return Err(Error::Endpoint(format!("x0 = {x0} too close to the ends of [{a}, {b}]")));
    }
    let scale = 1.0 / (b - a);
    let (l1, r1) = exchange_sides(&f2, a, b, x0, 4.0 * scale, 16);
    let (l2, r2) = exchange_sides(&f2, a, b, x0, 8.0 * scale, 24);
    let level_gap = (l1 - l2).abs().max((r1 - r2).abs());
    Ok(ExchangeReport {
        lhs: l2,
        rhs: r2,
        residual: (l2 - r2).abs(),
        level_gap,
        slow_convergence: level_gap > 10.0 * tolerance,
    })
}
