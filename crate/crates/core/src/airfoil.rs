//! Flat-plate airfoil: finite Hilbert transform and its inversion, complex
//! velocity, surface values, circulation, lift, pressure and vortex-sheet
//! velocity fields.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::quadrature::{panel_rule, ChebyshevWeight, QuadratureGrid};
use crate::hilbert::RealFn;

/// Default number of Chebyshev nodes on the chord.
pub const DEFAULT_CHORD_NODES: usize = 128;

/// Free stream and fluid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlowConfig {
    pub speed: f64,
    /// Incidence in radians.
    pub alpha: f64,
    pub density: f64,
}

impl FlowConfig {
    pub fn new(speed: f64, alpha: f64, density: f64) -> Result<Self> {
        if !(speed > 0.0) || !speed.is_finite() {
            return Err(Error::InvalidFlow(format!("free-stream speed must be positive, got {speed}")));
        }
        if !(density > 0.0) || !density.is_finite() {
            return Err(Error::InvalidFlow(format!("fluid density must be positive, got {density}")));
        }
        if !(alpha.abs() < PI / 2.0) {
            return Err(Error::InvalidFlow(format!("incidence must satisfy |alpha| < pi/2, got {alpha}")));
        }
        Ok(Self { speed, alpha, density })
    }

    /// Prescribed normal velocity on the plate, `-U sin α`.
    pub fn downwash(&self) -> f64 {
        -self.speed * self.alpha.sin()
    }
}

/// `sqrt((1-x)/(1+x))`, singular at the leading edge.
fn leading_weight(x: f64) -> f64 {
    ChebyshevWeight::FourthKind.eval(x)
}

/// A sheet density on the chord: `sqrt((1-x)/(1+x)) a(x) + r(x)` with smooth
/// `a` and `r`.
#[derive(Clone, Default)]
pub struct SheetDensity {
    weighted: Option<RealFn>,
    remainder: Option<RealFn>,
}

impl fmt::Debug for SheetDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SheetDensity")
            .field("weighted", &self.weighted.is_some())
            .field("remainder", &self.remainder.is_some())
            .finish()
    }
}

impl SheetDensity {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `sqrt((1-x)/(1+x)) a(x)`.
    pub fn weighted<F>(a: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { weighted: Some(Arc::new(a)), remainder: None }
    }

    /// A density that is smooth on the closed chord.
    pub fn smooth<F>(r: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { weighted: None, remainder: Some(Arc::new(r)) }
    }

    pub fn with_remainder<F>(mut self, r: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.remainder = Some(Arc::new(r));
        self
    }

    /// Coefficient `a(x)` of the weight, zero when absent.
    pub fn weight_coefficient(&self, x: f64) -> f64 {
        self.weighted.as_ref().map_or(0.0, |a| a(x))
    }

    pub fn remainder(&self, x: f64) -> f64 {
        self.remainder.as_ref().map_or(0.0, |r| r(x))
    }

    /// Density value; infinite at `x = -1` when the weighted part is nonzero there.
    pub fn eval(&self, x: f64) -> f64 {
        let mut v = self.remainder(x);
        if let Some(a) = &self.weighted {
            v += leading_weight(x) * a(x);
        }
        v
    }

    /// `∫_{-1}^{1}` of the density.
    pub fn total(&self, n: usize) -> Result<f64> {
        let mut total = 0.0;
        if let Some(a) = &self.weighted {
            total += QuadratureGrid::gauss_chebyshev(n, ChebyshevWeight::FourthKind)?.integrate(|x| a(x));
        }
        if let Some(r) = &self.remainder {
            total += chord_panels(n)?.integrate(|x| r(x));
        }
        Ok(total)
    }
}

fn chord_panels(n: usize) -> Result<QuadratureGrid> {
    QuadratureGrid::gauss_legendre_panels(-1.0, 1.0, (n / 16).max(1), 16)
}

fn check_chord_point(x: f64) -> Result<()> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::Endpoint(format!("chord point {x} must lie in (-1, 1)")));
    }
    Ok(())
}

/// `P∫_{-1}^{1} w(t) a(t)/(t - x) dt` for a Gauss–Chebyshev weight.
fn weighted_pv<F: Fn(f64) -> f64>(grid: &QuadratureGrid, weight: ChebyshevWeight, a: F, x: f64) -> f64 {
    let ax = a(x);
    grid.iter().map(|(t, w)| (a(t) - ax) / (t - x) * w).sum::<f64>() + ax * weight.hilbert_of_weight(x)
}

/// `P∫_{-1}^{1} r(t)/(t - x) dt` for smooth `r`, panels split at `x`.
fn smooth_pv<F: Fn(f64) -> f64>(r: F, x: f64, n: usize) -> f64 {
    let r0 = r(x);
    let mut sum = r0 * ((1.0 - x) / (1.0 + x)).ln();
    for (lo, hi) in [(-1.0, x), (x, 1.0)] {
        let panels = ((hi - lo) * n as f64 / 32.0).ceil().max(1.0) as usize;
        let breaks: Vec<f64> = (0..=panels).map(|k| lo + (hi - lo) * k as f64 / panels as f64).collect();
        let (nodes, weights) = panel_rule(&breaks, 16);
        sum += nodes.iter().zip(&weights).map(|(&t, &w)| (r(t) - r0) / (t - x) * w).sum::<f64>();
    }
    sum
}

/// `G[γ](x) = (1/2π) P∫_{-1}^{1} γ(t)/(t - x) dt` at each target.
pub fn finite_hilbert_transform(gamma: &SheetDensity, targets: &[f64], n: usize) -> Result<Vec<f64>> {
    let grid = QuadratureGrid::gauss_chebyshev(n, ChebyshevWeight::FourthKind)?;
    targets
        .iter()
        .map(|&x| {
            check_chord_point(x)?;
            let mut pv = 0.0;
            if let Some(a) = &gamma.weighted {
                pv += weighted_pv(&grid, ChebyshevWeight::FourthKind, |t| a(t), x);
            }
            if let Some(r) = &gamma.remainder {
                pv += smooth_pv(|t| r(t), x, n);
            }
            Ok(pv / (2.0 * PI))
        })
        .collect()
}

/// `G⁻¹[v](x) = -(2/π) sqrt((1-x)/(1+x)) P∫ sqrt((1+t)/(1-t)) v(t)/(t - x) dt`.
///
/// The result vanishes at the trailing edge. Its weight coefficient is
/// evaluated lazily with an `n`-node Chebyshev rule.
pub fn finite_hilbert_inverse<F>(v: F, n: usize) -> Result<SheetDensity>
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
{
    let grid = QuadratureGrid::gauss_chebyshev(n, ChebyshevWeight::ThirdKind)?;
    Ok(SheetDensity::weighted(move |x| {
        -2.0 / PI * weighted_pv(&grid, ChebyshevWeight::ThirdKind, &v, x)
    }))
}

/// Which end of the chord an exponent fit looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChordEnd {
    Leading,
    Trailing,
}

/// Local power-law exponent of `|γ|` at a chord end, fitted between distances
/// `1e-4` and `1e-6` from it: `+1/2` for a square-root zero, `-1/2` for a
/// square-root singularity.
pub fn endpoint_exponent(gamma: &SheetDensity, end: ChordEnd) -> f64 {
    let at = |d: f64| match end {
        ChordEnd::Leading => gamma.eval(-1.0 + d),
        ChordEnd::Trailing => gamma.eval(1.0 - d),
    };
    let (d1, d2) = (1e-4, 1e-6);
    (at(d1).abs().ln() - at(d2).abs().ln()) / (d1.ln() - d2.ln())
}

/// `sqrt((z-1)/(z+1))` on the principal branch: tends to 1 at infinity and has
/// its cut on the plate.
fn edge_ratio_root(z: Complex64) -> Complex64 {
    ((z - 1.0) / (z + 1.0)).sqrt()
}

/// Complex velocity `w = u - iv` of the Kutta-condition solution for a
/// prescribed plate downwash `v(x)`:
/// `w(z) = -(1/πi) sqrt((z-1)/(z+1)) ∫ sqrt((1+t)/(1-t)) v(t)/(t - z) dt`.
///
/// The downwash at the chord point nearest `z` is subtracted and integrated in
/// closed form, which keeps the quadrature accurate near the plate.
pub fn plate_complex_velocity<F: Fn(f64) -> f64>(v: F, z: Complex64, n: usize) -> Result<Complex64> {
    if !z.is_finite() {
        return Err(Error::InvalidPoint(format!("{z} is not finite")));
    }
    if z.im == 0.0 && z.re.abs() <= 1.0 {
        return Err(Error::OnContour { re: z.re, im: z.im });
    }
    let grid = QuadratureGrid::gauss_chebyshev(n, ChebyshevWeight::ThirdKind)?;
    let x_near = z.re.clamp(-1.0, 1.0);
    let v0 = v(x_near);
    let root = edge_ratio_root(z);
    let smooth: Complex64 = grid.iter().map(|(t, w)| (v(t) - v0) / (t - z) * w).sum();
    // ∫ sqrt((1+t)/(1-t))/(t - z) dt = π (1 - 1/root)
    let closed = PI * (1.0 - 1.0 / root);
    let integral = smooth + v0 * closed;
    Ok(-root * integral / Complex64::new(0.0, PI))
}

/// Complex velocity of the flat plate at incidence.
pub fn flat_plate_complex_velocity(cfg: &FlowConfig, z: Complex64) -> Result<Complex64> {
    let d = cfg.downwash();
    plate_complex_velocity(|_| d, z, DEFAULT_CHORD_NODES)
}

/// Plate side: upper (`y = +0`) or lower (`y = -0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PlateSide {
    Upper,
    Lower,
}

impl PlateSide {
    fn sign(self) -> f64 {
        match self {
            PlateSide::Upper => 1.0,
            PlateSide::Lower => -1.0,
        }
    }
}

/// Limits `w±(x)` of the complex velocity onto the plate, from the sided
/// values `±i sqrt((1-x)/(1+x))` of the edge root and the sided values of the
/// chord integral.
pub fn plate_limits<F: Fn(f64) -> f64>(v: F, x: f64, n: usize) -> Result<(Complex64, Complex64)> {
    check_chord_point(x)?;
    let grid = QuadratureGrid::gauss_chebyshev(n, ChebyshevWeight::ThirdKind)?;
    let pv = weighted_pv(&grid, ChebyshevWeight::ThirdKind, &v, x);
    let rho = ChebyshevWeight::ThirdKind.eval(x) * v(x);
    let s = leading_weight(x);
    let limit = |sign: f64| {
        let root = Complex64::new(0.0, sign * s);
        let integral = Complex64::new(pv, sign * PI * rho);
        -root * integral / Complex64::new(0.0, PI)
    };
    Ok((limit(1.0), limit(-1.0)))
}

/// Perturbation velocity `(u, v)` on one side of the flat plate.
pub fn surface_velocities(cfg: &FlowConfig, x: f64, side: PlateSide) -> Result<(f64, f64)> {
    if !(x > -1.0 && x <= 1.0) {
        return Err(Error::Endpoint(format!(
            "velocity is unbounded at the leading edge; x = {x} must lie in (-1, 1]"
        )));
    }
    let q = cfg.speed * cfg.alpha.sin();
    Ok((side.sign() * q * leading_weight(x), -q))
}

/// Circulation `Γ = ∫ (u⁺ - u⁻) dx`, integrated with the leading-edge weight
/// absorbed into the Chebyshev rule.
pub fn circulation(cfg: &FlowConfig) -> Result<f64> {
    circulation_with_nodes(cfg, DEFAULT_CHORD_NODES)
}

pub fn circulation_with_nodes(cfg: &FlowConfig, n: usize) -> Result<f64> {
    let grid = QuadratureGrid::gauss_chebyshev(n, ChebyshevWeight::FourthKind)?;
    let mut total = 0.0;
    for (x, w) in grid.iter() {
        let (upper, _) = surface_velocities(cfg, x, PlateSide::Upper)?;
        let (lower, _) = surface_velocities(cfg, x, PlateSide::Lower)?;
        total += (upper - lower) / leading_weight(x) * w;
    }
    Ok(total)
}

/// Circulation obtained three independent ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CirculationRoutes {
    /// Jump of the surface velocity integrated over the chord.
    pub surface: f64,
    /// Total strength of the vortex sheet from the inverted transform.
    pub sheet: f64,
    /// `-∮ w dz` on the circle `|z| = 2`.
    pub far_field: f64,
}

impl CirculationRoutes {
    pub fn max_disagreement(&self) -> f64 {
        let v = [self.surface, self.sheet, self.far_field];
        let hi = v.iter().copied().fold(f64::MIN, f64::max);
        let lo = v.iter().copied().fold(f64::MAX, f64::min);
        hi - lo
    }
}

pub fn circulation_routes(cfg: &FlowConfig, n: usize) -> Result<CirculationRoutes> {
    let surface = circulation_with_nodes(cfg, n)?;
    let d = cfg.downwash();
    let sheet = finite_hilbert_inverse(move |_| d, n)?.total(n)?;
    let m = 256;
    let mut ring = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let e = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
        let z = 2.0 * e;
        let dz = Complex64::new(0.0, 2.0) * e * (2.0 * PI / m as f64);
        ring += plate_complex_velocity(|_| d, z, n)? * dz;
    }
    Ok(CirculationRoutes { surface, sheet, far_field: -ring.re })
}

/// Lift vector from `L = ρ U × Γ` with `Γ = (0, 0, -Γ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Lift {
    pub vector: [f64; 3],
    pub magnitude: f64,
}

pub fn lift(cfg: &FlowConfig) -> Result<Lift> {
    let gamma = circulation(cfg)?;
    let u = [cfg.speed * cfg.alpha.cos(), cfg.speed * cfg.alpha.sin(), 0.0];
    let g = [0.0, 0.0, -gamma];
    let vector = [
        cfg.density * (u[1] * g[2] - u[2] * g[1]),
        cfg.density * (u[2] * g[0] - u[0] * g[2]),
        cfg.density * (u[0] * g[1] - u[1] * g[0]),
    ];
    let magnitude = vector.iter().map(|c| c * c).sum::<f64>().sqrt();
    Ok(Lift { vector, magnitude })
}

/// Bernoulli pressure (gauged to zero at infinity) on one side of the plate.
pub fn pressure(cfg: &FlowConfig, x: f64, side: PlateSide) -> Result<f64> {
    if x <= -1.0 {
        return Err(Error::Endpoint("suction pressure diverges at the leading edge".into()));
    }
    let (u, v) = surface_velocities(cfg, x, side)?;
    let (c, s) = (cfg.alpha.cos(), cfg.alpha.sin());
    let big_u = cfg.speed;
    let q2 = (big_u * c + u).powi(2) + (big_u * s + v).powi(2);
    Ok(cfg.density * (0.5 * big_u * big_u - 0.5 * q2))
}

/// Force on the plate split into the pressure integral normal to it and the
/// leading-edge suction that closes the balance with the lift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChordForces {
    /// `∫ (p⁻ - p⁺) dx`, acting along `+y`.
    pub normal: f64,
    /// Lift minus the normal force vector, in the `(x, y)` plane.
    pub suction: [f64; 2],
    pub suction_magnitude: f64,
}

pub fn chord_forces(cfg: &FlowConfig, n: usize) -> Result<ChordForces> {
    let grid = QuadratureGrid::gauss_chebyshev(n, ChebyshevWeight::FourthKind)?;
    let mut normal = 0.0;
    for (x, w) in grid.iter() {
        let jump = pressure(cfg, x, PlateSide::Lower)? - pressure(cfg, x, PlateSide::Upper)?;
        normal += jump / leading_weight(x) * w;
    }
    let l = lift(cfg)?;
    let suction = [l.vector[0], l.vector[1] - normal];
    Ok(ChordForces {
        normal,
        suction,
        suction_magnitude: suction[0].hypot(suction[1]),
    })
}

/// Velocity induced by source and vortex sheets on the chord.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SheetVelocity {
    pub value: Complex64,
    /// `z` lies within ten node spacings of the sheet.
    pub ill_conditioned: bool,
}

/// `w(z) = (1/2π) ∫ (q(t) + iγ(t))/(z - t) dt` over the chord.
///
/// Weighted parts use the Chebyshev rule with `DEFAULT_CHORD_NODES` nodes;
/// smooth remainders use `grid`, which must resolve them.
pub fn sheet_velocity_field(
    q: &SheetDensity,
    gamma: &SheetDensity,
    grid: &QuadratureGrid,
    z: Complex64,
) -> Result<SheetVelocity> {
    if !z.is_finite() {
        return Err(Error::InvalidPoint(format!("{z} is not finite")));
    }
    let x_near = z.re.clamp(-1.0, 1.0);
    let dist = (z - x_near).norm();
    if dist == 0.0 {
        return Err(Error::OnContour { re: z.re, im: z.im });
    }
    let cheb = QuadratureGrid::gauss_chebyshev(DEFAULT_CHORD_NODES, ChebyshevWeight::FourthKind)?;
    let i = Complex64::i();
    let mut sum = Complex64::new(0.0, 0.0);
    if q.weighted.is_some() || gamma.weighted.is_some() {
        sum += cheb
            .iter()
            .map(|(t, w)| (q.weight_coefficient(t) + i * gamma.weight_coefficient(t)) / (z - t) * w)
            .sum::<Complex64>();
    }
    if q.remainder.is_some() || gamma.remainder.is_some() {
        sum += grid
            .iter()
            .map(|(t, w)| (q.remainder(t) + i * gamma.remainder(t)) / (z - t) * w)
            .sum::<Complex64>();
    }
    let spacing = 2.0 / grid.len().max(1) as f64;
    Ok(SheetVelocity {
        value: sum / (2.0 * PI),
        ill_conditioned: dist < 10.0 * spacing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn example() -> FlowConfig {
        FlowConfig::new(1.0, PI / 6.0, 1.0).unwrap()
    }

    /// `w = iU sinα (1 - sqrt((z-1)/(z+1)))`.
    fn closed_form(cfg: &FlowConfig, z: Complex64) -> Complex64 {
        c(0.0, cfg.speed * cfg.alpha.sin()) * (1.0 - ((z - 1.0) / (z + 1.0)).sqrt())
    }

    #[test]
    fn config_validation() {
        assert!(FlowConfig::new(0.0, 0.1, 1.0).is_err());
        assert!(FlowConfig::new(1.0, 0.1, -1.0).is_err());
        assert!(FlowConfig::new(1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn transform_of_known_densities() {
        let cfg = example();
        let q = cfg.speed * cfg.alpha.sin();
        let gamma = SheetDensity::weighted(move |_| 2.0 * q);
        let xs = [-0.9, -0.3, 0.0, 0.5, 0.95];
        for v in finite_hilbert_transform(&gamma, &xs, 128).unwrap() {
            assert!((v + q).abs() < 1e-13);
        }
        let g2 = QuadratureGrid::gauss_chebyshev(64, ChebyshevWeight::SecondKind).unwrap();
        for &x in &xs {
            // the second-kind weight gives the exact transform for comparison
            let exact = weighted_pv(&g2, ChebyshevWeight::SecondKind, |_| 1.0, x) / (2.0 * PI);
            assert!((exact + x / 2.0).abs() < 1e-14);
        }
        assert!(finite_hilbert_transform(&SheetDensity::zero(), &xs, 64).unwrap().iter().all(|v| *v == 0.0));
        assert!(finite_hilbert_transform(&gamma, &[1.0], 64).is_err());
    }

    #[test]
    fn inversion_recovers_the_flat_plate_sheet() {
        let cfg = example();
        let d = cfg.downwash();
        let gamma = finite_hilbert_inverse(move |_| d, 128).unwrap();
        for x in [-0.8, 0.0, 0.7] {
            let exact = -2.0 * d * leading_weight(x);
            assert!((gamma.eval(x) - exact).abs() < 1e-13);
        }
        assert_eq!(gamma.eval(1.0), 0.0);
        let zero = finite_hilbert_inverse(|_| 0.0, 32).unwrap();
        assert_eq!(zero.eval(0.3), 0.0);
    }

    #[test]
    fn round_trip_and_edge_exponents() {
        let gamma = finite_hilbert_inverse(|x| -1.0 + 0.3 * x, 128).unwrap();
        let xs: Vec<f64> = (1..40).map(|k| -1.0 + k as f64 / 20.0).collect();
        let back = finite_hilbert_transform(&gamma, &xs, 128).unwrap();
        for (x, v) in xs.iter().zip(back) {
            assert!((v - (-1.0 + 0.3 * x)).abs() < 1e-12);
        }
        assert!((endpoint_exponent(&gamma, ChordEnd::Trailing) - 0.5).abs() < 0.02);
        assert!((endpoint_exponent(&gamma, ChordEnd::Leading) + 0.5).abs() < 0.02);
    }

    #[test]
    fn complex_velocity_matches_closed_form() {
        let cfg = example();
        for z in [c(2.0, 0.0), c(0.0, 0.5), c(-1.5, -0.2), c(0.3, 1e-6), c(1e3, 1e3)] {
            let w = flat_plate_complex_velocity(&cfg, z).unwrap();
            assert!((w - closed_form(&cfg, z)).norm() < 1e-12, "{z}");
        }
        let calm = FlowConfig::new(1.0, 0.0, 1.0).unwrap();
        assert_eq!(flat_plate_complex_velocity(&calm, c(0.2, 0.3)).unwrap().norm(), 0.0);
        assert!(flat_plate_complex_velocity(&cfg, c(0.5, 0.0)).is_err());
        let far = flat_plate_complex_velocity(&cfg, c(1e3, 0.0)).unwrap();
        assert!(far.norm() < 1.1 * cfg.speed * cfg.alpha.sin() / 1e3);
    }

    #[test]
    fn plate_limits_reproduce_surface_velocities() {
        let cfg = example();
        let d = cfg.downwash();
        for x in [-0.9, -0.2, 0.0, 0.6, 0.99] {
            let (wp, wm) = plate_limits(|_| d, x, 128).unwrap();
            let (up, vp) = surface_velocities(&cfg, x, PlateSide::Upper).unwrap();
            let (um, vm) = surface_velocities(&cfg, x, PlateSide::Lower).unwrap();
            assert!((wp - c(up, -vp)).norm() < 1e-12);
            assert!((wm - c(um, -vm)).norm() < 1e-12);
        }
        let (u, v) = surface_velocities(&cfg, 0.0, PlateSide::Upper).unwrap();
        assert!((u - 0.5).abs() < 1e-15 && (v + 0.5).abs() < 1e-15);
        assert_eq!(surface_velocities(&cfg, 1.0, PlateSide::Lower).unwrap().0, 0.0);
        assert!(surface_velocities(&cfg, -1.0, PlateSide::Upper).is_err());
    }

    #[test]
    fn circulation_lift_and_forces() {
        let cfg = example();
        let routes = circulation_routes(&cfg, 128).unwrap();
        assert!((routes.surface - PI).abs() < 1e-12);
        assert!(routes.max_disagreement() < 1e-10, "{routes:?}");
        let l = lift(&cfg).unwrap();
        assert!((l.magnitude - PI).abs() < 1e-12);
        let dot = l.vector[0] * cfg.alpha.cos() + l.vector[1] * cfg.alpha.sin();
        assert!(dot.abs() < 1e-14);
        let l2 = lift(&FlowConfig::new(3.0, 0.2, 2.0).unwrap()).unwrap();
        assert!((l2.magnitude - 36.0 * PI * 0.2f64.sin()).abs() < 1e-11);

        let p = pressure(&cfg, 0.0, PlateSide::Upper).unwrap();
        let exact = 0.5 - ((PI / 6.0).cos() + 0.5).powi(2) / 2.0;
        assert!((p - exact).abs() < 1e-15);
        let f = chord_forces(&cfg, 128).unwrap();
        assert!((f.normal - l.magnitude * cfg.alpha.cos()).abs() < 1e-12);
        assert!((f.suction_magnitude - l.magnitude * cfg.alpha.sin()).abs() < 1e-12);
        assert!(f.suction[0] < 0.0);
        assert!(pressure(&cfg, -1.0, PlateSide::Upper).is_err());
    }

    #[test]
    fn narrow_bumps_act_as_point_singularities() {
        let sigma = 1e-3;
        let bump = move |t: f64| (-(t / sigma).powi(2) / 2.0).exp() / (sigma * (2.0 * PI).sqrt());
        let mut breaks = vec![-1.0];
        breaks.extend((-10..=10).map(|k| k as f64 * sigma));
        breaks.push(1.0);
        let grid = QuadratureGrid::gauss_legendre_breakpoints(&breaks, 20).unwrap();
        let gamma0 = 2.5;
        let vortex = SheetDensity::smooth(move |t| gamma0 * bump(t));
        for z in [c(1.5, 0.0), c(0.0, 0.1), c(-0.3, 0.4)] {
            let w = sheet_velocity_field(&SheetDensity::zero(), &vortex, &grid, z).unwrap();
            let point = c(0.0, gamma0) / (2.0 * PI * z);
            assert!((w.value - point).norm() / point.norm() < 1e-3);
        }
        let source = SheetDensity::smooth(move |t| 1.5 * bump(t));
        let z = Complex64::from_polar(0.2, 0.9);
        let w = sheet_velocity_field(&source, &SheetDensity::zero(), &grid, z).unwrap();
        let radial = (w.value * z).re / z.norm();
        assert!((radial - 1.5 / (2.0 * PI * 0.2)).abs() < 1e-3);
        let none = sheet_velocity_field(&SheetDensity::zero(), &SheetDensity::zero(), &grid, z).unwrap();
        assert_eq!(none.value, c(0.0, 0.0));
    }
}
