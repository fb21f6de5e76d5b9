//! Hilbert transforms on the real line and on the unit circle, their inverses
//! and complementary forms, the mean condition and Parseval checks.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::quadrature::{panel_rule, QuadratureGrid};

/// `x ↦ v(x)`.
pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Default half-width of the truncation window.
pub const DEFAULT_WINDOW: f64 = 50.0;
const PANEL_WIDTH: f64 = 2.0;
const PANEL_ORDER: usize = 20;
/// Nodes per period for oscillatory inputs.
const PERIODIC_NODES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LineBehaviour {
    /// `|v(x)| = O(|x|^{-decay})`.
    Decaying { decay: f64 },
    /// Non-decaying with the given period.
    Periodic { period: f64 },
}

/// A real function on the real line with its behaviour at infinity.
#[derive(Clone)]
pub struct RealLineFunction {
    f: RealFn,
    behaviour: LineBehaviour,
    window: f64,
}

impl fmt::Debug for RealLineFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealLineFunction")
            .field("behaviour", &self.behaviour)
            .field("window", &self.window)
            .finish()
    }
}

impl RealLineFunction {
    pub fn decaying<F>(f: F, decay: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            f: Arc::new(f),
            behaviour: LineBehaviour::Decaying { decay },
            window: DEFAULT_WINDOW,
        }
    }

    pub fn periodic<F>(f: F, period: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            f: Arc::new(f),
            behaviour: LineBehaviour::Periodic { period },
            window: DEFAULT_WINDOW,
        }
    }

    pub fn zero() -> Self {
        Self::decaying(|_| 0.0, f64::INFINITY)
    }

    pub fn with_window(mut self, half_width: f64) -> Self {
        self.window = half_width;
        self
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn behaviour(&self) -> LineBehaviour {
        self.behaviour
    }

    pub fn window(&self) -> f64 {
        self.window
    }

    pub fn is_square_integrable(&self) -> bool {
        matches!(self.behaviour, LineBehaviour::Decaying { decay } if decay > 0.5)
    }

    /// Whether the samples at `±X` are within a factor 10 of the power law
    /// fitted at `±X/2`.
    pub fn decay_consistent(&self) -> bool {
        let LineBehaviour::Decaying { decay } = self.behaviour else {
            return true;
        };
        if decay.is_infinite() {
            return true;
        }
        let x = self.window;
        [1.0, -1.0].iter().all(|&side| {
            let predicted = self.eval(side * x / 2.0).abs() * 0.5f64.powf(decay);
            self.eval(side * x).abs() <= 10.0 * predicted + f64::MIN_POSITIVE
        })
    }
}

/// Transformed values at the requested targets with error metadata.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransformResult {
    pub targets: Vec<f64>,
    pub values: Vec<f64>,
    /// Size of the modelled contribution from outside the window.
    pub error_bars: Vec<f64>,
    /// Target lies beyond half the window width.
    pub accuracy_warnings: Vec<bool>,
    pub window: f64,
    /// Quadrature nodes used per target.
    pub nodes: usize,
}

impl TransformResult {
    fn negated(mut self) -> Self {
        self.values.iter_mut().for_each(|v| *v = -*v);
        self
    }

    pub fn any_warning(&self) -> bool {
        self.accuracy_warnings.iter().any(|&w| w)
    }

    pub fn max_error_bar(&self) -> f64 {
        self.error_bars.iter().copied().fold(0.0, f64::max)
    }
}

fn panel_count(len: f64) -> usize {
    (len / PANEL_WIDTH).ceil().max(1.0) as usize
}

/// `P∫_{-X}^{X} v(x)/(x - ξ) dx` plus the modelled tails; returns the value and
/// the size of the tail term.
fn line_principal_value(v: &RealLineFunction, decay: f64, xi: f64) -> (f64, f64, usize) {
    let x = v.window;
    let v0 = v.eval(xi);
    let mut sum = v0 * ((x - xi) / (x + xi)).ln();
    let mut used = 0;
    for (lo, hi) in [(-x, xi), (xi, x)] {
        let panels = panel_count(hi - lo);
        let breaks: Vec<f64> = (0..=panels).map(|k| lo + (hi - lo) * k as f64 / panels as f64).collect();
        let (nodes, weights) = panel_rule(&breaks, PANEL_ORDER);
        used += nodes.len();
        sum += nodes
            .iter()
            .zip(&weights)
            .map(|(&t, &w)| (v.eval(t) - v0) / (t - xi) * w)
            .sum::<f64>();
    }
    // Tails: v ≈ c± |x|^{-p} beyond ±X, expanded in powers of ξ/X.
    let tail = if decay.is_finite() {
        let c_plus = v.eval(x) * x.powf(decay);
        let c_minus = v.eval(-x) * x.powf(decay);
        let mut t = 0.0;
        let ratio = xi / x;
        let mut pow = 1.0;
        for k in 0..400 {
            let scale = x.powf(-decay) / (decay + k as f64);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let term = (c_plus - c_minus * sign) * pow * scale;
            t += term;
            if (c_plus.abs() + c_minus.abs()) * pow.abs() * scale < 1e-18 * t.abs().max(f64::MIN_POSITIVE) {
                break;
            }
            pow *= ratio;
        }
        t
    } else {
        0.0
    };
    (sum + tail, tail.abs(), used)
}

/// `(1/P) P∫_0^P v(x) cot(π(x - ξ)/P) dx` on nodes offset by half a spacing
/// from the singular point.
fn periodic_principal_value(v: &RealLineFunction, period: f64, xi: f64) -> f64 {
    let m = PERIODIC_NODES;
    let h = period / m as f64;
    (0..m)
        .map(|j| {
            let x = xi + (j as f64 + 0.5) * h;
            v.eval(x) / (PI * (x - xi) / period).tan()
        })
        .sum::<f64>()
        / m as f64
}

/// `H[v](ξ) = (1/π) P∫ v(x)/(x - ξ) dx`.
///
/// Decaying inputs are integrated on `[-X, X]` by Gauss–Legendre panels split
/// at `ξ`, with `v(ξ)` subtracted; the tails are added from the fitted power
/// law and their size reported as the error bar. Periodic inputs use the
/// cotangent kernel over one period.
pub fn hilbert_line(v: &RealLineFunction, targets: &[f64]) -> Result<TransformResult> {
    let x = v.window;
    let mut values = Vec::with_capacity(targets.len());
    let mut error_bars = Vec::with_capacity(targets.len());
    let mut warnings = Vec::with_capacity(targets.len());
    let mut nodes = 0;
    for &xi in targets {
        if !xi.is_finite() {
            return Err(Error::InvalidPoint(format!("target {xi} is not finite")));
        }
        match v.behaviour {
            LineBehaviour::Periodic { period } => {
                if !(period > 0.0) {
                    return Err(Error::Contract(format!("period {period} must be positive")));
                }
                values.push(periodic_principal_value(v, period, xi));
                error_bars.push(0.0);
                warnings.push(false);
                nodes = PERIODIC_NODES;
            }
            LineBehaviour::Decaying { decay } => {
                if !(decay >= 1.0) {
                    return Err(Error::Contract(format!(
                        "line transform needs decay exponent >= 1, got {decay}"
                    )));
                }
                if xi.abs() >= x {
                    return Err(Error::InvalidPoint(format!(
                        "target {xi} lies outside the window [-{x}, {x}]"
                    )));
                }
                let (pv, tail, used) = line_principal_value(v, decay, xi);
                values.push(pv / PI);
                error_bars.push(tail / PI);
                warnings.push(xi.abs() > x / 2.0);
                nodes = nodes.max(used);
            }
        }
    }
    Ok(TransformResult {
        targets: targets.to_vec(),
        values,
        error_bars,
        accuracy_warnings: warnings,
        window: x,
        nodes,
    })
}

/// `H⁻¹[u](x) = (-1/π) P∫ u(ξ)/(ξ - x) dξ = -H[u](x)`.
pub fn hilbert_line_inverse(u: &RealLineFunction, targets: &[f64]) -> Result<TransformResult> {
    Ok(hilbert_line(u, targets)?.negated())
}

/// `H̄[V] = -H[V]`.
pub fn hilbert_complementary(big_v: &RealLineFunction, targets: &[f64]) -> Result<TransformResult> {
    Ok(hilbert_line(big_v, targets)?.negated())
}

/// `H̄⁻¹[U] = H[U]`.
pub fn hilbert_complementary_inverse(big_u: &RealLineFunction, targets: &[f64]) -> Result<TransformResult> {
    hilbert_line(big_u, targets)
}

/// Real samples at `θ_j = -π + 2πj/n`, `n` even.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeriodicFunction {
    samples: Vec<f64>,
}

impl PeriodicFunction {
    pub fn new(samples: Vec<f64>) -> Result<Self> {
        let n = samples.len();
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "periodic samples need an even count >= 8, got {n}"
            )));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("periodic sample".into()));
        }
        Ok(Self { samples })
    }

    pub fn from_fn<F: Fn(f64) -> f64>(n: usize, f: F) -> Result<Self> {
        Self::new((0..n).map(|j| f(angle(j, n))).collect())
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn angles(&self) -> Vec<f64> {
        (0..self.len()).map(|j| angle(j, self.len())).collect()
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.len() as f64
    }

    /// Copy with the mean removed.
    pub fn without_mean(&self) -> Self {
        let m = self.mean();
        Self {
            samples: self.samples.iter().map(|v| v - m).collect(),
        }
    }

    fn negated(mut self) -> Self {
        self.samples.iter_mut().for_each(|v| *v = -*v);
        self
    }
}

fn angle(j: usize, n: usize) -> f64 {
    -PI + 2.0 * PI * j as f64 / n as f64
}

/// `Ĥ[v](θ) = (1/2π) P∫ v(φ) cot((φ - θ)/2) dφ` at the sample angles.
///
/// With `v(θ)` subtracted and the removable value replaced by the spectral
/// derivative, the trapezoid sum collapses onto the nodes at odd offsets:
/// `(h/π) Σ_{j-m odd} v_j cot((φ_j - θ_m)/2)`.
pub fn hilbert_circular(v: &PeriodicFunction) -> Result<PeriodicFunction> {
    let n = v.len();
    let h = 2.0 * PI / n as f64;
    // cot((φ_j - θ_m)/2) depends only on j - m
    let cot: Vec<f64> = (0..n)
        .map(|d| if d % 2 == 1 { 1.0 / (0.5 * d as f64 * h).tan() } else { 0.0 })
        .collect();
    let out = (0..n)
        .map(|m| {
            (1..n)
                .step_by(2)
                .map(|d| v.samples[(m + d) % n] * cot[d])
                .sum::<f64>()
                * h
                / PI
        })
        .collect();
    PeriodicFunction::new(out)
}

/// `Ĥ⁻¹[u] = -Ĥ[u]`, exact on zero-mean inputs.
pub fn hilbert_circular_inverse(u: &PeriodicFunction) -> Result<PeriodicFunction> {
    Ok(hilbert_circular(u)?.negated())
}

/// `Ȟ[V] = -Ĥ[V]`.
pub fn hilbert_circular_complementary(big_v: &PeriodicFunction) -> Result<PeriodicFunction> {
    Ok(hilbert_circular(big_v)?.negated())
}

/// `Ȟ⁻¹[U] = Ĥ[U]`.
pub fn hilbert_circular_complementary_inverse(big_u: &PeriodicFunction) -> Result<PeriodicFunction> {
    hilbert_circular(big_u)
}

/// `∫ (u + iv) dθ` over one turn from equispaced samples of `f(e^{iθ})`.
///
/// Zero for functions regular inside the circle that vanish at the centre; a
/// nonzero result (e.g. `2πc` for a constant) flags an unnormalized input.
pub fn normalization_check(samples: &[Complex64]) -> Complex64 {
    let n = samples.len().max(1);
    samples.iter().sum::<Complex64>() * (2.0 * PI / n as f64)
}

/// `∫u²` against `∫v²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParsevalGap {
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

impl ParsevalGap {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, gap: (lhs - rhs).abs() }
    }
}

/// Parseval relation for a circular pair.
pub fn parseval_circle(u: &PeriodicFunction, v: &PeriodicFunction) -> Result<ParsevalGap> {
    if u.len() != v.len() {
        return Err(Error::InvalidGrid("circle pair must share the sample count".into()));
    }
    let h = 2.0 * PI / u.len() as f64;
    let sq = |p: &PeriodicFunction| p.samples.iter().map(|x| x * x).sum::<f64>() * h;
    Ok(ParsevalGap::new(sq(u), sq(v)))
}

/// `∫_{-∞}^{∞} g(x)² dx`: panels on the window and the substitution `x = ±X/s`
/// on the tails.
fn line_square_integral(g: &RealLineFunction) -> Result<f64> {
    let x = g.window;
    let inner = QuadratureGrid::gauss_legendre_panels(-x, x, panel_count(2.0 * x), PANEL_ORDER)?;
    let mut total = inner.integrate(|t| g.eval(t).powi(2));
    let tail = QuadratureGrid::gauss_legendre_panels(0.0, 1.0, 8, PANEL_ORDER)?;
    for side in [1.0, -1.0] {
        total += tail.integrate(|s| g.eval(side * x / s).powi(2) * x / (s * s));
    }
    Ok(total)
}

/// Parseval relation for a real-line pair; both need decay above 1/2.
pub fn parseval_line(u: &RealLineFunction, v: &RealLineFunction) -> Result<ParsevalGap> {
    for f in [u, v] {
        if !f.is_square_integrable() {
            return Err(Error::Contract("Parseval on the line needs decay exponent > 1/2".into()));
        }
    }
    Ok(ParsevalGap::new(line_square_integral(u)?, line_square_integral(v)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_err(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn line_pair_from_a_simple_pole() {
        let v = RealLineFunction::decaying(|x| -1.0 / (x * x + 1.0), 2.0);
        let targets: Vec<f64> = (0..=20).map(|k| -5.0 + 0.5 * k as f64).collect();
        let r = hilbert_line(&v, &targets).unwrap();
        let exact: Vec<f64> = targets.iter().map(|x| x / (x * x + 1.0)).collect();
        assert!(max_err(&r.values, &exact) < 5e-6, "{}", max_err(&r.values, &exact));
        assert!(!r.any_warning());

        let u = RealLineFunction::decaying(|x| x / (x * x + 1.0), 1.0);
        let back = hilbert_line_inverse(&u, &targets).unwrap();
        let exact: Vec<f64> = targets.iter().map(|x| -1.0 / (x * x + 1.0)).collect();
        assert!(max_err(&back.values, &exact) < 5e-6, "{}", max_err(&back.values, &exact));

        let comp = hilbert_complementary(&v, &targets).unwrap();
        for (a, b) in comp.values.iter().zip(&r.values) {
            assert_eq!(a + b, 0.0);
        }
    }

    #[test]
    fn line_contracts() {
        let slow = RealLineFunction::decaying(|x| 1.0 / (1.0 + x.abs()).sqrt(), 0.5);
        assert!(matches!(hilbert_line(&slow, &[0.0]), Err(Error::Contract(_))));
        let v = RealLineFunction::decaying(|x| -1.0 / (x * x + 1.0), 2.0);
        assert!(hilbert_line(&v, &[30.0]).unwrap().accuracy_warnings[0]);
        assert!(hilbert_line(&v, &[60.0]).is_err());
        let z = hilbert_line(&RealLineFunction::zero(), &[0.0, 1.0]).unwrap();
        assert_eq!(z.values, vec![0.0, 0.0]);
        assert!(v.decay_consistent() && v.is_square_integrable());
    }

    #[test]
    fn oscillatory_inputs_use_the_periodic_kernel() {
        let v = RealLineFunction::periodic(f64::sin, 2.0 * PI);
        let targets = [-3.0, -0.4, 0.0, 1.7, 12.0];
        let r = hilbert_line(&v, &targets).unwrap();
        let exact: Vec<f64> = targets.iter().map(|x| x.cos()).collect();
        assert!(max_err(&r.values, &exact) < 1e-12);
        let v = RealLineFunction::periodic(|x| (3.0 * x).cos(), 2.0 * PI);
        let r = hilbert_line(&v, &targets).unwrap();
        let exact: Vec<f64> = targets.iter().map(|x| -(3.0 * x).sin()).collect();
        assert!(max_err(&r.values, &exact) < 1e-12);
    }

    #[test]
    fn circular_modes() {
        let n = 512;
        let v = PeriodicFunction::from_fn(n, f64::sin).unwrap();
        let u = hilbert_circular(&v).unwrap();
        let exact: Vec<f64> = v.angles().iter().map(|t| t.cos()).collect();
        assert!(max_err(u.samples(), &exact) < 1e-10);
        for k in 1..=16 {
            let kf = k as f64;
            let c = PeriodicFunction::from_fn(4 * k + 8, |t| (kf * t).cos()).unwrap();
            let hc = hilbert_circular(&c).unwrap();
            let exact: Vec<f64> = c.angles().iter().map(|t| -(kf * t).sin()).collect();
            assert!(max_err(hc.samples(), &exact) < 1e-10, "k = {k}");
        }
        let k = PeriodicFunction::from_fn(16, |_| 3.0).unwrap();
        assert!(hilbert_circular(&k).unwrap().samples().iter().all(|x| x.abs() < 1e-14));
        assert!(PeriodicFunction::from_fn(9, f64::sin).is_err());
    }

    #[test]
    fn circular_inverse_and_complement() {
        let n = 64;
        let v = PeriodicFunction::from_fn(n, |t| t.sin() + 0.5 * (2.0 * t).sin()).unwrap();
        let back = hilbert_circular_inverse(&hilbert_circular(&v).unwrap()).unwrap();
        assert!(max_err(back.samples(), v.samples()) < 1e-10);
        let u = PeriodicFunction::from_fn(n, f64::cos).unwrap();
        let w = hilbert_circular_inverse(&u).unwrap();
        let exact: Vec<f64> = u.angles().iter().map(|t| t.sin()).collect();
        assert!(max_err(w.samples(), &exact) < 1e-12);
        let big_v = PeriodicFunction::from_fn(n, f64::sin).unwrap();
        let big_u = hilbert_circular_complementary(&big_v).unwrap();
        let plain = hilbert_circular(&big_v).unwrap();
        for (a, b) in big_u.samples().iter().zip(plain.samples()) {
            assert_eq!(a + b, 0.0);
        }
        let again = hilbert_circular_complementary_inverse(&big_u).unwrap();
        assert!(max_err(again.samples(), big_v.samples()) < 1e-12);
    }

    #[test]
    fn normalization_and_parseval() {
        let n = 64;
        let theta: Vec<f64> = (0..n).map(|j| angle(j, n)).collect();
        let e1: Vec<Complex64> = theta.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        assert!(normalization_check(&e1).norm() < 1e-13);
        let c = vec![Complex64::new(1.5, 0.0); n];
        assert!((normalization_check(&c) - Complex64::new(3.0 * PI, 0.0)).norm() < 1e-12);

        let u = PeriodicFunction::from_fn(n, f64::cos).unwrap();
        let v = PeriodicFunction::from_fn(n, f64::sin).unwrap();
        let g = parseval_circle(&u, &v).unwrap();
        assert!((g.lhs - PI).abs() < 1e-12 && g.gap < 1e-12);

        let u = RealLineFunction::decaying(|x| x / (x * x + 1.0), 1.0);
        let v = RealLineFunction::decaying(|x| -1.0 / (x * x + 1.0), 2.0);
        let g = parseval_line(&u, &v).unwrap();
        assert!((g.lhs - PI / 2.0).abs() < 1e-9 && (g.rhs - PI / 2.0).abs() < 1e-9);
        assert!(g.gap < 1e-9);
    }
}
