//! Complex densities evaluable on contours, arcs and nearby points.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::contour::{ClosedContour, Discretization};
use crate::geometry::spectral;

/// `t ↦ f(t)`.
pub type ComplexFn = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

/// A complex density with optional derivative evaluators.
///
/// Derivatives that are not supplied are produced on demand by spectral
/// differentiation of the contour samples, up to the declared smoothness.
#[derive(Clone)]
pub struct BoundaryFunction {
    value: ComplexFn,
    /// `derivatives[k]` evaluates `f^(k+1)`.
    derivatives: Vec<ComplexFn>,
    smoothness: usize,
    decay: Option<f64>,
}

impl fmt::Debug for BoundaryFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryFunction")
            .field("supplied_derivatives", &self.derivatives.len())
            .field("smoothness", &self.smoothness)
            .field("decay", &self.decay)
            .finish()
    }
}

impl BoundaryFunction {
    /// An analytic density: derivatives of every order are available.
    pub fn new<F>(f: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            value: Arc::new(f),
            derivatives: Vec::new(),
            smoothness: usize::MAX,
            decay: None,
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(move |_| c).with_derivative(|_| Complex64::new(0.0, 0.0))
    }

    pub fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    /// Supply the evaluator of the next derivative order.
    pub fn with_derivative<F>(mut self, d: F) -> Self
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        self.derivatives.push(Arc::new(d));
        self
    }

    /// Declare the density only `n` times continuously differentiable.
    pub fn with_smoothness(mut self, n: usize) -> Self {
        self.smoothness = n;
        self
    }

    /// Declare decay `O(|t|^{-p})` at infinity (complement densities).
    pub fn with_decay(mut self, p: f64) -> Self {
        self.decay = Some(p);
        self
    }

    pub fn smoothness(&self) -> usize {
        self.smoothness
    }

    pub fn decay(&self) -> Option<f64> {
        self.decay
    }

    pub fn eval(&self, t: Complex64) -> Complex64 {
        (self.value)(t)
    }

    /// Number of supplied derivative evaluators.
    pub fn supplied_derivatives(&self) -> usize {
        self.derivatives.len()
    }

    /// Evaluator of `f^(m)` if it was supplied (`m = 0` is `f` itself).
    pub fn derivative_fn(&self, m: usize) -> Option<&ComplexFn> {
        if m == 0 {
            Some(&self.value)
        } else {
            self.derivatives.get(m - 1)
        }
    }

    fn ensure_order(&self, m: usize) -> Result<()> {
        if m > self.derivatives.len() && m > self.smoothness {
            return Err(Error::MissingDerivative {
                order: m,
                smoothness: self.smoothness,
            });
        }
        Ok(())
    }

    /// `f^(m)` at the nodes of a discretized contour.
    pub fn node_derivatives(&self, m: usize, disc: &Discretization) -> Result<Vec<Complex64>> {
        self.ensure_order(m)?;
        if let Some(d) = self.derivative_fn(m) {
            return finite_samples(disc.t.iter().map(|&t| d(t)).collect());
        }
        // highest supplied order below m, then differentiate spectrally
        let start = self.derivatives.len();
        let d = self.derivative_fn(start).expect("order within supplied range");
        let mut g = finite_samples(disc.t.iter().map(|&t| d(t)).collect())?;
        for _ in start..m {
            g = spectral::periodic_derivative(&g)
                .iter()
                .zip(&disc.dz)
                .map(|(dg, dz)| dg / dz)
                .collect();
        }
        Ok(g)
    }

    /// `f^(m)` at the contour point with parameter `s`.
    pub fn derivative_at(
        &self,
        m: usize,
        contour: &ClosedContour,
        disc: &Discretization,
        s: f64,
    ) -> Result<Complex64> {
        self.ensure_order(m)?;
        if let Some(d) = self.derivative_fn(m) {
            return Ok(d(contour.point(s)));
        }
        let g = self.node_derivatives(m, disc)?;
        Ok(spectral::trig_interpolate(&g, s))
    }

    /// Largest relative mismatch between each supplied derivative and a centred
    /// difference of the order below it, measured along the contour at every
    /// `stride`-th node.
    pub fn check_derivatives(&self, contour: &ClosedContour, disc: &Discretization, stride: usize) -> f64 {
        let delta = 1e-5;
        let mut worst: f64 = 0.0;
        for m in 1..=self.derivatives.len() {
            let lower = self.derivative_fn(m - 1).expect("supplied");
            let upper = self.derivative_fn(m).expect("supplied");
            for j in (0..disc.len()).step_by(stride.max(1)) {
                let s = disc.s[j];
                let fd = (lower(contour.point(s + delta)) - lower(contour.point(s - delta)))
                    / (2.0 * delta)
                    / disc.dz[j];
                let exact = upper(disc.t[j]);
                let rel = (fd - exact).norm() / exact.norm().max(1.0);
                worst = worst.max(rel);
            }
        }
        worst
    }
}

fn finite_samples(v: Vec<Complex64>) -> Result<Vec<Complex64>> {
    if let Some(pos) = v.iter().position(|c| !c.is_finite()) {
        return Err(Error::NonFinite(format!("density sample {pos} is not finite")));
    }
    Ok(v)
}
