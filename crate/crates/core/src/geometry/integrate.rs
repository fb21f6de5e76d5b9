//! Plain and principal-value integrals around closed contours.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::contour::{ClosedContour, Discretization};
use super::quadrature::QuadratureGrid;
use super::spectral;
use crate::error::{Error, Result};
use crate::function::BoundaryFunction;

/// A principal value together with a flag raised when the density does not
/// look smooth at the singular point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrincipalValue {
    pub value: Complex64,
    pub accuracy_warning: bool,
}

/// `∮ f(t) dt` by the rule of `grid`.
pub fn contour_integral(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
) -> Result<Complex64> {
    let disc = contour.discretize(grid)?;
    let mut sum = Complex64::new(0.0, 0.0);
    for (t, dt) in disc.t.iter().zip(&disc.dt) {
        let v = f.eval(*t);
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("integrand at t = {t}")));
        }
        sum += v * dt;
    }
    Ok(sum)
}

pub(crate) fn on_contour_parameter(contour: &ClosedContour, t0: Complex64) -> Result<f64> {
    if !t0.is_finite() {
        return Err(Error::InvalidPoint(format!("{t0} is not finite")));
    }
    let (s, dist) = contour.locate(t0);
    let tol = contour.default_tolerance();
    if dist > tol {
        return Err(Error::OffContour { distance: dist, tolerance: tol });
    }
    Ok(s)
}

/// `P∮ dz/(t0 - z)` for `t0` on the contour: `-πi` for a counterclockwise
/// contour, `+πi` for the reversed one.
pub fn pv_singular_weight(contour: &ClosedContour, t0: Complex64) -> Result<Complex64> {
    on_contour_parameter(contour, t0)?;
    Ok(-orientation_half_turn(contour))
}

/// `P∮ dt/(t - t0) = ±πi`.
pub(crate) fn orientation_half_turn(contour: &ClosedContour) -> Complex64 {
    let sign = if contour.is_counterclockwise() { 1.0 } else { -1.0 };
    Complex64::new(0.0, sign * PI)
}

/// `P∮ f(t)/(t - t0) dt` by singularity subtraction.
pub fn pv_contour_integral(
    f: &BoundaryFunction,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    t0: Complex64,
) -> Result<PrincipalValue> {
    let s0 = on_contour_parameter(contour, t0)?;
    let disc = contour.discretize(grid)?;
    let samples: Vec<Complex64> = disc.t.iter().map(|&t| f.eval(t)).collect();
    if samples.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("density sample".into()));
    }
    let kernel = SubtractedKernel::new(contour, &disc, &samples);
    Ok(kernel.at(s0, |_| f.eval(contour.point(s0))))
}

/// Reusable principal-value evaluator for one set of node samples.
///
/// The removable value at a coincident node is the limit `dh/dt`, taken from
/// the spectral derivative of the samples. Fourth- and second-order centred
/// differences are compared as a smoothness probe.
pub(crate) struct SubtractedKernel<'a> {
    contour: &'a ClosedContour,
    disc: &'a Discretization,
    samples: &'a [Complex64],
    ds_samples: Vec<Complex64>,
}

impl<'a> SubtractedKernel<'a> {
    pub(crate) fn new(contour: &'a ClosedContour, disc: &'a Discretization, samples: &'a [Complex64]) -> Self {
        Self {
            contour,
            disc,
            samples,
            ds_samples: spectral::periodic_derivative(samples),
        }
    }

    /// Index of the node within `1e-6 h` of parameter `s0`, if any.
    fn coincident_node(&self, s0: f64) -> Option<usize> {
        let n = self.disc.len();
        let h = self.disc.h;
        let k = (s0 / h).round();
        if (s0 - k * h).abs() < 1e-6 * h {
            Some((k as i64).rem_euclid(n as i64) as usize)
        } else {
            None
        }
    }

    fn smoothness_suspect(&self, j: usize) -> bool {
        let h = self.disc.h;
        let n = self.samples.len();
        let at = |k: isize| self.samples[(j as isize + k).rem_euclid(n as isize) as usize];
        let scale = self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return false;
        }
        // first derivative: fourth- against second-order differences
        let d4 = spectral::centered_difference4(self.samples, j, h);
        let d2 = spectral::centered_difference2(self.samples, j, h);
        let first = (d4 - d2).norm() > 1e-2 * d4.norm().max(1e-6 * scale);
        // second differences at spacings h and 2h grow like 1/h across a kink
        let c1 = (at(1) - at(0) * 2.0 + at(-1)) / (h * h);
        let c2 = (at(2) - at(0) * 2.0 + at(-2)) / (4.0 * h * h);
        let gap = (c1 - c2).norm();
        let second = gap > 0.1 * c1.norm().max(c2.norm()) && gap > 1e-3 * scale;
        first || second
    }

    /// Principal value at the node `j`.
    pub(crate) fn at_node(&self, j: usize) -> PrincipalValue {
        let t0 = self.disc.t[j];
        let h0 = self.samples[j];
        let mut sum = Complex64::new(0.0, 0.0);
        for (k, ((t, dt), v)) in self.disc.t.iter().zip(&self.disc.dt).zip(self.samples).enumerate() {
            if k == j {
                sum += self.ds_samples[j] / self.disc.dz[j] * dt;
            } else {
                sum += (v - h0) / (t - t0) * dt;
            }
        }
        PrincipalValue {
            value: sum + h0 * orientation_half_turn(self.contour),
            accuracy_warning: self.smoothness_suspect(j),
        }
    }

    /// Principal value at parameter `s0`; `value_at` supplies the density at
    /// the singular point when it is not a node.
    pub(crate) fn at<F: FnOnce(f64) -> Complex64>(&self, s0: f64, value_at: F) -> PrincipalValue {
        if let Some(j) = self.coincident_node(s0) {
            return self.at_node(j);
        }
        let t0 = self.contour.point(s0);
        let h0 = value_at(s0);
        let sum: Complex64 = self
            .disc
            .t
            .iter()
            .zip(&self.disc.dt)
            .zip(self.samples)
            .map(|((t, dt), v)| (v - h0) / (t - t0) * dt)
            .sum();
        let nearest = ((s0 / self.disc.h).round() as i64).rem_euclid(self.disc.len() as i64) as usize;
        PrincipalValue {
            value: sum + h0 * orientation_half_turn(self.contour),
            accuracy_warning: self.smoothness_suspect(nearest),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_unit_circle;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Slow check: excise `|s - s0| < δ`, integrate the rest on graded panels,
    /// and extrapolate `δ → 0` from `δ = 1e-3, 1e-4`.
    fn indentation_oracle(f: &BoundaryFunction, contour: &ClosedContour, s0: f64) -> Complex64 {
        let t0 = contour.point(s0);
        let excised = |delta: f64| {
            let breaks = crate::geometry::quadrature::graded_breakpoints(s0 + delta, s0 + 2.0 * PI - delta, 64, 14, 0.5);
            let (nodes, weights) = crate::geometry::quadrature::panel_rule(&breaks, 20);
            nodes
                .iter()
                .zip(&weights)
                .map(|(&s, &w)| {
                    let (z, dz) = contour.eval(s);
                    f.eval(z) / (z - t0) * dz * w
                })
                .sum::<Complex64>()
        };
        (10.0 * excised(1e-4) - excised(1e-3)) / 9.0
    }

    #[test]
    fn subtraction_agrees_with_indentation() {
        let grid = QuadratureGrid::periodic_trapezoid(256).unwrap();
        let ellipse = ClosedContour::ellipse(c(0.2, -0.1), 1.6, 0.9).unwrap();
        let circle = ClosedContour::unit_circle();
        let one = BoundaryFunction::constant(c(1.0, 0.0));
        let pole = BoundaryFunction::new(|t: Complex64| 1.0 / (t - 3.0));
        for contour in [&circle, &ellipse] {
            for (f, s0) in [(&one, 0.0), (&pole, 1.3), (&one, 4.0)] {
                let t0 = contour.point(s0);
                let fast = pv_contour_integral(f, contour, &grid, t0).unwrap().value;
                let slow = indentation_oracle(f, contour, s0);
                assert!((fast - slow).norm() < 1e-6, "{fast} vs {slow}");
            }
        }
    }

    #[test]
    fn closed_curve_identities() {
        let (contour, grid) = build_unit_circle(256).unwrap();
        let one = BoundaryFunction::constant(c(1.0, 0.0));
        assert!(contour_integral(&one, &contour, &grid).unwrap().norm() < 1e-14);
        let (contour, grid) = build_unit_circle(64).unwrap();
        let inv = BoundaryFunction::new(|t: Complex64| 1.0 / t);
        let v = contour_integral(&inv, &contour, &grid).unwrap();
        assert!((v - c(0.0, 2.0 * PI)).norm() / (2.0 * PI) < 1e-13);
        let sq = BoundaryFunction::new(|t: Complex64| t * t);
        assert!(contour_integral(&sq, &contour, &grid).unwrap().norm() < 1e-13);
        assert_eq!(contour_integral(&BoundaryFunction::zero(), &contour, &grid).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn non_finite_integrand_is_reported() {
        let (contour, grid) = build_unit_circle(16).unwrap();
        let bad = BoundaryFunction::new(|t: Complex64| 1.0 / (t - 1.0));
        assert!(matches!(contour_integral(&bad, &contour, &grid), Err(Error::NonFinite(_))));
    }

    #[test]
    fn singular_weight() {
        let contour = ClosedContour::unit_circle();
        assert_eq!(pv_singular_weight(&contour, c(1.0, 0.0)).unwrap(), c(0.0, -PI));
        assert_eq!(pv_singular_weight(&contour, c(0.0, 1.0)).unwrap(), c(0.0, -PI));
        assert!(matches!(
            pv_singular_weight(&contour, c(0.5, 0.0)),
            Err(Error::OffContour { .. })
        ));
        assert_eq!(pv_singular_weight(&contour.reversed(), c(1.0, 0.0)).unwrap(), c(0.0, PI));
    }

    #[test]
    fn principal_values_on_the_unit_circle() {
        let (contour, grid) = build_unit_circle(256).unwrap();
        let one = BoundaryFunction::constant(c(1.0, 0.0));
        let v = pv_contour_integral(&one, &contour, &grid, c(1.0, 0.0)).unwrap();
        assert!((v.value - c(0.0, PI)).norm() < 1e-13);
        assert!(!v.accuracy_warning);

        let f = BoundaryFunction::new(|t: Complex64| 1.0 / (t - 2.0));
        let v = pv_contour_integral(&f, &contour, &grid, c(1.0, 0.0)).unwrap();
        assert!((v.value - c(0.0, -PI)).norm() < 1e-10);

        let id = BoundaryFunction::new(|t| t);
        let v = pv_contour_integral(&id, &contour, &grid, c(0.0, 1.0)).unwrap();
        assert!((v.value - c(-PI, 0.0)).norm() < 1e-12);

        // off-node singular point
        let t0 = Complex64::from_polar(1.0, 0.123);
        let v = pv_contour_integral(&f, &contour, &grid, t0).unwrap();
        assert!((v.value - c(0.0, PI) * f.eval(t0)).norm() < 1e-10);
    }

    #[test]
    fn kink_raises_warning() {
        let (contour, grid) = build_unit_circle(128).unwrap();
        let kink = BoundaryFunction::new(|t: Complex64| c(t.im.abs(), 0.0));
        let v = pv_contour_integral(&kink, &contour, &grid, c(1.0, 0.0)).unwrap();
        assert!(v.accuracy_warning);
    }
}
