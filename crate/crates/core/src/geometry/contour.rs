//! Closed parametric contours and the D⁺ / C / D⁻ point classification.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use super::quadrature::QuadratureGrid;
use crate::error::{Error, Result};

/// Parameterization `s ↦ (z(s), z'(s))`.
pub type ParamFn = Arc<dyn Fn(f64) -> (Complex64, Complex64) + Send + Sync>;

/// Analytic descriptor of a closed contour.
#[derive(Clone)]
pub enum ContourShape {
    Circle { center: Complex64, radius: f64 },
    Ellipse { center: Complex64, semi_x: f64, semi_y: f64 },
    /// Generic smooth 2π-periodic curve, counterclockwise.
    Smooth(ParamFn),
}

impl fmt::Debug for ContourShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContourShape::Circle { center, radius } => f
                .debug_struct("Circle")
                .field("center", center)
                .field("radius", radius)
                .finish(),
            ContourShape::Ellipse { center, semi_x, semi_y } => f
                .debug_struct("Ellipse")
                .field("center", center)
                .field("semi_x", semi_x)
                .field("semi_y", semi_y)
                .finish(),
            ContourShape::Smooth(_) => f.write_str("Smooth(..)"),
        }
    }
}

/// A simple closed curve `z(s)`, `s ∈ [0, 2π)`.
///
/// Constructed contours are counterclockwise; [`ClosedContour::reversed`]
/// gives the opposite traversal.
#[derive(Debug, Clone)]
pub struct ClosedContour {
    shape: ContourShape,
    reversed: bool,
}

/// Node data of a contour discretized by a periodic grid.
#[derive(Debug, Clone)]
pub struct Discretization {
    /// Parameter values.
    pub s: Vec<f64>,
    /// Points `t_j = z(s_j)`.
    pub t: Vec<Complex64>,
    /// `z'(s_j)`.
    pub dz: Vec<Complex64>,
    /// Quadrature measure `z'(s_j) w_j`.
    pub dt: Vec<Complex64>,
    /// Parameter spacing.
    pub h: f64,
}

impl Discretization {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }
}

impl ClosedContour {
    pub fn unit_circle() -> Self {
        Self::circle(Complex64::new(0.0, 0.0), 1.0).expect("unit circle is valid")
    }

    pub fn circle(center: Complex64, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::InvalidContour(format!("circle radius {radius} must be positive")));
        }
        Ok(Self {
            shape: ContourShape::Circle { center, radius },
            reversed: false,
        })
    }

    pub fn ellipse(center: Complex64, semi_x: f64, semi_y: f64) -> Result<Self> {
        if !(semi_x > 0.0 && semi_y > 0.0) || !center.is_finite() {
            return Err(Error::InvalidContour("ellipse semi-axes must be positive".into()));
        }
        Ok(Self {
            shape: ContourShape::Ellipse { center, semi_x, semi_y },
            reversed: false,
        })
    }

    /// Generic smooth curve. Validated for non-vanishing speed, simplicity
    /// (no segment crossings at 256-sample resolution) and counterclockwise sense.
    pub fn smooth<F>(param: F) -> Result<Self>
    where
        F: Fn(f64) -> (Complex64, Complex64) + Send + Sync + 'static,
    {
        let contour = Self {
            shape: ContourShape::Smooth(Arc::new(param)),
            reversed: false,
        };
        contour.validate(256)?;
        Ok(contour)
    }

    pub fn shape(&self) -> &ContourShape {
        &self.shape
    }

    /// Same curve traversed clockwise (the C⁻ of the complement theory).
    pub fn reversed(&self) -> Self {
        Self {
            shape: self.shape.clone(),
            reversed: !self.reversed,
        }
    }

    pub fn is_counterclockwise(&self) -> bool {
        !self.reversed
    }

    fn forward(&self, s: f64) -> (Complex64, Complex64) {
        match &self.shape {
            ContourShape::Circle { center, radius } => {
                let e = Complex64::from_polar(1.0, s);
                (center + e * *radius, Complex64::i() * e * *radius)
            }
            ContourShape::Ellipse { center, semi_x, semi_y } => {
                let (sn, cs) = s.sin_cos();
                (
                    center + Complex64::new(semi_x * cs, semi_y * sn),
                    Complex64::new(-semi_x * sn, semi_y * cs),
                )
            }
            ContourShape::Smooth(p) => p(s),
        }
    }

    /// Point and derivative at parameter `s`.
    pub fn eval(&self, s: f64) -> (Complex64, Complex64) {
        if self.reversed {
            let (z, dz) = self.forward(-s);
            (z, -dz)
        } else {
            self.forward(s)
        }
    }

    pub fn point(&self, s: f64) -> Complex64 {
        self.eval(s).0
    }

    pub fn derivative(&self, s: f64) -> Complex64 {
        self.eval(s).1
    }

    /// Arc length, by the periodic trapezoid rule on 512 nodes.
    pub fn length(&self) -> f64 {
        match &self.shape {
            ContourShape::Circle { radius, .. } => 2.0 * PI * radius,
            _ => {
                let n = 512;
                let h = 2.0 * PI / n as f64;
                (0..n).map(|j| self.derivative(j as f64 * h).norm() * h).sum()
            }
        }
    }

    /// Default on-contour tolerance band: `1e-8 × length`.
    pub fn default_tolerance(&self) -> f64 {
        1e-8 * self.length()
    }

    /// Width of the near zone for a grid of `n` nodes: `10 × length / n`.
    pub fn near_zone_width(&self, n: usize) -> f64 {
        10.0 * self.length() / n as f64
    }

    /// Sample nodes of the contour on a periodic grid.
    pub fn discretize(&self, grid: &QuadratureGrid) -> Result<Discretization> {
        if !grid.is_periodic() {
            return Err(Error::InvalidGrid(
                "closed contours require the periodic trapezoid rule".into(),
            ));
        }
        let n = grid.len();
        let mut t = Vec::with_capacity(n);
        let mut dz = Vec::with_capacity(n);
        let mut dt = Vec::with_capacity(n);
        for (s, w) in grid.iter() {
            let (z, d) = self.eval(s);
            t.push(z);
            dz.push(d);
            dt.push(d * w);
        }
        Ok(Discretization {
            s: grid.nodes().to_vec(),
            t,
            dz,
            dt,
            h: grid.spacing(),
        })
    }

    /// Parameter of the contour point closest to `z`, and that distance.
    ///
    /// Coarse search over 512 samples followed by golden-section refinement.
    pub fn locate(&self, z: Complex64) -> (f64, f64) {
        let n = 512;
        let h = 2.0 * PI / n as f64;
        let (best, _) = (0..n)
            .map(|j| (j, (self.point(j as f64 * h) - z).norm_sqr()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty");
        let (s, d) = golden_min(|s| (self.point(s) - z).norm(), (best as f64 - 1.0) * h, (best as f64 + 1.0) * h);
        (s.rem_euclid(2.0 * PI), d)
    }

    /// Check speed, simplicity and orientation on `n` samples.
    pub fn validate(&self, n: usize) -> Result<()> {
        let h = 2.0 * PI / n as f64;
        let pts: Vec<Complex64> = (0..n).map(|j| self.point(j as f64 * h)).collect();
        for j in 0..n {
            let d = self.derivative(j as f64 * h);
            if !(d.norm() > 0.0) || !d.is_finite() || !pts[j].is_finite() {
                return Err(Error::InvalidContour(format!("degenerate speed at s = {}", j as f64 * h)));
            }
        }
        for i in 0..n {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = (pts[j], pts[(j + 1) % n]);
                if segments_cross(a, b, c, d) {
                    return Err(Error::InvalidContour(format!(
                        "self-intersection between samples {i} and {j}"
                    )));
                }
            }
        }
        let area: f64 = (0..n)
            .map(|i| {
                let (a, b) = (pts[i], pts[(i + 1) % n]);
                a.re * b.im - b.re * a.im
            })
            .sum();
        if self.is_counterclockwise() != (area > 0.0) {
            return Err(Error::InvalidContour("orientation is not the declared sense".into()));
        }
        Ok(())
    }
}

fn segments_cross(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let cross = |o: Complex64, p: Complex64, q: Complex64| (p - o).re * (q - o).im - (p - o).im * (q - o).re;
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    (d1 > 0.0) != (d2 > 0.0) && (d3 > 0.0) != (d4 > 0.0) && d1 != 0.0 && d2 != 0.0 && d3 != 0.0 && d4 != 0.0
}

pub(crate) fn golden_min<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..80 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let s = 0.5 * (a + b);
    (s, f(s))
}

/// Build the unit circle `z(s) = e^{is}` with an `n`-node periodic trapezoid grid.
pub fn build_unit_circle(n: usize) -> Result<(ClosedContour, QuadratureGrid)> {
    let grid = QuadratureGrid::periodic_trapezoid(n)?;
    Ok((ClosedContour::unit_circle(), grid))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Inside,
    OnContour,
    Outside,
}

/// Inside / on / outside verdict for a point relative to a closed contour.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointClassification {
    pub verdict: Verdict,
    /// Winding number rounded to an integer.
    pub winding: i64,
    /// Unrounded winding integral `(2πi)⁻¹ ∮ dt/(t-z)`.
    pub winding_estimate: f64,
    pub distance: f64,
    pub tolerance: f64,
    /// Closer to the contour than `10 × length / N`: quadrature of kernels
    /// centred at this point is under-resolved.
    pub near_zone: bool,
    /// The winding quadrature did not return a value close to an integer.
    pub winding_unresolved: bool,
}

impl PointClassification {
    pub fn is_inside(&self) -> bool {
        self.verdict == Verdict::Inside
    }

    pub fn is_outside(&self) -> bool {
        self.verdict == Verdict::Outside
    }

    pub fn is_on_contour(&self) -> bool {
        self.verdict == Verdict::OnContour
    }
}

/// Classify `z` as inside, on or outside the contour.
///
/// The winding number is the trapezoid value of `(2πi)⁻¹ ∮ dt/(t-z)`. In the
/// near zone that quadrature is unreliable, so the side is taken from the sign
/// of the offset relative to the tangent at the closest contour point.
pub fn classify_point(
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    z: Complex64,
    tolerance: f64,
) -> Result<PointClassification> {
    if !z.is_finite() {
        return Err(Error::InvalidPoint(format!("{z} is not finite")));
    }
    if !(tolerance > 0.0) {
        return Err(Error::InvalidPoint(format!("tolerance {tolerance} must be positive")));
    }
    let disc = contour.discretize(grid)?;
    let (s_near, distance) = contour.locate(z);
    let sum: Complex64 = disc
        .t
        .iter()
        .zip(&disc.dt)
        .map(|(t, dt)| dt / (t - z))
        .sum();
    let estimate = (sum / Complex64::new(0.0, 2.0 * PI)).re;
    let unresolved = (estimate - estimate.round()).abs() > 1e-6;
    let near_zone = distance < contour.near_zone_width(grid.len());

    let orientation = if contour.is_counterclockwise() { 1 } else { -1 };
    let (verdict, winding) = if distance < tolerance {
        (Verdict::OnContour, estimate.round() as i64)
    } else if near_zone || unresolved {
        let (p, d) = contour.eval(s_near);
        // left of a counterclockwise tangent is the interior
        let side = (d.conj() * (z - p)).im * orientation as f64;
        if side > 0.0 {
            (Verdict::Inside, orientation)
        } else {
            (Verdict::Outside, 0)
        }
    } else {
        let w = estimate.round() as i64;
        if w == 0 {
            (Verdict::Outside, 0)
        } else {
            (Verdict::Inside, w)
        }
    };
    Ok(PointClassification {
        verdict,
        winding,
        winding_estimate: estimate,
        distance,
        tolerance,
        near_zone,
        winding_unresolved: unresolved,
    })
}
