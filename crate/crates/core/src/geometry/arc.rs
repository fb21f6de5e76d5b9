//! Open Jordan arcs `z(s)`, `s ∈ [0, 1]`.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::contour::{golden_min, ParamFn};
use crate::error::{Error, Result};

#[derive(Clone)]
pub enum ArcShape {
    Segment { a: Complex64, b: Complex64 },
    /// Circular arc of `radius` about `center` from angle `start` to `end`.
    Circular { center: Complex64, radius: f64, start: f64, end: f64 },
    Smooth(ParamFn),
}

impl fmt::Debug for ArcShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcShape::Segment { a, b } => write!(f, "Segment({a}, {b})"),
            ArcShape::Circular { center, radius, start, end } => {
                write!(f, "Circular({center}, {radius}, {start}..{end})")
            }
            ArcShape::Smooth(_) => f.write_str("Smooth(..)"),
        }
    }
}

/// A regular arc without double points, traversed from `a = z(0)` to `b = z(1)`.
#[derive(Debug, Clone)]
pub struct JordanArc {
    shape: ArcShape,
}

impl JordanArc {
    pub fn segment(a: Complex64, b: Complex64) -> Result<Self> {
        if a == b || !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidContour("segment endpoints must differ".into()));
        }
        Ok(Self { shape: ArcShape::Segment { a, b } })
    }

    /// The real interval `[lo, hi]`.
    pub fn real_interval(lo: f64, hi: f64) -> Result<Self> {
        Self::segment(Complex64::new(lo, 0.0), Complex64::new(hi, 0.0))
    }

    pub fn circular(center: Complex64, radius: f64, start: f64, end: f64) -> Result<Self> {
        if !(radius > 0.0) || start == end || (end - start).abs() >= 2.0 * std::f64::consts::PI {
            return Err(Error::InvalidContour(
                "circular arc needs positive radius and a sweep below 2π".into(),
            ));
        }
        Ok(Self {
            shape: ArcShape::Circular { center, radius, start, end },
        })
    }

    /// Generic smooth arc; checked for distinct endpoints, non-vanishing speed
    /// and absence of double points at 256-sample resolution.
    pub fn smooth<F>(param: F) -> Result<Self>
    where
        F: Fn(f64) -> (Complex64, Complex64) + Send + Sync + 'static,
    {
        let arc = Self { shape: ArcShape::Smooth(Arc::new(param)) };
        let n = 256;
        let pts: Vec<Complex64> = (0..=n).map(|k| arc.point(k as f64 / n as f64)).collect();
        if (pts[0] - pts[n]).norm() == 0.0 {
            return Err(Error::InvalidContour("arc endpoints coincide".into()));
        }
        for k in 0..=n {
            let d = arc.derivative(k as f64 / n as f64);
            if !(d.norm() > 0.0) || !d.is_finite() {
                return Err(Error::InvalidContour("degenerate arc speed".into()));
            }
        }
        let step = pts.windows(2).map(|w| (w[1] - w[0]).norm()).fold(f64::INFINITY, f64::min);
        for i in 0..=n {
            for j in (i + 2)..=n {
                if (pts[i] - pts[j]).norm() < 0.25 * step {
                    return Err(Error::InvalidContour(format!("double point near samples {i}, {j}")));
                }
            }
        }
        Ok(arc)
    }

    pub fn shape(&self) -> &ArcShape {
        &self.shape
    }

    pub fn eval(&self, s: f64) -> (Complex64, Complex64) {
        match &self.shape {
            ArcShape::Segment { a, b } => (a + (b - a) * s, b - a),
            ArcShape::Circular { center, radius, start, end } => {
                let sweep = end - start;
                let e = Complex64::from_polar(*radius, start + sweep * s);
                (center + e, Complex64::i() * e * sweep)
            }
            ArcShape::Smooth(p) => p(s),
        }
    }

    pub fn point(&self, s: f64) -> Complex64 {
        self.eval(s).0
    }

    pub fn derivative(&self, s: f64) -> Complex64 {
        self.eval(s).1
    }

    pub fn start(&self) -> Complex64 {
        self.point(0.0)
    }

    pub fn end(&self) -> Complex64 {
        self.point(1.0)
    }

    pub fn is_straight(&self) -> bool {
        matches!(self.shape, ArcShape::Segment { .. })
    }

    pub fn length(&self) -> f64 {
        match &self.shape {
            ArcShape::Segment { a, b } => (b - a).norm(),
            ArcShape::Circular { radius, start, end, .. } => radius * (end - start).abs(),
            ArcShape::Smooth(_) => {
                let g = super::quadrature::legendre_reference(32);
                (0..16)
                    .map(|p| {
                        let (lo, hi) = (p as f64 / 16.0, (p + 1) as f64 / 16.0);
                        g.iter()
                            .map(|&(x, w)| {
                                let s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
                                0.5 * (hi - lo) * w * self.derivative(s).norm()
                            })
                            .sum::<f64>()
                    })
                    .sum()
            }
        }
    }

    /// Parameter of the arc point nearest to `z`, and the distance.
    pub fn locate(&self, z: Complex64) -> (f64, f64) {
        if let ArcShape::Segment { a, b } = self.shape {
            let d = b - a;
            let s = (((z - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
            return (s, (self.point(s) - z).norm());
        }
        let n = 512;
        let (best, _) = (0..=n)
            .map(|k| (k, (self.point(k as f64 / n as f64) - z).norm_sqr()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty");
        let lo = ((best as f64 - 1.0) / n as f64).max(0.0);
        let hi = ((best as f64 + 1.0) / n as f64).min(1.0);
        golden_min(|s| (self.point(s) - z).norm(), lo, hi)
    }
}
