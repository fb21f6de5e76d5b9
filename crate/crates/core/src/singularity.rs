//! Boundary data generated by prescribed exterior singularities, and an
//! experimental probe that tries to recover exterior poles from boundary
//! samples alone.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::cauchy::cauchy_functional;
use crate::error::{Error, Result};
use crate::function::BoundaryFunction;
use crate::geometry::contour::{ClosedContour, Verdict};
use crate::geometry::quadrature::QuadratureGrid;
use crate::geometry::spectral::fourier_coefficients;

/// Minimum clearance between a singularity (or its cut) and the unit circle.
pub const EXTERIOR_MARGIN: f64 = 1e-3;

/// Number of analytic derivatives attached to catalog functions.
const SUPPLIED_DERIVATIVES: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SingularityKind {
    Pole { order: u32 },
    /// `(t - a)^exponent` with its cut on the ray `a + r e^{i cut_angle}`.
    AlgebraicBranch { exponent: f64, cut_angle: f64 },
    /// `log(t - a)` with its cut on the ray `a + r e^{i cut_angle}`.
    LogBranch { cut_angle: f64 },
    /// No finite singularity; the location is ignored.
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SingularityPrescription {
    pub kind: SingularityKind,
    pub location: Complex64,
    pub strength: Complex64,
}

impl SingularityPrescription {
    /// `strength / (t - a)^order`.
    pub fn pole(location: Complex64, order: u32, strength: Complex64) -> Result<Self> {
        Self { kind: SingularityKind::Pole { order }, location, strength }.validated()
    }

    /// `strength (t - a)^exponent`, cut running radially outward from `a`.
    pub fn algebraic_branch(location: Complex64, exponent: f64, strength: Complex64) -> Result<Self> {
        let kind = SingularityKind::AlgebraicBranch { exponent, cut_angle: location.arg() };
        Self { kind, location, strength }.validated()
    }

    /// `strength log(t - a)`, cut running radially outward from `a`.
    pub fn log_branch(location: Complex64, strength: Complex64) -> Result<Self> {
        let kind = SingularityKind::LogBranch { cut_angle: location.arg() };
        Self { kind, location, strength }.validated()
    }

    pub fn constant(value: Complex64) -> Self {
        Self { kind: SingularityKind::Constant, location: Complex64::new(0.0, 0.0), strength: value }
    }

    /// Turn the cut of a branch prescription to direction `angle`.
    pub fn with_cut_angle(mut self, angle: f64) -> Result<Self> {
        match &mut self.kind {
            SingularityKind::AlgebraicBranch { cut_angle, .. } | SingularityKind::LogBranch { cut_angle } => {
                *cut_angle = angle;
            }
            _ => return Err(Error::Prescription("only branch prescriptions carry a cut".into())),
        }
        self.validated()
    }

    fn cut_angle(&self) -> Option<f64> {
        match self.kind {
            SingularityKind::AlgebraicBranch { cut_angle, .. } | SingularityKind::LogBranch { cut_angle } => {
                Some(cut_angle)
            }
            _ => None,
        }
    }

    fn validated(self) -> Result<Self> {
        if !self.strength.is_finite() {
            return Err(Error::Prescription("strength must be finite".into()));
        }
        if self.kind == SingularityKind::Constant {
            return Ok(self);
        }
        let a = self.location;
        if !a.is_finite() || a.norm() <= 1.0 + EXTERIOR_MARGIN {
            return Err(Error::Prescription(format!(
                "singularity at {a} is not outside the unit circle (|a| = {:.6})",
                a.norm()
            )));
        }
        match self.kind {
            SingularityKind::Pole { order: 0 } => {
                return Err(Error::Prescription("pole order must be at least 1".into()));
            }
            SingularityKind::AlgebraicBranch { exponent, .. } if !exponent.is_finite() => {
                return Err(Error::Prescription("branch exponent must be finite".into()));
            }
            _ => {}
        }
        if let Some(phi) = self.cut_angle() {
            let dir = Complex64::from_polar(1.0, phi);
            let along = (-(a * dir.conj()).re).max(0.0);
            let closest = (a + dir * along).norm();
            if closest <= 1.0 + EXTERIOR_MARGIN {
                return Err(Error::Prescription(format!(
                    "branch cut from {a} at angle {phi} comes within {closest:.6} of the origin"
                )));
            }
        }
        Ok(self)
    }
}

/// `log(t - a)` with argument in `(φ, φ + 2π]`, so the cut lies along `e^{iφ}`.
fn cut_log(t: Complex64, a: Complex64, phi: f64) -> Complex64 {
    let d = t - a;
    let u = -d * Complex64::from_polar(1.0, -phi);
    Complex64::new(d.norm().ln(), u.arg() + phi + PI)
}

/// `d^m/dt^m (t - a)^p`, branch fixed by the cut direction.
fn power_derivative(t: Complex64, a: Complex64, phi: f64, p: f64, m: usize) -> Complex64 {
    let falling: f64 = (0..m).map(|j| p - j as f64).product();
    if falling == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    falling * ((p - m as f64) * cut_log(t, a, phi)).exp()
}

/// `d^m/dt^m log(t - a)`.
fn log_derivative(t: Complex64, a: Complex64, phi: f64, m: usize) -> Complex64 {
    if m == 0 {
        return cut_log(t, a, phi);
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let fact: f64 = (1..m).map(|j| j as f64).product();
    sign * fact / (t - a).powi(m as i32)
}

fn catalog_derivative(p: &SingularityPrescription, t: Complex64, m: usize) -> Complex64 {
    let (a, s) = (p.location, p.strength);
    match p.kind {
        SingularityKind::Pole { order } => s * power_derivative(t, a, 0.0, -(order as f64), m),
        SingularityKind::AlgebraicBranch { exponent, cut_angle } => {
            s * power_derivative(t, a, cut_angle, exponent, m)
        }
        SingularityKind::LogBranch { cut_angle } => s * log_derivative(t, a, cut_angle, m),
        SingularityKind::Constant => {
            if m == 0 {
                s
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
    }
}

/// Closed-form boundary evaluator of a prescription, with analytic
/// derivatives attached.
pub fn catalog_function(p: &SingularityPrescription) -> Result<BoundaryFunction> {
    let p = p.validated()?;
    if p.kind == SingularityKind::Constant {
        return Ok(BoundaryFunction::constant(p.strength));
    }
    let mut f = BoundaryFunction::new(move |t| catalog_derivative(&p, t, 0));
    for m in 1..=SUPPLIED_DERIVATIVES {
        f = f.with_derivative(move |t| catalog_derivative(&p, t, m));
    }
    Ok(f)
}

/// Largest `|J_n[f](z)|` over exterior targets; zero up to quadrature error.
pub fn exterior_annihilation_check(
    p: &SingularityPrescription,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    targets: &[Complex64],
    n: usize,
) -> Result<f64> {
    let f = catalog_function(p)?;
    let mut worst = 0.0f64;
    for &z in targets {
        let j = cauchy_functional(&f, contour, grid, z, n)?;
        if j.verdict != Verdict::Outside {
            return Err(Error::Contract(format!("target {z} is not outside the contour")));
        }
        worst = worst.max(j.value.norm());
    }
    Ok(worst)
}

/// Largest `|J_n[f](z) - f^(n)(z)|` over interior targets.
pub fn interior_reproduction_check(
    p: &SingularityPrescription,
    contour: &ClosedContour,
    grid: &QuadratureGrid,
    targets: &[Complex64],
    n: usize,
) -> Result<f64> {
    let f = catalog_function(p)?;
    let mut worst = 0.0f64;
    for &z in targets {
        let j = cauchy_functional(&f, contour, grid, z, n)?;
        if j.verdict != Verdict::Inside {
            return Err(Error::Contract(format!("target {z} is not inside the contour")));
        }
        worst = worst.max((j.value - catalog_derivative(p, z, n)).norm());
    }
    Ok(worst)
}

/// Equispaced samples of a function on the unit circle,
/// at angles `first_angle + 2πj/len`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundarySamples {
    pub first_angle: f64,
    pub values: Vec<Complex64>,
}

impl BoundarySamples {
    pub fn new(first_angle: f64, values: Vec<Complex64>) -> Result<Self> {
        if values.len() < 8 || !values.len().is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "need an even number of at least 8 samples, got {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) || !first_angle.is_finite() {
            return Err(Error::NonFinite("boundary samples".into()));
        }
        Ok(Self { first_angle, values })
    }

    /// Samples of `f` at `n` nodes starting from `θ = -π`.
    pub fn from_fn<F: Fn(Complex64) -> Complex64>(f: F, n: usize) -> Result<Self> {
        let values = (0..n).map(|j| f(Complex64::from_polar(1.0, -PI + 2.0 * PI * j as f64 / n as f64))).collect();
        Self::new(-PI, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn angle(&self, j: usize) -> f64 {
        self.first_angle + 2.0 * PI * j as f64 / self.len() as f64
    }

    fn point(&self, j: usize) -> Complex64 {
        Complex64::from_polar(1.0, self.angle(j))
    }

    /// Every other sample, starting at `offset`.
    fn decimate(&self, offset: usize) -> Self {
        Self {
            first_angle: self.angle(offset),
            values: self.values.iter().skip(offset).step_by(2).copied().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaylorCoefficients {
    /// `c_0 … c_{n_max}`.
    pub coefficients: Vec<Complex64>,
    /// Largest negative-index coefficient relative to the largest coefficient.
    pub negative_mass: f64,
    /// Negative-index content above roundoff: `f` is not regular inside.
    pub interior_singularity: bool,
}

/// `c_n = (1/2πi) ∮ f(t) t^{-(n+1)} dt` by the trapezoid rule on the samples.
pub fn taylor_coefficients(samples: &BoundarySamples, n_max: usize) -> Result<TaylorCoefficients> {
    let len = samples.len();
    if n_max >= len / 2 {
        return Err(Error::InvalidGrid(format!(
            "{len} samples resolve coefficients up to {}, asked for {n_max}",
            len / 2 - 1
        )));
    }
    let raw = fourier_coefficients(&samples.values);
    let theta0 = samples.first_angle;
    let coefficients: Vec<Complex64> = (0..=n_max)
        .map(|k| raw[k] * Complex64::from_polar(1.0, -(k as f64) * theta0))
        .collect();
    let scale = raw.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let negative = (1..len / 2).map(|k| raw[len - k].norm()).fold(0.0, f64::max);
    let negative_mass = if scale > 0.0 { negative / scale } else { 0.0 };
    Ok(TaylorCoefficients {
        coefficients,
        negative_mass,
        interior_singularity: negative_mass > 1e-8,
    })
}

/// Geometric decay rate `ρ` from a least-squares fit `|c_n| ≈ C ρ^n` over `range`.
pub fn coefficient_decay_rate(coefficients: &[Complex64], range: std::ops::RangeInclusive<usize>) -> f64 {
    let pts: Vec<(f64, f64)> = range
        .filter_map(|n| coefficients.get(n).map(|c| (n as f64, c.norm().ln())))
        .collect();
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let num: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = pts.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    (num / den).exp()
}

/// A recovered exterior pole `strength / (t - location)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoleEstimate {
    pub location: Complex64,
    pub strength: Complex64,
}

/// Held-out residual of one degree pair in a scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub numerator_degree: usize,
    pub denominator_degree: usize,
    pub residual: f64,
}

/// Outcome of the pole probe. The probe is a heuristic: it reports one
/// candidate and never claims that the singularity distribution is unique.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub poles: Vec<PoleEstimate>,
    pub degrees: (usize, usize),
    pub coefficients: Vec<Complex64>,
    /// Relative max error of the rational fit on samples not used to build it.
    pub held_out_residual: Option<f64>,
    pub singular_values: Vec<f64>,
    /// The Hankel system lost rank at the cutoff.
    pub rank_deficient: bool,
    /// Roots dropped as spurious or lying inside the circle.
    pub rejected_roots: usize,
    /// The data look rational and the poles are stable across degrees.
    pub poles_asserted: bool,
    pub scan: Vec<ScanRow>,
    pub note: String,
}

const SVD_CUTOFF: f64 = 1e-12;
const FROISSART_CUTOFF: f64 = 1e-10;
const RATIONAL_RESIDUAL: f64 = 1e-9;
const MAX_SCAN_DEGREE: usize = 8;

fn horner(coeffs: &[Complex64], t: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c)
}

struct Approximant {
    numerator: Vec<Complex64>,
    denominator: Vec<Complex64>,
    singular_values: Vec<f64>,
    rank_deficient: bool,
}

impl Approximant {
    fn eval(&self, t: Complex64) -> Complex64 {
        horner(&self.numerator, t) / horner(&self.denominator, t)
    }
}

/// `(m/k)` Padé approximant: denominator from the overdetermined Hankel
/// system `Σ_j q_j c_{i-j} = 0`, `i > m`, solved by truncated SVD.
fn pade(c: &[Complex64], m: usize, k: usize) -> Result<Approximant> {
    if c.len() < m + k + 1 {
        return Err(Error::Contract(format!(
            "({m}/{k}) approximant needs {} coefficients, got {}",
            m + k + 1,
            c.len()
        )));
    }
    let coef = |i: isize| if i < 0 { Complex64::new(0.0, 0.0) } else { c[i as usize] };
    let mut q = vec![Complex64::new(1.0, 0.0)];
    let mut singular_values = Vec::new();
    let mut rank_deficient = false;
    if k > 0 {
        let rows: Vec<usize> = (m + 1..c.len()).collect();
        let a = DMatrix::from_fn(rows.len(), k, |r, j| coef(rows[r] as isize - j as isize - 1));
        let b = DVector::from_fn(rows.len(), |r, _| -c[rows[r]]);
        let svd = a.svd(true, true);
        let smax = svd.singular_values.max();
        singular_values = svd.singular_values.iter().copied().collect();
        let cutoff = SVD_CUTOFF * smax;
        rank_deficient = smax == 0.0 || singular_values.iter().any(|&s| s <= cutoff);
        let x = svd.solve(&b, cutoff).map_err(|e| Error::Contract(e.into()))?;
        q.extend(x.iter().copied());
    }
    let numerator = (0..=m)
        .map(|i| (0..=k.min(i)).map(|j| q[j] * c[i - j]).sum())
        .collect();
    Ok(Approximant { numerator, denominator: q, singular_values, rank_deficient })
}

fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut deg = coeffs.len() - 1;
    while deg > 0 && coeffs[deg].norm() <= SVD_CUTOFF * scale {
        deg -= 1;
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    let companion = DMatrix::from_fn(deg, deg, |r, col| {
        if r == 0 {
            -coeffs[deg - 1 - col] / lead
        } else if r == col + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let eig = companion
        .schur()
        .eigenvalues()
        .ok_or_else(|| Error::Contract("companion eigenvalues did not converge".into()))?;
    Ok(eig.iter().copied().collect())
}

fn derivative_coeffs(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs.iter().enumerate().skip(1).map(|(j, c)| c * j as f64).collect()
}

fn poles_of(approx: &Approximant) -> Result<(Vec<PoleEstimate>, usize)> {
    let roots = polynomial_roots(&approx.denominator)?;
    let dq = derivative_coeffs(&approx.denominator);
    let candidates: Vec<PoleEstimate> = roots
        .iter()
        .map(|&a| PoleEstimate {
            location: a,
            strength: horner(&approx.numerator, a) / horner(&dq, a),
        })
        .collect();
    let biggest = candidates.iter().map(|p| p.strength.norm()).fold(0.0, f64::max);
    let mut poles: Vec<PoleEstimate> = candidates
        .iter()
        .filter(|p| p.strength.is_finite() && p.strength.norm() >= FROISSART_CUTOFF * biggest)
        .filter(|p| p.location.norm() > 1.0)
        .copied()
        .collect();
    poles.sort_by(|a, b| a.location.norm().total_cmp(&b.location.norm()));
    Ok((poles.clone(), candidates.len() - poles.len()))
}

fn held_out_residual(approx: &Approximant, held_out: &BoundarySamples) -> f64 {
    let scale = held_out.values.iter().map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    (0..held_out.len())
        .map(|j| (approx.eval(held_out.point(j)) - held_out.values[j]).norm())
        .fold(0.0, f64::max)
        / scale
}

/// `(m/k)` rational fit of a Taylor sequence; poles are denominator roots
/// outside the unit circle, strengths are residues. `held_out` samples, when
/// given, measure the fit away from the data used to build it.
pub fn pade_pole_probe(
    coefficients: &[Complex64],
    degrees: (usize, usize),
    held_out: Option<&BoundarySamples>,
) -> Result<ProbeReport> {
    let (m, k) = degrees;
    let approx = pade(coefficients, m, k)?;
    let (poles, rejected) = poles_of(&approx)?;
    let residual = held_out.map(|h| held_out_residual(&approx, h));
    Ok(ProbeReport {
        poles,
        degrees,
        coefficients: coefficients.to_vec(),
        held_out_residual: residual,
        singular_values: approx.singular_values,
        rank_deficient: approx.rank_deficient,
        rejected_roots: rejected,
        poles_asserted: false,
        scan: Vec::new(),
        note: String::new(),
    })
}

fn same_poles(a: &[PoleEstimate], b: &[PoleEstimate]) -> bool {
    a.len() == b.len()
        && a.iter().all(|p| b.iter().any(|q| (p.location - q.location).norm() <= 1e-6 * p.location.norm()))
}

/// Probe boundary samples for exterior poles.
///
/// Even-indexed samples give `coefficient_count` Taylor coefficients and odd
/// ones are held out. Without `degrees`, `k = 1..8` (with `m = k`) is scanned
/// and the smallest `k` whose held-out residual is within a factor ten of the
/// best is kept. Poles are asserted only when that residual is at roundoff
/// level and the poles reappear unchanged at `k + 1`; otherwise, as for branch
/// points, the roots are reported as diagnostics.
pub fn probe_boundary(
    samples: &BoundarySamples,
    degrees: Option<(usize, usize)>,
    coefficient_count: usize,
) -> Result<ProbeReport> {
    if samples.len() < 16 {
        return Err(Error::InvalidGrid(format!("need at least 16 samples, got {}", samples.len())));
    }
    let fit = samples.decimate(0);
    let held = samples.decimate(1);
    let n_max = coefficient_count.max(2).min(fit.len() / 2) - 1;
    let tc = taylor_coefficients(&fit, n_max)?;
    let c = &tc.coefficients;

    let mut scan = Vec::new();
    let chosen = match degrees {
        Some(d) => d,
        None => {
            for k in 1..=MAX_SCAN_DEGREE.min(c.len().saturating_sub(1) / 2) {
                let approx = pade(c, k, k)?;
                scan.push(ScanRow {
                    numerator_degree: k,
                    denominator_degree: k,
                    residual: held_out_residual(&approx, &held),
                });
            }
            let best = scan.iter().map(|r| r.residual).fold(f64::INFINITY, f64::min);
            let row = scan
                .iter()
                .find(|r| r.residual <= 10.0 * best.max(f64::EPSILON))
                .ok_or_else(|| Error::Contract("degree scan produced no usable fit".into()))?;
            (row.numerator_degree, row.denominator_degree)
        }
    };
    let mut report = pade_pole_probe(c, chosen, Some(&held))?;
    report.scan = scan;

    let residual = report.held_out_residual.unwrap_or(f64::INFINITY);
    let stable = match pade_pole_probe(c, (chosen.0 + 1, chosen.1 + 1), None) {
        Ok(next) => same_poles(&report.poles, &next.poles),
        Err(_) => false,
    };
    report.poles_asserted = !tc.interior_singularity && residual < RATIONAL_RESIDUAL && stable;
    report.note = if tc.interior_singularity {
        "boundary data carry negative Fourier modes; f is not regular inside, nothing asserted".into()
    } else if report.poles_asserted {
        "rational fit at roundoff level with stable poles; one candidate, uniqueness not claimed".into()
    } else {
        "data are not resolved as a finite sum of poles (branch point or noise); roots are diagnostics only".into()
    };
    Ok(report)
}
