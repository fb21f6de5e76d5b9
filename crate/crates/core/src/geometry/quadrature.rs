//! Quadrature rules: periodic trapezoid, composite Gauss–Legendre panels and
//! the four Gauss–Chebyshev rules.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use gauss_quad::GaussLegendre;
use serde::Serialize;

use crate::error::{Error, Result};

/// Weight functions of the Gauss–Chebyshev family on (-1, 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChebyshevWeight {
    /// `1/sqrt(1-x^2)`
    FirstKind,
    /// `sqrt(1-x^2)`
    SecondKind,
    /// `sqrt((1+x)/(1-x))`, singular at the trailing edge `x = 1`.
    ThirdKind,
    /// `sqrt((1-x)/(1+x))`, singular at the leading edge `x = -1`.
    FourthKind,
}

impl ChebyshevWeight {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            ChebyshevWeight::FirstKind => 1.0 / (1.0 - x * x).sqrt(),
            ChebyshevWeight::SecondKind => (1.0 - x * x).sqrt(),
            ChebyshevWeight::ThirdKind => ((1.0 + x) / (1.0 - x)).sqrt(),
            ChebyshevWeight::FourthKind => ((1.0 - x) / (1.0 + x)).sqrt(),
        }
    }

    /// Integral of the weight over (-1, 1).
    pub fn mass(self) -> f64 {
        match self {
            ChebyshevWeight::SecondKind => PI / 2.0,
            _ => PI,
        }
    }

    /// Closed-form principal value `P∫ w(t)/(t-x) dt` over (-1, 1) for |x| < 1.
    pub fn hilbert_of_weight(self, x: f64) -> f64 {
        match self {
            ChebyshevWeight::FirstKind => 0.0,
            ChebyshevWeight::SecondKind => -PI * x,
            ChebyshevWeight::ThirdKind => PI,
            ChebyshevWeight::FourthKind => -PI,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum RuleKind {
    PeriodicTrapezoid,
    GaussLegendrePanels { panels: usize, order: usize },
    GaussChebyshev { weight: ChebyshevWeight },
}

/// Nodes and weights of a quadrature rule over a parameter interval.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureGrid {
    kind: RuleKind,
    interval: (f64, f64),
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureGrid {
    /// `n` equispaced nodes `s_j = 2πj/n` on `[0, 2π)` with equal weights `2π/n`.
    pub fn periodic_trapezoid(n: usize) -> Result<Self> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "periodic trapezoid needs an even node count >= 8, got {n}"
            )));
        }
        let h = 2.0 * PI / n as f64;
        Ok(Self {
            kind: RuleKind::PeriodicTrapezoid,
            interval: (0.0, 2.0 * PI),
            nodes: (0..n).map(|j| j as f64 * h).collect(),
            weights: vec![h; n],
        })
    }

    /// Composite Gauss–Legendre rule with `panels` equal panels of `order` nodes.
    pub fn gauss_legendre_panels(a: f64, b: f64, panels: usize, order: usize) -> Result<Self> {
        if panels == 0 || order < 2 || !(b > a) {
            return Err(Error::InvalidGrid(format!(
                "Gauss-Legendre panels need panels >= 1, order >= 2 and a < b (got {panels}, {order}, [{a}, {b}])"
            )));
        }
        let breaks: Vec<f64> = (0..=panels)
            .map(|k| a + (b - a) * k as f64 / panels as f64)
            .collect();
        let (nodes, weights) = panel_rule(&breaks, order);
        Ok(Self {
            kind: RuleKind::GaussLegendrePanels { panels, order },
            interval: (a, b),
            nodes,
            weights,
        })
    }

    /// Composite Gauss–Legendre rule on arbitrary breakpoints (sorted ascending).
    pub fn gauss_legendre_breakpoints(breaks: &[f64], order: usize) -> Result<Self> {
        if breaks.len() < 2 || order < 2 || breaks.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid(
                "breakpoints must be strictly increasing with at least one panel".into(),
            ));
        }
        let (nodes, weights) = panel_rule(breaks, order);
        Ok(Self {
            kind: RuleKind::GaussLegendrePanels {
                panels: breaks.len() - 1,
                order,
            },
            interval: (breaks[0], breaks[breaks.len() - 1]),
            nodes,
            weights,
        })
    }

    /// Gauss–Chebyshev rule of `n` nodes for the given weight on (-1, 1).
    /// The weight function is absorbed into the quadrature weights.
    pub fn gauss_chebyshev(n: usize, weight: ChebyshevWeight) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidGrid("Gauss-Chebyshev needs n >= 1".into()));
        }
        let nf = n as f64;
        let (nodes, weights): (Vec<f64>, Vec<f64>) = (1..=n)
            .map(|k| {
                let kf = k as f64;
                match weight {
                    ChebyshevWeight::FirstKind => ((2.0 * kf - 1.0) * PI / (2.0 * nf)).cos(),
                    ChebyshevWeight::SecondKind => (kf * PI / (nf + 1.0)).cos(),
                    ChebyshevWeight::ThirdKind => ((2.0 * kf - 1.0) * PI / (2.0 * nf + 1.0)).cos(),
                    ChebyshevWeight::FourthKind => (2.0 * kf * PI / (2.0 * nf + 1.0)).cos(),
                }
            })
            .map(|x| {
                let w = match weight {
                    ChebyshevWeight::FirstKind => PI / nf,
                    ChebyshevWeight::SecondKind => PI / (nf + 1.0) * (1.0 - x * x),
                    ChebyshevWeight::ThirdKind => 2.0 * PI / (2.0 * nf + 1.0) * (1.0 + x),
                    ChebyshevWeight::FourthKind => 2.0 * PI / (2.0 * nf + 1.0) * (1.0 - x),
                };
                (x, w)
            })
            .rev()
            .unzip();
        Ok(Self {
            kind: RuleKind::GaussChebyshev { weight },
            interval: (-1.0, 1.0),
            nodes,
            weights,
        })
    }

    pub fn kind(&self) -> RuleKind {
        self.kind
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.kind, RuleKind::PeriodicTrapezoid)
    }

    /// Node spacing of a periodic grid.
    pub fn spacing(&self) -> f64 {
        (self.interval.1 - self.interval.0) / self.nodes.len() as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Integrate a real function with this rule.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.iter().map(|(s, w)| w * f(s)).sum()
    }
}

type Reference = Arc<Vec<(f64, f64)>>;

/// Gauss–Legendre reference nodes/weights on [-1, 1], cached per order.
pub(crate) fn legendre_reference(order: usize) -> Reference {
    static CACHE: OnceLock<Mutex<HashMap<usize, Reference>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard
        .entry(order)
        .or_insert_with(|| {
            let rule = GaussLegendre::new(order.max(2)).expect("order >= 2");
            let mut pairs = rule.into_node_weight_pairs();
            pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
            Arc::new(pairs)
        })
        .clone()
}

/// Composite Gauss–Legendre nodes and weights on consecutive breakpoints.
pub(crate) fn panel_rule(breaks: &[f64], order: usize) -> (Vec<f64>, Vec<f64>) {
    let reference = legendre_reference(order);
    let mut nodes = Vec::with_capacity((breaks.len() - 1) * order);
    let mut weights = Vec::with_capacity(nodes.capacity());
    for w in breaks.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        for &(x, wt) in reference.iter() {
            nodes.push(mid + half * x);
            weights.push(half * wt);
        }
    }
    (nodes, weights)
}

/// Breakpoints on `[a, b]` with `uniform` equal panels in the middle and
/// geometric refinement (ratio `ratio`, `levels` panels) toward both ends.
/// Used for integrands with integrable endpoint singularities.
pub(crate) fn graded_breakpoints(a: f64, b: f64, uniform: usize, levels: usize, ratio: f64) -> Vec<f64> {
    let len = b - a;
    // inner uniform region [a + d, b - d]
    let d = 0.5 * len / (uniform as f64 + 2.0);
    let mut left: Vec<f64> = (0..=levels).map(|k| a + d * ratio.powi(k as i32)).collect();
    left.push(a);
    left.reverse();
    let inner: Vec<f64> = (1..uniform)
        .map(|k| a + d + (len - 2.0 * d) * k as f64 / uniform as f64)
        .collect();
    let mut right: Vec<f64> = (0..=levels).map(|k| b - d * ratio.powi(k as i32)).collect();
    right.push(b);
    let mut out = left;
    out.extend(inner);
    out.extend(right);
    out.dedup_by(|x, y| (*x - *y).abs() == 0.0);
    out
}

/// Breakpoints on `[a, b]` refined geometrically toward the interior point `c`
/// (which becomes a breakpoint) and toward both ends.
pub(crate) fn split_graded_breakpoints(a: f64, c: f64, b: f64, per_unit: f64, levels: usize, ratio: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for (lo, hi) in [(a, c), (c, b)] {
        let n = ((hi - lo) * per_unit).ceil().max(1.0) as usize;
        let piece = graded_breakpoints(lo, hi, n, levels, ratio);
        if out.is_empty() {
            out.extend(piece);
        } else {
            out.extend(piece.into_iter().skip(1));
        }
    }
    out
}
