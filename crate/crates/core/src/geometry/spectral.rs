//! Spectral operations on periodic samples `g(s_j)`, `s_j = 2πj/n`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

/// Discrete Fourier coefficients `ĝ_k = (1/n) Σ g_j e^{-iks_j}` in FFT order.
pub fn fourier_coefficients(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::<f64>::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

/// Signed wavenumber of FFT slot `k`; the Nyquist slot maps to `n/2`.
pub fn wavenumber(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

/// Derivative `dg/ds` of the trigonometric interpolant, at the nodes.
/// The Nyquist mode is dropped.
pub fn periodic_derivative(samples: &[Complex64]) -> Vec<Complex64> {
    let n = samples.len();
    let mut coeffs = fourier_coefficients(samples);
    for (k, c) in coeffs.iter_mut().enumerate() {
        let m = wavenumber(k, n);
        if n.is_multiple_of(2) && m == (n / 2) as i64 {
            *c = Complex64::new(0.0, 0.0);
        } else {
            *c *= Complex64::new(0.0, m as f64);
        }
    }
    FftPlanner::<f64>::new().plan_fft_inverse(n).process(&mut coeffs);
    coeffs
}

/// Value of the trigonometric interpolant at parameter `s` (Nyquist mode split
/// symmetrically so the interpolant is real for real data).
pub fn trig_interpolate(samples: &[Complex64], s: f64) -> Complex64 {
    let n = samples.len();
    let coeffs = fourier_coefficients(samples);
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let m = wavenumber(k, n);
            if n.is_multiple_of(2) && m == (n / 2) as i64 {
                c * (m as f64 * s).cos()
            } else {
                c * Complex64::from_polar(1.0, m as f64 * s)
            }
        })
        .sum()
}

/// Fourth-order centred difference `dg/ds` at node `j` of a periodic grid with spacing `h`.
pub fn centered_difference4(samples: &[Complex64], j: usize, h: f64) -> Complex64 {
    let n = samples.len();
    let at = |k: isize| samples[(j as isize + k).rem_euclid(n as isize) as usize];
    (-at(2) + at(1) * 8.0 - at(-1) * 8.0 + at(-2)) / (12.0 * h)
}

/// Second-order centred difference, used to cross-check [`centered_difference4`].
pub fn centered_difference2(samples: &[Complex64], j: usize, h: f64) -> Complex64 {
    let n = samples.len();
    let at = |k: isize| samples[(j as isize + k).rem_euclid(n as isize) as usize];
    (at(1) - at(-1)) / (2.0 * h)
}

/// Parameter spacing of an `n`-node periodic grid.
pub fn spacing(n: usize) -> f64 {
    2.0 * PI / n as f64
}
