//! `transform`: circular Hilbert transforms of sampled data.

use cauchy_kit::hilbert::{
    hilbert_circular, hilbert_circular_complementary, hilbert_circular_complementary_inverse,
    hilbert_circular_inverse, PeriodicFunction,
};
use clap::ValueEnum;

use crate::input::parse_rows;
use crate::report::{Report, Table};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TransformKind {
    Circular,
    CircularInverse,
    CircularComplementary,
    CircularComplementaryInverse,
}

impl TransformKind {
    pub fn name(self) -> &'static str {
        match self {
            TransformKind::Circular => "circular",
            TransformKind::CircularInverse => "circular-inverse",
            TransformKind::CircularComplementary => "circular-complementary",
            TransformKind::CircularComplementaryInverse => "circular-complementary-inverse",
        }
    }
}

/// Input rows `(θ, value)` at the angles `θ_j = -π + 2πj/n`.
pub fn run(kind: TransformKind, text: &str) -> Result<Report, CliError> {
    let rows = parse_rows(text, 2)?;
    let input = PeriodicFunction::new(rows.iter().map(|r| r[1]).collect())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    for (j, (r, th)) in rows.iter().zip(input.angles()).enumerate() {
        if (r[0] - th).abs() > 1e-6 {
            return Err(CliError::Usage(format!("sample {} is at angle {}, expected {th}", j + 1, r[0])));
        }
    }
    let output = match kind {
        TransformKind::Circular => hilbert_circular(&input),
        TransformKind::CircularInverse => hilbert_circular_inverse(&input),
        TransformKind::CircularComplementary => hilbert_circular_complementary(&input),
        TransformKind::CircularComplementaryInverse => hilbert_circular_complementary_inverse(&input),
    }
    .map_err(|e| CliError::Numeric(e.to_string()))?;
    let mut report = Report::new("transform");
    report.scalar("input_mean", input.mean());
    let mut t = Table::new("samples", &["theta", "input", "output"]);
    for ((th, a), b) in input.angles().iter().zip(input.samples()).zip(output.samples()) {
        t.push(vec![(*th).into(), (*a).into(), (*b).into()]);
    }
    report.tables.push(t);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sine_becomes_cosine() {
        let n = 32;
        let text: String = (0..n)
            .map(|j| {
                let th = -PI + 2.0 * PI * j as f64 / n as f64;
                format!("{th},{}\n", th.sin())
            })
            .collect();
        let r = run(TransformKind::Circular, &text).unwrap();
        for row in &r.tables[0].rows {
            if let (crate::report::Cell::Num(th), crate::report::Cell::Num(out)) = (&row[0], &row[2]) {
                assert!((out - th.cos()).abs() < 1e-12);
            }
        }
        assert!(matches!(run(TransformKind::Circular, "0 1\n0 1\n0 1\n"), Err(CliError::Usage(_))));
    }
}
