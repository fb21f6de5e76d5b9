//! `probe`: boundary samples in, pole candidates out.

use std::f64::consts::PI;

use cauchy_kit::singularity::{probe_boundary, BoundarySamples, ProbeReport};
use cauchy_kit::Complex64;

use crate::input::parse_rows;
use crate::report::{Report, Table};
use crate::CliError;

/// Rows `(θ, Re f, Im f)` at equispaced angles covering one period.
pub fn read_samples(text: &str) -> Result<BoundarySamples, CliError> {
    let rows = parse_rows(text, 3)?;
    if rows.len() < 16 {
        return Err(CliError::Usage(format!("need at least 16 boundary samples, found {}", rows.len())));
    }
    if rows.len() % 2 != 0 {
        return Err(CliError::Usage(format!("need an even number of samples, found {}", rows.len())));
    }
    let n = rows.len();
    let step = 2.0 * PI / n as f64;
    for (j, r) in rows.iter().enumerate() {
        if (r[0] - (rows[0][0] + step * j as f64)).abs() > 1e-6 * step.max(1.0) {
            return Err(CliError::Usage(format!(
                "sample {} is at angle {}; expected equispaced angles covering one period",
                j + 1,
                r[0]
            )));
        }
    }
    let values = rows.iter().map(|r| Complex64::new(r[1], r[2])).collect();
    BoundarySamples::new(rows[0][0], values).map_err(|e| CliError::Usage(e.to_string()))
}

pub fn run(text: &str, degrees: Option<(usize, usize)>, coefficients: usize) -> Result<(Report, ProbeReport), CliError> {
    let samples = read_samples(text)?;
    let probe = probe_boundary(&samples, degrees, coefficients).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut report = Report::new("probe");
    report.scalar("samples", samples.len() as f64);
    report.scalar("numerator_degree", probe.degrees.0 as f64);
    report.scalar("denominator_degree", probe.degrees.1 as f64);
    report.scalar("held_out_residual", probe.held_out_residual.unwrap_or(f64::NAN));
    report.scalar("poles_asserted", if probe.poles_asserted { 1.0 } else { 0.0 });
    report.scalar("rank_deficient", if probe.rank_deficient { 1.0 } else { 0.0 });
    report.scalar("rejected_roots", probe.rejected_roots as f64);

    let mut poles = Table::new("poles", &["location_re", "location_im", "strength_re", "strength_im", "modulus"]);
    for p in &probe.poles {
        poles.push(vec![
            p.location.re.into(),
            p.location.im.into(),
            p.strength.re.into(),
            p.strength.im.into(),
            p.location.norm().into(),
        ]);
    }
    let mut scan = Table::new("scan", &["numerator_degree", "denominator_degree", "held_out_residual"]);
    for r in &probe.scan {
        scan.push(vec![r.numerator_degree.into(), r.denominator_degree.into(), r.residual.into()]);
    }
    report.tables.push(poles);
    report.tables.push(scan);
    report.details = Some(serde_json::json!({
        "note": probe.note,
        "uniqueness_claimed": false,
        "singular_values": probe.singular_values,
        "coefficients": probe.coefficients.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
    }));
    Ok((report, probe))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table<F: Fn(Complex64) -> Complex64>(f: F, n: usize) -> String {
        (0..n)
            .map(|j| {
                let th = -PI + 2.0 * PI * j as f64 / n as f64;
                let v = f(Complex64::from_polar(1.0, th));
                format!("{th} {} {}\n", v.re, v.im)
            })
            .collect()
    }

    #[test]
    fn recovers_a_pole_from_text() {
        let (_, probe) = run(&table(|t| 1.0 / (t - 2.0), 256), None, 64).unwrap();
        assert!(probe.poles_asserted);
        assert!((probe.poles[0].location - 2.0).norm() < 1e-8);
    }

    #[test]
    fn constant_data_have_no_poles() {
        let (_, probe) = run(&table(|_| Complex64::new(1.0, 0.0), 64), None, 64).unwrap();
        assert!(probe.poles.is_empty());
    }

    #[test]
    fn rejects_short_or_uneven_input() {
        assert!(matches!(run(&table(|t| t, 8), None, 64), Err(CliError::Usage(_))));
        let mut text = table(|t| t, 32);
        text = text.replacen("-3.141592653589793", "-3.0", 1);
        assert!(matches!(run(&text, None, 64), Err(CliError::Usage(_))));
    }
}
