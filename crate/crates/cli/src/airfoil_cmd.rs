//! `airfoil`: chord table, scalar results and a velocity field grid.

use std::f64::consts::PI;

use cauchy_kit::airfoil::{
    chord_forces, circulation_routes, finite_hilbert_inverse, flat_plate_complex_velocity, lift, pressure,
    surface_velocities, FlowConfig, PlateSide,
};
use cauchy_kit::Complex64;

use crate::report::{Report, Table};
use crate::CliError;

/// Angle in radians: a number, or `[k*]pi[/d]` such as `pi/6` or `0.25*pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim().to_ascii_lowercase();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let bad = || format!("'{s}' is not an angle (use radians, or forms like pi/6, -pi/4, 0.25*pi)");
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, Some(b.parse::<f64>().map_err(|_| bad())?)),
        None => (t.as_str(), None),
    };
    let factor = match num.trim_end_matches("pi").trim_end_matches('*') {
        "" | "+" => 1.0,
        "-" => -1.0,
        k if num.ends_with("pi") => k.parse::<f64>().map_err(|_| bad())?,
        _ => return Err(bad()),
    };
    if !num.ends_with("pi") {
        return Err(bad());
    }
    Ok(factor * PI / den.unwrap_or(1.0))
}

fn numeric(e: cauchy_kit::Error) -> CliError {
    CliError::Numeric(e.to_string())
}

pub fn run(speed: f64, alpha: f64, density: f64, n: usize) -> Result<Report, CliError> {
    let cfg = FlowConfig::new(speed, alpha, density).map_err(|e| CliError::Usage(e.to_string()))?;
    let routes = circulation_routes(&cfg, n).map_err(numeric)?;
    let l = lift(&cfg).map_err(numeric)?;
    let forces = chord_forces(&cfg, n).map_err(numeric)?;

    let mut report = Report::new("airfoil");
    report.scalar("circulation", routes.surface);
    report.scalar("circulation_sheet", routes.sheet);
    report.scalar("circulation_far_field", routes.far_field);
    report.scalar("lift", l.magnitude);
    report.scalar("lift_x", l.vector[0]);
    report.scalar("lift_y", l.vector[1]);
    report.scalar("normal_force", forces.normal);
    report.scalar("suction_force", forces.suction_magnitude);

    let d = cfg.downwash();
    let sheet = finite_hilbert_inverse(move |_| d, n).map_err(numeric)?;
    let mut chord = Table::new(
        "chord",
        &["x", "u_upper", "u_lower", "v", "gamma", "p_upper", "p_lower", "delta_p"],
    );
    for k in 0..n {
        let x = -(PI * (k as f64 + 0.5) / n as f64).cos();
        let (up, v) = surface_velocities(&cfg, x, PlateSide::Upper).map_err(numeric)?;
        let (lo, _) = surface_velocities(&cfg, x, PlateSide::Lower).map_err(numeric)?;
        let pu = pressure(&cfg, x, PlateSide::Upper).map_err(numeric)?;
        let pl = pressure(&cfg, x, PlateSide::Lower).map_err(numeric)?;
        chord.push(vec![
            x.into(),
            up.into(),
            lo.into(),
            v.into(),
            sheet.eval(x).into(),
            pu.into(),
            pl.into(),
            (pl - pu).into(),
        ]);
    }
    report.tables.push(chord);

    // y rows sit half a step off the axis so no sample lands on the plate
    let mut field = Table::new("field", &["x", "y", "u", "v"]);
    for j in 0..30 {
        let y = -1.45 + 0.1 * j as f64;
        for i in 0..41 {
            let x = -2.0 + 0.1 * i as f64;
            let w = flat_plate_complex_velocity(&cfg, Complex64::new(x, y)).map_err(numeric)?;
            field.push(vec![x.into(), y.into(), w.re.into(), (-w.im).into()]);
        }
    }
    report.tables.push(field);
    Ok(report)
}
