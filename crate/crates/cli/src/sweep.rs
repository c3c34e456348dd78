//! θ sweeps of the closed-form and factor-route concurrences, written as CSV
//! with 12-significant-digit scientific formatting.

use std::fs;
use std::io::Write;
use std::path::Path;

use entop::gates::{spin_coupling_concurrence_closed, zchain_concurrence_closed, GateSpec};
use entop::measures::concurrence_two_term;

use crate::CliError;

pub const CSV_HEADER: &str = "theta,concurrence_closed,concurrence_numeric";

/// Families with a θ parameter.
#[derive(Debug, Clone, Copy)]
pub enum SweepFamily {
    Spin { two_j: u32 },
    Zchain { n: u32, k: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub theta: f64,
    pub c_closed: f64,
    pub c_numeric: f64,
}

/// Sweep grid. An explicit range is sampled inclusively; the default grid
/// covers the open interval (0, π/2), excluding the endpoints.
pub fn theta_points(
    range: Option<(f64, f64)>,
    steps: usize,
) -> Result<Vec<f64>, CliError> {
    if steps < 2 {
        return Err(CliError::Usage(format!("sweep needs at least 2 steps, got {steps}")));
    }
    match range {
        Some((from, to)) => {
            if !from.is_finite() || !to.is_finite() || to <= from {
                return Err(CliError::Usage(format!("invalid sweep range [{from}, {to}]")));
            }
            let span = to - from;
            Ok((0..steps).map(|i| from + span * i as f64 / (steps - 1) as f64).collect())
        }
        None => {
            let span = std::f64::consts::FRAC_PI_2;
            Ok((0..steps).map(|i| (i + 1) as f64 * span / (steps + 1) as f64).collect())
        }
    }
}

/// One row per θ: the family's closed form next to the factor-route value
/// computed on the constructed operator.
pub fn sweep_rows(family: SweepFamily, thetas: &[f64]) -> Result<Vec<SweepRow>, CliError> {
    thetas
        .iter()
        .map(|&theta| {
            let (spec, c_closed) = match family {
                SweepFamily::Spin { two_j } => (
                    GateSpec::Spin { theta, two_j },
                    spin_coupling_concurrence_closed(theta, two_j),
                ),
                SweepFamily::Zchain { n, k } => {
                    (GateSpec::Zchain { theta, n, k }, zchain_concurrence_closed(theta))
                }
            };
            let c_numeric = concurrence_two_term(&spec.two_term()?)?;
            Ok(SweepRow { theta, c_closed, c_numeric })
        })
        .collect()
}

/// 12 significant digits, scientific notation.
pub fn fmt_sci(x: f64) -> String {
    format!("{x:.11e}")
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&fmt_sci(row.theta));
        out.push(',');
        out.push_str(&fmt_sci(row.c_closed));
        out.push(',');
        out.push_str(&fmt_sci(row.c_numeric));
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, rows: &[SweepRow]) -> Result<(), CliError> {
    let mut file =
        fs::File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    file.write_all(render_csv(rows).as_bytes())
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(())
}
