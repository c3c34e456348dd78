//! Plain-text rendering of measure and power reports. Each quantity is
//! labeled with the route that produced it.

use entop::measures::{McEstimate, MeasureReport};
use entop::tensor::Bipartition;

/// Route-by-route values gathered by the measure command on top of the
/// orchestrated report.
#[derive(Debug, Clone, Default)]
pub struct RouteDetail {
    pub e_fold4: Option<f64>,
    pub ep_direct: Option<f64>,
    pub c_two_term: Option<f64>,
    pub unitarity_deviation: Option<f64>,
}

pub fn measure_text(
    name: &str,
    bp: Bipartition,
    report: &MeasureReport,
    detail: &RouteDetail,
) -> String {
    let mut lines = vec![format!("operator: {name}  (bipartition {bp})")];
    if let Some(dev) = detail.unitarity_deviation {
        lines.push(format!("unitarity deviation: {dev:.3e}"));
    }
    lines.push(format!("E   linear entropy      [schmidt spectrum]  = {:.12}", report.e));
    if let Some(e4) = detail.e_fold4 {
        lines.push(format!("E   linear entropy      [fold-4 trace]      = {e4:.12}"));
    }
    match report.e_tilde {
        Some(et) => {
            lines.push(format!("E~  exchange entropy    [fold-4 trace]      = {et:.12}"))
        }
        None => lines.push(
            "E~  exchange entropy    [fold-4 trace]      = unavailable (size cap; pass --force-fold4)"
                .to_string(),
        ),
    }
    match report.ep {
        Some(ep) => lines.push(format!("e_p entangling power    [relation]          = {ep:.12}")),
        None => lines.push(
            "e_p entangling power    [relation]          = unavailable (size cap; pass --force-fold4)"
                .to_string(),
        ),
    }
    if let Some(direct) = detail.ep_direct {
        lines.push(format!("e_p entangling power    [direct fold-4]     = {direct:.12}"));
    }
    lines.push(format!("schmidt rank = {}", report.schmidt_rank));
    match report.concurrence {
        Some(c) => lines.push(format!("C   concurrence         [spectrum 2λ1λ2]    = {c:.12}")),
        None => lines.push(format!(
            "C   concurrence         = undefined (rank {})",
            report.schmidt_rank
        )),
    }
    if let Some(c2) = detail.c_two_term {
        lines.push(format!("C   concurrence         [two-term factors]  = {c2:.12}"));
    }
    lines.join("\n")
}

/// The Monte-Carlo line is printed with shortest round-trip floats so equal
/// estimates render to identical bytes.
pub fn mc_text(est: &McEstimate) -> String {
    format!(
        "e_p (mc) = {}  (std_error {}, n {}, seed {})",
        est.mean, est.std_error, est.n, est.seed
    )
}

pub fn power_value_text(method: &str, value: f64) -> String {
    format!("e_p ({method}) = {value:.12}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_four_reports_undefined_concurrence() {
        let report = MeasureReport {
            e: 0.75,
            e_tilde: Some(0.0),
            ep: Some(0.0),
            concurrence: None,
            schmidt_rank: 4,
        };
        let text = measure_text(
            "swap",
            Bipartition::new(2, 2).unwrap(),
            &report,
            &RouteDetail::default(),
        );
        assert!(text.contains("undefined (rank 4)"));
    }

    #[test]
    fn mc_line_is_deterministic_for_equal_estimates() {
        let est = McEstimate { mean: 2.0 / 9.0, std_error: 1e-3, n: 20000, seed: 42 };
        assert_eq!(mc_text(&est), mc_text(&est.clone()));
        assert!(mc_text(&est).contains("seed 42"));
    }
}
