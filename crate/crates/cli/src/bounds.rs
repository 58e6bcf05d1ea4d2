use cctl_core::penner::PennerSystem;
use cctl_core::surface::{BoundReport, SurfaceError, FLM_TOLERANCE};
use cctl_core::{exact, SurfaceSig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Check, CliError, Status};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub surface: SurfaceSig,
    /// Absent when the signature has no bounds; see `error`.
    pub report: Option<BoundReport>,
    /// Row-level marker such as `sporadic`.
    pub error: Option<String>,
    pub checks: Vec<Check>,
}

impl BoundsRow {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.status == Status::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsTable {
    pub rows: Vec<BoundsRow>,
}

impl BoundsTable {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(BoundsRow::passed)
    }

    pub fn render(&self) -> String {
        let opt = |r: &Option<cctl_core::Rational>| r.as_ref().map_or("-".to_string(), |x| x.to_string());
        let mut out = format!(
            "{:>6} {:>4} {:>22} {:>14} {:>14} {:>12} {:>8} {:>10}  verdict\n",
            "genus", "n", "lower", "upper", "flm", "penner", "k", "20/(n-4)"
        );
        for row in &self.rows {
            let g = row.surface.genus;
            let n = row.surface.punctures;
            match (&row.report, &row.error) {
                (Some(r), None) => {
                    let flm = r.flm_upper.map_or("-".to_string(), |x| format!("{x:.9}"));
                    let k = r.certificate_k.map_or("-".to_string(), |k| k.to_string());
                    let verdict = if row.passed() { "PASS" } else { "FAIL" };
                    out.push_str(&format!(
                        "{g:>6} {n:>4} {:>22} {:>14} {flm:>14} {:>12} {k:>8} {:>10}  {verdict}\n",
                        r.thm1_lower.to_string(),
                        opt(&r.thm1_upper),
                        opt(&r.penner_upper),
                        opt(&r.punctured_family_upper),
                    ));
                    for c in row.checks.iter().filter(|c| c.status == Status::Fail) {
                        out.push_str(&format!("       {}\n", c.line()));
                    }
                }
                (_, Some(e)) => out.push_str(&format!("{g:>6} {n:>4}  error: {e}  FAIL\n")),
                (None, None) => unreachable!("row has a report or an error"),
            }
        }
        out
    }
}

fn marker(e: &SurfaceError) -> String {
    match e {
        SurfaceError::Sporadic { .. } => "sporadic".into(),
        other => other.to_string(),
    }
}

fn row(surface: SurfaceSig, penner_max_genus: u32) -> BoundsRow {
    let mut report = match BoundReport::formulas(surface) {
        Ok(r) => r,
        Err(e) => {
            return BoundsRow {
                surface,
                report: None,
                error: Some(marker(&e)),
                checks: Vec::new(),
            }
        }
    };
    let mut checks = Vec::new();
    if surface.is_closed() && surface.genus <= penner_max_genus {
        match PennerSystem::new(surface.genus).and_then(|s| s.trace(None)) {
            Ok(trace) => {
                checks.push(Check::new(
                    "penner_le_thm1",
                    trace.meets_theorem_bound(),
                    format!("2/{} against 4/(g²+g-4)", trace.best_k),
                ));
                report.penner_upper = Some(trace.bound.clone());
                report.certificate_k = Some(trace.best_k);
            }
            Err(e) => checks.push(Check::new("penner_le_thm1", false, e.to_string())),
        }
    }
    checks.push(Check::new(
        "lower_lt_upper",
        report.is_consistent(),
        "lower bound strictly below every exact upper bound",
    ));
    if let (Some(up), Some(flm)) = (&report.thm1_upper, report.flm_upper) {
        let gap = flm - exact::to_f64(up);
        checks.push(Check::new("upper_lt_flm", gap > FLM_TOLERANCE, format!("gap {gap:.3e}")));
    }
    BoundsRow {
        surface,
        report: Some(report),
        error: None,
        checks,
    }
}

/// One row per genus in `genus_min..=genus_max`, computed in parallel and
/// returned in genus order.
pub fn run_bounds(
    genus_min: u32,
    genus_max: u32,
    punctures: u32,
    penner_max_genus: u32,
) -> Result<BoundsTable, CliError> {
    if genus_min > genus_max {
        return Err(CliError::Usage(format!(
            "empty genus range {genus_min}..={genus_max}"
        )));
    }
    let rows = (genus_min..=genus_max)
        .into_par_iter()
        .map(|g| row(SurfaceSig::new(g, punctures), penner_max_genus))
        .collect();
    Ok(BoundsTable { rows })
}
