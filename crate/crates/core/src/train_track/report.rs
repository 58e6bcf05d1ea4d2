//! Per-invariant validation of a parsed track file.

use serde::{Deserialize, Serialize};

use super::format::{TrackJson, TrackSource};
use super::ribbon::{boundary_cycles, check_euler, classify_regions};
use super::{is_recurrent, verify_branch_bounds, TrackError, TrainTrack};
use crate::exact::{vec_ratio_str, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Not evaluated because an earlier check failed.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

impl Verdict {
    fn new(check: &str, ok: bool, detail: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skipped(check: &str) -> Self {
        Self {
            check: check.into(),
            status: Status::Skipped,
            detail: "not evaluated".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSummary {
    pub cusps: usize,
    pub genus: u32,
    pub punctures: u32,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackReport {
    pub verdicts: Vec<Verdict>,
    pub cycles: Vec<CycleSummary>,
    pub total_cusps: Option<usize>,
    #[serde(with = "vec_ratio_str")]
    pub witness: Vec<Rational>,
    pub track: TrackJson,
}

impl TrackReport {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status == Status::Pass)
    }

    pub fn verdict(&self, check: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.check == check)
    }
}

const LATER_CHECKS: [&str; 7] = [
    "euler",
    "recurrence",
    "regions",
    "large",
    "maximal",
    "branch_bounds",
    "cusp_bound",
];

fn join(errs: &[&TrackError]) -> String {
    errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

/// Runs every check on `src`. Structural failures skip the checks that need
/// a well-formed ribbon structure.
pub fn validate_source(src: &TrackSource) -> TrackReport {
    let issues = TrainTrack::structural_issues(&src.switches, &src.branches);
    let (valence, other): (Vec<&TrackError>, Vec<&TrackError>) = issues
        .iter()
        .partition(|e| matches!(e, TrackError::Valence { .. } | TrackError::EmptySide { .. }));
    let mut verdicts = vec![
        Verdict::new(
            "structure",
            other.is_empty(),
            if other.is_empty() {
                format!("{} switches, {} branches", src.switches.len(), src.branches.len())
            } else {
                join(&other)
            },
        ),
        Verdict::new(
            "valence",
            valence.is_empty(),
            if valence.is_empty() {
                "every switch has valence >= 3 and two nonempty sides".to_string()
            } else {
                join(&valence)
            },
        ),
    ];
    let echo = TrackJson {
        surface: src.surface,
        switches: src.switches.clone(),
        branches: src
            .branches
            .iter()
            .map(|b| super::format::BranchJson {
                name: b.name.clone(),
                from: endpoint_name(src, b.ends[0]),
                to: endpoint_name(src, b.ends[1]),
                tag: b.tag,
            })
            .collect(),
        attach: src.attach.iter().map(|a| a.1).collect(),
    };
    let mut report = TrackReport {
        verdicts: Vec::new(),
        cycles: Vec::new(),
        total_cusps: None,
        witness: Vec::new(),
        track: echo,
    };
    if !issues.is_empty() {
        verdicts.extend(LATER_CHECKS.iter().map(|c| Verdict::skipped(c)));
        report.verdicts = verdicts;
        return report;
    }
    let t = src.build().expect("no structural issues");
    let cycles = boundary_cycles(&t);
    let total: usize = cycles.iter().map(|c| c.cusp_count()).sum();
    report.total_cusps = Some(total);

    let rec = is_recurrent(&t);
    let s = src.surface;

    let att = src.attachment();
    let euler = match &att {
        Err(e) => Err(e.to_string()),
        Ok(att) => check_euler(&t, &cycles, att).map_err(|e| e.to_string()),
    };
    verdicts.push(Verdict::new(
        "euler",
        euler.is_ok(),
        match &euler {
            Ok(()) => format!("chi = {}", s.euler_char()),
            Err(e) => e.clone(),
        },
    ));
    verdicts.push(Verdict::new(
        "recurrence",
        rec.recurrent,
        if rec.recurrent {
            "positive measure found"
        } else {
            "no measure is positive on every branch"
        },
    ));
    if let Some(w) = rec.witness {
        report.witness = (0..t.branch_count()).map(|b| w.get(b).cloned().expect("dense")).collect();
    }

    match (euler.is_ok(), att) {
        (true, Ok(att)) => {
            let class = classify_regions(&t, &att).expect("euler already checked");
            report.cycles = cycles
                .iter()
                .zip(&att.regions)
                .zip(&class.kinds)
                .map(|((c, r), k)| CycleSummary {
                    cusps: c.cusp_count(),
                    genus: r.genus,
                    punctures: r.punctures,
                    kind: k.to_string(),
                })
                .collect();
            let kinds: Vec<String> = class.kinds.iter().map(|k| k.to_string()).collect();
            verdicts.push(Verdict::new("regions", true, kinds.join(", ")));
            let first_bad = |pred: fn(super::RegionKind) -> bool| {
                class
                    .kinds
                    .iter()
                    .enumerate()
                    .find(|(_, k)| !pred(**k))
                    .map(|(i, k)| format!("region {i} is {k}"))
            };
            let large = first_bad(super::RegionKind::is_large_piece);
            verdicts.push(Verdict::new(
                "large",
                large.is_none(),
                large.unwrap_or_else(|| "all regions are polygons or once-punctured polygons".into()),
            ));
            let maximal = first_bad(super::RegionKind::is_maximal_piece);
            verdicts.push(Verdict::new(
                "maximal",
                maximal.is_none(),
                maximal.unwrap_or_else(|| "all regions are trigons or once-punctured monogons".into()),
            ));
        }
        _ => {
            for c in ["regions", "large", "maximal"] {
                verdicts.push(Verdict::skipped(c));
            }
        }
    }

    let bb = verify_branch_bounds(&t, s);
    verdicts.push(Verdict::new(
        "branch_bounds",
        bb.passed(),
        format!(
            "{} branches (bound {}), {} real (strict bound {})",
            bb.total, bb.total_bound, bb.real, bb.real_bound
        ),
    ));
    let cap = s.max_cusps();
    verdicts.push(Verdict::new(
        "cusp_bound",
        total as u64 <= cap,
        format!("{total} cusps, bound 6|chi| = {cap}"),
    ));
    report.verdicts = verdicts;
    report
}

fn endpoint_name(src: &TrackSource, ep: super::Endpoint) -> String {
    let name = src.switches.get(ep.switch).map(String::as_str).unwrap_or("?");
    format!("{name}:{}:{}", ep.side, ep.slot)
}
