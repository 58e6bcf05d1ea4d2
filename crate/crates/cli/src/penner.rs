use cctl_core::exact::{self, Rational};
use cctl_core::penner::{PennerSystem, TraceJson};
use serde::{Deserialize, Serialize};

use crate::{Check, CliError, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PennerReport {
    pub trace: TraceJson,
    /// `4/(g² + g - 4)`.
    #[serde(with = "exact::ratio_str")]
    pub theorem_bound: Rational,
    pub check: Check,
}

impl PennerReport {
    pub fn passed(&self) -> bool {
        self.check.status == Status::Pass
    }

    pub fn render(&self) -> String {
        let t = &self.trace;
        let mut out = format!("genus {}\n", t.genus);
        for (k, s) in t.supports.iter().enumerate() {
            let names: Vec<String> = s.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("S_{k} = {{{}}}\n", names.join(",")));
        }
        out.push_str("certificates:\n");
        for c in &t.certificates {
            out.push_str(&format!("  k = {} witness {}\n", c.k, c.witness));
        }
        out.push_str(&format!("best k = {}, bound 2/k = {}\n", t.best_k, t.bound));
        out.push_str(&format!(
            "2/k ≤ 4/(g²+g−4): {} ≤ {}: {}\n",
            t.bound,
            self.theorem_bound,
            self.check.status.label()
        ));
        out
    }
}

pub fn run_penner(genus: u32, cap: Option<u64>) -> Result<PennerReport, CliError> {
    let sys = PennerSystem::new(genus).map_err(|e| CliError::Usage(e.to_string()))?;
    let trace = sys.trace(cap).map_err(|e| CliError::Failed(e.to_string()))?;
    let g = genus as i64;
    let theorem_bound = exact::ratio(4, g * g + g - 4);
    let ok = trace.bound <= theorem_bound;
    Ok(PennerReport {
        check: Check::new(
            "penner_bound",
            ok,
            format!("2/{} against {}", trace.best_k, theorem_bound),
        ),
        theorem_bound,
        trace: trace.to_serde(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two() {
        let r = run_penner(2, None).unwrap();
        let text = r.render();
        assert!(text.contains("S_1 = {a1}"));
        assert!(text.contains("S_2 = {a2,b2,c2}"));
        assert!(text.trim_end().ends_with("PASS"));
    }

    #[test]
    fn single_step_cap() {
        let r = run_penner(2, Some(1)).unwrap();
        assert_eq!(r.trace.best_k, 1);
        assert_eq!(r.trace.bound.to_string(), "2");
        assert_eq!(r.trace.certificates[0].witness.to_string(), "a2");
        assert!(r.passed());
    }

    #[test]
    fn genus_three() {
        let r = run_penner(3, None).unwrap();
        assert!(r.trace.best_k >= 6 && r.passed());
    }

    #[test]
    fn bad_genus() {
        assert!(matches!(run_penner(1, None), Err(CliError::Usage(_))));
    }
}
