use std::path::Path;

use cctl_core::train_track::format::parse_track_source;
use cctl_core::train_track::report::{validate_source, Status, TrackReport};

use crate::CliError;

pub fn run_track(text: &str, path: &Path) -> Result<TrackReport, CliError> {
    let src = parse_track_source(text).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    Ok(validate_source(&src))
}

/// Verdict lines, the region table, the recurrence witness and the
/// canonical JSON echo of the track.
pub fn render(r: &TrackReport) -> String {
    let mut out = String::new();
    for v in &r.verdicts {
        let label = match v.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        };
        out.push_str(&format!("{}: {label} ({})\n", v.check, v.detail));
    }
    if let Some(total) = r.total_cusps {
        out.push_str(&format!("cusps = {total}\n"));
    }
    for (i, c) in r.cycles.iter().enumerate() {
        out.push_str(&format!(
            "region {i}: {} cusps, genus {}, punctures {}, {}\n",
            c.cusps, c.genus, c.punctures, c.kind
        ));
    }
    if !r.witness.is_empty() {
        let w: Vec<String> = r.witness.iter().map(ToString::to_string).collect();
        out.push_str(&format!("witness = [{}]\n", w.join(", ")));
    }
    out.push_str(&serde_json::to_string(&r.track).expect("track echo serialises"));
    out.push('\n');
    out
}
