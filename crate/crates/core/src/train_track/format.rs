//! Text format for embedded train tracks, and its canonical JSON form.
//!
//! ```text
//! # once-punctured torus
//! surface 1 1
//! switches
//! v0
//! v1
//! branches
//! x v0:out:1 v1:out:1 plain
//! y v1:in:0 v0:in:0
//! z v0:out:0 v1:out:0
//! attach
//! 0 0 1
//! ```
//!
//! `branches` lines are `name endpoint endpoint [tag]` with endpoints
//! `switch:side:slot` (`side` is `in` or `out`, slots count from the top)
//! and tags `real`, `infinitesimal`, `plain` (default) or `diagonal`.
//! `attach` lines are `cycle genus punctures`, one per boundary cycle in the
//! canonical order of [`boundary_cycles`](super::boundary_cycles).

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Branch, BranchTag, Endpoint, RegionAttachment, RegionTopology, Side, TrackError, TrainTrack};
use crate::surface::SurfaceSig;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrackParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("track structure: {}", join_issues(.0))]
    Structure(Vec<TrackError>),
}

fn join_issues(issues: &[TrackError]) -> String {
    issues.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn syntax(line: usize, message: impl Into<String>) -> TrackParseError {
    TrackParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parsed file contents before structural validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackSource {
    pub surface: SurfaceSig,
    pub switches: Vec<String>,
    pub branches: Vec<Branch>,
    /// `(cycle, topology, line)`.
    pub attach: Vec<(usize, RegionTopology, usize)>,
}

impl TrackSource {
    pub fn build(&self) -> Result<TrainTrack, TrackParseError> {
        let issues = TrainTrack::structural_issues(&self.switches, &self.branches);
        if !issues.is_empty() {
            return Err(TrackParseError::Structure(issues));
        }
        Ok(TrainTrack::new(self.switches.clone(), self.branches.clone()).expect("validated"))
    }

    /// Attachment data in cycle order; every cycle index `0..n` must appear once.
    pub fn attachment(&self) -> Result<RegionAttachment, TrackParseError> {
        let n = self.attach.len();
        let mut regions: Vec<Option<RegionTopology>> = vec![None; n];
        for &(cycle, topo, line) in &self.attach {
            if cycle >= n {
                return Err(syntax(line, format!("cycle index {cycle} out of range 0..{n}")));
            }
            if regions[cycle].replace(topo).is_some() {
                return Err(syntax(line, format!("cycle {cycle} attached twice")));
            }
        }
        Ok(RegionAttachment {
            surface: self.surface,
            regions: regions.into_iter().map(|r| r.expect("all present")).collect(),
        })
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Switches,
    Branches,
    Attach,
}

/// `(line, name, endpoints by switch name, tag)` awaiting switch lookup.
type PendingBranch = (usize, String, [(String, Side, usize); 2], BranchTag);

pub fn parse_track_source(text: &str) -> Result<TrackSource, TrackParseError> {
    let mut surface = None;
    let mut switches: Vec<String> = Vec::new();
    let mut switch_ids: HashMap<String, usize> = HashMap::new();
    let mut pending: Vec<PendingBranch> = Vec::new();
    let mut attach = Vec::new();
    let mut section = Section::None;

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks[0] {
            "surface" => {
                if surface.is_some() {
                    return Err(syntax(ln, "duplicate surface line"));
                }
                let [_, g, n] = toks[..] else {
                    return Err(syntax(ln, "expected `surface genus punctures`"));
                };
                let g = g.parse().map_err(|_| syntax(ln, format!("bad genus {g:?}")))?;
                let n = n.parse().map_err(|_| syntax(ln, format!("bad puncture count {n:?}")))?;
                surface = Some(SurfaceSig::new(g, n));
                continue;
            }
            "switches" if toks.len() == 1 => {
                section = Section::Switches;
                continue;
            }
            "branches" if toks.len() == 1 => {
                section = Section::Branches;
                continue;
            }
            "attach" if toks.len() == 1 => {
                section = Section::Attach;
                continue;
            }
            _ => {}
        }
        match section {
            Section::None => return Err(syntax(ln, format!("unexpected {line:?} outside a section"))),
            Section::Switches => {
                for name in toks {
                    if switch_ids.insert(name.to_string(), switches.len()).is_some() {
                        return Err(syntax(ln, format!("duplicate switch {name:?}")));
                    }
                    switches.push(name.to_string());
                }
            }
            Section::Branches => {
                if !(3..=4).contains(&toks.len()) {
                    return Err(syntax(ln, "expected `name endpoint endpoint [tag]`"));
                }
                let a = parse_endpoint(ln, toks[1])?;
                let b = parse_endpoint(ln, toks[2])?;
                let tag = match toks.get(3) {
                    Some(t) => t.parse().map_err(|e: String| syntax(ln, e))?,
                    None => BranchTag::Plain,
                };
                pending.push((ln, toks[0].to_string(), [a, b], tag));
            }
            Section::Attach => {
                let nums: Result<Vec<u32>, _> = toks.iter().map(|t| t.parse::<u32>()).collect();
                match nums.as_deref() {
                    Ok(&[c, g, p]) => attach.push((
                        c as usize,
                        RegionTopology {
                            genus: g,
                            punctures: p,
                        },
                        ln,
                    )),
                    _ => return Err(syntax(ln, "expected `cycle genus punctures`")),
                }
            }
        }
    }

    let surface = surface.ok_or_else(|| syntax(text.lines().count().max(1), "missing surface line"))?;
    let mut names = HashMap::new();
    let mut branches = Vec::with_capacity(pending.len());
    for (ln, name, ends, tag) in pending {
        if names.insert(name.clone(), ln).is_some() {
            return Err(syntax(ln, format!("duplicate branch {name:?}")));
        }
        let mut eps = [Endpoint::new(0, Side::In, 0); 2];
        for (k, (sw, side, slot)) in ends.into_iter().enumerate() {
            let v = *switch_ids
                .get(&sw)
                .ok_or_else(|| syntax(ln, format!("unknown switch {sw:?}")))?;
            eps[k] = Endpoint::new(v, side, slot);
        }
        branches.push(Branch {
            name,
            ends: eps,
            tag,
        });
    }
    Ok(TrackSource {
        surface,
        switches,
        branches,
        attach,
    })
}

fn parse_endpoint(ln: usize, tok: &str) -> Result<(String, Side, usize), TrackParseError> {
    let parts: Vec<&str> = tok.split(':').collect();
    let [sw, side, slot] = parts[..] else {
        return Err(syntax(ln, format!("endpoint {tok:?} is not switch:side:slot")));
    };
    let side = match side {
        "in" => Side::In,
        "out" => Side::Out,
        _ => return Err(syntax(ln, format!("side {side:?} must be `in` or `out`"))),
    };
    let slot = slot
        .parse()
        .map_err(|_| syntax(ln, format!("slot {slot:?} is not a number")))?;
    Ok((sw.to_string(), side, slot))
}

/// Parses and validates a track file.
pub fn parse_track(text: &str) -> Result<(TrainTrack, RegionAttachment), TrackParseError> {
    let src = parse_track_source(text)?;
    Ok((src.build()?, src.attachment()?))
}

fn endpoint_text(t: &TrainTrack, ep: Endpoint) -> String {
    format!("{}:{}:{}", t.switch_names()[ep.switch], ep.side, ep.slot)
}

/// Serialises a track back to the text format.
pub fn write_track(t: &TrainTrack, att: &RegionAttachment) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "surface {} {}", att.surface.genus, att.surface.punctures);
    let _ = writeln!(s, "switches");
    for name in t.switch_names() {
        let _ = writeln!(s, "{name}");
    }
    let _ = writeln!(s, "branches");
    for b in t.branches() {
        let _ = writeln!(
            s,
            "{} {} {} {}",
            b.name,
            endpoint_text(t, b.ends[0]),
            endpoint_text(t, b.ends[1]),
            b.tag
        );
    }
    let _ = writeln!(s, "attach");
    for (i, r) in att.regions.iter().enumerate() {
        let _ = writeln!(s, "{i} {} {}", r.genus, r.punctures);
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchJson {
    pub name: String,
    pub from: String,
    pub to: String,
    pub tag: BranchTag,
}

/// Canonical JSON echo of an embedded track.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackJson {
    pub surface: SurfaceSig,
    pub switches: Vec<String>,
    pub branches: Vec<BranchJson>,
    pub attach: Vec<RegionTopology>,
}

impl TrackJson {
    pub fn new(t: &TrainTrack, att: &RegionAttachment) -> Self {
        Self {
            surface: att.surface,
            switches: t.switch_names().to_vec(),
            branches: t
                .branches()
                .iter()
                .map(|b| BranchJson {
                    name: b.name.clone(),
                    from: endpoint_text(t, b.ends[0]),
                    to: endpoint_text(t, b.ends[1]),
                    tag: b.tag,
                })
                .collect(),
            attach: att.regions.clone(),
        }
    }
}
