//! Combinatorial ribbon train tracks.
//!
//! A switch is a short tie with an `In` side and an `Out` side. Picture the
//! tie vertical with `In` half-branches leaving to the left and `Out`
//! half-branches to the right; slots on each side are numbered from the top.
//! That ordering is the ribbon structure and, together with per-region
//! attachment data, determines the complementary regions.

mod counts;
mod diagonal;
pub mod format;
mod measure;
pub mod report;
mod ribbon;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use counts::{max_fold_time, verify_branch_bounds, BranchBoundReport, FoldSchedule};
pub use diagonal::{
    add_diagonals, enumerate_diagonal_extensions, in_int_pe, Diagonal, DiagonalExtension,
    MAX_DIAGONAL_CUSPS,
};
pub use measure::{check_measure, is_recurrent, Measure, Recurrence};
pub use ribbon::{
    boundary_cycles, classify_regions, BoundaryCycle, Cusp, RegionAttachment, RegionClassification,
    RegionKind, RegionTopology,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrackError {
    #[error("track has no switches")]
    Empty,
    #[error("branch {branch} references unknown switch {switch}")]
    UnknownSwitch { branch: String, switch: usize },
    #[error("slot {endpoint} is used by more than one half-branch")]
    SlotReused { endpoint: Endpoint },
    #[error("switch {switch} side {side} has a gap at slot {slot}")]
    SlotGap { switch: String, side: Side, slot: usize },
    #[error("switch {switch} has valence {valence}, at least 3 required")]
    Valence { switch: String, valence: usize },
    #[error("switch {switch} has an empty {side} side")]
    EmptySide { switch: String, side: Side },
    #[error("measure has no weight for branch {0}")]
    MissingWeight(String),
    #[error("measure has a negative weight on branch {0}")]
    NegativeWeight(String),
    #[error("{0} is not a transverse measure on the track")]
    NotAMeasure(String),
    #[error("expected {expected} region attachments, one per boundary cycle, got {got}")]
    AttachmentCount { expected: usize, got: usize },
    #[error("Euler characteristic mismatch: track and regions give {computed}, surface has {expected}")]
    EulerMismatch { expected: i64, computed: i64 },
    #[error("regions carry {computed} punctures, surface has {expected}")]
    PunctureMismatch { expected: u32, computed: u32 },
    #[error("track is not large: region {region} is {kind}")]
    NotLarge { region: usize, kind: RegionKind },
    #[error("region {region} has {cusps} cusps, diagonal enumeration is capped at {cap}")]
    RegionTooLarge { region: usize, cusps: usize, cap: usize },
    #[error("invalid diagonal {0}")]
    BadDiagonal(String),
    #[error("track is not a diagonal extension of the base: {0}")]
    NotAnExtension(String),
    #[error("fold schedule: {0}")]
    BadSchedule(String),
    #[error("cusp {cusp} lies on a periodic orbit that never folds")]
    PeriodicUnfoldableCusp { cusp: usize },
    #[error("{cusps} cusps exceed the bound 6|chi| = {bound}")]
    TooManyCusps { cusps: usize, bound: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    In,
    Out,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::In => Side::Out,
            Side::Out => Side::In,
        }
    }

    fn idx(self) -> usize {
        match self {
            Side::In => 0,
            Side::Out => 1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::In => "in",
            Side::Out => "out",
        })
    }
}

/// Position of a half-branch: `switch:side:slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub switch: usize,
    pub side: Side,
    pub slot: usize,
}

impl Endpoint {
    pub const fn new(switch: usize, side: Side, slot: usize) -> Self {
        Self { switch, side, slot }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.switch, self.side, self.slot)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchTag {
    Real,
    Infinitesimal,
    Plain,
    Diagonal,
}

impl fmt::Display for BranchTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchTag::Real => "real",
            BranchTag::Infinitesimal => "infinitesimal",
            BranchTag::Plain => "plain",
            BranchTag::Diagonal => "diagonal",
        })
    }
}

impl std::str::FromStr for BranchTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real" => Ok(BranchTag::Real),
            "infinitesimal" => Ok(BranchTag::Infinitesimal),
            "plain" => Ok(BranchTag::Plain),
            "diagonal" => Ok(BranchTag::Diagonal),
            _ => Err(format!("unknown branch tag {s:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Branch {
    pub name: String,
    pub ends: [Endpoint; 2],
    pub tag: BranchTag,
}

/// `(branch, end)` occupying a slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HalfBranch {
    pub branch: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainTrack {
    switches: Vec<String>,
    branches: Vec<Branch>,
    slots: Vec<[Vec<HalfBranch>; 2]>,
}

impl TrainTrack {
    /// Builds a track, rejecting the first structural problem found.
    pub fn new(switches: Vec<String>, branches: Vec<Branch>) -> Result<Self, TrackError> {
        let (track, issues) = Self::assemble(switches, branches);
        match issues.into_iter().next() {
            Some(e) => Err(e),
            None => Ok(track.expect("no issues")),
        }
    }

    /// Every structural problem of the given layout, in a stable order.
    pub fn structural_issues(switches: &[String], branches: &[Branch]) -> Vec<TrackError> {
        Self::assemble(switches.to_vec(), branches.to_vec()).1
    }

    fn assemble(switches: Vec<String>, branches: Vec<Branch>) -> (Option<Self>, Vec<TrackError>) {
        let mut issues = Vec::new();
        if switches.is_empty() {
            return (None, vec![TrackError::Empty]);
        }
        let mut table: Vec<[Vec<Option<HalfBranch>>; 2]> =
            vec![[Vec::new(), Vec::new()]; switches.len()];
        for (b, br) in branches.iter().enumerate() {
            for (end, ep) in br.ends.iter().enumerate() {
                if ep.switch >= switches.len() {
                    issues.push(TrackError::UnknownSwitch {
                        branch: br.name.clone(),
                        switch: ep.switch,
                    });
                    continue;
                }
                let side = &mut table[ep.switch][ep.side.idx()];
                if side.len() <= ep.slot {
                    side.resize(ep.slot + 1, None);
                }
                if side[ep.slot].is_some() {
                    issues.push(TrackError::SlotReused { endpoint: *ep });
                } else {
                    side[ep.slot] = Some(HalfBranch { branch: b, end });
                }
            }
        }
        let mut slots = Vec::with_capacity(switches.len());
        for (v, sides) in table.into_iter().enumerate() {
            let mut out: [Vec<HalfBranch>; 2] = [Vec::new(), Vec::new()];
            for (si, side) in sides.into_iter().enumerate() {
                let s = if si == 0 { Side::In } else { Side::Out };
                if side.is_empty() {
                    issues.push(TrackError::EmptySide {
                        switch: switches[v].clone(),
                        side: s,
                    });
                }
                for (slot, hb) in side.into_iter().enumerate() {
                    match hb {
                        Some(hb) => out[si].push(hb),
                        None => issues.push(TrackError::SlotGap {
                            switch: switches[v].clone(),
                            side: s,
                            slot,
                        }),
                    }
                }
            }
            let valence = out[0].len() + out[1].len();
            if valence < 3 {
                issues.push(TrackError::Valence {
                    switch: switches[v].clone(),
                    valence,
                });
            }
            slots.push(out);
        }
        let track = Self {
            switches,
            branches,
            slots,
        };
        (Some(track), issues)
    }

    pub fn switch_count(&self) -> usize {
        self.switches.len()
    }

    pub fn branch_count(&self) -> usize {
        self.branches.len()
    }

    pub fn switch_names(&self) -> &[String] {
        &self.switches
    }

    pub fn branches(&self) -> &[Branch] {
        &self.branches
    }

    pub fn branch(&self, b: usize) -> &Branch {
        &self.branches[b]
    }

    /// Half-branches on one side of a switch, top to bottom.
    pub fn side(&self, switch: usize, side: Side) -> &[HalfBranch] {
        &self.slots[switch][side.idx()]
    }

    pub fn valence(&self, switch: usize) -> usize {
        self.slots[switch][0].len() + self.slots[switch][1].len()
    }

    pub fn half_branch_at(&self, ep: Endpoint) -> HalfBranch {
        self.slots[ep.switch][ep.side.idx()][ep.slot]
    }

    /// Endpoint at the far end of the branch occupying `ep`.
    pub fn across(&self, ep: Endpoint) -> Endpoint {
        let hb = self.half_branch_at(ep);
        self.branches[hb.branch].ends[1 - hb.end]
    }

    /// All endpoints ordered by switch, side (`In` first) and slot.
    pub fn endpoints(&self) -> impl Iterator<Item = Endpoint> + '_ {
        self.slots.iter().enumerate().flat_map(|(v, sides)| {
            [Side::In, Side::Out]
                .into_iter()
                .flat_map(move |s| (0..sides[s.idx()].len()).map(move |k| Endpoint::new(v, s, k)))
        })
    }

    pub fn count_tagged(&self, tag: BranchTag) -> usize {
        self.branches.iter().filter(|b| b.tag == tag).count()
    }

    /// `#switches - #branches`.
    pub fn euler_char(&self) -> i64 {
        self.switches.len() as i64 - self.branches.len() as i64
    }
}
