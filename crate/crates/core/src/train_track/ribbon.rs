//! Boundary of the ribbon neighbourhood and complementary regions.
//!
//! The boundary is walked with the region on the left. Arriving at a switch
//! is only possible along the bottom edge of an `Out` slot or the top edge
//! of an `In` slot, so each endpoint is one traversal state:
//!
//! * at `Out` slot `s`: if a lower `Out` slot exists the walk turns around
//!   into `s + 1` (a cusp); otherwise it passes below the tie to the last
//!   `In` slot;
//! * at `In` slot `s`: if a higher `In` slot exists the walk turns around
//!   into `s - 1` (a cusp); otherwise it passes above the tie to `Out` slot 0.
//!
//! The walk then runs along the branch to its far endpoint.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::{Endpoint, Side, TrackError, TrainTrack};
use crate::surface::SurfaceSig;

/// Corner between slots `gap` and `gap + 1` on one side of a switch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cusp {
    pub switch: usize,
    pub side: Side,
    pub gap: usize,
}

/// One boundary component of the ribbon neighbourhood.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCycle {
    /// Arrival endpoints in walking order.
    pub arrivals: Vec<Endpoint>,
    /// Cusps in walking order (the cyclic order around the region).
    pub cusps: Vec<Cusp>,
}

impl BoundaryCycle {
    pub fn cusp_count(&self) -> usize {
        self.cusps.len()
    }
}

/// Next arrival after arriving at `ep`, and the cusp passed on the way.
pub(crate) fn successor(t: &TrainTrack, ep: Endpoint) -> (Endpoint, Option<Cusp>) {
    let v = ep.switch;
    let n_in = t.side(v, Side::In).len();
    let n_out = t.side(v, Side::Out).len();
    let (leave, cusp) = match ep.side {
        Side::Out if ep.slot + 1 < n_out => (
            Endpoint::new(v, Side::Out, ep.slot + 1),
            Some(Cusp {
                switch: v,
                side: Side::Out,
                gap: ep.slot,
            }),
        ),
        Side::Out => (Endpoint::new(v, Side::In, n_in - 1), None),
        Side::In if ep.slot > 0 => (
            Endpoint::new(v, Side::In, ep.slot - 1),
            Some(Cusp {
                switch: v,
                side: Side::In,
                gap: ep.slot - 1,
            }),
        ),
        Side::In => (Endpoint::new(v, Side::Out, 0), None),
    };
    (t.across(leave), cusp)
}

/// Boundary cycles in canonical order: each cycle starts at the first
/// endpoint, in [`TrainTrack::endpoints`] order, not yet visited.
pub fn boundary_cycles(t: &TrainTrack) -> Vec<BoundaryCycle> {
    let index: Vec<Endpoint> = t.endpoints().collect();
    let pos = |ep: &Endpoint| index.binary_search(ep).expect("endpoint of track");
    let mut seen = FixedBitSet::with_capacity(index.len());
    let mut cycles = Vec::new();
    for start in &index {
        if seen.contains(pos(start)) {
            continue;
        }
        let mut arrivals = Vec::new();
        let mut cusps = Vec::new();
        let mut cur = *start;
        while !seen.put(pos(&cur)) {
            arrivals.push(cur);
            let (next, cusp) = successor(t, cur);
            cusps.extend(cusp);
            cur = next;
        }
        debug_assert_eq!(cur, *start, "ribbon successor is a permutation");
        cycles.push(BoundaryCycle { arrivals, cusps });
    }
    cycles
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegionTopology {
    pub genus: u32,
    pub punctures: u32,
}

impl RegionTopology {
    pub const DISK: RegionTopology = RegionTopology {
        genus: 0,
        punctures: 0,
    };

    /// Euler characteristic of the region with its one boundary circle.
    pub fn euler_char(self) -> i64 {
        1 - 2 * self.genus as i64 - self.punctures as i64
    }
}

/// Topology of the region behind each boundary cycle, in canonical cycle
/// order, and the surface the track lives on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionAttachment {
    pub surface: SurfaceSig,
    pub regions: Vec<RegionTopology>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum RegionKind {
    Polygon { cusps: usize },
    PuncturedPolygon { cusps: usize },
    Other { genus: u32, punctures: u32, cusps: usize },
}

impl RegionKind {
    pub fn is_large_piece(self) -> bool {
        !matches!(self, RegionKind::Other { .. })
    }

    pub fn is_maximal_piece(self) -> bool {
        matches!(
            self,
            RegionKind::Polygon { cusps: 3 } | RegionKind::PuncturedPolygon { cusps: 1 }
        )
    }
}

impl fmt::Display for RegionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionKind::Polygon { cusps } => write!(f, "polygon({cusps})"),
            RegionKind::PuncturedPolygon { cusps } => write!(f, "once-punctured polygon({cusps})"),
            RegionKind::Other {
                genus,
                punctures,
                cusps,
            } => write!(f, "other(genus {genus}, punctures {punctures}, cusps {cusps})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionClassification {
    pub kinds: Vec<RegionKind>,
    pub is_large: bool,
    pub is_maximal: bool,
    pub total_cusps: usize,
}

/// Euler bookkeeping: `#switches - #branches + Σ (1 - 2 genus - punctures)`.
pub(crate) fn check_euler(
    t: &TrainTrack,
    cycles: &[BoundaryCycle],
    att: &RegionAttachment,
) -> Result<(), TrackError> {
    if att.regions.len() != cycles.len() {
        return Err(TrackError::AttachmentCount {
            expected: cycles.len(),
            got: att.regions.len(),
        });
    }
    let computed = t.euler_char() + att.regions.iter().map(|r| r.euler_char()).sum::<i64>();
    let expected = att.surface.euler_char();
    if computed != expected {
        return Err(TrackError::EulerMismatch { expected, computed });
    }
    let punctures: u32 = att.regions.iter().map(|r| r.punctures).sum();
    if punctures != att.surface.punctures {
        return Err(TrackError::PunctureMismatch {
            expected: att.surface.punctures,
            computed: punctures,
        });
    }
    Ok(())
}

pub fn classify_regions(
    t: &TrainTrack,
    att: &RegionAttachment,
) -> Result<RegionClassification, TrackError> {
    let cycles = boundary_cycles(t);
    check_euler(t, &cycles, att)?;
    let kinds: Vec<RegionKind> = cycles
        .iter()
        .zip(&att.regions)
        .map(|(c, r)| {
            let cusps = c.cusp_count();
            match (r.genus, r.punctures) {
                (0, 0) => RegionKind::Polygon { cusps },
                (0, 1) => RegionKind::PuncturedPolygon { cusps },
                (genus, punctures) => RegionKind::Other {
                    genus,
                    punctures,
                    cusps,
                },
            }
        })
        .collect();
    Ok(RegionClassification {
        is_large: kinds.iter().all(|k| k.is_large_piece()),
        is_maximal: kinds.iter().all(|k| k.is_maximal_piece()),
        total_cusps: cycles.iter().map(BoundaryCycle::cusp_count).sum(),
        kinds,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn barbell_cycles() {
        let t = barbell();
        let cycles = boundary_cycles(&t);
        let mut counts: Vec<usize> = cycles.iter().map(|c| c.cusp_count()).collect();
        counts.sort();
        assert_eq!(counts, vec![0, 1, 1]);
        assert_eq!(cycles.iter().map(|c| c.arrivals.len()).sum::<usize>(), 6);
    }

    #[test]
    fn punctured_torus_bigon() {
        let t = punctured_torus();
        let cycles = boundary_cycles(&t);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].cusp_count(), 2);
        let att = RegionAttachment {
            surface: SurfaceSig::new(1, 1),
            regions: vec![RegionTopology {
                genus: 0,
                punctures: 1,
            }],
        };
        let c = classify_regions(&t, &att).unwrap();
        assert!(c.is_large && !c.is_maximal);
        assert_eq!(c.kinds[0], RegionKind::PuncturedPolygon { cusps: 2 });
    }

    #[test]
    fn barbell_on_four_punctured_sphere() {
        let t = barbell();
        let cycles = boundary_cycles(&t);
        let regions = cycles
            .iter()
            .map(|c| RegionTopology {
                genus: 0,
                punctures: if c.cusp_count() == 0 { 2 } else { 1 },
            })
            .collect();
        let att = RegionAttachment {
            surface: SurfaceSig::new(0, 4),
            regions,
        };
        let c = classify_regions(&t, &att).unwrap();
        assert!(!c.is_large);

        let mut wrong = att.clone();
        wrong.surface = SurfaceSig::new(0, 5);
        assert!(matches!(
            classify_regions(&t, &wrong),
            Err(TrackError::EulerMismatch { expected: -3, computed: -2 })
        ));
        wrong.regions.pop();
        assert!(matches!(
            classify_regions(&t, &wrong),
            Err(TrackError::AttachmentCount { expected: 3, got: 2 })
        ));
    }
}
