//! Diagonal extensions: branches added inside polygonal regions joining
//! cusps.
//!
//! Only unpunctured polygons receive diagonals. A diagonal of a `k`-gon joins
//! two cusps that are not cyclically adjacent (adjacent cusps would cut off
//! a bigon), each cusp pair contributes at most one diagonal, diagonals in a
//! region may share a cusp but may not cross.

use std::collections::BTreeMap;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::measure::{check_measure, is_recurrent, Measure};
use super::ribbon::{boundary_cycles, check_euler, classify_regions, RegionKind};
use super::{
    Branch, BranchTag, Endpoint, RegionAttachment, RegionTopology, Side, TrackError, TrainTrack,
};

/// Enumeration refuses polygons with more cusps than this.
pub const MAX_DIAGONAL_CUSPS: usize = 8;

/// Diagonal of region `region` between cusp positions `from < to` in the
/// region's cyclic cusp list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagonal {
    pub region: usize,
    pub from: usize,
    pub to: usize,
}

impl Diagonal {
    pub fn new(region: usize, a: usize, b: usize) -> Self {
        Self {
            region,
            from: a.min(b),
            to: a.max(b),
        }
    }

    fn crosses(&self, other: &Diagonal) -> bool {
        self.region == other.region
            && ((self.from < other.from && other.from < self.to && self.to < other.to)
                || (other.from < self.from && self.from < other.to && other.to < self.to))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalExtension {
    pub diagonals: Vec<Diagonal>,
    pub track: TrainTrack,
    pub attachment: RegionAttachment,
}

/// `(offset, new branch, end)` of a diagonal endpoint placed in a cusp gap.
type Insertion = (usize, usize, usize);

/// Adds `diagonals` to `t`. Returns the extended track, whose first
/// `t.branch_count()` branches are those of `t`, and its attachment data.
pub fn add_diagonals(
    t: &TrainTrack,
    att: &RegionAttachment,
    diagonals: &[Diagonal],
) -> Result<(TrainTrack, RegionAttachment), TrackError> {
    let cycles = boundary_cycles(t);
    check_euler(t, &cycles, att)?;
    let mut sorted = diagonals.to_vec();
    sorted.sort();
    for (i, d) in sorted.iter().enumerate() {
        let Some(cycle) = cycles.get(d.region) else {
            return Err(TrackError::BadDiagonal(format!("{d:?}: no such region")));
        };
        let k = cycle.cusp_count();
        if att.regions[d.region] != RegionTopology::DISK {
            return Err(TrackError::BadDiagonal(format!("{d:?}: region is not a polygon")));
        }
        if d.to >= k || d.to - d.from < 2 || d.to - d.from > k - 2 {
            return Err(TrackError::BadDiagonal(format!(
                "{d:?}: cusps must be distinct and non-adjacent in a {k}-gon"
            )));
        }
        if i > 0 && sorted[i - 1] == *d {
            return Err(TrackError::BadDiagonal(format!("{d:?}: repeated")));
        }
        if let Some(o) = sorted[..i].iter().find(|o| o.crosses(d)) {
            return Err(TrackError::BadDiagonal(format!("{d:?} crosses {o:?}")));
        }
    }

    // Insertions per (switch, side, gap): (offset, new branch, end).
    let base = t.branch_count();
    let mut inserts: BTreeMap<(usize, Side, usize), Vec<Insertion>> = BTreeMap::new();
    for (n, d) in diagonals.iter().enumerate() {
        let cusps = &cycles[d.region].cusps;
        let k = cusps.len();
        for (end, (here, there)) in [(d.from, d.to), (d.to, d.from)].into_iter().enumerate() {
            let c = cusps[here];
            let offset = (there + k - here) % k;
            inserts
                .entry((c.switch, c.side, c.gap))
                .or_default()
                .push((offset, base + n, end));
        }
    }
    for (&(_, side, _), list) in inserts.iter_mut() {
        // The arriving slot borders the diagonal of largest offset: on `Out`
        // that slot is above the gap, on `In` it is below.
        match side {
            Side::Out => list.sort_by_key(|x| std::cmp::Reverse(x.0)),
            Side::In => list.sort_by_key(|x| x.0),
        }
    }

    let mut branches: Vec<Branch> = t.branches().to_vec();
    for (n, _) in diagonals.iter().enumerate() {
        let placeholder = Endpoint::new(0, Side::In, 0);
        branches.push(Branch {
            name: format!("d{n}"),
            ends: [placeholder, placeholder],
            tag: BranchTag::Diagonal,
        });
    }
    for v in 0..t.switch_count() {
        for side in [Side::In, Side::Out] {
            let mut slot = 0;
            for (old, hb) in t.side(v, side).iter().enumerate() {
                branches[hb.branch].ends[hb.end] = Endpoint::new(v, side, slot);
                slot += 1;
                if let Some(list) = inserts.get(&(v, side, old)) {
                    for &(_, b, end) in list {
                        branches[b].ends[end] = Endpoint::new(v, side, slot);
                        slot += 1;
                    }
                }
            }
        }
    }
    let ext = TrainTrack::new(t.switch_names().to_vec(), branches)?;

    // Each new cycle inherits the region of any original endpoint it visits.
    let mut old_region: BTreeMap<Endpoint, usize> = BTreeMap::new();
    for (i, c) in cycles.iter().enumerate() {
        for ep in &c.arrivals {
            old_region.insert(*ep, i);
        }
    }
    let new_cycles = boundary_cycles(&ext);
    let mut regions = Vec::with_capacity(new_cycles.len());
    for c in &new_cycles {
        let origin = c.arrivals.iter().find_map(|ep| {
            let hb = ext.half_branch_at(*ep);
            (hb.branch < base).then(|| old_region[&t.branch(hb.branch).ends[hb.end]])
        });
        let Some(origin) = origin else {
            return Err(TrackError::BadDiagonal(
                "a new region is bounded by diagonals only".into(),
            ));
        };
        regions.push(att.regions[origin]);
    }
    let ext_att = RegionAttachment {
        surface: att.surface,
        regions,
    };
    check_euler(&ext, &new_cycles, &ext_att)?;
    Ok((ext, ext_att))
}

/// All non-crossing diagonal sets of a `k`-gon, in lexicographic order of
/// their sorted diagonal lists (the empty set first).
fn noncrossing_sets(region: usize, k: usize) -> Vec<Vec<Diagonal>> {
    let mut all: Vec<Diagonal> = Vec::new();
    for a in 0..k {
        for b in a + 2..k {
            if b - a <= k - 2 {
                all.push(Diagonal::new(region, a, b));
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(all: &[Diagonal], start: usize, cur: &mut Vec<Diagonal>, out: &mut Vec<Vec<Diagonal>>) {
        out.push(cur.clone());
        for i in start..all.len() {
            if cur.iter().all(|c| !c.crosses(&all[i])) {
                cur.push(all[i]);
                rec(all, i + 1, cur, out);
                cur.pop();
            }
        }
    }
    rec(&all, 0, &mut cur, &mut out);
    out
}

/// `E(τ)`: every recurrent diagonal extension of the large track `t`,
/// including `t` itself when it is recurrent.
pub fn enumerate_diagonal_extensions(
    t: &TrainTrack,
    att: &RegionAttachment,
) -> Result<Vec<DiagonalExtension>, TrackError> {
    let class = classify_regions(t, att)?;
    if let Some((region, kind)) = class
        .kinds
        .iter()
        .enumerate()
        .find(|(_, k)| !k.is_large_piece())
    {
        return Err(TrackError::NotLarge {
            region,
            kind: *kind,
        });
    }
    let mut per_region: Vec<Vec<Vec<Diagonal>>> = Vec::new();
    for (region, kind) in class.kinds.iter().enumerate() {
        if let RegionKind::Polygon { cusps } = *kind {
            if cusps > MAX_DIAGONAL_CUSPS {
                return Err(TrackError::RegionTooLarge {
                    region,
                    cusps,
                    cap: MAX_DIAGONAL_CUSPS,
                });
            }
            if cusps >= 4 {
                per_region.push(noncrossing_sets(region, cusps));
            }
        }
    }
    // Cartesian product over regions.
    let mut combos: Vec<Vec<Diagonal>> = vec![Vec::new()];
    for options in &per_region {
        combos = combos
            .iter()
            .flat_map(|c| {
                options.iter().map(move |o| {
                    let mut v = c.clone();
                    v.extend_from_slice(o);
                    v
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for diagonals in combos {
        let (track, attachment) = add_diagonals(t, att, &diagonals)?;
        if is_recurrent(&track).recurrent {
            out.push(DiagonalExtension {
                diagonals,
                track,
                attachment,
            });
        }
    }
    Ok(out)
}

/// Whether `m`, a measure on the diagonal extension `ext` of `base`, is
/// positive on every branch of `base`.
pub fn in_int_pe(base: &TrainTrack, ext: &TrainTrack, m: &Measure) -> Result<bool, TrackError> {
    if base.switch_names() != ext.switch_names() {
        return Err(TrackError::NotAnExtension("switches differ".into()));
    }
    if ext.branch_count() < base.branch_count() {
        return Err(TrackError::NotAnExtension("fewer branches than the base".into()));
    }
    for (b, (x, y)) in base.branches().iter().zip(ext.branches()).enumerate() {
        let same_ends = x
            .ends
            .iter()
            .zip(&y.ends)
            .all(|(p, q)| p.switch == q.switch && p.side == q.side);
        if x.name != y.name || x.tag != y.tag || !same_ends {
            return Err(TrackError::NotAnExtension(format!("branch {b} differs")));
        }
    }
    if let Some(extra) = ext.branches()[base.branch_count()..]
        .iter()
        .find(|b| b.tag != BranchTag::Diagonal)
    {
        return Err(TrackError::NotAnExtension(format!(
            "added branch {} is not tagged diagonal",
            extra.name
        )));
    }
    if !check_measure(ext, m)? {
        return Err(TrackError::NotAMeasure("weight vector".into()));
    }
    Ok((0..base.branch_count()).all(|b| m.get(b).is_some_and(|w| w.is_positive())))
}
