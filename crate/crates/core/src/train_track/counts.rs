use serde::{Deserialize, Serialize};

use super::{BranchTag, TrackError, TrainTrack};
use crate::surface::SurfaceSig;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchBoundReport {
    pub total: usize,
    /// `9|χ| - 3n`.
    pub total_bound: i64,
    pub total_ok: bool,
    pub real: usize,
    /// `3|χ| - 3`, a strict bound.
    pub real_bound: i64,
    pub real_ok: bool,
}

impl BranchBoundReport {
    pub fn passed(&self) -> bool {
        self.total_ok && self.real_ok
    }
}

/// Compares branch counts of `t` with the bounds for invariant tracks on `s`.
/// Violations are reported, not raised.
pub fn verify_branch_bounds(t: &TrainTrack, s: SurfaceSig) -> BranchBoundReport {
    let total = t.branch_count();
    let real = t.count_tagged(BranchTag::Real);
    let total_bound = s.max_branches();
    let real_bound = s.real_branch_limit();
    BranchBoundReport {
        total,
        total_bound,
        total_ok: total as i64 <= total_bound,
        real,
        real_bound,
        real_ok: (real as i64) < real_bound,
    }
}

/// Induced action of a map on cusps, with the cusps that fold at the first
/// iterate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldSchedule {
    cusp_map: Vec<usize>,
    folded: Vec<bool>,
}

impl FoldSchedule {
    /// `cusp_map[c]` is the image of cusp `c`; `folded` lists cusps folding at step one.
    pub fn new(cusp_map: Vec<usize>, folded: &[usize]) -> Result<Self, TrackError> {
        let n = cusp_map.len();
        if let Some((c, &img)) = cusp_map.iter().enumerate().find(|(_, &img)| img >= n) {
            return Err(TrackError::BadSchedule(format!(
                "cusp {c} maps to {img}, outside 0..{n}"
            )));
        }
        let mut mask = vec![false; n];
        for &c in folded {
            if c >= n {
                return Err(TrackError::BadSchedule(format!("folded cusp {c} out of range")));
            }
            mask[c] = true;
        }
        Ok(Self {
            cusp_map,
            folded: mask,
        })
    }

    pub fn cusp_count(&self) -> usize {
        self.cusp_map.len()
    }

    pub fn cusp_map(&self) -> &[usize] {
        &self.cusp_map
    }

    pub fn is_folded(&self, c: usize) -> bool {
        self.folded[c]
    }

    /// Smallest `j >= 1` with `map^{j-1}(c)` folded, if the orbit ever folds.
    pub fn fold_time(&self, c: usize) -> Option<usize> {
        let mut x = c;
        // An orbit that has not folded within `n` steps has entered a cycle
        // of unfolded cusps.
        for j in 1..=self.cusp_count() {
            if self.folded[x] {
                return Some(j);
            }
            x = self.cusp_map[x];
        }
        None
    }
}

/// Maximum over cusps of the first folding iterate.
///
/// Fails if `fs` has more cusps than a track on `s` can have, or if some
/// orbit never folds.
pub fn max_fold_time(fs: &FoldSchedule, s: SurfaceSig) -> Result<usize, TrackError> {
    if fs.cusp_count() as u64 > s.max_cusps() {
        return Err(TrackError::TooManyCusps {
            cusps: fs.cusp_count(),
            bound: s.max_cusps(),
        });
    }
    if fs.cusp_count() == 0 {
        return Err(TrackError::BadSchedule("no cusps".into()));
    }
    let mut worst = 0;
    for c in 0..fs.cusp_count() {
        match fs.fold_time(c) {
            Some(j) => worst = worst.max(j),
            None => return Err(TrackError::PeriodicUnfoldableCusp { cusp: c }),
        }
    }
    Ok(worst)
}
