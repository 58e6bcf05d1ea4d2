//! Independent brute-force oracles shared by the integration tests. None of
//! them call into the algorithms they check.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use cctl_core::train_track::format::parse_track;
use cctl_core::train_track::{Side, TrainTrack};
use cctl_core::RegionAttachment;
use num_bigint::BigUint;
use num_traits::Zero;

pub type Dense = Vec<Vec<BigUint>>;

pub fn dense(m: &cctl_core::IntMatrix) -> Dense {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Schoolbook product.
pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let p = b[0].len();
    let mut out = vec![vec![BigUint::zero(); p]; n];
    for i in 0..n {
        for j in 0..p {
            for k in 0..b.len() {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

fn zero_one(m: &Dense) -> Vec<Vec<bool>> {
    m.iter()
        .map(|r| r.iter().map(|x| !x.is_zero()).collect())
        .collect()
}

fn bool_mul(a: &[Vec<bool>], b: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| a[i][k] && b[k][j])).collect())
        .collect()
}

/// Least `e <= limit` with the `e`-th power entrywise positive, by repeated
/// multiplication.
pub fn power_scan_exponent(m: &Dense, limit: u64) -> Option<u64> {
    let b = zero_one(m);
    let mut p = b.clone();
    for e in 1..=limit {
        if p.iter().all(|r| r.iter().all(|&x| x)) {
            return Some(e);
        }
        p = bool_mul(&p, &b);
    }
    None
}

/// Least `e` with a positive diagonal entry in the `e`-th power.
pub fn power_scan_cycle(m: &Dense) -> Option<u64> {
    let b = zero_one(m);
    let mut p = b.clone();
    for e in 1..=b.len() as u64 {
        if (0..b.len()).any(|i| p[i][i]) {
            return Some(e);
        }
        p = bool_mul(&p, &b);
    }
    None
}

/// Strong connectivity by depth-first search from every vertex.
pub fn strongly_connected(m: &Dense) -> bool {
    let n = m.len();
    (0..n).all(|s| {
        let mut seen = vec![false; n];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !m[v][w].is_zero() && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    })
}

/// A train path runs along a branch and leaves each switch on the side
/// opposite to the one it arrived on. A state is `(branch, direction)`:
/// direction 0 travels from end 0 to end 1.
fn route_successors(t: &TrainTrack, b: usize, dir: usize) -> Vec<(usize, usize)> {
    let arrive = t.branch(b).ends[1 - dir];
    let leave = arrive.side.opposite();
    t.side(arrive.switch, leave)
        .iter()
        .map(|hb| (hb.branch, hb.end))
        .collect()
}

/// Every simple cycle of the oriented-branch graph, as branch multiplicity
/// vectors (closed train routes).
pub fn closed_train_routes(t: &TrainTrack) -> Vec<Vec<u32>> {
    let nb = t.branch_count();
    let id = |b: usize, d: usize| 2 * b + d;
    let n = 2 * nb;
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|s| {
            route_successors(t, s / 2, s % 2)
                .into_iter()
                .map(|(b, d)| id(b, d))
                .collect()
        })
        .collect();
    let mut routes: BTreeSet<Vec<u32>> = BTreeSet::new();
    // Cycles rooted at their smallest state.
    for root in 0..n {
        let mut path = vec![root];
        let mut on = vec![false; n];
        on[root] = true;
        fn dfs(
            adj: &[Vec<usize>],
            root: usize,
            v: usize,
            path: &mut Vec<usize>,
            on: &mut [bool],
            nb: usize,
            out: &mut BTreeSet<Vec<u32>>,
        ) {
            for &w in &adj[v] {
                if w == root {
                    let mut count = vec![0u32; nb];
                    for s in path.iter() {
                        count[s / 2] += 1;
                    }
                    out.insert(count);
                } else if w > root && !on[w] {
                    on[w] = true;
                    path.push(w);
                    dfs(adj, root, w, path, on, nb, out);
                    path.pop();
                    on[w] = false;
                }
            }
        }
        dfs(&adj, root, root, &mut path, &mut on, nb, &mut routes);
    }
    routes.into_iter().collect()
}

/// Recurrence by route enumeration: every branch lies on a closed route.
pub fn recurrent_by_routes(t: &TrainTrack) -> bool {
    let routes = closed_train_routes(t);
    (0..t.branch_count()).all(|b| routes.iter().any(|r| r[b] > 0))
}

/// Switch condition evaluated directly from the slot lists.
pub fn switch_balanced(t: &TrainTrack, w: &[i64]) -> bool {
    (0..t.switch_count()).all(|v| {
        let sum = |s: Side| t.side(v, s).iter().map(|hb| w[hb.branch]).sum::<i64>();
        sum(Side::In) == sum(Side::Out)
    })
}

/// Chords of a regular `k`-gon that cross in their interiors, tested with
/// orientation signs on integer-scaled coordinates.
fn chords_cross(k: usize, a: (usize, usize), b: (usize, usize)) -> bool {
    let pt = |i: usize| {
        let th = std::f64::consts::TAU * i as f64 / k as f64;
        (th.cos(), th.sin())
    };
    let orient = |p: (f64, f64), q: (f64, f64), r: (f64, f64)| {
        let v = (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
        if v > 1e-12 {
            1
        } else if v < -1e-12 {
            -1
        } else {
            0
        }
    };
    let (p1, p2, q1, q2) = (pt(a.0), pt(a.1), pt(b.0), pt(b.1));
    let shared = a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1;
    !shared
        && orient(p1, p2, q1) * orient(p1, p2, q2) < 0
        && orient(q1, q2, p1) * orient(q1, q2, p2) < 0
}

/// All subsets of the diagonals of a `k`-gon with no two chords crossing,
/// each as a sorted list of cusp pairs. Checked over all `2^d` subsets.
pub fn noncrossing_diagonal_sets(k: usize) -> Vec<Vec<(usize, usize)>> {
    let mut diags = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let adjacent = b == a + 1 || (a == 0 && b == k - 1);
            if !adjacent {
                diags.push((a, b));
            }
        }
    }
    let d = diags.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << d) {
        let chosen: Vec<(usize, usize)> =
            (0..d).filter(|i| mask >> i & 1 == 1).map(|i| diags[i]).collect();
        let ok = chosen
            .iter()
            .enumerate()
            .all(|(i, x)| chosen[i + 1..].iter().all(|y| !chords_cross(k, *x, *y)));
        if ok {
            out.push(chosen);
        }
    }
    out
}

/// First fold time by walking the orbit for at most `bound` steps.
pub fn orbit_fold_time(map: &[usize], folded: &[bool], c: usize, bound: usize) -> Option<usize> {
    let mut x = c;
    for j in 1..=bound {
        if folded[x] {
            return Some(j);
        }
        x = map[x];
    }
    None
}

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn load_track(name: &str) -> (TrainTrack, RegionAttachment) {
    let text = std::fs::read_to_string(data_path(name)).expect("data file");
    parse_track(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every valid shipped track.
pub const VALID_TRACKS: [&str; 8] = [
    "genus2_maximal.track",
    "genus3_maximal.track",
    "punctured_torus.track",
    "four_punctured_sphere.track",
    "square_twice_punctured_torus.track",
    "pentagon_genus2.track",
    "barbell.track",
    "dead_end.track",
];
