mod common;

use std::collections::BTreeSet;

use cctl_core::train_track::format::{parse_track, parse_track_source, TrackParseError};
use cctl_core::train_track::report::{validate_source, Status};
use cctl_core::train_track::{
    add_diagonals, boundary_cycles, check_measure, classify_regions, enumerate_diagonal_extensions,
    in_int_pe, is_recurrent, max_fold_time, Branch, BranchTag, Diagonal, Endpoint, FoldSchedule,
    RegionTopology, Side, TrackError,
};
use cctl_core::{Measure, SurfaceSig, TrainTrack};
use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random track with at most four switches of valence three or four, built
/// from a random perfect matching of slots.
fn random_track(rng: &mut ChaCha8Rng) -> TrainTrack {
    loop {
        let n = rng.random_range(1..=4usize);
        let mut slots = Vec::new();
        for v in 0..n {
            let (nin, nout) = loop {
                let a = rng.random_range(1..=2usize);
                let b = rng.random_range(1..=2usize);
                if a + b >= 3 {
                    break (a, b);
                }
            };
            slots.extend((0..nin).map(|k| Endpoint::new(v, Side::In, k)));
            slots.extend((0..nout).map(|k| Endpoint::new(v, Side::Out, k)));
        }
        if slots.len() % 2 == 1 {
            continue;
        }
        slots.shuffle(rng);
        let branches = slots
            .chunks(2)
            .enumerate()
            .map(|(i, p)| Branch {
                name: format!("b{i}"),
                ends: [p[0], p[1]],
                tag: BranchTag::Plain,
            })
            .collect();
        let names = (0..n).map(|v| format!("v{v}")).collect();
        return TrainTrack::new(names, branches).expect("matching gives a valid layout");
    }
}

#[test]
fn shipped_maximal_tracks() {
    for (file, g) in [("genus2_maximal.track", 2u32), ("genus3_maximal.track", 3)] {
        let (t, att) = load_track(file);
        let s = SurfaceSig::closed(g);
        let cycles = boundary_cycles(&t);
        assert_eq!(cycles.len() as u32, 4 * g - 4);
        assert!(cycles.iter().all(|c| c.cusp_count() == 3));
        let total: usize = cycles.iter().map(|c| c.cusp_count()).sum();
        assert_eq!(total as u64, s.max_cusps());
        let class = classify_regions(&t, &att).unwrap();
        assert!(class.is_large && class.is_maximal);
        let rec = is_recurrent(&t);
        assert!(rec.recurrent);
        assert!(check_measure(&t, rec.witness.as_ref().unwrap()).unwrap());
        // Only trigons: the extension set is the track alone.
        let ext = enumerate_diagonal_extensions(&t, &att).unwrap();
        assert_eq!(ext.len(), 1);
        assert!(ext[0].diagonals.is_empty());

        let report = validate_source(&parse_track_source(&std::fs::read_to_string(data_path(file)).unwrap()).unwrap());
        assert!(report.passed(), "{:?}", report.verdicts);
    }
}

#[test]
fn wrong_attachment_is_an_euler_error() {
    let (t, mut att) = load_track("genus2_maximal.track");
    att.regions[0] = RegionTopology { genus: 1, punctures: 0 };
    assert!(matches!(
        classify_regions(&t, &att),
        Err(TrackError::EulerMismatch { expected: -2, computed: -4 })
    ));
}

#[test]
fn every_valid_file_round_trips() {
    for file in VALID_TRACKS {
        let text = std::fs::read_to_string(data_path(file)).unwrap();
        let (t, att) = parse_track(&text).unwrap();
        let again = cctl_core::train_track::format::write_track(&t, &att);
        assert_eq!(parse_track(&again).unwrap(), (t.clone(), att.clone()), "{file}");
        classify_regions(&t, &att).unwrap_or_else(|e| panic!("{file}: {e}"));
    }
}

#[test]
fn invalid_file_reports_structure() {
    let text = std::fs::read_to_string(data_path("invalid_empty_side.track")).unwrap();
    match parse_track(&text) {
        Err(TrackParseError::Structure(issues)) => {
            assert!(issues.iter().any(|e| matches!(e, TrackError::EmptySide { .. })));
            assert!(issues.iter().any(|e| matches!(e, TrackError::Valence { .. })));
        }
        other => panic!("unexpected {other:?}"),
    }
    let report = validate_source(&parse_track_source(&text).unwrap());
    assert_eq!(report.verdict("valence").unwrap().status, Status::Fail);
}

#[test]
fn recurrence_matches_routes_on_corpus() {
    let mut checked = 0;
    for file in VALID_TRACKS {
        let (t, _) = load_track(file);
        if t.branch_count() <= 8 {
            assert_eq!(is_recurrent(&t).recurrent, recurrent_by_routes(&t), "{file}");
            checked += 1;
        }
    }
    assert!(checked >= 4);
    assert!(!is_recurrent(&load_track("dead_end.track").0).recurrent);
}

#[test]
fn route_counting_measures_are_measures() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let t = random_track(&mut rng);
        for route in closed_train_routes(&t) {
            let w: Vec<i64> = route.iter().map(|&x| x as i64).collect();
            assert!(switch_balanced(&t, &w));
            assert!(check_measure(&t, &Measure::from_ints(&w)).unwrap());
        }
    }
}

fn diagonal_oracle(t: &TrainTrack, att: &cctl_core::RegionAttachment, region: usize, k: usize) -> BTreeSet<Vec<Diagonal>> {
    noncrossing_diagonal_sets(k)
        .into_iter()
        .map(|set| {
            let mut v: Vec<Diagonal> = set.into_iter().map(|(a, b)| Diagonal::new(region, a, b)).collect();
            v.sort();
            v
        })
        .filter(|ds| {
            let (ext, _) = add_diagonals(t, att, ds).unwrap();
            recurrent_by_routes(&ext)
        })
        .collect()
}

#[test]
fn square_region_extensions_match_oracle() {
    let (t, att) = load_track("square_twice_punctured_torus.track");
    let class = classify_regions(&t, &att).unwrap();
    assert!(class.is_large && !class.is_maximal);
    let ext = enumerate_diagonal_extensions(&t, &att).unwrap();
    let got: BTreeSet<Vec<Diagonal>> = ext.iter().map(|e| e.diagonals.clone()).collect();
    assert_eq!(got, diagonal_oracle(&t, &att, 0, 4));
    assert_eq!(got.len(), 3);
    assert_eq!(noncrossing_diagonal_sets(4).len(), 3);
    for e in &ext {
        // Euler conservation for every extension, and each square diagonal
        // cuts the square into two trigons.
        let c = classify_regions(&e.track, &e.attachment).unwrap();
        assert_eq!(c.is_maximal, e.diagonals.len() == 1);
    }
}

#[test]
fn pentagon_region_extensions_match_oracle() {
    let (t, att) = load_track("pentagon_genus2.track");
    let ext = enumerate_diagonal_extensions(&t, &att).unwrap();
    let got: BTreeSet<Vec<Diagonal>> = ext.iter().map(|e| e.diagonals.clone()).collect();
    assert_eq!(got, diagonal_oracle(&t, &att, 1, 5));
    assert_eq!(got.len(), 11);
    assert_eq!(noncrossing_diagonal_sets(5).len(), 11);
}

#[test]
fn non_large_track_is_refused() {
    let (t, att) = load_track("barbell.track");
    assert!(matches!(
        enumerate_diagonal_extensions(&t, &att),
        Err(TrackError::NotLarge { region: 0, .. })
    ));
}

#[test]
fn int_pe_membership() {
    let (t, att) = load_track("square_twice_punctured_torus.track");
    let ext = enumerate_diagonal_extensions(&t, &att).unwrap();
    let with_diag = ext.iter().find(|e| !e.diagonals.is_empty()).expect("a recurrent diagonal extension");
    let w = is_recurrent(&with_diag.track).witness.unwrap();
    assert!(in_int_pe(&t, &with_diag.track, &w).unwrap());
    // Zero on the diagonal only: a measure of the base extended by zero.
    let base_w = is_recurrent(&t).witness.unwrap();
    let mut m = base_w.clone();
    for d in t.branch_count()..with_diag.track.branch_count() {
        m.weights.insert(d, Zero::zero());
    }
    assert!(in_int_pe(&t, &with_diag.track, &m).unwrap());
    assert!(matches!(
        in_int_pe(&with_diag.track, &t, &base_w),
        Err(TrackError::NotAnExtension(_))
    ));
}

#[test]
fn fold_times_match_orbit_walk() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let s = SurfaceSig::closed(3);
    for _ in 0..200 {
        let n = rng.random_range(1..=s.max_cusps() as usize);
        let map: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        let folded: Vec<usize> = (0..n).filter(|_| rng.random_bool(0.3)).collect();
        let fs = FoldSchedule::new(map.clone(), &folded).unwrap();
        let mask: Vec<bool> = (0..n).map(|c| folded.contains(&c)).collect();
        let oracle: Option<Vec<usize>> = (0..n).map(|c| orbit_fold_time(&map, &mask, c, n)).collect();
        match (max_fold_time(&fs, s), oracle) {
            (Ok(j), Some(times)) => {
                assert_eq!(j, *times.iter().max().unwrap());
                assert!(j <= n);
            }
            (Err(TrackError::PeriodicUnfoldableCusp { cusp }), None) => {
                assert_eq!(orbit_fold_time(&map, &mask, cusp, 2 * n), None);
            }
            (got, want) => panic!("{got:?} vs {want:?}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]
    #[test]
    fn recurrence_matches_route_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_track(&mut rng);
        let rec = is_recurrent(&t);
        prop_assert_eq!(rec.recurrent, recurrent_by_routes(&t));
        if let Some(w) = rec.witness {
            prop_assert!(check_measure(&t, &w).unwrap());
            prop_assert!(w.weights.values().all(|x| *x >= One::one()));
        }
    }

    #[test]
    fn cycles_partition_endpoints(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_track(&mut rng);
        let cycles = boundary_cycles(&t);
        let seen: BTreeSet<Endpoint> = cycles.iter().flat_map(|c| c.arrivals.iter().copied()).collect();
        prop_assert_eq!(seen.len(), 2 * t.branch_count());
        // Every switch side with m slots contributes m - 1 cusps.
        let cusps: usize = cycles.iter().map(|c| c.cusp_count()).sum();
        let expected: usize = (0..t.switch_count())
            .map(|v| t.side(v, Side::In).len() + t.side(v, Side::Out).len() - 2)
            .sum();
        prop_assert_eq!(cusps, expected);
    }
}
