use cctl_core::penner::{k_star, penner_upper_bound, BaseCurve, Family, PennerSystem, SupportSet};
use proptest::prelude::*;

fn system(g: u32) -> PennerSystem {
    PennerSystem::new(g).unwrap()
}

/// Support built from a bitmask over the `3g` curves in system order.
fn from_mask(sys: &PennerSystem, mask: u64) -> SupportSet {
    let curves: Vec<BaseCurve> = sys.curves().collect();
    sys.support(
        curves
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, c)| *c),
    )
    .unwrap()
}

/// The intersection pattern written out independently.
fn meets(g: u32, x: BaseCurve, y: BaseCurve) -> bool {
    use Family::*;
    let prev = |j: u32| if j == 1 { g } else { j - 1 };
    let pair = |p: BaseCurve, q: BaseCurve| match (p.family, q.family) {
        (A, B) => p.index == q.index,
        (C, B) => p.index == q.index || prev(p.index) == q.index,
        _ => false,
    };
    pair(x, y) || pair(y, x)
}

/// The certify predicate from first principles.
fn certifies(sys: &PennerSystem, s: &SupportSet, w: BaseCurve) -> bool {
    let g = sys.genus();
    let start = BaseCurve::a(g);
    !meets(g, w, start) && !s.contains(w) && s.curves().iter().all(|&x| !meets(g, w, x))
}

#[test]
fn intersection_matches_pattern() {
    for g in 2..=7 {
        let sys = system(g);
        for x in sys.curves() {
            for y in sys.curves() {
                assert_eq!(sys.intersection(x, y) == 1, meets(g, x, y), "{x} {y} g={g}");
            }
        }
    }
}

#[test]
fn certificates_match_exhaustive_recheck() {
    for g in 2..=12 {
        let sys = system(g);
        let trace = sys.trace(None).unwrap();
        let mut expected = Vec::new();
        for (k, s) in trace.supports.iter().enumerate().skip(1) {
            if let Some(w) = sys.curves().find(|&w| certifies(&sys, s, w)) {
                expected.push((k as u64, w));
            }
        }
        let got: Vec<(u64, BaseCurve)> = trace.certificates.iter().map(|c| (c.k, c.witness)).collect();
        assert_eq!(got, expected, "g = {g}");
    }
}

#[test]
fn k_star_values() {
    assert_eq!(k_star(3).unwrap(), 6);
    assert_eq!(k_star(4).unwrap(), 8);
    assert_eq!(k_star(5).unwrap(), 16);
    assert!(k_star(1).is_err());
    for g in 3..200u64 {
        assert!(2 * k_star(g as u32).unwrap() >= g * g + g - 4);
    }
}

#[test]
fn best_k_small_genera() {
    let expected = [(2, 2), (3, 6), (4, 9), (5, 16), (6, 20), (7, 30)];
    for (g, k) in expected {
        assert_eq!(penner_upper_bound(g).unwrap().0, k, "g = {g}");
    }
}

#[test]
fn witness_at_k_star_is_a1() {
    for g in 3..=30 {
        let trace = system(g).trace(None).unwrap();
        let ks = k_star(g).unwrap();
        let c = trace.certificates.iter().find(|c| c.k == ks).expect("certified at k_star");
        assert_eq!(c.witness, BaseCurve::a(1));
    }
}

#[test]
fn trace_json_round_trip() {
    let trace = system(5).trace(None).unwrap();
    let text = serde_json::to_string(&trace.to_serde()).unwrap();
    assert!(text.contains("\"bound\":\"1/8\""));
    let back = cctl_core::TraceResult::from_serde(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, trace);
}

proptest! {
    #[test]
    fn step_is_monotone(g in 2u32..=10, a in any::<u64>(), b in any::<u64>()) {
        let sys = system(g);
        let mask = (1u64 << (3 * g)) - 1;
        let small = from_mask(&sys, a & b & mask);
        let big = from_mask(&sys, (a | b) & mask);
        prop_assert!(small.is_subset(&big));
        prop_assert!(sys.step(&small).is_subset(&sys.step(&big)));
    }

    #[test]
    fn rho_has_order_g(g in 2u32..=10, a in any::<u64>()) {
        let sys = system(g);
        let s = from_mask(&sys, a & ((1u64 << (3 * g)) - 1));
        let mut r = s.clone();
        for _ in 0..g {
            r = sys.rho(&r);
        }
        prop_assert_eq!(r, s);
    }

    #[test]
    fn trace_is_deterministic(g in 2u32..=12, cap in 1u64..60) {
        let sys = system(g);
        let a = sys.trace(Some(cap));
        let b = system(g).trace(Some(cap));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn step_never_loses_curves_before_rotation(g in 2u32..=10, a in any::<u64>()) {
        // step = rho after twists; twists only add curves.
        let sys = system(g);
        let s = from_mask(&sys, a & ((1u64 << (3 * g)) - 1));
        let stepped = sys.step(&s);
        prop_assert!(sys.rho(&s).is_subset(&stepped));
        prop_assert!(stepped.len() <= s.len() + 3);
    }
}
