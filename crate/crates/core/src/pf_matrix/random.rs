//! Seeded generators for synthetic transition data.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{is_irreducible, BlockTransition, IntMatrix};
use crate::surface::SurfaceSig;

/// Random irreducible `n x n` matrix with entries in `0..=max_entry`.
///
/// Half the draws are plain rejection samples of sparse matrices; the rest
/// overlay a random Hamiltonian cycle on a sparser matrix, which also yields
/// imprimitive (periodic) examples.
pub fn irreducible<R: Rng>(rng: &mut R, n: usize, max_entry: u64) -> IntMatrix {
    assert!(n >= 1 && max_entry >= 1);
    loop {
        let cycle_based = rng.random_bool(0.5);
        let density = if cycle_based {
            rng.random_range(0.0..0.25)
        } else {
            rng.random_range(0.15..0.7)
        };
        let mut rows = vec![vec![0u64; n]; n];
        for row in rows.iter_mut() {
            for v in row.iter_mut() {
                if rng.random_bool(density) {
                    *v = rng.random_range(1..=max_entry);
                }
            }
        }
        if cycle_based {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(rng);
            for w in 0..n {
                let (a, b) = (perm[w], perm[(w + 1) % n]);
                if rows[a][b] == 0 {
                    rows[a][b] = rng.random_range(1..=max_entry);
                }
            }
        }
        let m = IntMatrix::from_rows(&rows).expect("square");
        if is_irreducible(&m).expect("square") {
            return m;
        }
    }
}

/// Random primitive `n x n` matrix.
pub fn primitive<R: Rng>(rng: &mut R, n: usize, max_entry: u64) -> IntMatrix {
    loop {
        let m = irreducible(rng, n, max_entry);
        if super::primitivity_exponent(&m).expect("square").exponent().is_some() {
            return m;
        }
    }
}

/// Random `n x n` block-upper-triangular matrix: rows `split..n` vanish on
/// columns `0..split`.
pub fn block_upper<R: Rng>(rng: &mut R, n: usize, split: usize, max_entry: u64) -> IntMatrix {
    let mut m = IntMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            if r >= split && c < split {
                continue;
            }
            if rng.random_bool(0.6) {
                m.set(r, c, BigUint::from(rng.random_range(0..=max_entry)));
            }
        }
    }
    m
}

/// Synthetic transition data for `surface` with `real` real branches out of
/// `total`: a primitive real block, and a random spanning forest guaranteeing
/// every infinitesimal branch is eventually run over by real images.
///
/// Real branches occupy the last `real` indices.
pub fn bh_transition<R: Rng>(
    rng: &mut R,
    surface: SurfaceSig,
    real: usize,
    total: usize,
    max_entry: u64,
) -> BlockTransition {
    assert!(real >= 1 && real <= total);
    let split = total - real;
    let mr = primitive(rng, real, max_entry);
    let mut m = IntMatrix::zeros(total, total);
    for r in 0..real {
        for c in 0..real {
            m.set(split + r, split + c, mr.get(r, c).clone());
        }
    }
    // Upper blocks A and B: sparse noise.
    for r in 0..split {
        for c in 0..total {
            if rng.random_bool(0.15) {
                m.set(r, c, BigUint::from(rng.random_range(1..=max_entry)));
            }
        }
    }
    // Spanning forest rooted in the real set: each infinitesimal branch is
    // covered by the image of a real branch or an earlier infinitesimal one.
    let mut order: Vec<usize> = (0..split).collect();
    order.shuffle(rng);
    let mut covered: Vec<usize> = (split..total).collect();
    for t in order {
        let parent = covered[rng.random_range(0..covered.len())];
        if m.get(t, parent) == &BigUint::ZERO {
            m.set(t, parent, BigUint::from(1u32));
        }
        covered.push(t);
    }
    BlockTransition::new(m, (split..total).collect(), surface).expect("valid by construction")
}
