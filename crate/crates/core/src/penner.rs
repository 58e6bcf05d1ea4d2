//! Support propagation for the Penner map `f = ρ T_{c_1} T_{b_1}^{-1} T_{a_1}`
//! on the closed surface of genus `g`.
//!
//! The base system is `{a_i, b_i, c_i}` for `i = 1..g` with the chain
//! intersection pattern
//!
//! * `i(a_j, b_j) = 1`,
//! * `i(c_j, b_j) = 1`,
//! * `i(c_j, b_{j-1}) = 1` (indices mod `g`, `b_0 = b_g`),
//!
//! and zero otherwise. `ρ` lowers every index by one (`1 -> g`).
//!
//! A [`SupportSet`] `S` stands for the regular neighbourhood of the union of
//! its curves. A twist about `α` maps `N(S)` into `N(S ∪ {α})` when `α` meets
//! `S` and fixes it otherwise, so starting from `S_0 = {a_g}` the iterate
//! `f^k(a_g)` always lies in `N(S_k)`. A base curve disjoint from, and not
//! in, `S_k` is disjoint from `f^k(a_g)`; if it is also disjoint from `a_g`
//! it witnesses `d(a_g, f^k(a_g)) <= 2`.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PennerError {
    #[error("the Penner system needs genus >= 2, got {0}")]
    GenusTooSmall(u32),
    #[error("curve {curve} does not exist in genus {genus}")]
    BadCurve { curve: BaseCurve, genus: u32 },
    #[error("no distance-2 certificate found within {cap} iterates")]
    NoCertificate { cap: u64 },
    #[error("iteration cap must be positive")]
    ZeroCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
    C,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::A, Family::B, Family::C];

    fn offset(self) -> usize {
        match self {
            Family::A => 0,
            Family::B => 1,
            Family::C => 2,
        }
    }

    fn letter(self) -> char {
        match self {
            Family::A => 'a',
            Family::B => 'b',
            Family::C => 'c',
        }
    }
}

/// One of `a_i`, `b_i`, `c_i` with `1 <= i <= g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseCurve {
    pub family: Family,
    pub index: u32,
}

impl BaseCurve {
    pub const fn new(family: Family, index: u32) -> Self {
        Self { family, index }
    }

    pub const fn a(index: u32) -> Self {
        Self::new(Family::A, index)
    }

    pub const fn b(index: u32) -> Self {
        Self::new(Family::B, index)
    }

    pub const fn c(index: u32) -> Self {
        Self::new(Family::C, index)
    }
}

impl fmt::Display for BaseCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

impl FromStr for BaseCurve {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('a') => Family::A,
            Some('b') => Family::B,
            Some('c') => Family::C,
            _ => return Err(format!("bad curve name {s:?}")),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let index = rest
            .parse::<u32>()
            .map_err(|_| format!("bad curve index in {s:?}"))?;
        Ok(BaseCurve::new(family, index))
    }
}

impl Serialize for BaseCurve {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BaseCurve {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The curve system `{a_i, b_i, c_i}` of genus `g` with its intersection data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PennerSystem {
    genus: u32,
}

impl PennerSystem {
    pub fn new(genus: u32) -> Result<Self, PennerError> {
        if genus < 2 {
            return Err(PennerError::GenusTooSmall(genus));
        }
        Ok(Self { genus })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn curve_count(&self) -> usize {
        3 * self.genus as usize
    }

    /// Index `0` and `g` name the same curve; any integer is reduced mod `g`.
    pub fn wrap(&self, index: i64) -> u32 {
        ((index - 1).rem_euclid(self.genus as i64) + 1) as u32
    }

    pub fn contains(&self, c: BaseCurve) -> bool {
        (1..=self.genus).contains(&c.index)
    }

    /// All curves in witness-search order: `a_1..a_g`, `b_1..b_g`, `c_1..c_g`.
    pub fn curves(&self) -> impl Iterator<Item = BaseCurve> + '_ {
        Family::ALL
            .into_iter()
            .flat_map(move |f| (1..=self.genus).map(move |i| BaseCurve::new(f, i)))
    }

    fn id(&self, c: BaseCurve) -> usize {
        c.family.offset() * self.genus as usize + (c.index - 1) as usize
    }

    fn curve(&self, id: usize) -> BaseCurve {
        let g = self.genus as usize;
        BaseCurve::new(Family::ALL[id / g], (id % g) as u32 + 1)
    }

    /// Curves meeting `c` once. At genus two `b_{j-1} = b_{j+1}`, but the
    /// pattern still lists each neighbour once.
    pub fn neighbours(&self, c: BaseCurve) -> Vec<BaseCurve> {
        let i = c.index as i64;
        let mut out = match c.family {
            Family::A => vec![BaseCurve::b(c.index)],
            Family::B => vec![
                BaseCurve::a(c.index),
                BaseCurve::c(c.index),
                BaseCurve::c(self.wrap(i + 1)),
            ],
            Family::C => vec![BaseCurve::b(c.index), BaseCurve::b(self.wrap(i - 1))],
        };
        out.sort();
        out.dedup();
        out
    }

    /// Geometric intersection number in `{0, 1}`.
    pub fn intersection(&self, x: BaseCurve, y: BaseCurve) -> u8 {
        u8::from(x != y && self.neighbours(x).contains(&y))
    }

    pub fn empty_support(&self) -> SupportSet {
        SupportSet {
            genus: self.genus,
            bits: FixedBitSet::with_capacity(self.curve_count()),
        }
    }

    pub fn support<I: IntoIterator<Item = BaseCurve>>(&self, curves: I) -> Result<SupportSet, PennerError> {
        let mut s = self.empty_support();
        for c in curves {
            if !self.contains(c) {
                return Err(PennerError::BadCurve {
                    curve: c,
                    genus: self.genus,
                });
            }
            s.bits.insert(self.id(c));
        }
        Ok(s)
    }

    pub fn full_support(&self) -> SupportSet {
        let mut s = self.empty_support();
        s.bits.insert_range(..);
        s
    }

    fn meets(&self, s: &SupportSet, alpha: BaseCurve) -> bool {
        self.neighbours(alpha).into_iter().any(|n| s.contains(n))
    }

    /// Support after a (positive or negative) twist about `alpha`.
    pub fn twist_support(&self, s: &SupportSet, alpha: BaseCurve) -> SupportSet {
        let mut out = s.clone();
        if self.meets(s, alpha) {
            out.bits.insert(self.id(alpha));
        }
        out
    }

    /// `ρ`: every index drops by one, `1 -> g`.
    pub fn rho(&self, s: &SupportSet) -> SupportSet {
        let mut out = self.empty_support();
        for id in s.bits.ones() {
            let c = self.curve(id);
            out.bits
                .insert(self.id(BaseCurve::new(c.family, self.wrap(c.index as i64 - 1))));
        }
        out
    }

    /// One application of `f`: twist about `a_1`, then `b_1`, then `c_1`, then rotate.
    pub fn step(&self, s: &SupportSet) -> SupportSet {
        let mut t = s.clone();
        for alpha in [BaseCurve::a(1), BaseCurve::b(1), BaseCurve::c(1)] {
            if !t.contains(alpha) && self.meets(&t, alpha) {
                t.bits.insert(self.id(alpha));
            }
        }
        self.rho(&t)
    }

    /// First curve, in [`PennerSystem::curves`] order, that is disjoint from
    /// `start`, not in `s`, and disjoint from every member of `s`.
    pub fn certify(&self, s: &SupportSet, start: BaseCurve) -> Option<BaseCurve> {
        self.curves().find(|&w| {
            self.intersection(w, start) == 0
                && !s.contains(w)
                && !self.meets(s, w)
        })
    }

    /// `N(c_g * c_low)`: `{c_g} ∪ {a_j, b_j, c_j : low <= j <= g-1}`.
    pub fn chain_support(&self, low: u32) -> SupportSet {
        let mut s = self.empty_support();
        s.bits.insert(self.id(BaseCurve::c(self.genus)));
        for j in low..self.genus {
            for f in Family::ALL {
                s.bits.insert(self.id(BaseCurve::new(f, j)));
            }
        }
        s
    }

    /// Iterates `S_{k+1} = step(S_k)` from `S_0 = {a_g}` for at most `cap`
    /// steps (default `3g²`), stopping once the support is the whole system.
    pub fn trace(&self, cap: Option<u64>) -> Result<TraceResult, PennerError> {
        let g = self.genus as u64;
        let cap = cap.unwrap_or(3 * g * g);
        if cap == 0 {
            return Err(PennerError::ZeroCap);
        }
        let start = BaseCurve::a(self.genus);
        let full = self.full_support();
        let mut supports = vec![self.support([start])?];
        let mut certificates = Vec::new();
        for k in 1..=cap {
            let next = self.step(supports.last().expect("nonempty"));
            if let Some(w) = self.certify(&next, start) {
                certificates.push(Certificate { k, witness: w });
            }
            let saturated = next == full && supports.last() == Some(&full);
            supports.push(next);
            if saturated {
                break;
            }
        }
        let best_k = certificates
            .iter()
            .map(|c| c.k)
            .max()
            .ok_or(PennerError::NoCertificate { cap })?;
        Ok(TraceResult {
            genus: self.genus,
            supports,
            certificates,
            best_k,
            bound: exact::ratio(2, best_k as i64),
        })
    }
}

/// Set of base curves of a fixed genus.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SupportSet {
    genus: u32,
    bits: FixedBitSet,
}

impl SupportSet {
    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, c: BaseCurve) -> bool {
        if c.index == 0 || c.index > self.genus {
            return false;
        }
        let id = c.family.offset() * self.genus as usize + (c.index - 1) as usize;
        self.bits.contains(id)
    }

    pub fn is_subset(&self, other: &SupportSet) -> bool {
        self.genus == other.genus && self.bits.is_subset(&other.bits)
    }

    /// Members ordered by family then index.
    pub fn curves(&self) -> Vec<BaseCurve> {
        let g = self.genus as usize;
        self.bits
            .ones()
            .map(|id| BaseCurve::new(Family::ALL[id / g], (id % g) as u32 + 1))
            .collect()
    }
}

impl fmt::Debug for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.curves().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub k: u64,
    pub witness: BaseCurve,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceResult {
    pub genus: u32,
    /// `S_0, S_1, …`; index `k` is the support of `f^k(a_g)`.
    pub supports: Vec<SupportSet>,
    pub certificates: Vec<Certificate>,
    pub best_k: u64,
    /// `2 / best_k`.
    pub bound: Rational,
}

impl TraceResult {
    pub fn support(&self, k: usize) -> Option<&SupportSet> {
        self.supports.get(k)
    }

    /// Whether `2/k <= 4/(g² + g - 4)`.
    pub fn meets_theorem_bound(&self) -> bool {
        let g = self.genus as i64;
        self.bound <= exact::ratio(4, g * g + g - 4)
    }

    pub fn to_serde(&self) -> TraceJson {
        TraceJson {
            genus: self.genus,
            supports: self.supports.iter().map(SupportSet::curves).collect(),
            certificates: self.certificates.clone(),
            best_k: self.best_k,
            bound: self.bound.clone(),
        }
    }

    pub fn from_serde(j: &TraceJson) -> Result<Self, PennerError> {
        let sys = PennerSystem::new(j.genus)?;
        let supports = j
            .supports
            .iter()
            .map(|s| sys.support(s.iter().copied()))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            genus: j.genus,
            supports,
            certificates: j.certificates.clone(),
            best_k: j.best_k,
            bound: j.bound.clone(),
        })
    }
}

/// Wire form of [`TraceResult`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub genus: u32,
    pub supports: Vec<Vec<BaseCurve>>,
    pub certificates: Vec<Certificate>,
    pub best_k: u64,
    #[serde(with = "exact::ratio_str")]
    pub bound: Rational,
}

/// `(g - 1) + ⌊(g - 1)/2⌋ (g + 1)`, the iterate certified by the inclusion chain.
pub fn k_star(genus: u32) -> Result<u64, PennerError> {
    if genus < 2 {
        return Err(PennerError::GenusTooSmall(genus));
    }
    let g = genus as u64;
    Ok((g - 1) + (g - 1) / 2 * (g + 1))
}

/// Best certified iterate `k` and the bound `2/k` on `ℓ(f)`.
pub fn penner_upper_bound(genus: u32) -> Result<(u64, Rational), PennerError> {
    let trace = PennerSystem::new(genus)?.trace(None)?;
    let bound = Rational::new(BigInt::from(2), BigInt::from(trace.best_k));
    Ok((trace.best_k, bound))
}
