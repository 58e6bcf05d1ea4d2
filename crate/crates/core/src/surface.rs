//! Surface signatures and the closed-form translation-length bounds.
//!
//! Every bound except [`flm_upper`] is an exact rational. `flm_upper` involves
//! logarithms and is evaluated in `f64`; comparisons against it use
//! [`FLM_TOLERANCE`].

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, Rational};

/// Absolute tolerance used whenever an exact bound is compared to [`flm_upper`].
pub const FLM_TOLERANCE: f64 = 1e-9;

/// Quadratic coefficient of the lower bound on closed surfaces.
pub const CLOSED_COEFFICIENT: i64 = 162;
/// Quadratic coefficient of the lower bound on punctured surfaces.
pub const PUNCTURED_COEFFICIENT: i64 = 18;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("sporadic surface S_{{{genus},{punctures}}} (complexity {complexity} < 2)")]
    Sporadic {
        genus: u32,
        punctures: u32,
        complexity: i64,
    },
    #[error("{op} needs genus >= {min}, got {genus}")]
    GenusTooSmall { op: &'static str, min: u32, genus: u32 },
    #[error("punctured genus-2 family bound needs n >= 5, got {0}")]
    TooFewPunctures(u32),
    #[error("power must be a positive integer")]
    ZeroPower,
    #[error("bound must be nonnegative, got {0}")]
    NegativeBound(Rational),
    #[error("k must be a positive integer")]
    ZeroIterate,
}

/// Genus and puncture count of a connected orientable surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceSig {
    pub genus: u32,
    pub punctures: u32,
}

impl SurfaceSig {
    pub const fn new(genus: u32, punctures: u32) -> Self {
        Self { genus, punctures }
    }

    pub const fn closed(genus: u32) -> Self {
        Self::new(genus, 0)
    }

    pub fn euler_char(self) -> i64 {
        euler_char(self)
    }

    /// `|χ(S)|`.
    pub fn abs_euler(self) -> u64 {
        euler_char(self).unsigned_abs()
    }

    pub fn complexity(self) -> i64 {
        complexity(self)
    }

    pub fn is_closed(self) -> bool {
        self.punctures == 0
    }

    pub fn is_sporadic(self) -> bool {
        complexity(self) < 2
    }

    /// Returns `self` if non-sporadic.
    pub fn non_sporadic(self) -> Result<Self, SurfaceError> {
        if self.is_sporadic() {
            Err(SurfaceError::Sporadic {
                genus: self.genus,
                punctures: self.punctures,
                complexity: complexity(self),
            })
        } else {
            Ok(self)
        }
    }

    /// `c_0 = 162` for closed surfaces and `c_n = 18` otherwise.
    pub fn lower_coefficient(self) -> i64 {
        if self.is_closed() {
            CLOSED_COEFFICIENT
        } else {
            PUNCTURED_COEFFICIENT
        }
    }

    /// Strict upper bound `c_n χ²` on the spreading iterate of a transition matrix.
    pub fn spread_bound(self) -> u64 {
        let chi = self.abs_euler();
        self.lower_coefficient() as u64 * chi * chi
    }

    /// Maximum total branch count `9|χ| - 3n` of an invariant track.
    pub fn max_branches(self) -> i64 {
        9 * self.abs_euler() as i64 - 3 * self.punctures as i64
    }

    /// `3|χ| - 3`; the real branch count is bounded by this.
    pub fn real_branch_limit(self) -> i64 {
        3 * self.abs_euler() as i64 - 3
    }

    /// Total cusp bound `6|χ|` for large tracks.
    pub fn max_cusps(self) -> u64 {
        6 * self.abs_euler()
    }
}

impl std::fmt::Display for SurfaceSig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.punctures)
    }
}

pub fn euler_char(s: SurfaceSig) -> i64 {
    2 - 2 * s.genus as i64 - s.punctures as i64
}

pub fn complexity(s: SurfaceSig) -> i64 {
    3 * s.genus as i64 - 3 + s.punctures as i64
}

/// `1 / (c_n χ² + 6|χ|)`.
pub fn thm1_lower(s: SurfaceSig) -> Result<Rational, SurfaceError> {
    let s = s.non_sporadic()?;
    let chi = s.abs_euler() as i64;
    let den = s.lower_coefficient() * chi * chi + 6 * chi;
    Ok(exact::ratio(1, den))
}

/// `4 / (g² + g - 4)` for the closed surface of genus `g`.
pub fn thm1_upper(genus: u32) -> Result<Rational, SurfaceError> {
    if genus < 2 {
        return Err(SurfaceError::GenusTooSmall {
            op: "thm1_upper",
            min: 2,
            genus,
        });
    }
    let g = genus as i64;
    Ok(exact::ratio(4, g * g + g - 4))
}

/// `4 log(2 + √3) / (g log(g - 1/2))`, the earlier upper bound for closed
/// surfaces. Strictly decreasing in `g`.
pub fn flm_upper(genus: u32) -> Result<f64, SurfaceError> {
    if genus < 2 {
        return Err(SurfaceError::GenusTooSmall {
            op: "flm_upper",
            min: 2,
            genus,
        });
    }
    let g = genus as f64;
    Ok(4.0 * (2.0 + 3f64.sqrt()).ln() / (g * (g - 0.5).ln()))
}

/// `20 / (n - 4)` for genus two with `n` punctures.
pub fn genus2_punctured_upper(punctures: u32) -> Result<Rational, SurfaceError> {
    if punctures <= 4 {
        return Err(SurfaceError::TooFewPunctures(punctures));
    }
    Ok(exact::ratio(20, punctures as i64 - 4))
}

/// `1 / (6|χ| + k)`: the lower bound obtained once a nesting occurs within
/// `6|χ| + k` iterates.
pub fn lower_from_w(s: SurfaceSig, k: u64) -> Result<Rational, SurfaceError> {
    let s = s.non_sporadic()?;
    if k == 0 {
        return Err(SurfaceError::ZeroIterate);
    }
    let w = 6 * s.abs_euler() + k;
    Ok(Rational::new(BigInt::from(1), BigInt::from(w)))
}

/// Converts a bound on `ℓ(f^m)` into a bound on `ℓ(f)` using `ℓ(f^m) = m ℓ(f)`.
pub fn scaled_bound(bound_for_power: &Rational, m: u64) -> Result<Rational, SurfaceError> {
    if m == 0 {
        return Err(SurfaceError::ZeroPower);
    }
    if bound_for_power.is_negative() {
        return Err(SurfaceError::NegativeBound(bound_for_power.clone()));
    }
    if bound_for_power.is_zero() {
        return Ok(bound_for_power.clone());
    }
    Ok(bound_for_power / Rational::from_integer(BigInt::from(m)))
}

/// All bounds known for one surface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub surface: SurfaceSig,
    #[serde(with = "exact::ratio_str")]
    pub thm1_lower: Rational,
    /// Closed surfaces only.
    #[serde(with = "exact::opt_ratio_str")]
    pub thm1_upper: Option<Rational>,
    /// Floating point; compare with [`FLM_TOLERANCE`].
    pub flm_upper: Option<f64>,
    #[serde(with = "exact::opt_ratio_str")]
    pub penner_upper: Option<Rational>,
    pub certificate_k: Option<u64>,
    /// `20/(n-4)` for genus two with at least five punctures.
    #[serde(with = "exact::opt_ratio_str")]
    pub punctured_family_upper: Option<Rational>,
}

impl BoundReport {
    /// Formula-only report; the Penner fields are filled by the caller.
    pub fn formulas(surface: SurfaceSig) -> Result<Self, SurfaceError> {
        let thm1_lower = thm1_lower(surface)?;
        let (thm1_upper, flm_upper) = if surface.is_closed() {
            (Some(thm1_upper(surface.genus)?), Some(flm_upper(surface.genus)?))
        } else {
            (None, None)
        };
        let punctured_family_upper = if surface.genus == 2 && surface.punctures >= 5 {
            Some(genus2_punctured_upper(surface.punctures)?)
        } else {
            None
        };
        Ok(Self {
            surface,
            thm1_lower,
            thm1_upper,
            flm_upper,
            penner_upper: None,
            certificate_k: None,
            punctured_family_upper,
        })
    }

    /// Every exact upper bound present strictly exceeds the lower bound.
    pub fn is_consistent(&self) -> bool {
        [
            &self.thm1_upper,
            &self.penner_upper,
            &self.punctured_family_upper,
        ]
        .into_iter()
        .flatten()
        .all(|u| self.thm1_lower < *u)
    }
}
