//! Exact computational machinery for bounding minimal asymptotic translation
//! lengths of pseudo-Anosov maps on the curve complex.
//!
//! The crate is split by subsystem:
//!
//! * [`surface`] holds surface signatures and the closed-form bound formulas.
//! * [`pf_matrix`] analyses nonnegative big-integer transition matrices.
//! * [`train_track`] validates ribbon train tracks, measures and regions.
//! * [`penner`] simulates the Penner map by support propagation.
//! * [`lp`] is the exact rational feasibility solver behind recurrence.

pub mod exact;
pub mod lp;
pub mod penner;
pub mod pf_matrix;
pub mod surface;
pub mod train_track;

pub use exact::Rational;
pub use penner::{BaseCurve, Family, PennerSystem, SupportSet, TraceResult};
pub use pf_matrix::{BlockTransition, IntMatrix, MatrixError};
pub use surface::{BoundReport, SurfaceError, SurfaceSig};
pub use train_track::{Measure, RegionAttachment, TrackError, TrainTrack};
