//! Cutoff construction, the bilinear operator `B_δ`, frequency splitting,
//! Plancherel shift bounds, parabolic rescaling, dyadic scale bookkeeping,
//! the localization probe, and transference norm accounting.

pub mod band;
pub mod bdelta;
pub mod cutoffs;
pub mod decay;
pub mod probe;
pub mod scale;
pub mod transference;

pub use band::{band_split, shift_difference_norm, BandSplit, ShiftDifferenceNorm};
pub use bdelta::{apply_b_delta, apply_b_delta_direct, apply_shift_product, SparseModes};
pub use cutoffs::{build_cutoffs, CutoffSpec};
pub use decay::{delta_decay_experiment, DeltaDecayOutcome, DeltaDecayPoint, RadiusRule};
pub use probe::{local_estimate_probe, ExclusionAxis, ProbeOutcome};
pub use scale::{
    dyadic_scale_decomposition, rescale_parabolic, DyadicDecomposition, DyadicInterval,
};
pub use transference::{transference_check, TransferenceOutcome};
