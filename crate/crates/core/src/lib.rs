pub mod averages;
pub mod bilinear;
pub mod dynamics;
pub mod error;
pub mod numerics;
pub mod scalar;

pub use averages::{
    compute_average, compute_average_quadrature, difference_average, lacunary_trajectory,
    maximal_chain_check, sandwich_check, single_quadratic_average, AverageRequest, ExponentPair,
    LacunarySchedule, MaximalChainOutcome, SandwichOutcome, TrajectoryRecord,
};
pub use bilinear::{
    apply_b_delta, apply_b_delta_direct, apply_shift_product, band_split, build_cutoffs,
    delta_decay_experiment, dyadic_scale_decomposition, local_estimate_probe, rescale_parabolic,
    shift_difference_norm, transference_check, BandSplit, CutoffSpec, DeltaDecayOutcome,
    DyadicDecomposition, ExclusionAxis, ProbeOutcome, RadiusRule, ShiftDifferenceNorm,
    SparseModes, TransferenceOutcome,
};
pub use dynamics::{
    coboundary_decompose, embed_transfer_function, flow_apply, koopman_apply,
    CoboundaryDecomposition, FlowPair, TorusPoint, TrigPolynomial,
};
pub use error::{CoreError, Result};
pub use scalar::Real;
