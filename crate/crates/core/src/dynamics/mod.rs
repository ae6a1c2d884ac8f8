//! Torus dynamics: translation flow pairs, trigonometric polynomial
//! observables, Koopman action, coboundary decomposition and the planar
//! transference embedding.

pub mod coboundary;
pub mod embed;
pub mod flow;
pub mod trigpoly;

pub use coboundary::{
    coboundary_decompose, coboundary_decompose_with_floor, CoboundaryDecomposition,
    DEFAULT_RESONANCE_FLOOR,
};
pub use embed::embed_transfer_function;
pub use flow::{flow_apply, FlowPair, TorusPoint};
pub use trigpoly::{koopman_apply, TrigPolynomial};
