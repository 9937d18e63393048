//! Exact computations for real hypersurfaces of finite type in `C^2`:
//! invariants of the model, normal forms for the circular model
//! `v = |z|^k`, stability groups and linear equivalence.
//!
//! All arithmetic is over `Q` and `Q(i)`; series are truncated at an explicit
//! weight `W` with `wt(z) = wt(zb) = 1` and `wt(u) = wt(w) = k`.

pub mod equivalence;
pub mod error;
pub mod holo;
pub mod lattice;
pub mod linsolve;
pub mod normalform;
pub mod parse;
pub mod scalar;
pub mod series;
pub mod surface;
pub mod symmetry;
pub mod transform;

pub use equivalence::{
    equivalent, linear_equivalent, special_representative, verify_certificate, CharacterRow,
    EquivalenceCertificate, ModulusRelation, PhaseWitness, Refutation, Verdict, Witness,
};
pub use error::{CrError, ParseError, Result};
pub use holo::{compose, map_component_eval, Component, HoloMapPair, HoloSeries};
pub use lattice::{kernel_lattice, rational_power_consistent};
pub use normalform::{
    absorb_harmonic, check_normal_form, normalize, prepare, renormalize_with_initial_data,
    special_defect, special_mu, special_normalize, NormalFormResult, Prepared, ResidualGroupNote,
};
pub use parse::{format_holo, format_series, parse_map, parse_series, parse_surface, SurfaceSpec};
pub use scalar::{GaussianRational, Phase, Rational};
pub use series::{MultiIndex, WeightedSeries};
pub use surface::{
    anchor_index, is_weakly_spherical, kappa_invariant, leading_rescale, model_of,
    validate_surface, AnchorIndex, Hypersurface, ModelInfo,
};
pub use symmetry::{
    classify, diagonal_stabilizer, verify_generators, ClassifyOptions, Generator, GroupKind,
    SymmetryGroup,
};
pub use transform::{
    diagonal_pushforward, is_automorphism, ok_model_automorphism, pushforward, InitialData,
};
