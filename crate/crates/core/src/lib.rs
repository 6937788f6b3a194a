//! CSS quantum codes from classical linear codes.
//!
//! This crate builds classical linear codes over small finite fields,
//! computes their exact minimum distances, constructs quadratic-residue
//! code families, and assembles nested pairs into CSS quantum codes whose
//! parameters can then be propagated through length-reduction rules.
//!
//! The modules, bottom up:
//!
//! * [`gf`]: exact GF(p^m) arithmetic and quadratic-residue tests.
//! * [`matrix`] and [`code`]: generator matrices in canonical reduced row
//!   echelon form, duals, shortening, puncturing, and a text format for
//!   interchange.
//! * [`mindist`]: exhaustive and Brouwer-Zimmermann minimum-weight engines
//!   with enumeration budgets, plus relative (coset) minimum weights.
//! * [`qr`]: quadratic-residue cyclic codes, their extensions, and the
//!   projective-line involution used to pick reduction coordinates.
//! * [`css`]: the CSS construction, distance bookkeeping with
//!   verified/lower-bound provenance, the reduction rules, derivation
//!   chains, and replayable traces.
//!
//! ```
//! use cssprop::{quantum_qr, Engine, Field, MinDistOptions};
//!
//! let gf2 = Field::new(2, 1).unwrap();
//! let code = quantum_qr(7, &gf2, true).unwrap();
//! let code = code.compute_distances(Engine::Brute, &MinDistOptions::default()).unwrap();
//! assert_eq!(code.params().unwrap().to_string(), "[[8,0,4]]_2");
//! ```

pub mod code;
pub mod css;
pub mod gf;
pub mod matrix;
pub mod mindist;
pub mod qr;

#[cfg(test)]
pub(crate) mod fixtures;

pub use code::{weight, CodeError, LinearCode};
pub use css::{
    derive_chain, quantum_qr, replay, singleton_check, ChainConfig, ChainEntry, ChainOutcome,
    ChainRule, CssCode, CssError, CssSnapshot, PropagationTrace, QuantumParams, RuleKind,
    SingletonSlack, TraceStep, VerifyConfig,
};
pub use gf::{is_quadratic_residue, Field, FieldElement, FieldError};
pub use matrix::Matrix;
pub use mindist::{
    min_weight, min_weight_brute, min_weight_bz, relative_min_weight, DistanceError, DistanceKind,
    DistanceMethod, DistanceValue, Engine, EnumerationBudget, MinDistOptions,
};
pub use qr::{extend_qr, involution_plan, qr_family, InvolutionPlan, QrError, QrFamily};
