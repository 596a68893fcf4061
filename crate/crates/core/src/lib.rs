//! Algebraic models of twistor spaces attached to effective `T^2`-actions
//! on `nCP^2`.
//!
//! The pipeline runs from the integer isotropy data of the action to the
//! defining equations of a projective model over `CP^1`:
//!
//! 1. [`lattice`]: validate, normalize and enumerate action sequences.
//! 2. [`surface`]: the smooth toric surface `S` with its `2k` boundary
//!    curves and intersection form.
//! 3. [`fibers`]: invariant fibers of the quotient maps and the model
//!    degree `d = (f_i · f_j)`.
//! 4. [`divisors`]: the integers `m_α` and multiplicities `l_{αβ}^±`.
//! 5. [`model`]: the equations `ξ1ξ2 = P1(λ)`, `ξ3ξ4 = P2(λ)` and their
//!    fiber types.
//!
//! [`report`] strings these together for the command-line tool.

pub mod divisors;
pub mod fibers;
pub mod lattice;
pub mod model;
pub mod poly;
pub mod report;
pub mod surface;

pub use divisors::{half_cycles, solve_divisor_data, HalfCycle, HalfSign, TwistorDivisorData};
pub use fibers::{bimeromorphic_pairs, degree_matrix, invariant_fibers, model_degree, InvariantFiber, QuotientForm};
pub use lattice::{enumerate, normalize, validate, ActionSequence, LatticeVector, PrimitiveVector, UnimodularMatrix};
pub use model::{
    classify_fibers, emit_full_model, emit_open_model_description, emit_reduced_model, system_meta, ConformalRoots,
    FiberClass, FiberKind, FiberLocation, LinearSystemMeta, ModelEquations,
};
pub use poly::Polynomial;
pub use surface::{ComponentDivisor, ToricSurface};
