//! Sandwich extension engine for finite dimensions.
//!
//! Given a sublinear upper bound `S`, a superlinear lower bound `P`, and a
//! linear functional `f0` prescribed on a subspace `M` of `R^n`, this crate
//! decides whether a linear `L` with `L = f0` on `M` and `P <= L <= S`
//! everywhere exists, and constructs one with machine-checkable evidence
//! when it does. The decision runs through the convolution bound
//! `T(x) = inf_y S(x + y) - P(y)`, which is the exact upper envelope of all
//! sandwiched functionals.
//!
//! Polyhedral bounds are decided exactly by small linear programs over
//! generator hulls; norm-shaped bounds go through seeded descent with
//! extrapolation. A grid oracle recomputes the same quantities by exhaustive
//! search for independent cross-checking, and a random instance generator
//! produces problems whose feasibility is known by construction.

pub mod error;
pub mod extension;
pub mod functional;
pub mod infconv;
pub mod lp;
pub mod minimize;
pub mod oracle;
pub mod problem;
pub mod sample;
pub mod scenarios;
pub mod subspace;
pub mod vector;

pub use error::Error;
pub use extension::{
    choose_xi, classical_extend_sublinear, classical_extend_superlinear, extend_full,
    extend_one_step, interval_bounds, verify_sandwich, verify_sandwich_margins,
    ExtensionInterval, ExtensionStep, SandwichCertificate, XiPolicy,
};
pub use functional::{
    check_axioms, FunctionalClass, FunctionalForm, FunctionalSpec, LinearFunctional,
    PropertyReport,
};
pub use infconv::{
    check_condition_41, check_condition_42, check_condition_43, compute_t, compute_t_exact,
    compute_t_numeric, exact_extension_witness, run_checks, Attainment, BindingSide,
    CheckOptions, ConditionId, ConditionReport, TLevel, TMethod, TValue,
};
pub use oracle::{
    brute_force_bounds, brute_force_t, generate_instance, GridSpec, RandomInstance,
};
pub use problem::{BasisDef, ProblemFile, ResolvedProblem, SpecDef};
pub use sample::VectorSampler;
pub use subspace::{PartialLinearFunctional, Subspace};
pub use vector::{AmbientSpace, Matrix, Vector};
