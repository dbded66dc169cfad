//! A workbench for binary one-error-correcting codes.
//!
//! The library covers the full pipeline for working with short optimal
//! codes: code objects and metrics ([`code`]), the equivalence group with
//! canonical forms and automorphism groups ([`symmetry`]), the switching
//! operation ([`switching`]), a generic exact-cover solver ([`cover`]),
//! extendability of codes to 1-perfect codes ([`lengthening`]), and
//! isomorph-free classification pipelines ([`classify`]).
//!
//! Two (13,512,3) codes with automorphism groups of orders 128 and 96 ship
//! in `data/` in compressed orbit form; they are optimal yet cannot be
//! extended to perfect codes of length 15 — that is, they are not doubly
//! shortened perfect codes. The `examples/` directory has one runnable
//! walk-through per capability; the `optcodes` binary exposes the same
//! operations as subcommands.

pub mod classify;
pub mod cli;
pub mod code;
pub mod cover;
pub mod lengthening;
pub mod switching;
pub mod symmetry;

pub use code::{
    brute_force_optimal, hamming7, max_code_size, Code, CodeError, CodeParams, Codeword,
};
pub use cover::{
    count, enumerate, solve_exists, verify_cover, CoverError, CoverSolution, ExactCoverInstance,
};
pub use lengthening::{
    count_extensions, count_perfect, enumerate_perfect, extensions, is_shortened_perfect,
    ExtendError, ExtensionInstance, ExtensionProblem,
};
pub use switching::{
    flip_coordinate_on, switch, switch_neighbors, switch_neighbors_deduped, switching_class,
    switching_graph, SwitchError, SwitchingClassEntry, SwitchingClassScan, SwitchingGraph,
};
pub use symmetry::{
    are_equivalent, automorphism_group, automorphism_group_budgeted, canonical_form,
    canonical_form_exhaustive, closure, closure_with_cap, compose, equivalence_witness,
    expand_orbits, AutGroup, CanonicalForm, Group, OrbitSpec, SignedPermutation, SymmetryError,
};
