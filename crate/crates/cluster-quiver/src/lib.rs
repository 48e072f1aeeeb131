//! Combinatorics of cluster-additive functions on stable translation
//! quivers ZΔ.
//!
//! The crate builds the translation quiver of a finite acyclic quiver Δ on
//! demand, extends integer slice data to cluster-additive functions, computes
//! hammock and cluster-hammock functions, enumerates and mutates tilting
//! sets, decomposes cluster-additive functions into non-negative combinations
//! of cluster-hammock functions, and ships exhaustive scan and law-checking
//! harnesses for desk-scale verification.
//!
//! All arithmetic is exact. Overflowing `i64` is a hard error (panic), never
//! a wraparound.

pub mod cluster;
pub mod decompose;
pub mod dot;
pub mod error;
pub mod facts;
pub mod hammock;
pub mod laws;
pub mod quiver;
pub mod rng;
pub mod tilting;
pub mod tsv;

pub use cluster::{
    check_additive, check_cluster_additive, compatible, difference, leq, neg_part, pos_part, sum,
    ClusterFunction, MeshViolation, SliceAssignment,
};
pub use decompose::{
    conjecture_properties, conjecture_scan, decompose, scan_anchor_count, scan_range,
    DecomposeStatus, Decomposition, PropertyReport, ScanOutcome,
};
pub use error::{Error, Result};
pub use hammock::{
    check_f_invariance, cluster_hammock, default_hammock_budget, left_hammock, nakayama,
    HammockTable, ShiftMaps,
};
pub use laws::{
    negative_neighbor, rectangle_check, run_rectangle_trials, run_wing_trials, wing_check, LawId,
    LawReport, LawTrialSummary, RectVariant,
};
pub use quiver::{DynkinType, QuiverSpec, Window, ZVertex};
pub use tilting::{
    d_t, enumerate_tilting_sets, is_confined, is_partial_tilting, mutate, mutation_graph,
    MutationResult, TiltingSet,
};
