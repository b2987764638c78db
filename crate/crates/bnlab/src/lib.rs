//! Exact-arithmetic toolkit for the Brill-Noether stratification of the
//! moduli of curves through polarized K3 surfaces: Brill-Noether numbers and
//! Clifford indices, rank-2 Picard lattices with exact representability,
//! lift-candidate enumeration and exclusion, terminal-filtration degree
//! bounds, secant-space numerology, and a replay engine for the per-genus
//! non-containment arguments.
//!
//! All arithmetic is exact: integers are 128-bit checked, bounds are
//! rationals, and square roots only ever appear through integer square
//! roots. The single deliberately bounded procedure is the nef check, which
//! records its search cap.

pub mod arith;
pub mod bn;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod lifting;

pub use bn::{
    classify, clifford_gamma, conjectured_maximal_loci, expected_maximal_loci,
    general_clifford_index, generic_gonality, hodge_delta, region_samples, rho, rho_pflueger,
    serre_adjoint, submaximal_gonality, LinearSeries, Rat, RegionSample, SeriesClassification,
};
pub use error::{Error, Result};
pub use geometry::{
    berzolari_trisecants, plane_double_points, projected_series, scan_unexpected_containments,
    secant_expected_dim, SecantConfig, SecantHit,
};
pub use lattice::{
    gram_of, Embedding, GramLattice2, LatticeVector, NefReport, SearchCaps, SurfaceInvariants,
};
pub use lifting::{
    admissible_filtrations, check_condition, distinguish_pair, dm_threshold, filtration_bound,
    knutsen_counterexample, lm_invariants, moduli_dim, mukai_pairing, potential_dm_lifts,
    quotient_invariants, scan_l2, scan_l2_parallel, stable_c2_lower_bound, strategy_threshold,
    CheckMode, ConditionReport, DistinguishCaps, DmThreshold, FiltrationType, KnutsenExample,
    LiftCandidate, LiftWindow, LmInvariants, MukaiVector, ProofTrace, QuotientInvariants,
    ScanFailure, Strength, Survivor, TraceStep, Verdict,
};
