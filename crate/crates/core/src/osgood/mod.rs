//! Where a pointwise limit of holomorphic functions is holomorphic: Baire
//! level sets, dense balls, diagonal subsequences, the cell classifier and
//! the boundedness and growth checks.

pub mod baire;
pub mod bounds;
pub mod classify;
pub mod montel;

pub use baire::{bounded_index_map, find_dense_ball, BaireDecomposition, DenseBall, DEFAULT_K_CAP};
pub use bounds::{check_uniform_bound, schlicht_growth_check, GrowthCheck, UniformBoundReport};
pub use classify::{
    classify_holomorphy, uniform_cauchy_deviation, CellMap, CellReport, ClassifierParams,
    HolomorphyMap, Property, Verdict,
};
pub use montel::{montel_diagonal, DiagonalSubsequence, DEFAULT_MIN_TAIL};
