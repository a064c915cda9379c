//! Enumeration of distinct optimal and approximately optimal Kemeny rankings.
//!
//! Five parameterized algorithms share one output contract, a
//! [`ScoredRankingList`]: distinct rankings ordered by Kemeny score with ties
//! broken by the lexicographic order of the candidate sequence.
//!
//! | Algorithm | Parameter it is exponential in |
//! |-----------|--------------------------------|
//! | [`Algorithm::Branch`] | target score `k` |
//! | [`Algorithm::SubsetDp`] | number of candidates `m` |
//! | [`Algorithm::WindowD`] | average KT distance `d` |
//! | [`Algorithm::WindowRange`] | maximum range |
//! | [`Algorithm::PathwidthDp`] | unanimity width |
//!
//! ```
//! use kemeny_core::{solve, Algorithm, Mode, Profile, SolveRequest};
//!
//! let profile = Profile::from_orders([vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
//! let req = SolveRequest::new(&profile, 5, Mode::Opt, Algorithm::SubsetDp);
//! let out = solve(&req).unwrap();
//! assert_eq!(out.rankings.scores(), vec![4, 4, 4]);
//! ```
//!
//! The [`parameters`] module computes the structural parameters of a profile,
//! [`mallows`] samples synthetic profiles and [`experiments`] runs the
//! parameter sweep over dispersion and voter count.

pub mod decomposition;
pub mod error;
pub mod experiments;
pub mod format;
pub mod mallows;
pub mod model;
pub mod parameters;
pub mod solvers;
pub mod verify;

pub use error::{Error, Result};
pub use model::{
    kemeny_score, kt_distance, pairwise_costs, CandidateId, PairwiseCosts, Profile, Ranking,
    ScoredRanking, ScoredRankingList,
};
pub use parameters::{parameter_report, respects_unanimity, unanimity_order, ParameterReport};
pub use solvers::{solve, Algorithm, KOptSearch, Lambda, Mode, Solution, SolveRequest};

/// Size guards for the exponential routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest `m` for the `2^m` subset DPs (pathwidth, decomposition, subset solver).
    pub max_subset_candidates: usize,
    /// Largest `m` for full `m!` enumeration.
    pub max_brute_candidates: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_subset_candidates: 20,
            max_brute_candidates: 8,
        }
    }
}
