//! Schulze winner determination and constructive weighted coalitional
//! manipulation.
//!
//! Given the weighted ballots of the honest voters, the weights of a
//! coalition of manipulators and a target candidate, [`solve_wcm`] decides
//! in polynomial time whether the coalition can make the target a Schulze
//! winner (alone, or possibly tied) and, if so, returns one ranking that all
//! manipulators cast. [`oracle::brute_force_wcm`] answers the same question
//! by exhaustive search on small instances.
//!
//! The `parallel` feature (on by default) runs the data-parallel loops on
//! rayon; see [`Strategy`].

pub mod cli;
pub mod error;
pub mod exec;
pub mod io;
pub mod majority;
pub mod model;
pub mod oracle;
pub mod random;
pub mod schulze;
pub mod solver;

pub use error::{ModelError, OracleError, ParseError, SolverError};
pub use exec::Strategy;
pub use majority::{build_majority_graph, overlay_identical_manipulators, MajorityGraph};
pub use model::{CandidateSet, ManipulationInstance, Mode, Ranking, WeightedBallot, WeightedProfile, WEIGHT_CAP};
pub use schulze::{is_unique_winner, is_winner, path_strength_matrix, schulze_winners, StrengthMatrix};
pub use solver::{solve_batch, solve_wcm, verify_manipulation, Bound, BoundFunction, ManipulationOutcome};
