//! Constructive weighted coalitional manipulation for Schulze voting.
//!
//! [`solve_wcm`] runs the whole pipeline: margins of the non-manipulators,
//! the fixed-point bound function, the manipulability test and, on a yes
//! answer, one ballot that every manipulator casts. The ballot is checked by
//! recomputing the election before it is returned.

mod bounds;
mod construct;

pub use bounds::{
    compute_bound_u, compute_bound_u_traced, decide_manipulable, rule_application_limit, Bound, BoundFunction, Rule,
    RuleStep,
};
pub use construct::{
    build_admissible_graph, construct_manipulator_vote, spanning_arborescence, AdmissibleGraph, Arborescence,
};

use crate::error::SolverError;
use crate::exec::{self, Strategy};
use crate::majority::{build_majority_graph, overlay_identical_manipulators};
use crate::model::{ManipulationInstance, Mode, Ranking};
use crate::schulze::{is_unique_winner, is_winner};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManipulationOutcome {
    pub mode: Mode,
    pub manipulable: bool,
    /// The ranking every manipulator casts. Absent on a no answer and when
    /// there are no manipulators (except with a single candidate).
    pub vote: Option<Ranking>,
    pub bounds: BoundFunction,
    pub rule_applications: u64,
}

pub fn solve_wcm(instance: &ManipulationInstance) -> Result<ManipulationOutcome, SolverError> {
    let graph = build_majority_graph(instance.profile())?;
    let target = instance.target();
    let mode = instance.mode();
    let w = instance.manipulator_total();
    let m = graph.len();

    let bounds = compute_bound_u(&graph, target, w, mode)?;
    let rule_applications = bounds.rule_applications();
    let finish = |manipulable, vote| ManipulationOutcome {
        mode,
        manipulable,
        vote,
        bounds: bounds.clone(),
        rule_applications,
    };

    if m == 1 {
        return Ok(finish(true, Some(Ranking::identity(1))));
    }
    if w == 0 {
        let wins = match mode {
            Mode::Unique => is_unique_winner(&graph, target),
            Mode::Cowinner => is_winner(&graph, target),
        };
        return Ok(finish(wins, None));
    }
    if !decide_manipulable(&graph, &bounds) {
        return Ok(finish(false, None));
    }

    let admissible = build_admissible_graph(&graph, &bounds);
    let tree = spanning_arborescence(&admissible)?;
    let vote = construct_manipulator_vote(&tree, &bounds)?;
    if !verify_manipulation(instance, &vote)? {
        return Err(SolverError::Invariant(format!(
            "constructed ballot does not make candidate {target} win in {mode} mode"
        )));
    }
    Ok(finish(true, Some(vote)))
}

/// Whether every manipulator casting `vote` makes the target win (alone in
/// unique mode).
pub fn verify_manipulation(instance: &ManipulationInstance, vote: &Ranking) -> Result<bool, SolverError> {
    let base = build_majority_graph(instance.profile())?;
    let combined = overlay_identical_manipulators(&base, vote, instance.manipulator_total())?;
    let c = instance.target();
    Ok(match instance.mode() {
        Mode::Unique => is_unique_winner(&combined, c),
        Mode::Cowinner => is_winner(&combined, c),
    })
}

/// Solves independent instances, in parallel when the strategy allows.
pub fn solve_batch(
    instances: &[ManipulationInstance],
    strategy: Strategy,
) -> Vec<Result<ManipulationOutcome, SolverError>> {
    exec::map_ordered(strategy, instances, solve_wcm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CandidateSet, WeightedBallot, WeightedProfile};

    fn instance(
        labels: &[&str],
        ballots: &[(i64, &[usize])],
        manipulators: &[i64],
        target: usize,
        mode: Mode,
    ) -> ManipulationInstance {
        let cands = CandidateSet::new(labels.iter().copied()).unwrap();
        let ballots = ballots
            .iter()
            .map(|(w, order)| WeightedBallot::new(Ranking::from_order(order).unwrap(), *w).unwrap())
            .collect();
        let profile = WeightedProfile::new(cands, ballots).unwrap();
        ManipulationInstance::new(profile, manipulators.to_vec(), target, mode).unwrap()
    }

    #[test]
    fn yes_instance_returns_verified_vote() {
        let inst = instance(&["c", "x", "y"], &[(1, &[0, 1, 2])], &[2], 0, Mode::Unique);
        let out = solve_wcm(&inst).unwrap();
        assert!(out.manipulable);
        assert_eq!(
            out.bounds.values(),
            &[Bound::Infinite, Bound::Finite(3), Bound::Finite(3)]
        );
        let vote = out.vote.unwrap();
        assert_eq!(vote.order(), vec![0, 1, 2]);
        assert!(verify_manipulation(&inst, &vote).unwrap());
        assert!(!verify_manipulation(&inst, &vote.reversed()).unwrap());
    }

    #[test]
    fn no_instance() {
        let inst = instance(&["a", "c"], &[(3, &[0, 1])], &[1], 1, Mode::Unique);
        let out = solve_wcm(&inst).unwrap();
        assert!(!out.manipulable);
        assert_eq!(out.vote, None);
        assert_eq!(out.bounds.get(0), Bound::Finite(-2));
    }

    #[test]
    fn lone_manipulator_dictates() {
        let inst = instance(&["a", "c"], &[], &[1], 1, Mode::Unique);
        let out = solve_wcm(&inst).unwrap();
        assert!(out.manipulable);
        assert_eq!(out.vote.unwrap().order(), vec![1, 0]);
    }

    #[test]
    fn no_manipulators_checks_current_winner() {
        let inst = instance(&["a", "b"], &[(1, &[0, 1])], &[], 0, Mode::Unique);
        let out = solve_wcm(&inst).unwrap();
        assert!(out.manipulable);
        assert_eq!(out.vote, None);
        let out = solve_wcm(&inst.with_mode(Mode::Cowinner)).unwrap();
        assert!(out.manipulable);
        let tied = instance(&["a", "b"], &[], &[], 1, Mode::Unique);
        assert!(!solve_wcm(&tied).unwrap().manipulable);
        assert!(solve_wcm(&tied.with_mode(Mode::Cowinner)).unwrap().manipulable);
    }

    #[test]
    fn single_candidate_is_trivial() {
        let inst = instance(&["a"], &[(2, &[0])], &[1], 0, Mode::Unique);
        let out = solve_wcm(&inst).unwrap();
        assert!(out.manipulable);
        assert_eq!(out.vote, Some(Ranking::identity(1)));
        assert!(verify_manipulation(&inst, &Ranking::identity(1)).unwrap());
    }

    #[test]
    fn tie_separates_modes() {
        let inst = instance(&["a", "c"], &[(1, &[0, 1])], &[1], 1, Mode::Unique);
        assert!(!solve_wcm(&inst).unwrap().manipulable);
        let co = solve_wcm(&inst.with_mode(Mode::Cowinner)).unwrap();
        assert!(co.manipulable);
        assert_eq!(co.vote.unwrap().order(), vec![1, 0]);
    }

    #[test]
    fn batch_strategies_agree() {
        let insts: Vec<_> = (0..3)
            .map(|t| {
                instance(
                    &["a", "b", "c"],
                    &[(2, &[0, 1, 2]), (1, &[2, 1, 0])],
                    &[1, 1],
                    t,
                    Mode::Unique,
                )
            })
            .collect();
        let seq = solve_batch(&insts, Strategy::Sequential);
        let par = solve_batch(&insts, Strategy::Parallel);
        assert_eq!(seq, par);
        assert_eq!(seq.len(), 3);
    }
}
