//! Exhaustive ground truth for small manipulation instances.
//!
//! Enumerates every assignment of rankings to the manipulators (or one
//! shared ranking) and recomputes the Schulze winners for each.

use crate::error::OracleError;
use crate::exec::{self, Strategy};
use crate::majority::{build_majority_graph, MajorityGraph};
use crate::model::{ManipulationInstance, Mode, Ranking};
use crate::schulze::{is_unique_winner, is_winner};

/// Largest search space the oracle accepts.
pub const ORACLE_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleVerdict {
    pub manipulable: bool,
    /// One ranking per manipulator (a single one when identical-only), the
    /// first success in enumeration order.
    pub witness: Option<Vec<Ranking>>,
}

pub fn brute_force_wcm(instance: &ManipulationInstance, identical_only: bool) -> Result<OracleVerdict, OracleError> {
    brute_force_wcm_with(instance, identical_only, Strategy::default())
}

/// Assignments are enumerated as mixed-radix numbers, the first
/// manipulator most significant, each digit indexing rankings in
/// lexicographic order of their rank vectors. A parallel search returns the
/// same (smallest) witness as a sequential one.
pub fn brute_force_wcm_with(
    instance: &ManipulationInstance,
    identical_only: bool,
    strategy: Strategy,
) -> Result<OracleVerdict, OracleError> {
    let m = instance.candidates().len();
    let voters: Vec<i64> = if identical_only {
        match instance.manipulator_total() {
            0 => Vec::new(),
            total => vec![total],
        }
    } else {
        instance.manipulator_weights().to_vec()
    };
    let per_voter = factorial(m);
    let space = checked_space(per_voter, voters.len())?;
    let base = build_majority_graph(instance.profile())?;
    let target = instance.target();
    let mode = instance.mode();

    let succeeds = |index: u64| {
        let rankings = decode_assignment(index, per_voter as u64, voters.len(), m);
        let graph = apply_votes(&base, &rankings, &voters);
        match mode {
            Mode::Unique => is_unique_winner(&graph, target),
            Mode::Cowinner => is_winner(&graph, target),
        }
    };

    let found = exec::find_first_index(strategy, space as u64, succeeds);
    Ok(match found {
        Some(index) => OracleVerdict {
            manipulable: true,
            witness: Some(decode_assignment(index, per_voter as u64, voters.len(), m)),
        },
        None => OracleVerdict {
            manipulable: false,
            witness: None,
        },
    })
}

fn factorial(m: usize) -> u128 {
    (1..=m as u128)
        .try_fold(1u128, |acc, k| acc.checked_mul(k))
        .unwrap_or(u128::MAX)
}

fn checked_space(per_voter: u128, voters: usize) -> Result<u128, OracleError> {
    let mut space: u128 = 1;
    for _ in 0..voters {
        space = space.saturating_mul(per_voter);
        if space > ORACLE_LIMIT {
            return Err(OracleError::TooLarge {
                space,
                limit: ORACLE_LIMIT,
            });
        }
    }
    if per_voter > ORACLE_LIMIT {
        return Err(OracleError::TooLarge {
            space: per_voter,
            limit: ORACLE_LIMIT,
        });
    }
    Ok(space)
}

fn decode_assignment(mut index: u64, per_voter: u64, voters: usize, m: usize) -> Vec<Ranking> {
    let mut digits = vec![0u64; voters];
    for digit in digits.iter_mut().rev() {
        *digit = index % per_voter;
        index /= per_voter;
    }
    digits.into_iter().map(|d| nth_ranking(d, m)).collect()
}

/// The `n`-th permutation of `1..=m` in lexicographic order, read as the
/// rank vector indexed by candidate.
pub fn nth_ranking(mut n: u64, m: usize) -> Ranking {
    let mut pool: Vec<usize> = (1..=m).collect();
    let mut rank = Vec::with_capacity(m);
    for slot in 0..m {
        let block = factorial(m - slot - 1) as u64;
        let pick = (n / block) as usize;
        n %= block;
        rank.push(pool.remove(pick));
    }
    Ranking::from_ranks(rank).expect("lexicographic decoding yields a permutation")
}

fn apply_votes(base: &MajorityGraph, rankings: &[Ranking], weights: &[i64]) -> MajorityGraph {
    let m = base.len();
    let mut rows = base.rows();
    for (ranking, &w) in rankings.iter().zip(weights) {
        for (x, row) in rows.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                if x != y {
                    *cell += if ranking.prefers(x, y) { w } else { -w };
                }
            }
        }
    }
    debug_assert_eq!(rows.len(), m);
    MajorityGraph::from_matrix(base.candidates().clone(), &rows).expect("margins stay within the weight cap")
}
