//! Candidates, rankings, weighted ballots and manipulation instances.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Upper bound on the total weight of an election (non-manipulators plus
/// manipulators). Keeps every majority margin and every `margin ± W` term
/// well inside `i64`.
pub const WEIGHT_CAP: i64 = i64::MAX / 4;

pub(crate) fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && label
            .chars()
            .all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '-')
}

/// Ordered set of candidate labels. The index order is the canonical
/// tie-break order used everywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl CandidateSet {
    pub fn new<I, S>(labels: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(ModelError::NoCandidates);
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if !is_valid_label(label) {
                return Err(ModelError::InvalidLabel(label.clone()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(ModelError::DuplicateLabel(label.clone()));
            }
        }
        Ok(CandidateSet { labels, index })
    }

    /// Candidates labelled `c0`, `c1`, ...
    pub fn numbered(m: usize) -> Result<Self, ModelError> {
        Self::new((0..m).map(|i| format!("c{i}")))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Always false; a candidate set holds at least one candidate.
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn check_index(&self, index: usize) -> Result<(), ModelError> {
        if index < self.len() {
            Ok(())
        } else {
            Err(ModelError::IndexOutOfRange { index, m: self.len() })
        }
    }
}

/// A strict total order over candidates, stored as a rank per candidate
/// index: ranks are `1..=m` and a larger rank means more preferred.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ranking {
    rank: Vec<usize>,
}

impl Ranking {
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self, ModelError> {
        let m = rank.len();
        if m == 0 {
            return Err(ModelError::NoCandidates);
        }
        let mut seen = vec![false; m];
        for &r in &rank {
            if r == 0 || r > m {
                return Err(ModelError::InvalidRanking {
                    m,
                    reason: format!("rank {r} out of 1..={m}"),
                });
            }
            if std::mem::replace(&mut seen[r - 1], true) {
                return Err(ModelError::InvalidRanking {
                    m,
                    reason: format!("rank {r} used twice"),
                });
            }
        }
        Ok(Ranking { rank })
    }

    /// Builds a ranking from candidate indices listed most-preferred-first.
    pub fn from_order(order: &[usize]) -> Result<Self, ModelError> {
        let m = order.len();
        if m == 0 {
            return Err(ModelError::NoCandidates);
        }
        let mut rank = vec![0; m];
        for (pos, &cand) in order.iter().enumerate() {
            if cand >= m {
                return Err(ModelError::IndexOutOfRange { index: cand, m });
            }
            if rank[cand] != 0 {
                return Err(ModelError::InvalidRanking {
                    m,
                    reason: format!("candidate {cand} listed twice"),
                });
            }
            rank[cand] = m - pos;
        }
        Ok(Ranking { rank })
    }

    /// Parses `a > b > c` against a candidate set.
    pub fn parse(text: &str, candidates: &CandidateSet) -> Result<Self, ModelError> {
        let mut order = Vec::with_capacity(candidates.len());
        for part in text.split('>') {
            let label = part.trim();
            let idx = candidates
                .index_of(label)
                .ok_or_else(|| ModelError::UnknownCandidate(label.to_string()))?;
            order.push(idx);
        }
        if order.len() != candidates.len() {
            return Err(ModelError::RankingSizeMismatch {
                expected: candidates.len(),
                got: order.len(),
            });
        }
        Self::from_order(&order)
    }

    /// The identity order `0 > 1 > ... > m-1`.
    pub fn identity(m: usize) -> Self {
        Ranking {
            rank: (0..m).map(|i| m - i).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, candidate: usize) -> usize {
        self.rank[candidate]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn prefers(&self, x: usize, y: usize) -> bool {
        self.rank[x] > self.rank[y]
    }

    /// Candidate indices, most preferred first.
    pub fn order(&self) -> Vec<usize> {
        let m = self.rank.len();
        let mut order = vec![0; m];
        for (cand, &r) in self.rank.iter().enumerate() {
            order[m - r] = cand;
        }
        order
    }

    pub fn reversed(&self) -> Self {
        let m = self.rank.len();
        Ranking {
            rank: self.rank.iter().map(|&r| m + 1 - r).collect(),
        }
    }

    pub fn display<'a>(&'a self, candidates: &'a CandidateSet) -> RankingDisplay<'a> {
        RankingDisplay {
            ranking: self,
            candidates,
        }
    }
}

/// Formats a ranking as `a > b > c`.
pub struct RankingDisplay<'a> {
    ranking: &'a Ranking,
    candidates: &'a CandidateSet,
}

impl fmt::Display for RankingDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, cand) in self.ranking.order().into_iter().enumerate() {
            if i > 0 {
                f.write_str(" > ")?;
            }
            f.write_str(self.candidates.label(cand))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedBallot {
    pub ranking: Ranking,
    pub weight: i64,
}

impl WeightedBallot {
    pub fn new(ranking: Ranking, weight: i64) -> Result<Self, ModelError> {
        if weight < 1 {
            return Err(ModelError::ZeroWeight);
        }
        Ok(WeightedBallot { ranking, weight })
    }
}

/// Candidates plus the (possibly empty) list of weighted ballots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedProfile {
    candidates: CandidateSet,
    ballots: Vec<WeightedBallot>,
    total_weight: i64,
}

impl WeightedProfile {
    pub fn new(candidates: CandidateSet, ballots: Vec<WeightedBallot>) -> Result<Self, ModelError> {
        let mut total: i64 = 0;
        for ballot in &ballots {
            if ballot.ranking.len() != candidates.len() {
                return Err(ModelError::RankingSizeMismatch {
                    expected: candidates.len(),
                    got: ballot.ranking.len(),
                });
            }
            if ballot.weight < 1 {
                return Err(ModelError::ZeroWeight);
            }
            total = total
                .checked_add(ballot.weight)
                .filter(|&t| t <= WEIGHT_CAP)
                .ok_or(ModelError::WeightCapacity { cap: WEIGHT_CAP })?;
        }
        Ok(WeightedProfile {
            candidates,
            ballots,
            total_weight: total,
        })
    }

    pub fn candidates(&self) -> &CandidateSet {
        &self.candidates
    }

    pub fn ballots(&self) -> &[WeightedBallot] {
        &self.ballots
    }

    pub fn total_weight(&self) -> i64 {
        self.total_weight
    }

    /// Returns a copy with one more ballot appended.
    pub fn with_ballot(&self, ballot: WeightedBallot) -> Result<Self, ModelError> {
        let mut ballots = self.ballots.clone();
        ballots.push(ballot);
        Self::new(self.candidates.clone(), ballots)
    }
}

/// Winner model for the manipulation goal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The target must be the only Schulze winner.
    Unique,
    /// The target must be among the Schulze winners.
    Cowinner,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Unique => "unique",
            Mode::Cowinner => "cowinner",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Non-manipulator profile, manipulator weights, target candidate and mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManipulationInstance {
    profile: WeightedProfile,
    manipulator_weights: Vec<i64>,
    target: usize,
    mode: Mode,
}

impl ManipulationInstance {
    pub fn new(
        profile: WeightedProfile,
        manipulator_weights: Vec<i64>,
        target: usize,
        mode: Mode,
    ) -> Result<Self, ModelError> {
        profile.candidates().check_index(target)?;
        let mut total = profile.total_weight();
        for &w in &manipulator_weights {
            if w < 1 {
                return Err(ModelError::ZeroWeight);
            }
            total = total
                .checked_add(w)
                .filter(|&t| t <= WEIGHT_CAP)
                .ok_or(ModelError::WeightCapacity { cap: WEIGHT_CAP })?;
        }
        Ok(ManipulationInstance {
            profile,
            manipulator_weights,
            target,
            mode,
        })
    }

    pub fn profile(&self) -> &WeightedProfile {
        &self.profile
    }

    pub fn candidates(&self) -> &CandidateSet {
        self.profile.candidates()
    }

    pub fn manipulator_weights(&self) -> &[i64] {
        &self.manipulator_weights
    }

    /// Total manipulator weight `W`.
    pub fn manipulator_total(&self) -> i64 {
        self.manipulator_weights.iter().sum()
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        ManipulationInstance { mode, ..self.clone() }
    }
}
