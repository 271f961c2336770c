//! The election file format and result rendering.
//!
//! ```text
//! # comment
//! candidates: a b c
//! ballot 3: a > b > c
//! manipulators: 1 2
//! target: c
//! ```
//!
//! One directive per line; `#` starts a comment and blank lines are skipped.
//! `candidates` must come before any other directive.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{ModelError, ParseError};
use crate::model::{
    is_valid_label, CandidateSet, ManipulationInstance, Mode, Ranking, WeightedBallot, WeightedProfile,
};
use crate::schulze::StrengthMatrix;
use crate::solver::ManipulationOutcome;

/// A parsed election file. `manipulators` and `target` are optional so the
/// same format describes plain elections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElectionFile {
    pub profile: WeightedProfile,
    pub manipulators: Option<Vec<i64>>,
    pub target: Option<usize>,
}

impl ElectionFile {
    pub fn from_instance(instance: &ManipulationInstance) -> Self {
        ElectionFile {
            profile: instance.profile().clone(),
            manipulators: Some(instance.manipulator_weights().to_vec()),
            target: Some(instance.target()),
        }
    }

    pub fn candidates(&self) -> &CandidateSet {
        self.profile.candidates()
    }

    pub fn into_instance(self, mode: Mode) -> Result<ManipulationInstance, ParseError> {
        let target = self
            .target
            .ok_or_else(|| ParseError::global("a manipulation needs a `target:` line"))?;
        let manipulators = self.manipulators.unwrap_or_default();
        ManipulationInstance::new(self.profile, manipulators, target, mode)
            .map_err(|e| ParseError::global(e.to_string()))
    }

    /// Canonical text form; parsing it gives back an equal value.
    pub fn to_text(&self) -> String {
        let cands = self.candidates();
        let mut out = format!("candidates: {}\n", cands.labels().join(" "));
        for ballot in self.profile.ballots() {
            let _ = writeln!(out, "ballot {}: {}", ballot.weight, ballot.ranking.display(cands));
        }
        if let Some(weights) = &self.manipulators {
            out.push_str("manipulators:");
            for w in weights {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        if let Some(t) = self.target {
            let _ = writeln!(out, "target: {}", cands.label(t));
        }
        out
    }
}

pub fn parse_election_file(text: &str) -> Result<ElectionFile, ParseError> {
    let mut candidates: Option<CandidateSet> = None;
    let mut ballots = Vec::new();
    let mut manipulators: Option<(usize, Vec<i64>)> = None;
    let mut target: Option<(usize, String)> = None;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| ParseError::at(line_no, format!("expected `<directive>: ...`, got {line:?}")))?;
        let head = head.trim();
        let rest = rest.trim();

        if head == "candidates" {
            if candidates.is_some() {
                return Err(ParseError::at(line_no, "repeated `candidates:` line"));
            }
            let labels: Vec<&str> = rest.split_whitespace().collect();
            if let Some(bad) = labels.iter().find(|l| !is_valid_label(l)) {
                return Err(ParseError::at(line_no, format!("invalid candidate label {bad:?}")));
            }
            let set = CandidateSet::new(labels).map_err(|e| match e {
                ModelError::DuplicateLabel(l) => ParseError::at(line_no, format!("duplicate candidate label {l:?}")),
                other => ParseError::at(line_no, other.to_string()),
            })?;
            candidates = Some(set);
            continue;
        }

        let cands = candidates
            .as_ref()
            .ok_or_else(|| ParseError::at(line_no, "the `candidates:` line must come first"))?;

        if let Some(weight) = head.strip_prefix("ballot") {
            let weight = parse_weight(weight.trim(), line_no)?;
            let ranking = parse_ballot_ranking(rest, cands, line_no)?;
            ballots.push(WeightedBallot::new(ranking, weight).map_err(|e| ParseError::at(line_no, e.to_string()))?);
        } else if head == "manipulators" {
            if manipulators.is_some() {
                return Err(ParseError::at(line_no, "repeated `manipulators:` line"));
            }
            let weights = rest
                .split_whitespace()
                .map(|w| parse_weight(w, line_no))
                .collect::<Result<Vec<_>, _>>()?;
            manipulators = Some((line_no, weights));
        } else if head == "target" {
            if target.is_some() {
                return Err(ParseError::at(line_no, "repeated `target:` line"));
            }
            if cands.index_of(rest).is_none() {
                return Err(ParseError::at(line_no, format!("unknown candidate {rest:?}")));
            }
            target = Some((line_no, rest.to_string()));
        } else {
            return Err(ParseError::at(line_no, format!("unknown directive {head:?}")));
        }
    }

    let candidates = candidates.ok_or_else(|| ParseError::global("missing `candidates:` line"))?;
    if let (Some((line_no, _)), None) = (&target, &manipulators) {
        return Err(ParseError::at(
            *line_no,
            "`target:` given without a `manipulators:` line",
        ));
    }
    let target = target.map(|(_, label)| candidates.index_of(&label).expect("checked while parsing"));
    let manipulators = manipulators.map(|(_, w)| w);
    let profile = WeightedProfile::new(candidates, ballots).map_err(|e| ParseError::global(e.to_string()))?;
    if let Some(weights) = &manipulators {
        let total = weights
            .iter()
            .try_fold(profile.total_weight(), |acc, &w| acc.checked_add(w))
            .filter(|&t| t <= crate::model::WEIGHT_CAP);
        if total.is_none() {
            return Err(ParseError::global(
                ModelError::WeightCapacity {
                    cap: crate::model::WEIGHT_CAP,
                }
                .to_string(),
            ));
        }
    }
    Ok(ElectionFile {
        profile,
        manipulators,
        target,
    })
}

fn parse_weight(text: &str, line_no: usize) -> Result<i64, ParseError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::at(
            line_no,
            format!("weight {text:?} is not a decimal integer"),
        ));
    }
    let weight: i64 = text
        .parse()
        .map_err(|_| ParseError::at(line_no, format!("weight {text} is too large")))?;
    if weight < 1 {
        return Err(ParseError::at(line_no, format!("weight {weight} is less than 1")));
    }
    Ok(weight)
}

/// Parses `a > b > c`, requiring every candidate exactly once.
pub fn parse_ballot_ranking(text: &str, cands: &CandidateSet, line_no: usize) -> Result<Ranking, ParseError> {
    let mut seen = vec![false; cands.len()];
    let mut order = Vec::with_capacity(cands.len());
    for part in text.split('>') {
        let label = part.trim();
        let idx = cands
            .index_of(label)
            .ok_or_else(|| ParseError::at(line_no, format!("unknown candidate {label:?}")))?;
        if std::mem::replace(&mut seen[idx], true) {
            return Err(ParseError::at(line_no, format!("repeated candidate {label:?}")));
        }
        order.push(idx);
    }
    if order.len() != cands.len() {
        let missing: Vec<&str> = (0..cands.len()).filter(|&i| !seen[i]).map(|i| cands.label(i)).collect();
        return Err(ParseError::at(
            line_no,
            format!("incomplete ranking, missing {}", missing.join(", ")),
        ));
    }
    Ranking::from_order(&order).map_err(|e| ParseError::at(line_no, e.to_string()))
}

/// Labels most-preferred-first.
pub fn vote_labels(vote: &Ranking, cands: &CandidateSet) -> Vec<String> {
    vote.order().into_iter().map(|i| cands.label(i).to_string()).collect()
}

pub fn render_winners(cands: &CandidateSet, winners: &[usize]) -> String {
    let labels: Vec<&str> = winners.iter().map(|&w| cands.label(w)).collect();
    format!("winners: {}\n", labels.join(" "))
}

/// Strength table with rows as sources; the diagonal shows `-`.
pub fn render_strengths(strengths: &StrengthMatrix) -> String {
    let cands = strengths.candidates();
    let m = cands.len();
    let cell = |x: usize, y: usize| {
        if x == y {
            "-".to_string()
        } else {
            strengths.get(x, y).to_string()
        }
    };
    let width = (0..m)
        .flat_map(|x| (0..m).map(move |y| (x, y)))
        .map(|(x, y)| cell(x, y).len())
        .chain(cands.labels().iter().map(String::len))
        .max()
        .unwrap_or(1);
    let mut out = String::from("strengths:\n");
    let _ = write!(out, "{:>width$}", "");
    for label in cands.labels() {
        let _ = write!(out, " {label:>width$}");
    }
    out.push('\n');
    for x in 0..m {
        let _ = write!(out, "{:>width$}", cands.label(x));
        for y in 0..m {
            let _ = write!(out, " {:>width$}", cell(x, y));
        }
        out.push('\n');
    }
    out
}

pub fn verdict_word(manipulable: bool) -> &'static str {
    if manipulable {
        "MANIPULABLE"
    } else {
        "NOT MANIPULABLE"
    }
}

pub fn render_outcome_text(outcome: &ManipulationOutcome, cands: &CandidateSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "mode: {}", outcome.mode);
    let _ = writeln!(out, "result: {}", verdict_word(outcome.manipulable));
    match &outcome.vote {
        Some(vote) => {
            let _ = writeln!(out, "vote: {}", vote.display(cands));
        }
        None => out.push_str("vote: none\n"),
    }
    for (i, u) in outcome.bounds.values().iter().enumerate() {
        let _ = writeln!(out, "U({}) = {}", cands.label(i), u);
    }
    let _ = writeln!(out, "rule applications: {}", outcome.rule_applications);
    out
}

#[derive(Serialize)]
struct OutcomeJson {
    mode: Mode,
    manipulable: bool,
    vote: Option<Vec<String>>,
    #[serde(rename = "U")]
    bounds: Map<String, Value>,
    #[serde(rename = "ruleApplications")]
    rule_applications: u64,
}

/// `{"mode", "manipulable", "vote", "U", "ruleApplications"}`, with `U`
/// keyed by label in candidate order and `"inf"` for the target.
pub fn render_outcome_json(outcome: &ManipulationOutcome, cands: &CandidateSet) -> String {
    let bounds = outcome
        .bounds
        .values()
        .iter()
        .enumerate()
        .map(|(i, u)| {
            (
                cands.label(i).to_string(),
                serde_json::to_value(u).expect("bounds serialize"),
            )
        })
        .collect();
    let json = OutcomeJson {
        mode: outcome.mode,
        manipulable: outcome.manipulable,
        vote: outcome.vote.as_ref().map(|v| vote_labels(v, cands)),
        bounds,
        rule_applications: outcome.rule_applications,
    };
    serde_json::to_string_pretty(&json).expect("outcome serializes") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_manipulation_file() {
        let f = parse_election_file("candidates: a c\nballot 1: a > c\nmanipulators: 2\ntarget: c").unwrap();
        assert_eq!(f.candidates().labels(), &["a", "c"]);
        assert_eq!(f.profile.ballots().len(), 1);
        assert_eq!(f.manipulators, Some(vec![2]));
        assert_eq!(f.target, Some(1));
        let inst = f.into_instance(Mode::Unique).unwrap();
        assert_eq!(inst.manipulator_total(), 2);
    }

    #[test]
    fn single_candidate_profile() {
        let f = parse_election_file("candidates: x\n").unwrap();
        assert_eq!(f.candidates().len(), 1);
        assert!(f.profile.ballots().is_empty());
        assert_eq!((f.manipulators, f.target), (None, None));
    }

    #[test]
    fn comments_and_blank_lines() {
        let f = parse_election_file("# header\n\ncandidates: a b   # two\nballot 2: b > a\n").unwrap();
        assert_eq!(f.profile.total_weight(), 2);
    }

    fn err(text: &str) -> ParseError {
        parse_election_file(text).unwrap_err()
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let e = err("candidates: a b\nballot 1: a > a");
        assert_eq!(e.line, Some(2));
        assert!(e.message.contains("repeated candidate"), "{e}");
        assert_eq!(e.to_string(), "line 2: repeated candidate \"a\"");

        assert_eq!(err("candidates: a b\nballot 1: a > z").line, Some(2));
        assert!(err("candidates: a b c\nballot 1: a > b").message.contains("incomplete"));
        assert!(err("candidates: a b\nballot 0: a > b").message.contains("less than 1"));
        assert!(err("candidates: a b\nballot -1: a > b")
            .message
            .contains("not a decimal"));
        assert!(err("candidates: a b\nmanipulators: 1 0")
            .message
            .contains("less than 1"));
        assert_eq!(err("candidates: a a").line, Some(1));
        assert!(err("candidates: a a").message.contains("duplicate"));
        assert!(err("candidates: a b$").message.contains("invalid candidate label"));
        assert_eq!(err("ballot 1: a > b").line, Some(1));
        assert_eq!(err("").line, None);
        assert!(err("# nothing\n").message.contains("missing `candidates:`"));
        let e = err("candidates: a b\ntarget: a");
        assert_eq!(e.line, Some(2));
        assert!(e.message.contains("without"));
        assert!(err("candidates: a b\ntarget: q\nmanipulators: 1")
            .message
            .contains("unknown candidate"));
        assert!(err("candidates: a b\nvoters: 3").message.contains("unknown directive"));
        assert!(err("candidates: a b\ncandidates: a b").message.contains("repeated"));
        assert!(err("candidates: a b\nnonsense").message.contains("expected"));
    }

    #[test]
    fn canonical_text() {
        let text = "candidates: a b c\nballot 3: c > a > b\nmanipulators: 1 2\ntarget: b\n";
        let f = parse_election_file(text).unwrap();
        assert_eq!(f.to_text(), text);
        let bare = parse_election_file("candidates: a b\nmanipulators:\ntarget: a\n").unwrap();
        assert_eq!(bare.to_text(), "candidates: a b\nmanipulators:\ntarget: a\n");
        assert_eq!(parse_election_file(&bare.to_text()).unwrap(), bare);
    }
}
