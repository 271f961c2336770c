//! The bound function `U` and the two lowering rules that define it.
//!
//! For every rival `x` of the target `c`, `U(x)` bounds the strength any
//! successful manipulation can leave on paths from `x` back to `c`. Bounds
//! start at `max margin + W` and only ever go down:
//!
//! * rule 1 lowers `U(x)` to the widest `c`-to-`x` path strength under the
//!   capped weights `min(margin(y, z) + W, U(z))`;
//! * rule 2 copies `U(y)` onto a larger `U(x)` when the manipulators cannot
//!   push `margin(y, x)` below `U(y)` (non-strict in unique mode, strict
//!   in co-winner mode).
//!
//! The loop stops at a common fixed point of both rules.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::SolverError;
use crate::majority::MajorityGraph;
use crate::model::{Mode, WEIGHT_CAP};

/// An integer extended with `+inf`. Only comparisons are defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Finite(i64),
    Infinite,
}

impl Bound {
    pub fn finite(self) -> Option<i64> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Bound::Infinite
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(v) => serializer.serialize_i64(*v),
            Bound::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// Widest-path lowering.
    Widest,
    /// Copy-down along a margin the manipulators cannot overturn. Covers both
    /// the unique-mode and the co-winner variant.
    CopyDown,
}

/// One rule application, as reported to observers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleStep {
    pub rule: Rule,
    pub candidate: usize,
    pub from: i64,
    pub to: i64,
}

/// Fixed-point bounds for one target, `W` and mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundFunction {
    values: Vec<Bound>,
    target: usize,
    mode: Mode,
    manipulator_weight: i64,
    rule_applications: u64,
}

impl BoundFunction {
    pub fn get(&self, candidate: usize) -> Bound {
        self.values[candidate]
    }

    pub fn values(&self) -> &[Bound] {
        &self.values
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn manipulator_weight(&self) -> i64 {
        self.manipulator_weight
    }

    pub fn rule_applications(&self) -> u64 {
        self.rule_applications
    }

    /// `U(x)` for a rival `x`.
    pub(crate) fn finite(&self, candidate: usize) -> i64 {
        self.values[candidate]
            .finite()
            .expect("bounds are finite away from the target")
    }
}

#[cfg(test)]
impl BoundFunction {
    pub(crate) fn for_tests(values: Vec<Bound>, target: usize) -> Self {
        BoundFunction {
            values,
            target,
            mode: Mode::Unique,
            manipulator_weight: 0,
            rule_applications: 0,
        }
    }
}

/// Most rule applications the loop may perform on `m` candidates. Each
/// application strictly lowers one bound, and a bound only takes values
/// from the `m(m-1)` shifted margins plus its initial value.
pub fn rule_application_limit(m: usize) -> u64 {
    let m = m as u64;
    m * (m * m.saturating_sub(1) + 1)
}

pub fn compute_bound_u(
    graph: &MajorityGraph,
    target: usize,
    manipulator_weight: i64,
    mode: Mode,
) -> Result<BoundFunction, SolverError> {
    compute_bound_u_traced(graph, target, manipulator_weight, mode, |_| {})
}

/// Same as [`compute_bound_u`], reporting each rule application.
///
/// Scheduling: rule 1 is saturated first (recompute single-source widest
/// paths from the target, lower every improvable bound, repeat), then one
/// rule 2 scan runs over pairs `(x, y)` in lexicographic order. Sweeps
/// repeat until one changes nothing.
pub fn compute_bound_u_traced(
    graph: &MajorityGraph,
    target: usize,
    manipulator_weight: i64,
    mode: Mode,
    mut on_step: impl FnMut(&RuleStep),
) -> Result<BoundFunction, SolverError> {
    let m = graph.len();
    graph.candidates().check_index(target)?;
    if !(0..=WEIGHT_CAP).contains(&manipulator_weight) {
        return Err(SolverError::Capacity(manipulator_weight));
    }
    let w = manipulator_weight;
    let initial = graph.max_weight().map_or(0, |max| max + w);
    let mut bound = vec![initial; m];
    let limit = rule_application_limit(m);
    let mut applications: u64 = 0;

    loop {
        let mut changed = false;

        loop {
            let reach = widest_from_target(graph, target, w, &bound);
            let mut lowered = false;
            for x in (0..m).filter(|&x| x != target) {
                if reach[x] < bound[x] {
                    on_step(&RuleStep {
                        rule: Rule::Widest,
                        candidate: x,
                        from: bound[x],
                        to: reach[x],
                    });
                    bound[x] = reach[x];
                    applications += 1;
                    lowered = true;
                }
            }
            if !lowered {
                break;
            }
            changed = true;
        }

        for x in (0..m).filter(|&x| x != target) {
            for y in (0..m).filter(|&y| y != target && y != x) {
                if copy_down_applies(mode, graph.weight(y, x) - w, bound[x], bound[y]) {
                    on_step(&RuleStep {
                        rule: Rule::CopyDown,
                        candidate: x,
                        from: bound[x],
                        to: bound[y],
                    });
                    bound[x] = bound[y];
                    applications += 1;
                    changed = true;
                }
            }
        }

        if applications > limit {
            return Err(SolverError::Invariant(format!(
                "{applications} rule applications exceed the bound {limit}"
            )));
        }
        if !changed {
            break;
        }
    }

    let values = (0..m)
        .map(|x| {
            if x == target {
                Bound::Infinite
            } else {
                Bound::Finite(bound[x])
            }
        })
        .collect();
    Ok(BoundFunction {
        values,
        target,
        mode,
        manipulator_weight: w,
        rule_applications: applications,
    })
}

/// Rule 2 (unique) / rule 2' (co-winner) applicability for the pair
/// `(x, y)`, given `slack = margin(y, x) - W`.
#[inline]
fn copy_down_applies(mode: Mode, slack: i64, bound_x: i64, bound_y: i64) -> bool {
    match mode {
        Mode::Unique => bound_y < bound_x && slack >= bound_y,
        Mode::Cowinner => bound_y < bound_x && slack > bound_y,
    }
}

/// Widest path strengths from the target under the capped weights
/// `min(margin(y, z) + W, U(z))`. Dense max-min Dijkstra, O(m^2). The
/// target's own slot is meaningless.
fn widest_from_target(graph: &MajorityGraph, target: usize, w: i64, bound: &[i64]) -> Vec<i64> {
    let m = graph.len();
    let capped = |y: usize, z: usize| (graph.weight(y, z) + w).min(bound[z]);
    let mut best: Vec<i64> = (0..m)
        .map(|z| if z == target { i64::MAX } else { capped(target, z) })
        .collect();
    let mut done = vec![false; m];
    done[target] = true;
    for _ in 1..m {
        let next = (0..m)
            .filter(|&z| !done[z])
            .max_by(|&a, &b| best[a].cmp(&best[b]).then_with(|| b.cmp(&a)))
            .expect("an unsettled candidate remains");
        done[next] = true;
        for v in 0..m {
            if !done[v] {
                let via = best[next].min(capped(next, v));
                if via > best[v] {
                    best[v] = via;
                }
            }
        }
    }
    best
}

/// The manipulability test on a fixed-point `U`: `U(x) > margin(x, c) - W`
/// for every rival in unique mode, `>=` in co-winner mode.
pub fn decide_manipulable(graph: &MajorityGraph, bounds: &BoundFunction) -> bool {
    let c = bounds.target();
    let w = bounds.manipulator_weight();
    (0..graph.len()).filter(|&x| x != c).all(|x| {
        let u = bounds.finite(x);
        let floor = graph.weight(x, c) - w;
        match bounds.mode() {
            Mode::Unique => u.cmp(&floor) == Ordering::Greater,
            Mode::Cowinner => u >= floor,
        }
    })
}
