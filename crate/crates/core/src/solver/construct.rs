//! Turning a fixed-point bound function into the manipulators' ballot.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::SolverError;
use crate::majority::MajorityGraph;
use crate::model::Ranking;
use crate::solver::bounds::{Bound, BoundFunction};

/// Directed graph with an edge `(x, y)` iff `min(U(x), margin(x, y) + W) >= U(y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleGraph {
    target: usize,
    out: Vec<Vec<usize>>,
}

impl AdmissibleGraph {
    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    /// Out-neighbours of `x` in index order.
    pub fn successors(&self, x: usize) -> &[usize] {
        &self.out[x]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.out[x].binary_search(&y).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().map(move |&y| (x, y)))
    }

    /// Candidates reachable from the target (the target included).
    pub fn reachable_from_target(&self) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        seen[self.target] = true;
        let mut stack = vec![self.target];
        while let Some(x) = stack.pop() {
            for &y in &self.out[x] {
                if !std::mem::replace(&mut seen[y], true) {
                    stack.push(y);
                }
            }
        }
        seen
    }
}

pub fn build_admissible_graph(graph: &MajorityGraph, bounds: &BoundFunction) -> AdmissibleGraph {
    let m = graph.len();
    let w = bounds.manipulator_weight();
    let out = (0..m)
        .map(|x| {
            (0..m)
                .filter(|&y| y != x)
                .filter(|&y| bounds.get(x).min(Bound::Finite(graph.weight(x, y) + w)) >= bounds.get(y))
                .collect()
        })
        .collect();
    AdmissibleGraph {
        target: bounds.target(),
        out,
    }
}

/// Spanning tree of the admissible graph with every edge pointing away
/// from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arborescence {
    root: usize,
    parent: Vec<Option<usize>>,
}

impl Arborescence {
    pub fn root(&self) -> usize {
        self.root
    }

    /// `None` exactly for the root.
    pub fn parent(&self, x: usize) -> Option<usize> {
        self.parent[x]
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().enumerate().filter_map(|(x, p)| p.map(|p| (p, x)))
    }
}

/// Breadth-first tree from the target, scanning successors in index order
/// and keeping the first parent found.
pub fn spanning_arborescence(graph: &AdmissibleGraph) -> Result<Arborescence, SolverError> {
    let m = graph.len();
    let root = graph.target();
    let mut parent = vec![None; m];
    let mut seen = vec![false; m];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in graph.successors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                queue.push_back(y);
            }
        }
    }
    if let Some(missing) = seen.iter().position(|&s| !s) {
        return Err(SolverError::Invariant(format!(
            "candidate {missing} is not reachable from the target in the admissible graph"
        )));
    }
    Ok(Arborescence { root, parent })
}

/// Topological order of the tree edges together with `U(x) > U(y)`:
/// repeatedly emit the available candidate with the largest bound, lowest
/// index first among equals. Ranks go from `m` down to `1`.
pub fn construct_manipulator_vote(tree: &Arborescence, bounds: &BoundFunction) -> Result<Ranking, SolverError> {
    let m = tree.len();
    if bounds.values().len() != m {
        return Err(SolverError::Invariant(
            "tree and bounds disagree on the candidate count".into(),
        ));
    }
    let u = bounds.values();
    let mut children = vec![Vec::new(); m];
    let mut pending = vec![0usize; m];
    for (p, x) in tree.edges() {
        children[p].push(x);
        pending[x] += 1;
    }
    for y in 0..m {
        pending[y] += (0..m).filter(|&x| u[x] > u[y]).count();
    }

    let mut ready: BinaryHeap<(Bound, Reverse<usize>)> = (0..m)
        .filter(|&x| pending[x] == 0)
        .map(|x| (u[x], Reverse(x)))
        .collect();
    let mut order = Vec::with_capacity(m);
    while let Some((_, Reverse(x))) = ready.pop() {
        order.push(x);
        let release = children[x].iter().copied().chain((0..m).filter(|&y| u[x] > u[y]));
        for y in release {
            pending[y] -= 1;
            if pending[y] == 0 {
                ready.push((u[y], Reverse(y)));
            }
        }
    }
    if order.len() != m {
        return Err(SolverError::Invariant("tree edges contradict the bound order".into()));
    }
    Ranking::from_order(&order).map_err(|e| SolverError::Invariant(e.to_string()))
}
