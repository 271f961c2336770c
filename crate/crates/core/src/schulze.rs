//! Path strengths and Schulze winner sets.
//!
//! The strength of a path is its smallest edge weight; the strength
//! `S(x, y)` is the largest strength over all `x`-to-`y` paths. A candidate
//! `x` wins when `S(x, y) >= S(y, x)` against every rival `y`, and wins
//! alone exactly when every one of those comparisons is strict.

use crate::exec::Strategy;
use crate::majority::MajorityGraph;
use crate::model::CandidateSet;

/// Rows below this size are relaxed sequentially even under
/// [`Strategy::Parallel`].
const PARALLEL_MIN_CANDIDATES: usize = 96;

/// All-pairs widest-path strengths. The diagonal is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrengthMatrix {
    candidates: CandidateSet,
    strength: Vec<i64>,
}

impl StrengthMatrix {
    pub fn candidates(&self) -> &CandidateSet {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `S(x, y)` for `x != y`.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> i64 {
        debug_assert_ne!(x, y, "path strength is undefined on the diagonal");
        self.strength[x * self.len() + y]
    }

    pub fn beats(&self, x: usize, y: usize) -> bool {
        self.get(x, y) > self.get(y, x)
    }
}

pub fn path_strength_matrix(graph: &MajorityGraph) -> StrengthMatrix {
    path_strength_matrix_with(graph, Strategy::default())
}

/// Max-min Floyd–Warshall. For a bottleneck objective the best walk is never
/// better than the best simple path, so this is the simple-path maximum.
pub fn path_strength_matrix_with(graph: &MajorityGraph, strategy: Strategy) -> StrengthMatrix {
    let m = graph.len();
    let mut strength: Vec<i64> = (0..m * m).map(|i| graph.weight(i / m, i % m)).collect();
    let parallel = strategy.is_parallel() && m >= PARALLEL_MIN_CANDIDATES;
    let mut pivot_row = vec![0i64; m];
    for k in 0..m {
        // Row k is not modified while relaxing through k.
        pivot_row.copy_from_slice(&strength[k * m..(k + 1) * m]);
        let relax = |i: usize, row: &mut [i64]| {
            if i == k {
                return;
            }
            let through = row[k];
            for (j, cell) in row.iter_mut().enumerate() {
                if j == i || j == k {
                    continue;
                }
                let candidate = through.min(pivot_row[j]);
                if candidate > *cell {
                    *cell = candidate;
                }
            }
        };
        if parallel {
            #[cfg(feature = "parallel")]
            {
                use rayon::prelude::*;
                strength
                    .par_chunks_mut(m)
                    .enumerate()
                    .for_each(|(i, row)| relax(i, row));
            }
        } else {
            strength.chunks_mut(m).enumerate().for_each(|(i, row)| relax(i, row));
        }
    }
    for x in 0..m {
        strength[x * m + x] = 0;
    }
    StrengthMatrix {
        candidates: graph.candidates().clone(),
        strength,
    }
}

/// Candidates `x` with `S(x, y) >= S(y, x)` for all `y != x`, in index order.
pub fn schulze_winners(graph: &MajorityGraph) -> Vec<usize> {
    winners_from_strengths(&path_strength_matrix(graph))
}

pub fn winners_from_strengths(strengths: &StrengthMatrix) -> Vec<usize> {
    let m = strengths.len();
    (0..m)
        .filter(|&x| (0..m).all(|y| y == x || strengths.get(x, y) >= strengths.get(y, x)))
        .collect()
}

/// Whether `c` beats every rival strictly, i.e. is the only Schulze winner.
pub fn is_unique_winner(graph: &MajorityGraph, c: usize) -> bool {
    unique_from_strengths(&path_strength_matrix(graph), c)
}

pub fn unique_from_strengths(strengths: &StrengthMatrix, c: usize) -> bool {
    (0..strengths.len()).all(|y| y == c || strengths.beats(c, y))
}

pub fn is_winner(graph: &MajorityGraph, c: usize) -> bool {
    let s = path_strength_matrix(graph);
    (0..s.len()).all(|y| y == c || s.get(c, y) >= s.get(y, c))
}

#[cfg(test)]
mod tests {
    use super::{
        is_unique_winner, is_winner, path_strength_matrix, path_strength_matrix_with, schulze_winners,
        PARALLEL_MIN_CANDIDATES,
    };
    use crate::exec::Strategy as Exec;
    use crate::majority::{build_majority_graph, MajorityGraph};
    use crate::model::CandidateSet;
    use crate::model::{Ranking, WeightedBallot, WeightedProfile};
    use proptest::prelude::*;

    /// Exhaustive enumeration over all simple paths.
    fn brute_strength(g: &MajorityGraph, x: usize, y: usize) -> i64 {
        fn dfs(g: &MajorityGraph, at: usize, goal: usize, bottleneck: i64, seen: &mut Vec<bool>, best: &mut i64) {
            for next in 0..g.len() {
                if next == at || seen[next] {
                    continue;
                }
                let b = bottleneck.min(g.weight(at, next));
                if next == goal {
                    *best = (*best).max(b);
                } else {
                    seen[next] = true;
                    dfs(g, next, goal, b, seen, best);
                    seen[next] = false;
                }
            }
        }
        let mut seen = vec![false; g.len()];
        seen[x] = true;
        let mut best = i64::MIN;
        dfs(g, x, y, i64::MAX, &mut seen, &mut best);
        best
    }

    fn abc(rows: [[i64; 3]; 3]) -> MajorityGraph {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        MajorityGraph::from_matrix(CandidateSet::new(["a", "b", "c"]).unwrap(), &rows).unwrap()
    }

    #[test]
    fn widest_path_through_intermediate() {
        let g = abc([[0, 4, -2], [-4, 0, 2], [2, -2, 0]]);
        assert_eq!(brute_strength(&g, 0, 2), 2);
        assert_eq!(path_strength_matrix(&g).get(0, 2), 2);
    }

    #[test]
    fn two_candidates_and_zero_graph() {
        let g = MajorityGraph::from_upper(CandidateSet::new(["a", "b"]).unwrap(), |_, _| 5).unwrap();
        let s = path_strength_matrix(&g);
        assert_eq!((s.get(0, 1), s.get(1, 0)), (5, -5));
        let z = MajorityGraph::from_upper(CandidateSet::numbered(4).unwrap(), |_, _| 0).unwrap();
        let s = path_strength_matrix(&z);
        for x in 0..4 {
            for y in 0..4 {
                if x != y {
                    assert_eq!(s.get(x, y), 0);
                }
            }
        }
        assert_eq!(schulze_winners(&z), vec![0, 1, 2, 3]);
    }

    #[test]
    fn co_winner_cycle() {
        // a->b 4, b->c 2, c->a 2
        let g = abc([[0, 4, -2], [-4, 0, 2], [2, -2, 0]]);
        let s = path_strength_matrix(&g);
        assert_eq!(s.get(1, 0), 2);
        assert_eq!(s.get(0, 1), 4);
        assert_eq!(schulze_winners(&g), vec![0, 2]);
        assert!(!is_unique_winner(&g, 0));
        assert!(is_winner(&g, 2));
        assert!(!is_winner(&g, 1));
    }

    #[test]
    fn condorcet_winner_and_singleton() {
        let cands = CandidateSet::new(["a", "b", "c"]).unwrap();
        let b = WeightedBallot::new(Ranking::identity(3), 1).unwrap();
        let g = build_majority_graph(&WeightedProfile::new(cands, vec![b]).unwrap()).unwrap();
        assert_eq!(schulze_winners(&g), vec![0]);
        assert!(is_unique_winner(&g, 0));

        let one = MajorityGraph::from_matrix(CandidateSet::new(["a"]).unwrap(), &[vec![0]]).unwrap();
        assert_eq!(schulze_winners(&one), vec![0]);
        assert!(is_unique_winner(&one, 0));
    }

    fn arb_graph(max_m: usize, bound: i64) -> impl Strategy<Value = MajorityGraph> {
        (1..=max_m).prop_flat_map(move |m| {
            prop::collection::vec(-bound..=bound, m * m).prop_map(move |cells| {
                MajorityGraph::from_upper(CandidateSet::numbered(m).unwrap(), |x, y| cells[x * m + y]).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn matches_simple_path_enumeration(g in arb_graph(5, 5)) {
            let s = path_strength_matrix(&g);
            for x in 0..g.len() {
                for y in 0..g.len() {
                    if x != y {
                        prop_assert_eq!(s.get(x, y), brute_strength(&g, x, y));
                    }
                }
            }
        }

        #[test]
        fn winners_nonempty_and_unique_consistent(g in arb_graph(6, 9)) {
            let w = schulze_winners(&g);
            prop_assert!(!w.is_empty());
            for c in 0..g.len() {
                prop_assert_eq!(is_unique_winner(&g, c), w == vec![c]);
            }
        }

        #[test]
        fn relabeling_permutes_winners(g in arb_graph(6, 9), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let m = g.len();
            let mut perm: Vec<usize> = (0..m).collect();
            perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
            let mut rows = vec![vec![0; m]; m];
            for x in 0..m {
                for y in 0..m {
                    rows[perm[x]][perm[y]] = g.weight(x, y);
                }
            }
            let h = MajorityGraph::from_matrix(CandidateSet::numbered(m).unwrap(), &rows).unwrap();
            let mut expected: Vec<usize> = schulze_winners(&g).into_iter().map(|x| perm[x]).collect();
            expected.sort_unstable();
            prop_assert_eq!(schulze_winners(&h), expected);
        }

        #[test]
        fn parallel_rows_match_sequential(g in arb_graph(3, 9)) {
            prop_assert_eq!(
                path_strength_matrix_with(&g, Exec::Parallel),
                path_strength_matrix_with(&g, Exec::Sequential)
            );
        }
    }

    #[test]
    fn parallel_rows_match_sequential_large() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let m = PARALLEL_MIN_CANDIDATES + 4;
        let g = MajorityGraph::from_upper(CandidateSet::numbered(m).unwrap(), |_, _| rng.gen_range(-50..=50)).unwrap();
        assert_eq!(
            path_strength_matrix_with(&g, Exec::Parallel),
            path_strength_matrix_with(&g, Exec::Sequential)
        );
    }
}
