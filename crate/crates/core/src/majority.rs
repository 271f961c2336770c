//! Weighted majority graphs: the margin matrix over the complete directed
//! graph on the candidates.

use crate::error::ModelError;
use crate::model::{CandidateSet, Ranking, WeightedProfile, WEIGHT_CAP};

/// Square margin matrix `weight[x][y]`, stored row-major. The diagonal is
/// fixed to zero and never read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityGraph {
    candidates: CandidateSet,
    weight: Vec<i64>,
}

impl MajorityGraph {
    /// Wraps an arbitrary integer matrix. Skew symmetry is not required;
    /// entries must stay within `±WEIGHT_CAP`.
    pub fn from_matrix(candidates: CandidateSet, rows: &[Vec<i64>]) -> Result<Self, ModelError> {
        let m = candidates.len();
        if rows.len() != m || rows.iter().any(|r| r.len() != m) {
            return Err(ModelError::MatrixShape { m });
        }
        let mut weight = vec![0; m * m];
        for (x, row) in rows.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                if x == y {
                    continue;
                }
                if v.checked_abs().is_none_or(|a| a > WEIGHT_CAP) {
                    return Err(ModelError::WeightCapacity { cap: WEIGHT_CAP });
                }
                weight[x * m + y] = v;
            }
        }
        Ok(MajorityGraph { candidates, weight })
    }

    /// Builds a skew-symmetric matrix from the strictly upper triangle.
    #[allow(clippy::needless_range_loop)]
    pub fn from_upper(
        candidates: CandidateSet,
        mut upper: impl FnMut(usize, usize) -> i64,
    ) -> Result<Self, ModelError> {
        let m = candidates.len();
        let mut rows = vec![vec![0; m]; m];
        for x in 0..m {
            for y in x + 1..m {
                let v = upper(x, y);
                rows[x][y] = v;
                rows[y][x] = -v;
            }
        }
        Self::from_matrix(candidates, &rows)
    }

    pub fn candidates(&self) -> &CandidateSet {
        &self.candidates
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn weight(&self, x: usize, y: usize) -> i64 {
        self.weight[x * self.len() + y]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.weight.chunks(self.len()).map(<[i64]>::to_vec).collect()
    }

    /// Largest off-diagonal entry; `None` when there is only one candidate.
    pub fn max_weight(&self) -> Option<i64> {
        let m = self.len();
        (0..m)
            .flat_map(|x| (0..m).filter(move |&y| y != x).map(move |y| (x, y)))
            .map(|(x, y)| self.weight(x, y))
            .max()
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let m = self.len();
        (0..m).all(|x| (x + 1..m).all(|y| self.weight(x, y) == -self.weight(y, x)))
    }
}

/// Margin matrix of a weighted profile: for `x != y`, the weight of ballots
/// ranking `x` above `y` minus the weight ranking `y` above `x`.
pub fn build_majority_graph(profile: &WeightedProfile) -> Result<MajorityGraph, ModelError> {
    let candidates = profile.candidates().clone();
    let m = candidates.len();
    let mut weight = vec![0i64; m * m];
    let overflow = || ModelError::WeightCapacity { cap: WEIGHT_CAP };
    for ballot in profile.ballots() {
        let ranks = ballot.ranking.ranks();
        for x in 0..m {
            for y in x + 1..m {
                let delta = if ranks[x] > ranks[y] {
                    ballot.weight
                } else {
                    -ballot.weight
                };
                let cell = &mut weight[x * m + y];
                *cell = cell.checked_add(delta).ok_or_else(overflow)?;
            }
        }
    }
    for x in 0..m {
        for y in x + 1..m {
            weight[y * m + x] = -weight[x * m + y];
        }
    }
    Ok(MajorityGraph { candidates, weight })
}

/// Margin matrix after `total_weight` manipulators all cast `ranking`.
pub fn overlay_identical_manipulators(
    graph: &MajorityGraph,
    ranking: &Ranking,
    total_weight: i64,
) -> Result<MajorityGraph, ModelError> {
    let m = graph.len();
    if ranking.len() != m {
        return Err(ModelError::RankingSizeMismatch {
            expected: m,
            got: ranking.len(),
        });
    }
    if !(0..=WEIGHT_CAP).contains(&total_weight) {
        return Err(ModelError::WeightCapacity { cap: WEIGHT_CAP });
    }
    let mut weight = graph.weight.clone();
    for x in 0..m {
        for y in 0..m {
            if x == y {
                continue;
            }
            let delta = if ranking.prefers(x, y) {
                total_weight
            } else {
                -total_weight
            };
            let cell = &mut weight[x * m + y];
            *cell = cell
                .checked_add(delta)
                .ok_or(ModelError::WeightCapacity { cap: WEIGHT_CAP })?;
        }
    }
    Ok(MajorityGraph {
        candidates: graph.candidates.clone(),
        weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::WeightedBallot;
    use proptest::prelude::*;

    fn ballot(order: &[usize], weight: i64) -> WeightedBallot {
        WeightedBallot::new(Ranking::from_order(order).unwrap(), weight).unwrap()
    }

    #[test]
    fn two_candidate_margins() {
        let cands = CandidateSet::new(["a", "b"]).unwrap();
        let p = WeightedProfile::new(cands, vec![ballot(&[0, 1], 3), ballot(&[1, 0], 1)]).unwrap();
        let g = build_majority_graph(&p).unwrap();
        assert_eq!(g.weight(0, 1), 2);
        assert_eq!(g.weight(1, 0), -2);
    }

    #[test]
    fn empty_profile_is_zero() {
        let p = WeightedProfile::new(CandidateSet::new(["a", "b", "c"]).unwrap(), vec![]).unwrap();
        let g = build_majority_graph(&p).unwrap();
        assert!(g.rows().iter().flatten().all(|&v| v == 0));
    }

    #[test]
    fn single_unit_ballot() {
        let p = WeightedProfile::new(CandidateSet::new(["a", "b", "c"]).unwrap(), vec![ballot(&[0, 1, 2], 1)]).unwrap();
        let g = build_majority_graph(&p).unwrap();
        assert_eq!((g.weight(0, 1), g.weight(0, 2), g.weight(1, 2)), (1, 1, 1));
        assert_eq!((g.weight(1, 0), g.weight(2, 0), g.weight(2, 1)), (-1, -1, -1));
    }

    #[test]
    fn overlay_examples() {
        // candidates a, c with margin(a, c) = 1; two manipulators vote c > a
        let cands = CandidateSet::new(["a", "c"]).unwrap();
        let g = MajorityGraph::from_upper(cands, |_, _| 1).unwrap();
        let zeta = Ranking::from_order(&[1, 0]).unwrap();
        let o = overlay_identical_manipulators(&g, &zeta, 2).unwrap();
        assert_eq!(o.weight(1, 0), 1);
        assert_eq!(o.weight(0, 1), -1);
        assert_eq!(overlay_identical_manipulators(&g, &zeta, 0).unwrap(), g);

        let zero = MajorityGraph::from_upper(CandidateSet::new(["a", "b"]).unwrap(), |_, _| 0).unwrap();
        let o = overlay_identical_manipulators(&zero, &Ranking::identity(2), 1).unwrap();
        assert_eq!(o.weight(0, 1), 1);
    }

    #[test]
    fn from_matrix_rejects_bad_shape() {
        let cands = CandidateSet::new(["a", "b"]).unwrap();
        assert!(MajorityGraph::from_matrix(cands.clone(), &[vec![0, 1]]).is_err());
        assert!(MajorityGraph::from_matrix(cands, &[vec![0, i64::MAX], vec![0, 0]]).is_err());
    }

    fn arb_profile() -> impl Strategy<Value = WeightedProfile> {
        (1usize..=5).prop_flat_map(|m| {
            let ballot_strategy = (Just((0..m).collect::<Vec<_>>()).prop_shuffle(), 1i64..=7);
            prop::collection::vec(ballot_strategy, 0..6).prop_map(move |bs| {
                let ballots = bs.into_iter().map(|(order, w)| ballot(&order, w)).collect();
                WeightedProfile::new(CandidateSet::numbered(m).unwrap(), ballots).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn majority_graph_invariants(p in arb_profile()) {
            let g = build_majority_graph(&p).unwrap();
            let total = p.total_weight();
            prop_assert!(g.is_skew_symmetric());
            for x in 0..g.len() {
                for y in 0..g.len() {
                    if x != y {
                        prop_assert!(g.weight(x, y).abs() <= total);
                        prop_assert_eq!((g.weight(x, y) - total).rem_euclid(2), 0);
                    }
                }
            }
        }

        #[test]
        fn overlay_matches_extended_profile(p in arb_profile(), seed in any::<u64>(), w in 0i64..9) {
            use rand::{seq::SliceRandom, SeedableRng};
            let m = p.candidates().len();
            let mut order: Vec<usize> = (0..m).collect();
            order.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
            let zeta = Ranking::from_order(&order).unwrap();
            let g = build_majority_graph(&p).unwrap();
            let overlaid = overlay_identical_manipulators(&g, &zeta, w).unwrap();
            let direct = if w == 0 {
                g.clone()
            } else {
                build_majority_graph(&p.with_ballot(WeightedBallot::new(zeta, w).unwrap()).unwrap()).unwrap()
            };
            prop_assert_eq!(overlaid, direct);
        }

        #[test]
        fn ballot_order_does_not_matter(p in arb_profile(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut ballots = p.ballots().to_vec();
            ballots.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
            let shuffled = WeightedProfile::new(p.candidates().clone(), ballots).unwrap();
            prop_assert_eq!(build_majority_graph(&p).unwrap(), build_majority_graph(&shuffled).unwrap());
        }
    }
}
