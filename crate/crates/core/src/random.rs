//! Random instance generation for tests, benchmarks and smoke runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{CandidateSet, ManipulationInstance, Mode, Ranking, WeightedBallot, WeightedProfile};

/// Shape of a random manipulation instance. Weights are drawn uniformly
/// from `1..=max_weight`, rankings uniformly among all orders.
#[derive(Debug, Clone, Copy)]
pub struct InstanceShape {
    pub candidates: usize,
    pub ballots: usize,
    pub manipulators: usize,
    pub max_weight: i64,
}

pub fn random_ranking<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Ranking {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    Ranking::from_order(&order).expect("a shuffled identity is a permutation")
}

pub fn random_profile<R: Rng + ?Sized>(rng: &mut R, m: usize, ballots: usize, max_weight: i64) -> WeightedProfile {
    let ballots = (0..ballots)
        .map(|_| WeightedBallot {
            ranking: random_ranking(rng, m),
            weight: rng.gen_range(1..=max_weight),
        })
        .collect();
    WeightedProfile::new(CandidateSet::numbered(m).expect("m >= 1"), ballots).expect("small weights fit")
}

/// Random instance with a uniformly chosen target.
pub fn random_instance<R: Rng + ?Sized>(rng: &mut R, shape: InstanceShape, mode: Mode) -> ManipulationInstance {
    let profile = random_profile(rng, shape.candidates, shape.ballots, shape.max_weight);
    let weights = (0..shape.manipulators)
        .map(|_| rng.gen_range(1..=shape.max_weight))
        .collect();
    let target = rng.gen_range(0..shape.candidates);
    ManipulationInstance::new(profile, weights, target, mode).expect("generated instance is valid")
}
