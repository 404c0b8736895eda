//! Seeded random games for property checks.

use exact_cone::games::{Allocation, Game, MinRepresentation};
use exact_cone::ratlin::Rat;
use exact_cone::setcore::{Coalition, PlayerSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GameKind {
    /// Independent integer values in `[−8, 8]`.
    Integer,
    Additive,
    Unanimity,
    /// Non-negative combination of unanimity games (supermodular).
    ConvexMixture,
    /// Minimum over a few integer vectors (totally balanced).
    MinOfVectors,
}

pub const KINDS: [GameKind; 5] = [
    GameKind::Integer,
    GameKind::Additive,
    GameKind::Unanimity,
    GameKind::ConvexMixture,
    GameKind::MinOfVectors,
];

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n)
        .map(|_| Rat::from_integer(rng.random_range(-8..=8)))
        .collect()
}

fn random_nonempty(rng: &mut ChaCha8Rng, n: usize) -> Coalition {
    Coalition::from_mask(rng.random_range(1..1u32 << n))
}

pub fn random_game(rng: &mut ChaCha8Rng, ground: &PlayerSet, kind: GameKind) -> Game {
    let n = ground.n();
    let g = ground.clone();
    match kind {
        GameKind::Integer => {
            let full = ground.full();
            Game::from_fn(g, |c| {
                if c.is_empty() {
                    Rat::zero()
                } else if c == full {
                    Rat::from_integer(rng.random_range(0..=8))
                } else {
                    Rat::from_integer(rng.random_range(-8..=8))
                }
            })
        }
        GameKind::Additive => Game::additive(g, &random_vector(rng, n)),
        GameKind::Unanimity => Game::unanimity(g, random_nonempty(rng, n)),
        GameKind::ConvexMixture => {
            let terms: Vec<(Coalition, i64)> = (0..rng.random_range(1..=4))
                .map(|_| (random_nonempty(rng, n), rng.random_range(1..=5)))
                .collect();
            Game::from_fn(g, |s| {
                terms
                    .iter()
                    .filter(|(t, _)| t.is_subset_of(s))
                    .map(|(_, w)| Rat::from_integer(*w))
                    .sum()
            })
        }
        GameKind::MinOfVectors => {
            let vectors = (0..rng.random_range(1..=4))
                .map(|_| Allocation::new(random_vector(rng, n)))
                .collect();
            Game::from_min_representation(g, &MinRepresentation { vectors })
        }
    }
    .expect("generated games are well formed")
}

/// `count` games cycling through all kinds, reproducible from `seed`.
pub fn random_corpus(ground: &PlayerSet, count: usize, seed: u64) -> Vec<(GameKind, Game)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ground.n() as u64);
    (0..count)
        .map(|i| {
            let kind = KINDS[i % KINDS.len()];
            (kind, random_game(&mut rng, ground, kind))
        })
        .collect()
}
