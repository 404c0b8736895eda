//! Transferable-utility games: cores, balancedness, exactness, anti-duals,
//! min-representations and evaluation of θ-inequalities.

use alloc::vec;
use alloc::vec::Vec;

use crate::enumerate::Catalogue;
use crate::error::{Error, Result};
use crate::par;
use crate::ratlin::Rat;
use crate::ratlp::{min_over_polyhedron, solve, LinProgram, LpOutcome};
use crate::semibal::CoefficientVector;
use crate::setcore::{all_coalitions, Coalition, PlayerSet};

/// A game `m` on all coalitions, indexed by mask, with `m(∅) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Game {
    ground: PlayerSet,
    values: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Allocation {
    pub x: Vec<Rat>,
}

impl Allocation {
    pub fn new(x: Vec<Rat>) -> Self {
        Allocation { x }
    }

    pub fn from_integers(x: &[i64]) -> Self {
        Allocation {
            x: x.iter().map(|&v| Rat::from_integer(v)).collect(),
        }
    }

    /// `x(S) = Σ_{i ∈ S} x_i`, zero for `∅`.
    pub fn sum_over(&self, s: Coalition) -> Rat {
        s.players().map(|i| &self.x[i]).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinRepresentation {
    pub vectors: Vec<Allocation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactnessCertificate {
    /// One core element tight for each non-empty coalition, canonical order.
    Exact(Vec<(Coalition, Allocation)>),
    NotExact {
        failing: Coalition,
        core_min: Rat,
    },
    EmptyCore,
}

impl ExactnessCertificate {
    pub fn is_exact(&self) -> bool {
        matches!(self, ExactnessCertificate::Exact(_))
    }
}

impl Game {
    pub fn new(ground: PlayerSet, values: Vec<Rat>) -> Result<Self> {
        if values.len() != ground.coalition_count() {
            return Err(Error::PreconditionViolated(
                "game needs one value per coalition",
            ));
        }
        if !values[0].is_zero() {
            return Err(Error::PreconditionViolated(
                "the empty coalition must have value 0",
            ));
        }
        Ok(Game { ground, values })
    }

    pub fn from_fn(ground: PlayerSet, mut f: impl FnMut(Coalition) -> Rat) -> Result<Self> {
        let values = (0..ground.coalition_count() as u32)
            .map(|m| f(Coalition::from_mask(m)))
            .collect();
        Game::new(ground, values)
    }

    /// `m(S) = Σ_{i ∈ S} w_i`.
    pub fn additive(ground: PlayerSet, weights: &[Rat]) -> Result<Self> {
        if weights.len() != ground.n() {
            return Err(Error::PreconditionViolated("one weight per player"));
        }
        let a = Allocation::new(weights.to_vec());
        Game::from_fn(ground, |s| a.sum_over(s))
    }

    /// `u_T(S) = 1` if `T ⊆ S`, else 0.
    pub fn unanimity(ground: PlayerSet, t: Coalition) -> Result<Self> {
        if t.is_empty() {
            return Err(Error::PreconditionViolated(
                "unanimity game needs a non-empty carrier",
            ));
        }
        ground.check(t)?;
        Game::from_fn(ground, |s| {
            if t.is_subset_of(s) {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
    }

    /// `m(S) = min_{x ∈ X} x(S)`.
    pub fn from_min_representation(ground: PlayerSet, rep: &MinRepresentation) -> Result<Self> {
        if rep.vectors.is_empty() || rep.vectors.iter().any(|v| v.x.len() != ground.n()) {
            return Err(Error::PreconditionViolated(
                "min-representation vectors must match the players",
            ));
        }
        Game::from_fn(ground, |s| {
            rep.vectors
                .iter()
                .map(|v| v.sum_over(s))
                .min()
                .expect("non-empty representation")
        })
    }

    pub fn ground(&self) -> &PlayerSet {
        &self.ground
    }

    pub fn value(&self, c: Coalition) -> &Rat {
        &self.values[c.mask() as usize]
    }

    /// Values indexed by coalition mask.
    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Core constraints of the subgame on `sub`; variables are the players
    /// of `sub` in increasing order.
    fn core_program(&self, sub: Coalition) -> LinProgram {
        let players: Vec<usize> = sub.players().collect();
        let k = players.len();
        let mut p = LinProgram::new(k);
        p.add_eq(vec![Rat::one(); k], self.value(sub).clone());
        for local in 1u32..(1 << k) - 1 {
            let row = (0..k)
                .map(|j| {
                    if local >> j & 1 == 1 {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            let s =
                Coalition::from_players((0..k).filter(|j| local >> j & 1 == 1).map(|j| players[j]));
            p.add_ge(row, self.value(s).clone());
        }
        p
    }

    fn indicator(&self, s: Coalition) -> Vec<Rat> {
        self.ground.incidence_vector(s)
    }

    /// Minimum of `x(S)` over the core; `None` if the core is empty.
    pub fn min_over_core(&self, s: Coalition) -> Option<(Rat, Allocation)> {
        let p = self.core_program(self.ground.full());
        match min_over_polyhedron(&p, &self.indicator(s)) {
            LpOutcome::Optimal(v, x) => Some((v, Allocation::new(x))),
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("x(S) is bounded below on the core"),
        }
    }

    pub fn is_in_core(&self, x: &Allocation) -> bool {
        x.x.len() == self.ground.n()
            && x.sum_over(self.ground.full()) == *self.value(self.ground.full())
            && all_coalitions(self.ground.n())
                .into_iter()
                .all(|s| x.sum_over(s) >= *self.value(s))
    }

    pub fn anti_dual(&self) -> Game {
        let full = self.ground.full().mask() as usize;
        let vn = self.values[full].clone();
        let values = (0..self.values.len())
            .map(|m| &self.values[full & !m] - &vn)
            .collect();
        Game {
            ground: self.ground.clone(),
            values,
        }
    }
}

pub fn is_balanced_game(m: &Game) -> bool {
    solve(&m.core_program(m.ground.full())).is_feasible()
}

fn subgame_balanced(m: &Game, sub: Coalition) -> bool {
    solve(&m.core_program(sub)).is_feasible()
}

pub fn is_totally_balanced(m: &Game) -> bool {
    let subs: Vec<Coalition> = all_coalitions(m.ground.n())
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    par::map(&subs, |&s| subgame_balanced(m, s))
        .into_iter()
        .all(|b| b)
}

pub fn exactness(m: &Game) -> ExactnessCertificate {
    let p = m.core_program(m.ground.full());
    if !solve(&p).is_feasible() {
        return ExactnessCertificate::EmptyCore;
    }
    let subs: Vec<Coalition> = all_coalitions(m.ground.n())
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();
    let mins = par::map(&subs, |&s| match min_over_polyhedron(&p, &m.indicator(s)) {
        LpOutcome::Optimal(v, x) => (v, Allocation::new(x)),
        _ => unreachable!("the core is non-empty and x(S) is bounded on it"),
    });
    let mut witnesses = Vec::with_capacity(subs.len());
    for (s, (v, x)) in subs.into_iter().zip(mins) {
        if v != *m.value(s) {
            debug_assert!(v > *m.value(s));
            return ExactnessCertificate::NotExact {
                failing: s,
                core_min: v,
            };
        }
        witnesses.push((s, x));
    }
    ExactnessCertificate::Exact(witnesses)
}

pub fn anti_dual(m: &Game) -> Game {
    m.anti_dual()
}

pub fn verify_min_representation(m: &Game, rep: &MinRepresentation) -> bool {
    match Game::from_min_representation(m.ground.clone(), rep) {
        Ok(g) => g.values == m.values,
        Err(_) => false,
    }
}

/// `⟨θ, m⟩ = Σ_S θ(S) m(S)`.
pub fn evaluate_inequality(theta: &CoefficientVector, m: &Game) -> Result<Rat> {
    if theta.ground() != m.ground() {
        return Err(Error::GroundMismatch);
    }
    Ok(theta
        .as_slice()
        .iter()
        .zip(&m.values)
        .filter(|(t, v)| !t.is_zero() && !v.is_zero())
        .map(|(t, v)| t * v)
        .sum())
}

/// Whether every facet inequality of `cat` holds for `m`.
pub fn is_exact_via_facets(m: &Game, cat: &Catalogue) -> Result<bool> {
    if cat.ground != *m.ground() {
        return Err(Error::GroundMismatch);
    }
    for e in &cat.entries {
        let theta = e.report.theta.as_ref().ok_or(Error::PreconditionViolated(
            "catalogue entry without coefficient vector",
        ))?;
        if evaluate_inequality(theta, m)?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}
