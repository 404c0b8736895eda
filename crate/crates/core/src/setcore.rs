//! Players, coalitions and set systems.
//!
//! A coalition is a bitmask over at most 16 players. The single ordering used
//! throughout the crate sorts coalitions by cardinality and then by mask;
//! [`Coalition`]'s `Ord` implements exactly that, so sorting a slice of
//! coalitions yields the canonical order.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::ratlin::Rat;

pub const MAX_PLAYERS: usize = 16;
/// Exhaustive canonicalization walks all `n!` relabelings.
pub const MAX_CANONICAL_PLAYERS: usize = 8;

/// A subset of the player set, bit `i` set iff player `i` is a member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Coalition(u32);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub const fn from_mask(mask: u32) -> Self {
        Coalition(mask)
    }

    pub fn singleton(player: usize) -> Self {
        Coalition(1 << player)
    }

    pub fn from_players<I: IntoIterator<Item = usize>>(players: I) -> Self {
        Coalition(players.into_iter().fold(0, |m, p| m | (1 << p)))
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, player: usize) -> bool {
        self.0 >> player & 1 == 1
    }

    pub const fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: Coalition) -> Coalition {
        Coalition(self.0 | other.0)
    }

    pub const fn intersection(self, other: Coalition) -> Coalition {
        Coalition(self.0 & other.0)
    }

    pub const fn difference(self, other: Coalition) -> Coalition {
        Coalition(self.0 & !other.0)
    }

    /// `N \ self` where `full` is the grand coalition.
    pub const fn complement_in(self, full: Coalition) -> Coalition {
        Coalition(full.0 & !self.0)
    }

    pub fn players(self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..32).filter(move |i| m >> i & 1 == 1)
    }
}

impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.0.count_ones(), self.0).cmp(&(other.0.count_ones(), other.0))
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coalition({:#b})", self.0)
    }
}

/// All coalitions of an `n`-player set in canonical order, `∅` and `N` included.
pub fn all_coalitions(n: usize) -> Vec<Coalition> {
    let mut v: Vec<Coalition> = (0..1u32 << n).map(Coalition).collect();
    v.sort();
    v
}

/// The non-trivial coalitions (neither `∅` nor `N`) in canonical order.
pub fn proper_coalitions(n: usize) -> Vec<Coalition> {
    let full = (1u32 << n) - 1;
    let mut v: Vec<Coalition> = (1..full).map(Coalition).collect();
    v.sort();
    v
}

/// The player set `N` with stable labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlayerSet {
    labels: Arc<[String]>,
}

impl PlayerSet {
    /// `n` players labelled `a`, `b`, `c`, ...
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_PLAYERS).contains(&n) {
            return Err(Error::InvalidPlayerCount(n));
        }
        let labels: Vec<String> = (0..n)
            .map(|i| char::from(b'a' + i as u8).to_string())
            .collect();
        Ok(PlayerSet {
            labels: labels.into(),
        })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if !(2..=MAX_PLAYERS).contains(&labels.len()) {
            return Err(Error::InvalidPlayerCount(labels.len()));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            let bad = l.is_empty()
                || l == "0"
                || l == "N"
                || l.chars()
                    .any(|c| c.is_whitespace() || matches!(c, ',' | '{' | '}'));
            if bad {
                return Err(Error::InvalidLabel(l.clone()));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(PlayerSet {
            labels: labels.into(),
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn full(&self) -> Coalition {
        Coalition((1u32 << self.n()) - 1)
    }

    pub fn coalition_count(&self) -> usize {
        1 << self.n()
    }

    pub fn check(&self, c: Coalition) -> Result<()> {
        if c.mask() > self.full().mask() {
            return Err(Error::CoalitionOutOfRange {
                mask: c.mask(),
                n: self.n(),
            });
        }
        Ok(())
    }

    /// Incidence vector `χ_S` as 0/1 rationals.
    pub fn incidence_vector(&self, s: Coalition) -> Vec<Rat> {
        (0..self.n())
            .map(|i| {
                if s.contains(i) {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            })
            .collect()
    }

    /// Text form: concatenated labels, `0` for `∅`, `N` for the grand coalition.
    pub fn format_coalition(&self, c: Coalition) -> String {
        if c.is_empty() {
            return "0".into();
        }
        if c == self.full() {
            return "N".into();
        }
        c.players().map(|p| self.labels[p].as_str()).collect()
    }

    pub fn parse_coalition(&self, text: &str) -> Result<Coalition> {
        self.parse_coalition_at(text, 0)
    }

    fn parse_coalition_at(&self, text: &str, offset: usize) -> Result<Coalition> {
        match text {
            "" => return Err(Error::parse(offset, "empty coalition")),
            "0" => return Ok(Coalition::EMPTY),
            "N" => return Ok(self.full()),
            _ => {}
        }
        let mut mask = 0u32;
        let mut rest = text;
        let mut pos = offset;
        while !rest.is_empty() {
            let hit = self
                .labels
                .iter()
                .enumerate()
                .filter(|(_, l)| rest.starts_with(l.as_str()))
                .max_by_key(|(_, l)| l.len());
            let Some((i, l)) = hit else {
                return Err(Error::parse(pos, format!("unknown player in `{text}`")));
            };
            if mask >> i & 1 == 1 {
                return Err(Error::parse(pos, format!("player `{l}` repeated")));
            }
            mask |= 1 << i;
            rest = &rest[l.len()..];
            pos += l.chars().count();
        }
        Ok(Coalition(mask))
    }

    pub fn format_system(&self, sets: &[Coalition]) -> String {
        let parts: Vec<String> = sets.iter().map(|&s| self.format_coalition(s)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Parses `{a,b,ab}`; braces are optional.
    pub fn parse_system(&self, text: &str) -> Result<SetSystem> {
        let trimmed = text.trim_end();
        let lead = trimmed.len() - trimmed.trim_start().len();
        let mut body = trimmed.trim_start();
        let mut offset = lead;
        if let Some(b) = body.strip_prefix('{') {
            body = b
                .strip_suffix('}')
                .ok_or_else(|| Error::parse(trimmed.chars().count(), "missing `}`"))?;
            offset += 1;
        }
        let mut sets = Vec::new();
        for part in body.split(',') {
            let tok = part.trim();
            let tok_pos = offset + (part.len() - part.trim_start().len());
            if tok.is_empty() {
                return Err(Error::parse(tok_pos, "empty coalition"));
            }
            sets.push(self.parse_coalition_at(tok, tok_pos)?);
            offset += part.chars().count() + 1;
        }
        SetSystem::new(self.clone(), sets)
    }
}

impl fmt::Debug for PlayerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlayerSet({})", self.labels.join(""))
    }
}

/// A relabeling of players: player `i` becomes player `image[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let n = images.len();
        let mut seen = 0u32;
        for &i in &images {
            if i as usize >= n || seen >> i & 1 == 1 {
                return None;
            }
            seen |= 1 << i;
        }
        Some(Permutation(images))
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn apply(&self, c: Coalition) -> Coalition {
        let mut out = 0u32;
        let mut m = c.mask();
        while m != 0 {
            let i = m.trailing_zeros();
            out |= 1 << self.0[i as usize];
            m &= m - 1;
        }
        Coalition(out)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation(inv)
    }

    /// All permutations of `n` players in lexicographic order of images.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        let mut cur: Option<Vec<u8>> = Some((0..n as u8).collect());
        core::iter::from_fn(move || {
            let out = cur.clone()?;
            let mut next = out.clone();
            cur = if next_permutation(&mut next) {
                Some(next)
            } else {
                None
            };
            Some(Permutation(out))
        })
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A non-trivial set system: a non-empty set of coalitions other than `∅`
/// and `N`, kept sorted in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetSystem {
    ground: PlayerSet,
    sets: Vec<Coalition>,
}

impl SetSystem {
    pub fn new(ground: PlayerSet, mut sets: Vec<Coalition>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::EmptySystem);
        }
        let full = ground.full();
        for &s in &sets {
            ground.check(s)?;
            if s.is_empty() || s == full {
                return Err(Error::TrivialSet);
            }
        }
        sets.sort();
        if sets.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSet);
        }
        Ok(SetSystem { ground, sets })
    }

    /// For sets already validated and sorted by the caller.
    pub(crate) fn from_sorted(ground: PlayerSet, sets: Vec<Coalition>) -> Self {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(!sets.is_empty());
        SetSystem { ground, sets }
    }

    pub fn from_masks(ground: PlayerSet, masks: &[u32]) -> Result<Self> {
        SetSystem::new(ground, masks.iter().map(|&m| Coalition(m)).collect())
    }

    pub fn ground(&self) -> &PlayerSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.n()
    }

    pub fn sets(&self) -> &[Coalition] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, c: Coalition) -> bool {
        self.sets.binary_search(&c).is_ok()
    }

    pub fn position(&self, c: Coalition) -> Option<usize> {
        self.sets.binary_search(&c).ok()
    }

    pub fn union_all(&self) -> Coalition {
        self.sets.iter().fold(Coalition::EMPTY, |a, &s| a.union(s))
    }

    pub fn intersection_all(&self) -> Coalition {
        self.sets
            .iter()
            .fold(self.ground.full(), |a, &s| a.intersection(s))
    }

    pub fn incidence_vectors(&self) -> Vec<Vec<Rat>> {
        self.sets
            .iter()
            .map(|&s| self.ground.incidence_vector(s))
            .collect()
    }

    /// `self ∪ {c}`; `c` must be a non-trivial coalition not already present.
    pub fn with(&self, c: Coalition) -> Result<SetSystem> {
        let mut sets = self.sets.clone();
        sets.push(c);
        SetSystem::new(self.ground.clone(), sets)
    }

    /// `self \ {c}`; errors if the result would be empty.
    pub fn without(&self, c: Coalition) -> Result<SetSystem> {
        let sets: Vec<Coalition> = self.sets.iter().copied().filter(|&s| s != c).collect();
        SetSystem::new(self.ground.clone(), sets)
    }

    pub fn is_subsystem_of(&self, other: &SetSystem) -> bool {
        self.sets.iter().all(|&s| other.contains(s))
    }

    /// `{N \ S : S ∈ self}`.
    pub fn complement_system(&self) -> SetSystem {
        let full = self.ground.full();
        let mut sets: Vec<Coalition> = self.sets.iter().map(|s| s.complement_in(full)).collect();
        sets.sort();
        SetSystem::from_sorted(self.ground.clone(), sets)
    }

    pub fn permuted(&self, perm: &Permutation) -> SetSystem {
        let mut sets: Vec<Coalition> = self.sets.iter().map(|&s| perm.apply(s)).collect();
        sets.sort();
        SetSystem::from_sorted(self.ground.clone(), sets)
    }

    /// The lexicographically least relabeling of `self` and a permutation
    /// mapping `self` onto it.
    pub fn canonicalize(&self) -> Result<(CanonicalType, Permutation)> {
        let n = self.n();
        if n > MAX_CANONICAL_PLAYERS {
            return Err(Error::GroundTooLarge {
                n,
                max: MAX_CANONICAL_PLAYERS,
            });
        }
        let mut best: Option<(Vec<Coalition>, Permutation)> = None;
        let mut images: BTreeSet<Vec<Coalition>> = BTreeSet::new();
        let mut buf = Vec::with_capacity(self.sets.len());
        for perm in Permutation::all(n) {
            buf.clear();
            buf.extend(self.sets.iter().map(|&s| perm.apply(s)));
            buf.sort();
            if best.as_ref().is_none_or(|(b, _)| buf < *b) {
                best = Some((buf.clone(), perm));
            }
            if !images.contains(&buf) {
                images.insert(buf.clone());
            }
        }
        let (sets, perm) = best.expect("at least the identity permutation");
        Ok((
            CanonicalType {
                representative: SetSystem::from_sorted(self.ground.clone(), sets),
                orbit_size: images.len(),
            },
            perm,
        ))
    }

    /// All distinct relabelings of `self`, in canonical order of mask lists.
    pub fn orbit(&self) -> Result<Vec<SetSystem>> {
        let n = self.n();
        if n > MAX_CANONICAL_PLAYERS {
            return Err(Error::GroundTooLarge {
                n,
                max: MAX_CANONICAL_PLAYERS,
            });
        }
        let images: BTreeSet<Vec<Coalition>> = Permutation::all(n)
            .map(|p| {
                let mut v: Vec<Coalition> = self.sets.iter().map(|&s| p.apply(s)).collect();
                v.sort();
                v
            })
            .collect();
        Ok(images
            .into_iter()
            .map(|sets| SetSystem::from_sorted(self.ground.clone(), sets))
            .collect())
    }
}

impl Ord for SetSystem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sets.cmp(&other.sets)
    }
}

impl PartialOrd for SetSystem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ground.format_system(&self.sets))
    }
}

impl fmt::Debug for SetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetSystem{self}")
    }
}

/// A permutational type: the orbit of a set system under player relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalType {
    pub representative: SetSystem,
    pub orbit_size: usize,
}
