//! Catalogues: min-balanced systems, purely min-semi-balanced systems derived
//! from them, indecomposability, the facet catalogue and brute-force oracles.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::par;
use crate::ratlin::Rat;
use crate::ratlp::{solve, LinProgram};
use crate::semibal::{self, SemiBalanceReport};
use crate::setcore::{proper_coalitions, CanonicalType, Coalition, PlayerSet, SetSystem};

/// Largest ground set handled by the exhaustive enumerators.
pub const MAX_ENUMERATION_PLAYERS: usize = 6;
/// Largest ground set for the brute-force oracle (`2^(2^n − 2)` systems).
pub const MAX_BRUTE_FORCE_PLAYERS: usize = 4;

/// Receives coarse progress updates from long enumerations.
pub trait Progress: Sync {
    fn report(&self, stage: &str, done: usize, total: usize);
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub system: SetSystem,
    pub report: SemiBalanceReport,
    pub indecomposable: bool,
    pub canonical: CanonicalType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalogue {
    pub ground: PlayerSet,
    pub entries: Vec<CatalogueEntry>,
    pub facet_count: usize,
    pub type_count: usize,
}

#[derive(Clone, Copy, Default)]
pub struct FacetOptions<'a> {
    /// Compare the generated min-semi-balanced systems with the brute-force
    /// oracle (only for `n ≤ 4`).
    pub cross_check: bool,
    pub progress: Option<&'a dyn Progress>,
}

fn check_size(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::GroundTooLarge { n, max });
    }
    Ok(())
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

const W: usize = MAX_ENUMERATION_PLAYERS;

/// An integer vector in player space together with its expression through
/// the generators `χ_N, χ_{S_1}, ..., χ_{S_k}`.
#[derive(Clone, Copy)]
struct Tracked {
    v: [i64; W],
    combo: [i64; W + 1],
}

impl Tracked {
    fn is_zero(&self) -> bool {
        self.v.iter().all(|&x| x == 0)
    }

    /// Eliminates coordinate `p` using `row` (which must be non-zero at `p`).
    fn eliminate(&mut self, row: &Tracked, p: usize) {
        let a = self.v[p];
        if a == 0 {
            return;
        }
        let b = row.v[p];
        let mut g = 0;
        for i in 0..W {
            self.v[i] = b * self.v[i] - a * row.v[i];
            g = gcd(g, self.v[i]);
        }
        for i in 0..=W {
            self.combo[i] = b * self.combo[i] - a * row.combo[i];
            g = gcd(g, self.combo[i]);
        }
        if g > 1 {
            self.v.iter_mut().for_each(|x| *x /= g);
            self.combo.iter_mut().for_each(|x| *x /= g);
        }
    }
}

struct MinBalancedSearch<'a> {
    n: usize,
    cands: &'a [Coalition],
    out: Vec<Vec<Coalition>>,
}

impl MinBalancedSearch<'_> {
    /// `basis` holds reduced rows with their pivots; `residual` is `χ_N`
    /// reduced against them. Only called while `χ_N` is outside the span.
    fn extend(
        &mut self,
        chosen: &mut Vec<usize>,
        basis: &mut Vec<(Tracked, usize)>,
        residual: Tracked,
        from: usize,
    ) {
        if chosen.len() == self.n {
            return;
        }
        for idx in from..self.cands.len() {
            let s = self.cands[idx];
            let k = chosen.len() + 1;
            let mut w = Tracked {
                v: [0; W],
                combo: [0; W + 1],
            };
            for i in 0..self.n {
                w.v[i] = s.contains(i) as i64;
            }
            w.combo[k] = 1;
            for (row, p) in basis.iter() {
                w.eliminate(row, *p);
            }
            if w.is_zero() {
                continue;
            }
            let p = (0..self.n).find(|&i| w.v[i] != 0).expect("non-zero vector");
            let mut res = residual;
            res.eliminate(&w, p);
            chosen.push(idx);
            if res.is_zero() {
                // 0 = c_0 χ_N + Σ c_j χ_{S_j}, so χ_N = Σ (−c_j / c_0) χ_{S_j}.
                let c0 = res.combo[0];
                let positive = (1..=k).all(|j| res.combo[j] != 0 && (res.combo[j] > 0) != (c0 > 0));
                if positive {
                    self.out
                        .push(chosen.iter().map(|&i| self.cands[i]).collect());
                }
            } else {
                basis.push((w, p));
                self.extend(chosen, basis, res, idx + 1);
                basis.pop();
            }
            chosen.pop();
        }
    }
}

/// All min-balanced systems on `ground`, sorted.
pub fn enumerate_min_balanced(ground: &PlayerSet) -> Result<Vec<SetSystem>> {
    let n = ground.n();
    check_size(n, MAX_ENUMERATION_PLAYERS)?;
    let cands = proper_coalitions(n);
    let mut residual = Tracked {
        v: [0; W],
        combo: [0; W + 1],
    };
    for i in 0..n {
        residual.v[i] = 1;
    }
    residual.combo[0] = 1;
    let firsts: Vec<usize> = (0..cands.len()).collect();
    let parts = par::map(&firsts, |&first| {
        let mut search = MinBalancedSearch {
            n,
            cands: &cands,
            out: Vec::new(),
        };
        let s = cands[first];
        let mut w = Tracked {
            v: [0; W],
            combo: [0; W + 1],
        };
        for i in 0..n {
            w.v[i] = s.contains(i) as i64;
        }
        w.combo[1] = 1;
        let p = (0..n).find(|&i| w.v[i] != 0).expect("non-empty coalition");
        let mut res = residual;
        res.eliminate(&w, p);
        // A single proper coalition never spans χ_N.
        debug_assert!(!res.is_zero());
        let mut basis = vec![(w, p)];
        search.extend(&mut vec![first], &mut basis, res, first + 1);
        search.out
    });
    let mut all: Vec<SetSystem> = parts
        .into_iter()
        .flatten()
        .map(|sets| SetSystem::from_sorted(ground.clone(), sets))
        .collect();
    all.sort();
    Ok(all)
}

/// `(B \ {Z}) ∪ {N \ Z}`.
pub fn purely_from_balanced(b: &SetSystem, z: Coalition) -> Result<SetSystem> {
    if b.len() < 3 {
        return Err(Error::PreconditionViolated(
            "balanced system needs at least three sets",
        ));
    }
    if !b.contains(z) {
        return Err(Error::PreconditionViolated(
            "Z must belong to the balanced system",
        ));
    }
    let y = z.complement_in(b.ground().full());
    if b.contains(y) {
        return Err(Error::PreconditionViolated(
            "complement of Z already in the system",
        ));
    }
    let mut sets: Vec<Coalition> = b.sets().iter().copied().filter(|&s| s != z).collect();
    sets.push(y);
    sets.sort();
    Ok(SetSystem::from_sorted(b.ground().clone(), sets))
}

fn decomposition_witness(sys: &SetSystem) -> Option<Coalition> {
    let n = sys.n();
    let union = sys.union_all();
    let mut sets = sys.sets().to_vec();
    sets.push(Coalition::EMPTY);
    let e_idx = sets.len() - 1;
    proper_coalitions(n).into_iter().find(|&e| {
        // A player of E outside ∪S forces r = −1, impossible off E.
        if sys.contains(e) || !e.is_subset_of(union) {
            return false;
        }
        sets[e_idx] = e;
        semibal::is_exceptional_in(n, &sets, e_idx)
    })
}

/// The canonically first `E` outside `sys` that is exceptional within
/// `sys ∪ {E}`, or `None` if `sys` is indecomposable.
pub fn has_decomposition(sys: &SetSystem) -> Result<Option<Coalition>> {
    let rep = semibal::analyze(sys);
    if !rep.is_minimal || rep.is_balanced {
        return Err(Error::PreconditionViolated(
            "decomposition is defined for purely min-semi-balanced systems",
        ));
    }
    Ok(decomposition_witness(sys))
}

/// Whether no `∅ ≠ E ⊂ M` has `χ_E` as a conic combination of the members
/// of `b` contained in `E`; `M` is `b`'s ground.
pub fn is_irreducible(b: &SetSystem) -> bool {
    let n = b.n();
    !proper_coalitions(n).into_iter().any(|e| {
        let inside: Vec<Coalition> = b
            .sets()
            .iter()
            .copied()
            .filter(|&s| s != e && s.is_subset_of(e))
            .collect();
        if inside.is_empty() {
            return false;
        }
        let k = inside.len();
        let mut p = LinProgram::new(k);
        for j in 0..k {
            p.set_lower_bound(j, Some(Rat::zero()));
        }
        for i in e.players() {
            let row = inside
                .iter()
                .map(|s| {
                    if s.contains(i) {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect();
            p.add_eq(row, Rat::one());
        }
        solve(&p).is_feasible()
    })
}

/// The min-semi-balanced systems produced by the generator: all
/// min-balanced systems plus `purely_from_balanced` over every `(B, Z)`
/// with `|B| ≥ 3`. Sorted, without duplicates.
pub fn generate_min_semi_balanced(ground: &PlayerSet) -> Result<Vec<SetSystem>> {
    let mb = enumerate_min_balanced(ground)?;
    let mut all: BTreeSet<SetSystem> = purely_candidates(&mb)?.into_iter().collect();
    all.extend(mb);
    Ok(all.into_iter().collect())
}

fn purely_candidates(mb: &[SetSystem]) -> Result<Vec<SetSystem>> {
    let mut out = BTreeSet::new();
    for b in mb.iter().filter(|b| b.len() >= 3) {
        for &z in b.sets() {
            out.insert(purely_from_balanced(b, z)?);
        }
    }
    Ok(out.into_iter().collect())
}

fn entry(system: SetSystem, indecomposable: bool) -> Result<CatalogueEntry> {
    let report = semibal::analyze(&system);
    let (canonical, _) = system.canonicalize()?;
    Ok(CatalogueEntry {
        system,
        report,
        indecomposable,
        canonical,
    })
}

/// The facet catalogue of the cone of exact games on `ground`.
pub fn enumerate_facets(ground: &PlayerSet, opts: FacetOptions<'_>) -> Result<Catalogue> {
    let n = ground.n();
    check_size(n, MAX_ENUMERATION_PLAYERS)?;
    let report = |stage: &str, done: usize, total: usize| {
        if let Some(p) = opts.progress {
            p.report(stage, done, total);
        }
    };
    let mut entries = Vec::new();
    if n == 2 {
        let ab = SetSystem::from_masks(ground.clone(), &[0b01, 0b10])?;
        entries.push(entry(ab, true)?);
    } else {
        report("min-balanced", 0, 1);
        let mb = enumerate_min_balanced(ground)?;
        report("min-balanced", 1, 1);
        let cands = purely_candidates(&mb)?;
        if opts.cross_check && n <= MAX_BRUTE_FORCE_PLAYERS {
            let mut generated: BTreeSet<SetSystem> = cands.iter().cloned().collect();
            generated.extend(mb.iter().cloned());
            let direct: BTreeSet<SetSystem> =
                brute_force_min_semi_balanced(ground)?.into_iter().collect();
            if generated != direct {
                return Err(Error::GeneratorMismatch {
                    n,
                    generated: generated.len(),
                    direct: direct.len(),
                });
            }
        }
        let total = cands.len();
        let done = AtomicUsize::new(0);
        let step = (total / 100).max(1);
        let keep = par::map(&cands, |s| {
            let d = done.fetch_add(1, Ordering::Relaxed) + 1;
            if d.is_multiple_of(step) || d == total {
                report("indecomposable", d, total);
            }
            decomposition_witness(s).is_none()
        });
        let facets: Vec<SetSystem> = cands
            .into_iter()
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(s, _)| s)
            .collect();
        report("canonical", 0, facets.len());
        for r in par::map(&facets, |s| entry(s.clone(), true)) {
            entries.push(r?);
        }
        report("canonical", entries.len(), entries.len());
    }
    entries.sort_by(|a, b| {
        a.canonical
            .representative
            .cmp(&b.canonical.representative)
            .then_with(|| a.system.cmp(&b.system))
    });
    let type_count = count_types(&entries);
    Ok(Catalogue {
        ground: ground.clone(),
        facet_count: entries.len(),
        type_count,
        entries,
    })
}

pub fn count_types(entries: &[CatalogueEntry]) -> usize {
    entries
        .iter()
        .map(|e| &e.canonical.representative)
        .collect::<BTreeSet<_>>()
        .len()
}

/// Every inclusion-minimal semi-balanced system, found by scanning all
/// non-trivial systems. A system is tested only when none of its proper
/// subsystems is semi-balanced.
pub fn brute_force_min_semi_balanced(ground: &PlayerSet) -> Result<Vec<SetSystem>> {
    let n = ground.n();
    check_size(n, MAX_BRUTE_FORCE_PLAYERS)?;
    let cands = proper_coalitions(n);
    let m = cands.len();
    // contains[mask]: the system indexed by `mask` has a semi-balanced subsystem.
    let mut contains = vec![false; 1 << m];
    let mut out = Vec::new();
    let mut sets = Vec::with_capacity(m);
    for mask in 1usize..1 << m {
        let mut bits = mask;
        let mut has_sub = false;
        while bits != 0 {
            let b = bits & bits.wrapping_neg();
            bits &= bits - 1;
            let sub = mask & !b;
            if sub != 0 && contains[sub] {
                has_sub = true;
                break;
            }
        }
        if has_sub {
            contains[mask] = true;
            continue;
        }
        sets.clear();
        sets.extend((0..m).filter(|i| mask >> i & 1 == 1).map(|i| cands[i]));
        if semibal::semi_balanced_sets(n, &sets) {
            contains[mask] = true;
            let mut sorted = sets.clone();
            sorted.sort();
            out.push(SetSystem::from_sorted(ground.clone(), sorted));
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize) -> PlayerSet {
        PlayerSet::new(n).unwrap()
    }

    fn sys(n: usize, text: &str) -> SetSystem {
        g(n).parse_system(text).unwrap()
    }

    #[test]
    fn min_balanced_counts() {
        assert_eq!(
            enumerate_min_balanced(&g(2)).unwrap(),
            vec![sys(2, "{a,b}")]
        );
        let three = enumerate_min_balanced(&g(3)).unwrap();
        assert_eq!(three.len(), 5);
        assert!(three.contains(&sys(3, "{ab,ac,bc}")));
        assert!(three.contains(&sys(3, "{a,b,c}")));
        assert!(three.contains(&sys(3, "{c,ab}")));
        let four = enumerate_min_balanced(&g(4)).unwrap();
        assert_eq!(four.len(), 41);
        assert!(four.contains(&sys(4, "{ab,ac,bc,d}")));
        for b in &four {
            assert!(semibal::is_balanced(b) && semibal::is_min_semi_balanced(b));
        }
    }

    #[test]
    fn purely_examples() {
        let b = sys(4, "{ab,ac,bc,d}");
        let d = g(4).parse_coalition("d").unwrap();
        let s = purely_from_balanced(&b, d).unwrap();
        assert_eq!(s, sys(4, "{ab,ac,bc,abc}"));
        let abc = g(4).parse_coalition("abc").unwrap();
        assert_eq!(semibal::analyze(&s).exceptional, Some(abc));
        // back again
        assert_eq!(purely_from_balanced(&s, abc).unwrap(), b);

        let s =
            purely_from_balanced(&sys(3, "{a,b,c}"), g(3).parse_coalition("c").unwrap()).unwrap();
        assert_eq!(s, sys(3, "{a,b,ab}"));
        assert_eq!(
            semibal::analyze(&s).exceptional,
            Some(g(3).parse_coalition("ab").unwrap())
        );

        assert!(
            purely_from_balanced(&sys(3, "{c,ab}"), g(3).parse_coalition("c").unwrap()).is_err()
        );
    }

    #[test]
    fn decomposition_examples() {
        let s = sys(4, "{a,b,c,abc}");
        let e = has_decomposition(&s).unwrap().unwrap();
        assert_eq!(e.len(), 2);
        assert!(e.is_subset_of(g(4).parse_coalition("abc").unwrap()));
        assert_eq!(has_decomposition(&sys(3, "{a,b,ab}")).unwrap(), None);
        assert_eq!(has_decomposition(&sys(4, "{ab,ac,bc,abc}")).unwrap(), None);
        assert!(has_decomposition(&sys(3, "{a,b,c}")).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        assert!(!is_irreducible(&sys(3, "{a,b,c}")));
        assert!(is_irreducible(&sys(3, "{ab,ac,bc}")));
        assert!(is_irreducible(&sys(2, "{a,b}")));
    }

    #[test]
    fn small_facet_counts() {
        for (n, facets, types) in [(2, 1, 1), (3, 6, 2), (4, 44, 6)] {
            let cat = enumerate_facets(
                &g(n),
                FacetOptions {
                    cross_check: true,
                    progress: None,
                },
            )
            .unwrap();
            assert_eq!(
                (cat.facet_count, cat.type_count),
                (facets, types),
                "n = {n}"
            );
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(
            brute_force_min_semi_balanced(&g(2)).unwrap(),
            vec![sys(2, "{a,b}")]
        );
        let three = brute_force_min_semi_balanced(&g(3)).unwrap();
        assert!(three.contains(&sys(3, "{a,b,ab}")));
        assert!(three.contains(&sys(3, "{bc,ac,c}")));
        let four = brute_force_min_semi_balanced(&g(4)).unwrap();
        assert!(four.contains(&sys(4, "{a,ab,bc,abd}")));
        assert!(brute_force_min_semi_balanced(&g(5)).is_err());
    }

    #[test]
    fn type_count_of_an_orbit() {
        let s = sys(4, "{a,ab,bc,abd}");
        let entries: Vec<CatalogueEntry> = s
            .orbit()
            .unwrap()
            .into_iter()
            .map(|x| entry(x, true).unwrap())
            .collect();
        assert!(entries.len() > 1);
        assert_eq!(count_types(&entries), 1);
    }
}
