//! Semi-balancedness of set systems, exceptional sets, the coefficient
//! vector θ, classification and the integer (diagram) form.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{self, common_denominator, scale_to_integer, Rat, RatMatrix, Solution};
use crate::ratlp::{solve, LinProgram, LpOutcome};
use crate::setcore::{Coalition, PlayerSet, SetSystem};

/// The four classes of min-semi-balanced systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemClass {
    MinBalanced,
    /// `∪S ⊂ N`, equivalently `r = 0`.
    UnionProper,
    /// `∩S ≠ ∅`, equivalently `r = 1`.
    IntersectionNonempty,
    FourthType,
}

impl SystemClass {
    pub fn name(self) -> &'static str {
        match self {
            SystemClass::MinBalanced => "MinBalanced",
            SystemClass::UnionProper => "UnionProper",
            SystemClass::IntersectionNonempty => "IntersectionNonempty",
            SystemClass::FourthType => "FourthType",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [
            SystemClass::MinBalanced,
            SystemClass::UnionProper,
            SystemClass::IntersectionNonempty,
            SystemClass::FourthType,
        ]
        .into_iter()
        .find(|c| c.name() == name)
    }
}

/// Coefficients `θ(L)` of a linear inequality `⟨θ, m⟩ ≥ 0` over all
/// coalitions, indexed by coalition mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientVector {
    ground: PlayerSet,
    theta: Vec<Rat>,
}

impl CoefficientVector {
    pub fn new(ground: PlayerSet, theta: Vec<Rat>) -> Result<Self> {
        if theta.len() != ground.coalition_count() {
            return Err(Error::PreconditionViolated(
                "coefficient vector needs one entry per coalition",
            ));
        }
        Ok(CoefficientVector { ground, theta })
    }

    pub fn zero(ground: PlayerSet) -> Self {
        let len = ground.coalition_count();
        CoefficientVector {
            ground,
            theta: vec![Rat::zero(); len],
        }
    }

    pub fn ground(&self) -> &PlayerSet {
        &self.ground
    }

    pub fn get(&self, c: Coalition) -> &Rat {
        &self.theta[c.mask() as usize]
    }

    pub fn set(&mut self, c: Coalition, v: Rat) {
        self.theta[c.mask() as usize] = v;
    }

    /// Entries indexed by coalition mask.
    pub fn as_slice(&self) -> &[Rat] {
        &self.theta
    }

    /// Non-zero entries in canonical coalition order.
    pub fn support(&self) -> Vec<(Coalition, Rat)> {
        let mut v: Vec<(Coalition, Rat)> = self
            .theta
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(m, t)| (Coalition::from_mask(m as u32), t.clone()))
            .collect();
        v.sort_by_key(|(c, _)| *c);
        v
    }

    /// `θ*(L) = θ(N \ L)`.
    pub fn conjugate(&self) -> CoefficientVector {
        let full = self.ground.full().mask() as usize;
        let theta = (0..self.theta.len())
            .map(|m| self.theta[full & !m].clone())
            .collect();
        CoefficientVector {
            ground: self.ground.clone(),
            theta,
        }
    }

    /// `Σ_L θ(L) = 0` and `Σ_{L ∋ i} θ(L) = 0` for every player `i`.
    pub fn satisfies_zero_sums(&self) -> bool {
        let total: Rat = self.theta.iter().sum();
        total.is_zero()
            && (0..self.ground.n()).all(|i| {
                let s: Rat = self
                    .theta
                    .iter()
                    .enumerate()
                    .filter(|(m, _)| m >> i & 1 == 1)
                    .map(|(_, t)| t)
                    .sum();
                s.is_zero()
            })
    }

    /// `θ(N) + θ(∅) = 1`.
    pub fn is_normalized(&self) -> bool {
        self.get(self.ground.full()) + self.get(Coalition::EMPTY) == Rat::one()
    }

    /// `self * a + other * b`, entry-wise.
    pub fn combine(
        &self,
        a: &Rat,
        other: &CoefficientVector,
        b: &Rat,
    ) -> Result<CoefficientVector> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch);
        }
        let theta = self
            .theta
            .iter()
            .zip(&other.theta)
            .map(|(x, y)| &(x * a) + &(y * b))
            .collect();
        Ok(CoefficientVector {
            ground: self.ground.clone(),
            theta,
        })
    }
}

/// The unique affine combination `Σ λ_S χ_S = r χ_N`, `Σ λ_S = 1`;
/// `coeffs` is aligned with the system's sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCombination {
    pub coeffs: Vec<Rat>,
    pub r: Rat,
}

impl AffineCombination {
    /// At most one negative coefficient and no zero coefficient.
    pub fn is_semi_conic_nonzero(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_zero())
            && self.coeffs.iter().filter(|c| c.is_negative()).count() <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiBalanceReport {
    pub system: SetSystem,
    pub is_semi_balanced: bool,
    pub is_balanced: bool,
    pub is_minimal: bool,
    /// The unique exceptional set of a purely min-semi-balanced system.
    pub exceptional: Option<Coalition>,
    /// Every member that can carry the single negative coefficient.
    pub exceptional_sets: Vec<Coalition>,
    pub combination: Option<AffineCombination>,
    pub theta: Option<CoefficientVector>,
    pub r: Option<Rat>,
    pub klass: Option<SystemClass>,
}

/// `Σ α_S χ_S = α_∅ χ_∅ + α_T χ_T + α_N χ_N` with coprime non-negative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerForm {
    /// Left-hand side: the non-exceptional sets in canonical order.
    pub alpha: Vec<(Coalition, BigUint)>,
    pub alpha_exceptional: Option<(Coalition, BigUint)>,
    pub alpha_empty: BigUint,
    pub alpha_n: BigUint,
}

fn ones_row(len: usize, idx: &[usize]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); len];
    for &i in idx {
        v[i] = Rat::one();
    }
    v
}

/// Rows `Σ_S λ_S χ_S(i)` for each player, over `nv` variables with the
/// set coefficients first.
fn incidence_rows(n: usize, sets: &[Coalition], nv: usize) -> Vec<Vec<Rat>> {
    (0..n)
        .map(|i| {
            let idx: Vec<usize> = (0..sets.len()).filter(|&k| sets[k].contains(i)).collect();
            ones_row(nv, &idx)
        })
        .collect()
}

/// Whether `Σ λ_S χ_S = χ_N` has a strictly positive solution.
pub fn balanced_sets(n: usize, sets: &[Coalition]) -> bool {
    let k = sets.len();
    let t = k;
    let nv = k + 1;
    let mut p = LinProgram::new(nv);
    for row in incidence_rows(n, sets, nv) {
        p.add_eq(row, Rat::one());
    }
    for s in 0..k {
        let mut row = vec![Rat::zero(); nv];
        row[s] = Rat::one();
        row[t] = -Rat::one();
        p.add_ge(row, Rat::zero());
    }
    p.add_le(ones_row(nv, &[t]), Rat::one());
    p.set_objective(ones_row(nv, &[t]));
    matches!(solve(&p), LpOutcome::Optimal(v, _) if v.is_positive())
}

/// Whether a combination with `λ_T = −1`, all other `λ_S > 0` yields a
/// constant vector.
fn semi_balanced_via(n: usize, sets: &[Coalition], t_idx: usize) -> bool {
    let k = sets.len();
    let (t, r) = (k, k + 1);
    let nv = k + 2;
    let mut p = LinProgram::new(nv);
    for mut row in incidence_rows(n, sets, nv) {
        row[r] = -Rat::one();
        p.add_eq(row, Rat::zero());
    }
    p.add_eq(ones_row(nv, &[t_idx]), -Rat::one());
    for s in (0..k).filter(|&s| s != t_idx) {
        let mut row = vec![Rat::zero(); nv];
        row[s] = Rat::one();
        row[t] = -Rat::one();
        p.add_ge(row, Rat::zero());
    }
    p.add_le(ones_row(nv, &[t]), Rat::one());
    p.set_objective(ones_row(nv, &[t]));
    matches!(solve(&p), LpOutcome::Optimal(v, _) if v.is_positive())
}

/// Whether `λ_T = −1`, `λ_S ≥ 0` otherwise, `Σ λ_S χ_S = r χ_N` is feasible.
pub fn is_exceptional_in(n: usize, sets: &[Coalition], t_idx: usize) -> bool {
    let k = sets.len();
    let r = k;
    let nv = k + 1;
    let mut p = LinProgram::new(nv);
    for mut row in incidence_rows(n, sets, nv) {
        row[r] = -Rat::one();
        p.add_eq(row, Rat::zero());
    }
    p.add_eq(ones_row(nv, &[t_idx]), -Rat::one());
    for s in (0..k).filter(|&s| s != t_idx) {
        p.set_lower_bound(s, Some(Rat::zero()));
    }
    solve(&p).is_feasible()
}

/// Semi-balancedness of an arbitrary list of distinct non-trivial coalitions.
pub fn semi_balanced_sets(n: usize, sets: &[Coalition]) -> bool {
    balanced_sets(n, sets) || (0..sets.len()).any(|t| semi_balanced_via(n, sets, t))
}

pub fn is_balanced(sys: &SetSystem) -> bool {
    balanced_sets(sys.n(), sys.sets())
}

pub fn is_semi_balanced(sys: &SetSystem) -> bool {
    semi_balanced_sets(sys.n(), sys.sets())
}

pub fn exceptional_sets(sys: &SetSystem) -> Vec<Coalition> {
    (0..sys.len())
        .filter(|&t| is_exceptional_in(sys.n(), sys.sets(), t))
        .map(|t| sys.sets()[t])
        .collect()
}

/// Affine independence, plus linear independence when the system covers `N`.
pub fn is_independent(sys: &SetSystem) -> bool {
    let vs = sys.incidence_vectors();
    if !ratlin::affinely_independent(&vs) {
        return false;
    }
    sys.union_all() != sys.ground().full() || ratlin::linearly_independent(&vs)
}

pub fn solve_unique_affine(sys: &SetSystem) -> Option<AffineCombination> {
    affine_combination_sets(sys.n(), sys.sets())
}

pub(crate) fn affine_combination_sets(n: usize, sets: &[Coalition]) -> Option<AffineCombination> {
    let k = sets.len();
    let nv = k + 1;
    let mut rows = incidence_rows(n, sets, nv);
    for row in &mut rows {
        row[k] = -Rat::one();
    }
    let mut rhs = vec![Rat::zero(); n];
    let mut sum = vec![Rat::one(); nv];
    sum[k] = Rat::zero();
    rows.push(sum);
    rhs.push(Rat::one());
    match ratlin::solve_exact(&RatMatrix::from_rows(rows, nv), &rhs) {
        Solution::Unique(mut x) => {
            let r = x.pop().expect("r is the last unknown");
            Some(AffineCombination { coeffs: x, r })
        }
        _ => None,
    }
}

/// The unique affine combination if it certifies minimality on its own.
fn minimal_certificate(sys: &SetSystem) -> Option<AffineCombination> {
    if !is_independent(sys) {
        return None;
    }
    solve_unique_affine(sys).filter(AffineCombination::is_semi_conic_nonzero)
}

pub fn is_min_semi_balanced(sys: &SetSystem) -> bool {
    is_independent(sys) && (minimal_certificate(sys).is_some() || is_semi_balanced(sys))
}

fn theta_from(sys: &SetSystem, comb: &AffineCombination) -> CoefficientVector {
    let g = sys.ground();
    let mut theta = CoefficientVector::zero(g.clone());
    for (&s, l) in sys.sets().iter().zip(&comb.coeffs) {
        theta.set(s, -l.clone());
    }
    theta.set(g.full(), comb.r.clone());
    theta.set(Coalition::EMPTY, &Rat::one() - &comb.r);
    theta
}

fn classify(sys: &SetSystem, balanced: bool) -> SystemClass {
    if balanced {
        SystemClass::MinBalanced
    } else if sys.union_all() != sys.ground().full() {
        SystemClass::UnionProper
    } else if !sys.intersection_all().is_empty() {
        SystemClass::IntersectionNonempty
    } else {
        SystemClass::FourthType
    }
}

pub fn analyze(sys: &SetSystem) -> SemiBalanceReport {
    if let Some(comb) = minimal_certificate(sys) {
        let negative: Vec<Coalition> = sys
            .sets()
            .iter()
            .zip(&comb.coeffs)
            .filter(|(_, c)| c.is_negative())
            .map(|(&s, _)| s)
            .collect();
        let balanced = negative.is_empty();
        return SemiBalanceReport {
            system: sys.clone(),
            is_semi_balanced: true,
            is_balanced: balanced,
            is_minimal: true,
            exceptional: negative.first().copied(),
            exceptional_sets: negative,
            theta: Some(theta_from(sys, &comb)),
            r: Some(comb.r.clone()),
            klass: Some(classify(sys, balanced)),
            combination: Some(comb),
        };
    }
    let balanced = is_balanced(sys);
    let semi = balanced || is_semi_balanced(sys);
    let exceptional = exceptional_sets(sys);
    SemiBalanceReport {
        system: sys.clone(),
        is_semi_balanced: semi,
        is_balanced: balanced,
        is_minimal: false,
        exceptional: None,
        exceptional_sets: exceptional,
        combination: None,
        theta: None,
        r: None,
        klass: None,
    }
}

pub fn coefficient_vector(sys: &SetSystem) -> Result<CoefficientVector> {
    let comb = minimal_certificate(sys).ok_or(Error::NotMinimal)?;
    Ok(theta_from(sys, &comb))
}

pub fn conjugate(theta: &CoefficientVector) -> CoefficientVector {
    theta.conjugate()
}

fn to_biguint(v: BigInt) -> BigUint {
    debug_assert!(v.sign() != Sign::Minus);
    v.magnitude().clone()
}

pub fn integer_form(sys: &SetSystem) -> Result<IntegerForm> {
    let comb = minimal_certificate(sys).ok_or(Error::NotMinimal)?;
    let ell = common_denominator(comb.coeffs.iter().chain(core::iter::once(&comb.r)));
    let mut ints: Vec<BigInt> = comb
        .coeffs
        .iter()
        .map(|c| scale_to_integer(c, &ell))
        .collect();
    let mut alpha_n = scale_to_integer(&comb.r, &ell);
    let g = ints.iter().fold(alpha_n.clone(), |acc, v| acc.gcd(v));
    if !g.is_zero() {
        for v in &mut ints {
            *v = &*v / &g;
        }
        alpha_n = &alpha_n / &g;
    }
    let mut alpha = Vec::new();
    let mut alpha_exceptional = None;
    let mut left_total = BigInt::zero();
    for (&s, v) in sys.sets().iter().zip(ints) {
        if v.is_negative() {
            alpha_exceptional = Some((s, to_biguint(-v)));
        } else {
            left_total += &v;
            alpha.push((s, to_biguint(v)));
        }
    }
    let right_known = &alpha_n
        + alpha_exceptional
            .as_ref()
            .map_or(BigInt::zero(), |(_, a)| BigInt::from(a.clone()));
    let alpha_empty = left_total - right_known;
    Ok(IntegerForm {
        alpha,
        alpha_exceptional,
        alpha_empty: to_biguint(alpha_empty),
        alpha_n: to_biguint(alpha_n),
    })
}

impl IntegerForm {
    /// Rebuilds θ: left coefficients negated, right coefficients positive,
    /// scaled so that `θ(N) + θ(∅) = 1`.
    pub fn to_theta(&self, ground: &PlayerSet) -> CoefficientVector {
        let to_rat = |v: &BigUint| Rat::from(BigInt::from(v.clone()));
        let mut theta = CoefficientVector::zero(ground.clone());
        let scale = to_rat(&self.alpha_n) + to_rat(&self.alpha_empty);
        let inv = scale.recip();
        for (s, a) in &self.alpha {
            theta.set(*s, -(&to_rat(a) * &inv));
        }
        if let Some((t, a)) = &self.alpha_exceptional {
            theta.set(*t, &to_rat(a) * &inv);
        }
        theta.set(ground.full(), &to_rat(&self.alpha_n) * &inv);
        theta.set(Coalition::EMPTY, &to_rat(&self.alpha_empty) * &inv);
        theta
    }
}
