//! Exact linear programming over the rationals.
//!
//! A dense two-phase tableau simplex with Bland's rule. Problems here are
//! small (tens of rows and columns), so clarity wins over a revised method.

use alloc::vec;
use alloc::vec::Vec;

use crate::ratlin::Rat;

/// `maximize objective·x` subject to equality rows, `row·x ≥ rhs` rows and
/// optional per-variable lower bounds (`None` means the variable is free).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinProgram {
    pub num_vars: usize,
    pub objective: Vec<Rat>,
    pub eq_constraints: Vec<(Vec<Rat>, Rat)>,
    pub ineq_constraints: Vec<(Vec<Rat>, Rat)>,
    pub var_lower_bounds: Vec<Option<Rat>>,
}

impl LinProgram {
    /// A program with `num_vars` free variables, no constraints and a zero objective.
    pub fn new(num_vars: usize) -> Self {
        LinProgram {
            num_vars,
            objective: vec![Rat::zero(); num_vars],
            eq_constraints: Vec::new(),
            ineq_constraints: Vec::new(),
            var_lower_bounds: vec![None; num_vars],
        }
    }

    pub fn set_objective(&mut self, objective: Vec<Rat>) {
        assert_eq!(objective.len(), self.num_vars);
        self.objective = objective;
    }

    pub fn add_eq(&mut self, row: Vec<Rat>, rhs: Rat) {
        assert_eq!(row.len(), self.num_vars);
        self.eq_constraints.push((row, rhs));
    }

    /// `row·x ≥ rhs`.
    pub fn add_ge(&mut self, row: Vec<Rat>, rhs: Rat) {
        assert_eq!(row.len(), self.num_vars);
        self.ineq_constraints.push((row, rhs));
    }

    /// `row·x ≤ rhs`, stored as `−row·x ≥ −rhs`.
    pub fn add_le(&mut self, row: Vec<Rat>, rhs: Rat) {
        assert_eq!(row.len(), self.num_vars);
        self.ineq_constraints
            .push((row.into_iter().map(|v| -v).collect(), -rhs));
    }

    pub fn set_lower_bound(&mut self, var: usize, bound: Option<Rat>) {
        self.var_lower_bounds[var] = bound;
    }

    pub fn is_satisfied_by(&self, x: &[Rat]) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        let bounds_ok = self
            .var_lower_bounds
            .iter()
            .zip(x)
            .all(|(l, v)| l.as_ref().is_none_or(|l| v >= l));
        bounds_ok
            && self.eq_constraints.iter().all(|(r, b)| dot(r, x) == *b)
            && self.ineq_constraints.iter().all(|(r, b)| dot(r, x) >= *b)
    }
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(Rat, Vec<Rat>),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            LpOutcome::Optimal(v, _) => Some(v),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rat]> {
        match self {
            LpOutcome::Optimal(_, p) => Some(p),
            _ => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }
}

/// How an original variable is expressed through non-negative columns.
enum VarMap {
    Shifted(usize, Rat),
    Split(usize, usize),
}

struct Tableau {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<Rat>>,
    /// Reduced costs `c_j − c_B B⁻¹ A_j`; last entry is minus the objective value.
    cost: Vec<Rat>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if inv != Rat::one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let prow = core::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..=self.cols).filter(|&j| !prow[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nz {
                row[j] -= &f * &prow[j];
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for &j in &nz {
                self.cost[j] -= &f * &prow[j];
            }
        }
        self.rows[r] = prow;
        self.basis[r] = c;
    }

    /// Runs Bland's rule over columns `< active`. Returns false if unbounded.
    fn optimize(&mut self, active: usize) -> bool {
        loop {
            let Some(c) = (0..active).find(|&j| self.cost[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c);
        }
    }
}

/// Maximizes `p.objective` over the feasible region of `p`.
pub fn solve(p: &LinProgram) -> LpOutcome {
    assert_eq!(p.objective.len(), p.num_vars);
    assert_eq!(p.var_lower_bounds.len(), p.num_vars);

    // Column layout: structural columns, slack columns, artificial columns.
    let mut maps = Vec::with_capacity(p.num_vars);
    let mut ncols = 0;
    for lb in &p.var_lower_bounds {
        match lb {
            Some(l) => {
                maps.push(VarMap::Shifted(ncols, l.clone()));
                ncols += 1;
            }
            None => {
                maps.push(VarMap::Split(ncols, ncols + 1));
                ncols += 2;
            }
        }
    }
    let structural = ncols;
    let n_slack = p.ineq_constraints.len();
    let m = p.eq_constraints.len() + n_slack;
    let real_cols = structural + n_slack;
    let cols = real_cols + m;

    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let all = p.eq_constraints.iter().map(|c| (c, None)).chain(
        p.ineq_constraints
            .iter()
            .enumerate()
            .map(|(k, c)| (c, Some(k))),
    );
    for (i, ((coeffs, rhs), slack)) in all.enumerate() {
        assert_eq!(coeffs.len(), p.num_vars, "constraint row length");
        let mut row = vec![Rat::zero(); cols + 1];
        let mut b = rhs.clone();
        for (a, map) in coeffs.iter().zip(&maps) {
            if a.is_zero() {
                continue;
            }
            match map {
                VarMap::Shifted(j, l) => {
                    row[*j] = a.clone();
                    if !l.is_zero() {
                        b -= a * l;
                    }
                }
                VarMap::Split(j, k) => {
                    row[*j] = a.clone();
                    row[*k] = -a.clone();
                }
            }
        }
        if let Some(k) = slack {
            row[structural + k] = -Rat::one();
        }
        row[cols] = b;
        if row[cols].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[real_cols + i] = Rat::one();
        rows.push(row);
    }

    // Phase 1: maximize −Σ artificials.
    let mut cost = vec![Rat::zero(); cols + 1];
    for row in &rows {
        for j in 0..real_cols {
            if !row[j].is_zero() {
                cost[j] += &row[j];
            }
        }
        cost[cols] += &row[cols];
    }
    let mut t = Tableau {
        rows,
        cost,
        basis: (real_cols..cols).collect(),
        cols,
    };
    t.optimize(real_cols);
    if !t.cost[cols].is_zero() {
        return LpOutcome::Infeasible;
    }

    // Drive remaining artificials out of the basis or drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= real_cols {
            match (0..real_cols).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    // Phase 2 on the real columns only.
    let mut c = vec![Rat::zero(); cols + 1];
    for (obj, map) in p.objective.iter().zip(&maps) {
        match map {
            VarMap::Shifted(j, _) => c[*j] = obj.clone(),
            VarMap::Split(j, k) => {
                c[*j] = obj.clone();
                c[*k] = -obj.clone();
            }
        }
    }
    let mut cost = c.clone();
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        if c[b].is_zero() {
            continue;
        }
        for j in 0..=cols {
            if !row[j].is_zero() {
                cost[j] -= &c[b] * &row[j];
            }
        }
    }
    t.cost = cost;
    if !t.optimize(real_cols) {
        return LpOutcome::Unbounded;
    }

    let mut y = vec![Rat::zero(); cols];
    for (row, &b) in t.rows.iter().zip(&t.basis) {
        y[b] = row[cols].clone();
    }
    let point: Vec<Rat> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted(j, l) => &y[*j] + l,
            VarMap::Split(j, k) => &y[*j] - &y[*k],
        })
        .collect();
    assert!(
        p.is_satisfied_by(&point),
        "simplex returned a point violating the constraints"
    );
    let value = dot(&p.objective, &point);
    LpOutcome::Optimal(value, point)
}

/// Minimizes `c·x` over the feasible region of `p`, ignoring `p.objective`.
pub fn min_over_polyhedron(p: &LinProgram, c: &[Rat]) -> LpOutcome {
    let mut q = p.clone();
    q.set_objective(c.iter().map(|v| -v.clone()).collect());
    match solve(&q) {
        LpOutcome::Optimal(v, x) => LpOutcome::Optimal(-v, x),
        other => other,
    }
}

/// A feasible point of `p`, if any.
pub fn feasible_point(p: &LinProgram) -> Option<Vec<Rat>> {
    let mut q = p.clone();
    q.set_objective(vec![Rat::zero(); p.num_vars]);
    match solve(&q) {
        LpOutcome::Optimal(_, x) => Some(x),
        _ => None,
    }
}
