//! Exact rational linear algebra for small dense systems.

mod rat;

pub use rat::{common_denominator, scale_to_integer, ParseRatError, Rat};

use alloc::vec;
use alloc::vec::Vec;

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rat>) -> Self {
        assert_eq!(
            data.len(),
            rows * cols,
            "entry count does not match dimensions"
        );
        RatMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rat::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    /// Builds a matrix from equally long rows; `cols` is used when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(cols, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        RatMatrix::new(r, c, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rat]) -> Vec<Rat> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduction to reduced row echelon form over the first
    /// `pivot_cols` columns. Returns the pivot column of each pivot row.
    fn rref(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            if r == self.rows {
                break;
            }
            // Prefer the entry with the smallest bit size to keep growth down.
            let Some(p) = (r..self.rows)
                .filter(|&i| !self[(i, c)].is_zero())
                .min_by_key(|&i| self[(i, c)].bit_size())
            else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(i, j)] - &(&f * &self[(r, j)]);
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }
}

impl core::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    let mut work = m.clone();
    let cols = work.cols;
    work.rref(cols).len()
}

/// Whether the given vectors are affinely independent, i.e. the only
/// combination with zero coefficient sum yielding the zero vector is trivial.
pub fn affinely_independent(vectors: &[Vec<Rat>]) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let dim = first.len();
    let rows: Vec<Vec<Rat>> = vectors
        .iter()
        .map(|v| {
            assert_eq!(v.len(), dim, "vectors of different dimension");
            let mut row = v.clone();
            row.push(Rat::one());
            row
        })
        .collect();
    rank(&RatMatrix::from_rows(rows, dim + 1)) == vectors.len()
}

/// Whether the given vectors are linearly independent.
pub fn linearly_independent(vectors: &[Vec<Rat>]) -> bool {
    let Some(first) = vectors.first() else {
        return true;
    };
    let dim = first.len();
    rank(&RatMatrix::from_rows(vectors.to_vec(), dim)) == vectors.len()
}

/// Classification of a linear system `a x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    NoSolution,
    Unique(Vec<Rat>),
    Underdetermined,
}

pub fn solve_exact(a: &RatMatrix, b: &[Rat]) -> Solution {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.rref(n);
    for i in pivots.len()..aug.rows() {
        if !aug[(i, n)].is_zero() {
            return Solution::NoSolution;
        }
    }
    if pivots.len() < n {
        return Solution::Underdetermined;
    }
    Solution::Unique((0..n).map(|i| aug[(i, n)].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(rows: &[&[i64]]) -> RatMatrix {
        let c = rows.first().map_or(0, |r| r.len());
        RatMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rat::from_integer(v)).collect())
                .collect(),
            c,
        )
    }

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| Rat::from_integer(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        // a, b, ab on abc
        assert_eq!(rank(&ints(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]])), 2);
        // a, ab, bc, abd on abcd
        assert_eq!(
            rank(&ints(&[
                &[1, 0, 0, 0],
                &[1, 1, 0, 0],
                &[0, 1, 1, 0],
                &[1, 1, 0, 1]
            ])),
            4
        );
    }

    #[test]
    fn affine_independence_examples() {
        // a, b, ab, abc, abd on abcd
        let vs = [
            rv(&[1, 0, 0, 0]),
            rv(&[0, 1, 0, 0]),
            rv(&[1, 1, 0, 0]),
            rv(&[1, 1, 1, 0]),
            rv(&[1, 1, 0, 1]),
        ];
        assert!(affinely_independent(&vs));
        assert!(!linearly_independent(&vs));

        let x = rv(&[1, 1, 0, 0]);
        let y = rv(&[0, 0, 1, 1]);
        let half = Rat::new(1, 2);
        let mid: Vec<Rat> = x.iter().zip(&y).map(|(a, b)| &(a + b) * &half).collect();
        assert!(!affinely_independent(&[x.clone(), y.clone(), mid]));
        // zero vector with x, y and x + y is still affinely dependent
        let sum: Vec<Rat> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        assert!(!affinely_independent(&[x, y, sum, rv(&[0, 0, 0, 0])]));
    }

    #[test]
    fn solve_examples() {
        assert_eq!(
            solve_exact(&RatMatrix::identity(3), &rv(&[1, 2, 3])),
            Solution::Unique(rv(&[1, 2, 3]))
        );
        assert_eq!(
            solve_exact(&ints(&[&[1, 1]]), &rv(&[1])),
            Solution::Underdetermined
        );
        assert_eq!(
            solve_exact(&ints(&[&[1], &[1]]), &rv(&[0, 1])),
            Solution::NoSolution
        );
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
                RatMatrix::new(r, c, v.into_iter().map(Rat::from_integer).collect())
            })
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in small_matrix()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn unique_solutions_reproduce_rhs(m in small_matrix(), x in proptest::collection::vec(-4i64..=4, 4)) {
            let x: Vec<Rat> = x.into_iter().take(m.cols()).map(Rat::from_integer).collect();
            prop_assume!(x.len() == m.cols());
            let b = m.mul_vec(&x);
            match solve_exact(&m, &b) {
                Solution::Unique(sol) => prop_assert_eq!(m.mul_vec(&sol), b),
                Solution::Underdetermined => prop_assert!(rank(&m) < m.cols()),
                Solution::NoSolution => prop_assert!(false, "consistent system reported inconsistent"),
            }
        }

        #[test]
        fn affine_independence_is_order_invariant(
            vs in proptest::collection::vec(proptest::collection::vec(0i64..=1, 4), 1..6),
            rot in 0usize..6, coord in 0usize..4,
        ) {
            let vs: Vec<Vec<Rat>> = vs.into_iter().map(|v| v.into_iter().map(Rat::from_integer).collect()).collect();
            let mut shuffled = vs.clone();
            let k = rot % shuffled.len();
            shuffled.rotate_left(k);
            for v in &mut shuffled {
                v.rotate_left(coord);
            }
            prop_assert_eq!(affinely_independent(&vs), affinely_independent(&shuffled));
        }
    }
}
