//! Smith normal form over the integers with exact arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::BigMatrix;

/// `d = u · m · v` with `u`, `v` unimodular and `d` diagonal,
/// `d_i >= 0`, `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    pub u: BigMatrix,
    pub d: BigMatrix,
    pub v: BigMatrix,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.nrows().min(self.d.ncols());
        (0..n).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| *x > BigInt::one())
            .collect()
    }
}

struct Reducer {
    u: BigMatrix,
    d: BigMatrix,
    v: BigMatrix,
}

impl Reducer {
    // row_a += k * row_b
    fn add_row(&mut self, a: usize, b: usize, k: &BigInt) {
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.ncols() {
                let t = m.get(b, j) * k;
                *m.get_mut(a, j) += t;
            }
        }
    }

    // col_a += k * col_b
    fn add_col(&mut self, a: usize, b: usize, k: &BigInt) {
        for m in [&mut self.d, &mut self.v] {
            for i in 0..m.nrows() {
                let t = m.get(i, b) * k;
                *m.get_mut(i, a) += t;
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_columns(a, b);
        self.v.swap_columns(a, b);
    }

    fn negate_row(&mut self, a: usize) {
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.ncols() {
                let x = -m.get(a, j).clone();
                *m.get_mut(a, j) = x;
            }
        }
    }

    /// Smallest nonzero entry (by absolute value) in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.d.nrows() {
            for j in t..self.d.ncols() {
                let x = self.d.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce_at(&mut self, t: usize) -> bool {
        let Some((pi, pj)) = self.min_entry(t) else {
            return false;
        };
        self.swap_rows(t, pi);
        self.swap_cols(t, pj);
        loop {
            let p = self.d.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..self.d.nrows() {
                let x = self.d.get(i, t).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                self.add_row(i, t, &-q);
                if !self.d.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..self.d.ncols() {
                let x = self.d.get(t, j).clone();
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                self.add_col(j, t, &-q);
                if !self.d.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // A smaller remainder exists in row or column t; move it to the pivot.
                let (bi, bj) = self.min_in_cross(t);
                self.swap_rows(t, bi);
                self.swap_cols(t, bj);
                continue;
            }
            // Pivot must divide the whole trailing block.
            let bad = (t + 1..self.d.nrows())
                .flat_map(|i| (t + 1..self.d.ncols()).map(move |j| (i, j)))
                .find(|&(i, j)| !self.d.get(i, j).is_multiple_of(&p));
            match bad {
                Some((i, _)) => self.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if self.d.get(t, t).is_negative() {
            self.negate_row(t);
        }
        true
    }

    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let row = (t..self.d.ncols()).map(|j| (t, j));
        let col = (t + 1..self.d.nrows()).map(|i| (i, t));
        row.chain(col)
            .filter(|&(i, j)| !self.d.get(i, j).is_zero())
            .min_by_key(|&(i, j)| self.d.get(i, j).abs())
            .expect("pivot row or column is nonzero")
    }
}

/// Computes the Smith normal form of `m`.
pub fn smith_normal_form(m: &BigMatrix) -> Snf {
    let mut r = Reducer {
        u: BigMatrix::identity(m.nrows()),
        d: m.clone(),
        v: BigMatrix::identity(m.ncols()),
    };
    for t in 0..m.nrows().min(m.ncols()) {
        if !r.reduce_at(t) {
            break;
        }
    }
    Snf {
        u: r.u,
        d: r.d,
        v: r.v,
    }
}
