//! Smith normal form with transformation matrices.
//!
//! For an integer matrix `M` we compute unimodular `U`, `V` with `U M V = D`
//! diagonal, `d_1 | d_2 | ... | d_r`, all `d_i > 0` and zeros after position `r`.
//! The pivot is always a nonzero entry of least absolute value in the active
//! block, which keeps intermediate entries small in practice.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// The nonzero diagonal entries `d_1 | ... | d_r`, including any units.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// `row[dst] += c * row[src]`, keeping `u_inv` in step.
    fn add_row(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
        self.u_inv.add_col_multiple(src, dst, &-c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.a.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }

    /// Position of a least-magnitude nonzero entry in `a[t.., t..]`.
    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| x.abs() < self.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `t` except for the pivot; returns false if a
    /// nonzero remainder was left behind.
    fn eliminate(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.a.rows() {
            if self.a[(i, t)].is_zero() {
                continue;
            }
            let q = &self.a[(i, t)] / &self.a[(t, t)];
            self.add_row(i, t, &-q);
            clean &= self.a[(i, t)].is_zero();
        }
        for j in t + 1..self.a.cols() {
            if self.a[(t, j)].is_zero() {
                continue;
            }
            let q = &self.a[(t, j)] / &self.a[(t, t)];
            self.add_col(j, t, &-q);
            clean &= self.a[(t, j)].is_zero();
        }
        clean
    }

    /// Least-magnitude nonzero entry on row `t` or column `t` besides the pivot.
    fn smallest_on_cross(&self, t: usize) -> Option<(usize, usize)> {
        let col = (t + 1..self.a.rows()).map(|i| (i, t));
        let row = (t + 1..self.a.cols()).map(|j| (t, j));
        col.chain(row)
            .filter(|&p| !self.a[p].is_zero())
            .min_by(|&p, &q| self.a[p].abs().cmp(&self.a[q].abs()))
    }

    /// An entry of the trailing block not divisible by the pivot.
    fn indivisible_entry(&self, t: usize) -> Option<usize> {
        let pivot = &self.a[(t, t)];
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !self.a[(i, j)].is_multiple_of(pivot) {
                    return Some(i);
                }
            }
        }
        None
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut r = Reducer {
        a: m.clone(),
        u: IntMatrix::identity(rows),
        u_inv: IntMatrix::identity(rows),
        v: IntMatrix::identity(cols),
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = r.smallest_in_block(t) else {
            break;
        };
        r.swap_rows(t, pi);
        r.swap_cols(t, pj);
        loop {
            if !r.eliminate(t) {
                let (pi, pj) = r.smallest_on_cross(t).expect("remainder left on the cross");
                r.swap_rows(t, pi);
                r.swap_cols(t, pj);
                continue;
            }
            match r.indivisible_entry(t) {
                Some(i) => {
                    // Pulling row i into the pivot row exposes the offending entry
                    // on the pivot row, where elimination shrinks the pivot.
                    r.add_row(t, i, &BigInt::from(1));
                }
                None => break,
            }
        }
        if r.a[(t, t)].is_negative() {
            r.negate_row(t);
        }
        t += 1;
    }

    Smith {
        u: r.u,
        u_inv: r.u_inv,
        d: r.a,
        v: r.v,
        rank: t,
    }
}

/// A basis of the integer kernel `{x : M x = 0}`, as columns.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let idx: Vec<usize> = (snf.rank..m.cols()).collect();
    snf.v.select_cols(&idx)
}
