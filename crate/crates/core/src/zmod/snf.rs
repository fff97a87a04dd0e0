//! Smith normal form with tracked unimodular transforms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::matrix::IntegerMatrix;

/// Coefficient ring for elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Ring {
    Integers,
    /// The field with two elements.
    Gf2,
}

/// `U * A * V = D` with `U`, `V` invertible over the ring.
///
/// Pivoting: at step `t` the nonzero entry of least absolute value in the
/// remaining block (first in row-major order) is moved to `(t, t)`. This
/// fixes the bases used for homology generators.
#[derive(Clone, Debug, Serialize)]
pub struct Snf {
    pub ring: Ring,
    pub u: IntegerMatrix,
    pub u_inv: IntegerMatrix,
    pub v: IntegerMatrix,
    pub v_inv: IntegerMatrix,
    /// Diagonal of `D`, length `min(rows, cols)`, nonnegative, each entry
    /// dividing the next.
    pub diag: Vec<BigInt>,
    pub rank: usize,
}

impl Snf {
    pub fn d_matrix(&self) -> IntegerMatrix {
        IntegerMatrix::diagonal(self.u.rows(), self.v.cols(), &self.diag)
    }

    /// Nontrivial invariant factors (entries other than 0 and 1).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }
}

struct Work {
    a: IntegerMatrix,
    u: IntegerMatrix,
    u_inv: IntegerMatrix,
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
    ring: Ring,
}

impl Work {
    fn norm(&mut self) {
        if self.ring == Ring::Gf2 {
            self.a.reduce_mod2();
            self.u.reduce_mod2();
            self.u_inv.reduce_mod2();
            self.v.reduce_mod2();
            self.v_inv.reduce_mod2();
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += k row[src]`
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_row(dst, src, k);
        self.u.add_row(dst, src, k);
        self.u_inv.add_col(src, dst, &-k);
    }

    /// `col[dst] += k col[src]`
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        self.a.add_col(dst, src, k);
        self.v.add_col(dst, src, k);
        self.v_inv.add_row(src, dst, &-k);
    }

    fn neg_row(&mut self, i: usize) {
        self.a.neg_row(i);
        self.u.neg_row(i);
        self.u_inv.neg_col(i);
    }

    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a.get(bi, bj).abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

/// Smith normal form over the integers.
pub fn smith_normal_form(a: &IntegerMatrix) -> Snf {
    normal_form(a, Ring::Integers)
}

/// Rank normal form over the two-element field (entries read mod 2).
pub fn gf2_normal_form(a: &IntegerMatrix) -> Snf {
    normal_form(&a.mod2(), Ring::Gf2)
}

pub fn normal_form(a: &IntegerMatrix, ring: Ring) -> Snf {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.clone(),
        u: IntegerMatrix::identity(m),
        u_inv: IntegerMatrix::identity(m),
        v: IntegerMatrix::identity(n),
        v_inv: IntegerMatrix::identity(n),
        ring,
    };
    w.norm();
    let k = m.min(n);
    let mut t = 0;
    while t < k {
        let Some((pi, pj)) = w.min_pivot(t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        // clear column and row; restart on a smaller remainder
        let mut dirty = false;
        for i in t + 1..m {
            if w.a.get(i, t).is_zero() {
                continue;
            }
            let q = w.a.get(i, t).div_floor(w.a.get(t, t));
            w.add_row(i, t, &-q);
            if !w.a.get(i, t).is_zero() {
                dirty = true;
            }
        }
        for j in t + 1..n {
            if w.a.get(t, j).is_zero() {
                continue;
            }
            let q = w.a.get(t, j).div_floor(w.a.get(t, t));
            w.add_col(j, t, &-q);
            if !w.a.get(t, j).is_zero() {
                dirty = true;
            }
        }
        w.norm();
        if dirty {
            continue;
        }
        // divisibility: pull a row with an entry not divisible by the pivot
        if ring == Ring::Integers {
            let p = w.a.get(t, t).clone();
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !w.a.get(i, j).is_multiple_of(&p) {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = offender {
                w.add_row(t, i, &BigInt::one());
                continue;
            }
            if w.a.get(t, t).is_negative() {
                w.neg_row(t);
            }
        }
        t += 1;
    }
    let diag: Vec<BigInt> = (0..k).map(|i| w.a.get(i, i).clone()).collect();
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    Snf {
        ring,
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        diag,
        rank,
    }
}
