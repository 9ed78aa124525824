//! Smith normal form over the integers.
//!
//! The elimination runs first in checked `i64` arithmetic; if any intermediate
//! value overflows, it is redone with arbitrary-precision integers. Pivots are
//! always chosen with minimal absolute value.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;

/// `D = U·A·V` with `U`, `V` unimodular and `D` diagonal with
/// `d₁ | d₂ | … | d_r`, `dᵢ > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    /// Inverse of `u`, tracked during elimination.
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// The nonzero diagonal entries `d₁, …, d_r`.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)]).take_while(|&x| x != 0).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(x: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_lt(&self, other: &Self) -> bool;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    /// Quotient rounded toward zero.
    fn quot(&self, other: &Self) -> Self;
    fn divides(&self, other: &Self) -> bool;
    fn to_i64(&self) -> Option<i64>;
}

impl Scalar for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i64::checked_add(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn quot(&self, other: &Self) -> Self {
        self / other
    }
    fn divides(&self, other: &Self) -> bool {
        other % self == 0
    }
    fn to_i64(&self) -> Option<i64> {
        Some(*self)
    }
}

impl Scalar for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, other: &Self) -> Self {
        self / other
    }
    fn divides(&self, other: &Self) -> bool {
        Zero::is_zero(&(other % self))
    }
    fn to_i64(&self) -> Option<i64> {
        ToPrimitive::to_i64(self)
    }
}

struct Overflow;

type Mat<T> = Vec<Vec<T>>;

struct Elimination<T> {
    d: Mat<T>,
    u: Mat<T>,
    u_inv: Mat<T>,
    v: Mat<T>,
}

fn identity<T: Scalar>(n: usize) -> Mat<T> {
    (0..n).map(|i| (0..n).map(|j| T::from_i64(i64::from(i == j))).collect()).collect()
}

/// `dst += c · src` on rows of `m`.
fn add_row<T: Scalar>(m: &mut Mat<T>, dst: usize, src: usize, c: &T) -> Result<(), Overflow> {
    for j in 0..m[dst].len() {
        let delta = m[src][j].checked_mul(c).ok_or(Overflow)?;
        m[dst][j] = m[dst][j].checked_add(&delta).ok_or(Overflow)?;
    }
    Ok(())
}

/// `dst += c · src` on columns of `m`.
fn add_col<T: Scalar>(m: &mut Mat<T>, dst: usize, src: usize, c: &T) -> Result<(), Overflow> {
    for row in m.iter_mut() {
        let delta = row[src].checked_mul(c).ok_or(Overflow)?;
        row[dst] = row[dst].checked_add(&delta).ok_or(Overflow)?;
    }
    Ok(())
}

impl<T: Scalar> Elimination<T> {
    fn new(a: &IntMatrix) -> Self {
        let d = (0..a.rows()).map(|i| a.row(i).iter().map(|&x| T::from_i64(x)).collect()).collect();
        Elimination { d, u: identity(a.rows()), u_inv: identity(a.rows()), v: identity(a.cols()) }
    }

    fn rows(&self) -> usize {
        self.d.len()
    }

    fn cols(&self) -> usize {
        self.v.len()
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.d.swap(i, j);
            self.u.swap(i, j);
            for row in self.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in self.d.iter_mut().chain(self.v.iter_mut()) {
                row.swap(i, j);
            }
        }
    }

    /// Row `dst += c · row src`; the inverse transform acts on columns of `u_inv`.
    fn row_op(&mut self, dst: usize, src: usize, c: &T) -> Result<(), Overflow> {
        add_row(&mut self.d, dst, src, c)?;
        add_row(&mut self.u, dst, src, c)?;
        let neg = c.checked_neg().ok_or(Overflow)?;
        add_col(&mut self.u_inv, src, dst, &neg)
    }

    fn col_op(&mut self, dst: usize, src: usize, c: &T) -> Result<(), Overflow> {
        add_col(&mut self.d, dst, src, c)?;
        add_col(&mut self.v, dst, src, c)
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        for x in self.d[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = x.checked_neg().ok_or(Overflow)?;
        }
        for row in self.u_inv.iter_mut() {
            row[i] = row[i].checked_neg().ok_or(Overflow)?;
        }
        Ok(())
    }

    fn min_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows() {
            for j in t..self.cols() {
                let x = &self.d[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs_lt(&self.d[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Smallest nonzero entry in row `t` or column `t` (from the pivot on).
    fn min_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
            let x = &self.d[i][j];
            let b = &self.d[best.0][best.1];
            if !x.is_zero() && (b.is_zero() || x.abs_lt(b)) {
                *best = (i, j);
            }
        };
        for i in t..self.rows() {
            consider(i, t, &mut best);
        }
        for j in t..self.cols() {
            consider(t, j, &mut best);
        }
        best
    }

    fn run(&mut self) -> Result<(), Overflow> {
        let limit = self.rows().min(self.cols());
        let mut t = 0;
        while t < limit {
            let Some((pi, pj)) = self.min_in_block(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows() {
                    if !self.d[i][t].is_zero() {
                        let q = self.d[i][t].quot(&self.d[t][t]).checked_neg().ok_or(Overflow)?;
                        self.row_op(i, t, &q)?;
                        clean &= self.d[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols() {
                    if !self.d[t][j].is_zero() {
                        let q = self.d[t][j].quot(&self.d[t][t]).checked_neg().ok_or(Overflow)?;
                        self.col_op(j, t, &q)?;
                        clean &= self.d[t][j].is_zero();
                    }
                }
                if !clean {
                    let (i, j) = self.min_in_cross(t);
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                let pivot = self.d[t][t].clone();
                let offender =
                    (t + 1..self.rows()).find(|&i| (t + 1..self.cols()).any(|j| !pivot.divides(&self.d[i][j])));
                match offender {
                    Some(i) => self.row_op(t, i, &T::from_i64(1))?,
                    None => break,
                }
            }
            if self.d[t][t].is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Ok(())
    }

    fn into_form(self) -> Option<SmithForm> {
        fn convert<T: Scalar>(m: &Mat<T>, cols: usize) -> Option<IntMatrix> {
            let rows = m
                .iter()
                .map(|r| r.iter().map(Scalar::to_i64).collect::<Option<Vec<_>>>())
                .collect::<Option<Vec<_>>>()?;
            if rows.is_empty() {
                return Some(IntMatrix::zeros(0, cols));
            }
            Some(IntMatrix::from_rows(&rows))
        }
        let (r, c) = (self.rows(), self.cols());
        Some(SmithForm {
            u: convert(&self.u, r)?,
            u_inv: convert(&self.u_inv, r)?,
            d: convert(&self.d, c)?,
            v: convert(&self.v, c)?,
        })
    }
}

/// Computes the Smith normal form of `a`.
///
/// Panics only if the final transforms themselves do not fit in `i64`.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let mut fast = Elimination::<i64>::new(a);
    if fast.run().is_ok() {
        if let Some(form) = fast.into_form() {
            return form;
        }
    }
    let mut exact = Elimination::<BigInt>::new(a);
    if exact.run().is_err() {
        unreachable!("big-integer elimination cannot overflow");
    }
    exact.into_form().expect("Smith transforms do not fit in i64")
}
