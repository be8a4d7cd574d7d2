//! Smith normal form over the integers.
//!
//! The elimination runs first on checked `i64` arithmetic and restarts on
//! `BigInt` the moment any intermediate value would overflow, so results are
//! always exact.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;

/// Which transformation matrices to accumulate alongside the diagonal form.
#[derive(Clone, Copy, Debug, Default)]
pub struct SnfRequest {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl SnfRequest {
    pub const ALL: SnfRequest = SnfRequest {
        u: true,
        u_inv: true,
        v: true,
        v_inv: true,
    };
    pub const NONE: SnfRequest = SnfRequest {
        u: false,
        u_inv: false,
        v: false,
        v_inv: false,
    };
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// nonnegative entries `d_1 | d_2 | ... | d_r` followed by zeros.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
    pub rank: usize,
}

impl Snf {
    /// Nonzero diagonal entries, in order.
    pub fn nonzero_diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal().into_iter().take(self.rank).collect()
    }

    /// Diagonal entries greater than one.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.nonzero_diagonal()
            .into_iter()
            .filter(|d| *d > BigInt::from(1))
            .collect()
    }
}

/// Full factorization `(U, D, V)` with `U A V = D`.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let snf = snf_with(
        a,
        SnfRequest {
            u: true,
            v: true,
            ..SnfRequest::NONE
        },
    );
    (snf.u.unwrap(), snf.d, snf.v.unwrap())
}

pub fn snf_with(a: &IntMatrix, req: SnfRequest) -> Snf {
    if let Some(small) = to_small(a) {
        if let Some(done) = run::<i64>(small, a.rows(), a.cols(), req) {
            return done.into_snf(a.rows(), a.cols());
        }
    }
    let big: Vec<BigInt> = a.entries().to_vec();
    run::<BigInt>(big, a.rows(), a.cols(), req)
        .expect("bigint elimination cannot overflow")
        .into_snf(a.rows(), a.cols())
}

fn to_small(a: &IntMatrix) -> Option<Vec<i64>> {
    a.entries().iter().map(|x| x.to_i64()).collect()
}

trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn abs_gt(&self, other: &Self) -> bool;
    /// `self + q * b`
    fn add_mul(&self, q: &Self, b: &Self) -> Option<Self>;
    /// Quotient rounded toward negative infinity.
    fn div_floor(&self, b: &Self) -> Option<Self>;
    fn divides(&self, b: &Self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn abs_gt(&self, other: &Self) -> bool {
        self.unsigned_abs() > other.unsigned_abs()
    }
    fn add_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|p| self.checked_add(p))
    }
    fn div_floor(&self, b: &Self) -> Option<Self> {
        let q = self.checked_div(*b)?;
        if (self % b != 0) && ((*self < 0) != (*b < 0)) {
            q.checked_sub(1)
        } else {
            Some(q)
        }
    }
    fn divides(&self, b: &Self) -> bool {
        if *self == 0 {
            *b == 0
        } else {
            b.checked_rem(*self).map_or(false, |r| r == 0)
        }
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn abs_gt(&self, other: &Self) -> bool {
        self.magnitude() > other.magnitude()
    }
    fn add_mul(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self + q * b)
    }
    fn div_floor(&self, b: &Self) -> Option<Self> {
        Some(num_integer::Integer::div_floor(self, b))
    }
    fn divides(&self, b: &Self) -> bool {
        if Zero::is_zero(self) {
            Zero::is_zero(b)
        } else {
            Zero::is_zero(&(b % self))
        }
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Dense<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Dense {
            rows: n,
            cols: n,
            data,
        }
    }
    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }
    /// row_i += q * row_j
    fn row_add(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for c in 0..self.cols {
            let b = &self.data[j * self.cols + c];
            if b.is_zero() {
                continue;
            }
            let v = self.data[i * self.cols + c].add_mul(q, b)?;
            self.data[i * self.cols + c] = v;
        }
        Some(())
    }
    /// col_i += q * col_j
    fn col_add(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        for r in 0..self.rows {
            let b = &self.data[r * self.cols + j];
            if b.is_zero() {
                continue;
            }
            let v = self.data[r * self.cols + i].add_mul(q, b)?;
            self.data[r * self.cols + i] = v;
        }
        Some(())
    }
    fn neg_row(&mut self, i: usize) -> Option<()> {
        for c in 0..self.cols {
            let v = self.data[i * self.cols + c].neg()?;
            self.data[i * self.cols + c] = v;
        }
        Some(())
    }
    fn neg_col(&mut self, j: usize) -> Option<()> {
        for r in 0..self.rows {
            let v = self.data[r * self.cols + j].neg()?;
            self.data[r * self.cols + j] = v;
        }
        Some(())
    }
    fn to_int_matrix(&self) -> IntMatrix {
        IntMatrix::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(Scalar::to_big).collect(),
        )
    }
}

struct Work<T> {
    a: Dense<T>,
    u: Option<Dense<T>>,
    u_inv: Option<Dense<T>>,
    v: Option<Dense<T>>,
    v_inv: Option<Dense<T>>,
    rank: usize,
}

impl<T: Scalar> Work<T> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.swap_cols(i, j);
        }
    }
    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }
    /// row_i += q row_j; the inverse factor picks up col_j -= q col_i.
    fn row_add(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        self.a.row_add(i, j, q)?;
        if let Some(u) = &mut self.u {
            u.row_add(i, j, q)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.col_add(j, i, &q.neg()?)?;
        }
        Some(())
    }
    /// col_i += q col_j; the inverse factor picks up row_j -= q row_i.
    fn col_add(&mut self, i: usize, j: usize, q: &T) -> Option<()> {
        self.a.col_add(i, j, q)?;
        if let Some(v) = &mut self.v {
            v.col_add(i, j, q)?;
        }
        if let Some(vi) = &mut self.v_inv {
            vi.row_add(j, i, &q.neg()?)?;
        }
        Some(())
    }
    fn neg_row(&mut self, i: usize) -> Option<()> {
        self.a.neg_row(i)?;
        if let Some(u) = &mut self.u {
            u.neg_row(i)?;
        }
        if let Some(ui) = &mut self.u_inv {
            ui.neg_col(i)?;
        }
        Some(())
    }

    fn into_snf(self, rows: usize, cols: usize) -> Snf {
        debug_assert_eq!((self.a.rows, self.a.cols), (rows, cols));
        Snf {
            d: self.a.to_int_matrix(),
            u: self.u.map(|m| m.to_int_matrix()),
            u_inv: self.u_inv.map(|m| m.to_int_matrix()),
            v: self.v.map(|m| m.to_int_matrix()),
            v_inv: self.v_inv.map(|m| m.to_int_matrix()),
            rank: self.rank,
        }
    }
}

fn run<T: Scalar>(data: Vec<T>, rows: usize, cols: usize, req: SnfRequest) -> Option<Work<T>> {
    let mut w = Work {
        a: Dense { rows, cols, data },
        u: req.u.then(|| Dense::identity(rows)),
        u_inv: req.u_inv.then(|| Dense::identity(rows)),
        v: req.v.then(|| Dense::identity(cols)),
        v_inv: req.v_inv.then(|| Dense::identity(cols)),
        rank: 0,
    };
    let lim = rows.min(cols);
    let mut t = 0;
    while t < lim {
        // Minimal-magnitude nonzero pivot over the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = w.a.at(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !w.a.at(bi, bj).abs_gt(x) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a.at(i, t).is_zero() {
                    let q = w.a.at(i, t).div_floor(w.a.at(t, t))?.neg()?;
                    w.row_add(i, t, &q)?;
                    if !w.a.at(i, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a.at(t, j).is_zero() {
                    let q = w.a.at(t, j).div_floor(w.a.at(t, t))?.neg()?;
                    w.col_add(j, t, &q)?;
                    if !w.a.at(t, j).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                // Move the smallest leftover in row/column t onto the pivot.
                let mut best = (t, t);
                for i in t + 1..rows {
                    let x = w.a.at(i, t);
                    if !x.is_zero() && w.a.at(best.0, best.1).abs_gt(x) {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    let x = w.a.at(t, j);
                    if !x.is_zero() && w.a.at(best.0, best.1).abs_gt(x) {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    w.swap_rows(t, best.0);
                } else if best.1 != t {
                    w.swap_cols(t, best.1);
                }
                continue;
            }
            let pivot = w.a.at(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !pivot.divides(w.a.at(i, j))));
            match offender {
                Some(i) => {
                    w.row_add(t, i, &T::one())?;
                }
                None => break,
            }
        }
        if w.a.at(t, t).is_negative() {
            w.neg_row(t)?;
        }
        t += 1;
    }
    w.rank = t;
    Some(w)
}
