//! Lattice primitives built on the Smith form: integer kernels, column
//! lattice bases, and exact solutions of `A X = B` over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::matrix::IntMatrix;
use super::snf::{snf_with, SnfRequest};

/// Basis (as columns) of `{ x in Z^cols : A x = 0 }`.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let s = snf_with(
        a,
        SnfRequest {
            v: true,
            ..SnfRequest::NONE
        },
    );
    let v = s.v.unwrap();
    v.col_range(s.rank, a.cols())
}

/// Basis (as columns) of the lattice spanned by the columns of `g`.
pub fn column_lattice_basis(g: &IntMatrix) -> IntMatrix {
    let s = snf_with(
        g,
        SnfRequest {
            u_inv: true,
            ..SnfRequest::NONE
        },
    );
    let ui = s.u_inv.clone().unwrap();
    let mut basis = ui.col_range(0, s.rank);
    for (j, d) in s.nonzero_diagonal().iter().enumerate() {
        for i in 0..basis.rows() {
            basis[(i, j)] *= d;
        }
    }
    basis
}

/// Some integer `X` with `A X = B`, or `None` when no integer solution exists.
pub fn solve(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let s = snf_with(
        a,
        SnfRequest {
            u: true,
            v: true,
            ..SnfRequest::NONE
        },
    );
    let ub = s.u.as_ref().unwrap().mul(b);
    let diag = s.nonzero_diagonal();
    let mut y = IntMatrix::zeros(a.cols(), b.cols());
    for j in 0..b.cols() {
        for (i, d) in diag.iter().enumerate() {
            let (q, r) = ub[(i, j)].div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[(i, j)] = q;
        }
        for i in s.rank..a.rows() {
            if !ub[(i, j)].is_zero() {
                return None;
            }
        }
    }
    Some(s.v.as_ref().unwrap().mul(&y))
}

/// True when every column of `b` lies in the column lattice of `a`.
pub fn lattice_contains(a: &IntMatrix, b: &IntMatrix) -> bool {
    solve(a, b).is_some()
}

/// Rank over the rationals.
pub fn rank(a: &IntMatrix) -> usize {
    snf_with(a, SnfRequest::NONE).rank
}

/// `|det|` of the lattice index `[Z^n : L]` for a full-rank lattice, else zero.
pub fn lattice_index(basis: &IntMatrix) -> BigInt {
    let s = snf_with(basis, SnfRequest::NONE);
    if s.rank < basis.rows() {
        return BigInt::zero();
    }
    s.nonzero_diagonal().iter().product()
}
