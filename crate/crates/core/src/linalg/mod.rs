//! Dense exact linear algebra over arbitrary-precision rationals.
//!
//! Every matrix in this crate is small (at most a few dozen rows), so storage
//! is dense and row-major. Products of integral matrices take a machine-integer
//! path and fall back to big integers on overflow; results are always exact.

mod matrix;
mod poly;
mod span;

pub use matrix::ExactMatrix;
pub use poly::RatPoly;
pub use span::RowSpace;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;

pub type Rational = BigRational;

/// The integer `v` as a rational.
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// The fraction `p/q` in lowest terms. Panics when `q == 0`.
pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.mul(b)
}

pub fn mat_add(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.add(b)
}

pub fn mat_sub(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.sub(b)
}

pub fn scalar_mul(c: &Rational, a: &ExactMatrix) -> ExactMatrix {
    a.scale(c)
}

pub fn transpose(a: &ExactMatrix) -> ExactMatrix {
    a.transpose()
}

pub fn identity(n: usize) -> ExactMatrix {
    ExactMatrix::identity(n)
}

pub fn all_ones(rows: usize, cols: usize) -> ExactMatrix {
    ExactMatrix::all_ones(rows, cols)
}

/// True iff `AB − BA` is exactly zero.
pub fn commutator_is_zero(a: &ExactMatrix, b: &ExactMatrix) -> Result<bool> {
    a.commutes_with(b)
}

/// `det(xI − M)` by the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &ExactMatrix) -> Result<RatPoly> {
    m.char_poly()
}

/// True iff `p` divides `q` over the rationals.
pub fn poly_divides(p: &RatPoly, q: &RatPoly) -> Result<bool> {
    p.divides(q)
}

pub fn rank(m: &ExactMatrix) -> usize {
    m.rank()
}

/// `p(M)` by Horner's rule.
pub fn eval_matrix_poly(p: &RatPoly, m: &ExactMatrix) -> Result<ExactMatrix> {
    m.eval_poly(p)
}

/// The monomial `M1^a · M2^b`. The factors need not commute.
pub fn eval_bivariate_monomials(
    a: u32,
    b: u32,
    m1: &ExactMatrix,
    m2: &ExactMatrix,
) -> Result<ExactMatrix> {
    if m1.rows() != m2.rows() || m1.cols() != m2.cols() {
        return Err(crate::Error::ShapeMismatch {
            op: "eval_bivariate_monomials",
            left: m1.shape(),
            right: m2.shape(),
        });
    }
    m1.pow(a)?.mul(&m2.pow(b)?)
}
