use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{RatPoly, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of reduced rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn all_ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::one(); rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                op: "from_entries",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            entries.extend(r.iter().map(|&v| Rational::from_integer(BigInt::from(v))));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r + 1..self.cols).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|q| q.is_integer())
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare(self.rows, self.cols))
        }
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() == other.shape() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            })
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// `self + c·I`.
    pub fn add_scalar_identity(&self, c: &Rational) -> Result<Self> {
        let n = self.require_square()?;
        let mut m = self.clone();
        for i in 0..n {
            m.entries[i * n + i] += c;
        }
        Ok(m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "mul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        if let (Some(a), Some(b)) = (self.small_ints(), other.small_ints()) {
            if let Some(m) = mul_small(&a, &b, self.rows, self.cols, other.cols) {
                return Ok(m);
            }
        }
        if self.is_integral() && other.is_integral() {
            return Ok(self.mul_bigint(other));
        }
        let (n, k, p) = (self.rows, self.cols, other.cols);
        let mut entries = vec![Rational::zero(); n * p];
        for i in 0..n {
            for t in 0..k {
                let a = &self.entries[i * k + t];
                if a.is_zero() {
                    continue;
                }
                for j in 0..p {
                    let b = &other.entries[t * p + j];
                    if !b.is_zero() {
                        entries[i * p + j] += a * b;
                    }
                }
            }
        }
        Ok(Self { rows: n, cols: p, entries })
    }

    fn small_ints(&self) -> Option<Vec<i64>> {
        self.entries
            .iter()
            .map(|q| if q.is_integer() { q.numer().to_i64() } else { None })
            .collect()
    }

    fn mul_bigint(&self, other: &Self) -> Self {
        let (n, k, p) = (self.rows, self.cols, other.cols);
        let a: Vec<&BigInt> = self.entries.iter().map(|q| q.numer()).collect();
        let b: Vec<&BigInt> = other.entries.iter().map(|q| q.numer()).collect();
        let mut acc = vec![BigInt::zero(); n * p];
        for i in 0..n {
            for t in 0..k {
                let x = a[i * k + t];
                if x.is_zero() {
                    continue;
                }
                for j in 0..p {
                    let y = b[t * p + j];
                    if !y.is_zero() {
                        acc[i * p + j] += x * y;
                    }
                }
            }
        }
        Self {
            rows: n,
            cols: p,
            entries: acc.into_iter().map(Rational::from_integer).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let n = self.require_square()?;
        let mut result = Self::identity(n);
        for _ in 0..e {
            result = result.mul(self)?;
        }
        Ok(result)
    }

    pub fn trace(&self) -> Result<Rational> {
        let n = self.require_square()?;
        Ok((0..n).map(|i| &self.entries[i * n + i]).sum())
    }

    /// Exact test of `AB = BA`.
    pub fn commutes_with(&self, other: &Self) -> Result<bool> {
        self.require_square()?;
        self.same_shape(other, "commutator")?;
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.require_square()?;
        self.same_shape(other, "commutator")?;
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch {
                op: "mul_vec",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch {
                op: "hstack",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let cols = self.cols + other.cols;
        Ok(Self::from_fn(self.rows, cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                other.get(r, c - self.cols).clone()
            }
        }))
    }

    /// The entries as one long row vector (row-major).
    pub fn vectorize(&self) -> Vec<Rational> {
        self.entries.clone()
    }

    /// Characteristic polynomial `det(xI − M)` via Faddeev–LeVerrier:
    /// `N_1 = I`, `c_{n−k} = −tr(M N_k)/k`, `N_{k+1} = M N_k + c_{n−k} I`.
    pub fn char_poly(&self) -> Result<RatPoly> {
        let n = self.require_square()?;
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut next = Self::identity(n);
        for k in 1..=n {
            let prod = self.mul(&next)?;
            let c = -prod.trace()? / Rational::from_integer(BigInt::from(k));
            if k < n {
                next = prod.add_scalar_identity(&c)?;
            }
            coeffs[n - k] = c;
        }
        Ok(RatPoly::new(coeffs))
    }

    /// Rank by fraction-free (Bareiss) elimination on the row-wise cleared integer matrix.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = (0..self.rows).map(|r| clear_denominators(self.row(r))).collect();
        bareiss_rank(rows, self.cols)
    }

    /// Basis of `{v : Mv = 0}` from the reduced row echelon form.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let mut m: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[i][free].clone();
                }
                v
            })
            .collect()
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_poly(&self, p: &RatPoly) -> Result<Self> {
        let n = self.require_square()?;
        let coeffs = p.coeffs();
        let Some((lead, rest)) = coeffs.split_last() else {
            return Ok(Self::zeros(n, n));
        };
        let mut acc = Self::identity(n).scale(lead);
        for c in rest.iter().rev() {
            acc = acc.mul(self)?.add_scalar_identity(c)?;
        }
        Ok(acc)
    }

    /// Largest absolute row sum, an upper bound for every eigenvalue modulus.
    pub fn max_abs_row_sum(&self) -> Rational {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|q| q.abs()).sum::<Rational>())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Least common multiple of all entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |r, c| {
            self.get(r, c).to_f64().unwrap_or(f64::NAN)
        })
    }

    /// First position where `self` and `other` differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.cols, i % self.cols))
    }
}

fn mul_small(a: &[i64], b: &[i64], n: usize, k: usize, p: usize) -> Option<ExactMatrix> {
    let mut acc = vec![0i128; n * p];
    for i in 0..n {
        for t in 0..k {
            let x = a[i * k + t] as i128;
            if x == 0 {
                continue;
            }
            for j in 0..p {
                let y = b[t * p + j] as i128;
                if y != 0 {
                    acc[i * p + j] = acc[i * p + j].checked_add(x * y)?;
                }
            }
        }
    }
    Some(ExactMatrix {
        rows: n,
        cols: p,
        entries: acc
            .into_iter()
            .map(|v| Rational::from_integer(BigInt::from(v)))
            .collect(),
    })
}

/// Scales a rational row by the lcm of its denominators.
pub(crate) fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter()
        .map(|q| q.numer() * (&l / q.denom()))
        .collect()
}

pub(crate) fn bareiss_rank(mut m: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let pivot = pivot_row[col].clone();
        for row in tail.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..cols {
                let v = (&row[j] * &pivot - &factor * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot;
        rank += 1;
    }
    rank
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, rat};

    fn sample() -> ExactMatrix {
        ExactMatrix::from_i64_rows(&[[2, -1, 0], [4, 5, 7], [0, 3, -2]])
    }

    #[test]
    fn identity_is_neutral() {
        let m = sample();
        assert_eq!(ExactMatrix::identity(3).mul(&m).unwrap(), m);
        assert_eq!(m.mul(&ExactMatrix::identity(3)).unwrap(), m);
    }

    #[test]
    fn all_ones_squares_to_twice_itself() {
        let j = ExactMatrix::all_ones(2, 2);
        assert_eq!(j.mul(&j).unwrap(), j.scale(&rat(2)));
    }

    #[test]
    fn transpose_twice_is_identity_map() {
        let m = ExactMatrix::from_i64_rows(&[[1, 2, 3], [4, 5, 6]]);
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().shape(), (3, 2));
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let a = ExactMatrix::zeros(2, 3);
        assert!(matches!(a.mul(&a), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(a.add(&ExactMatrix::zeros(3, 2)), Err(Error::ShapeMismatch { .. })));
        assert!(matches!(a.char_poly(), Err(Error::NotSquare(2, 3))));
    }

    #[test]
    fn overflowing_small_path_falls_back_to_bigints() {
        let big = i64::MAX / 2;
        let m = ExactMatrix::from_i64_rows(&[[big, big], [big, big]]);
        let sq = m.mul(&m).unwrap();
        let expected = Rational::from_integer(BigInt::from(big) * BigInt::from(big) * 2);
        assert_eq!(sq.get(0, 0), &expected);
        let mut sq2 = m.clone();
        for _ in 0..3 {
            sq2 = sq2.mul(&m).unwrap();
        }
        assert_eq!(sq2, m.pow(4).unwrap());
    }

    #[test]
    fn rational_products_are_reduced() {
        let m = ExactMatrix::from_fn(2, 2, |r, c| frac(1 + r as i64, 2 + c as i64));
        let sq = m.mul(&m).unwrap();
        // [1/2 1/3; 1 2/3]^2 = [1/4+1/3, 1/6+2/9; 1/2+2/3, 1/3+4/9]
        assert_eq!(sq.get(0, 0), &frac(7, 12));
        assert_eq!(sq.get(0, 1), &frac(7, 18));
        assert_eq!(sq.get(1, 0), &frac(7, 6));
        assert_eq!(sq.get(1, 1), &frac(7, 9));
    }

    #[test]
    fn char_poly_small_cases() {
        let l = ExactMatrix::from_i64_rows(&[[1, -1], [-1, 1]]);
        assert_eq!(l.char_poly().unwrap(), RatPoly::from_i64(&[0, -2, 1]));
        assert_eq!(
            ExactMatrix::zeros(3, 3).char_poly().unwrap(),
            RatPoly::from_i64(&[0, 0, 0, 1])
        );
        // cofactor expansion of det(xI - M) as the oracle
        let m = sample();
        let p = m.char_poly().unwrap();
        let det = |x: i64| {
            let a = ExactMatrix::identity(3).scale(&rat(x)).sub(&m).unwrap();
            let g = |r, c| a.get(r, c).clone();
            g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
                - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
        };
        for x in -3..=3 {
            assert_eq!(p.eval(&rat(x)), det(x));
        }
    }

    #[test]
    fn cayley_hamilton_on_sample() {
        let m = sample();
        assert!(m.eval_poly(&m.char_poly().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(5).rank(), 5);
        assert_eq!(ExactMatrix::all_ones(4, 4).rank(), 1);
        assert_eq!(ExactMatrix::zeros(3, 2).rank(), 0);
        let m = ExactMatrix::from_i64_rows(&[[1, 2, 3], [2, 4, 6], [1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let skip = ExactMatrix::from_i64_rows(&[[0, 1, 2], [0, 2, 4], [0, 0, 3]]);
        assert_eq!(skip.rank(), 2);
        let fr = ExactMatrix::from_fn(2, 2, |r, c| frac(1, (r + c + 1) as i64));
        assert_eq!(fr.rank(), 2);
    }

    #[test]
    fn eval_poly_constant_and_zero() {
        let m = sample();
        assert_eq!(m.eval_poly(&RatPoly::one()).unwrap(), ExactMatrix::identity(3));
        assert!(m.eval_poly(&RatPoly::zero()).unwrap().is_zero());
        let sq = m.eval_poly(&RatPoly::from_i64(&[0, 0, 1])).unwrap();
        assert_eq!(sq, m.mul(&m).unwrap());
    }

    #[test]
    fn commutation_with_identity() {
        let m = sample();
        assert!(m.commutes_with(&ExactMatrix::identity(3)).unwrap());
        assert!(!m.commutes_with(&m.transpose()).unwrap());
    }
}
