use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Univariate polynomial with rational coefficients, ascending degree.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// no coefficients and structural equality is polynomial equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    /// `x − r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Scaled to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Euclidean division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let Some(dd) = divisor.degree() else {
            return Err(Error::ZeroDivisor);
        };
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.div_rem(self)?.1.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Number of distinct complex roots: `deg p − deg gcd(p, p′)`.
    pub fn distinct_root_count(&self) -> usize {
        match self.degree() {
            None | Some(0) => 0,
            Some(d) => d - self.gcd(&self.derivative()).degree().unwrap_or(0),
        }
    }

    /// Integer roots with multiplicity, found by testing every integer candidate
    /// in `[-bound, bound]` that divides the trailing nonzero coefficient of the
    /// current cofactor, deflating by exact division. Returns the roots and the
    /// undeflated cofactor.
    pub fn integer_roots(&self, bound: &BigInt) -> (Vec<(BigInt, usize)>, Self) {
        let mut rest = self.clone();
        let mut roots = Vec::new();
        if rest.is_zero() {
            return (roots, rest);
        }
        // root 0
        let zeros = rest.coeffs.iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            rest = Self::new(rest.coeffs[zeros..].to_vec());
            roots.push((BigInt::zero(), zeros));
        }
        let Some(limit) = bound.to_i64() else {
            return (roots, rest);
        };
        // clear denominators so the divisor test is over the integers
        let lcm = rest
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let scaled = rest.scale(&Rational::from_integer(lcm));
        let constant = scaled.coeff(0).to_integer().abs();
        let mut candidates: Vec<i64> = (1..=limit)
            .filter(|&r| (&constant % BigInt::from(r)).is_zero())
            .flat_map(|r| [r, -r])
            .collect();
        candidates.sort_unstable();
        for r in candidates {
            let factor = Self::linear_root(&Rational::from_integer(BigInt::from(r)));
            let mut mult = 0;
            loop {
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
                let (q, rem) = rest.div_rem(&factor).expect("nonzero divisor");
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                roots.push((BigInt::from(r), mult));
            }
        }
        roots.sort();
        (roots, rest)
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;

    fn add(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;

    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;

    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;

    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "·" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "·" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, rat};

    #[test]
    fn trimming_and_degree() {
        let p = RatPoly::from_i64(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(RatPoly::from_i64(&[0, 0]).degree(), None);
        assert!(RatPoly::from_i64(&[0]).is_zero());
    }

    #[test]
    fn divisibility_examples() {
        let x2m1 = RatPoly::from_i64(&[-1, 0, 1]);
        assert!(RatPoly::linear_root(&rat(1)).divides(&x2m1).unwrap());
        assert!(!RatPoly::linear_root(&rat(5)).divides(&x2m1).unwrap());
        assert_eq!(RatPoly::zero().divides(&x2m1), Err(Error::ZeroDivisor));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = RatPoly::from_i64(&[3, -2, 0, 5, 1]);
        let b = RatPoly::new(vec![frac(1, 2), rat(0), rat(3)]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_and_distinct_roots() {
        // (x-1)^2 (x+2)
        let p = &RatPoly::linear_root(&rat(1)).pow(2) * &RatPoly::linear_root(&rat(-2));
        assert_eq!(p.distinct_root_count(), 2);
        assert_eq!(p.gcd(&p.derivative()), RatPoly::linear_root(&rat(1)));
        // x^2 - 2: irrational but distinct
        assert_eq!(RatPoly::from_i64(&[-2, 0, 1]).distinct_root_count(), 2);
    }

    #[test]
    fn integer_root_extraction() {
        // x^2 (x-4)^3 (x-6)^2 (x^2 - 2)
        let p = &(&(&RatPoly::x().pow(2) * &RatPoly::linear_root(&rat(4)).pow(3))
            * &RatPoly::linear_root(&rat(6)).pow(2))
            * &RatPoly::from_i64(&[-2, 0, 1]);
        let (roots, rest) = p.integer_roots(&BigInt::from(10));
        assert_eq!(
            roots,
            vec![
                (BigInt::from(0), 2),
                (BigInt::from(4), 3),
                (BigInt::from(6), 2)
            ]
        );
        assert_eq!(rest, RatPoly::from_i64(&[-2, 0, 1]));
    }

    #[test]
    fn display_reads_naturally() {
        let q1 = RatPoly::new(vec![frac(40, 11), frac(-6, 11)]);
        assert_eq!(q1.to_string(), "-6/11·x + 40/11");
        assert_eq!(RatPoly::from_i64(&[0, -2, 1]).to_string(), "x^2 - 2·x");
    }
}
