use num_traits::Zero;

use super::Rational;

/// Incrementally built row space over the rationals.
///
/// Rows are kept in semi-echelon form: each stored row has a distinct pivot
/// column, normalized to one, and is zero at the pivots of all earlier rows.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    len: usize,
    basis: Vec<(usize, Vec<Rational>)>,
}

impl RowSpace {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            basis: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.len, "vector length");
        let mut v = v.to_vec();
        for (pivot, row) in &self.basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let c = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        self.basis.push((pivot, v));
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn dependent_rows_are_rejected() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(&[rat(1), rat(2), rat(3)]));
        assert!(s.insert(&[rat(0), rat(1), rat(1)]));
        assert!(!s.insert(&[rat(2), rat(5), rat(7)]));
        assert!(s.contains(&[rat(1), rat(3), rat(4)]));
        assert!(!s.contains(&[rat(0), rat(0), rat(1)]));
        assert_eq!(s.dim(), 2);
    }
}
