//! Exact and numeric spectra of symmetric matrices and joint spectra of
//! commuting pairs.
//!
//! The exact path factors the characteristic polynomial over the integers
//! (after clearing denominators). The numeric path uses a symmetric
//! eigensolver, snaps values within [`SNAP_TOL`] of an integer and keeps a
//! snap only when `(x − λ)^m` exactly divides the characteristic polynomial.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::SymmetricEigen;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, RatPoly, Rational};

/// Default absolute tolerance on numeric eigenvalues.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Largest distance from an integer at which a numeric eigenvalue is snapped.
pub const SNAP_TOL: f64 = 1e-6;
/// Largest `t` tried when separating a joint spectrum with weight `1/t`.
pub const MAX_SEPARATION: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalue {
    Exact(Rational),
    Approx(f64),
}

impl Eigenvalue {
    pub fn to_f64(&self) -> f64 {
        match self {
            Eigenvalue::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Eigenvalue::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Eigenvalue::Exact(q) => Some(q),
            Eigenvalue::Approx(_) => None,
        }
    }

    /// Exact comparison when both sides are exact, float comparison otherwise.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Eigenvalue::Exact(a), Eigenvalue::Exact(b)) => a.cmp(b),
            _ => self.to_f64().total_cmp(&other.to_f64()),
        }
    }

    /// Equality, exact for two exact values and within `tol` otherwise.
    pub fn matches(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (Eigenvalue::Exact(a), Eigenvalue::Exact(b)) => a == b,
            _ => (self.to_f64() - other.to_f64()).abs() <= tol,
        }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Exact(q) => write!(f, "{q}"),
            Eigenvalue::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl From<Rational> for Eigenvalue {
    fn from(q: Rational) -> Self {
        Eigenvalue::Exact(q)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectrumMode {
    Exact,
    Approximate(f64),
}

impl SpectrumMode {
    /// Tolerance used to compare values; zero for exact spectra.
    pub fn tol(&self) -> f64 {
        match self {
            SpectrumMode::Exact => 0.0,
            SpectrumMode::Approximate(t) => *t,
        }
    }
}

/// Distinct eigenvalues in increasing order with multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub mode: SpectrumMode,
    pub entries: Vec<(Eigenvalue, usize)>,
}

impl Spectrum {
    /// Groups `values` (in any order) into a spectrum; values within `tol`
    /// of the previous group's first member join that group.
    pub fn from_values(mut values: Vec<Eigenvalue>, mode: SpectrumMode) -> Self {
        values.sort_by(Eigenvalue::cmp_value);
        let tol = mode.tol();
        let mut entries: Vec<(Eigenvalue, usize)> = Vec::new();
        for v in values {
            match entries.last_mut() {
                Some((head, m)) if head.matches(&v, tol) => *m += 1,
                _ => entries.push((v, 1)),
            }
        }
        Spectrum { mode, entries }
    }

    /// An exact spectrum from integer values (handy for tests and tables).
    pub fn from_integers(values: &[i64]) -> Self {
        Self::from_values(
            values
                .iter()
                .map(|&v| Eigenvalue::Exact(crate::linalg::rat(v)))
                .collect(),
            SpectrumMode::Exact,
        )
    }

    pub fn is_exact(&self) -> bool {
        self.mode == SpectrumMode::Exact
    }

    /// Matrix size: sum of multiplicities.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    /// Eigenvalues repeated by multiplicity, increasing.
    pub fn values(&self) -> Vec<Eigenvalue> {
        self.entries
            .iter()
            .flat_map(|(v, m)| std::iter::repeat_n(v.clone(), *m))
            .collect()
    }

    pub fn to_f64_values(&self) -> Vec<f64> {
        self.values().iter().map(Eigenvalue::to_f64).collect()
    }

    /// Exact values repeated by multiplicity, `None` when any value is approximate.
    pub fn exact_values(&self) -> Option<Vec<Rational>> {
        self.values()
            .into_iter()
            .map(|v| v.as_exact().cloned())
            .collect()
    }

    /// Multiset equality at the coarser of the two tolerances.
    pub fn matches(&self, other: &Self) -> bool {
        let tol = self.mode.tol().max(other.mode.tol());
        let a = self.values();
        let b = other.values();
        a.len() == b.len() && a.iter().zip(&b).all(|(x, y)| x.matches(y, tol))
    }

    /// Second smallest eigenvalue (the algebraic connectivity of a Laplacian).
    pub fn second_smallest(&self) -> Option<Eigenvalue> {
        self.values().into_iter().nth(1)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(v, m)| if *m == 1 { v.to_string() } else { format!("{v}^{m}") })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// How a spectrum should be computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SpectralMode {
    Exact,
    Numeric,
    /// Exact when the characteristic polynomial splits over the integers.
    #[default]
    Auto,
}

fn require_symmetric(m: &ExactMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    Ok(())
}

/// Integer roots of `p` (a factor of the characteristic polynomial of `m`),
/// bounded by the largest absolute row sum of `m`.
pub(crate) fn integer_eigenvalues(p: &RatPoly, m: &ExactMatrix) -> Vec<(Rational, usize)> {
    let bound = m.max_abs_row_sum().ceil().to_integer();
    p.integer_roots(&bound)
        .0
        .into_iter()
        .map(|(r, mult)| (Rational::from_integer(r), mult))
        .collect()
}

/// Exact spectrum of a symmetric rational matrix whose eigenvalues are
/// integers after scaling by the lcm of the entry denominators.
pub fn exact_spectrum(m: &ExactMatrix) -> Result<Spectrum> {
    require_symmetric(m)?;
    let d = Rational::from_integer(m.denominator_lcm());
    let scaled = m.scale(&d);
    let p = scaled.char_poly()?;
    let bound = scaled.max_abs_row_sum().ceil().to_integer();
    let (roots, rest) = p.integer_roots(&bound);
    let unresolved = rest.degree().unwrap_or(0);
    if unresolved > 0 {
        return Err(Error::NotIntegral(unresolved));
    }
    let entries = roots
        .into_iter()
        .map(|(r, mult)| (Eigenvalue::Exact(Rational::from_integer(r) / &d), mult))
        .collect();
    Ok(Spectrum {
        mode: SpectrumMode::Exact,
        entries,
    })
}

fn sorted_eigen(m: &ExactMatrix) -> (Vec<f64>, nalgebra::DMatrix<f64>) {
    let eig = SymmetricEigen::new(m.to_f64());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = nalgebra::DMatrix::from_fn(m.rows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

/// Numeric spectrum with exactly verified integer snapping.
///
/// The mode is exact when every value was snapped and every multiplicity was
/// confirmed against the characteristic polynomial.
pub fn numeric_spectrum(m: &ExactMatrix, tol: f64) -> Result<Spectrum> {
    require_symmetric(m)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Invalid(format!("tolerance must be positive, got {tol}")));
    }
    let (values, _) = sorted_eigen(m);
    let grouped = Spectrum::from_values(
        values.into_iter().map(Eigenvalue::Approx).collect(),
        SpectrumMode::Approximate(tol),
    );
    let mut char_poly: Option<RatPoly> = None;
    let mut all_exact = true;
    let mut entries = Vec::with_capacity(grouped.entries.len());
    for (v, mult) in grouped.entries {
        let x = v.to_f64();
        let r = x.round();
        let snapped = if (x - r).abs() <= SNAP_TOL {
            let p = match &char_poly {
                Some(p) => p,
                None => char_poly.insert(m.char_poly()?),
            };
            let root = Rational::from_integer(BigInt::from(r as i64));
            let factor = RatPoly::linear_root(&root);
            let exact_mult = factor.pow(mult as u32).divides(p)?
                && !factor.pow(mult as u32 + 1).divides(p)?;
            exact_mult.then_some(root)
        } else {
            None
        };
        match snapped {
            Some(root) => entries.push((Eigenvalue::Exact(root), mult)),
            None => {
                all_exact = false;
                entries.push((Eigenvalue::Approx(x), mult));
            }
        }
    }
    let mode = if all_exact {
        SpectrumMode::Exact
    } else {
        SpectrumMode::Approximate(tol)
    };
    Ok(Spectrum { mode, entries })
}

/// Spectrum by the requested route. `Auto` tries the exact route first.
pub fn spectrum(m: &ExactMatrix, mode: SpectralMode, tol: f64) -> Result<Spectrum> {
    match mode {
        SpectralMode::Exact => exact_spectrum(m),
        SpectralMode::Numeric => numeric_spectrum(m, tol),
        SpectralMode::Auto => match exact_spectrum(m) {
            Err(Error::NotIntegral(_)) => numeric_spectrum(m, tol),
            other => other,
        },
    }
}

/// Multiset difference `s1 \ s2`.
pub fn spectrum_diff(s1: &Spectrum, s2: &Spectrum) -> Result<Spectrum> {
    let tol = s1.mode.tol().max(s2.mode.tol());
    let mut remaining: Vec<(Eigenvalue, usize)> = s1.entries.clone();
    for (v, m) in &s2.entries {
        let slot = remaining
            .iter_mut()
            .find(|(w, _)| w.matches(v, tol))
            .ok_or_else(|| Error::NotContained(format!("eigenvalue {v} is missing")))?;
        if slot.1 < *m {
            return Err(Error::NotContained(format!(
                "eigenvalue {v} has multiplicity {} but {m} are removed",
                slot.1
            )));
        }
        slot.1 -= m;
    }
    remaining.retain(|(_, m)| *m > 0);
    let mode = if s1.is_exact() && s2.is_exact() {
        SpectrumMode::Exact
    } else {
        SpectrumMode::Approximate(tol)
    };
    Ok(Spectrum {
        mode,
        entries: remaining,
    })
}

/// Common spectrum of two commuting symmetric matrices.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct JointSpectrum {
    /// `(λ, λ̄, multiplicity)`, sorted by `λ` then `λ̄`.
    pub pairs: Vec<(Eigenvalue, Eigenvalue, usize)>,
    /// The separating weight is `β = 1/t`.
    pub t: u64,
    pub exact: bool,
    /// Smallest gap between distinct candidate values `λ + λ̄/t` (numeric path only).
    pub min_gap: Option<f64>,
}

impl JointSpectrum {
    pub fn size(&self) -> usize {
        self.pairs.iter().map(|(_, _, m)| m).sum()
    }

    fn mode(&self, tol: f64) -> SpectrumMode {
        if self.exact {
            SpectrumMode::Exact
        } else {
            SpectrumMode::Approximate(tol)
        }
    }

    /// Spectrum of the first matrix recovered from the pairs.
    pub fn first(&self, tol: f64) -> Spectrum {
        self.project(tol, |(a, _, _)| a.clone())
    }

    /// Spectrum of the second matrix recovered from the pairs.
    pub fn second(&self, tol: f64) -> Spectrum {
        self.project(tol, |(_, b, _)| b.clone())
    }

    fn project(&self, tol: f64, pick: impl Fn(&(Eigenvalue, Eigenvalue, usize)) -> Eigenvalue) -> Spectrum {
        let values = self
            .pairs
            .iter()
            .flat_map(|p| std::iter::repeat_n(pick(p), p.2))
            .collect();
        Spectrum::from_values(values, self.mode(tol))
    }

    /// The multiset `{p(λᵢ, λ̄ᵢ)}` for an exact bivariate map; requires an exact joint spectrum.
    pub fn map_exact(&self, p: impl Fn(&Rational, &Rational) -> Rational) -> Option<Spectrum> {
        let mut values = Vec::with_capacity(self.size());
        for (a, b, m) in &self.pairs {
            let v = p(a.as_exact()?, b.as_exact()?);
            values.extend(std::iter::repeat_n(Eigenvalue::Exact(v), *m));
        }
        Some(Spectrum::from_values(values, SpectrumMode::Exact))
    }
}

fn sort_pairs(pairs: &mut [(Eigenvalue, Eigenvalue, usize)]) {
    pairs.sort_by(|x, y| x.0.cmp_value(&y.0).then_with(|| x.1.cmp_value(&y.1)));
}

/// Joint spectrum of commuting symmetric `m1`, `m2`.
///
/// Candidate pairs are the products of the two sets of distinct eigenvalues;
/// `t ≥ 1` is the smallest integer making `λ + λ̄/t` injective on them.
/// On the exact path the eigenvalues of `t·m1 + m2` are decoded back to their
/// unique candidate pair. On the numeric path each eigenvector of
/// `m1 + m2/t` is read off through its Rayleigh quotients.
pub fn joint_spectrum(
    m1: &ExactMatrix,
    m2: &ExactMatrix,
    mode: SpectralMode,
    tol: f64,
) -> Result<JointSpectrum> {
    require_symmetric(m1)?;
    require_symmetric(m2)?;
    if !m1.commutes_with(m2)? {
        return Err(Error::NotCommuting);
    }
    let s1 = spectrum(m1, mode, tol)?;
    let s2 = spectrum(m2, mode, tol)?;
    let joint = if s1.is_exact() && s2.is_exact() && mode != SpectralMode::Numeric {
        exact_joint(m1, m2, &s1, &s2)?
    } else {
        numeric_joint(m1, m2, &s1, &s2, tol)?
    };
    let (p1, p2) = (joint.first(tol), joint.second(tol));
    if !p1.matches(&s1) || !p2.matches(&s2) {
        return Err(Error::Inconsistent(format!(
            "joint spectrum projections {p1} / {p2} differ from {s1} / {s2}"
        )));
    }
    Ok(joint)
}

fn exact_joint(m1: &ExactMatrix, m2: &ExactMatrix, s1: &Spectrum, s2: &Spectrum) -> Result<JointSpectrum> {
    let a: Vec<Rational> = s1.entries.iter().filter_map(|(v, _)| v.as_exact().cloned()).collect();
    let b: Vec<Rational> = s2.entries.iter().filter_map(|(v, _)| v.as_exact().cloned()).collect();
    let mut t = 1u64;
    loop {
        if t > MAX_SEPARATION {
            return Err(Error::SeparationFailure(MAX_SEPARATION));
        }
        let tq = Rational::from_integer(BigInt::from(t));
        let mut keys: Vec<Rational> = a
            .iter()
            .flat_map(|x| b.iter().map(|y| &tq * x + y).collect::<Vec<_>>())
            .collect();
        let total = keys.len();
        keys.sort();
        keys.dedup();
        if keys.len() == total {
            break;
        }
        t += 1;
    }
    let tq = Rational::from_integer(BigInt::from(t));
    let combined = exact_spectrum(&m1.scale(&tq).add(m2)?)?;
    let mut pairs = Vec::with_capacity(combined.distinct());
    for (mu, mult) in &combined.entries {
        let mu = mu.as_exact().expect("exact spectrum");
        let hit = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| (x, y)))
            .find(|(x, y)| &(&tq * *x + *y) == mu)
            .ok_or_else(|| {
                Error::Inconsistent(format!("eigenvalue {mu} of {t}·M1 + M2 matches no candidate pair"))
            })?;
        pairs.push((Eigenvalue::Exact(hit.0.clone()), Eigenvalue::Exact(hit.1.clone()), *mult));
    }
    sort_pairs(&mut pairs);
    Ok(JointSpectrum {
        pairs,
        t,
        exact: true,
        min_gap: None,
    })
}

fn numeric_joint(
    m1: &ExactMatrix,
    m2: &ExactMatrix,
    s1: &Spectrum,
    s2: &Spectrum,
    tol: f64,
) -> Result<JointSpectrum> {
    let a: Vec<f64> = s1.entries.iter().map(|(v, _)| v.to_f64()).collect();
    let b: Vec<f64> = s2.entries.iter().map(|(v, _)| v.to_f64()).collect();
    let separation = 10.0 * tol;
    let mut t = 1u64;
    let min_gap = loop {
        if t > MAX_SEPARATION {
            return Err(Error::SeparationFailure(MAX_SEPARATION));
        }
        let mut keys: Vec<f64> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x + y / t as f64))
            .collect();
        keys.sort_by(f64::total_cmp);
        let gap = keys.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        if gap > separation {
            break gap;
        }
        t += 1;
    };
    let r = m1.to_f64() + m2.to_f64() / t as f64;
    let eig = SymmetricEigen::new(r);
    let f1 = m1.to_f64();
    let f2 = m2.to_f64();
    let mut counts: Vec<Vec<usize>> = vec![vec![0; b.len()]; a.len()];
    for c in 0..eig.eigenvectors.ncols() {
        let v = eig.eigenvectors.column(c);
        let q1 = v.dot(&(&f1 * v));
        let q2 = v.dot(&(&f2 * v));
        let nearest = |vals: &[f64], q: f64| {
            vals.iter()
                .enumerate()
                .min_by(|x, y| (x.1 - q).abs().total_cmp(&(y.1 - q).abs()))
                .map(|(i, x)| (i, (x - q).abs()))
                .expect("nonempty spectrum")
        };
        let (i, d1) = nearest(&a, q1);
        let (j, d2) = nearest(&b, q2);
        if d1 > SNAP_TOL || d2 > SNAP_TOL {
            return Err(Error::Inconsistent(format!(
                "Rayleigh quotients ({q1}, {q2}) are not near any eigenvalue pair"
            )));
        }
        counts[i][j] += 1;
    }
    let mut pairs = Vec::new();
    for (i, row) in counts.iter().enumerate() {
        for (j, &m) in row.iter().enumerate() {
            if m > 0 {
                pairs.push((s1.entries[i].0.clone(), s2.entries[j].0.clone(), m));
            }
        }
    }
    sort_pairs(&mut pairs);
    Ok(JointSpectrum {
        pairs,
        t,
        exact: false,
        min_gap: Some(min_gap),
    })
}

/// Smallest gap between consecutive distinct values of a spectrum.
pub fn min_gap(s: &Spectrum) -> Option<f64> {
    let v: Vec<f64> = s.entries.iter().map(|(x, _)| x.to_f64()).collect();
    v.windows(2).map(|w| (w[1] - w[0]).abs()).reduce(f64::min)
}

/// Whether every eigenvalue is nonnegative (at the spectrum's tolerance).
pub fn is_nonnegative(s: &Spectrum) -> bool {
    s.entries.iter().all(|(v, _)| match v {
        Eigenvalue::Exact(q) => !q.is_negative(),
        Eigenvalue::Approx(x) => *x >= -s.mode.tol(),
    })
}

/// Zero eigenvalue check used for Laplacians.
pub fn smallest_is_zero(s: &Spectrum) -> bool {
    s.entries.first().is_some_and(|(v, _)| match v {
        Eigenvalue::Exact(q) => q.is_zero(),
        Eigenvalue::Approx(x) => x.abs() <= s.mode.tol(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;
    use crate::linalg::rat;
    use crate::tokens::token_graph;

    fn paw() -> Graph {
        Graph::new(4, [(1, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    fn laplacian_of_token(g: &Graph, k: usize) -> ExactMatrix {
        token_graph(g, k).unwrap().laplacian()
    }

    fn ints(s: &Spectrum) -> Vec<i64> {
        s.exact_values()
            .unwrap()
            .iter()
            .map(|q| q.to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn johnson_4_2_exact() {
        let s = exact_spectrum(&laplacian_of_token(&Graph::complete(4), 2)).unwrap();
        assert_eq!(ints(&s), [0, 4, 4, 4, 6, 6]);
        assert_eq!(s.to_string(), "{0, 4^3, 6^2}");
    }

    #[test]
    fn paw_exact_and_numeric_agree() {
        let l = paw().laplacian();
        let s = exact_spectrum(&l).unwrap();
        assert_eq!(ints(&s), [0, 1, 3, 4]);
        assert_eq!(numeric_spectrum(&l, DEFAULT_TOL).unwrap(), s);
        assert_eq!(s.second_smallest(), Some(Eigenvalue::Exact(rat(1))));
    }

    #[test]
    fn path_is_not_integral() {
        let p4 = Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let l = p4.laplacian();
        assert!(matches!(exact_spectrum(&l), Err(Error::NotIntegral(_))));
        let s = numeric_spectrum(&l, DEFAULT_TOL).unwrap();
        assert_eq!(s.mode, SpectrumMode::Approximate(DEFAULT_TOL));
        let root2 = std::f64::consts::SQRT_2;
        let expected = [0.0, 2.0 - root2, 2.0, 2.0 + root2];
        for (x, e) in s.to_f64_values().iter().zip(expected) {
            assert!((x - e).abs() < 1e-9);
        }
        assert!(matches!(s.entries[1].0, Eigenvalue::Approx(_)));
        assert_eq!(s.entries[2].0, Eigenvalue::Exact(rat(2)));
        assert_eq!(spectrum(&l, SpectralMode::Auto, DEFAULT_TOL).unwrap(), s);
    }

    #[test]
    fn small_numeric_examples() {
        let s = numeric_spectrum(&Graph::complete(3).laplacian(), 1e-9).unwrap();
        assert_eq!(ints(&s), [0, 3, 3]);
        let j63 = laplacian_of_token(&Graph::complete(6), 3);
        let s = numeric_spectrum(&j63, 1e-9).unwrap();
        assert!(s.is_exact());
        assert_eq!(s, Spectrum::from_integers(&[0, 6, 6, 6, 6, 6, 10, 10, 10, 10, 10, 10, 10, 10, 10, 12, 12, 12, 12, 12]));
        assert!(numeric_spectrum(&j63, 0.0).is_err());
    }

    #[test]
    fn rational_entries() {
        let m = Graph::complete(3).laplacian().scale(&crate::linalg::frac(1, 3));
        let s = exact_spectrum(&m).unwrap();
        assert_eq!(s.exact_values().unwrap(), vec![rat(0), rat(1), rat(1)]);
    }

    #[test]
    fn non_symmetric_rejected() {
        let m = ExactMatrix::from_i64_rows(&[[0, 1], [0, 0]]);
        assert_eq!(exact_spectrum(&m), Err(Error::NotSymmetric));
        assert_eq!(numeric_spectrum(&m, 1e-9), Err(Error::NotSymmetric));
    }

    #[test]
    fn differences() {
        let f2 = Spectrum::from_integers(&[0, 1, 3, 3, 4, 5]);
        let f1 = Spectrum::from_integers(&[0, 1, 3, 4]);
        assert_eq!(spectrum_diff(&f2, &f1).unwrap(), Spectrum::from_integers(&[3, 5]));
        assert_eq!(spectrum_diff(&f1, &f1).unwrap().size(), 0);
        let err = spectrum_diff(&Spectrum::from_integers(&[0, 4]), &Spectrum::from_integers(&[0, 5]));
        assert!(matches!(err, Err(Error::NotContained(_))));
    }

    #[test]
    fn paw_joint_pairs() {
        let g = paw();
        let l = laplacian_of_token(&g, 2);
        let lbar = laplacian_of_token(&g.complement(), 2);
        let joint = joint_spectrum(&l, &lbar, SpectralMode::Exact, DEFAULT_TOL).unwrap();
        let pairs: Vec<(i64, i64, usize)> = joint
            .pairs
            .iter()
            .map(|(a, b, m)| (a.to_f64() as i64, b.to_f64() as i64, *m))
            .collect();
        assert_eq!(pairs, [(0, 0, 1), (1, 3, 1), (3, 1, 1), (3, 3, 1), (4, 0, 1), (5, 1, 1)]);
        assert!(joint.exact);

        let r = l.scale(&rat(2)).add(&lbar).unwrap();
        let direct = exact_spectrum(&r).unwrap();
        assert_eq!(ints(&direct), [0, 5, 7, 8, 9, 11]);
        assert_eq!(joint.map_exact(|x, y| rat(2) * x + y).unwrap(), direct);

        let numeric = joint_spectrum(&l, &lbar, SpectralMode::Numeric, DEFAULT_TOL).unwrap();
        assert!(!numeric.exact);
        assert!(numeric.min_gap.unwrap() > 10.0 * DEFAULT_TOL);
        for (x, y) in numeric.pairs.iter().zip(&joint.pairs) {
            assert_eq!((x.0.to_f64(), x.1.to_f64(), x.2), (y.0.to_f64(), y.1.to_f64(), y.2));
        }
    }

    #[test]
    fn pairs_with_identity() {
        let l = paw().laplacian();
        let joint = joint_spectrum(&l, &ExactMatrix::identity(4), SpectralMode::Auto, DEFAULT_TOL).unwrap();
        assert_eq!(joint.t, 1);
        for (a, b, _) in &joint.pairs {
            assert_eq!(*b, Eigenvalue::Exact(rat(1)));
            assert!(a.as_exact().is_some());
        }
        assert_eq!(joint.size(), 4);
    }

    #[test]
    fn noncommuting_rejected() {
        let a = Graph::new(3, [(1, 2)]).unwrap().laplacian();
        let b = Graph::new(3, [(2, 3)]).unwrap().laplacian();
        assert_eq!(joint_spectrum(&a, &b, SpectralMode::Auto, 1e-9), Err(Error::NotCommuting));
    }

    #[test]
    fn irrational_joint_spectrum() {
        // P4 with itself squared: both commute and the spectrum is irrational
        let l = Graph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap().laplacian();
        let l2 = l.mul(&l).unwrap();
        let joint = joint_spectrum(&l, &l2, SpectralMode::Auto, DEFAULT_TOL).unwrap();
        assert!(!joint.exact);
        for (a, b, _) in &joint.pairs {
            assert!((a.to_f64().powi(2) - b.to_f64()).abs() < 1e-7);
        }
    }
}
