//! Predistance polynomials, Hoffman polynomials and the distance-regularity test.
//!
//! For a spectrum `{λ_0^{m_0}, …, λ_d^{m_d}}` of an `n × n` matrix the scalar
//! product is `⟨f, g⟩ = (1/n) Σ m_i f(λ_i) g(λ_i)`, which equals
//! `tr(f(M) g(M)) / n`. The family `p_0, …, p_d` is obtained by orthogonalizing
//! `1, x, x², …` and rescaling each `p` to `(p(z)/‖p‖²)·p`, so that
//! `‖p_i‖² = p_i(z)`. The normalization point `z` is `0` for Laplacian families
//! and the largest eigenvalue for adjacency families.

use nalgebra::DMatrix;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::johnson::{intersection_array_by_counting, IntersectionArray};
use crate::linalg::{ExactMatrix, RatPoly, Rational};
use crate::spectra::{self, Eigenvalue, SpectralMode, Spectrum};

/// Largest deviation tolerated on the numeric path, per matrix entry.
pub const NUMERIC_TOL: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyKind {
    Adjacency,
    Laplacian,
}

impl std::str::FromStr for PolyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adjacency" => Ok(PolyKind::Adjacency),
            "laplacian" => Ok(PolyKind::Laplacian),
            other => Err(Error::Invalid(format!("unknown polynomial kind '{other}'"))),
        }
    }
}

/// Coefficients (ascending) of each family member.
#[derive(Clone, Debug, PartialEq)]
pub enum FamilyPolys {
    Exact(Vec<RatPoly>),
    Numeric(Vec<Vec<f64>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PredistanceFamily {
    pub kind: PolyKind,
    pub spectrum: Spectrum,
    pub polys: FamilyPolys,
}

fn horner_f64(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

fn poly_mul_f64(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn axpy_f64(acc: &mut Vec<f64>, c: f64, p: &[f64]) {
    if acc.len() < p.len() {
        acc.resize(p.len(), 0.0);
    }
    for (a, x) in acc.iter_mut().zip(p) {
        *a += c * x;
    }
}

/// `p(M)` in floating point.
pub fn eval_matrix_f64(coeffs: &[f64], m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.nrows();
    let mut acc = DMatrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = &acc * m + DMatrix::identity(n, n) * *c;
    }
    acc
}

impl PredistanceFamily {
    pub fn len(&self) -> usize {
        match &self.polys {
            FamilyPolys::Exact(p) => p.len(),
            FamilyPolys::Numeric(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.polys, FamilyPolys::Exact(_))
    }

    pub fn exact(&self) -> Option<&[RatPoly]> {
        match &self.polys {
            FamilyPolys::Exact(p) => Some(p),
            FamilyPolys::Numeric(_) => None,
        }
    }

    pub fn coeffs_f64(&self, i: usize) -> Vec<f64> {
        match &self.polys {
            FamilyPolys::Exact(p) => p[i]
                .coeffs()
                .iter()
                .map(|c| c.to_f64().unwrap_or(f64::NAN))
                .collect(),
            FamilyPolys::Numeric(p) => p[i].clone(),
        }
    }

    pub fn eval_f64(&self, i: usize, x: f64) -> f64 {
        horner_f64(&self.coeffs_f64(i), x)
    }

    /// `H = Σ p_i` on the exact path.
    pub fn hoffman_exact(&self) -> Option<RatPoly> {
        self.exact()
            .map(|ps| ps.iter().fold(RatPoly::zero(), |acc, p| &acc + p))
    }

    pub fn hoffman_f64(&self) -> Vec<f64> {
        let mut acc = Vec::new();
        for i in 0..self.len() {
            axpy_f64(&mut acc, 1.0, &self.coeffs_f64(i));
        }
        acc
    }
}

/// `(1/n) Σ m_i f(λ_i) g(λ_i)` on an exact spectrum.
pub fn scalar_product(spectrum: &Spectrum, f: &RatPoly, g: &RatPoly) -> Result<Rational> {
    let n = Rational::from_integer(spectrum.size().into());
    let mut acc = Rational::zero();
    for (v, m) in &spectrum.entries {
        let x = v.as_exact().ok_or(Error::ModeMismatch)?;
        acc += f.eval(x) * g.eval(x) * Rational::from_integer((*m).into());
    }
    Ok(acc / n)
}

/// Floating-point version of [`scalar_product`] for any spectrum.
pub fn scalar_product_f64(spectrum: &Spectrum, f: &[f64], g: &[f64]) -> f64 {
    let n = spectrum.size() as f64;
    spectrum
        .entries
        .iter()
        .map(|(v, m)| {
            let x = v.to_f64();
            *m as f64 * horner_f64(f, x) * horner_f64(g, x)
        })
        .sum::<f64>()
        / n
}

/// Normalized power sums `tr(M^j)/n`, `j = 0..=count`, from the characteristic
/// polynomial by Newton's identities.
pub fn trace_moments(m: &ExactMatrix, count: usize) -> Result<Vec<Rational>> {
    let p = m.char_poly()?;
    let n = m.rows();
    // x^n + c_1 x^{n-1} + … + c_n
    let c: Vec<Rational> = (0..=n).map(|i| p.coeff(n - i)).collect();
    let mut s = vec![Rational::from_integer(n.into())];
    for k in 1..=count {
        let mut v = Rational::zero();
        for i in 1..=k.min(n) {
            if i < k {
                v -= &c[i] * &s[k - i];
            } else {
                v -= Rational::from_integer(k.into()) * &c[k];
            }
        }
        s.push(v);
    }
    let nq = Rational::from_integer(n.max(1).into());
    Ok(s.into_iter().map(|x| x / &nq).collect())
}

/// Orthogonal polynomials `r_0 = 1, r_1, …` by Gram–Schmidt applied to
/// `x·r_i`; only the last two terms of the projection are nonzero. Stops at the
/// first polynomial of norm zero, or after `limit` members.
fn orthogonal_exact(
    inner: impl Fn(&RatPoly, &RatPoly) -> Result<Rational>,
    limit: usize,
) -> Result<Vec<(RatPoly, Rational)>> {
    let mut out: Vec<(RatPoly, Rational)> = vec![(RatPoly::one(), inner(&RatPoly::one(), &RatPoly::one())?)];
    while out.len() < limit {
        let i = out.len() - 1;
        let (r, norm) = &out[i];
        let xr = &RatPoly::x() * r;
        let a = inner(&xr, r)? / norm;
        let mut next = &xr - &r.scale(&a);
        if i > 0 {
            let (prev, prev_norm) = &out[i - 1];
            next = &next - &prev.scale(&(norm / prev_norm));
        }
        let next_norm = inner(&next, &next)?;
        if next_norm.is_zero() {
            break;
        }
        out.push((next, next_norm));
    }
    Ok(out)
}

fn normalize_exact(orth: Vec<(RatPoly, Rational)>, z: &Rational) -> Result<Vec<RatPoly>> {
    orth.into_iter()
        .enumerate()
        .map(|(index, (r, norm))| {
            let rz = r.eval(z);
            if rz.is_zero() {
                return Err(Error::DegenerateNormalization { index });
            }
            Ok(r.scale(&(rz / norm)))
        })
        .collect()
}

fn normalization_point(kind: PolyKind, spectrum: &Spectrum) -> Eigenvalue {
    match kind {
        PolyKind::Laplacian => Eigenvalue::Exact(Rational::zero()),
        PolyKind::Adjacency => spectrum
            .entries
            .last()
            .map(|(v, _)| v.clone())
            .unwrap_or(Eigenvalue::Exact(Rational::zero())),
    }
}

/// The predistance family of `spectrum` (exact when the spectrum is exact).
pub fn predistance_family(kind: PolyKind, spectrum: &Spectrum) -> Result<PredistanceFamily> {
    if spectrum.size() == 0 {
        return Err(Error::Invalid("empty spectrum".into()));
    }
    let distinct = spectrum.distinct();
    let z = normalization_point(kind, spectrum);
    let polys = match (spectrum.is_exact(), z.as_exact()) {
        (true, Some(z)) => {
            let orth = orthogonal_exact(|f, g| scalar_product(spectrum, f, g), distinct)?;
            FamilyPolys::Exact(normalize_exact(orth, z)?)
        }
        _ => FamilyPolys::Numeric(numeric_family(spectrum, z.to_f64())?),
    };
    Ok(PredistanceFamily {
        kind,
        spectrum: spectrum.clone(),
        polys,
    })
}

fn numeric_family(spectrum: &Spectrum, z: f64) -> Result<Vec<Vec<f64>>> {
    let inner = |f: &[f64], g: &[f64]| scalar_product_f64(spectrum, f, g);
    let mut orth: Vec<(Vec<f64>, f64)> = vec![(vec![1.0], 1.0)];
    while orth.len() < spectrum.distinct() {
        let i = orth.len() - 1;
        let (r, norm) = &orth[i];
        let xr = poly_mul_f64(&[0.0, 1.0], r);
        let a = inner(&xr, r) / norm;
        let mut next = xr;
        axpy_f64(&mut next, -a, r);
        if i > 0 {
            let (prev, prev_norm) = &orth[i - 1];
            axpy_f64(&mut next, -(norm / prev_norm), prev);
        }
        let next_norm = inner(&next, &next);
        orth.push((next, next_norm));
    }
    orth.into_iter()
        .enumerate()
        .map(|(index, (r, norm))| {
            let rz = horner_f64(&r, z);
            if rz.abs() <= f64::EPSILON * norm.abs().max(1.0) {
                return Err(Error::DegenerateNormalization { index });
            }
            Ok(r.iter().map(|c| c * rz / norm).collect())
        })
        .collect()
}

/// Laplacian family computed exactly from the trace moments of `m`, which
/// needs no eigenvalues. The attached spectrum comes from `mode`.
pub fn laplacian_family_by_moments(m: &ExactMatrix, mode: SpectralMode, tol: f64) -> Result<PredistanceFamily> {
    let n = m.rows();
    let moments = trace_moments(m, 2 * n + 2)?;
    let inner = |f: &RatPoly, g: &RatPoly| -> Result<Rational> {
        let h = f * g;
        Ok(h.coeffs().iter().zip(&moments).map(|(c, mu)| c * mu).sum())
    };
    let orth = orthogonal_exact(inner, n + 1)?;
    let polys = normalize_exact(orth, &Rational::zero())?;
    Ok(PredistanceFamily {
        kind: PolyKind::Laplacian,
        spectrum: spectra::spectrum(m, mode, tol)?,
        polys: FamilyPolys::Exact(polys),
    })
}

/// Family for a matrix: exact from the spectrum when it is rational, exact by
/// moments for Laplacians otherwise, numeric as a last resort.
pub fn family_for_matrix(kind: PolyKind, m: &ExactMatrix, mode: SpectralMode, tol: f64) -> Result<PredistanceFamily> {
    let s = spectra::spectrum(m, mode, tol)?;
    if !s.is_exact() && kind == PolyKind::Laplacian && mode != SpectralMode::Numeric {
        return laplacian_family_by_moments(m, mode, tol);
    }
    predistance_family(kind, &s)
}

/// Outcome of comparing `H(M)` against the all-ones matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoffmanReport {
    pub holds: bool,
    pub exact: bool,
    /// Largest `|H(M)_{ij} − 1|`.
    pub max_deviation: f64,
    /// 1-based position of the largest deviation and the value found there.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize, String)>,
}

fn hoffman_against_j(family: &PredistanceFamily, m: &ExactMatrix, tol: f64) -> Result<HoffmanReport> {
    let n = m.rows();
    if let Some(h) = family.hoffman_exact() {
        let hm = m.eval_poly(&h)?;
        let one = Rational::one();
        let mut worst: Option<(usize, usize, Rational)> = None;
        for r in 0..n {
            for c in 0..n {
                let dev = (hm.get(r, c) - &one).abs();
                if !dev.is_zero() && worst.as_ref().is_none_or(|w| dev > w.2) {
                    worst = Some((r, c, dev));
                }
            }
        }
        return Ok(HoffmanReport {
            holds: worst.is_none(),
            exact: true,
            max_deviation: worst.as_ref().map_or(0.0, |w| w.2.to_f64().unwrap_or(f64::INFINITY)),
            witness: worst.map(|(r, c, _)| (r + 1, c + 1, hm.get(r, c).to_string())),
        });
    }
    let hm = eval_matrix_f64(&family.hoffman_f64(), &m.to_f64());
    let mut worst = (0, 0, 0.0f64);
    for r in 0..n {
        for c in 0..n {
            let dev = (hm[(r, c)] - 1.0).abs();
            if dev > worst.2 || dev.is_nan() {
                worst = (r, c, dev);
            }
        }
    }
    let holds = worst.2 <= n as f64 * tol;
    Ok(HoffmanReport {
        holds,
        exact: false,
        max_deviation: worst.2,
        witness: (!holds).then(|| (worst.0 + 1, worst.1 + 1, hm[(worst.0, worst.1)].to_string())),
    })
}

/// `H(A) = J`, which holds exactly for connected regular graphs.
pub fn hoffman_regular_check(g: &Graph, mode: SpectralMode, tol: f64) -> Result<HoffmanReport> {
    let a = g.adjacency();
    let family = match family_for_matrix(PolyKind::Adjacency, &a, mode, tol) {
        Err(Error::DegenerateNormalization { index }) => {
            return Ok(HoffmanReport {
                holds: false,
                exact: true,
                max_deviation: f64::INFINITY,
                witness: Some((0, 0, format!("predistance polynomial {index} vanishes at the largest eigenvalue"))),
            })
        }
        other => other?,
    };
    hoffman_against_j(&family, &a, tol)
}

fn check_laplacian_shape(m: &ExactMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    if !m.is_symmetric() {
        return Err(Error::MalformedLaplacian("not symmetric".into()));
    }
    for r in 0..m.rows() {
        let sum: Rational = m.row(r).iter().sum();
        if !sum.is_zero() {
            return Err(Error::MalformedLaplacian(format!("row {} sums to {sum}", r + 1)));
        }
        if let Some(c) = (0..m.cols()).find(|&c| c != r && m.get(r, c).is_positive()) {
            return Err(Error::MalformedLaplacian(format!(
                "positive off-diagonal entry at ({}, {})",
                r + 1,
                c + 1
            )));
        }
    }
    Ok(())
}

/// `H_L(M) = J` for a Laplacian-shaped `M`, which holds exactly when the
/// underlying weighted graph is connected.
pub fn hoffman_connected_check(m: &ExactMatrix, mode: SpectralMode, tol: f64) -> Result<HoffmanReport> {
    check_laplacian_shape(m)?;
    let family = family_for_matrix(PolyKind::Laplacian, m, mode, tol)?;
    hoffman_against_j(&family, m, tol)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DrgReport {
    pub drg: bool,
    pub diameter: usize,
    /// Number of distinct adjacency eigenvalues minus one.
    pub d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intersection_array: Option<IntersectionArray>,
    pub checked_by: String,
}

/// Whether `p_i(A)` equals the distance matrix `A_i`, exactly or within `tol` per entry.
pub fn poly_matches_distance_matrix(family: &PredistanceFamily, i: usize, a: &ExactMatrix, target: &ExactMatrix, tol: f64) -> Result<bool> {
    match family.exact() {
        Some(ps) => Ok(a.eval_poly(&ps[i])? == *target),
        None => {
            let v = eval_matrix_f64(&family.coeffs_f64(i), &a.to_f64());
            Ok((v - target.to_f64()).amax() <= tol)
        }
    }
}

/// Distance-regularity by the top predistance polynomial: with `d + 1`
/// distinct eigenvalues and diameter `D`, `G` is distance-regular iff `D = d`
/// and `p_d(A) = A_d`. On success every `p_i(A) = A_i` is confirmed and the
/// intersection array is read off the distance partition; the two tests must agree.
pub fn is_distance_regular(g: &Graph, mode: SpectralMode, tol: f64) -> Result<DrgReport> {
    let dist = g.distance_matrices()?;
    let a = g.adjacency();
    let family = family_for_matrix(PolyKind::Adjacency, &a, mode, tol)?;
    let d = family.len() - 1;
    let counted = intersection_array_by_counting(g)?;
    if dist.diameter != d {
        if counted.is_some() {
            return Err(Error::Inconsistent(format!(
                "distance partition is equitable but diameter {} differs from d = {d}",
                dist.diameter
            )));
        }
        return Ok(DrgReport {
            drg: false,
            diameter: dist.diameter,
            d,
            intersection_array: None,
            checked_by: format!("diameter {} != d = {d}", dist.diameter),
        });
    }
    let top = poly_matches_distance_matrix(&family, d, &a, &dist.mats[d], tol)?;
    if top != counted.is_some() {
        return Err(Error::Inconsistent(format!(
            "p_d(A) = A_d is {top} but the distance-partition count says {}",
            counted.is_some()
        )));
    }
    if !top {
        return Ok(DrgReport {
            drg: false,
            diameter: dist.diameter,
            d,
            intersection_array: None,
            checked_by: "p_d(A) != A_d".into(),
        });
    }
    for i in 0..d {
        if !poly_matches_distance_matrix(&family, i, &a, &dist.mats[i], tol)? {
            return Err(Error::Inconsistent(format!("p_d(A) = A_d holds but p_{i}(A) != A_{i}")));
        }
    }
    Ok(DrgReport {
        drg: true,
        diameter: dist.diameter,
        d,
        intersection_array: counted,
        checked_by: "p_i(A) = A_i for all i, distance partition count".into(),
    })
}
