//! The local algebra `ℝ[L_k, L̄_k]` of a graph and the global algebra `A(n,k)`
//! generated by the elementary matrices of `J(n,k)`.
//!
//! `L_k` and `L̄_k` are the Laplacians of `F_k(G)` and `F_k(Ḡ)`. Both are
//! spanning subgraphs of `J(n,k)` with complementary edge sets, so
//! `L_k + L̄_k = L_J`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::johnson::johnson_graph;
use crate::linalg::{rat, ExactMatrix, Rational, RowSpace};
use crate::report::Check;
use crate::spectra::{self, Eigenvalue, JointSpectrum, SpectralMode, Spectrum};
use crate::tokens::{binomial, differing_pair, token_graph, verify_intertwining};

fn first_nonzero(m: &ExactMatrix) -> Option<(usize, usize)> {
    m.first_difference(&ExactMatrix::zeros(m.rows(), m.cols()))
}

/// Laplacian commutation of `F_k(G)` and `F_k(Ḡ)`, with the adjacency
/// commutator reported alongside.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommuteReport {
    pub laplacians_commute: bool,
    pub adjacencies_commute: bool,
    /// First nonzero entry of `[L_k, L̄_k]` (1-based) when they do not commute.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub laplacian_witness: Option<(usize, usize, String)>,
    /// First nonzero entry of `[A_k, Ā_k]` when the adjacency matrices do not commute.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adjacency_witness: Option<(usize, usize, String)>,
}

pub fn check_commute(g: &Graph, k: usize) -> Result<CommuteReport> {
    let f = token_graph(g, k)?;
    let fbar = token_graph(&g.complement(), k)?;
    let witness = |a: &ExactMatrix, b: &ExactMatrix| -> Result<Option<(usize, usize, String)>> {
        let c = a.commutator(b)?;
        Ok(first_nonzero(&c).map(|(r, col)| (r + 1, col + 1, c.get(r, col).to_string())))
    };
    let lw = witness(&f.laplacian(), &fbar.laplacian())?;
    let aw = witness(&f.adjacency(), &fbar.adjacency())?;
    Ok(CommuteReport {
        laplacians_commute: lw.is_none(),
        adjacencies_commute: aw.is_none(),
        laplacian_witness: lw,
        adjacency_witness: aw,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairRow {
    pub level: usize,
    /// 1-based position within the level.
    pub index: usize,
    pub lambda: Eigenvalue,
    pub lambda_bar: Eigenvalue,
    /// `j(n+1−j)`.
    pub lambda_j: u64,
}

/// Level-by-level pairing of the spectra of `F_k(G)` and `F_k(Ḡ)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairTable {
    pub n: usize,
    pub k: usize,
    pub exact: bool,
    pub rows: Vec<PairRow>,
    /// Smallest gap between distinct eigenvalues met on the numeric path.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_gap: Option<f64>,
}

impl PairTable {
    /// First row with `λ + λ̄ ≠ λ_j`, exactly or beyond `tol`.
    pub fn law_violation(&self, tol: f64) -> Option<&PairRow> {
        self.rows.iter().find(|r| match (&r.lambda, &r.lambda_bar) {
            (Eigenvalue::Exact(a), Eigenvalue::Exact(b)) => a + b != rat(r.lambda_j as i64),
            (a, b) => (a.to_f64() + b.to_f64() - r.lambda_j as f64).abs() > tol,
        })
    }

    pub fn law_check(&self, tol: f64) -> Check {
        Check::from_failure(
            "λ + λ̄ = j(n+1−j) on every row",
            self.law_violation(tol).map(|r| {
                format!(
                    "level {} row {}: {} + {} != {}",
                    r.level, r.index, r.lambda, r.lambda_bar, r.lambda_j
                )
            }),
        )
    }

    /// The rows as a joint-spectrum-style multiset of `(λ, λ̄, multiplicity)`.
    pub fn pair_multiset(&self) -> Vec<(Eigenvalue, Eigenvalue, usize)> {
        let mut out: Vec<(Eigenvalue, Eigenvalue, usize)> = Vec::new();
        let mut rows: Vec<&PairRow> = self.rows.iter().collect();
        rows.sort_by(|x, y| x.lambda.cmp_value(&y.lambda).then_with(|| x.lambda_bar.cmp_value(&y.lambda_bar)));
        for r in rows {
            match out.last_mut() {
                Some((a, b, m)) if a.matches(&r.lambda, 0.0) && b.matches(&r.lambda_bar, 0.0) => *m += 1,
                _ => out.push((r.lambda.clone(), r.lambda_bar.clone(), 1)),
            }
        }
        out
    }
}

fn token_spectra(g: &Graph, j: usize, mode: SpectralMode, tol: f64) -> Result<Spectrum> {
    spectra::spectrum(&token_graph(g, j)?.laplacian(), mode, tol)
}

pub fn pairing_table(g: &Graph, k: usize, mode: SpectralMode, tol: f64) -> Result<PairTable> {
    let n = g.n();
    if k == 0 || 2 * k > n {
        return Err(Error::KOutOfRange { n, k });
    }
    let gbar = g.complement();
    let mut rows = Vec::new();
    let mut exact = true;
    let mut gaps: Vec<f64> = Vec::new();
    let mut prev: Option<(Spectrum, Spectrum)> = None;
    for j in 0..=k {
        let s = token_spectra(g, j, mode, tol)?;
        let sbar = token_spectra(&gbar, j, mode, tol)?;
        let (level, level_bar) = match &prev {
            None => (s.clone(), sbar.clone()),
            Some((p, pbar)) => (spectra::spectrum_diff(&s, p)?, spectra::spectrum_diff(&sbar, pbar)?),
        };
        exact &= s.is_exact() && sbar.is_exact();
        if !s.is_exact() || !sbar.is_exact() {
            gaps.extend(spectra::min_gap(&s));
            gaps.extend(spectra::min_gap(&sbar));
        }
        let expected = (binomial(n as i64, j as i64) - binomial(n as i64, j as i64 - 1)) as usize;
        if level.size() != expected || level_bar.size() != expected {
            return Err(Error::Pairing(format!(
                "level {j} has {} and {} eigenvalues, expected {expected}",
                level.size(),
                level_bar.size()
            )));
        }
        let lambdas = level.values();
        let mut bars = level_bar.values();
        bars.reverse();
        let lambda_j = (j * (n + 1 - j)) as u64;
        for (r, (a, b)) in lambdas.into_iter().zip(bars).enumerate() {
            rows.push(PairRow {
                level: j,
                index: r + 1,
                lambda: a,
                lambda_bar: b,
                lambda_j,
            });
        }
        prev = Some((s, sbar));
    }
    Ok(PairTable {
        n,
        k,
        exact,
        rows,
        min_gap: gaps.into_iter().reduce(f64::min),
    })
}

/// Rank of `{L^a L̄^b : a + b ≤ max_degree}` and the degree at which it
/// stabilized. Once a whole degree layer lies in the span of the lower ones,
/// so does every higher layer, and the loop stops there.
pub fn monomial_span_rank(l: &ExactMatrix, lbar: &ExactMatrix, max_degree: usize) -> Result<(usize, usize)> {
    let n = l.rows();
    let mut space = RowSpace::new(n * n);
    let identity = ExactMatrix::identity(n);
    space.insert(&identity.vectorize());
    let mut layer = vec![identity];
    for degree in 1..=max_degree {
        // layer[a] = L^(degree-1-a) L̄^a  ->  next[a] = L^(degree-a) L̄^a
        let mut next = Vec::with_capacity(degree + 1);
        for prev in &layer {
            next.push(l.mul(prev)?);
        }
        next.push(lbar.mul(layer.last().expect("nonempty layer"))?);
        let mut grew = false;
        for m in &next {
            grew |= space.insert(&m.vectorize());
        }
        if !grew {
            return Ok((space.dim(), degree));
        }
        layer = next;
    }
    Ok((space.dim(), max_degree))
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalOptions {
    pub alpha: Option<Rational>,
    pub beta: Option<Rational>,
    pub mode: SpectralMode,
    pub tol: f64,
    pub idempotents: bool,
}

impl Default for LocalOptions {
    fn default() -> Self {
        Self {
            alpha: None,
            beta: None,
            mode: SpectralMode::Auto,
            tol: spectra::DEFAULT_TOL,
            idempotents: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LocalAlgebraReport {
    pub n: usize,
    pub k: usize,
    /// Number of distinct joint eigenvalue pairs.
    pub dim: usize,
    /// Rank of the monomials `L^a L̄^b`.
    pub monomial_rank: usize,
    pub joint: JointSpectrum,
    #[serde(with = "crate::json::rational")]
    pub alpha: Rational,
    #[serde(with = "crate::json::rational")]
    pub beta: Rational,
    pub r: ExactMatrix,
    pub r_spectrum: Spectrum,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub idempotents: Vec<ExactMatrix>,
    pub checks: Vec<Check>,
}

impl LocalAlgebraReport {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

/// Integer-scaled copy `c·M` and the scale `c`.
fn integral_multiple(m: &ExactMatrix) -> (ExactMatrix, Rational) {
    let c = Rational::from_integer(m.denominator_lcm());
    (m.scale(&c), c)
}

/// Spectral idempotents `E_i = Π_{j≠i} (R − θ_j I) / Π_{j≠i} (θ_i − θ_j)`,
/// using prefix and suffix products so each factor is multiplied in once.
pub fn idempotents(r: &ExactMatrix, thetas: &[Rational]) -> Result<Vec<ExactMatrix>> {
    let (r, c) = integral_multiple(r);
    let thetas: Vec<Rational> = thetas.iter().map(|t| t * &c).collect();
    let n = r.rows();
    let m = thetas.len();
    let factors: Vec<ExactMatrix> = thetas
        .iter()
        .map(|t| r.add_scalar_identity(&-t.clone()))
        .collect::<Result<_>>()?;
    let mut prefix = vec![ExactMatrix::identity(n)];
    for f in &factors[..m.saturating_sub(1)] {
        prefix.push(prefix.last().expect("nonempty").mul(f)?);
    }
    let mut suffix = vec![ExactMatrix::identity(n); m];
    for i in (0..m.saturating_sub(1)).rev() {
        suffix[i] = factors[i + 1].mul(&suffix[i + 1])?;
    }
    (0..m)
        .map(|i| {
            let denom: Rational = (0..m)
                .filter(|&j| j != i)
                .map(|j| &thetas[i] - &thetas[j])
                .fold(Rational::one(), |acc, x| acc * x);
            Ok(prefix[i].mul(&suffix[i])?.scale(&denom.recip()))
        })
        .collect()
}

fn idempotent_checks(es: &[ExactMatrix], thetas: &[Rational], r: &ExactMatrix) -> Result<Vec<Check>> {
    let n = r.rows();
    let mut sum = ExactMatrix::zeros(n, n);
    let mut weighted = ExactMatrix::zeros(n, n);
    for (e, t) in es.iter().zip(thetas) {
        sum = sum.add(e)?;
        weighted = weighted.add(&e.scale(t))?;
    }
    let mut products = None;
    'outer: for (i, ei) in es.iter().enumerate() {
        for (j, ej) in es.iter().enumerate().skip(i) {
            let p = ei.mul(ej)?;
            let ok = if i == j { p == *ei } else { p.is_zero() };
            if !ok {
                products = Some(format!("E_{i}·E_{j}"));
                break 'outer;
            }
        }
    }
    Ok(vec![
        Check::from_failure(
            "Σ E_i = I",
            sum.first_difference(&ExactMatrix::identity(n)).map(|(a, b)| format!("entry ({}, {})", a + 1, b + 1)),
        ),
        Check::from_failure("E_i·E_j = δ_ij·E_i", products),
        Check::from_failure(
            "Σ θ_i·E_i = R",
            weighted.first_difference(r).map(|(a, b)| format!("entry ({}, {})", a + 1, b + 1)),
        ),
    ])
}

/// Structure of `ℝ[L_k, L̄_k]`: its dimension counted two ways, the single
/// generator `R = αL_k + βL̄_k`, its spectral idempotents and the Johnson
/// subalgebra.
pub fn local_algebra(g: &Graph, k: usize, opts: &LocalOptions) -> Result<LocalAlgebraReport> {
    let n = g.n();
    if k == 0 || k >= n {
        return Err(Error::KOutOfRange { n, k });
    }
    let l = token_graph(g, k)?.laplacian();
    let lbar = token_graph(&g.complement(), k)?.laplacian();
    if !l.commutes_with(&lbar)? {
        return Err(Error::NotCommuting);
    }
    let joint = spectra::joint_spectrum(&l, &lbar, opts.mode, opts.tol)?;
    let dim = joint.pairs.len();
    let (monomial_rank, _) = monomial_span_rank(&l, &lbar, dim)?;
    let mut checks = vec![Check::from_failure(
        "distinct pairs = monomial span rank",
        (monomial_rank != dim).then(|| format!("{dim} pairs, rank {monomial_rank}")),
    )];
    let size = l.rows();
    checks.push(Check::from_failure(
        "k+1 ≤ dim ≤ C(n,k)",
        (dim < k.min(n - k) + 1 || dim > size).then(|| format!("dim {dim}")),
    ));
    if 2 * k <= n {
        let table = pairing_table(g, k, opts.mode, opts.tol)?;
        let from_table = table.pair_multiset();
        let same = from_table.len() == joint.pairs.len()
            && from_table.iter().zip(&joint.pairs).all(|(x, y)| {
                x.0.matches(&y.0, 2.0 * opts.tol) && x.1.matches(&y.1, 2.0 * opts.tol) && x.2 == y.2
            });
        checks.push(Check::from_failure(
            "pairing table pairs = joint spectrum pairs",
            (!same).then(|| format!("table {from_table:?} vs joint {:?}", joint.pairs)),
        ));
    }

    let alpha = opts.alpha.clone().unwrap_or_else(Rational::one);
    let beta = opts
        .beta
        .clone()
        .unwrap_or_else(|| Rational::new(BigInt::one(), BigInt::from(joint.t)));
    let r = l.scale(&alpha).add(&lbar.scale(&beta))?;
    let r_spectrum = spectra::spectrum(&r, opts.mode, opts.tol)?;
    checks.push(Check::from_failure(
        "R has one eigenvalue per pair",
        (r_spectrum.distinct() != dim).then(|| format!("{} distinct eigenvalues of R, {dim} pairs", r_spectrum.distinct())),
    ));

    // powers of R: basis of the algebra and the Johnson subalgebra
    let mut powers = RowSpace::new(size * size);
    let mut p = ExactMatrix::identity(size);
    let mut independent = true;
    for i in 0..dim {
        if i > 0 {
            p = p.mul(&r)?;
        }
        independent &= powers.insert(&p.vectorize());
    }
    checks.push(Check::from_failure(
        "I, R, …, R^d are independent",
        (!independent).then(|| format!("rank {} < {dim}", powers.dim())),
    ));
    let a_j = ExactMatrix::identity(size)
        .scale(&rat((k * (n - k)) as i64))
        .sub(&l.add(&lbar)?)?;
    let adjacency_j = johnson_graph(n, k)?.adjacency();
    checks.push(Check::from_failure(
        "k(n−k)·I − (L_k + L̄_k) = A_J",
        a_j.first_difference(&adjacency_j).map(|(x, y)| format!("entry ({}, {})", x + 1, y + 1)),
    ));
    checks.push(Check::from_failure(
        "A_J ∈ span{I, R, …, R^d}",
        (!powers.contains(&a_j.vectorize())).then(|| "A_J is outside the span".to_string()),
    ));

    let mut es = Vec::new();
    if opts.idempotents && r_spectrum.is_exact() && r_spectrum.distinct() == dim {
        let thetas = r_spectrum.exact_values().map(|mut v| {
            v.dedup();
            v
        });
        if let Some(thetas) = thetas {
            es = idempotents(&r, &thetas)?;
            checks.extend(idempotent_checks(&es, &thetas, &r)?);
        }
    }

    Ok(LocalAlgebraReport {
        n,
        k,
        dim,
        monomial_rank,
        joint,
        alpha,
        beta,
        r,
        r_spectrum,
        idempotents: es,
        checks,
    })
}

/// `A_e`: adjacency of `F_k(K_n(e))` in the lexicographic labeling.
pub fn elementary_adjacency(n: usize, k: usize, e: (usize, usize)) -> Result<ExactMatrix> {
    Ok(token_graph(&Graph::elementary(n, e)?, k)?.adjacency())
}

/// `L_e = A_e² − A_e`.
pub fn elementary_laplacian(n: usize, k: usize, e: (usize, usize)) -> Result<ExactMatrix> {
    let a = elementary_adjacency(n, k, e)?;
    a.mul(&a)?.sub(&a)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalAlgebraReport {
    pub n: usize,
    pub k: usize,
    pub dim: usize,
    pub edges: Vec<(usize, usize)>,
    pub elementary: Vec<ExactMatrix>,
    pub checks: Vec<Check>,
}

impl GlobalAlgebraReport {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

pub fn global_algebra(n: usize, k: usize) -> Result<GlobalAlgebraReport> {
    if k == 0 || k >= n {
        return Err(Error::KOutOfRange { n, k });
    }
    let edges: Vec<(usize, usize)> = Graph::complete(n).edges().to_vec();
    let mats = edges
        .iter()
        .map(|&e| elementary_adjacency(n, k, e))
        .collect::<Result<Vec<_>>>()?;
    let size = binomial(n as i64, k as i64) as usize;
    let nonzeros = 2 * binomial(n as i64 - 2, k as i64 - 1) as usize;
    let mut checks = Vec::new();

    let shape_failure = mats.iter().zip(&edges).find_map(|(a, e)| {
        let count = a.entries().iter().filter(|x| !x.is_zero()).count();
        let binary = a.entries().iter().all(|x| x.is_zero() || x.is_one());
        (!a.is_symmetric() || !binary || count != nonzeros)
            .then(|| format!("A_{{{},{}}} has {count} nonzero entries, expected {nonzeros}", e.0, e.1))
    });
    checks.push(Check::from_failure("A_e symmetric 0/1 with 2·C(n−2,k−1) ones", shape_failure));

    let mut owner: Vec<Option<usize>> = vec![None; size * size];
    let mut overlap = None;
    for (i, a) in mats.iter().enumerate() {
        for (pos, x) in a.entries().iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            if let Some(j) = owner[pos] {
                overlap = Some(format!(
                    "A_{{{},{}}} and A_{{{},{}}} share entry ({}, {})",
                    edges[j].0,
                    edges[j].1,
                    edges[i].0,
                    edges[i].1,
                    pos / size + 1,
                    pos % size + 1
                ));
            }
            owner[pos] = Some(i);
        }
    }
    checks.push(Check::from_failure("supports are pairwise disjoint", overlap));

    let mut span = RowSpace::new(size * size);
    for a in &mats {
        span.insert(&a.vectorize());
    }
    let dim = span.dim();
    let expected = edges.len();
    checks.push(Check::from_failure(
        "dim = C(n,2)",
        (dim != expected).then(|| format!("rank {dim}, expected {expected}")),
    ));

    if n >= 3 {
        let a12 = elementary_adjacency(n, k, (1, 2))?;
        let a13 = elementary_adjacency(n, k, (1, 3))?;
        let c = a12.commutator(&a13)?;
        checks.push(Check::from_failure(
            "A_{1,2} and A_{1,3} do not commute",
            c.is_zero().then(|| "commutator vanishes".to_string()),
        ));
    }

    let mut sum = ExactMatrix::zeros(size, size);
    let mut laplacian_failure = None;
    for (a, &e) in mats.iter().zip(&edges) {
        sum = sum.add(a)?;
        let le = a.mul(a)?.sub(a)?;
        let direct = token_graph(&Graph::elementary(n, e)?, k)?.laplacian();
        if laplacian_failure.is_none() {
            laplacian_failure = le
                .first_difference(&direct)
                .map(|(r, c)| format!("e = {{{},{}}}, entry ({}, {})", e.0, e.1, r + 1, c + 1));
        }
    }
    checks.push(Check::from_failure("A_e² − A_e = L(F_k(K_n(e)))", laplacian_failure));
    let aj = johnson_graph(n, k)?.adjacency();
    checks.push(Check::from_failure(
        "Σ A_e = A_J",
        sum.first_difference(&aj).map(|(r, c)| format!("entry ({}, {})", r + 1, c + 1)),
    ));

    Ok(GlobalAlgebraReport {
        n,
        k,
        dim,
        edges,
        elementary: mats,
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Recognition {
    Accepted { graph: Graph },
    /// The class of `e` is only partly present in `S`.
    Rejected { edge: (usize, usize), present: usize, class_size: usize },
}

impl Recognition {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Recognition::Accepted { .. })
    }
}

/// Validates that `s` is a spanning subgraph of `J(n,k)` and returns, for
/// each edge of `K_n`, how many of its class edges `s` contains.
fn class_counts(s: &Graph, n: usize, k: usize) -> Result<BTreeMap<(usize, usize), usize>> {
    if k == 0 || k >= n {
        return Err(Error::KOutOfRange { n, k });
    }
    let subsets = crate::tokens::k_subsets(n, k)?;
    if s.n() != subsets.len() {
        return Err(Error::NotJohnsonSubgraph {
            n,
            k,
            reason: format!("{} vertices, expected C(n,k) = {}", s.n(), subsets.len()),
        });
    }
    let mut counts = BTreeMap::new();
    for &(u, v) in s.edges() {
        let pair = differing_pair(&subsets[u - 1].elements, &subsets[v - 1].elements).ok_or_else(|| {
            Error::NotJohnsonSubgraph {
                n,
                k,
                reason: format!("edge {{{u},{v}}} joins {} and {}", subsets[u - 1].label(), subsets[v - 1].label()),
            }
        })?;
        *counts.entry(pair).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Finds `H` with `F_k(H) = S`, or a class of `J(n,k)` that `S` cuts.
pub fn recognize_token_graph(s: &Graph, n: usize, k: usize) -> Result<Recognition> {
    let counts = class_counts(s, n, k)?;
    let class_size = binomial(n as i64 - 2, k as i64 - 1) as usize;
    if let Some((&edge, &present)) = counts.iter().find(|(_, &c)| c != class_size) {
        return Ok(Recognition::Rejected {
            edge,
            present,
            class_size,
        });
    }
    let h = Graph::new(n, counts.keys().copied())?;
    if token_graph(&h, k)?.graph != *s {
        return Err(Error::Inconsistent("F_k(H) differs from the input".into()));
    }
    Ok(Recognition::Accepted { graph: h })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommuteIffReport {
    pub commutes: bool,
    pub recognition: Recognition,
    pub agree: bool,
}

/// Runs the commutation test of `L(S)` against `L` of the complement of `S`
/// inside `J(n,k)`, and recognition, independently.
pub fn commute_iff_token(s: &Graph, n: usize, k: usize) -> Result<CommuteIffReport> {
    let recognition = recognize_token_graph(s, n, k)?;
    let j = johnson_graph(n, k)?.graph;
    let rest: Vec<(usize, usize)> = j.edges().iter().copied().filter(|&(u, v)| !s.has_edge(u, v)).collect();
    let sbar = Graph::new(s.n(), rest)?;
    let commutes = s.laplacian().commutes_with(&sbar.laplacian())?;
    Ok(CommuteIffReport {
        commutes,
        agree: commutes == recognition.is_accepted(),
        recognition,
    })
}

/// One titled group of checks in a full verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub title: String,
    pub checks: Vec<Check>,
}

/// Every check available for a graph and token number: the binomial-matrix
/// identities, Laplacian commutation, the pairing law and the local algebra.
pub fn verify_all(g: &Graph, k: usize, mode: SpectralMode, tol: f64) -> Result<Vec<Section>> {
    let n = g.n();
    if k == 0 || k >= n {
        return Err(Error::KOutOfRange { n, k });
    }
    let mut sections = vec![Section {
        title: "binomial matrix".into(),
        checks: verify_intertwining(g, k)?.checks,
    }];

    let commute = check_commute(g, k)?;
    sections.push(Section {
        title: "commutation".into(),
        checks: vec![Check::from_failure(
            "L_k·L̄_k = L̄_k·L_k",
            commute
                .laplacian_witness
                .as_ref()
                .map(|(r, c, v)| format!("commutator entry ({r}, {c}) = {v}")),
        )],
    });

    let kk = k.min(n - k);
    let pairing = pairing_table(g, kk, mode, tol)?;
    let law_tol = if pairing.exact { 0.0 } else { 2.0 * tol.max(1e-9) };
    sections.push(Section {
        title: "pairing".into(),
        checks: vec![pairing.law_check(law_tol)],
    });

    let local = local_algebra(g, k, &LocalOptions {
        mode,
        tol,
        ..LocalOptions::default()
    })?;
    sections.push(Section {
        title: "local algebra".into(),
        checks: local.checks,
    });
    Ok(sections)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::frac;
    use crate::spectra::DEFAULT_TOL;

    fn paw() -> Graph {
        Graph::new(4, [(1, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    fn row_values(t: &PairTable) -> Vec<(usize, i64, i64, u64)> {
        t.rows
            .iter()
            .map(|r| (r.level, r.lambda.to_f64() as i64, r.lambda_bar.to_f64() as i64, r.lambda_j))
            .collect()
    }

    #[test]
    fn paw_commutes_c5_adjacency_does_not() {
        let rep = check_commute(&paw(), 2).unwrap();
        assert!(rep.laplacians_commute);
        let c5 = Graph::new(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 5)]).unwrap();
        let rep = check_commute(&c5, 2).unwrap();
        assert!(rep.laplacians_commute);
        assert!(!rep.adjacencies_commute);
        assert!(rep.adjacency_witness.is_some());
    }

    #[test]
    fn paw_pairing_table() {
        let t = pairing_table(&paw(), 2, SpectralMode::Exact, DEFAULT_TOL).unwrap();
        assert_eq!(
            row_values(&t),
            [(0, 0, 0, 0), (1, 1, 3, 4), (1, 3, 1, 4), (1, 4, 0, 4), (2, 3, 3, 6), (2, 5, 1, 6)]
        );
        assert!(t.law_check(0.0).passed);
        assert!(t.exact);
        assert!(pairing_table(&paw(), 3, SpectralMode::Exact, DEFAULT_TOL).is_err());
    }

    #[test]
    fn complete_graph_pairing() {
        let t = pairing_table(&Graph::complete(5), 2, SpectralMode::Auto, DEFAULT_TOL).unwrap();
        assert!(t.rows.iter().all(|r| r.lambda_bar == Eigenvalue::Exact(rat(0))));
        assert_eq!(t.rows.len(), 10);
    }

    #[test]
    fn paw_local_algebra() {
        let rep = local_algebra(&paw(), 2, &LocalOptions::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
        assert_eq!((rep.dim, rep.monomial_rank), (6, 6));
        assert_eq!(rep.idempotents.len(), 6);

        let forced = LocalOptions {
            alpha: Some(rat(2)),
            beta: Some(rat(1)),
            ..LocalOptions::default()
        };
        let rep = local_algebra(&paw(), 2, &forced).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
        assert_eq!(rep.r_spectrum, Spectrum::from_integers(&[0, 5, 7, 8, 9, 11]));
    }

    #[test]
    fn complete_graph_local_algebra() {
        let rep = local_algebra(&Graph::complete(4), 2, &LocalOptions::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.checks);
        assert_eq!(rep.dim, 3);
    }

    #[test]
    fn printed_elementary_matrices() {
        let a = elementary_adjacency(4, 2, (1, 2)).unwrap();
        let expected_a = ExactMatrix::from_i64_rows(&[
            [0, 0, 0, 0, 0, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 1, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 0, 0],
        ]);
        assert_eq!(a, expected_a);
        let l = elementary_laplacian(4, 2, (1, 2)).unwrap();
        let expected_l = ExactMatrix::from_i64_rows(&[
            [0, 0, 0, 0, 0, 0],
            [0, 1, 0, -1, 0, 0],
            [0, 0, 1, 0, -1, 0],
            [0, -1, 0, 1, 0, 0],
            [0, 0, -1, 0, 1, 0],
            [0, 0, 0, 0, 0, 0],
        ]);
        assert_eq!(l, expected_l);
        assert!(elementary_adjacency(4, 2, (1, 5)).is_err());
    }

    #[test]
    fn global_dimensions() {
        for (n, k, dim) in [(4, 2, 6), (5, 2, 10), (4, 1, 6), (5, 3, 10)] {
            let rep = global_algebra(n, k).unwrap();
            assert!(rep.passed(), "{:?}", rep.checks);
            assert_eq!(rep.dim, dim);
        }
        assert!(global_algebra(2, 1).unwrap().passed());
    }

    #[test]
    fn recognition() {
        let j42 = johnson_graph(4, 2).unwrap().graph;
        assert_eq!(
            recognize_token_graph(&j42, 4, 2).unwrap(),
            Recognition::Accepted { graph: Graph::complete(4) }
        );
        let f2 = token_graph(&paw(), 2).unwrap().graph;
        assert_eq!(recognize_token_graph(&f2, 4, 2).unwrap(), Recognition::Accepted { graph: paw() });

        let cut: Vec<(usize, usize)> = j42.edges()[1..].to_vec();
        let cut = Graph::new(6, cut).unwrap();
        match recognize_token_graph(&cut, 4, 2).unwrap() {
            Recognition::Rejected { present, class_size, .. } => assert_eq!((present, class_size), (1, 2)),
            other => panic!("{other:?}"),
        }
        let rep = commute_iff_token(&cut, 4, 2).unwrap();
        assert!(!rep.commutes && rep.agree);
        let rep = commute_iff_token(&f2, 4, 2).unwrap();
        assert!(rep.commutes && rep.agree);
        let rep = commute_iff_token(&j42, 4, 2).unwrap();
        assert!(rep.commutes && rep.agree);

        let not_sub = Graph::new(6, [(1, 6)]).unwrap();
        assert!(matches!(recognize_token_graph(&not_sub, 4, 2), Err(Error::NotJohnsonSubgraph { .. })));
        assert!(recognize_token_graph(&Graph::complete(5), 4, 2).is_err());
    }

    #[test]
    fn idempotents_of_a_diagonal_matrix() {
        let r = ExactMatrix::diagonal(&[rat(0), frac(1, 2), frac(1, 2)]);
        let es = idempotents(&r, &[rat(0), frac(1, 2)]).unwrap();
        assert_eq!(es[0], ExactMatrix::diagonal(&[rat(1), rat(0), rat(0)]));
        assert_eq!(es[1], ExactMatrix::diagonal(&[rat(0), rat(1), rat(1)]));
    }

    #[test]
    fn verify_all_paw() {
        let sections = verify_all(&paw(), 2, SpectralMode::Auto, DEFAULT_TOL).unwrap();
        for s in &sections {
            assert!(crate::report::all_passed(&s.checks), "{}: {:?}", s.title, s.checks);
        }
        assert_eq!(sections.len(), 4);
    }
}
