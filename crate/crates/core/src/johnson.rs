//! Johnson graphs `J(n,k) = F_k(K_n)` and their closed-form data.
//!
//! Operations stated for `k ≤ n − k` accept larger `k` by passing to `n − k`:
//! complementing subsets is an isomorphism `J(n,k) ≅ J(n,n−k)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::linalg::{rat, ExactMatrix, Rational};
use crate::orthopoly::{self, PolyKind};
use crate::report::Check;
use crate::spectra::{Eigenvalue, SpectralMode, Spectrum, SpectrumMode};
use crate::tokens::{binomial, binomial_matrix, token_graph, KSubset, TokenGraph};

/// Parameters of a distance-regular graph's distance partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionArray {
    pub d: usize,
    /// `b_0 … b_{d−1}`.
    pub b: Vec<u64>,
    /// `a_0 … a_d`.
    pub a: Vec<u64>,
    /// `c_1 … c_d`.
    pub c: Vec<u64>,
}

impl IntersectionArray {
    pub fn degree(&self) -> u64 {
        self.b.first().copied().unwrap_or(0)
    }

    /// `b_j` with `b_d = 0`.
    pub fn b_at(&self, j: usize) -> u64 {
        self.b.get(j).copied().unwrap_or(0)
    }

    /// `c_j` with `c_0 = 0`.
    pub fn c_at(&self, j: usize) -> u64 {
        if j == 0 {
            0
        } else {
            self.c[j - 1]
        }
    }

    /// `a_j + b_j + c_j = b_0` for every `j`.
    pub fn is_consistent(&self) -> bool {
        self.a.len() == self.d + 1
            && self.b.len() == self.d
            && self.c.len() == self.d
            && (0..=self.d).all(|j| self.a[j] + self.b_at(j) + self.c_at(j) == self.degree())
    }
}

/// Reads `a_j, b_j, c_j` off the distance partition of every vertex; `None`
/// when the counts depend on the vertex pair (not distance-regular).
pub fn intersection_array_by_counting(g: &Graph) -> Result<Option<IntersectionArray>> {
    let dist = g.distance_table()?;
    let adj = g.neighbors();
    let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut a: Vec<Option<u64>> = vec![None; diameter + 1];
    let mut b: Vec<Option<u64>> = vec![None; diameter + 1];
    let mut c: Vec<Option<u64>> = vec![None; diameter + 1];
    let record = |slot: &mut Option<u64>, v: u64| match slot {
        None => {
            *slot = Some(v);
            true
        }
        Some(old) => *old == v,
    };
    for row in &dist {
        for v in 0..g.n() {
            let i = row[v];
            let (mut ci, mut ai, mut bi) = (0, 0, 0);
            for &w in &adj[v] {
                let dw = row[w - 1];
                if dw + 1 == i {
                    ci += 1;
                } else if dw == i {
                    ai += 1;
                } else {
                    bi += 1;
                }
            }
            if !record(&mut a[i], ai) || !record(&mut b[i], bi) || !record(&mut c[i], ci) {
                return Ok(None);
            }
        }
    }
    let unwrap = |v: Vec<Option<u64>>| v.into_iter().map(|x| x.unwrap_or(0)).collect::<Vec<_>>();
    let (a, b, c) = (unwrap(a), unwrap(b), unwrap(c));
    Ok(Some(IntersectionArray {
        d: diameter,
        b: b[..diameter].to_vec(),
        a,
        c: c[1..].to_vec(),
    }))
}

fn check_range(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        return Err(Error::KOutOfRange { n, k });
    }
    Ok(())
}

/// `min(k, n − k)`.
fn reduced_k(n: usize, k: usize) -> usize {
    k.min(n - k)
}

/// `J(n,k)` for `1 ≤ k ≤ n − 1`.
pub fn johnson_graph(n: usize, k: usize) -> Result<TokenGraph> {
    check_range(n, k)?;
    token_graph(&Graph::complete(n), k)
}

/// `b_j = (k−j)(n−k−j)`, `c_j = j²`, `a_j = b_0 − b_j − c_j`.
pub fn johnson_intersection_array(n: usize, k: usize) -> Result<IntersectionArray> {
    check_range(n, k)?;
    let k = reduced_k(n, k) as u64;
    let n = n as u64;
    let b: Vec<u64> = (0..k).map(|j| (k - j) * (n - k - j)).collect();
    let c: Vec<u64> = (1..=k).map(|j| j * j).collect();
    let b0 = b[0];
    let a = (0..=k)
        .map(|j| {
            let bj = if j < k { b[j as usize] } else { 0 };
            b0 - bj - j * j
        })
        .collect();
    Ok(IntersectionArray {
        d: k as usize,
        b,
        a,
        c,
    })
}

/// Tridiagonal `(d+1) × (d+1)` matrix with `a_j` on the diagonal, `b_j` at
/// `(j+1, j)` and `c_{j+1}` at `(j, j+1)`; every column sums to `b_0`.
pub fn quotient_matrix(ia: &IntersectionArray) -> ExactMatrix {
    let size = ia.d + 1;
    let mut m = ExactMatrix::zeros(size, size);
    for j in 0..size {
        m.set(j, j, rat(ia.a[j] as i64));
        if j + 1 < size {
            m.set(j + 1, j, rat(ia.b[j] as i64));
            m.set(j, j + 1, rat(ia.c[j] as i64));
        }
    }
    m
}

/// Eigenvalues `j(n+1−j)` with multiplicities `C(n,j) − C(n,j−1)`, `j = 0…min(k, n−k)`.
pub fn johnson_laplacian_spectrum(n: usize, k: usize) -> Result<Spectrum> {
    check_range(n, k)?;
    let k = reduced_k(n, k);
    let entries = (0..=k)
        .map(|j| {
            let value = (j * (n + 1 - j)) as i64;
            let mult = binomial(n as i64, j as i64) - binomial(n as i64, j as i64 - 1);
            (Eigenvalue::Exact(rat(value)), mult as usize)
        })
        .collect();
    Ok(Spectrum {
        mode: SpectrumMode::Exact,
        entries,
    })
}

/// `k − |A ∩ B|`, the distance in `J(n,k)`.
pub fn johnson_distance(a: &KSubset, b: &KSubset) -> Result<usize> {
    if a.n != b.n || a.k() != b.k() {
        return Err(Error::SubsetMismatch(format!(
            "{} is a {}-subset of [{}], {} is a {}-subset of [{}]",
            a.label(),
            a.k(),
            a.n,
            b.label(),
            b.k(),
            b.n
        )));
    }
    let common = a.elements.iter().filter(|e| b.elements.contains(e)).count();
    Ok(a.k() - common)
}

/// Result of the `M = BBᵀ` checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MIdentityReport {
    pub n: usize,
    pub k: usize,
    pub checks: Vec<Check>,
}

impl MIdentityReport {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

/// `BBᵀ = Σ_{i<k} (k−i) A_i` over the distance matrices of `J(n,k)`; with a
/// graph `g` on `n` vertices also checks that `M`, `L_k(G)`, `L_k(Ḡ)` and
/// `L_J` pairwise commute.
pub fn verify_m_identity(n: usize, k: usize, g: Option<&Graph>) -> Result<MIdentityReport> {
    check_range(n, k)?;
    let b = binomial_matrix(n, k)?;
    let m = b.mul(&b.transpose())?;
    let j = johnson_graph(n, k)?;
    let dist = j.graph.distance_matrices()?;
    let mut sum = ExactMatrix::zeros(m.rows(), m.cols());
    for (i, ai) in dist.mats.iter().enumerate().take(k) {
        sum = sum.add(&ai.scale(&rat((k - i) as i64)))?;
    }
    let mut checks = vec![Check::from_failure(
        "B·Bᵀ = Σ (k−i)·A_i",
        m.first_difference(&sum).map(|(r, c)| {
            format!("entry ({}, {}): {} vs {}", r + 1, c + 1, m.get(r, c), sum.get(r, c))
        }),
    )];
    if let Some(g) = g {
        if g.n() != n {
            return Err(Error::Invalid(format!("graph has {} vertices, expected {n}", g.n())));
        }
        let named = [
            ("M", m.clone()),
            ("L_k", token_graph(g, k)?.laplacian()),
            ("L̄_k", token_graph(&g.complement(), k)?.laplacian()),
            ("L_J", j.laplacian()),
        ];
        for x in 0..named.len() {
            for y in x + 1..named.len() {
                let comm = named[x].1.commutator(&named[y].1)?;
                let failure = comm.first_difference(&ExactMatrix::zeros(comm.rows(), comm.cols())).map(|(r, c)| {
                    format!("commutator entry ({}, {}) = {}", r + 1, c + 1, comm.get(r, c))
                });
                checks.push(Check::from_failure(format!("{} and {} commute", named[x].0, named[y].0), failure));
            }
        }
    }
    Ok(MIdentityReport { n, k, checks })
}

/// Dimensions of the adjacency algebra and the distance-matrix span.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoseMesnerReport {
    /// Number of distinct adjacency eigenvalues.
    pub dim_a: usize,
    /// Diameter plus one.
    pub dim_d: usize,
    pub drg: bool,
    /// `dim(A ∩ D)` when confirmed through `A_i = p_i(A)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim_intersection: Option<usize>,
}

pub fn bose_mesner_check(g: &Graph, mode: SpectralMode, tol: f64) -> Result<BoseMesnerReport> {
    let dist = g.distance_matrices()?;
    let a = g.adjacency();
    let family = orthopoly::family_for_matrix(PolyKind::Adjacency, &a, mode, tol)?;
    let dim_a = family.len();
    let drg = orthopoly::is_distance_regular(g, mode, tol)?.drg;
    let dim_intersection = if drg {
        let d = dim_a - 1;
        let all = (0..=d)
            .map(|i| orthopoly::poly_matches_distance_matrix(&family, i, &a, &dist.mats[i], tol))
            .collect::<Result<Vec<bool>>>()?;
        all.iter().all(|&x| x).then_some(d + 1)
    } else {
        None
    };
    Ok(BoseMesnerReport {
        dim_a,
        dim_d: dist.diameter + 1,
        drg,
        dim_intersection,
    })
}

/// Everything `tokenalg johnson --verify` checks for one `(n, k)`.
pub fn verify_johnson(n: usize, k: usize, mode: SpectralMode, tol: f64) -> Result<Vec<Check>> {
    let j = johnson_graph(n, k)?;
    let mut checks = Vec::new();

    let degree = k * (n - k);
    checks.push(Check::from_failure(
        "J(n,k) is k(n−k)-regular",
        (j.graph.regular_degree() != Some(degree)).then(|| format!("degrees {:?}", j.graph.degrees())),
    ));

    let closed = johnson_laplacian_spectrum(n, k)?;
    let computed = crate::spectra::spectrum(&j.laplacian(), mode, tol)?;
    checks.push(Check::from_failure(
        "Laplacian spectrum j(n+1−j)",
        (!computed.matches(&closed)).then(|| format!("computed {computed}, closed form {closed}")),
    ));

    let formula = johnson_intersection_array(n, k)?;
    let counted = intersection_array_by_counting(&j.graph)?;
    checks.push(Check::from_failure(
        "intersection array by counting",
        (counted.as_ref() != Some(&formula)).then(|| format!("counted {counted:?}, formula {formula:?}")),
    ));

    let q = quotient_matrix(&formula);
    let qpoly = q.char_poly()?;
    let apoly = j.adjacency().char_poly()?;
    checks.push(Check::from_failure(
        "quotient eigenvalues are adjacency eigenvalues",
        (!qpoly.divides(&apoly)?).then(|| format!("{qpoly} does not divide {apoly}")),
    ));

    let sums: Vec<Rational> = (0..q.cols()).map(|c| (0..q.rows()).map(|r| q.get(r, c).clone()).sum()).collect();
    checks.push(Check::from_failure(
        "quotient column sums equal b_0",
        sums.iter()
            .position(|s| *s != rat(formula.degree() as i64))
            .map(|c| format!("column {} sums to {}", c + 1, sums[c])),
    ));

    let drg = orthopoly::is_distance_regular(&j.graph, mode, tol)?;
    checks.push(Check::from_failure(
        "p_d(A) = A_d",
        (!drg.drg).then(|| drg.checked_by.clone()),
    ));

    let labels = &j.labels;
    let table = j.graph.distance_table()?;
    let mut mismatch = None;
    'outer: for x in labels {
        for y in labels {
            let d = johnson_distance(x, y)?;
            if d != table[x.rank][y.rank] {
                mismatch = Some(format!("{} to {}: {d} vs BFS {}", x.label(), y.label(), table[x.rank][y.rank]));
                break 'outer;
            }
        }
    }
    checks.push(Check::from_failure("k − |A ∩ B| is the graph distance", mismatch));

    checks.extend(verify_m_identity(n, k, None)?.checks);
    let lj = j.laplacian();
    let aj = j.adjacency();
    let kq = rat(degree as i64);
    let relation = ExactMatrix::identity(lj.rows()).scale(&kq).sub(&aj)?;
    checks.push(Check::from_failure(
        "L_J = k(n−k)·I − A_J",
        lj.first_difference(&relation).map(|(r, c)| format!("entry ({}, {})", r + 1, c + 1)),
    ));
    debug_assert!(checks.iter().all(|c| c.passed || c.witness.is_some()));
    Ok(checks)
}
