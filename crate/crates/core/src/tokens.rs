//! k-subsets, token graphs and the binomial matrix.
//!
//! All orderings are lexicographic: for `n = 4, k = 2` the subsets come as
//! `12, 13, 14, 23, 24, 34`, which is also the row order of `B` and the vertex
//! order of every token graph.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::linalg::{rat, ExactMatrix, Rational};
use crate::report::Check;
use crate::spectra;

/// `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// A k-subset of `[n]` together with its 0-based lexicographic rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    pub n: usize,
    pub elements: Vec<usize>,
    pub rank: usize,
}

impl KSubset {
    pub fn k(&self) -> usize {
        self.elements.len()
    }

    /// Concatenated label such as `13`, or `{1,3}` style when `n > 9`.
    pub fn label(&self) -> String {
        if self.n <= 9 {
            self.elements.iter().map(|e| e.to_string()).collect()
        } else {
            let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
            format!("{{{}}}", parts.join(","))
        }
    }

    /// `[n] \ self`.
    pub fn complement(&self) -> KSubset {
        let elements: Vec<usize> = (1..=self.n).filter(|e| !self.elements.contains(e)).collect();
        let rank = rank_subset(self.n, &elements);
        KSubset {
            n: self.n,
            elements,
            rank,
        }
    }
}

/// Lexicographic rank of a strictly increasing subset of `[n]`.
pub fn rank_subset(n: usize, elements: &[usize]) -> usize {
    let k = elements.len();
    let mut rank = 0u64;
    let mut prev = 0;
    for (i, &a) in elements.iter().enumerate() {
        for j in prev + 1..a {
            rank += binomial((n - j) as i64, (k - i - 1) as i64);
        }
        prev = a;
    }
    rank as usize
}

/// Inverse of [`rank_subset`].
pub fn unrank_subset(n: usize, k: usize, mut rank: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut next = 1;
    for i in 0..k {
        loop {
            let block = binomial((n - next) as i64, (k - i - 1) as i64) as usize;
            if rank < block {
                break;
            }
            rank -= block;
            next += 1;
        }
        out.push(next);
        next += 1;
    }
    out
}

/// All k-subsets of `[n]` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Result<Vec<KSubset>> {
    if k > n {
        return Err(Error::KOutOfRange { n, k });
    }
    let mut out = Vec::with_capacity(binomial(n as i64, k as i64) as usize);
    let mut current: Vec<usize> = (1..=k).collect();
    loop {
        out.push(KSubset {
            n,
            elements: current.clone(),
            rank: out.len(),
        });
        // advance to the lexicographic successor
        let Some(i) = (0..k).rev().find(|&i| current[i] < n - (k - 1 - i)) else {
            break;
        };
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
    Ok(out)
}

/// Symmetric difference of two sorted sequences by a linear merge.
pub fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// The pair `{a, b}` when `|A △ B| = 2`.
pub fn differing_pair(a: &[usize], b: &[usize]) -> Option<(usize, usize)> {
    match symmetric_difference(a, b).as_slice() {
        &[x, y] => Some((x, y)),
        _ => None,
    }
}

/// `F_k(G)` with the rank labeling: vertex `r + 1` is the k-subset of rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenGraph {
    pub base: Graph,
    pub k: usize,
    pub graph: Graph,
    pub labels: Vec<KSubset>,
}

impl TokenGraph {
    pub fn laplacian(&self) -> ExactMatrix {
        self.graph.laplacian()
    }

    pub fn adjacency(&self) -> ExactMatrix {
        self.graph.adjacency()
    }
}

/// Builds `F_k(G)`. `k = 0` and `k = n` both give the one-vertex graph.
pub fn token_graph(g: &Graph, k: usize) -> Result<TokenGraph> {
    let n = g.n();
    let labels = k_subsets(n, k)?;
    let mut edges = Vec::new();
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate().skip(i + 1) {
            if let Some((x, y)) = differing_pair(&a.elements, &b.elements) {
                if g.has_edge(x, y) {
                    edges.push((i + 1, j + 1));
                }
            }
        }
    }
    let graph = Graph::new(labels.len(), edges)?;
    Ok(TokenGraph {
        base: g.clone(),
        k,
        graph,
        labels,
    })
}

/// The `C(n,k) × n` 0/1 matrix whose row `r` is the indicator of the subset of rank `r`.
pub fn binomial_matrix(n: usize, k: usize) -> Result<ExactMatrix> {
    let subsets = k_subsets(n, k)?;
    let mut b = ExactMatrix::zeros(subsets.len(), n);
    for s in &subsets {
        for &e in &s.elements {
            b.set(s.rank, e - 1, Rational::one());
        }
    }
    Ok(b)
}

/// `Bv`.
pub fn lift_vector(b: &ExactMatrix, v: &[Rational]) -> Result<Vec<Rational>> {
    b.mul_vec(v)
}

/// `Bᵀu`.
pub fn project_vector(b: &ExactMatrix, u: &[Rational]) -> Result<Vec<Rational>> {
    if u.len() != b.rows() {
        return Err(Error::ShapeMismatch {
            op: "project_vector",
            left: b.shape(),
            right: (u.len(), 1),
        });
    }
    Ok((0..b.cols())
        .map(|c| (0..b.rows()).map(|r| b.get(r, c) * &u[r]).sum())
        .collect())
}

fn matrix_mismatch(name: &str, lhs: &ExactMatrix, rhs: &ExactMatrix) -> Option<String> {
    lhs.first_difference(rhs).map(|(r, c)| {
        format!(
            "{name}: entry ({}, {}) is {} vs {}",
            r + 1,
            c + 1,
            lhs.get(r, c),
            rhs.get(r, c)
        )
    })
}

fn is_eigenvector(m: &ExactMatrix, v: &[Rational], lambda: &Rational) -> Result<bool> {
    let mv = m.mul_vec(v)?;
    Ok(mv.iter().zip(v).all(|(a, b)| *a == lambda * b))
}

/// Report of the binomial-matrix identities relating `L_1 = L(G)` and `L_k = L(F_k(G))`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct IntertwiningReport {
    pub n: usize,
    pub k: usize,
    pub checks: Vec<Check>,
}

impl IntertwiningReport {
    pub fn passed(&self) -> bool {
        crate::report::all_passed(&self.checks)
    }
}

/// Checks, exactly:
/// 1. `B L_1 = L_k B`;
/// 2. `L_1 = Bᵀ L_k B / C(n−2, k−1)`;
/// 3. `rank [B | L_k B] = rank B` (the column space of `B` is `L_k`-invariant);
/// 4. `char L_1` divides `char L_k`;
/// 5. for each integral eigenvalue λ of `L_1`, `B` maps a basis of the
///    λ-eigenspace of `L_1` to λ-eigenvectors of `L_k`;
/// 6. for each integral eigenvalue λ of `L_k`, `Bᵀ` maps λ-eigenvectors of
///    `L_k` with nonzero image to λ-eigenvectors of `L_1`.
pub fn verify_intertwining(g: &Graph, k: usize) -> Result<IntertwiningReport> {
    let n = g.n();
    if k == 0 || k >= n {
        return Err(Error::KOutOfRange { n, k });
    }
    let fk = token_graph(g, k)?;
    let b = binomial_matrix(n, k)?;
    let l1 = g.laplacian();
    let lk = fk.laplacian();
    let mut checks = Vec::new();

    let lhs = b.mul(&l1)?;
    let rhs = lk.mul(&b)?;
    checks.push(Check::from_failure("B·L1 = Lk·B", matrix_mismatch("B·L1 vs Lk·B", &lhs, &rhs)));

    let scale = Rational::new(1.into(), binomial(n as i64 - 2, k as i64 - 1).into());
    let back = b.transpose().mul(&lk)?.mul(&b)?.scale(&scale);
    checks.push(Check::from_failure(
        "L1 = Bᵀ·Lk·B / C(n-2,k-1)",
        matrix_mismatch("L1 vs Bᵀ·Lk·B/C(n-2,k-1)", &l1, &back),
    ));

    let rb = b.rank();
    let rext = b.hstack(&rhs)?.rank();
    checks.push(Check::from_failure(
        "column space of B is Lk-invariant",
        (rb != rext).then(|| format!("rank B = {rb}, rank [B | Lk·B] = {rext}")),
    ));

    let p1 = l1.char_poly()?;
    let pk = lk.char_poly()?;
    let (_, rem) = pk.div_rem(&p1)?;
    checks.push(Check::from_failure(
        "char(L1) divides char(Lk)",
        (!rem.is_zero()).then(|| format!("remainder {rem}")),
    ));

    let mut lift_failure = None;
    for (lambda, _) in spectra::integer_eigenvalues(&p1, &l1) {
        let kernel = l1.add_scalar_identity(&-lambda.clone())?.null_space();
        for v in kernel {
            let bv = lift_vector(&b, &v)?;
            if bv.iter().all(Zero::is_zero) || !is_eigenvector(&lk, &bv, &lambda)? {
                lift_failure = Some(format!("eigenvalue {lambda}: B·v is not an eigenvector of Lk"));
                break;
            }
        }
    }
    checks.push(Check::from_failure("B lifts L1-eigenvectors", lift_failure));

    let mut project_failure = None;
    for (lambda, _) in spectra::integer_eigenvalues(&pk, &lk) {
        let kernel = lk.add_scalar_identity(&-lambda.clone())?.null_space();
        for u in kernel {
            let btu = project_vector(&b, &u)?;
            if btu.iter().all(Zero::is_zero) {
                continue;
            }
            if !is_eigenvector(&l1, &btu, &lambda)? {
                project_failure = Some(format!("eigenvalue {lambda}: Bᵀ·u is not an eigenvector of L1"));
                break;
            }
        }
    }
    checks.push(Check::from_failure("Bᵀ projects Lk-eigenvectors", project_failure));

    Ok(IntertwiningReport { n, k, checks })
}

/// `BᵀB = C(n−2,k−1)·I + C(n−2,k−2)·J`.
pub fn btb_expected(n: usize, k: usize) -> ExactMatrix {
    let diag = rat(binomial(n as i64 - 2, k as i64 - 1) as i64);
    let off = rat(binomial(n as i64 - 2, k as i64 - 2) as i64);
    ExactMatrix::identity(n)
        .scale(&diag)
        .add(&ExactMatrix::all_ones(n, n).scale(&off))
        .expect("same shape")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paw() -> Graph {
        Graph::new(4, [(1, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    fn labels(n: usize, k: usize) -> Vec<String> {
        k_subsets(n, k).unwrap().iter().map(KSubset::label).collect()
    }

    #[test]
    fn subset_order() {
        assert_eq!(labels(4, 2), ["12", "13", "14", "23", "24", "34"]);
        let empty = k_subsets(5, 0).unwrap();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].elements.is_empty());
        assert_eq!(labels(5, 5), ["12345"]);
        assert_eq!(k_subsets(3, 4), Err(Error::KOutOfRange { n: 3, k: 4 }));
    }

    #[test]
    fn rank_unrank_bijection() {
        for n in 0..=8 {
            for k in 0..=n {
                for s in k_subsets(n, k).unwrap() {
                    assert_eq!(rank_subset(n, &s.elements), s.rank);
                    assert_eq!(unrank_subset(n, k, s.rank), s.elements);
                }
            }
        }
    }

    #[test]
    fn symmetric_difference_merge() {
        assert_eq!(symmetric_difference(&[1, 3, 5], &[1, 4, 5]), vec![3, 4]);
        assert_eq!(differing_pair(&[1, 2], &[3, 4]), None);
        assert_eq!(differing_pair(&[2, 7], &[2, 9]), Some((7, 9)));
    }

    #[test]
    fn octahedron_and_complement_of_petersen() {
        let j42 = token_graph(&Graph::complete(4), 2).unwrap();
        assert_eq!((j42.graph.n(), j42.graph.m()), (6, 12));
        assert_eq!(j42.graph.regular_degree(), Some(4));
        let j52 = token_graph(&Graph::complete(5), 2).unwrap();
        assert_eq!((j52.graph.n(), j52.graph.m()), (10, 30));
        assert_eq!(j52.graph.regular_degree(), Some(6));
    }

    #[test]
    fn first_token_graph_is_the_graph() {
        let g = paw();
        assert_eq!(token_graph(&g, 1).unwrap().graph, g);
        let f0 = token_graph(&g, 0).unwrap();
        assert_eq!((f0.graph.n(), f0.graph.m()), (1, 0));
    }

    #[test]
    fn binomial_matrix_printed_example() {
        let b = binomial_matrix(4, 2).unwrap();
        let printed = ExactMatrix::from_i64_rows(&[
            [1, 1, 0, 0],
            [1, 0, 1, 0],
            [1, 0, 0, 1],
            [0, 1, 1, 0],
            [0, 1, 0, 1],
            [0, 0, 1, 1],
        ]);
        assert_eq!(b, printed);
        let btb = b.transpose().mul(&b).unwrap();
        assert_eq!(btb, btb_expected(4, 2));
        assert_eq!(
            btb,
            ExactMatrix::identity(4)
                .scale(&rat(2))
                .add(&ExactMatrix::all_ones(4, 4))
                .unwrap()
        );
        assert_eq!(binomial_matrix(5, 1).unwrap(), ExactMatrix::identity(5));
    }

    #[test]
    fn btb_identity_all_small_parameters() {
        for n in 2..=8 {
            for k in 1..n {
                let b = binomial_matrix(n, k).unwrap();
                assert_eq!(b.transpose().mul(&b).unwrap(), btb_expected(n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn intertwining_holds_for_paw_and_k4() {
        for g in [paw(), Graph::complete(4)] {
            let report = verify_intertwining(&g, 2).unwrap();
            assert!(report.passed(), "{report:?}");
            assert_eq!(report.checks.len(), 6);
        }
        assert!(verify_intertwining(&paw(), 4).is_err());
    }

    #[test]
    fn lift_and_project() {
        let b = binomial_matrix(4, 2).unwrap();
        let ones = vec![rat(1); 4];
        assert_eq!(lift_vector(&b, &ones).unwrap(), vec![rat(2); 6]);
        // 12 − 13 − 24 + 34 is orthogonal to the column space of B
        let u = vec![rat(1), rat(-1), rat(0), rat(0), rat(-1), rat(1)];
        assert!(project_vector(&b, &u).unwrap().iter().all(Zero::is_zero));
        assert!(lift_vector(&b, &[rat(1)]).is_err());
    }

    #[test]
    fn lifted_paw_eigenvector() {
        // L1(paw) has eigenvalue 4; find the eigenvector and lift it
        let g = paw();
        let l1 = g.laplacian();
        let kernel = l1.add_scalar_identity(&rat(-4)).unwrap().null_space();
        assert_eq!(kernel.len(), 1);
        let b = binomial_matrix(4, 2).unwrap();
        let bv = lift_vector(&b, &kernel[0]).unwrap();
        let l2 = token_graph(&g, 2).unwrap().laplacian();
        let l2bv = l2.mul_vec(&bv).unwrap();
        assert!(bv.iter().any(|x| !x.is_zero()));
        assert_eq!(l2bv, bv.iter().map(|x| x * rat(4)).collect::<Vec<_>>());
    }
}
