//! Simple undirected graphs on the vertex set `{1, …, n}`.

use std::collections::VecDeque;

use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{rat, ExactMatrix, Rational};

const GRAPH6_HEADER: &str = ">>graph6<<";

/// A simple graph on vertices `1..=n` with a sorted, duplicate-free edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

/// The distance matrices `A_0 = I, A_1 = A, …, A_D` of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrices {
    pub diameter: usize,
    pub mats: Vec<ExactMatrix>,
}

impl Graph {
    /// Validates and canonicalizes an edge set. Pairs may be given in either
    /// orientation; loops, duplicates and out-of-range endpoints are errors.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut out = Vec::new();
        for (u, v) in edges {
            if u == v || u == 0 || v == 0 || u > n || v > n {
                return Err(Error::InvalidEdge { u, v, n });
            }
            out.push((u.min(v), u.max(v)));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidEdge {
                u: w[0].0,
                v: w[0].1,
                n,
            });
        }
        Ok(Self { n, edges: out })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n: n.max(1),
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let n = n.max(1);
        let edges = (1..=n)
            .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
            .collect();
        Self { n, edges }
    }

    /// `K_n(e)`: the single edge `e` plus `n − 2` isolated vertices.
    pub fn elementary(n: usize, e: (usize, usize)) -> Result<Self> {
        Self::new(n, [e])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Adjacency lists indexed by `vertex − 1`, holding 1-based neighbors.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u - 1].push(v);
            adj[v - 1].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u - 1] += 1;
            deg[v - 1] += 1;
        }
        deg
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let deg = self.degrees();
        deg.iter().all(|&d| d == deg[0]).then_some(deg[0])
    }

    pub fn complement(&self) -> Self {
        let edges = (1..=self.n)
            .flat_map(|u| (u + 1..=self.n).map(move |v| (u, v)))
            .filter(|&(u, v)| !self.has_edge(u, v))
            .collect();
        Self { n: self.n, edges }
    }

    pub fn adjacency(&self) -> ExactMatrix {
        let mut a = ExactMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            a.set(u - 1, v - 1, Rational::one());
            a.set(v - 1, u - 1, Rational::one());
        }
        a
    }

    /// `L = D − A`.
    pub fn laplacian(&self) -> ExactMatrix {
        let mut l = ExactMatrix::zeros(self.n, self.n);
        for &(u, v) in &self.edges {
            l.set(u - 1, v - 1, rat(-1));
            l.set(v - 1, u - 1, rat(-1));
        }
        for (i, d) in self.degrees().into_iter().enumerate() {
            l.set(i, i, rat(d as i64));
        }
        l
    }

    /// BFS distances from `source` (1-based); `None` for unreachable vertices.
    pub fn bfs(&self, source: usize) -> Vec<Option<usize>> {
        let adj = self.neighbors();
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source - 1] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u - 1].expect("queued vertices have a distance");
            for &v in &adj[u - 1] {
                if dist[v - 1].is_none() {
                    dist[v - 1] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs(1).iter().all(Option::is_some)
    }

    /// All-pairs distance table; errors with the first unreachable pair.
    pub fn distance_table(&self) -> Result<Vec<Vec<usize>>> {
        (1..=self.n)
            .map(|u| {
                self.bfs(u)
                    .into_iter()
                    .enumerate()
                    .map(|(i, d)| d.ok_or(Error::Disconnected { u, v: i + 1 }))
                    .collect()
            })
            .collect()
    }

    pub fn distance_matrices(&self) -> Result<DistanceMatrices> {
        let table = self.distance_table()?;
        let diameter = table.iter().flatten().copied().max().unwrap_or(0);
        let mut mats = vec![ExactMatrix::zeros(self.n, self.n); diameter + 1];
        for (u, row) in table.iter().enumerate() {
            for (v, &d) in row.iter().enumerate() {
                mats[d].set(u, v, Rational::one());
            }
        }
        Ok(DistanceMatrices { diameter, mats })
    }

    /// Proper 2-coloring check by BFS on every component.
    pub fn is_bipartite(&self) -> bool {
        let adj = self.neighbors();
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("colored");
                for &v in &adj[u] {
                    match color[v - 1] {
                        None => {
                            color[v - 1] = Some(!cu);
                            queue.push_back(v - 1);
                        }
                        Some(cv) if cv == cu => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// Parses the line-oriented edge-list format: `n <count>` followed by one
    /// `u v` pair per line; `#` starts a comment line, blank lines are skipped.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let Some(count) = n else {
                match tokens.as_slice() {
                    ["n", c] => {
                        let c: usize = c
                            .parse()
                            .map_err(|_| parse_err(format!("invalid vertex count {c:?}")))?;
                        if c == 0 {
                            return Err(parse_err("vertex count must be positive".into()));
                        }
                        n = Some(c);
                        continue;
                    }
                    _ => return Err(parse_err("expected header `n <count>`".into())),
                }
            };
            let [a, b] = tokens.as_slice() else {
                return Err(parse_err(format!("expected `u v`, got {line:?}")));
            };
            let u: usize = a
                .parse()
                .map_err(|_| parse_err(format!("invalid vertex {a:?}")))?;
            let v: usize = b
                .parse()
                .map_err(|_| parse_err(format!("invalid vertex {b:?}")))?;
            if u == v {
                return Err(parse_err(format!("loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > count || v > count {
                return Err(parse_err(format!("vertex out of range 1..={count} in edge {u} {v}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(parse_err(format!("duplicate edge {u} {v}")));
            }
            edges.push((u, v));
        }
        let n = n.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing header `n <count>`".into(),
        })?;
        Self::new(n, edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Decodes graph6 for `n ≤ 62`, with or without the `>>graph6<<` header.
    /// The body lists the upper triangle column by column (`x(0,1), x(0,2),
    /// x(1,2), x(0,3), …`) in 6-bit big-endian groups offset by 63.
    pub fn from_graph6(bytes: &[u8]) -> Result<Self> {
        let mut data = bytes;
        if data.starts_with(GRAPH6_HEADER.as_bytes()) {
            data = &data[GRAPH6_HEADER.len()..];
        }
        while let Some((&last, rest)) = data.split_last() {
            if last == b'\n' || last == b'\r' {
                data = rest;
            } else {
                break;
            }
        }
        let Some((&size, body)) = data.split_first() else {
            return Err(Error::Graph6("empty input".into()));
        };
        if !(63..=125).contains(&size) {
            return Err(Error::Graph6(format!(
                "bad size byte {size} (only the single-byte form n <= 62 is supported)"
            )));
        }
        let n = usize::from(size - 63);
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let bits = n * (n - 1) / 2;
        let expected = bits.div_ceil(6);
        if body.len() != expected {
            return Err(Error::Graph6(format!(
                "length mismatch: n = {n} needs {expected} body bytes, found {}",
                body.len()
            )));
        }
        if let Some(pos) = body.iter().position(|b| !(63..=126).contains(b)) {
            return Err(Error::Graph6(format!("bad byte {} at offset {}", body[pos], pos + 1)));
        }
        let bit = |i: usize| -> bool {
            let group = body[i / 6] - 63;
            (group >> (5 - i % 6)) & 1 == 1
        };
        if (bits..expected * 6).any(bit) {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
        let mut edges = Vec::new();
        let mut i = 0;
        for v in 1..n {
            for u in 0..v {
                if bit(i) {
                    edges.push((u + 1, v + 1));
                }
                i += 1;
            }
        }
        Self::new(n, edges)
    }

    /// graph6 encoding (no header); `n ≤ 62` only.
    pub fn to_graph6(&self) -> Result<String> {
        if self.n > 62 {
            return Err(Error::Graph6(format!("n = {} exceeds 62", self.n)));
        }
        let mut bits = Vec::with_capacity(self.n * self.n / 2);
        for v in 1..self.n {
            for u in 0..v {
                bits.push(self.has_edge(u + 1, v + 1));
            }
        }
        let mut out = String::new();
        out.push(char::from(63 + self.n as u8));
        for chunk in bits.chunks(6) {
            let mut group = 0u8;
            for (j, &b) in chunk.iter().enumerate() {
                if b {
                    group |= 1 << (5 - j);
                }
            }
            out.push(char::from(63 + group));
        }
        Ok(out)
    }

    /// Accepts graph6 (detected by its header, or by a single line of graph6
    /// characters) or the edge-list format (first content line starts `n `).
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with(GRAPH6_HEADER) {
            return Self::from_graph6(trimmed.trim_end().as_bytes());
        }
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        match first {
            Some(l) if l.starts_with("n ") || l == "n" => Self::from_edge_list(text),
            Some(l) if l.bytes().all(|b| (63..=126).contains(&b)) && text.trim().lines().count() == 1 => {
                Self::from_graph6(l.as_bytes())
            }
            _ => Self::from_edge_list(text),
        }
    }
}
