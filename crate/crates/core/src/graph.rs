//! Simple undirected graphs, local complementation and graph file formats.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::f2linalg::{BinaryMatrix, BinaryVector};

/// An undirected graph without self-loops or multiple edges, stored as its
/// adjacency matrix over GF(2). Vertices are `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    adj: BinaryMatrix,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            adj: BinaryMatrix::zeros(n, n),
        }
    }

    /// Builds a graph from 0-based edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = BinaryMatrix::zeros(n, n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if adj.get(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{u}, {v}}}")));
            }
            adj.set(u, v, true);
            adj.set(v, u, true);
        }
        Ok(Self { adj })
    }

    /// Wraps a symmetric, zero-diagonal square matrix.
    pub fn from_adjacency(adj: BinaryMatrix) -> Result<Self> {
        if let Some((r, c)) = adjacency_defect(&adj)? {
            return Err(if r == c {
                Error::InvalidGraph(format!("self-loop at vertex {r}"))
            } else {
                Error::InvalidGraph(format!("asymmetric adjacency at ({r}, {c})"))
            });
        }
        Ok(Self { adj })
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn ring(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges).expect("ring needs n >= 3")
    }

    /// Star with centre `0` and leaves `1..n`.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &edges).expect("valid star")
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Self::from_edges(n, &edges).expect("valid complete graph")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("valid path")
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.num_rows()
    }

    pub fn adjacency(&self) -> &BinaryMatrix {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.num_vertices() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.num_vertices(),
            });
        }
        Ok(())
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        Ok(self.adj.row(v).iter_ones().collect())
    }

    /// Indicator vector of the neighbourhood of `v` (column `v` of the
    /// adjacency matrix).
    pub fn neighbor_vector(&self, v: usize) -> Result<&BinaryVector> {
        self.check_vertex(v)?;
        Ok(self.adj.row(v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row(v).count_ones()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_vertices())
            .flat_map(|u| {
                self.adj
                    .row(u)
                    .iter_ones()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .rows()
            .iter()
            .map(BinaryVector::count_ones)
            .sum::<usize>()
            / 2
    }

    pub fn is_connected(&self) -> bool {
        let n = self.num_vertices();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for w in self.adj.row(u).iter_ones() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Local complementation at `v`: `Γ + Γ_v Γ_vᵀ + Λ`, where `Λ` clears the
    /// diagonal. Complements the subgraph induced by the neighbourhood of `v`.
    pub fn local_complement(&self, v: usize) -> Result<SimpleGraph> {
        self.check_vertex(v)?;
        let n = self.num_vertices();
        let column = BinaryMatrix::from_rows(
            1,
            self.adj
                .column(v)
                .iter()
                .map(|b| BinaryVector::from_bools(&[b]))
                .collect(),
        )?;
        let outer = column.mat_mul(&column.transpose())?;
        let mut adj = self.adj.add(&outer)?;
        for j in 0..n {
            adj.set(j, j, false);
        }
        Ok(SimpleGraph { adj })
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> SimpleGraph {
        let n = self.num_vertices();
        let mut adj = BinaryMatrix::zeros(n, n);
        for (u, v) in self.edges() {
            adj.set(perm[u], perm[v], true);
            adj.set(perm[v], perm[u], true);
        }
        SimpleGraph { adj }
    }

    pub fn to_format(&self, format: GraphFormat) -> String {
        match format {
            GraphFormat::EdgeList => self.to_edge_list(),
            GraphFormat::Adjacency => self.adj.to_text(),
            GraphFormat::Graph6 => self.to_graph6(),
        }
    }

    /// `n` on the first line, then one 1-based edge `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{}\n", self.num_vertices());
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn to_graph6(&self) -> String {
        let n = self.num_vertices();
        let mut out = Vec::new();
        encode_graph6_size(n, &mut out);
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | self.adj.get(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push(acc + 63);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((acc << (6 - filled)) + 63);
        }
        String::from_utf8(out).expect("graph6 bytes are printable ASCII")
    }

    pub fn from_graph6(input: &str) -> Result<SimpleGraph> {
        let text = input.trim_end_matches(['\n', '\r']);
        let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
        let bytes = text.as_bytes();
        if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
            return Err(Error::parse(
                1,
                pos + 1,
                format!("byte {:#04x} outside the graph6 range", bytes[pos]),
            ));
        }
        let (n, header) = decode_graph6_size(bytes)?;
        let body = &bytes[header..];
        let bit_count = n * n.saturating_sub(1) / 2;
        let expected = bit_count.div_ceil(6);
        if body.len() != expected {
            return Err(Error::parse(
                1,
                header + 1,
                format!(
                    "expected {expected} data bytes for {n} vertices, found {}",
                    body.len()
                ),
            ));
        }
        let bit = |k: usize| ((body[k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
        if (bit_count..expected * 6).any(bit) {
            return Err(Error::parse(1, bytes.len(), "nonzero padding bits"));
        }
        let mut adj = BinaryMatrix::zeros(n, n);
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if bit(k) {
                    adj.set(i, j, true);
                    adj.set(j, i, true);
                }
                k += 1;
            }
        }
        Ok(SimpleGraph { adj })
    }
}

fn encode_graph6_size(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

fn decode_graph6_size(bytes: &[u8]) -> Result<(usize, usize)> {
    let digits = |range: std::ops::Range<usize>| -> Result<usize> {
        if bytes.len() < range.end {
            return Err(Error::parse(
                1,
                bytes.len() + 1,
                "truncated graph6 size field",
            ));
        }
        Ok(bytes[range]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    match bytes {
        [] => Err(Error::parse(1, 1, "empty graph6 string")),
        [126, 126, ..] => Ok((digits(2..8)?, 8)),
        [126, ..] => Ok((digits(1..4)?, 4)),
        [b, ..] => Ok(((b - 63) as usize, 1)),
    }
}

/// First offending entry of a would-be adjacency matrix: a diagonal one or an
/// asymmetric pair.
fn adjacency_defect(adj: &BinaryMatrix) -> Result<Option<(usize, usize)>> {
    if adj.num_rows() != adj.num_cols() {
        return Err(Error::DimensionMismatch(format!(
            "adjacency matrix must be square, got {}x{}",
            adj.num_rows(),
            adj.num_cols()
        )));
    }
    for r in 0..adj.num_rows() {
        if adj.get(r, r) {
            return Ok(Some((r, r)));
        }
        for c in adj.row(r).iter_ones() {
            if !adj.get(c, r) {
                return Ok(Some((r, c)));
            }
        }
    }
    Ok(None)
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SimpleGraph(n={}, edges={:?})",
            self.num_vertices(),
            self.edges()
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Adjacency,
    Graph6,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" | "edge-list" => Ok(GraphFormat::EdgeList),
            "adj" | "adjacency" => Ok(GraphFormat::Adjacency),
            "graph6" | "g6" => Ok(GraphFormat::Graph6),
            other => Err(Error::parse(
                1,
                1,
                format!("unknown graph format {other:?}"),
            )),
        }
    }
}

/// Reads a graph in one of the supported text formats. Edge lists use
/// 1-based vertex labels; errors point at the offending line and column.
pub fn parse_graph(input: &str, format: GraphFormat) -> Result<SimpleGraph> {
    match format {
        GraphFormat::EdgeList => parse_edge_list(input),
        GraphFormat::Adjacency => parse_adjacency(input),
        GraphFormat::Graph6 => SimpleGraph::from_graph6(input.trim()),
    }
}

fn significant_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

/// Column (1-based) of the `index`-th whitespace-separated token.
fn token_column(line: &str, index: usize) -> usize {
    let mut count = 0;
    let mut in_token = false;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            in_token = false;
        } else if !in_token {
            if count == index {
                return i + 1;
            }
            count += 1;
            in_token = true;
        }
    }
    1
}

fn parse_edge_list(input: &str) -> Result<SimpleGraph> {
    let mut lines = significant_lines(input);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing vertex count"))?;
    let n: usize = header.trim().parse().map_err(|_| {
        Error::parse(
            hline,
            token_column(header, 0),
            format!("invalid vertex count {:?}", header.trim()),
        )
    })?;
    let mut adj = BinaryMatrix::zeros(n, n);
    for (lineno, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::parse(
                lineno,
                1,
                format!("expected `u v`, found {} fields", tokens.len()),
            ));
        }
        let mut ends = [0usize; 2];
        for (t, tok) in tokens.iter().enumerate() {
            let col = token_column(line, t);
            let label: usize = tok
                .parse()
                .map_err(|_| Error::parse(lineno, col, format!("invalid vertex label {tok:?}")))?;
            if label == 0 || label > n {
                return Err(Error::parse(
                    lineno,
                    col,
                    format!("vertex {label} outside 1..={n}"),
                ));
            }
            ends[t] = label - 1;
        }
        let [u, v] = ends;
        if u == v {
            return Err(Error::parse(
                lineno,
                1,
                format!("self-loop at vertex {}", u + 1),
            ));
        }
        if adj.get(u, v) {
            return Err(Error::parse(
                lineno,
                1,
                format!("duplicate edge {} {}", u + 1, v + 1),
            ));
        }
        adj.set(u, v, true);
        adj.set(v, u, true);
    }
    Ok(SimpleGraph { adj })
}

fn parse_adjacency(input: &str) -> Result<SimpleGraph> {
    let adj = BinaryMatrix::parse_text(input)?;
    match adjacency_defect(&adj) {
        Err(_) => Err(Error::parse(
            significant_lines(input).next().map_or(1, |(l, _)| l),
            1,
            format!(
                "adjacency matrix must be square, got {}x{}",
                adj.num_rows(),
                adj.num_cols()
            ),
        )),
        Ok(None) => Ok(SimpleGraph { adj }),
        Ok(Some((r, c))) => {
            let (lineno, line) = significant_lines(input)
                .nth(r + 1)
                .expect("row exists since the matrix parsed");
            let column = line
                .char_indices()
                .filter(|(_, ch)| *ch == '0' || *ch == '1')
                .nth(c)
                .map_or(1, |(i, _)| i + 1);
            let message = if r == c {
                format!("self-loop at vertex {}", r + 1)
            } else {
                format!(
                    "asymmetric adjacency: entry ({}, {}) differs from ({}, {})",
                    r + 1,
                    c + 1,
                    c + 1,
                    r + 1
                )
            };
            Err(Error::parse(lineno, column, message))
        }
    }
}

/// A graph with `k` input vertices attached to an `n`-vertex output graph
/// through the `k × n` matrix `B`. `B · Γ = 0` and `rank(B) = k` hold for
/// every value of this type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedGraph {
    inner: SimpleGraph,
    b: BinaryMatrix,
}

impl ExtendedGraph {
    pub fn new(inner: SimpleGraph, b: BinaryMatrix) -> Result<Self> {
        validate_b(&b, &inner)?;
        Ok(Self { inner, b })
    }

    pub fn inner(&self) -> &SimpleGraph {
        &self.inner
    }

    pub fn b(&self) -> &BinaryMatrix {
        &self.b
    }

    pub fn k(&self) -> usize {
        self.b.num_rows()
    }

    pub fn n(&self) -> usize {
        self.inner.num_vertices()
    }

    /// The `(k + n) × (k + n)` adjacency matrix `[[0, B], [Bᵀ, Γ]]`, input
    /// vertices first.
    pub fn block_adjacency(&self) -> BinaryMatrix {
        let (k, n) = (self.k(), self.n());
        let mut m = BinaryMatrix::zeros(k + n, k + n);
        for i in 0..k {
            for j in self.b.row(i).iter_ones() {
                m.set(i, k + j, true);
                m.set(k + j, i, true);
            }
        }
        for (u, v) in self.inner.edges() {
            m.set(k + u, k + v, true);
            m.set(k + v, k + u, true);
        }
        m
    }
}

/// Checks that `b` has one column per vertex, independent rows, and
/// `b · Γ(g) = 0`.
pub fn validate_b(b: &BinaryMatrix, g: &SimpleGraph) -> Result<()> {
    let n = g.num_vertices();
    if b.num_cols() != n {
        return Err(Error::InvalidB(format!(
            "B has {} columns but the graph has {n} vertices",
            b.num_cols()
        )));
    }
    if !b.mat_mul(g.adjacency())?.is_zero() {
        return Err(Error::InvalidB("B · Γ(G) is not zero".into()));
    }
    let rank = b.rank();
    if rank != b.num_rows() {
        return Err(Error::InvalidB(format!(
            "rows of B are dependent (rank {rank} < {})",
            b.num_rows()
        )));
    }
    Ok(())
}
