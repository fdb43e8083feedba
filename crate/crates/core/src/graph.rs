//! Labeled graphs with loops and multiedges, the six loop/multiedge graph
//! spaces, and degree / triangle statistics.
//!
//! A [`Graph`] is an immutable value: a vertex count plus the sorted list of
//! its edge *instances*. A multiedge appears once per copy and a loop `(u, u)`
//! is a single instance contributing 2 to the degree of `u`. Swap proposals
//! pick instances by index into this list, so the list order is part of the
//! public contract.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An unordered vertex pair stored with `0 <= self.0 <= self.1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    #[inline]
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    #[inline]
    pub fn is_loop(self) -> bool {
        self.0 == self.1
    }

    #[inline]
    pub fn touches(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint opposite `v`. For a loop at `v` this is `v` itself.
    #[inline]
    pub fn other(self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    /// Builds a graph from edge instances in any order and orientation.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "graph needs at least one vertex".into(),
            ));
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({a},{b}) has an endpoint outside [0, {n})"
                )));
            }
            list.push(Edge::new(a, b));
        }
        list.sort_unstable();
        Ok(Graph { n, edges: list })
    }

    /// `edges` must already be normalized and in range; it is sorted here.
    pub(crate) fn from_edges_unchecked(n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        Graph { n, edges }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.0] += 1;
            deg[e.1] += 1;
        }
        deg
    }

    /// Per-vertex degree, a loop counting twice. Isolated vertices show up as
    /// zero entries; [`DegreeSequence::new`] is where zeros get rejected.
    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence {
            degrees: self.degrees(),
        }
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|e| e.is_loop()).count()
    }

    pub fn loops_per_vertex(&self) -> Vec<usize> {
        let mut loops = vec![0; self.n];
        for e in self.edges.iter().filter(|e| e.is_loop()) {
            loops[e.0] += 1;
        }
        loops
    }

    /// Number of instances of the edge `{a, b}`.
    pub fn multiplicity(&self, a: Vertex, b: Vertex) -> usize {
        let e = Edge::new(a, b);
        let lo = self.edges.partition_point(|x| *x < e);
        let hi = self.edges.partition_point(|x| *x <= e);
        hi - lo
    }

    pub fn is_simple(&self) -> bool {
        GraphSpace::SIMPLE.admits(self)
    }

    pub fn is_valid_in(&self, space: GraphSpace) -> bool {
        space.admits(self)
    }

    /// Applies `perm` (old label -> new label) and returns the relabeled graph.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(
            perm.len(),
            self.n,
            "permutation length must equal vertex count"
        );
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.0], perm[e.1]))
            .collect();
        Graph::from_edges_unchecked(self.n, edges)
    }

    pub fn triangle_count(&self) -> Result<usize> {
        let adj = self.simple_adjacency()?;
        Ok(self
            .edges
            .iter()
            .map(|e| adj.common(e.0, e.1))
            .sum::<usize>()
            / 3)
    }

    pub fn triangle_sequence(&self) -> Result<TriangleSequence> {
        let adj = self.simple_adjacency()?;
        // each triangle {u,v,w} is seen once from each of its three edges
        let mut twice = vec![0usize; self.n];
        for e in &self.edges {
            let c = adj.common(e.0, e.1);
            twice[e.0] += c;
            twice[e.1] += c;
        }
        Ok(TriangleSequence {
            counts: twice.into_iter().map(|c| c / 2).collect(),
        })
    }

    fn simple_adjacency(&self) -> Result<BitAdjacency> {
        if !self.is_simple() {
            return Err(Error::NonSimpleGraph);
        }
        let mut adj = BitAdjacency::new(self.n);
        for e in &self.edges {
            adj.set(e.0, e.1);
        }
        Ok(adj)
    }

    /// Serializes to the line-oriented text format: `n m` then one `u v`
    /// line per edge instance.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            if edges.len() == m {
                return Err(Error::Parse {
                    line,
                    msg: format!("more than the declared {m} edges"),
                });
            }
            let (a, b) = parse_pair(line, l)?;
            if a >= n || b >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("endpoint outside [0, {n})"),
                });
            }
            edges.push((a, b));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count(),
                msg: format!("declared {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, edges).map_err(|e| Error::Parse {
            line: 1,
            msg: e.to_string(),
        })
    }
}

fn parse_pair(line: usize, s: &str) -> Result<(usize, usize)> {
    let mut it = s.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::Parse {
                line,
                msg: "expected two integers".into(),
            })?
            .parse()
            .map_err(|e| Error::Parse {
                line,
                msg: format!("{e}"),
            })
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: "trailing tokens".into(),
        });
    }
    Ok((a, b))
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.edges.len())?;
        for e in &self.edges {
            writeln!(f, "{} {}", e.0, e.1)?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_text(s)
    }
}

/// Dense bitset adjacency for simple graphs.
#[derive(Clone, Debug)]
pub(crate) struct BitAdjacency {
    words: usize,
    bits: Vec<u64>,
}

impl BitAdjacency {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitAdjacency {
            words,
            bits: vec![0; n * words],
        }
    }

    #[inline]
    fn row(&self, u: Vertex) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub(crate) fn set(&mut self, u: Vertex, v: Vertex) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub(crate) fn common(&self, u: Vertex, v: Vertex) -> usize {
        self.row(u)
            .iter()
            .zip(self.row(v))
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoopPolicy {
    Forbidden,
    SingleOnly,
    Unlimited,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultiedgePolicy {
    SingleOnly,
    Unlimited,
}

/// One of the six graph spaces between simple graphs and pseudographs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GraphSpace {
    pub loops: LoopPolicy,
    pub multiedges: MultiedgePolicy,
}

impl GraphSpace {
    pub const SIMPLE: Self = Self::of(LoopPolicy::Forbidden, MultiedgePolicy::SingleOnly);
    pub const MULTIGRAPH: Self = Self::of(LoopPolicy::Forbidden, MultiedgePolicy::Unlimited);
    pub const LOOPY_GRAPH: Self = Self::of(LoopPolicy::SingleOnly, MultiedgePolicy::SingleOnly);
    pub const LOOPY_MULTIGRAPH: Self = Self::of(LoopPolicy::SingleOnly, MultiedgePolicy::Unlimited);
    pub const MULTILOOP_GRAPH: Self = Self::of(LoopPolicy::Unlimited, MultiedgePolicy::SingleOnly);
    pub const PSEUDOGRAPH: Self = Self::of(LoopPolicy::Unlimited, MultiedgePolicy::Unlimited);

    pub const ALL: [Self; 6] = [
        Self::SIMPLE,
        Self::MULTIGRAPH,
        Self::LOOPY_GRAPH,
        Self::LOOPY_MULTIGRAPH,
        Self::MULTILOOP_GRAPH,
        Self::PSEUDOGRAPH,
    ];

    pub const fn of(loops: LoopPolicy, multiedges: MultiedgePolicy) -> Self {
        GraphSpace { loops, multiedges }
    }

    pub fn name(self) -> &'static str {
        use LoopPolicy as L;
        use MultiedgePolicy as M;
        match (self.loops, self.multiedges) {
            (L::Forbidden, M::SingleOnly) => "simple",
            (L::Forbidden, M::Unlimited) => "multigraph",
            (L::SingleOnly, M::SingleOnly) => "loopy-graph",
            (L::SingleOnly, M::Unlimited) => "loopy-multigraph",
            (L::Unlimited, M::SingleOnly) => "multiloop-graph",
            (L::Unlimited, M::Unlimited) => "pseudograph",
        }
    }

    /// Maximum number of loops at one vertex, `None` when unbounded.
    #[inline]
    pub fn max_loops(self) -> Option<usize> {
        match self.loops {
            LoopPolicy::Forbidden => Some(0),
            LoopPolicy::SingleOnly => Some(1),
            LoopPolicy::Unlimited => None,
        }
    }

    /// Maximum multiplicity of a non-loop edge, `None` when unbounded.
    #[inline]
    pub fn max_multiplicity(self) -> Option<usize> {
        match self.multiedges {
            MultiedgePolicy::SingleOnly => Some(1),
            MultiedgePolicy::Unlimited => None,
        }
    }

    pub fn admits(self, g: &Graph) -> bool {
        self.admits_sorted(g.edges())
    }

    /// Checks a sorted edge list run by run.
    pub(crate) fn admits_sorted(self, edges: &[Edge]) -> bool {
        let (max_loops, max_mult) = (self.max_loops(), self.max_multiplicity());
        if max_loops.is_none() && max_mult.is_none() {
            return true;
        }
        let mut i = 0;
        while i < edges.len() {
            let e = edges[i];
            let mut j = i + 1;
            while j < edges.len() && edges[j] == e {
                j += 1;
            }
            let limit = if e.is_loop() { max_loops } else { max_mult };
            if limit.is_some_and(|l| j - i > l) {
                return false;
            }
            i = j;
        }
        true
    }
}

impl fmt::Display for GraphSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphSpace {
    type Err = Error;

    /// Accepts the six canonical names plus the short forms `multi`,
    /// `loopy`, `multiloop` and `pseudo`.
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "simple" => Self::SIMPLE,
            "multigraph" | "multi" => Self::MULTIGRAPH,
            "loopy-graph" | "loopy" => Self::LOOPY_GRAPH,
            "loopy-multigraph" => Self::LOOPY_MULTIGRAPH,
            "multiloop-graph" | "multiloop" => Self::MULTILOOP_GRAPH,
            "pseudograph" | "pseudo" => Self::PSEUDOGRAPH,
            other => {
                return Err(Error::InvalidInput(format!(
                    "unknown graph space '{other}'"
                )))
            }
        })
    }
}

fn parse_list(s: &str) -> std::result::Result<Vec<usize>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|e| format!("'{t}': {e}")))
        .collect()
}

/// Positive per-vertex degrees with an even sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(Error::InvalidDegreeSequence("empty".into()));
        }
        if let Some(i) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::InvalidDegreeSequence(format!(
                "vertex {i} has degree 0"
            )));
        }
        if degrees.iter().sum::<usize>() % 2 != 0 {
            return Err(Error::InvalidDegreeSequence("degree sum is odd".into()));
        }
        Ok(DegreeSequence { degrees })
    }

    #[inline]
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// Number of edge instances in any realization.
    pub fn edge_count(&self) -> usize {
        self.sum() / 2
    }
}

impl FromStr for DegreeSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DegreeSequence::new(parse_list(s).map_err(Error::InvalidDegreeSequence)?)
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.degrees)
    }
}

/// Per-vertex triangle membership counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TriangleSequence {
    counts: Vec<usize>,
}

impl TriangleSequence {
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        if counts.iter().sum::<usize>() % 3 != 0 {
            return Err(Error::InvalidTriangleSequence(
                "sum is not divisible by 3".into(),
            ));
        }
        Ok(TriangleSequence { counts })
    }

    #[inline]
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn triangle_total(&self) -> usize {
        self.counts.iter().sum::<usize>() / 3
    }
}

impl FromStr for TriangleSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TriangleSequence::new(parse_list(s).map_err(Error::InvalidTriangleSequence)?)
    }
}

impl fmt::Display for TriangleSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.counts)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}
