//! Exhaustive enumeration of the labeled graphs in a space with a given
//! degree sequence.
//!
//! The search fills vertices in index order. For the lowest vertex `u` with
//! residual degree it places edges `(u, v)` with non-decreasing `v >= u`, so
//! every graph is built as its own sorted edge list and graphs come out in
//! lexicographic order. Branches die when the residual degree of `u` cannot
//! be absorbed by the vertices still available to it. With a triangle filter
//! the search also tracks per-vertex triangle counts: counts only grow, so
//! exceeding a target prunes, and once a vertex is finished its missing
//! triangles must close among neighbours that still have open stubs.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Edge, Graph, GraphSpace, TriangleSequence, Vertex};

pub type GraphPredicate = dyn Fn(&Graph) -> bool + Send + Sync;

#[derive(Default)]
pub struct EnumFilter {
    pub triangle_count: Option<usize>,
    pub triangle_seq: Option<TriangleSequence>,
    pub custom: Option<Box<GraphPredicate>>,
}

impl EnumFilter {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn triangles(count: usize) -> Self {
        EnumFilter {
            triangle_count: Some(count),
            ..Self::default()
        }
    }

    pub fn triangle_sequence(seq: TriangleSequence) -> Self {
        EnumFilter {
            triangle_seq: Some(seq),
            ..Self::default()
        }
    }

    pub fn custom(pred: impl Fn(&Graph) -> bool + Send + Sync + 'static) -> Self {
        EnumFilter {
            custom: Some(Box::new(pred)),
            ..Self::default()
        }
    }

    fn has_triangle_filter(&self) -> bool {
        self.triangle_count.is_some() || self.triangle_seq.is_some()
    }
}

impl std::fmt::Debug for EnumFilter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("EnumFilter")
            .field("triangle_count", &self.triangle_count)
            .field("triangle_seq", &self.triangle_seq)
            .field("custom", &self.custom.is_some())
            .finish()
    }
}

/// Backtracking state. Triangle bookkeeping is only active in the simple
/// space and relies on `n <= 64`.
struct Search<'f> {
    n: usize,
    max_loops: Option<usize>,
    max_mult: Option<usize>,
    residual: Vec<usize>,
    edges: Vec<Edge>,
    filter: &'f EnumFilter,
    track_triangles: bool,
    adj: Vec<u64>,
    tri: Vec<usize>,
    tri_total: usize,
    targets: Option<Vec<usize>>,
}

impl<'f> Search<'f> {
    fn new(s: GraphSpace, d: &DegreeSequence, filter: &'f EnumFilter) -> Result<Self> {
        let n = d.len();
        if filter.has_triangle_filter() {
            if s != GraphSpace::SIMPLE {
                return Err(Error::FilterInapplicable(s));
            }
            if n > 64 {
                return Err(Error::InvalidInput(
                    "triangle filters support at most 64 vertices".into(),
                ));
            }
        }
        if let Some(t) = &filter.triangle_seq {
            if t.len() != n {
                return Err(Error::InvalidTriangleSequence(format!(
                    "length {} does not match {} vertices",
                    t.len(),
                    n
                )));
            }
        }
        Ok(Search {
            n,
            max_loops: s.max_loops(),
            max_mult: s.max_multiplicity(),
            residual: d.degrees().to_vec(),
            edges: Vec::with_capacity(d.edge_count()),
            filter,
            track_triangles: filter.has_triangle_filter(),
            adj: vec![0; if filter.has_triangle_filter() { n } else { 0 }],
            tri: vec![0; n],
            tri_total: 0,
            targets: filter.triangle_seq.as_ref().map(|t| t.counts().to_vec()),
        })
    }

    /// Instances of `(u, v)` already placed; they are the trailing run.
    fn run_length(&self, e: Edge) -> usize {
        self.edges.iter().rev().take_while(|x| **x == e).count()
    }

    fn can_place(&self, u: Vertex, v: Vertex) -> bool {
        let e = Edge(u, v);
        if u == v {
            self.residual[u] >= 2 && self.max_loops.is_none_or(|l| self.run_length(e) < l)
        } else {
            self.residual[v] >= 1 && self.max_mult.is_none_or(|l| self.run_length(e) < l)
        }
    }

    /// Returns false if the placement breaks a triangle upper bound; the
    /// edge is placed either way and must be removed with `unplace`.
    fn place(&mut self, u: Vertex, v: Vertex) -> bool {
        self.edges.push(Edge(u, v));
        if u == v {
            self.residual[u] -= 2;
            return true;
        }
        self.residual[u] -= 1;
        self.residual[v] -= 1;
        if !self.track_triangles {
            return true;
        }
        let mut common = self.adj[u] & self.adj[v];
        let c = common.count_ones() as usize;
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        self.tri[u] += c;
        self.tri[v] += c;
        self.tri_total += c;
        let mut ok = self
            .filter
            .triangle_count
            .is_none_or(|t| self.tri_total <= t);
        if let Some(targets) = &self.targets {
            ok &= self.tri[u] <= targets[u] && self.tri[v] <= targets[v];
            while common != 0 {
                let w = common.trailing_zeros() as usize;
                common &= common - 1;
                self.tri[w] += 1;
                ok &= self.tri[w] <= targets[w];
            }
        } else {
            while common != 0 {
                let w = common.trailing_zeros() as usize;
                common &= common - 1;
                self.tri[w] += 1;
            }
        }
        ok
    }

    fn unplace(&mut self) {
        let Edge(u, v) = self.edges.pop().expect("unplace after place");
        if u == v {
            self.residual[u] += 2;
            return;
        }
        self.residual[u] += 1;
        self.residual[v] += 1;
        if !self.track_triangles {
            return;
        }
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
        let mut common = self.adj[u] & self.adj[v];
        let c = common.count_ones() as usize;
        self.tri[u] -= c;
        self.tri[v] -= c;
        self.tri_total -= c;
        while common != 0 {
            let w = common.trailing_zeros() as usize;
            common &= common - 1;
            self.tri[w] -= 1;
        }
    }

    /// Upper bound on stubs of `u` that vertices `>= lo` can still take.
    fn capacity(&self, u: Vertex, lo: Vertex) -> usize {
        let mut cap = 0;
        if lo <= u && self.max_loops != Some(0) {
            let left = match self.max_loops {
                None => usize::MAX,
                Some(l) => l - self.run_length(Edge(u, u)),
            };
            cap += (self.residual[u] / 2).min(left).saturating_mul(2);
        }
        for v in (lo.max(u + 1))..self.n {
            let r = self.residual[v];
            cap += match self.max_mult {
                None => r,
                Some(l) => r.min(
                    l - if v == lo {
                        self.run_length(Edge(u, v))
                    } else {
                        0
                    },
                ),
            };
        }
        cap
    }

    /// Once every vertex `<= u` is finished, a vertex `x <= u` can only gain
    /// triangles from future edges between two of its neighbours above `u`.
    fn finished_bounds_hold(&self, u: Vertex) -> bool {
        let Some(targets) = &self.targets else {
            return true;
        };
        let above = if u + 1 >= 64 { 0 } else { !0u64 << (u + 1) };
        let open: u64 = (u + 1..self.n)
            .filter(|&v| self.residual[v] > 0)
            .fold(0, |m, v| m | 1 << v);
        (0..=u).all(|x| {
            let c = (self.adj[x] & above & open).count_ones() as usize;
            self.tri[x] + c * c.saturating_sub(1) / 2 >= targets[x]
        })
    }

    fn accepts(&self, g: &Graph) -> bool {
        if let Some(t) = self.filter.triangle_count {
            if self.tri_total != t {
                return false;
            }
        }
        if let Some(targets) = &self.targets {
            if self.tri != *targets {
                return false;
            }
        }
        self.filter.custom.as_ref().is_none_or(|p| p(g))
    }

    /// Explores completions with `u` the current vertex and next partner `>= lo`.
    fn run(
        &mut self,
        u: Vertex,
        lo: Vertex,
        visit: &mut dyn FnMut(&Graph) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if self.residual[u] == 0 {
            if self.track_triangles && !self.finished_bounds_hold(u) {
                return ControlFlow::Continue(());
            }
            return match (u + 1..self.n).find(|&v| self.residual[v] > 0) {
                Some(next) => self.run(next, next, visit),
                None => {
                    let g = Graph::from_edges_unchecked(self.n, self.edges.clone());
                    if self.accepts(&g) {
                        visit(&g)
                    } else {
                        ControlFlow::Continue(())
                    }
                }
            };
        }
        if self.capacity(u, lo) < self.residual[u] {
            return ControlFlow::Continue(());
        }
        for v in lo..self.n {
            if !self.can_place(u, v) {
                continue;
            }
            let ok = self.place(u, v);
            let flow = if ok {
                self.run(u, v, visit)
            } else {
                ControlFlow::Continue(())
            };
            self.unplace();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn first_vertex(&self) -> Option<Vertex> {
        (0..self.n).find(|&v| self.residual[v] > 0)
    }

    /// Replays `prefix`, the complete edge set of the first vertex, and
    /// resumes the search at the following vertex.
    fn run_from(
        &mut self,
        prefix: &[Edge],
        visit: &mut dyn FnMut(&Graph) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let mut ok = true;
        for e in prefix {
            ok &= self.place(e.0, e.1);
        }
        let u = prefix.last().map_or(0, |e| e.0);
        let flow = if ok {
            self.run(u, u, visit)
        } else {
            ControlFlow::Continue(())
        };
        for _ in prefix {
            self.unplace();
        }
        flow
    }

    /// All ways to complete the first vertex: the first branching level.
    fn first_level(&mut self) -> Vec<Vec<Edge>> {
        let Some(u) = self.first_vertex() else {
            return vec![vec![]];
        };
        let mut out = vec![];
        self.collect_first(u, u, &mut out);
        out
    }

    fn collect_first(&mut self, u: Vertex, lo: Vertex, out: &mut Vec<Vec<Edge>>) {
        if self.residual[u] == 0 {
            out.push(self.edges.clone());
            return;
        }
        if self.capacity(u, lo) < self.residual[u] {
            return;
        }
        for v in lo..self.n {
            if self.can_place(u, v) {
                if self.place(u, v) {
                    self.collect_first(u, v, out);
                }
                self.unplace();
            }
        }
    }
}

/// Calls `visit` on every labeled graph valid in `s` with degrees `d` that
/// passes `f`, in sorted edge-list order. Stops early on `Break`.
pub fn for_each_graph(
    s: GraphSpace,
    d: &DegreeSequence,
    f: &EnumFilter,
    mut visit: impl FnMut(&Graph) -> ControlFlow<()>,
) -> Result<()> {
    let mut search = Search::new(s, d, f)?;
    if let Some(u) = search.first_vertex() {
        let _ = search.run(u, u, &mut visit);
    }
    Ok(())
}

pub fn enumerate_graphs(s: GraphSpace, d: &DegreeSequence, f: &EnumFilter) -> Result<Vec<Graph>> {
    let mut out = vec![];
    for_each_graph(s, d, f, |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Like [`enumerate_graphs`] but fails with `CensusTooLarge` past `cap` graphs.
pub fn enumerate_capped(
    s: GraphSpace,
    d: &DegreeSequence,
    f: &EnumFilter,
    cap: usize,
) -> Result<Vec<Graph>> {
    let mut out = vec![];
    let mut over = false;
    for_each_graph(s, d, f, |g| {
        if out.len() == cap {
            over = true;
            return ControlFlow::Break(());
        }
        out.push(g.clone());
        ControlFlow::Continue(())
    })?;
    if over {
        return Err(Error::CensusTooLarge { cap });
    }
    Ok(out)
}

pub fn count_graphs(s: GraphSpace, d: &DegreeSequence, f: &EnumFilter) -> Result<u64> {
    fold_graphs(s, d, f, || 0u64, |acc, _| *acc += 1, |a, b| a + b)
}

/// Folds over all graphs, splitting the search at its first branching level
/// across the rayon pool. Each subtree is folded independently and the
/// partial results are merged in subtree order, so the result does not
/// depend on scheduling.
pub fn fold_graphs<A: Send>(
    s: GraphSpace,
    d: &DegreeSequence,
    f: &EnumFilter,
    init: impl Fn() -> A + Sync,
    fold: impl Fn(&mut A, &Graph) + Sync,
    merge: impl Fn(A, A) -> A + Sync,
) -> Result<A> {
    let prefixes = Search::new(s, d, f)?.first_level();
    let parts: Vec<A> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut search = Search::new(s, d, f).expect("validated above");
            let mut acc = init();
            let _ = search.run_from(prefix, &mut |g| {
                fold(&mut acc, g);
                ControlFlow::Continue(())
            });
            acc
        })
        .collect();
    Ok(parts.into_iter().fold(init(), merge))
}

/// Number of graphs per triangle count. Simple space only.
pub fn triangle_histogram(d: &DegreeSequence, f: &EnumFilter) -> Result<BTreeMap<usize, u64>> {
    fold_graphs(
        GraphSpace::SIMPLE,
        d,
        f,
        BTreeMap::new,
        |acc, g| {
            *acc.entry(g.triangle_count().expect("simple space"))
                .or_insert(0) += 1
        },
        |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ds(d: &[usize]) -> DegreeSequence {
        DegreeSequence::new(d.to_vec()).unwrap()
    }

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn single_edge() {
        let all = enumerate_graphs(GraphSpace::SIMPLE, &ds(&[1, 1]), &EnumFilter::none()).unwrap();
        assert_eq!(all, vec![g(2, &[(0, 1)])]);
    }

    #[test]
    fn multiloop_two_two_two() {
        let all = enumerate_graphs(
            GraphSpace::MULTILOOP_GRAPH,
            &ds(&[2, 2, 2]),
            &EnumFilter::none(),
        )
        .unwrap();
        assert_eq!(
            all,
            vec![
                g(3, &[(0, 0), (1, 1), (2, 2)]),
                g(3, &[(0, 1), (0, 2), (1, 2)])
            ]
        );
    }

    #[test]
    fn output_is_sorted_and_distinct() {
        for s in GraphSpace::ALL {
            let all = enumerate_graphs(s, &ds(&[3, 2, 2, 1]), &EnumFilter::none()).unwrap();
            assert!(all.windows(2).all(|w| w[0] < w[1]), "{s}");
            for x in &all {
                assert!(s.admits(x));
                assert_eq!(x.degrees(), vec![3, 2, 2, 1]);
            }
        }
    }

    #[test]
    fn triangle_filter_needs_simple_space() {
        let f = EnumFilter::triangles(1);
        assert_eq!(
            enumerate_graphs(GraphSpace::MULTIGRAPH, &ds(&[2, 2, 2]), &f),
            Err(Error::FilterInapplicable(GraphSpace::MULTIGRAPH))
        );
        let bad_len = EnumFilter::triangle_sequence("1,1,1".parse().unwrap());
        assert!(enumerate_graphs(GraphSpace::SIMPLE, &ds(&[2, 2, 2, 2]), &bad_len).is_err());
    }

    #[test]
    fn capped_census() {
        let d = ds(&[2, 2, 2, 2]);
        assert_eq!(
            enumerate_capped(GraphSpace::PSEUDOGRAPH, &d, &EnumFilter::none(), 1000)
                .unwrap()
                .len(),
            count_graphs(GraphSpace::PSEUDOGRAPH, &d, &EnumFilter::none()).unwrap() as usize
        );
        assert_eq!(
            enumerate_capped(GraphSpace::PSEUDOGRAPH, &d, &EnumFilter::none(), 3),
            Err(Error::CensusTooLarge { cap: 3 })
        );
    }

    #[test]
    fn custom_filter_applies() {
        let f = EnumFilter::custom(|g| g.loop_count() == 0);
        let with = count_graphs(GraphSpace::PSEUDOGRAPH, &ds(&[2, 2, 2, 2]), &f).unwrap();
        let without = count_graphs(
            GraphSpace::MULTIGRAPH,
            &ds(&[2, 2, 2, 2]),
            &EnumFilter::none(),
        )
        .unwrap();
        assert_eq!(with, without);
    }

    #[test]
    fn small_histogram() {
        // K4 minus nothing: degrees 3,3,3,3 has exactly one simple graph
        let h = triangle_histogram(&ds(&[3, 3, 3, 3]), &EnumFilter::none()).unwrap();
        assert_eq!(h, BTreeMap::from([(4, 1)]));
    }
}
