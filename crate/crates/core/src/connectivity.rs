//! Connectivity verdicts for the six graph spaces and the constructive swap
//! procedures that normalize loopy-multigraphs and multiloop-graphs.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Edge, Graph, GraphSpace, LoopPolicy, MultiedgePolicy, Vertex};
use crate::swap::{apply_double_swap, Pairing, SwapMove};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ConnectivityStatus {
    AlwaysConnected,
    ConnectedByCriterion,
    DisconnectedByCriterion,
    ExternallyCharacterized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityVerdict {
    pub status: ConnectivityStatus,
    pub witness: Option<String>,
}

impl fmt::Display for ConnectivityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.status)?;
        if let Some(w) = &self.witness {
            write!(f, ": {w}")?;
        }
        Ok(())
    }
}

pub const NO_ODD_DEGREE: &str = "no odd degree";
pub const NO_DEFICIENT_VERTEX: &str = "no vertex with k_v-(n-1) negative or odd";

/// The two clauses deciding multiloop-graph connectivity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MultiloopCriterion {
    /// some degree is odd
    pub odd_degree: bool,
    /// some `k_v - (n - 1)` is negative or odd
    pub deficient_vertex: bool,
}

impl MultiloopCriterion {
    pub fn holds(self) -> bool {
        self.odd_degree && self.deficient_vertex
    }

    /// The first clause that fails, if any.
    pub fn failure(self) -> Option<&'static str> {
        if !self.odd_degree {
            Some(NO_ODD_DEGREE)
        } else if !self.deficient_vertex {
            Some(NO_DEFICIENT_VERTEX)
        } else {
            None
        }
    }
}

pub fn multiloop_criterion(d: &DegreeSequence) -> MultiloopCriterion {
    let n = d.len();
    let odd_degree = d.degrees().iter().any(|k| k % 2 == 1);
    let deficient_vertex = d
        .degrees()
        .iter()
        .any(|&k| k < n - 1 || (k - (n - 1)) % 2 == 1);
    MultiloopCriterion {
        odd_degree,
        deficient_vertex,
    }
}

pub fn space_connectivity(s: GraphSpace, d: &DegreeSequence) -> ConnectivityVerdict {
    use LoopPolicy as L;
    use MultiedgePolicy as M;
    match (s.loops, s.multiedges) {
        (L::Unlimited, M::SingleOnly) => {
            let c = multiloop_criterion(d);
            match c.failure() {
                None => ConnectivityVerdict {
                    status: ConnectivityStatus::ConnectedByCriterion,
                    witness: None,
                },
                Some(w) => ConnectivityVerdict {
                    status: ConnectivityStatus::DisconnectedByCriterion,
                    witness: Some(w.into()),
                },
            }
        }
        (L::SingleOnly, M::SingleOnly) => ConnectivityVerdict {
            status: ConnectivityStatus::ExternallyCharacterized,
            witness: Some(
                "loopy-graph connectivity depends on the degree sequence; not decided here".into(),
            ),
        },
        _ => ConnectivityVerdict {
            status: ConnectivityStatus::AlwaysConnected,
            witness: None,
        },
    }
}

fn require_space(g: &Graph, s: GraphSpace) -> Result<()> {
    if !s.admits(g) {
        return Err(Error::InvalidInput(format!(
            "graph is not valid in the {s} space"
        )));
    }
    Ok(())
}

/// A swap trace: the graph after each move is the input of the next.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SwapTrace {
    pub moves: Vec<SwapMove>,
}

impl SwapTrace {
    fn push(&mut self, g: &Graph, m: SwapMove) -> Graph {
        self.moves.push(m);
        apply_double_swap(g, m).expect("procedure moves use valid indices")
    }

    /// Replays the trace from `start`, returning every intermediate graph
    /// (including `start`).
    pub fn replay(&self, start: &Graph) -> Result<Vec<Graph>> {
        let mut out = vec![start.clone()];
        for &m in &self.moves {
            let next = apply_double_swap(out.last().unwrap(), m)?;
            out.push(next);
        }
        Ok(out)
    }
}

fn index_of(g: &Graph, e: Edge) -> usize {
    g.edges().partition_point(|x| *x < e)
}

/// Swaps pairs of loops `(u,u),(v,v)` into double edges `(u,v),(u,v)`,
/// lowest vertices first, until at most one loop is left.
pub fn reduce_loops_loopy_multigraph(g: &Graph) -> Result<(Graph, SwapTrace)> {
    require_space(g, GraphSpace::LOOPY_MULTIGRAPH)?;
    let mut cur = g.clone();
    let mut trace = SwapTrace::default();
    while let Some((i, j)) = first_two_loops(&cur) {
        cur = trace.push(&cur, SwapMove::new(i, j, Pairing::CrossA));
    }
    Ok((cur, trace))
}

fn first_two_loops(g: &Graph) -> Option<(usize, usize)> {
    let mut it = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_loop())
        .map(|(i, _)| i);
    Some((it.next()?, it.next()?))
}

/// Removes the single loop `(u,u)` with the swap `(u,u),(v,w) -> (u,v),(u,w)`
/// using the first edge avoiding `u`.
pub fn eliminate_last_loop(g: &Graph) -> Result<(Graph, SwapMove)> {
    require_space(g, GraphSpace::LOOPY_MULTIGRAPH)?;
    let mut loops = g.edges().iter().enumerate().filter(|(_, e)| e.is_loop());
    let (li, lp) = match (loops.next(), loops.next()) {
        (Some((i, e)), None) => (i, *e),
        _ => {
            return Err(Error::InvalidInput(format!(
                "expected exactly one loop, found {}",
                g.loop_count()
            )))
        }
    };
    let u = lp.0;
    let j = g
        .edges()
        .iter()
        .position(|e| !e.touches(u))
        .ok_or(Error::NoDisjointEdge(u))?;
    let m = SwapMove::new(li, j, Pairing::CrossA);
    let h = apply_double_swap(g, m)?;
    debug_assert!(GraphSpace::LOOPY_MULTIGRAPH.admits(&h) && h.loop_count() == 0);
    Ok((h, m))
}

/// Simple-part adjacency of a multiloop-graph.
struct LoopFree {
    n: usize,
    adj: Vec<bool>,
}

impl LoopFree {
    fn of(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![false; n * n];
        for e in g.edges().iter().filter(|e| !e.is_loop()) {
            adj[e.0 * n + e.1] = true;
            adj[e.1 * n + e.0] = true;
        }
        LoopFree { n, adj }
    }

    fn has(&self, a: Vertex, b: Vertex) -> bool {
        self.adj[a * self.n + b]
    }

    fn neighbors(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.n).filter(move |&v| self.has(u, v))
    }

    /// First open wedge `v - u - x` (v < x, v and x not adjacent), scanning
    /// the centre `u` upward.
    fn open_wedge(&self) -> Option<(Vertex, Vertex, Vertex)> {
        for u in 0..self.n {
            let nb: Vec<Vertex> = self.neighbors(u).collect();
            for (a, &v) in nb.iter().enumerate() {
                for &x in &nb[a + 1..] {
                    if !self.has(v, x) {
                        return Some((u, v, x));
                    }
                }
            }
        }
        None
    }

    /// Connected components of the loop-free part that have at least one
    /// edge, each sorted, ordered by smallest vertex.
    fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = vec![];
        for s in 0..self.n {
            if seen[s] || self.neighbors(s).next().is_none() {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Swaps the wedge `v - u - x` into the loop `(u,u)` and the edge `(v,x)`.
fn wedge_to_loop(g: &Graph, trace: &mut SwapTrace, u: Vertex, v: Vertex, x: Vertex) -> Graph {
    let (e, f) = (Edge::new(u, v), Edge::new(u, x));
    let m = SwapMove::new(
        index_of(g, e),
        index_of(g, f),
        Pairing::joining(e, f, u).unwrap(),
    );
    trace.push(g, m)
}

/// Swaps `(a,b),(c,d)` into `(a,c),(b,d)`.
fn cross(
    g: &Graph,
    trace: &mut SwapTrace,
    (a, b): (Vertex, Vertex),
    (c, d): (Vertex, Vertex),
) -> Graph {
    let (e, f) = (Edge::new(a, b), Edge::new(c, d));
    let (i, j) = (index_of(g, e), index_of(g, f));
    let p = Pairing::BOTH
        .into_iter()
        .find(|p| {
            let (x, y) = p.rewire(e, f);
            let want = (Edge::new(a, c), Edge::new(b, d));
            (x, y) == want || (y, x) == want
        })
        .expect("one pairing realizes any cross");
    trace.push(g, SwapMove::new(i, j, p))
}

/// Drives a multiloop-graph to the normal form with `floor(k_u / 2)` loops at
/// every vertex and a perfect matching on the odd-degree vertices.
///
/// Rules, first applicable wins:
/// 1. an open wedge `v - u - x` becomes loop `(u,u)` plus edge `(v,x)`;
/// 2. a clique component `K` with at least 4 vertices and an edge `(u,w)`
///    outside it (possibly a loop): swap `(u,w),(x,y)` for `x, y` in `K`, then
///    turn the wedges `x - a - y` and `b - x - u` into loops;
/// 3. a triangle `{x,y,z}` and an isolated edge `(p,q)`: swap `(p,q),(x,y)`,
///    then turn the wedges `p - x - z` and `q - y - z` into loops.
///
/// Rules 2 and 3 net at least one new loop, so the loop count strictly
/// increases and the procedure terminates.
pub fn saturate_loops_multiloop(g: &Graph) -> Result<(Graph, SwapTrace)> {
    require_space(g, GraphSpace::MULTILOOP_GRAPH)?;
    let degrees = DegreeSequence::new(g.degrees())?;
    let criterion = multiloop_criterion(&degrees);
    if let Some(w) = criterion.failure() {
        return Err(Error::CriterionUnsatisfied(w.into()));
    }

    let mut cur = g.clone();
    let mut trace = SwapTrace::default();
    loop {
        let lf = LoopFree::of(&cur);
        if let Some((u, v, x)) = lf.open_wedge() {
            cur = wedge_to_loop(&cur, &mut trace, u, v, x);
            continue;
        }
        // no open wedges: every component of the loop-free part is a clique
        let comps = lf.components();
        if let Some(k) = comps.iter().find(|c| c.len() >= 4) {
            let (x, y, a, b) = (k[0], k[1], k[2], k[3]);
            let outside = cur
                .edges()
                .iter()
                .find(|e| !k.contains(&e.0) && !k.contains(&e.1))
                .copied()
                .ok_or_else(|| Error::CriterionUnsatisfied(NO_DEFICIENT_VERTEX.into()))?;
            let (u, w) = (outside.0, outside.1);
            cur = cross(&cur, &mut trace, (u, w), (x, y));
            cur = wedge_to_loop(&cur, &mut trace, a, x, y);
            cur = wedge_to_loop(&cur, &mut trace, x, b, u);
            continue;
        }
        let triangle = comps.iter().find(|c| c.len() == 3);
        let matched = comps.iter().find(|c| c.len() == 2);
        if let (Some(t), Some(pq)) = (triangle, matched) {
            let (x, y, z) = (t[0], t[1], t[2]);
            let (p, q) = (pq[0], pq[1]);
            cur = cross(&cur, &mut trace, (p, q), (x, y));
            cur = wedge_to_loop(&cur, &mut trace, x, p, z);
            cur = wedge_to_loop(&cur, &mut trace, y, q, z);
            continue;
        }
        break;
    }
    Ok((cur, trace))
}

/// True when `g` has `floor(k_u / 2)` loops at every `u` and its loop-free
/// part is simple with degrees `k_u mod 2`.
pub fn is_loop_saturated(g: &Graph) -> bool {
    let deg = g.degrees();
    let loops = g.loops_per_vertex();
    if deg.iter().zip(&loops).any(|(d, l)| *l != d / 2) {
        return false;
    }
    let rest: Vec<(Vertex, Vertex)> = g
        .edges()
        .iter()
        .filter(|e| !e.is_loop())
        .map(|e| (e.0, e.1))
        .collect();
    let rest = Graph::new(g.n(), rest).expect("subgraph of a valid graph");
    rest.is_simple() && rest.degrees().iter().zip(&deg).all(|(r, d)| *r == d % 2)
}
