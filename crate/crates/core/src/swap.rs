//! Double edge-swaps and k edge-swaps over edge instances.
//!
//! A double swap picks two edge instances `(a, b)`, `(c, d)` and rewires them
//! with one of the two non-identity pairings:
//!
//! * [`Pairing::CrossA`]: `(a, c), (b, d)`
//! * [`Pairing::CrossB`]: `(a, d), (b, c)`
//!
//! A k swap picks an ordered list of `k` instances and one *mobile* endpoint
//! of each, then shifts the mobile endpoints one position around the cycle.
//! Edge `t` keeps its fixed endpoint and receives the mobile endpoint of edge
//! `t + 1` (forward) or `t - 1` (backward). Selections may share vertices;
//! whether the result is acceptable is decided only by the space policy.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, GraphSpace, LoopPolicy, MultiedgePolicy, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pairing {
    CrossA,
    CrossB,
}

impl Pairing {
    pub const BOTH: [Pairing; 2] = [Pairing::CrossA, Pairing::CrossB];

    #[inline]
    pub fn rewire(self, e: Edge, f: Edge) -> (Edge, Edge) {
        let (a, b, c, d) = (e.0, e.1, f.0, f.1);
        match self {
            Pairing::CrossA => (Edge::new(a, c), Edge::new(b, d)),
            Pairing::CrossB => (Edge::new(a, d), Edge::new(b, c)),
        }
    }

    /// The pairing of `e` and `f` that joins their endpoints equal to `u`
    /// into the loop `(u, u)`, if both edges touch `u`.
    pub fn joining(e: Edge, f: Edge, u: Vertex) -> Option<Pairing> {
        Pairing::BOTH.into_iter().find(|p| {
            let (x, y) = p.rewire(e, f);
            x == Edge(u, u) || y == Edge(u, u)
        })
    }
}

/// A double edge-swap on instances `i` and `j` of a graph's edge list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SwapMove {
    pub i: usize,
    pub j: usize,
    pub pairing: Pairing,
}

impl SwapMove {
    pub fn new(i: usize, j: usize, pairing: Pairing) -> Self {
        SwapMove { i, j, pairing }
    }

    /// The two edges this move would insert into `g`, without validation.
    pub fn rewired(&self, g: &Graph) -> (Edge, Edge) {
        self.pairing.rewire(g.edges()[self.i], g.edges()[self.j])
    }
}

/// All `2 * C(m, 2)` double-swap proposals on `m` edge instances.
pub fn double_swap_proposals(m: usize) -> impl Iterator<Item = SwapMove> {
    (0..m).flat_map(move |i| {
        (i + 1..m).flat_map(move |j| {
            Pairing::BOTH
                .into_iter()
                .map(move |p| SwapMove::new(i, j, p))
        })
    })
}

fn check_index(g: &Graph, index: usize) -> Result<()> {
    if index >= g.edge_count() {
        return Err(Error::IndexOutOfRange {
            index,
            len: g.edge_count(),
        });
    }
    Ok(())
}

pub fn apply_double_swap(g: &Graph, m: SwapMove) -> Result<Graph> {
    check_index(g, m.i)?;
    check_index(g, m.j)?;
    if m.i == m.j {
        return Err(Error::InvalidInput(
            "a double swap needs two distinct edge instances".into(),
        ));
    }
    let (x, y) = m.rewired(g);
    let mut edges = g.edges().to_vec();
    edges[m.i] = x;
    edges[m.j] = y;
    Ok(Graph::from_edges_unchecked(g.n(), edges))
}

fn require_valid(g: &Graph, s: GraphSpace) -> Result<()> {
    if !s.admits(g) {
        return Err(Error::InvalidInput(format!(
            "graph is not valid in the {s} space"
        )));
    }
    Ok(())
}

/// Distinct graphs one space-valid double swap away from `g`, sorted.
pub fn double_swap_neighbors(g: &Graph, s: GraphSpace) -> Result<Vec<Graph>> {
    require_valid(g, s)?;
    let mut out: Vec<Graph> = double_swap_proposals(g.edge_count())
        .map(|mv| apply_double_swap(g, mv).expect("proposal indices are in range"))
        .filter(|h| h != g && s.admits(h))
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Endpoint {
    First,
    Second,
}

impl Endpoint {
    /// `(fixed, mobile)` endpoints of `e`.
    #[inline]
    fn split(self, e: Edge) -> (Vertex, Vertex) {
        match self {
            Endpoint::First => (e.1, e.0),
            Endpoint::Second => (e.0, e.1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KSwapMove {
    pub indices: Vec<usize>,
    pub mobile: Vec<Endpoint>,
    pub direction: Direction,
}

impl KSwapMove {
    pub fn new(indices: Vec<usize>, mobile: Vec<Endpoint>, direction: Direction) -> Result<Self> {
        if indices.len() < 2 {
            return Err(Error::BadArity(indices.len()));
        }
        if mobile.len() != indices.len() {
            return Err(Error::InvalidInput(
                "one mobile endpoint is needed per chosen edge".into(),
            ));
        }
        Ok(KSwapMove {
            indices,
            mobile,
            direction,
        })
    }

    pub fn arity(&self) -> usize {
        self.indices.len()
    }

    /// The k = 2 move equivalent to a double swap.
    pub fn from_double(m: SwapMove) -> Self {
        // (a,b),(c,d): swapping b<->d gives (a,d),(c,b) = CrossB,
        // swapping b<->c gives (a,c),(d,b) = CrossA.
        let second = match m.pairing {
            Pairing::CrossA => Endpoint::First,
            Pairing::CrossB => Endpoint::Second,
        };
        KSwapMove {
            indices: vec![m.i, m.j],
            mobile: vec![Endpoint::Second, second],
            direction: Direction::Forward,
        }
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        if self.indices.len() < 2 {
            return Err(Error::BadArity(self.indices.len()));
        }
        if self.mobile.len() != self.indices.len() {
            return Err(Error::InvalidInput(
                "one mobile endpoint is needed per chosen edge".into(),
            ));
        }
        for (t, &i) in self.indices.iter().enumerate() {
            check_index(g, i)?;
            if self.indices[..t].contains(&i) {
                return Err(Error::InvalidInput(format!("edge index {i} chosen twice")));
            }
        }
        Ok(())
    }

    /// New edges in selection order: edge `t` keeps its fixed endpoint and
    /// takes the mobile endpoint of its successor (or predecessor).
    fn rewired(&self, g: &Graph) -> Vec<(Vertex, Vertex)> {
        let k = self.indices.len();
        let parts: Vec<(Vertex, Vertex)> = self
            .indices
            .iter()
            .zip(&self.mobile)
            .map(|(&i, side)| side.split(g.edges()[i]))
            .collect();
        (0..k)
            .map(|t| {
                let src = match self.direction {
                    Direction::Forward => (t + 1) % k,
                    Direction::Backward => (t + k - 1) % k,
                };
                (parts[t].0, parts[src].1)
            })
            .collect()
    }
}

pub fn apply_k_swap(g: &Graph, m: &KSwapMove) -> Result<Graph> {
    apply_k_swap_with_inverse(g, m).map(|(h, _)| h)
}

/// Applies `m` and also returns the move that undoes it on the result.
pub fn apply_k_swap_with_inverse(g: &Graph, m: &KSwapMove) -> Result<(Graph, KSwapMove)> {
    m.validate(g)?;
    let new_edges = m.rewired(g);
    let mut edges = g.edges().to_vec();
    for (&i, &(f, mv)) in m.indices.iter().zip(&new_edges) {
        edges[i] = Edge::new(f, mv);
    }
    let h = Graph::from_edges_unchecked(g.n(), edges);

    // Locate each new edge in the result, giving equal edges distinct instances.
    let mut used = vec![false; h.edge_count()];
    let mut indices = Vec::with_capacity(new_edges.len());
    let mut mobile = Vec::with_capacity(new_edges.len());
    for &(f, mv) in &new_edges {
        let e = Edge::new(f, mv);
        let start = h.edges().partition_point(|x| *x < e);
        let idx = (start..h.edge_count())
            .find(|&p| h.edges()[p] == e && !used[p])
            .expect("every inserted edge is present in the result");
        used[idx] = true;
        indices.push(idx);
        mobile.push(if e.1 == mv {
            Endpoint::Second
        } else {
            Endpoint::First
        });
    }
    let inverse = KSwapMove {
        indices,
        mobile,
        direction: m.direction.reversed(),
    };
    Ok((h, inverse))
}

/// Distinct graphs reachable from `g` by one k edge-swap that stay valid in
/// `s` and satisfy `keep`, sorted.
///
/// Every cyclic order of every k-subset of instances is generated, so the
/// move set contains all k-cycles of mobile endpoints (for k = 2 this is the
/// double-swap move set). Each cycle is enumerated once, rooted at its
/// smallest index; the opposite rotation shows up as the reversed sequence.
pub fn k_swap_neighbors(
    g: &Graph,
    s: GraphSpace,
    k: usize,
    keep: &(dyn Fn(&Graph) -> bool + Sync),
) -> Result<Vec<Graph>> {
    if k < 2 {
        return Err(Error::BadArity(k));
    }
    require_valid(g, s)?;
    if !keep(g) {
        return Err(Error::InvalidInput(
            "graph does not satisfy the keep predicate".into(),
        ));
    }
    let mut search = KCycleSearch {
        g,
        s,
        k,
        keep,
        seq: Vec::with_capacity(k),
        new_edges: Vec::with_capacity(k),
        in_seq: vec![false; g.edge_count()],
        seen: HashSet::new(),
        out: Vec::new(),
    };
    for root in 0..g.edge_count() {
        for side in sides(g.edges()[root]) {
            search.seq.push((root, side.split(g.edges()[root])));
            search.in_seq[root] = true;
            search.extend(root);
            search.in_seq[root] = false;
            search.seq.pop();
        }
    }
    let mut out = search.out;
    out.sort_unstable();
    Ok(out)
}

/// Mobile-endpoint choices for an edge; a loop has only one distinct choice.
fn sides(e: Edge) -> &'static [Endpoint] {
    if e.is_loop() {
        &[Endpoint::Second]
    } else {
        &[Endpoint::First, Endpoint::Second]
    }
}

struct KCycleSearch<'a> {
    g: &'a Graph,
    s: GraphSpace,
    k: usize,
    keep: &'a (dyn Fn(&Graph) -> bool + Sync),
    /// (edge index, (fixed, mobile)) in cycle order
    seq: Vec<(usize, (Vertex, Vertex))>,
    /// new_edges[t] joins seq[t].fixed with seq[t + 1].mobile
    new_edges: Vec<Edge>,
    in_seq: Vec<bool>,
    seen: HashSet<Graph>,
    out: Vec<Graph>,
}

impl KCycleSearch<'_> {
    /// False when `e` can be rejected before the cycle is complete: it is a
    /// forbidden loop, or it duplicates an edge that will certainly survive.
    fn admissible(&self, e: Edge, root: usize) -> bool {
        let single = if e.is_loop() {
            match self.s.loops {
                LoopPolicy::Forbidden => return false,
                LoopPolicy::SingleOnly => true,
                LoopPolicy::Unlimited => false,
            }
        } else {
            self.s.multiedges == MultiedgePolicy::SingleOnly
        };
        if !single {
            return true;
        }
        if self.new_edges.contains(&e) {
            return false;
        }
        // instances below the root index can never be selected later
        let edges = self.g.edges();
        let pos = edges.partition_point(|x| *x < e);
        !(pos < root && edges[pos] == e)
    }

    fn extend(&mut self, root: usize) {
        let depth = self.seq.len();
        let (fixed_last, _) = self.seq[depth - 1].1;
        if depth == self.k {
            let closing = Edge::new(fixed_last, self.seq[0].1 .1);
            if self.admissible(closing, root) {
                self.new_edges.push(closing);
                self.finish();
                self.new_edges.pop();
            }
            return;
        }
        for next in root + 1..self.g.edge_count() {
            if self.in_seq[next] {
                continue;
            }
            let e = self.g.edges()[next];
            for side in sides(e) {
                let (fixed, mobile) = side.split(e);
                let joined = Edge::new(fixed_last, mobile);
                if !self.admissible(joined, root) {
                    continue;
                }
                self.new_edges.push(joined);
                self.seq.push((next, (fixed, mobile)));
                self.in_seq[next] = true;
                self.extend(root);
                self.in_seq[next] = false;
                self.seq.pop();
                self.new_edges.pop();
            }
        }
    }

    fn finish(&mut self) {
        let mut edges = self.g.edges().to_vec();
        for (&(i, _), &e) in self.seq.iter().zip(&self.new_edges) {
            edges[i] = e;
        }
        edges.sort_unstable();
        if edges == self.g.edges() || !self.s.admits_sorted(&edges) {
            return;
        }
        let h = Graph::from_edges_unchecked(self.g.n(), edges);
        if self.seen.contains(&h) {
            return;
        }
        if (self.keep)(&h) {
            self.out.push(h.clone());
        }
        self.seen.insert(h);
    }
}

/// A predicate accepting every graph.
pub fn keep_all(_: &Graph) -> bool {
    true
}
