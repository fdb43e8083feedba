//! Canonical labeling and isomorphism classes for small graphs with loops and
//! multiedges.
//!
//! Vertices are coloured by iterated refinement: a vertex's signature is its
//! loop count plus the multiset of (neighbour cell, multiplicity) pairs, and
//! cells split by signature until stable. Remaining ties are broken by
//! individualizing each vertex of the first non-singleton cell in turn. Every
//! leaf of that search is a labeling; the canonical form is the leaf with the
//! lexicographically smallest edge list. Leaves that coincide reveal
//! automorphisms, which prune sibling branches in the same orbit.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::graph::{Edge, Graph, Vertex};

type Cells = Vec<Vec<Vertex>>;
type Signature = Vec<(u32, u32)>;

const LOOP_TAG: u32 = u32::MAX;

struct Matrix {
    n: usize,
    mult: Vec<u32>,
}

impl Matrix {
    fn of(g: &Graph) -> Self {
        let n = g.n();
        let mut mult = vec![0; n * n];
        for e in g.edges() {
            mult[e.0 * n + e.1] += 1;
            if !e.is_loop() {
                mult[e.1 * n + e.0] += 1;
            }
        }
        Matrix { n, mult }
    }

    #[inline]
    fn get(&self, a: Vertex, b: Vertex) -> u32 {
        self.mult[a * self.n + b]
    }

    fn signature(&self, v: Vertex, cell_of: &[u32]) -> Signature {
        let mut sig: Signature = Vec::new();
        let loops = self.get(v, v);
        if loops > 0 {
            sig.push((LOOP_TAG, loops));
        }
        for w in (0..self.n).filter(|&w| w != v) {
            let m = self.get(v, w);
            if m > 0 {
                sig.push((cell_of[w], m));
            }
        }
        sig.sort_unstable();
        sig
    }

    /// Splits cells by signature until stable. The trace records every
    /// signature in split order, so equal traces mean compatible partitions.
    fn refine(&self, mut cells: Cells, trace: &mut Vec<Signature>) -> Cells {
        let mut cell_of = vec![0u32; self.n];
        loop {
            for (i, c) in cells.iter().enumerate() {
                for &v in c {
                    cell_of[v] = i as u32;
                }
            }
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in &cells {
                let mut keyed: Vec<(Signature, Vertex)> = cell
                    .iter()
                    .map(|&v| (self.signature(v, &cell_of), v))
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                        trace.push(keyed[start].0.clone());
                        start = i;
                    }
                }
            }
            let stable = next.len() == cells.len();
            cells = next;
            if stable {
                return cells;
            }
        }
    }
}

fn unit_partition(n: usize) -> Cells {
    vec![(0..n).collect()]
}

fn individualize(cells: &Cells, t: usize, v: Vertex) -> Cells {
    let mut out = Cells::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..t]);
    out.push(vec![v]);
    out.push(cells[t].iter().copied().filter(|&w| w != v).collect());
    out.extend_from_slice(&cells[t + 1..]);
    out
}

fn target_cell(cells: &Cells) -> Option<usize> {
    cells.iter().position(|c| c.len() > 1)
}

/// `labels[v]` = position of `v` in a discrete partition.
fn leaf_labels(cells: &Cells) -> Vec<Vertex> {
    let mut labels = vec![0; cells.len()];
    for (i, c) in cells.iter().enumerate() {
        labels[c[0]] = i;
    }
    labels
}

fn relabeled_edges(g: &Graph, labels: &[Vertex]) -> Vec<Edge> {
    let mut edges: Vec<Edge> = g
        .edges()
        .iter()
        .map(|e| Edge::new(labels[e.0], labels[e.1]))
        .collect();
    edges.sort_unstable();
    edges
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Canonical {
    pub graph: Graph,
    /// `relabeling[v]` is the canonical label of input vertex `v`.
    pub relabeling: Vec<Vertex>,
}

struct Leaf {
    edges: Vec<Edge>,
    labels: Vec<Vertex>,
}

struct CanonSearch<'a> {
    g: &'a Graph,
    mat: Matrix,
    first: Option<Leaf>,
    best: Option<Leaf>,
    automorphisms: Vec<Vec<Vertex>>,
}

impl CanonSearch<'_> {
    fn record_automorphism(&mut self, a: &[Vertex], b: &[Vertex]) {
        // a and b give the same graph: v -> b^-1(a(v)) is an automorphism
        let mut inv_b = vec![0; b.len()];
        for (v, &l) in b.iter().enumerate() {
            inv_b[l] = v;
        }
        let gamma: Vec<Vertex> = a.iter().map(|&l| inv_b[l]).collect();
        if gamma.iter().enumerate().any(|(v, &w)| v != w) {
            self.automorphisms.push(gamma);
        }
    }

    fn leaf(&mut self, cells: &Cells) {
        let labels = leaf_labels(cells);
        let edges = relabeled_edges(self.g, &labels);
        if let Some(first) = &self.first {
            if first.edges == edges {
                let fl = first.labels.clone();
                self.record_automorphism(&labels, &fl);
                return;
            }
        } else {
            self.first = Some(Leaf {
                edges: edges.clone(),
                labels: labels.clone(),
            });
        }
        match &self.best {
            Some(best) if best.edges == edges => {
                let bl = best.labels.clone();
                self.record_automorphism(&labels, &bl);
            }
            Some(best) if best.edges < edges => {}
            _ => self.best = Some(Leaf { edges, labels }),
        }
    }

    /// Whether `v` shares an orbit with an explored sibling under the known
    /// automorphisms that fix `prefix` pointwise.
    fn pruned(&self, v: Vertex, explored: &[Vertex], prefix: &[Vertex]) -> bool {
        if explored.is_empty() {
            return false;
        }
        let n = self.mat.n;
        let mut parent: Vec<Vertex> = (0..n).collect();
        fn find(p: &mut [Vertex], mut x: Vertex) -> Vertex {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.automorphisms {
            if prefix.iter().all(|&p| gamma[p] == p) {
                for (a, &b) in gamma.iter().enumerate() {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                    }
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }

    fn descend(&mut self, cells: Cells, prefix: &mut Vec<Vertex>) {
        let Some(t) = target_cell(&cells) else {
            self.leaf(&cells);
            return;
        };
        let mut explored = Vec::new();
        for &v in &cells[t] {
            if self.pruned(v, &explored, prefix) {
                continue;
            }
            let child = self
                .mat
                .refine(individualize(&cells, t, v), &mut Vec::new());
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }
}

/// Canonical representative of the isomorphism class of `g`, with the vertex
/// relabeling that produces it. Deterministic; equal for isomorphic inputs.
pub fn canonical_form(g: &Graph) -> Canonical {
    let mat = Matrix::of(g);
    let start = mat.refine(unit_partition(g.n()), &mut Vec::new());
    let mut search = CanonSearch {
        g,
        mat,
        first: None,
        best: None,
        automorphisms: Vec::new(),
    };
    search.descend(start, &mut Vec::new());
    let best = search.best.expect("the search reaches at least one leaf");
    Canonical {
        graph: Graph::from_edges_unchecked(g.n(), best.edges),
        relabeling: best.labels,
    }
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    let sorted = |x: &Graph| {
        let mut d = x.degrees();
        d.sort_unstable();
        d
    };
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && sorted(g) == sorted(h)
        && canonical_form(g).graph == canonical_form(h).graph
}

/// Searches for an automorphism mapping partition `a` onto partition `b`.
fn extend_automorphism(mat: &Matrix, a: Cells, b: Cells) -> bool {
    match target_cell(&a) {
        None => {
            let n = mat.n;
            let mut map = vec![0; n];
            for (ca, cb) in a.iter().zip(&b) {
                map[ca[0]] = cb[0];
            }
            (0..n).all(|x| (x..n).all(|y| mat.get(x, y) == mat.get(map[x], map[y])))
        }
        Some(t) => {
            let mut ta = Vec::new();
            let left = mat.refine(individualize(&a, t, a[t][0]), &mut ta);
            b[t].iter().any(|&w| {
                let mut tb = Vec::new();
                let right = mat.refine(individualize(&b, t, w), &mut tb);
                ta == tb && extend_automorphism(mat, left.clone(), right)
            })
        }
    }
}

/// Order of the automorphism group, as a product of orbit sizes along a
/// stabilizer chain.
pub fn automorphism_count(g: &Graph) -> u64 {
    let mat = Matrix::of(g);
    let mut cells = mat.refine(unit_partition(g.n()), &mut Vec::new());
    let mut order = 1u64;
    while let Some(t) = target_cell(&cells) {
        let v = cells[t][0];
        let mut tv = Vec::new();
        let fixed = mat.refine(individualize(&cells, t, v), &mut tv);
        let orbit = 1 + cells[t][1..]
            .iter()
            .filter(|&&w| {
                let mut tw = Vec::new();
                let moved = mat.refine(individualize(&cells, t, w), &mut tw);
                tv == tw && extend_automorphism(&mat, fixed.clone(), moved)
            })
            .count();
        order *= orbit as u64;
        cells = fixed;
    }
    order
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    pub representative: Graph,
    pub size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsoClasses {
    /// Ordered by canonical representative.
    pub classes: Vec<IsoClass>,
    pub total: usize,
}

impl IsoClasses {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    /// Index of the class containing `g`, if any.
    pub fn class_of(&self, g: &Graph) -> Option<usize> {
        let canon = canonical_form(g).graph;
        self.classes
            .binary_search_by(|c| c.representative.cmp(&canon))
            .ok()
    }
}

pub fn isomorphism_classes<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> IsoClasses {
    let mut buckets: BTreeMap<Graph, usize> = BTreeMap::new();
    let mut total = 0;
    for g in graphs {
        *buckets.entry(canonical_form(g).graph).or_default() += 1;
        total += 1;
    }
    IsoClasses {
        classes: buckets
            .into_iter()
            .map(|(representative, size)| IsoClass {
                representative,
                size,
            })
            .collect(),
        total,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges.iter().copied()).unwrap()
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_automorphisms(h: &Graph) -> u64 {
        permutations(h.n())
            .iter()
            .filter(|p| h.relabel(p) == *h)
            .count() as u64
    }

    #[test]
    fn k4_relabelings_agree() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let c = canonical_form(&k4);
        for p in permutations(4) {
            assert_eq!(canonical_form(&k4.relabel(&p)).graph, c.graph);
        }
        assert_eq!(automorphism_count(&k4), 24);
    }

    #[test]
    fn paths_agree() {
        let a = g(3, &[(0, 1), (1, 2)]);
        let b = g(3, &[(2, 0), (0, 1)]);
        assert_eq!(canonical_form(&a).graph, canonical_form(&b).graph);
        assert!(are_isomorphic(&a, &b));
        assert!(!are_isomorphic(&a, &g(3, &[(0, 1), (2, 2)])));
    }

    #[test]
    fn relabeling_reproduces_canonical_graph() {
        let h = g(5, &[(0, 0), (0, 1), (0, 1), (1, 2), (3, 4), (2, 4)]);
        let c = canonical_form(&h);
        assert_eq!(h.relabel(&c.relabeling), c.graph);
    }

    #[test]
    fn classes_of_empty_input() {
        let c = isomorphism_classes(std::iter::empty());
        assert!(c.classes.is_empty());
        assert_eq!(c.total, 0);
    }

    #[test]
    fn loops_and_multiedges_distinguished() {
        let a = g(2, &[(0, 1), (0, 1)]);
        let b = g(2, &[(0, 0), (1, 1)]);
        let c = isomorphism_classes([&a, &b, &g(2, &[(1, 0), (0, 1)])]);
        assert_eq!(c.sizes().iter().sum::<usize>(), 3);
        assert_eq!(c.classes.len(), 2);
        assert_eq!(c.class_of(&b), c.class_of(&g(2, &[(1, 1), (0, 0)])));
    }

    #[test]
    fn symmetric_graphs() {
        // Petersen-like symmetric cases stress the orbit pruning
        let cycle8: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        let c8 = g(8, &cycle8);
        assert_eq!(automorphism_count(&c8), 16);
        let empty_ish = g(6, &[(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 5)]);
        assert_eq!(automorphism_count(&empty_ish), 720);
        let k33 = g(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        );
        assert_eq!(automorphism_count(&k33), brute_automorphisms(&k33));
    }

    fn arb_graph() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (1usize..7).prop_flat_map(|n| {
            (
                prop::collection::vec((0..n, 0..n), 0..12)
                    .prop_map(move |e| Graph::new(n, e).unwrap()),
                Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            )
        })
    }

    proptest! {
        #[test]
        fn canonical_form_is_relabeling_invariant((h, perm) in arb_graph()) {
            let a = canonical_form(&h);
            let b = canonical_form(&h.relabel(&perm));
            prop_assert_eq!(&a.graph, &b.graph);
            prop_assert_eq!(h.relabel(&a.relabeling), a.graph);
        }

        #[test]
        fn automorphism_count_matches_brute_force((h, _) in arb_graph()) {
            prop_assert_eq!(automorphism_count(&h), brute_automorphisms(&h));
        }
    }
}
