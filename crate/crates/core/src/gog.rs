//! Materialized graph of graphs: every labeled graph of a census is a vertex,
//! swap moves are edges, and components come from a disjoint-set union over
//! the swap adjacency.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::IsoClasses;
use crate::enumerate::{enumerate_capped, EnumFilter, GraphPredicate};
use crate::error::{Error, Result};
use crate::graph::{DegreeSequence, Graph, GraphSpace};
use crate::swap::k_swap_neighbors;

pub const DEFAULT_CENSUS_CAP: usize = 1_000_000;

pub struct GogSpec {
    pub space: GraphSpace,
    pub degseq: DegreeSequence,
    pub arity: usize,
    /// Restricts both the census and the accepted neighbours.
    pub keep: Option<Arc<GraphPredicate>>,
    pub census: Option<Vec<Graph>>,
    pub max_census: usize,
}

impl GogSpec {
    pub fn new(space: GraphSpace, degseq: DegreeSequence, arity: usize) -> Self {
        GogSpec {
            space,
            degseq,
            arity,
            keep: None,
            census: None,
            max_census: DEFAULT_CENSUS_CAP,
        }
    }

    pub fn keep(mut self, pred: impl Fn(&Graph) -> bool + Send + Sync + 'static) -> Self {
        self.keep = Some(Arc::new(pred));
        self
    }

    pub fn census(mut self, census: Vec<Graph>) -> Self {
        self.census = Some(census);
        self
    }

    pub fn max_census(mut self, cap: usize) -> Self {
        self.max_census = cap;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GogReport {
    /// Census in sorted order; vertex `i` of the gog is `graphs[i]`.
    pub graphs: Vec<Graph>,
    /// Component id per census graph, numbered by first member.
    pub component_of: Vec<usize>,
    pub component_count: usize,
    /// Component sizes in ascending order.
    pub component_sizes: Vec<usize>,
    /// Census graphs with no swap neighbour.
    pub frozen_count: usize,
    /// Number of undirected gog edges.
    pub edge_count: usize,
}

impl GogReport {
    pub fn vertex_count(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count <= 1
    }

    pub fn component_of_graph(&self, g: &Graph) -> Option<usize> {
        self.graphs
            .binary_search(g)
            .ok()
            .map(|i| self.component_of[i])
    }

    pub fn summary(&self, matrix: Option<Vec<Vec<bool>>>) -> GogSummary {
        GogSummary {
            vertices: self.vertex_count(),
            edges: self.edge_count,
            components: self.component_count,
            component_sizes: self.component_sizes.clone(),
            frozen_count: self.frozen_count,
            class_component_matrix: matrix,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GogSummary {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub component_sizes: Vec<usize>,
    pub frozen_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_component_matrix: Option<Vec<Vec<bool>>>,
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn build_gog(spec: &GogSpec) -> Result<GogReport> {
    let keep: Arc<GraphPredicate> = spec
        .keep
        .clone()
        .unwrap_or_else(|| Arc::new(|_: &Graph| true));
    let census = match &spec.census {
        Some(c) => {
            if c.len() > spec.max_census {
                return Err(Error::CensusTooLarge {
                    cap: spec.max_census,
                });
            }
            let mut c = c.clone();
            c.sort_unstable();
            c.dedup();
            for g in &c {
                if !spec.space.admits(g) || g.degrees() != spec.degseq.degrees() || !keep(g) {
                    return Err(Error::InvalidInput(
                        "census graph outside the specified space".into(),
                    ));
                }
            }
            c
        }
        None => {
            let filter = match &spec.keep {
                Some(k) => {
                    let k = Arc::clone(k);
                    EnumFilter::custom(move |g| k(g))
                }
                None => EnumFilter::none(),
            };
            enumerate_capped(spec.space, &spec.degseq, &filter, spec.max_census)?
        }
    };

    let adjacency: Vec<Vec<usize>> = census
        .par_iter()
        .map(|g| {
            k_swap_neighbors(g, spec.space, spec.arity, &*keep)?
                .iter()
                .map(|h| census.binary_search(h).map_err(|_| Error::CensusIncomplete))
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;

    let mut dsu = DisjointSet::new(census.len());
    let mut arcs = 0;
    for (i, nbrs) in adjacency.iter().enumerate() {
        arcs += nbrs.len();
        for &j in nbrs {
            dsu.union(i, j);
        }
    }

    let mut id_of_root = vec![usize::MAX; census.len()];
    let mut component_of = Vec::with_capacity(census.len());
    let mut sizes: Vec<usize> = Vec::new();
    for i in 0..census.len() {
        let r = dsu.find(i);
        if id_of_root[r] == usize::MAX {
            id_of_root[r] = sizes.len();
            sizes.push(0);
        }
        sizes[id_of_root[r]] += 1;
        component_of.push(id_of_root[r]);
    }
    let component_count = sizes.len();
    sizes.sort_unstable();

    Ok(GogReport {
        frozen_count: adjacency.iter().filter(|a| a.is_empty()).count(),
        edge_count: arcs / 2,
        graphs: census,
        component_of,
        component_count,
        component_sizes: sizes,
    })
}

/// `matrix[c][i]` is true iff component `c` contains a graph of class `i`.
pub fn components_intersect_classes(
    report: &GogReport,
    classes: &IsoClasses,
) -> Result<Vec<Vec<bool>>> {
    if classes.total != report.vertex_count() {
        return Err(Error::ClassMismatch(format!(
            "classes cover {} graphs but the census has {}",
            classes.total,
            report.vertex_count()
        )));
    }
    let mut matrix = vec![vec![false; classes.classes.len()]; report.component_count];
    for (g, &c) in report.graphs.iter().zip(&report.component_of) {
        let i = classes
            .class_of(g)
            .ok_or_else(|| Error::ClassMismatch("census graph belongs to no class".into()))?;
        matrix[c][i] = true;
    }
    Ok(matrix)
}
