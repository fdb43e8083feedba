//! Double edge-swap Markov chain with a uniform stationary distribution.
//!
//! Each step draws an unordered pair of edge instances uniformly from the
//! `C(m, 2)` choices and one of the two non-identity pairings. Invalid or
//! identity results hold the chain in place. Otherwise the move `g -> h` is
//! accepted with probability `min(1, deg(h, g) / deg(g, h))`, where `deg`
//! counts the proposals producing the target. The corrected kernel is
//! symmetric, so the uniform distribution on each connected component of the
//! graph of graphs is stationary.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, GraphSpace};
use crate::swap::{apply_double_swap, Pairing, SwapMove};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainConfig {
    pub space: GraphSpace,
    pub burn_in: u64,
    pub thin: u64,
    pub sample_count: usize,
    pub seed: u64,
}

impl ChainConfig {
    /// Heuristic defaults for `m` edge instances: burn-in `20 m ln m + 1000`
    /// steps and thinning `m`.
    pub fn with_defaults(space: GraphSpace, m: usize, sample_count: usize, seed: u64) -> Self {
        let mf = m.max(1) as f64;
        ChainConfig {
            space,
            burn_in: (20.0 * mf * mf.ln()).ceil() as u64 + 1000,
            thin: m.max(1) as u64,
            sample_count,
            seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState {
    pub current: Graph,
    pub steps_taken: u64,
    pub accepted: u64,
}

impl ChainState {
    pub fn new(g: Graph, space: GraphSpace) -> Result<Self> {
        if !space.admits(&g) {
            return Err(Error::InvalidInput(format!(
                "start graph is not valid in the {space} space"
            )));
        }
        Ok(ChainState {
            current: g,
            steps_taken: 0,
            accepted: 0,
        })
    }
}

/// Multiset difference `a - b` of two sorted edge lists.
fn sorted_difference(a: &[Edge], b: &[Edge]) -> Vec<Edge> {
    let (mut i, mut j) = (0, 0);
    let mut out = vec![];
    while i < a.len() {
        if j < b.len() && b[j] < a[i] {
            j += 1;
        } else if j < b.len() && b[j] == a[i] {
            i += 1;
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
        }
    }
    out
}

/// Number of (unordered instance pair, non-identity pairing) proposals on `g`
/// that produce `h`; zero when `h` is not one double swap away.
pub fn proposal_degeneracy(g: &Graph, h: &Graph) -> usize {
    if g.n() != h.n() || g.edge_count() != h.edge_count() || g == h {
        return 0;
    }
    let removed = sorted_difference(g.edges(), h.edges());
    let added = sorted_difference(h.edges(), g.edges());
    if removed.len() != 2 || added.len() != 2 {
        return 0;
    }
    let (e, f) = (removed[0], removed[1]);
    let pairings = Pairing::BOTH
        .into_iter()
        .filter(|p| {
            let (x, y) = p.rewire(e, f);
            let mut got = [x, y];
            got.sort_unstable();
            got[..] == added[..]
        })
        .count();
    let instance_pairs = if e == f {
        let c = g.multiplicity(e.0, e.1);
        c * (c - 1) / 2
    } else {
        g.multiplicity(e.0, e.1) * g.multiplicity(f.0, f.1)
    };
    instance_pairs * pairings
}

/// Metropolis-Hastings acceptance probability for the move `g -> h`.
pub fn acceptance_probability(g: &Graph, h: &Graph) -> f64 {
    let fwd = proposal_degeneracy(g, h);
    if fwd == 0 {
        return 0.0;
    }
    (proposal_degeneracy(h, g) as f64 / fwd as f64).min(1.0)
}

fn propose<R: Rng + ?Sized>(m: usize, rng: &mut R) -> SwapMove {
    let i = rng.gen_range(0..m);
    let mut j = rng.gen_range(0..m - 1);
    if j >= i {
        j += 1;
    }
    let pairing = if rng.gen::<bool>() {
        Pairing::CrossA
    } else {
        Pairing::CrossB
    };
    SwapMove::new(i.min(j), i.max(j), pairing)
}

/// One chain step. Always advances `steps_taken` by one.
pub fn step<R: Rng + ?Sized>(state: &mut ChainState, space: GraphSpace, rng: &mut R) {
    state.steps_taken += 1;
    let m = state.current.edge_count();
    if m < 2 {
        return;
    }
    let mv = propose(m, rng);
    let h = apply_double_swap(&state.current, mv).expect("proposal indices are in range");
    if h == state.current || !space.admits(&h) {
        return;
    }
    let fwd = proposal_degeneracy(&state.current, &h);
    let rev = proposal_degeneracy(&h, &state.current);
    if rev >= fwd || rng.gen_range(0..fwd) < rev {
        state.current = h;
        state.accepted += 1;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub edges: Vec<Edge>,
    pub step: u64,
}

impl Sample {
    pub fn graph(&self, n: usize) -> Graph {
        Graph::new(n, self.edges.iter().map(|e| (e.0, e.1))).expect("sample edges are in range")
    }
}

/// Seeded chain producing `cfg.sample_count` samples, one every `cfg.thin`
/// steps after `cfg.burn_in` steps. Deterministic per seed.
pub struct Sampler {
    state: ChainState,
    cfg: ChainConfig,
    rng: ChaCha8Rng,
    emitted: usize,
    burned: bool,
}

impl Sampler {
    pub fn new(g0: Graph, cfg: ChainConfig) -> Result<Self> {
        if cfg.thin == 0 {
            return Err(Error::InvalidInput("thin must be at least 1".into()));
        }
        Ok(Sampler {
            state: ChainState::new(g0, cfg.space)?,
            cfg,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            emitted: 0,
            burned: false,
        })
    }

    pub fn state(&self) -> &ChainState {
        &self.state
    }
}

impl Iterator for Sampler {
    type Item = Sample;

    fn next(&mut self) -> Option<Sample> {
        if self.emitted == self.cfg.sample_count {
            return None;
        }
        if !self.burned {
            for _ in 0..self.cfg.burn_in {
                step(&mut self.state, self.cfg.space, &mut self.rng);
            }
            self.burned = true;
        }
        for _ in 0..self.cfg.thin {
            step(&mut self.state, self.cfg.space, &mut self.rng);
        }
        self.emitted += 1;
        Some(Sample {
            edges: self.state.current.edges().to_vec(),
            step: self.state.steps_taken,
        })
    }
}

pub fn sample(g0: &Graph, cfg: &ChainConfig) -> Result<Vec<Graph>> {
    Ok(Sampler::new(g0.clone(), *cfg)?
        .map(|s| s.graph(g0.n()))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct UniformityReport {
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
}

/// Pearson chi-square test of the sample counts against the uniform
/// distribution over `census`.
pub fn uniformity_report(samples: &[Graph], census: &[Graph]) -> Result<UniformityReport> {
    let index: HashMap<&Graph, usize> = census.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut counts = vec![0u64; census.len()];
    for s in samples {
        counts[*index.get(s).ok_or(Error::SampleOutsideCensus)?] += 1;
    }
    Ok(chi_square_uniform(&counts))
}

pub fn chi_square_uniform(counts: &[u64]) -> UniformityReport {
    let k = counts.len();
    let total: u64 = counts.iter().sum();
    if k < 2 || total == 0 {
        return UniformityReport {
            statistic: 0.0,
            degrees_of_freedom: k.saturating_sub(1),
            p_value: 1.0,
        };
    }
    let expected = total as f64 / k as f64;
    let statistic: f64 = counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum();
    let df = k - 1;
    let dist = ChiSquared::new(df as f64).expect("positive degrees of freedom");
    UniformityReport {
        statistic,
        degrees_of_freedom: df,
        p_value: dist.sf(statistic),
    }
}
