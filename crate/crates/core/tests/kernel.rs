use std::collections::{BTreeMap, HashMap};

use edgeswap_core::swap::double_swap_proposals;
use edgeswap_core::{
    acceptance_probability, apply_double_swap, build_gog, double_swap_neighbors, enumerate_graphs,
    proposal_degeneracy, step, ChainState, DegreeSequence, EnumFilter, GogSpec, Graph, GraphSpace,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Exact one-step transition row of the chain from `g`, computed by walking
/// every proposal and counting degeneracies without the library helper.
fn exact_row(g: &Graph, s: GraphSpace) -> BTreeMap<Graph, f64> {
    let m = g.edge_count();
    let total = (m * (m - 1)) as f64; // C(m,2) pairs times 2 pairings
    let outcomes = |x: &Graph| {
        let mut c: HashMap<Graph, usize> = HashMap::new();
        for mv in double_swap_proposals(x.edge_count()) {
            *c.entry(apply_double_swap(x, mv).unwrap()).or_default() += 1;
        }
        c
    };
    let fwd = outcomes(g);
    let mut row = BTreeMap::new();
    let mut moved = 0.0;
    for (h, &k) in &fwd {
        if h == g || !s.admits(h) {
            continue;
        }
        let back = outcomes(h).get(g).copied().unwrap_or(0);
        let p = k as f64 / total * (back as f64 / k as f64).min(1.0);
        moved += p;
        row.insert(h.clone(), p);
    }
    row.insert(g.clone(), 1.0 - moved);
    row
}

fn small_spaces() -> Vec<(GraphSpace, Vec<usize>)> {
    let seqs: [&[usize]; 7] = [
        &[2, 2, 2, 2],
        &[3, 2, 2, 1],
        &[2, 2, 1, 1],
        &[3, 3, 2, 2, 2],
        &[4, 2, 2],
        &[2, 2, 2, 1, 1],
        &[3, 3, 3, 3],
    ];
    let mut out = vec![];
    for d in seqs {
        for s in GraphSpace::ALL {
            let n = enumerate_graphs(
                s,
                &DegreeSequence::new(d.to_vec()).unwrap(),
                &EnumFilter::none(),
            )
            .unwrap()
            .len();
            if (2..=50).contains(&n) {
                out.push((s, d.to_vec()));
            }
        }
    }
    out
}

#[test]
fn kernel_is_symmetric_on_small_spaces() {
    let spaces = small_spaces();
    assert!(spaces.len() >= 10);
    for (s, d) in spaces {
        let census = enumerate_graphs(
            s,
            &DegreeSequence::new(d.clone()).unwrap(),
            &EnumFilter::none(),
        )
        .unwrap();
        let rows: Vec<BTreeMap<Graph, f64>> = census.iter().map(|g| exact_row(g, s)).collect();
        for (i, g) in census.iter().enumerate() {
            let sum: f64 = rows[i].values().sum();
            assert!((sum - 1.0).abs() < 1e-12);
            for (h, &p) in &rows[i] {
                let j = census
                    .binary_search(h)
                    .expect("chain stays inside the census");
                let q = rows[j].get(g).copied().unwrap_or(0.0);
                assert!((p - q).abs() < 1e-12, "{s} {d:?}: P(g,h)={p} P(h,g)={q}");
                if h != g {
                    let m = g.edge_count();
                    let lib = proposal_degeneracy(g, h) as f64 / (m * (m - 1)) as f64
                        * acceptance_probability(g, h);
                    assert!((lib - p).abs() < 1e-12);
                }
            }
            let nbrs = double_swap_neighbors(g, s).unwrap();
            let moves: Vec<&Graph> = rows[i].keys().filter(|h| *h != g).collect();
            assert_eq!(moves, nbrs.iter().collect::<Vec<_>>());
        }
    }
}

#[test]
fn uniform_is_the_unique_stationary_law_on_connected_spaces() {
    for (s, d) in small_spaces() {
        let r = build_gog(&GogSpec::new(s, DegreeSequence::new(d.clone()).unwrap(), 2)).unwrap();
        if !r.is_connected() {
            continue;
        }
        let census = &r.graphs;
        let k = census.len();
        // power-iterate from a point mass
        let rows: Vec<BTreeMap<Graph, f64>> = census.iter().map(|g| exact_row(g, s)).collect();
        let mut pi = vec![0.0; k];
        pi[0] = 1.0;
        for _ in 0..5000 {
            let mut next = vec![0.0; k];
            for (i, row) in rows.iter().enumerate() {
                for (h, p) in row {
                    next[census.binary_search(h).unwrap()] += pi[i] * p;
                }
            }
            pi = next;
        }
        for p in &pi {
            assert!((p - 1.0 / k as f64).abs() < 1e-6, "{s} {d:?}");
        }
    }
}

#[test]
fn step_frequencies_match_exact_row() {
    let s = GraphSpace::PSEUDOGRAPH;
    let g = Graph::new(4, [(0, 0), (0, 1), (1, 2), (2, 3), (3, 3)]).unwrap();
    let row = exact_row(&g, s);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let trials = 200_000;
    let mut seen: BTreeMap<Graph, u64> = BTreeMap::new();
    for _ in 0..trials {
        let mut st = ChainState::new(g.clone(), s).unwrap();
        step(&mut st, s, &mut rng);
        *seen.entry(st.current).or_default() += 1;
    }
    for (h, p) in &row {
        let got = *seen.get(h).unwrap_or(&0) as f64 / trials as f64;
        let sd = (p * (1.0 - p) / trials as f64).sqrt();
        assert!((got - p).abs() < 5.0 * sd + 1e-9, "expected {p}, got {got}");
    }
    assert!(seen.keys().all(|h| row.contains_key(h)));
}
