use std::collections::BTreeSet;

use edgeswap_core::{
    automorphism_count, canonical_form, count_graphs, enumerate_graphs, isomorphism_classes,
    DegreeSequence, EnumFilter, Graph, GraphSpace, TriangleSequence,
};

/// Every multiset over the n(n+1)/2 vertex pairs, kept when degrees match
/// and the space admits it.
fn naive_census(s: GraphSpace, d: &[usize]) -> BTreeSet<Graph> {
    let n = d.len();
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut out = BTreeSet::new();
    let mut mult = vec![0usize; slots.len()];
    fn rec(
        i: usize,
        slots: &[(usize, usize)],
        mult: &mut Vec<usize>,
        left: &mut Vec<usize>,
        s: GraphSpace,
        n: usize,
        out: &mut BTreeSet<Graph>,
    ) {
        if i == slots.len() {
            if left.iter().all(|&r| r == 0) {
                let edges = slots
                    .iter()
                    .zip(mult.iter())
                    .flat_map(|(&e, &m)| std::iter::repeat_n(e, m));
                let g = Graph::new(n, edges).unwrap();
                if s.admits(&g) {
                    out.insert(g);
                }
            }
            return;
        }
        let (a, b) = slots[i];
        let cost = |m: usize| if a == b { 2 * m } else { m };
        let mut m = 0;
        loop {
            let ok = if a == b {
                left[a] >= cost(m)
            } else {
                left[a] >= m && left[b] >= m
            };
            if !ok {
                break;
            }
            left[a] -= cost(m);
            if a != b {
                left[b] -= m;
            }
            mult[i] = m;
            rec(i + 1, slots, mult, left, s, n, out);
            left[a] += cost(m);
            if a != b {
                left[b] += m;
            }
            m += 1;
        }
        mult[i] = 0;
    }
    let mut left = d.to_vec();
    rec(0, &slots, &mut mult, &mut left, s, n, &mut out);
    out
}

fn sequences(max_n: usize, max_deg: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max_deg: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            if prefix.iter().sum::<usize>() % 2 == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for d in 1..=max_deg {
            prefix.push(d);
            rec(n, max_deg, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    for n in 1..=max_n {
        rec(n, max_deg, &mut vec![], &mut out);
    }
    out
}

#[test]
fn enumeration_matches_naive_oracle_in_all_spaces() {
    // all labeled sequences up to n = 4, then non-increasing ones at n = 5
    let mut seqs = sequences(4, 4);
    seqs.extend(
        sequences(5, 4)
            .into_iter()
            .filter(|d| d.len() == 5 && d.windows(2).all(|w| w[0] >= w[1])),
    );
    let mut checked = 0;
    for d in &seqs {
        let ds = DegreeSequence::new(d.clone()).unwrap();
        for s in GraphSpace::ALL {
            let fast = enumerate_graphs(s, &ds, &EnumFilter::none()).unwrap();
            let oracle: Vec<Graph> = naive_census(s, d).into_iter().collect();
            assert_eq!(fast, oracle, "{s} {d:?}");
            assert_eq!(
                count_graphs(s, &ds, &EnumFilter::none()).unwrap(),
                oracle.len() as u64
            );
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn triangle_filters_agree_with_post_filtering() {
    for d in [
        vec![3, 3, 2, 2, 2],
        vec![3, 3, 3, 3, 2, 2],
        vec![4, 3, 3, 2, 2, 2],
        vec![2, 2, 2, 2, 2, 2],
    ] {
        let ds = DegreeSequence::new(d.clone()).unwrap();
        let all = enumerate_graphs(GraphSpace::SIMPLE, &ds, &EnumFilter::none()).unwrap();
        for t in 0..5 {
            let filtered =
                enumerate_graphs(GraphSpace::SIMPLE, &ds, &EnumFilter::triangles(t)).unwrap();
            let post: Vec<Graph> = all
                .iter()
                .filter(|g| g.triangle_count().unwrap() == t)
                .cloned()
                .collect();
            assert_eq!(filtered, post, "{d:?} t={t}");
        }
        let seqs: BTreeSet<TriangleSequence> =
            all.iter().map(|g| g.triangle_sequence().unwrap()).collect();
        for ts in seqs {
            let filtered = enumerate_graphs(
                GraphSpace::SIMPLE,
                &ds,
                &EnumFilter::triangle_sequence(ts.clone()),
            )
            .unwrap();
            let post: Vec<Graph> = all
                .iter()
                .filter(|g| g.triangle_sequence().unwrap() == ts)
                .cloned()
                .collect();
            assert_eq!(filtered, post, "{d:?} {ts}");
        }
    }
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[test]
fn class_size_times_automorphisms_is_n_factorial() {
    let cases: [(GraphSpace, &[usize]); 5] = [
        (GraphSpace::SIMPLE, &[3, 3, 2, 2, 2, 2]),
        (GraphSpace::SIMPLE, &[2, 2, 2, 2, 2, 2, 2, 2]),
        (GraphSpace::PSEUDOGRAPH, &[2, 2, 2, 2]),
        (GraphSpace::MULTILOOP_GRAPH, &[3, 3, 2, 2, 1, 1]),
        (GraphSpace::LOOPY_MULTIGRAPH, &[4, 3, 2, 2, 1]),
    ];
    for (s, d) in cases {
        let n = d.len();
        let census = enumerate_graphs(
            s,
            &DegreeSequence::new(d.to_vec()).unwrap(),
            &EnumFilter::none(),
        )
        .unwrap();
        // a census class is an orbit under degree-preserving relabelings
        let mut runs = std::collections::BTreeMap::new();
        for &x in d {
            *runs.entry(x).or_insert(0usize) += 1;
        }
        let group: u64 = runs.values().map(|&c| factorial(c)).product();
        let classes = isomorphism_classes(&census);
        for class in &classes.classes {
            let rep = &class.representative;
            let aut = automorphism_count(rep);
            assert_eq!(class.size as u64 * aut, group, "{s} {d:?}");
            assert_eq!(n_relabelings(rep) as u64 * aut, factorial(n), "{s} {d:?}");
        }
        assert_eq!(classes.total, census.len());
    }
}

fn n_relabelings(g: &Graph) -> usize {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    perms(g.n())
        .iter()
        .map(|p| g.relabel(p))
        .collect::<BTreeSet<_>>()
        .len()
}

#[test]
fn regular_class_sizes_are_full_orbits() {
    // a regular sequence is relabeling invariant, so class size * |Aut| = n!
    for d in [vec![2; 6], vec![3; 6], vec![2; 7]] {
        let n = d.len();
        let census = enumerate_graphs(
            GraphSpace::SIMPLE,
            &DegreeSequence::new(d.clone()).unwrap(),
            &EnumFilter::none(),
        )
        .unwrap();
        for class in isomorphism_classes(&census).classes {
            assert_eq!(
                class.size as u64 * automorphism_count(&class.representative),
                factorial(n),
                "{d:?}"
            );
        }
    }
}

#[test]
fn canonical_forms_separate_classes_like_brute_force() {
    let d = DegreeSequence::new(vec![3, 3, 2, 2, 2, 2]).unwrap();
    let census = enumerate_graphs(GraphSpace::SIMPLE, &d, &EnumFilter::none()).unwrap();
    let reps: Vec<Graph> = census.iter().step_by(7).cloned().collect();
    for a in &reps {
        for b in &reps {
            let brute = n_relabelings_contains(a, b);
            assert_eq!(canonical_form(a).graph == canonical_form(b).graph, brute);
        }
    }
}

fn n_relabelings_contains(a: &Graph, b: &Graph) -> bool {
    fn rec(a: &Graph, b: &Graph, perm: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if perm.len() == a.n() {
            return a.relabel(perm) == *b;
        }
        for v in 0..a.n() {
            if !used[v] {
                used[v] = true;
                perm.push(v);
                if rec(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[v] = false;
            }
        }
        false
    }
    rec(a, b, &mut vec![], &mut vec![false; a.n()])
}
