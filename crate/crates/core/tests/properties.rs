//! Randomized invariants over the public API. These complement the oracle
//! tests: instead of checking values, they check the relations that must
//! hold for every input the generators can produce.

use proptest::prelude::*;

use epitrace_core::metrics::{
    distance_summary, eigenvector_centrality, giant_component, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use epitrace_core::nullmodel::{cm_directed, cm_undirected, cm_undirected_strict};
use epitrace_core::stats::dpl_fit;
use epitrace_core::synth::synth_planted_temporal;
use epitrace_core::{
    clustering, DetectionMethod, EdgeRecord, Group, Snapshot, TemporalGraph, VertexRecord,
};

fn vertex(i: usize, detect_day: i64) -> VertexRecord {
    VertexRecord {
        id: format!("v{i:03}"),
        detect_day,
        group: Group::ALL[i % Group::ALL.len()],
        method: DetectionMethod::ALL[i % DetectionMethod::ALL.len()],
        province: format!("P{:02}", i % 5),
        infect_day: (i % 3 == 0).then(|| detect_day - 400),
        age: (i % 4 != 1).then(|| 20.0 + (i % 40) as f64),
        contacts_declared: Some((i % 7) as u32),
        contacts_tested: (i % 2 == 0).then(|| (i % 5) as u32),
        contacts_positive: None,
    }
}

/// Normalize raw pairs into simple undirected edges on `n` vertices.
fn simple_edges(n: usize, raw: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = raw
        .iter()
        .map(|&(u, v)| (u % n, v % n))
        .filter(|&(u, v)| u != v)
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

fn graph_from(n: usize, detect_days: &[i64], raw_edges: &[(usize, usize)]) -> TemporalGraph {
    let vertices: Vec<VertexRecord> =
        (0..n).map(|i| vertex(i, detect_days[i % detect_days.len()])).collect();
    // Give every third edge an infection arc, but never a second infector
    // for the same target: the loader rejects those.
    let mut infected = vec![false; n];
    let edges: Vec<EdgeRecord> = simple_edges(n, raw_edges)
        .into_iter()
        .enumerate()
        .map(|(k, (u, v))| {
            if k % 3 == 0 && !infected[v] {
                infected[v] = true;
                EdgeRecord::infectious(
                    vertices[u].id.clone(),
                    vertices[v].id.clone(),
                    epitrace_core::InfectionDirection::AToB,
                )
            } else {
                EdgeRecord::new(vertices[u].id.clone(), vertices[v].id.clone())
            }
        })
        .collect();
    TemporalGraph::new(vertices, edges).expect("generated graphs are valid")
}

proptest! {
    #[test]
    fn snapshots_grow_monotonically(
        n in 2usize..40,
        days in proptest::collection::vec(0i64..500, 2..40),
        raw in proptest::collection::vec((0usize..40, 0usize..40), 0..120),
        t1 in -10i64..520,
        dt in 0i64..200,
    ) {
        let g = graph_from(n, &days, &raw);
        let t2 = t1 + dt;
        let (s1, s2) = (g.snapshot_at(t1), g.snapshot_at(t2));
        prop_assert!(s1.vertex_count() <= s2.vertex_count());
        prop_assert!(s1.edge_count() <= s2.edge_count());
        prop_assert!(s1.arcs().len() <= s2.arcs().len());
        for i in 0..s1.vertex_count() {
            // Everything visible early is still there later, by the same id.
            prop_assert!(s2.index_of(s1.id(i)).is_some());
        }
        // The full-horizon snapshot carries every record.
        let all = g.snapshot_at(i64::MAX);
        prop_assert_eq!(all.vertex_count(), g.vertex_count());
        prop_assert_eq!(all.edge_count(), g.edge_count());
    }

    #[test]
    fn csv_round_trip_preserves_the_graph(
        n in 2usize..30,
        days in proptest::collection::vec(0i64..500, 2..30),
        raw in proptest::collection::vec((0usize..30, 0usize..30), 0..60),
    ) {
        let g = graph_from(n, &days, &raw);
        let dir = tempfile::tempdir().expect("tempdir");
        let vp = dir.path().join("vertices.csv");
        let ep = dir.path().join("edges.csv");
        g.write(&vp, &ep).expect("write");
        let back = TemporalGraph::load(&vp, &ep).expect("load");
        prop_assert_eq!(g.vertices(), back.vertices());
        prop_assert_eq!(g.edges(), back.edges());
    }

    #[test]
    fn new_edges_inside_the_giant_never_stretch_distances(
        n in 3usize..40,
        raw in proptest::collection::vec((0usize..40, 0usize..40), 2..80),
        pick in any::<proptest::sample::Index>(),
    ) {
        let edges = simple_edges(n, &raw);
        prop_assume!(!edges.is_empty());
        let giant = giant_component(&Snapshot::from_edges(0, n, &edges)).unwrap();
        let gn = giant.vertex_count();
        let missing: Vec<(usize, usize)> = (0..gn)
            .flat_map(|u| ((u + 1)..gn).map(move |v| (u, v)))
            .filter(|&(u, v)| !giant.neighbors(u).contains(&v))
            .collect();
        prop_assume!(!missing.is_empty());
        let mut denser: Vec<(usize, usize)> = giant.edges().to_vec();
        denser.push(*pick.get(&missing));
        denser.sort_unstable();
        let after = Snapshot::from_edges(0, gn, &denser);

        let q = 0.9;
        let (before, after) =
            (distance_summary(&giant, q).unwrap(), distance_summary(&after, q).unwrap());
        // The giant is connected, so the pair set is fixed and a new edge can
        // only shorten paths.
        prop_assert_eq!(before.connected_pairs, after.connected_pairs);
        prop_assert!(after.diameter <= before.diameter);
        prop_assert!(after.effective_diameter <= before.effective_diameter);
        prop_assert!(after.avg_geodesic <= before.avg_geodesic);
        prop_assert!(after.mean_connected <= before.mean_connected);
        prop_assert!(after.harmonic_geodesic <= before.harmonic_geodesic);
    }

    #[test]
    fn eigenvector_scores_follow_vertex_relabeling(
        n in 2usize..30,
        raw in proptest::collection::vec((0usize..30, 0usize..30), 1..60),
        perm_seed in any::<u64>(),
    ) {
        let edges = simple_edges(n, &raw);
        prop_assume!(!edges.is_empty());
        let s = Snapshot::from_edges(0, n, &edges);

        // Fisher-Yates off a splitmix-style walk; any bijection works.
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = perm_seed | 1;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let relabeled: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| (perm[u].min(perm[v]), perm[u].max(perm[v])))
            .collect();
        let s2 = Snapshot::from_edges(0, n, &relabeled);

        let r1 = eigenvector_centrality(&s, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let r2 = eigenvector_centrality(&s2, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        prop_assert!((r1.eigenvalue - r2.eigenvalue).abs() <= 1e-8);
        for v in 0..n {
            prop_assert!(
                (r1.scores[v] - r2.scores[perm[v]]).abs() <= 1e-8,
                "vertex {} scored {} vs {}", v, r1.scores[v], r2.scores[perm[v]]
            );
        }
    }

    #[test]
    fn configuration_model_draws_respect_their_targets(
        degrees in proptest::collection::vec(0usize..8, 2..40),
        seed in any::<u64>(),
    ) {
        let mut degrees = degrees;
        if degrees.iter().sum::<usize>() % 2 == 1 {
            degrees[0] += 1;
        }
        let erased = cm_undirected(&degrees, seed).unwrap();
        for (v, &target) in degrees.iter().enumerate() {
            prop_assert!(erased.degree(v) <= target);
        }
        if let Ok(strict) = cm_undirected_strict(&degrees, seed) {
            for (v, &target) in degrees.iter().enumerate() {
                prop_assert_eq!(strict.degree(v), target);
            }
        }
    }

    #[test]
    fn directed_draws_bound_both_degree_sequences(
        out_deg in proptest::collection::vec(0usize..5, 2..40),
        rotate in 0usize..40,
        seed in any::<u64>(),
    ) {
        // In-degrees are a rotation of the out-degrees, so the sums match,
        // which the sampler requires.
        let n = out_deg.len();
        let in_deg: Vec<usize> = (0..n).map(|v| out_deg[(v + rotate) % n]).collect();
        let s = cm_directed(&in_deg, &out_deg, seed).unwrap();
        let mut got_in = vec![0usize; n];
        let mut got_out = vec![0usize; n];
        for &(f, t) in s.arcs() {
            got_out[f] += 1;
            got_in[t] += 1;
        }
        for v in 0..n {
            prop_assert!(got_in[v] <= in_deg[v]);
            prop_assert!(got_out[v] <= out_deg[v]);
        }
    }

    #[test]
    fn densification_slope_ignores_common_rescaling(
        points in proptest::collection::vec((1usize..10_000, 1usize..10_000), 3..25),
        scale_v in 2usize..40,
        scale_e in 2usize..40,
    ) {
        let distinct = points.iter().map(|p| p.0).collect::<std::collections::BTreeSet<_>>();
        prop_assume!(distinct.len() >= 2);
        let series: Vec<(i64, usize, usize)> =
            points.iter().enumerate().map(|(i, &(v, e))| (i as i64, v, e)).collect();
        let scaled: Vec<(i64, usize, usize)> =
            series.iter().map(|&(d, v, e)| (d, v * scale_v, e * scale_e)).collect();
        let a = dpl_fit(&series, 5).unwrap();
        let b = dpl_fit(&scaled, 5).unwrap();
        prop_assert!(
            (a.fit.slope - b.fit.slope).abs() <= 1e-7,
            "slope {} became {}", a.fit.slope, b.fit.slope
        );
    }

    #[test]
    fn nmi_ignores_label_names_and_is_one_on_itself(
        (labels, other) in (1usize..60).prop_flat_map(|len| (
            proptest::collection::vec(0usize..6, len),
            proptest::collection::vec(0usize..6, len),
        )),
        offset in 1usize..100,
    ) {
        let renamed: Vec<usize> = labels.iter().map(|&l| (l + offset) * 7).collect();
        let direct = clustering::nmi(&labels, &other).unwrap();
        let via_rename = clustering::nmi(&renamed, &other).unwrap();
        prop_assert!((direct - via_rename).abs() <= 1e-12);
        let with_self = clustering::nmi(&labels, &labels).unwrap();
        prop_assert!((with_self - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn planted_generator_is_seed_deterministic(seed in any::<u64>()) {
        let (g1, l1) = synth_planted_temporal(3, 8, 0.5, 0.1, 30, 200, seed).unwrap();
        let (g2, l2) = synth_planted_temporal(3, 8, 0.5, 0.1, 30, 200, seed).unwrap();
        prop_assert_eq!(g1.vertices(), g2.vertices());
        prop_assert_eq!(g1.edges(), g2.edges());
        prop_assert_eq!(l1, l2);
    }
}
