//! Oracle-backed gates over the public battery. Every test here checks the
//! library against an independent reimplementation (all-pairs matrices,
//! literal path enumeration, exhaustive partition search) or against values
//! that can be derived by hand, and the expensive ones also gate runtime.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

use rand::Rng;
use rand_distr::StandardNormal;

use epitrace_core::clustering::{cluster_giant, modularity, nmi};
use epitrace_core::metrics::{
    distance_summary, edge_betweenness, eigenvector_centrality, giant_component, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
use epitrace_core::nullmodel::{cm_undirected, cm_undirected_strict, ensemble_compare, EnsembleMetric};
use epitrace_core::report::{run_battery, BatteryConfig};
use epitrace_core::rng::{derive_seed, rng_from_seed};
use epitrace_core::stats::{chow_scan, dpl_fit, mc_cluster_randomization, mc_edge_subset};
use epitrace_core::synth::{synth_epidemic, synth_planted_temporal, SynthConfig};
use epitrace_core::{Error, Snapshot};

// ---------------------------------------------------------------------------
// Shared graph generator
// ---------------------------------------------------------------------------

/// Random simple graph on `n` vertices with `round(density * n)` edges,
/// sampled as distinct unordered pairs.
fn random_graph(n: usize, density: f64, seed: u64) -> Snapshot {
    let mut rng = rng_from_seed(seed);
    let max_edges = n * (n - 1) / 2;
    let m = ((density * n as f64).round() as usize).min(max_edges);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    while edges.len() < m {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let edges: Vec<(usize, usize)> = edges.into_iter().collect();
    Snapshot::from_edges(0, n, &edges)
}

fn sized_random_graph(n_max: usize, seed: u64) -> Snapshot {
    let mut rng = rng_from_seed(derive_seed(seed, &[0]));
    let n = rng.random_range(2..=n_max);
    let density = rng.random_range(0.5..3.0);
    random_graph(n, density, derive_seed(seed, &[1]))
}

// ---------------------------------------------------------------------------
// Distance oracle: Floyd-Warshall all-pairs matrix
// ---------------------------------------------------------------------------

const FW_INF: u32 = u32::MAX / 2;

fn floyd_warshall(s: &Snapshot) -> Vec<Vec<u32>> {
    let n = s.vertex_count();
    let mut d = vec![vec![FW_INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in s.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            let dik = d[i][k];
            if dik >= FW_INF {
                continue;
            }
            for j in 0..n {
                let alt = dik + d[k][j];
                if alt < d[i][j] {
                    d[i][j] = alt;
                }
            }
        }
    }
    d
}

/// Unordered-pair distance counts from a full distance matrix; index 0 is
/// always present and zero.
fn pair_histogram(d: &[Vec<u32>]) -> Vec<u64> {
    let n = d.len();
    let mut hist = vec![0u64];
    for i in 0..n {
        for j in (i + 1)..n {
            let dij = d[i][j];
            if dij >= FW_INF {
                continue;
            }
            let dij = dij as usize;
            if hist.len() <= dij {
                hist.resize(dij + 1, 0);
            }
            hist[dij] += 1;
        }
    }
    hist
}

struct OracleSummary {
    diameter: usize,
    effective_diameter: usize,
    avg_geodesic: f64,
    mean_connected: f64,
    harmonic_geodesic: f64,
    connected_pairs: u64,
    g_table: Vec<f64>,
    hop_plot: Vec<u64>,
    distance_histogram: Vec<u64>,
}

/// Battery from the unordered-pair histogram. All floats are fixed-order
/// functions of exact integers, so values must agree with the library bit
/// for bit, not merely within tolerance.
fn oracle_summary(n: usize, mut histogram: Vec<u64>, q: f64) -> OracleSummary {
    while histogram.len() > 1 && *histogram.last().unwrap() == 0 {
        histogram.pop();
    }
    let connected_pairs: u64 = histogram.iter().sum();
    let nf = n as f64;
    let norm = nf * (nf + 1.0);

    if connected_pairs == 0 {
        return OracleSummary {
            diameter: 0,
            effective_diameter: 0,
            avg_geodesic: 0.0,
            mean_connected: 0.0,
            harmonic_geodesic: f64::INFINITY,
            connected_pairs: 0,
            g_table: Vec::new(),
            hop_plot: vec![n as u64],
            distance_histogram: vec![0],
        };
    }

    let diameter = histogram.len() - 1;
    let mut cum = 0u64;
    let mut g_table = Vec::with_capacity(diameter + 1);
    let mut hop_plot = Vec::with_capacity(diameter + 1);
    let mut effective_diameter = None;
    let mut dist_sum: u128 = 0;
    let mut recip_sum = 0.0f64;
    for (d, &count) in histogram.iter().enumerate() {
        cum += count;
        g_table.push(cum as f64 / connected_pairs as f64);
        hop_plot.push(n as u64 + 2 * cum);
        if effective_diameter.is_none() && cum as f64 >= q * connected_pairs as f64 {
            effective_diameter = Some(d);
        }
        if d > 0 {
            dist_sum += d as u128 * count as u128;
            recip_sum += count as f64 * (d as f64).recip();
        }
    }

    OracleSummary {
        diameter,
        effective_diameter: effective_diameter.unwrap_or(diameter),
        avg_geodesic: 2.0 * dist_sum as f64 / norm,
        mean_connected: dist_sum as f64 / connected_pairs as f64,
        harmonic_geodesic: norm / (2.0 * recip_sum),
        connected_pairs,
        g_table,
        hop_plot,
        distance_histogram: histogram,
    }
}

#[test]
fn distance_battery_matches_all_pairs_oracle() {
    let start = Instant::now();
    let mut largest = 0;
    for i in 0..100u64 {
        let s = sized_random_graph(200, derive_seed(0xD157, &[i]));
        largest = largest.max(s.vertex_count());
        let hist = pair_histogram(&floyd_warshall(&s));
        for q in [0.5, 0.9, 1.0] {
            let lib = distance_summary(&s, q).unwrap();
            let oracle = oracle_summary(s.vertex_count(), hist.clone(), q);
            let tag = format!("graph {i}, q {q}");
            assert_eq!(lib.diameter, oracle.diameter, "{tag}");
            assert_eq!(lib.effective_diameter, oracle.effective_diameter, "{tag}");
            assert_eq!(lib.connected_pairs, oracle.connected_pairs, "{tag}");
            assert_eq!(lib.distance_histogram, oracle.distance_histogram, "{tag}");
            assert_eq!(lib.g_table, oracle.g_table, "{tag}");
            assert_eq!(lib.hop_plot, oracle.hop_plot, "{tag}");
            assert_eq!(lib.avg_geodesic, oracle.avg_geodesic, "{tag}");
            assert_eq!(lib.mean_connected, oracle.mean_connected, "{tag}");
            assert_eq!(lib.harmonic_geodesic, oracle.harmonic_geodesic, "{tag}");
        }
    }
    let elapsed = start.elapsed();
    println!("distance oracle: 100 graphs up to {largest} vertices, 3 quantiles, {elapsed:?}");
    assert!(elapsed < Duration::from_secs(30), "took {elapsed:?}");
}

#[test]
fn effective_diameter_at_full_quantile_is_the_diameter() {
    for i in 0..100u64 {
        let s = sized_random_graph(200, derive_seed(0xD157, &[i]));
        let d = distance_summary(&s, 1.0).unwrap();
        assert_eq!(d.effective_diameter, d.diameter, "graph {i}");
    }
    println!("effective diameter at q = 1 equals the diameter on all 100 graphs");
}

// ---------------------------------------------------------------------------
// Eigenvector centrality
// ---------------------------------------------------------------------------

#[test]
fn eigenvector_centrality_is_tight_on_giants_and_known_shapes() {
    let mut worst = 0.0f64;
    for i in 0..20u64 {
        let s = sized_random_graph(200, derive_seed(0xE165, &[i]));
        let g = giant_component(&s).unwrap();
        let r = eigenvector_centrality(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(r.converged, "graph {i} did not converge");
        assert!(r.residual <= 1e-8, "graph {i} residual {}", r.residual);
        worst = worst.max(r.residual);
    }

    // 3-path plus an isolated vertex: the center outweighs a leaf by exactly
    // sqrt(2), and the isolated vertex scores exactly zero.
    let s = Snapshot::from_edges(0, 4, &[(0, 1), (1, 2)]);
    let r = eigenvector_centrality(&s, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    assert!(r.residual <= 1e-8);
    let ratio = r.scores[1] / r.scores[0];
    assert!((ratio - 2.0f64.sqrt()).abs() <= 1e-6, "center/leaf ratio {ratio}");
    assert_eq!(r.scores[0], r.scores[2]);
    assert_eq!(r.scores[3], 0.0);
    println!("eigenvector: worst giant residual {worst:.3e}, path ratio {ratio:.9}");
}

// ---------------------------------------------------------------------------
// Edge betweenness oracle: literal shortest-path enumeration
// ---------------------------------------------------------------------------

fn bfs_dists(adj: &[Vec<usize>], src: usize) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    dist[src] = 0;
    let mut queue = vec![src];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &v in &adj[u] {
            if dist[v] == u32::MAX {
                dist[v] = dist[u] + 1;
                queue.push(v);
            }
        }
    }
    dist
}

/// Walk every shortest path from `u` to `t`, recording edge occurrences and
/// the path count.
#[allow(clippy::too_many_arguments)]
fn walk_paths(
    adj: &[Vec<usize>],
    ds: &[u32],
    dt: &[u32],
    total: u32,
    u: usize,
    t: usize,
    path: &mut Vec<(usize, usize)>,
    occurrences: &mut HashMap<(usize, usize), u64>,
    sigma: &mut u64,
) {
    if u == t {
        *sigma += 1;
        for &e in path.iter() {
            *occurrences.entry(e).or_insert(0) += 1;
        }
        return;
    }
    for &w in &adj[u] {
        if ds[w] == ds[u] + 1 && dt[w] != u32::MAX && ds[w] + dt[w] == total {
            path.push((u.min(w), u.max(w)));
            walk_paths(adj, ds, dt, total, w, t, path, occurrences, sigma);
            path.pop();
        }
    }
}

/// Per-edge betweenness by enumerating every shortest path of every
/// connected unordered pair, one path at a time.
fn betweenness_oracle(s: &Snapshot) -> Vec<f64> {
    let n = s.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in s.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    let dists: Vec<Vec<u32>> = (0..n).map(|src| bfs_dists(&adj, src)).collect();
    let index: HashMap<(usize, usize), usize> =
        s.edges().iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut scores = vec![0.0f64; s.edge_count()];
    for src in 0..n {
        for dst in (src + 1)..n {
            let total = dists[src][dst];
            if total == u32::MAX {
                continue;
            }
            let mut occurrences = HashMap::new();
            let mut sigma = 0u64;
            let mut path = Vec::new();
            walk_paths(
                &adj,
                &dists[src],
                &dists[dst],
                total,
                src,
                dst,
                &mut path,
                &mut occurrences,
                &mut sigma,
            );
            for (e, c) in occurrences {
                scores[index[&e]] += c as f64 / sigma as f64;
            }
        }
    }
    scores
}

#[test]
fn edge_betweenness_matches_path_enumeration() {
    let mut worst = 0.0f64;
    for i in 0..20u64 {
        let s = sized_random_graph(30, derive_seed(0xB3, &[i]));
        let lib = edge_betweenness(&s);
        let oracle = betweenness_oracle(&s);
        assert_eq!(lib.len(), oracle.len());
        for (e, (a, b)) in lib.iter().zip(&oracle).enumerate() {
            let err = (a - b).abs();
            assert!(err <= 1e-9, "graph {i} edge {e}: {a} vs {b}");
            worst = worst.max(err);
        }
    }
    println!("betweenness: 20 graphs against full path enumeration, worst gap {worst:.3e}");
}

// ---------------------------------------------------------------------------
// Clustering
// ---------------------------------------------------------------------------

/// Maximum modularity over every partition of the vertex set, enumerated as
/// restricted growth strings.
fn exhaustive_best_modularity(g: &Snapshot) -> f64 {
    fn rec(g: &Snapshot, labels: &mut Vec<usize>, i: usize, used: usize, best: &mut f64) {
        if i == labels.len() {
            let q = modularity(g, labels).unwrap();
            if q > *best {
                *best = q;
            }
            return;
        }
        for l in 0..=used {
            labels[i] = l;
            rec(g, labels, i + 1, used.max(l + 1), best);
        }
    }
    let mut labels = vec![0; g.vertex_count()];
    let mut best = f64::NEG_INFINITY;
    rec(g, &mut labels, 1, 1, &mut best);
    best
}

#[test]
fn clustering_reaches_known_and_exhaustive_optima() {
    // Two triangles joined by one edge: the triangle split is the optimum
    // and its modularity is exactly 5/14.
    let bridge = Snapshot::from_edges(
        0,
        6,
        &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)],
    );
    let q = modularity(&bridge, &[0, 0, 0, 1, 1, 1]).unwrap();
    assert!((q - 5.0 / 14.0).abs() <= 1e-12, "bridge modularity {q}");
    let found = cluster_giant(&bridge, 0).unwrap();
    assert!((found.partition.modularity - 5.0 / 14.0).abs() <= 1e-12);

    // On giants small enough to enumerate every partition, the greedy search
    // must attain the global optimum.
    let mut worst_gap = 0.0f64;
    for i in 0..20u64 {
        let s = sized_random_graph(10, derive_seed(0xC11, &[i]));
        let res = cluster_giant(&s, 0).unwrap();
        let best = exhaustive_best_modularity(&res.giant);
        let gap = best - res.partition.modularity;
        assert!(gap <= 1e-9, "graph {i}: greedy {} vs optimum {best}", res.partition.modularity);
        worst_gap = worst_gap.max(gap);
    }

    // Planted blocks must be recovered nearly exactly.
    let mut min_nmi = f64::INFINITY;
    for i in 0..20u64 {
        let (g, labels) =
            synth_planted_temporal(4, 20, 0.4, 0.02, 100, 1000, derive_seed(0x9A11, &[i]))
                .unwrap();
        let snap = g.snapshot_at(g.max_detect_day().unwrap());
        let res = cluster_giant(&snap, 0).unwrap();
        let by_id: HashMap<&str, usize> =
            labels.iter().map(|(id, b)| (id.as_str(), *b)).collect();
        let truth: Vec<usize> =
            (0..res.giant.vertex_count()).map(|v| by_id[res.giant.id(v)]).collect();
        let score = nmi(&res.partition.assignment, &truth).unwrap();
        min_nmi = min_nmi.min(score);
    }
    assert!(min_nmi >= 0.9, "worst planted recovery {min_nmi}");
    println!(
        "clustering: bridge exact, exhaustive gap <= {worst_gap:.3e}, planted NMI >= {min_nmi:.4}"
    );
}

// ---------------------------------------------------------------------------
// Configuration model
// ---------------------------------------------------------------------------

#[test]
fn configuration_model_bounds_degrees_and_matches_uniformly() {
    // Erased draws never exceed target degrees, on any sequence.
    for i in 0..10u64 {
        let mut rng = rng_from_seed(derive_seed(0xCF6, &[i]));
        let n = rng.random_range(5..=50);
        let mut degrees: Vec<usize> = (0..n).map(|_| rng.random_range(0..=8)).collect();
        if degrees.iter().sum::<usize>() % 2 == 1 {
            degrees[0] += 1;
        }
        for r in 0..10u64 {
            let g = cm_undirected(&degrees, derive_seed(0xCF60, &[i, r])).unwrap();
            for (v, &target) in degrees.iter().enumerate() {
                assert!(
                    g.degree(v) <= target,
                    "sequence {i} replicate {r}: vertex {v} got {} of {target}",
                    g.degree(v)
                );
            }
        }
    }

    // Four degree-1 stubs admit exactly three perfect matchings; each must
    // appear a third of the time.
    let mut counts = [0u64; 3];
    let draws = 10_000u64;
    for seed in 0..draws {
        let g = cm_undirected(&[1, 1, 1, 1], seed).unwrap();
        assert_eq!(g.edge_count(), 2);
        counts[g.neighbors(0)[0] - 1] += 1;
    }
    let mut worst = 0.0f64;
    for (m, &c) in counts.iter().enumerate() {
        let gap = (c as f64 / draws as f64 - 1.0 / 3.0).abs();
        assert!(gap <= 0.02, "matching {m} frequency off by {gap}");
        worst = worst.max(gap);
    }

    assert!(matches!(cm_undirected(&[1, 1, 1], 0), Err(Error::OddDegreeSum)));
    assert!(matches!(cm_undirected_strict(&[1, 1, 1], 0), Err(Error::OddDegreeSum)));
    println!(
        "configuration model: degrees bounded on 100 draws, matching frequencies {counts:?} \
         (worst gap {worst:.4}), odd sums rejected"
    );
}

// ---------------------------------------------------------------------------
// Monte Carlo homogeneity
// ---------------------------------------------------------------------------

#[test]
fn homogeneity_tests_flag_planted_temporal_clusters() {
    // p_out is higher here than in the recovery test so that a uniform edge
    // subset mixes in enough inter-block edges for the null medians to sit
    // clearly above the observed intra median.
    let (g, _) = synth_planted_temporal(4, 25, 0.4, 0.05, 100, 1000, 0x7E57).unwrap();
    let snap = g.snapshot_at(g.max_detect_day().unwrap());
    let res = cluster_giant(&snap, 0).unwrap();

    let rand_test =
        mc_cluster_randomization(&res.giant, &res.partition.assignment, 1000, 11).unwrap();
    assert!(
        rand_test.percentile <= 1.0,
        "randomization percentile {}",
        rand_test.percentile
    );

    let subset_test = mc_edge_subset(&res.giant, &res.partition.assignment, 1000, 12).unwrap();
    assert!(
        subset_test.count_le <= 50,
        "{} of 1000 subsets at or below the intra median",
        subset_test.count_le
    );

    // Same seed, same draws, bit for bit.
    let rand_again =
        mc_cluster_randomization(&res.giant, &res.partition.assignment, 1000, 11).unwrap();
    let subset_again = mc_edge_subset(&res.giant, &res.partition.assignment, 1000, 12).unwrap();
    assert_eq!(rand_test, rand_again);
    assert_eq!(subset_test, subset_again);
    println!(
        "homogeneity: randomization percentile {:.2}, {} of 1000 subsets below, reruns identical",
        rand_test.percentile, subset_test.count_le
    );
}

// ---------------------------------------------------------------------------
// Densification exponent
// ---------------------------------------------------------------------------

#[test]
fn densification_exponent_is_recovered_exactly_and_under_noise() {
    // v = m^10 and e = m^13 sit exactly on a slope-1.3 log-log line.
    let series: Vec<(i64, usize, usize)> =
        (1..=6i64).map(|m| (m, (m as usize).pow(10), (m as usize).pow(13))).collect();
    let clean = dpl_fit(&series, 5).unwrap();
    assert!((clean.fit.slope - 1.3).abs() <= 1e-6, "clean slope {}", clean.fit.slope);

    // 5% multiplicative log-normal noise on the edge counts.
    let mut slopes = Vec::with_capacity(50);
    for i in 0..50u64 {
        let mut rng = rng_from_seed(derive_seed(0xD91, &[i]));
        let noisy: Vec<(i64, usize, usize)> = series
            .iter()
            .map(|&(day, v, e)| {
                let z: f64 = rng.sample(StandardNormal);
                (day, v, (e as f64 * (0.05 * z).exp()).round() as usize)
            })
            .collect();
        slopes.push(dpl_fit(&noisy, 5).unwrap().fit.slope);
    }
    slopes.sort_by(f64::total_cmp);
    let median = 0.5 * (slopes[24] + slopes[25]);
    assert!((median - 1.3).abs() <= 0.05, "noisy median slope {median}");
    println!(
        "densification: clean slope {:.9}, median noisy slope {median:.4} over 50 seeds",
        clean.fit.slope
    );
}

// ---------------------------------------------------------------------------
// Structural break recovery
// ---------------------------------------------------------------------------

#[test]
fn break_scan_recovers_a_planted_slope_change() {
    let mut worst_offset = 0i64;
    let mut worst_p = 0.0f64;
    for i in 0..20u64 {
        let mut rng = rng_from_seed(derive_seed(0xC404, &[i]));
        let series: Vec<(i64, f64)> = (0..=100i64)
            .map(|t| {
                let base = if t <= 50 {
                    19.565 + 8.243 * t as f64
                } else {
                    -1784.634 + 44.125 * t as f64
                };
                let z: f64 = rng.sample(StandardNormal);
                (t, base + 20.0 * z)
            })
            .collect();
        let scan = chow_scan(&series, 0.15).unwrap();
        let offset = (scan.best.break_t - 50).abs();
        assert!(offset <= 2, "seed {i}: break at {}", scan.best.break_t);
        assert!(scan.best.p_value < 1e-3, "seed {i}: p {}", scan.best.p_value);
        worst_offset = worst_offset.max(offset);
        worst_p = worst_p.max(scan.best.p_value);
    }
    println!("break scan: 20 seeds, worst offset {worst_offset}, worst p {worst_p:.3e}");
}

// ---------------------------------------------------------------------------
// Reference-scale runtime
// ---------------------------------------------------------------------------

#[test]
fn reference_scale_pipeline_fits_the_time_budget() {
    let cfg = SynthConfig {
        horizon_days: 6847,
        background_rate_per_day: 0.175,
        tracing_prob: 0.88,
        seed: 1986,
        ..SynthConfig::default()
    };
    let g = synth_epidemic(&cfg).unwrap();
    let last = g.snapshot_at(cfg.horizon_days);
    let (nv, ne) = (last.vertex_count(), last.edge_count());
    assert!((5200..=5500).contains(&nv), "{nv} vertices");
    assert!((4000..=4300).contains(&ne), "{ne} edges");

    let days: Vec<i64> = (0..cfg.horizon_days).step_by(90).collect();
    assert_eq!(days.len(), 77);

    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let start = Instant::now();
    pool.install(|| {
        let reports = run_battery(&g, &days, &BatteryConfig::default()).unwrap();
        assert_eq!(reports.len(), days.len());
        let clusters = cluster_giant(&g.snapshot_at(*days.last().unwrap()), 0).unwrap();
        assert!(clusters.partition.cluster_count >= 2);
        let rows = ensemble_compare(&g, &days, 10, 7, &EnsembleMetric::ALL).unwrap();
        assert_eq!(rows.len(), days.len() * EnsembleMetric::ALL.len());
    });
    let elapsed = start.elapsed();
    println!(
        "reference scale: {nv} vertices / {ne} edges, 77 snapshots, battery + clustering + \
         10-replicate ensemble in {elapsed:?} on 4 threads"
    );
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
}

// The degree histogram fit has no oracle-checked criterion of its own, but
// the battery leans on it; pin the two hand-checkable facts here so the gate
// catches regressions in the exponent search.
#[test]
fn power_law_fit_is_exact_on_its_own_model() {
    let mut hist = BTreeMap::new();
    // p(k) ~ k^-2 over 1..=4, scaled to integer counts with total 144k.
    let scale = 144_000.0 / (1.0 + 0.25 + 1.0 / 9.0 + 1.0 / 16.0);
    for k in 1..=4usize {
        hist.insert(k, (scale / (k * k) as f64).round() as usize);
    }
    let (alpha, kl) = epitrace_core::metrics::power_law_exponent(&hist, 1).unwrap();
    assert!((alpha - 2.0).abs() <= 2e-3, "alpha {alpha}");
    assert!(kl.abs() <= 1e-5, "kl {kl}");
    println!("power-law fit: alpha {alpha:.5}, divergence {kl:.3e}");
}
