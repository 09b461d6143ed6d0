//! Geodesic distance battery: diameter, effective diameter, average and
//! harmonic geodesic lengths, the g(d) table and the hop plot.
//!
//! Everything derives from one integer histogram (unordered connected pair
//! count per distance), accumulated from per-source BFS sweeps. Integer
//! aggregation keeps the results bit-identical across thread counts; the
//! floating-point formulas are evaluated once, in ascending distance order.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Snapshot;

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSummary {
    /// Largest finite pairwise distance; 0 when no pair is connected.
    pub diameter: usize,
    /// Smallest integer D with g(D) >= q; 0 when no pair is connected.
    pub effective_diameter: usize,
    /// Quantile used for the effective diameter.
    pub q: f64,
    /// (2 / (|V|(|V|+1))) * sum of d(i,j) over i <= j, where self pairs and
    /// unconnected pairs contribute 0. A single edge gives 1/3.
    pub avg_geodesic: f64,
    /// Mean distance over connected distinct pairs only; 0 when none exist.
    pub mean_connected: f64,
    /// Reciprocal of (2 / (|V|(|V|+1))) * sum of 1/d(i,j) over i <= j, where
    /// self pairs and unconnected pairs contribute 0. A single edge gives 3;
    /// infinite when the snapshot has no connected pair.
    pub harmonic_geodesic: f64,
    /// Connected unordered distinct pairs.
    pub connected_pairs: u64,
    /// g(d) for d = 0..=diameter: fraction of connected unordered distinct
    /// pairs at distance <= d. Empty when no pair is connected.
    pub g_table: Vec<f64>,
    /// f(h) for h = 0..=diameter: ordered pairs, self pairs included, at
    /// distance <= h. f(0) = |V|.
    pub hop_plot: Vec<u64>,
    /// Unordered connected pair count per distance, d = 0..=diameter.
    pub distance_histogram: Vec<u64>,
}

/// Single-source BFS; returns ordered-pair distance counts from `src`.
fn bfs_histogram(s: &Snapshot, src: usize, dist: &mut [u32], queue: &mut Vec<usize>) -> Vec<u64> {
    let mut hist = Vec::new();
    dist.fill(u32::MAX);
    dist[src] = 0;
    queue.clear();
    queue.push(src);
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u];
        for &v in s.neighbors(u) {
            if dist[v] == u32::MAX {
                dist[v] = du + 1;
                let d = (du + 1) as usize;
                if hist.len() <= d {
                    hist.resize(d + 1, 0);
                }
                hist[d] += 1;
                queue.push(v);
            }
        }
    }
    hist
}

pub fn distance_summary(s: &Snapshot, q: f64) -> Result<DistanceSummary> {
    if s.is_empty() {
        return Err(Error::EmptySnapshot);
    }
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::InvalidConfig(format!("q must be in (0, 1], got {q}")));
    }
    let n = s.vertex_count();

    let ordered_hist: Vec<u64> = (0..n)
        .into_par_iter()
        .map(|src| {
            let mut dist = vec![u32::MAX; n];
            let mut queue = Vec::with_capacity(64);
            bfs_histogram(s, src, &mut dist, &mut queue)
        })
        .reduce(Vec::new, |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), 0);
            }
            for (i, x) in b.into_iter().enumerate() {
                a[i] += x;
            }
            a
        });

    // Each unordered pair was seen once from each endpoint.
    let histogram: Vec<u64> = {
        let mut h: Vec<u64> = ordered_hist.iter().map(|&c| c / 2).collect();
        debug_assert!(ordered_hist.iter().all(|&c| c % 2 == 0));
        if h.is_empty() {
            h.push(0);
        }
        h[0] = 0;
        h
    };
    Ok(summarize(n, histogram, q))
}

/// Derive the battery from the unordered-pair distance histogram. Every
/// float here is a fixed-order function of exact integers, so any
/// implementation of these formulas over the same histogram reproduces the
/// values bit for bit.
pub(crate) fn summarize(n: usize, mut histogram: Vec<u64>, q: f64) -> DistanceSummary {
    while histogram.len() > 1 && *histogram.last().unwrap() == 0 {
        histogram.pop();
    }
    let connected_pairs: u64 = histogram.iter().sum();
    let nf = n as f64;
    let norm = nf * (nf + 1.0);

    if connected_pairs == 0 {
        return DistanceSummary {
            diameter: 0,
            effective_diameter: 0,
            q,
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
    let avg_geodesic = 2.0 * dist_sum as f64 / norm;
    let mean_connected = dist_sum as f64 / connected_pairs as f64;
    let harmonic_geodesic = norm / (2.0 * recip_sum);

    DistanceSummary {
        diameter,
        effective_diameter: effective_diameter.unwrap_or(diameter),
        q,
        avg_geodesic,
        mean_connected,
        harmonic_geodesic,
        connected_pairs,
        g_table,
        hop_plot,
        distance_histogram: histogram,
    }
}
