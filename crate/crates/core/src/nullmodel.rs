//! Degree-preserving null models and observed-vs-null ensemble comparison.
//!
//! Random graphs are drawn by stub matching: each vertex contributes as many
//! stubs as its target degree, the stub list is shuffled, and adjacent stubs
//! are paired. The default samplers erase self-loops and collapse parallel
//! edges afterwards, so realized degrees never exceed their targets but can
//! fall short. `cm_undirected_strict` instead rejects any matching that is
//! not already simple and redraws.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Snapshot, TemporalGraph};
use crate::metrics::{
    connected_components, degree_stats, distance_summary, giant_component, infection_forest,
    ComponentDecomposition, DistanceSummary, InfectionForest,
};
use crate::rng::{derive_seed, rng_from_seed};

/// Quantile for the effective diameter inside ensemble rows.
pub const ENSEMBLE_EFFECTIVE_Q: f64 = 0.9;

/// Redraw budget for the strict sampler.
pub const STRICT_ATTEMPTS: usize = 1000;

/// Shuffle one stub per half-edge and pair adjacent stubs. The result may
/// contain self-loops and repeated pairs; callers decide how to handle them.
/// Degree sum must be even.
fn stub_matching(degrees: &[usize], seed: u64) -> Vec<(usize, usize)> {
    let total: usize = degrees.iter().sum();
    debug_assert!(total % 2 == 0);
    let mut stubs = Vec::with_capacity(total);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat(v).take(d));
    }
    let mut rng = rng_from_seed(seed);
    stubs.shuffle(&mut rng);
    stubs.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

/// Undirected configuration-model draw with erasure: self-loops are dropped
/// and parallel edges collapsed, so realized degrees are bounded above by the
/// targets.
pub fn cm_undirected(degrees: &[usize], seed: u64) -> Result<Snapshot> {
    if degrees.iter().sum::<usize>() % 2 != 0 {
        return Err(Error::OddDegreeSum);
    }
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (a, b) in stub_matching(degrees, seed) {
        if a == b {
            continue;
        }
        let e = (a.min(b), a.max(b));
        if seen.insert(e) {
            edges.push(e);
        }
    }
    Ok(Snapshot::from_edges(0, degrees.len(), &edges))
}

/// Undirected configuration-model draw that realizes the degree sequence
/// exactly, by redrawing whole matchings until one is simple. Fails with
/// `ResamplingExhausted` when no simple matching shows up within the budget,
/// which is certain for sequences that admit none.
pub fn cm_undirected_strict(degrees: &[usize], seed: u64) -> Result<Snapshot> {
    if degrees.iter().sum::<usize>() % 2 != 0 {
        return Err(Error::OddDegreeSum);
    }
    for attempt in 0..STRICT_ATTEMPTS {
        let pairs = stub_matching(degrees, derive_seed(seed, &[attempt as u64]));
        let mut seen = HashSet::with_capacity(pairs.len());
        if pairs
            .iter()
            .all(|&(a, b)| a != b && seen.insert((a.min(b), a.max(b))))
        {
            let edges: Vec<(usize, usize)> =
                pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
            return Ok(Snapshot::from_edges(0, degrees.len(), &edges));
        }
    }
    Err(Error::ResamplingExhausted { attempts: STRICT_ATTEMPTS })
}

/// Directed configuration-model draw with erasure. Out-stubs stay in vertex
/// order, in-stubs are shuffled, and the two lists are paired positionally;
/// self-arcs are dropped and repeated arcs collapsed. The contact edges of
/// the returned snapshot are the undirected projection of the arcs.
pub fn cm_directed(in_degrees: &[usize], out_degrees: &[usize], seed: u64) -> Result<Snapshot> {
    if in_degrees.len() != out_degrees.len() {
        return Err(Error::InvalidConfig(format!(
            "degree sequences have different lengths ({} vs {})",
            in_degrees.len(),
            out_degrees.len()
        )));
    }
    let in_sum: usize = in_degrees.iter().sum();
    let out_sum: usize = out_degrees.iter().sum();
    if in_sum != out_sum {
        return Err(Error::DegreeSumMismatch { in_sum, out_sum });
    }
    let mut out_stubs = Vec::with_capacity(out_sum);
    for (v, &d) in out_degrees.iter().enumerate() {
        out_stubs.extend(std::iter::repeat(v).take(d));
    }
    let mut in_stubs = Vec::with_capacity(in_sum);
    for (v, &d) in in_degrees.iter().enumerate() {
        in_stubs.extend(std::iter::repeat(v).take(d));
    }
    let mut rng = rng_from_seed(seed);
    in_stubs.shuffle(&mut rng);
    let mut seen = HashSet::with_capacity(out_sum);
    let mut arcs = Vec::new();
    for (&from, &to) in out_stubs.iter().zip(&in_stubs) {
        if from != to && seen.insert((from, to)) {
            arcs.push((from, to));
        }
    }
    Ok(Snapshot::from_arcs(0, in_degrees.len(), &arcs))
}

/// Scalar summaries compared between an observed snapshot and its null draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleMetric {
    Components,
    ComponentsGe2,
    ComponentsGe3,
    GiantSize,
    GiantEdges,
    MeanDegree,
    GiantDiameter,
    GiantEffectiveDiameter,
    GiantAvgGeodesic,
    GiantMeanConnected,
    Trees,
    TreesGe2,
    LargestTreeSize,
    LargestTreeDepth,
}

impl EnsembleMetric {
    pub const ALL: [EnsembleMetric; 14] = [
        EnsembleMetric::Components,
        EnsembleMetric::ComponentsGe2,
        EnsembleMetric::ComponentsGe3,
        EnsembleMetric::GiantSize,
        EnsembleMetric::GiantEdges,
        EnsembleMetric::MeanDegree,
        EnsembleMetric::GiantDiameter,
        EnsembleMetric::GiantEffectiveDiameter,
        EnsembleMetric::GiantAvgGeodesic,
        EnsembleMetric::GiantMeanConnected,
        EnsembleMetric::Trees,
        EnsembleMetric::TreesGe2,
        EnsembleMetric::LargestTreeSize,
        EnsembleMetric::LargestTreeDepth,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EnsembleMetric::Components => "components",
            EnsembleMetric::ComponentsGe2 => "components_ge2",
            EnsembleMetric::ComponentsGe3 => "components_ge3",
            EnsembleMetric::GiantSize => "giant_size",
            EnsembleMetric::GiantEdges => "giant_edges",
            EnsembleMetric::MeanDegree => "mean_degree",
            EnsembleMetric::GiantDiameter => "giant_diameter",
            EnsembleMetric::GiantEffectiveDiameter => "giant_effective_diameter",
            EnsembleMetric::GiantAvgGeodesic => "giant_avg_geodesic",
            EnsembleMetric::GiantMeanConnected => "giant_mean_connected",
            EnsembleMetric::Trees => "trees",
            EnsembleMetric::TreesGe2 => "trees_ge2",
            EnsembleMetric::LargestTreeSize => "largest_tree_size",
            EnsembleMetric::LargestTreeDepth => "largest_tree_depth",
        }
    }

    /// Metrics about infection trees compare against directed draws that
    /// preserve in- and out-degree sequences; everything else compares
    /// against undirected draws preserving contact degrees.
    pub fn uses_directed(self) -> bool {
        matches!(
            self,
            EnsembleMetric::Trees
                | EnsembleMetric::TreesGe2
                | EnsembleMetric::LargestTreeSize
                | EnsembleMetric::LargestTreeDepth
        )
    }

    pub fn eval(self, s: &Snapshot) -> f64 {
        MetricCache::new(s).eval(self)
    }
}

/// Lazily computed intermediates behind the scalar metrics, so that one
/// snapshot is scanned once no matter how many metrics read from it.
struct MetricCache<'a> {
    s: &'a Snapshot,
    components: Option<ComponentDecomposition>,
    giant: Option<Option<Snapshot>>,
    distances: Option<Option<DistanceSummary>>,
    forest: Option<InfectionForest>,
}

impl<'a> MetricCache<'a> {
    fn new(s: &'a Snapshot) -> Self {
        MetricCache { s, components: None, giant: None, distances: None, forest: None }
    }

    fn components(&mut self) -> &ComponentDecomposition {
        if self.components.is_none() {
            self.components = Some(connected_components(self.s));
        }
        self.components.as_ref().expect("just filled")
    }

    fn giant(&mut self) -> Option<&Snapshot> {
        if self.giant.is_none() {
            self.giant = Some(giant_component(self.s).ok());
        }
        self.giant.as_ref().expect("just filled").as_ref()
    }

    fn distances(&mut self) -> Option<&DistanceSummary> {
        if self.distances.is_none() {
            let d = self.giant().map(|g| {
                distance_summary(g, ENSEMBLE_EFFECTIVE_Q).expect("giant component is never empty")
            });
            self.distances = Some(d);
        }
        self.distances.as_ref().expect("just filled").as_ref()
    }

    fn forest(&mut self) -> &InfectionForest {
        if self.forest.is_none() {
            self.forest = Some(infection_forest(self.s));
        }
        self.forest.as_ref().expect("just filled")
    }

    fn eval(&mut self, metric: EnsembleMetric) -> f64 {
        use EnsembleMetric::*;
        match metric {
            Components => self.components().count as f64,
            ComponentsGe2 => self.components().count_ge2 as f64,
            ComponentsGe3 => self.components().count_ge3 as f64,
            GiantSize => self.giant().map_or(0.0, |g| g.vertex_count() as f64),
            GiantEdges => self.giant().map_or(0.0, |g| g.edge_count() as f64),
            MeanDegree => degree_stats(self.s).mean,
            GiantDiameter => self.distances().map_or(0.0, |d| d.diameter as f64),
            GiantEffectiveDiameter => {
                self.distances().map_or(0.0, |d| d.effective_diameter as f64)
            }
            GiantAvgGeodesic => self.distances().map_or(0.0, |d| d.avg_geodesic),
            GiantMeanConnected => self.distances().map_or(0.0, |d| d.mean_connected),
            Trees => self.forest().tree_count as f64,
            TreesGe2 => self.forest().count_ge2 as f64,
            LargestTreeSize => self.forest().max_size as f64,
            LargestTreeDepth => self.forest().max_depth as f64,
        }
    }
}

impl std::fmt::Display for EnsembleMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for EnsembleMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EnsembleMetric::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown ensemble metric {s:?}")))
    }
}

/// One observed-vs-null comparison for a single day and metric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleRow {
    pub day: i64,
    pub metric: EnsembleMetric,
    pub observed: f64,
    pub null_mean: f64,
    /// Population standard deviation over the replicate values.
    pub null_std: f64,
    pub replicates: usize,
}

/// For every day: take the snapshot, draw `replicates` degree-matched null
/// graphs (undirected from the contact degrees, directed from the arc in- and
/// out-degrees), and summarize each requested metric against its ensemble.
/// Rows are ordered by day, then by the order of `metrics`. Replicate `r` for
/// day `d` is seeded from `(seed, d, r, kind)`, so results do not depend on
/// thread count and adding days or replicates never perturbs existing draws.
pub fn ensemble_compare(
    g: &TemporalGraph,
    days: &[i64],
    replicates: usize,
    seed: u64,
    metrics: &[EnsembleMetric],
) -> Result<Vec<EnsembleRow>> {
    if replicates == 0 {
        return Err(Error::InvalidConfig("replicates must be >= 1".into()));
    }
    if metrics.is_empty() {
        return Err(Error::InvalidConfig("no ensemble metrics selected".into()));
    }
    let need_undirected = metrics.iter().any(|m| !m.uses_directed());
    let need_directed = metrics.iter().any(|m| m.uses_directed());
    let per_day: Vec<Result<Vec<EnsembleRow>>> = days
        .par_iter()
        .map(|&day| {
            let snap = g.snapshot_at(day);
            let n = snap.vertex_count();
            let undirected: Vec<Snapshot> = if need_undirected {
                let degrees: Vec<usize> = (0..n).map(|i| snap.degree(i)).collect();
                (0..replicates)
                    .map(|r| cm_undirected(&degrees, derive_seed(seed, &[day as u64, r as u64, 0])))
                    .collect::<Result<_>>()?
            } else {
                Vec::new()
            };
            let directed: Vec<Snapshot> = if need_directed {
                let mut in_deg = vec![0usize; n];
                let mut out_deg = vec![0usize; n];
                for &(from, to) in snap.arcs() {
                    out_deg[from] += 1;
                    in_deg[to] += 1;
                }
                (0..replicates)
                    .map(|r| {
                        cm_directed(&in_deg, &out_deg, derive_seed(seed, &[day as u64, r as u64, 1]))
                    })
                    .collect::<Result<_>>()?
            } else {
                Vec::new()
            };
            // One cache per draw: every requested metric reads from the same
            // scan instead of redoing the giant extraction and BFS for each.
            let mut values: Vec<Vec<f64>> = vec![Vec::with_capacity(replicates); metrics.len()];
            for pool_is_directed in [false, true] {
                let pool = if pool_is_directed { &directed } else { &undirected };
                for draw in pool {
                    let mut cache = MetricCache::new(draw);
                    for (i, &metric) in metrics.iter().enumerate() {
                        if metric.uses_directed() == pool_is_directed {
                            values[i].push(cache.eval(metric));
                        }
                    }
                }
            }
            let mut observed = MetricCache::new(&snap);
            let rows = metrics
                .iter()
                .zip(&values)
                .map(|(&metric, vals)| {
                    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
                    let var =
                        vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / vals.len() as f64;
                    EnsembleRow {
                        day,
                        metric,
                        observed: observed.eval(metric),
                        null_mean: mean,
                        null_std: var.sqrt(),
                        replicates,
                    }
                })
                .collect();
            Ok(rows)
        })
        .collect();
    let mut out = Vec::with_capacity(days.len() * metrics.len());
    for day_rows in per_day {
        out.extend(day_rows?);
    }
    Ok(out)
}
