//! Assembles the per-snapshot metric battery into serializable reports and
//! writes the artifact files: one JSON document per snapshot, long-format
//! CSV for plotting, and the ensemble/partition/value tables.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::ClusterResult;
use crate::error::{Error, Result};
use crate::graph::{Snapshot, TemporalGraph};
use crate::metrics::{
    attribute_timeseries, connected_components, degree_stats, detection_distances,
    distance_summary, edge_betweenness, eigenvector_centrality, giant_component,
    infection_forest, late_infection_edges, power_law_exponent, top_central_profile,
    triangle_participation, AttributeBucket, CentralProfile, DistanceSummary, DEFAULT_MAX_ITER,
    DEFAULT_TOL,
};
use crate::nullmodel::EnsembleRow;

// ---------------------------------------------------------------------------
// Metric selection
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricKind {
    Components,
    Degrees,
    DistanceGiant,
    DistanceFull,
    Centrality,
    Betweenness,
    Triangles,
    Detection,
    Forest,
}

impl MetricKind {
    pub const ALL: [MetricKind; 9] = [
        MetricKind::Components,
        MetricKind::Degrees,
        MetricKind::DistanceGiant,
        MetricKind::DistanceFull,
        MetricKind::Centrality,
        MetricKind::Betweenness,
        MetricKind::Triangles,
        MetricKind::Detection,
        MetricKind::Forest,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MetricKind::Components => "components",
            MetricKind::Degrees => "degrees",
            MetricKind::DistanceGiant => "distance_giant",
            MetricKind::DistanceFull => "distance_full",
            MetricKind::Centrality => "centrality",
            MetricKind::Betweenness => "betweenness",
            MetricKind::Triangles => "triangles",
            MetricKind::Detection => "detection",
            MetricKind::Forest => "forest",
        }
    }
}

impl FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown metric '{s}'")))
    }
}

/// Parses a comma-separated metric list; `all` selects the full battery.
/// Duplicates collapse to the first occurrence.
pub fn parse_metric_selection(spec: &str) -> Result<Vec<MetricKind>> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(MetricKind::ALL.to_vec());
    }
    let mut out = Vec::new();
    for tok in spec.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let kind: MetricKind = tok.parse()?;
        if !out.contains(&kind) {
            out.push(kind);
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidConfig("no metrics selected".into()));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Battery configuration
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BatteryConfig {
    pub metrics: Vec<MetricKind>,
    /// Quantile for the effective diameter.
    pub q: f64,
    /// Share of vertices profiled as most central.
    pub fraction: f64,
    pub eigen_tol: f64,
    pub eigen_max_iter: usize,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            metrics: MetricKind::ALL.to_vec(),
            q: 0.9,
            fraction: 0.1,
            eigen_tol: DEFAULT_TOL,
            eigen_max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl BatteryConfig {
    pub fn validate(&self) -> Result<()> {
        if self.metrics.is_empty() {
            return Err(Error::InvalidConfig("no metrics selected".into()));
        }
        if !(self.q > 0.0 && self.q <= 1.0) {
            return Err(Error::InvalidConfig(format!("q must be in (0, 1], got {}", self.q)));
        }
        if !(self.fraction > 0.0 && self.fraction <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "fraction must be in (0, 1], got {}",
                self.fraction
            )));
        }
        Ok(())
    }

    fn wants(&self, kind: MetricKind) -> bool {
        self.metrics.contains(&kind)
    }
}

// ---------------------------------------------------------------------------
// Report sections
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentsSection {
    pub count: usize,
    pub count_ge2: usize,
    pub count_ge3: usize,
    /// Component sizes, largest first.
    pub sizes: Vec<usize>,
    pub giant_size: usize,
    pub giant_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub alpha: f64,
    /// Divergence attained at the fitted exponent, in nats.
    pub kl: f64,
    pub k_min: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegreesSection {
    pub mean: f64,
    pub max: usize,
    /// degree -> vertex count.
    pub histogram: BTreeMap<usize, usize>,
    /// None when the histogram has a single support point.
    pub power_law: Option<PowerLawFit>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceSection {
    pub diameter: usize,
    pub effective_diameter: usize,
    pub q: f64,
    pub avg_geodesic: f64,
    pub mean_connected: f64,
    /// None when the snapshot has no connected pair (the harmonic mean
    /// diverges there).
    pub harmonic_geodesic: Option<f64>,
    pub connected_pairs: u64,
    pub g_table: Vec<f64>,
    pub hop_plot: Vec<u64>,
    pub distance_histogram: Vec<u64>,
}

impl From<DistanceSummary> for DistanceSection {
    fn from(d: DistanceSummary) -> Self {
        DistanceSection {
            diameter: d.diameter,
            effective_diameter: d.effective_diameter,
            q: d.q,
            avg_geodesic: d.avg_geodesic,
            mean_connected: d.mean_connected,
            harmonic_geodesic: d.harmonic_geodesic.is_finite().then_some(d.harmonic_geodesic),
            connected_pairs: d.connected_pairs,
            g_table: d.g_table,
            hop_plot: d.hop_plot,
            distance_histogram: d.distance_histogram,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralitySection {
    pub eigenvalue: f64,
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub top: CentralProfile,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeScore {
    pub a: String,
    pub b: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetweennessSection {
    pub sum: f64,
    pub max: f64,
    pub mean: f64,
    /// Ten highest-scoring edges; ties resolved by edge order.
    pub top_edges: Vec<EdgeScore>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrianglesSection {
    pub total: usize,
    pub max_participation: usize,
    /// participation count -> vertex count.
    pub histogram: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionSection {
    pub median: Option<i64>,
    pub p25: Option<i64>,
    pub p75: Option<i64>,
    pub max: Option<i64>,
    pub count_over_730: usize,
    pub mode_bin_midpoint: Option<f64>,
    /// 30-day bin start -> edge count.
    pub histogram: BTreeMap<i64, u64>,
    pub late_total: usize,
    pub late_infectious: usize,
    pub infectious_edges: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TreeRow {
    pub size: usize,
    pub depth: usize,
    pub root: Option<String>,
    pub group_entropy: Option<f64>,
    pub province_entropy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ForestSection {
    pub tree_count: usize,
    pub count_ge2: usize,
    pub count_ge3: usize,
    pub max_size: usize,
    pub max_depth: usize,
    /// depth -> tree count.
    pub depth_histogram: BTreeMap<usize, usize>,
    /// Trees with at least two members, largest first.
    pub trees_ge2: Vec<TreeRow>,
}

/// Everything measured on one snapshot. Sections are present exactly when
/// selected and defined; an empty snapshot has no distances and a snapshot
/// without edges has no centrality.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnapshotReport {
    pub day: i64,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub arc_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<ComponentsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<DegreesSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_giant: Option<DistanceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance_full: Option<DistanceSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centrality: Option<CentralitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betweenness: Option<BetweennessSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangles: Option<TrianglesSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detection: Option<DetectionSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forest: Option<ForestSection>,
}

// ---------------------------------------------------------------------------
// Battery
// ---------------------------------------------------------------------------

pub fn snapshot_report(s: &Snapshot, cfg: &BatteryConfig) -> Result<SnapshotReport> {
    cfg.validate()?;
    let mut report = SnapshotReport {
        day: s.day(),
        vertex_count: s.vertex_count(),
        edge_count: s.edge_count(),
        arc_count: s.arcs().len(),
        components: None,
        degrees: None,
        distance_giant: None,
        distance_full: None,
        centrality: None,
        betweenness: None,
        triangles: None,
        detection: None,
        forest: None,
    };

    let needs_giant = cfg.wants(MetricKind::Components) || cfg.wants(MetricKind::DistanceGiant);
    let giant = if needs_giant && !s.is_empty() { Some(giant_component(s)?) } else { None };

    if cfg.wants(MetricKind::Components) {
        let d = connected_components(s);
        let (giant_size, giant_edges) =
            giant.as_ref().map_or((0, 0), |g| (g.vertex_count(), g.edge_count()));
        report.components = Some(ComponentsSection {
            count: d.count,
            count_ge2: d.count_ge2,
            count_ge3: d.count_ge3,
            sizes: d.sizes,
            giant_size,
            giant_edges,
        });
    }

    if cfg.wants(MetricKind::Degrees) {
        let st = degree_stats(s);
        let power_law = match power_law_exponent(&st.histogram, 1) {
            Ok((alpha, kl)) => Some(PowerLawFit { alpha, kl, k_min: 1 }),
            Err(Error::DegenerateHistogram) => None,
            Err(e) => return Err(e),
        };
        report.degrees =
            Some(DegreesSection { mean: st.mean, max: st.max, histogram: st.histogram, power_law });
    }

    if cfg.wants(MetricKind::DistanceGiant) {
        if let Some(g) = &giant {
            report.distance_giant = Some(distance_summary(g, cfg.q)?.into());
        }
    }

    if cfg.wants(MetricKind::DistanceFull) && !s.is_empty() {
        report.distance_full = Some(distance_summary(s, cfg.q)?.into());
    }

    if cfg.wants(MetricKind::Centrality) && s.edge_count() > 0 {
        let c = eigenvector_centrality(s, cfg.eigen_tol, cfg.eigen_max_iter)?;
        let top = top_central_profile(s, cfg.fraction, cfg.eigen_tol, cfg.eigen_max_iter)?;
        report.centrality = Some(CentralitySection {
            eigenvalue: c.eigenvalue,
            residual: c.residual,
            iterations: c.iterations,
            converged: c.converged,
            top,
        });
    }

    if cfg.wants(MetricKind::Betweenness) {
        let vals = edge_betweenness(s);
        let sum: f64 = vals.iter().sum();
        let max = vals.iter().copied().fold(0.0, f64::max);
        let mean = if vals.is_empty() { 0.0 } else { sum / vals.len() as f64 };
        let mut order: Vec<usize> = (0..vals.len()).collect();
        order.sort_by(|&i, &j| vals[j].total_cmp(&vals[i]).then(i.cmp(&j)));
        let top_edges = order
            .iter()
            .take(10)
            .map(|&i| {
                let (u, v) = s.edges()[i];
                EdgeScore { a: s.id(u).to_string(), b: s.id(v).to_string(), value: vals[i] }
            })
            .collect();
        report.betweenness = Some(BetweennessSection { sum, max, mean, top_edges });
    }

    if cfg.wants(MetricKind::Triangles) {
        let t = triangle_participation(s);
        report.triangles = Some(TrianglesSection {
            total: t.total,
            max_participation: t.per_vertex.iter().copied().max().unwrap_or(0),
            histogram: t.histogram,
        });
    }

    if cfg.wants(MetricKind::Detection) {
        let d = detection_distances(s);
        let late = late_infection_edges(s);
        report.detection = Some(DetectionSection {
            median: d.median,
            p25: d.p25,
            p75: d.p75,
            max: d.max,
            count_over_730: d.count_over_730,
            mode_bin_midpoint: d.mode_bin_midpoint,
            histogram: d.histogram,
            late_total: late.total,
            late_infectious: late.infectious,
            infectious_edges: late.infectious_edges,
        });
    }

    if cfg.wants(MetricKind::Forest) {
        let f = infection_forest(s);
        let trees_ge2 = f
            .trees
            .iter()
            .take_while(|t| t.size >= 2)
            .map(|t| TreeRow {
                size: t.size,
                depth: t.depth,
                root: t.root.map(|i| s.id(i).to_string()),
                group_entropy: t.group_entropy,
                province_entropy: t.province_entropy,
            })
            .collect();
        report.forest = Some(ForestSection {
            tree_count: f.tree_count,
            count_ge2: f.count_ge2,
            count_ge3: f.count_ge3,
            max_size: f.max_size,
            max_depth: f.max_depth,
            depth_histogram: f.depth_histogram,
            trees_ge2,
        });
    }

    Ok(report)
}

/// One report per requested day, in the given order. Days run in parallel;
/// the result is a pure function of (graph, days, config), so thread count
/// never shows in the output.
pub fn run_battery(
    g: &TemporalGraph,
    days: &[i64],
    cfg: &BatteryConfig,
) -> Result<Vec<SnapshotReport>> {
    cfg.validate()?;
    days.par_iter().map(|&d| snapshot_report(&g.snapshot_at(d), cfg)).collect()
}

// ---------------------------------------------------------------------------
// Writers
// ---------------------------------------------------------------------------

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::InvalidConfig(format!("csv write failed: {other:?}")),
    }
}

fn to_json_line<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)
        .map_err(|e| Error::InvalidConfig(format!("json write failed: {e}")))?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Writes `snapshot_d{day}.json`; the day is zero-padded so shell globs list
/// snapshots in chronological order.
pub fn write_snapshot_json(dir: &Path, report: &SnapshotReport) -> Result<PathBuf> {
    let path = dir.join(format!("snapshot_d{:07}.json", report.day));
    fs::write(&path, to_json_line(report)?)?;
    Ok(path)
}

pub fn write_reports_json(dir: &Path, reports: &[SnapshotReport]) -> Result<Vec<PathBuf>> {
    reports.iter().map(|r| write_snapshot_json(dir, r)).collect()
}

pub fn write_timeseries_json(path: &Path, buckets: &[AttributeBucket]) -> Result<()> {
    fs::write(path, to_json_line(&buckets)?)?;
    Ok(())
}

/// Re-exported here so the CLI has a single module to call for artifacts.
pub fn timeseries(g: &TemporalGraph, bucket_days: i64) -> Result<Vec<AttributeBucket>> {
    attribute_timeseries(g, bucket_days)
}

/// Shortest round-trip decimal; infinities print as `inf`.
fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

struct LongWriter<W: std::io::Write> {
    w: csv::Writer<W>,
    day: i64,
}

impl<W: std::io::Write> LongWriter<W> {
    fn row(&mut self, metric: &str, key: &str, value: String) -> Result<()> {
        self.w
            .write_record([self.day.to_string().as_str(), metric, key, value.as_str()])
            .map_err(csv_err)
    }

    fn scalar_rows(&mut self, metric: &str, pairs: &[(&str, String)]) -> Result<()> {
        for (key, value) in pairs {
            self.row(metric, key, value.clone())?;
        }
        Ok(())
    }

    fn distance_rows(&mut self, prefix: &str, d: &DistanceSection) -> Result<()> {
        let harmonic = d.harmonic_geodesic.map_or_else(|| "inf".to_string(), fmt_f64);
        self.scalar_rows(
            prefix,
            &[
                ("diameter", d.diameter.to_string()),
                ("effective_diameter", d.effective_diameter.to_string()),
                ("q", fmt_f64(d.q)),
                ("avg_geodesic", fmt_f64(d.avg_geodesic)),
                ("mean_connected", fmt_f64(d.mean_connected)),
                ("harmonic_geodesic", harmonic),
                ("connected_pairs", d.connected_pairs.to_string()),
            ],
        )?;
        for (i, v) in d.g_table.iter().enumerate() {
            self.row(&format!("{prefix}_g"), &i.to_string(), fmt_f64(*v))?;
        }
        for (i, v) in d.hop_plot.iter().enumerate() {
            self.row(&format!("{prefix}_hop"), &i.to_string(), v.to_string())?;
        }
        for (i, v) in d.distance_histogram.iter().enumerate() {
            self.row(&format!("{prefix}_histogram"), &i.to_string(), v.to_string())?;
        }
        Ok(())
    }
}

/// Long-format rows (snapshot_day, metric, key, value) for every present
/// section; scalar values are keyed by field name, table values by bin.
pub fn write_long_csv(path: &Path, reports: &[SnapshotReport]) -> Result<()> {
    let file = fs::File::create(path)?;
    let mut lw = LongWriter { w: csv::Writer::from_writer(file), day: 0 };
    lw.w.write_record(["snapshot_day", "metric", "key", "value"]).map_err(csv_err)?;
    for r in reports {
        lw.day = r.day;
        lw.scalar_rows(
            "size",
            &[
                ("vertices", r.vertex_count.to_string()),
                ("edges", r.edge_count.to_string()),
                ("arcs", r.arc_count.to_string()),
            ],
        )?;
        if let Some(c) = &r.components {
            lw.scalar_rows(
                "components",
                &[
                    ("count", c.count.to_string()),
                    ("count_ge2", c.count_ge2.to_string()),
                    ("count_ge3", c.count_ge3.to_string()),
                    ("giant_size", c.giant_size.to_string()),
                    ("giant_edges", c.giant_edges.to_string()),
                ],
            )?;
            for (rank, size) in c.sizes.iter().enumerate() {
                lw.row("component_sizes", &rank.to_string(), size.to_string())?;
            }
        }
        if let Some(d) = &r.degrees {
            lw.scalar_rows(
                "degrees",
                &[("mean", fmt_f64(d.mean)), ("max", d.max.to_string())],
            )?;
            if let Some(p) = &d.power_law {
                lw.scalar_rows(
                    "degrees",
                    &[
                        ("power_law_alpha", fmt_f64(p.alpha)),
                        ("power_law_kl", fmt_f64(p.kl)),
                        ("power_law_k_min", p.k_min.to_string()),
                    ],
                )?;
            }
            for (k, count) in &d.histogram {
                lw.row("degree_histogram", &k.to_string(), count.to_string())?;
            }
        }
        if let Some(d) = &r.distance_giant {
            lw.distance_rows("distance_giant", d)?;
        }
        if let Some(d) = &r.distance_full {
            lw.distance_rows("distance_full", d)?;
        }
        if let Some(c) = &r.centrality {
            lw.scalar_rows(
                "centrality",
                &[
                    ("eigenvalue", fmt_f64(c.eigenvalue)),
                    ("residual", fmt_f64(c.residual)),
                    ("iterations", c.iterations.to_string()),
                    ("converged", (c.converged as u8).to_string()),
                    ("top_count", c.top.count.to_string()),
                    ("top_fraction", fmt_f64(c.top.fraction)),
                    ("top_female_percent", fmt_f64(c.top.female_percent)),
                    ("top_male_percent", fmt_f64(c.top.male_percent)),
                    ("top_mean_degree", fmt_f64(c.top.mean_degree)),
                    ("top_std_degree", fmt_f64(c.top.std_degree)),
                ],
            )?;
            if let Some(age) = c.top.mean_age {
                lw.row("centrality", "top_mean_age", fmt_f64(age))?;
            }
            for (group, pct) in &c.top.group_percent {
                lw.row("centrality_group_percent", group, fmt_f64(*pct))?;
            }
            for (method, pct) in &c.top.method_percent {
                lw.row("centrality_method_percent", method, fmt_f64(*pct))?;
            }
            for (province, pct) in &c.top.province_percent {
                lw.row("centrality_province_percent", province, fmt_f64(*pct))?;
            }
        }
        if let Some(b) = &r.betweenness {
            lw.scalar_rows(
                "betweenness",
                &[("sum", fmt_f64(b.sum)), ("max", fmt_f64(b.max)), ("mean", fmt_f64(b.mean))],
            )?;
            for e in &b.top_edges {
                lw.row("betweenness_top", &format!("{}|{}", e.a, e.b), fmt_f64(e.value))?;
            }
        }
        if let Some(t) = &r.triangles {
            lw.scalar_rows(
                "triangles",
                &[
                    ("total", t.total.to_string()),
                    ("max_participation", t.max_participation.to_string()),
                ],
            )?;
            for (k, count) in &t.histogram {
                lw.row("triangle_histogram", &k.to_string(), count.to_string())?;
            }
        }
        if let Some(d) = &r.detection {
            lw.scalar_rows(
                "detection",
                &[
                    ("count_over_730", d.count_over_730.to_string()),
                    ("late_total", d.late_total.to_string()),
                    ("late_infectious", d.late_infectious.to_string()),
                    ("infectious_edges", d.infectious_edges.to_string()),
                ],
            )?;
            for (key, v) in
                [("median", d.median), ("p25", d.p25), ("p75", d.p75), ("max", d.max)]
            {
                if let Some(v) = v {
                    lw.row("detection", key, v.to_string())?;
                }
            }
            if let Some(m) = d.mode_bin_midpoint {
                lw.row("detection", "mode_bin_midpoint", fmt_f64(m))?;
            }
            for (bin, count) in &d.histogram {
                lw.row("detection_histogram", &bin.to_string(), count.to_string())?;
            }
        }
        if let Some(f) = &r.forest {
            lw.scalar_rows(
                "forest",
                &[
                    ("tree_count", f.tree_count.to_string()),
                    ("count_ge2", f.count_ge2.to_string()),
                    ("count_ge3", f.count_ge3.to_string()),
                    ("max_size", f.max_size.to_string()),
                    ("max_depth", f.max_depth.to_string()),
                ],
            )?;
            for (depth, count) in &f.depth_histogram {
                lw.row("forest_depth_histogram", &depth.to_string(), count.to_string())?;
            }
        }
    }
    lw.w.flush()?;
    Ok(())
}

pub fn write_ensemble_csv(path: &Path, rows: &[EnsembleRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["day", "metric", "observed", "null_mean", "null_std", "replicates"])
        .map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.day.to_string(),
            r.metric.as_str().to_string(),
            fmt_f64(r.observed),
            fmt_f64(r.null_mean),
            fmt_f64(r.null_std),
            r.replicates.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// vertex_id,cluster over the full snapshot; vertices outside the clustered
/// giant get cluster -1.
pub fn write_partition_csv(path: &Path, full: &Snapshot, clusters: &ClusterResult) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(["vertex_id", "cluster"]).map_err(csv_err)?;
    for i in 0..full.vertex_count() {
        let id = full.id(i);
        let label = clusters
            .giant
            .index_of(id)
            .map_or(-1, |gi| clusters.partition.assignment[gi] as i64);
        w.write_record([id, label.to_string().as_str()]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Single-column table of replicate values for external plotting.
pub fn write_values_csv(path: &Path, header: &str, values: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record([header]).map_err(csv_err)?;
    for v in values {
        w.write_record([fmt_f64(*v).as_str()]).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
