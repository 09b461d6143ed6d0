//! Thin command-line front end: argument marshaling, config merging, and
//! artifact writing around the library. Every stochastic command takes an
//! explicit --seed; nothing reads the clock, so a rerun with the same flags
//! and inputs reproduces its output byte for byte.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use epitrace_core::clustering::cluster_giant;
use epitrace_core::graph::{snapshot_schedule, TemporalGraph};
use epitrace_core::metrics::giant_component;
use epitrace_core::nullmodel::{ensemble_compare, EnsembleMetric};
use epitrace_core::report::{
    parse_metric_selection, run_battery, timeseries, write_ensemble_csv, write_long_csv,
    write_partition_csv, write_reports_json, write_timeseries_json, write_values_csv,
    BatteryConfig,
};
use epitrace_core::rng::derive_seed;
use epitrace_core::stats::{
    chow_scan, cluster_date_spread, dpl_fit, intra_inter_medians, mc_cluster_randomization,
    mc_edge_subset, segment_fit, ChowScan, ClusterSpread, DplFit, IntraInter, McResult,
    SegmentFit,
};
use epitrace_core::synth::{synth_epidemic, synth_planted_temporal, write_labels, SynthConfig};

type Result<T> = anyhow::Result<T>;

// ---------------------------------------------------------------------------
// Arguments
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(name = "epitrace", version, about = "Temporal contact-network analytics")]
struct Cli {
    /// Cap worker parallelism; output content never depends on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an input database structurally and print a validation report.
    Validate(ValidateArgs),
    /// Run the per-snapshot metric battery over a schedule.
    SnapshotMetrics(SnapshotMetricsArgs),
    /// Compare snapshots against degree-matched configuration-model draws.
    Nullmodel(NullmodelArgs),
    /// Cluster the giant component by modularity.
    Cluster(ClusterArgs),
    /// Monte Carlo tests of temporal homogeneity within clusters.
    Homogeneity(HomogeneityArgs),
    /// Densification power-law fit and breakpoint scan on the growth series.
    Dpl(DplArgs),
    /// Generate a synthetic database.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Vertex table (CSV).
    #[arg(long)]
    vertices: PathBuf,
    /// Edge table (CSV).
    #[arg(long)]
    edges: PathBuf,
}

impl InputArgs {
    fn load(&self) -> Result<TemporalGraph> {
        Ok(TemporalGraph::load(&self.vertices, &self.edges)?)
    }

    fn manifest_inputs(&self) -> BTreeMap<&'static str, String> {
        BTreeMap::from([
            ("vertices", self.vertices.display().to_string()),
            ("edges", self.edges.display().to_string()),
        ])
    }
}

#[derive(Debug, Args)]
struct ScheduleArgs {
    /// First snapshot day.
    #[arg(long)]
    start: Option<i64>,
    /// Last snapshot day; defaults to the latest detection in the input.
    #[arg(long)]
    end: Option<i64>,
    /// Days between snapshots.
    #[arg(long)]
    step: Option<i64>,
    /// Extra snapshot days merged into the schedule (comma-separated).
    #[arg(long, value_delimiter = ',')]
    extra_days: Vec<i64>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Also write validation.json and a manifest here.
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SnapshotMetricsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Output directory, created if missing.
    #[arg(long)]
    out_dir: PathBuf,
    /// JSON config file; explicit flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated metric names, or `all`.
    #[arg(long)]
    metrics: Option<String>,
    /// Effective-diameter quantile.
    #[arg(long)]
    q: Option<f64>,
    /// Share of vertices profiled as most central.
    #[arg(long)]
    fraction: Option<f64>,
    /// Attribute bucket width in days; 0 skips the timeseries table.
    #[arg(long)]
    bucket_days: Option<i64>,
    #[command(flatten)]
    schedule: ScheduleArgs,
}

#[derive(Debug, Args)]
struct NullmodelArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed for the ensembles.
    #[arg(long)]
    seed: u64,
    /// Null draws per snapshot.
    #[arg(long)]
    replicates: Option<usize>,
    /// Comma-separated ensemble metric names, or `all`.
    #[arg(long)]
    metrics: Option<String>,
    #[command(flatten)]
    schedule: ScheduleArgs,
}

#[derive(Debug, Args)]
struct ClusterArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out_dir: PathBuf,
    /// Snapshot day; defaults to the latest detection.
    #[arg(long)]
    day: Option<i64>,
    /// Recorded for provenance; the greedy optimizer is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct HomogeneityArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed for both Monte Carlo tests.
    #[arg(long)]
    seed: u64,
    /// Snapshot day; defaults to the latest detection.
    #[arg(long)]
    day: Option<i64>,
    /// Replicates per Monte Carlo test.
    #[arg(long)]
    replicates: Option<usize>,
}

#[derive(Debug, Args)]
struct DplArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Points per local-slope window.
    #[arg(long)]
    window: Option<usize>,
    /// Minimum fraction of the series kept on each side of a break.
    #[arg(long)]
    trim: Option<f64>,
    #[command(flatten)]
    schedule: ScheduleArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum SynthKind {
    Epidemic,
    Planted,
}

#[derive(Debug, Args)]
struct SynthArgs {
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Generator seed.
    #[arg(long)]
    seed: u64,
    /// Generator family; also settable via the config file.
    #[arg(long, value_enum)]
    kind: Option<SynthKind>,
    /// Epidemic: observation horizon in days.
    #[arg(long)]
    horizon: Option<i64>,
    /// Planted: number of blocks.
    #[arg(long)]
    clusters: Option<usize>,
    /// Planted: vertices per block.
    #[arg(long)]
    size: Option<usize>,
    /// Planted: within-block edge probability.
    #[arg(long)]
    p_in: Option<f64>,
    /// Planted: between-block edge probability.
    #[arg(long)]
    p_out: Option<f64>,
    /// Planted: detection-day spread within a block.
    #[arg(long)]
    spread: Option<i64>,
    /// Planted: detection-day gap between consecutive blocks.
    #[arg(long)]
    gap: Option<i64>,
}

// ---------------------------------------------------------------------------
// Configs
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ScheduleConfig {
    /// None means day 0.
    start: Option<i64>,
    /// None means the latest detection in the input.
    end: Option<i64>,
    step: i64,
    extra_days: Vec<i64>,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig { start: None, end: None, step: 90, extra_days: Vec::new() }
    }
}

impl ScheduleConfig {
    fn apply(&mut self, a: &ScheduleArgs) {
        if a.start.is_some() {
            self.start = a.start;
        }
        if a.end.is_some() {
            self.end = a.end;
        }
        if let Some(step) = a.step {
            self.step = step;
        }
        if !a.extra_days.is_empty() {
            self.extra_days = a.extra_days.clone();
        }
    }

    fn resolve(&self, g: &TemporalGraph) -> Result<Vec<i64>> {
        let start = self.start.unwrap_or(0);
        let end = match self.end {
            Some(end) => end,
            None => g.max_detect_day().unwrap_or(start),
        };
        let mut days = snapshot_schedule(start, end, self.step)?;
        days.extend_from_slice(&self.extra_days);
        days.sort_unstable();
        days.dedup();
        Ok(days)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct SnapshotMetricsConfig {
    schedule: ScheduleConfig,
    battery: BatteryConfig,
    /// Attribute bucket width; 0 skips the timeseries table.
    bucket_days: i64,
}

impl Default for SnapshotMetricsConfig {
    fn default() -> Self {
        SnapshotMetricsConfig {
            schedule: ScheduleConfig::default(),
            battery: BatteryConfig::default(),
            bucket_days: 365,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct NullmodelConfig {
    schedule: ScheduleConfig,
    replicates: usize,
    metrics: Vec<EnsembleMetric>,
}

impl Default for NullmodelConfig {
    fn default() -> Self {
        NullmodelConfig {
            schedule: ScheduleConfig::default(),
            replicates: 100,
            metrics: EnsembleMetric::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct HomogeneityConfig {
    day: Option<i64>,
    replicates: usize,
}

impl Default for HomogeneityConfig {
    fn default() -> Self {
        HomogeneityConfig { day: None, replicates: 1000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct DplConfig {
    schedule: ScheduleConfig,
    window: usize,
    trim: f64,
}

impl Default for DplConfig {
    fn default() -> Self {
        DplConfig { schedule: ScheduleConfig::default(), window: 5, trim: 0.15 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct PlantedConfig {
    clusters: usize,
    size: usize,
    p_in: f64,
    p_out: f64,
    spread: i64,
    gap: i64,
}

impl Default for PlantedConfig {
    fn default() -> Self {
        PlantedConfig { clusters: 4, size: 25, p_in: 0.4, p_out: 0.02, spread: 100, gap: 1000 }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct SynthFileConfig {
    kind: Option<SynthKind>,
    epidemic: SynthConfig,
    planted: PlantedConfig,
}

/// Reads a config JSON. A manifest written by an earlier run is accepted
/// too; its `config` block is unwrapped, so `--config manifest.json` reruns
/// that invocation.
fn load_config<C: serde::de::DeserializeOwned + Default>(path: Option<&Path>) -> Result<C> {
    let Some(path) = path else {
        return Ok(C::default());
    };
    let text = fs::read_to_string(path)
        .map_err(|e| epitrace_core::Error::InvalidConfig(format!("{}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| epitrace_core::Error::InvalidConfig(format!("{}: {e}", path.display())))?;
    let config_value = match &value {
        Value::Object(map) if map.contains_key("command") && map.contains_key("config") => {
            map["config"].clone()
        }
        _ => value,
    };
    serde_json::from_value(config_value)
        .map_err(|e| epitrace_core::Error::InvalidConfig(format!("{}: {e}", path.display())).into())
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct Manifest<'a, C: Serialize> {
    command: &'a str,
    version: &'a str,
    inputs: BTreeMap<&'static str, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    config: &'a C,
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn write_manifest<C: Serialize>(
    out_dir: &Path,
    command: &str,
    inputs: BTreeMap<&'static str, String>,
    seed: Option<u64>,
    config: &C,
) -> Result<()> {
    let manifest = Manifest {
        command,
        version: env!("CARGO_PKG_VERSION"),
        inputs,
        seed,
        config,
    };
    write_json(&out_dir.join("manifest.json"), &manifest)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(())
}

fn resolve_day(g: &TemporalGraph, day: Option<i64>) -> i64 {
    day.unwrap_or_else(|| g.max_detect_day().unwrap_or(0))
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

fn cmd_validate(args: ValidateArgs) -> Result<()> {
    let g = args.input.load()?;
    let report = g.validate();
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    print!("{text}");
    if let Some(out_dir) = &args.out_dir {
        ensure_dir(out_dir)?;
        write_json(&out_dir.join("validation.json"), &report)?;
        let empty = serde_json::Map::new();
        write_manifest(out_dir, "validate", args.input.manifest_inputs(), None, &empty)?;
    }
    Ok(())
}

fn cmd_snapshot_metrics(args: SnapshotMetricsArgs) -> Result<()> {
    let mut cfg: SnapshotMetricsConfig = load_config(args.config.as_deref())?;
    if let Some(spec) = &args.metrics {
        cfg.battery.metrics = parse_metric_selection(spec)?;
    }
    if let Some(q) = args.q {
        cfg.battery.q = q;
    }
    if let Some(fraction) = args.fraction {
        cfg.battery.fraction = fraction;
    }
    if let Some(bucket_days) = args.bucket_days {
        cfg.bucket_days = bucket_days;
    }
    cfg.schedule.apply(&args.schedule);
    cfg.battery.validate()?;

    let g = args.input.load()?;
    let days = cfg.schedule.resolve(&g)?;
    ensure_dir(&args.out_dir)?;
    let reports = run_battery(&g, &days, &cfg.battery)?;
    write_reports_json(&args.out_dir, &reports)?;
    write_long_csv(&args.out_dir.join("metrics_long.csv"), &reports)?;
    if cfg.bucket_days > 0 {
        let buckets = timeseries(&g, cfg.bucket_days)?;
        write_timeseries_json(&args.out_dir.join("timeseries.json"), &buckets)?;
    }
    write_manifest(&args.out_dir, "snapshot-metrics", args.input.manifest_inputs(), None, &cfg)?;
    println!("wrote {} snapshot reports to {}", reports.len(), args.out_dir.display());
    Ok(())
}

fn parse_ensemble_selection(spec: &str) -> Result<Vec<EnsembleMetric>> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(EnsembleMetric::ALL.to_vec());
    }
    let mut out = Vec::new();
    for tok in spec.split(',') {
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let metric = EnsembleMetric::ALL
            .into_iter()
            .find(|m| m.as_str() == tok)
            .ok_or_else(|| {
                epitrace_core::Error::InvalidConfig(format!("unknown ensemble metric '{tok}'"))
            })?;
        if !out.contains(&metric) {
            out.push(metric);
        }
    }
    if out.is_empty() {
        return Err(epitrace_core::Error::InvalidConfig("no ensemble metrics selected".into()).into());
    }
    Ok(out)
}

fn cmd_nullmodel(args: NullmodelArgs) -> Result<()> {
    let mut cfg: NullmodelConfig = load_config(args.config.as_deref())?;
    if let Some(spec) = &args.metrics {
        cfg.metrics = parse_ensemble_selection(spec)?;
    }
    if let Some(replicates) = args.replicates {
        cfg.replicates = replicates;
    }
    cfg.schedule.apply(&args.schedule);

    let g = args.input.load()?;
    let days = cfg.schedule.resolve(&g)?;
    ensure_dir(&args.out_dir)?;
    let rows = ensemble_compare(&g, &days, cfg.replicates, args.seed, &cfg.metrics)?;
    write_ensemble_csv(&args.out_dir.join("ensemble.csv"), &rows)?;
    write_manifest(
        &args.out_dir,
        "nullmodel",
        args.input.manifest_inputs(),
        Some(args.seed),
        &cfg,
    )?;
    println!("wrote {} ensemble rows to {}", rows.len(), args.out_dir.display());
    Ok(())
}

#[derive(Serialize)]
struct ClusterReport {
    day: i64,
    giant_size: usize,
    giant_edges: usize,
    cluster_count: usize,
    modularity: f64,
    /// Members per cluster label.
    cluster_sizes: Vec<usize>,
}

#[derive(Debug, Clone, Copy, Serialize)]
struct ClusterManifestConfig {
    day: i64,
}

fn cmd_cluster(args: ClusterArgs) -> Result<()> {
    let g = args.input.load()?;
    let day = resolve_day(&g, args.day);
    let s = g.snapshot_at(day);
    let clusters = cluster_giant(&s, args.seed)?;
    let partition = &clusters.partition;
    let mut cluster_sizes = vec![0usize; partition.cluster_count];
    for &label in &partition.assignment {
        cluster_sizes[label] += 1;
    }
    ensure_dir(&args.out_dir)?;
    write_partition_csv(&args.out_dir.join("partition.csv"), &s, &clusters)?;
    let report = ClusterReport {
        day,
        giant_size: clusters.giant.vertex_count(),
        giant_edges: clusters.giant.edge_count(),
        cluster_count: partition.cluster_count,
        modularity: partition.modularity,
        cluster_sizes,
    };
    write_json(&args.out_dir.join("cluster.json"), &report)?;
    write_manifest(
        &args.out_dir,
        "cluster",
        args.input.manifest_inputs(),
        Some(args.seed),
        &ClusterManifestConfig { day },
    )?;
    println!(
        "day {day}: {} clusters over {} giant vertices, modularity {:.4}",
        report.cluster_count, report.giant_size, report.modularity
    );
    Ok(())
}

#[derive(Serialize)]
struct HomogeneityReport<'a> {
    day: i64,
    giant_size: usize,
    cluster_count: usize,
    modularity: f64,
    spread: &'a ClusterSpread,
    randomization: &'a McResult,
    intra_inter: &'a IntraInter,
    edge_subset: &'a McResult,
}

fn cmd_homogeneity(args: HomogeneityArgs) -> Result<()> {
    let mut cfg: HomogeneityConfig = load_config(args.config.as_deref())?;
    if args.day.is_some() {
        cfg.day = args.day;
    }
    if let Some(replicates) = args.replicates {
        cfg.replicates = replicates;
    }

    let g = args.input.load()?;
    let day = resolve_day(&g, cfg.day);
    let s = g.snapshot_at(day);
    let clusters = cluster_giant(&s, args.seed)?;
    let giant = &clusters.giant;
    let assignment = &clusters.partition.assignment;

    let spread = cluster_date_spread(giant, assignment)?;
    let randomization =
        mc_cluster_randomization(giant, assignment, cfg.replicates, derive_seed(args.seed, &[0]))?;
    let intra_inter = intra_inter_medians(giant, assignment)?;
    let edge_subset =
        mc_edge_subset(giant, assignment, cfg.replicates, derive_seed(args.seed, &[1]))?;

    ensure_dir(&args.out_dir)?;
    let report = HomogeneityReport {
        day,
        giant_size: giant.vertex_count(),
        cluster_count: clusters.partition.cluster_count,
        modularity: clusters.partition.modularity,
        spread: &spread,
        randomization: &randomization,
        intra_inter: &intra_inter,
        edge_subset: &edge_subset,
    };
    write_json(&args.out_dir.join("homogeneity.json"), &report)?;
    write_values_csv(&args.out_dir.join("randomization_null.csv"), "value", &randomization.null)?;
    write_values_csv(&args.out_dir.join("edge_subset_null.csv"), "value", &edge_subset.null)?;
    let cfg = HomogeneityConfig { day: Some(day), ..cfg };
    write_manifest(
        &args.out_dir,
        "homogeneity",
        args.input.manifest_inputs(),
        Some(args.seed),
        &cfg,
    )?;
    println!(
        "day {day}: randomization percentile {:.2}, edge-subset percentile {:.2}",
        randomization.percentile, edge_subset.percentile
    );
    Ok(())
}

#[derive(Serialize)]
struct DplReport<'a> {
    /// (day, giant vertices, giant edges) per schedule day.
    series: &'a [(i64, usize, usize)],
    fit: &'a DplFit,
    chow: &'a ChowScan,
    segments: &'a SegmentFit,
}

fn cmd_dpl(args: DplArgs) -> Result<()> {
    let mut cfg: DplConfig = load_config(args.config.as_deref())?;
    if let Some(window) = args.window {
        cfg.window = window;
    }
    if let Some(trim) = args.trim {
        cfg.trim = trim;
    }
    cfg.schedule.apply(&args.schedule);

    let g = args.input.load()?;
    let days = cfg.schedule.resolve(&g)?;
    let series: Vec<(i64, usize, usize)> = days
        .iter()
        .map(|&d| {
            let s = g.snapshot_at(d);
            if s.is_empty() {
                (d, 0, 0)
            } else {
                let giant = giant_component(&s).expect("non-empty snapshot has a giant");
                (d, giant.vertex_count(), giant.edge_count())
            }
        })
        .collect();
    let fit = dpl_fit(&series, cfg.window)?;
    let growth: Vec<(i64, f64)> = series.iter().map(|&(d, v, _)| (d, v as f64)).collect();
    let chow = chow_scan(&growth, cfg.trim)?;
    let segments = segment_fit(&growth, chow.best.break_t)?;

    ensure_dir(&args.out_dir)?;
    let report = DplReport { series: &series, fit: &fit, chow: &chow, segments: &segments };
    write_json(&args.out_dir.join("dpl.json"), &report)?;
    write_manifest(&args.out_dir, "dpl", args.input.manifest_inputs(), None, &cfg)?;
    println!(
        "densification exponent {:.3}; break at day {} (F = {:.1})",
        fit.fit.slope, chow.best.break_t, chow.best.f_stat
    );
    Ok(())
}

fn cmd_synth(args: SynthArgs) -> Result<()> {
    let mut cfg: SynthFileConfig = load_config(args.config.as_deref())?;
    if args.kind.is_some() {
        cfg.kind = args.kind;
    }
    let kind = cfg.kind.unwrap_or(SynthKind::Epidemic);
    cfg.kind = Some(kind);
    cfg.epidemic.seed = args.seed;
    if let Some(horizon) = args.horizon {
        cfg.epidemic.horizon_days = horizon;
    }
    if let Some(clusters) = args.clusters {
        cfg.planted.clusters = clusters;
    }
    if let Some(size) = args.size {
        cfg.planted.size = size;
    }
    if let Some(p_in) = args.p_in {
        cfg.planted.p_in = p_in;
    }
    if let Some(p_out) = args.p_out {
        cfg.planted.p_out = p_out;
    }
    if let Some(spread) = args.spread {
        cfg.planted.spread = spread;
    }
    if let Some(gap) = args.gap {
        cfg.planted.gap = gap;
    }

    ensure_dir(&args.out_dir)?;
    let vertices_path = args.out_dir.join("vertices.csv");
    let edges_path = args.out_dir.join("edges.csv");
    let summary = match kind {
        SynthKind::Epidemic => {
            let g = synth_epidemic(&cfg.epidemic)?;
            g.write(&vertices_path, &edges_path)?;
            format!("{} vertices, {} edges", g.vertex_count(), g.edge_count())
        }
        SynthKind::Planted => {
            let p = &cfg.planted;
            let (g, labels) =
                synth_planted_temporal(p.clusters, p.size, p.p_in, p.p_out, p.spread, p.gap, args.seed)?;
            g.write(&vertices_path, &edges_path)?;
            write_labels(&args.out_dir.join("labels.csv"), &labels)?;
            format!("{} vertices, {} edges, {} blocks", g.vertex_count(), g.edge_count(), p.clusters)
        }
    };
    write_manifest(&args.out_dir, "synth", BTreeMap::new(), Some(args.seed), &cfg)?;
    println!("wrote {summary} to {}", args.out_dir.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// Entry
// ---------------------------------------------------------------------------

fn dispatch(cli: Cli) -> Result<()> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("initializing the thread pool")?;
    }
    match cli.command {
        Command::Validate(args) => cmd_validate(args),
        Command::SnapshotMetrics(args) => cmd_snapshot_metrics(args),
        Command::Nullmodel(args) => cmd_nullmodel(args),
        Command::Cluster(args) => cmd_cluster(args),
        Command::Homogeneity(args) => cmd_homogeneity(args),
        Command::Dpl(args) => cmd_dpl(args),
        Command::Synth(args) => cmd_synth(args),
    }
}

/// 2 for structurally invalid input or configuration, 1 for anything else.
fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if let Some(core) = cause.downcast_ref::<epitrace_core::Error>() {
            return if core.is_input_error() { 2 } else { 1 };
        }
    }
    1
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = dispatch(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(exit_code(&e));
    }
}
