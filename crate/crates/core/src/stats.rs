//! Temporal statistics: cluster date spread, Monte Carlo homogeneity tests,
//! densification fits, and structural-break detection.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, FisherSnedecor, StudentsT};

use crate::clustering::{check_coverage, edge_partition_sides};
use crate::error::{Error, Result};
use crate::graph::Snapshot;
use crate::metrics::detection::lower_quantile;
use crate::rng::rng_from_seed;

fn population_std(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
}

/// Lower median of an unsorted f64 sample.
fn lower_median_f64(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Some(sorted[(sorted.len() - 1) / 2])
}

// ---------------------------------------------------------------------------
// Detection-date spread per cluster
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSpread {
    /// (cluster label, size, detection-day population std) for every cluster
    /// with at least two members, in label order.
    pub per_cluster: Vec<(usize, usize, f64)>,
    /// Lower median of the per-cluster stds; None when no cluster qualifies.
    pub median_std: Option<f64>,
    /// Population std of detection days over all snapshot vertices.
    pub global_std: f64,
    /// Clusters whose std is strictly below the global std.
    pub clusters_below_global: usize,
    /// Clusters that entered the comparison (size >= 2).
    pub considered: usize,
}

pub fn cluster_date_spread(s: &Snapshot, assignment: &[usize]) -> Result<ClusterSpread> {
    check_coverage(s, assignment)?;
    if s.is_empty() {
        return Err(Error::EmptySnapshot);
    }
    let all_days: Vec<f64> = s.vertices().iter().map(|v| v.detect_day as f64).collect();
    let global_std = population_std(&all_days);
    let mut by_cluster: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (v, &label) in assignment.iter().enumerate() {
        by_cluster.entry(label).or_default().push(all_days[v]);
    }
    let per_cluster: Vec<(usize, usize, f64)> = by_cluster
        .iter()
        .filter(|(_, days)| days.len() >= 2)
        .map(|(&label, days)| (label, days.len(), population_std(days)))
        .collect();
    let stds: Vec<f64> = per_cluster.iter().map(|&(_, _, std)| std).collect();
    Ok(ClusterSpread {
        median_std: lower_median_f64(&stds),
        global_std,
        clusters_below_global: stds.iter().filter(|&&v| v < global_std).count(),
        considered: per_cluster.len(),
        per_cluster,
    })
}

// ---------------------------------------------------------------------------
// Monte Carlo homogeneity tests
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McResult {
    pub observed: f64,
    /// Null statistic per replicate, in draw order.
    pub null: Vec<f64>,
    /// Replicates with null value <= observed.
    pub count_le: usize,
    /// Replicates with null value >= observed.
    pub count_ge: usize,
    /// 100 * count_le / replicates: the observed value's percentile within
    /// the null distribution. Small values mean the observed statistic sits
    /// in the left tail.
    pub percentile: f64,
}

impl McResult {
    fn from_null(observed: f64, null: Vec<f64>) -> McResult {
        let count_le = null.iter().filter(|&&v| v <= observed).count();
        let count_ge = null.iter().filter(|&&v| v >= observed).count();
        let percentile = 100.0 * count_le as f64 / null.len() as f64;
        McResult { observed, null, count_le, count_ge, percentile }
    }
}

fn median_cluster_std(days: &[f64], labels: &[usize]) -> Option<f64> {
    let mut by_cluster: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (v, &label) in labels.iter().enumerate() {
        by_cluster.entry(label).or_default().push(days[v]);
    }
    let stds: Vec<f64> = by_cluster
        .values()
        .filter(|d| d.len() >= 2)
        .map(|d| population_std(d))
        .collect();
    lower_median_f64(&stds)
}

/// Test whether clusters concentrate detection dates: the observed statistic
/// is the median per-cluster date std, and the null redistributes vertices
/// over the same cluster sizes by shuffling the label vector. Replicates are
/// drawn from one sequential generator, so a given (assignment, replicates,
/// seed) triple always yields the same draws.
pub fn mc_cluster_randomization(
    s: &Snapshot,
    assignment: &[usize],
    replicates: usize,
    seed: u64,
) -> Result<McResult> {
    check_coverage(s, assignment)?;
    if replicates == 0 {
        return Err(Error::InvalidConfig("replicates must be >= 1".into()));
    }
    let days: Vec<f64> = s.vertices().iter().map(|v| v.detect_day as f64).collect();
    let observed = median_cluster_std(&days, assignment)
        .ok_or(Error::InsufficientData { need: 1, have: 0 })?;
    let mut rng = rng_from_seed(seed);
    let mut labels = assignment.to_vec();
    let null: Vec<f64> = (0..replicates)
        .map(|_| {
            labels.shuffle(&mut rng);
            median_cluster_std(&days, &labels).expect("shuffling preserves cluster sizes")
        })
        .collect();
    Ok(McResult::from_null(observed, null))
}

/// Detection-day distances of edges split by cluster side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntraInter {
    pub intra_count: usize,
    pub inter_count: usize,
    /// Lower medians of |detect(u) - detect(v)| per side.
    pub intra_median: Option<i64>,
    pub inter_median: Option<i64>,
}

fn edge_date_distances(s: &Snapshot) -> Vec<i64> {
    s.edges()
        .iter()
        .map(|&(u, v)| (s.record(u).detect_day - s.record(v).detect_day).abs())
        .collect()
}

pub fn intra_inter_medians(s: &Snapshot, assignment: &[usize]) -> Result<IntraInter> {
    let (intra, inter) = edge_partition_sides(s, assignment)?;
    let dists = edge_date_distances(s);
    let side_median = |idx: &[usize]| {
        let mut vals: Vec<i64> = idx.iter().map(|&i| dists[i]).collect();
        vals.sort_unstable();
        lower_quantile(&vals, 0.5)
    };
    Ok(IntraInter {
        intra_count: intra.len(),
        inter_count: inter.len(),
        intra_median: side_median(&intra),
        inter_median: side_median(&inter),
    })
}

/// Test whether intra-cluster edges have unusually close detection dates:
/// the observed statistic is the median date distance over intra-cluster
/// edges, and each null replicate takes the median over an equally sized
/// uniform edge subset drawn without replacement.
pub fn mc_edge_subset(
    s: &Snapshot,
    assignment: &[usize],
    replicates: usize,
    seed: u64,
) -> Result<McResult> {
    if replicates == 0 {
        return Err(Error::InvalidConfig("replicates must be >= 1".into()));
    }
    let (intra, _) = edge_partition_sides(s, assignment)?;
    if intra.is_empty() {
        return Err(Error::InsufficientData { need: 1, have: 0 });
    }
    let dists = edge_date_distances(s);
    let observed = {
        let mut vals: Vec<i64> = intra.iter().map(|&i| dists[i]).collect();
        vals.sort_unstable();
        lower_quantile(&vals, 0.5).expect("nonempty") as f64
    };
    let mut rng = rng_from_seed(seed);
    let null: Vec<f64> = (0..replicates)
        .map(|_| {
            let mut vals: Vec<i64> = rand::seq::index::sample(&mut rng, dists.len(), intra.len())
                .iter()
                .map(|i| dists[i])
                .collect();
            vals.sort_unstable();
            lower_quantile(&vals, 0.5).expect("nonempty") as f64
        })
        .collect();
    Ok(McResult::from_null(observed, null))
}

// ---------------------------------------------------------------------------
// Ordinary least squares
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    /// 1 - SSR/TSS; defined as 1 when the response is constant.
    pub r_squared: f64,
    /// Two-sided 95% confidence interval for the slope; collapses to the
    /// point estimate when there are no residual degrees of freedom.
    pub slope_ci: (f64, f64),
    /// SSR / (n - 2); 0 when n = 2.
    pub residual_variance: f64,
    pub n: usize,
}

pub fn ols(x: &[f64], y: &[f64]) -> Result<RegressionFit> {
    if x.len() != y.len() {
        return Err(Error::InvalidConfig(format!(
            "predictor and response lengths differ ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::InsufficientData { need: 2, have: n });
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let sxx: f64 = x.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let tss: f64 = y.iter().map(|v| (v - my) * (v - my)).sum();
    if sxx == 0.0 {
        return Err(Error::ZeroVariance);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = x
        .iter()
        .zip(y)
        .map(|(a, b)| {
            let r = b - (intercept + slope * a);
            r * r
        })
        .sum();
    let r_squared = if tss == 0.0 { 1.0 } else { 1.0 - ssr / tss };
    let residual_variance = if n > 2 { ssr / (nf - 2.0) } else { 0.0 };
    let slope_ci = if n > 2 {
        let se = (residual_variance / sxx).sqrt();
        let t = StudentsT::new(0.0, 1.0, nf - 2.0)
            .expect("valid dof")
            .inverse_cdf(0.975);
        (slope - t * se, slope + t * se)
    } else {
        (slope, slope)
    };
    Ok(RegressionFit { slope, intercept, r_squared, slope_ci, residual_variance, n })
}

// ---------------------------------------------------------------------------
// Densification fit
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DplFit {
    /// OLS of ln|E| on ln|V| over the usable points.
    pub fit: RegressionFit,
    /// (mean day of window, windowed slope) per full window of consecutive
    /// usable points; windows with constant ln|V| are skipped.
    pub local_slopes: Vec<(f64, f64)>,
    pub points_used: usize,
}

/// Fit the growth exponent of edges against vertices over a snapshot series
/// of (day, |V|, |E|) points. Points with no vertices or no edges carry no
/// information on the log-log line and are dropped.
pub fn dpl_fit(series: &[(i64, usize, usize)], window: usize) -> Result<DplFit> {
    if window < 2 {
        return Err(Error::InvalidConfig("window must be >= 2".into()));
    }
    let points: Vec<(f64, f64, f64)> = series
        .iter()
        .filter(|&&(_, v, e)| v >= 1 && e >= 1)
        .map(|&(day, v, e)| (day as f64, (v as f64).ln(), (e as f64).ln()))
        .collect();
    if points.len() < 3 {
        return Err(Error::InsufficientData { need: 3, have: points.len() });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.1).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.2).collect();
    let fit = ols(&xs, &ys)?;
    let mut local_slopes = Vec::new();
    if points.len() >= window {
        for w in points.windows(window) {
            let wx: Vec<f64> = w.iter().map(|p| p.1).collect();
            let wy: Vec<f64> = w.iter().map(|p| p.2).collect();
            if let Ok(f) = ols(&wx, &wy) {
                let center = w.iter().map(|p| p.0).sum::<f64>() / window as f64;
                local_slopes.push((center, f.slope));
            }
        }
    }
    Ok(DplFit { fit, local_slopes, points_used: points.len() })
}

// ---------------------------------------------------------------------------
// Structural break detection
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChowResult {
    pub break_t: i64,
    pub f_stat: f64,
    pub p_value: f64,
    pub n_left: usize,
    pub n_right: usize,
}

fn fit_ssr(points: &[(f64, f64)]) -> Result<f64> {
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let fit = ols(&xs, &ys)?;
    Ok(xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (fit.intercept + fit.slope * x);
            r * r
        })
        .sum())
}

/// Chow test for a slope/intercept break after time `break_t`: points with
/// t <= break_t form the left segment. F has (2, n-4) degrees of freedom.
pub fn chow_test(series: &[(i64, f64)], break_t: i64) -> Result<ChowResult> {
    let left: Vec<(f64, f64)> =
        series.iter().filter(|&&(t, _)| t <= break_t).map(|&(t, y)| (t as f64, y)).collect();
    let right: Vec<(f64, f64)> =
        series.iter().filter(|&&(t, _)| t > break_t).map(|&(t, y)| (t as f64, y)).collect();
    let n = series.len();
    if left.len() < 3 || right.len() < 3 {
        return Err(Error::InsufficientData { need: 3, have: left.len().min(right.len()) });
    }
    let pooled: Vec<(f64, f64)> = series.iter().map(|&(t, y)| (t as f64, y)).collect();
    let ssr_p = fit_ssr(&pooled)?;
    let ssr_1 = fit_ssr(&left)?;
    let ssr_2 = fit_ssr(&right)?;
    // A pooled fit this close to exact leaves nothing for a break to explain;
    // the threshold is relative to the response scale.
    let scale: f64 = pooled.iter().map(|p| p.1 * p.1).sum::<f64>().max(f64::MIN_POSITIVE);
    let (f_stat, p_value) = if ssr_p <= 1e-12 * scale {
        (0.0, 1.0)
    } else {
        let denom = (ssr_1 + ssr_2) / (n as f64 - 4.0);
        if denom == 0.0 {
            (f64::INFINITY, 0.0)
        } else {
            let f = ((ssr_p - ssr_1 - ssr_2) / 2.0) / denom;
            let f = f.max(0.0);
            let dist = FisherSnedecor::new(2.0, n as f64 - 4.0).expect("valid dof");
            (f, 1.0 - dist.cdf(f))
        }
    };
    Ok(ChowResult { break_t, f_stat, p_value, n_left: left.len(), n_right: right.len() })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChowScan {
    pub best: ChowResult,
    /// (candidate break, F statistic) for every evaluated candidate.
    pub profile: Vec<(i64, f64)>,
}

/// Evaluate the Chow test at every admissible break point and keep the
/// largest F; ties go to the earliest break. Candidates leave at least
/// `max(3, ceil(trim * n))` points on each side.
pub fn chow_scan(series: &[(i64, f64)], trim: f64) -> Result<ChowScan> {
    if !(0.0..0.5).contains(&trim) {
        return Err(Error::InvalidConfig(format!("trim must be in [0, 0.5), got {trim}")));
    }
    let n = series.len();
    let min_side = ((trim * n as f64).ceil() as usize).max(3);
    let mut ts: Vec<i64> = series.iter().map(|&(t, _)| t).collect();
    ts.sort_unstable();
    ts.dedup();
    let mut best: Option<ChowResult> = None;
    let mut profile = Vec::new();
    for &t in &ts {
        let n_left = series.iter().filter(|&&(u, _)| u <= t).count();
        if n_left < min_side || n - n_left < min_side {
            continue;
        }
        let res = chow_test(series, t)?;
        profile.push((t, res.f_stat));
        if best.as_ref().is_none_or(|b| res.f_stat > b.f_stat) {
            best = Some(res);
        }
    }
    match best {
        Some(best) => Ok(ChowScan { best, profile }),
        None => Err(Error::InsufficientData { need: 2 * min_side, have: n }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentFit {
    pub left: RegressionFit,
    pub right: RegressionFit,
}

/// Independent OLS lines on the two sides of a break (left side: t <= break).
pub fn segment_fit(series: &[(i64, f64)], break_t: i64) -> Result<SegmentFit> {
    let side = |keep_left: bool| -> Result<RegressionFit> {
        let xs: Vec<f64> = series
            .iter()
            .filter(|&&(t, _)| (t <= break_t) == keep_left)
            .map(|&(t, _)| t as f64)
            .collect();
        let ys: Vec<f64> = series
            .iter()
            .filter(|&&(t, _)| (t <= break_t) == keep_left)
            .map(|&(_, y)| y)
            .collect();
        ols(&xs, &ys)
    };
    Ok(SegmentFit { left: side(true)?, right: side(false)? })
}
