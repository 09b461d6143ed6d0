//! Detection-date distances along contact edges, and late-infection edges.

use std::collections::BTreeMap;

use crate::graph::Snapshot;

pub const BIN_WIDTH: i64 = 30;
/// Two years, the partner-notification look-back window.
pub const LATE_WINDOW_DAYS: i64 = 730;

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionDistances {
    /// |detect(u) - detect(v)| per contact edge, aligned with `s.edges()`.
    pub per_edge: Vec<i64>,
    /// Lower median; None when the snapshot has no edges.
    pub median: Option<i64>,
    pub p25: Option<i64>,
    pub p75: Option<i64>,
    pub max: Option<i64>,
    /// Edges whose endpoints were detected more than 730 days apart.
    pub count_over_730: usize,
    /// 30-day bins: bin start day -> edge count.
    pub histogram: BTreeMap<i64, u64>,
    /// Midpoint of the fullest bin (smallest bin wins ties); a statement
    /// about the binned distribution, so it moves with the bin width.
    pub mode_bin_midpoint: Option<f64>,
}

/// Lower quantile: the element at rank ceil(p * n) (1-based) of the sorted
/// sample. For p = 0.5 and even n this is the lower median.
pub(crate) fn lower_quantile(sorted: &[i64], p: f64) -> Option<i64> {
    if sorted.is_empty() {
        return None;
    }
    let rank = (p * sorted.len() as f64).ceil() as usize;
    Some(sorted[rank.clamp(1, sorted.len()) - 1])
}

pub fn detection_distances(s: &Snapshot) -> DetectionDistances {
    let per_edge: Vec<i64> = s
        .edges()
        .iter()
        .map(|&(u, v)| (s.record(u).detect_day - s.record(v).detect_day).abs())
        .collect();
    let mut sorted = per_edge.clone();
    sorted.sort_unstable();
    let mut histogram = BTreeMap::new();
    for &d in &per_edge {
        *histogram.entry((d / BIN_WIDTH) * BIN_WIDTH).or_insert(0u64) += 1;
    }
    let mode_bin_midpoint = histogram
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&start, _)| start as f64 + BIN_WIDTH as f64 / 2.0);
    DetectionDistances {
        median: lower_quantile(&sorted, 0.5),
        p25: lower_quantile(&sorted, 0.25),
        p75: lower_quantile(&sorted, 0.75),
        max: sorted.last().copied(),
        count_over_730: per_edge.iter().filter(|&&d| d > LATE_WINDOW_DAYS).count(),
        histogram,
        mode_bin_midpoint,
        per_edge,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LateInfectionCounts {
    /// Contact edges where one endpoint's detection predates the other
    /// endpoint's recorded infection by more than 730 days.
    pub total: usize,
    /// The subset of those that carry an infection arc.
    pub infectious: usize,
    /// All infection-carrying edges, as the denominator.
    pub infectious_edges: usize,
}

pub fn late_infection_edges(s: &Snapshot) -> LateInfectionCounts {
    let mut arc_edges: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    for &(f, t) in s.arcs() {
        arc_edges.insert((f.min(t), f.max(t)));
    }
    let mut total = 0;
    let mut infectious = 0;
    for &(u, v) in s.edges() {
        let (ru, rv) = (s.record(u), s.record(v));
        let late = matches!(rv.infect_day, Some(iv) if ru.detect_day + LATE_WINDOW_DAYS < iv)
            || matches!(ru.infect_day, Some(iu) if rv.detect_day + LATE_WINDOW_DAYS < iu);
        if late {
            total += 1;
            if arc_edges.contains(&(u, v)) {
                infectious += 1;
            }
        }
    }
    LateInfectionCounts { total, infectious, infectious_edges: arc_edges.len() }
}
