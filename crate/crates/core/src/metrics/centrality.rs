//! Eigenvector centrality and the profile of the most central vertices.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Group, Snapshot};
use crate::metrics::degree_stats;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityResult {
    /// Unit Euclidean norm over the whole snapshot; isolated vertices score
    /// exactly 0.
    pub scores: Vec<f64>,
    /// Rayleigh quotient x'Ax of the final iterate.
    pub eigenvalue: f64,
    /// Max-norm of Ax - lambda x at the final iterate.
    pub residual: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Power iteration for the principal eigenvector of the adjacency matrix.
///
/// The iteration actually runs on A + I restricted to non-isolated vertices:
/// same eigenvectors, but the shift makes the principal eigenvalue strictly
/// dominant on bipartite components too, where iterating A itself oscillates
/// forever (a 3-path alternates between two vectors from the uniform start).
/// Isolated vertices are excluded and scored 0, which is exact: any
/// eigenvector with positive eigenvalue vanishes where the row of A is zero.
pub fn eigenvector_centrality(s: &Snapshot, tol: f64, max_iter: usize) -> Result<CentralityResult> {
    if s.is_empty() {
        return Err(Error::EmptySnapshot);
    }
    if s.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = s.vertex_count();
    let active: Vec<usize> = (0..n).filter(|&i| s.degree(i) > 0).collect();

    let mut x = vec![0.0f64; n];
    let init = (active.len() as f64).sqrt().recip();
    for &v in &active {
        x[v] = init;
    }
    let mut y = vec![0.0f64; n];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        for &v in &active {
            let mut acc = x[v];
            for &u in s.neighbors(v) {
                acc += x[u];
            }
            y[v] = acc;
        }
        let norm = active.iter().map(|&v| y[v] * y[v]).sum::<f64>().sqrt();
        let mut diff = 0.0f64;
        for &v in &active {
            let yv = y[v] / norm;
            diff = diff.max((yv - x[v]).abs());
            x[v] = yv;
        }
        if diff <= tol {
            converged = true;
            break;
        }
    }

    // Rayleigh quotient and residual against A itself.
    let ax: Vec<f64> = (0..n)
        .map(|v| s.neighbors(v).iter().map(|&u| x[u]).sum::<f64>())
        .collect();
    let eigenvalue: f64 = (0..n).map(|v| x[v] * ax[v]).sum();
    let residual = (0..n)
        .map(|v| (ax[v] - eigenvalue * x[v]).abs())
        .fold(0.0f64, f64::max);

    Ok(CentralityResult { scores: x, eigenvalue, residual, iterations, converged })
}

/// Attribute profile of the top `fraction` of vertices by eigenvector score.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralProfile {
    pub count: usize,
    pub fraction: f64,
    /// Percent of the selected vertices per group; all three groups keyed.
    pub group_percent: BTreeMap<String, f64>,
    pub female_percent: f64,
    pub male_percent: f64,
    pub method_percent: BTreeMap<String, f64>,
    pub province_percent: BTreeMap<String, f64>,
    pub mean_degree: f64,
    /// Population standard deviation of the selected vertices' degrees.
    pub std_degree: f64,
    pub mean_age: Option<f64>,
    pub members: Vec<String>,
}

/// Selects ceil(fraction * |V|) vertices by descending score, ties broken by
/// ascending id.
pub fn top_central_profile(s: &Snapshot, fraction: f64, tol: f64, max_iter: usize) -> Result<CentralProfile> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "fraction must be in (0, 1], got {fraction}"
        )));
    }
    let cent = eigenvector_centrality(s, tol, max_iter)?;
    let n = s.vertex_count();
    let count = (fraction * n as f64).ceil() as usize;
    let count = count.clamp(1, n);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        cent.scores[j]
            .partial_cmp(&cent.scores[i])
            .unwrap()
            .then_with(|| s.id(i).cmp(s.id(j)))
    });
    let selected = &order[..count];

    let stats = degree_stats(s);
    let mut group_counts: BTreeMap<Group, usize> = BTreeMap::new();
    let mut method_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut province_counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut degree_sum = 0usize;
    let mut age_sum = 0.0f64;
    let mut age_n = 0usize;
    for &v in selected {
        let r = s.record(v);
        *group_counts.entry(r.group).or_insert(0) += 1;
        *method_counts.entry(r.method.as_str().to_string()).or_insert(0) += 1;
        *province_counts.entry(r.province.clone()).or_insert(0) += 1;
        degree_sum += stats.degrees[v];
        if let Some(a) = r.age {
            age_sum += a;
            age_n += 1;
        }
    }
    let pct = |c: usize| 100.0 * c as f64 / count as f64;
    let group_percent: BTreeMap<String, f64> = Group::ALL
        .iter()
        .map(|&g| (g.as_str().to_string(), pct(group_counts.get(&g).copied().unwrap_or(0))))
        .collect();
    let female = group_counts.get(&Group::Woman).copied().unwrap_or(0);
    let mean_degree = degree_sum as f64 / count as f64;
    let var = selected
        .iter()
        .map(|&v| {
            let d = stats.degrees[v] as f64 - mean_degree;
            d * d
        })
        .sum::<f64>()
        / count as f64;

    Ok(CentralProfile {
        count,
        fraction,
        female_percent: pct(female),
        male_percent: pct(count - female),
        group_percent,
        method_percent: method_counts.into_iter().map(|(k, c)| (k, pct(c))).collect(),
        province_percent: province_counts.into_iter().map(|(k, c)| (k, pct(c))).collect(),
        mean_degree,
        std_degree: var.sqrt(),
        mean_age: if age_n > 0 { Some(age_sum / age_n as f64) } else { None },
        members: selected.iter().map(|&v| s.id(v).to_string()).collect(),
    })
}
