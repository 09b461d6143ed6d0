//! Degree statistics and the discrete power-law exponent fit.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Snapshot;

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeStats {
    /// Degree per vertex index.
    pub degrees: Vec<usize>,
    /// 2|E| / |V|; 0 for the empty snapshot.
    pub mean: f64,
    pub max: usize,
    /// degree -> vertex count.
    pub histogram: BTreeMap<usize, usize>,
}

pub fn degree_stats(s: &Snapshot) -> DegreeStats {
    let degrees: Vec<usize> = (0..s.vertex_count()).map(|i| s.degree(i)).collect();
    let mut histogram = BTreeMap::new();
    for &d in &degrees {
        *histogram.entry(d).or_insert(0) += 1;
    }
    let mean = if s.vertex_count() == 0 {
        0.0
    } else {
        2.0 * s.edge_count() as f64 / s.vertex_count() as f64
    };
    DegreeStats { mean, max: degrees.iter().copied().max().unwrap_or(0), degrees, histogram }
}

const ALPHA_LO: f64 = 1.01;
const ALPHA_HI: f64 = 10.0;
const ALPHA_TOL: f64 = 1e-4;

/// Fit the exponent of p(k) ~ k^-alpha to the degrees >= `k_min` of the
/// histogram by minimizing the KL divergence from the empirical distribution
/// to the model, normalized over the truncated support k_min..=k_max where
/// k_max is the largest observed degree. Minimization is golden-section
/// search on [1.01, 10] to an absolute tolerance of 1e-4; the objective is
/// strictly convex so the minimum is unique. Returns the exponent together
/// with the attained divergence in nats.
pub fn power_law_exponent(histogram: &BTreeMap<usize, usize>, k_min: usize) -> Result<(f64, f64)> {
    let k_min = k_min.max(1);
    let support: Vec<(usize, usize)> = histogram
        .iter()
        .filter(|&(&k, &c)| k >= k_min && c > 0)
        .map(|(&k, &c)| (k, c))
        .collect();
    if support.len() < 2 {
        return Err(Error::DegenerateHistogram);
    }
    let k_max = support.last().unwrap().0;
    let total: f64 = support.iter().map(|&(_, c)| c as f64).sum();
    // KL(emp || model) = const + alpha * mean_emp[ln k] + ln Z(alpha).
    let mean_log_k: f64 =
        support.iter().map(|&(k, c)| c as f64 * (k as f64).ln()).sum::<f64>() / total;
    let log_z = |alpha: f64| -> f64 {
        (k_min..=k_max)
            .map(|k| (-alpha * (k as f64).ln()).exp())
            .sum::<f64>()
            .ln()
    };
    let objective = |alpha: f64| alpha * mean_log_k + log_z(alpha);

    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut a = ALPHA_LO;
    let mut b = ALPHA_HI;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = objective(c);
    let mut fd = objective(d);
    while b - a > ALPHA_TOL {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    let alpha = 0.5 * (a + b);
    // objective = cross-entropy up to the empirical entropy, which does not
    // depend on alpha; adding it back yields the divergence itself.
    let emp_entropy: f64 = support
        .iter()
        .map(|&(_, c)| {
            let p = c as f64 / total;
            p * p.ln()
        })
        .sum();
    Ok((alpha, objective(alpha) + emp_entropy))
}
