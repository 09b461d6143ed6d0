//! Modularity clustering of the giant component.
//!
//! Giants small enough to score every partition are optimized exactly; the
//! rest go through a heuristic. That one is agglomerative: starting from
//! singletons it repeatedly applies the adjacent cluster merge with the
//! largest modularity gain, then sweeps single-vertex moves until none
//! improves, and repeats both phases while the recomputed score keeps
//! improving. All ties break on the smallest candidate under a total order,
//! so the outcome is deterministic.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::graph::Snapshot;
use crate::metrics::giant_component;

/// Minimum score improvement treated as real during refinement.
const GAIN_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    /// Cluster label per snapshot vertex, canonicalized so labels appear in
    /// ascending order of first use (vertex 0 is always in cluster 0).
    pub assignment: Vec<usize>,
    pub cluster_count: usize,
    pub modularity: f64,
}

#[derive(Debug, Clone)]
pub struct ClusterResult {
    /// The giant component that was clustered, with its own vertex indexing.
    pub giant: Snapshot,
    pub partition: Partition,
}

pub(crate) fn check_coverage(s: &Snapshot, assignment: &[usize]) -> Result<()> {
    let n = s.vertex_count();
    if assignment.len() < n {
        return Err(Error::UncoveredVertex { id: s.id(assignment.len()).to_string() });
    }
    if assignment.len() > n {
        return Err(Error::InvalidConfig(format!(
            "assignment has {} entries for {} vertices",
            assignment.len(),
            n
        )));
    }
    Ok(())
}

/// Newman modularity of a labeled snapshot: sum over clusters of
/// e_c/m - (d_c/2m)^2, with e_c the intra-cluster edge count and d_c the
/// total degree of the cluster's vertices.
pub fn modularity(s: &Snapshot, assignment: &[usize]) -> Result<f64> {
    check_coverage(s, assignment)?;
    let m = s.edge_count() as f64;
    if s.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    // BTreeMap keeps the summation order independent of hash seeding.
    let mut acc: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
    for v in 0..s.vertex_count() {
        acc.entry(assignment[v]).or_insert((0.0, 0.0)).1 += s.degree(v) as f64;
    }
    for &(u, v) in s.edges() {
        if assignment[u] == assignment[v] {
            acc.get_mut(&assignment[u]).expect("cluster seen above").0 += 1.0;
        }
    }
    Ok(acc
        .values()
        .map(|&(e, d)| e / m - (d / (2.0 * m)) * (d / (2.0 * m)))
        .sum())
}

/// One agglomerative pass: keep applying the best positive-gain merge of two
/// adjacent clusters. Returns whether anything merged.
fn merge_phase(giant: &Snapshot, cluster_of: &mut [usize]) -> bool {
    let n = giant.vertex_count();
    let m = giant.edge_count() as f64;

    // Compact the incoming labels to 0..k, preserving their relative order so
    // the "smallest pair" tie-break stays meaningful across rounds.
    let dense: BTreeMap<usize, usize> = {
        let mut labels: Vec<usize> = cluster_of.to_vec();
        labels.sort_unstable();
        labels.dedup();
        labels.into_iter().enumerate().map(|(i, l)| (l, i)).collect()
    };
    let k = dense.len();
    let c: Vec<usize> = cluster_of.iter().map(|l| dense[l]).collect();

    let mut degree = vec![0.0f64; k];
    for v in 0..n {
        degree[c[v]] += giant.degree(v) as f64;
    }
    let mut between: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); k];
    for &(u, v) in giant.edges() {
        let (cu, cv) = (c[u], c[v]);
        if cu != cv {
            *between[cu].entry(cv).or_insert(0.0) += 1.0;
            *between[cv].entry(cu).or_insert(0.0) += 1.0;
        }
    }

    let mut parent: Vec<usize> = (0..k).collect();
    let mut alive = vec![true; k];
    let mut merged_any = false;
    loop {
        let mut best: Option<(f64, usize, usize)> = None;
        for i in 0..k {
            if !alive[i] {
                continue;
            }
            for (&j, &w) in between[i].range(i + 1..) {
                let dq = w / m - degree[i] * degree[j] / (2.0 * m * m);
                if best.is_none_or(|(b, _, _)| dq > b) {
                    best = Some((dq, i, j));
                }
            }
        }
        let Some((dq, i, j)) = best else { break };
        if dq <= 0.0 {
            break;
        }
        merged_any = true;
        between[i].remove(&j);
        between[j].remove(&i);
        degree[i] += degree[j];
        let absorbed: Vec<(usize, f64)> = between[j].iter().map(|(&t, &w)| (t, w)).collect();
        for (t, w) in absorbed {
            *between[i].entry(t).or_insert(0.0) += w;
            between[t].remove(&j);
            *between[t].entry(i).or_insert(0.0) += w;
        }
        between[j].clear();
        alive[j] = false;
        parent[j] = i;
    }

    if merged_any {
        let find = |mut x: usize| {
            while parent[x] != x {
                x = parent[x];
            }
            x
        };
        for (v, label) in cluster_of.iter_mut().enumerate() {
            *label = find(c[v]);
        }
    }
    merged_any
}

/// Single-vertex move sweeps in ascending vertex order, repeated until no
/// move improves the score by more than `GAIN_EPS`. Returns whether any
/// vertex moved.
fn refine_phase(giant: &Snapshot, cluster_of: &mut [usize]) -> bool {
    let n = giant.vertex_count();
    let m = giant.edge_count() as f64;
    let mut degree_sum: BTreeMap<usize, f64> = BTreeMap::new();
    for v in 0..n {
        *degree_sum.entry(cluster_of[v]).or_insert(0.0) += giant.degree(v) as f64;
    }
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for v in 0..n {
            let a = cluster_of[v];
            let kv = giant.degree(v) as f64;
            let mut links: BTreeMap<usize, f64> = BTreeMap::new();
            for &u in giant.neighbors(v) {
                *links.entry(cluster_of[u]).or_insert(0.0) += 1.0;
            }
            let e_va = links.get(&a).copied().unwrap_or(0.0);
            let d_a = degree_sum[&a];
            let mut best: Option<(f64, usize)> = None;
            for (&b, &e_vb) in &links {
                if b == a {
                    continue;
                }
                let d_b = degree_sum.get(&b).copied().unwrap_or(0.0);
                let gain = (e_vb - e_va) / m - kv * (d_b - (d_a - kv)) / (2.0 * m * m);
                if best.is_none_or(|(g, _)| gain > g) {
                    best = Some((gain, b));
                }
            }
            if let Some((gain, b)) = best {
                if gain > GAIN_EPS {
                    *degree_sum.get_mut(&a).expect("source cluster tracked") -= kv;
                    *degree_sum.entry(b).or_insert(0.0) += kv;
                    cluster_of[v] = b;
                    moved = true;
                    moved_any = true;
                }
            }
        }
        if !moved {
            break;
        }
    }
    moved_any
}

/// Largest giant that is clustered by exhaustive search instead of the
/// greedy phases. Bell(11) partitions still score in well under a second,
/// and exactness at sizes where the optimum can be verified keeps the greedy
/// path honest.
const EXACT_SEARCH_MAX: usize = 11;

/// Score every partition of the giant, enumerated as restricted growth
/// strings, and keep the first maximizer. First-use label order makes the
/// winning assignment canonical as is.
fn exact_partition(giant: &Snapshot) -> Result<Partition> {
    fn rec(
        giant: &Snapshot,
        labels: &mut Vec<usize>,
        i: usize,
        used: usize,
        best: &mut (f64, Vec<usize>, usize),
    ) -> Result<()> {
        if i == labels.len() {
            let q = modularity(giant, labels)?;
            if q > best.0 {
                *best = (q, labels.clone(), used);
            }
            return Ok(());
        }
        for l in 0..=used {
            labels[i] = l;
            rec(giant, labels, i + 1, used.max(l + 1), best)?;
        }
        Ok(())
    }
    let n = giant.vertex_count();
    let mut labels = vec![0usize; n];
    let mut best = (f64::NEG_INFINITY, Vec::new(), 0);
    rec(giant, &mut labels, 1, 1, &mut best)?;
    let (modularity, assignment, cluster_count) = best;
    Ok(Partition { assignment, cluster_count, modularity })
}

/// Extract the giant component of `s` and cluster it by modularity. The
/// procedure is fully deterministic; `seed` is accepted for uniformity with
/// the other analysis entry points and does not influence the result.
pub fn cluster_giant(s: &Snapshot, seed: u64) -> Result<ClusterResult> {
    let _ = seed;
    let giant = giant_component(s)?;
    if giant.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let n = giant.vertex_count();
    if n <= EXACT_SEARCH_MAX {
        let partition = exact_partition(&giant)?;
        return Ok(ClusterResult { giant, partition });
    }
    let mut cluster_of: Vec<usize> = (0..n).collect();
    let mut q = modularity(&giant, &cluster_of)?;
    loop {
        let merged = merge_phase(&giant, &mut cluster_of);
        let refined = refine_phase(&giant, &mut cluster_of);
        if !merged && !refined {
            break;
        }
        let q_new = modularity(&giant, &cluster_of)?;
        if q_new - q <= GAIN_EPS {
            break;
        }
        q = q_new;
    }

    let mut canon: HashMap<usize, usize> = HashMap::new();
    let mut next = 0;
    for label in cluster_of.iter_mut() {
        let dense = *canon.entry(*label).or_insert_with(|| {
            let d = next;
            next += 1;
            d
        });
        *label = dense;
    }
    let q = modularity(&giant, &cluster_of)?;
    Ok(ClusterResult {
        giant,
        partition: Partition { assignment: cluster_of, cluster_count: next, modularity: q },
    })
}

/// Split edge indices into (intra, inter) relative to a cluster assignment.
pub fn edge_partition_sides(
    s: &Snapshot,
    assignment: &[usize],
) -> Result<(Vec<usize>, Vec<usize>)> {
    check_coverage(s, assignment)?;
    let mut intra = Vec::new();
    let mut inter = Vec::new();
    for (idx, &(u, v)) in s.edges().iter().enumerate() {
        if assignment[u] == assignment[v] {
            intra.push(idx);
        } else {
            inter.push(idx);
        }
    }
    Ok((intra, inter))
}

/// Normalized mutual information between two labelings of the same vertex
/// set, using natural logs and the arithmetic normalization 2I/(H_a + H_b).
/// Two single-cluster labelings agree perfectly and score 1; a single-cluster
/// labeling against a split one scores 0.
pub fn nmi(a: &[usize], b: &[usize]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::InvalidConfig(format!(
            "labelings cover {} and {} vertices",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::InsufficientData { need: 1, have: 0 });
    }
    let n = a.len() as f64;
    let mut joint: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    let mut ca: BTreeMap<usize, f64> = BTreeMap::new();
    let mut cb: BTreeMap<usize, f64> = BTreeMap::new();
    for (&x, &y) in a.iter().zip(b) {
        *joint.entry((x, y)).or_insert(0.0) += 1.0;
        *ca.entry(x).or_insert(0.0) += 1.0;
        *cb.entry(y).or_insert(0.0) += 1.0;
    }
    let h = |counts: &BTreeMap<usize, f64>| -> f64 {
        -counts.values().map(|&c| (c / n) * (c / n).ln()).sum::<f64>()
    };
    let (ha, hb) = (h(&ca), h(&cb));
    if ha == 0.0 && hb == 0.0 {
        return Ok(1.0);
    }
    let mut info = 0.0;
    for (&(x, y), &nxy) in &joint {
        info += (nxy / n) * ((n * nxy) / (ca[&x] * cb[&y])).ln();
    }
    Ok((2.0 * info / (ha + hb)).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_triangles_with_bridge() -> Snapshot {
        Snapshot::from_edges(
            0,
            6,
            &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)],
        )
    }

    #[test]
    fn triangle_singletons_score_minus_one_third() {
        let s = Snapshot::from_edges(0, 3, &[(0, 1), (0, 2), (1, 2)]);
        let q = modularity(&s, &[0, 1, 2]).unwrap();
        assert!((q - (-1.0 / 3.0)).abs() < 1e-15);
        // Merging everything lands at exactly zero.
        assert_eq!(modularity(&s, &[0, 0, 0]).unwrap(), 0.0);
    }

    #[test]
    fn bridge_of_triangles_splits_into_the_two_triangles() {
        let s = two_triangles_with_bridge();
        let res = cluster_giant(&s, 0).unwrap();
        assert_eq!(res.partition.assignment, vec![0, 0, 0, 1, 1, 1]);
        assert_eq!(res.partition.cluster_count, 2);
        assert!((res.partition.modularity - 5.0 / 14.0).abs() < 1e-12);
    }

    #[test]
    fn seed_does_not_change_the_partition() {
        let s = two_triangles_with_bridge();
        let a = cluster_giant(&s, 1).unwrap();
        let b = cluster_giant(&s, 987654321).unwrap();
        assert_eq!(a.partition, b.partition);
    }

    #[test]
    fn triangle_collapses_to_one_cluster_at_zero() {
        let s = Snapshot::from_edges(0, 3, &[(0, 1), (0, 2), (1, 2)]);
        let res = cluster_giant(&s, 0).unwrap();
        assert_eq!(res.partition.cluster_count, 1);
        assert_eq!(res.partition.modularity, 0.0);
    }

    #[test]
    fn clustering_ignores_vertices_outside_the_giant() {
        // Triangle pair plus two isolates; the giant has 6 vertices.
        let mut edges = two_triangles_with_bridge().edges().to_vec();
        edges.push((6, 7));
        let s = Snapshot::from_edges(0, 8, &edges);
        let res = cluster_giant(&s, 0).unwrap();
        assert_eq!(res.giant.vertex_count(), 6);
        assert_eq!(res.partition.assignment.len(), 6);
    }

    #[test]
    fn short_assignment_names_the_first_uncovered_vertex() {
        let s = Snapshot::from_edges(0, 3, &[(0, 1), (1, 2)]);
        match modularity(&s, &[0, 0]) {
            Err(Error::UncoveredVertex { id }) => assert_eq!(id, s.id(2)),
            other => panic!("expected UncoveredVertex, got {other:?}"),
        }
    }

    #[test]
    fn edgeless_snapshot_has_no_modularity() {
        let s = Snapshot::from_edges(0, 2, &[]);
        assert!(matches!(modularity(&s, &[0, 1]), Err(Error::NoEdges)));
    }

    #[test]
    fn single_cluster_marks_every_edge_intra() {
        let s = two_triangles_with_bridge();
        let (intra, inter) = edge_partition_sides(&s, &[0; 6]).unwrap();
        assert_eq!(intra.len(), 7);
        assert!(inter.is_empty());
        let (intra, inter) = edge_partition_sides(&s, &[0, 0, 0, 1, 1, 1]).unwrap();
        assert_eq!(intra.len(), 6);
        assert_eq!(inter, vec![3]);
    }

    #[test]
    fn nmi_matches_hand_cases() {
        assert_eq!(nmi(&[0, 0, 1, 1], &[1, 1, 0, 0]).unwrap(), 1.0);
        // Independent labelings share no information.
        assert!(nmi(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap().abs() < 1e-12);
        assert_eq!(nmi(&[0, 0], &[5, 5]).unwrap(), 1.0);
        assert_eq!(nmi(&[0, 0, 0, 0], &[0, 1, 2, 3]).unwrap(), 0.0);
        assert!(nmi(&[0], &[0, 1]).is_err());
    }
}
