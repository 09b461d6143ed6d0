//! The infection forest: weak components of the infection arcs, with sizes,
//! depths, and per-tree attribute entropies.

use std::collections::BTreeMap;

use crate::graph::Snapshot;

#[derive(Debug, Clone, PartialEq)]
pub struct TreeSummary {
    pub size: usize,
    /// Longest arc path from an in-degree-0 vertex, in edges; 0 for
    /// singleton trees. Components with no root (possible only in generated
    /// arc sets, never in validated data) report the deepest layer reached
    /// from wherever layering could start.
    pub depth: usize,
    /// Smallest vertex index with in-degree 0, when one exists.
    pub root: Option<usize>,
    /// Base-2 entropy of the members' group distribution; None for size 1.
    pub group_entropy: Option<f64>,
    /// Base-2 entropy of the members' province distribution; None for size 1.
    pub province_entropy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfectionForest {
    /// Trees sorted by size descending, then smallest member index.
    pub trees: Vec<TreeSummary>,
    pub tree_count: usize,
    pub count_ge2: usize,
    pub count_ge3: usize,
    pub max_size: usize,
    pub max_depth: usize,
    /// depth -> number of trees.
    pub depth_histogram: BTreeMap<usize, usize>,
}

/// Shannon entropy (base 2) of a count distribution; empty and single-class
/// distributions score 0.
pub fn entropy(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let mut h = 0.0;
    for &c in counts {
        if c > 0 {
            let p = c as f64 / total as f64;
            h -= p * p.log2();
        }
    }
    h
}

/// Every snapshot vertex belongs to exactly one tree; vertices not touched
/// by any arc are singleton trees, so tree sizes always sum to |V|.
pub fn infection_forest(s: &Snapshot) -> InfectionForest {
    let n = s.vertex_count();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut in_deg = vec![0usize; n];
    let mut undirected: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(f, t) in s.arcs() {
        out[f].push(t);
        in_deg[t] += 1;
        undirected[f].push(t);
        undirected[t].push(f);
    }

    // Weak components over the arcs.
    let mut comp = vec![usize::MAX; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let cid = members.len();
        let mut stack = vec![start];
        comp[start] = cid;
        let mut mem = Vec::new();
        while let Some(u) = stack.pop() {
            mem.push(u);
            for &v in &undirected[u] {
                if comp[v] == usize::MAX {
                    comp[v] = cid;
                    stack.push(v);
                }
            }
        }
        mem.sort_unstable();
        members.push(mem);
    }

    // Layer depth by Kahn ordering from the in-degree-0 vertices.
    let mut layer = vec![0usize; n];
    let mut indeg_work = in_deg.clone();
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg_work[v] == 0).collect();
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for &v in &out[u] {
            if layer[u] + 1 > layer[v] {
                layer[v] = layer[u] + 1;
            }
            indeg_work[v] -= 1;
            if indeg_work[v] == 0 {
                queue.push(v);
            }
        }
    }

    let mut trees: Vec<TreeSummary> = members
        .iter()
        .map(|mem| {
            let size = mem.len();
            let depth = mem.iter().map(|&v| layer[v]).max().unwrap_or(0);
            let root = mem.iter().copied().find(|&v| in_deg[v] == 0);
            let (group_entropy, province_entropy) = if size > 1 {
                let mut groups: BTreeMap<&str, usize> = BTreeMap::new();
                let mut provinces: BTreeMap<&str, usize> = BTreeMap::new();
                for &v in mem {
                    *groups.entry(s.record(v).group.as_str()).or_insert(0) += 1;
                    *provinces.entry(s.record(v).province.as_str()).or_insert(0) += 1;
                }
                let g: Vec<usize> = groups.values().copied().collect();
                let p: Vec<usize> = provinces.values().copied().collect();
                (Some(entropy(&g)), Some(entropy(&p)))
            } else {
                (None, None)
            };
            TreeSummary { size, depth, root, group_entropy, province_entropy }
        })
        .collect();
    // Deterministic ordering: size desc, then discovery order (components
    // are discovered in order of their smallest vertex).
    trees.sort_by(|a, b| b.size.cmp(&a.size));

    let mut depth_histogram = BTreeMap::new();
    for t in &trees {
        *depth_histogram.entry(t.depth).or_insert(0) += 1;
    }
    InfectionForest {
        tree_count: trees.len(),
        count_ge2: trees.iter().filter(|t| t.size >= 2).count(),
        count_ge3: trees.iter().filter(|t| t.size >= 3).count(),
        max_size: trees.first().map_or(0, |t| t.size),
        max_depth: trees.iter().map(|t| t.depth).max().unwrap_or(0),
        depth_histogram,
        trees,
    }
}
