//! Connected components and the giant component.

use crate::error::{Error, Result};
use crate::graph::Snapshot;

/// Result of a component sweep. Component ids are assigned in order of each
/// component's smallest vertex index, so they are stable for a given
/// snapshot regardless of traversal internals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    /// Component id per vertex index.
    pub component_of: Vec<usize>,
    /// Component sizes, largest first.
    pub sizes: Vec<usize>,
    /// Number of components with at least 1, 2, 3 vertices.
    pub count: usize,
    pub count_ge2: usize,
    pub count_ge3: usize,
}

pub fn connected_components(s: &Snapshot) -> ComponentDecomposition {
    let n = s.vertex_count();
    let mut component_of = vec![usize::MAX; n];
    let mut raw_sizes = Vec::new();
    let mut queue = Vec::new();
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        let cid = raw_sizes.len();
        let mut size = 0usize;
        component_of[start] = cid;
        queue.push(start);
        while let Some(u) = queue.pop() {
            size += 1;
            for &v in s.neighbors(u) {
                if component_of[v] == usize::MAX {
                    component_of[v] = cid;
                    queue.push(v);
                }
            }
        }
        raw_sizes.push(size);
    }
    let mut sizes = raw_sizes.clone();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    ComponentDecomposition {
        component_of,
        count: sizes.len(),
        count_ge2: sizes.iter().filter(|&&s| s >= 2).count(),
        count_ge3: sizes.iter().filter(|&&s| s >= 3).count(),
        sizes,
    }
}

/// Induced snapshot of the largest component. Ties go to the component
/// containing the smallest vertex id, which is the one discovered first.
pub fn giant_component(s: &Snapshot) -> Result<Snapshot> {
    if s.is_empty() {
        return Err(Error::EmptySnapshot);
    }
    let decomp = connected_components(s);
    let mut raw_sizes = vec![0usize; decomp.count];
    for &c in &decomp.component_of {
        raw_sizes[c] += 1;
    }
    // Component ids follow smallest-vertex order, so the first maximal one
    // is the tie-break winner.
    let mut best = 0;
    for (cid, &sz) in raw_sizes.iter().enumerate() {
        if sz > raw_sizes[best] {
            best = cid;
        }
    }
    let keep: Vec<usize> = (0..s.vertex_count())
        .filter(|&i| decomp.component_of[i] == best)
        .collect();
    Ok(s.induced(&keep))
}
