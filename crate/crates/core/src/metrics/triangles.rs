//! Triangle participation counts.

use std::collections::BTreeMap;

use crate::graph::Snapshot;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCounts {
    /// Triangles each vertex belongs to.
    pub per_vertex: Vec<usize>,
    /// Distinct triangles in the snapshot.
    pub total: usize,
    /// participation count -> number of vertices.
    pub histogram: BTreeMap<usize, usize>,
}

/// Counts each triangle once via its ordered corner (u < v < w); sorted
/// adjacency makes the intersection linear.
pub fn triangle_participation(s: &Snapshot) -> TriangleCounts {
    let mut per_vertex = vec![0usize; s.vertex_count()];
    let mut total = 0usize;
    for &(u, v) in s.edges() {
        let (au, av) = (s.neighbors(u), s.neighbors(v));
        let (mut i, mut j) = (0usize, 0usize);
        while i < au.len() && j < av.len() {
            let (x, y) = (au[i], av[j]);
            if x == y {
                if x > v {
                    per_vertex[u] += 1;
                    per_vertex[v] += 1;
                    per_vertex[x] += 1;
                    total += 1;
                }
                i += 1;
                j += 1;
            } else if x < y {
                i += 1;
            } else {
                j += 1;
            }
        }
    }
    let mut histogram = BTreeMap::new();
    for &c in &per_vertex {
        *histogram.entry(c).or_insert(0) += 1;
    }
    TriangleCounts { per_vertex, total, histogram }
}
