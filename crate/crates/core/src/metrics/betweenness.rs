//! Edge betweenness by Brandes-style dependency accumulation.

use crate::graph::Snapshot;

/// Betweenness per contact edge, aligned with `s.edges()`. Each unordered
/// connected pair contributes weight 1 distributed over its shortest paths,
/// so the values sum to the total pairwise distance over connected pairs.
pub fn edge_betweenness(s: &Snapshot) -> Vec<f64> {
    let n = s.vertex_count();
    let edges = s.edges();
    let mut scores = vec![0.0f64; edges.len()];
    if n == 0 || edges.is_empty() {
        return scores;
    }

    let edge_index = |u: usize, v: usize| -> usize {
        let key = (u.min(v), u.max(v));
        edges.binary_search(&key).expect("edge must exist")
    };

    let mut dist = vec![u32::MAX; n];
    let mut sigma = vec![0.0f64; n];
    let mut delta = vec![0.0f64; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);

    for src in 0..n {
        dist.fill(u32::MAX);
        sigma.fill(0.0);
        delta.fill(0.0);
        order.clear();

        dist[src] = 0;
        sigma[src] = 1.0;
        order.push(src);
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            let du = dist[u];
            for &v in s.neighbors(u) {
                if dist[v] == u32::MAX {
                    dist[v] = du + 1;
                    order.push(v);
                }
                if dist[v] == du + 1 {
                    sigma[v] += sigma[u];
                }
            }
        }

        // Reverse BFS order; predecessors of w are neighbors one level up.
        for &w in order.iter().rev() {
            let dw = dist[w];
            if dw == 0 {
                continue;
            }
            for &v in s.neighbors(w) {
                if dist[v] + 1 == dw {
                    let c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                    scores[edge_index(v, w)] += c;
                    delta[v] += c;
                }
            }
        }
    }

    // Every unordered pair was counted from both endpoints.
    for x in &mut scores {
        *x *= 0.5;
    }
    scores
}
