//! Fixed inputs shared by the benchmarks.

use sr_chroma::Graph;

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
        edges.push((i, 5 + i));
    }
    Graph::from_edges(10, &edges).expect("valid edges")
}

/// Mycielski's construction, applied `steps` times to a single edge.
pub fn mycielski(steps: usize) -> Graph {
    let mut n = 2;
    let mut edges = vec![(0, 1)];
    for _ in 0..steps {
        let mut next = edges.clone();
        for &(u, v) in &edges {
            next.push((u, n + v));
            next.push((v, n + u));
        }
        for v in 0..n {
            next.push((n + v, 2 * n));
        }
        edges = next;
        n = 2 * n + 1;
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_have_expected_shape() {
        let p = petersen();
        assert_eq!((p.vertex_count(), p.edges().len()), (10, 15));
        assert_eq!(sr_chroma::chromatic_number(&p).0, 3);
        let g = mycielski(2);
        assert_eq!(g.vertex_count(), 11);
        assert_eq!(sr_chroma::chromatic_number(&g).0, 4);
    }
}
