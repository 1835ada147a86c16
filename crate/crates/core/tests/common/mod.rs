//! Independent oracles shared by the integration tests. Nothing here calls the
//! solvers under test.

#![allow(dead_code)]

use rand::Rng;
use sr_chroma::Graph;

/// Every labeled graph on `n` vertices, one per edge bitmask.
pub fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

pub fn connected(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in g.edges() {
            let w = if a == u { b } else if b == u { a } else { continue };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn random_graph(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// Least number of colors by trying every assignment.
pub fn brute_chromatic(g: &Graph) -> usize {
    let n = g.vertex_count();
    (0..=n)
        .find(|&k| {
            if n == 0 {
                return true;
            }
            if k == 0 {
                return false;
            }
            let total = (k as u64).pow(n as u32);
            (0..total).any(|mut code| {
                let mut c = vec![0; n];
                for slot in c.iter_mut() {
                    *slot = code % k as u64;
                    code /= k as u64;
                }
                g.edges().iter().all(|&(u, v)| c[u] != c[v])
            })
        })
        .unwrap()
}

/// Rank of a list of vectors over F_p by plain elimination.
pub fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
    let p = p as u64;
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] % p != 0) else { continue };
        m.swap(rank, pivot);
        let inv = (1..p).find(|&x| x * m[rank][c] % p == 1).unwrap();
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] % p != 0 {
                let f = m[r][c];
                for j in 0..cols {
                    m[r][j] = (m[r][j] + p * p - f * m[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Nonzero vectors of F_p^d whose first nonzero coordinate is 1.
pub fn projective_points(p: u32, d: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let total = (p as u64).pow(d as u32);
    for mut code in 1..total {
        let mut v = vec![0u32; d];
        for slot in v.iter_mut() {
            *slot = (code % p as u64) as u32;
            code /= p as u64;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(v);
        }
    }
    out
}

fn outside_span(v: &[u32], around: &[Vec<u32>], p: u32) -> bool {
    let mut with = around.to_vec();
    with.push(v.to_vec());
    rank_mod_p(&with, p) > rank_mod_p(around, p)
}

/// Whether some assignment of projective points in `F_p^d` is a span
/// coloring. A vertex inside the span of its assigned neighbors stays inside
/// once more neighbors arrive, so partial checks only prune.
pub fn span_colorable(g: &Graph, p: u32, d: usize) -> bool {
    let n = g.vertex_count();
    if n == 0 {
        return true;
    }
    if d == 0 {
        return false;
    }
    let points = projective_points(p, d);
    let mut assigned: Vec<Option<usize>> = vec![None; n];
    fn ok_at(g: &Graph, p: u32, points: &[Vec<u32>], assigned: &[Option<usize>], u: usize) -> bool {
        let around: Vec<Vec<u32>> =
            g.neighbors(u).iter().filter_map(|&w| assigned[w].map(|i| points[i].clone())).collect();
        outside_span(&points[assigned[u].unwrap()], &around, p)
    }
    fn go(g: &Graph, p: u32, points: &[Vec<u32>], assigned: &mut Vec<Option<usize>>, v: usize) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for i in 0..points.len() {
            assigned[v] = Some(i);
            let fine = ok_at(g, p, points, assigned, v)
                && g.neighbors(v).iter().all(|&w| assigned[w].is_none() || ok_at(g, p, points, assigned, w));
            if fine && go(g, p, points, assigned, v + 1) {
                return true;
            }
        }
        assigned[v] = None;
        false
    }
    go(g, p, &points, &mut assigned, 0)
}

/// Least `d` admitting a span coloring, searching from 1 upward. The standard
/// basis colors any graph in `χ` dimensions, so `upper` is returned without
/// a search.
pub fn oracle_span_chromatic(g: &Graph, p: u32, upper: usize) -> usize {
    (0..upper).find(|&d| span_colorable(g, p, d)).unwrap_or(upper)
}

/// Decomposability by trying every set partition of the multiset.
pub fn brute_multiset(m: &[u32]) -> bool {
    fn allowed(part: &[u32]) -> bool {
        let mut s = part.to_vec();
        s.sort_unstable();
        if s == [2] {
            return true;
        }
        let chain = |step: u32| s.iter().enumerate().all(|(i, &d)| d == 4 + step * i as u32);
        !s.is_empty() && (chain(2) || chain(4))
    }
    fn go(rest: &[u32], blocks: &mut Vec<Vec<u32>>) -> bool {
        let Some((&first, rest)) = rest.split_first() else {
            return blocks.iter().all(|b| allowed(b));
        };
        for i in 0..blocks.len() {
            blocks[i].push(first);
            if go(rest, blocks) {
                return true;
            }
            blocks[i].pop();
        }
        blocks.push(vec![first]);
        let found = go(rest, blocks);
        blocks.pop();
        found
    }
    go(m, &mut Vec::new())
}
