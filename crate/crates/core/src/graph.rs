//! Finite simple graphs, the edge-list text format, exact chromatic numbers
//! and the 2-core.
//!
//! Vertices are identified by their index in first-appearance order; every
//! "least" or "canonical" guarantee in this crate is relative to that order.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite simple graph with string-labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<usize>>,
    /// Normalized `(u, v)` with `u < v`, sorted.
    edges: Vec<(usize, usize)>,
}

impl Default for Graph {
    fn default() -> Self {
        Graph::with_vertices(Vec::<String>::new()).expect("empty label list is valid")
    }
}

impl Graph {
    /// A graph with the given vertices and no edges.
    pub fn with_vertices<I, S>(labels: I) -> Result<Graph>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut g = Graph {
            labels: Vec::new(),
            index: HashMap::new(),
            adjacency: Vec::new(),
            edges: Vec::new(),
        };
        for label in labels {
            g.push_vertex(label.into())?;
        }
        Ok(g)
    }

    /// Vertices labelled `1..=n` joined by the given index pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::with_vertices((1..=n).map(|i| i.to_string()))?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_edges(n, &[]).expect("no edges")
    }

    pub fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Graph::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges).expect("path is simple")
    }

    /// The cycle `C_n`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Graph::from_edges(n, &edges).expect("cycle is simple")
    }

    fn push_vertex(&mut self, label: String) -> Result<usize> {
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(Error::Contract(format!("invalid vertex label {label:?}")));
        }
        if self.index.contains_key(&label) {
            return Err(Error::Contract(format!("duplicate vertex `{label}`")));
        }
        let id = self.labels.len();
        self.index.insert(label.clone(), id);
        self.labels.push(label);
        self.adjacency.push(Vec::new());
        Ok(id)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.labels.len();
        if u >= n || v >= n {
            return Err(Error::Contract(format!("edge ({u}, {v}) out of range")));
        }
        if u == v {
            return Err(Error::Contract("loop edge".into()));
        }
        let key = (u.min(v), u.max(v));
        match self.edges.binary_search(&key) {
            Ok(_) => Err(Error::Contract(format!(
                "duplicate edge {} {}",
                self.labels[key.0], self.labels[key.1]
            ))),
            Err(pos) => {
                self.edges.insert(pos, key);
                for (a, b) in [(u, v), (v, u)] {
                    let list = &mut self.adjacency[a];
                    let at = list.partition_point(|&w| w < b);
                    list.insert(at, b);
                }
                Ok(())
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Sorted edge list, each pair normalized to `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbor indices of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// `N(v)` by label.
    pub fn neighbors_of(&self, label: &str) -> Result<Vec<&str>> {
        let v = self.vertex(label)?;
        Ok(self.adjacency[v].iter().map(|&u| self.label(u)).collect())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.vertex_count()).map(|v| self.degree(v)).min()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &self.adjacency[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The subgraph induced on the vertices flagged in `keep`, preserving order.
    pub fn induced(&self, keep: &[bool]) -> Graph {
        let kept: Vec<usize> = (0..self.vertex_count()).filter(|&v| keep[v]).collect();
        let mut relabel = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in kept.iter().enumerate() {
            relabel[old] = new;
        }
        let mut g = Graph::with_vertices(kept.iter().map(|&v| self.labels[v].clone()))
            .expect("labels already validated");
        for &(u, v) in &self.edges {
            if keep[u] && keep[v] {
                g.add_edge(relabel[u], relabel[v]).expect("edges already validated");
            }
        }
        g
    }

    /// Serializes to the edge-list format: all `v` lines, then all `e` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for label in &self.labels {
            out.push_str("v ");
            out.push_str(label);
            out.push('\n');
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("e {} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Graph> {
        parse_graph(s)
    }
}

/// Parses the edge-list format.
///
/// `v <label>` declares a vertex, `e <label> <label>` an edge between declared
/// vertices, and `#` starts a comment. Vertices may be declared anywhere in the
/// document; their order of declaration is the vertex order.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut g = Graph::default();
    let mut pending = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        let err = |message: String| Error::Parse { line, message };
        match fields.as_slice() {
            [] => {}
            ["v", label] => {
                g.push_vertex(label.to_string()).map_err(|e| err(e.to_string()))?;
            }
            ["e", a, b] => {
                if a == b {
                    return Err(err(format!("loop edge on `{a}`")));
                }
                pending.push((line, a.to_string(), b.to_string()));
            }
            [kind, ..] if *kind == "v" || *kind == "e" => {
                return Err(err(format!("wrong number of fields for `{kind}` line")));
            }
            [kind, ..] => return Err(err(format!("unknown line kind `{kind}`"))),
        }
    }
    for (line, a, b) in pending {
        let lookup = |label: &str| {
            g.vertex(label).map_err(|_| Error::Parse {
                line,
                message: format!("unknown vertex `{label}`"),
            })
        };
        let (u, v) = (lookup(&a)?, lookup(&b)?);
        g.add_edge(u, v).map_err(|e| Error::Parse {
            line,
            message: match e {
                Error::Contract(m) => m,
                other => other.to_string(),
            },
        })?;
    }
    Ok(g)
}

/// A proper vertex coloring with colors `1..=num_colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    num_colors: usize,
    colors: Vec<usize>,
}

impl Coloring {
    /// Validates the assignment against `g`.
    pub fn new(g: &Graph, num_colors: usize, colors: Vec<usize>) -> Result<Coloring> {
        let c = Coloring { num_colors, colors };
        if c.colors.len() != g.vertex_count() {
            return Err(Error::Contract(format!(
                "coloring has {} entries for {} vertices",
                c.colors.len(),
                g.vertex_count()
            )));
        }
        if !c.is_valid_for(g) {
            return Err(Error::Contract("not a proper coloring".into()));
        }
        Ok(c)
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    /// Color of vertex `v`, in `1..=num_colors`.
    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Vertices with color `c`, ascending.
    pub fn class(&self, c: usize) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == c).collect()
    }

    /// The same assignment viewed as a coloring with a larger palette.
    pub fn with_palette(&self, num_colors: usize) -> Result<Coloring> {
        if num_colors < self.colors.iter().copied().max().unwrap_or(0) {
            return Err(Error::Contract(format!(
                "palette of {num_colors} colors is too small for this coloring"
            )));
        }
        Ok(Coloring {
            num_colors,
            colors: self.colors.clone(),
        })
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.colors.len() == g.vertex_count()
            && self.colors.iter().all(|&c| (1..=self.num_colors).contains(&c))
            && g.edges().iter().all(|&(u, v)| self.colors[u] != self.colors[v])
    }
}

/// Exact chromatic number with the lexicographically least witness.
///
/// The number itself comes from a DSATUR branch-and-bound; the witness is the
/// least assignment (under vertex order) using colors `1..=χ`.
pub fn chromatic_number(g: &Graph) -> (usize, Coloring) {
    let n = g.vertex_count();
    if n == 0 {
        return (0, Coloring { num_colors: 0, colors: Vec::new() });
    }
    let chi = DsaturSearch::new(g).run();
    let colors = least_coloring(g, chi).expect("DSATUR bound is attainable");
    (chi, Coloring { num_colors: chi, colors })
}

/// Decides `k`-colorability, returning the least coloring if one exists.
pub fn least_coloring(g: &Graph, k: usize) -> Option<Vec<usize>> {
    fn go(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        // Colors above (max used so far) + 1 are symmetric to it.
        let max_used = colors[..v].iter().copied().max().unwrap_or(0);
        for c in 1..=k.min(max_used + 1) {
            if g.neighbors(v).iter().all(|&u| u >= v || colors[u] != c) {
                colors[v] = c;
                if go(g, k, v + 1, colors) {
                    return true;
                }
            }
        }
        colors[v] = 0;
        false
    }
    let mut colors = vec![0; g.vertex_count()];
    go(g, k, 0, &mut colors).then_some(colors)
}

/// Size of a greedily grown clique (a lower bound for χ).
pub fn greedy_clique(g: &Graph) -> usize {
    let mut best = 0;
    for start in 0..g.vertex_count() {
        let mut clique = vec![start];
        let mut candidates: Vec<usize> = g.neighbors(start).to_vec();
        candidates.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        for v in candidates {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

struct DsaturSearch<'a> {
    g: &'a Graph,
    colors: Vec<usize>,
    best: usize,
    lower: usize,
}

impl<'a> DsaturSearch<'a> {
    fn new(g: &'a Graph) -> Self {
        DsaturSearch {
            g,
            colors: vec![0; g.vertex_count()],
            best: g.vertex_count(),
            lower: greedy_clique(g).max(1),
        }
    }

    fn saturation(&self, v: usize) -> usize {
        let mut seen: Vec<usize> = self
            .g
            .neighbors(v)
            .iter()
            .map(|&u| self.colors[u])
            .filter(|&c| c != 0)
            .collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    fn pick(&self) -> Option<usize> {
        (0..self.g.vertex_count())
            .filter(|&v| self.colors[v] == 0)
            .max_by(|&a, &b| {
                let key = |v: usize| (self.saturation(v), self.g.degree(v));
                key(a).cmp(&key(b)).then(b.cmp(&a))
            })
    }

    fn run(mut self) -> usize {
        self.branch(0);
        self.best
    }

    fn branch(&mut self, used: usize) {
        if self.best == self.lower {
            return;
        }
        let Some(v) = self.pick() else {
            self.best = self.best.min(used);
            return;
        };
        let limit = (used + 1).min(self.best - 1);
        for c in 1..=limit {
            if self.g.neighbors(v).iter().all(|&u| self.colors[u] != c) {
                self.colors[v] = c;
                self.branch(used.max(c));
                self.colors[v] = 0;
                if self.best == self.lower {
                    return;
                }
            }
        }
    }
}

/// Maximal subgraph of minimum degree at least 2, by iterated deletion of
/// vertices of degree below 2.
pub fn two_core(g: &Graph) -> Graph {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| degree[v] < 2).collect();
    while let Some(v) = queue.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                degree[u] -= 1;
                if degree[u] == 1 {
                    queue.push(u);
                }
            }
        }
    }
    g.induced(&alive)
}
