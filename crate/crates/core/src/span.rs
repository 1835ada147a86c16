//! Linear algebra over `F_p` and span colorings.
//!
//! A span coloring of `Γ` in `F_p^n` assigns each vertex a nonzero vector that
//! lies outside the span of its neighbors' vectors. [`span_chromatic_number`]
//! finds the least `n` admitting one.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::fp;
use crate::graph::{chromatic_number, Graph};

/// A vector in `F_p^n` with reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FpVector {
    p: u32,
    coords: Vec<u32>,
}

impl FpVector {
    /// Reduces every coordinate mod `p`.
    pub fn new(p: u32, coords: impl IntoIterator<Item = u32>) -> FpVector {
        FpVector {
            p,
            coords: coords.into_iter().map(|c| c % p).collect(),
        }
    }

    pub fn zero(p: u32, dim: usize) -> FpVector {
        FpVector { p, coords: vec![0; dim] }
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(p: u32, dim: usize, i: usize) -> FpVector {
        let mut v = FpVector::zero(p, dim);
        v.coords[i] = 1;
        v
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, c: u32) -> FpVector {
        FpVector::new(self.p, self.coords.iter().map(|&x| fp::mul(x, c, self.p)))
    }

    pub fn add(&self, other: &FpVector) -> FpVector {
        FpVector::new(
            self.p,
            self.coords.iter().zip(&other.coords).map(|(&a, &b)| fp::add(a, b, self.p)),
        )
    }

    fn compatible(&self, other: &FpVector) -> Result<()> {
        if self.p != other.p || self.dim() != other.dim() {
            return Err(contract(format!(
                "vector over F_{}^{} mixed with vector over F_{}^{}",
                self.p,
                self.dim(),
                other.p,
                other.dim()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

/// Row-echelon basis of a subspace of `F_p^n`, grown one vector at a time.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u32,
    dim: usize,
    /// Rows normalized so the pivot entry is 1; `pivots[i]` is the pivot
    /// column of `rows[i]`.
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(p: u32, dim: usize) -> EchelonBasis {
        EchelonBasis { p, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Residual of `v` after eliminating against the basis.
    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            let c = w[col];
            if c != 0 {
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = fp::sub(*x, fp::mul(c, r, p), p);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(col) = w.iter().position(|&c| c != 0) else {
            return false;
        };
        let scale = fp::inv(w[col], p);
        for x in w.iter_mut() {
            *x = fp::mul(*x, scale, p);
        }
        // Keep rows fully reduced so `reduce` is a single pass.
        for row in self.rows.iter_mut() {
            let c = row[col];
            if c != 0 {
                for (x, &r) in row.iter_mut().zip(&w) {
                    *x = fp::sub(*x, fp::mul(c, r, p), p);
                }
            }
        }
        self.rows.push(w);
        self.pivots.push(col);
        true
    }
}

/// Whether `target` lies in the `F_p`-span of `vectors`. The empty list spans
/// `{0}`.
pub fn span_membership(vectors: &[FpVector], target: &FpVector) -> Result<bool> {
    let mut basis = EchelonBasis::new(target.p, target.dim());
    for v in vectors {
        v.compatible(target)?;
        basis.insert(&v.coords);
    }
    Ok(basis.contains(&target.coords))
}

/// An assignment of vectors in `F_p^dim` to the vertices of a graph, indexed by
/// vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanColoring {
    p: u32,
    dim: usize,
    vectors: Vec<FpVector>,
}

impl SpanColoring {
    pub fn new(p: u32, dim: usize, vectors: Vec<FpVector>) -> Result<SpanColoring> {
        if let Some(bad) = vectors.iter().find(|v| v.p != p || v.dim() != dim) {
            return Err(contract(format!(
                "vector {bad} does not live in F_{p}^{dim}"
            )));
        }
        Ok(SpanColoring { p, dim, vectors })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[FpVector] {
        &self.vectors
    }

    pub fn vector(&self, v: usize) -> &FpVector {
        &self.vectors[v]
    }

    /// One line per vertex: `<label> : <c1>,<c2>,...`.
    pub fn to_text(&self, g: &Graph) -> String {
        self.vectors
            .iter()
            .enumerate()
            .map(|(v, vec)| format!("{} : {}\n", g.label(v), vec))
            .collect()
    }

    /// Parses the witness format against `g`; every vertex needs exactly one line.
    pub fn parse(g: &Graph, p: u32, text: &str) -> Result<SpanColoring> {
        let mut slots: Vec<Option<FpVector>> = vec![None; g.vertex_count()];
        let mut dim = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let err = |message: String| Error::Parse { line, message };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (label, coords) = content
                .split_once(':')
                .ok_or_else(|| err("expected `<label> : <coords>`".into()))?;
            let v = g.vertex(label.trim()).map_err(|e| err(e.to_string()))?;
            let coords: Vec<u32> = coords
                .split(',')
                .map(|c| c.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| err(format!("bad coordinate: {e}")))?;
            if coords.iter().any(|&c| c >= p) {
                return Err(err(format!("coordinate out of range 0..{p}")));
            }
            if *dim.get_or_insert(coords.len()) != coords.len() {
                return Err(err("inconsistent vector length".into()));
            }
            if slots[v].replace(FpVector::new(p, coords)).is_some() {
                return Err(err(format!("vertex `{}` assigned twice", g.label(v))));
            }
        }
        let vectors = slots
            .into_iter()
            .enumerate()
            .map(|(v, s)| s.ok_or_else(|| contract(format!("no vector for vertex `{}`", g.label(v)))))
            .collect::<Result<Vec<_>>>()?;
        SpanColoring::new(p, dim.unwrap_or(0), vectors)
    }
}

/// Checks both span-coloring conditions: nonzero vectors, and each vertex's
/// vector outside the span of its neighbors'.
pub fn verify_span_coloring(g: &Graph, c: &SpanColoring) -> Result<bool> {
    if c.vectors.len() != g.vertex_count() {
        return Err(contract(format!(
            "span coloring assigns {} vectors to {} vertices",
            c.vectors.len(),
            g.vertex_count()
        )));
    }
    for v in 0..g.vertex_count() {
        let target = &c.vectors[v];
        if target.is_zero() {
            return Ok(false);
        }
        let nbrs: Vec<FpVector> = g.neighbors(v).iter().map(|&u| c.vectors[u].clone()).collect();
        if span_membership(&nbrs, target)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The span chromatic number `s_pχ(Γ)` with a witness.
///
/// Dimensions are tried from 1 upward, each refuted by exhaustive search before
/// the next. The search fixes the `GL_n(F_p)` and scaling symmetries: every
/// vertex (in descending-degree order) receives either a projective point of the
/// span of the vectors placed so far or the next unused standard basis vector.
/// The graph with no vertices has `s_pχ = 0`.
pub fn span_chromatic_number(g: &Graph, p: u32) -> Result<(usize, SpanColoring)> {
    if !fp::is_prime(p) {
        return Err(contract(format!("{p} is not prime")));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok((0, SpanColoring { p, dim: 0, vectors: Vec::new() }));
    }
    let (chi, _) = chromatic_number(g);
    for dim in 1..=chi {
        if let Some(vectors) = SpanSearch::new(g, p, dim).run() {
            let coloring = SpanColoring {
                p,
                dim,
                vectors: vectors.into_iter().map(|c| FpVector { p, coords: c }).collect(),
            };
            debug_assert!(verify_span_coloring(g, &coloring).unwrap());
            return Ok((dim, coloring));
        }
    }
    unreachable!("the standard-basis coloring works in dimension χ")
}

/// Whether a span coloring exists in exactly `F_p^dim`.
pub fn has_span_coloring(g: &Graph, p: u32, dim: usize) -> Option<SpanColoring> {
    if g.vertex_count() == 0 {
        return Some(SpanColoring { p, dim, vectors: Vec::new() });
    }
    if dim == 0 {
        return None;
    }
    SpanSearch::new(g, p, dim).run().map(|vs| SpanColoring {
        p,
        dim,
        vectors: vs.into_iter().map(|c| FpVector { p, coords: c }).collect(),
    })
}

/// Projective points of `span(e_1, ..., e_r)` inside `F_p^dim`: first nonzero
/// coordinate 1, support in the first `r` coordinates.
fn projective_points(p: u32, dim: usize, r: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for lead in 0..r {
        let free = r - lead - 1;
        let count = (p as usize).pow(free as u32);
        for mut code in 0..count {
            let mut v = vec![0u32; dim];
            v[lead] = 1;
            for slot in (lead + 1..r).rev() {
                v[slot] = (code % p as usize) as u32;
                code /= p as usize;
            }
            out.push(v);
        }
    }
    out
}

struct SpanSearch<'a> {
    g: &'a Graph,
    dim: usize,
    order: Vec<usize>,
    assigned: Vec<Option<Vec<u32>>>,
    /// Span of the assigned neighbors of each vertex.
    nbhd: Vec<EchelonBasis>,
    points: Vec<Vec<Vec<u32>>>,
}

impl<'a> SpanSearch<'a> {
    fn new(g: &'a Graph, p: u32, dim: usize) -> Self {
        let mut order: Vec<usize> = (0..g.vertex_count()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        SpanSearch {
            g,
            dim,
            order,
            assigned: vec![None; g.vertex_count()],
            nbhd: vec![EchelonBasis::new(p, dim); g.vertex_count()],
            points: (0..=dim).map(|r| projective_points(p, dim, r)).collect(),
        }
    }

    fn run(mut self) -> Option<Vec<Vec<u32>>> {
        if self.descend(0, 0) {
            Some(self.assigned.into_iter().map(|v| v.expect("all assigned")).collect())
        } else {
            None
        }
    }

    fn descend(&mut self, depth: usize, rank: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let fresh = (rank < self.dim).then(|| {
            let mut e = vec![0u32; self.dim];
            e[rank] = 1;
            e
        });
        let candidates: Vec<Vec<u32>> = self.points[rank].iter().cloned().chain(fresh).collect();
        for cand in candidates {
            if self.nbhd[v].contains(&cand) {
                continue;
            }
            let Some(saved) = self.place(v, &cand) else {
                continue;
            };
            // Points of the current span vanish at coordinate `rank`.
            let grows = rank < self.dim && cand[rank] == 1;
            self.assigned[v] = Some(cand);
            if self.descend(depth + 1, if grows { rank + 1 } else { rank }) {
                return true;
            }
            self.assigned[v] = None;
            for (u, basis) in saved {
                self.nbhd[u] = basis;
            }
        }
        false
    }

    /// Adds `cand` to the neighborhood spans of `v`'s neighbors, unless that
    /// breaks an assigned neighbor or saturates an unassigned one. Returns the
    /// bases it replaced.
    fn place(&mut self, v: usize, cand: &[u32]) -> Option<Vec<(usize, EchelonBasis)>> {
        let mut saved = Vec::new();
        let mut ok = true;
        for &u in self.g.neighbors(v) {
            let mut basis = self.nbhd[u].clone();
            basis.insert(cand);
            let violated = match &self.assigned[u] {
                Some(fu) => basis.contains(fu),
                None => basis.is_full(),
            };
            if violated {
                ok = false;
                break;
            }
            saved.push((u, std::mem::replace(&mut self.nbhd[u], basis)));
        }
        if ok {
            Some(saved)
        } else {
            for (u, basis) in saved {
                self.nbhd[u] = basis;
            }
            None
        }
    }
}

/// The span coloring `v ↦ e_{color(v)}` induced by an ordinary coloring.
pub fn span_coloring_from_coloring(p: u32, coloring: &crate::graph::Coloring) -> SpanColoring {
    let dim = coloring.num_colors();
    SpanColoring {
        p,
        dim,
        vectors: coloring
            .colors()
            .iter()
            .map(|&c| FpVector::unit(p, dim, c - 1))
            .collect(),
    }
}
