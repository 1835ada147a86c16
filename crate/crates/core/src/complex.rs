//! Join complexes `Δ^{s_1-1} * ... * Δ^{s_n-1} * Γ`, their gradings, and the
//! Stanley–Reisner ring `SR(K, φ) ⊗ F_p`.
//!
//! A set of generators is a face of such a join exactly when its graph part is
//! a face of `Γ`: empty, a vertex, or an edge. Every product is reduced on the
//! spot, so stored monomials are always face-supported.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::fp;
use crate::graph::{parse_graph, Graph};

/// The algebra families built from a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `A(s, Γ)`: block `k` in degree `2k+2`, graph vertices in `2n+4`.
    A { s: Vec<usize> },
    /// `A_p(s, Γ)`, `|s| = p - 1`: block `k` in degree `2k+2`, graph in `2p+2`.
    Ap { p: u32, s: Vec<usize> },
    /// `B_p(r, Γ)`, `|r| = (p-1)/2`: block `k` in degree `4k`, graph in `2p+2`.
    Bp { p: u32, r: Vec<usize> },
    /// `B(n, Γ) = B_3((n), Γ)`.
    B { n: usize },
    /// A polynomial algebra on explicitly graded generators (no graph part).
    Polynomial { generators: Vec<(String, u32)> },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::A { .. } => "A",
            Family::Ap { .. } => "Ap",
            Family::Bp { .. } => "Bp",
            Family::B { .. } => "B",
            Family::Polynomial { .. } => "poly",
        }
    }

    /// The prime the family is attached to, if any.
    pub fn prime(&self) -> Option<u32> {
        match self {
            Family::Ap { p, .. } | Family::Bp { p, .. } => Some(*p),
            Family::B { .. } => Some(3),
            Family::A { s } => {
                let p = s.len() as u32 + 1;
                (p > 2 && fp::is_prime(p)).then_some(p)
            }
            Family::Polynomial { .. } => None,
        }
    }

    /// The block-size vector (`s`, `r`, or `(n)`).
    pub fn vector(&self) -> Vec<usize> {
        match self {
            Family::A { s } | Family::Ap { s, .. } => s.clone(),
            Family::Bp { r, .. } => r.clone(),
            Family::B { n } => vec![*n],
            Family::Polynomial { .. } => Vec::new(),
        }
    }

    /// Whether every block has the same size `n` (the `A_p(n)`/`B_p(n)` shape).
    pub fn uniform_size(&self) -> Option<usize> {
        let v = self.vector();
        match self {
            Family::Polynomial { .. } => None,
            _ => v.first().copied().filter(|&n| v.iter().all(|&x| x == n)),
        }
    }

    /// Parses `tag` plus the comma-separated vector (and prime where needed).
    pub fn from_parts(tag: &str, prime: Option<u32>, vector: &[usize]) -> Result<Family> {
        let need_p = || prime.ok_or_else(|| contract(format!("family {tag} needs a prime")));
        Ok(match tag {
            "A" => Family::A { s: vector.to_vec() },
            "Ap" | "A_p" => Family::Ap { p: need_p()?, s: vector.to_vec() },
            "Bp" | "B_p" => Family::Bp { p: need_p()?, r: vector.to_vec() },
            "B" => match vector {
                [n] => Family::B { n: *n },
                _ => return Err(contract("family B takes a single size n")),
            },
            other => return Err(contract(format!("unknown family `{other}`"))),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let csv = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        match self {
            Family::A { s } => write!(f, "A(({}), Γ)", csv(s)),
            Family::Ap { p, s } => write!(f, "A_{p}(({}), Γ)", csv(s)),
            Family::Bp { p, r } => write!(f, "B_{p}(({}), Γ)", csv(r)),
            Family::B { n } => write!(f, "B({n}, Γ)"),
            Family::Polynomial { generators } => {
                let gens: Vec<String> =
                    generators.iter().map(|(l, d)| format!("{l}:{d}")).collect();
                write!(f, "F_p[{}]", gens.join(", "))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub size: usize,
    pub degree: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// `x_index^{(block)}`, both 1-based.
    Simplex { block: usize, index: usize },
    /// `y_v` for graph vertex `v` (0-based vertex index).
    Vertex(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

/// `K = Δ^{s_1-1} * ... * Δ^{s_n-1} * Γ` with its grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinComplex {
    family: Family,
    blocks: Vec<Block>,
    graph: Graph,
    graph_degree: u32,
    generators: Vec<Generator>,
    first_vertex: usize,
    by_label: HashMap<String, usize>,
}

/// Builds the complex of a family over `graph`.
pub fn build_complex(family: &Family, graph: &Graph) -> Result<JoinComplex> {
    let odd_prime = |p: u32| {
        if p > 2 && fp::is_prime(p) {
            Ok(())
        } else {
            Err(contract(format!("{p} is not an odd prime")))
        }
    };
    let (blocks, graph_degree) = match family {
        Family::A { s } => {
            let n = s.len() as u32;
            let blocks = s.iter().enumerate().map(|(k, &size)| Block { size, degree: 2 * k as u32 + 4 });
            (blocks.collect::<Vec<_>>(), 2 * n + 4)
        }
        Family::Ap { p, s } => {
            odd_prime(*p)?;
            if s.len() != *p as usize - 1 {
                return Err(contract(format!(
                    "A_{p} needs a vector of length {}, got {}",
                    p - 1,
                    s.len()
                )));
            }
            let blocks = s.iter().enumerate().map(|(k, &size)| Block { size, degree: 2 * k as u32 + 4 });
            (blocks.collect(), 2 * p + 2)
        }
        Family::Bp { p, r } => {
            odd_prime(*p)?;
            if r.len() != (*p as usize - 1) / 2 {
                return Err(contract(format!(
                    "B_{p} needs a vector of length {}, got {}",
                    (p - 1) / 2,
                    r.len()
                )));
            }
            let blocks = r.iter().enumerate().map(|(k, &size)| Block { size, degree: 4 * (k as u32 + 1) });
            (blocks.collect(), 2 * p + 2)
        }
        Family::B { n } => (vec![Block { size: *n, degree: 4 }], 8),
        Family::Polynomial { generators } => {
            if graph.vertex_count() > 0 {
                return Err(contract("polynomial algebras have no graph part"));
            }
            if let Some((l, d)) = generators.iter().find(|(_, d)| *d == 0 || d % 2 == 1) {
                return Err(contract(format!("generator {l} has degree {d}; degrees must be positive and even")));
            }
            let blocks = generators.iter().map(|&(_, degree)| Block { size: 1, degree }).collect();
            (blocks, 0)
        }
    };
    let mut generators = Vec::new();
    for (k, block) in blocks.iter().enumerate() {
        for i in 1..=block.size {
            let label = match family {
                Family::Polynomial { generators: named } => named[k].0.clone(),
                _ => format!("x{i}^({})", k + 1),
            };
            generators.push(Generator {
                label,
                degree: block.degree,
                kind: GeneratorKind::Simplex { block: k + 1, index: i },
            });
        }
    }
    let first_vertex = generators.len();
    for v in 0..graph.vertex_count() {
        generators.push(Generator {
            label: format!("y_{}", graph.label(v)),
            degree: graph_degree,
            kind: GeneratorKind::Vertex(v),
        });
    }
    let mut by_label = HashMap::new();
    for (i, g) in generators.iter().enumerate() {
        let bad = g.label.is_empty()
            || g.label.chars().any(|c| c.is_whitespace() || c == '+' || c == '*' || c == '=');
        if bad || by_label.insert(g.label.clone(), i).is_some() {
            return Err(contract(format!("generator label `{}` is invalid or repeated", g.label)));
        }
    }
    Ok(JoinComplex {
        family: family.clone(),
        blocks,
        graph: graph.clone(),
        graph_degree,
        generators,
        first_vertex,
        by_label,
    })
}

impl JoinComplex {
    /// A polynomial algebra: the full simplex on the named generators.
    pub fn polynomial(generators: &[(&str, u32)]) -> Result<JoinComplex> {
        let generators = generators.iter().map(|&(l, d)| (l.to_string(), d)).collect();
        build_complex(&Family::Polynomial { generators }, &Graph::default())
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_degree(&self) -> u32 {
        self.graph_degree
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn degree(&self, g: usize) -> u32 {
        self.generators[g].degree
    }

    pub fn label(&self, g: usize) -> &str {
        &self.generators[g].label
    }

    pub fn generator(&self, label: &str) -> Result<usize> {
        self.by_label
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(label.to_string()))
    }

    /// Generator index of graph vertex `v`.
    pub fn vertex_generator(&self, v: usize) -> usize {
        self.first_vertex + v
    }

    /// Graph vertex of a generator, if it is one.
    pub fn vertex_of(&self, g: usize) -> Option<usize> {
        (g >= self.first_vertex).then(|| g - self.first_vertex)
    }

    /// Generators of simplex block `k` (1-based), in index order.
    pub fn block_generators(&self, k: usize) -> Vec<usize> {
        (0..self.first_vertex)
            .filter(|&g| matches!(self.generators[g].kind, GeneratorKind::Simplex { block, .. } if block == k))
            .collect()
    }

    /// `x_i^{(k)}`, both 1-based.
    pub fn simplex_generator(&self, k: usize, i: usize) -> Option<usize> {
        (0..self.first_vertex).find(|&g| {
            self.generators[g].kind == GeneratorKind::Simplex { block: k, index: i }
        })
    }

    pub fn simplex_generator_count(&self) -> usize {
        self.first_vertex
    }

    /// Whether a set of generators is a face of `K`.
    pub fn is_face(&self, generators: &[usize]) -> bool {
        let mut ys: Vec<usize> = generators.iter().filter_map(|&g| self.vertex_of(g)).collect();
        ys.sort_unstable();
        ys.dedup();
        match ys.as_slice() {
            [] | [_] => true,
            [u, v] => self.graph.has_edge(*u, *v),
            _ => false,
        }
    }

    /// `P_max(K)`: all simplex generators plus an edge, an isolated vertex, or
    /// nothing when the graph has no vertices.
    pub fn maximal_faces(&self) -> Vec<Vec<usize>> {
        let base: Vec<usize> = (0..self.first_vertex).collect();
        let with = |extra: &[usize]| {
            let mut face = base.clone();
            face.extend(extra.iter().map(|&v| self.vertex_generator(v)));
            face
        };
        let mut faces: Vec<Vec<usize>> =
            self.graph.edges().iter().map(|&(u, v)| with(&[u, v])).collect();
        faces.extend(
            (0..self.graph.vertex_count())
                .filter(|&v| self.graph.degree(v) == 0)
                .map(|v| with(&[v])),
        );
        if faces.is_empty() {
            faces.push(base);
        }
        faces
    }

    /// Minimal non-faces, i.e. the monomial generators of `I_K`: non-edges and
    /// triangles of the graph.
    pub fn minimal_non_faces(&self) -> Vec<Vec<usize>> {
        let g = &self.graph;
        let n = g.vertex_count();
        let mut out = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if !g.has_edge(u, v) {
                    out.push(vec![self.vertex_generator(u), self.vertex_generator(v)]);
                }
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                for w in v + 1..n {
                    if g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(u, w) {
                        out.push(vec![u, v, w].into_iter().map(|x| self.vertex_generator(x)).collect());
                    }
                }
            }
        }
        out
    }

    /// Degree multiset of a set of generators, sorted ascending.
    pub fn degree_multiset(&self, generators: &[usize]) -> Vec<u32> {
        let mut d: Vec<u32> = generators.iter().map(|&g| self.degree(g)).collect();
        d.sort_unstable();
        d
    }

    /// Text form: header lines (`family`, `prime`, `vector`, or `gen` lines
    /// for polynomial algebras) followed by the graph edge list.
    pub fn to_text(&self) -> String {
        let mut out = format!("family {}\n", self.family.tag());
        match &self.family {
            Family::Polynomial { generators } => {
                for (l, d) in generators {
                    out.push_str(&format!("gen {l} {d}\n"));
                }
            }
            family => {
                if let Family::Ap { p, .. } | Family::Bp { p, .. } = family {
                    out.push_str(&format!("prime {p}\n"));
                }
                let v: Vec<String> = family.vector().iter().map(usize::to_string).collect();
                out.push_str(&format!("vector {}\n", v.join(",")));
            }
        }
        out.push_str(&self.graph.to_edge_list());
        out
    }

    pub fn parse(text: &str) -> Result<JoinComplex> {
        let mut tag = None;
        let mut prime = None;
        let mut vector = None;
        let mut gens = Vec::new();
        let mut graph_lines = String::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let err = |message: String| Error::Parse { line, message };
            let content = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = content.split_whitespace().collect();
            match fields.as_slice() {
                ["family", t] => tag = Some(t.to_string()),
                ["prime", p] => prime = Some(p.parse::<u32>().map_err(|e| err(e.to_string()))?),
                ["vector", v] => vector = Some(parse_vector(v).map_err(|e| err(e.to_string()))?),
                ["vector"] => vector = Some(Vec::new()),
                ["gen", l, d] => gens.push((l.to_string(), d.parse::<u32>().map_err(|e| err(e.to_string()))?)),
                _ => {
                    graph_lines.push_str(raw);
                    graph_lines.push('\n');
                    continue;
                }
            }
            // keep line numbers aligned for graph parse errors
            graph_lines.push('\n');
        }
        let tag = tag.ok_or_else(|| contract("missing `family` header"))?;
        let graph = parse_graph(&graph_lines)?;
        let family = if tag == "poly" {
            Family::Polynomial { generators: gens }
        } else {
            Family::from_parts(&tag, prime, &vector.unwrap_or_default())?
        };
        build_complex(&family, &graph)
    }

    /// A readable presentation `Z[gens]/I_K` listing degrees and the minimal
    /// non-faces.
    pub fn presentation(&self) -> String {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("{}:{}", g.label, g.degree))
            .collect();
        let rels: Vec<String> = self
            .minimal_non_faces()
            .iter()
            .map(|f| f.iter().map(|&g| self.label(g)).collect::<Vec<_>>().join(" "))
            .collect();
        format!(
            "{}\nZ[{}] / ({})\n",
            self.family,
            gens.join(", "),
            rels.join(", ")
        )
    }
}

pub fn parse_vector(text: &str) -> Result<Vec<usize>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|e| contract(format!("bad vector entry `{x}`: {e}")))
        })
        .collect()
}

/// A monomial as a dense exponent vector. Ordered by degree, then
/// lexicographically on exponents in generator order (graded lex with simplex
/// generators before graph generators).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u8]>,
}

impl Monomial {
    pub fn one(num_generators: usize) -> Monomial {
        Monomial { degree: 0, exps: vec![0; num_generators].into_boxed_slice() }
    }

    pub fn from_exponents(k: &JoinComplex, exps: Vec<u8>) -> Result<Monomial> {
        if exps.len() != k.num_generators() {
            return Err(contract(format!(
                "monomial over {} generators, complex has {}",
                exps.len(),
                k.num_generators()
            )));
        }
        let degree = exps.iter().enumerate().map(|(g, &e)| e as u32 * k.degree(g)).sum();
        Ok(Monomial { degree, exps: exps.into_boxed_slice() })
    }

    pub fn generator(k: &JoinComplex, g: usize) -> Monomial {
        let mut exps = vec![0u8; k.num_generators()];
        exps[g] = 1;
        Monomial { degree: k.degree(g), exps: exps.into_boxed_slice() }
    }

    /// `Π g^e` over the given generator-exponent pairs.
    pub fn from_powers(k: &JoinComplex, powers: &[(usize, u8)]) -> Monomial {
        let mut exps = vec![0u8; k.num_generators()];
        for &(g, e) in powers {
            exps[g] += e;
        }
        Monomial::from_exponents(k, exps).expect("length matches")
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn exponent(&self, g: usize) -> u8 {
        self.exps[g]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    /// Generators with nonzero exponent, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&g| self.exps[g] > 0).collect()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u8> = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Monomial { degree: other.degree - self.degree, exps: exps.into_boxed_slice() }
    }

    fn times_unchecked(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u8> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Monomial { degree: self.degree + other.degree, exps: exps.into_boxed_slice() }
    }

    /// Removes one factor of generator `g`; `None` if `g` does not divide.
    pub fn without(&self, g: usize, k: &JoinComplex) -> Option<Monomial> {
        if self.exps[g] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[g] -= 1;
        Some(Monomial { degree: self.degree - k.degree(g), exps })
    }

    pub fn display(&self, k: &JoinComplex) -> String {
        let factors: Vec<String> = self
            .support()
            .into_iter()
            .map(|g| match self.exps[g] {
                1 => k.label(g).to_string(),
                e => format!("{}^{e}", k.label(g)),
            })
            .collect();
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join(" ")
        }
    }

    pub fn parse(k: &JoinComplex, text: &str) -> Result<Monomial> {
        let mut exps = vec![0u8; k.num_generators()];
        for factor in text.split_whitespace() {
            if factor == "1" {
                continue;
            }
            let (g, e) = match k.generator(factor) {
                Ok(g) => (g, 1u8),
                Err(_) => {
                    let (label, exp) = factor
                        .rsplit_once('^')
                        .ok_or_else(|| Error::UnknownGenerator(factor.to_string()))?;
                    let g = k.generator(label)?;
                    let e = exp
                        .parse::<u8>()
                        .map_err(|_| Error::UnknownGenerator(factor.to_string()))?;
                    (g, e)
                }
            };
            exps[g] = exps[g]
                .checked_add(e)
                .ok_or_else(|| contract("exponent overflow"))?;
        }
        Monomial::from_exponents(k, exps)
    }
}

/// Coefficients the ring arithmetic is generic over: plain residues for
/// concrete elements, polynomials in unknowns for the action search.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn scalar(c: u32, p: u32) -> Self;
    fn add_assign(&mut self, other: &Self, p: u32);
    fn mul(&self, other: &Self, p: u32) -> Self;
    fn scale(&self, c: u32, p: u32) -> Self;
}

impl Coefficient for u32 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn scalar(c: u32, p: u32) -> Self {
        c % p
    }
    fn add_assign(&mut self, other: &Self, p: u32) {
        *self = fp::add(*self, *other, p);
    }
    fn mul(&self, other: &Self, p: u32) -> Self {
        fp::mul(*self, *other, p)
    }
    fn scale(&self, c: u32, p: u32) -> Self {
        fp::mul(*self, c, p)
    }
}

/// Sparse term map; zero coefficients are never stored.
pub type Terms<C> = BTreeMap<Monomial, C>;

pub fn add_term<C: Coefficient>(terms: &mut Terms<C>, m: Monomial, c: &C, p: u32) {
    if c.is_zero() {
        return;
    }
    match terms.get_mut(&m) {
        Some(slot) => {
            slot.add_assign(c, p);
            if slot.is_zero() {
                terms.remove(&m);
            }
        }
        None => {
            terms.insert(m, c.clone());
        }
    }
}

/// `acc += c * b`.
pub fn add_scaled<C: Coefficient>(acc: &mut Terms<C>, b: &Terms<C>, c: &C, p: u32) {
    for (m, x) in b {
        add_term(acc, m.clone(), &x.mul(c, p), p);
    }
}

/// `SR(K, φ) ⊗ F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SrRing {
    complex: JoinComplex,
    p: u32,
}

impl SrRing {
    pub fn new(complex: JoinComplex, p: u32) -> Result<Arc<SrRing>> {
        if !fp::is_prime(p) {
            return Err(contract(format!("{p} is not prime")));
        }
        Ok(Arc::new(SrRing { complex, p }))
    }

    pub fn complex(&self) -> &JoinComplex {
        &self.complex
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    /// Whether `m` survives in `SR(K)`, i.e. its support is a face.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        let k = &self.complex;
        let mut first = None;
        let mut second = None;
        for v in 0..k.graph.vertex_count() {
            if m.exps[k.first_vertex + v] > 0 {
                match (first, second) {
                    (None, _) => first = Some(v),
                    (Some(_), None) => second = Some(v),
                    _ => return false,
                }
            }
        }
        match (first, second) {
            (Some(u), Some(v)) => k.graph.has_edge(u, v),
            _ => true,
        }
    }

    /// `m` if its support is a face, otherwise zero (`None`).
    pub fn reduce_monomial(&self, m: &Monomial) -> Result<Option<Monomial>> {
        if m.exps.len() != self.complex.num_generators() {
            return Err(contract("monomial over the wrong generator set"));
        }
        Ok(self.is_standard(m).then(|| m.clone()))
    }

    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let m = a.times_unchecked(b);
        self.is_standard(&m).then_some(m)
    }

    pub fn mul_terms<C: Coefficient>(&self, a: &Terms<C>, b: &Terms<C>) -> Terms<C> {
        let mut out = Terms::new();
        for (ma, ca) in a {
            for (mb, cb) in b {
                if let Some(m) = self.mul_monomials(ma, mb) {
                    add_term(&mut out, m, &ca.mul(cb, self.p), self.p);
                }
            }
        }
        out
    }

    /// Multiplies every term by a monomial, dropping non-faces.
    pub fn mul_by_monomial<C: Coefficient>(&self, a: &Terms<C>, m: &Monomial) -> Terms<C> {
        let mut out = Terms::new();
        for (ma, ca) in a {
            if let Some(prod) = self.mul_monomials(ma, m) {
                add_term(&mut out, prod, ca, self.p);
            }
        }
        out
    }

    /// All face-supported monomials of the given degree, ascending.
    pub fn basis(&self, degree: u32) -> Vec<Monomial> {
        let k = &self.complex;
        let n = k.num_generators();
        let mut out = Vec::new();
        let mut exps = vec![0u8; n];
        self.fill_basis(0, degree, &mut exps, &mut out);
        out.sort();
        out
    }

    fn fill_basis(&self, g: usize, remaining: u32, exps: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        let k = &self.complex;
        if g == k.num_generators() {
            if remaining == 0 {
                let m = Monomial::from_exponents(k, exps.clone()).expect("length matches");
                if self.is_standard(&m) {
                    out.push(m);
                }
            }
            return;
        }
        // Prune supports that already contain a non-face.
        if g > k.first_vertex {
            let used: Vec<usize> = (k.first_vertex..g).filter(|&h| exps[h] > 0).collect();
            if !k.is_face(&used) {
                return;
            }
        }
        let d = k.degree(g);
        let max = remaining / d;
        for e in 0..=max.min(u8::MAX as u32) {
            exps[g] = e as u8;
            self.fill_basis(g + 1, remaining - e * d, exps, out);
        }
        exps[g] = 0;
    }
}

/// An element of `SR(K, φ) ⊗ F_p`.
#[derive(Clone, Debug)]
pub struct AlgebraElement {
    ring: Arc<SrRing>,
    terms: Terms<u32>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(ring: &Arc<SrRing>) -> AlgebraElement {
        AlgebraElement { ring: ring.clone(), terms: Terms::new() }
    }

    pub fn one(ring: &Arc<SrRing>) -> AlgebraElement {
        AlgebraElement::monomial(ring, Monomial::one(ring.complex.num_generators()), 1)
    }

    /// `c * m`, reduced (zero if `m` is not face-supported).
    pub fn monomial(ring: &Arc<SrRing>, m: Monomial, c: u32) -> AlgebraElement {
        let mut terms = Terms::new();
        if ring.is_standard(&m) {
            add_term(&mut terms, m, &(c % ring.p), ring.p);
        }
        AlgebraElement { ring: ring.clone(), terms }
    }

    pub fn generator(ring: &Arc<SrRing>, label: &str) -> Result<AlgebraElement> {
        let g = ring.complex.generator(label)?;
        Ok(AlgebraElement::monomial(ring, Monomial::generator(&ring.complex, g), 1))
    }

    /// Builds an element from raw terms, reducing coefficients and dropping
    /// non-faces.
    pub fn from_terms(ring: &Arc<SrRing>, terms: impl IntoIterator<Item = (Monomial, u32)>) -> AlgebraElement {
        let mut out = Terms::new();
        for (m, c) in terms {
            if ring.is_standard(&m) {
                add_term(&mut out, m, &(c % ring.p), ring.p);
            }
        }
        AlgebraElement { ring: ring.clone(), terms: out }
    }

    pub(crate) fn from_reduced(ring: &Arc<SrRing>, terms: Terms<u32>) -> AlgebraElement {
        AlgebraElement { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<SrRing> {
        &self.ring
    }

    pub fn terms(&self) -> &Terms<u32> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms; `None` for zero or inhomogeneous elements.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    fn same_ring(&self, other: &AlgebraElement) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(contract("elements of different algebras"))
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, &1, self.ring.p);
        Ok(AlgebraElement { ring: self.ring.clone(), terms })
    }

    pub fn sub(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_ring(other)?;
        let mut terms = self.terms.clone();
        add_scaled(&mut terms, &other.terms, &(self.ring.p - 1), self.ring.p);
        Ok(AlgebraElement { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: u32) -> AlgebraElement {
        let p = self.ring.p;
        let terms = self
            .terms
            .iter()
            .map(|(m, &x)| (m.clone(), fp::mul(x, c, p)))
            .filter(|(_, x)| *x != 0)
            .collect();
        AlgebraElement { ring: self.ring.clone(), terms }
    }

    pub fn mul(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        self.same_ring(other)?;
        Ok(AlgebraElement { ring: self.ring.clone(), terms: self.ring.mul_terms(&self.terms, &other.terms) })
    }

    pub fn pow(&self, e: u32) -> AlgebraElement {
        let mut acc = AlgebraElement::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Terms in descending canonical order: `c * f1 f2^e + ...`, or `0`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let k = &self.ring.complex;
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| format!("{c} * {}", m.display(k)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn parse(ring: &Arc<SrRing>, text: &str) -> Result<AlgebraElement> {
        let text = text.trim();
        if text == "0" || text.is_empty() {
            return Ok(AlgebraElement::zero(ring));
        }
        let k = &ring.complex;
        let mut terms = Vec::new();
        for term in text.split('+') {
            let term = term.trim();
            let (c, m) = match term.split_once('*') {
                Some((c, m)) => {
                    let c = c.trim().parse::<u64>().map_err(|e| contract(format!("bad coefficient in `{term}`: {e}")))?;
                    (c, Monomial::parse(k, m)?)
                }
                None => match term.parse::<u64>() {
                    Ok(c) => (c, Monomial::one(k.num_generators())),
                    Err(_) => (1, Monomial::parse(k, term)?),
                },
            };
            terms.push((m, (c % ring.p as u64) as u32));
        }
        Ok(AlgebraElement::from_terms(ring, terms))
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Whether `m` is divisible by one of `gens`.
pub fn monomial_in_ideal(m: &Monomial, gens: &[Monomial]) -> bool {
    gens.iter().any(|g| g.divides(m))
}

/// Membership in a monomial ideal: every term divisible by some generator.
pub fn ideal_membership(a: &AlgebraElement, gens: &[Monomial]) -> bool {
    a.terms.keys().all(|m| monomial_in_ideal(m, gens))
}

/// Generators of `(y_i) + (y_j y_k : j < k)` for graph vertex `v`.
pub fn vertex_ideal(k: &JoinComplex, v: usize) -> Vec<Monomial> {
    let n = k.graph.vertex_count();
    let mut gens = vec![Monomial::generator(k, k.vertex_generator(v))];
    for a in 0..n {
        for b in a + 1..n {
            gens.push(Monomial::from_powers(k, &[(k.vertex_generator(a), 1), (k.vertex_generator(b), 1)]));
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(family: Family, g: &Graph, p: u32) -> Arc<SrRing> {
        SrRing::new(build_complex(&family, g).unwrap(), p).unwrap()
    }

    #[test]
    fn family_degrees() {
        let b = build_complex(&Family::B { n: 2 }, &Graph::complete(3)).unwrap();
        assert_eq!(b.blocks(), [Block { size: 2, degree: 4 }]);
        assert_eq!(b.graph_degree(), 8);

        let a5 = build_complex(&Family::Ap { p: 5, s: vec![1, 1, 1, 1] }, &Graph::empty(2)).unwrap();
        let degs: Vec<u32> = a5.blocks().iter().map(|b| b.degree).collect();
        assert_eq!(degs, [4, 6, 8, 10]);
        assert_eq!(a5.graph_degree(), 12);

        let a = build_complex(&Family::A { s: vec![1, 1] }, &Graph::complete(3)).unwrap();
        let degs: Vec<u32> = a.blocks().iter().map(|b| b.degree).collect();
        assert_eq!(degs, [4, 6]);
        assert_eq!(a.graph_degree(), 8);

        let b5 = build_complex(&Family::Bp { p: 5, r: vec![2, 1] }, &Graph::empty(1)).unwrap();
        let degs: Vec<u32> = b5.blocks().iter().map(|b| b.degree).collect();
        assert_eq!(degs, [4, 8]);
        assert_eq!(b5.graph_degree(), 12);
    }

    #[test]
    fn family_length_mismatch_is_rejected() {
        assert!(build_complex(&Family::Ap { p: 5, s: vec![1, 1] }, &Graph::empty(1)).is_err());
        assert!(build_complex(&Family::Bp { p: 7, r: vec![1] }, &Graph::empty(1)).is_err());
        assert!(build_complex(&Family::Bp { p: 4, r: vec![1] }, &Graph::empty(1)).is_err());
    }

    #[test]
    fn zero_size_blocks_contribute_nothing() {
        let k = build_complex(&Family::Ap { p: 5, s: vec![2, 0, 1, 0] }, &Graph::empty(1)).unwrap();
        assert_eq!(k.num_generators(), 4);
        assert_eq!(k.label(2), "x1^(3)");
    }

    #[test]
    fn maximal_face_examples() {
        let k = build_complex(&Family::A { s: vec![2] }, &Graph::default()).unwrap();
        assert_eq!(k.maximal_faces(), [vec![0, 1]]);

        let edge = Graph::path(2);
        let k = build_complex(&Family::B { n: 1 }, &edge).unwrap();
        assert_eq!(k.maximal_faces(), [vec![0, 1, 2]]);

        let k = build_complex(&Family::A { s: vec![1, 1] }, &Graph::complete(3)).unwrap();
        let faces = k.maximal_faces();
        assert_eq!(faces.len(), 3);
        let labels: Vec<Vec<&str>> = faces.iter().map(|f| f.iter().map(|&g| k.label(g)).collect()).collect();
        assert_eq!(labels[0], ["x1^(1)", "x1^(2)", "y_1", "y_2"]);
    }

    #[test]
    fn reduction_examples() {
        let path = Graph::path(3); // edges 1-2, 2-3
        let r = ring(Family::B { n: 1 }, &path, 3);
        let k = r.complex();
        let y = |v: usize| k.vertex_generator(v);
        let edge = Monomial::from_powers(k, &[(y(0), 1), (y(1), 1)]);
        assert_eq!(r.reduce_monomial(&edge).unwrap(), Some(edge.clone()));
        let non_edge = Monomial::from_powers(k, &[(y(0), 1), (y(2), 1)]);
        assert_eq!(r.reduce_monomial(&non_edge).unwrap(), None);

        let r3 = ring(Family::B { n: 1 }, &Graph::complete(3), 3);
        let k3 = r3.complex();
        let tri = Monomial::from_powers(k3, &[(k3.vertex_generator(0), 1), (k3.vertex_generator(1), 1), (k3.vertex_generator(2), 1)]);
        assert_eq!(r3.reduce_monomial(&tri).unwrap(), None);

        let foreign = Monomial::one(2);
        assert!(r.reduce_monomial(&foreign).is_err());
    }

    #[test]
    fn multiplication_examples() {
        let r = ring(Family::B { n: 0 }, &Graph::path(2), 3);
        let ya = AlgebraElement::generator(&r, "y_1").unwrap();
        let yb = AlgebraElement::generator(&r, "y_2").unwrap();
        assert_eq!(AlgebraElement::one(&r).mul(&ya).unwrap(), ya);
        let s = ya.add(&yb).unwrap();
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq.to_text(), "1 * y_1^2 + 2 * y_1 y_2 + 1 * y_2^2");

        let r2 = ring(Family::B { n: 0 }, &Graph::empty(2), 3);
        let a = AlgebraElement::generator(&r2, "y_1").unwrap();
        let b = AlgebraElement::generator(&r2, "y_2").unwrap();
        assert!(a.mul(&b).unwrap().is_zero());
        assert!(a.mul(&ya).is_err());
    }

    #[test]
    fn ideal_membership_examples() {
        let r = ring(Family::B { n: 1 }, &Graph::complete(3), 3);
        let k = r.complex();
        let ideal = vertex_ideal(k, 0);
        assert!(ideal_membership(&AlgebraElement::zero(&r), &ideal));
        let x = k.generator("x1^(1)").unwrap();
        let xy = AlgebraElement::monomial(&r, Monomial::from_powers(k, &[(x, 1), (k.vertex_generator(0), 1)]), 1);
        assert!(ideal_membership(&xy, &ideal));
        let x3 = AlgebraElement::monomial(&r, Monomial::from_powers(k, &[(x, 3)]), 1);
        assert!(!ideal_membership(&x3, &ideal));
    }

    #[test]
    fn element_text_round_trip() {
        let r = ring(Family::Bp { p: 5, r: vec![2, 1] }, &Graph::cycle(4), 5);
        let e = AlgebraElement::parse(&r, "3 * x1^(1)^2 y_1 + 4 * x1^(2) y_2 + 2 * y_1 y_2").unwrap();
        assert_eq!(AlgebraElement::parse(&r, &e.to_text()).unwrap(), e);
        // y_1 y_3 is a non-edge of C4 and reduces away.
        assert!(AlgebraElement::parse(&r, "y_1 y_3").unwrap().is_zero());
        assert!(AlgebraElement::parse(&r, "2 * z").is_err());
    }

    #[test]
    fn complex_text_round_trip() {
        for family in [
            Family::A { s: vec![2, 3] },
            Family::Ap { p: 5, s: vec![1, 0, 2, 1] },
            Family::Bp { p: 7, r: vec![1, 1, 2] },
            Family::B { n: 3 },
        ] {
            let k = build_complex(&family, &Graph::cycle(5)).unwrap();
            assert_eq!(JoinComplex::parse(&k.to_text()).unwrap(), k);
        }
        let poly = JoinComplex::polynomial(&[("x", 4), ("y1", 8), ("y2", 8)]).unwrap();
        assert_eq!(JoinComplex::parse(&poly.to_text()).unwrap(), poly);
    }

    #[test]
    fn basis_of_small_pieces() {
        let poly = JoinComplex::polynomial(&[("x", 4), ("y1", 8), ("y2", 8)]).unwrap();
        let r = SrRing::new(poly, 3).unwrap();
        let k = r.complex();
        let shown: Vec<String> = r.basis(20).iter().map(|m| m.display(k)).collect();
        assert_eq!(shown, ["x y2^2", "x y1 y2", "x y1^2", "x^3 y2", "x^3 y1", "x^5"]);
        assert_eq!(r.basis(0).len(), 1);
        assert!(r.basis(2).is_empty());
    }

    #[test]
    fn presentation_lists_non_faces() {
        let k = build_complex(&Family::B { n: 1 }, &Graph::path(3)).unwrap();
        let text = k.presentation();
        assert!(text.contains("y_1 y_3"), "{text}");
        assert!(!text.contains("y_1 y_2)"), "{text}");
    }
}
