//! Sufficient and necessary conditions for realizability: Takeda-style vertex
//! partitions built from colorings or from decompositions `s = s' + s''`,
//! multiset decomposability of maximal faces, and the combined verdict.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Family, JoinComplex};
use crate::error::{contract, Error, Result};
use crate::graph::{chromatic_number, Coloring, Graph};
use crate::span::span_chromatic_number;
use crate::steenrod::necessary_condition;

/// Which target multisets a strict partition must hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    /// `{4, 6, ..., 2p, 2p+2}`, `{4, 6, ..., 2p}`, or empty.
    A,
    /// `{4, 8, ..., 2p-2, 2p+2}`, `{4, 8, ..., 2p-2}`, or empty.
    B,
}

impl Scheme {
    /// The two nonempty targets, sorted ascending.
    pub fn targets(self, p: u32) -> [Vec<u32>; 2] {
        let base: Vec<u32> = match self {
            Scheme::A => (4..=2 * p).step_by(2).collect(),
            Scheme::B => (4..=2 * p - 2).step_by(4).collect(),
        };
        let mut with_y = base.clone();
        with_y.push(2 * p + 2);
        [with_y, base]
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scheme> {
        match s {
            "A" | "a" => Ok(Scheme::A),
            "B" | "b" => Ok(Scheme::B),
            other => Err(contract(format!("unknown scheme `{other}`"))),
        }
    }
}

/// A partition of the generators of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn labels(&self, k: &JoinComplex) -> Vec<Vec<String>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&g| k.label(g).to_string()).collect())
            .collect()
    }

    /// One block per line: `V_<i> = {a, b, ...}`.
    pub fn to_text(&self, k: &JoinComplex) -> String {
        self.labels(k)
            .iter()
            .enumerate()
            .map(|(i, b)| format!("V_{} = {{{}}}\n", i + 1, b.join(", ")))
            .collect()
    }

    fn check_cover(&self, k: &JoinComplex) -> Result<()> {
        let mut seen = vec![false; k.num_generators()];
        for &g in self.blocks.iter().flatten() {
            if g >= seen.len() {
                return Err(contract(format!("partition mentions generator {g}, complex has {}", seen.len())));
            }
            if std::mem::replace(&mut seen[g], true) {
                return Err(contract(format!("generator {} lies in two blocks", k.label(g))));
            }
        }
        if let Some(g) = seen.iter().position(|&s| !s) {
            return Err(contract(format!("generator {} is in no block", k.label(g))));
        }
        Ok(())
    }

    /// Degree multiset of `σ ∩ V_i` for every maximal face and block.
    fn intersections(&self, k: &JoinComplex) -> Vec<(usize, usize, Vec<u32>)> {
        let faces = k.maximal_faces();
        let mut out = Vec::new();
        for (f, face) in faces.iter().enumerate() {
            for (i, block) in self.blocks.iter().enumerate() {
                let common: Vec<usize> = block.iter().copied().filter(|g| face.contains(g)).collect();
                out.push((f, i, k.degree_multiset(&common)));
            }
        }
        out
    }
}

fn uniform_size(k: &JoinComplex) -> Result<usize> {
    let sizes: Vec<usize> = k.blocks().iter().map(|b| b.size).collect();
    match sizes.first() {
        Some(&n) if sizes.iter().all(|&s| s == n) => Ok(n),
        _ => Err(contract(format!("block sizes {sizes:?} are not all equal"))),
    }
}

/// `V_i = {x_i^(1), ..., x_i^(last)} ∪ f^{-1}(i)` for `i = 1..n`.
pub fn partition_from_coloring(k: &JoinComplex, coloring: &Coloring, scheme: Scheme) -> Result<Partition> {
    let n = uniform_size(k)?;
    let want = match scheme {
        Scheme::A => matches!(k.family(), Family::Ap { .. }) || matches!(k.family(), Family::A { .. }),
        Scheme::B => matches!(k.family(), Family::Bp { .. } | Family::B { .. }),
    };
    if !want {
        return Err(contract(format!("scheme {scheme:?} does not match family {}", k.family().tag())));
    }
    let graph = k.graph();
    if !coloring.is_valid_for(graph) {
        return Err(contract("not a valid coloring of the graph"));
    }
    if coloring.num_colors() > n {
        return Err(contract(format!("{}-coloring does not fit blocks of size {n}", coloring.num_colors())));
    }
    let coloring = coloring.with_palette(n)?;
    let mut blocks = Vec::new();
    for i in 1..=n {
        let mut block: Vec<usize> = (1..=k.blocks().len())
            .map(|b| k.simplex_generator(b, i).expect("uniform blocks"))
            .collect();
        block.extend(coloring.class(i).into_iter().map(|v| k.vertex_generator(v)));
        blocks.push(block);
    }
    Ok(Partition { blocks })
}

/// Strict check against the scheme's target multisets.
pub fn verify_partition(k: &JoinComplex, part: &Partition, scheme: Scheme) -> Result<bool> {
    part.check_cover(k)?;
    let p = k
        .family()
        .prime()
        .ok_or_else(|| contract(format!("family {} has no attached prime", k.family().tag())))?;
    let targets = scheme.targets(p);
    Ok(part
        .intersections(k)
        .iter()
        .all(|(_, _, m)| m.is_empty() || targets.contains(m)))
}

/// Check against a multiset family: every `σ ∩ V_i` is empty or one allowed set.
pub fn verify_partition_with_family(k: &JoinComplex, part: &Partition, family: &DegreeMultisetFamily) -> Result<bool> {
    part.check_cover(k)?;
    Ok(part
        .intersections(k)
        .iter()
        .all(|(_, _, m)| m.is_empty() || family.allows(m)))
}

/// `s = s' + s''` as in the decomposition theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub s_prime: Vec<usize>,
    pub s_double_prime: Vec<usize>,
}

fn is_decreasing(v: impl IntoIterator<Item = usize>) -> bool {
    let v: Vec<usize> = v.into_iter().collect();
    v.windows(2).all(|w| w[0] >= w[1])
}

/// Whether `(s', s'')` meets the conditions for chromatic number `c`.
pub fn is_valid_decomposition(s: &[usize], d: &Decomposition, c: usize) -> bool {
    let n = s.len();
    let (sp, spp) = (&d.s_prime, &d.s_double_prime);
    if sp.len() != n || spp.len() != n || (0..n).any(|i| sp[i] + spp[i] != s[i]) {
        return false;
    }
    // Slots are 1-based in the statement: even slots are odd indices here.
    if (0..n).any(|i| i % 2 == 1 && spp[i] != 0) {
        return false;
    }
    if !is_decreasing(sp.iter().copied()) || !is_decreasing(spp.iter().step_by(2).copied()) {
        return false;
    }
    if n == 0 {
        c == 0
    } else if n % 2 == 0 {
        spp[n - 2] + sp[n - 1] >= c
    } else {
        sp[n - 1] >= c
    }
}

/// First valid decomposition with `s''` odd slots in downward lexicographic
/// order.
pub fn decompose_s(s: &[usize], c: usize) -> Option<Decomposition> {
    let odd: Vec<usize> = (0..s.len()).step_by(2).collect();
    let mut spp = vec![0usize; s.len()];
    fn go(s: &[usize], c: usize, odd: &[usize], at: usize, spp: &mut Vec<usize>) -> Option<Decomposition> {
        if at == odd.len() {
            let d = Decomposition {
                s_prime: s.iter().zip(spp.iter()).map(|(a, b)| a - b).collect(),
                s_double_prime: spp.clone(),
            };
            return is_valid_decomposition(s, &d, c).then_some(d);
        }
        let i = odd[at];
        let cap = if at == 0 { s[i] } else { s[i].min(spp[odd[at - 1]]) };
        for v in (0..=cap).rev() {
            spp[i] = v;
            // s' must stay decreasing up to the slot just fixed.
            let prefix_ok = (1..=i).all(|j| s[j - 1] - spp[j - 1] >= s[j] - if j <= i { spp[j] } else { 0 });
            if prefix_ok {
                if let Some(d) = go(s, c, odd, at + 1, spp) {
                    return Some(d);
                }
            }
        }
        spp[i] = 0;
        None
    }
    go(s, c, &odd, 0, &mut spp)
}

/// The general vector `s` with `K ≅ A(s, Γ)`: level `j` holds the block of
/// degree `2j + 2`, and the graph sits in degree `2n + 4`.
pub fn general_vector(k: &JoinComplex) -> Result<Vec<usize>> {
    let gd = k.graph_degree();
    if gd < 4 || gd % 2 == 1 {
        return Err(contract(format!("family {} is not of the form A(s, Γ)", k.family().tag())));
    }
    let n = ((gd - 4) / 2) as usize;
    let mut s = vec![0usize; n];
    for b in k.blocks() {
        let j = (b.degree / 2) as usize;
        if b.degree % 2 == 1 || j < 2 || j - 1 > n {
            return Err(contract(format!("block degree {} does not fit A(s, Γ) with |s| = {n}", b.degree)));
        }
        s[j - 2] += b.size;
    }
    Ok(s)
}

/// Blocks of the decomposition-theorem partition: chains
/// `{x^(1), ..., x^(L)}` from `s'`, odd-level chains `{x^(1), x^(3), ...}`
/// from `s''`, and color classes attached to the full chains first and, for
/// even length, then to `s''` chains reaching level `n - 1`.
pub fn partition_from_decomposition(k: &JoinComplex, d: &Decomposition, coloring: &Coloring) -> Result<Partition> {
    let s = general_vector(k)?;
    let c = coloring.num_colors();
    if !coloring.is_valid_for(k.graph()) {
        return Err(contract("not a valid coloring of the graph"));
    }
    if !is_valid_decomposition(&s, d, c) {
        return Err(contract(format!("invalid decomposition {:?} + {:?} of {s:?} for c = {c}", d.s_prime, d.s_double_prime)));
    }
    let n = s.len();
    let block_of_level: HashMap<usize, usize> = k
        .blocks()
        .iter()
        .enumerate()
        .map(|(b, blk)| ((blk.degree / 2 - 1) as usize, b + 1))
        .collect();
    let mut next = vec![1usize; n + 1];
    let mut take = |level: usize| -> usize {
        let b = block_of_level[&level];
        let g = k.simplex_generator(b, next[level]).expect("index within block size");
        next[level] += 1;
        g
    };
    let (sp, spp) = (&d.s_prime, &d.s_double_prime);
    let mut blocks = Vec::new();
    let mut full = Vec::new();
    for i in 1..=sp.first().copied().unwrap_or(0) {
        let levels: Vec<usize> = (1..=n).take_while(|&j| sp[j - 1] >= i).collect();
        if levels.len() == n {
            full.push(blocks.len());
        }
        blocks.push(levels.into_iter().map(&mut take).collect::<Vec<_>>());
    }
    let mut top_odd = Vec::new();
    for t in 1..=spp.first().copied().unwrap_or(0) {
        let levels: Vec<usize> = (1..=n).step_by(2).take_while(|&j| spp[j - 1] >= t).collect();
        if n % 2 == 0 && levels.last() == Some(&(n - 1)) {
            top_odd.push(blocks.len());
        }
        blocks.push(levels.into_iter().map(&mut take).collect::<Vec<_>>());
    }
    let hosts: Vec<usize> = full.into_iter().chain(top_odd).collect();
    if hosts.len() < c {
        return Err(contract(format!("{} blocks can take a color class, {c} are needed", hosts.len())));
    }
    for color in 1..=c {
        let class = coloring.class(color).into_iter().map(|v| k.vertex_generator(v));
        blocks[hosts[color - 1]].extend(class);
    }
    Ok(Partition { blocks })
}

/// Multisets of even degrees generated by explicit sets and arithmetic chains
/// `{start, start + step, ...}` of every length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeMultisetFamily {
    pub sets: Vec<Vec<u32>>,
    pub chains: Vec<(u32, u32)>,
}

impl Default for DegreeMultisetFamily {
    /// `{2}`, the chains `{4, 6, ..., 2n}`, and the chains `{4, 8, ..., 4m}`.
    fn default() -> Self {
        DegreeMultisetFamily { sets: vec![vec![2]], chains: vec![(4, 2), (4, 4)] }
    }
}

impl DegreeMultisetFamily {
    /// Whether a multiset is exactly one allowed set.
    pub fn allows(&self, m: &[u32]) -> bool {
        let mut m = m.to_vec();
        m.sort_unstable();
        if self.sets.iter().any(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s == m
        }) {
            return true;
        }
        self.chains.iter().any(|&(start, step)| {
            !m.is_empty() && m.iter().enumerate().all(|(i, &d)| d == start + step * i as u32)
        })
    }

    /// Lines `set d1 d2 ...` and `chain start step`; `#` starts a comment.
    pub fn parse(text: &str) -> Result<DegreeMultisetFamily> {
        let mut fam = DegreeMultisetFamily { sets: Vec::new(), chains: Vec::new() };
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |message: String| Error::Parse { line: lineno + 1, message };
            let mut fields = line.split_whitespace();
            let kind = fields.next().expect("nonempty line");
            let nums: Vec<u32> = fields
                .map(|f| f.parse::<u32>().map_err(|_| at(format!("bad number `{f}`"))))
                .collect::<Result<_>>()?;
            if nums.iter().any(|&d| d == 0 || d % 2 == 1) {
                return Err(at("degrees must be positive and even".into()));
            }
            match (kind, nums.as_slice()) {
                ("set", [_, ..]) => fam.sets.push(nums),
                ("chain", [start, step]) => fam.chains.push((*start, *step)),
                _ => return Err(at(format!("expected `set d...` or `chain start step`, got `{line}`"))),
            }
        }
        Ok(fam)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.sets {
            let s: Vec<String> = s.iter().map(u32::to_string).collect();
            out.push_str(&format!("set {}\n", s.join(" ")));
        }
        for (start, step) in &self.chains {
            out.push_str(&format!("chain {start} {step}\n"));
        }
        out
    }

    /// Candidate parts whose least element is `min`, drawn from `counts`.
    fn parts_from(&self, min: u32, counts: &std::collections::BTreeMap<u32, usize>) -> Vec<Vec<u32>> {
        let fits = |part: &[u32]| {
            let mut need: std::collections::BTreeMap<u32, usize> = std::collections::BTreeMap::new();
            for &d in part {
                *need.entry(d).or_default() += 1;
            }
            need.iter().all(|(d, n)| counts.get(d).copied().unwrap_or(0) >= *n)
        };
        let mut out = Vec::new();
        for s in &self.sets {
            let mut s = s.clone();
            s.sort_unstable();
            if s.first() == Some(&min) && fits(&s) && !out.contains(&s) {
                out.push(s);
            }
        }
        for &(start, step) in &self.chains {
            if start != min {
                continue;
            }
            let mut chain = vec![start];
            while step > 0 && counts.get(&(chain[chain.len() - 1] + step)).copied().unwrap_or(0) > 0 {
                chain.push(chain[chain.len() - 1] + step);
            }
            // Longest chain first.
            for len in (1..=chain.len()).rev() {
                let part = chain[..len].to_vec();
                if !out.contains(&part) {
                    out.push(part);
                }
            }
        }
        out
    }
}

/// Splits a multiset of positive even degrees into allowed sets, or `None`.
pub fn multiset_decomposable(m: &[u32], family: &DegreeMultisetFamily) -> Result<Option<Vec<Vec<u32>>>> {
    if let Some(&d) = m.iter().find(|&&d| d == 0 || d % 2 == 1) {
        return Err(contract(format!("degree {d} is not a positive even integer")));
    }
    let mut counts = std::collections::BTreeMap::new();
    for &d in m {
        *counts.entry(d).or_insert(0usize) += 1;
    }
    let mut memo: HashMap<Vec<(u32, usize)>, bool> = HashMap::new();
    fn go(
        counts: &mut std::collections::BTreeMap<u32, usize>,
        family: &DegreeMultisetFamily,
        memo: &mut HashMap<Vec<(u32, usize)>, bool>,
        parts: &mut Vec<Vec<u32>>,
    ) -> bool {
        let Some((&min, _)) = counts.iter().next() else { return true };
        let key: Vec<(u32, usize)> = counts.iter().map(|(&d, &n)| (d, n)).collect();
        if memo.get(&key) == Some(&false) {
            return false;
        }
        for part in family.parts_from(min, counts) {
            for d in &part {
                let n = counts.get_mut(d).expect("part fits");
                *n -= 1;
                if *n == 0 {
                    counts.remove(d);
                }
            }
            parts.push(part.clone());
            if go(counts, family, memo, parts) {
                return true;
            }
            parts.pop();
            for &d in &part {
                *counts.entry(d).or_default() += 1;
            }
        }
        memo.insert(key, false);
        false
    }
    let mut parts = Vec::new();
    Ok(go(&mut counts, family, &mut memo, &mut parts).then_some(parts))
}

/// `(s_pχ(Γ), χ(Γ))`, the bounds sandwiching both topological chromatic
/// numbers.
pub fn chromatic_bounds(g: &Graph, p: u32) -> Result<(usize, usize)> {
    let (lower, _) = span_chromatic_number(g, p)?;
    let (upper, _) = chromatic_number(g);
    assert!(lower <= upper, "s_{p}χ = {lower} exceeds χ = {upper}");
    Ok((lower, upper))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    CertifiedRealizable,
    CertifiedNotRealizable,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::CertifiedRealizable => "certified realizable",
            Status::CertifiedNotRealizable => "certified not realizable",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `s_pχ(Γ) > bound`: no unstable action mod `p`.
    SpanGap { p: u32, span_chromatic: usize, bound: usize },
    /// A maximal face whose degree multiset splits into no allowed sets.
    NonDecomposableFace { face: Vec<String>, multiset: Vec<u32> },
}

impl Witness {
    pub fn to_text(&self) -> String {
        match self {
            Witness::SpanGap { p, span_chromatic, bound } => format!("s_{p}χ={span_chromatic} > bound={bound}"),
            Witness::NonDecomposableFace { face, multiset } => {
                let m: Vec<String> = multiset.iter().map(u32::to_string).collect();
                format!("face {{{}}} has multiset {{{}}}", face.join(", "), m.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    /// `coloring` (strict scheme) or `decomposition` (multiset family).
    pub method: String,
    pub decomposition: Option<Decomposition>,
    pub blocks: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizabilityVerdict {
    pub status: Status,
    pub family: String,
    pub chromatic_number: usize,
    pub certificate: Option<Certificate>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl RealizabilityVerdict {
    /// Status line, then the certificate blocks or the witnesses.
    pub fn to_text(&self) -> String {
        let mut out = format!("status: {}\nfamily: {}\nchi = {}\n", self.status, self.family, self.chromatic_number);
        if let Some(c) = &self.certificate {
            out.push_str(&format!("certificate: partition via {}\n", c.method));
            if let Some(d) = &c.decomposition {
                out.push_str(&format!("s' = {:?}, s'' = {:?}\n", d.s_prime, d.s_double_prime));
            }
            for (i, b) in c.blocks.iter().enumerate() {
                out.push_str(&format!("V_{} = {{{}}}\n", i + 1, b.join(", ")));
            }
        }
        for w in &self.witnesses {
            out.push_str(&format!("witness: {}\n", w.to_text()));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

/// Runs the necessary conditions (span gap, multiset decomposability of every
/// maximal face), then the sufficient constructions.
pub fn check_realizable(k: &JoinComplex, multisets: &DegreeMultisetFamily) -> Result<RealizabilityVerdict> {
    if matches!(k.family(), Family::Polynomial { .. }) {
        return Err(contract("realizability verdicts are defined for graph families"));
    }
    let graph = k.graph();
    let (chi, coloring) = chromatic_number(graph);
    let mut verdict = RealizabilityVerdict {
        status: Status::Inconclusive,
        family: k.family().to_string(),
        chromatic_number: chi,
        certificate: None,
        witnesses: Vec::new(),
        notes: Vec::new(),
    };

    match k.family().prime() {
        Some(p) => {
            let rep = necessary_condition(k.family(), graph, p)?;
            if !rep.passes {
                verdict.witnesses.push(Witness::SpanGap {
                    p,
                    span_chromatic: rep.span_chromatic as usize,
                    bound: rep.bound as usize,
                });
            }
        }
        None => verdict.notes.push("no odd prime attached; span test skipped".into()),
    }
    for face in k.maximal_faces() {
        let multiset = k.degree_multiset(&face);
        if multiset_decomposable(&multiset, multisets)?.is_none() {
            verdict.witnesses.push(Witness::NonDecomposableFace {
                face: face.iter().map(|&g| k.label(g).to_string()).collect(),
                multiset,
            });
            break;
        }
    }
    if !verdict.witnesses.is_empty() {
        verdict.status = Status::CertifiedNotRealizable;
        return Ok(verdict);
    }

    let strict = match k.family() {
        Family::Ap { .. } => Some(Scheme::A),
        Family::Bp { .. } | Family::B { .. } => Some(Scheme::B),
        _ => None,
    };
    if let (Some(scheme), Ok(n)) = (strict, uniform_size(k)) {
        if chi <= n {
            let part = partition_from_coloring(k, &coloring, scheme)?;
            if verify_partition(k, &part, scheme)? {
                verdict.status = Status::CertifiedRealizable;
                verdict.certificate = Some(Certificate {
                    method: "coloring".into(),
                    decomposition: None,
                    blocks: part.labels(k),
                });
                return Ok(verdict);
            }
            verdict.notes.push("coloring partition failed verification".into());
        }
    }
    let s = general_vector(k)?;
    match decompose_s(&s, chi) {
        Some(d) => {
            let part = partition_from_decomposition(k, &d, &coloring)?;
            if verify_partition_with_family(k, &part, multisets)? {
                verdict.status = Status::CertifiedRealizable;
                verdict.certificate = Some(Certificate {
                    method: "decomposition".into(),
                    decomposition: Some(d),
                    blocks: part.labels(k),
                });
            } else {
                verdict.notes.push("decomposition partition failed verification".into());
            }
        }
        None => verdict.notes.push(format!("no decomposition s = s' + s'' of {s:?} for chi = {chi}")),
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_complex;

    fn complex(f: Family, g: Graph) -> JoinComplex {
        build_complex(&f, &g).unwrap()
    }

    fn blocks_text(k: &JoinComplex, part: &Partition) -> Vec<String> {
        part.labels(k).iter().map(|b| b.join(" ")).collect()
    }

    #[test]
    fn coloring_partition_examples() {
        let k = complex(Family::Ap { p: 3, s: vec![3, 3] }, Graph::complete(3));
        let (_, f) = chromatic_number(k.graph());
        let part = partition_from_coloring(&k, &f, Scheme::A).unwrap();
        assert_eq!(blocks_text(&k, &part), ["x1^(1) x1^(2) y_1", "x2^(1) x2^(2) y_2", "x3^(1) x3^(2) y_3"]);
        assert!(verify_partition(&k, &part, Scheme::A).unwrap());

        let k = complex(Family::Ap { p: 5, s: vec![2; 4] }, Graph::default());
        let part = partition_from_coloring(&k, &chromatic_number(k.graph()).1, Scheme::A).unwrap();
        assert_eq!(blocks_text(&k, &part), ["x1^(1) x1^(2) x1^(3) x1^(4)", "x2^(1) x2^(2) x2^(3) x2^(4)"]);
        assert!(verify_partition(&k, &part, Scheme::A).unwrap());

        let k = complex(Family::Bp { p: 5, r: vec![2, 2] }, Graph::path(2));
        let part = partition_from_coloring(&k, &chromatic_number(k.graph()).1, Scheme::B).unwrap();
        assert_eq!(blocks_text(&k, &part), ["x1^(1) x1^(2) y_1", "x2^(1) x2^(2) y_2"]);
        assert!(verify_partition(&k, &part, Scheme::B).unwrap());

        let k = complex(Family::Ap { p: 3, s: vec![2, 3] }, Graph::default());
        assert!(partition_from_coloring(&k, &chromatic_number(k.graph()).1, Scheme::A).is_err());
    }

    #[test]
    fn one_block_partition_fails() {
        let k = complex(Family::Ap { p: 3, s: vec![2, 2] }, Graph::complete(3));
        let part = Partition { blocks: vec![(0..k.num_generators()).collect()] };
        assert!(!verify_partition(&k, &part, Scheme::A).unwrap());
        let missing = Partition { blocks: vec![vec![0]] };
        assert!(verify_partition(&k, &missing, Scheme::A).is_err());
    }

    #[test]
    fn decompose_examples() {
        assert!(decompose_s(&[3, 2], 3).is_some());
        assert!(decompose_s(&[1, 1], 3).is_none());
        let d = decompose_s(&[5, 3, 4, 2], 3).unwrap();
        assert!(is_valid_decomposition(&[5, 3, 4, 2], &d, 3));
        assert_eq!(d.s_double_prime, [2, 0, 2, 0]);
        assert_eq!(decompose_s(&[], 0), Some(Decomposition { s_prime: vec![], s_double_prime: vec![] }));
        assert!(decompose_s(&[], 1).is_none());
        // Odd length: the last slot of s' carries the colors.
        assert!(decompose_s(&[3, 2, 2], 2).is_some());
        assert!(decompose_s(&[3, 2, 1], 2).is_none());
    }

    #[test]
    fn worked_example_block_list() {
        // s = (5, 3, 4, 2), c = 3 on a triangle: s' = (3, 3, 2, 2), s'' = (2, 0, 2, 0).
        let k = complex(Family::A { s: vec![5, 3, 4, 2] }, Graph::complete(3));
        let d = decompose_s(&[5, 3, 4, 2], 3).unwrap();
        let part = partition_from_decomposition(&k, &d, &chromatic_number(k.graph()).1).unwrap();
        assert_eq!(
            blocks_text(&k, &part),
            [
                "x1^(1) x1^(2) x1^(3) x1^(4) y_1",
                "x2^(1) x2^(2) x2^(3) x2^(4) y_2",
                "x3^(1) x3^(2)",
                "x4^(1) x3^(3) y_3",
                "x5^(1) x4^(3)",
            ]
        );
        assert!(verify_partition_with_family(&k, &part, &DegreeMultisetFamily::default()).unwrap());
    }

    #[test]
    fn nested_blocks_without_graph() {
        let k = complex(Family::A { s: vec![3, 2, 1] }, Graph::default());
        assert_eq!(decompose_s(&[3, 2, 1], 0).unwrap().s_double_prime, [1, 0, 1]);
        let d = Decomposition { s_prime: vec![3, 2, 1], s_double_prime: vec![0, 0, 0] };
        let part = partition_from_decomposition(&k, &d, &chromatic_number(k.graph()).1).unwrap();
        assert_eq!(blocks_text(&k, &part), ["x1^(1) x1^(2) x1^(3)", "x2^(1) x2^(2)", "x3^(1)"]);
    }

    #[test]
    fn single_vertex_even_case() {
        let k = complex(Family::A { s: vec![2, 1] }, Graph::empty(1));
        let d = decompose_s(&[2, 1], 1).unwrap();
        let part = partition_from_decomposition(&k, &d, &chromatic_number(k.graph()).1).unwrap();
        assert!(verify_partition_with_family(&k, &part, &DegreeMultisetFamily::default()).unwrap());
    }

    #[test]
    fn multiset_examples() {
        let fam = DegreeMultisetFamily::default();
        assert!(multiset_decomposable(&[4, 6, 8, 8], &fam).unwrap().is_none());
        assert!(multiset_decomposable(&[4, 4, 6, 6, 6, 8, 8], &fam).unwrap().is_none());
        let yes = multiset_decomposable(&[4, 6, 8, 4, 8], &fam).unwrap().unwrap();
        assert_eq!(yes, [vec![4, 6, 8], vec![4, 8]]);
        assert!(multiset_decomposable(&[4, 5], &fam).is_err());
        assert_eq!(multiset_decomposable(&[], &fam).unwrap(), Some(vec![]));
    }

    #[test]
    fn family_text_round_trip() {
        let fam = DegreeMultisetFamily::default();
        assert_eq!(DegreeMultisetFamily::parse(&fam.to_text()).unwrap(), fam);
        assert!(DegreeMultisetFamily::parse("set 3").is_err());
        assert!(DegreeMultisetFamily::parse("chain 4").is_err());
    }

    #[test]
    fn bounds_examples() {
        assert_eq!(chromatic_bounds(&Graph::empty(3), 3).unwrap(), (1, 1));
        let (lo, hi) = chromatic_bounds(&Graph::complete(3), 3).unwrap();
        assert_eq!(hi, 3);
        assert!(lo <= 3);
        let (lo, hi) = chromatic_bounds(&Graph::cycle(5), 2).unwrap();
        assert_eq!(hi, 3);
        assert!(lo <= 3);
    }

    #[test]
    fn verdict_examples() {
        let fam = DegreeMultisetFamily::default();
        let v = check_realizable(&complex(Family::A { s: vec![1, 1] }, Graph::complete(3)), &fam).unwrap();
        assert_eq!(v.status, Status::CertifiedNotRealizable);
        assert!(v.witnesses.iter().any(|w| matches!(w, Witness::NonDecomposableFace { multiset, .. } if multiset == &[4, 6, 8, 8])));

        let v = check_realizable(&complex(Family::A { s: vec![2, 3] }, Graph::complete(3)), &fam).unwrap();
        assert_eq!(v.status, Status::CertifiedNotRealizable);
        assert!(v
            .witnesses
            .iter()
            .any(|w| matches!(w, Witness::NonDecomposableFace { multiset, .. } if multiset == &[4, 4, 6, 6, 6, 8, 8])));

        let v = check_realizable(&complex(Family::Bp { p: 3, r: vec![3] }, Graph::complete(3)), &fam).unwrap();
        assert_eq!(v.status, Status::CertifiedRealizable);
        assert_eq!(v.certificate.unwrap().method, "coloring");

        let v = check_realizable(&complex(Family::Bp { p: 3, r: vec![2] }, Graph::complete(3)), &fam).unwrap();
        assert_eq!(v.status, Status::CertifiedNotRealizable);
        assert_eq!(v.witnesses[0], Witness::SpanGap { p: 3, span_chromatic: 3, bound: 2 });
    }
}
