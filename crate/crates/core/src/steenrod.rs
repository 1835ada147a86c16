//! Candidate actions of the reduced powers `P^k` on `SR(K, φ) ⊗ F_p`:
//! tables of generator values, Cartan extension, and the axiom checkers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{
    add_scaled, add_term, monomial_in_ideal, vertex_ideal, AlgebraElement, Coefficient, Family,
    Monomial, SrRing, Terms,
};
use crate::error::{contract, Error, Result};
use crate::fp;
use crate::graph::Graph;
use crate::span::{span_chromatic_number, span_membership, FpVector, SpanColoring};

/// Which relations between reduced powers are imposed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationSet {
    /// `P^1 P^p = P^{p+1}` only.
    #[default]
    Basic,
    /// Every Adem relation `P^a P^b` with `0 < a < pb` that fits the degree bound.
    Adem,
}

impl RelationSet {
    /// The `(a, b)` pairs to evaluate, given that the lowest positive degree
    /// is at least `min_degree` and values live up to `bound`.
    pub fn pairs(self, p: u32, bound: u32, min_degree: u32) -> Vec<(u32, u32)> {
        match self {
            RelationSet::Basic => vec![(1, p)],
            RelationSet::Adem => {
                let mut out = Vec::new();
                let step = 2 * (p - 1);
                for total in 2.. {
                    if min_degree + step * total > bound {
                        break;
                    }
                    for b in 1..total {
                        let a = total - b;
                        if a < p * b {
                            out.push((a, b));
                        }
                    }
                }
                out
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RelationSet::Basic => "basic",
            RelationSet::Adem => "adem",
        }
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationSet::Basic => f.write_str("{P^1 P^p = P^(p+1)}"),
            RelationSet::Adem => f.write_str("{all Adem relations P^a P^b, a < pb}"),
        }
    }
}

impl std::str::FromStr for RelationSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<RelationSet> {
        match s {
            "basic" | "default" => Ok(RelationSet::Basic),
            "adem" | "full" => Ok(RelationSet::Adem),
            other => Err(contract(format!("unknown relation set `{other}`"))),
        }
    }
}

/// Right-hand side of the Adem relation for `P^a P^b`, `a < pb`, as
/// `(first, second, coefficient)` meaning `c * P^first P^second`.
pub fn adem_rhs(a: u32, b: u32, p: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for j in 0..=a / p {
        let n = (p - 1) as u64 * (b - j) as u64 - 1;
        let c = fp::binomial(n, (a - p * j) as u64, p);
        let c = if (a + j) % 2 == 1 { fp::neg(c, p) } else { c };
        if c != 0 {
            out.push((a + b - j, j, c));
        }
    }
    out
}

/// The degree bound used when none is given: `2p^2 + 2p`.
pub fn default_degree_bound(p: u32) -> u32 {
    2 * p * p + 2 * p
}

/// Values of `P^k` on generators, for whatever coefficient type.
pub(crate) trait GeneratorAction<C: Coefficient> {
    /// `P^k(g)` for `k ≥ 1` and `2k ≤ deg g`.
    fn value(&self, g: usize, k: u32) -> Result<Terms<C>>;
}

/// Extends generator values to all elements by linearity and the Cartan
/// formula, memoizing `P^k(m)` per monomial.
pub(crate) struct Cartan<'a, C: Coefficient, A: GeneratorAction<C>> {
    ring: &'a SrRing,
    action: &'a A,
    memo: HashMap<(Monomial, u32), Terms<C>>,
}

impl<'a, C: Coefficient, A: GeneratorAction<C>> Cartan<'a, C, A> {
    pub fn new(ring: &'a SrRing, action: &'a A) -> Self {
        Cartan { ring, action, memo: HashMap::new() }
    }

    fn generator_power(&self, g: usize, k: u32) -> Result<Terms<C>> {
        let deg = self.ring.complex().degree(g);
        if k == 0 {
            let mut t = Terms::new();
            t.insert(Monomial::generator(self.ring.complex(), g), C::scalar(1, self.ring.prime()));
            Ok(t)
        } else if 2 * k > deg {
            Ok(Terms::new())
        } else {
            self.action.value(g, k)
        }
    }

    /// `P^k(m)`. Non-face monomials are allowed as input; products are
    /// reduced, so the result is the value of `P^k` on the free-ring lift.
    pub fn monomial(&mut self, m: &Monomial, k: u32) -> Result<Terms<C>> {
        let p = self.ring.prime();
        if k == 0 {
            let mut t = Terms::new();
            if self.ring.is_standard(m) {
                t.insert(m.clone(), C::scalar(1, p));
            }
            return Ok(t);
        }
        if 2 * k > m.degree() {
            return Ok(Terms::new());
        }
        let key = (m.clone(), k);
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let k_ring = self.ring.complex();
        let g = m.support()[0];
        let rest = m.without(g, k_ring).expect("g divides m");
        let mut out = Terms::new();
        for i in 0..=k.min(k_ring.degree(g) / 2) {
            let a = self.generator_power(g, i)?;
            if a.is_empty() {
                continue;
            }
            let b = self.monomial(&rest, k - i)?;
            if b.is_empty() {
                continue;
            }
            add_scaled(&mut out, &self.ring.mul_terms(&a, &b), &C::scalar(1, p), p);
        }
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    pub fn apply(&mut self, a: &Terms<C>, k: u32) -> Result<Terms<C>> {
        let p = self.ring.prime();
        let mut out = Terms::new();
        for (m, c) in a {
            let v = self.monomial(m, k)?;
            add_scaled(&mut out, &v, c, p);
        }
        Ok(out)
    }

    /// `Σ c * P^first P^second (x)` over the given terms.
    pub fn composite(&mut self, x: &Terms<C>, ops: &[(u32, u32, u32)]) -> Result<Terms<C>> {
        let p = self.ring.prime();
        let mut out = Terms::new();
        for &(first, second, c) in ops {
            let inner = self.apply(x, second)?;
            let outer = self.apply(&inner, first)?;
            add_scaled(&mut out, &outer, &C::scalar(c, p), p);
        }
        Ok(out)
    }
}

/// `g^p` as terms.
pub(crate) fn top_power<C: Coefficient>(ring: &SrRing, g: usize) -> Terms<C> {
    let k = ring.complex();
    let m = Monomial::from_powers(k, &[(g, ring.prime() as u8)]);
    let mut t = Terms::new();
    add_term(&mut t, m, &C::scalar(1, ring.prime()), ring.prime());
    t
}

/// Values `P^k(g)` for every generator `g` and `1 ≤ k ≤ deg(g)/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteenrodTable {
    ring: Arc<SrRing>,
    entries: BTreeMap<(usize, u32), AlgebraElement>,
}

impl SteenrodTable {
    /// A table with the unstable top entries `P^{deg/2}(g) = g^p` filled in
    /// and every other entry zero.
    pub fn new(ring: &Arc<SrRing>) -> Result<SteenrodTable> {
        if ring.prime() == 2 {
            return Err(contract("reduced powers are tabulated for odd primes only"));
        }
        let k = ring.complex();
        let mut entries = BTreeMap::new();
        for g in 0..k.num_generators() {
            let deg = k.degree(g);
            for j in 1..=deg / 2 {
                let value = if 2 * j == deg {
                    AlgebraElement::from_reduced(ring, top_power(ring, g))
                } else {
                    AlgebraElement::zero(ring)
                };
                entries.insert((g, j), value);
            }
        }
        Ok(SteenrodTable { ring: ring.clone(), entries })
    }

    pub fn ring(&self) -> &Arc<SrRing> {
        &self.ring
    }

    pub fn prime(&self) -> u32 {
        self.ring.prime()
    }

    /// Degree of `P^k(g)`.
    pub fn target_degree(&self, g: usize, k: u32) -> u32 {
        self.ring.complex().degree(g) + 2 * k * (self.prime() - 1)
    }

    pub fn set(&mut self, g: usize, k: u32, value: AlgebraElement) -> Result<()> {
        let kx = self.ring.complex();
        if g >= kx.num_generators() {
            return Err(contract(format!("no generator with index {g}")));
        }
        if k == 0 || 2 * k > kx.degree(g) {
            return Err(contract(format!(
                "P^{k}({}) is outside the unstable range 1..={}",
                kx.label(g),
                kx.degree(g) / 2
            )));
        }
        if !Arc::ptr_eq(value.ring(), &self.ring) && **value.ring() != *self.ring {
            return Err(contract("table value from a different algebra"));
        }
        let want = self.target_degree(g, k);
        if !value.is_zero() && value.degree() != Some(want) {
            return Err(contract(format!(
                "P^{k}({}) must be homogeneous of degree {want}",
                kx.label(g)
            )));
        }
        self.entries.insert((g, k), value);
        Ok(())
    }

    pub fn set_by_label(&mut self, label: &str, k: u32, value: AlgebraElement) -> Result<()> {
        let g = self.ring.complex().generator(label)?;
        self.set(g, k, value)
    }

    pub fn get(&self, g: usize, k: u32) -> Option<&AlgebraElement> {
        self.entries.get(&(g, k))
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, u32), &AlgebraElement)> {
        self.entries.iter().map(|(&key, v)| (key, v))
    }

    /// Drops an entry, leaving the table incomplete there.
    pub fn remove(&mut self, g: usize, k: u32) -> Option<AlgebraElement> {
        self.entries.remove(&(g, k))
    }

    /// One line per entry: `P^<k>(<gen>) = <element>`.
    pub fn to_text(&self) -> String {
        let kx = self.ring.complex();
        let mut out = String::new();
        for (&(g, k), v) in &self.entries {
            out.push_str(&format!("P^{k}({}) = {}\n", kx.label(g), v.to_text()));
        }
        out
    }

    /// Parses table lines on top of [`SteenrodTable::new`]; entries not
    /// mentioned keep their defaults.
    pub fn parse(ring: &Arc<SrRing>, text: &str) -> Result<SteenrodTable> {
        let mut table = SteenrodTable::new(ring)?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |message: String| Error::Parse { line: lineno + 1, message };
            let (lhs, rhs) = line.split_once('=').ok_or_else(|| at("expected `P^k(gen) = value`".into()))?;
            let lhs = lhs.trim();
            let inner = lhs
                .strip_prefix("P^")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| at(format!("bad operation `{lhs}`")))?;
            let (k, label) = inner.split_once('(').ok_or_else(|| at(format!("bad operation `{lhs}`")))?;
            let k: u32 = k.parse().map_err(|_| at(format!("bad exponent in `{lhs}`")))?;
            let value = AlgebraElement::parse(ring, rhs).map_err(|e| at(e.to_string()))?;
            table.set_by_label(label, k, value).map_err(|e| at(e.to_string()))?;
        }
        Ok(table)
    }
}

impl GeneratorAction<u32> for SteenrodTable {
    fn value(&self, g: usize, k: u32) -> Result<Terms<u32>> {
        self.entries
            .get(&(g, k))
            .map(|v| v.terms().clone())
            .ok_or_else(|| Error::IncompleteTable {
                generator: self.ring.complex().label(g).to_string(),
                k,
            })
    }
}

/// `P^k(a)` by linearity and the Cartan formula.
pub fn cartan_extend(t: &SteenrodTable, a: &AlgebraElement, k: u32) -> Result<AlgebraElement> {
    if !a.is_homogeneous() {
        return Err(contract("cartan_extend needs a homogeneous element"));
    }
    let mut cartan = Cartan::new(&t.ring, t);
    let terms = cartan.apply(a.terms(), k)?;
    Ok(AlgebraElement::from_reduced(&t.ring, terms))
}

/// `Σ_k P^k(a)` over `k ≤ max_k`.
pub fn total_operation(t: &SteenrodTable, a: &AlgebraElement, max_k: u32) -> Result<AlgebraElement> {
    let mut cartan = Cartan::new(&t.ring, t);
    let mut out = Terms::new();
    for k in 0..=max_k {
        let v = cartan.apply(a.terms(), k)?;
        add_scaled(&mut out, &v, &1, t.prime());
    }
    Ok(AlgebraElement::from_reduced(&t.ring, out))
}

/// Human-readable form of a relation `P^a P^b = Σ c P^x P^y`.
pub fn relation_name(a: u32, b: u32, p: u32) -> String {
    let rhs: Vec<String> = adem_rhs(a, b, p)
        .into_iter()
        .map(|(x, y, c)| {
            let ops = if y == 0 { format!("P^{x}") } else { format!("P^{x} P^{y}") };
            if c == 1 {
                ops
            } else {
                format!("{c} {ops}")
            }
        })
        .collect();
    let rhs = if rhs.is_empty() { "0".to_string() } else { rhs.join(" + ") };
    format!("P^{a} P^{b} = {rhs}")
}

/// The monomials on which a relation `(a, b)` is evaluated: a basis of every
/// positive degree `d` with `d + 2(a+b)(p-1) ≤ bound`.
pub(crate) fn relation_monomials(ring: &SrRing, a: u32, b: u32, bound: u32) -> Vec<Monomial> {
    let shift = 2 * (a + b) * (ring.prime() - 1);
    if shift > bound {
        return Vec::new();
    }
    (1..=bound - shift).flat_map(|d| ring.basis(d)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationViolation {
    pub relation: String,
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub relations: RelationSet,
    pub degree_bound: u32,
    pub instances: usize,
    pub violations: Vec<RelationViolation>,
}

/// Evaluates both sides of every relation instance on a basis of each graded
/// piece up to `degree_bound`.
pub fn check_relations(t: &SteenrodTable, relations: RelationSet, degree_bound: u32) -> Result<RelationReport> {
    let ring = &t.ring;
    let p = ring.prime();
    let kx = ring.complex();
    let min_degree = (0..kx.num_generators()).map(|g| kx.degree(g)).min().unwrap_or(0);
    let mut cartan = Cartan::new(ring, t);
    let mut instances = 0;
    let mut violations = Vec::new();
    for (a, b) in relations.pairs(p, degree_bound, min_degree) {
        let rhs_ops = adem_rhs(a, b, p);
        for m in relation_monomials(ring, a, b, degree_bound) {
            instances += 1;
            let mut x = Terms::new();
            x.insert(m.clone(), 1u32);
            let lhs = cartan.composite(&x, &[(a, b, 1)])?;
            let rhs = cartan.composite(&x, &rhs_ops)?;
            if lhs != rhs {
                violations.push(RelationViolation {
                    relation: relation_name(a, b, p),
                    monomial: m.display(kx),
                    lhs: AlgebraElement::from_reduced(ring, lhs).to_text(),
                    rhs: AlgebraElement::from_reduced(ring, rhs).to_text(),
                });
            }
        }
    }
    Ok(RelationReport { relations, degree_bound, instances, violations })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryViolation {
    pub generator: String,
    pub k: u32,
    pub value: String,
}

/// Every stored `P^a(y_i)` must lie in `(y_i) + (y_j y_k : j < k)`.
pub fn check_ideal_preservation(t: &SteenrodTable) -> Vec<EntryViolation> {
    let kx = t.ring.complex();
    let mut out = Vec::new();
    for v in 0..kx.graph().vertex_count() {
        let y = kx.vertex_generator(v);
        let ideal = vertex_ideal(kx, v);
        for (&(g, k), value) in t.entries.range((y, 0)..=(y, u32::MAX)) {
            debug_assert_eq!(g, y);
            if !value.terms().keys().all(|m| monomial_in_ideal(m, &ideal)) {
                out.push(EntryViolation { generator: kx.label(y).to_string(), k, value: value.to_text() });
            }
        }
    }
    out
}

/// Top entries must equal `g^p`.
pub fn check_unstability(t: &SteenrodTable) -> Vec<EntryViolation> {
    let kx = t.ring.complex();
    let mut out = Vec::new();
    for g in 0..kx.num_generators() {
        let deg = kx.degree(g);
        if deg % 2 != 0 {
            continue;
        }
        let k = deg / 2;
        let want = top_power::<u32>(&t.ring, g);
        match t.get(g, k) {
            Some(v) if *v.terms() == want => {}
            other => out.push(EntryViolation {
                generator: kx.label(g).to_string(),
                k,
                value: other.map(AlgebraElement::to_text).unwrap_or_else(|| "missing".into()),
            }),
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonFaceViolation {
    pub non_face: String,
    pub k: u32,
    pub value: String,
}

/// `(non-face monomial, k)` pairs whose image must vanish for the action to
/// pass to the quotient, within the degree bound.
pub(crate) fn non_face_instances(ring: &SrRing, degree_bound: u32) -> Vec<(Monomial, u32)> {
    let kx = ring.complex();
    let step = 2 * (ring.prime() - 1);
    let mut out = Vec::new();
    for face in kx.minimal_non_faces() {
        let m = Monomial::from_powers(kx, &face.iter().map(|&g| (g, 1u8)).collect::<Vec<_>>());
        let mut k = 1;
        while m.degree() + step * k <= degree_bound && 2 * k <= m.degree() {
            out.push((m.clone(), k));
            k += 1;
        }
    }
    out
}

/// `P^k` of every minimal non-face must vanish in the quotient.
pub fn check_well_defined(t: &SteenrodTable, degree_bound: u32) -> Result<Vec<NonFaceViolation>> {
    let kx = t.ring.complex();
    let mut cartan = Cartan::new(&t.ring, t);
    let mut out = Vec::new();
    for (m, k) in non_face_instances(&t.ring, degree_bound) {
        let v = cartan.monomial(&m, k)?;
        if !v.is_empty() {
            out.push(NonFaceViolation {
                non_face: m.display(kx),
                k,
                value: AlgebraElement::from_reduced(&t.ring, v).to_text(),
            });
        }
    }
    Ok(out)
}

/// All checks at once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionReport {
    pub relations: RelationReport,
    pub ideal: Vec<EntryViolation>,
    pub unstable: Vec<EntryViolation>,
    pub well_defined: Vec<NonFaceViolation>,
}

impl ActionReport {
    pub fn passes(&self) -> bool {
        self.relations.violations.is_empty()
            && self.ideal.is_empty()
            && self.unstable.is_empty()
            && self.well_defined.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "status: {}\nrelations: {} up to degree {} ({} instances)\n",
            if self.passes() { "pass" } else { "fail" },
            self.relations.relations,
            self.relations.degree_bound,
            self.relations.instances
        );
        for v in &self.relations.violations {
            out.push_str(&format!("violation relation {} on {}: lhs = {}, rhs = {}\n", v.relation, v.monomial, v.lhs, v.rhs));
        }
        for v in &self.unstable {
            out.push_str(&format!("violation unstable P^{}({}) = {}\n", v.k, v.generator, v.value));
        }
        for v in &self.ideal {
            out.push_str(&format!("violation ideal P^{}({}) = {}\n", v.k, v.generator, v.value));
        }
        for v in &self.well_defined {
            out.push_str(&format!("violation non-face P^{}({}) = {}\n", v.k, v.non_face, v.value));
        }
        out
    }
}

pub fn check_action(t: &SteenrodTable, relations: RelationSet, degree_bound: u32) -> Result<ActionReport> {
    Ok(ActionReport {
        relations: check_relations(t, relations, degree_bound)?,
        ideal: check_ideal_preservation(t),
        unstable: check_unstability(t),
        well_defined: check_well_defined(t, degree_bound)?,
    })
}

/// `P^p(y_i) = y_i^{p-1} g(y_i) + h(y_i) + Σ μ_{j,k} y_j y_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PpDecomposition {
    pub vertex: usize,
    /// Coefficients along the degree-4 generators, in generator order.
    pub leading: FpVector,
    pub middle: AlgebraElement,
    /// Keyed by graph vertex pairs `(j, k)`, `j < k`.
    pub mixed: BTreeMap<(usize, usize), AlgebraElement>,
}

impl PpDecomposition {
    pub fn recombine(&self, ring: &Arc<SrRing>) -> AlgebraElement {
        let kx = ring.complex();
        let p = ring.prime();
        let y = kx.vertex_generator(self.vertex);
        let mut terms = self.middle.terms().clone();
        for (i, &g) in degree_four_generators(ring).iter().enumerate() {
            let m = Monomial::from_powers(kx, &[(y, (p - 1) as u8), (g, 1)]);
            add_term(&mut terms, m, &self.leading.coords()[i], p);
        }
        for (&(a, b), mu) in &self.mixed {
            let yy = Monomial::from_powers(kx, &[(kx.vertex_generator(a), 1), (kx.vertex_generator(b), 1)]);
            let prod = ring.mul_by_monomial(mu.terms(), &yy);
            add_scaled(&mut terms, &prod, &1, p);
        }
        AlgebraElement::from_reduced(ring, terms)
    }
}

pub fn degree_four_generators(ring: &SrRing) -> Vec<usize> {
    let kx = ring.complex();
    (0..kx.num_generators()).filter(|&g| kx.degree(g) == 4 && kx.vertex_of(g).is_none()).collect()
}

/// Splits `P^p(y_v)` into its leading, middle, and mixed parts.
pub fn decompose_pp(t: &SteenrodTable, v: usize) -> Result<PpDecomposition> {
    let ring = &t.ring;
    let kx = ring.complex();
    let p = ring.prime();
    if v >= kx.graph().vertex_count() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let y = kx.vertex_generator(v);
    let value = match t.get(y, p) {
        Some(value) => value.clone(),
        None if 2 * p > kx.degree(y) => AlgebraElement::zero(ring),
        None => return Err(Error::IncompleteTable { generator: kx.label(y).to_string(), k: p }),
    };
    let ideal = vertex_ideal(kx, v);
    let quartic = degree_four_generators(ring);
    let mut leading = vec![0u32; quartic.len()];
    let mut middle = Terms::new();
    let mut mixed: BTreeMap<(usize, usize), Terms<u32>> = BTreeMap::new();
    for (m, &c) in value.terms() {
        if !monomial_in_ideal(m, &ideal) {
            return Err(contract(format!(
                "P^{p}({}) has the term {} outside (y_i) + (y_j y_k)",
                kx.label(y),
                m.display(kx)
            )));
        }
        if m.exponent(y) as u32 == p - 1 {
            let rest = Monomial::from_powers(kx, &[(y, (p - 1) as u8)]).quotient_of(m);
            if let Some(i) = quartic.iter().position(|&g| rest == Monomial::generator(kx, g)) {
                leading[i] = fp::add(leading[i], c, p);
                continue;
            }
        }
        if m.exponent(y) > 0 {
            add_term(&mut middle, m.clone(), &c, p);
            continue;
        }
        let ys: Vec<usize> = (0..kx.graph().vertex_count())
            .filter(|&w| m.exponent(kx.vertex_generator(w)) > 0)
            .collect();
        let (a, b) = (ys[0], ys[1]);
        let yy = Monomial::from_powers(kx, &[(kx.vertex_generator(a), 1), (kx.vertex_generator(b), 1)]);
        add_term(mixed.entry((a, b)).or_default(), yy.quotient_of(m), &c, p);
    }
    Ok(PpDecomposition {
        vertex: v,
        leading: FpVector::new(p, leading),
        middle: AlgebraElement::from_reduced(ring, middle),
        mixed: mixed
            .into_iter()
            .map(|(key, terms)| (key, AlgebraElement::from_reduced(ring, terms)))
            .collect(),
    })
}

/// `y_j ↦ g(y_j)` over the degree-4 generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GFunction {
    pub labels: Vec<String>,
    pub values: Vec<FpVector>,
}

impl GFunction {
    /// The same assignment read as a candidate span coloring.
    pub fn as_span_coloring(&self) -> Result<SpanColoring> {
        let p = self.values.first().map(FpVector::prime).unwrap_or(3);
        let dim = self.values.first().map(FpVector::dim).unwrap_or(0);
        SpanColoring::new(p, dim, self.values.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CokernelEntry {
    pub vertex: String,
    pub value: FpVector,
    /// Whether `g(y_i)` lies outside the span of its neighbors' values.
    pub nonzero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CokernelReport {
    pub entries: Vec<CokernelEntry>,
}

impl CokernelReport {
    pub fn all_nonzero(&self) -> bool {
        self.entries.iter().all(|e| e.nonzero)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| !e.nonzero).map(|e| e.vertex.as_str()).collect()
    }
}

/// Tests the cokernel condition vertex by vertex for a given g-function.
pub fn cokernel_report(graph: &Graph, g: &GFunction) -> Result<CokernelReport> {
    let mut entries = Vec::new();
    for v in 0..graph.vertex_count() {
        let around: Vec<FpVector> = graph.neighbors(v).iter().map(|&u| g.values[u].clone()).collect();
        let inside = span_membership(&around, &g.values[v])?;
        entries.push(CokernelEntry { vertex: graph.label(v).to_string(), value: g.values[v].clone(), nonzero: !inside });
    }
    Ok(CokernelReport { entries })
}

/// Builds the g-function from `P^p(y_i)` for every vertex and checks that each
/// `g(y_i)` avoids the span of its neighbors' values.
pub fn coloring_from_action(t: &SteenrodTable) -> Result<(GFunction, CokernelReport)> {
    let kx = t.ring.complex();
    let graph = kx.graph();
    if let Some(v) = (0..graph.vertex_count()).find(|&v| graph.degree(v) < 2) {
        return Err(Error::Precondition(format!(
            "vertex {} has degree {}; apply the 2-core first",
            graph.label(v),
            graph.degree(v)
        )));
    }
    let mut values = Vec::new();
    for v in 0..graph.vertex_count() {
        values.push(decompose_pp(t, v)?.leading);
    }
    let g = GFunction { labels: graph.labels().to_vec(), values };
    let report = cokernel_report(graph, &g)?;
    Ok((g, report))
}

/// The bound `b` of the necessary condition `s_pχ(Γ) ≤ b`, with its prime.
pub fn necessary_bound(family: &Family, p: u32) -> Result<u32> {
    if let Some(q) = family.prime() {
        if q != p {
            return Err(contract(format!("family {} lives at p = {q}, not {p}", family.tag())));
        }
    }
    match family {
        Family::B { n } => Ok(*n as u32),
        Family::Bp { r, .. } => Ok(r[0] as u32),
        Family::Ap { s, .. } => Ok(s[0] as u32),
        Family::A { s } if family.prime().is_some() => Ok(s[0] as u32),
        Family::A { s } => Err(Error::Precondition(format!(
            "A(s, Γ) with |s| = {} has no attached odd prime; the span bound needs |s| + 1 prime",
            s.len()
        ))),
        Family::Polynomial { .. } => Err(Error::Precondition("polynomial algebras carry no span bound".into())),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NecessaryReport {
    pub p: u32,
    pub bound: u32,
    pub span_chromatic: u32,
    pub witness: SpanColoring,
    /// `s_pχ(Γ) ≤ bound`. Passing is inconclusive; failing certifies that no
    /// unstable action exists.
    pub passes: bool,
}

impl NecessaryReport {
    pub fn to_text(&self, graph: &Graph) -> String {
        let status = if self.passes { "pass (inconclusive)" } else { "fail" };
        let cmp = if self.passes { "<=" } else { ">" };
        format!(
            "status: {status}\ns_{}χ={} {cmp} bound={}\nwitness:\n{}",
            self.p,
            self.span_chromatic,
            self.bound,
            self.witness.to_text(graph)
        )
    }
}

pub fn necessary_condition(family: &Family, graph: &Graph, p: u32) -> Result<NecessaryReport> {
    let bound = necessary_bound(family, p)?;
    let (s, witness) = span_chromatic_number(graph, p)?;
    Ok(NecessaryReport { p, bound, span_chromatic: s as u32, witness, passes: s as u32 <= bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, JoinComplex};

    fn poly_ring(gens: &[(&str, u32)], p: u32) -> Arc<SrRing> {
        SrRing::new(JoinComplex::polynomial(gens).unwrap(), p).unwrap()
    }

    fn el(r: &Arc<SrRing>, s: &str) -> AlgebraElement {
        AlgebraElement::parse(r, s).unwrap()
    }

    #[test]
    fn adem_coefficients() {
        assert_eq!(adem_rhs(1, 3, 3), [(4, 0, 1)]);
        assert_eq!(adem_rhs(1, 5, 5), [(6, 0, 1)]);
        // P^1 P^1 = 2 P^2 at every odd prime.
        assert_eq!(adem_rhs(1, 1, 3), [(2, 0, 2)]);
        assert_eq!(adem_rhs(1, 1, 5), [(2, 0, 2)]);
        assert_eq!(relation_name(1, 3, 3), "P^1 P^3 = P^4");
    }

    #[test]
    fn cartan_examples() {
        let r = poly_ring(&[("x", 4), ("y", 8)], 3);
        let mut t = SteenrodTable::new(&r).unwrap();
        t.set_by_label("x", 1, el(&r, "y")).unwrap();
        let x = el(&r, "x");
        assert_eq!(cartan_extend(&t, &x, 0).unwrap(), x);
        assert_eq!(cartan_extend(&t, &x, 2).unwrap(), el(&r, "x^3"));
        assert_eq!(cartan_extend(&t, &el(&r, "x^2"), 1).unwrap(), el(&r, "2 * x y"));
        assert!(cartan_extend(&t, &x, 3).unwrap().is_zero());
    }

    #[test]
    fn incomplete_table_names_the_entry() {
        let r = poly_ring(&[("x", 4), ("y", 8)], 3);
        let mut t = SteenrodTable::new(&r).unwrap();
        t.remove(1, 2);
        let err = cartan_extend(&t, &el(&r, "y"), 2).unwrap_err();
        assert_eq!(err, Error::IncompleteTable { generator: "y".into(), k: 2 });
    }

    #[test]
    fn table_rejects_wrong_degrees() {
        let r = poly_ring(&[("x", 4), ("y", 8)], 3);
        let mut t = SteenrodTable::new(&r).unwrap();
        assert!(t.set_by_label("x", 1, el(&r, "x")).is_err());
        assert!(t.set_by_label("x", 3, el(&r, "0")).is_err());
    }

    #[test]
    fn relation_check_examples() {
        // Zero P^1 on a degree-4 class is consistent on the generator itself
        // but not on x^2, where P^4(x^2) = x^6.
        let r = poly_ring(&[("x", 4)], 3);
        let t = SteenrodTable::new(&r).unwrap();
        assert!(check_relations(&t, RelationSet::Basic, 20).unwrap().violations.is_empty());
        let rep = check_relations(&t, RelationSet::Basic, 24).unwrap();
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].monomial, "x^2");
        let passing: Vec<u32> = (0..3)
            .filter(|&c| {
                let mut t = t.clone();
                t.set_by_label("x", 1, AlgebraElement::parse(&r, &format!("{c} * x^2")).unwrap()).unwrap();
                check_relations(&t, RelationSet::Basic, 24).unwrap().violations.is_empty()
            })
            .collect();
        // P^1 P^3 (x^2) = P^1(2c x^5) = c^2 x^6, so c = ±1.
        assert_eq!(passing, [1, 2]);

        let r = poly_ring(&[("y", 8)], 3);
        let t = SteenrodTable::new(&r).unwrap();
        let rep = check_relations(&t, RelationSet::Basic, 24).unwrap();
        assert_eq!(rep.violations.len(), 1);
        let v = &rep.violations[0];
        assert_eq!((v.monomial.as_str(), v.lhs.as_str(), v.rhs.as_str()), ("y", "0", "1 * y^3"));
    }

    #[test]
    fn ideal_preservation_examples() {
        let ring = SrRing::new(build_complex(&Family::B { n: 1 }, &Graph::complete(3)).unwrap(), 3).unwrap();
        let t = SteenrodTable::new(&ring).unwrap();
        assert!(check_ideal_preservation(&t).is_empty());
        let mut good = t.clone();
        good.set_by_label("y_1", 1, el(&ring, "x1^(1) y_1")).unwrap();
        assert!(check_ideal_preservation(&good).is_empty());
        let mut bad = t.clone();
        bad.set_by_label("y_1", 1, el(&ring, "x1^(1)^3")).unwrap();
        let v = check_ideal_preservation(&bad);
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].generator.as_str(), v[0].k), ("y_1", 1));
    }

    #[test]
    fn unstability_flags_a_wrong_top() {
        let r = poly_ring(&[("x", 4)], 3);
        let mut t = SteenrodTable::new(&r).unwrap();
        assert!(check_unstability(&t).is_empty());
        t.set_by_label("x", 2, el(&r, "2 * x^3")).unwrap();
        assert_eq!(check_unstability(&t).len(), 1);
    }

    #[test]
    fn table_text_round_trip() {
        let r = poly_ring(&[("x", 4), ("y", 8)], 3);
        let mut t = SteenrodTable::new(&r).unwrap();
        t.set_by_label("x", 1, el(&r, "2 * x^2 + y")).unwrap();
        t.set_by_label("y", 1, el(&r, "x y")).unwrap();
        let text = t.to_text();
        assert!(text.contains("P^1(x) = 2 * x^2 + 1 * y\n"), "{text}");
        assert_eq!(SteenrodTable::parse(&r, &text).unwrap(), t);
        assert!(SteenrodTable::parse(&r, "P^1(z) = 0").is_err());
    }

    fn b_ring(n: usize, graph: Graph) -> Arc<SrRing> {
        SrRing::new(build_complex(&Family::B { n }, &graph).unwrap(), 3).unwrap()
    }

    #[test]
    fn decompose_examples() {
        let ring = b_ring(2, Graph::complete(3));
        let t = SteenrodTable::new(&ring).unwrap();
        let d = decompose_pp(&t, 0).unwrap();
        assert!(d.leading.is_zero() && d.middle.is_zero() && d.mixed.is_empty());

        let mut t1 = t.clone();
        t1.set_by_label("y_1", 3, el(&ring, "y_1^2 x1^(1)")).unwrap();
        let d = decompose_pp(&t1, 0).unwrap();
        assert_eq!(d.leading.coords(), [1, 0]);
        assert!(d.middle.is_zero() && d.mixed.is_empty());

        let mut t2 = t.clone();
        let v = el(&ring, "y_1 x1^(1)^3 + y_2 y_3 x2^(1)");
        t2.set_by_label("y_1", 3, v.clone()).unwrap();
        let d = decompose_pp(&t2, 0).unwrap();
        assert!(d.leading.is_zero());
        assert_eq!(d.middle, el(&ring, "y_1 x1^(1)^3"));
        assert_eq!(d.mixed.len(), 1);
        assert_eq!(d.mixed[&(1, 2)], el(&ring, "x2^(1)"));
        assert_eq!(d.recombine(&ring), v);

        let mut bad = t.clone();
        bad.set_by_label("y_1", 3, el(&ring, "x1^(1)^5")).unwrap();
        assert!(matches!(decompose_pp(&bad, 0), Err(Error::Contract(_))));
    }

    #[test]
    fn cokernel_examples() {
        let p = 3;
        let k3 = Graph::complete(3);
        let g = GFunction { labels: k3.labels().to_vec(), values: (0..3).map(|i| FpVector::unit(p, 3, i)).collect() };
        assert!(cokernel_report(&k3, &g).unwrap().all_nonzero());

        let c4 = Graph::cycle(4);
        let g = GFunction { labels: c4.labels().to_vec(), values: vec![FpVector::unit(p, 2, 0); 4] };
        assert_eq!(cokernel_report(&c4, &g).unwrap().failures().len(), 4);

        // C5 with g(y_i) = e_{i mod 2}: vertices 1 and 5 share a value and are adjacent.
        let c5 = Graph::cycle(5);
        let values = (0..5).map(|i| FpVector::unit(p, 2, i % 2)).collect();
        let rep = cokernel_report(&c5, &GFunction { labels: c5.labels().to_vec(), values }).unwrap();
        assert_eq!(rep.failures(), ["1", "5"]);
    }

    #[test]
    fn coloring_from_action_needs_min_degree_two() {
        let ring = b_ring(1, Graph::path(3));
        let t = SteenrodTable::new(&ring).unwrap();
        assert!(matches!(coloring_from_action(&t), Err(Error::Precondition(_))));
    }

    #[test]
    fn necessary_condition_examples() {
        let rep = necessary_condition(&Family::B { n: 3 }, &Graph::complete(3), 3).unwrap();
        assert!(rep.passes);
        let rep = necessary_condition(&Family::B { n: 1 }, &Graph::path(2), 3).unwrap();
        assert!(!rep.passes);
        assert_eq!((rep.span_chromatic, rep.bound), (2, 1));
        let rep = necessary_condition(&Family::Ap { p: 5, s: vec![1, 1, 1, 1] }, &Graph::empty(3), 5).unwrap();
        assert!(rep.passes);
        assert!(necessary_condition(&Family::B { n: 1 }, &Graph::path(2), 5).is_err());
        assert!(necessary_condition(&Family::A { s: vec![1, 1, 1] }, &Graph::path(2), 3).is_err());
    }
}
