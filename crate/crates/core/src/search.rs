//! Exhaustive search for unstable actions: every `P^k(g)` in the open
//! unstable range becomes a vector of unknown coefficients, the axioms become
//! polynomial equations in them, and the solver decides the system.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complex::{add_scaled, monomial_in_ideal, vertex_ideal, AlgebraElement, Coefficient, Monomial, SrRing, Terms};
use crate::error::{contract, Error, Result};
use crate::fp;
use crate::solver::{linearizing_set, Solver, Sym};
use crate::steenrod::{
    adem_rhs, check_action, default_degree_bound, non_face_instances, relation_monomials, top_power, Cartan,
    GeneratorAction, RelationSet, SteenrodTable,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    /// Defaults to `2p^2 + 2p`.
    pub degree_bound: Option<u32>,
    pub relations: RelationSet,
    /// Refuse when `p^|B|` exceeds this; `None` disables the cap.
    pub cap: Option<u64>,
}

pub const DEFAULT_CAP: u64 = 100_000_000;

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { degree_bound: None, relations: RelationSet::Basic, cap: Some(DEFAULT_CAP) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub unknowns: usize,
    pub equations: usize,
    /// Size of the branch set `B`; the search visits at most `p^|B|` leaves.
    pub branch_variables: usize,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(SteenrodTable),
    ExhaustedNone,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub p: u32,
    pub relations: RelationSet,
    pub degree_bound: u32,
    pub stats: SearchStats,
    pub outcome: SearchOutcome,
}

impl SearchReport {
    pub fn is_found(&self) -> bool {
        matches!(self.outcome, SearchOutcome::Found(_))
    }

    pub fn table(&self) -> Option<&SteenrodTable> {
        match &self.outcome {
            SearchOutcome::Found(t) => Some(t),
            SearchOutcome::ExhaustedNone => None,
        }
    }

    /// The qualifier every negative answer carries.
    pub fn scope(&self) -> String {
        format!(
            "relative to relation set {} + unstability + Cartan, degree bound {}",
            self.relations, self.degree_bound
        )
    }

    pub fn to_text(&self) -> String {
        let head = match &self.outcome {
            SearchOutcome::Found(_) => "found".to_string(),
            SearchOutcome::ExhaustedNone => format!("exhausted ({})", self.scope()),
        };
        let mut out = format!(
            "status: {head}\nunknowns: {}\nequations: {}\nbranch variables: {}\nnodes: {}\n",
            self.stats.unknowns, self.stats.equations, self.stats.branch_variables, self.stats.nodes
        );
        if let SearchOutcome::Found(t) = &self.outcome {
            out.push_str("table:\n");
            out.push_str(&t.to_text());
        }
        out
    }
}

/// One unknown coefficient: the coefficient of `monomial` in `P^k(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Unknown {
    g: usize,
    k: u32,
    monomial: Monomial,
}

struct SymbolicTable {
    ring: Arc<SrRing>,
    values: BTreeMap<(usize, u32), Terms<Sym>>,
}

impl GeneratorAction<Sym> for SymbolicTable {
    fn value(&self, g: usize, k: u32) -> Result<Terms<Sym>> {
        let deg = self.ring.complex().degree(g);
        if 2 * k == deg {
            return Ok(top_power(&self.ring, g));
        }
        Ok(self.values.get(&(g, k)).cloned().unwrap_or_default())
    }
}

/// Candidate monomials for `P^k(g)`: the degree-matching basis, restricted to
/// `(y_i) + (y_j y_k)` for graph generators.
fn candidate_basis(ring: &SrRing, g: usize, k: u32) -> Vec<Monomial> {
    let kx = ring.complex();
    let degree = kx.degree(g) + 2 * k * (ring.prime() - 1);
    let basis = ring.basis(degree);
    match kx.vertex_of(g) {
        Some(v) => {
            let ideal = vertex_ideal(kx, v);
            basis.into_iter().filter(|m| monomial_in_ideal(m, &ideal)).collect()
        }
        None => basis,
    }
}

/// Unknowns ordered by `k`, then generator, then monomial.
fn unknowns(ring: &SrRing) -> Vec<Unknown> {
    let kx = ring.complex();
    let max_k = (0..kx.num_generators()).map(|g| kx.degree(g) / 2).max().unwrap_or(0);
    let mut out = Vec::new();
    for k in 1..max_k {
        for g in 0..kx.num_generators() {
            if 2 * k < kx.degree(g) {
                for monomial in candidate_basis(ring, g, k) {
                    out.push(Unknown { g, k, monomial });
                }
            }
        }
    }
    out
}

fn collect_equations(into: &mut Vec<Sym>, diff: Terms<Sym>) {
    into.extend(diff.into_values().filter(|c| !c.is_zero()));
}

/// Searches for a table satisfying unstability, the Cartan formula (built
/// in), ideal preservation, vanishing on minimal non-faces, and the chosen
/// relations, all up to the degree bound.
pub fn search_action(ring: &Arc<SrRing>, options: &SearchOptions) -> Result<SearchReport> {
    let p = ring.prime();
    if p == 2 || !fp::is_prime(p) {
        return Err(contract(format!("the action search needs an odd prime, got {p}")));
    }
    let kx = ring.complex();
    let bound = options.degree_bound.unwrap_or_else(|| default_degree_bound(p));
    let unknowns = unknowns(ring);
    let mut values: BTreeMap<(usize, u32), Terms<Sym>> = BTreeMap::new();
    for (i, u) in unknowns.iter().enumerate() {
        values.entry((u.g, u.k)).or_default().insert(u.monomial.clone(), Sym::var(i as u32));
    }
    let symbolic = SymbolicTable { ring: ring.clone(), values };
    let mut cartan = Cartan::new(ring, &symbolic);

    let mut equations = Vec::new();
    let min_degree = (0..kx.num_generators()).map(|g| kx.degree(g)).min().unwrap_or(0);
    for (a, b) in options.relations.pairs(p, bound, min_degree) {
        let rhs_ops = adem_rhs(a, b, p);
        for m in relation_monomials(ring, a, b, bound) {
            let mut x = Terms::new();
            x.insert(m, Sym::constant(1));
            let mut diff = cartan.composite(&x, &[(a, b, 1)])?;
            let rhs = cartan.composite(&x, &rhs_ops)?;
            add_scaled(&mut diff, &rhs, &Sym::constant(p - 1), p);
            collect_equations(&mut equations, diff);
        }
    }
    for (m, k) in non_face_instances(ring, bound) {
        collect_equations(&mut equations, cartan.monomial(&m, k)?);
    }
    drop(cartan);

    let equation_count = equations.len();
    let n = unknowns.len();
    let initial = linearizing_set(&equations, n);
    let mut nodes = 0;
    let (solution, branch_count) = match Solver::new(p, n, &initial).root(equations) {
        None => (None, 0),
        Some(root) => {
            // Root propagation usually eliminates most unknowns; the estimate
            // uses the branch set of what is left.
            let branch = linearizing_set(&root.equations, n);
            let branch_count = branch.iter().filter(|&&b| b).count();
            if let Some(cap) = options.cap {
                let within = (p as u64).checked_pow(branch_count as u32).is_some_and(|size| size <= cap);
                if !within {
                    return Err(Error::SearchSpaceTooLarge { base: p, exponent: branch_count, cap });
                }
            }
            let mut solver = Solver::new(p, n, &branch);
            let solution = solver.solve_from(root);
            nodes = solver.stats.nodes;
            (solution, branch_count)
        }
    };
    let stats = SearchStats { unknowns: n, equations: equation_count, branch_variables: branch_count, nodes };
    let outcome = match solution {
        None => SearchOutcome::ExhaustedNone,
        Some(values) => {
            let table = concrete_table(ring, &unknowns, &values)?;
            let report = check_action(&table, options.relations, bound)?;
            if !report.passes() {
                return Err(contract(format!("search produced a table failing its own checks:\n{}", report.to_text())));
            }
            SearchOutcome::Found(table)
        }
    };
    Ok(SearchReport { p, relations: options.relations, degree_bound: bound, stats, outcome })
}

fn concrete_table(ring: &Arc<SrRing>, unknowns: &[Unknown], values: &[u32]) -> Result<SteenrodTable> {
    let mut table = SteenrodTable::new(ring)?;
    let mut grouped: BTreeMap<(usize, u32), Vec<(Monomial, u32)>> = BTreeMap::new();
    for (u, &c) in unknowns.iter().zip(values) {
        grouped.entry((u.g, u.k)).or_default().push((u.monomial.clone(), c));
    }
    for ((g, k), terms) in grouped {
        table.set(g, k, AlgebraElement::from_terms(ring, terms))?;
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_complex, Family, JoinComplex};
    use crate::graph::Graph;

    fn poly(gens: &[(&str, u32)], p: u32) -> Arc<SrRing> {
        SrRing::new(JoinComplex::polynomial(gens).unwrap(), p).unwrap()
    }

    #[test]
    fn single_degree_eight_class_at_three_has_no_action() {
        let rep = search_action(&poly(&[("y", 8)], 3), &SearchOptions::default()).unwrap();
        assert_eq!(rep.outcome, SearchOutcome::ExhaustedNone);
        assert!(rep.to_text().starts_with("status: exhausted (relative to"));
    }

    #[test]
    fn degree_four_class_at_three_has_an_action() {
        let r = poly(&[("x", 4)], 3);
        let rep = search_action(&r, &SearchOptions::default()).unwrap();
        let t = rep.table().expect("HP^∞ carries an action");
        let v = t.get(0, 1).unwrap();
        assert!(v.to_text() == "1 * x^2" || v.to_text() == "2 * x^2", "{}", v);
    }

    #[test]
    fn cap_refuses_large_searches() {
        let r = poly(&[("x", 4), ("y1", 8), ("y2", 8)], 3);
        let opts = SearchOptions { cap: Some(3), ..SearchOptions::default() };
        assert!(matches!(search_action(&r, &opts), Err(Error::SearchSpaceTooLarge { base: 3, .. })));
    }

    #[test]
    fn even_prime_is_rejected() {
        assert!(search_action(&poly(&[("x", 4)], 2), &SearchOptions::default()).is_err());
    }

    #[test]
    fn edge_complex_searches_deterministically() {
        let ring = SrRing::new(build_complex(&Family::B { n: 2 }, &Graph::path(2)).unwrap(), 3).unwrap();
        let opts = SearchOptions { degree_bound: Some(16), ..SearchOptions::default() };
        let a = search_action(&ring, &opts).unwrap();
        let b = search_action(&ring, &opts).unwrap();
        assert_eq!(a, b);
    }
}
