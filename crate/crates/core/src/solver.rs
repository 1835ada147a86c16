//! Polynomial systems over `F_p` in finitely many unknowns that range over
//! `F_p`, so `c^p = c` for every unknown.
//!
//! The solver branches only over a static "linearizing" set `B`: once every
//! variable of `B` is fixed, each remaining term has at most one free variable
//! of degree one and the system is linear. Between branches it propagates
//! linear equations (row reduction plus substitution) and univariate
//! equations (root filtering), which keeps the explored tree far below the
//! `p^|B|` worst case.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::complex::Coefficient;
use crate::fp;

/// A monomial in unknowns: `(variable, exponent)` pairs sorted by variable,
/// exponents in `1..p`.
pub type VarMonomial = Box<[(u32, u8)]>;

/// A polynomial in the unknowns with coefficients in `F_p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Sym {
    terms: BTreeMap<VarMonomial, u32>,
}

fn reduce_exponent(e: u32, p: u32) -> u8 {
    // x^p = x for x in F_p, so exponents fold into 1..p-1.
    let e = if e >= p { (e - 1) % (p - 1) + 1 } else { e };
    e as u8
}

fn mul_var_monomials(a: &[(u32, u8)], b: &[(u32, u8)], p: u32) -> VarMonomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, reduce_exponent(a[i].1 as u32 + b[j].1 as u32, p)));
            i += 1;
            j += 1;
        }
    }
    out.into_boxed_slice()
}

impl Sym {
    pub fn constant(c: u32) -> Sym {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(Box::from([]), c);
        }
        Sym { terms }
    }

    pub fn var(v: u32) -> Sym {
        let mut terms = BTreeMap::new();
        terms.insert(Box::from([(v, 1u8)]), 1);
        Sym { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&VarMonomial, &u32)> {
        self.terms.iter()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    pub fn constant_term(&self) -> u32 {
        self.terms.get(&[][..]).copied().unwrap_or(0)
    }

    /// Total degree; 0 for constants and the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&(_, e)| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|m| m.iter().map(|&(v, _)| v)).collect()
    }

    fn add_monomial(&mut self, m: VarMonomial, c: u32, p: u32) {
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = fp::add(*slot.get(), c, p);
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// Scales so the leading coefficient is 1.
    fn normalized(&self, p: u32) -> Sym {
        match self.terms.values().next() {
            Some(&lead) if lead != 1 => self.scale(fp::inv(lead, p), p),
            _ => self.clone(),
        }
    }

    pub fn evaluate(&self, values: &[u32], p: u32) -> u32 {
        let mut acc = 0;
        for (m, &c) in &self.terms {
            let mut t = c;
            for &(v, e) in m.iter() {
                t = fp::mul(t, fp::pow(values[v as usize], e as u64, p), p);
            }
            acc = fp::add(acc, t, p);
        }
        acc
    }

    /// Substitutes each mapped variable by its polynomial, all at once.
    pub fn substitute(&self, map: &BTreeMap<u32, Sym>, p: u32) -> Sym {
        if !self.terms.keys().any(|m| m.iter().any(|(v, _)| map.contains_key(v))) {
            return self.clone();
        }
        let mut out = Sym::default();
        for (m, &c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Sym::constant(c);
            for &(v, e) in m.iter() {
                match map.get(&v) {
                    Some(value) => {
                        for _ in 0..e {
                            factor = factor.mul(value, p);
                        }
                    }
                    None => kept.push((v, e)),
                }
            }
            let kept: VarMonomial = kept.into_boxed_slice();
            for (fm, fc) in factor.terms {
                out.add_monomial(mul_var_monomials(&kept, &fm, p), fc, p);
            }
        }
        out
    }
}

impl Coefficient for Sym {
    fn zero() -> Self {
        Sym::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn scalar(c: u32, p: u32) -> Self {
        Sym::constant(c % p)
    }

    fn add_assign(&mut self, other: &Self, p: u32) {
        for (m, &c) in &other.terms {
            let slot = self.terms.entry(m.clone()).or_insert(0);
            *slot = fp::add(*slot, c, p);
        }
        self.terms.retain(|_, c| *c != 0);
    }

    fn mul(&self, other: &Self, p: u32) -> Self {
        let mut out = Sym::default();
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let m = mul_var_monomials(a, b, p);
                let slot = out.terms.entry(m).or_insert(0);
                *slot = fp::add(*slot, fp::mul(ca, cb, p), p);
            }
        }
        out.terms.retain(|_, c| *c != 0);
        out
    }

    fn scale(&self, c: u32, p: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, &x)| (m.clone(), fp::mul(x, c, p)))
            .filter(|(_, x)| *x != 0)
            .collect();
        Sym { terms }
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut s = c.to_string();
                for &(v, e) in m.iter() {
                    s.push_str(&format!("*u{v}"));
                    if e > 1 {
                        s.push_str(&format!("^{e}"));
                    }
                }
                s
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Picks a branch set so that every term has at most one variable outside
/// it, and that variable with exponent one. Greedy by frequency among the
/// offending terms, ties to the lower index.
pub fn linearizing_set(equations: &[Sym], num_vars: usize) -> Vec<bool> {
    let mut chosen = vec![false; num_vars];
    let monomials: BTreeSet<&VarMonomial> = equations.iter().flat_map(|e| e.terms.keys()).collect();
    loop {
        let mut counts = vec![0usize; num_vars];
        let mut any = false;
        for m in &monomials {
            let outside: Vec<(u32, u8)> = m.iter().copied().filter(|(v, _)| !chosen[*v as usize]).collect();
            let offending = outside.len() > 1 || outside.iter().any(|&(_, e)| e > 1);
            if offending {
                any = true;
                for (v, _) in outside {
                    counts[v as usize] += 1;
                }
            }
        }
        if !any {
            return chosen;
        }
        let best = (0..num_vars).max_by_key(|&v| (counts[v], std::cmp::Reverse(v))).expect("variables exist");
        chosen[best] = true;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub branch_vars: usize,
    pub nodes: u64,
}

pub struct Node {
    pub equations: Vec<Sym>,
    /// Substitutions in the order they were made; later ones never mention
    /// variables eliminated earlier.
    eliminated: Vec<BTreeMap<u32, Sym>>,
}

pub struct Solver<'a> {
    p: u32,
    num_vars: usize,
    branch: &'a [bool],
    pub stats: SolveStats,
}

impl<'a> Solver<'a> {
    pub fn new(p: u32, num_vars: usize, branch: &'a [bool]) -> Solver<'a> {
        Solver {
            p,
            num_vars,
            branch,
            stats: SolveStats { branch_vars: branch.iter().filter(|&&b| b).count(), nodes: 0 },
        }
    }

    /// A satisfying assignment, with unconstrained variables set to 0 and
    /// branch values tried in ascending order.
    pub fn solve(&mut self, equations: Vec<Sym>) -> Option<Vec<u32>> {
        let node = Node { equations, eliminated: Vec::new() };
        self.search(node)
    }

    /// Propagates at the root only; `None` if that already refutes.
    pub fn root(&mut self, equations: Vec<Sym>) -> Option<Node> {
        let mut node = Node { equations, eliminated: Vec::new() };
        self.propagate(&mut node).then_some(node)
    }

    /// Continues from a propagated root, possibly with a different branch set.
    pub fn solve_from(&mut self, node: Node) -> Option<Vec<u32>> {
        self.search(node)
    }

    fn search(&mut self, mut node: Node) -> Option<Vec<u32>> {
        self.stats.nodes += 1;
        if !self.propagate(&mut node) {
            return None;
        }
        if node.equations.is_empty() {
            return Some(self.assignment(&node));
        }
        let v = self.pick_branch_variable(&node.equations);
        for value in 0..self.p {
            let mut map = BTreeMap::new();
            map.insert(v, Sym::constant(value));
            let child = Node {
                equations: node.equations.iter().map(|e| e.substitute(&map, self.p)).collect(),
                eliminated: {
                    let mut el = node.eliminated.clone();
                    el.push(map);
                    el
                },
            };
            if let Some(solution) = self.search(child) {
                return Some(solution);
            }
        }
        None
    }

    fn assignment(&self, node: &Node) -> Vec<u32> {
        let mut values = vec![0u32; self.num_vars];
        for map in node.eliminated.iter().rev() {
            for (&v, expr) in map {
                values[v as usize] = expr.evaluate(&values, self.p);
            }
        }
        values
    }

    fn pick_branch_variable(&self, equations: &[Sym]) -> u32 {
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for e in equations {
            for m in e.terms.keys() {
                let nonlinear = m.len() > 1 || m.iter().any(|&(_, e)| e > 1);
                if nonlinear {
                    for &(v, _) in m.iter() {
                        if self.branch[v as usize] {
                            *counts.entry(v).or_default() += 1;
                        }
                    }
                }
            }
        }
        if let Some((&v, _)) = counts.iter().max_by_key(|(&v, &c)| (c, std::cmp::Reverse(v))) {
            return v;
        }
        // Unreachable for a linearizing branch set; any variable keeps the
        // search complete.
        equations
            .iter()
            .flat_map(|e| e.variables())
            .next()
            .expect("nonconstant equations have variables")
    }

    /// Applies linear and univariate propagation to a fixed point. Returns
    /// false when a contradiction is found.
    fn propagate(&mut self, node: &mut Node) -> bool {
        let p = self.p;
        loop {
            let mut normalized: BTreeSet<Sym> = BTreeSet::new();
            for e in node.equations.drain(..) {
                if e.is_zero() {
                    continue;
                }
                if e.is_constant() {
                    return false;
                }
                normalized.insert(e.normalized(p));
            }
            node.equations = normalized.into_iter().collect();

            let (linear, rest): (Vec<Sym>, Vec<Sym>) =
                node.equations.drain(..).partition(|e| e.total_degree() <= 1);
            node.equations = rest;
            let mut map = match self.row_reduce(&linear) {
                Some(map) => map,
                None => return false,
            };
            if map.is_empty() {
                match self.univariate_fixes(&node.equations) {
                    Some(fixes) => map = fixes,
                    None => return false,
                }
            }
            if map.is_empty() {
                return true;
            }
            node.equations = node.equations.iter().map(|e| e.substitute(&map, p)).collect();
            node.eliminated.push(map);
        }
    }

    /// Row-reduces linear equations, pivoting on non-branch variables first.
    /// Returns pivot variable -> expression in the free variables, or `None`
    /// if inconsistent.
    fn row_reduce(&self, linear: &[Sym]) -> Option<BTreeMap<u32, Sym>> {
        let p = self.p;
        if linear.is_empty() {
            return Some(BTreeMap::new());
        }
        let vars: BTreeSet<u32> = linear.iter().flat_map(|e| e.variables()).collect();
        let mut columns: Vec<u32> = vars.iter().copied().filter(|&v| !self.branch[v as usize]).collect();
        columns.extend(vars.iter().copied().filter(|&v| self.branch[v as usize]));
        let col_of: BTreeMap<u32, usize> = columns.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let width = columns.len();
        // Last column holds the constant, moved to the right-hand side.
        let mut rows: Vec<Vec<u32>> = linear
            .iter()
            .map(|e| {
                let mut row = vec![0u32; width + 1];
                for (m, &c) in &e.terms {
                    match m.first() {
                        Some(&(v, _)) => row[col_of[&v]] = c,
                        None => row[width] = fp::neg(c, p),
                    }
                }
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..width {
            let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, pr);
            let inv = fp::inv(rows[r][c], p);
            for x in rows[r].iter_mut() {
                *x = fp::mul(*x, inv, p);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..=width {
                        let sub = fp::mul(f, rows[r][j], p);
                        rows[i][j] = fp::sub(rows[i][j], sub, p);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        if rows[r..].iter().any(|row| row[width] != 0) {
            return None;
        }
        let mut map = BTreeMap::new();
        for (i, &c) in pivots.iter().enumerate() {
            let mut expr = Sym::constant(rows[i][width]);
            for j in c + 1..width {
                if rows[i][j] != 0 {
                    expr.add_monomial(Box::from([(columns[j], 1u8)]), fp::neg(rows[i][j], p), p);
                }
            }
            map.insert(columns[c], expr);
        }
        Some(map)
    }

    /// Variables forced to a single value by some univariate equation.
    /// `None` if some univariate equation has no root.
    fn univariate_fixes(&self, equations: &[Sym]) -> Option<BTreeMap<u32, Sym>> {
        let mut domains: BTreeMap<u32, Vec<bool>> = BTreeMap::new();
        let mut values = vec![0u32; self.num_vars];
        for e in equations {
            let vars = e.variables();
            if vars.len() != 1 {
                continue;
            }
            let v = *vars.iter().next().expect("one variable");
            let domain = domains.entry(v).or_insert_with(|| vec![true; self.p as usize]);
            for x in 0..self.p {
                values[v as usize] = x;
                if e.evaluate(&values, self.p) != 0 {
                    domain[x as usize] = false;
                }
            }
            values[v as usize] = 0;
        }
        let mut fixes = BTreeMap::new();
        for (v, domain) in domains {
            let allowed: Vec<u32> = (0..self.p).filter(|&x| domain[x as usize]).collect();
            match allowed.as_slice() {
                [] => return None,
                [x] => {
                    fixes.insert(v, Sym::constant(*x));
                }
                _ => {}
            }
        }
        Some(fixes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(equations: &[Sym], n: usize, p: u32) -> bool {
        let mut values = vec![0u32; n];
        loop {
            if equations.iter().all(|e| e.evaluate(&values, p) == 0) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return false;
                }
                values[i] += 1;
                if values[i] < p {
                    break;
                }
                values[i] = 0;
                i += 1;
            }
        }
    }

    fn solve(equations: Vec<Sym>, n: usize, p: u32) -> Option<Vec<u32>> {
        let branch = linearizing_set(&equations, n);
        Solver::new(p, n, &branch).solve(equations)
    }

    #[test]
    fn exponents_fold_by_fermat() {
        let p = 3;
        let x = Sym::var(0);
        let x3 = x.mul(&x, p).mul(&x, p);
        assert_eq!(x3, x);
        let x4 = x3.mul(&x, p);
        assert_eq!(x4, x.mul(&x, p));
    }

    #[test]
    fn linear_and_quadratic_systems() {
        let p = 5;
        let (a, b) = (Sym::var(0), Sym::var(1));
        // a*b = 1, a + b = 0  =>  a^2 = -1 = 4 => a in {2, 3}
        let mut e1 = a.mul(&b, p);
        e1.add_assign(&Sym::constant(p - 1), p);
        let mut e2 = a.clone();
        e2.add_assign(&b, p);
        let sol = solve(vec![e1.clone(), e2.clone()], 2, p).unwrap();
        assert_eq!(e1.evaluate(&sol, p), 0);
        assert_eq!(e2.evaluate(&sol, p), 0);

        // a^2 = 2 has no root mod 5
        let mut e3 = a.mul(&a, p);
        e3.add_assign(&Sym::constant(3), p);
        assert!(solve(vec![e3], 1, p).is_none());
    }

    #[test]
    fn linearizing_set_breaks_every_product() {
        let p = 3;
        let e = Sym::var(0).mul(&Sym::var(1), p).mul(&Sym::var(2), p);
        let branch = linearizing_set(&[e], 3);
        assert_eq!(branch.iter().filter(|&&b| b).count(), 2);
        let sq = Sym::var(4).mul(&Sym::var(4), p);
        assert!(linearizing_set(&[sq], 5)[4]);
    }

    #[test]
    fn agrees_with_brute_force_on_random_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for round in 0..300 {
            let p = [2u32, 3, 5][round % 3];
            let n = rng.gen_range(1..=4);
            let mut equations = Vec::new();
            for _ in 0..rng.gen_range(1..=4) {
                let mut e = Sym::constant(rng.gen_range(0..p));
                for _ in 0..rng.gen_range(1..=3) {
                    let mut t = Sym::constant(rng.gen_range(1..p));
                    for _ in 0..rng.gen_range(0..=2) {
                        t = t.mul(&Sym::var(rng.gen_range(0..n) as u32), p);
                    }
                    e.add_assign(&t, p);
                }
                equations.push(e);
            }
            let found = solve(equations.clone(), n, p);
            assert_eq!(found.is_some(), brute_force(&equations, n, p), "{equations:?} mod {p}");
            if let Some(sol) = found {
                assert!(equations.iter().all(|e| e.evaluate(&sol, p) == 0));
            }
        }
    }
}
