//! Graded branching: the degree shifts `N_A` and `N^B`, restriction and
//! induction factors, and the spectrum of degrees produced by removing all
//! removable `i`-nodes in every possible order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Add;

use crate::abacus::phi;
use crate::blocks::{scopes_condition, ScopesReport};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::multipartition::{Multicharge, Multipartition, Node};

/// An element of `ℕ[v, v⁻¹]`, stored as degree → non-zero multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    coefficients: BTreeMap<i64, u64>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c·v^degree`.
    pub fn monomial(degree: i64, c: u64) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, u64)>) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: i64, c: u64) {
        if c > 0 {
            *self.coefficients.entry(degree).or_insert(0) += c;
        }
    }

    pub fn coefficient(&self, degree: i64) -> u64 {
        self.coefficients.get(&degree).copied().unwrap_or(0)
    }

    /// Non-zero terms by increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.coefficients.iter().map(|(&d, &c)| (d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Value at `v = 1`.
    pub fn at_one(&self) -> u64 {
        self.coefficients.values().sum()
    }

    /// Invariant under `v ↔ v⁻¹`.
    pub fn is_palindromic(&self) -> bool {
        self.terms().all(|(d, c)| self.coefficient(-d) == c)
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(mut self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        for (d, c) in rhs.terms() {
            self.add_term(d, c);
        }
        self
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (d, c)) in self.coefficients.iter().rev().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            match (c, d) {
                (c, 0) => write!(f, "{c}")?,
                (1, 1) => f.write_str("v")?,
                (c, 1) => write!(f, "{c}v")?,
                (1, d) => write!(f, "v^{d}")?,
                (c, d) => write!(f, "{c}v^{d}")?,
            }
        }
        Ok(())
    }
}

fn check_residue(a: &Multicharge, i: usize) -> Result<()> {
    if i >= a.e() {
        return Err(Error::IndexOutOfRange { what: "residue", index: i, bound: a.e() });
    }
    Ok(())
}

fn count_i_nodes(lam: &Multipartition, a: &Multicharge, i: usize, keep: impl Fn(&Node) -> bool) -> i64 {
    let addable = lam.addable_nodes().into_iter().filter(|x| a.residue(*x) == i && keep(x)).count();
    let removable = lam.removable_nodes().into_iter().filter(|x| a.residue(*x) == i && keep(x)).count();
    addable as i64 - removable as i64
}

/// `N_A(λ)`: addable minus removable `i`-nodes below the removable `i`-node `A`.
pub fn n_below(lam: &Multipartition, a: &Multicharge, node: Node, i: usize) -> Result<i64> {
    a.check(lam)?;
    check_residue(a, i)?;
    if !lam.is_removable(node) || a.residue(node) != i {
        return Err(Error::BadNode(format!("{node} is not a removable {i}-node of {lam}")));
    }
    Ok(count_i_nodes(lam, a, i, |x| node.is_above(x)))
}

/// `N^B(λ)`: addable minus removable `i`-nodes above the addable `i`-node `B`.
pub fn n_above(lam: &Multipartition, a: &Multicharge, node: Node, i: usize) -> Result<i64> {
    a.check(lam)?;
    check_residue(a, i)?;
    if !lam.is_addable(node) || a.residue(node) != i {
        return Err(Error::BadNode(format!("{node} is not an addable {i}-node of {lam}")));
    }
    Ok(count_i_nodes(lam, a, i, |x| x.is_above(&node)))
}

/// Lowest node first.
fn ascending(mut nodes: Vec<Node>) -> Vec<Node> {
    nodes.sort_by_key(|x| core::cmp::Reverse((x.comp, x.row)));
    nodes
}

/// `λ_{A}` with degree `N_A(λ)` for the removable nodes `A_1 < … < A_t`,
/// lowest first.
pub fn restriction_factors(lam: &Multipartition, a: &Multicharge) -> Result<Vec<(Multipartition, i64)>> {
    a.check(lam)?;
    ascending(lam.removable_nodes())
        .into_iter()
        .map(|x| Ok((lam.remove_node(x)?, n_below(lam, a, x, a.residue(x))?)))
        .collect()
}

/// `λ^{B}` with degree `N^B(λ)` for the addable nodes `B_1 > … > B_s`,
/// highest first.
pub fn induction_factors(lam: &Multipartition, a: &Multicharge) -> Result<Vec<(Multipartition, i64)>> {
    a.check(lam)?;
    let mut nodes = ascending(lam.addable_nodes());
    nodes.reverse();
    nodes
        .into_iter()
        .map(|x| Ok((lam.add_node(x)?, n_above(lam, a, x, a.residue(x))?)))
        .collect()
}

/// `|𝔖_δ^k|` for `k = 0, …, δ(δ−1)/2`.
pub fn mahonian(delta: usize, caps: &Caps) -> Result<Vec<u64>> {
    caps.check_delta(delta)?;
    let mut counts = vec![1u64];
    for m in 1..=delta {
        // inserting the m-th letter creates between 0 and m − 1 new inversions
        let mut next = vec![0u64; counts.len() + m - 1];
        for (k, &c) in counts.iter().enumerate() {
            for extra in 0..m {
                next[k + extra] += c;
            }
        }
        counts = next;
    }
    Ok(counts)
}

/// `Σ_k |𝔖_δ^k| v^{ℓ − 2k}` with `ℓ = δ(δ−1)/2`.
pub fn mahonian_spectrum(delta: usize, caps: &Caps) -> Result<LaurentPolynomial> {
    let ell = max_length(delta);
    Ok(LaurentPolynomial::from_terms(
        mahonian(delta, caps)?.into_iter().enumerate().map(|(k, c)| (ell - 2 * k as i64, c)),
    ))
}

/// `ℓ_δ^max = δ(δ−1)/2`.
pub fn max_length(delta: usize) -> i64 {
    (delta * delta.saturating_sub(1) / 2) as i64
}

/// A permutation `σ` of `0..δ`: node `A_{σ(m)}` is the `m`-th one removed,
/// with `A_0 < A_1 < …` the lowest-first order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RemovalOrder(Vec<usize>);

impl RemovalOrder {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::Parse(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(RemovalOrder(perm))
    }

    pub fn identity(delta: usize) -> Self {
        RemovalOrder((0..delta).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ℓ(σ)`, the number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.0;
        (0..p.len()).map(|x| (x + 1..p.len()).filter(|&y| p[x] > p[y]).count()).sum()
    }

    /// All `δ!` orders, lexicographically.
    pub fn all(delta: usize) -> Vec<RemovalOrder> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..delta).collect();
        loop {
            out.push(RemovalOrder(cur.clone()));
            let Some(x) = (1..cur.len()).rev().find(|&x| cur[x - 1] < cur[x]) else { break };
            let y = (x..cur.len()).rev().find(|&y| cur[y] > cur[x - 1]).unwrap();
            cur.swap(x - 1, y);
            cur[x..].reverse();
        }
        out
    }
}

/// What one order of removals (or additions) produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderOutcome {
    pub order: RemovalOrder,
    pub degree: i64,
    pub end: Multipartition,
}

fn run_order(lam: &Multipartition, a: &Multicharge, i: usize, nodes: &[Node], order: &RemovalOrder, removing: bool) -> Result<OrderOutcome> {
    let mut cur = lam.clone();
    let mut degree = 0;
    for &idx in order.as_slice() {
        let x = nodes[idx];
        if removing {
            degree += n_below(&cur, a, x, i)?;
            cur = cur.remove_node(x)?;
        } else {
            degree += n_above(&cur, a, x, i)?;
            cur = cur.add_node(x)?;
        }
    }
    Ok(OrderOutcome { order: order.clone(), degree, end: cur })
}

/// Removes every removable `i`-node of `λ` in every order, accumulating
/// `N_A` on each intermediate multipartition. No hypotheses are checked.
pub fn removal_outcomes(lam: &Multipartition, a: &Multicharge, i: usize, caps: &Caps) -> Result<Vec<OrderOutcome>> {
    a.check(lam)?;
    check_residue(a, i)?;
    let nodes = ascending(lam.removable_nodes().into_iter().filter(|x| a.residue(*x) == i).collect());
    caps.check_delta(nodes.len())?;
    RemovalOrder::all(nodes.len())
        .iter()
        .map(|order| run_order(lam, a, i, &nodes, order, true))
        .collect()
}

/// Adds every addable `i`-node of `μ` in every order, accumulating `N^B`.
/// Orders index the addable nodes lowest first. No hypotheses are checked.
pub fn induction_outcomes(mu: &Multipartition, a: &Multicharge, i: usize, caps: &Caps) -> Result<Vec<OrderOutcome>> {
    a.check(mu)?;
    check_residue(a, i)?;
    let nodes = ascending(mu.addable_nodes().into_iter().filter(|x| a.residue(*x) == i).collect());
    caps.check_delta(nodes.len())?;
    RemovalOrder::all(nodes.len())
        .iter()
        .map(|order| run_order(mu, a, i, &nodes, order, false))
        .collect()
}

/// Checks `w(B) ≤ w(C) + K_i·r` and `δ_i(B) ≥ 0`.
pub fn check_hypotheses(lam: &Multipartition, a: &Multicharge, i: usize) -> Result<ScopesReport> {
    let report = scopes_condition(lam, a, i)?;
    if !report.holds {
        return Err(Error::Hypothesis(format!(
            "w(B) = {} exceeds w(C) + K_{i}·r = {} + {}·{}",
            report.w_b,
            report.w_c,
            report.k,
            a.r()
        )));
    }
    if report.delta < 0 {
        return Err(Error::Hypothesis(format!("delta_{i}(B) = {} is negative", report.delta)));
    }
    Ok(report)
}

/// The degree produced by removing the removable `i`-nodes in order `σ`.
pub fn order_degree(lam: &Multipartition, a: &Multicharge, i: usize, order: &RemovalOrder) -> Result<i64> {
    let report = check_hypotheses(lam, a, i)?;
    let nodes = ascending(lam.removable_nodes().into_iter().filter(|x| a.residue(*x) == i).collect());
    if nodes.len() as i64 != report.delta || order.len() != nodes.len() {
        return Err(Error::Hypothesis(format!(
            "{lam} has {} removable {i}-nodes but delta is {} and the order has length {}",
            nodes.len(),
            report.delta,
            order.len()
        )));
    }
    Ok(run_order(lam, a, i, &nodes, order, true)?.degree)
}

/// The graded multiplicity of `S^{Φ_i(λ)}` in the restriction of `S^λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branching {
    pub target: Multipartition,
    pub delta: usize,
    pub polynomial: LaurentPolynomial,
}

/// Sums `v^{degree}` over all removal orders of the removable `i`-nodes,
/// after checking the hypotheses and that every order ends at `Φ_i(λ)`.
pub fn branching_polynomial(lam: &Multipartition, a: &Multicharge, i: usize, caps: &Caps) -> Result<Branching> {
    let report = check_hypotheses(lam, a, i)?;
    let delta = report.delta as usize;
    caps.check_delta(delta)?;
    if lam.addable_nodes().into_iter().any(|x| a.residue(x) == i) {
        return Err(Error::Hypothesis(format!("{lam} has an addable {i}-node")));
    }
    let target = phi(lam, a, i)?;
    let outcomes = removal_outcomes(lam, a, i, caps)?;
    if outcomes.first().map(|o| o.order.len()) != Some(delta) {
        return Err(Error::Hypothesis(format!("{lam} does not have exactly {delta} removable {i}-nodes")));
    }
    let mut polynomial = LaurentPolynomial::zero();
    for o in outcomes {
        if o.end != target {
            return Err(Error::Hypothesis(format!("removal order {:?} ends at {} instead of {target}", o.order.as_slice(), o.end)));
        }
        polynomial.add_term(o.degree, 1);
    }
    Ok(Branching { target, delta, polynomial })
}
