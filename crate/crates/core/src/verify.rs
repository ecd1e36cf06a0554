//! Exhaustive sweeps of every invariant over a grid of small parameters.
//!
//! Each check is identified by a short name and counts the instances it
//! examined and the instances that failed.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::abacus::{has_forbidden_config, phi, to_multicore, AbacusDisplay, BetaSet, Multicore};
use crate::blocks::{
    core_block_chain, core_block_witnesses, hub, k_value, residue_counts, weight, CoreBlockChain, Hub,
};
use crate::branching::{induction_outcomes, mahonian, mahonian_spectrum, max_length, removal_outcomes, LaurentPolynomial, RemovalOrder};
use crate::caps::Caps;
use crate::error::Result;
use crate::multipartition::{multipartitions_of, partitions_of, Multicharge, Multipartition, Partition};
use crate::scopes::KleshchevOracle;

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub instances: u64,
    pub violations: u64,
    /// Instances that could not be examined within the caps.
    pub skipped: u64,
    /// The first few failures.
    pub examples: Vec<String>,
}

const MAX_EXAMPLES: usize = 3;

impl CheckReport {
    pub fn new(name: &'static str) -> Self {
        CheckReport { name, instances: 0, violations: 0, skipped: 0, examples: Vec::new() }
    }

    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }

    fn absorb(&mut self, other: &CheckReport) {
        self.instances += other.instances;
        self.violations += other.violations;
        self.skipped += other.skipped;
        for ex in &other.examples {
            if self.examples.len() < MAX_EXAMPLES {
                self.examples.push(ex.clone());
            }
        }
    }
}

/// Reports keyed by name.
#[derive(Debug, Clone, Default)]
pub struct Suite {
    reports: BTreeMap<&'static str, CheckReport>,
}

impl Suite {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, name: &'static str) -> &mut CheckReport {
        self.reports.entry(name).or_insert_with(|| CheckReport::new(name))
    }

    pub fn record(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.check(name).record(ok, detail);
    }

    pub fn skip(&mut self, name: &'static str) {
        self.check(name).skipped += 1;
    }

    pub fn merge(&mut self, other: &Suite) {
        for report in other.reports.values() {
            self.check(report.name).absorb(report);
        }
    }

    /// Reports sorted by name.
    pub fn reports(&self) -> Vec<CheckReport> {
        self.reports.values().cloned().collect()
    }

    pub fn get(&self, name: &str) -> Option<&CheckReport> {
        self.reports.get(name)
    }

    pub fn passed(&self) -> bool {
        self.reports.values().all(CheckReport::passed)
    }
}

/// Sizes swept by the different groups of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Blocks examined for the Scopes map, branching and Kleshchev checks.
    pub scopes_n: usize,
    /// Multicores, s-moves, chains and core-block characterisations.
    pub invariant_n: usize,
    /// Rim-hook weight laws.
    pub weight_n: usize,
    /// Largest `δ` for the Mahonian product check.
    pub mahonian_delta: usize,
    /// Largest image block enumerated for the bijection check.
    pub image_n: usize,
}

impl Limits {
    pub fn for_n(n: usize) -> Self {
        Limits { scopes_n: n, invariant_n: n.min(6), weight_n: n.min(7), mahonian_delta: 8, image_n: n + 8 }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::for_n(8)
    }
}

/// Parameters of a full sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub limits: Limits,
    pub rs: Vec<usize>,
    pub es: Vec<usize>,
}

impl Grid {
    pub fn new(n: usize, r_max: usize, es: Vec<usize>) -> Self {
        Grid { limits: Limits::for_n(n), rs: (1..=r_max).collect(), es }
    }

    /// Every multicharge with `a_1 = 0` and `0 ≤ a_j < e`, for each `(r, e)`.
    pub fn charges(&self) -> Vec<Multicharge> {
        let mut out = Vec::new();
        for &e in &self.es {
            for &r in &self.rs {
                out.extend(normalized_charges(e, r));
            }
        }
        out
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::new(8, 3, vec![2, 3, 4, 5])
    }
}

/// `(0, a_2, …, a_r)` with `0 ≤ a_j < e`.
pub fn normalized_charges(e: usize, r: usize) -> Vec<Multicharge> {
    let mut out = vec![vec![0i64]];
    for _ in 1..r {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..e as i64).map(move |x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(|c| Multicharge::new(e, c).expect("e >= 2")).collect()
}

/// Runs everything: the parameter-free checks, the per-`e` checks and the
/// per-multicharge checks.
pub fn verify_grid(grid: &Grid, caps: &Caps) -> Result<Suite> {
    let mut suite = verify_general(&grid.limits, caps)?;
    for &e in &grid.es {
        suite.merge(&verify_modulus(e, &grid.limits)?);
    }
    for a in grid.charges() {
        suite.merge(&verify_charge(&a, &grid.limits, caps)?);
    }
    Ok(suite)
}

/// Checks that need neither `e` nor a multicharge.
pub fn verify_general(limits: &Limits, caps: &Caps) -> Result<Suite> {
    let mut s = Suite::new();
    let unlimited = Caps { max_delta: limits.mahonian_delta.max(caps.max_delta), ..*caps };
    for delta in 0..=limits.mahonian_delta {
        let counts = mahonian(delta, &unlimited)?;
        // Π_{m ≤ δ} (1 + q + … + q^{m−1}) by repeated multiplication
        let mut product = vec![1u64];
        for m in 1..=delta {
            let mut next = vec![0u64; product.len() + m - 1];
            for (k, &c) in product.iter().enumerate() {
                for extra in 0..m {
                    next[k + extra] += c;
                }
            }
            product = next;
        }
        s.record("mahonian-product", counts == product, || format!("delta = {delta}"));
        let total: u64 = counts.iter().sum();
        let factorial: u64 = (1..=delta as u64).product();
        s.record("mahonian-total", total == factorial, || format!("delta = {delta}"));
        if delta <= 7 {
            let mut brute = vec![0u64; max_length(delta) as usize + 1];
            for o in RemovalOrder::all(delta) {
                brute[o.length()] += 1;
            }
            s.record("mahonian-brute-force", counts == brute, || format!("delta = {delta}"));
        }
        let spectrum = mahonian_spectrum(delta, &unlimited)?;
        s.record("mahonian-palindromic", spectrum.is_palindromic() && spectrum.at_one() == factorial, || {
            format!("delta = {delta}")
        });
    }
    for n in 0..=10 {
        for p in partitions_of(n) {
            for a in -6..=6 {
                let beta = BetaSet::from_partition(&p, a);
                s.record("beta-round-trip", beta.partition() == p && beta.charge() == a, || format!("{p} a={a}"));
            }
        }
    }
    for r in 1..=3 {
        for n in 0..=limits.invariant_n {
            let all = multipartitions_of(n, r);
            for lam in &all {
                for mu in &all {
                    let strict = lam != mu && lam.dominates(mu)?;
                    s.record("dominance-refines-lex", !strict || lam > mu, || format!("{lam} vs {mu}"));
                }
                let nodes = lam.nodes();
                for x in &nodes {
                    for y in &nodes {
                        s.record("node-order-antisymmetric", !(x.is_above(y) && y.is_above(x)), || format!("{x} {y} in {lam}"));
                    }
                }
            }
        }
    }
    Ok(s)
}

/// Single-component oracles for one `e`.
pub fn verify_modulus(e: usize, limits: &Limits) -> Result<Suite> {
    let mut s = Suite::new();
    let a = Multicharge::new(e, vec![0])?;
    let mut kleshchev = KleshchevOracle::new(a.clone());
    for n in 0..=limits.scopes_n.max(limits.weight_n) {
        for p in partitions_of(n) {
            let lam = Multipartition::new(vec![p.clone()])?;
            let hooks_divisible = hook_lengths(&p).into_iter().filter(|h| h % e == 0).count();
            if n <= limits.weight_n {
                s.record("classical-weight", weight(&lam, &a)? == hooks_divisible, || format!("{p} e={e}"));
                let (_, hooks) = to_multicore(&lam, &a)?;
                s.record("classical-weight-by-sliding", hooks == hooks_divisible, || format!("{p} e={e}"));
                let core = BetaSet::from_partition(&p, 0).is_core(e);
                s.record("core-iff-no-gap-above", core == (hooks_divisible == 0), || format!("{p} e={e}"));
            }
            if n <= limits.scopes_n {
                s.record("kleshchev-restricted", kleshchev.is_kleshchev(&lam)? == p.is_restricted(e), || {
                    format!("{p} e={e}")
                });
            }
        }
    }
    Ok(s)
}

fn hook_lengths(p: &Partition) -> Vec<usize> {
    let conj = p.conjugate();
    let mut out = Vec::new();
    for (b, &part) in p.parts().iter().enumerate() {
        for c in 1..=part {
            out.push(part - c + conj.part(c) - (b + 1) + 1);
        }
    }
    out
}

/// Multipartitions of each size, grouped into blocks, built on demand.
struct Catalog {
    a: Multicharge,
    built: usize,
    groups: BTreeMap<(usize, Vec<usize>), Vec<Multipartition>>,
    hubs_by_size: Vec<BTreeSet<Hub>>,
}

impl Catalog {
    fn new(a: &Multicharge) -> Self {
        Catalog { a: a.clone(), built: 0, groups: BTreeMap::new(), hubs_by_size: Vec::new() }
    }

    fn ensure(&mut self, n: usize) -> Result<()> {
        while self.built <= n {
            let size = self.built;
            let mut hubs = BTreeSet::new();
            for lam in multipartitions_of(size, self.a.r()) {
                hubs.insert(hub(&lam, &self.a)?);
                let counts = residue_counts(&lam, &self.a)?;
                self.groups.entry((size, counts)).or_default().push(lam);
            }
            self.hubs_by_size.push(hubs);
            self.built += 1;
        }
        Ok(())
    }

    /// Members of the block of `lam`, lexicographically decreasing.
    fn block_of(&mut self, lam: &Multipartition) -> Result<&[Multipartition]> {
        self.ensure(lam.size())?;
        let key = (lam.size(), residue_counts(lam, &self.a)?);
        Ok(self.groups.get(&key).map(Vec::as_slice).unwrap_or(&[]))
    }

    fn blocks_of_size(&mut self, n: usize) -> Result<Vec<Vec<Multipartition>>> {
        self.ensure(n)?;
        Ok(self.groups.range((n, Vec::new())..(n + 1, Vec::new())).map(|(_, v)| v.clone()).collect())
    }
}

/// What the chain of a multipartition tells about its core block.
struct CoreData {
    w_c: usize,
    k: Vec<i64>,
}

fn mc_weight(m: &Multicore) -> Result<usize> {
    weight(&m.multipartition(), &m.multicharge())
}

/// Per-multicharge checks.
pub fn verify_charge(a: &Multicharge, limits: &Limits, caps: &Caps) -> Result<Suite> {
    let mut s = Suite::new();
    let mut catalog = Catalog::new(a);
    let (e, r) = (a.e(), a.r());
    let ri = r as i64;
    let top = limits.scopes_n.max(limits.invariant_n).max(limits.weight_n);
    catalog.ensure(top)?;

    // core block data per hub, computed from one chain
    let mut core_data: BTreeMap<Hub, CoreData> = BTreeMap::new();
    let mut core_data_for = |lam: &Multipartition, chain: Option<&CoreBlockChain>| -> Result<(usize, Vec<i64>)> {
        let h = hub(lam, a)?;
        if let Some(d) = core_data.get(&h) {
            return Ok((d.w_c, d.k.clone()));
        }
        let owned;
        let chain = match chain {
            Some(c) => c,
            None => {
                owned = core_block_chain(lam, a)?;
                &owned
            }
        };
        let end = chain.end();
        let w_c = mc_weight(end)?;
        let k = (0..e).map(|i| k_value(end, i)).collect::<Result<Vec<_>>>()?;
        core_data.insert(h, CoreData { w_c, k: k.clone() });
        Ok((w_c, k))
    };

    // Weight and hub laws over every multipartition.
    let mut hub_class: BTreeMap<Hub, (i64, String)> = BTreeMap::new();
    for n in 0..=limits.weight_n {
        let mut hub_to_counts: BTreeMap<Hub, Vec<usize>> = BTreeMap::new();
        let mut counts_to_hub: BTreeMap<Vec<usize>, Hub> = BTreeMap::new();
        for lam in multipartitions_of(n, r) {
            let w = weight(&lam, a)?;
            let h = hub(&lam, a)?;
            let counts = residue_counts(&lam, a)?;
            s.record("addable-minus-removable", lam.addable_nodes().len() == lam.removable_nodes().len() + r, || format!("{lam}"));
            s.record("hub-sum", h.entries().iter().sum::<i64>() == -ri, || format!("{lam}"));
            s.record("residue-counts-sum", counts.iter().sum::<usize>() == n, || format!("{lam}"));
            let (m, hooks) = to_multicore(&lam, a)?;
            s.record("multicore-weight-law", w == mc_weight(&m)? + r * hooks, || format!("{lam} {a}"));
            // single rim hooks
            let display = AbacusDisplay::new(&lam, a)?;
            for (j, beta) in display.components().iter().enumerate() {
                for &x in beta.beads_above_cutoff() {
                    if let Some(lower) = beta.slide_bead_up(e, x) {
                        let mut comps = display.components().to_vec();
                        comps[j] = lower;
                        let smaller = AbacusDisplay::from_beta_sets(e, comps)?.multipartition();
                        let ok = smaller.size() + e == n && weight(&smaller, a)? + r == w && hub(&smaller, a)? == h;
                        s.record("rim-hook-weight", ok, || format!("{lam} -> {smaller} {a}"));
                    }
                }
            }
            if n <= limits.invariant_n {
                let ew = e as i64 * w as i64 - ri * n as i64;
                match hub_class.get(&h) {
                    Some((value, witness)) => {
                        s.record("same-hub-weight-law", *value == ew, || format!("{lam} vs {witness} {a}"));
                    }
                    None => {
                        hub_class.insert(h.clone(), (ew, format!("{lam}")));
                    }
                }
                let consistent_a = hub_to_counts.entry(h.clone()).or_insert_with(|| counts.clone()) == &counts;
                let consistent_b = counts_to_hub.entry(counts.clone()).or_insert_with(|| h.clone()) == &h;
                s.record("hub-determines-block", consistent_a && consistent_b, || format!("{lam} {a}"));
            }
        }
    }

    // Multicores, s-moves and chains.
    for n in 0..=limits.invariant_n {
        for block in catalog.blocks_of_size(n)? {
            let h = hub(&block[0], a)?;
            let smaller_hub = (0..n).any(|m| catalog.hubs_by_size[m].contains(&h));
            let all_multicores = block.iter().all(|lam| Multicore::new(lam, a).is_ok());
            let mut chain_says_core = None;
            for lam in &block {
                let first = match Multicore::new(lam, a) {
                    Ok(m) => !core_block_witnesses(&m).is_empty(),
                    Err(_) => false,
                };
                s.record("core-block-equivalence", first == !smaller_hub && all_multicores == !smaller_hub, || {
                    format!("{lam} {a}: base tuple {first}, all multicores {all_multicores}, smaller size with same hub {smaller_hub}")
                });
                let chain = core_block_chain(lam, a)?;
                let (w_c, k) = core_data_for(lam, Some(&chain))?;
                let w = weight(lam, a)?;
                let is_core = w == w_c;
                chain_says_core.get_or_insert(is_core);
                s.record("core-block-minimal-weight", w_c <= w && is_core == !smaller_hub, || format!("{lam} {a}"));
                check_chain(&mut s, lam, a, &chain, w_c, &k, &mut catalog)?;
            }
            // K is a block invariant
            if !smaller_hub {
                let mut ks: BTreeSet<Vec<i64>> = BTreeSet::new();
                for lam in &block {
                    let m = Multicore::new(lam, a)?;
                    let k = (0..e).map(|i| k_value(&m, i)).collect::<Result<Vec<_>>>()?;
                    for i in 0..e {
                        s.record("k-at-most-d", k[i] <= m.d_min(i), || format!("{lam} {a} i={i}"));
                        for j in 1..=r {
                            for l in 1..=r {
                                s.record("core-delta-spread", (m.delta(i, j) - m.delta(i, l)).abs() <= 2, || {
                                    format!("{lam} {a} i={i}")
                                });
                            }
                        }
                    }
                    ks.insert(k);
                }
                s.record("k-block-invariant", ks.len() == 1, || format!("{} {a}: {ks:?}", block[0]));
            }
            for lam in &block {
                let Ok(m) = Multicore::new(lam, a) else { continue };
                check_multicore(&mut s, &m, a)?;
                let (w_c, k) = core_data_for(lam, None)?;
                let w = mc_weight(&m)?;
                check_master_bound(&mut s, &m, w, w_c, &k, r);
            }
        }
    }

    // Scopes map, branching and Kleshchev checks.
    let mut kleshchev = KleshchevOracle::new(a.clone());
    for n in 0..=limits.scopes_n {
        for block in catalog.blocks_of_size(n)? {
            let rep = &block[0];
            let h = hub(rep, a)?;
            let w_b = weight(rep, a)?;
            let (w_c, k) = core_data_for(rep, None)?;
            for i in 0..e {
                let images: Vec<Multipartition> = block.iter().map(|lam| phi(lam, a, i)).collect::<Result<_>>()?;
                let image_counts = residue_counts(&images[0], a)?;
                let same_block = images.iter().all(|m| residue_counts(m, a).map(|c| c == image_counts).unwrap_or(false));
                s.record("phi-image-is-a-block", same_block, || format!("{rep} {a} i={i}"));
                for (lam, image) in block.iter().zip(&images) {
                    s.record("phi-weight", weight(image, a)? == w_b, || format!("{lam} {a} i={i}"));
                    s.record("phi-involution", phi(image, a, i)? == *lam, || format!("{lam} {a} i={i}"));
                }
                let holds = (w_b as i64) <= w_c as i64 + k[i] * ri;
                let delta = h.delta(i);
                let condition = holds && delta >= 0;
                if n <= limits.invariant_n || condition {
                    let image_n = images[0].size();
                    if image_n <= limits.image_n {
                        let target = catalog.block_of(&images[0])?;
                        let mut sorted = images.clone();
                        sorted.sort_by(|x, y| y.cmp(x));
                        sorted.dedup();
                        s.record("phi-bijection", sorted.len() == block.len() && sorted.as_slice() == target, || {
                            format!("{rep} {a} i={i}")
                        });
                    } else {
                        s.skip("phi-bijection");
                    }
                }
                if !condition {
                    continue;
                }
                for lam in &block {
                    s.record("no-forbidden-config", !has_forbidden_config(lam, a, i)?, || format!("{lam} {a} i={i}"));
                    let addable = lam.addable_nodes().into_iter().any(|x| a.residue(x) == i);
                    s.record("no-addable-i-nodes", !addable, || format!("{lam} {a} i={i}"));
                }
                for x in 1..images.len() {
                    s.record("lex-preservation", images[x - 1] > images[x], || {
                        format!("{} > {} {a} i={i}", block[x - 1], block[x])
                    });
                }
                let mut count_b = 0;
                let mut count_image = 0;
                for (lam, image) in block.iter().zip(&images) {
                    let kb = kleshchev.is_kleshchev(lam)?;
                    let ki = kleshchev.is_kleshchev(image)?;
                    count_b += kb as usize;
                    count_image += ki as usize;
                    s.record("kleshchev-preservation", kb == ki, || format!("{lam} {a} i={i}"));
                }
                s.record("kleshchev-count", count_b == count_image, || format!("{rep} {a} i={i}"));
                let delta = delta as usize;
                if delta > caps.max_delta {
                    s.skip("branching-degree-law");
                    continue;
                }
                let ell = max_length(delta);
                let expected = mahonian_spectrum(delta, caps)?;
                for (lam, image) in block.iter().zip(&images) {
                    let outcomes = removal_outcomes(lam, a, i, caps)?;
                    s.record("branching-node-count", outcomes[0].order.len() == delta, || format!("{lam} {a} i={i}"));
                    let mut poly = LaurentPolynomial::zero();
                    for o in &outcomes {
                        s.record("branching-degree-law", o.degree == ell - 2 * o.order.length() as i64, || {
                            format!("{lam} {a} i={i} order {:?}", o.order.as_slice())
                        });
                        s.record("branching-endpoint", o.end == *image, || format!("{lam} {a} i={i}"));
                        poly.add_term(o.degree, 1);
                    }
                    s.record("branching-spectrum", poly == expected, || format!("{lam} {a} i={i}: {poly}"));
                    s.record("branching-palindromic", poly.is_palindromic() && poly.at_one() == (1..=delta as u64).product::<u64>(), || {
                        format!("{lam} {a} i={i}")
                    });
                    let up = induction_outcomes(image, a, i, caps)?;
                    let mut up_poly = LaurentPolynomial::zero();
                    let mut up_ok = up[0].order.len() == delta;
                    for o in &up {
                        up_ok &= o.end == *lam && o.degree == ell - 2 * o.order.length() as i64;
                        up_poly.add_term(o.degree, 1);
                    }
                    s.record("induction-spectrum", up_ok && up_poly == expected, || format!("{image} -> {lam} {a} i={i}"));
                }
            }
        }
    }
    Ok(s)
}

fn check_multicore(s: &mut Suite, m: &Multicore, a: &Multicharge) -> Result<()> {
    let (e, r) = (m.e(), m.r());
    let lam = m.multipartition();
    let h = hub(&lam, a)?;
    let w = weight(&lam, a)? as i64;
    for i in 0..e {
        for j in 1..=r {
            let direct = crate::blocks::delta_ij(&lam, a, i, j)?;
            s.record("level-hub-bridge", m.delta(i, j) == direct, || format!("{lam} {a} i={i} j={j}"));
        }
    }
    let small_gamma = m.max_gamma_diff() <= 2;
    if small_gamma {
        for i in 0..e {
            let d = m.d_min(i) + 1;
            let ok = (1..=r).all(|j| (d - 1..=d + 1).contains(&m.delta(i, j)));
            s.record("delta-interval", ok, || format!("{lam} {a} i={i}"));
        }
    }
    for mv in m.moves() {
        let g = m.gamma_diff(mv.i, mv.l, mv.j, mv.k);
        s.record("gamma-antisymmetry", g == -m.gamma_diff(mv.l, mv.i, mv.j, mv.k) && g == -m.gamma_diff(mv.i, mv.l, mv.k, mv.j), || {
            format!("{lam} {a} {mv:?}")
        });
        let moved = m.s_move(mv);
        let mu = moved.multipartition();
        s.record("s-move-hub", hub(&mu, a)? == h, || format!("{lam} {a} {mv:?}"));
        s.record("s-move-weight", weight(&mu, a)? as i64 == w - r as i64 * (g - 2), || format!("{lam} {a} {mv:?}"));
        s.record("s-move-inverse", moved.s_move(mv.inverse()) == *m, || format!("{lam} {a} {mv:?}"));
        for i in 0..e {
            let (d, d2) = (m.d_min(i), moved.d_min(i));
            s.record("s-move-d-bound", d2 >= d - 2, || format!("{lam} {a} {mv:?} i={i}"));
            if g == 1 {
                s.record("s-move-d-bound-unit-gamma", d2 >= d - 1, || format!("{lam} {a} {mv:?} i={i}"));
            }
        }
    }
    Ok(())
}

/// `d(m) ≥ K − h` whenever `w(m) = w(C) + hr` with `0 ≤ h ≤ K`.
fn check_master_bound(s: &mut Suite, m: &Multicore, w: usize, w_c: usize, k: &[i64], r: usize) {
    let diff = w as i64 - w_c as i64;
    if diff < 0 || diff % r as i64 != 0 {
        s.record("d-master-bound", false, || format!("{:?}: weight {w} not above core weight {w_c} by a multiple of r", m.levels()));
        return;
    }
    let h = diff / r as i64;
    for (i, &ki) in k.iter().enumerate() {
        if h <= ki {
            s.record("d-master-bound", m.d_min(i) >= ki - h, || format!("{:?} i={i} h={h} K={ki}", m.levels()));
        }
    }
}

fn check_chain(
    s: &mut Suite,
    lam: &Multipartition,
    a: &Multicharge,
    chain: &CoreBlockChain,
    w_c: usize,
    k: &[i64],
    catalog: &mut Catalog,
) -> Result<()> {
    let (e, r) = (a.e(), a.r());
    let h0 = hub(lam, a)?;
    let weights: Vec<usize> = chain.multicores.iter().map(mc_weight).collect::<Result<_>>()?;
    let mut hub_ok = true;
    for m in &chain.multicores {
        hub_ok &= hub(&m.multipartition(), a)? == h0;
    }
    s.record("chain-hub-constant", hub_ok, || format!("{lam} {a}"));
    s.record("chain-weight-non-increasing", weights.windows(2).all(|w| w[0] >= w[1]), || format!("{lam} {a}"));
    let v = chain.strict_steps;
    s.record("chain-strict-prefix", weights[..=v].windows(2).all(|w| w[0] > w[1]), || format!("{lam} {a}"));
    s.record("chain-gamma-bound", chain.multicores[v].max_gamma_diff() <= 2, || format!("{lam} {a}"));
    let end = chain.end();
    s.record("chain-ends-in-core-block", !core_block_witnesses(end).is_empty() && weights[weights.len() - 1] == w_c, || {
        format!("{lam} {a}")
    });
    // d along strictly decreasing stretches
    for t in 0..v {
        for u in t + 1..=v {
            let diff = weights[t] - weights[u];
            if !diff.is_multiple_of(r) {
                s.record("chain-d-bound", false, || format!("{lam} {a}: weight step not a multiple of r"));
                continue;
            }
            let h = (diff / r) as i64;
            for i in 0..e {
                let ok = chain.multicores[t].d_min(i) >= chain.multicores[u].d_min(i) - h;
                s.record("chain-d-bound", ok, || format!("{lam} {a} t={t} u={u} i={i}"));
            }
        }
    }
    // the near-core multicore against every member of the core block
    let mv = &chain.multicores[v];
    let core_members = catalog.block_of(&end.multipartition())?.to_vec();
    for mu in &core_members {
        let mu = Multicore::new(mu, a)?;
        for i in 0..e {
            s.record("near-core-d-bound", mu.d_min(i) <= mv.d_min(i) + 1, || format!("{lam} {a} i={i}"));
        }
    }
    for (m, &w) in chain.multicores.iter().zip(&weights) {
        check_master_bound(s, m, w, w_c, k, r);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_charges_count() {
        assert_eq!(normalized_charges(3, 1).len(), 1);
        assert_eq!(normalized_charges(3, 3).len(), 9);
        assert!(normalized_charges(4, 2).iter().all(|a| a.a(1) == 0));
    }

    #[test]
    fn small_grid_passes() {
        let grid = Grid::new(4, 2, vec![2, 3]);
        let suite = verify_grid(&grid, &Caps::default()).unwrap();
        for report in suite.reports() {
            assert!(report.passed(), "{report:?}");
        }
        assert!(suite.get("branching-degree-law").unwrap().instances > 0);
        assert!(suite.get("core-block-equivalence").unwrap().instances > 0);
    }

    #[test]
    fn failures_are_counted_with_examples() {
        let mut report = CheckReport::new("x");
        for k in 0..5 {
            report.record(k % 2 == 0, || format!("{k}"));
        }
        assert_eq!((report.instances, report.violations), (5, 2));
        assert_eq!(report.examples, vec![String::from("1"), String::from("3")]);
    }
}
