//! Weights, hubs, blocks, core blocks and the invariants `K_i` and `d_i`.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::abacus::{to_multicore, Multicore, SMove};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::multipartition::{multipartitions_of, Multicharge, Multipartition};

/// `(c_0, …, c_{e−1})`: the number of nodes of each residue.
pub fn residue_counts(lam: &Multipartition, a: &Multicharge) -> Result<Vec<usize>> {
    a.check(lam)?;
    let mut counts = vec![0; a.e()];
    for x in lam.nodes() {
        counts[a.residue(x)] += 1;
    }
    Ok(counts)
}

/// `Σ_j c_{a_j} − ½ Σ_i (c_i − c_{i+1})²` from the residue counts.
pub fn weight_from_counts(counts: &[usize], a: &Multicharge) -> usize {
    let e = a.e();
    assert_eq!(counts.len(), e, "one count per residue");
    let linear: i64 = (1..=a.r()).map(|j| counts[a.residue_class(j)] as i64).sum();
    let squares: i64 = (0..e)
        .map(|i| {
            let d = counts[i] as i64 - counts[(i + 1) % e] as i64;
            d * d
        })
        .sum();
    let twice = 2 * linear - squares;
    assert!(twice % 2 == 0, "sum of squared differences is even for residue counts");
    assert!(twice >= 0, "weight of a multipartition is non-negative");
    (twice / 2) as usize
}

/// The weight `w(λ)`.
pub fn weight(lam: &Multipartition, a: &Multicharge) -> Result<usize> {
    Ok(weight_from_counts(&residue_counts(lam, a)?, a))
}

/// `(δ_0, …, δ_{e−1})` where `δ_i` is the number of removable `i`-nodes minus
/// the number of addable `i`-nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hub(Vec<i64>);

impl Hub {
    pub fn new(entries: Vec<i64>) -> Self {
        Hub(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn delta(&self, i: usize) -> i64 {
        self.0[i]
    }
}

impl fmt::Display for Hub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, d) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// `δ_i^j`, counted on the diagram of component `j`.
pub fn delta_ij(lam: &Multipartition, a: &Multicharge, i: usize, j: usize) -> Result<i64> {
    a.check(lam)?;
    if i >= a.e() {
        return Err(Error::IndexOutOfRange { what: "residue", index: i, bound: a.e() });
    }
    if j == 0 || j > lam.r() {
        return Err(Error::IndexOutOfRange { what: "component", index: j, bound: lam.r() + 1 });
    }
    let count = |nodes: Vec<crate::Node>| nodes.into_iter().filter(|x| x.comp == j && a.residue(*x) == i).count() as i64;
    Ok(count(lam.removable_nodes()) - count(lam.addable_nodes()))
}

pub fn hub(lam: &Multipartition, a: &Multicharge) -> Result<Hub> {
    a.check(lam)?;
    let mut entries = vec![0i64; a.e()];
    for x in lam.removable_nodes() {
        entries[a.residue(x)] += 1;
    }
    for x in lam.addable_nodes() {
        entries[a.residue(x)] -= 1;
    }
    Ok(Hub(entries))
}

/// What identifies a block: its size and residue counts (equivalently, its
/// hub), together with the weights of the block and of its core block.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockDescriptor {
    pub n: usize,
    pub r: usize,
    pub e: usize,
    /// `a_j mod e`.
    pub kappa: Vec<usize>,
    pub residue_counts: Vec<usize>,
    pub hub: Hub,
    pub weight: usize,
    pub core_weight: usize,
}

impl BlockDescriptor {
    /// `δ_i(B)`.
    pub fn delta(&self, i: usize) -> i64 {
        self.hub.delta(i)
    }

    pub fn is_core_block(&self) -> bool {
        self.weight == self.core_weight
    }
}

pub fn block_of(lam: &Multipartition, a: &Multicharge) -> Result<BlockDescriptor> {
    let chain = core_block_chain(lam, a)?;
    let core_weight = weight(&chain.end().multipartition(), a)?;
    descriptor(lam, a, core_weight)
}

fn descriptor(lam: &Multipartition, a: &Multicharge, core_weight: usize) -> Result<BlockDescriptor> {
    let counts = residue_counts(lam, a)?;
    Ok(BlockDescriptor {
        n: lam.size(),
        r: lam.r(),
        e: a.e(),
        kappa: (1..=a.r()).map(|j| a.residue_class(j)).collect(),
        weight: weight_from_counts(&counts, a),
        residue_counts: counts,
        hub: hub(lam, a)?,
        core_weight,
    })
}

/// Two multipartitions of the same size lie in the same block iff their
/// residue multisets agree.
pub fn same_block(lam: &Multipartition, mu: &Multipartition, a: &Multicharge) -> Result<bool> {
    if lam.size() != mu.size() || lam.r() != mu.r() {
        return Err(Error::ShapeMismatch { left: (lam.size(), lam.r()), right: (mu.size(), mu.r()) });
    }
    Ok(residue_counts(lam, a)? == residue_counts(mu, a)?)
}

/// A block with its members listed in lexicographically decreasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    charge: Multicharge,
    descriptor: BlockDescriptor,
    members: Vec<Multipartition>,
}

impl Block {
    /// The block containing `lam`.
    pub fn containing(lam: &Multipartition, a: &Multicharge, caps: &Caps) -> Result<Block> {
        check_caps(lam.size(), a, caps)?;
        let counts = residue_counts(lam, a)?;
        let members = multipartitions_of(lam.size(), lam.r())
            .into_iter()
            .filter(|mu| residue_counts(mu, a).map(|c| c == counts).unwrap_or(false))
            .collect();
        Ok(Block { charge: a.clone(), descriptor: block_of(lam, a)?, members })
    }

    pub fn charge(&self) -> &Multicharge {
        &self.charge
    }

    pub fn descriptor(&self) -> &BlockDescriptor {
        &self.descriptor
    }

    pub fn members(&self) -> &[Multipartition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, lam: &Multipartition) -> bool {
        self.members.binary_search_by(|m| lam.cmp(m)).is_ok()
    }

    /// The lexicographically largest member.
    pub fn representative(&self) -> &Multipartition {
        &self.members[0]
    }
}

fn check_caps(n: usize, a: &Multicharge, caps: &Caps) -> Result<()> {
    caps.check_n(n)?;
    caps.check_r(a.r())?;
    caps.check_e(a.e())
}

/// All blocks of multipartitions of `n`, ordered by their lexicographically
/// smallest member.
pub fn enumerate_blocks(n: usize, a: &Multicharge, caps: &Caps) -> Result<Vec<Block>> {
    check_caps(n, a, caps)?;
    let mut groups: BTreeMap<Vec<usize>, Vec<Multipartition>> = BTreeMap::new();
    for lam in multipartitions_of(n, a.r()) {
        groups.entry(residue_counts(&lam, a)?).or_default().push(lam);
    }
    let mut blocks = groups
        .into_values()
        .map(|members| {
            let descriptor = block_of(&members[0], a)?;
            Ok(Block { charge: a.clone(), descriptor, members })
        })
        .collect::<Result<Vec<_>>>()?;
    blocks.sort_by(|x, y| x.members.last().cmp(&y.members.last()));
    Ok(blocks)
}

/// All offset vectors `t` (with `t_1 = 0`) such that shifting component `j`
/// by `t_j` levels brings every runner's levels within 1 of each other.
/// Shifting component `j` by `t_j` levels is the same as replacing `a_j` by
/// `a_j + e·t_j`.
pub fn core_block_witnesses(m: &Multicore) -> Vec<Vec<i64>> {
    let (e, r) = (m.e(), m.r());
    let mut ranges = Vec::with_capacity(r);
    for j in 2..=r {
        let lo = (0..e).map(|i| m.level(i, 1) - m.level(i, j) - 1).max().unwrap();
        let hi = (0..e).map(|i| m.level(i, 1) - m.level(i, j) + 1).min().unwrap();
        if lo > hi {
            return Vec::new();
        }
        ranges.push((lo, hi));
    }
    let mut out = Vec::new();
    let mut cur = vec![0i64];
    fn rec(m: &Multicore, ranges: &[(i64, i64)], cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let j = cur.len() + 1;
        if j > m.r() {
            out.push(cur.clone());
            return;
        }
        let (lo, hi) = ranges[j - 2];
        for t in lo..=hi {
            let fits = (2..j).all(|k| {
                (0..m.e()).all(|i| (m.level(i, j) + t - m.level(i, k) - cur[k - 1]).abs() <= 1)
            });
            if fits {
                cur.push(t);
                rec(m, ranges, cur, out);
                cur.pop();
            }
        }
    }
    rec(m, &ranges, &mut cur, &mut out);
    out
}

pub fn is_core_block(m: &Multicore) -> bool {
    !core_block_witnesses(m).is_empty()
}

/// A multicharge exhibiting a multicore as a member of a core block, with the
/// base tuples it admits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreBlockWitness {
    /// Level offsets `t_j`, with `t_1 = 0`.
    pub offsets: Vec<i64>,
    /// `a_j + e·t_j`.
    pub charge: Multicharge,
    /// Every `(b_0, …, b_{e−1})` with each level `ℓ_{ij} + t_j ∈ {b_i, b_i + 1}`.
    pub base_tuples: Vec<Vec<i64>>,
}

fn tuples_for(m: &Multicore, offsets: &[i64]) -> Vec<Vec<i64>> {
    let mut options: Vec<Vec<i64>> = Vec::with_capacity(m.e());
    for i in 0..m.e() {
        let shifted = (1..=m.r()).map(|j| m.level(i, j) + offsets[j - 1]);
        let lo = shifted.clone().min().unwrap();
        let hi = shifted.max().unwrap();
        debug_assert!(hi - lo <= 1);
        options.push(if hi > lo { vec![lo] } else { vec![lo - 1, lo] });
    }
    let mut out = vec![Vec::new()];
    for opts in options {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                opts.iter().map(move |&b| {
                    let mut next = prefix.clone();
                    next.push(b);
                    next
                })
            })
            .collect();
    }
    out
}

fn witness(m: &Multicore, offsets: Vec<i64>) -> CoreBlockWitness {
    let a = m.multicharge();
    let e = m.e() as i64;
    let charge = Multicharge::new(
        m.e(),
        a.charge().iter().zip(&offsets).map(|(aj, t)| aj + e * t).collect(),
    )
    .expect("shifting a valid multicharge");
    let base_tuples = tuples_for(m, &offsets);
    CoreBlockWitness { offsets, charge, base_tuples }
}

/// Every witness of core-block membership.
pub fn all_witnesses(m: &Multicore) -> Vec<CoreBlockWitness> {
    core_block_witnesses(m).into_iter().map(|t| witness(m, t)).collect()
}

/// The base tuples of a core-block multicore, relative to one normalised
/// witness: the one admitting the most tuples, ties broken by the smallest
/// offset vector.
pub fn base_tuples(m: &Multicore) -> Result<CoreBlockWitness> {
    all_witnesses(m)
        .into_iter()
        .max_by(|x, y| x.base_tuples.len().cmp(&y.base_tuples.len()).then(y.offsets.cmp(&x.offsets)))
        .ok_or(Error::NotCoreBlock)
}

fn k_of_tuple(b: &[i64], i: usize) -> i64 {
    let e = b.len();
    if i == 0 {
        b[0] - b[e - 1] - 2
    } else {
        b[i] - b[i - 1] - 1
    }
}

/// `K_i` of the core block containing `m`: the tuple with `b_i` as large and
/// `b_{i−1}` as small as possible gives `b_i − b_{i−1} − 1`, or
/// `b_0 − b_{e−1} − 2` when `i = 0`. Taken over all witnesses.
pub fn k_value(m: &Multicore, i: usize) -> Result<i64> {
    if i >= m.e() {
        return Err(Error::IndexOutOfRange { what: "residue", index: i, bound: m.e() });
    }
    all_witnesses(m)
        .iter()
        .flat_map(|w| w.base_tuples.iter().map(|b| k_of_tuple(b, i)))
        .max()
        .ok_or(Error::NotCoreBlock)
}

/// `K_i` for the witness chosen by [`base_tuples`] alone.
pub fn k_value_for(witness: &CoreBlockWitness, i: usize) -> i64 {
    witness.base_tuples.iter().map(|b| k_of_tuple(b, i)).max().expect("a witness has base tuples")
}

/// `d_i(m) = min_j δ_i^j(m)`.
pub fn d_min(m: &Multicore, i: usize) -> i64 {
    m.d_min(i)
}

/// A path of s-moves from the multicore of a multipartition into its core
/// block, with weights non-increasing and strictly decreasing over the first
/// `strict_steps` moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreBlockChain {
    /// `e`-rim hooks removed to reach the first multicore.
    pub hooks: usize,
    pub moves: Vec<SMove>,
    /// `m_0, …, m_s`; always non-empty.
    pub multicores: Vec<Multicore>,
    pub strict_steps: usize,
}

impl CoreBlockChain {
    pub fn start(&self) -> &Multicore {
        &self.multicores[0]
    }

    pub fn end(&self) -> &Multicore {
        self.multicores.last().expect("chain is non-empty")
    }
}

/// First greedily applies moves with `γ_{il}^{jk} ≥ 3` (largest first), then
/// searches breadth-first over moves with `γ_{il}^{jk} ≥ 2`.
pub fn multicore_chain(m: &Multicore) -> Result<CoreBlockChain> {
    let mut moves = Vec::new();
    let mut multicores = vec![m.clone()];
    loop {
        let cur = multicores.last().unwrap();
        let best = cur
            .moves()
            .map(|mv| (cur.gamma_diff(mv.i, mv.l, mv.j, mv.k), mv))
            .filter(|(g, _)| *g >= 3)
            .max_by(|(g1, m1), (g2, m2)| g1.cmp(g2).then(m2.cmp(m1)));
        match best {
            Some((_, mv)) => {
                let next = cur.s_move(mv);
                moves.push(mv);
                multicores.push(next);
            }
            None => break,
        }
    }
    let strict_steps = moves.len();
    let stuck = multicores.last().unwrap().clone();
    if !is_core_block(&stuck) {
        let mut parent: BTreeMap<Multicore, (Multicore, SMove)> = BTreeMap::new();
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(stuck.clone());
        queue.push_back(stuck.clone());
        let mut found = None;
        while let Some(cur) = queue.pop_front() {
            if is_core_block(&cur) {
                found = Some(cur);
                break;
            }
            for mv in cur.moves() {
                if cur.gamma_diff(mv.i, mv.l, mv.j, mv.k) < 2 {
                    continue;
                }
                let next = cur.s_move(mv);
                if seen.insert(next.clone()) {
                    parent.insert(next.clone(), (cur.clone(), mv));
                    queue.push_back(next);
                }
            }
        }
        let mut node = found.ok_or_else(|| {
            Error::Hypothesis(format!("no weight-non-increasing s-move path from {:?} reaches a core block", stuck.levels()))
        })?;
        let mut tail = Vec::new();
        while let Some((prev, mv)) = parent.get(&node) {
            tail.push((*mv, node.clone()));
            node = prev.clone();
        }
        for (mv, next) in tail.into_iter().rev() {
            moves.push(mv);
            multicores.push(next);
        }
    }
    Ok(CoreBlockChain { hooks: 0, moves, multicores, strict_steps })
}

/// Slides `lam` to its multicore and follows [`multicore_chain`].
pub fn core_block_chain(lam: &Multipartition, a: &Multicharge) -> Result<CoreBlockChain> {
    let (m, hooks) = to_multicore(lam, a)?;
    let mut chain = multicore_chain(&m)?;
    chain.hooks = hooks;
    Ok(chain)
}

/// The core block of `lam`, as a descriptor, and the chain that reaches it.
pub fn core_block_of(lam: &Multipartition, a: &Multicharge) -> Result<(BlockDescriptor, CoreBlockChain)> {
    let chain = core_block_chain(lam, a)?;
    let mu = chain.end().multipartition();
    let w = weight(&mu, a)?;
    Ok((descriptor(&mu, a, w)?, chain))
}

/// Whether `w(B) ≤ w(C) + K_i·r`, with the data it is decided from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopesReport {
    pub i: usize,
    pub holds: bool,
    pub w_b: usize,
    pub w_c: usize,
    pub k: i64,
    /// `δ_i(B)`.
    pub delta: i64,
    pub chain: Vec<SMove>,
}

pub fn scopes_condition(lam: &Multipartition, a: &Multicharge, i: usize) -> Result<ScopesReport> {
    if i >= a.e() {
        return Err(Error::IndexOutOfRange { what: "residue", index: i, bound: a.e() });
    }
    let chain = core_block_chain(lam, a)?;
    let w_b = weight(lam, a)?;
    let w_c = weight(&chain.end().multipartition(), a)?;
    let k = k_value(chain.end(), i)?;
    let delta = hub(lam, a)?.delta(i);
    let holds = (w_b as i64) <= w_c as i64 + k * a.r() as i64;
    Ok(ScopesReport { i, holds, w_b, w_c, k, delta, chain: chain.moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abacus::AbacusDisplay;
    use crate::multipartition::partitions_of;

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn example() -> (Multipartition, Multicharge) {
        (mp("((4,3,1),(4,2,2,2),(3,2))"), Multicharge::new(5, vec![0, -2, 1]).unwrap())
    }

    #[test]
    fn counts_weight_hub_of_worked_example() {
        let a = Multicharge::new(4, vec![1, 0, 2]).unwrap();
        let lam = mp("((1,1),(2),(2,1))");
        assert_eq!(residue_counts(&lam, &a).unwrap(), vec![2, 3, 1, 1]);
        assert_eq!(weight(&lam, &a).unwrap(), 3);
        assert_eq!(hub(&lam, &a).unwrap().entries(), &[-1, 2, -3, -1]);
        let mu = mp("((1),(2,1),(1,1,1))");
        assert!(same_block(&lam, &mu, &a).unwrap());
        assert!(same_block(&lam, &Multipartition::empty(3), &a).is_err());
    }

    #[test]
    fn empty_multipartition() {
        let a = Multicharge::new(3, vec![0, 0, 2]).unwrap();
        let empty = Multipartition::empty(3);
        assert_eq!(residue_counts(&empty, &a).unwrap(), vec![0, 0, 0]);
        assert_eq!(weight(&empty, &a).unwrap(), 0);
        assert_eq!(hub(&empty, &a).unwrap().entries(), &[-2, 0, -1]);
    }

    #[test]
    fn counts_rotate_under_a_global_charge_shift() {
        for e in 2..=4 {
            let a = Multicharge::new(e, vec![0, 2]).unwrap();
            let b = Multicharge::new(e, vec![1, 3]).unwrap();
            for n in 0..=5 {
                for lam in multipartitions_of(n, 2) {
                    let c = residue_counts(&lam, &a).unwrap();
                    let d = residue_counts(&lam, &b).unwrap();
                    for i in 0..e {
                        assert_eq!(d[(i + 1) % e], c[i]);
                    }
                }
            }
        }
    }

    #[test]
    fn delta_ij_sums_to_hub_and_hub_sums_to_minus_r() {
        for e in 2..=3 {
            let a = Multicharge::new(e, vec![0, 1, 1]).unwrap();
            for n in 0..=5 {
                for lam in multipartitions_of(n, 3) {
                    let h = hub(&lam, &a).unwrap();
                    assert_eq!(h.entries().iter().sum::<i64>(), -3);
                    for i in 0..e {
                        let s: i64 = (1..=3).map(|j| delta_ij(&lam, &a, i, j).unwrap()).sum();
                        assert_eq!(s, h.delta(i));
                    }
                }
            }
        }
    }

    /// Number of hooks whose length is divisible by `e`.
    fn classical_weight(lam: &crate::Partition, e: usize) -> usize {
        let conj = lam.conjugate();
        let mut count = 0;
        for (b, &p) in lam.parts().iter().enumerate() {
            for c in 1..=p {
                let hook = p - c + conj.part(c) - (b + 1) + 1;
                if hook.is_multiple_of(e) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn single_component_weight_is_the_classical_weight() {
        for e in 2..=4 {
            for a0 in [-2, 0, 3] {
                let a = Multicharge::new(e, vec![a0]).unwrap();
                for n in 0..=8 {
                    for p in partitions_of(n) {
                        let lam = Multipartition::new(vec![p.clone()]).unwrap();
                        assert_eq!(weight(&lam, &a).unwrap(), classical_weight(&p, e), "{p} e={e}");
                    }
                }
            }
        }
    }

    #[test]
    fn bridge_between_levels_and_hub() {
        for e in 2..=4 {
            let a = Multicharge::new(e, vec![0, -1, 2]).unwrap();
            for n in 0..=6 {
                for lam in multipartitions_of(n, 3) {
                    let Ok(m) = Multicore::new(&lam, &a) else { continue };
                    for i in 0..e {
                        for j in 1..=3 {
                            assert_eq!(m.delta(i, j), delta_ij(&lam, &a, i, j).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn worked_example_is_in_a_core_block() {
        let (lam, a) = example();
        let m = Multicore::new(&lam, &a).unwrap();
        assert_eq!(m.levels()[1], vec![-2, 0, -1, -1, -3]);
        assert_eq!(m.levels()[2], vec![-1, 0, -1, 0, -2]);
        assert_eq!(core_block_witnesses(&m), vec![vec![0, 0, -1], vec![0, 0, 0]]);
        let w = base_tuples(&m).unwrap();
        assert_eq!(w.offsets, vec![0, 0, 0]);
        assert_eq!(w.base_tuples, vec![vec![-2, -1, -2, -1, -3], vec![-2, 0, -2, -1, -3]]);
        // the drawn tuples (2,4,2,3,1) and (2,3,2,3,1), four levels lower
        let drawn = [[2, 4, 2, 3, 1], [2, 3, 2, 3, 1]];
        let mut shifted: Vec<Vec<i64>> = drawn.iter().map(|t| t.iter().map(|x| x - 4).collect()).collect();
        shifted.sort();
        assert_eq!(w.base_tuples, shifted);
        assert_eq!(k_value(&m, 0).unwrap(), -1);
        assert_eq!(k_value(&m, 1).unwrap(), 1);
        assert_eq!(k_value(&m, 3).unwrap(), 0);
        let desc = block_of(&lam, &a).unwrap();
        assert!(desc.is_core_block());
    }

    #[test]
    fn single_component_multicores_have_two_to_the_e_tuples() {
        for e in 2..=4 {
            let a = Multicharge::new(e, vec![1]).unwrap();
            for n in 0..=6 {
                for lam in multipartitions_of(n, 1) {
                    let Ok(m) = Multicore::new(&lam, &a) else { continue };
                    assert!(is_core_block(&m));
                    assert_eq!(base_tuples(&m).unwrap().base_tuples.len(), 1 << e);
                }
            }
        }
    }

    #[test]
    fn base_tuples_bound_every_delta() {
        for e in 2..=4 {
            let a = Multicharge::new(e, vec![0, 1, 0]).unwrap();
            for n in 0..=6 {
                for lam in multipartitions_of(n, 3) {
                    let Ok(m) = Multicore::new(&lam, &a) else { continue };
                    let Ok(w) = base_tuples(&m) else { continue };
                    for b in &w.base_tuples {
                        for i in 0..e {
                            let base = k_of_tuple(b, i) + 1;
                            for j in 1..=3 {
                                assert!((base - 1..=base + 1).contains(&m.delta(i, j)));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn non_core_blocks_are_rejected() {
        let a = Multicharge::new(2, vec![0, 0]).unwrap();
        let m = Multicore::new(&mp("((3,2,1),())"), &a).unwrap();
        assert!(!is_core_block(&m));
        assert_eq!(base_tuples(&m), Err(Error::NotCoreBlock));
        assert_eq!(k_value(&m, 0), Err(Error::NotCoreBlock));
    }

    #[test]
    fn d_min_of_empty() {
        let a = Multicharge::new(2, vec![0, 0]).unwrap();
        let m = Multicore::new(&Multipartition::empty(2), &a).unwrap();
        assert_eq!(d_min(&m, 0), -1);
    }

    #[test]
    fn chains_end_in_the_core_block() {
        for e in 2..=3 {
            let a = Multicharge::new(e, vec![0, 1, 1]).unwrap();
            for n in 0..=6 {
                for lam in multipartitions_of(n, 3) {
                    let (c, chain) = core_block_of(&lam, &a).unwrap();
                    assert!(c.is_core_block());
                    assert_eq!(c.hub, hub(&lam, &a).unwrap());
                    assert!(is_core_block(chain.end()));
                    let weights: Vec<usize> =
                        chain.multicores.iter().map(|m| weight(&m.multipartition(), &a).unwrap()).collect();
                    assert!(weights.windows(2).all(|w| w[0] >= w[1]));
                    assert!(weights[..=chain.strict_steps].windows(2).all(|w| w[0] > w[1]));
                    assert_eq!(weight(&lam, &a).unwrap(), weights[0] + 3 * chain.hooks);
                }
            }
        }
    }

    #[test]
    fn core_blocks_return_empty_chains() {
        let (lam, a) = example();
        let (c, chain) = core_block_of(&lam, &a).unwrap();
        assert!(chain.moves.is_empty());
        assert_eq!(c, block_of(&lam, &a).unwrap());
    }

    #[test]
    fn scopes_condition_on_the_worked_example() {
        let (lam, a) = example();
        let r0 = scopes_condition(&lam, &a, 0).unwrap();
        assert_eq!((r0.k, r0.holds), (-1, false));
        let r1 = scopes_condition(&lam, &a, 1).unwrap();
        assert_eq!((r1.k, r1.holds, r1.w_b, r1.w_c), (1, true, r1.w_c, r1.w_c));
        let r3 = scopes_condition(&lam, &a, 3).unwrap();
        assert!(r3.holds);
    }

    #[test]
    fn scopes_condition_above_the_worked_example() {
        // adding e-rim hooks keeps the hub and raises the weight by r each
        let (lam, a) = example();
        let display = AbacusDisplay::new(&lam, &a).unwrap();
        let w_c = weight(&lam, &a).unwrap();
        let mut comps: Vec<_> = display.components().to_vec();
        for h in 1..=2 {
            // push the top bead of component 1 one level down
            let top = comps[0].max_bead();
            let lower = crate::BetaSet::from_encoding(
                None,
                comps[0].cutoff(),
                &comps[0]
                    .beads_above_cutoff()
                    .iter()
                    .map(|&x| if x == top { x + 5 } else { x })
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            comps[0] = lower;
            let bigger = AbacusDisplay::from_beta_sets(5, comps.clone()).unwrap().multipartition();
            let report = scopes_condition(&bigger, &a, 1).unwrap();
            assert_eq!(report.w_b, w_c + 3 * h);
            assert_eq!(report.w_c, w_c);
            assert_eq!(report.k, 1);
            assert_eq!(report.holds, h <= 1);
        }
    }

    /// `p(n)` by Euler's pentagonal recurrence, then an `r`-fold convolution.
    fn multipartition_count(n: usize, r: usize) -> usize {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            let mut total = 0i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                total += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    total += sign * p[m - g2];
                }
                k += 1;
            }
            p[m] = total;
        }
        let mut acc = vec![0i64; n + 1];
        acc[0] = 1;
        for _ in 0..r {
            let mut next = vec![0i64; n + 1];
            for x in 0..=n {
                for y in 0..=n - x {
                    next[x + y] += acc[x] * p[y];
                }
            }
            acc = next;
        }
        acc[n] as usize
    }

    #[test]
    fn enumerated_blocks_cover_everything() {
        let caps = Caps::default();
        let a = Multicharge::new(2, vec![0, 0]).unwrap();
        let blocks = enumerate_blocks(0, &a, &caps).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].members(), &[Multipartition::empty(2)]);
        let blocks = enumerate_blocks(1, &a, &caps).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].len(), 2);
        for (e, charge) in [(2, vec![0, 1]), (3, vec![0, 0, 2])] {
            let a = Multicharge::new(e, charge).unwrap();
            for n in 0..=6 {
                let blocks = enumerate_blocks(n, &a, &caps).unwrap();
                let total: usize = blocks.iter().map(Block::len).sum();
                assert_eq!(total, multipartition_count(n, a.r()));
                for b in &blocks {
                    assert!(b.members().windows(2).all(|w| w[0] > w[1]));
                }
                assert!(blocks.windows(2).all(|w| w[0].members().last() < w[1].members().last()));
            }
        }
    }

    #[test]
    fn caps_are_enforced() {
        let a = Multicharge::new(2, vec![0, 0]).unwrap();
        assert!(matches!(enumerate_blocks(9, &a, &Caps::default()), Err(Error::CapExceeded { .. })));
        let a = Multicharge::new(6, vec![0]).unwrap();
        assert!(matches!(enumerate_blocks(1, &a, &Caps::default()), Err(Error::CapExceeded { .. })));
    }
}
