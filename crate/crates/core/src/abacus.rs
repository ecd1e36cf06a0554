//! β-sets, `e`-abacus displays and the bead moves built on them.
//!
//! A β-set is an infinite set of integers that contains everything below
//! some point. It is stored as a *cutoff* (every integer below it is a bead)
//! plus the finitely many beads at or above the cutoff. Position `p` sits on
//! runner `p mod e` at level `⌊p / e⌋`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::multipartition::{Multicharge, Multipartition, Partition};

/// A charged β-set, kept in normal form: `cutoff` is the smallest integer
/// that is not a bead and `beads` lists the beads above it, descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BetaSet {
    charge: i64,
    cutoff: i64,
    beads: Vec<i64>,
}

impl BetaSet {
    /// `{λ_b + a − b : b ≥ 1}`.
    pub fn from_partition(lam: &Partition, a: i64) -> Self {
        let k = lam.len() as i64;
        let beads = lam
            .parts()
            .iter()
            .enumerate()
            .map(|(idx, &p)| p as i64 + a - (idx as i64 + 1))
            .collect();
        BetaSet::normalized(a, a - k, beads)
    }

    /// Builds a β-set from an explicit encoding: every integer below `cutoff`
    /// plus `beads`, all of which must be at or above the cutoff. If `charge`
    /// is given it must agree with the encoded set.
    pub fn from_encoding(charge: Option<i64>, cutoff: i64, beads: &[i64]) -> Result<Self> {
        let mut sorted = beads.to_vec();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        if let Some(&low) = sorted.last() {
            if low < cutoff {
                return Err(Error::MalformedBetaSet(format!(
                    "bead {low} lies below the cutoff {cutoff}"
                )));
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedBetaSet("repeated bead".into()));
        }
        let derived = cutoff + sorted.len() as i64;
        if let Some(c) = charge {
            if c != derived {
                return Err(Error::MalformedBetaSet(format!(
                    "charge {c} disagrees with the encoded set (which has charge {derived})"
                )));
            }
        }
        Ok(BetaSet::normalized(derived, cutoff, sorted))
    }

    fn normalized(charge: i64, mut cutoff: i64, mut beads: Vec<i64>) -> Self {
        while beads.last() == Some(&cutoff) {
            beads.pop();
            cutoff += 1;
        }
        debug_assert_eq!(charge, cutoff + beads.len() as i64);
        BetaSet { charge, cutoff, beads }
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    /// Smallest non-bead.
    pub fn cutoff(&self) -> i64 {
        self.cutoff
    }

    /// Beads above the cutoff, descending.
    pub fn beads_above_cutoff(&self) -> &[i64] {
        &self.beads
    }

    pub fn contains(&self, x: i64) -> bool {
        x < self.cutoff || self.beads.binary_search_by(|b| x.cmp(b)).is_ok()
    }

    /// Largest bead.
    pub fn max_bead(&self) -> i64 {
        self.beads.first().copied().unwrap_or(self.cutoff - 1)
    }

    /// The first `count` beads in decreasing order (the β-numbers
    /// `β_1 > β_2 > …`).
    pub fn largest(&self, count: usize) -> Vec<i64> {
        let mut out: Vec<i64> = self.beads.iter().copied().take(count).collect();
        let mut next = self.cutoff - 1;
        while out.len() < count {
            out.push(next);
            next -= 1;
        }
        out
    }

    /// The partition encoded by this set.
    pub fn partition(&self) -> Partition {
        let parts = self
            .beads
            .iter()
            .enumerate()
            .map(|(idx, &b)| (b - self.charge + idx as i64 + 1) as usize)
            .collect();
        Partition::from_sorted(parts)
    }

    /// Beads that sit on runner `i` at positions `≥ from`, descending.
    fn runner_beads_from(&self, e: usize, i: usize, from: i64) -> impl Iterator<Item = i64> + '_ {
        let e = e as i64;
        self.beads
            .iter()
            .copied()
            .chain((from..self.cutoff).rev())
            .filter(move |&x| x >= from && x.rem_euclid(e) == i as i64)
    }

    /// Level of the lowest bead on runner `i`.
    pub fn lowest_level(&self, e: usize, i: usize) -> i64 {
        let ei = e as i64;
        let top = self.max_bead();
        let mut x = top - (top - i as i64).rem_euclid(ei);
        while !self.contains(x) {
            x -= ei;
        }
        x.div_euclid(ei)
    }

    /// Every bead has a bead directly above it on its runner.
    pub fn is_core(&self, e: usize) -> bool {
        self.beads.iter().all(|&x| self.contains(x - e as i64))
    }

    /// Image under a bijection of ℤ that moves every integer by at most
    /// `reach` and fixes the set of integers below any sufficiently low point.
    fn map_local(&self, reach: i64, f: impl Fn(i64) -> i64) -> BetaSet {
        let low = self.cutoff - reach;
        let window_start = low - reach;
        let mut beads: Vec<i64> = self
            .beads
            .iter()
            .copied()
            .chain(window_start..self.cutoff)
            .map(&f)
            .filter(|&y| y >= low)
            .collect();
        beads.sort_unstable_by(|x, y| y.cmp(x));
        BetaSet::normalized(self.charge, low, beads)
    }

    /// Replace each bead `x` by `φ_i(x)`: runner `i − 1` moves right, runner
    /// `i` moves left.
    pub fn phi(&self, e: usize, i: usize) -> BetaSet {
        let e = e as i64;
        let i = i as i64;
        self.map_local(1, move |x| scopes_phi(x, e, i))
    }

    /// Slide every bead as far up its runner as it goes. Returns the e-core
    /// and the number of single-level slides.
    pub fn slide_up(&self, e: usize) -> (BetaSet, usize) {
        let ei = e as i64;
        let from = self.cutoff - ei;
        let mut beads = Vec::new();
        let mut moved = 0i64;
        for i in 0..e {
            let base = from - 1 - (from - 1 - i as i64).rem_euclid(ei);
            let on_runner: Vec<i64> = self.runner_beads_from(e, i, from).collect();
            for (k, &x) in on_runner.iter().rev().enumerate() {
                let target = base + (k as i64 + 1) * ei;
                moved += x - target;
                beads.push(target);
            }
        }
        beads.sort_unstable_by(|x, y| y.cmp(x));
        debug_assert!(moved % ei == 0 && moved >= 0);
        (BetaSet::normalized(self.charge, from, beads), (moved / ei) as usize)
    }

    /// A bead at `x` with `x − e` empty slides up one level: an `e`-rim hook
    /// is removed. Returns `None` if no such slide is possible from `x`.
    pub fn slide_bead_up(&self, e: usize, x: i64) -> Option<BetaSet> {
        let target = x - e as i64;
        if !self.contains(x) || self.contains(target) {
            return None;
        }
        Some(self.map_local(e as i64, move |y| {
            if y == x {
                target
            } else if y == target {
                x
            } else {
                y
            }
        }))
    }
}

/// `φ_i` on integers.
pub fn scopes_phi(x: i64, e: i64, i: i64) -> i64 {
    let rho = x.rem_euclid(e);
    if rho == (i - 1).rem_euclid(e) {
        x + 1
    } else if rho == i.rem_euclid(e) {
        x - 1
    } else {
        x
    }
}

/// The β-set of `λ^{(j)}` with respect to `a_j`.
pub fn beta_set(lam: &Partition, a: i64) -> BetaSet {
    BetaSet::from_partition(lam, a)
}

/// Inverse of [`beta_set`].
pub fn partition_of(beta: &BetaSet) -> (Partition, i64) {
    (beta.partition(), beta.charge())
}

/// The `e`-abacus display of a multipartition: one β-set per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbacusDisplay {
    e: usize,
    components: Vec<BetaSet>,
}

impl AbacusDisplay {
    pub fn new(lam: &Multipartition, a: &Multicharge) -> Result<Self> {
        a.check(lam)?;
        let components = lam
            .components()
            .iter()
            .zip(a.charge())
            .map(|(p, &aj)| BetaSet::from_partition(p, aj))
            .collect();
        Ok(AbacusDisplay { e: a.e(), components })
    }

    pub fn from_beta_sets(e: usize, components: Vec<BetaSet>) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidModulus(e));
        }
        if components.is_empty() {
            return Err(Error::EmptyMultipartition);
        }
        Ok(AbacusDisplay { e, components })
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn r(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[BetaSet] {
        &self.components
    }

    /// Component `j`, 1-based.
    pub fn component(&self, j: usize) -> &BetaSet {
        &self.components[j - 1]
    }

    pub fn multicharge(&self) -> Multicharge {
        Multicharge::new(self.e, self.components.iter().map(BetaSet::charge).collect())
            .expect("display invariants guarantee a valid multicharge")
    }

    pub fn multipartition(&self) -> Multipartition {
        Multipartition::new(self.components.iter().map(BetaSet::partition).collect())
            .expect("display has at least one component")
    }

    /// `ℓ_{ij}`: level of the lowest bead on runner `i` of component `j`.
    pub fn lowest_level(&self, i: usize, j: usize) -> i64 {
        self.component(j).lowest_level(self.e, i)
    }

    pub fn is_multicore(&self) -> bool {
        self.components.iter().all(|b| b.is_core(self.e))
    }

    /// Lowest level with a gap and highest level with a bead, over all
    /// components.
    pub fn irregular_levels(&self) -> (i64, i64) {
        let e = self.e as i64;
        let lo = self.components.iter().map(|b| b.cutoff().div_euclid(e)).min().unwrap();
        let hi = self.components.iter().map(|b| b.max_bead().div_euclid(e)).max().unwrap();
        (lo, hi)
    }

    /// One level above and below the irregular part.
    pub fn default_window(&self) -> (i64, i64) {
        let (lo, hi) = self.irregular_levels();
        (lo - 1, hi + 1)
    }

    /// Draws the display, one block per component, rows by level. `●` is a
    /// bead and `○` a gap; above the window every position is a bead and below
    /// it every position is empty.
    pub fn render(&self, window: Option<(i64, i64)>) -> Result<String> {
        let (lo, hi) = window.unwrap_or_else(|| self.default_window());
        let (need_lo, need_hi) = self.irregular_levels();
        if lo > need_lo || hi < need_hi {
            return Err(Error::Window(format!(
                "levels {lo}..={hi} do not cover the irregular rows {need_lo}..={need_hi}"
            )));
        }
        let e = self.e as i64;
        let mut out = String::new();
        for (j, beta) in self.components.iter().enumerate() {
            if j > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "component {} charge {}", j + 1, beta.charge());
            out.push_str("level");
            for i in 0..self.e {
                let _ = write!(out, " {i}");
            }
            out.push('\n');
            for level in lo..=hi {
                let _ = write!(out, "{level:>5}");
                for i in 0..e {
                    let glyph = if beta.contains(level * e + i) { '●' } else { '○' };
                    let _ = write!(out, " {glyph}");
                }
                out.push('\n');
            }
        }
        Ok(out)
    }

    /// Reads back the output of [`AbacusDisplay::render`].
    pub fn parse(text: &str) -> Result<Self> {
        let mut components = Vec::new();
        let mut e: Option<usize> = None;
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty()).peekable();
        while let Some(header) = lines.next() {
            let rest = header
                .strip_prefix("component")
                .ok_or_else(|| Error::Parse(format!("expected a component header, got {header:?}")))?;
            let declared: Option<i64> = rest
                .split_once("charge")
                .map(|(_, c)| c.trim().parse().map_err(|_| Error::Parse(format!("bad charge in {header:?}"))))
                .transpose()?;
            let labels = lines
                .next()
                .and_then(|l| l.strip_prefix("level"))
                .ok_or_else(|| Error::Parse("missing runner header".into()))?;
            let runners = labels.split_whitespace().count();
            match e {
                None => e = Some(runners),
                Some(prev) if prev != runners => {
                    return Err(Error::Parse("components disagree on the number of runners".into()))
                }
                _ => {}
            }
            let ei = runners as i64;
            let mut rows: Vec<(i64, Vec<bool>)> = Vec::new();
            while let Some(line) = lines.peek() {
                if line.starts_with("component") {
                    break;
                }
                let line = lines.next().unwrap();
                let mut cells = line.split_whitespace();
                let level: i64 = cells
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad level in {line:?}")))?;
                let row: Vec<bool> = cells
                    .map(|c| match c {
                        "●" => Ok(true),
                        "○" => Ok(false),
                        other => Err(Error::Parse(format!("unknown glyph {other:?}"))),
                    })
                    .collect::<Result<_>>()?;
                if row.len() != runners {
                    return Err(Error::Parse(format!("row {line:?} has the wrong width")));
                }
                if let Some((prev, _)) = rows.last() {
                    if *prev + 1 != level {
                        return Err(Error::Parse("levels must be consecutive".into()));
                    }
                }
                rows.push((level, row));
            }
            let first = rows.first().ok_or_else(|| Error::Parse("component without rows".into()))?.0;
            let cutoff = first * ei;
            let mut beads = Vec::new();
            for (level, row) in &rows {
                for (i, &bead) in row.iter().enumerate() {
                    if bead {
                        beads.push(level * ei + i as i64);
                    }
                }
            }
            components.push(BetaSet::from_encoding(declared, cutoff, &beads)?);
        }
        let e = e.ok_or_else(|| Error::Parse("empty abacus".into()))?;
        AbacusDisplay::from_beta_sets(e, components)
    }
}

/// `ℓ_{ij}` for a multipartition and multicharge.
pub fn lowest_level(lam: &Multipartition, a: &Multicharge, i: usize, j: usize) -> Result<i64> {
    if i >= a.e() {
        return Err(Error::IndexOutOfRange { what: "runner", index: i, bound: a.e() });
    }
    Ok(AbacusDisplay::new(lam, a)?.lowest_level(i, j))
}

/// A multicore, stored as the level of the lowest bead on each runner of each
/// component. The charge of component `j` is `Σ_i (ℓ_{ij} + 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multicore {
    e: usize,
    levels: Vec<Vec<i64>>,
}

/// The s-move `s_{il}^{jk}`: on component `j` a bead goes from runner `i` to
/// runner `l`, on component `k` one goes back from `l` to `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SMove {
    pub i: usize,
    pub l: usize,
    pub j: usize,
    pub k: usize,
}

impl SMove {
    /// The move undoing this one.
    pub fn inverse(self) -> SMove {
        SMove { i: self.l, l: self.i, j: self.j, k: self.k }
    }
}

impl Multicore {
    pub fn new(lam: &Multipartition, a: &Multicharge) -> Result<Self> {
        Multicore::from_display(&AbacusDisplay::new(lam, a)?)
    }

    pub fn from_display(display: &AbacusDisplay) -> Result<Self> {
        if !display.is_multicore() {
            return Err(Error::NotMulticore);
        }
        let e = display.e();
        let levels = display
            .components()
            .iter()
            .map(|b| (0..e).map(|i| b.lowest_level(e, i)).collect())
            .collect();
        Ok(Multicore { e, levels })
    }

    /// Builds a multicore from per-component level vectors.
    pub fn from_levels(e: usize, levels: Vec<Vec<i64>>) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidModulus(e));
        }
        if levels.is_empty() {
            return Err(Error::EmptyMultipartition);
        }
        if levels.iter().any(|l| l.len() != e) {
            return Err(Error::Parse(format!("every component needs {e} levels")));
        }
        Ok(Multicore { e, levels })
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn r(&self) -> usize {
        self.levels.len()
    }

    /// `ℓ_{ij}`, runner `i` in `0..e`, component `j` 1-based.
    pub fn level(&self, i: usize, j: usize) -> i64 {
        self.levels[j - 1][i]
    }

    pub fn levels(&self) -> &[Vec<i64>] {
        &self.levels
    }

    pub fn multicharge(&self) -> Multicharge {
        let charge = self.levels.iter().map(|l| l.iter().map(|x| x + 1).sum()).collect();
        Multicharge::new(self.e, charge).expect("e >= 2 and r >= 1")
    }

    fn beta_set(&self, j: usize) -> BetaSet {
        let e = self.e as i64;
        let tops: Vec<i64> = self.levels[j - 1]
            .iter()
            .enumerate()
            .map(|(i, &l)| l * e + i as i64)
            .collect();
        let low = *tops.iter().min().unwrap();
        let high = *tops.iter().max().unwrap();
        let beads: Vec<i64> = ((low + 1)..=high)
            .rev()
            .filter(|&x| x <= tops[x.rem_euclid(e) as usize])
            .collect();
        let charge = self.levels[j - 1].iter().map(|x| x + 1).sum();
        BetaSet::normalized(charge, low + 1, beads)
    }

    pub fn display(&self) -> AbacusDisplay {
        AbacusDisplay {
            e: self.e,
            components: (1..=self.r()).map(|j| self.beta_set(j)).collect(),
        }
    }

    pub fn multipartition(&self) -> Multipartition {
        self.display().multipartition()
    }

    /// `γ_i^{jk} = ℓ_{ij} − ℓ_{ik}`.
    pub fn gamma(&self, i: usize, j: usize, k: usize) -> i64 {
        self.level(i, j) - self.level(i, k)
    }

    /// `γ_{il}^{jk} = γ_i^{jk} − γ_l^{jk}`.
    pub fn gamma_diff(&self, i: usize, l: usize, j: usize, k: usize) -> i64 {
        self.gamma(i, j, k) - self.gamma(l, j, k)
    }

    /// `δ_i^j` read off the levels: `ℓ_{ij} − ℓ_{i−1,j}`, with an extra `−1`
    /// on runner 0 where the previous runner is one level up.
    pub fn delta(&self, i: usize, j: usize) -> i64 {
        if i == 0 {
            self.level(0, j) - self.level(self.e - 1, j) - 1
        } else {
            self.level(i, j) - self.level(i - 1, j)
        }
    }

    /// `d_i = min_j δ_i^j`.
    pub fn d_min(&self, i: usize) -> i64 {
        (1..=self.r()).map(|j| self.delta(i, j)).min().unwrap()
    }

    /// Applies `s_{il}^{jk}`: the lowest bead of runner `i` on component `j`
    /// goes to the top free slot of runner `l`, and symmetrically on `k`.
    pub fn s_move(&self, mv: SMove) -> Multicore {
        let mut levels = self.levels.clone();
        levels[mv.j - 1][mv.i] -= 1;
        levels[mv.j - 1][mv.l] += 1;
        levels[mv.k - 1][mv.l] -= 1;
        levels[mv.k - 1][mv.i] += 1;
        Multicore { e: self.e, levels }
    }

    /// All moves with `i ≠ l` and `j ≠ k`.
    pub fn moves(&self) -> impl Iterator<Item = SMove> {
        let (e, r) = (self.e, self.r());
        (0..e).flat_map(move |i| {
            (0..e).filter(move |&l| l != i).flat_map(move |l| {
                (1..=r).flat_map(move |j| {
                    (1..=r).filter(move |&k| k != j).map(move |k| SMove { i, l, j, k })
                })
            })
        })
    }

    /// Maximum of `|γ_{il}^{jk}|` over all indices.
    pub fn max_gamma_diff(&self) -> i64 {
        self.moves().map(|m| self.gamma_diff(m.i, m.l, m.j, m.k).abs()).max().unwrap_or(0)
    }
}

/// Slides all beads up: returns the multicore and the number of `e`-rim hooks
/// removed.
pub fn to_multicore(lam: &Multipartition, a: &Multicharge) -> Result<(Multicore, usize)> {
    let display = AbacusDisplay::new(lam, a)?;
    let mut hooks = 0;
    let mut comps = Vec::with_capacity(display.r());
    for beta in display.components() {
        let (core, h) = beta.slide_up(a.e());
        hooks += h;
        comps.push(core);
    }
    let core = Multicore::from_display(&AbacusDisplay { e: a.e(), components: comps })?;
    Ok((core, hooks))
}

/// `γ_i^{jk}` of a multicore given as a multipartition.
pub fn gamma(lam: &Multipartition, a: &Multicharge, i: usize, j: usize, k: usize) -> Result<i64> {
    let m = Multicore::new(lam, a)?;
    check_indices(&m, &[i], &[j, k])?;
    Ok(m.gamma(i, j, k))
}

/// `γ_{il}^{jk}` of a multicore given as a multipartition.
pub fn gamma_diff(
    lam: &Multipartition,
    a: &Multicharge,
    i: usize,
    l: usize,
    j: usize,
    k: usize,
) -> Result<i64> {
    let m = Multicore::new(lam, a)?;
    check_indices(&m, &[i, l], &[j, k])?;
    Ok(m.gamma_diff(i, l, j, k))
}

fn check_indices(m: &Multicore, runners: &[usize], comps: &[usize]) -> Result<()> {
    for &i in runners {
        if i >= m.e() {
            return Err(Error::IndexOutOfRange { what: "runner", index: i, bound: m.e() });
        }
    }
    for &j in comps {
        if j == 0 || j > m.r() {
            return Err(Error::IndexOutOfRange { what: "component", index: j, bound: m.r() + 1 });
        }
    }
    Ok(())
}

/// `s_{il}^{jk}` applied to a multicore given as a multipartition; the result
/// keeps the multicharge.
pub fn s_move(lam: &Multipartition, a: &Multicharge, mv: SMove) -> Result<Multipartition> {
    let m = Multicore::new(lam, a)?;
    check_indices(&m, &[mv.i, mv.l], &[mv.j, mv.k])?;
    Ok(m.s_move(mv).multipartition())
}

/// `Φ_i(λ)`: every β-number `x` replaced by `φ_i(x)`.
pub fn phi(lam: &Multipartition, a: &Multicharge, i: usize) -> Result<Multipartition> {
    if i >= a.e() {
        return Err(Error::IndexOutOfRange { what: "residue", index: i, bound: a.e() });
    }
    let display = AbacusDisplay::new(lam, a)?;
    let comps = display
        .components()
        .iter()
        .map(|b| b.phi(a.e(), i).partition())
        .collect();
    Multipartition::new(comps)
}

/// Looks for a bead on runner `i − 1` whose right-hand neighbour (on runner
/// `i`) is empty. For `i = 0` the neighbour is one level down, and the
/// position one further level below that must be empty as well.
pub fn has_forbidden_config(lam: &Multipartition, a: &Multicharge, i: usize) -> Result<bool> {
    if i >= a.e() {
        return Err(Error::IndexOutOfRange { what: "residue", index: i, bound: a.e() });
    }
    let e = a.e() as i64;
    let prev = (i as i64 - 1).rem_euclid(e);
    let display = AbacusDisplay::new(lam, a)?;
    Ok(display.components().iter().any(|beta| {
        let candidates = beta.beads_above_cutoff().iter().copied().chain(core::iter::once(beta.cutoff() - 1));
        candidates.filter(|b| b.rem_euclid(e) == prev).any(|b| {
            let open = !beta.contains(b + 1);
            if i == 0 {
                open && !beta.contains(b + e + 1)
            } else {
                open
            }
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::multipartition::{multipartitions_of, partitions_of};

    fn mp(s: &str) -> Multipartition {
        s.parse().unwrap()
    }

    fn window(beta: &BetaSet, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).rev().filter(|&x| beta.contains(x)).collect()
    }

    #[test]
    fn beta_sets_of_worked_example() {
        let b1 = beta_set(&"(1)".parse().unwrap(), -1);
        assert_eq!(window(&b1, -8, 5), vec![-1, -3, -4, -5, -6, -7, -8]);
        let b2 = beta_set(&Partition::empty(), 0);
        assert_eq!(window(&b2, -8, 5), vec![-1, -2, -3, -4, -5, -6, -7, -8]);
        let b3 = beta_set(&"(1,1)".parse().unwrap(), 1);
        assert_eq!(window(&b3, -8, 5), vec![1, 0, -2, -3, -4, -5, -6, -7, -8]);
    }

    #[test]
    fn partition_of_inverts_beta_set() {
        let empty = BetaSet::from_encoding(Some(0), 0, &[]).unwrap();
        assert_eq!(partition_of(&empty), (Partition::empty(), 0));
        let b = BetaSet::from_encoding(Some(1), -1, &[1, 0]).unwrap();
        assert_eq!(partition_of(&b), ("(1,1)".parse().unwrap(), 1));
        for n in 0..=10 {
            for lam in partitions_of(n) {
                for a in -6..=6 {
                    assert_eq!(partition_of(&beta_set(&lam, a)), (lam.clone(), a));
                }
            }
        }
    }

    #[test]
    fn malformed_encodings_are_rejected() {
        assert!(BetaSet::from_encoding(None, 0, &[-3]).is_err());
        assert!(BetaSet::from_encoding(None, 0, &[2, 2]).is_err());
        assert!(BetaSet::from_encoding(Some(5), 0, &[2]).is_err());
        // a non-normal encoding is accepted and normalised
        let b = BetaSet::from_encoding(None, -3, &[-3, -2, 4]).unwrap();
        assert_eq!(b, BetaSet::from_encoding(None, -1, &[4]).unwrap());
    }

    #[test]
    fn lowest_levels() {
        let a = Multicharge::new(4, vec![-1, 0, 1]).unwrap();
        let lam = mp("((1),(),(1,1))");
        let levels: Vec<i64> = (0..4).map(|i| lowest_level(&lam, &a, i, 3).unwrap()).collect();
        assert_eq!(levels, vec![0, 0, -1, -2]);

        let a = Multicharge::new(5, vec![0, -2, 1]).unwrap();
        let lam = mp("((4,3,1),(4,2,2,2),(3,2))");
        let levels: Vec<i64> = (0..5).map(|i| lowest_level(&lam, &a, i, 1).unwrap()).collect();
        assert_eq!(levels, vec![-1, 0, -2, 0, -2]);

        for e in 2..=5 {
            let a = Multicharge::new(e, vec![0]).unwrap();
            for i in 0..e {
                assert_eq!(lowest_level(&Multipartition::empty(1), &a, i, 1).unwrap(), -1);
            }
        }
    }

    #[test]
    fn core_iff_no_bead_below_gap() {
        // oracle: no hook length divisible by e
        fn hook_core(lam: &Partition, e: usize) -> bool {
            let conj = lam.conjugate();
            lam.parts().iter().enumerate().all(|(b, &p)| {
                (1..=p).all(|c| {
                    let hook = p - c + conj.part(c) - (b + 1) + 1;
                    !hook.is_multiple_of(e)
                })
            })
        }
        for e in 2..=4 {
            for n in 0..=9 {
                for lam in partitions_of(n) {
                    assert_eq!(beta_set(&lam, 0).is_core(e), hook_core(&lam, e), "{lam} e={e}");
                }
            }
        }
    }

    #[test]
    fn adding_one_to_a_bead_adds_a_node_of_the_next_residue() {
        for e in 2..=4 {
            let a = Multicharge::new(e, alloc::vec![1]).unwrap();
            for n in 0..=5 {
                for lam in partitions_of(n) {
                    let m = Multipartition::new(alloc::vec![lam.clone()]).unwrap();
                    let beta = beta_set(&lam, 1);
                    for x in beta.largest(lam.len() + 1) {
                        if beta.contains(x + 1) {
                            continue;
                        }
                        let moved = beta.map_local(1, |y| if y == x { x + 1 } else if y == x + 1 { x } else { y });
                        let bigger = Multipartition::new(alloc::vec![moved.partition()]).unwrap();
                        assert_eq!(bigger.size(), n + 1);
                        let added: Vec<_> = bigger.nodes().into_iter().filter(|y| !m.contains(*y)).collect();
                        assert_eq!(added.len(), 1);
                        assert_eq!(a.residue(added[0]), a.reduce(x + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn to_multicore_examples() {
        let a = Multicharge::new(2, vec![0]).unwrap();
        let (m, hooks) = to_multicore(&mp("((2))"), &a).unwrap();
        assert_eq!(m.multipartition(), Multipartition::empty(1));
        assert_eq!(hooks, 1);
        let a = Multicharge::new(3, vec![0, 2]).unwrap();
        let core = mp("((2),(1,1))");
        assert!(AbacusDisplay::new(&core, &a).unwrap().is_multicore());
        let (m, hooks) = to_multicore(&core, &a).unwrap();
        assert_eq!((m.multipartition(), hooks), (core, 0));
    }

    #[test]
    fn slide_up_counts_nodes() {
        for e in 2..=4 {
            for n in 0..=8 {
                for lam in partitions_of(n) {
                    for a in [-3, 0, 2] {
                        let (core, hooks) = beta_set(&lam, a).slide_up(e);
                        assert!(core.is_core(e));
                        assert_eq!(core.charge(), a);
                        assert_eq!(core.partition().size() + hooks * e, n);
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_requires_a_multicore() {
        let a = Multicharge::new(2, vec![0, 0]).unwrap();
        assert_eq!(gamma(&mp("((2),())"), &a, 0, 1, 2), Err(Error::NotMulticore));
        assert_eq!(gamma(&mp("((1),())"), &a, 1, 1, 1), Ok(0));
    }

    #[test]
    fn gamma_diff_is_invariant_under_charge_shifts() {
        for e in 2..=3 {
            for n in 0..=6 {
                for lam in multipartitions_of(n, 2) {
                    let a = Multicharge::new(e, alloc::vec![0, 1]).unwrap();
                    let Ok(m) = Multicore::new(&lam, &a) else { continue };
                    let shifted = Multicore::new(&lam, &a.with_entry(2, 1 + e as i64)).unwrap();
                    for mv in m.moves() {
                        assert_eq!(
                            m.gamma_diff(mv.i, mv.l, mv.j, mv.k),
                            shifted.gamma_diff(mv.i, mv.l, mv.j, mv.k)
                        );
                        assert_eq!(
                            m.gamma_diff(mv.i, mv.l, mv.j, mv.k),
                            -m.gamma_diff(mv.l, mv.i, mv.j, mv.k)
                        );
                        assert_eq!(
                            m.gamma_diff(mv.i, mv.l, mv.j, mv.k),
                            -m.gamma_diff(mv.i, mv.l, mv.k, mv.j)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn multicore_round_trips_through_levels() {
        for e in 2..=4 {
            for n in 0..=6 {
                for lam in multipartitions_of(n, 2) {
                    let a = Multicharge::new(e, alloc::vec![1, -2]).unwrap();
                    let Ok(m) = Multicore::new(&lam, &a) else { continue };
                    assert_eq!(m.multipartition(), lam);
                    assert_eq!(m.multicharge(), a);
                }
            }
        }
    }

    #[test]
    fn s_move_symmetries() {
        let a = Multicharge::new(3, alloc::vec![0, 1]).unwrap();
        for n in 0..=6 {
            for lam in multipartitions_of(n, 2) {
                let Ok(m) = Multicore::new(&lam, &a) else { continue };
                for mv in m.moves() {
                    let moved = m.s_move(mv);
                    assert_eq!(moved.s_move(mv.inverse()), m);
                    assert_eq!(moved, m.s_move(SMove { i: mv.l, l: mv.i, j: mv.k, k: mv.j }));
                    assert_eq!(moved.multicharge(), a);
                }
            }
        }
    }

    #[test]
    fn phi_on_empty() {
        let a = Multicharge::new(4, alloc::vec![0]).unwrap();
        assert_eq!(phi(&Multipartition::empty(1), &a, 1).unwrap(), Multipartition::empty(1));
    }

    /// The single-partition example drawn with `e = 3`: rows from level -1
    /// to 4 before and after `φ_1` and `φ_0`.
    #[test]
    fn phi_reproduces_drawn_abaci() {
        let grid = |beta: &BetaSet| -> Vec<String> {
            (-1..=4)
                .map(|level| (0..3).map(|i| if beta.contains(level * 3 + i) { '●' } else { '○' }).collect())
                .collect()
        };
        let before = BetaSet::from_encoding(None, 0, &[1, 3, 5, 7, 9, 10, 13]).unwrap();
        assert_eq!(grid(&before), ["●●●", "○●○", "●○●", "○●○", "●●○", "○●○"]);
        assert_eq!(grid(&before.phi(3, 1)), ["●●●", "●○○", "○●●", "●○○", "●●○", "●○○"]);
        assert_eq!(grid(&before.phi(3, 0)), ["●●○", "●●●", "○○○", "●●●", "○●○", "○●○"]);
    }

    #[test]
    fn phi_swaps_i_nodes() {
        // oracle: remove every removable i-node and add every addable i-node
        for e in 2..=4 {
            for n in 0..=6 {
                for lam in multipartitions_of(n, 2) {
                    let a = Multicharge::new(e, alloc::vec![0, 1]).unwrap();
                    for i in 0..e {
                        let mut comps = Vec::new();
                        for (j, p) in lam.components().iter().enumerate() {
                            let mut parts: Vec<usize> = (1..=p.len() + 1).map(|b| p.part(b)).collect();
                            for b in 1..=p.len() + 1 {
                                let rem = p.removable_rows().any(|x| x == b)
                                    && a.residue(crate::Node::new(b, p.part(b), j + 1)) == i;
                                let add = p.addable_rows().any(|x| x == b)
                                    && a.residue(crate::Node::new(b, p.part(b) + 1, j + 1)) == i;
                                if rem {
                                    parts[b - 1] -= 1;
                                }
                                if add {
                                    parts[b - 1] += 1;
                                }
                            }
                            comps.push(Partition::new(parts).unwrap());
                        }
                        let expected = Multipartition::new(comps).unwrap();
                        assert_eq!(phi(&lam, &a, i).unwrap(), expected, "{lam} i={i} e={e}");
                    }
                }
            }
        }
    }

    #[test]
    fn forbidden_config_examples() {
        let a = Multicharge::new(2, alloc::vec![0]).unwrap();
        assert!(has_forbidden_config(&mp("((1))"), &a, 1).unwrap());
        for e in 2..=4 {
            let a = Multicharge::new(e, alloc::vec![0, 1]).unwrap();
            for i in 0..e {
                assert_eq!(has_forbidden_config(&Multipartition::empty(2), &a, i).unwrap(), i <= 1, "e {e} i {i}");
            }
        }
    }

    #[test]
    fn forbidden_config_for_nonzero_i_is_an_addable_i_node() {
        for e in 2..=4 {
            for n in 0..=6 {
                for lam in multipartitions_of(n, 2) {
                    let a = Multicharge::new(e, alloc::vec![0, 1]).unwrap();
                    for i in 1..e {
                        let addable = lam.addable_nodes().into_iter().any(|x| a.residue(x) == i);
                        assert_eq!(has_forbidden_config(&lam, &a, i).unwrap(), addable);
                    }
                }
            }
        }
    }

    #[test]
    fn render_default_window_of_worked_example() {
        let a = Multicharge::new(4, alloc::vec![-1, 0, 1]).unwrap();
        let display = AbacusDisplay::new(&mp("((1),(),(1,1))"), &a).unwrap();
        assert_eq!(display.default_window(), (-2, 1));
        let text = display.render(None).unwrap();
        let rows: Vec<String> = text
            .lines()
            .filter(|l| l.contains('●') || l.contains('○'))
            .map(|l| l.split_whitespace().skip(1).collect())
            .collect();
        assert_eq!(
            rows,
            [
                "●●●●", "●●○●", "○○○○", "○○○○", // component 1
                "●●●●", "●●●●", "○○○○", "○○○○", // component 2
                "●●●●", "●●●○", "●●○○", "○○○○", // component 3
            ]
        );
        assert!(display.render(Some((-1, 1))).is_ok());
        assert!(display.render(Some((0, 1))).is_err());
        assert!(display.render(Some((-2, -1))).is_err());
    }

    #[test]
    fn render_empty() {
        let a = Multicharge::new(3, alloc::vec![0]).unwrap();
        let text = AbacusDisplay::new(&Multipartition::empty(1), &a).unwrap().render(None).unwrap();
        assert_eq!(text, "component 1 charge 0\nlevel 0 1 2\n   -1 ● ● ●\n    0 ○ ○ ○\n");
    }

    #[test]
    fn has_forbidden_config_rejects_bad_residue() {
        let a = Multicharge::new(3, alloc::vec![0]).unwrap();
        assert!(has_forbidden_config(&Multipartition::empty(1), &a, 3).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn partition() -> impl Strategy<Value = Partition> {
            proptest::collection::vec(0usize..7, 0..6).prop_map(|mut v| {
                v.sort_unstable_by(|x, y| y.cmp(x));
                Partition::new(v).unwrap()
            })
        }

        proptest! {
            #[test]
            fn render_parse_round_trip(
                parts in proptest::collection::vec(partition(), 1..4),
                e in 2usize..6,
                charges in proptest::collection::vec(-6i64..6, 3),
                pad in 0i64..3,
            ) {
                let r = parts.len();
                let lam = Multipartition::new(parts).unwrap();
                let a = Multicharge::new(e, charges[..r].to_vec()).unwrap();
                let display = AbacusDisplay::new(&lam, &a).unwrap();
                let (lo, hi) = display.default_window();
                let text = display.render(Some((lo - pad, hi + pad))).unwrap();
                let back = AbacusDisplay::parse(&text).unwrap();
                prop_assert_eq!(back.multipartition(), lam);
                prop_assert_eq!(back.multicharge(), a);
            }

            #[test]
            fn phi_acts_bead_by_bead(
                p in partition(),
                e in 2usize..6,
                a in -6i64..6,
                i in 0usize..6,
            ) {
                let i = i % e;
                let beta = beta_set(&p, a);
                let image = beta.phi(e, i);
                let lo = beta.cutoff() - 2 * e as i64;
                let hi = beta.max_bead() + 2;
                for x in lo..=hi {
                    prop_assert_eq!(beta.contains(x), image.contains(scopes_phi(x, e as i64, i as i64)));
                }
                prop_assert_eq!(image.phi(e, i), beta);
            }
        }
    }
}
