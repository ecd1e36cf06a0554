//! Partitions, multipartitions, their Young diagrams and residues, and the
//! dominance and lexicographic orders.
//!
//! Nodes are addressed the way the diagrams are drawn: row `b` and column `c`
//! start at 1, and components are numbered `1..=r`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A partition stored as its strictly positive parts, non-increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition, dropping trailing zeros. Fails on an increase.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(alloc::format!(
                "parts {parts:?} are not non-increasing"
            )));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub(crate) fn from_sorted(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.iter().all(|&p| p > 0));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of non-zero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// The part in row `b` (1-based); zero below the last row.
    pub fn part(&self, b: usize) -> usize {
        if b == 0 {
            return usize::MAX;
        }
        self.0.get(b - 1).copied().unwrap_or(0)
    }

    /// Rows `b` holding a removable node `(b, λ_b)`.
    pub fn removable_rows(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.len()).filter(move |&b| self.part(b) > self.part(b + 1))
    }

    /// Rows `b` holding an addable node `(b, λ_b + 1)`.
    pub fn addable_rows(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.len() + 1).filter(move |&b| self.part(b - 1) > self.part(b))
    }

    /// `e`-restricted: consecutive parts differ by less than `e`.
    pub fn is_restricted(&self, e: usize) -> bool {
        (1..=self.len()).all(|b| self.part(b) - self.part(b + 1) < e)
    }

    /// The conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        let parts = (1..=width)
            .map(|c| self.0.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, p) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Parses `4,4,2,1`, `(4,4,2,1)`, `(4^2,2,1)`, `()` or `∅`.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s)
            .trim();
        if inner.is_empty() || inner == "∅" || inner == "0" {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        for token in inner.split(',') {
            let token = token.trim();
            let (value, mult) = match token.split_once('^') {
                Some((v, m)) => (v.trim(), m.trim()),
                None => (token, "1"),
            };
            let value: usize = value
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("bad part {token:?}")))?;
            let mult: usize = mult
                .parse()
                .map_err(|_| Error::Parse(alloc::format!("bad multiplicity in {token:?}")))?;
            parts.extend(core::iter::repeat_n(value, mult));
        }
        Partition::new(parts)
    }
}

/// An ordered `r`-tuple of partitions, `r ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multipartition(Vec<Partition>);

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyMultipartition);
        }
        Ok(Multipartition(components))
    }

    /// Convenience constructor from raw part lists.
    pub fn from_parts<P: AsRef<[usize]>>(components: &[P]) -> Result<Self> {
        let comps = components
            .iter()
            .map(|p| Partition::new(p.as_ref().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Multipartition::new(comps)
    }

    /// The multipartition of 0 with `r` components.
    pub fn empty(r: usize) -> Self {
        assert!(r >= 1, "r must be positive");
        Multipartition(vec![Partition::empty(); r])
    }

    pub fn components(&self) -> &[Partition] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Partition> {
        self.0
    }

    /// Component `j`, 1-based.
    pub fn component(&self, j: usize) -> &Partition {
        &self.0[j - 1]
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(Partition::size).sum()
    }

    /// All nodes, component by component, row-major inside each component.
    pub fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::with_capacity(self.size());
        for (j, lam) in self.0.iter().enumerate() {
            for (b, &part) in lam.parts().iter().enumerate() {
                for c in 1..=part {
                    out.push(Node::new(b + 1, c, j + 1));
                }
            }
        }
        out
    }

    pub fn contains(&self, x: Node) -> bool {
        x.comp >= 1 && x.comp <= self.r() && x.row >= 1 && x.col >= 1 && x.col <= self.component(x.comp).part(x.row)
    }

    pub fn removable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (j, lam) in self.0.iter().enumerate() {
            out.extend(lam.removable_rows().map(|b| Node::new(b, lam.part(b), j + 1)));
        }
        out
    }

    pub fn addable_nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (j, lam) in self.0.iter().enumerate() {
            out.extend(lam.addable_rows().map(|b| Node::new(b, lam.part(b) + 1, j + 1)));
        }
        out
    }

    pub fn is_removable(&self, x: Node) -> bool {
        self.contains(x)
            && x.col == self.component(x.comp).part(x.row)
            && self.component(x.comp).part(x.row + 1) < x.col
    }

    pub fn is_addable(&self, x: Node) -> bool {
        x.comp >= 1
            && x.comp <= self.r()
            && x.row >= 1
            && x.col == self.component(x.comp).part(x.row) + 1
            && self.component(x.comp).part(x.row - 1) >= x.col
    }

    /// The multipartition with node `x` removed.
    pub fn remove_node(&self, x: Node) -> Result<Multipartition> {
        if !self.is_removable(x) {
            return Err(Error::BadNode(alloc::format!("{x} is not removable from {self}")));
        }
        let mut comps = self.0.clone();
        let parts = &mut comps[x.comp - 1].0;
        parts[x.row - 1] -= 1;
        if parts[x.row - 1] == 0 {
            parts.pop();
        }
        Ok(Multipartition(comps))
    }

    /// The multipartition with node `x` added.
    pub fn add_node(&self, x: Node) -> Result<Multipartition> {
        if !self.is_addable(x) {
            return Err(Error::BadNode(alloc::format!("{x} is not addable to {self}")));
        }
        let mut comps = self.0.clone();
        let parts = &mut comps[x.comp - 1].0;
        if x.row > parts.len() {
            parts.push(1);
        } else {
            parts[x.row - 1] += 1;
        }
        Ok(Multipartition(comps))
    }

    /// The residue multiset, as a sorted list.
    pub fn residue_multiset(&self, a: &Multicharge) -> Result<Vec<usize>> {
        a.check(self)?;
        let mut res: Vec<usize> = self.nodes().into_iter().map(|x| a.residue(x)).collect();
        res.sort_unstable();
        Ok(res)
    }

    /// Dominance `self ⊵ other`: for every `j` and `i`, the nodes in
    /// components before `j` plus the first `i` rows of component `j` are at
    /// least as many in `self` as in `other`.
    pub fn dominates(&self, other: &Multipartition) -> Result<bool> {
        if self.size() != other.size() || self.r() != other.r() {
            return Err(Error::ShapeMismatch {
                left: (self.size(), self.r()),
                right: (other.size(), other.r()),
            });
        }
        let (mut before_l, mut before_r) = (0usize, 0usize);
        for (lam, mu) in self.0.iter().zip(&other.0) {
            let rows = lam.len().max(mu.len());
            let (mut sl, mut sr) = (before_l, before_r);
            for b in 1..=rows {
                sl += lam.part(b);
                sr += mu.part(b);
                if sl < sr {
                    return Ok(false);
                }
            }
            before_l += lam.size();
            before_r += mu.size();
        }
        Ok(true)
    }

    /// The lexicographic order: the first differing component, then the first
    /// differing part, decides.
    pub fn lex_cmp(&self, other: &Multipartition) -> Ordering {
        for (lam, mu) in self.0.iter().zip(&other.0) {
            let rows = lam.len().max(mu.len());
            for b in 1..=rows {
                match lam.part(b).cmp(&mu.part(b)) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
        }
        self.r().cmp(&other.r())
    }
}

impl PartialOrd for Multipartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Multipartition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(other)
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, lam) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{lam}")?;
        }
        f.write_str(")")
    }
}

/// Parses `((1,1),(2),(2,1))` or `(1^2|2|2,1)`.
impl FromStr for Multipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let inner = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(alloc::format!("expected parentheses around {s:?}")))?;
        if inner.contains('|') {
            let comps = inner.split('|').map(Partition::from_str).collect::<Result<Vec<_>>>()?;
            return Multipartition::new(comps);
        }
        let mut comps = Vec::new();
        let mut depth = 0usize;
        let mut current = String::new();
        for ch in inner.chars() {
            match ch {
                '(' => {
                    depth += 1;
                    current.push(ch);
                }
                ')' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::Parse(alloc::format!("unbalanced {s:?}")))?;
                    current.push(ch);
                }
                ',' if depth == 0 => {
                    comps.push(current.parse::<Partition>()?);
                    current.clear();
                }
                '∅' if depth == 0 => current.push_str("()"),
                c if c.is_whitespace() => {}
                c => current.push(c),
            }
        }
        if depth != 0 {
            return Err(Error::Parse(alloc::format!("unbalanced {s:?}")));
        }
        comps.push(current.parse::<Partition>()?);
        Multipartition::new(comps)
    }
}

/// A node `(b, c, j)`: row, column, component, all 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub row: usize,
    pub col: usize,
    pub comp: usize,
}

impl Node {
    pub const fn new(row: usize, col: usize, comp: usize) -> Self {
        Node { row, col, comp }
    }

    /// `self` is above `other` when it lies in an earlier component, or in
    /// the same component and a higher row.
    pub fn is_above(&self, other: &Node) -> bool {
        self.comp < other.comp || (self.comp == other.comp && self.row < other.row)
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.comp)
    }
}

/// Free-function form of [`Node::is_above`].
pub fn node_above(x: &Node, y: &Node) -> bool {
    x.is_above(y)
}

/// A multicharge `(a_1, …, a_r)` together with the quantum characteristic `e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multicharge {
    e: usize,
    charge: Vec<i64>,
}

impl Multicharge {
    pub fn new(e: usize, charge: Vec<i64>) -> Result<Self> {
        if e < 2 {
            return Err(Error::InvalidModulus(e));
        }
        if charge.is_empty() {
            return Err(Error::EmptyMultipartition);
        }
        Ok(Multicharge { e, charge })
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn r(&self) -> usize {
        self.charge.len()
    }

    pub fn charge(&self) -> &[i64] {
        &self.charge
    }

    /// `a_j` for the 1-based component `j`.
    pub fn a(&self, j: usize) -> i64 {
        self.charge[j - 1]
    }

    /// `a_j mod e` in `0..e`.
    pub fn residue_class(&self, j: usize) -> usize {
        self.reduce(self.a(j))
    }

    /// Reduces any integer into `0..e`.
    pub fn reduce(&self, x: i64) -> usize {
        x.rem_euclid(self.e as i64) as usize
    }

    /// `(a_j + c − b) mod e`.
    pub fn residue(&self, x: Node) -> usize {
        self.reduce(self.a(x.comp) + x.col as i64 - x.row as i64)
    }

    /// The same multicharge with `a_j` replaced.
    pub fn with_entry(&self, j: usize, value: i64) -> Multicharge {
        let mut charge = self.charge.clone();
        charge[j - 1] = value;
        Multicharge { e: self.e, charge }
    }

    /// Errors unless `lam` has exactly `r` components.
    pub fn check(&self, lam: &Multipartition) -> Result<()> {
        if lam.r() != self.r() {
            return Err(Error::ChargeLength { expected: lam.r(), found: self.r() });
        }
        Ok(())
    }
}

impl fmt::Display for Multicharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e={} a=(", self.e)?;
        for (idx, a) in self.charge.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Free-function form of [`Multicharge::residue`].
pub fn residue(x: Node, a: &Multicharge) -> usize {
    a.residue(x)
}

/// All partitions of `n`, in lexicographically decreasing order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition::from_sorted(cur.clone()));
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All `r`-multipartitions of `n`, in lexicographically decreasing order.
pub fn multipartitions_of(n: usize, r: usize) -> Vec<Multipartition> {
    assert!(r >= 1, "r must be positive");
    let by_size: Vec<Vec<Partition>> = (0..=n).map(partitions_of).collect();
    let mut out = Vec::new();
    let mut cur: Vec<Partition> = Vec::with_capacity(r);
    fn rec(
        remaining: usize,
        left: usize,
        by_size: &[Vec<Partition>],
        cur: &mut Vec<Partition>,
        out: &mut Vec<Multipartition>,
    ) {
        if left == 1 {
            for lam in &by_size[remaining] {
                cur.push(lam.clone());
                out.push(Multipartition(cur.clone()));
                cur.pop();
            }
            return;
        }
        for k in (0..=remaining).rev() {
            for lam in &by_size[k] {
                cur.push(lam.clone());
                rec(remaining - k, left - 1, by_size, cur, out);
                cur.pop();
            }
        }
    }
    rec(n, r, &by_size, &mut cur, &mut out);
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}
