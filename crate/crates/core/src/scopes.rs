//! The Scopes map `Φ_i` on blocks, its order and Kleshchev preservation, and
//! certificates bundling every check.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::abacus::{has_forbidden_config, phi};
use crate::blocks::{weight, Block, BlockDescriptor};
use crate::branching::{branching_polynomial, check_hypotheses, mahonian_spectrum, LaurentPolynomial};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::multipartition::{Multicharge, Multipartition, Node};

/// The block containing `Φ_i(λ)` for any `λ` in `block`.
pub fn phi_block(block: &Block, i: usize, caps: &Caps) -> Result<Block> {
    let image = phi(block.representative(), block.charge(), i)?;
    Block::containing(&image, block.charge(), caps)
}

/// `(λ, Φ_i(λ))` for every member, lexicographically decreasing in `λ`.
pub fn scopes_pairing(block: &Block, i: usize) -> Result<Vec<(Multipartition, Multipartition)>> {
    block
        .members()
        .iter()
        .map(|lam| Ok((lam.clone(), phi(lam, block.charge(), i)?)))
        .collect()
}

/// Some `λ > μ` in `block` with `Φ_i(λ) ≤ Φ_i(μ)`, if there is one. Every
/// pair is compared.
pub fn find_lex_violation(block: &Block, i: usize) -> Result<Option<(Multipartition, Multipartition)>> {
    let pairs = scopes_pairing(block, i)?;
    for (x, (lam, phi_lam)) in pairs.iter().enumerate() {
        for (mu, phi_mu) in &pairs[x + 1..] {
            debug_assert!(lam > mu);
            if phi_lam <= phi_mu {
                return Ok(Some((lam.clone(), mu.clone())));
            }
        }
    }
    Ok(None)
}

/// Whether `Φ_i` is strictly increasing on `block`. The block must satisfy
/// `w(B) ≤ w(C) + K_i·r`.
pub fn verify_lex_preserved(block: &Block, i: usize) -> Result<bool> {
    let report = crate::blocks::scopes_condition(block.representative(), block.charge(), i)?;
    if !report.holds {
        return Err(Error::Hypothesis(format!(
            "w(B) = {} exceeds w(C) + K_{i}·r = {} + {}·{}",
            report.w_b,
            report.w_c,
            report.k,
            block.charge().r()
        )));
    }
    Ok(find_lex_violation(block, i)?.is_none())
}

/// Signature of `i`-nodes read from the highest node down, with every
/// removable node immediately followed by an addable one cancelled. The
/// surviving removable nodes are returned highest first.
fn normal_removable(lam: &Multipartition, a: &Multicharge, i: usize) -> Vec<Node> {
    let mut signature: Vec<(Node, bool)> = lam
        .removable_nodes()
        .into_iter()
        .map(|x| (x, true))
        .chain(lam.addable_nodes().into_iter().map(|x| (x, false)))
        .filter(|(x, _)| a.residue(*x) == i)
        .collect();
    signature.sort_by_key(|(x, _)| (x.comp, x.row));
    let mut stack: Vec<(Node, bool)> = Vec::new();
    for entry in signature {
        if !entry.1 && stack.last().is_some_and(|top| top.1) {
            stack.pop();
        } else {
            stack.push(entry);
        }
    }
    stack.into_iter().filter(|(_, removable)| *removable).map(|(x, _)| x).collect()
}

/// The good nodes of `λ`, at most one per residue, by increasing residue.
pub fn good_nodes(lam: &Multipartition, a: &Multicharge) -> Result<Vec<Node>> {
    a.check(lam)?;
    Ok((0..a.e()).filter_map(|i| normal_removable(lam, a, i).first().copied()).collect())
}

/// Whether `λ` reduces to the empty multipartition by removing good nodes.
pub fn is_kleshchev(lam: &Multipartition, a: &Multicharge) -> Result<bool> {
    KleshchevOracle::new(a.clone()).is_kleshchev(lam)
}

/// [`is_kleshchev`] with answers remembered across calls for one multicharge.
#[derive(Debug, Clone)]
pub struct KleshchevOracle {
    charge: Multicharge,
    memo: BTreeMap<Multipartition, bool>,
}

impl KleshchevOracle {
    pub fn new(charge: Multicharge) -> Self {
        KleshchevOracle { charge, memo: BTreeMap::new() }
    }

    pub fn is_kleshchev(&mut self, lam: &Multipartition) -> Result<bool> {
        self.charge.check(lam)?;
        Ok(kleshchev_rec(lam, &self.charge, &mut self.memo))
    }
}

fn kleshchev_rec(lam: &Multipartition, a: &Multicharge, memo: &mut BTreeMap<Multipartition, bool>) -> bool {
    if lam.size() == 0 {
        return true;
    }
    if let Some(&known) = memo.get(lam) {
        return known;
    }
    let good = good_nodes(lam, a).expect("charge length checked by caller");
    let result = good.into_iter().any(|x| {
        let smaller = lam.remove_node(x).expect("good nodes are removable");
        kleshchev_rec(&smaller, a, memo)
    });
    memo.insert(lam.clone(), result);
    result
}

/// Whether `λ` and `Φ_i(λ)` are Kleshchev together for every member. Every
/// member must have no addable `i`-node.
pub fn verify_kleshchev_preserved(block: &Block, i: usize) -> Result<bool> {
    let a = block.charge();
    for lam in block.members() {
        if lam.addable_nodes().into_iter().any(|x| a.residue(x) == i) {
            return Err(Error::Hypothesis(format!("{lam} has an addable {i}-node")));
        }
    }
    for (lam, image) in scopes_pairing(block, i)? {
        if is_kleshchev(&lam, a)? != is_kleshchev(&image, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One member of the block and its image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedPair {
    pub source: Multipartition,
    pub image: Multipartition,
    pub source_kleshchev: bool,
    pub image_kleshchev: bool,
}

/// Everything established about `B` and `Φ_i(B)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScopesCertificate {
    pub charge: Multicharge,
    pub i: usize,
    pub block: BlockDescriptor,
    pub image: BlockDescriptor,
    pub delta: i64,
    pub k: i64,
    pub w_b: usize,
    pub w_c: usize,
    pub pairs: Vec<CertifiedPair>,
    pub polynomial: LaurentPolynomial,
    /// Names of the checks that were run, in order; all of them passed.
    pub checks: Vec<&'static str>,
}

/// Names of the checks a certificate runs.
pub const CERTIFICATE_CHECKS: [&str; 6] = [
    "bijection",
    "weight-preservation",
    "no-forbidden-config",
    "lex-preservation",
    "kleshchev-preservation",
    "branching-spectrum",
];

fn failed(check: &'static str, detail: alloc::string::String) -> Error {
    Error::CheckFailed { check, detail }
}

/// Runs every check on `block` and `Φ_i(block)`. Requires
/// `w(B) ≤ w(C) + K_i·r` and `δ_i(B) ≥ 0`; the first failing check is named
/// in the error.
pub fn certificate(block: &Block, i: usize, caps: &Caps) -> Result<ScopesCertificate> {
    let a = block.charge();
    let report = check_hypotheses(block.representative(), a, i)?;
    let image_block = phi_block(block, i, caps)?;
    let pairs = scopes_pairing(block, i)?;

    let mut images: Vec<&Multipartition> = pairs.iter().map(|(_, m)| m).collect();
    images.sort_by(|x, y| y.cmp(x));
    images.dedup();
    let onto = images.len() == image_block.len() && images.iter().all(|m| image_block.contains(m));
    if images.len() != pairs.len() || !onto {
        return Err(failed("bijection", format!("{} members map onto {} of {} image members", pairs.len(), images.len(), image_block.len())));
    }

    for (lam, image) in &pairs {
        if weight(lam, a)? != weight(image, a)? {
            return Err(failed("weight-preservation", format!("w({lam}) != w({image})")));
        }
    }

    for lam in block.members() {
        if has_forbidden_config(lam, a, i)? {
            return Err(failed("no-forbidden-config", format!("{lam} has a bead-gap pattern on runners {} and {i}", (i + a.e() - 1) % a.e())));
        }
    }

    if let Some((lam, mu)) = find_lex_violation(block, i)? {
        return Err(failed("lex-preservation", format!("{lam} > {mu} but their images are not in that order")));
    }

    let mut certified = Vec::with_capacity(pairs.len());
    for (lam, image) in pairs {
        let source_kleshchev = is_kleshchev(&lam, a)?;
        let image_kleshchev = is_kleshchev(&image, a)?;
        if source_kleshchev != image_kleshchev {
            return Err(failed("kleshchev-preservation", format!("{lam} and {image} differ")));
        }
        certified.push(CertifiedPair { source: lam, image, source_kleshchev, image_kleshchev });
    }

    let delta = report.delta as usize;
    let expected = mahonian_spectrum(delta, caps)?;
    let mut polynomial = None;
    for pair in &certified {
        let b = branching_polynomial(&pair.source, a, i, caps).map_err(|e| failed("branching-spectrum", format!("{}: {e}", pair.source)))?;
        if b.target != pair.image || b.polynomial != expected {
            return Err(failed("branching-spectrum", format!("{} gives {} towards {}", pair.source, b.polynomial, b.target)));
        }
        polynomial = Some(b.polynomial);
    }

    Ok(ScopesCertificate {
        charge: a.clone(),
        i,
        block: block.descriptor().clone(),
        image: image_block.descriptor().clone(),
        delta: report.delta,
        k: report.k,
        w_b: report.w_b,
        w_c: report.w_c,
        pairs: certified,
        polynomial: polynomial.unwrap_or(expected),
        checks: CERTIFICATE_CHECKS.to_vec(),
    })
}
