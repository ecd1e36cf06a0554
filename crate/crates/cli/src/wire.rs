//! JSON forms of the library types.

use std::collections::BTreeMap;

use akblocks::blocks::{BlockDescriptor, ScopesReport};
use akblocks::scopes::{CertifiedPair, CERTIFICATE_CHECKS};
use akblocks::{AbacusDisplay, BetaSet, Hub, LaurentPolynomial, Multicharge, Multipartition, Partition, SMove, ScopesCertificate};
use anyhow::{anyhow, bail, Context, Result};
use serde::de::Deserializer;
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipartitionJson {
    pub components: Vec<Vec<usize>>,
}

impl From<&Multipartition> for MultipartitionJson {
    fn from(lam: &Multipartition) -> Self {
        MultipartitionJson { components: lam.components().iter().map(|p| p.parts().to_vec()).collect() }
    }
}

impl TryFrom<&MultipartitionJson> for Multipartition {
    type Error = anyhow::Error;

    fn try_from(json: &MultipartitionJson) -> Result<Self> {
        let comps = json.components.iter().map(|p| Partition::new(p.clone())).collect::<Result<Vec<_>, _>>()?;
        Ok(Multipartition::new(comps)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeJson {
    pub e: usize,
    pub charge: Vec<i64>,
}

impl From<&Multicharge> for ChargeJson {
    fn from(a: &Multicharge) -> Self {
        ChargeJson { e: a.e(), charge: a.charge().to_vec() }
    }
}

impl TryFrom<&ChargeJson> for Multicharge {
    type Error = anyhow::Error;

    fn try_from(json: &ChargeJson) -> Result<Self> {
        Ok(Multicharge::new(json.e, json.charge.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaJson {
    pub charge: i64,
    pub beads_above_cutoff: Vec<i64>,
    pub cutoff: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbacusJson {
    pub e: usize,
    pub components: Vec<BetaJson>,
}

impl From<&AbacusDisplay> for AbacusJson {
    fn from(d: &AbacusDisplay) -> Self {
        let components = d
            .components()
            .iter()
            .map(|b| BetaJson { charge: b.charge(), beads_above_cutoff: b.beads_above_cutoff().to_vec(), cutoff: b.cutoff() })
            .collect();
        AbacusJson { e: d.e(), components }
    }
}

impl TryFrom<&AbacusJson> for AbacusDisplay {
    type Error = anyhow::Error;

    fn try_from(json: &AbacusJson) -> Result<Self> {
        let comps = json
            .components
            .iter()
            .map(|b| BetaSet::from_encoding(Some(b.charge), b.cutoff, &b.beads_above_cutoff))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AbacusDisplay::from_beta_sets(json.e, comps)?)
    }
}

/// Degrees as string keys, highest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialJson(pub LaurentPolynomial);

impl Serialize for PolynomialJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<(i64, u64)> = self.0.terms().collect();
        let mut map = s.serialize_map(Some(terms.len()))?;
        for (d, c) in terms.iter().rev() {
            map.serialize_entry(&d.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for PolynomialJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, u64>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            let degree = k.parse::<i64>().map_err(|_| serde::de::Error::custom(format!("degree key {k:?} is not an integer")))?;
            terms.push((degree, c));
        }
        Ok(PolynomialJson(LaurentPolynomial::from_terms(terms)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SMoveJson {
    pub i: usize,
    pub l: usize,
    pub j: usize,
    pub k: usize,
}

impl From<&SMove> for SMoveJson {
    fn from(m: &SMove) -> Self {
        SMoveJson { i: m.i, l: m.l, j: m.j, k: m.k }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScopesReportJson {
    pub i: usize,
    pub holds: bool,
    #[serde(rename = "wB")]
    pub w_b: usize,
    #[serde(rename = "wC")]
    pub w_c: usize,
    #[serde(rename = "K")]
    pub k: i64,
    pub delta: i64,
    pub chain: Vec<SMoveJson>,
}

impl From<&ScopesReport> for ScopesReportJson {
    fn from(r: &ScopesReport) -> Self {
        ScopesReportJson {
            i: r.i,
            holds: r.holds,
            w_b: r.w_b,
            w_c: r.w_c,
            k: r.k,
            delta: r.delta,
            chain: r.chain.iter().map(SMoveJson::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub n: usize,
    pub r: usize,
    pub e: usize,
    pub kappa: Vec<usize>,
    pub residue_counts: Vec<usize>,
    pub hub: Vec<i64>,
    pub weight: usize,
    pub core_weight: usize,
}

impl From<&BlockDescriptor> for DescriptorJson {
    fn from(d: &BlockDescriptor) -> Self {
        DescriptorJson {
            n: d.n,
            r: d.r,
            e: d.e,
            kappa: d.kappa.clone(),
            residue_counts: d.residue_counts.clone(),
            hub: d.hub.entries().to_vec(),
            weight: d.weight,
            core_weight: d.core_weight,
        }
    }
}

impl From<&DescriptorJson> for BlockDescriptor {
    fn from(d: &DescriptorJson) -> Self {
        BlockDescriptor {
            n: d.n,
            r: d.r,
            e: d.e,
            kappa: d.kappa.clone(),
            residue_counts: d.residue_counts.clone(),
            hub: Hub::new(d.hub.clone()),
            weight: d.weight,
            core_weight: d.core_weight,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchJson {
    pub target: MultipartitionJson,
    pub delta: usize,
    pub polynomial: PolynomialJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub source: MultipartitionJson,
    pub image: MultipartitionJson,
    pub source_kleshchev: bool,
    pub image_kleshchev: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema: u32,
    pub charge: ChargeJson,
    pub i: usize,
    pub block: DescriptorJson,
    pub image: DescriptorJson,
    pub delta: i64,
    #[serde(rename = "K")]
    pub k: i64,
    #[serde(rename = "wB")]
    pub w_b: usize,
    #[serde(rename = "wC")]
    pub w_c: usize,
    pub pairs: Vec<PairJson>,
    pub polynomial: PolynomialJson,
    pub checks: Vec<String>,
}

impl From<&ScopesCertificate> for CertificateJson {
    fn from(c: &ScopesCertificate) -> Self {
        CertificateJson {
            schema: SCHEMA,
            charge: (&c.charge).into(),
            i: c.i,
            block: (&c.block).into(),
            image: (&c.image).into(),
            delta: c.delta,
            k: c.k,
            w_b: c.w_b,
            w_c: c.w_c,
            pairs: c
                .pairs
                .iter()
                .map(|p| PairJson {
                    source: (&p.source).into(),
                    image: (&p.image).into(),
                    source_kleshchev: p.source_kleshchev,
                    image_kleshchev: p.image_kleshchev,
                })
                .collect(),
            polynomial: PolynomialJson(c.polynomial.clone()),
            checks: c.checks.iter().map(|s| s.to_string()).collect(),
        }
    }
}

impl TryFrom<&CertificateJson> for ScopesCertificate {
    type Error = anyhow::Error;

    fn try_from(c: &CertificateJson) -> Result<Self> {
        if c.schema != SCHEMA {
            bail!("unsupported certificate schema {}", c.schema);
        }
        let checks = c
            .checks
            .iter()
            .map(|name| {
                CERTIFICATE_CHECKS.iter().copied().find(|k| k == name).ok_or_else(|| anyhow!("unknown check {name:?}"))
            })
            .collect::<Result<Vec<_>>>()?;
        let pairs = c
            .pairs
            .iter()
            .map(|p| {
                Ok(CertifiedPair {
                    source: (&p.source).try_into()?,
                    image: (&p.image).try_into()?,
                    source_kleshchev: p.source_kleshchev,
                    image_kleshchev: p.image_kleshchev,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ScopesCertificate {
            charge: (&c.charge).try_into()?,
            i: c.i,
            block: (&c.block).into(),
            image: (&c.image).into(),
            delta: c.delta,
            k: c.k,
            w_b: c.w_b,
            w_c: c.w_c,
            pairs,
            polynomial: c.polynomial.0.clone(),
            checks,
        })
    }
}

/// A multipartition given as JSON (`{"components": …}` or a bare list of
/// lists) or in the text form `((2,1),(),(3))`.
pub fn parse_multipartition(text: &str) -> Result<Multipartition> {
    let t = text.trim();
    if t.starts_with('{') {
        let json: MultipartitionJson = serde_json::from_str(t).context("multipartition JSON")?;
        (&json).try_into()
    } else if t.starts_with('[') {
        let components: Vec<Vec<usize>> = serde_json::from_str(t).context("multipartition JSON")?;
        (&MultipartitionJson { components }).try_into()
    } else {
        Ok(t.parse::<Multipartition>()?)
    }
}

/// A comma-separated list of integers.
pub fn parse_charge(text: &str) -> Result<Vec<i64>> {
    let t = text.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|x| x.trim().parse::<i64>().with_context(|| format!("charge entry {x:?}"))).collect()
}
