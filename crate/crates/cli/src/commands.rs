//! One function per subcommand. Each returns a JSON document and its text
//! rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use akblocks::blocks::{base_tuples, core_block_of, enumerate_blocks, hub, k_value, same_block, scopes_condition, weight};
use akblocks::branching::branching_polynomial;
use akblocks::scopes::{certificate, phi_block, scopes_pairing};
use akblocks::verify::{normalized_charges, verify_charge, verify_general, verify_modulus, CheckReport, Limits, Suite};
use akblocks::{AbacusDisplay, Block, Caps, Error, Multicharge, Multipartition};
use serde::Serialize;
use serde_json::{json, Value};

use crate::wire::{
    AbacusJson, BranchJson, CertificateJson, ChargeJson, DescriptorJson, MultipartitionJson, PolynomialJson, SMoveJson,
    ScopesReportJson, SCHEMA,
};

/// What went wrong, and the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable input or unmet hypotheses.
    Input(anyhow::Error),
    /// A verified property failed.
    Check { check: String, detail: String },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Input(_) => 2,
            Failure::Check { .. } => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "input error: {e:#}"),
            Failure::Check { check, detail } => write!(f, "check {check} failed: {detail}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CheckFailed { check, detail } => Failure::Check { check: check.to_string(), detail },
            other => Failure::Input(other.into()),
        }
    }
}

/// A finished command: the document, and the failing checks if any.
#[derive(Debug, Clone)]
pub struct Output {
    pub json: Value,
    pub text: String,
    pub failed: Vec<String>,
}

impl Output {
    fn ok(json: Value, text: String) -> Self {
        Output { json, text, failed: Vec::new() }
    }
}

/// Inputs shared by the subcommands.
#[derive(Debug, Clone, Default)]
pub struct Request {
    pub lambda: Option<Multipartition>,
    pub compare: Option<Multipartition>,
    pub e: Option<usize>,
    pub charge: Option<Vec<i64>>,
    pub i: Option<usize>,
    pub n: Option<usize>,
    pub r: Option<usize>,
    pub window: Option<(i64, i64)>,
    pub abacus: Option<AbacusJson>,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("wire types serialize")
}

impl Request {
    fn lambda(&self) -> Result<&Multipartition, Failure> {
        self.lambda.as_ref().ok_or_else(|| Failure::Input(anyhow::anyhow!("--lambda is required")))
    }

    fn i(&self) -> Result<usize, Failure> {
        self.i.ok_or_else(|| Failure::Input(anyhow::anyhow!("--i is required")))
    }

    fn e(&self) -> Result<usize, Failure> {
        self.e.ok_or_else(|| Failure::Input(anyhow::anyhow!("--e is required")))
    }

    /// The multicharge for `r` components; zeros if none was given.
    fn charge_for(&self, r: usize) -> Result<Multicharge, Failure> {
        let e = self.e()?;
        let charge = self.charge.clone().unwrap_or_else(|| vec![0; r]);
        if charge.len() != r {
            return Err(Error::ChargeLength { expected: r, found: charge.len() }.into());
        }
        Ok(Multicharge::new(e, charge)?)
    }

    fn lambda_and_charge(&self) -> Result<(&Multipartition, Multicharge), Failure> {
        let lam = self.lambda()?;
        Ok((lam, self.charge_for(lam.r())?))
    }
}

fn join<T: std::fmt::Display>(xs: impl IntoIterator<Item = T>, sep: &str) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn residues(req: &Request) -> Result<Output, Failure> {
    let (lam, a) = req.lambda_and_charge()?;
    let res = lam.residue_multiset(&a)?;
    let mut doc = json!({ "lambda": MultipartitionJson::from(lam), "charge": ChargeJson::from(&a), "residues": res });
    let mut text = format!("{}\n", join(&res, " "));
    if let Some(mu) = &req.compare {
        let same = same_block(lam, mu, &a)?;
        doc["compare"] = json!({ "lambda": MultipartitionJson::from(mu), "residues": mu.residue_multiset(&a)?, "same_block": same });
        writeln!(text, "same block as {mu}: {same}").unwrap();
    }
    Ok(Output::ok(doc, text))
}

pub fn abacus(req: &Request) -> Result<Output, Failure> {
    let display = match (&req.abacus, &req.lambda) {
        (Some(json), _) => AbacusDisplay::try_from(json)?,
        (None, Some(lam)) => AbacusDisplay::new(lam, &req.charge_for(lam.r())?)?,
        (None, None) => return Err(Failure::Input(anyhow::anyhow!("--lambda or an abacus --input is required"))),
    };
    let text = display.render(req.window)?;
    let mut doc = to_value(&AbacusJson::from(&display));
    doc["lambda"] = to_value(&MultipartitionJson::from(&display.multipartition()));
    Ok(Output::ok(doc, text))
}

pub fn weight_cmd(req: &Request) -> Result<Output, Failure> {
    let (lam, a) = req.lambda_and_charge()?;
    let w = weight(lam, &a)?;
    Ok(Output::ok(json!({ "weight": w }), format!("{w}\n")))
}

pub fn hub_cmd(req: &Request) -> Result<Output, Failure> {
    let (lam, a) = req.lambda_and_charge()?;
    let h = hub(lam, &a)?;
    Ok(Output::ok(json!({ "hub": h.entries() }), format!("{h}\n")))
}

pub fn blocks(req: &Request, caps: &Caps) -> Result<Output, Failure> {
    let n = req.n.ok_or_else(|| Failure::Input(anyhow::anyhow!("--n is required")))?;
    let r = match (req.r, &req.charge) {
        (Some(r), _) => r,
        (None, Some(c)) => c.len(),
        (None, None) => 1,
    };
    let a = req.charge_for(r)?;
    let all = enumerate_blocks(n, &a, caps)?;
    let mut text = String::new();
    let mut docs = Vec::new();
    for b in &all {
        let d = b.descriptor();
        writeln!(text, "hub {} weight {} core weight {} members {}", d.hub, d.weight, d.core_weight, b.len()).unwrap();
        for lam in b.members() {
            writeln!(text, "  {lam}").unwrap();
        }
        docs.push(json!({
            "descriptor": DescriptorJson::from(d),
            "members": b.members().iter().map(MultipartitionJson::from).collect::<Vec<_>>(),
        }));
    }
    Ok(Output::ok(json!({ "charge": ChargeJson::from(&a), "n": n, "blocks": docs }), text))
}

pub fn core_block(req: &Request) -> Result<Output, Failure> {
    let (lam, a) = req.lambda_and_charge()?;
    let (d, chain) = core_block_of(lam, &a)?;
    let end = chain.end().multipartition();
    let moves: Vec<SMoveJson> = chain.moves.iter().map(SMoveJson::from).collect();
    let mut text = format!("core block: {end}\nhub {} weight {}\nrim hooks removed {}\n", d.hub, d.weight, chain.hooks);
    for m in &chain.moves {
        writeln!(text, "s-move i={} l={} j={} k={}", m.i, m.l, m.j, m.k).unwrap();
    }
    let doc = json!({
        "core": MultipartitionJson::from(&end),
        "descriptor": DescriptorJson::from(&d),
        "hooks": chain.hooks,
        "chain": moves,
        "strict_steps": chain.strict_steps,
    });
    Ok(Output::ok(doc, text))
}

pub fn k_values(req: &Request) -> Result<Output, Failure> {
    let (lam, a) = req.lambda_and_charge()?;
    let (_, chain) = core_block_of(lam, &a)?;
    let m = chain.end();
    let mut ks = BTreeMap::new();
    let mut text = String::new();
    for i in 0..a.e() {
        let k = k_value(m, i)?;
        ks.insert(i.to_string(), k);
        writeln!(text, "K_{i} = {k}").unwrap();
    }
    let witness = base_tuples(m)?;
    for b in &witness.base_tuples {
        writeln!(text, "base tuple ({})", join(b, ",")).unwrap();
    }
    let doc = json!({
        "K": ks,
        "offsets": witness.offsets,
        "base_tuples": witness.base_tuples,
        "core": MultipartitionJson::from(&m.multipartition()),
    });
    Ok(Output::ok(doc, text))
}

pub fn scopes_check(req: &Request) -> Result<Output, Failure> {
    let (lam, a) = req.lambda_and_charge()?;
    let report = scopes_condition(lam, &a, req.i()?)?;
    let text = format!(
        "w(B) = {} w(C) = {} K_{} = {} r = {} delta = {}\ncondition holds: {}\n",
        report.w_b,
        report.w_c,
        report.i,
        report.k,
        a.r(),
        report.delta,
        report.holds
    );
    Ok(Output::ok(to_value(&ScopesReportJson::from(&report)), text))
}

pub fn scopes_map(req: &Request, caps: &Caps) -> Result<Output, Failure> {
    let (lam, a) = req.lambda_and_charge()?;
    let i = req.i()?;
    let block = Block::containing(lam, &a, caps)?;
    let image = phi_block(&block, i, caps)?;
    let pairs = scopes_pairing(&block, i)?;
    let mut text = String::new();
    for (x, y) in &pairs {
        writeln!(text, "{x} -> {y}").unwrap();
    }
    let doc = json!({
        "i": i,
        "block": DescriptorJson::from(block.descriptor()),
        "image": DescriptorJson::from(image.descriptor()),
        "pairs": pairs.iter().map(|(x, y)| json!({ "source": MultipartitionJson::from(x), "image": MultipartitionJson::from(y) })).collect::<Vec<_>>(),
    });
    Ok(Output::ok(doc, text))
}

pub fn branch(req: &Request, caps: &Caps) -> Result<Output, Failure> {
    let (lam, a) = req.lambda_and_charge()?;
    let b = branching_polynomial(lam, &a, req.i()?, caps)?;
    let text = format!("{} -> {}\n{}\n", lam, b.target, b.polynomial);
    let doc = BranchJson { target: (&b.target).into(), delta: b.delta, polynomial: PolynomialJson(b.polynomial) };
    Ok(Output::ok(to_value(&doc), text))
}

pub fn certify(req: &Request, caps: &Caps) -> Result<Output, Failure> {
    let (lam, a) = req.lambda_and_charge()?;
    let i = req.i()?;
    let block = Block::containing(lam, &a, caps)?;
    let cert = certificate(&block, i, caps)?;
    let mut text = format!(
        "block hub {} -> image hub {}\ndelta = {} K_{i} = {} w(B) = {} w(C) = {}\n",
        cert.block.hub, cert.image.hub, cert.delta, cert.k, cert.w_b, cert.w_c
    );
    for p in &cert.pairs {
        writeln!(text, "{} -> {} kleshchev {}", p.source, p.image, p.source_kleshchev).unwrap();
    }
    writeln!(text, "polynomial {}", cert.polynomial).unwrap();
    writeln!(text, "checks passed: {}", cert.checks.join(", ")).unwrap();
    Ok(Output::ok(to_value(&CertificateJson::from(&cert)), text))
}

/// The grid swept by `verify-all`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyGrid {
    pub n: usize,
    pub r_max: usize,
    pub e_max: usize,
    /// A single multicharge instead of the full normalised range.
    pub charge: Option<Vec<i64>>,
}

impl Default for VerifyGrid {
    fn default() -> Self {
        VerifyGrid { n: 8, r_max: 3, e_max: 5, charge: None }
    }
}

impl VerifyGrid {
    fn charges(&self) -> Result<Vec<Multicharge>, Failure> {
        if let Some(c) = &self.charge {
            return Ok(vec![Multicharge::new(self.e_max, c.clone())?]);
        }
        let mut out = Vec::new();
        for e in 2..=self.e_max {
            for r in 1..=self.r_max {
                out.extend(normalized_charges(e, r));
            }
        }
        Ok(out)
    }

    fn es(&self) -> Vec<usize> {
        if self.charge.is_some() {
            vec![self.e_max]
        } else {
            (2..=self.e_max).collect()
        }
    }
}

fn run_parallel<T: Sync>(jobs: Vec<T>, threads: usize, f: impl Fn(&T) -> Result<Suite, Error> + Sync) -> Result<Vec<Suite>, Error> {
    let threads = threads.max(1).min(jobs.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut results: Vec<Option<Result<Suite, Error>>> = (0..jobs.len()).map(|_| None).collect();
    let slots = std::sync::Mutex::new(&mut results);
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let k = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if k >= jobs.len() {
                    break;
                }
                let out = f(&jobs[k]);
                slots.lock().unwrap()[k] = Some(out);
            });
        }
    });
    results.into_iter().map(|r| r.expect("every job ran")).collect()
}

pub fn verify_all(grid: &VerifyGrid, caps: &Caps, threads: usize) -> Result<Output, Failure> {
    caps.check_n(grid.n)?;
    caps.check_r(grid.charge.as_ref().map_or(grid.r_max, Vec::len))?;
    caps.check_e(grid.e_max)?;
    if grid.e_max < 2 {
        return Err(Error::InvalidModulus(grid.e_max).into());
    }
    let limits = Limits::for_n(grid.n);
    let charges = grid.charges()?;
    let mut suite = verify_general(&limits, caps)?;
    for e in grid.es() {
        suite.merge(&verify_modulus(e, &limits)?);
    }
    for s in run_parallel(charges.clone(), threads, |a| verify_charge(a, &limits, caps))? {
        suite.merge(&s);
    }
    Ok(summarize(&suite, grid, charges.len()))
}

fn summarize(suite: &Suite, grid: &VerifyGrid, charges: usize) -> Output {
    let reports = suite.reports();
    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(5).max(5);
    let mut text = format!("{:<width$}  {:>10}  {:>10}  {:>8}  status\n", "check", "instances", "violations", "skipped");
    let mut failed = Vec::new();
    for r in &reports {
        let status = if r.passed() { "ok" } else { "FAIL" };
        writeln!(text, "{:<width$}  {:>10}  {:>10}  {:>8}  {status}", r.name, r.instances, r.violations, r.skipped).unwrap();
        if !r.passed() {
            failed.push(r.name.to_string());
        }
    }
    for r in reports.iter().filter(|r| !r.passed()) {
        for ex in &r.examples {
            writeln!(text, "{}: {ex}", r.name).unwrap();
        }
    }
    let verdict = if failed.is_empty() { "pass" } else { "fail" };
    writeln!(text, "{verdict}: {} checks over {charges} multicharges", reports.len()).unwrap();
    let doc = json!({
        "schema": SCHEMA,
        "grid": { "n": grid.n, "r_max": grid.r_max, "e_max": grid.e_max, "charge": grid.charge, "multicharges": charges },
        "passed": failed.is_empty(),
        "checks": reports.iter().map(report_json).collect::<Vec<_>>(),
    });
    Output { json: doc, text, failed }
}

fn report_json(r: &CheckReport) -> Value {
    json!({
        "name": r.name,
        "instances": r.instances,
        "violations": r.violations,
        "skipped": r.skipped,
        "examples": r.examples,
    })
}
