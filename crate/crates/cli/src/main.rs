use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use akblocks::Caps;
use akblocks_cli::commands::{self, Failure, Output, Request, VerifyGrid};
use akblocks_cli::wire::{parse_charge, parse_multipartition, AbacusJson, ChargeJson, MultipartitionJson};
use akblocks_cli::{parse_caps, CAPS_ENV};
use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser, Debug)]
#[command(name = "akblocks", version, about = "Block combinatorics of Ariki-Koike algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Multipartition as JSON ({"components": [[2,1],[3]]} or [[2,1],[3]]) or text ((2,1),(3)).
    #[arg(long, global = true)]
    lambda: Option<String>,

    /// Second multipartition for `residues`.
    #[arg(long, global = true)]
    compare: Option<String>,

    /// Multicharge entries a_1,...,a_r; zeros when omitted.
    #[arg(long, global = true, allow_hyphen_values = true)]
    charge: Option<String>,

    /// Modulus e; for `verify-all`, the largest e swept.
    #[arg(long, global = true)]
    e: Option<usize>,

    /// Residue i.
    #[arg(long, global = true)]
    i: Option<usize>,

    /// Size n; for `verify-all`, the largest n swept.
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Number of components; for `verify-all`, the largest r swept.
    #[arg(long, global = true)]
    r: Option<usize>,

    /// Abacus levels to render, as lo,hi.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,

    /// JSON file with a request object, a multipartition or an abacus.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cap overrides such as n=8,r=3,e=5,delta=6.
    #[arg(long, global = true, env = CAPS_ENV)]
    caps: Option<String>,

    /// Worker threads for `verify-all`; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Residue multiset of a multipartition.
    Residues,
    /// Abacus display, as text or JSON.
    Abacus,
    /// Weight w(λ).
    Weight,
    /// Hub (δ_0, ..., δ_{e-1}).
    Hub,
    /// Every block of multipartitions of n.
    Blocks,
    /// The core block reached from λ and the s-moves leading there.
    CoreBlock,
    /// K_i for every residue, with the base tuples.
    KValues,
    /// Whether w(B) <= w(C) + K_i r.
    ScopesCheck,
    /// The pairing λ -> Φ_i(λ) on the block of λ.
    ScopesMap,
    /// Graded branching polynomial from λ to Φ_i(λ).
    Branch,
    /// Certificate for the block of λ and residue i.
    Certify,
    /// Sweeps every check over the parameter grid.
    VerifyAll,
}

fn request(cli: &Cli) -> Result<Request, Failure> {
    let mut req = Request::default();
    if let Some(path) = &cli.input {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let doc: Value = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        read_input(&doc, &mut req)?;
    }
    if let Some(s) = &cli.lambda {
        req.lambda = Some(parse_multipartition(s)?);
    }
    if let Some(s) = &cli.compare {
        req.compare = Some(parse_multipartition(s)?);
    }
    if let Some(s) = &cli.charge {
        req.charge = Some(parse_charge(s)?);
    }
    if let Some(s) = &cli.window {
        let w = parse_charge(s)?;
        match w.as_slice() {
            &[lo, hi] => req.window = Some((lo, hi)),
            _ => return Err(anyhow!("--window expects lo,hi").into()),
        }
    }
    req.e = cli.e.or(req.e);
    req.i = cli.i.or(req.i);
    req.n = cli.n.or(req.n);
    req.r = cli.r.or(req.r);
    Ok(req)
}

fn read_input(doc: &Value, req: &mut Request) -> Result<(), Failure> {
    let as_lambda = |v: &Value| -> anyhow::Result<_> {
        match v {
            Value::String(s) => parse_multipartition(s),
            other => parse_multipartition(&other.to_string()),
        }
    };
    if doc.get("components").is_some() {
        if doc.get("e").is_some() {
            let abacus: AbacusJson = serde_json::from_value(doc.clone()).context("abacus JSON")?;
            req.e = Some(abacus.e);
            req.abacus = Some(abacus);
        } else {
            let lam: MultipartitionJson = serde_json::from_value(doc.clone()).context("multipartition JSON")?;
            req.lambda = Some((&lam).try_into()?);
        }
        return Ok(());
    }
    let Some(obj) = doc.as_object() else {
        return Err(anyhow!("input must be a JSON object").into());
    };
    for key in obj.keys() {
        if !["lambda", "compare", "charge", "e", "i", "n", "r", "abacus"].contains(&key.as_str()) {
            return Err(anyhow!("unknown input field {key:?}").into());
        }
    }
    if let Some(v) = obj.get("lambda") {
        req.lambda = Some(as_lambda(v)?);
    }
    if let Some(v) = obj.get("compare") {
        req.compare = Some(as_lambda(v)?);
    }
    if let Some(v) = obj.get("charge") {
        if v.is_object() {
            let c: ChargeJson = serde_json::from_value(v.clone()).context("multicharge JSON")?;
            req.e = Some(c.e);
            req.charge = Some(c.charge);
        } else {
            req.charge = Some(serde_json::from_value(v.clone()).context("multicharge entries")?);
        }
    }
    if let Some(v) = obj.get("abacus") {
        let abacus: AbacusJson = serde_json::from_value(v.clone()).context("abacus JSON")?;
        req.e = Some(abacus.e);
        req.abacus = Some(abacus);
    }
    let int = |key: &str| -> Result<Option<usize>, Failure> {
        match obj.get(key) {
            None => Ok(None),
            Some(v) => Ok(Some(serde_json::from_value(v.clone()).with_context(|| format!("field {key:?}"))?)),
        }
    };
    req.e = int("e")?.or(req.e);
    req.i = int("i")?;
    req.n = int("n")?;
    req.r = int("r")?;
    Ok(())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let caps = match &cli.caps {
        Some(spec) => parse_caps(spec, Caps::default())?,
        None => Caps::default(),
    };
    let req = request(cli)?;
    match cli.command {
        Command::Residues => commands::residues(&req),
        Command::Abacus => commands::abacus(&req),
        Command::Weight => commands::weight_cmd(&req),
        Command::Hub => commands::hub_cmd(&req),
        Command::Blocks => commands::blocks(&req, &caps),
        Command::CoreBlock => commands::core_block(&req),
        Command::KValues => commands::k_values(&req),
        Command::ScopesCheck => commands::scopes_check(&req),
        Command::ScopesMap => commands::scopes_map(&req, &caps),
        Command::Branch => commands::branch(&req, &caps),
        Command::Certify => commands::certify(&req, &caps),
        Command::VerifyAll => {
            let defaults = VerifyGrid::default();
            let grid = VerifyGrid {
                n: req.n.unwrap_or(defaults.n),
                r_max: req.r.unwrap_or(defaults.r_max),
                e_max: req.e.unwrap_or(defaults.e_max),
                charge: req.charge.clone(),
            };
            let threads = cli.threads.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            commands::verify_all(&grid, &caps, threads)
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> anyhow::Result<()> {
    let body = match cli.format {
        Format::Text => out.text.clone(),
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json)?),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(&cli, &out) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.failed.is_empty() {
                ExitCode::SUCCESS
            } else {
                for name in &out.failed {
                    eprintln!("check {name} failed");
                }
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            eprintln!("{failure}");
            ExitCode::from(failure.exit_code() as u8)
        }
    }
}
