//! Command-line front end. Output is JSON (default) or CSV on stdout, diagnostics on stderr.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::characters::{character_by_index, enumerate_characters, DirichletCharacter};
use crate::eisenstein::{enumerate_basis, q_expansion, EisensteinLabel, Group, Variant};
use crate::error::Error;
use crate::gram::{gram_matrix, verdict, BlockKind, GramBlock};
use crate::lfunctions::{dirichlet_l, l_derivative};
use crate::renormint::{renormalized_norm, FundamentalDomainGrid, RenormForm};
use crate::verify::{self, Suite};

pub const SCHEMA: &str = "petersson-lab/1";

#[derive(Parser, Debug)]
#[command(name = "petersson-lab", version, about = "Extended Petersson products on Eisenstein subspaces")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "PETERSSON_THREADS")]
    pub threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Gamma1,
    Gamma0,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Determinants,
    Oracle,
    Adjoint,
    Theorems,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Truncated,
    Lattice,
}

#[derive(clap::Args, Debug, Clone)]
pub struct SpaceArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
    pub level: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=40))]
    pub weight: u32,
    #[arg(long, value_enum)]
    pub group: GroupArg,
    /// Nebentypus index mod N (gamma0 only; default principal).
    #[arg(long)]
    pub char_index: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dirichlet characters mod q in enumeration order.
    Charlist {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        modulus: u64,
        #[arg(long)]
        primitive_only: bool,
    },
    /// L(s, χ) or its derivative.
    Lvalue {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        modulus: u64,
        #[arg(long)]
        char_index: usize,
        /// `re` or `re,im`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        s: Complex64,
        #[arg(long)]
        derivative: bool,
    },
    /// Eisenstein basis labels, optionally with q-expansions.
    Basis {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000))]
        prec: Option<u64>,
    },
    /// Gram blocks of the extended product.
    Gram {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Nondegeneracy verdict with witnesses.
    Verdict {
        #[command(flatten)]
        space: SpaceArgs,
    },
    /// Cross-check suites; exit code 0 when all checks pass.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..=1000))]
        max_level: u64,
    },
    /// Level-1 renormalized integral against the residue formula.
    Renorm {
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(4..=40))]
        weight: u32,
        #[arg(long, default_value_t = 10.0)]
        height: f64,
        /// `nx,ny`
        #[arg(long, default_value = "400,400", value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(long, value_enum, default_value_t = FormArg::Truncated)]
        form: FormArg,
        /// Lattice cutoff for `--form lattice`.
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(i64).range(1..=10_000))]
        cutoff: i64,
    },
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |x: &str| x.parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    match parts.as_slice() {
        [re] => Ok(Complex64::new(num(re)?, 0.0)),
        [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
        _ => Err("expected re or re,im".into()),
    }
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected nx,ny")?;
    let nx: usize = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let ny: usize = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if nx == 0 || ny == 0 {
        return Err("grid sizes must be positive".into());
    }
    Ok((nx, ny))
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(m) => Failure::Usage(m),
            other => Failure::Compute(other.to_string()),
        }
    }
}

struct Report {
    json: Value,
    headers: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    ok: bool,
}

/// Rounds to 15 significant digits so output is stable across platforms.
fn num(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{x:.14e}").parse().expect("float");
    json!(r)
}

fn fmt15(x: f64) -> String {
    if x.is_finite() {
        let r: f64 = format!("{x:.14e}").parse().expect("float");
        r.to_string()
    } else {
        String::new()
    }
}

fn cnum(z: Complex64) -> Value {
    json!({"re": num(z.re), "im": num(z.im)})
}

fn with_schema(fields: Value) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    if let Value::Object(rest) = fields {
        m.extend(rest);
    }
    Value::Object(m)
}

fn character_json(chi: &DirichletCharacter) -> Value {
    json!({
        "label": chi.to_string(),
        "modulus": chi.modulus(),
        "index": chi.index(),
        "conductor": chi.conductor(),
    })
}

fn label_json(l: &EisensteinLabel) -> Value {
    json!({
        "label": l.to_string(),
        "psi": character_json(&l.psi),
        "phi": character_json(&l.phi),
        "t": l.t,
        "variant": match l.variant { Variant::Standard => "standard", Variant::Weight2Modified => "weight2_modified" },
    })
}

fn group_of(space: &SpaceArgs) -> Result<Group, Failure> {
    match (space.group, space.char_index) {
        (GroupArg::Gamma1, None) => Ok(Group::Gamma1),
        (GroupArg::Gamma1, Some(_)) => Err(Failure::Usage("--char-index applies only to --group gamma0".into())),
        (GroupArg::Gamma0, None) => Ok(Group::Gamma0(DirichletCharacter::principal(space.level))),
        (GroupArg::Gamma0, Some(i)) => character_by_index(space.level, i)
            .map(Group::Gamma0)
            .ok_or_else(|| Failure::Usage(format!("no character with index {i} mod {}", space.level))),
    }
}

fn space_header(space: &SpaceArgs, group: &Group) -> Value {
    json!({
        "level": space.level,
        "weight": space.weight,
        "group": group.name(),
        "character": match group { Group::Gamma1 => Value::Null, Group::Gamma0(chi) => character_json(chi) },
    })
}

fn merge(a: Value, b: Value) -> Value {
    let (Value::Object(mut a), Value::Object(b)) = (a, b) else { unreachable!("objects") };
    a.extend(b);
    Value::Object(a)
}

fn charlist(modulus: u64, primitive_only: bool) -> Report {
    let mut rows = Vec::new();
    let chars: Vec<Value> = enumerate_characters(modulus)
        .into_iter()
        .filter(|c| !primitive_only || c.is_primitive())
        .map(|chi| {
            let values: Vec<String> = (0..modulus as i64).map(|n| chi.evaluate(n).to_string()).collect();
            rows.push(vec![
                chi.index().to_string(),
                modulus.to_string(),
                chi.conductor().to_string(),
                chi.parity().to_string(),
                chi.exponents().iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                values.join(" "),
            ]);
            json!({
                "index": chi.index(),
                "modulus": modulus,
                "conductor": chi.conductor(),
                "parity": chi.parity(),
                "primitive": chi.is_primitive(),
                "order": chi.order(),
                "exponents": chi.exponents(),
                "generators": chi.unit_group().generators,
                "values": values,
            })
        })
        .collect();
    Report {
        json: with_schema(json!({"modulus": modulus, "characters": chars})),
        headers: vec!["index", "modulus", "conductor", "parity", "exponents", "values"],
        rows,
        ok: true,
    }
}

fn lvalue(modulus: u64, index: usize, s: Complex64, derivative: bool) -> Result<Report, Failure> {
    let chi = character_by_index(modulus, index)
        .ok_or_else(|| Failure::Usage(format!("no character with index {index} mod {modulus}")))?;
    let v = if derivative { l_derivative(s, &chi)? } else { dirichlet_l(s, &chi)? };
    Ok(Report {
        json: with_schema(json!({
            "character": character_json(&chi),
            "s_re": num(s.re),
            "s_im": num(s.im),
            "derivative": derivative,
            "value_re": num(v.value.re),
            "value_im": num(v.value.im),
            "error_bound": num(v.error_bound),
        })),
        headers: vec!["character", "s_re", "s_im", "derivative", "value_re", "value_im", "error_bound"],
        rows: vec![vec![
            chi.to_string(),
            fmt15(s.re),
            fmt15(s.im),
            derivative.to_string(),
            fmt15(v.value.re),
            fmt15(v.value.im),
            fmt15(v.error_bound),
        ]],
        ok: true,
    })
}

fn basis(space: &SpaceArgs, prec: Option<u64>) -> Result<Report, Failure> {
    let group = group_of(space)?;
    let labels = enumerate_basis(space.level, space.weight, &group)?;
    let mut rows = Vec::new();
    let items: Vec<Value> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let mut v = label_json(l);
            rows.push(vec![
                i.to_string(),
                l.to_string(),
                l.psi.to_string(),
                l.phi.to_string(),
                l.c_psi().to_string(),
                l.c_phi().to_string(),
                l.t.to_string(),
            ]);
            if let Some(p) = prec {
                let q = q_expansion(l, p as usize, space.level);
                let coeffs: Vec<Value> = q
                    .coefficients
                    .iter()
                    .map(|c| {
                        let z = c.to_complex();
                        json!({"exact": c.to_string(), "re": num(z.re), "im": num(z.im)})
                    })
                    .collect();
                v["q_expansion"] = Value::Array(coeffs);
            }
            v
        })
        .collect();
    Ok(Report {
        json: with_schema(merge(space_header(space, &group), json!({"dimension": labels.len(), "labels": items}))),
        headers: vec!["index", "label", "psi", "phi", "c_psi", "c_phi", "t"],
        rows,
        ok: true,
    })
}

fn block_json(b: &GramBlock) -> Value {
    let entries: Vec<Value> = (0..b.matrix.nrows())
        .map(|i| Value::Array((0..b.matrix.ncols()).map(|j| cnum(b.matrix[(i, j)])).collect()))
        .collect();
    let residue = b.residue.as_ref().map(|r| {
        json!({
            "re": num(r.r.re),
            "im": num(r.r.im),
            "error_bound": num(r.error_bound),
            "pole_order": r.pole_order,
            "zero_order": r.zero_order,
            "constituents": r.constituents.iter().map(|c| json!({
                "name": c.name,
                "character": c.character,
                "s": num(c.s),
                "value": cnum(c.value),
                "error_bound": num(c.error_bound),
                "provenance": c.provenance,
            })).collect::<Vec<_>>(),
        })
    });
    let provenance = match b.kind {
        BlockKind::Standard => "closed_form",
        BlockKind::Weight2Trivial if crate::arith::is_squarefree(b.l) => "closed_form_mprime",
        BlockKind::Weight2Trivial => "numeric_residue_extrapolation",
    };
    json!({
        "pair": b.pair_name(),
        "kind": match b.kind { BlockKind::Standard => "standard", BlockKind::Weight2Trivial => "weight2_trivial" },
        "L": b.l,
        "rows": b.rows.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "cols": b.cols.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "scale": num(b.scale),
        "residue": residue,
        "provenance": provenance,
        "entries": entries,
    })
}

fn gram(space: &SpaceArgs) -> Result<Report, Failure> {
    let group = group_of(space)?;
    let g = gram_matrix(space.level, space.weight, &group)?;
    let mut rows = Vec::new();
    for b in &g.blocks {
        for i in 0..b.matrix.nrows() {
            for j in 0..b.matrix.ncols() {
                let z = b.matrix[(i, j)];
                rows.push(vec![b.pair_name(), b.rows[i].to_string(), b.cols[j].to_string(), fmt15(z.re), fmt15(z.im)]);
            }
        }
    }
    Ok(Report {
        json: with_schema(merge(
            space_header(space, &group),
            json!({
                "basis": g.basis.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                "blocks": g.blocks.iter().map(block_json).collect::<Vec<_>>(),
            }),
        )),
        headers: vec!["block", "row", "col", "re", "im"],
        rows,
        ok: true,
    })
}

fn verdict_cmd(space: &SpaceArgs) -> Result<Report, Failure> {
    let group = group_of(space)?;
    let v = verdict(space.level, space.weight, &group)?;
    let rows = v
        .witnesses
        .iter()
        .map(|w| vec![v.result().to_string(), w.block.clone(), w.reason.tag().to_string(), w.detail.clone()])
        .collect();
    let witnesses: Vec<Value> = v
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "block": w.block,
                "reason": w.reason.tag(),
                "detail": w.detail,
                "kernel": w.kernel.iter().map(|&z| cnum(z)).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(Report {
        json: with_schema(merge(
            json!({"result": v.result()}),
            merge(
                space_header(space, &group),
                json!({
                    "witnesses": witnesses,
                    "numeric": {
                        "result": if v.numeric_nondegenerate { "nondegenerate" } else { "degenerate" },
                        "min_condition": num(v.min_condition),
                        "agrees": v.agrees(),
                    },
                }),
            ),
        )),
        headers: vec!["result", "block", "reason", "detail"],
        rows,
        ok: true,
    })
}

fn verify_cmd(suite: SuiteArg, max_level: u64, err: &mut dyn Write) -> Result<Report, Failure> {
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Determinants => vec![Suite::Determinants],
        SuiteArg::Oracle => vec![Suite::Oracle],
        SuiteArg::Adjoint => vec![Suite::Adjoint],
        SuiteArg::Theorems => vec![Suite::Theorems],
    };
    let mut reports = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for s in suites {
        let r = verify::run(s, max_level)?;
        let _ = writeln!(err, "{}: {} checks in {:.1?}", s.name(), r.checks, r.elapsed);
        ok &= r.passed();
        rows.push(vec![
            s.name().to_string(),
            r.checks.to_string(),
            r.failures.len().to_string(),
            fmt15(r.max_error),
            r.passed().to_string(),
        ]);
        reports.push(json!({
            "suite": s.name(),
            "passed": r.passed(),
            "checks": r.checks,
            "max_error_ratio": num(r.max_error),
            "failures": r.failures,
        }));
    }
    Ok(Report {
        json: with_schema(json!({"max_level": max_level, "passed": ok, "suites": reports})),
        headers: vec!["suite", "checks", "failures", "max_error_ratio", "passed"],
        rows,
        ok,
    })
}

fn renorm(weight: u32, height: f64, grid: (usize, usize), form: FormArg, cutoff: i64) -> Result<Report, Failure> {
    let g = FundamentalDomainGrid::new(height, grid.0, grid.1)?;
    let f = match form {
        FormArg::Truncated => RenormForm::Truncated,
        FormArg::Lattice => RenormForm::LatticeSubtracted { cutoff },
    };
    let r = renormalized_norm(weight, &g, f)?;
    let name = match form {
        FormArg::Truncated => "truncated",
        FormArg::Lattice => "lattice",
    };
    Ok(Report {
        json: with_schema(json!({
            "weight": weight,
            "height": num(height),
            "grid": [grid.0, grid.1],
            "form": name,
            "integral": num(r.integral),
            "residue_reference": num(r.residue_reference),
            "abs_error": num(r.abs_error),
        })),
        headers: vec!["weight", "height", "nx", "ny", "form", "integral", "residue_reference", "abs_error"],
        rows: vec![vec![
            weight.to_string(),
            fmt15(height),
            grid.0.to_string(),
            grid.1.to_string(),
            name.to_string(),
            fmt15(r.integral),
            fmt15(r.residue_reference),
            fmt15(r.abs_error),
        ]],
        ok: true,
    })
}

fn render(report: &Report, format: Format) -> Result<Vec<u8>, Failure> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_vec_pretty(&report.json).map_err(|e| Failure::Compute(e.to_string()))?;
            s.push(b'\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Failure::Compute(e.to_string());
            w.write_record(&report.headers).map_err(io)?;
            for r in &report.rows {
                w.write_record(r).map_err(io)?;
            }
            w.into_inner().map_err(|e| Failure::Compute(e.to_string()))
        }
    }
}

fn dispatch(cfg: &RunConfig, err: &mut dyn Write) -> Result<Report, Failure> {
    match &cfg.command {
        Command::Charlist { modulus, primitive_only } => Ok(charlist(*modulus, *primitive_only)),
        Command::Lvalue { modulus, char_index, s, derivative } => lvalue(*modulus, *char_index, *s, *derivative),
        Command::Basis { space, prec } => basis(space, *prec),
        Command::Gram { space } => gram(space),
        Command::Verdict { space } => verdict_cmd(space),
        Command::Verify { suite, max_level } => verify_cmd(*suite, *max_level, err),
        Command::Renorm { weight, height, grid, form, cutoff } => {
            if !(height.is_finite() && *height >= 2.0) {
                return Err(Failure::Usage("--height must be at least 2".into()));
            }
            renorm(*weight, *height, *grid, *form, *cutoff)
        }
    }
}

/// Runs one invocation; returns the process exit code (0 ok, 1 computation error or failed check, 2 usage).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Some(n) = cfg.threads {
        // only the first call in a process can size the global pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let result = dispatch(&cfg, err).and_then(|r| Ok((render(&r, cfg.format)?, r.ok)));
    match result {
        Ok((bytes, ok)) => {
            let written = match &cfg.out {
                Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(&bytes).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) if ok => 0,
                Ok(()) => {
                    let _ = writeln!(err, "verification failed");
                    1
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    1
                }
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}\n\nFor more information, try '--help'.");
            2
        }
        Err(Failure::Compute(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

pub fn parse_and_dispatch() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_parsers() {
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(parse_complex("0.5, 14.1").unwrap(), Complex64::new(0.5, 14.1));
        assert!(parse_complex("1,2,3").is_err());
        assert_eq!(parse_grid("40,60").unwrap(), (40, 60));
        assert!(parse_grid("40").is_err() && parse_grid("0,3").is_err());
    }

    #[test]
    fn fifteen_digits() {
        assert_eq!(num(std::f64::consts::PI).to_string(), "3.14159265358979");
        assert_eq!(num(f64::NAN), Value::Null);
        assert_eq!(fmt15(0.1 + 0.2), "0.3");
    }

    #[test]
    fn in_process_run() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(["petersson-lab", "charlist", "--modulus", "8"], &mut out, &mut err);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["characters"].as_array().unwrap().len(), 4);
        let code = run(["petersson-lab", "--help"], &mut out, &mut err);
        assert_eq!(code, 0);
    }
}
