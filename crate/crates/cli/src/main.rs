use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use ttk_core::braid::{gttk_braid, ttk_braid, BraidWord, GeneralizedTTKSpec, TwistedTorusSpec};
use ttk_core::diagram::{braid_closure, dt_code, parse_dt_file};
use ttk_core::jones::{determinant, jones_of_braid, Limits, Method, DEFAULT_STATESUM_LIMIT, DEFAULT_TL_LIMIT};
use ttk_core::poly::{LaurentPoly, Rational};
use ttk_core::surgery::{
    cfrac_eval, cfrac_expand, h1, kirby_reduce, parse_presentation, parse_script, render_presentation,
    ContinuedFraction,
};

#[derive(Parser, Debug)]
#[command(
    name = "ttk",
    version,
    about = "Twisted torus knots: braids, Jones polynomials, DT codes and surgery calculus"
)]
struct Cli {
    /// Largest diagram the full state-sum enumeration accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_STATESUM_LIMIT, value_parser = positive)]
    statesum_limit: usize,
    /// Largest strand count the Temperley-Lieb path accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_TL_LIMIT, value_parser = positive)]
    tl_limit: usize,
    /// Compute Jones polynomials by full state-sum enumeration.
    #[arg(long, global = true)]
    oracle: bool,
    /// Write results here instead of standard output.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("`{s}` is not a positive integer")),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the braid of a (generalized) twisted torus knot.
    #[command(subcommand)]
    Gen(GenKind),
    /// Jones polynomial rows `name span=(m,M) coeffs=[...]`.
    Jones(Inputs),
    /// Canonical DT codes of braid closures.
    Dt {
        #[command(flatten)]
        inputs: Inputs,
        /// Check a `name: code` DT file instead.
        #[arg(long, value_name = "FILE")]
        validate: Option<PathBuf>,
    },
    /// Run a move script on a surgery presentation and print the trace.
    Kirby { presentation: PathBuf, script: PathBuf },
    /// Negative continued fraction of each rational, or the value of each
    /// comma-separated expansion with `--eval`.
    Cfrac {
        #[arg(required = true, allow_hyphen_values = true)]
        values: Vec<String>,
        #[arg(long)]
        eval: bool,
    },
    /// First homology of a surgery presentation.
    Homology { presentation: PathBuf },
    /// Group braids by Jones polynomial and determinant.
    Fingerprint(Inputs),
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// T(p,q,r,s): s full twists on r strands of the (p,q) torus braid.
    Ttk {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_negative_numbers = true)]
        r: i64,
        #[arg(allow_negative_numbers = true)]
        s: i64,
    },
    /// Torus braid followed by `stab+`, `stab-` and `twist first width s` ops.
    Gttk {
        #[arg(allow_negative_numbers = true)]
        p: i64,
        #[arg(allow_negative_numbers = true)]
        q: i64,
        #[arg(allow_hyphen_values = true)]
        ops: Vec<String>,
    },
}

/// Braids given as `[name=]n: letters`, on the command line or one per line
/// of a file.
#[derive(Args, Debug)]
struct Inputs {
    braids: Vec<String>,
    #[arg(short, long, value_name = "FILE")]
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug)]
struct RunConfig {
    limits: Limits,
    method: Method,
}

struct Item {
    label: Option<String>,
    braid: std::result::Result<BraidWord, String>,
}

impl Item {
    fn name(&self, index: usize) -> String {
        self.label.clone().unwrap_or_else(|| format!("#{}", index + 1))
    }
}

fn parse_item(text: &str, origin: &str) -> Item {
    let (label, body) = match text.split_once('=') {
        Some((name, body)) => (Some(name.trim().to_string()), body),
        None => (None, text),
    };
    let braid = body.parse::<BraidWord>().map_err(|e| format!("{origin}: {e}"));
    Item { label, braid }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn gather(inputs: &Inputs) -> Result<Vec<Item>> {
    let mut items: Vec<Item> =
        inputs.braids.iter().enumerate().map(|(i, t)| parse_item(t, &format!("argument {}", i + 1))).collect();
    if let Some(path) = &inputs.file {
        for (ln, line) in read(path)?.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                items.push(parse_item(line, &format!("{}:{}", path.display(), ln + 1)));
            }
        }
    }
    if items.is_empty() {
        bail!("no braids given; pass `n: letters` arguments or --file");
    }
    Ok(items)
}

/// Runs `f` on every item in parallel and reports in input order.
fn per_item<F>(items: &[Item], out: &mut String, f: F) -> bool
where
    F: Fn(&BraidWord) -> std::result::Result<String, String> + Sync,
{
    let results: Vec<_> = items.par_iter().map(|it| it.braid.clone().and_then(|b| f(&b))).collect();
    let mut ok = true;
    for (i, (it, r)) in items.iter().zip(results).enumerate() {
        match r {
            Ok(line) => match &it.label {
                Some(l) => *out += &format!("{l} {line}\n"),
                None => *out += &format!("{line}\n"),
            },
            Err(e) => {
                ok = false;
                eprintln!("error: {}: {e}", it.name(i));
            }
        }
    }
    ok
}

fn jones_row(v: &LaurentPoly) -> String {
    let (span, coeffs) = v.table_parts();
    format!("span={span} coeffs={coeffs}")
}

fn compute_jones(b: &BraidWord, cfg: &RunConfig) -> std::result::Result<LaurentPoly, String> {
    jones_of_braid(b, cfg.method, &cfg.limits).map_err(|e| e.to_string())
}

fn cmd_gen(kind: &GenKind, out: &mut String) -> Result<bool> {
    let b = match kind {
        GenKind::Ttk { p, q, r, s } => ttk_braid(&TwistedTorusSpec::new(*p, *q, *r, *s)?)?,
        GenKind::Gttk { p, q, ops } => {
            let ops = GeneralizedTTKSpec::parse_ops(ops.iter().map(String::as_str))?;
            gttk_braid(&GeneralizedTTKSpec::new(*p, *q, ops)?)?
        }
    };
    *out += &format!("{b}\n");
    Ok(true)
}

fn cmd_dt_validate(path: &Path, out: &mut String) -> Result<bool> {
    match parse_dt_file(&read(path)?) {
        Ok(codes) => {
            for (name, code) in codes {
                *out += &format!("{name}: {code}\n");
            }
            Ok(true)
        }
        Err((line, e)) => {
            eprintln!("error: {}:{line}: {e}", path.display());
            Ok(false)
        }
    }
}

fn cmd_dt(items: &[Item], out: &mut String) -> bool {
    let results: Vec<_> = items
        .par_iter()
        .map(|it| it.braid.clone().and_then(|b| dt_code(&braid_closure(&b)).map_err(|e| e.to_string())))
        .collect();
    let mut ok = true;
    for (i, (it, r)) in items.iter().zip(results).enumerate() {
        match (r, &it.label) {
            (Ok(code), Some(l)) => *out += &format!("{l}: {code}\n"),
            (Ok(code), None) => *out += &format!("{code}\n"),
            (Err(e), _) => {
                ok = false;
                eprintln!("error: {}: {e}", it.name(i));
            }
        }
    }
    ok
}

fn cmd_kirby(pres: &Path, script: &Path, out: &mut String) -> Result<bool> {
    let p = parse_presentation(&read(pres)?).with_context(|| format!("in {}", pres.display()))?;
    let s = parse_script(&read(script)?).with_context(|| format!("in {}", script.display()))?;
    *out += &format!("initial presentation, H1 = {}\n{}", h1(&p), render_presentation(&p));
    match kirby_reduce(&p, &s) {
        Ok((end, trace)) => {
            for (k, step) in trace.steps.iter().enumerate() {
                *out += &format!(
                    "step {} (line {}): {}; components {} -> {}; H1 = {}\n",
                    k + 1,
                    step.line,
                    step.mv,
                    step.components_before,
                    step.components_after,
                    step.h1
                );
                for note in &step.notes {
                    *out += &format!("note: {note}\n");
                }
                *out += &render_presentation(&step.presentation);
            }
            *out += &format!("final: {} component(s), H1 = {}\n", end.len(), h1(&end));
            Ok(true)
        }
        Err(e) => {
            eprintln!("error: {}: {e}", script.display());
            Ok(false)
        }
    }
}

fn cmd_cfrac(values: &[String], eval: bool, out: &mut String) -> bool {
    let mut ok = true;
    for v in values {
        let r = if eval {
            v.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|_| format!("`{t}` is not an integer")))
                .collect::<std::result::Result<Vec<_>, _>>()
                .and_then(|terms| ContinuedFraction::from_i64(&terms).map_err(|e| e.to_string()))
                .map(|cf| cfrac_eval(&cf).to_string())
        } else {
            v.parse::<Rational>()
                .map_err(|e| e.to_string())
                .and_then(|x| cfrac_expand(&x).map_err(|e| e.to_string()))
                .map(|cf| cf.to_string())
        };
        match r {
            Ok(line) => *out += &format!("{line}\n"),
            Err(e) => {
                ok = false;
                eprintln!("error: {v}: {e}");
            }
        }
    }
    ok
}

fn cmd_fingerprint(items: &[Item], cfg: &RunConfig, out: &mut String) -> bool {
    let results: Vec<_> = items
        .par_iter()
        .map(|it| {
            it.braid.clone().and_then(|b| compute_jones(&b, cfg)).map(|v| {
                let det = determinant(&v);
                (format!("det={det} {}", jones_row(&v)), v)
            })
        })
        .collect();
    let mut ok = true;
    let mut groups: Vec<(String, Vec<String>)> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    for (i, (it, r)) in items.iter().zip(results).enumerate() {
        match r {
            Ok((key, _)) => {
                let g = *index.entry(key.clone()).or_insert_with(|| {
                    groups.push((key.clone(), Vec::new()));
                    groups.len() - 1
                });
                groups[g].1.push(it.name(i));
            }
            Err(e) => {
                ok = false;
                eprintln!("error: {}: {e}", it.name(i));
            }
        }
    }
    for (k, (key, members)) in groups.iter().enumerate() {
        *out += &format!("group {} [{key}]: {}\n", k + 1, members.join(", "));
    }
    *out += "caveat: equal fingerprints mark candidates only; Jones polynomial and determinant do not prove two knots equal\n";
    ok
}

fn run(cli: &Cli, out: &mut String) -> Result<bool> {
    let cfg = RunConfig {
        limits: Limits { statesum_crossings: cli.statesum_limit, tl_strands: cli.tl_limit },
        method: if cli.oracle { Method::StateSum } else { Method::TemperleyLieb },
    };
    match &cli.command {
        Command::Gen(kind) => cmd_gen(kind, out),
        Command::Jones(inputs) => {
            let items = gather(inputs)?;
            Ok(per_item(&items, out, |b| compute_jones(b, &cfg).map(|v| jones_row(&v))))
        }
        Command::Dt { validate: Some(path), .. } => cmd_dt_validate(path, out),
        Command::Dt { inputs, validate: None } => Ok(cmd_dt(&gather(inputs)?, out)),
        Command::Kirby { presentation, script } => cmd_kirby(presentation, script, out),
        Command::Cfrac { values, eval } => Ok(cmd_cfrac(values, *eval, out)),
        Command::Homology { presentation } => {
            let p =
                parse_presentation(&read(presentation)?).with_context(|| format!("in {}", presentation.display()))?;
            *out += &format!("{}\n", h1(&p));
            Ok(true)
        }
        Command::Fingerprint(inputs) => Ok(cmd_fingerprint(&gather(inputs)?, &cfg, out)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(&cli, &mut out);
    let written = match &cli.output {
        Some(path) => fs::write(path, &out).with_context(|| format!("cannot write {}", path.display())),
        None => std::io::stdout().write_all(out.as_bytes()).context("cannot write output"),
    };
    match (result, written) {
        (Ok(true), Ok(())) => ExitCode::SUCCESS,
        (Ok(false), Ok(())) => ExitCode::FAILURE,
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
