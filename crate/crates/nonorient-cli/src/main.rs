//! `nonorient`: batch front end for words, verifications, NSK classes and
//! blowup flows.

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use nonorient::action::{evaluate, homology_matrix_z, homology_matrix_z2, outer_equal, Bounds, CurveClass};
use nonorient::catalog::{self, Check, CheckTask, Status};
use nonorient::nec;
use nonorient::notation::{parse, parse_word, GenWord};
use nonorient::pi1::{format_element, ConjConfig, Conjugacy, SurfaceGroup};
use nonorient::words::reduce;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::io::Write;
use std::process::ExitCode;

/// `println!` that ignores a closed stdout instead of panicking.
macro_rules! say {
    () => {{ let _ = writeln!(std::io::stdout().lock()); }};
    ($($t:tt)*) => {{ let _ = writeln!(std::io::stdout().lock(), $($t)*); }};
}

#[derive(Parser, Debug)]
#[command(name = "nonorient", version, about = "Mapping classes of N_g, 2 <= g <= 5")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Opts {
    /// Longest conjugator accepted by the search.
    #[arg(long, global = true, env = "NONORIENT_BOUND", default_value_t = 16)]
    bound: usize,
    /// Largest |k| tried for the x1^k centralizer factor.
    #[arg(long = "power-bound", global = true, env = "NONORIENT_POWER_BOUND", default_value_t = 8)]
    power_bound: i64,
    /// Orbit size explored per side of a conjugacy search.
    #[arg(long = "orbit-cap", global = true, env = "NONORIENT_ORBIT_CAP", default_value_t = 20_000)]
    orbit_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Report every elapsed time as 0 so output is byte-stable.
    #[arg(long = "no-timing", global = true)]
    no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Parse a word and print its expansion and free reduction.
    Parse {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        word: String,
    },
    /// Evaluate a word as an automorphism of the surface group.
    Eval {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        word: String,
        /// Curve label such as g1, g1,3, a2, b or m1.
        #[arg(long)]
        curve: Option<String>,
    },
    /// Decide whether two words give the same mapping class.
    Equal {
        #[arg(long)]
        genus: usize,
        left: String,
        right: String,
    },
    /// Run verification checks.
    Verify(VerifyArgs),
    /// Classify the NSK-maps of one genus, or of all of them.
    Classify {
        #[arg(long)]
        genus: Option<usize>,
    },
    /// Blow up every class of genus 2 or 4 and resolve the targets.
    BlowupFlow {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        from: u8,
    },
    /// Everything: all checks, classes and flows.
    Report,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("selection").required(true).args(["class", "relations", "derivations", "all"])))]
struct VerifyArgs {
    /// One catalog class, e.g. `4;2,1`.
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    relations: bool,
    #[arg(long)]
    derivations: bool,
    #[arg(long)]
    all: bool,
    /// Count inconclusive checks as failures (default for --all).
    #[arg(long, overrides_with = "no_strict")]
    strict: bool,
    #[arg(long = "no-strict", overrides_with = "strict")]
    no_strict: bool,
}

/// A usage or input error; exits with 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

#[derive(Serialize)]
struct CheckRow {
    check_id: String,
    kind: String,
    inputs: Map<String, Value>,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    detail: String,
    elapsed_ms: u64,
}

impl CheckRow {
    fn new(c: &Check, no_timing: bool) -> Self {
        CheckRow {
            check_id: c.id.clone(),
            kind: c.kind.to_string(),
            inputs: c.inputs.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect(),
            status: c.status.to_string(),
            witness: c.witness.clone(),
            detail: c.detail.clone(),
            elapsed_ms: if no_timing { 0 } else { c.elapsed_ms },
        }
    }
}

#[derive(Serialize)]
struct Summary {
    total: usize,
    pass: usize,
    fail: usize,
    inconclusive: usize,
    strict: bool,
    ok: bool,
}

#[derive(Serialize)]
struct Report {
    summary: Summary,
    checks: Vec<CheckRow>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.opts.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.opts.jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn bounds(o: &Opts) -> Bounds {
    Bounds { conj: ConjConfig { bound: o.bound, orbit_cap: o.orbit_cap }, power_bound: o.power_bound }
}

fn check_genus(g: usize) -> Result<(), Usage> {
    if (2..=5).contains(&g) {
        Ok(())
    } else {
        Err(Usage(format!("genus {g} is outside 2..=5")))
    }
}

/// Returns whether every requested check passed.
fn run(cli: &Cli) -> Result<bool, Usage> {
    let o = &cli.opts;
    let b = bounds(o);
    match &cli.cmd {
        Cmd::Parse { genus, word } => {
            check_genus(*genus)?;
            cmd_parse(*genus, word, o.format)
        }
        Cmd::Eval { genus, word, curve } => {
            check_genus(*genus)?;
            cmd_eval(*genus, word, curve.as_deref(), &b, o.format)
        }
        Cmd::Equal { genus, left, right } => {
            check_genus(*genus)?;
            cmd_equal(*genus, left, right, &b, o.format)
        }
        Cmd::Verify(v) => {
            let strict = if v.all { !v.no_strict } else { v.strict };
            let tasks = if let Some(label) = &v.class {
                catalog::class_tasks(label, b)?
            } else if v.relations {
                let mut t = Vec::new();
                for g in 3..=5 {
                    t.extend(catalog::relation_tasks(g, b));
                    t.extend(catalog::rel_y_ij_tasks(g, b));
                }
                t
            } else if v.derivations {
                catalog::derivation_tasks(b)
            } else {
                catalog::all_tasks(b)
            };
            let report = run_tasks(&tasks, strict, o.no_timing);
            emit_report(&report, o.format);
            Ok(report.summary.ok)
        }
        Cmd::Classify { genus } => {
            let gs: Vec<usize> = match genus {
                Some(g) => {
                    check_genus(*g)?;
                    vec![*g]
                }
                None => (2..=5).collect(),
            };
            emit_classes(&gs, o.format)?;
            Ok(true)
        }
        Cmd::BlowupFlow { from } => {
            if *from != 2 && *from != 4 {
                return Err(Usage("--from takes 2 or 4".into()));
            }
            emit_flow(*from as usize, o.format)?;
            Ok(true)
        }
        Cmd::Report => {
            let report = run_tasks(&catalog::all_tasks(b), true, o.no_timing);
            emit_report(&report, o.format);
            if o.format == Format::Md {
                say!();
                emit_classes(&[2, 3, 4, 5], o.format)?;
                for g in [2, 4] {
                    say!();
                    emit_flow(g, o.format)?;
                }
            }
            Ok(report.summary.ok)
        }
    }
}

/// Runs tasks on the pool; results keep task order.
fn run_tasks(tasks: &[CheckTask], strict: bool, no_timing: bool) -> Report {
    let checks: Vec<Check> = tasks.par_iter().map(CheckTask::run).collect();
    let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
    let (pass, fail, inconclusive) = (count(Status::Pass), count(Status::Fail), count(Status::Inconclusive));
    Report {
        summary: Summary {
            total: checks.len(),
            pass,
            fail,
            inconclusive,
            strict,
            ok: fail == 0 && (!strict || inconclusive == 0),
        },
        checks: checks.iter().map(|c| CheckRow::new(c, no_timing)).collect(),
    }
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn emit_report(r: &Report, format: Format) {
    match format {
        Format::Json => say!("{}", serde_json::to_string_pretty(r).expect("report serializes")),
        Format::Md => {
            say!("| check | kind | status | witness | detail | ms |");
            say!("|---|---|---|---|---|---|");
            for c in &r.checks {
                say!(
                    "| {} | {} | {} | {} | {} | {} |",
                    md_cell(&c.check_id),
                    c.kind,
                    c.status,
                    md_cell(c.witness.as_deref().unwrap_or("")),
                    md_cell(&c.detail),
                    c.elapsed_ms
                );
            }
            let s = &r.summary;
            say!();
            say!(
                "{} checks: {} pass, {} fail, {} inconclusive (strict: {}) => {}",
                s.total,
                s.pass,
                s.fail,
                s.inconclusive,
                s.strict,
                if s.ok { "OK" } else { "FAILED" }
            );
        }
    }
}

fn print_json(v: &Value) {
    say!("{}", serde_json::to_string_pretty(v).expect("value serializes"));
}

fn cmd_parse(genus: usize, text: &str, format: Format) -> Result<bool, Usage> {
    let expr = parse(text, genus)?;
    let word = parse_word(text, genus)?;
    let reduced = reduce(&word);
    match format {
        Format::Json => print_json(&json!({
            "genus": genus,
            "expression": expr.to_string(),
            "expanded": word.to_string(),
            "length": word.len(),
            "reduced": reduced.to_string(),
            "reduced_length": reduced.len(),
        })),
        Format::Md => {
            say!("expression: {expr}");
            say!("expanded:   {word} ({} letters)", word.len());
            say!("reduced:    {reduced} ({} letters)", reduced.len());
        }
    }
    Ok(true)
}

/// The `Gamma(S)` classes (or inverses) conjugate to `image`.
fn gamma_matches(group: &SurfaceGroup, image: &[u8], cfg: &ConjConfig) -> Vec<String> {
    let g = group.genus();
    let mut out = Vec::new();
    for mask in 1u32..(1 << g) {
        let set: Vec<usize> = (1..=g).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let c = CurveClass::Gamma(set);
        let Ok(el) = c.element(g) else { continue };
        if group.is_conjugate(image, &el, cfg).is_yes() {
            out.push(c.to_string());
        }
        let inv = nonorient::pi1::invert(&el);
        if group.is_conjugate(image, &inv, cfg).is_yes() {
            out.push(format!("{c}^-1"));
        }
    }
    out
}

fn cmd_eval(genus: usize, text: &str, curve: Option<&str>, b: &Bounds, format: Format) -> Result<bool, Usage> {
    let word: GenWord = parse_word(text, genus)?;
    let phi = evaluate(&word)?;
    let images: Vec<String> = phi.images().iter().map(|w| format_element(w)).collect();
    let z2 = homology_matrix_z2(&phi);
    let z = homology_matrix_z(&phi).rows();
    let identity = phi.is_identity();
    let curve_info = match curve {
        None => None,
        Some(label) => {
            let c = CurveClass::parse(label)?;
            let el = c.element(genus)?;
            let img = phi.apply(&el);
            let matches = gamma_matches(phi.group(), &img, &b.conj);
            Some((c, format_element(&img), matches))
        }
    };
    match format {
        Format::Json => {
            let mut v = json!({
                "genus": genus,
                "word": word.to_string(),
                "identity": identity,
                "images": images,
                "homology_z2": z2,
                "homology_z": z,
            });
            if let Some((c, img, m)) = &curve_info {
                v["curve"] = json!({ "curve": c.to_string(), "image": img, "conjugate_to": m });
            }
            print_json(&v);
        }
        Format::Md => {
            say!("word: {word}");
            if identity {
                say!("identity automorphism");
            }
            for (k, img) in images.iter().enumerate() {
                say!("x{} -> {img}", k + 1);
            }
            say!("Z/2 homology matrix:");
            for row in &z2 {
                let r: Vec<String> = row.iter().map(u8::to_string).collect();
                say!("  {}", r.join(" "));
            }
            if let Some((c, img, m)) = &curve_info {
                say!("{c} -> {img}");
                if m.is_empty() {
                    say!("image is conjugate to no gamma class within the search bound");
                } else {
                    say!("image is conjugate to {}", m.join(", "));
                }
            }
        }
    }
    Ok(true)
}

fn cmd_equal(genus: usize, left: &str, right: &str, b: &Bounds, format: Format) -> Result<bool, Usage> {
    let u = parse_word(left, genus)?;
    let v = parse_word(right, genus)?;
    let res = outer_equal(&u, &v, b)?;
    let (status, witness, detail) = match &res {
        Conjugacy::Yes(c) => ("pass", Some(format_element(c)), "equal as mapping classes".to_string()),
        Conjugacy::No(inv) => ("fail", None, format!("different: separated by {inv}")),
        Conjugacy::Inconclusive => ("inconclusive", None, "search bound exhausted".to_string()),
    };
    match format {
        Format::Json => {
            let mut v = json!({ "genus": genus, "left": left, "right": right, "status": status, "detail": detail });
            if let Some(w) = &witness {
                v["witness"] = json!(w);
            }
            print_json(&v);
        }
        Format::Md => match &witness {
            Some(w) => say!("{status}: {detail} (inner by {w})"),
            None => say!("{status}: {detail}"),
        },
    }
    Ok(res.is_yes())
}

fn emit_classes(genera: &[usize], format: Format) -> Result<(), Usage> {
    let mut all = Vec::new();
    for &g in genera {
        for c in nec::classes(g)? {
            all.push((g, c));
        }
    }
    match format {
        Format::Json => {
            let rows: Vec<Value> = all
                .iter()
                .map(|(g, c)| {
                    json!({
                        "genus": g,
                        "label": c.label,
                        "signature": c.signature.to_string(),
                        "profile": c.profile.to_string(),
                        "m": c.m,
                        "members": c.members.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            print_json(&Value::Array(rows));
        }
        Format::Md => {
            say!("| genus | class | signature | profile (r,n,t) | m | maps |");
            say!("|---|---|---|---|---|---|");
            for (g, c) in &all {
                let m = c.m.map(|m| m.to_string()).unwrap_or_else(|| "-".into());
                say!("| {g} | {} | {} | {} | {m} | {} |", c.label, c.signature, c.profile, c.members.len());
            }
            for &g in genera {
                say!("genus {g}: {} classes", all.iter().filter(|(h, _)| *h == g).count());
            }
        }
    }
    Ok(())
}

fn emit_flow(from: usize, format: Format) -> Result<(), Usage> {
    let edges = nec::blowup_flow(from)?;
    let sigma = nec::sigma_identities(from)?;
    match format {
        Format::Json => {
            let e: Vec<Value> = edges
                .iter()
                .map(|e| {
                    json!({
                        "source": e.source,
                        "kind": e.kind.name(),
                        "signature": e.signature.to_string(),
                        "profile": e.profile.to_string(),
                        "target": e.target,
                    })
                })
                .collect();
            let s: Vec<Value> =
                sigma.iter().map(|s| json!({ "id": s.id, "statement": s.statement, "holds": s.holds })).collect();
            print_json(&json!({ "from": from, "edges": e, "identities": s }));
        }
        Format::Md => {
            say!("blowup flow from genus {from}:");
            for e in &edges {
                let t = e.target.as_deref().unwrap_or("(no class)");
                say!("  {} --{}--> {} {} = {t}", e.source, e.kind.name(), e.signature, e.profile);
            }
            for s in &sigma {
                say!("  [{}] {}: {}", if s.holds { "ok" } else { "FAIL" }, s.id, s.statement);
            }
        }
    }
    Ok(())
}
