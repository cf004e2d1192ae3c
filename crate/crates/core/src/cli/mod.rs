//! Command-line surface: argument handling, dispatch and output.
//!
//! [`run`] is the whole program minus process exit, so tests can drive it
//! with in-memory writers.

pub mod parse;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::UniPoly;
use crate::driver::{evaluate, necessary_condition_principal, separate, VarImage};
use crate::error::Error;
use crate::groebner::Ideal;
use crate::mpoly::{vars_of, MPoly, Vars};
use crate::oracle::{oracle_algebra_slice, oracle_separable};
use crate::principal::minimal_separated_multiple;
use crate::sepsets::{fixtures, SepSet};
use crate::zerodim::PairFG;

pub use parse::{parse_list, parse_poly, print_poly};

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const DIAGNOSTIC: i32 = 2;
}

#[derive(Parser, Debug)]
#[command(name = "sepvar", version, about = "Separated polynomials f(x) - g(y) in bivariate ideals over Q")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Comma-separated variable names; the first plays x, the second y.
    #[arg(long, default_value = "x,y", global = true)]
    vars: String,
    /// Seed for randomized self-tests.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Re-check membership and divisibility of every reported result.
    #[arg(long, global = true)]
    verify: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug)]
struct GensInput {
    /// Generators separated by ';'.
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    gens: Option<String>,
    /// File with one generator per line; '#' starts a comment.
    #[arg(long)]
    file: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generators of the algebra of separated polynomials in an ideal.
    Separate(GensInput),
    /// Minimal separated multiple of a polynomial.
    Minsep {
        #[arg(long)]
        poly: String,
    },
    /// Whether some nonzero multiple of a polynomial is separated.
    IsSeparable {
        #[arg(long)]
        poly: String,
    },
    /// Brute-force reference computations.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Separated subsets of a finite grid.
    #[command(subcommand)]
    Sepset(SepsetCommand),
    /// Necessary condition for separability through a projection to two variables.
    Project {
        #[arg(long)]
        poly: String,
        /// Images of the x-side variables, e.g. "x1->x, x2->x^2".
        #[arg(long)]
        xi: String,
        /// Images of the y-side variables, e.g. "y1->y^2".
        #[arg(long)]
        eta: String,
    },
    /// Randomized consistency checks against the oracles.
    Selftest {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Searches for a separated multiple `q·p` with `deg q <= D`.
    Separable {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        max_deg: u32,
    },
    /// Pairs `(f, g)` of degree at most D with `f - g` in the ideal.
    Slice {
        #[command(flatten)]
        input: GensInput,
        #[arg(long)]
        max_deg: usize,
    },
}

#[derive(Args, Debug)]
struct GridInput {
    #[arg(long, requires_all = ["n", "points"], conflicts_with = "fixture")]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Points "(i,j), ..." with i a row in Z_m and j a column in Z_n.
    #[arg(long)]
    points: Option<String>,
    /// A built-in factor set, e.g. "x-y" or "x^2+xy+y^2".
    #[arg(long, required_unless_present = "m")]
    fixture: Option<String>,
}

#[derive(Subcommand, Debug)]
enum SepsetCommand {
    Closure(GridInput),
    Check(GridInput),
}

/// A failed command: exit code plus message.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::TooManyVariables(_) => exit::USAGE,
            _ => exit::DIAGNOSTIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: exit::USAGE,
        message: message.into(),
    }
}

fn diagnostic(message: impl Into<String>) -> Failure {
    Failure {
        code: exit::DIAGNOSTIC,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<Report, Failure>;

/// Command output in both renderings.
struct Report {
    text: String,
    json: Value,
}

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::USAGE } else { exit::SUCCESS };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => serde_json::to_string_pretty(&report.json).expect("serializable"),
            };
            let _ = writeln!(out, "{}", body.trim_end());
            exit::SUCCESS
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn declared_vars(list: &str) -> std::result::Result<Vars, Failure> {
    let names: Vec<&str> = list.split(',').map(str::trim).collect();
    if names.len() != 2 || names.iter().any(|n| n.is_empty()) {
        return Err(usage(format!("--vars needs exactly two names, got '{list}'")));
    }
    if names[0] == names[1] {
        return Err(usage("--vars names must differ"));
    }
    if let Some(bad) = names.iter().find(|n| !n.chars().all(|c| c.is_alphanumeric() || c == '_')) {
        return Err(usage(format!("invalid variable name '{bad}'")));
    }
    Ok(vars_of(&names))
}

fn read_gens(input: &GensInput, vars: &Vars) -> std::result::Result<Vec<MPoly>, Failure> {
    match (&input.gens, &input.file) {
        (Some(g), _) => Ok(parse_list(g, vars, false)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(parse_list(&parse::strip_comments(&text), vars, true)?)
        }
        (None, None) => Err(usage("either --gens or --file is required")),
    }
}

/// `(f, g)` rendered in the declared variable names.
fn pair_json(p: &PairFG, vars: &Vars) -> Value {
    json!({ "f": p.f.display_in(&vars[0]), "g": p.g.display_in(&vars[1]) })
}

fn pair_text(p: &PairFG, vars: &Vars) -> String {
    format!("({}, {})", p.f.display_in(&vars[0]), p.g.display_in(&vars[1]))
}

fn dispatch(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Separate(input) => {
            let vars = declared_vars(&cli.vars)?;
            cmd_separate(&read_gens(input, &vars)?, &vars, cli.verify)
        }
        Command::Minsep { poly } => {
            let vars = declared_vars(&cli.vars)?;
            cmd_minsep(&parse_poly(poly, &vars)?, &vars, cli.verify)
        }
        Command::IsSeparable { poly } => {
            let vars = declared_vars(&cli.vars)?;
            cmd_is_separable(&parse_poly(poly, &vars)?, cli.verify)
        }
        Command::Oracle(OracleCommand::Separable { poly, max_deg }) => {
            let vars = declared_vars(&cli.vars)?;
            cmd_oracle_separable(&parse_poly(poly, &vars)?, *max_deg)
        }
        Command::Oracle(OracleCommand::Slice { input, max_deg }) => {
            let vars = declared_vars(&cli.vars)?;
            cmd_oracle_slice(&read_gens(input, &vars)?, &vars, *max_deg)
        }
        Command::Sepset(SepsetCommand::Closure(g)) => cmd_sepset(&grid(g)?, true),
        Command::Sepset(SepsetCommand::Check(g)) => cmd_sepset(&grid(g)?, false),
        Command::Project { poly, xi, eta } => cmd_project(poly, xi, eta),
        Command::Selftest { count } => cmd_selftest(cli.seed, *count),
    }
}

fn cmd_separate(gens: &[MPoly], vars: &Vars, verify: bool) -> CmdResult {
    let ideal = Ideal::new(vars.clone(), gens.to_vec())?;
    let r = separate(&ideal)?;
    if verify {
        for g in &r.generators {
            if !ideal.contains(&g.to_mpoly(vars.clone()))? {
                return Err(diagnostic(format!("verification failed: {} is not in the ideal", pair_text(g, vars))));
            }
        }
        if let Some(a) = &r.a {
            for (p, g) in r.certificate_polynomials.iter().zip(&r.generators) {
                if evaluate(p, a) != *g {
                    return Err(diagnostic("verification failed: certificate does not evaluate to its generator"));
                }
            }
        }
    }
    let certs: Vec<String> = r.certificate_polynomials.iter().map(|p| p.display_in("t")).collect();
    let path = serde_json::to_value(r.path).expect("serializable");
    let mut text = format!("path: {}\ngenerators:\n", path.as_str().unwrap_or_default());
    for g in &r.generators {
        text.push_str(&format!("  {}\n", pair_text(g, vars)));
    }
    if let Some(a) = &r.a {
        text.push_str(&format!("a: {}\ncertificates:\n", pair_text(a, vars)));
        for c in &certs {
            text.push_str(&format!("  {c}\n"));
        }
    }
    let stages: Vec<Value> = r
        .stages
        .iter()
        .map(|s| json!({ "support": s.support, "kernel_dimension": s.kernel.len() }))
        .collect();
    Ok(Report {
        text,
        json: json!({
            "generators": r.generators.iter().map(|g| pair_json(g, vars)).collect::<Vec<_>>(),
            "certificates": certs,
            "a": r.a.as_ref().map(|a| pair_json(a, vars)),
            "path": path,
            "stages": stages,
        }),
    })
}

fn cmd_minsep(p: &MPoly, vars: &Vars, verify: bool) -> CmdResult {
    let r = minimal_separated_multiple(p)?;
    if verify && !r.trivial && r.generator.to_mpoly(vars.clone()).div_exact(p).is_err() {
        return Err(diagnostic("verification failed: output is not a multiple of the input"));
    }
    let separable = !r.trivial;
    let (f, g) = if separable {
        (Some(r.generator.f.display_in(&vars[0])), Some(r.generator.g.display_in(&vars[1])))
    } else {
        (None, None)
    };
    let mut text = format!("separable: {separable}\n");
    if let (Some(f), Some(g)) = (&f, &g) {
        text.push_str(&format!("f: {f}\ng: {g}\n"));
    }
    if let Some(n) = r.n {
        text.push_str(&format!("N: {n}\n"));
    }
    text.push_str(&format!("diagnostic: {}\n", r.diagnostic));
    Ok(Report {
        text,
        json: json!({
            "separable": separable,
            "f": f,
            "g": g,
            "N": r.n,
            "weight": r.weight.map(|w| [w.wx(), w.wy()]),
            "diagnostic": r.diagnostic,
        }),
    })
}

fn cmd_is_separable(p: &MPoly, verify: bool) -> CmdResult {
    let (separable, multiple) = if p.is_zero() {
        return Err(Error::ZeroInput("separability of zero").into());
    } else if !p.involves(0) || !p.involves(1) {
        (true, Some(p.primitive_normalized()))
    } else {
        let r = minimal_separated_multiple(p)?;
        (!r.trivial, (!r.trivial).then(|| r.generator.to_mpoly(p.vars().clone())))
    };
    if verify {
        if let Some(m) = &multiple {
            if !m.is_separated() || m.div_exact(p).is_err() {
                return Err(diagnostic("verification failed: multiple is not a separated multiple"));
            }
        }
    }
    let m = multiple.as_ref().map(print_poly);
    let mut text = format!("separable: {separable}\n");
    if let Some(m) = &m {
        text.push_str(&format!("multiple: {m}\n"));
    }
    Ok(Report {
        text,
        json: json!({ "separable": separable, "multiple": m }),
    })
}

fn cmd_oracle_separable(p: &MPoly, max_deg: u32) -> CmdResult {
    let w = oracle_separable(p, max_deg)?;
    let text = match &w {
        Some(w) => format!(
            "found: true\ncofactor: {}\nmultiple: {}\n",
            print_poly(&w.cofactor),
            print_poly(&w.multiple)
        ),
        None => format!("found: false (no cofactor of degree <= {max_deg})\n"),
    };
    Ok(Report {
        text,
        json: json!({
            "found": w.is_some(),
            "cofactor": w.as_ref().map(|w| print_poly(&w.cofactor)),
            "multiple": w.as_ref().map(|w| print_poly(&w.multiple)),
        }),
    })
}

fn cmd_oracle_slice(gens: &[MPoly], vars: &Vars, max_deg: usize) -> CmdResult {
    let ideal = Ideal::new(vars.clone(), gens.to_vec())?;
    let basis = oracle_algebra_slice(&ideal, max_deg)?;
    let mut text = format!("dimension: {}\n", basis.len());
    for b in &basis {
        text.push_str(&format!("  {}\n", pair_text(b, vars)));
    }
    Ok(Report {
        text,
        json: json!({
            "dimension": basis.len(),
            "basis": basis.iter().map(|b| pair_json(b, vars)).collect::<Vec<_>>(),
        }),
    })
}

fn grid(g: &GridInput) -> std::result::Result<SepSet, Failure> {
    if let Some(name) = &g.fixture {
        return fixtures::by_factor(name).ok_or_else(|| {
            let known: Vec<&str> = fixtures::all().iter().map(|l| l.factor).collect();
            usage(format!("unknown fixture '{name}'; known: {}", known.join(", ")))
        });
    }
    match (g.m, g.n, &g.points) {
        (Some(m), Some(n), Some(p)) => Ok(SepSet::new(m, n, parse::parse_points(p)?)?),
        _ => Err(usage("--m, --n and --points are required without --fixture")),
    }
}

fn points_text(s: &SepSet) -> String {
    s.points().iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(", ")
}

fn cmd_sepset(s: &SepSet, closure: bool) -> CmdResult {
    let target = if closure { s.closure() } else { s.clone() };
    let separated = target.is_separated();
    let mut text = format!("separated: {separated}\n");
    let mut json = json!({ "m": target.m(), "n": target.n(), "separated": separated });
    if closure {
        text.push_str(&format!("points: {}\n", points_text(&target)));
        json["points"] = json!(target.points().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>());
    }
    Ok(Report { text, json })
}

fn cmd_project(poly: &str, xi: &str, eta: &str) -> CmdResult {
    let xs = parse::parse_assignments(xi)?;
    let ys = parse::parse_assignments(eta)?;
    let names: Vec<&str> = xs.iter().chain(&ys).map(|(n, _)| n.as_str()).collect();
    let vars = vars_of(&names);
    if (1..names.len()).any(|k| names[..k].contains(&names[k])) {
        return Err(usage("variable names in --xi and --eta must be distinct"));
    }
    let p = parse_poly(poly, &vars)?;
    let image = |text: &str, var: &str| -> std::result::Result<UniPoly, Failure> {
        let u = parse_poly(text, &vars_of(&[var]))?;
        Ok(u.to_unipoly(0).expect("single variable"))
    };
    let mut images = Vec::new();
    for (_, t) in &xs {
        images.push(VarImage::X(image(t, "x")?));
    }
    for (_, t) in &ys {
        images.push(VarImage::Y(image(t, "y")?));
    }
    let r = necessary_condition_principal(&p, &images)?;
    Ok(Report {
        text: format!(
            "image: {}\npossibly separable: {}\ndiagnostic: {}\n",
            print_poly(&r.image),
            r.possibly_separable,
            r.diagnostic
        ),
        json: json!({
            "image": print_poly(&r.image),
            "possibly_separable": r.possibly_separable,
            "diagnostic": r.diagnostic,
        }),
    })
}

#[derive(Serialize)]
struct SelftestFailure {
    case: String,
    reason: String,
}

/// Random separated polynomials through the principal solver, and random
/// principal ideals through the pipeline, both checked against the oracles.
fn cmd_selftest(seed: u64, count: usize) -> CmdResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = vars_of(&["x", "y"]);
    let mut failures = Vec::new();
    let random_uni = |rng: &mut ChaCha8Rng| -> UniPoly {
        let d = rng.gen_range(1..=3);
        let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        c[0] = 0;
        c.push(rng.gen_range(1..=3));
        UniPoly::from_ints(&c)
    };
    for _ in 0..count {
        let pair = PairFG::new(random_uni(&mut rng), random_uni(&mut rng));
        let p = pair.to_mpoly(vars.clone());
        let case = print_poly(&p);
        let check = || -> std::result::Result<Option<String>, Error> {
            let r = minimal_separated_multiple(&p)?;
            if r.trivial {
                return Ok(Some("reported trivial".into()));
            }
            if r.generator.to_mpoly(vars.clone()).div_exact(&p).is_err() {
                return Ok(Some("output not divisible by input".into()));
            }
            let deg = r.generator.f.degree().unwrap_or(0) as u32;
            let pdeg = p.total_degree().unwrap_or(0);
            if deg > pdeg {
                if let Some(w) = oracle_separable(&p, deg - pdeg - 1)? {
                    if w.multiple.degree_in(0).unwrap_or(0) < deg {
                        return Ok(Some("oracle found a smaller multiple".into()));
                    }
                }
            }
            let ideal = Ideal::principal(p.clone())?;
            let gens = separate(&ideal)?.generators;
            let slice = oracle_algebra_slice(&ideal, 2 * deg as usize)?;
            let generated = crate::oracle::generated_slice(&gens, 2 * deg as usize, 4 * deg as usize);
            if !crate::oracle::same_span(&slice, &generated, 2 * deg as usize) {
                return Ok(Some("algebra slice differs from the oracle".into()));
            }
            Ok(None)
        };
        match check() {
            Ok(None) => {}
            Ok(Some(reason)) => failures.push(SelftestFailure { case, reason }),
            Err(e) => failures.push(SelftestFailure {
                case,
                reason: e.to_string(),
            }),
        }
    }
    let passed = count - failures.len();
    let mut text = format!("selftest (seed {seed}): {passed}/{count} passed\n");
    for f in &failures {
        text.push_str(&format!("  FAIL {}: {}\n", f.case, f.reason));
    }
    if !failures.is_empty() {
        return Err(diagnostic(text.trim_end().to_string()));
    }
    Ok(Report {
        text,
        json: json!({ "seed": seed, "count": count, "passed": passed, "failures": failures }),
    })
}
