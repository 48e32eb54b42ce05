//! The `polylift` command line.
//!
//! Exit codes: `0` when every check passes, `1` when a counterexample or
//! violation is found, `2` on usage, parse or budget errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lifting::{lift_and_verify, set_subalgebra};
use crate::logic::{
    demo_counterexample, equiv_sample, meaning, monk_subst, naive_subst, parse_formula, satisfies,
    transpose_vars, DemoSummary, EquivOptions, Equivalence, Model,
};
use crate::relalg::{parse_header, Context, Relation};
use crate::terms::{
    check_equation, instantiate_axioms, instantiate_derived, parse_equation, refutes, with_jobs,
    Axiom, Carrier, CheckOptions, Equation, Outcome, Strategy, DEFAULT_BUDGET,
};
use crate::transform::{
    decompose_mixed, decompose_replacements, enumerate_transformations, Transformation,
    MAX_ENUM_DIM,
};

pub const BUDGET_ENV: &str = "POLYLIFT_BUDGET";

#[derive(Parser, Debug)]
#[command(name = "polylift", version, about = "Finite polyadic set algebras and representation lifting")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Flags {
    /// Dimension (number of coordinates / variables).
    #[arg(long, global = true, default_value_t = 3)]
    alpha: usize,
    /// Size of the base set U.
    #[arg(long, global = true, default_value_t = 2)]
    base: usize,
    /// Number of colors H for lifting (default alpha + 1).
    #[arg(long = "h-size", global = true)]
    h_size: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum assignment evaluations for exhaustive checks.
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, conflicts_with = "sampled")]
    exhaustive: bool,
    /// Check N random assignments instead of all of them.
    #[arg(long, global = true, value_name = "N")]
    sampled: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check every (F0)-(F9) instance in the full set algebra.
    Axioms {
        /// Print the instances instead of checking them.
        #[arg(long)]
        list: bool,
    },
    /// Check every (S1)-(S6) instance in the full set algebra.
    Derived {
        #[arg(long)]
        list: bool,
    },
    /// Try to refute equations over bases 1..=base.
    Validate {
        /// Equations `lhs = rhs` in prefix syntax.
        equations: Vec<String>,
        /// File with one equation per line (`#` starts a comment).
        #[arg(long)]
        file: Option<PathBuf>,
        /// Re-evaluate a witness `alpha=A base=B; x0=hex:..; ...` instead of searching.
        #[arg(long, value_name = "WITNESS")]
        check_witness: Option<String>,
    },
    /// Decompose a transformation (`"1 0 0"`) into generator words.
    Decompose {
        sigma: Option<String>,
        /// Round-trip every transformation of dimension alpha.
        #[arg(long)]
        all: bool,
    },
    /// Lift the representation of a generated set algebra and verify it.
    Lift {
        /// Generator relation bodies (`{(0,1)}` or `hex:..`); random if absent.
        #[arg(long = "relation")]
        relations: Vec<String>,
        /// Number of random generators.
        #[arg(long, default_value_t = 1)]
        generators: usize,
    },
    /// Evaluate a formula in a model.
    Sat {
        formula: String,
        /// `alpha=A base=B; R0 = {..}; ...`
        #[arg(long)]
        model: String,
        /// Values of v0, v1, ...; prints the meaning relation when absent.
        #[arg(long)]
        assignment: Option<String>,
    },
    /// Substitute v_j for v_i in a formula.
    Subst {
        formula: String,
        i: usize,
        j: usize,
        #[arg(long, value_enum, default_value_t = SubstMode::Monk)]
        mode: SubstMode,
    },
    /// Search for a model separating two formulas.
    Equiv {
        phi: String,
        psi: String,
        #[arg(long = "max-base", default_value_t = 3)]
        max_base: usize,
        /// Interpretations per base enumerated before switching to sampling.
        #[arg(long = "model-budget", default_value_t = 1 << 16)]
        model_budget: u64,
    },
    /// Worked demonstrations.
    Demo {
        #[command(subcommand)]
        which: Demo,
        #[arg(long = "max-base", default_value_t = 3, global = true)]
        max_base: usize,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Demo {
    /// Naive substitution breaks an equivalence; Monk substitution does not.
    Counterexample,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SubstMode {
    Monk,
    Naive,
    Transpose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub alpha: usize,
    pub base_size: usize,
    pub h_size: usize,
    pub seed: u64,
    pub budget: u64,
    pub jobs: Option<usize>,
    pub output: OutputMode,
    pub sampled: Option<u64>,
}

impl RunConfig {
    fn from_flags(f: &Flags, env_budget: Option<u64>) -> Self {
        RunConfig {
            alpha: f.alpha,
            base_size: f.base,
            h_size: f.h_size.unwrap_or(f.alpha + 1),
            seed: f.seed,
            budget: env_budget.or(f.budget).unwrap_or(DEFAULT_BUDGET),
            jobs: f.jobs,
            output: if f.json { OutputMode::Json } else { OutputMode::Text },
            sampled: f.sampled,
        }
    }

    fn check_options(&self) -> CheckOptions {
        CheckOptions {
            strategy: match self.sampled {
                Some(n) => Strategy::Sampled { n, seed: self.seed },
                None => Strategy::Exhaustive,
            },
            budget: self.budget,
            jobs: None,
        }
    }

    fn json(&self) -> bool {
        self.output == OutputMode::Json
    }

    fn ctx(&self) -> Result<Context> {
        Context::new(self.alpha, self.base_size)
    }
}

/// One reported check, the stable JSON record.
#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub label: String,
    pub status: String,
    pub witness: Option<String>,
}

/// Renders a witness so that `validate --check-witness` can read it back.
pub fn format_witness(ctx: Context, vars: &[usize], assignment: &[Relation]) -> String {
    let mut s = ctx.to_string();
    for &v in vars {
        s.push_str(&format!("; x{v}={}", assignment[v].to_hex()));
    }
    s
}

/// Parses `alpha=A base=B; x0=<relation>; …` into a context and assignment.
pub fn parse_witness(text: &str) -> Result<(Context, BTreeMap<usize, Relation>)> {
    let mut parts = text.split(';').map(str::trim).filter(|p| !p.is_empty());
    let header = parts.next().ok_or_else(|| Error::parse(0, "empty witness"))?;
    let (ctx, rest) = parse_header(header)?;
    if !rest.trim().is_empty() {
        return Err(Error::parse(0, "unexpected text after witness header"));
    }
    let mut out = BTreeMap::new();
    for p in parts {
        let (name, body) = p
            .split_once('=')
            .ok_or_else(|| Error::parse(0, format!("expected `xk=relation`: {p:?}")))?;
        let v = name
            .trim()
            .strip_prefix('x')
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::parse(0, format!("bad variable {name:?}")))?;
        out.insert(v, Relation::parse_body(ctx, body)?);
    }
    Ok((ctx, out))
}

struct Io<'a> {
    out: &'a mut (dyn Write + Send),
}

impl Io<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", s.as_ref()).map_err(|e| Error::Internal(e.to_string()))
    }

    fn json<T: Serialize>(&mut self, v: &T) -> Result<()> {
        let s = serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))?;
        self.line(s)
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut (dyn Write + Send), err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let env_budget = match std::env::var(BUDGET_ENV) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(b) => Some(b),
            Err(_) => {
                let _ = writeln!(err, "error: {BUDGET_ENV} is not a number: {v:?}");
                return 2;
            }
        },
        Err(_) => None,
    };
    let cfg = RunConfig::from_flags(&cli.flags, env_budget);
    let mut io = Io { out };
    let result = with_jobs(cfg.jobs, || dispatch(&cli.command, &cfg, &mut io));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig, io: &mut Io) -> Result<i32> {
    match cmd {
        Command::Axioms { list } => {
            schema_suite(cfg, io, instantiate_axioms(cfg.alpha), *list)
        }
        Command::Derived { list } => {
            schema_suite(cfg, io, instantiate_derived(cfg.alpha)?, *list)
        }
        Command::Validate {
            equations,
            file,
            check_witness,
        } => {
            let mut eqs = Vec::new();
            for e in equations {
                eqs.push(parse_equation(e)?);
            }
            if let Some(path) = file {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Internal(format!("{}: {e}", path.display())))?;
                for line in text.lines() {
                    let line = line.split('#').next().unwrap_or("").trim();
                    if !line.is_empty() {
                        eqs.push(parse_equation(line)?);
                    }
                }
            }
            if eqs.is_empty() {
                return Err(Error::parse(0, "no equations given"));
            }
            match check_witness {
                Some(w) => check_witness_cmd(cfg, io, &eqs, w),
                None => validate(cfg, io, &eqs),
            }
        }
        Command::Decompose { sigma, all } => decompose(cfg, io, sigma.as_deref(), *all),
        Command::Lift {
            relations,
            generators,
        } => lift(cfg, io, relations, *generators),
        Command::Sat {
            formula,
            model,
            assignment,
        } => sat(cfg, io, formula, model, assignment.as_deref()),
        Command::Subst {
            formula,
            i,
            j,
            mode,
        } => {
            let phi = parse_formula(formula)?;
            phi.check_dim(cfg.alpha)?;
            for &k in [i, j] {
                if k >= cfg.alpha {
                    return Err(Error::IndexOutOfRange {
                        index: k,
                        dim: cfg.alpha,
                    });
                }
            }
            let result = match mode {
                SubstMode::Monk => monk_subst(*i, *j, &phi),
                SubstMode::Naive => naive_subst(*i, *j, &phi),
                SubstMode::Transpose => transpose_vars(*i, *j, &phi),
            };
            if cfg.json() {
                io.json(&serde_json::json!({ "input": phi.to_string(), "result": result.to_string() }))?;
            } else {
                io.line(result.to_string())?;
            }
            Ok(0)
        }
        Command::Equiv {
            phi,
            psi,
            max_base,
            model_budget,
        } => {
            let phi = parse_formula(phi)?;
            let psi = parse_formula(psi)?;
            let opts = equiv_options(cfg, *max_base, *model_budget);
            let r = equiv_sample(&phi, &psi, &opts)?;
            let record = equivalence_record(&format!("{phi} == {psi}"), &r);
            if cfg.json() {
                io.json(&record)?;
            } else {
                io.line(format!("{}: {}", record.label, record.status))?;
                if let Some(w) = &record.witness {
                    io.line(format!("  witness: {w}"))?;
                }
                if cfg.sampled.is_some() || !matches!(&r, Equivalence::EquivalentUpTo { exhaustive, .. } if exhaustive.len() == opts.max_base) {
                    io.line(format!("  seed: {}", cfg.seed))?;
                }
            }
            Ok(if r.is_equivalent() { 0 } else { 1 })
        }
        Command::Demo { which, max_base } => match which {
            Demo::Counterexample => {
                let opts = equiv_options(cfg, *max_base, 1 << 16);
                let report = demo_counterexample(cfg.alpha, &opts)?;
                if cfg.json() {
                    io.json(&DemoSummary::from(&report))?;
                } else {
                    io.line(report.to_string())?;
                    io.line(format!("seed: {}", cfg.seed))?;
                    io.line(if report.confirms() { "demo: PASS" } else { "demo: FAIL" })?;
                }
                Ok(if report.confirms() { 0 } else { 1 })
            }
        },
    }
}

fn equiv_options(cfg: &RunConfig, max_base: usize, model_budget: u64) -> EquivOptions {
    let mut opts = EquivOptions::new(cfg.alpha, max_base);
    opts.budget = model_budget;
    opts.seed = cfg.seed;
    if let Some(n) = cfg.sampled {
        opts.samples = n;
    }
    opts
}

fn equivalence_record(label: &str, r: &Equivalence) -> Record {
    match r {
        Equivalence::EquivalentUpTo { max_base, .. } => Record {
            label: label.to_string(),
            status: format!("equivalent-up-to(base {max_base})"),
            witness: None,
        },
        Equivalence::Counterexample { model, assignment } => Record {
            label: label.to_string(),
            status: "counterexample".to_string(),
            witness: Some(format!(
                "{model}; s = {}",
                assignment
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )),
        },
    }
}

fn check_record(
    label: &str,
    eq: &Equation,
    ctx: Context,
    opts: &CheckOptions,
) -> Result<(Record, bool)> {
    let vars: Vec<usize> = eq.vars().into_iter().collect();
    Ok(match check_equation(eq, &ctx, opts)? {
        Outcome::Valid { .. } => (
            Record {
                label: label.to_string(),
                status: format!("valid-up-to({})", ctx.label()),
                witness: None,
            },
            true,
        ),
        Outcome::Counterexample { assignment, .. } => (
            Record {
                label: label.to_string(),
                status: "counterexample".to_string(),
                witness: Some(format_witness(ctx, &vars, &assignment)),
            },
            false,
        ),
    })
}

#[derive(Serialize)]
struct SuiteReport {
    carrier: String,
    strategy: Strategy,
    instances: usize,
    results: Vec<Record>,
}

fn schema_suite(cfg: &RunConfig, io: &mut Io, axioms: Vec<Axiom>, list: bool) -> Result<i32> {
    if list {
        for ax in &axioms {
            io.line(format!("{}: {}", ax.label, ax.equation))?;
        }
        io.line(format!("{} instances", axioms.len()))?;
        return Ok(0);
    }
    let ctx = cfg.ctx()?;
    let opts = cfg.check_options();
    let mut results = Vec::with_capacity(axioms.len());
    let mut per_schema: BTreeMap<&str, (usize, Vec<usize>)> = BTreeMap::new();
    for (n, ax) in axioms.iter().enumerate() {
        let (rec, ok) = check_record(&ax.label, &ax.equation, ctx, &opts)?;
        let entry = per_schema.entry(ax.schema).or_default();
        entry.0 += 1;
        if !ok {
            entry.1.push(n);
        }
        results.push(rec);
    }
    let failed = per_schema.values().any(|(_, f)| !f.is_empty());
    if cfg.json() {
        io.json(&SuiteReport {
            carrier: ctx.label(),
            strategy: opts.strategy,
            instances: axioms.len(),
            results,
        })?;
    } else {
        for (schema, (count, fails)) in &per_schema {
            if fails.is_empty() {
                io.line(format!("{schema}: PASS ({count} instances)"))?;
            } else {
                io.line(format!("{schema}: FAIL ({} of {count} instances)", fails.len()))?;
                for &n in fails {
                    let r = &results[n];
                    io.line(format!(
                        "  {}: {}  witness: {}",
                        r.label,
                        axioms[n].equation,
                        r.witness.as_deref().unwrap_or("")
                    ))?;
                }
            }
        }
        if let Strategy::Sampled { seed, .. } = opts.strategy {
            io.line(format!("seed: {seed}"))?;
        }
        let verdict = if failed {
            "counterexample found".to_string()
        } else {
            format!("valid-up-to({})", ctx.label())
        };
        io.line(format!("{} instances: {verdict}", axioms.len()))?;
    }
    Ok(if failed { 1 } else { 0 })
}

fn validate(cfg: &RunConfig, io: &mut Io, eqs: &[Equation]) -> Result<i32> {
    let opts = cfg.check_options();
    let mut results = Vec::new();
    let mut failed = false;
    for eq in eqs {
        let label = eq.to_string();
        let mut carriers = Vec::new();
        let mut record = None;
        for base in 1..=cfg.base_size {
            let ctx = Context::new(cfg.alpha, base)?;
            let (rec, ok) = check_record(&label, eq, ctx, &opts)?;
            if !ok {
                record = Some(rec);
                break;
            }
            carriers.push(ctx.label());
        }
        let record = record.unwrap_or_else(|| Record {
            label,
            status: format!("valid-up-to({})", carriers.join(", ")),
            witness: None,
        });
        failed |= record.witness.is_some();
        results.push(record);
    }
    if cfg.json() {
        io.json(&results)?;
    } else {
        for r in &results {
            io.line(format!("{}: {}", r.label, r.status))?;
            if let Some(w) = &r.witness {
                io.line(format!("  witness: {w}"))?;
            }
        }
        if let Some(n) = cfg.sampled {
            io.line(format!("sampled {n} assignments per carrier, seed: {}", cfg.seed))?;
        }
    }
    Ok(if failed { 1 } else { 0 })
}

fn check_witness_cmd(cfg: &RunConfig, io: &mut Io, eqs: &[Equation], text: &str) -> Result<i32> {
    let (ctx, given) = parse_witness(text)?;
    let mut results = Vec::new();
    let mut refuted_any = false;
    for eq in eqs {
        let width = eq.vars().last().map_or(0, |&v| v + 1);
        let mut assignment = vec![Relation::empty(ctx); width];
        for v in eq.vars() {
            assignment[v] = given.get(&v).cloned().ok_or(Error::UnboundVariable(v))?;
        }
        let refuted = refutes(eq, &ctx, &assignment)?;
        refuted_any |= refuted;
        results.push(Record {
            label: eq.to_string(),
            status: if refuted { "refuted" } else { "not-refuted" }.to_string(),
            witness: Some(text.trim().to_string()),
        });
    }
    if cfg.json() {
        io.json(&results)?;
    } else {
        for r in &results {
            io.line(format!("{}: {}", r.label, r.status))?;
        }
    }
    Ok(if refuted_any { 1 } else { 0 })
}

#[derive(Serialize)]
struct DecomposeRecord {
    sigma: String,
    class: String,
    mixed: String,
    replacements: Option<String>,
    round_trip: bool,
}

fn decompose_one(sigma: &Transformation) -> Result<DecomposeRecord> {
    let dim = sigma.dim();
    let mixed = decompose_mixed(sigma);
    let mut ok = mixed.evaluate(dim)? == *sigma;
    if sigma.is_permutation() {
        ok &= mixed.is_transposition_only();
    }
    let replacements = if !sigma.is_permutation() && dim <= MAX_ENUM_DIM {
        let w = decompose_replacements(sigma)?;
        ok &= w.is_replacement_only() && w.evaluate(dim)? == *sigma;
        Some(w.to_string())
    } else {
        None
    };
    Ok(DecomposeRecord {
        sigma: sigma.to_string(),
        class: format!("{:?}", sigma.classify()).to_lowercase(),
        mixed: mixed.to_string(),
        replacements,
        round_trip: ok,
    })
}

fn decompose(cfg: &RunConfig, io: &mut Io, sigma: Option<&str>, all: bool) -> Result<i32> {
    if all {
        let maps = enumerate_transformations(cfg.alpha)?;
        let mut singular = 0;
        let mut failures = Vec::new();
        for s in &maps {
            let r = decompose_one(s)?;
            singular += usize::from(r.replacements.is_some());
            if !r.round_trip {
                failures.push(r.sigma);
            }
        }
        if cfg.json() {
            io.json(&serde_json::json!({
                "alpha": cfg.alpha,
                "transformations": maps.len(),
                "singular": singular,
                "failures": failures,
            }))?;
        } else {
            io.line(format!(
                "{} transformations ({} singular): {}",
                maps.len(),
                singular,
                if failures.is_empty() { "PASS" } else { "FAIL" }
            ))?;
            for f in &failures {
                io.line(format!("  round-trip failed: {f}"))?;
            }
        }
        return Ok(if failures.is_empty() { 0 } else { 1 });
    }
    let text = sigma.ok_or_else(|| Error::parse(0, "give a transformation or --all"))?;
    let sigma: Transformation = text.parse()?;
    let r = decompose_one(&sigma)?;
    if cfg.json() {
        io.json(&r)?;
    } else {
        io.line(format!("sigma: {} ({})", r.sigma, r.class))?;
        io.line(format!("mixed: {}", r.mixed))?;
        if let Some(w) = &r.replacements {
            io.line(format!("replacements: {w}"))?;
        }
        io.line(format!("round-trip: {}", if r.round_trip { "PASS" } else { "FAIL" }))?;
    }
    Ok(if r.round_trip { 0 } else { 1 })
}

fn lift(cfg: &RunConfig, io: &mut Io, relations: &[String], count: usize) -> Result<i32> {
    let ctx = cfg.ctx()?;
    let gens: Vec<Relation> = if relations.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        (0..count).map(|_| ctx.random_element(&mut rng)).collect()
    } else {
        relations
            .iter()
            .map(|r| Relation::parse_body(ctx, r))
            .collect::<Result<_>>()?
    };
    let (algebra, f) = set_subalgebra(ctx, &gens)?;
    let opts = CheckOptions {
        strategy: Strategy::Exhaustive,
        ..cfg.check_options()
    };
    let report = lift_and_verify(&algebra, &f, cfg.h_size, &opts)?;
    if cfg.json() {
        io.json(&serde_json::json!({
            "seed": cfg.seed,
            "generators": gens.iter().map(|g| g.to_text()).collect::<Vec<_>>(),
            "report": report,
        }))?;
    } else {
        for g in &gens {
            io.line(format!("generator: {}", g.to_text()))?;
        }
        if relations.is_empty() {
            io.line(format!("seed: {}", cfg.seed))?;
        }
        io.line(format!(
            "subalgebra: {} elements, alpha={} |U|={} |H|={} |V|={}",
            report.elements,
            report.dim,
            report.base,
            report.colors,
            report.base * report.colors
        ))?;
        for c in &report.checks {
            io.line(c.to_string())?;
        }
        io.line(format!("lift: {}", if report.passed() { "PASS" } else { "FAIL" }))?;
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn sat(
    cfg: &RunConfig,
    io: &mut Io,
    formula: &str,
    model: &str,
    assignment: Option<&str>,
) -> Result<i32> {
    let phi = parse_formula(formula)?;
    let model: Model = model.parse()?;
    match assignment {
        Some(text) => {
            let s = text
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(0, format!("bad value {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            let value = satisfies(&model, &s, &phi)?;
            if cfg.json() {
                io.json(&serde_json::json!({ "formula": phi.to_string(), "assignment": s, "satisfied": value }))?;
            } else {
                io.line(value.to_string())?;
            }
        }
        None => {
            let m = meaning(&model, &phi)?;
            if cfg.json() {
                io.json(&serde_json::json!({ "formula": phi.to_string(), "meaning": m.to_text() }))?;
            } else {
                io.line(format!("{} {m}", m.ctx()))?;
            }
        }
    }
    Ok(0)
}
