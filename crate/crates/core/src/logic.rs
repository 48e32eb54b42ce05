//! Equality-free first-order logic with `α` variables `v0 … v(α−1)` and
//! `α`-ary relation symbols `R0, R1, …`.
//!
//! Formula text form: `(R0 v0 v1)`, `(not φ)`, `(and φ ψ)`, `(E 1 φ)`.
//! `(or φ ψ)`, `(imp φ ψ)` and `(A 1 φ)` are accepted as sugar.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::relalg::{parse_header, Context, Relation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `R_symbol(v_args[0], …, v_args[α−1])`.
    Atom { symbol: usize, args: Vec<usize> },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Exists(usize, Box<Formula>),
}

impl Formula {
    pub fn atom(symbol: usize, args: Vec<usize>) -> Formula {
        Formula::Atom { symbol, args }
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::and(Formula::not(a), Formula::not(b)))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::not(Formula::and(a, Formula::not(b)))
    }

    pub fn exists(i: usize, f: Formula) -> Formula {
        Formula::Exists(i, Box::new(f))
    }

    pub fn forall(i: usize, f: Formula) -> Formula {
        Formula::not(Formula::exists(i, Formula::not(f)))
    }

    pub fn symbols(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.walk_atoms(&mut |k, _| {
            out.insert(k);
        });
        out
    }

    fn walk_atoms(&self, f: &mut impl FnMut(usize, &[usize])) {
        match self {
            Formula::Atom { symbol, args } => f(*symbol, args),
            Formula::Not(a) | Formula::Exists(_, a) => a.walk_atoms(f),
            Formula::And(a, b) => {
                a.walk_atoms(f);
                b.walk_atoms(f);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom { .. } => 0,
            Formula::Not(a) | Formula::Exists(_, a) => 1 + a.depth(),
            Formula::And(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Every atom has exactly `dim` arguments and every variable is `< dim`.
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        match self {
            Formula::Atom { args, .. } => {
                if args.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: args.len(),
                    });
                }
                match args.iter().find(|&&v| v >= dim) {
                    Some(&index) => Err(Error::IndexOutOfRange { index, dim }),
                    None => Ok(()),
                }
            }
            Formula::Not(a) => a.check_dim(dim),
            Formula::And(a, b) => {
                a.check_dim(dim)?;
                b.check_dim(dim)
            }
            Formula::Exists(i, a) => {
                if *i >= dim {
                    return Err(Error::IndexOutOfRange { index: *i, dim });
                }
                a.check_dim(dim)
            }
        }
    }

    fn map_vars(&self, f: &impl Fn(usize) -> usize) -> Formula {
        match self {
            Formula::Atom { symbol, args } => Formula::Atom {
                symbol: *symbol,
                args: args.iter().map(|&v| f(v)).collect(),
            },
            Formula::Not(a) => Formula::not(a.map_vars(f)),
            Formula::And(a, b) => Formula::and(a.map_vars(f), b.map_vars(f)),
            Formula::Exists(i, a) => Formula::exists(f(*i), a.map_vars(f)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom { symbol, args } => {
                write!(f, "(R{symbol}")?;
                for v in args {
                    write!(f, " v{v}")?;
                }
                f.write_str(")")
            }
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Exists(i, a) => write!(f, "(E {i} {a})"),
        }
    }
}

struct FormulaParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> FormulaParser<'a> {
    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected `{c}`")))
        }
    }

    fn word(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let len = self.src[start..]
            .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
            .unwrap_or(self.src.len() - start);
        if len == 0 {
            return Err(Error::parse(start, "expected a word"));
        }
        self.pos += len;
        Ok((start, &self.src[start..start + len]))
    }

    fn number(&mut self, prefix: &str) -> Result<usize> {
        let (at, w) = self.word()?;
        w.strip_prefix(prefix)
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::parse(at, format!("expected {prefix}<n>, found {w:?}")))
    }

    fn formula(&mut self) -> Result<Formula> {
        self.expect('(')?;
        let (at, head) = self.word()?;
        let f = match head {
            "not" => Formula::not(self.formula()?),
            "and" => Formula::and(self.formula()?, self.formula()?),
            "or" => Formula::or(self.formula()?, self.formula()?),
            "imp" => Formula::implies(self.formula()?, self.formula()?),
            "E" => Formula::exists(self.number("")?, self.formula()?),
            "A" => Formula::forall(self.number("")?, self.formula()?),
            _ => {
                let symbol = head
                    .strip_prefix('R')
                    .and_then(|n| n.parse().ok())
                    .ok_or_else(|| Error::parse(at, format!("unknown head {head:?}")))?;
                let mut args = Vec::new();
                loop {
                    self.skip_ws();
                    if self.src[self.pos..].starts_with(')') {
                        break;
                    }
                    args.push(self.number("v")?);
                }
                Formula::atom(symbol, args)
            }
        };
        self.expect(')')?;
        Ok(f)
    }
}

pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut p = FormulaParser { src, pos: 0 };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos != src.len() {
        return Err(Error::parse(p.pos, "trailing input"));
    }
    Ok(f)
}

impl FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_formula(s)
    }
}

/// A finite structure interpreting relation symbols as `α`-ary relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    ctx: Context,
    relations: BTreeMap<usize, Relation>,
}

impl Model {
    pub fn new(ctx: Context) -> Self {
        Model {
            ctx,
            relations: BTreeMap::new(),
        }
    }

    pub fn with(mut self, symbol: usize, r: Relation) -> Result<Self> {
        self.interpret(symbol, r)?;
        Ok(self)
    }

    pub fn interpret(&mut self, symbol: usize, r: Relation) -> Result<()> {
        if r.ctx() != self.ctx {
            return Err(Error::ContextMismatch);
        }
        self.relations.insert(symbol, r);
        Ok(())
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn base(&self) -> usize {
        self.ctx.base()
    }

    pub fn relation(&self, symbol: usize) -> Option<&Relation> {
        self.relations.get(&symbol)
    }

    pub fn random(ctx: Context, symbols: &[usize], rng: &mut impl Rng) -> Self {
        let relations = symbols
            .iter()
            .map(|&k| (k, Relation::from_predicate(ctx, |_| rng.gen::<bool>())))
            .collect();
        Model { ctx, relations }
    }
}

/// `alpha=A base=B; R0 = {…}; R1 = hex:…`. Newlines also separate entries.
impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ctx)?;
        for (k, r) in &self.relations {
            write!(f, "; R{k} = {r}")?;
        }
        Ok(())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split([';', '\n']).map(str::trim).filter(|p| !p.is_empty());
        let header = parts.next().ok_or_else(|| Error::parse(0, "empty model"))?;
        let (ctx, rest) = parse_header(header)?;
        if !rest.trim().is_empty() {
            return Err(Error::parse(0, "unexpected text after model header"));
        }
        let mut model = Model::new(ctx);
        for p in parts {
            let (name, body) = p
                .split_once('=')
                .ok_or_else(|| Error::parse(0, format!("expected `Rk = relation`: {p:?}")))?;
            let symbol = name
                .trim()
                .strip_prefix('R')
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| Error::parse(0, format!("bad symbol {name:?}")))?;
            model.interpret(symbol, Relation::parse_body(ctx, body)?)?;
        }
        Ok(model)
    }
}

fn check_against(model: &Model, phi: &Formula, s: &[usize]) -> Result<()> {
    phi.check_dim(model.ctx.dim())?;
    if s.len() != model.ctx.dim() {
        return Err(Error::DimensionMismatch {
            expected: model.ctx.dim(),
            found: s.len(),
        });
    }
    if let Some(&bad) = s.iter().find(|&&v| v >= model.base()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            dim: model.base(),
        });
    }
    for k in phi.symbols() {
        if model.relation(k).is_none() {
            return Err(Error::UninterpretedSymbol(k));
        }
    }
    Ok(())
}

fn sat(model: &Model, s: &mut [usize], phi: &Formula, scratch: &mut Vec<usize>) -> bool {
    match phi {
        Formula::Atom { symbol, args } => {
            scratch.clear();
            scratch.extend(args.iter().map(|&v| s[v]));
            model.relations[symbol].contains(scratch)
        }
        Formula::Not(a) => !sat(model, s, a, scratch),
        Formula::And(a, b) => sat(model, s, a, scratch) && sat(model, s, b, scratch),
        Formula::Exists(i, a) => {
            let saved = s[*i];
            let mut found = false;
            for u in 0..model.base() {
                s[*i] = u;
                if sat(model, s, a, scratch) {
                    found = true;
                    break;
                }
            }
            s[*i] = saved;
            found
        }
    }
}

/// Tarskian satisfaction of `phi` by the assignment `s` (`v_i ↦ s[i]`).
pub fn satisfies(model: &Model, s: &[usize], phi: &Formula) -> Result<bool> {
    check_against(model, phi, s)?;
    let mut buf = s.to_vec();
    Ok(sat(model, &mut buf, phi, &mut Vec::new()))
}

/// The set of assignments satisfying `phi`, as a relation over the model base.
pub fn meaning(model: &Model, phi: &Formula) -> Result<Relation> {
    check_against(model, phi, &vec![0; model.ctx.dim()])?;
    let mut scratch = Vec::new();
    Ok(Relation::from_predicate(model.ctx, |s| {
        let mut buf = s.to_vec();
        sat(model, &mut buf, phi, &mut scratch)
    }))
}

/// Interchanges `v_i` and `v_j` everywhere, binders included.
pub fn transpose_vars(i: usize, j: usize, phi: &Formula) -> Formula {
    phi.map_vars(&|v| {
        if v == i {
            j
        } else if v == j {
            i
        } else {
            v
        }
    })
}

/// Substitution of `v_j` for `v_i` that stays within the same `α` variables.
///
/// Free occurrences of `v_i` become `v_j`; under a quantifier `∃v_j` the
/// bound `v_j` is renamed to `v_i`, which amounts to
/// `[v_i/v_j] ∃v_j ψ = ∃v_i (ψ with v_i and v_j interchanged)`.
/// Quantifiers `∃v_i` shield their body.
///
/// `s` satisfies the result iff `s(i/s_j)` satisfies `phi`.
pub fn monk_subst(i: usize, j: usize, phi: &Formula) -> Formula {
    if i == j {
        return phi.clone();
    }
    match phi {
        Formula::Atom { symbol, args } => Formula::Atom {
            symbol: *symbol,
            args: args.iter().map(|&v| if v == i { j } else { v }).collect(),
        },
        Formula::Not(a) => Formula::not(monk_subst(i, j, a)),
        Formula::And(a, b) => Formula::and(monk_subst(i, j, a), monk_subst(i, j, b)),
        Formula::Exists(k, a) if *k == i => Formula::exists(i, (**a).clone()),
        Formula::Exists(k, a) if *k == j => Formula::exists(i, transpose_vars(i, j, a)),
        Formula::Exists(k, a) => Formula::exists(*k, monk_subst(i, j, a)),
    }
}

/// Replaces every occurrence of `v_i` (free, bound or binder) by `v_j`.
pub fn naive_subst(i: usize, j: usize, phi: &Formula) -> Formula {
    phi.map_vars(&|v| if v == i { j } else { v })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivOptions {
    pub dim: usize,
    pub max_base: usize,
    /// Bases whose interpretation count stays within this bound are
    /// enumerated exhaustively; larger ones are sampled.
    pub budget: u64,
    pub samples: u64,
    pub seed: u64,
}

impl EquivOptions {
    pub fn new(dim: usize, max_base: usize) -> Self {
        EquivOptions {
            dim,
            max_base,
            budget: 1 << 16,
            samples: 2000,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// No model up to `max_base` separates the formulas. `exhaustive` lists
    /// the bases whose interpretations were all tried.
    EquivalentUpTo {
        max_base: usize,
        exhaustive: Vec<usize>,
        models: u64,
    },
    Counterexample {
        model: Model,
        assignment: Vec<usize>,
    },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::EquivalentUpTo { .. })
    }
}

impl fmt::Display for Equivalence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Equivalence::EquivalentUpTo { max_base, .. } => {
                write!(f, "equivalent-up-to(base {max_base})")
            }
            Equivalence::Counterexample { model, assignment } => {
                write!(f, "counterexample: model [{model}] assignment {assignment:?}")
            }
        }
    }
}

fn model_from_index(ctx: Context, symbols: &[usize], mut k: u128) -> Model {
    let size = ctx.size();
    let mut model = Model::new(ctx);
    for &sym in symbols {
        let word = (k & ((1u128 << size) - 1)) as u64;
        k >>= size;
        model.relations.insert(sym, Relation::from_word(ctx, word).unwrap());
    }
    model
}

fn separating_assignment(model: &Model, phi: &Formula, psi: &Formula) -> Option<Vec<usize>> {
    let a = meaning(model, phi).ok()?;
    let b = meaning(model, psi).ok()?;
    let diff = a.symmetric_difference(&b).ok()?;
    let first = diff.indices().next();
    first.map(|k| model.ctx.decode(k))
}

/// Searches for a model and assignment separating `phi` and `psi`, over
/// bases `1..=max_base`.
pub fn equiv_sample(phi: &Formula, psi: &Formula, opts: &EquivOptions) -> Result<Equivalence> {
    phi.check_dim(opts.dim)?;
    psi.check_dim(opts.dim)?;
    let symbols: Vec<usize> = phi.symbols().union(&psi.symbols()).copied().collect();
    let mut exhaustive = Vec::new();
    let mut models = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for base in 1..=opts.max_base {
        let ctx = Context::new(opts.dim, base)?;
        let bits = ctx.size() * symbols.len();
        let full = bits < 64 && (1u64 << bits) <= opts.budget && ctx.size() < 64;
        let hit = if full {
            exhaustive.push(base);
            let count = 1u128 << bits;
            models += count as u64;
            (0..count as u64).into_par_iter().find_map_first(|k| {
                let m = model_from_index(ctx, &symbols, k as u128);
                separating_assignment(&m, phi, psi).map(|s| (m, s))
            })
        } else {
            if opts.samples == 0 {
                return Err(Error::BudgetExceeded {
                    budget: opts.budget,
                    needed: 1u128.checked_shl(bits as u32).unwrap_or(u128::MAX),
                });
            }
            let batch: Vec<Model> = (0..opts.samples)
                .map(|_| Model::random(ctx, &symbols, &mut rng))
                .collect();
            models += opts.samples;
            batch.into_par_iter().find_map_first(|m| {
                separating_assignment(&m, phi, psi).map(|s| (m, s))
            })
        };
        if let Some((model, assignment)) = hit {
            let l = satisfies(&model, &assignment, phi)?;
            let r = satisfies(&model, &assignment, psi)?;
            if l == r {
                return Err(Error::Internal("witness failed to re-verify".into()));
            }
            return Ok(Equivalence::Counterexample { model, assignment });
        }
    }
    Ok(Equivalence::EquivalentUpTo {
        max_base: opts.max_base,
        exhaustive,
        models,
    })
}

/// A formula of at most `depth` connectives over `symbols`, uniform-ish over
/// shapes.
pub fn random_formula(rng: &mut impl Rng, dim: usize, depth: usize, symbols: &[usize]) -> Formula {
    let leaf = depth == 0 || rng.gen_ratio(1, 4);
    if leaf {
        let symbol = symbols[rng.gen_range(0..symbols.len())];
        let args = (0..dim).map(|_| rng.gen_range(0..dim)).collect();
        return Formula::atom(symbol, args);
    }
    match rng.gen_range(0..3) {
        0 => Formula::not(random_formula(rng, dim, depth - 1, symbols)),
        1 => Formula::and(
            random_formula(rng, dim, depth - 1, symbols),
            random_formula(rng, dim, depth - 1, symbols),
        ),
        _ => Formula::exists(
            rng.gen_range(0..dim),
            random_formula(rng, dim, depth - 1, symbols),
        ),
    }
}

/// The equivalent pair `R(v0) ≡ ∃v1 R(v0)`, with every argument slot of the
/// `α`-ary atom filled by `v0`.
pub fn demo_pair(dim: usize) -> (Formula, Formula) {
    let atom = Formula::atom(0, vec![0; dim]);
    (atom.clone(), Formula::exists(1, atom))
}

#[derive(Clone, Debug)]
pub struct DemoReport {
    pub dim: usize,
    pub pair: (Formula, Formula),
    pub pair_equivalence: Equivalence,
    pub naive: (Formula, Formula),
    pub naive_equivalence: Equivalence,
    pub monk: (Formula, Formula),
    pub monk_equivalence: Equivalence,
    /// `(model, assignment)` checks of the substitution law on the pair.
    pub law_checks: u64,
    pub law_holds: bool,
}

impl DemoReport {
    /// The pair is equivalent, the naive images are separated by a witness,
    /// and the Monk images stay equivalent.
    pub fn confirms(&self) -> bool {
        self.pair_equivalence.is_equivalent()
            && matches!(self.naive_equivalence, Equivalence::Counterexample { .. })
            && self.monk_equivalence.is_equivalent()
            && self.law_holds
    }

    pub fn witness(&self) -> Option<(&Model, &[usize])> {
        match &self.naive_equivalence {
            Equivalence::Counterexample { model, assignment } => Some((model, assignment)),
            _ => None,
        }
    }
}

impl fmt::Display for DemoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "alpha = {}", self.dim)?;
        writeln!(f, "pair:        {}  vs  {}", self.pair.0, self.pair.1)?;
        writeln!(f, "  {}", self.pair_equivalence)?;
        writeln!(f, "naive [v0/v1]: {}  vs  {}", self.naive.0, self.naive.1)?;
        writeln!(f, "  {}", self.naive_equivalence)?;
        if let Some((m, s)) = self.witness() {
            writeln!(
                f,
                "  witness satisfies first: {}, second: {}",
                satisfies(m, s, &self.naive.0).unwrap_or(false),
                satisfies(m, s, &self.naive.1).unwrap_or(false)
            )?;
        }
        writeln!(f, "monk [v0/v1]:  {}  vs  {}", self.monk.0, self.monk.1)?;
        writeln!(f, "  {}", self.monk_equivalence)?;
        write!(
            f,
            "substitution law on the pair: {} ({} checks)",
            if self.law_holds { "PASS" } else { "FAIL" },
            self.law_checks
        )
    }
}

/// Replaces `v0` by `v1` in an equivalent pair, naively and capture-free.
pub fn demo_counterexample(dim: usize, opts: &EquivOptions) -> Result<DemoReport> {
    if dim < 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: dim,
        });
    }
    let opts = EquivOptions { dim, ..*opts };
    let (phi, psi) = demo_pair(dim);
    let naive = (naive_subst(0, 1, &phi), naive_subst(0, 1, &psi));
    let monk = (monk_subst(0, 1, &phi), monk_subst(0, 1, &psi));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut law_checks = 0;
    let mut law_holds = true;
    for base in 1..=opts.max_base {
        let ctx = Context::new(dim, base)?;
        for _ in 0..64 {
            let m = Model::random(ctx, &[0], &mut rng);
            for s in ctx.sequences() {
                let mut moved = s.clone();
                moved[0] = s[1];
                for (orig, image) in [(&phi, &monk.0), (&psi, &monk.1)] {
                    law_checks += 1;
                    if satisfies(&m, &s, image)? != satisfies(&m, &moved, orig)? {
                        law_holds = false;
                    }
                }
            }
        }
    }

    Ok(DemoReport {
        dim,
        pair_equivalence: equiv_sample(&phi, &psi, &opts)?,
        naive_equivalence: equiv_sample(&naive.0, &naive.1, &opts)?,
        monk_equivalence: equiv_sample(&monk.0, &monk.1, &opts)?,
        pair: (phi, psi),
        naive,
        monk,
        law_checks,
        law_holds,
    })
}

/// JSON-friendly view of a [`DemoReport`].
#[derive(Serialize)]
pub struct DemoSummary {
    pub alpha: usize,
    pub pair: [String; 2],
    pub pair_status: String,
    pub naive: [String; 2],
    pub naive_status: String,
    pub witness_model: Option<String>,
    pub witness_assignment: Option<Vec<usize>>,
    pub monk: [String; 2],
    pub monk_status: String,
    pub law_checks: u64,
    pub law_holds: bool,
}

impl From<&DemoReport> for DemoSummary {
    fn from(r: &DemoReport) -> Self {
        let status = |e: &Equivalence| match e {
            Equivalence::EquivalentUpTo { max_base, .. } => format!("equivalent-up-to(base {max_base})"),
            Equivalence::Counterexample { .. } => "counterexample".to_string(),
        };
        DemoSummary {
            alpha: r.dim,
            pair: [r.pair.0.to_string(), r.pair.1.to_string()],
            pair_status: status(&r.pair_equivalence),
            naive: [r.naive.0.to_string(), r.naive.1.to_string()],
            naive_status: status(&r.naive_equivalence),
            witness_model: r.witness().map(|(m, _)| m.to_string()),
            witness_assignment: r.witness().map(|(_, s)| s.to_vec()),
            monk: [r.monk.0.to_string(), r.monk.1.to_string()],
            monk_status: status(&r.monk_equivalence),
            law_checks: r.law_checks,
            law_holds: r.law_holds,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn model(text: &str) -> Model {
        text.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        let phi = f("(E 1 (and (R0 v0 v1) (not (R1 v1 v1))))");
        assert_eq!(parse_formula(&phi.to_string()).unwrap(), phi);
        assert_eq!(f("(or (R0 v0) (R0 v0))"), Formula::or(f("(R0 v0)"), f("(R0 v0)")));
        assert!(parse_formula("(R0 v0").is_err());
        assert!(parse_formula("(Q v0)").is_err());
        assert!(parse_formula("(R0 v0) x").is_err());
    }

    #[test]
    fn satisfaction_examples() {
        let m = model("alpha=2 base=2; R0 = {(1,0)}");
        assert!(satisfies(&m, &[1, 0], &f("(R0 v0 v1)")).unwrap());
        assert!(!satisfies(&m, &[1, 0], &f("(R0 v1 v0)")).unwrap());
        let phi = f("(E 0 (R0 v0 v1))");
        assert!(!satisfies(&m, &[1, 0], &Formula::and(phi.clone(), Formula::not(phi))).unwrap());
        let one = model("alpha=2 base=1; R0 = {(0,0)}");
        assert_eq!(
            satisfies(&one, &[0, 0], &f("(E 1 (R0 v0 v1))")).unwrap(),
            satisfies(&one, &[0, 0], &f("(R0 v0 v0)")).unwrap()
        );
        assert_eq!(
            satisfies(&m, &[0, 0], &f("(R1 v0 v1)")),
            Err(Error::UninterpretedSymbol(1))
        );
        assert!(satisfies(&m, &[0, 0], &f("(R0 v0)")).is_err());
    }

    #[test]
    fn model_text_round_trip() {
        let m = model("alpha=2 base=2\nR0 = {(1,0)}\nR3 = hex:09");
        assert_eq!(m.to_string().parse::<Model>().unwrap(), m);
        assert!("alpha=2 base=2; R0 = {(2,0)}".parse::<Model>().is_err());
    }

    #[test]
    fn transpose_examples() {
        let phi = f("(E 1 (R0 v0 v1))");
        assert_eq!(transpose_vars(1, 1, &phi), phi);
        assert_eq!(transpose_vars(0, 1, &f("(R0 v0 v1)")), f("(R0 v1 v0)"));
        assert_eq!(transpose_vars(0, 1, &transpose_vars(0, 1, &phi)), phi);
    }

    #[test]
    fn monk_examples() {
        let phi = f("(E 1 (R0 v0 v1))");
        assert_eq!(monk_subst(1, 1, &phi), phi);
        assert_eq!(monk_subst(0, 1, &f("(R0 v0 v1)")), f("(R0 v1 v1)"));
        assert_eq!(monk_subst(0, 1, &phi), f("(E 0 (R0 v1 v0))"));
    }

    #[test]
    fn naive_examples() {
        assert_eq!(naive_subst(0, 1, &f("(R0 v0 v0)")), f("(R0 v1 v1)"));
        assert_eq!(
            naive_subst(0, 1, &f("(E 1 (R0 v0 v0))")),
            f("(E 1 (R0 v1 v1))")
        );
        assert_eq!(naive_subst(0, 1, &f("(E 0 (R0 v0 v1))")), f("(E 1 (R0 v1 v1))"));
    }

    // The literal left-to-right scan: free v_i -> v_j, bound v_j -> v_i,
    // binders of v_j -> v_i.
    fn scan_subst(i: usize, j: usize, phi: &Formula, i_bound: bool, j_bound: bool) -> Formula {
        match phi {
            Formula::Atom { symbol, args } => Formula::atom(
                *symbol,
                args.iter()
                    .map(|&v| {
                        if v == i && !i_bound {
                            j
                        } else if v == j && j_bound {
                            i
                        } else {
                            v
                        }
                    })
                    .collect(),
            ),
            Formula::Not(a) => Formula::not(scan_subst(i, j, a, i_bound, j_bound)),
            Formula::And(a, b) => Formula::and(
                scan_subst(i, j, a, i_bound, j_bound),
                scan_subst(i, j, b, i_bound, j_bound),
            ),
            Formula::Exists(k, a) if *k == j => Formula::exists(i, scan_subst(i, j, a, i_bound, true)),
            Formula::Exists(k, a) if *k == i => Formula::exists(i, scan_subst(i, j, a, true, j_bound)),
            Formula::Exists(k, a) => Formula::exists(*k, scan_subst(i, j, a, i_bound, j_bound)),
        }
    }

    #[test]
    fn scan_and_recursion_agree_without_nested_binders() {
        let phi = f("(and (E 1 (R0 v0 v1)) (R0 v1 v0))");
        assert_eq!(scan_subst(0, 1, &phi, false, false), monk_subst(0, 1, &phi));
        // Nesting both binders makes the scan capture: ∃v0∃v1 R(v0,v1)
        // would become ∃v0∃v0 R(v0,v0).
        let nested = f("(E 0 (E 1 (R0 v0 v1)))");
        assert_eq!(scan_subst(0, 1, &nested, false, false), f("(E 0 (E 0 (R0 v0 v0)))"));
        let m = model("alpha=2 base=2; R0 = {(0,1)}");
        let s = [0, 0];
        assert!(satisfies(&m, &s, &nested).unwrap());
        assert!(!satisfies(&m, &s, &scan_subst(0, 1, &nested, false, false)).unwrap());
        assert!(satisfies(&m, &s, &monk_subst(0, 1, &nested)).unwrap());
    }

    #[test]
    fn equivalence_examples() {
        let opts = EquivOptions::new(2, 3);
        let phi = f("(R0 v0 v0)");
        assert!(equiv_sample(&phi, &phi, &opts).unwrap().is_equivalent());
        let (a, b) = demo_pair(2);
        assert_eq!(a, phi);
        assert_eq!(
            equiv_sample(&a, &b, &opts).unwrap(),
            Equivalence::EquivalentUpTo {
                max_base: 3,
                exhaustive: vec![1, 2, 3],
                models: 2 + 16 + 512
            }
        );
        let c = f("(R0 v1 v1)");
        let d = f("(E 1 (R0 v1 v1))");
        match equiv_sample(&c, &d, &opts).unwrap() {
            Equivalence::Counterexample { model, assignment } => {
                assert_eq!(model.base(), 2);
                assert_ne!(
                    satisfies(&model, &assignment, &c).unwrap(),
                    satisfies(&model, &assignment, &d).unwrap()
                );
            }
            e => panic!("{e:?}"),
        }
        let m = model("alpha=2 base=2; R0 = {(1,1)}");
        assert!(!satisfies(&m, &[0, 0], &c).unwrap());
        assert!(satisfies(&m, &[0, 0], &d).unwrap());
    }

    #[test]
    fn demo_confirms_at_two_and_three() {
        for dim in [2, 3] {
            let r = demo_counterexample(dim, &EquivOptions::new(dim, 3)).unwrap();
            assert!(r.confirms(), "{r}");
            assert_eq!(r.pair.0, Formula::atom(0, vec![0; dim]));
            assert_eq!(r.naive.1, Formula::exists(1, Formula::atom(0, vec![1; dim])));
        }
    }

    #[test]
    fn meaning_examples() {
        let m = model("alpha=2 base=3; R0 = {(0,1),(2,2),(1,0)}");
        let phi = f("(R0 v0 v1)");
        let mphi = meaning(&m, &phi).unwrap();
        assert_eq!(mphi, *m.relation(0).unwrap());
        assert_eq!(meaning(&m, &Formula::not(phi.clone())).unwrap(), mphi.complement());
        assert_eq!(
            meaning(&m, &Formula::exists(1, phi.clone())).unwrap(),
            mphi.cyl(1).unwrap()
        );
    }
}
