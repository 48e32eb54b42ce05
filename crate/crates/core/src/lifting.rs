//! Lifting a representation of the substitution-free reduct to one of the
//! whole algebra.
//!
//! Given an algebra `A` satisfying (F0)–(F9) and an injective homomorphism
//! `f` of its `cp`-reduct into the relations over `U`, the base is blown up
//! to `V = U × H` with `|H| > α`. Writing `W` for the repetition-free
//! sequences in `ᵅV` and `ŝ` for the `U`-projection of `s`,
//!
//! ```text
//! g(x) = { s ∈ W : ŝ ∈ f(x) }
//! h(x) = { z∘σ : z ∈ g(s_σ x), σ ∈ T }
//! ```
//!
//! and `h` is an injective homomorphism for the full `csp` signature.
//! [`lift_and_verify`] builds `g` and `h` and checks every step of that
//! argument exhaustively.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::relalg::{generate_subalgebra, Context, Relation, Signature, DEFAULT_CLOSURE_CAP};
use crate::terms::{check_is_fpa, CheckOptions, FiniteAlgebra, UnaryOp};
use crate::transform::{apply_to_sequence, enumerate_transformations, Transformation};

/// The blown-up base `V = U × H`; the pair `(u, c)` is encoded as
/// `u·|H| + c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftContext {
    dim: usize,
    base: usize,
    colors: usize,
    inner: Context,
    outer: Context,
}

impl LiftContext {
    pub fn new(dim: usize, base: usize, colors: usize) -> Result<Self> {
        if colors <= dim {
            return Err(Error::BadRepresentation(format!(
                "need more than {dim} colors, got {colors}"
            )));
        }
        Ok(LiftContext {
            dim,
            base,
            colors,
            inner: Context::new(dim, base)?,
            outer: Context::new(dim, base * colors)?,
        })
    }

    /// `|H| = α + 1`.
    pub fn minimal(dim: usize, base: usize) -> Result<Self> {
        LiftContext::new(dim, base, dim + 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    /// Sequences over `U`.
    pub fn inner(&self) -> Context {
        self.inner
    }

    /// Sequences over `V`.
    pub fn outer(&self) -> Context {
        self.outer
    }

    pub fn pair(&self, u: usize, color: usize) -> usize {
        u * self.colors + color
    }

    pub fn unpair(&self, v: usize) -> (usize, usize) {
        (v / self.colors, v % self.colors)
    }

    /// `ŝ`: first components of an encoded `V`-sequence.
    pub fn hat(&self, s: &[usize]) -> Vec<usize> {
        s.iter().map(|&v| self.unpair(v).0).collect()
    }

    pub fn is_repetition_free(s: &[usize]) -> bool {
        (0..s.len()).all(|i| (i + 1..s.len()).all(|j| s[i] != s[j]))
    }

    /// `W` as a relation over `V`.
    pub fn rep_free_set(&self) -> Relation {
        Relation::from_predicate(self.outer, Self::is_repetition_free)
    }

    /// Writes `s` as `z∘σ` with `z ∈ W`.
    ///
    /// The first occurrence of each value keeps its place; a later duplicate
    /// at position `i` is recoloured with the smallest color not yet used at
    /// the same `u`, and `σ(i)` points at the first occurrence.
    pub fn factor_sequence(&self, s: &[usize]) -> Result<(Vec<usize>, Transformation)> {
        if s.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.len(),
            });
        }
        let mut used: HashSet<usize> = s.iter().copied().collect();
        let mut z = Vec::with_capacity(self.dim);
        let mut image = Vec::with_capacity(self.dim);
        for (i, &v) in s.iter().enumerate() {
            match s[..i].iter().position(|&w| w == v) {
                None => {
                    z.push(v);
                    image.push(i);
                }
                Some(first) => {
                    let (u, _) = self.unpair(v);
                    let fresh = (0..self.colors)
                        .map(|c| self.pair(u, c))
                        .find(|w| !used.contains(w))
                        .ok_or_else(|| {
                            Error::Internal(format!("no free color at u={u} for {s:?}"))
                        })?;
                    used.insert(fresh);
                    z.push(fresh);
                    image.push(first);
                }
            }
        }
        Ok((z, Transformation::new(image)?))
    }

    fn fmt_seq(&self, s: &[usize]) -> String {
        let parts: Vec<String> = s
            .iter()
            .map(|&v| {
                let (u, c) = self.unpair(v);
                format!("({u},{c})")
            })
            .collect();
        format!("<{}>", parts.join(","))
    }
}

/// A map from the elements of a finite algebra to relations over `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    target: Context,
    images: Vec<Relation>,
}

impl Representation {
    pub fn new(target: Context, images: Vec<Relation>) -> Result<Self> {
        if images.iter().any(|r| r.ctx() != target) {
            return Err(Error::ContextMismatch);
        }
        Ok(Representation { target, images })
    }

    pub fn target(&self) -> Context {
        self.target
    }

    pub fn images(&self) -> &[Relation] {
        &self.images
    }

    pub fn image(&self, x: usize) -> &Relation {
        &self.images[x]
    }

    /// Checks that the map is injective and preserves the operations of
    /// `sig` (Booleans always included).
    pub fn verify(&self, algebra: &FiniteAlgebra, sig: Signature) -> Result<()> {
        let fail = |m: String| Err(Error::BadRepresentation(m));
        let n = algebra.size();
        if self.images.len() != n {
            return fail(format!("{} images for {n} elements", self.images.len()));
        }
        if algebra.dim() != self.target.dim() {
            return fail("dimension mismatch".into());
        }
        let mut seen = HashMap::new();
        for (x, r) in self.images.iter().enumerate() {
            if let Some(y) = seen.insert(r, x) {
                return fail(format!("not injective: elements {y} and {x} share {r}"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.images[algebra.meet_of(x, y)] != self.images[x].meet(&self.images[y])? {
                    return fail(format!("meet not preserved at ({x},{y})"));
                }
            }
        }
        let dim = algebra.dim();
        let mut ops: Vec<(UnaryOp, Box<dyn Fn(&Relation) -> Relation>)> =
            vec![(UnaryOp::Complement, Box::new(|r: &Relation| r.complement()))];
        for i in 0..dim {
            if sig.has_cyl() {
                ops.push((UnaryOp::Cyl(i), Box::new(move |r: &Relation| r.cyl(i).unwrap())));
            }
            for j in 0..dim {
                ops.push((
                    UnaryOp::Transp(i, j),
                    Box::new(move |r: &Relation| r.transp(i, j).unwrap()),
                ));
                if sig.has_subst() {
                    ops.push((
                        UnaryOp::Subst(i, j),
                        Box::new(move |r: &Relation| r.subst(i, j).unwrap()),
                    ));
                }
            }
        }
        for (op, concrete) in &ops {
            let table = algebra.table(*op);
            for x in 0..n {
                if self.images[table[x]] != concrete(&self.images[x]) {
                    return fail(format!("{op:?} not preserved at element {x}"));
                }
            }
        }
        Ok(())
    }
}

/// The `csp`-subalgebra of the full set algebra generated by `generators`,
/// as a table algebra together with its inclusion map.
pub fn set_subalgebra(
    ctx: Context,
    generators: &[Relation],
) -> Result<(FiniteAlgebra, Representation)> {
    let members = generate_subalgebra(ctx, generators, Signature::Csp, DEFAULT_CLOSURE_CAP)?;
    let algebra = FiniteAlgebra::from_relations(&members)?;
    Ok((algebra, Representation::new(ctx, members)?))
}

/// `g(x) = { s ∈ W : ŝ ∈ f(x) }` for every element.
pub fn build_g(lc: &LiftContext, f: &Representation) -> Result<Vec<Relation>> {
    if f.target() != lc.inner() {
        return Err(Error::ContextMismatch);
    }
    let outer = lc.outer();
    let inner = lc.inner();
    // (V index, hat index) for every s ∈ W
    let w: Vec<(usize, usize)> = (0..outer.size())
        .filter_map(|k| {
            let s = outer.decode(k);
            LiftContext::is_repetition_free(&s)
                .then(|| (k, inner.encode(&lc.hat(&s)).unwrap()))
        })
        .collect();
    Ok(f.images()
        .iter()
        .map(|fx| {
            let mut g = Relation::empty(outer);
            for &(k, hk) in &w {
                if fx.contains_index(hk) {
                    g.set(k);
                }
            }
            g
        })
        .collect())
}

/// For each `σ ∈ T`: the table of `s_σ` on the algebra and the map
/// `idx(z) ↦ idx(z∘σ)` on `W`.
struct Spread {
    sigma: Transformation,
    table: Vec<usize>,
    moves: Vec<(usize, usize)>,
}

fn spreads(lc: &LiftContext, algebra: &FiniteAlgebra) -> Result<Vec<Spread>> {
    let outer = lc.outer();
    let w: Vec<(usize, Vec<usize>)> = (0..outer.size())
        .map(|k| (k, outer.decode(k)))
        .filter(|(_, s)| LiftContext::is_repetition_free(s))
        .collect();
    enumerate_transformations(lc.dim())?
        .into_iter()
        .map(|sigma| {
            let table = algebra.subst_sigma_table(&sigma)?;
            let moves = w
                .iter()
                .map(|(k, z)| {
                    let zs = apply_to_sequence(z, &sigma)?;
                    Ok((*k, outer.encode(&zs)?))
                })
                .collect::<Result<_>>()?;
            Ok(Spread {
                sigma,
                table,
                moves,
            })
        })
        .collect()
}

fn spread_union<'a>(
    outer: Context,
    g: &[Relation],
    x: usize,
    spreads: impl Iterator<Item = &'a Spread>,
) -> Relation {
    let mut h = Relation::empty(outer);
    for sp in spreads {
        let gz = &g[sp.table[x]];
        for &(from, to) in &sp.moves {
            if gz.contains_index(from) {
                h.set(to);
            }
        }
    }
    h
}

/// `h(x) = { z∘σ : z ∈ g(s_σ x), σ ∈ T }` for every element.
pub fn build_h(lc: &LiftContext, algebra: &FiniteAlgebra, g: &[Relation]) -> Result<Vec<Relation>> {
    if g.len() != algebra.size() {
        return Err(Error::BadRepresentation(format!(
            "g has {} images for {} elements",
            g.len(),
            algebra.size()
        )));
    }
    let sp = spreads(lc, algebra)?;
    Ok((0..algebra.size())
        .map(|x| spread_union(lc.outer(), g, x, sp.iter()))
        .collect())
}

/// The induced substitution tables on the image of a `cp`-homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushforward<K> {
    /// Distinct images in order of first appearance.
    pub image: Vec<K>,
    /// Position in `image` of each source element's image.
    pub class_of: Vec<usize>,
    /// `subst[i*dim + j][b]` is `s_ij⁺` at image element `b`.
    pub subst: Vec<Vec<usize>>,
}

impl<K> Pushforward<K> {
    pub fn subst_table(&self, dim: usize, i: usize, j: usize) -> &[usize] {
        &self.subst[i * dim + j]
    }
}

/// Two elements with the same image whose `s_ij` images differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KernelViolation {
    pub a: usize,
    pub b: usize,
    pub i: usize,
    pub j: usize,
}

impl fmt::Display for KernelViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g({})=g({}) but g(s_{}{} {}) != g(s_{}{} {})",
            self.a, self.b, self.i, self.j, self.a, self.i, self.j, self.b
        )
    }
}

/// Projects the `s_ij` operations of `algebra` along `g` (given as the
/// image of each element).
///
/// Well-definedness is tested through the kernel: for `g(a) = g(b)` the
/// element `x = a ⊕ b` has `g(x) = g(0)`, and `g(s_ij x)` must equal
/// `g(0)` as well. The induced value is then read off any preimage.
pub fn kernel_pushforward<K: Clone + Eq + Hash>(
    algebra: &FiniteAlgebra,
    g: &[K],
) -> Result<std::result::Result<Pushforward<K>, KernelViolation>> {
    let n = algebra.size();
    if g.len() != n {
        return Err(Error::BadRepresentation(format!(
            "map has {} images for {n} elements",
            g.len()
        )));
    }
    let mut image = Vec::new();
    let mut index: HashMap<&K, usize> = HashMap::new();
    let class_of: Vec<usize> = g
        .iter()
        .map(|k| {
            *index.entry(k).or_insert_with(|| {
                image.push(k.clone());
                image.len() - 1
            })
        })
        .collect();

    let dim = algebra.dim();
    let zero_class = class_of[algebra.zero_elem()];
    let compl = algebra.table(UnaryOp::Complement);
    let join = |a: usize, b: usize| compl[algebra.meet_of(compl[a], compl[b])];
    let xor = |a: usize, b: usize| join(algebra.meet_of(a, compl[b]), algebra.meet_of(b, compl[a]));

    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); image.len()];
    for (x, &c) in class_of.iter().enumerate() {
        classes[c].push(x);
    }

    let mut subst = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let s = algebra.table(UnaryOp::Subst(i, j));
            for members in &classes {
                let a = members[0];
                for &b in &members[1..] {
                    let x = xor(a, b);
                    let broken = class_of[x] != zero_class
                        || class_of[s[x]] != zero_class
                        || class_of[s[a]] != class_of[s[b]];
                    if broken {
                        return Ok(Err(KernelViolation { a, b, i, j }));
                    }
                }
            }
            subst.push(classes.iter().map(|m| class_of[s[m[0]]]).collect());
        }
    }
    Ok(Ok(Pushforward {
        image,
        class_of,
        subst,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub witness: Option<String>,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{}: {status} ({} cases)", self.name, self.cases)?;
        if let Some(w) = &self.witness {
            write!(f, " witness: {w}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub dim: usize,
    pub base: usize,
    pub colors: usize,
    pub elements: usize,
    pub checks: Vec<CheckLine>,
    #[serde(skip)]
    pub g: Vec<Relation>,
    #[serde(skip)]
    pub h: Vec<Relation>,
}

impl LiftReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckLine> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Recorder {
    checks: Vec<CheckLine>,
}

impl Recorder {
    /// Records a check; `Err` carries the first witness and halts the run.
    fn run(
        &mut self,
        name: &str,
        body: impl FnOnce() -> Result<std::result::Result<u64, (u64, String)>>,
    ) -> Result<bool> {
        let (passed, cases, witness) = match body()? {
            Ok(cases) => (true, cases, None),
            Err((cases, w)) => (false, cases, Some(w)),
        };
        self.checks.push(CheckLine {
            name: name.to_string(),
            passed,
            cases,
            witness,
        });
        Ok(passed)
    }
}

/// Builds `g` and `h` from `f` and verifies every step of the lifting.
///
/// Checks run in a fixed order and stop at the first failure; the failing
/// line carries the witness.
pub fn lift_and_verify(
    algebra: &FiniteAlgebra,
    f: &Representation,
    colors: usize,
    opts: &CheckOptions,
) -> Result<LiftReport> {
    let dim = algebra.dim();
    let lc = LiftContext::new(dim, f.target().base(), colors)?;
    let outer = lc.outer();
    let n = algebra.size();
    let mut rec = Recorder { checks: Vec::new() };
    let mut report = LiftReport {
        dim,
        base: f.target().base(),
        colors,
        elements: n,
        checks: Vec::new(),
        g: Vec::new(),
        h: Vec::new(),
    };
    macro_rules! step {
        ($name:expr, $body:expr) => {
            if !rec.run($name, $body)? {
                report.checks = rec.checks;
                return Ok(report);
            }
        };
    }

    step!("PRE/fpa", || {
        let r = check_is_fpa(algebra, opts)?;
        Ok(match r.violations.first() {
            None => Ok(r.instances as u64),
            Some(v) => Err((r.instances as u64, format!("{} at {:?}", v.label, v.witness))),
        })
    });
    step!("PRE/cp-representation", || {
        Ok(match f.verify(algebra, Signature::Cp) {
            Ok(()) => Ok(n as u64),
            Err(e) => Err((n as u64, e.to_string())),
        })
    });

    let g = build_g(&lc, f)?;
    let w = lc.rep_free_set();
    let w_seqs: Vec<usize> = w.indices().collect();
    let compl = algebra.table(UnaryOp::Complement);

    step!("CLAIM1/meet", || {
        for x in 0..n {
            for y in 0..n {
                if g[algebra.meet_of(x, y)] != g[x].meet(&g[y])? {
                    return Ok(Err(((x * n + y) as u64, format!("x={x} y={y}"))));
                }
            }
        }
        Ok(Ok((n * n) as u64))
    });
    step!("CLAIM1/complement", || {
        for x in 0..n {
            if g[compl[x]] != w.difference(&g[x])? {
                return Ok(Err((x as u64, format!("x={x}"))));
            }
        }
        Ok(Ok(n as u64))
    });
    step!("CLAIM1/cyl", || {
        for i in 0..dim {
            let c = algebra.table(UnaryOp::Cyl(i));
            for x in 0..n {
                if g[c[x]] != w.meet(&g[x].cyl(i)?)? {
                    return Ok(Err((x as u64, format!("i={i} x={x}"))));
                }
            }
        }
        Ok(Ok((dim * n) as u64))
    });
    step!("CLAIM1/transp", || {
        for i in 0..dim {
            for j in 0..dim {
                let p = algebra.table(UnaryOp::Transp(i, j));
                for x in 0..n {
                    if g[p[x]] != g[x].transp(i, j)? {
                        return Ok(Err((x as u64, format!("i={i} j={j} x={x}"))));
                    }
                }
            }
        }
        Ok(Ok((dim * dim * n) as u64))
    });
    step!("CLAIM1/fresh-color", || {
        let inner = lc.inner();
        let mut cases = 0u64;
        for &k in &w_seqs {
            let s = outer.decode(k);
            let taken: HashSet<usize> = s.iter().map(|&v| lc.unpair(v).1).collect();
            let Some(a) = (0..colors).find(|c| !taken.contains(c)) else {
                return Ok(Err((cases, format!("no fresh color for {}", lc.fmt_seq(&s)))));
            };
            let hat = lc.hat(&s);
            for kk in 0..dim {
                for x in 0..n {
                    cases += 1;
                    let via_u = (0..lc.inner().base()).any(|u| {
                        let mut t = hat.clone();
                        t[kk] = u;
                        f.image(x).contains_index(inner.encode(&t).unwrap())
                    });
                    let via_v = (0..lc.inner().base()).any(|u| {
                        let mut t = s.clone();
                        t[kk] = lc.pair(u, a);
                        g[x].contains(&t)
                    });
                    if via_u != via_v {
                        return Ok(Err((
                            cases,
                            format!("s={} k={kk} x={x} color={a}", lc.fmt_seq(&s)),
                        )));
                    }
                }
            }
        }
        Ok(Ok(cases))
    });
    step!("EQ/g2", || {
        for i in 0..dim {
            let c = algebra.table(UnaryOp::Cyl(i));
            for x in 0..n {
                if g[c[x]] != g[x].cyl(i)?.meet(&w)? {
                    return Ok(Err((x as u64, format!("i={i} x={x}"))));
                }
            }
        }
        Ok(Ok((dim * n) as u64))
    });

    let sp = spreads(&lc, algebra)?;
    step!("EQ/g3", || {
        let mut cases = 0;
        for s in sp.iter().filter(|s| s.sigma.is_permutation()) {
            for x in 0..n {
                cases += 1;
                // S_σ^W restricted to W is S_σ^V ∩ W
                if g[s.table[x]] != g[x].subst_sigma(&s.sigma)?.meet(&w)? {
                    return Ok(Err((cases, format!("σ={} x={x}", s.sigma))));
                }
            }
        }
        Ok(Ok(cases))
    });
    step!("EQ/h-", || {
        let mut cases = 0;
        for k in 0..outer.size() {
            cases += 1;
            let s = outer.decode(k);
            let (z, sigma) = lc.factor_sequence(&s)?;
            if !LiftContext::is_repetition_free(&z) || apply_to_sequence(&z, &sigma)? != s {
                return Ok(Err((cases, format!("s={}", lc.fmt_seq(&s)))));
            }
        }
        Ok(Ok(cases))
    });

    let h: Vec<Relation> = (0..n)
        .map(|x| spread_union(outer, &g, x, sp.iter()))
        .collect();

    step!("EQ/g4", || {
        for x in 0..n {
            let mut singular_form =
                spread_union(outer, &g, x, sp.iter().filter(|s| !s.sigma.is_permutation()));
            singular_form = singular_form.join(&g[x])?;
            if singular_form != h[x] || h[x].meet(&w)? != g[x] {
                return Ok(Err((x as u64, format!("x={x}"))));
            }
        }
        Ok(Ok(n as u64))
    });
    step!("HOM/meet", || {
        for x in 0..n {
            for y in 0..n {
                if h[algebra.meet_of(x, y)] != h[x].meet(&h[y])? {
                    return Ok(Err(((x * n + y) as u64, format!("x={x} y={y}"))));
                }
            }
        }
        Ok(Ok((n * n) as u64))
    });
    step!("HOM/complement", || {
        for x in 0..n {
            if h[compl[x]] != h[x].complement() {
                return Ok(Err((x as u64, format!("x={x}"))));
            }
        }
        Ok(Ok(n as u64))
    });
    step!("CLAIM2/cyl", || {
        for i in 0..dim {
            let c = algebra.table(UnaryOp::Cyl(i));
            for x in 0..n {
                if h[c[x]] != h[x].cyl(i)? {
                    return Ok(Err((x as u64, format!("i={i} x={x}"))));
                }
            }
        }
        Ok(Ok((dim * n) as u64))
    });
    step!("CLAIM3/subst-sigma", || {
        let mut cases = 0;
        for s in &sp {
            for x in 0..n {
                cases += 1;
                if h[s.table[x]] != h[x].subst_sigma(&s.sigma)? {
                    return Ok(Err((cases, format!("η={} x={x}", s.sigma))));
                }
            }
        }
        Ok(Ok(cases))
    });
    step!("HOM/subst-transp", || {
        let mut cases = 0;
        for i in 0..dim {
            for j in 0..dim {
                let s = algebra.table(UnaryOp::Subst(i, j));
                let p = algebra.table(UnaryOp::Transp(i, j));
                for x in 0..n {
                    cases += 1;
                    if h[s[x]] != h[x].subst(i, j)? || h[p[x]] != h[x].transp(i, j)? {
                        return Ok(Err((cases, format!("i={i} j={j} x={x}"))));
                    }
                }
            }
        }
        Ok(Ok(cases))
    });
    step!("INJECTIVE/h", || {
        let mut seen = HashMap::new();
        for (x, r) in h.iter().enumerate() {
            if let Some(y) = seen.insert(r, x) {
                return Ok(Err((x as u64, format!("h({y}) = h({x})"))));
            }
        }
        Ok(Ok(n as u64))
    });

    report.checks = rec.checks;
    report.g = g;
    report.h = h;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hat_projects_first_components() {
        let lc = LiftContext::minimal(3, 2).unwrap();
        let s = [lc.pair(1, 0), lc.pair(0, 3), lc.pair(1, 2)];
        assert_eq!(lc.hat(&s), vec![1, 0, 1]);
        let same_color = [lc.pair(0, 1), lc.pair(1, 1), lc.pair(1, 1)];
        assert_eq!(lc.hat(&same_color), vec![0, 1, 1]);
        let outer = lc.outer();
        for k in 0..outer.size() {
            let s = outer.decode(k);
            let pairs: Vec<(usize, usize)> = s.iter().map(|&v| lc.unpair(v)).collect();
            let projected: Vec<usize> = pairs.iter().map(|p| p.0).collect();
            assert_eq!(lc.hat(&s), projected);
        }
    }

    #[test]
    fn colors_must_exceed_dim() {
        assert!(LiftContext::new(3, 2, 3).is_err());
        assert!(LiftContext::new(3, 2, 4).is_ok());
    }

    #[test]
    fn factor_examples() {
        let lc = LiftContext::minimal(3, 2).unwrap();
        let s = vec![lc.pair(0, 0), lc.pair(1, 0), lc.pair(0, 1)];
        assert_eq!(
            lc.factor_sequence(&s).unwrap(),
            (s.clone(), Transformation::identity(3))
        );
        let v = lc.pair(1, 2);
        let (z, sigma) = lc.factor_sequence(&[v, v, v]).unwrap();
        assert!(LiftContext::is_repetition_free(&z));
        assert_eq!(sigma.image(), &[0, 0, 0]);
        assert_eq!(z, vec![v, lc.pair(1, 0), lc.pair(1, 1)]);
        assert_eq!(apply_to_sequence(&z, &sigma).unwrap(), vec![v, v, v]);
    }

    #[test]
    fn factor_covers_every_sequence() {
        for (dim, base, colors) in [(3, 2, 4), (2, 3, 3), (3, 3, 4), (2, 1, 3)] {
            let lc = LiftContext::new(dim, base, colors).unwrap();
            let outer = lc.outer();
            for k in 0..outer.size() {
                let s = outer.decode(k);
                let (z, sigma) = lc.factor_sequence(&s).unwrap();
                assert!(LiftContext::is_repetition_free(&z));
                assert_eq!(apply_to_sequence(&z, &sigma).unwrap(), s);
            }
        }
    }

    #[test]
    fn w_relativization() {
        let lc = LiftContext::minimal(2, 2).unwrap();
        let w = lc.rep_free_set();
        assert_eq!(w.count(), 6 * 5);
        let outer = lc.outer();
        let subsets = [
            Relation::empty(outer),
            w.clone(),
            Relation::from_indices(outer, w.indices().step_by(3)).unwrap(),
        ];
        for x in &subsets {
            let cw = w.meet(&x.cyl(0).unwrap()).unwrap();
            assert!(cw.is_subset(&w));
            assert!(x.is_subset(&cw));
            let comp = w.difference(x).unwrap();
            assert!(comp.meet(x).unwrap().is_empty());
            assert_eq!(comp.join(x).unwrap(), w);
        }
    }

    #[test]
    fn g_and_h_on_constants() {
        let ctx = Context::new(3, 2).unwrap();
        let (alg, f) = set_subalgebra(ctx, &[]).unwrap();
        let lc = LiftContext::minimal(3, 2).unwrap();
        let g = build_g(&lc, &f).unwrap();
        let h = build_h(&lc, &alg, &g).unwrap();
        assert!(g[alg.zero_elem()].is_empty());
        assert_eq!(g[alg.one_elem()], lc.rep_free_set());
        assert!(h[alg.zero_elem()].is_empty());
        assert!(h[alg.one_elem()].is_full());
    }

    #[test]
    fn trivial_algebra_lifts() {
        let ctx = Context::new(2, 1).unwrap();
        let alg = FiniteAlgebra::two_element(2);
        let f = Representation::new(ctx, vec![Relation::empty(ctx), Relation::full(ctx)]).unwrap();
        let report = lift_and_verify(&alg, &f, 3, &CheckOptions::default()).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
        assert!(report.h[1].is_full());
    }

    #[test]
    fn broken_representation_is_reported() {
        let ctx = Context::new(2, 2).unwrap();
        let alg = FiniteAlgebra::two_element(2);
        let odd = Relation::from_tuples(ctx, [[0usize, 1]]).unwrap();
        let f = Representation::new(ctx, vec![odd.complement(), odd]).unwrap();
        let report = lift_and_verify(&alg, &f, 3, &CheckOptions::default()).unwrap();
        assert!(!report.passed());
        let last = report.checks.last().unwrap();
        assert_eq!(last.name, "PRE/cp-representation");
        assert!(last.witness.is_some());
    }

    #[test]
    fn pushforward_identity_and_failure() {
        let ctx = Context::new(2, 2).unwrap();
        let full = FiniteAlgebra::full_set_algebra(ctx).unwrap();
        let id: Vec<usize> = (0..full.size()).collect();
        let pf = kernel_pushforward(&full, &id).unwrap().unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(pf.subst_table(2, i, j), full.table(UnaryOp::Subst(i, j)));
            }
        }
        // Collapsing {(0,0)} to ∅ while keeping S_01 is not a congruence.
        let point = Relation::from_tuples(ctx, [[0usize, 0]]).unwrap();
        let bad: Vec<u64> = (0..16u64)
            .map(|k| if k == point.word() { 0 } else { k })
            .collect();
        let v = kernel_pushforward(&full, &bad).unwrap().unwrap_err();
        assert_eq!((v.a, v.b), (0, point.word() as usize));
    }
}
