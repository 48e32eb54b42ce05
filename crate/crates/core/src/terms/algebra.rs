//! Carriers for term evaluation: full set algebras over a [`Context`] and
//! abstract finite algebras given by operation tables.

use std::collections::HashMap;
use std::fmt::Debug;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relalg::{Context, Relation};
use crate::transform::{decompose_mixed, Generator, Transformation};

use super::syntax::Term;

/// An algebra of the `csp` signature that terms can be evaluated in.
///
/// Indices passed to the unary operations are already checked against
/// [`Carrier::dim`].
pub trait Carrier: Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn dim(&self) -> usize;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn complement(&self, a: &Self::Elem) -> Self::Elem;
    fn cyl(&self, i: usize, a: &Self::Elem) -> Self::Elem;
    fn subst(&self, i: usize, j: usize, a: &Self::Elem) -> Self::Elem;
    fn transp(&self, i: usize, j: usize, a: &Self::Elem) -> Self::Elem;

    /// Number of elements, if small enough to enumerate.
    fn universe_size(&self) -> Option<u64>;
    /// The `k`-th element in enumeration order, `k < universe_size()`.
    fn element(&self, k: u64) -> Self::Elem;
    fn random_element(&self, rng: &mut ChaCha8Rng) -> Self::Elem;

    /// Short name used in `valid-up-to(…)` reports.
    fn label(&self) -> String;
    /// Text form of an element, re-readable by [`Carrier::read`].
    fn render(&self, e: &Self::Elem) -> String;
    fn read(&self, text: &str) -> Result<Self::Elem>;
}

impl Carrier for Context {
    type Elem = Relation;

    fn dim(&self) -> usize {
        Context::dim(self)
    }
    fn zero(&self) -> Relation {
        Relation::empty(*self)
    }
    fn one(&self) -> Relation {
        Relation::full(*self)
    }
    fn meet(&self, a: &Relation, b: &Relation) -> Relation {
        a.meet(b).expect("shared context")
    }
    fn complement(&self, a: &Relation) -> Relation {
        a.complement()
    }
    fn cyl(&self, i: usize, a: &Relation) -> Relation {
        a.cyl(i).expect("checked index")
    }
    fn subst(&self, i: usize, j: usize, a: &Relation) -> Relation {
        a.subst(i, j).expect("checked index")
    }
    fn transp(&self, i: usize, j: usize, a: &Relation) -> Relation {
        a.transp(i, j).expect("checked index")
    }

    fn universe_size(&self) -> Option<u64> {
        (self.size() < 64).then(|| 1u64 << self.size())
    }
    fn element(&self, k: u64) -> Relation {
        Relation::from_word(*self, k).expect("k below universe size")
    }
    fn random_element(&self, rng: &mut ChaCha8Rng) -> Relation {
        Relation::from_predicate(*self, |_| rng.gen::<bool>())
    }

    fn label(&self) -> String {
        format!("Sb(alpha={} base={})", self.dim(), self.base())
    }
    fn render(&self, e: &Relation) -> String {
        e.to_hex()
    }
    fn read(&self, text: &str) -> Result<Relation> {
        Relation::parse_body(*self, text)
    }
}

/// Which unary operation a table belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    Complement,
    Cyl(usize),
    Subst(usize, usize),
    Transp(usize, usize),
}

/// A finite algebra of the `csp` signature given by total operation tables
/// over the universe `{0, …, n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAlgebra {
    size: usize,
    dim: usize,
    meet: Vec<usize>,
    complement: Vec<usize>,
    cyl: Vec<Vec<usize>>,
    subst: Vec<Vec<usize>>,
    transp: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

impl FiniteAlgebra {
    /// `cyl[i]`, `subst[i*dim + j]` and `transp[i*dim + j]` are unary tables;
    /// `meet[a*size + b]` is the meet table.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        size: usize,
        dim: usize,
        meet: Vec<usize>,
        complement: Vec<usize>,
        cyl: Vec<Vec<usize>>,
        subst: Vec<Vec<usize>>,
        transp: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Self> {
        let a = FiniteAlgebra {
            size,
            dim,
            meet,
            complement,
            cyl,
            subst,
            transp,
            zero,
            one,
        };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::MalformedAlgebra(m));
        let n = self.size;
        if n == 0 {
            return bad("empty universe".into());
        }
        if self.meet.len() != n * n {
            return bad(format!("meet table has {} entries, want {}", self.meet.len(), n * n));
        }
        if self.cyl.len() != self.dim {
            return bad(format!("{} cylindrification tables, want {}", self.cyl.len(), self.dim));
        }
        for (name, tables) in [("subst", &self.subst), ("transp", &self.transp)] {
            if tables.len() != self.dim * self.dim {
                return bad(format!("{} {name} tables, want {}", tables.len(), self.dim * self.dim));
            }
        }
        let unary = std::iter::once(&self.complement)
            .chain(&self.cyl)
            .chain(&self.subst)
            .chain(&self.transp);
        for t in unary {
            if t.len() != n {
                return bad(format!("unary table has {} entries, want {n}", t.len()));
            }
        }
        let all = self
            .meet
            .iter()
            .chain(self.cyl.iter().flatten())
            .chain(self.subst.iter().flatten())
            .chain(self.transp.iter().flatten())
            .chain(&self.complement);
        if let Some(v) = all.copied().find(|&v| v >= n) {
            return bad(format!("table entry {v} outside universe of size {n}"));
        }
        if self.zero >= n || self.one >= n {
            return bad("constant outside universe".into());
        }
        if self.complement[self.one] != self.zero {
            return bad("0 is not the complement of 1".into());
        }
        Ok(())
    }

    /// Tables of a family of relations closed under every `csp` operation.
    pub fn from_relations(elements: &[Relation]) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::MalformedAlgebra("no elements".into()))?;
        let ctx = first.ctx();
        let dim = ctx.dim();
        let index: HashMap<&Relation, usize> =
            elements.iter().enumerate().map(|(k, r)| (r, k)).collect();
        if index.len() != elements.len() {
            return Err(Error::MalformedAlgebra("duplicate elements".into()));
        }
        let find = |r: Relation| {
            index
                .get(&r)
                .copied()
                .ok_or_else(|| Error::MalformedAlgebra(format!("not closed: {r} missing")))
        };
        let unary = |f: &dyn Fn(&Relation) -> Relation| -> Result<Vec<usize>> {
            elements.iter().map(|r| find(f(r))).collect()
        };
        let mut meet = Vec::with_capacity(elements.len() * elements.len());
        for a in elements {
            for b in elements {
                meet.push(find(a.meet(b)?)?);
            }
        }
        let complement = unary(&|r| r.complement())?;
        let cyl = (0..dim)
            .map(|i| unary(&|r| r.cyl(i).unwrap()))
            .collect::<Result<_>>()?;
        let mut subst = Vec::new();
        let mut transp = Vec::new();
        for i in 0..dim {
            for j in 0..dim {
                subst.push(unary(&|r| r.subst(i, j).unwrap())?);
                transp.push(unary(&|r| r.transp(i, j).unwrap())?);
            }
        }
        FiniteAlgebra::new(
            elements.len(),
            dim,
            meet,
            complement,
            cyl,
            subst,
            transp,
            find(Relation::empty(ctx))?,
            find(Relation::full(ctx))?,
        )
    }

    /// Every relation over `ctx`, in bit-pattern order.
    pub fn full_set_algebra(ctx: Context) -> Result<Self> {
        let n = ctx
            .universe_size()
            .filter(|&n| n <= 1 << 12)
            .ok_or(Error::SpaceTooLarge {
                dim: ctx.dim(),
                base: ctx.base(),
            })?;
        let elements: Vec<Relation> = (0..n).map(|k| ctx.element(k)).collect();
        FiniteAlgebra::from_relations(&elements)
    }

    /// The two-element Boolean algebra with every unary operation the identity.
    pub fn two_element(dim: usize) -> Self {
        let id = vec![0, 1];
        FiniteAlgebra {
            size: 2,
            dim,
            meet: vec![0, 0, 0, 1],
            complement: vec![1, 0],
            cyl: vec![id.clone(); dim],
            subst: vec![id.clone(); dim * dim],
            transp: vec![id; dim * dim],
            zero: 0,
            one: 1,
        }
    }

    /// Direct product; the pair `(a, b)` is element `a * other.size + b`.
    pub fn product(&self, other: &FiniteAlgebra) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let m = other.size;
        let n = self.size * m;
        let pair = |a: usize, b: usize| a * m + b;
        let lift = |s: &[usize], t: &[usize]| -> Vec<usize> {
            (0..n).map(|x| pair(s[x / m], t[x % m])).collect()
        };
        let mut meet = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                meet.push(pair(
                    self.meet_of(x / m, y / m),
                    other.meet_of(x % m, y % m),
                ));
            }
        }
        let zip = |s: &[Vec<usize>], t: &[Vec<usize>]| -> Vec<Vec<usize>> {
            s.iter().zip(t).map(|(a, b)| lift(a, b)).collect()
        };
        FiniteAlgebra::new(
            n,
            self.dim,
            meet,
            lift(&self.complement, &other.complement),
            zip(&self.cyl, &other.cyl),
            zip(&self.subst, &other.subst),
            zip(&self.transp, &other.transp),
            pair(self.zero, other.zero),
            pair(self.one, other.one),
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn zero_elem(&self) -> usize {
        self.zero
    }

    pub fn one_elem(&self) -> usize {
        self.one
    }

    pub fn meet_of(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    pub fn table(&self, op: UnaryOp) -> &[usize] {
        match op {
            UnaryOp::Complement => &self.complement,
            UnaryOp::Cyl(i) => &self.cyl[i],
            UnaryOp::Subst(i, j) => &self.subst[i * self.dim + j],
            UnaryOp::Transp(i, j) => &self.transp[i * self.dim + j],
        }
    }

    /// Swaps in a new table for `op`, re-validating the algebra.
    pub fn replace_table(&mut self, op: UnaryOp, table: Vec<usize>) -> Result<()> {
        let slot = match op {
            UnaryOp::Complement => &mut self.complement,
            UnaryOp::Cyl(i) => &mut self.cyl[i],
            UnaryOp::Subst(i, j) => &mut self.subst[i * self.dim + j],
            UnaryOp::Transp(i, j) => &mut self.transp[i * self.dim + j],
        };
        let old = std::mem::replace(slot, table);
        if let Err(e) = self.validate() {
            let slot = match op {
                UnaryOp::Complement => &mut self.complement,
                UnaryOp::Cyl(i) => &mut self.cyl[i],
                UnaryOp::Subst(i, j) => &mut self.subst[i * self.dim + j],
                UnaryOp::Transp(i, j) => &mut self.transp[i * self.dim + j],
            };
            *slot = old;
            return Err(e);
        }
        Ok(())
    }

    /// The table of `s_σ`, folding the generator word of `σ` through the
    /// `s_ij` and `p_ij` tables (outermost letter applied last).
    pub fn subst_sigma_table(&self, sigma: &Transformation) -> Result<Vec<usize>> {
        if sigma.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: sigma.dim(),
            });
        }
        let word = decompose_mixed(sigma);
        let mut table: Vec<usize> = (0..self.size).collect();
        for g in word.letters().iter().rev() {
            let op = match *g {
                Generator::Transposition(i, j) => self.table(UnaryOp::Transp(i, j)),
                Generator::Replacement(i, j) => self.table(UnaryOp::Subst(i, j)),
            };
            for v in table.iter_mut() {
                *v = op[*v];
            }
        }
        Ok(table)
    }
}

impl Carrier for FiniteAlgebra {
    type Elem = usize;

    fn dim(&self) -> usize {
        self.dim
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.one
    }
    fn meet(&self, a: &usize, b: &usize) -> usize {
        self.meet_of(*a, *b)
    }
    fn complement(&self, a: &usize) -> usize {
        self.complement[*a]
    }
    fn cyl(&self, i: usize, a: &usize) -> usize {
        self.cyl[i][*a]
    }
    fn subst(&self, i: usize, j: usize, a: &usize) -> usize {
        self.subst[i * self.dim + j][*a]
    }
    fn transp(&self, i: usize, j: usize, a: &usize) -> usize {
        self.transp[i * self.dim + j][*a]
    }

    fn universe_size(&self) -> Option<u64> {
        Some(self.size as u64)
    }
    fn element(&self, k: u64) -> usize {
        k as usize
    }
    fn random_element(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..self.size)
    }

    fn label(&self) -> String {
        format!("FiniteAlgebra(n={} alpha={})", self.size, self.dim)
    }
    fn render(&self, e: &usize) -> String {
        e.to_string()
    }
    fn read(&self, text: &str) -> Result<usize> {
        text.trim()
            .parse::<usize>()
            .ok()
            .filter(|&v| v < self.size)
            .ok_or_else(|| Error::parse(0, format!("bad element {text:?}")))
    }
}

/// Evaluates `t` under `assignment` (variable `xk` ↦ `assignment[k]`).
pub fn eval_term<C: Carrier + ?Sized>(
    t: &Term,
    assignment: &[C::Elem],
    carrier: &C,
) -> Result<C::Elem> {
    let dim = carrier.dim();
    let check = |index: usize| {
        if index < dim {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, dim })
        }
    };
    Ok(match t {
        Term::Var(n) => assignment
            .get(*n)
            .cloned()
            .ok_or(Error::UnboundVariable(*n))?,
        Term::Zero => carrier.zero(),
        Term::One => carrier.one(),
        Term::Meet(a, b) => {
            let a = eval_term(a, assignment, carrier)?;
            let b = eval_term(b, assignment, carrier)?;
            carrier.meet(&a, &b)
        }
        Term::Compl(a) => carrier.complement(&eval_term(a, assignment, carrier)?),
        Term::Cyl(i, a) => {
            check(*i)?;
            carrier.cyl(*i, &eval_term(a, assignment, carrier)?)
        }
        Term::Subst(i, j, a) => {
            check(*i)?;
            check(*j)?;
            carrier.subst(*i, *j, &eval_term(a, assignment, carrier)?)
        }
        Term::Transp(i, j, a) => {
            check(*i)?;
            check(*j)?;
            carrier.transp(*i, *j, &eval_term(a, assignment, carrier)?)
        }
        Term::SubstSigma(sigma, a) => {
            if sigma.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: sigma.dim(),
                });
            }
            let desugared = Term::subst_sigma(sigma.clone(), (**a).clone()).desugar();
            eval_term(&desugared, assignment, carrier)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::syntax::parse_term;

    #[test]
    fn eval_examples() {
        let ctx = Context::new(2, 2).unwrap();
        let r = Relation::from_word(ctx, 0b0110).unwrap();
        assert_eq!(eval_term(&Term::var(0), &[r.clone()], &ctx).unwrap(), r);
        let pp = parse_term("(p 0 1 (p 0 1 x0))").unwrap();
        assert_eq!(eval_term(&pp, &[r.clone()], &ctx).unwrap(), r);
        for base in 1..=3 {
            let c = Context::new(2, base).unwrap();
            let t = Term::subst(0, 1, Term::Zero);
            assert!(eval_term(&t, &[], &c).unwrap().is_empty());
        }
        assert_eq!(
            eval_term(&Term::var(1), &[r.clone()], &ctx),
            Err(Error::UnboundVariable(1))
        );
        assert!(matches!(
            eval_term(&Term::cyl(2, Term::var(0)), &[r], &ctx),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn set_algebra_tables_agree_with_relations() {
        let ctx = Context::new(2, 2).unwrap();
        let a = FiniteAlgebra::full_set_algebra(ctx).unwrap();
        assert_eq!(a.size(), 16);
        let t = parse_term("(c 0 (and (s 0 1 x0) (not (p 0 1 x1))))").unwrap();
        for x in 0..16u64 {
            for y in 0..16u64 {
                let rel = eval_term(&t, &[ctx.element(x), ctx.element(y)], &ctx).unwrap();
                let tab = eval_term(&t, &[x as usize, y as usize], &a).unwrap();
                assert_eq!(rel.word(), tab as u64);
            }
        }
    }

    #[test]
    fn subst_sigma_table_matches_relations() {
        let ctx = Context::new(3, 2).unwrap();
        let a = FiniteAlgebra::full_set_algebra(ctx).unwrap();
        for sigma in crate::transform::enumerate_transformations(3).unwrap() {
            let table = a.subst_sigma_table(&sigma).unwrap();
            for k in 0..256usize {
                let direct = ctx.element(k as u64).subst_sigma(&sigma).unwrap();
                assert_eq!(direct.word(), table[k] as u64, "σ = {sigma}");
            }
        }
    }

    #[test]
    fn malformed_tables_rejected() {
        let mut a = FiniteAlgebra::two_element(2);
        assert!(a.replace_table(UnaryOp::Cyl(0), vec![0, 2]).is_err());
        assert!(a.replace_table(UnaryOp::Cyl(0), vec![0]).is_err());
        assert_eq!(a, FiniteAlgebra::two_element(2));
        assert!(FiniteAlgebra::new(2, 1, vec![0; 3], vec![1, 0], vec![vec![0, 1]], vec![vec![0, 1]], vec![vec![0, 1]], 0, 1).is_err());
        assert!(a.replace_table(UnaryOp::Transp(0, 1), vec![0, 0]).is_ok());
    }

    #[test]
    fn product_projects_componentwise() {
        let ctx = Context::new(2, 1).unwrap();
        let b = FiniteAlgebra::full_set_algebra(ctx).unwrap();
        let p = FiniteAlgebra::two_element(2).product(&b).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(p.one_elem(), 3);
        assert_eq!(p.meet_of(2, 1), 0);
        assert_eq!(p.table(UnaryOp::Complement), &[3, 2, 1, 0]);
    }
}
