//! Terms and equations in the `csp` signature, with a parenthesized prefix
//! text form:
//!
//! ```text
//! x0  0  1  (and t u)  (not t)  (c i t)  (s i j t)  (p i j t)  (ssig "1 0 0" t)
//! ```
//!
//! `(or t u)` is accepted as input sugar for `(not (and (not t) (not u)))`.
//! A bare top-level application such as `s 0 1 x0` is read as if it were
//! parenthesized.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relalg::Signature;
use crate::transform::{decompose_mixed, Generator, Transformation};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Term {
    Var(usize),
    Zero,
    One,
    Meet(Box<Term>, Box<Term>),
    Compl(Box<Term>),
    Cyl(usize, Box<Term>),
    Subst(usize, usize, Box<Term>),
    Transp(usize, usize, Box<Term>),
    /// Derived `s_σ`, standing for its generator-word expansion.
    SubstSigma(Transformation, Box<Term>),
}

impl Term {
    pub fn var(n: usize) -> Term {
        Term::Var(n)
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::Meet(Box::new(a), Box::new(b))
    }

    pub fn compl(a: Term) -> Term {
        Term::Compl(Box::new(a))
    }

    /// `a + b` as `−(−a · −b)`.
    pub fn join(a: Term, b: Term) -> Term {
        Term::compl(Term::meet(Term::compl(a), Term::compl(b)))
    }

    pub fn cyl(i: usize, a: Term) -> Term {
        Term::Cyl(i, Box::new(a))
    }

    pub fn subst(i: usize, j: usize, a: Term) -> Term {
        Term::Subst(i, j, Box::new(a))
    }

    pub fn transp(i: usize, j: usize, a: Term) -> Term {
        Term::Transp(i, j, Box::new(a))
    }

    pub fn subst_sigma(sigma: Transformation, a: Term) -> Term {
        Term::SubstSigma(sigma, Box::new(a))
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(n) => {
                out.insert(*n);
            }
            Term::Zero | Term::One => {}
            Term::Meet(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Compl(a)
            | Term::Cyl(_, a)
            | Term::Subst(_, _, a)
            | Term::Transp(_, _, a)
            | Term::SubstSigma(_, a) => a.collect_vars(out),
        }
    }

    /// Checks every operation index against `dim`.
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        let check = |index: usize| {
            if index < dim {
                Ok(())
            } else {
                Err(Error::IndexOutOfRange { index, dim })
            }
        };
        match self {
            Term::Var(_) | Term::Zero | Term::One => Ok(()),
            Term::Meet(a, b) => {
                a.check_dim(dim)?;
                b.check_dim(dim)
            }
            Term::Compl(a) => a.check_dim(dim),
            Term::Cyl(i, a) => {
                check(*i)?;
                a.check_dim(dim)
            }
            Term::Subst(i, j, a) | Term::Transp(i, j, a) => {
                check(*i)?;
                check(*j)?;
                a.check_dim(dim)
            }
            Term::SubstSigma(sigma, a) => {
                if sigma.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: sigma.dim(),
                    });
                }
                a.check_dim(dim)
            }
        }
    }

    /// The smallest signature containing every operation used.
    pub fn signature(&self) -> Signature {
        fn walk(t: &Term, cyl: &mut bool, subst: &mut bool) {
            match t {
                Term::Var(_) | Term::Zero | Term::One => {}
                Term::Meet(a, b) => {
                    walk(a, cyl, subst);
                    walk(b, cyl, subst);
                }
                Term::Compl(a) | Term::Transp(_, _, a) => walk(a, cyl, subst),
                Term::Cyl(_, a) => {
                    *cyl = true;
                    walk(a, cyl, subst)
                }
                Term::Subst(_, _, a) => {
                    *subst = true;
                    walk(a, cyl, subst)
                }
                Term::SubstSigma(sigma, a) => {
                    if !sigma.is_permutation() {
                        *subst = true;
                    }
                    walk(a, cyl, subst)
                }
            }
        }
        let (mut cyl, mut subst) = (false, false);
        walk(self, &mut cyl, &mut subst);
        match (cyl, subst) {
            (_, true) => Signature::Csp,
            (true, false) => Signature::Cp,
            _ => Signature::P,
        }
    }

    /// Replaces every `SubstSigma` node by its `s`/`p` chain.
    ///
    /// The word `g₁∘…∘gₙ` of `σ` becomes `op(g₁)(…op(gₙ)(t)…)`, with
    /// transpositions read as `p` and replacements as `s`.
    pub fn desugar(&self) -> Term {
        match self {
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
            Term::Meet(a, b) => Term::meet(a.desugar(), b.desugar()),
            Term::Compl(a) => Term::compl(a.desugar()),
            Term::Cyl(i, a) => Term::cyl(*i, a.desugar()),
            Term::Subst(i, j, a) => Term::subst(*i, *j, a.desugar()),
            Term::Transp(i, j, a) => Term::transp(*i, *j, a.desugar()),
            Term::SubstSigma(sigma, a) => {
                let word = decompose_mixed(sigma);
                word.letters()
                    .iter()
                    .rev()
                    .fold(a.desugar(), |acc, g| match *g {
                        Generator::Transposition(i, j) => Term::transp(i, j, acc),
                        Generator::Replacement(i, j) => Term::subst(i, j, acc),
                    })
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(n) => write!(f, "x{n}"),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Meet(a, b) => write!(f, "(and {a} {b})"),
            Term::Compl(a) => write!(f, "(not {a})"),
            Term::Cyl(i, a) => write!(f, "(c {i} {a})"),
            Term::Subst(i, j, a) => write!(f, "(s {i} {j} {a})"),
            Term::Transp(i, j, a) => write!(f, "(p {i} {j} {a})"),
            Term::SubstSigma(s, a) => write!(f, "(ssig \"{s}\" {a})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        let mut v = self.lhs.vars();
        v.extend(self.rhs.vars());
        v
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        self.lhs.check_dim(dim)?;
        self.rhs.check_dim(dim)
    }

    pub fn desugar(&self) -> Equation {
        Equation::new(self.lhs.desugar(), self.rhs.desugar())
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Quoted(&'a str),
    Atom(&'a str),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok<'_>)>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        match c {
            b'(' => {
                out.push((pos, Tok::Open));
                pos += 1;
            }
            b')' => {
                out.push((pos, Tok::Close));
                pos += 1;
            }
            b'"' => {
                let end = src[pos + 1..]
                    .find('"')
                    .ok_or_else(|| Error::parse(pos, "unterminated string"))?;
                out.push((pos, Tok::Quoted(&src[pos + 1..pos + 1 + end])));
                pos += end + 2;
            }
            c if c.is_ascii_whitespace() => pos += 1,
            _ => {
                let start = pos;
                while pos < bytes.len()
                    && !bytes[pos].is_ascii_whitespace()
                    && !matches!(bytes[pos], b'(' | b')' | b'"')
                {
                    pos += 1;
                }
                out.push((start, Tok::Atom(&src[start..pos])));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    at: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn next(&mut self) -> Result<Tok<'a>> {
        let t = self
            .toks
            .get(self.at)
            .map(|t| t.1.clone())
            .ok_or_else(|| Error::parse(self.end, "unexpected end of input"))?;
        self.at += 1;
        Ok(t)
    }

    fn index(&mut self) -> Result<usize> {
        let pos = self.pos();
        match self.next()? {
            Tok::Atom(a) => a
                .parse()
                .map_err(|_| Error::parse(pos, format!("expected an index, found {a:?}"))),
            t => Err(Error::parse(pos, format!("expected an index, found {t:?}"))),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let pos = self.pos();
        match self.next()? {
            Tok::Open => {
                let t = self.application()?;
                let close = self.pos();
                match self.next()? {
                    Tok::Close => Ok(t),
                    _ => Err(Error::parse(close, "expected `)`")),
                }
            }
            Tok::Atom(a) => atom(a, pos),
            t => Err(Error::parse(pos, format!("unexpected {t:?}"))),
        }
    }

    fn application(&mut self) -> Result<Term> {
        let pos = self.pos();
        let op = match self.next()? {
            Tok::Atom(a) => a,
            t => return Err(Error::parse(pos, format!("expected an operator, found {t:?}"))),
        };
        match op {
            "and" => Ok(Term::meet(self.term()?, self.term()?)),
            "or" => Ok(Term::join(self.term()?, self.term()?)),
            "not" => Ok(Term::compl(self.term()?)),
            "c" => Ok(Term::cyl(self.index()?, self.term()?)),
            "s" => Ok(Term::subst(self.index()?, self.index()?, self.term()?)),
            "p" => Ok(Term::transp(self.index()?, self.index()?, self.term()?)),
            "ssig" => {
                let spos = self.pos();
                let sigma = match self.next()? {
                    Tok::Quoted(q) => q.parse::<Transformation>().map_err(|e| match e {
                        Error::Parse { msg, .. } => Error::parse(spos, msg),
                        other => other,
                    })?,
                    _ => return Err(Error::parse(spos, "ssig expects a quoted transformation")),
                };
                Ok(Term::subst_sigma(sigma, self.term()?))
            }
            other => Err(Error::parse(pos, format!("unknown operator {other:?}"))),
        }
    }
}

fn atom(a: &str, pos: usize) -> Result<Term> {
    match a {
        "0" => Ok(Term::Zero),
        "1" => Ok(Term::One),
        _ => a
            .strip_prefix('x')
            .and_then(|n| n.parse().ok())
            .map(Term::Var)
            .ok_or_else(|| Error::parse(pos, format!("unknown atom {a:?}"))),
    }
}

fn parse_tokens<'a>(toks: Vec<(usize, Tok<'a>)>, end: usize) -> Result<Term> {
    if toks.is_empty() {
        return Err(Error::parse(end, "empty term"));
    }
    let bare = matches!(toks[0].1, Tok::Atom(a) if matches!(a, "and" | "or" | "not" | "c" | "s" | "p" | "ssig"));
    let mut p = Parser { toks, at: 0, end };
    let t = if bare { p.application()? } else { p.term()? };
    if p.at != p.toks.len() {
        return Err(Error::parse(p.pos(), "trailing input"));
    }
    Ok(t)
}

pub fn parse_term(src: &str) -> Result<Term> {
    parse_tokens(tokenize(src)?, src.len())
}

pub fn print_term(t: &Term) -> String {
    t.to_string()
}

/// Parses `lhs = rhs`.
pub fn parse_equation(src: &str) -> Result<Equation> {
    let toks = tokenize(src)?;
    let mut depth = 0i32;
    let mut split = None;
    for (k, (pos, t)) in toks.iter().enumerate() {
        match t {
            Tok::Open => depth += 1,
            Tok::Close => depth -= 1,
            Tok::Atom("=") if depth == 0 => {
                if split.is_some() {
                    return Err(Error::parse(*pos, "more than one `=`"));
                }
                split = Some((k, *pos));
            }
            _ => {}
        }
    }
    let (k, pos) = split.ok_or_else(|| Error::parse(src.len(), "expected `lhs = rhs`"))?;
    let mut lhs = toks;
    let rhs = lhs.split_off(k + 1);
    lhs.pop();
    Ok(Equation::new(parse_tokens(lhs, pos)?, parse_tokens(rhs, src.len())?))
}

impl FromStr for Term {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

impl FromStr for Equation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_equation(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(
            parse_term("(p 0 1 (p 0 1 x0))").unwrap(),
            Term::transp(0, 1, Term::transp(0, 1, Term::var(0)))
        );
        assert_eq!(
            parse_term("(c 2 (and x0 (not x1)))").unwrap(),
            Term::cyl(2, Term::meet(Term::var(0), Term::compl(Term::var(1))))
        );
        assert_eq!(
            parse_term("(ssig \"1 0 0\" x0)").unwrap(),
            Term::subst_sigma("1 0 0".parse().unwrap(), Term::var(0))
        );
        assert_eq!(
            parse_term("s 0 1 x0").unwrap(),
            Term::subst(0, 1, Term::var(0))
        );
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(
            parse_term("(c 0 y1)"),
            Err(Error::parse(5, "unknown atom \"y1\""))
        );
        assert!(matches!(parse_term("(and x0"), Err(Error::Parse { pos: 7, .. })));
        assert!(matches!(parse_term("(q x0)"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_term("x0 x1"), Err(Error::Parse { pos: 3, .. })));
        assert!(parse_term("(ssig \"1 5\" x0)").is_err());
    }

    #[test]
    fn equations() {
        let eq = parse_equation("s 0 1 x0 = x0").unwrap();
        assert_eq!(eq.lhs, Term::subst(0, 1, Term::var(0)));
        assert_eq!(eq.rhs, Term::var(0));
        let eq2 = parse_equation(&eq.to_string()).unwrap();
        assert_eq!(eq, eq2);
        assert!(parse_equation("x0").is_err());
        assert!(parse_equation("x0 = x0 = x0").is_err());
    }

    #[test]
    fn desugar_follows_word_order() {
        let sigma: Transformation = "1 2 0".parse().unwrap();
        let d = Term::subst_sigma(sigma.clone(), Term::var(0)).desugar();
        // Rebuild σ from the chain, outermost operator first.
        let mut letters = Vec::new();
        let mut cur = &d;
        loop {
            match cur {
                Term::Transp(i, j, a) => {
                    letters.push(Generator::Transposition(*i, *j));
                    cur = a;
                }
                Term::Subst(i, j, a) => {
                    letters.push(Generator::Replacement(*i, *j));
                    cur = a;
                }
                _ => break,
            }
        }
        let w = crate::transform::GeneratorWord(letters);
        assert_eq!(w.evaluate(3).unwrap(), sigma);
    }

    #[test]
    fn signature_and_dims() {
        assert_eq!(parse_term("(p 0 1 x0)").unwrap().signature(), Signature::P);
        assert_eq!(parse_term("(c 0 x0)").unwrap().signature(), Signature::Cp);
        assert_eq!(parse_term("(s 0 1 x0)").unwrap().signature(), Signature::Csp);
        assert!(parse_term("(c 3 x0)").unwrap().check_dim(3).is_err());
        assert!(parse_term("(ssig \"0 1\" x0)").unwrap().check_dim(3).is_err());
    }
}
