//! α-ary relations over a finite base and the set-algebra operations on them.
//!
//! A sequence `s ∈ ᵅU` is addressed by `idx(s) = Σ s_i·|U|^i`, so coordinate
//! `i` is digit `i` in base `|U|`. A [`Relation`] is a bit-vector over those
//! indices.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::transform::Transformation;

/// Upper bound on `|U|^α` for a relation context.
pub const MAX_SPACE: usize = 1 << 26;

/// Default cap on generated subalgebra size.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Context {
    dim: usize,
    base: usize,
}

impl Context {
    pub fn new(dim: usize, base: usize) -> Result<Self> {
        if dim == 0 || base == 0 {
            return Err(Error::SpaceTooLarge { dim, base });
        }
        match base.checked_pow(dim as u32) {
            Some(n) if n <= MAX_SPACE => Ok(Context { dim, base }),
            _ => Err(Error::SpaceTooLarge { dim, base }),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// `|U|^α`.
    pub fn size(&self) -> usize {
        self.base.pow(self.dim as u32)
    }

    pub fn stride(&self, i: usize) -> usize {
        self.base.pow(i as u32)
    }

    pub fn encode(&self, s: &[usize]) -> Result<usize> {
        if s.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: s.len(),
            });
        }
        let mut idx = 0;
        for &v in s.iter().rev() {
            if v >= self.base {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    dim: self.base,
                });
            }
            idx = idx * self.base + v;
        }
        Ok(idx)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut s = Vec::with_capacity(self.dim);
        for _ in 0..self.dim {
            s.push(idx % self.base);
            idx /= self.base;
        }
        s
    }

    pub fn sequences(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.size()).map(|k| self.decode(k))
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.dim {
            Err(Error::IndexOutOfRange {
                index,
                dim: self.dim,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={} base={}", self.dim, self.base)
    }
}

type Words = SmallVec<[u64; 8]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    ctx: Context,
    bits: Words,
}

impl Relation {
    pub fn empty(ctx: Context) -> Self {
        Relation {
            ctx,
            bits: SmallVec::from_elem(0, ctx.size().div_ceil(64)),
        }
    }

    pub fn full(ctx: Context) -> Self {
        let mut r = Relation {
            ctx,
            bits: SmallVec::from_elem(!0, ctx.size().div_ceil(64)),
        };
        r.clear_padding();
        r
    }

    /// The relation whose bit-vector is the binary expansion of `word`.
    pub fn from_word(ctx: Context, word: u64) -> Result<Self> {
        let size = ctx.size();
        if size < 64 && word >> size != 0 {
            return Err(Error::SpaceTooLarge {
                dim: ctx.dim,
                base: ctx.base,
            });
        }
        let mut r = Relation::empty(ctx);
        r.bits[0] = word;
        Ok(r)
    }

    pub fn from_indices(ctx: Context, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut r = Relation::empty(ctx);
        for k in indices {
            if k >= ctx.size() {
                return Err(Error::IndexOutOfRange {
                    index: k,
                    dim: ctx.size(),
                });
            }
            r.set(k);
        }
        Ok(r)
    }

    pub fn from_tuples<S: AsRef<[usize]>>(
        ctx: Context,
        tuples: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let mut r = Relation::empty(ctx);
        for t in tuples {
            r.set(ctx.encode(t.as_ref())?);
        }
        Ok(r)
    }

    /// Builds `{ s : pred(s) }` by visiting every sequence.
    pub fn from_predicate(ctx: Context, mut pred: impl FnMut(&[usize]) -> bool) -> Self {
        let mut r = Relation::empty(ctx);
        let mut s = vec![0; ctx.dim];
        for k in 0..ctx.size() {
            if pred(&s) {
                r.set(k);
            }
            odometer(&mut s, ctx.base);
        }
        r
    }

    pub fn ctx(&self) -> Context {
        self.ctx
    }

    pub fn contains_index(&self, k: usize) -> bool {
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        self.ctx
            .encode(s)
            .map(|k| self.contains_index(k))
            .unwrap_or(false)
    }

    pub fn set(&mut self, k: usize) {
        self.bits[k / 64] |= 1 << (k % 64);
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        *self == Relation::full(self.ctx)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ctx.size()).filter(move |&k| self.contains_index(k))
    }

    pub fn tuples(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.indices().map(move |k| self.ctx.decode(k))
    }

    /// The low 64 bits of the bit-vector.
    pub fn word(&self) -> u64 {
        self.bits[0]
    }

    fn clear_padding(&mut self) {
        let rem = self.ctx.size() % 64;
        if rem != 0 {
            let last = self.bits.len() - 1;
            self.bits[last] &= (1u64 << rem) - 1;
        }
    }

    fn same_ctx(&self, other: &Relation) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn zip_with(&self, other: &Relation, f: impl Fn(u64, u64) -> u64) -> Result<Relation> {
        self.same_ctx(other)?;
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(Relation {
            ctx: self.ctx,
            bits,
        })
    }

    pub fn meet(&self, other: &Relation) -> Result<Relation> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn join(&self, other: &Relation) -> Result<Relation> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &Relation) -> Result<Relation> {
        self.zip_with(other, |a, b| a & !b)
    }

    /// `(x−y)∪(y−x)`.
    pub fn symmetric_difference(&self, other: &Relation) -> Result<Relation> {
        self.zip_with(other, |a, b| a ^ b)
    }

    pub fn complement(&self) -> Relation {
        let mut r = Relation {
            ctx: self.ctx,
            bits: self.bits.iter().map(|&w| !w).collect(),
        };
        r.clear_padding();
        r
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.ctx == other.ctx && self.bits.iter().zip(&other.bits).all(|(&a, &b)| a & !b == 0)
    }

    /// `{ s : map(s) ∈ self }`, where `map` rewrites a sequence in place.
    pub fn pullback(&self, mut map: impl FnMut(&[usize], &mut [usize])) -> Relation {
        let ctx = self.ctx;
        let mut out = Relation::empty(ctx);
        let mut s = vec![0; ctx.dim];
        let mut t = vec![0; ctx.dim];
        for k in 0..ctx.size() {
            map(&s, &mut t);
            if self.contains_index(ctx.encode(&t).expect("map stays in base")) {
                out.set(k);
            }
            odometer(&mut s, ctx.base);
        }
        out
    }

    fn pullback_index(&self, map: impl Fn(usize) -> usize) -> Relation {
        let mut out = Relation::empty(self.ctx);
        for k in 0..self.ctx.size() {
            if self.contains_index(map(k)) {
                out.set(k);
            }
        }
        out
    }

    fn digit(&self, k: usize, i: usize) -> usize {
        (k / self.ctx.stride(i)) % self.ctx.base
    }

    /// `C_i`: `s` is in the result iff `s(i/u) ∈ R` for some `u`.
    pub fn cyl(&self, i: usize) -> Result<Relation> {
        let ctx = self.ctx;
        ctx.check_index(i)?;
        let stride = ctx.stride(i);
        let span = stride * ctx.base;
        let mut out = Relation::empty(ctx);
        for k in 0..ctx.size() {
            let low = k % stride + (k / span) * span;
            if (0..ctx.base).any(|u| self.contains_index(low + u * stride)) {
                out.set(k);
            }
        }
        Ok(out)
    }

    /// `S_ij`: `s` is in the result iff `s(i/s_j) ∈ R`.
    pub fn subst(&self, i: usize, j: usize) -> Result<Relation> {
        self.ctx.check_index(i)?;
        self.ctx.check_index(j)?;
        if i == j {
            return Ok(self.clone());
        }
        let si = self.ctx.stride(i);
        Ok(self.pullback_index(|k| k - self.digit(k, i) * si + self.digit(k, j) * si))
    }

    /// `P_ij`: `s` is in the result iff `s(i/s_j)(j/s_i) ∈ R`.
    pub fn transp(&self, i: usize, j: usize) -> Result<Relation> {
        self.ctx.check_index(i)?;
        self.ctx.check_index(j)?;
        if i == j {
            return Ok(self.clone());
        }
        let (si, sj) = (self.ctx.stride(i), self.ctx.stride(j));
        Ok(self.pullback_index(|k| {
            let (di, dj) = (self.digit(k, i), self.digit(k, j));
            k - di * si - dj * sj + dj * si + di * sj
        }))
    }

    /// `S_σ`: `s` is in the result iff `s∘σ ∈ R`.
    pub fn subst_sigma(&self, sigma: &Transformation) -> Result<Relation> {
        if sigma.dim() != self.ctx.dim {
            return Err(Error::DimensionMismatch {
                expected: self.ctx.dim,
                found: sigma.dim(),
            });
        }
        let image = sigma.image();
        Ok(self.pullback_index(|k| {
            image
                .iter()
                .enumerate()
                .map(|(n, &m)| self.digit(k, m) * self.ctx.stride(n))
                .sum()
        }))
    }

    pub fn to_hex(&self) -> String {
        let digits = 2 * self.ctx.size().div_ceil(8);
        let mut out = String::with_capacity(digits + 4);
        out.push_str("hex:");
        for d in (0..digits).rev() {
            let bit = d * 4;
            let nibble = if bit < self.bits.len() * 64 {
                (self.bits[bit / 64] >> (bit % 64)) & 0xf
            } else {
                0
            };
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    /// `ctx` header followed by the hex body, e.g. `alpha=2 base=2 hex:0a`.
    pub fn to_text(&self) -> String {
        format!("{} {}", self.ctx, self.to_hex())
    }

    /// Parses a body (`{(…),…}` or `hex:…`) against a known context.
    pub fn parse_body(ctx: Context, text: &str) -> Result<Relation> {
        let text = text.trim();
        if let Some(hex) = text.strip_prefix("hex:") {
            return parse_hex(ctx, hex);
        }
        parse_tuples(ctx, text)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({} {})", self.ctx, self)
    }
}

/// Tuple form, ordered by sequence index.
impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, t) in self.tuples().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            f.write_str("(")?;
            for (m, v) in t.iter().enumerate() {
                if m > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

/// Parses `alpha=A base=B <body>`.
impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (ctx, rest) = parse_header(s)?;
        Relation::parse_body(ctx, rest)
    }
}

/// Splits a leading `alpha=A base=B` header off `s`.
pub fn parse_header(s: &str) -> Result<(Context, &str)> {
    let s = s.trim_start();
    let mut rest = s;
    let mut dim = None;
    let mut base = None;
    for _ in 0..2 {
        let (tok, tail) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
        let num = |v: &str| {
            v.parse::<usize>()
                .map_err(|_| Error::parse(s.len() - rest.len(), format!("bad header value {v:?}")))
        };
        if let Some(v) = tok.strip_prefix("alpha=") {
            dim = Some(num(v)?);
        } else if let Some(v) = tok.strip_prefix("base=") {
            base = Some(num(v)?);
        } else {
            return Err(Error::parse(
                s.len() - rest.len(),
                "expected header `alpha=A base=B`",
            ));
        }
        rest = tail.trim_start();
    }
    match (dim, base) {
        (Some(d), Some(b)) => Ok((Context::new(d, b)?, rest)),
        _ => Err(Error::parse(0, "header needs both alpha= and base=")),
    }
}

fn parse_hex(ctx: Context, hex: &str) -> Result<Relation> {
    let mut r = Relation::empty(ctx);
    for (d, ch) in hex.chars().rev().enumerate() {
        let nibble = ch
            .to_digit(16)
            .ok_or_else(|| Error::parse(hex.len() - d, format!("bad hex digit {ch:?}")))?;
        for b in 0..4 {
            if nibble >> b & 1 == 1 {
                let k = d * 4 + b;
                if k >= ctx.size() {
                    return Err(Error::parse(0, "hex value exceeds relation size"));
                }
                r.set(k);
            }
        }
    }
    Ok(r)
}

fn parse_tuples(ctx: Context, text: &str) -> Result<Relation> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| Error::parse(0, "relation must be `{…}` or `hex:…`"))?;
    let mut r = Relation::empty(ctx);
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let pos = text.len() - rest.len();
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::parse(pos, "expected `(`"))?;
        let close = body
            .find(')')
            .ok_or_else(|| Error::parse(pos, "unterminated tuple"))?;
        let tuple = body[..close]
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(pos, format!("bad tuple entry {v:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        r.set(ctx.encode(&tuple)?);
        rest = body[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(r)
}

fn odometer(s: &mut [usize], base: usize) {
    for d in s.iter_mut() {
        *d += 1;
        if *d < base {
            return;
        }
        *d = 0;
    }
}

/// Operation signatures: `p` (Booleans and transpositions), `cp` (adds
/// cylindrifications) and `csp` (adds substitutions).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Signature {
    P,
    Cp,
    Csp,
}

impl Signature {
    pub fn has_cyl(self) -> bool {
        matches!(self, Signature::Cp | Signature::Csp)
    }

    pub fn has_subst(self) -> bool {
        self == Signature::Csp
    }
}

impl FromStr for Signature {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "p" => Ok(Signature::P),
            "cp" => Ok(Signature::Cp),
            "csp" => Ok(Signature::Csp),
            _ => Err(Error::parse(0, format!("unknown signature {s:?}"))),
        }
    }
}

/// Every unary operation of `sig` applied to `r`.
pub fn unary_images(r: &Relation, sig: Signature) -> Vec<Relation> {
    let dim = r.ctx().dim();
    let mut out = vec![r.complement()];
    for i in 0..dim {
        if sig.has_cyl() {
            out.push(r.cyl(i).unwrap());
        }
        for j in 0..dim {
            if i == j {
                continue;
            }
            if j > i {
                out.push(r.transp(i, j).unwrap());
            }
            if sig.has_subst() {
                out.push(r.subst(i, j).unwrap());
            }
        }
    }
    out
}

/// Least set containing `generators`, `∅` and the full relation, closed
/// under the operations of `sig`. Members appear in discovery order.
pub fn generate_subalgebra(
    ctx: Context,
    generators: &[Relation],
    sig: Signature,
    cap: usize,
) -> Result<Vec<Relation>> {
    let mut members: Vec<Relation> = Vec::new();
    let mut index: HashMap<Relation, usize> = HashMap::new();
    let mut push = |r: Relation, members: &mut Vec<Relation>| -> Result<()> {
        if r.ctx() != ctx {
            return Err(Error::ContextMismatch);
        }
        if !index.contains_key(&r) {
            if members.len() >= cap {
                return Err(Error::CapExceeded { cap });
            }
            index.insert(r.clone(), members.len());
            members.push(r);
        }
        Ok(())
    };
    push(Relation::empty(ctx), &mut members)?;
    push(Relation::full(ctx), &mut members)?;
    for g in generators {
        push(g.clone(), &mut members)?;
    }
    let mut next = 0;
    while next < members.len() {
        let cur = members[next].clone();
        for img in unary_images(&cur, sig) {
            push(img, &mut members)?;
        }
        for k in 0..=next {
            let m = cur.meet(&members[k])?;
            push(m, &mut members)?;
        }
        next += 1;
    }
    Ok(members)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: usize, b: usize) -> Context {
        Context::new(d, b).unwrap()
    }

    fn rel(c: Context, tuples: &[&[usize]]) -> Relation {
        Relation::from_tuples(c, tuples.iter().copied()).unwrap()
    }

    #[test]
    fn encoding_is_little_endian() {
        let c = ctx(3, 2);
        assert_eq!(c.encode(&[1, 0, 0]).unwrap(), 1);
        assert_eq!(c.encode(&[0, 0, 1]).unwrap(), 4);
        for k in 0..c.size() {
            assert_eq!(c.encode(&c.decode(k)).unwrap(), k);
        }
        assert!(c.encode(&[2, 0, 0]).is_err());
        assert!(Context::new(30, 3).is_err());
    }

    #[test]
    fn cyl_examples() {
        let c = ctx(2, 2);
        assert!(Relation::empty(c).cyl(0).unwrap().is_empty());
        assert_eq!(
            rel(c, &[&[0, 1]]).cyl(0).unwrap(),
            rel(c, &[&[0, 1], &[1, 1]])
        );
        assert!(Relation::full(c).cyl(1).unwrap().is_full());
        assert!(Relation::full(c).cyl(2).is_err());
    }

    #[test]
    fn subst_examples() {
        let c = ctx(2, 2);
        let r = rel(c, &[&[1, 1]]);
        assert_eq!(r.subst(1, 1).unwrap(), r);
        assert_eq!(r.subst(0, 1).unwrap(), rel(c, &[&[0, 1], &[1, 1]]));
        assert!(Relation::empty(c).subst(0, 1).unwrap().is_empty());
    }

    #[test]
    fn transp_examples() {
        let c = ctx(2, 2);
        let r = rel(c, &[&[0, 1]]);
        assert_eq!(r.transp(0, 0).unwrap(), r);
        assert_eq!(r.transp(0, 1).unwrap(), rel(c, &[&[1, 0]]));
        assert_eq!(r.transp(0, 1).unwrap().transp(0, 1).unwrap(), r);
    }

    #[test]
    fn subst_sigma_examples() {
        let c = ctx(3, 2);
        let r = Relation::from_word(c, 0b1011_0010).unwrap();
        assert_eq!(r.subst_sigma(&Transformation::identity(3)).unwrap(), r);
        let rep: Transformation = "1 1 2".parse().unwrap();
        assert_eq!(r.subst_sigma(&rep).unwrap(), r.subst(0, 1).unwrap());
        let cyc: Transformation = "1 2 0".parse().unwrap();
        let got = r.subst_sigma(&cyc).unwrap();
        for s in c.sequences() {
            let moved = [s[1], s[2], s[0]];
            assert_eq!(got.contains(&s), r.contains(&moved));
        }
        assert!(r.subst_sigma(&Transformation::identity(2)).is_err());
    }

    #[test]
    fn boolean_examples() {
        let c = ctx(2, 3);
        let r = rel(c, &[&[0, 2], &[1, 1]]);
        let full = Relation::full(c);
        assert_eq!(r.meet(&full).unwrap(), r);
        assert_eq!(r.complement().complement(), r);
        assert!(r.symmetric_difference(&r).unwrap().is_empty());
        assert_eq!(full.count(), 9);
        assert_eq!(r.complement().count(), 7);
        assert_eq!(
            r.meet(&Relation::full(ctx(2, 2))),
            Err(Error::ContextMismatch)
        );
    }

    #[test]
    fn text_round_trip() {
        let c = ctx(2, 2);
        let r = rel(c, &[&[0, 1], &[1, 1]]);
        assert_eq!(r.to_string(), "{(0,1),(1,1)}");
        assert_eq!(r.to_hex(), "hex:0c");
        assert_eq!(r.to_text(), "alpha=2 base=2 hex:0c");
        assert_eq!(r.to_text().parse::<Relation>().unwrap(), r);
        let tup: Relation = "alpha=2 base=2 {(0,1),(1,1)}".parse().unwrap();
        assert_eq!(tup, r);
        assert_eq!(Relation::parse_body(c, "hex:0a").unwrap(), rel(c, &[&[1, 0], &[1, 1]]));
        assert_eq!(Relation::parse_body(c, "{}").unwrap(), Relation::empty(c));
        assert!(Relation::parse_body(c, "hex:1f").is_err());
        assert!(Relation::parse_body(c, "{(0,2)}").is_err());
        assert!("base=2 {}".parse::<Relation>().is_err());
    }

    #[test]
    fn subalgebra_trivial_cases() {
        let c = ctx(2, 2);
        let empty_gen = generate_subalgebra(c, &[], Signature::Csp, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(empty_gen, vec![Relation::empty(c), Relation::full(c)]);
        let full_gen =
            generate_subalgebra(c, &[Relation::full(c)], Signature::Csp, DEFAULT_CLOSURE_CAP)
                .unwrap();
        assert_eq!(full_gen.len(), 2);
    }

    #[test]
    fn subalgebra_is_closed() {
        let c = ctx(2, 2);
        let g = rel(c, &[&[0, 1]]);
        for sig in [Signature::P, Signature::Cp, Signature::Csp] {
            let members = generate_subalgebra(c, &[g.clone()], sig, DEFAULT_CLOSURE_CAP).unwrap();
            assert!(members.contains(&g));
            for a in &members {
                for img in unary_images(a, sig) {
                    assert!(members.contains(&img));
                }
                for b in &members {
                    assert!(members.contains(&a.meet(b).unwrap()));
                }
            }
        }
        assert_eq!(
            generate_subalgebra(c, &[g], Signature::Csp, 3),
            Err(Error::CapExceeded { cap: 3 })
        );
    }
}
