//! Finite transformations of `{0, …, α−1}` and their generator words.
//!
//! A [`Transformation`] is stored as its image vector. Words over the
//! generators `[i,j]` (transposition) and `[i/j]` (replacement) are read
//! as compositions `g₁∘g₂∘…∘gₙ`: the leftmost letter is the outermost
//! factor, so the rightmost letter acts first on an index.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest dimension for which the full monoid is enumerated.
pub const MAX_ENUM_DIM: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Transformation {
    image: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Class {
    Permutational,
    Singular,
}

impl Transformation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let dim = image.len();
        if let Some(&bad) = image.iter().find(|&&v| v >= dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim });
        }
        Ok(Transformation { image })
    }

    pub fn identity(dim: usize) -> Self {
        Transformation {
            image: (0..dim).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(Transformation {
            image: other.image.iter().map(|&t| self.image[t]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn in_range(&self, k: usize) -> bool {
        self.image.contains(&k)
    }

    pub fn classify(&self) -> Class {
        let mut hit = vec![false; self.dim()];
        for &v in &self.image {
            hit[v] = true;
        }
        if hit.into_iter().all(|h| h) {
            Class::Permutational
        } else {
            Class::Singular
        }
    }

    pub fn is_permutation(&self) -> bool {
        self.classify() == Class::Permutational
    }

    /// `self` with `i` redirected to `v`.
    pub fn with(&self, i: usize, v: usize) -> Transformation {
        let mut image = self.image.clone();
        image[i] = v;
        Transformation { image }
    }

    /// Position of `self` in the little-endian enumeration order.
    pub fn index(&self) -> usize {
        let dim = self.dim();
        self.image.iter().rev().fold(0, |acc, &v| acc * dim + v)
    }

    pub fn from_index(dim: usize, mut idx: usize) -> Transformation {
        let mut image = Vec::with_capacity(dim);
        for _ in 0..dim {
            image.push(idx % dim);
            idx /= dim;
        }
        Transformation { image }
    }
}

impl TryFrom<Vec<usize>> for Transformation {
    type Error = Error;
    fn try_from(image: Vec<usize>) -> Result<Self> {
        Transformation::new(image)
    }
}

impl From<Transformation> for Vec<usize> {
    fn from(t: Transformation) -> Vec<usize> {
        t.image
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.image.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Transformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let image = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::parse(0, format!("bad image entry {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if image.is_empty() {
            return Err(Error::parse(0, "empty transformation"));
        }
        Transformation::new(image)
    }
}

/// All `α^α` transformations in index order.
pub fn enumerate_transformations(dim: usize) -> Result<Vec<Transformation>> {
    if dim > MAX_ENUM_DIM {
        return Err(Error::DimTooLarge {
            dim,
            max: MAX_ENUM_DIM,
        });
    }
    let count = dim.pow(dim as u32);
    Ok((0..count)
        .map(|k| Transformation::from_index(dim, k))
        .collect())
}

/// Applies a transformation to a sequence: `result[i] = s[σ(i)]`.
pub fn apply_to_sequence<T: Clone>(s: &[T], sigma: &Transformation) -> Result<Vec<T>> {
    if s.len() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: sigma.dim(),
            found: s.len(),
        });
    }
    Ok(sigma.image.iter().map(|&k| s[k].clone()).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Generator {
    /// `[i,j]`: swaps `i` and `j`.
    Transposition(usize, usize),
    /// `[i/j]`: sends `i` to `j`, fixes everything else.
    Replacement(usize, usize),
}

impl Generator {
    pub fn indices(self) -> (usize, usize) {
        match self {
            Generator::Transposition(i, j) | Generator::Replacement(i, j) => (i, j),
        }
    }

    pub fn to_transformation(self, dim: usize) -> Result<Transformation> {
        let (i, j) = self.indices();
        for index in [i, j] {
            if index >= dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
        }
        let mut image: Vec<usize> = (0..dim).collect();
        match self {
            Generator::Transposition(..) => image.swap(i, j),
            Generator::Replacement(..) => image[i] = j,
        }
        Ok(Transformation { image })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Generator::Transposition(i, j) => write!(f, "[{i},{j}]"),
            Generator::Replacement(i, j) => write!(f, "[{i}/{j}]"),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(0, format!("generator must be bracketed: {s:?}")))?;
        let (sep, ctor): (char, fn(usize, usize) -> Generator) = if inner.contains('/') {
            ('/', Generator::Replacement)
        } else if inner.contains(',') {
            (',', Generator::Transposition)
        } else {
            return Err(Error::parse(0, format!("expected [i,j] or [i/j]: {s:?}")));
        };
        let (a, b) = inner.split_once(sep).unwrap();
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::parse(0, format!("bad generator index {t:?}")))
        };
        let (i, j) = (num(a)?, num(b)?);
        if i == j {
            return Err(Error::parse(0, format!("generator indices must differ: {s:?}")));
        }
        Ok(ctor(i, j))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorWord(pub Vec<Generator>);

impl GeneratorWord {
    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Composes the letters left to right; the empty word is the identity.
    pub fn evaluate(&self, dim: usize) -> Result<Transformation> {
        let mut acc = Transformation::identity(dim);
        for g in &self.0 {
            acc = acc.compose(&g.to_transformation(dim)?)?;
        }
        Ok(acc)
    }

    pub fn is_transposition_only(&self) -> bool {
        self.0
            .iter()
            .all(|g| matches!(g, Generator::Transposition(..)))
    }

    pub fn is_replacement_only(&self) -> bool {
        self.0.iter().all(|g| matches!(g, Generator::Replacement(..)))
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("∘")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(GeneratorWord::default());
        }
        s.split(['∘', ';'])
            .map(str::parse)
            .collect::<Result<Vec<_>>>()
            .map(GeneratorWord)
    }
}

/// Writes `σ` as a word of transpositions followed by replacements.
///
/// `σ = π∘κ` where `κ` sends every index to the smallest member of its
/// fiber under `σ` and `π` is a permutation carrying those representatives
/// to their values. Permutations get a transposition-only word from their
/// cycles. The word length is at most `2(α−1)`.
pub fn decompose_mixed(sigma: &Transformation) -> GeneratorWord {
    let dim = sigma.dim();
    let mut rep = vec![usize::MAX; dim];
    for (i, &v) in sigma.image.iter().enumerate() {
        if rep[v] == usize::MAX {
            rep[v] = i;
        }
    }

    // π(rep(v)) = v for v in ran σ; remaining points matched in order.
    let mut perm = vec![usize::MAX; dim];
    for (v, &r) in rep.iter().enumerate() {
        if r != usize::MAX {
            perm[r] = v;
        }
    }
    let mut free_values = (0..dim).filter(|&v| rep[v] == usize::MAX);
    for slot in perm.iter_mut() {
        if *slot == usize::MAX {
            *slot = free_values.next().expect("value count matches");
        }
    }

    let mut letters = transposition_word(&perm);
    for (i, &v) in sigma.image.iter().enumerate() {
        if rep[v] != i {
            letters.push(Generator::Replacement(i, rep[v]));
        }
    }
    GeneratorWord(letters)
}

// Cycle (a0 a1 … ak) = [a0,ak]∘…∘[a0,a1].
fn transposition_word(perm: &[usize]) -> Vec<Generator> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut next = perm[start];
        while next != start {
            seen[next] = true;
            cycle.push(next);
            next = perm[next];
        }
        for &a in cycle[1..].iter().rev() {
            out.push(Generator::Transposition(start, a));
        }
    }
    out
}

/// Shortest words over replacements for every singular map of one dimension,
/// found by breadth-first search from the identity.
struct ReplacementTable {
    // (parent index, letter) for each reached transformation.
    parent: Vec<Option<(usize, Generator)>>,
}

impl ReplacementTable {
    fn build(dim: usize) -> Self {
        let count = dim.pow(dim as u32);
        let gens: Vec<(Generator, Transformation)> = (0..dim)
            .flat_map(|i| (0..dim).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| {
                let g = Generator::Replacement(i, j);
                (g, g.to_transformation(dim).unwrap())
            })
            .collect();
        let id = Transformation::identity(dim);
        let mut parent = vec![None; count];
        let mut reached = vec![false; count];
        reached[id.index()] = true;
        let mut queue = VecDeque::from([id]);
        while let Some(cur) = queue.pop_front() {
            let cur_idx = cur.index();
            for (g, gt) in &gens {
                let next = cur.compose(gt).unwrap();
                let k = next.index();
                if !reached[k] {
                    reached[k] = true;
                    parent[k] = Some((cur_idx, *g));
                    queue.push_back(next);
                }
            }
        }
        ReplacementTable { parent }
    }

    fn word(&self, mut idx: usize) -> Option<GeneratorWord> {
        let mut rev = Vec::new();
        while let Some((p, g)) = self.parent[idx] {
            rev.push(g);
            idx = p;
        }
        if rev.is_empty() {
            return None;
        }
        rev.reverse();
        Some(GeneratorWord(rev))
    }
}

fn replacement_table(dim: usize) -> &'static ReplacementTable {
    static TABLES: [OnceLock<ReplacementTable>; MAX_ENUM_DIM + 1] =
        [const { OnceLock::new() }; MAX_ENUM_DIM + 1];
    TABLES[dim].get_or_init(|| ReplacementTable::build(dim))
}

/// A shortest replacement-only word composing to the singular map `σ`.
pub fn decompose_replacements(sigma: &Transformation) -> Result<GeneratorWord> {
    let dim = sigma.dim();
    if dim > MAX_ENUM_DIM {
        return Err(Error::DimTooLarge {
            dim,
            max: MAX_ENUM_DIM,
        });
    }
    if sigma.is_permutation() {
        return Err(Error::PermutationalInput);
    }
    replacement_table(dim)
        .word(sigma.index())
        .ok_or_else(|| Error::Internal(format!("no replacement word for {sigma}")))
}
