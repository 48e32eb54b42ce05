//! Instances of the defining schemas (F0)–(F9) and of the derived polyadic
//! equations (S1)–(S6).
//!
//! The Boolean part of (F0) is rendered as eight identities in `·`, `−`
//! with `x + y := −(−x · −y)`:
//! commutativity and associativity of `·`, both absorption laws,
//! distributivity of `·` over `+`, `x·−x = 0`, `x+−x = 1` and `−−x = x`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::transform::{enumerate_transformations, Transformation};

use super::syntax::{Equation, Term};

/// Largest dimension for which the derived instances are generated.
pub const MAX_DERIVED_DIM: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Axiom {
    /// Schema name, e.g. `F3`.
    pub schema: &'static str,
    /// Instance label, e.g. `F3[i=0,j=1]`.
    pub label: String,
    pub equation: Equation,
}

fn x() -> Term {
    Term::var(0)
}
fn y() -> Term {
    Term::var(1)
}
fn z() -> Term {
    Term::var(2)
}

struct Sink(Vec<Axiom>);

impl Sink {
    fn push(&mut self, schema: &'static str, params: String, lhs: Term, rhs: Term) {
        let label = if params.is_empty() {
            schema.to_string()
        } else {
            format!("{schema}[{params}]")
        };
        self.0.push(Axiom {
            schema,
            label,
            equation: Equation::new(lhs, rhs),
        });
    }
}

/// The Boolean identity basis used for (F0).
pub fn boolean_basis() -> Vec<(&'static str, Equation)> {
    let m = Term::meet;
    let j = Term::join;
    let c = Term::compl;
    vec![
        ("meet-comm", Equation::new(m(x(), y()), m(y(), x()))),
        (
            "meet-assoc",
            Equation::new(m(x(), m(y(), z())), m(m(x(), y()), z())),
        ),
        ("absorb-meet", Equation::new(m(x(), j(x(), y())), x())),
        ("absorb-join", Equation::new(j(x(), m(x(), y())), x())),
        (
            "distrib",
            Equation::new(m(x(), j(y(), z())), j(m(x(), y()), m(x(), z()))),
        ),
        ("compl-meet", Equation::new(m(x(), c(x())), Term::Zero)),
        ("compl-join", Equation::new(j(x(), c(x())), Term::One)),
        ("double-compl", Equation::new(c(c(x())), x())),
    ]
}

/// All instances of (F0)–(F9) for `i, j, k < dim`, side conditions applied.
pub fn instantiate_axioms(dim: usize) -> Vec<Axiom> {
    let mut out = Sink(Vec::new());
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .collect();

    for (name, eq) in boolean_basis() {
        out.push("F0", format!("bool:{name}"), eq.lhs, eq.rhs);
    }
    for i in 0..dim {
        out.push("F0", format!("s_ii,i={i}"), Term::subst(i, i, x()), x());
        out.push("F0", format!("p_ii,i={i}"), Term::transp(i, i, x()), x());
    }
    for &(i, j) in &pairs {
        if i < j {
            out.push(
                "F0",
                format!("p_ij=p_ji,i={i},j={j}"),
                Term::transp(i, j, x()),
                Term::transp(j, i, x()),
            );
        }
    }
    for i in 0..dim {
        // x ≤ c_i x written as x · c_i x = x
        out.push("F1", format!("i={i}"), Term::meet(x(), Term::cyl(i, x())), x());
    }
    for i in 0..dim {
        out.push(
            "F2",
            format!("i={i}"),
            Term::cyl(i, Term::join(x(), y())),
            Term::join(Term::cyl(i, x()), Term::cyl(i, y())),
        );
    }
    for &(i, j) in &pairs {
        out.push(
            "F3",
            format!("i={i},j={j}"),
            Term::subst(i, j, Term::cyl(i, x())),
            Term::cyl(i, x()),
        );
    }
    for &(i, j) in &pairs {
        if i != j {
            out.push(
                "F4",
                format!("i={i},j={j}"),
                Term::cyl(i, Term::subst(i, j, x())),
                Term::subst(i, j, x()),
            );
        }
    }
    for &(i, j) in &pairs {
        for k in (0..dim).filter(|&k| k != i && k != j) {
            out.push(
                "F5",
                format!("i={i},j={j},k={k}"),
                Term::subst(i, j, Term::cyl(k, x())),
                Term::cyl(k, Term::subst(i, j, x())),
            );
        }
    }
    for &(i, j) in &pairs {
        type Op = fn(usize, usize, Term) -> Term;
        for (name, op) in [("s", Term::subst as Op), ("p", Term::transp as Op)] {
            out.push(
                "F6",
                format!("{name},meet,i={i},j={j}"),
                op(i, j, Term::meet(x(), y())),
                Term::meet(op(i, j, x()), op(i, j, y())),
            );
            out.push(
                "F6",
                format!("{name},compl,i={i},j={j}"),
                op(i, j, Term::compl(x())),
                Term::compl(op(i, j, x())),
            );
        }
    }
    for &(i, j) in &pairs {
        out.push(
            "F7",
            format!("i={i},j={j}"),
            Term::transp(i, j, Term::transp(i, j, x())),
            x(),
        );
    }
    for &(i, j) in &pairs {
        for k in (0..dim).filter(|&k| k != i && k != j && i != j) {
            out.push(
                "F8",
                format!("i={i},j={j},k={k}"),
                Term::transp(i, j, Term::transp(i, k, x())),
                Term::transp(j, k, Term::transp(i, j, x())),
            );
        }
    }
    for &(i, j) in &pairs {
        out.push(
            "F9",
            format!("i={i},j={j}"),
            Term::transp(i, j, Term::subst(j, i, x())),
            Term::subst(i, j, x()),
        );
    }
    out.0
}

fn ssig(sigma: &Transformation, t: Term) -> Term {
    Term::subst_sigma(sigma.clone(), t)
}

/// All instances of (S1)–(S6), with `s_σ` kept as [`Term::SubstSigma`].
///
/// (S2) is emitted once per unordered pair `{σ, δ}`, (S6) for `i ≠ j`.
pub fn instantiate_derived(dim: usize) -> Result<Vec<Axiom>> {
    if dim > MAX_DERIVED_DIM {
        return Err(Error::DimTooLarge {
            dim,
            max: MAX_DERIVED_DIM,
        });
    }
    let all = enumerate_transformations(dim)?;
    let mut out = Sink(Vec::new());

    for sigma in &all {
        for k in (0..dim).filter(|&k| !sigma.in_range(k)) {
            out.push(
                "S1",
                format!("σ={sigma},k={k}"),
                ssig(sigma, x()),
                Term::cyl(k, ssig(sigma, x())),
            );
        }
    }
    for sigma in &all {
        for i in 0..dim {
            for v in (0..dim).filter(|&v| v > sigma.apply(i)) {
                let delta = sigma.with(i, v);
                out.push(
                    "S2",
                    format!("σ={sigma},δ={delta},i={i}"),
                    ssig(sigma, Term::cyl(i, x())),
                    ssig(&delta, Term::cyl(i, x())),
                );
            }
        }
    }
    for sigma in &all {
        for i in 0..dim {
            let k = sigma.apply(i);
            if (0..dim).all(|j| j == i || sigma.apply(j) != k) {
                out.push(
                    "S3",
                    format!("σ={sigma},i={i},k={k}"),
                    ssig(sigma, Term::cyl(i, x())),
                    Term::cyl(k, ssig(sigma, x())),
                );
            }
        }
    }
    for sigma in &all {
        out.push(
            "S4",
            format!("meet,σ={sigma}"),
            ssig(sigma, Term::meet(x(), y())),
            Term::meet(ssig(sigma, x()), ssig(sigma, y())),
        );
        out.push(
            "S4",
            format!("compl,σ={sigma}"),
            ssig(sigma, Term::compl(x())),
            Term::compl(ssig(sigma, x())),
        );
    }
    for sigma in &all {
        for eta in &all {
            let comp = sigma.compose(eta)?;
            out.push(
                "S5",
                format!("σ={sigma},η={eta}"),
                ssig(sigma, ssig(eta, x())),
                ssig(&comp, x()),
            );
        }
    }
    for i in 0..dim {
        for j in (0..dim).filter(|&j| j != i) {
            out.push(
                "S6",
                format!("i={i},j={j}"),
                Term::subst(i, j, x()),
                Term::cyl(i, Term::subst(i, j, x())),
            );
        }
    }
    Ok(out.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::syntax::parse_equation;

    fn find<'a>(axioms: &'a [Axiom], label: &str) -> &'a Axiom {
        axioms
            .iter()
            .find(|a| a.label == label)
            .unwrap_or_else(|| panic!("missing {label}"))
    }

    #[test]
    fn named_instances() {
        let ax = instantiate_axioms(3);
        assert_eq!(
            find(&ax, "F4[i=0,j=1]").equation,
            parse_equation("(c 0 (s 0 1 x0)) = (s 0 1 x0)").unwrap()
        );
        assert_eq!(
            find(&ax, "F9[i=0,j=1]").equation,
            parse_equation("(p 0 1 (s 1 0 x0)) = (s 0 1 x0)").unwrap()
        );
        assert!(ax.iter().all(|a| a.label != "F4[i=1,j=1]"));
        assert!(ax.iter().all(|a| a.label != "F5[i=0,j=1,k=1]"));
        assert!(ax.iter().all(|a| a.label != "F8[i=0,j=0,k=1]"));
    }

    #[test]
    fn axiom_counts_match_side_conditions() {
        for dim in 2..=4usize {
            let n = dim;
            let pairs = n * n;
            let distinct_pairs = n * (n - 1);
            let f5: usize = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| (0..n).filter(|&k| k != i && k != j).count())
                .sum();
            let expected = 8 + 2 * n + distinct_pairs / 2 // F0
                + n + n // F1, F2
                + pairs // F3
                + distinct_pairs // F4
                + f5
                + 4 * pairs // F6
                + pairs // F7
                + n * (n - 1) * (n.saturating_sub(2)) // F8
                + pairs; // F9
            assert_eq!(instantiate_axioms(dim).len(), expected, "dim {dim}");
        }
        assert_eq!(instantiate_axioms(3).len(), 110);
    }

    #[test]
    fn derived_instances() {
        let d = instantiate_derived(3).unwrap();
        assert_eq!(
            find(&d, "S6[i=0,j=1]").equation,
            parse_equation("(s 0 1 x0) = (c 0 (s 0 1 x0))").unwrap()
        );
        let s5 = find(&d, "S5[σ=1 1 2,η=1 0 2]");
        assert_eq!(
            s5.equation,
            parse_equation("(ssig \"1 1 2\" (ssig \"1 0 2\" x0)) = (ssig \"1 1 2\" x0)").unwrap()
        );
        // permutations never produce an S1 instance
        assert!(d
            .iter()
            .filter(|a| a.schema == "S1")
            .all(|a| !a.label.starts_with("S1[σ=0 1 2")));
        let count = |s: &str| d.iter().filter(|a| a.schema == s).count();
        assert_eq!(count("S5"), 729);
        assert_eq!(count("S4"), 54);
        assert_eq!(count("S6"), 6);
        assert!(instantiate_derived(5).is_err());
    }

    #[test]
    fn derived_side_condition_counts() {
        // Brute-force recount of S1/S2/S3 side conditions over all of T.
        let all = enumerate_transformations(3).unwrap();
        let s1: usize = all
            .iter()
            .map(|s| (0..3).filter(|&k| !s.image().contains(&k)).count())
            .sum();
        let mut s2 = 0;
        for a in &all {
            for b in &all {
                let diff: Vec<usize> = (0..3).filter(|&i| a.apply(i) != b.apply(i)).collect();
                if diff.len() == 1 && a.index() < b.index() {
                    s2 += 1;
                }
            }
        }
        let s3: usize = all
            .iter()
            .map(|s| {
                (0..3)
                    .filter(|&i| s.image().iter().filter(|&&v| v == s.apply(i)).count() == 1)
                    .count()
            })
            .sum();
        let d = instantiate_derived(3).unwrap();
        let count = |s: &str| d.iter().filter(|a| a.schema == s).count();
        assert_eq!(count("S1"), s1);
        assert_eq!(count("S2"), s2);
        assert_eq!(count("S3"), s3);
    }
}
