//! Brute-force refutation of equations in a single carrier.
//!
//! A `Valid` outcome only means no tested assignment separates the two
//! sides; reports word it as `valid-up-to(<carrier>)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

use super::algebra::{eval_term, Carrier, FiniteAlgebra};
use super::axioms::instantiate_axioms;
use super::syntax::Equation;

pub const DEFAULT_BUDGET: u64 = 1 << 24;
pub const DEFAULT_SAMPLES: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    Exhaustive,
    Sampled { n: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub strategy: Strategy,
    /// Maximum number of assignments evaluated by the exhaustive strategy.
    pub budget: u64,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            strategy: Strategy::Exhaustive,
            budget: DEFAULT_BUDGET,
            jobs: None,
        }
    }
}

impl CheckOptions {
    pub fn exhaustive() -> Self {
        CheckOptions::default()
    }

    pub fn sampled(n: u64, seed: u64) -> Self {
        CheckOptions {
            strategy: Strategy::Sampled { n, seed },
            ..CheckOptions::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome<E> {
    /// No tested assignment separates the sides.
    Valid { cases: u64 },
    /// `assignment[k]` is the value of variable `xk`; `case` is the
    /// position of the witness in the enumeration (or sample) order.
    Counterexample {
        case: u64,
        assignment: Vec<E>,
        lhs: E,
        rhs: E,
    },
}

impl<E> Outcome<E> {
    pub fn is_valid(&self) -> bool {
        matches!(self, Outcome::Valid { .. })
    }
}

/// Runs `f` on a pool with `jobs` threads, or on the global pool.
pub fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

fn assignment_for<C: Carrier>(
    carrier: &C,
    vars: &[usize],
    width: usize,
    universe: u64,
    mut case: u64,
) -> Vec<C::Elem> {
    let mut out = vec![carrier.zero(); width];
    for &v in vars {
        out[v] = carrier.element(case % universe);
        case /= universe;
    }
    out
}

/// Checks `eq` in `carrier` under `opts`.
///
/// The exhaustive strategy enumerates assignments in mixed-radix order over
/// the used variables (lowest variable fastest) and reports the first
/// failing one, so the witness does not depend on the worker count.
pub fn check_equation<C: Carrier>(
    eq: &Equation,
    carrier: &C,
    opts: &CheckOptions,
) -> Result<Outcome<C::Elem>> {
    eq.check_dim(carrier.dim())?;
    let eq = eq.desugar();
    let vars: Vec<usize> = eq.vars().into_iter().collect();
    let width = vars.last().map_or(0, |&v| v + 1);

    let test = |assignment: &[C::Elem]| -> Result<Option<(C::Elem, C::Elem)>> {
        let l = eval_term(&eq.lhs, assignment, carrier)?;
        let r = eval_term(&eq.rhs, assignment, carrier)?;
        Ok((l != r).then_some((l, r)))
    };

    match opts.strategy {
        Strategy::Exhaustive => {
            let universe = carrier.universe_size().ok_or(Error::BudgetExceeded {
                budget: opts.budget,
                needed: u128::MAX,
            })?;
            let total = (universe as u128).pow(vars.len() as u32);
            if total > opts.budget as u128 {
                return Err(Error::BudgetExceeded {
                    budget: opts.budget,
                    needed: total,
                });
            }
            let total = total as u64;
            let found = with_jobs(opts.jobs, || {
                (0..total).into_par_iter().find_map_first(|case| {
                    let a = assignment_for(carrier, &vars, width, universe, case);
                    match test(&a) {
                        Ok(Some((l, r))) => Some(Ok((case, a, l, r))),
                        Ok(None) => None,
                        Err(e) => Some(Err(e)),
                    }
                })
            });
            match found.transpose()? {
                Some((case, assignment, lhs, rhs)) => Ok(Outcome::Counterexample {
                    case,
                    assignment,
                    lhs,
                    rhs,
                }),
                None => Ok(Outcome::Valid { cases: total }),
            }
        }
        Strategy::Sampled { n, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let samples: Vec<Vec<C::Elem>> = (0..n)
                .map(|_| {
                    let mut a = vec![carrier.zero(); width];
                    for &v in &vars {
                        a[v] = carrier.random_element(&mut rng);
                    }
                    a
                })
                .collect();
            let found = with_jobs(opts.jobs, || {
                samples
                    .into_par_iter()
                    .enumerate()
                    .find_map_first(|(case, a)| match test(&a) {
                        Ok(Some((l, r))) => Some(Ok((case as u64, a, l, r))),
                        Ok(None) => None,
                        Err(e) => Some(Err(e)),
                    })
            });
            match found.transpose()? {
                Some((case, assignment, lhs, rhs)) => Ok(Outcome::Counterexample {
                    case,
                    assignment,
                    lhs,
                    rhs,
                }),
                None => Ok(Outcome::Valid { cases: n }),
            }
        }
    }
}

/// Re-evaluates `eq` under a given assignment; `true` when the sides differ.
pub fn refutes<C: Carrier>(eq: &Equation, carrier: &C, assignment: &[C::Elem]) -> Result<bool> {
    eq.check_dim(carrier.dim())?;
    Ok(eval_term(&eq.lhs, assignment, carrier)? != eval_term(&eq.rhs, assignment, carrier)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub label: String,
    pub equation: String,
    /// Element indices for `x0, x1, …`.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FpaReport {
    pub instances: usize,
    pub violations: Vec<Violation>,
}

impl FpaReport {
    pub fn is_fpa(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every (F0)–(F9) instance exhaustively in `algebra`.
pub fn check_is_fpa(algebra: &FiniteAlgebra, opts: &CheckOptions) -> Result<FpaReport> {
    let opts = CheckOptions {
        strategy: Strategy::Exhaustive,
        ..*opts
    };
    let axioms = instantiate_axioms(algebra.dim());
    let mut violations = Vec::new();
    for ax in &axioms {
        if let Outcome::Counterexample { assignment, .. } =
            check_equation(&ax.equation, algebra, &opts)?
        {
            violations.push(Violation {
                label: ax.label.clone(),
                equation: ax.equation.to_string(),
                witness: assignment,
            });
        }
    }
    Ok(FpaReport {
        instances: axioms.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relalg::{Context, Relation};
    use crate::terms::algebra::UnaryOp;
    use crate::terms::syntax::parse_equation;

    #[test]
    fn refuter_examples() {
        let ctx = Context::new(2, 2).unwrap();
        let opts = CheckOptions::exhaustive();
        let eq = parse_equation("(p 0 1 (p 0 1 x0)) = x0").unwrap();
        assert_eq!(
            check_equation(&eq, &ctx, &opts).unwrap(),
            Outcome::Valid { cases: 16 }
        );
        let eq = parse_equation("s 0 1 x0 = x0").unwrap();
        match check_equation(&eq, &ctx, &opts).unwrap() {
            Outcome::Counterexample {
                assignment, lhs, ..
            } => {
                assert!(refutes(&eq, &ctx, &assignment).unwrap());
                assert_ne!(lhs, assignment[0]);
            }
            v => panic!("expected counterexample, got {v:?}"),
        }
        let one = Relation::from_tuples(ctx, [[1usize, 1]]).unwrap();
        assert!(refutes(&eq, &ctx, &[one]).unwrap());
        let eq = parse_equation("x0 = x0").unwrap();
        assert!(check_equation(&eq, &ctx, &opts).unwrap().is_valid());
    }

    #[test]
    fn witness_is_lowest_case() {
        let ctx = Context::new(2, 2).unwrap();
        let eq = parse_equation("s 0 1 x0 = x0").unwrap();
        let expected = (0..16u64)
            .find(|&k| {
                let r = ctx.element(k);
                r.subst(0, 1).unwrap() != r
            })
            .unwrap();
        for jobs in [1, 2, 4] {
            let opts = CheckOptions {
                jobs: Some(jobs),
                ..CheckOptions::default()
            };
            match check_equation(&eq, &ctx, &opts).unwrap() {
                Outcome::Counterexample { case, .. } => assert_eq!(case, expected),
                v => panic!("{v:?}"),
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let ctx = Context::new(3, 2).unwrap();
        let eq = parse_equation("(and x0 (and x1 x2)) = (and (and x0 x1) x2)").unwrap();
        let opts = CheckOptions {
            budget: 1000,
            ..CheckOptions::default()
        };
        assert!(matches!(
            check_equation(&eq, &ctx, &opts),
            Err(Error::BudgetExceeded { .. })
        ));
        let big = Context::new(3, 5).unwrap();
        assert!(check_equation(&eq, &big, &CheckOptions::default()).is_err());
        assert!(check_equation(&eq, &big, &CheckOptions::sampled(20, 7))
            .unwrap()
            .is_valid());
    }

    #[test]
    fn sampled_is_deterministic() {
        let ctx = Context::new(3, 3).unwrap();
        let eq = parse_equation("p 0 1 x0 = x0").unwrap();
        let a = check_equation(&eq, &ctx, &CheckOptions::sampled(50, 11)).unwrap();
        let b = check_equation(&eq, &ctx, &CheckOptions::sampled(50, 11)).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_valid());
    }

    #[test]
    fn fpa_examples() {
        let opts = CheckOptions::exhaustive();
        let full = FiniteAlgebra::full_set_algebra(Context::new(2, 2).unwrap()).unwrap();
        assert!(check_is_fpa(&full, &opts).unwrap().is_fpa());
        let two = FiniteAlgebra::two_element(2);
        assert!(check_is_fpa(&two, &opts).unwrap().is_fpa());

        let mut tampered = two.clone();
        tampered
            .replace_table(UnaryOp::Transp(0, 1), vec![0, 0])
            .unwrap();
        let report = check_is_fpa(&tampered, &opts).unwrap();
        let f6 = report
            .violations
            .iter()
            .find(|v| v.label == "F6[p,compl,i=0,j=1]")
            .expect("F6 violation");
        assert!(refutes(
            &parse_equation(&f6.equation).unwrap(),
            &tampered,
            &f6.witness
        )
        .unwrap());
    }
}
