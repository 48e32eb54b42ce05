//! Checks the defining schemas (F0)-(F9) in full set algebras of binary
//! relations, exhaustively over a two-element base and by sampling over a
//! three-element one, then shows the checker catching a tampered algebra.

use polylift::relalg::Context;
use polylift::terms::{
    check_equation, check_is_fpa, instantiate_axioms, CheckOptions, FiniteAlgebra, Outcome,
    UnaryOp,
};

fn main() -> polylift::Result<()> {
    let axioms = instantiate_axioms(2);
    for (base, opts) in [
        (2, CheckOptions::exhaustive()),
        (3, CheckOptions::sampled(2000, 42)),
    ] {
        let ctx = Context::new(2, base)?;
        let mut valid = 0;
        for ax in &axioms {
            match check_equation(&ax.equation, &ctx, &opts)? {
                Outcome::Valid { .. } => valid += 1,
                Outcome::Counterexample { assignment, .. } => {
                    println!("{}: refuted by {assignment:?}", ax.label)
                }
            }
        }
        println!("{valid}/{} instances valid-up-to(alpha=2 base={base}) {:?}", axioms.len(), opts.strategy);
    }

    let opts = CheckOptions::exhaustive();
    let mut tampered = FiniteAlgebra::two_element(2);
    tampered.replace_table(UnaryOp::Transp(0, 1), vec![0, 0])?;
    let report = check_is_fpa(&tampered, &opts)?;
    println!("tampered p_01: {} violations", report.violations.len());
    for v in report.violations.iter().take(3) {
        println!("  {}  {}  witness {:?}", v.label, v.equation, v.witness);
    }
    Ok(())
}
