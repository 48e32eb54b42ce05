//! Refutes a few candidate equations by brute force and re-checks the
//! witnesses independently.

use polylift::relalg::Context;
use polylift::terms::{check_equation, parse_equation, refutes, CheckOptions, Outcome};

fn main() -> polylift::Result<()> {
    let candidates = [
        "s 0 1 x0 = x0",
        "p 0 1 x0 = x0",
        "(c 0 (c 1 x0)) = (c 1 (c 0 x0))",
        "(s 0 1 (c 1 x0)) = (c 1 (s 0 1 x0))",
        "(ssig \"1 0\" x0) = (p 0 1 x0)",
    ];
    for text in candidates {
        let eq = parse_equation(text)?;
        let mut verdict = String::from("valid-up-to(base 1..=3)");
        for base in 1..=3 {
            let ctx = Context::new(2, base)?;
            let opts = CheckOptions::exhaustive();
            if let Outcome::Counterexample { assignment, lhs, rhs, .. } =
                check_equation(&eq, &ctx, &opts)?
            {
                assert!(refutes(&eq, &ctx, &assignment)?);
                verdict = format!(
                    "refuted at base {base}: x0 = {}, lhs = {lhs}, rhs = {rhs}",
                    assignment[0]
                );
                break;
            }
        }
        println!("{eq}\n    {verdict}");
    }
    Ok(())
}
