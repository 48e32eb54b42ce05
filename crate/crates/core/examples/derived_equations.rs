use polylift::relalg::Context;
use polylift::terms::{check_equation, instantiate_derived, CheckOptions};
use std::collections::BTreeMap;

/// Checks (S1)-(S6) in the full set algebra at alpha=2 over bases 1..=3.
fn main() -> polylift::Result<()> {
    let derived = instantiate_derived(2)?;
    let opts = CheckOptions::exhaustive();
    for base in 1..=3 {
        let ctx = Context::new(2, base)?;
        let mut per_schema: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for ax in &derived {
            let e = per_schema.entry(ax.schema).or_default();
            e.0 += 1;
            if check_equation(&ax.equation, &ctx, &opts)?.is_valid() {
                e.1 += 1;
            }
        }
        let line: Vec<String> = per_schema
            .iter()
            .map(|(s, (n, ok))| format!("{s} {ok}/{n}"))
            .collect();
        println!("base {base}: {}", line.join(", "));
    }
    Ok(())
}
