//! Lifts the inclusion of a generated set algebra to a representation over
//! `U x H` and prints every verification step.
//!
//! `cargo run --release --example lifting -- [seed] [generators]`

use polylift::lifting::{lift_and_verify, set_subalgebra};
use polylift::relalg::Context;
use polylift::terms::{Carrier, CheckOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> polylift::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);

    let ctx = Context::new(3, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens: Vec<_> = (0..count).map(|_| ctx.random_element(&mut rng)).collect();
    for g in &gens {
        println!("generator {}", g.to_text());
    }

    let (algebra, inclusion) = set_subalgebra(ctx, &gens)?;
    let report = lift_and_verify(&algebra, &inclusion, 4, &CheckOptions::exhaustive())?;
    println!("{} elements, |V| = {}", report.elements, report.base * report.colors);
    for line in &report.checks {
        println!("{line}");
    }
    println!("h(1) has {} of {} sequences", report.h[algebra.one_elem()].count(), 8usize.pow(3));
    Ok(())
}
