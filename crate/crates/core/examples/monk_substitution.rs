//! Substitution of variables in three-variable logic: naive replacement,
//! the capture-free Monk substitution, and a check of the substitution law
//! `s |= [v_i/v_j]phi  iff  s(i/s_j) |= phi` on random formulas.

use polylift::logic::{monk_subst, naive_subst, random_formula, satisfies, Model};
use polylift::relalg::Context;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> polylift::Result<()> {
    let phi: polylift::logic::Formula = "(and (R0 v0 v1 v2) (E 1 (R0 v1 v0 v0)))".parse()?;
    println!("phi          = {phi}");
    println!("naive [0/1]  = {}", naive_subst(0, 1, &phi));
    println!("monk  [0/1]  = {}", monk_subst(0, 1, &phi));

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ctx = Context::new(3, 2)?;
    let (mut checks, mut naive_failures) = (0u64, 0u64);
    for _ in 0..200 {
        let f = random_formula(&mut rng, 3, 4, &[0, 1]);
        let m = Model::random(ctx, &[0, 1], &mut rng);
        for i in 0..3 {
            for j in 0..3 {
                let (monk, naive) = (monk_subst(i, j, &f), naive_subst(i, j, &f));
                for s in ctx.sequences() {
                    let mut moved = s.clone();
                    moved[i] = s[j];
                    let expected = satisfies(&m, &moved, &f)?;
                    assert_eq!(satisfies(&m, &s, &monk)?, expected);
                    naive_failures += u64::from(satisfies(&m, &s, &naive)? != expected);
                    checks += 1;
                }
            }
        }
    }
    println!("{checks} checks: monk never fails, naive fails {naive_failures} times");
    Ok(())
}
