use polylift::relalg::{generate_subalgebra, Context, Relation, Signature, DEFAULT_CLOSURE_CAP};

fn main() -> polylift::Result<()> {
    let ctx = Context::new(2, 2)?;
    let r = Relation::from_tuples(ctx, [[0, 1], [1, 1]])?;

    println!("R        = {r}  ({})", r.to_text());
    println!("-R       = {}", r.complement());
    println!("C_0 R    = {}", r.cyl(0)?);
    println!("C_1 R    = {}", r.cyl(1)?);
    println!("S_01 R   = {}", r.subst(0, 1)?);
    println!("S_10 R   = {}", r.subst(1, 0)?);
    println!("P_01 R   = {}", r.transp(0, 1)?);

    let big = Context::new(3, 2)?;
    let q = Relation::from_tuples(big, [[0, 0, 1], [1, 0, 1]])?;
    for sig in [Signature::P, Signature::Cp, Signature::Csp] {
        let members = generate_subalgebra(big, &[q.clone()], sig, DEFAULT_CLOSURE_CAP)?;
        println!("{sig:?}-subalgebra generated by {q}: {} elements", members.len());
    }

    let parsed: Relation = "alpha=2 base=2 hex:0c".parse()?;
    assert_eq!(parsed, r);
    Ok(())
}
