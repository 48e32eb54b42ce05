//! Finite transformations of 4 and their generator words.
//!
//! Run with `cargo run --example transformations`.

use polylift::transform::{
    decompose_mixed, decompose_replacements, enumerate_transformations, GeneratorWord,
    Transformation,
};

fn main() -> polylift::Result<()> {
    let sigma: Transformation = "1 1 2 0".parse()?;
    let mixed = decompose_mixed(&sigma);
    println!("sigma        = {sigma} ({:?})", sigma.classify());
    println!("mixed word   = {mixed}");
    println!("replacements = {}", decompose_replacements(&sigma)?);
    assert_eq!(mixed.evaluate(4)?, sigma);

    // Words are read outermost-first: [0,1]∘[1/2] applies [1/2] first.
    let word: GeneratorWord = "[0,1]∘[1/2]".parse()?;
    println!("{word} = {}", word.evaluate(3)?);

    let all = enumerate_transformations(4)?;
    let singular = all.iter().filter(|s| !s.is_permutation()).count();
    let longest = all.iter().map(|s| decompose_mixed(s).len()).max().unwrap_or(0);
    println!("alpha=4: {} maps, {singular} singular, longest mixed word {longest}", all.len());
    Ok(())
}
