use polylift::lifting::kernel_pushforward;
use polylift::relalg::Context;
use polylift::terms::{FiniteAlgebra, UnaryOp};

// Projects a product algebra onto its second factor and checks that the
// substitution tables induced on the image match the factor's own tables.
fn main() -> polylift::Result<()> {
    let left = FiniteAlgebra::two_element(2);
    let right = FiniteAlgebra::full_set_algebra(Context::new(2, 2)?)?;
    let product = left.product(&right)?;
    let m = right.size();

    let projection: Vec<usize> = (0..product.size()).map(|x| x % m).collect();
    let push = kernel_pushforward(&product, &projection)?
        .map_err(|v| polylift::Error::Internal(v.to_string()))?;
    println!("product: {} elements, image: {} classes", product.size(), push.image.len());

    for (i, j) in [(0, 1), (1, 0)] {
        let induced: Vec<usize> = push.subst_table(2, i, j).iter().map(|&c| push.image[c]).collect();
        let expected: Vec<usize> = push.image.iter().map(|&k| right.table(UnaryOp::Subst(i, j))[k]).collect();
        println!("s_{i}{j}: induced tables match = {}", induced == expected);
    }
    Ok(())
}
