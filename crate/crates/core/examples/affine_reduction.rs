// Affine images of tuples and points, and the reduction of a tuple to its
// affine dimension.

use jointrange::linalg::C64;
use jointrange::model::{affine_dimension, affine_push, pauli, point_push, real_form};
use jointrange::range::support_value;
use jointrange::{AffineMap, ComplexMatrix, MatrixTuple};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let [x, _, z] = pauli();
    let id = ComplexMatrix::identity(2);
    let redundant = MatrixTuple::new(vec![x.clone(), z.clone(), &(&x + &z) + &id])?;
    let r = affine_dimension(&redundant)?;
    println!("(X, Z, X + Z + I) has affine dimension {}", r.q);

    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let swap = AffineMap::new(ComplexMatrix::new(2, 2, vec![zero, one, one, zero])?, vec![C64::new(3.0, 0.0), zero])?;
    let pair = MatrixTuple::new(vec![x, z])?;
    let pushed = affine_push(&pair, &swap)?;
    let before = support_value(&real_form(&pair, true)?, 1, &[1.0, 0.0])?.point.unwrap();
    let after = point_push(&before, &swap, 1)?;
    let direct = support_value(&real_form(&pushed, true)?, 1, &[0.0, 1.0])?.point.unwrap();
    println!("point {:?} maps to {:?}; the pushed tuple gives {:?}", before.coords, after.coords, direct.coords);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
