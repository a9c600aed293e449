// The support function of a direct sum splits k between the summands.

use jointrange::linalg::random::{random_hermitian, task_rng};
use jointrange::range::{support_function, top_sums};
use jointrange::HermitianTuple;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = task_rng(5, 0);
    let a = HermitianTuple::new((0..2).map(|_| random_hermitian(3, &mut rng)).collect())?;
    let b = HermitianTuple::new((0..2).map(|_| random_hermitian(4, &mut rng)).collect())?;
    let sum = a.direct_sum(&b)?;
    let u = [0.6, -0.8];
    let (ha, hb) = (top_sums(&a, &u)?, top_sums(&b, &u)?);
    for k in 1..=4 {
        let split = (0..=k.min(3)).filter(|j| k - j <= 4).map(|j| ha[j] + hb[k - j]).fold(f64::NEG_INFINITY, f64::max);
        let direct = support_function(&sum, k, &[u.to_vec()])?[0];
        println!("k = {k}: best split {split:.12}, direct {direct:.12}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
