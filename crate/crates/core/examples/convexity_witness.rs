// A nonconvex joint 2-numerical range: Pauli matrices padded by zeros next to
// a signed identity, probed at k = 1, 2, 3.

use jointrange::geometry::{convexity_probe, ConvexityStatus};
use jointrange::model::{direct_sum, pauli};
use jointrange::{ComplexMatrix, HermitianTuple, MatrixTuple};

fn padded_pauli(k: usize, n: usize) -> Result<HermitianTuple, jointrange::Error> {
    let zero2 = ComplexMatrix::zeros(2, 2);
    let zeros = ComplexMatrix::zeros(n - 2, n - 2);
    let signs: Vec<f64> = (0..n - 2).map(|i| if i < k { 1.0 } else { -1.0 }).collect();
    let head = MatrixTuple::new(pauli().into_iter().chain([zero2]).collect())?;
    let tail = MatrixTuple::new(vec![zeros.clone(), zeros.clone(), zeros, ComplexMatrix::from_real_diag(&signs)])?;
    HermitianTuple::new(direct_sum(&head, &tail)?.mats().to_vec())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = padded_pauli(1, 5)?;
    for r in 1..=2 {
        let v = convexity_probe(&a, r, 2000, 0)?;
        println!("W_{r}: {:?} ({})", v.status, v.reason);
        if let Some(w) = &v.witness {
            println!("  midpoint {:?} is {:.3} away from the range", w.midpoint, w.margin);
        }
    }
    assert_eq!(convexity_probe(&a, 2, 2000, 0)?.status, ConvexityStatus::Nonconvex);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
