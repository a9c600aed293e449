// Commuting-normal certification: algebraic defects against polyhedrality,
// then the joint spectrum and its k-subset sums.

use jointrange::linalg::random::{random_unitary, task_rng};
use jointrange::linalg::C64;
use jointrange::model::pauli;
use jointrange::structure::{certify_commuting_normal, joint_subset_sums};
use jointrange::{ComplexMatrix, MatrixTuple};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = C64::new;
    let u = random_unitary(4, &mut task_rng(1, 0));
    let diag = [
        [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.5, 0.5)],
        [c(2.0, 0.0), c(0.0, 0.0), c(1.0, -1.0), c(0.0, 0.0)],
    ];
    let a = MatrixTuple::new(diag.iter().map(|d| u.matmul(&ComplexMatrix::from_diag(d)).matmul(&u.adjoint())).collect())?;
    let v = certify_commuting_normal(&a, 1e-9, 128, 0)?;
    println!("rotated diagonal pair: algebraic {}, geometric {}, agree {}", v.algebraic, v.geometric, v.agree);
    let spectrum = v.joint_spectrum.expect("certified tuples carry their spectrum");
    for p in &spectrum.vectors {
        println!("  joint eigenvalue ({:.3}, {:.3})", p[0], p[1]);
    }
    println!("  {} distinct sums of two", joint_subset_sums(&spectrum, 2)?.len());

    let [x, _, z] = pauli();
    let v = certify_commuting_normal(&MatrixTuple::new(vec![x, z])?, 1e-9, 128, 0)?;
    println!("(X, Z): algebraic {}, geometric {}, agree {}", v.algebraic, v.geometric, v.agree);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
