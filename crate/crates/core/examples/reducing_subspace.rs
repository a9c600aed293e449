// At a conical vertex the top eigenvectors span a common reducing subspace;
// at a smooth boundary point they do not.

use jointrange::linalg::random::{random_hermitian, task_rng};
use jointrange::linalg::C64;
use jointrange::model::real_form;
use jointrange::range::GAP_TOL;
use jointrange::structure::{joint_diagonalize, reducing_subspace_at, DEFAULT_SWEEPS};
use jointrange::{ComplexMatrix, HermitianTuple, MatrixTuple};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = task_rng(3, 0);
    let b: Vec<ComplexMatrix> = (0..2).map(|_| random_hermitian(3, &mut rng).scale_real(0.2)).collect();
    let d = [ComplexMatrix::from_real_diag(&[2.0, -2.0]), ComplexMatrix::from_real_diag(&[0.0, 0.0])];
    let a = HermitianTuple::new(vec![d[0].block_diag(&b[0]), d[1].block_diag(&b[1])])?;
    let r = reducing_subspace_at(&a, 1, &[1.0, 0.1], GAP_TOL * a.scale())?;
    println!("vertex {:?}: residual {:.1e}, reducing {}", r.vertex.coords, r.residual, r.reducing);

    let c = |re: f64| C64::new(re, 0.0);
    let jordan = ComplexMatrix::new(2, 2, vec![c(0.0), c(1.0), c(0.0), c(0.0)])?;
    let j = real_form(&MatrixTuple::new(vec![jordan])?, true)?;
    let r = reducing_subspace_at(&j, 1, &[1.0, 0.0], GAP_TOL)?;
    println!("Jordan block at (1/2, 0): residual {}, reducing {}", r.residual, r.reducing);

    let u = jointrange::linalg::random::random_unitary(3, &mut rng);
    let commuting: Vec<ComplexMatrix> = [[1.0, 2.0, 3.0], [0.0, 1.0, 0.0]]
        .iter()
        .map(|v| u.matmul(&ComplexMatrix::from_real_diag(v)).matmul(&u.adjoint()))
        .collect();
    let jd = joint_diagonalize(&commuting, DEFAULT_SWEEPS)?;
    println!("joint diagonalization: residual {:.1e}, diagonals {:?}", jd.offdiag_residual, jd.diagonals);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
