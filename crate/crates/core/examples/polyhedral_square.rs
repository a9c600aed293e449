// A non-normal operator whose k-numerical ranges are all squares: a 2×2
// head with a disk range inside a tail cycling through the four corners.

use jointrange::linalg::C64;
use jointrange::model::real_form;
use jointrange::polyhedral::{conical_points, detect_polyhedral, POLY_TOL};
use jointrange::{ComplexMatrix, MatrixTuple};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = C64::new;
    let head = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 1.0), c(-1.0, 0.0)])?;
    let corners = [c(1.0, 1.0), c(1.0, -1.0), c(-1.0, 1.0), c(-1.0, -1.0)];
    let tail: Vec<C64> = (0..4).flat_map(|_| corners).collect();
    let a = MatrixTuple::new(vec![head.block_diag(&ComplexMatrix::from_diag(&tail))])?;
    let h = real_form(&a, true)?;
    for k in 1..=4 {
        let cert = detect_polyhedral(&h, k, 128, POLY_TOL, 0)?;
        let v: Vec<[f64; 2]> = cert.vertices.iter().map(|p| [p.coords[0], p.coords[1]]).collect();
        println!("k = {k}: polyhedral {} with vertices {v:?}, {} conical", cert.is_polyhedral, conical_points(&cert, 2).len());
        assert!(cert.is_polyhedral);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
