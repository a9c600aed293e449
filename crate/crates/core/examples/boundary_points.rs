// Boundary points exposed by support directions, including a direction whose
// maximizers form a face and need a tie-break.

use jointrange::linalg::C64;
use jointrange::model::real_form;
use jointrange::range::{boundary_face, support_value, GAP_TOL};
use jointrange::{ComplexMatrix, HermitianTuple, MatrixTuple};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = |re: f64| C64::new(re, 0.0);
    let jordan = ComplexMatrix::new(2, 2, vec![c(0.0), c(1.0), c(0.0), c(0.0)])?;
    let h = real_form(&MatrixTuple::new(vec![jordan])?, true)?;
    let s = support_value(&h, 1, &[1.0, 0.0])?;
    let p = s.point.expect("simple gap");
    println!("Jordan block, u = (1, 0): h = {}, point = {:?}, gap = {}", s.value, p.coords, s.gap);

    let d = HermitianTuple::new(vec![
        ComplexMatrix::from_real_diag(&[1.0, 1.0, 0.0]),
        ComplexMatrix::from_real_diag(&[1.0, -1.0, 0.0]),
    ])?;
    let s = support_value(&d, 1, &[1.0, 0.0])?;
    println!("diagonal pair, u = (1, 0): gap {} leaves the point open: {:?}", s.gap, s.point);
    let f = boundary_face(&d, 1, &[1.0, 0.0], GAP_TOL * d.scale())?;
    println!("tie-broken face point {:?} on a face of dimension {}", f.point.unwrap().coords, f.face_dim);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
