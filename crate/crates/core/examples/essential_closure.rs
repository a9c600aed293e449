// `I_2 ⊕ 0_2 ⊕ diag(1, 1/2, 1/3, …)`: W_2 is the closed interval [0, 2] while
// W_3 = (0, 3] misses its lower endpoint.

use jointrange::essential::{closedness_probe, closure_hull, essential_range};
use jointrange::linalg::C64;
use jointrange::{ComplexMatrix, MatrixTuple, OperatorSpec, TailGenerator};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let zero = C64::new(0.0, 0.0);
    let spec = OperatorSpec::new(
        MatrixTuple::new(vec![ComplexMatrix::from_real_diag(&[1.0, 1.0, 0.0, 0.0])])?,
        vec![TailGenerator::Harmonic { offset: zero, scale: C64::new(1.0, 0.0) }],
        vec![vec![zero]],
    )?;
    println!("essential range {:?}", essential_range(&spec)?.points);
    for k in [2, 3] {
        let hull = closure_hull(&spec, k, 1000, 2)?;
        println!("closure of W_{k}: {:?} (cross-check {:.1e})", hull.interval().unwrap(), hull.cross_check_error);
        let probe = closedness_probe(&spec, k, &[250, 500, 1000], 2)?;
        for f in &probe.flags {
            println!("  direction {:+}: {:?}, deficits {:?}", f.u[0], f.attainment, f.deficits);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
