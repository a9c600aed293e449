// Support function of the joint numerical range of the Pauli matrices: the
// unit sphere, so every direction has support value 1.

use jointrange::model::pauli;
use jointrange::range::{directions, support_function};
use jointrange::HermitianTuple;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let xyz = HermitianTuple::new(pauli().to_vec())?;
    let dirs = directions(3, 1000, 0);
    let h = support_function(&xyz, 1, &dirs)?;
    let worst = h.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    println!("h_1 over {} directions: max |h - 1| = {worst:.2e}", dirs.len());
    assert!(worst <= 1e-10);

    let h2 = support_function(&xyz, 2, &dirs)?;
    println!("h_2 is identically {:.1} (W_2 is the trace point)", h2[0]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
