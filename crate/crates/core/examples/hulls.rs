// Exact-predicate convex hulls of sampled ranges in the plane and in space.

use jointrange::geometry::{hull_2d, hull_3d};
use jointrange::model::pauli;
use jointrange::range::sample_inner;
use jointrange::HermitianTuple;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let [x, y, z] = pauli();
    let disk = HermitianTuple::new(vec![x.clone(), y.clone()])?;
    let cloud = sample_inner(&disk, 1, 1000, 0)?.coords();
    let h = hull_2d(&cloud);
    println!("disk sample: {} points, {:?} hull with {} vertices", cloud.len(), h.kind, h.vertices.len());

    let ball = HermitianTuple::new(vec![x, y, z])?;
    let cloud = sample_inner(&ball, 1, 500, 0)?.coords();
    let h = hull_3d(&cloud);
    println!("sphere sample: {:?} hull with {} vertices and {} facets", h.kind, h.vertices.len(), h.facets.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
