// Inner cloud and outer polytope of a convex body, membership queries and the
// Hausdorff gap between the two descriptions.

use jointrange::geometry::{convex_membership, hausdorff_gap, BodyView, ConvexBodyApprox, Membership};
use jointrange::model::pauli;
use jointrange::range::directions;
use jointrange::{HermitianTuple, Provenance, RangePoint};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let xy = HermitianTuple::new(pauli()[..2].to_vec())?;
    let body = ConvexBodyApprox::from_tuple(&xy, 1, 2000, 128, 1)?;
    println!("disk: {} inner points, {} half-spaces", body.inner.len(), body.outer.len());

    for p in [[0.0, 0.0], [0.5, 0.5], [1.5, 0.0]] {
        let verdict = convex_membership(&RangePoint::new(p.to_vec(), Provenance::Formula), &body, 1e-6)?;
        println!("{p:?}: {verdict:?}");
    }
    let far = convex_membership(&RangePoint::new(vec![1.5, 0.0], Provenance::Formula), &body, 1e-6)?;
    assert!(matches!(far, Membership::Outside { .. }));

    let dirs: Vec<Vec<f64>> = body.outer.iter().map(|h| h.u.clone()).collect();
    let cloud = body.inner_coords();
    let gap = hausdorff_gap(&BodyView::Points(&cloud), &BodyView::HalfSpaces(&body.outer), &dirs)?;
    let fresh = directions(2, 500, 9);
    let disk = |u: &[f64]| u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let exact = hausdorff_gap(&BodyView::Points(&cloud), &BodyView::Support(2, &disk), &fresh)?;
    println!("inner vs outer gap {gap:.2e}, inner vs exact disk {exact:.2e}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
