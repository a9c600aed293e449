// Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
// harness so the lines are always printed; exits non-zero on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use jointrange::essential::closure_hull;
use jointrange::geometry::{convexity_probe, hausdorff_gap, BodyView, ConvexityStatus};
use jointrange::linalg::random::{random_hermitian, random_unitary, task_rng};
use jointrange::linalg::C64;
use jointrange::model::{pauli, real_form};
use jointrange::polyhedral::{detect_polyhedral, POLY_TOL};
use jointrange::range::{boundary_face, directions, sample_inner, support_function, GAP_TOL};
use jointrange::structure::{certify_commuting_normal, reducing_subspace_at};
use jointrange::{ComplexMatrix, HermitianTuple, MatrixTuple};
use rand::Rng;

const SPHERE_SUPPORT_TOL: f64 = 1e-10;
const SPHERE_SAMPLE_TOL: f64 = 1e-9;
const SPHERE_BUDGET: Duration = Duration::from_secs(5);
const INTERVAL_TOL: f64 = 1e-9;
const COMPLEMENT_TOL: f64 = 1e-10;
const MONOTONE_SLACK: f64 = 1e-12;
const DIRECT_SUM_TOL: f64 = 1e-10;
const WITNESS_MARGIN: f64 = 0.5;
const SLICE_D_TOL: f64 = 1e-6;
const SLICE_NORM_TOL: f64 = 1e-4;
const SUBSET_GAP_TOL: f64 = 1e-8;
const PERTURBATION_NORM: f64 = 0.1;
const REDUCING_TOL: f64 = 1e-8;
const JORDAN_RESIDUAL: f64 = 0.5;
const JORDAN_TOL: f64 = 1e-9;
const CERTIFY_BUDGET: Duration = Duration::from_secs(60);
const CLOSURE_N: usize = 1000;
const CROSS_CHECK_TOL: f64 = 1e-9;
const SQUARE_TOL: f64 = 1e-8;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn pauli_sphere() -> Outcome {
    let start = Instant::now();
    let xyz = HermitianTuple::new(pauli().to_vec()).unwrap();
    let h = support_function(&xyz, 1, &directions(3, 10_000, 0)).unwrap();
    let support = h.iter().map(|v| (v - 1.0).abs()).fold(0.0, f64::max);
    let cloud = sample_inner(&xyz, 1, 2000, 0).unwrap().coords();
    let radius = cloud.iter().map(|p| (p.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0).abs()).fold(0.0, f64::max);
    let elapsed = start.elapsed();
    check(
        support <= SPHERE_SUPPORT_TOL && radius <= SPHERE_SAMPLE_TOL && elapsed < SPHERE_BUDGET,
        format!("max |h-1| = {support:.1e}, max |‖p‖-1| = {radius:.1e} over {} samples, {elapsed:.2?}", cloud.len()),
    )
}

fn interval_laws() -> Outcome {
    let mut rng = task_rng(2, 0);
    let (mut endpoint, mut complement) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let n = rng.random_range(2..=12);
        let a = random_hermitian(n, &mut rng).scale_real(rng.random_range(0.1..5.0));
        let lam = jacobi_eigvals(&a);
        let neg = jacobi_eigvals(&a.scale_real(-1.0));
        let tr = a.trace().re;
        let h = HermitianTuple::new(vec![a]).unwrap();
        let dirs = vec![vec![1.0], vec![-1.0]];
        for k in 1..n {
            let s = support_function(&h, k, &dirs).unwrap();
            let scale = 1.0f64.max(lam[0].abs()).max(neg[0].abs());
            endpoint = endpoint.max((s[0] - top_k_sum(&lam, k)).abs() / scale);
            endpoint = endpoint.max((-s[1] + top_k_sum(&neg, k)).abs() / scale);
            let comp = support_function(&h, n - k, &dirs).unwrap();
            complement = complement.max((s[0] - (tr + comp[1])).abs() / scale);
            complement = complement.max((s[1] - (-tr + comp[0])).abs() / scale);
        }
    }
    check(
        endpoint <= INTERVAL_TOL && complement <= COMPLEMENT_TOL,
        format!("endpoint error {endpoint:.1e}, complement identity error {complement:.1e}"),
    )
}

fn k_monotonicity() -> Outcome {
    let mut violations = 0;
    let mut worst = f64::NEG_INFINITY;
    for t in 0..100u64 {
        let mut rng = task_rng(3, t);
        let (m, n) = (rng.random_range(1..=4), rng.random_range(2..=8));
        let a = random_tuple(m, n, 300 + t);
        let dirs = directions(m, 200, t);
        let h: Vec<Vec<f64>> = (1..=n).map(|k| support_function(&a, k, &dirs).unwrap()).collect();
        for k in 1..n {
            for (hk, hk1) in h[k - 1].iter().zip(&h[k]) {
                let excess = hk1 / (k + 1) as f64 - hk / k as f64;
                worst = worst.max(excess);
                if excess > MONOTONE_SLACK {
                    violations += 1;
                }
            }
        }
    }
    check(violations == 0, format!("{violations} violations, largest h_(k+1)/(k+1) - h_k/k = {worst:.1e}"))
}

fn direct_sum_identity() -> Outcome {
    let mut worst = 0.0f64;
    for t in 0..50u64 {
        let mut rng = task_rng(4, t);
        let m = rng.random_range(1..=3);
        let (p, q) = (rng.random_range(1..=6), rng.random_range(1..=6));
        let a = random_tuple(m, p, 400 + t);
        let b = random_tuple(m, q, 500 + t);
        let sum = a.direct_sum(&b).unwrap();
        let dirs = directions(m, 20, t);
        for k in 1..=p + q {
            let h = support_function(&sum, k, &dirs).unwrap();
            for (u, hk) in dirs.iter().zip(h) {
                let (la, lb) = (jacobi_eigvals(&combine(a.mats(), u)), jacobi_eigvals(&combine(b.mats(), u)));
                let split = (k.saturating_sub(q)..=k.min(p))
                    .map(|j| top_k_sum(&la, j) + top_k_sum(&lb, k - j))
                    .fold(f64::NEG_INFINITY, f64::max);
                worst = worst.max((hk - split).abs() / sum.scale());
            }
        }
    }
    check(worst <= DIRECT_SUM_TOL, format!("max |h_k(A⊕B) - best split| = {worst:.1e} over 50 pairs"))
}

fn example_33_nonconvex() -> Outcome {
    let a = padded_pauli(1, 5);
    let w1 = convexity_probe(&a, 1, 2000, 0).unwrap();
    let w2 = convexity_probe(&a, 2, 2000, 0).unwrap();
    let margin = w2.witness.as_ref().map_or(0.0, |w| w.margin);

    // Points on the slice d = 1 come from directions close to e_4; add them to
    // the random samples, which almost never land there.
    let mut cloud = sample_inner(&a, 2, 2000, 0).unwrap().coords();
    for v in directions(3, 200, 5) {
        let u: Vec<f64> = v.iter().map(|x| 1e-3 * x).chain([1.0]).collect();
        cloud.push(boundary_face(&a, 2, &u, GAP_TOL * a.scale()).unwrap().point.unwrap().coords);
    }
    let on_slice: Vec<&Vec<f64>> = cloud.iter().filter(|p| (p[3] - 1.0).abs() <= SLICE_D_TOL).collect();
    let slice = on_slice.iter().map(|p| ((p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt() - 1.0).abs()).fold(0.0, f64::max);
    check(
        w2.status == ConvexityStatus::Nonconvex && margin >= WITNESS_MARGIN && w1.status != ConvexityStatus::Nonconvex && slice <= SLICE_NORM_TOL,
        format!(
            "W_1 {:?}; W_2 {:?} with margin {margin:.3}; slice error {slice:.1e} on {} of {} points",
            w1.status,
            w2.status,
            on_slice.len(),
            cloud.len()
        ),
    )
}

fn example_33_w3() -> Outcome {
    let w3 = convexity_probe(&padded_pauli(1, 5), 3, 2000, 0).unwrap();
    let margin = w3.witness.as_ref().map_or(0.0, |w| w.margin);
    check(
        w3.status != ConvexityStatus::Nonconvex,
        format!("W_3 {:?} (witness margin {margin:.3}); W_3 = (0,0,0,-1) - W_2 when N = 5, so it inherits the nonconvexity of W_2", w3.status),
    )
}

fn polyhedrality() -> Outcome {
    let (mut subset_gap, mut missed, mut perturbed_poly) = (0.0f64, 0, 0);
    for t in 0..30u64 {
        let mut rng = task_rng(6, t);
        let (m, n) = (rng.random_range(2..=3), rng.random_range(2..=10));
        let diag = random_diagonal(m, n, 600 + t);
        let a = diagonal_tuple(&diag);
        let test_dirs = directions(m, 2000, 9000 + t);
        for k in 1..n {
            let cert = detect_polyhedral(&a, k, 256, POLY_TOL, t).unwrap();
            if !cert.is_polyhedral {
                missed += 1;
            }
            let verts: Vec<Vec<f64>> = cert.vertices.iter().map(|p| p.coords.clone()).collect();
            let sums = subset_sums(&diag, k);
            let gap = hausdorff_gap(&BodyView::Points(&verts), &BodyView::Points(&sums), &test_dirs).unwrap();
            subset_gap = subset_gap.max(gap / a.scale());
        }

        let mut prng = task_rng(6, 1000 + t);
        let noisy = HermitianTuple::new(
            a.mats()
                .iter()
                .map(|d| {
                    let e = random_hermitian(n, &mut prng);
                    let mut out = d.clone();
                    out.add_scaled(PERTURBATION_NORM / spectral_norm(&e), &e);
                    out
                })
                .collect(),
        )
        .unwrap();
        let window = [(n / 2).max(1), n.div_ceil(2)];
        if window.iter().all(|&k| detect_polyhedral(&noisy, k, 256, POLY_TOL, t).unwrap().is_polyhedral) {
            perturbed_poly += 1;
        }
    }
    check(
        missed == 0 && subset_gap <= SUBSET_GAP_TOL && perturbed_poly == 0,
        format!("{missed} diagonal (tuple, k) pairs missed, subset-sum gap {subset_gap:.1e}, {perturbed_poly} perturbed tuples still polyhedral"),
    )
}

fn reducing_subspaces() -> Outcome {
    let (mut worst, mut tested) = (0.0f64, 0);
    for t in 0..10u64 {
        let mut rng = task_rng(7, t);
        let r = rng.random_range(3..=5);
        let q = rng.random_range(2..=5);
        let phase = rng.random_range(0.0..1.0);
        let angles: Vec<f64> = (0..r).map(|i| 2.0 * std::f64::consts::PI * (i as f64 + phase) / r as f64).collect();
        let d = [angles.iter().map(|a| 2.0 * a.cos()).collect::<Vec<_>>(), angles.iter().map(|a| 2.0 * a.sin()).collect()];
        let b = [random_hermitian(q, &mut rng), random_hermitian(q, &mut rng)];
        let bn = spectral_norm(&b[0]).max(spectral_norm(&b[1]));
        let mats: Vec<ComplexMatrix> =
            (0..2).map(|j| ComplexMatrix::from_real_diag(&d[j]).block_diag(&b[j].scale_real(0.3 / bn))).collect();
        let a = HermitianTuple::new(mats).unwrap();
        for k in 1..=2.min(r) {
            for u in directions(2, 180, t) {
                let mut dvals: Vec<f64> = (0..r).map(|i| u[0] * d[0][i] + u[1] * d[1][i]).collect();
                dvals.sort_by(|x, y| y.total_cmp(x));
                let bval = jacobi_eigvals(&combine(&[b[0].scale_real(0.3 / bn), b[1].scale_real(0.3 / bn)], &u))[0];
                let kth = dvals[k - 1];
                let next = dvals.get(k).copied().unwrap_or(f64::NEG_INFINITY).max(bval);
                if kth - next <= 1e-3 {
                    continue;
                }
                let cert = reducing_subspace_at(&a, k, &u, GAP_TOL * a.scale()).unwrap();
                worst = worst.max(cert.residual / a.scale());
                tested += 1;
            }
        }
    }
    let c = |re: f64| C64::new(re, 0.0);
    let jordan = ComplexMatrix::new(2, 2, vec![c(0.0), c(1.0), c(0.0), c(0.0)]).unwrap();
    let j = real_form(&MatrixTuple::new(vec![jordan]).unwrap(), true).unwrap();
    let mut jordan_err = 0.0f64;
    for u in directions(2, 36, 0) {
        let cert = reducing_subspace_at(&j, 1, &u, GAP_TOL).unwrap();
        jordan_err = jordan_err.max((cert.residual - JORDAN_RESIDUAL).abs());
    }
    check(
        tested > 0 && worst <= REDUCING_TOL && jordan_err <= JORDAN_TOL,
        format!("{tested} vertex directions, max residual {worst:.1e}; Jordan residual error {jordan_err:.1e}"),
    )
}

fn commuting_certification() -> Outcome {
    let start = Instant::now();
    let (mut disagree, mut wrong) = (0, 0);
    for t in 0..100u64 {
        let mut rng = task_rng(8, t);
        let (m, n) = (rng.random_range(1..=2), rng.random_range(2..=10));
        let u = random_unitary(n, &mut rng);
        let mut mats: Vec<ComplexMatrix> = (0..m)
            .map(|_| {
                let diag: Vec<C64> = (0..n).map(|_| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
                u.matmul(&ComplexMatrix::from_diag(&diag)).matmul(&u.adjoint())
            })
            .collect();
        let commuting = t < 50;
        if !commuting {
            for a in &mut mats {
                let e = random_hermitian(n, &mut rng);
                let f = random_hermitian(n, &mut rng);
                let g = ComplexMatrix::from_fn(n, n, |i, j| e[(i, j)] + C64::new(0.0, 1.0) * f[(i, j)]);
                let norm = spectral_norm(&e).max(spectral_norm(&f)) * 2.0;
                let mut out = a.clone();
                for i in 0..n {
                    for j in 0..n {
                        out[(i, j)] += g[(i, j)] * (PERTURBATION_NORM / norm);
                    }
                }
                *a = out;
            }
        }
        let v = certify_commuting_normal(&MatrixTuple::new(mats).unwrap(), 1e-9, 128, t).unwrap();
        if !v.agree {
            disagree += 1;
        }
        if v.algebraic != commuting {
            wrong += 1;
        }
    }
    let elapsed = start.elapsed();
    check(
        disagree == 0 && wrong == 0 && elapsed < CERTIFY_BUDGET,
        format!("{disagree} disagreements, {wrong} misclassified, {elapsed:.2?}"),
    )
}

fn closure_formula() -> Outcome {
    let spec = staircase_spec(2);
    let at_k = closure_hull(&spec, 2, CLOSURE_N, 64).unwrap();
    let next = closure_hull(&spec, 3, CLOSURE_N, 64).unwrap();
    let (lo2, hi2) = at_k.interval().unwrap();
    let (lo3, hi3) = next.interval().unwrap();
    let tol = 2.0 / CLOSURE_N as f64;
    let endpoints = (lo2 - 0.0).abs() <= tol && (hi2 - 2.0).abs() <= tol && (lo3 - 0.0).abs() <= tol && (hi3 - 3.0).abs() <= tol;
    let scale = spec.head().scale().max(1.0);
    let cross = at_k.cross_check_error.max(next.cross_check_error);
    check(
        endpoints && cross <= CROSS_CHECK_TOL * scale,
        format!("W_2 closure [{lo2}, {hi2}], W_3 closure [{lo3}, {hi3}], path disagreement {cross:.1e}"),
    )
}

fn square_truncation() -> Outcome {
    let a = real_form(&square_spec().truncate(16), true).unwrap();
    let mut worst = 0.0f64;
    let mut counts = Vec::new();
    for k in 1..=4 {
        let cert = detect_polyhedral(&a, k, 128, POLY_TOL, 0).unwrap();
        counts.push(cert.vertices.len());
        let kf = k as f64;
        let expected = [[kf, kf], [kf, -kf], [-kf, kf], [-kf, -kf]];
        if !cert.is_polyhedral || cert.vertices.len() != 4 {
            worst = f64::INFINITY;
            continue;
        }
        for e in expected {
            let d = cert.vertices.iter().map(|p| (p.coords[0] - e[0]).hypot(p.coords[1] - e[1])).fold(f64::INFINITY, f64::min);
            worst = worst.max(d);
        }
    }
    check(worst <= SQUARE_TOL, format!("vertex counts {counts:?}, max distance to k(±1±i) {worst:.1e}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("1 Pauli sphere", pauli_sphere),
        ("2 interval laws", interval_laws),
        ("3 k-monotonicity", k_monotonicity),
        ("4 direct-sum support", direct_sum_identity),
        ("5a padded Pauli: W_2 nonconvex, W_1 convex, slice", example_33_nonconvex),
        ("5b padded Pauli: W_3 convex", example_33_w3),
        ("6 polyhedrality of diagonal tuples", polyhedrality),
        ("7 reducing subspaces", reducing_subspaces),
        ("8 commuting-normal certification", commuting_certification),
        ("9 closure formula", closure_formula),
        ("10 square truncation", square_truncation),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
