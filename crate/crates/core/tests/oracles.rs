//! Cross-checks against constructions written out independently of the
//! library internals.

use magic_simplex::family::{
    bell_spectrum, family_state, horodecki_point, pt_min_eig, pyramid_margin, FamilyPoint,
};
use magic_simplex::qmat::ComplexMatrix;
use magic_simplex::regions::{gamma0_ppt_vertices, l_a, l_b, Classifier, Verdict};
use magic_simplex::weyl::{
    bell_projector, from_coefficients, weyl_operator, weyl_tensor_decompose, WeylIndex,
};
use num_complex::Complex64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// SWAP on C³ ⊗ C³: |i j⟩ ↦ |j i⟩.
fn swap3() -> ComplexMatrix {
    ComplexMatrix::from_fn(9, |r, k| {
        let (i, j) = (r / 3, r % 3);
        if k == j * 3 + i {
            c(1.0)
        } else {
            c(0.0)
        }
    })
}

#[test]
fn partial_transpose_of_phi_plus_is_swap_over_three() {
    let p00 = bell_projector(WeylIndex::new(0, 0, 3).unwrap());
    let pt = p00.partial_transpose(3, 3).unwrap();
    let want = swap3().scale(1.0 / 3.0);
    assert!((&pt - &want).frobenius_norm() < 1e-15);
    let spec = pt.hermitian_eigenvalues().unwrap();
    assert!((spec.min() + 1.0 / 3.0).abs() < 1e-12);
    assert!((spec.max() - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn bell_projectors_are_orthonormal_and_complete() {
    let all: Vec<ComplexMatrix> = WeylIndex::all(3).map(bell_projector).collect();
    for (i, a) in all.iter().enumerate() {
        for (j, b) in all.iter().enumerate() {
            let want = if i == j { 1.0 } else { 0.0 };
            let got = a.hs_inner(b).unwrap();
            assert!((got - c(want)).norm() < 1e-14, "pair ({i}, {j}) gave {got}");
        }
    }
    let sum = all.iter().fold(ComplexMatrix::zeros(9), |acc, p| &acc + p);
    assert!((&sum - &ComplexMatrix::identity(9)).frobenius_norm() < 1e-14);
}

#[test]
fn weyl_operators_are_orthogonal_in_small_dimensions() {
    for d in 2..=4 {
        let ops: Vec<ComplexMatrix> = WeylIndex::all(d).map(weyl_operator).collect();
        for (i, a) in ops.iter().enumerate() {
            for (j, b) in ops.iter().enumerate() {
                let want = if i == j { d as f64 } else { 0.0 };
                assert!(
                    (a.hs_inner(b).unwrap() - c(want)).norm() < 1e-13,
                    "d={d} ({i},{j})"
                );
            }
        }
    }
}

#[test]
fn decomposition_is_linear() {
    let a = family_state(FamilyPoint::new(0.3, -0.1, 0.2));
    let b = family_state(FamilyPoint::new(-0.05, 0.4, -0.3));
    let mix = &a.scale(0.7) + &b.scale(-1.3);
    let ta = weyl_tensor_decompose(&a, 3).unwrap();
    let tb = weyl_tensor_decompose(&b, 3).unwrap();
    let tm = weyl_tensor_decompose(&mix, 3).unwrap();
    for ((x, y), z) in ta.iter().zip(tb.iter()).zip(tm.iter()) {
        assert!((x.2 * 0.7 - y.2 * 1.3 - z.2).norm() < 1e-14);
    }
    let rebuilt = from_coefficients(3, tm.iter().map(|t| t.2).collect()).unwrap();
    assert!((&rebuilt.reconstruct() - &mix).frobenius_norm() < 1e-13);
}

#[test]
fn bell_weights_follow_the_mixing_rule() {
    // Weights written directly from the family definition.
    let (alpha, beta, gamma) = (0.21, -0.13, 0.34);
    let w = (1.0 - alpha - beta - gamma) / 9.0;
    let want = [
        w + alpha,
        w + gamma / 3.0,
        w,
        w + beta / 2.0,
        w + gamma / 3.0,
        w,
        w + beta / 2.0,
        w + gamma / 3.0,
        w,
    ];
    let q = bell_spectrum(FamilyPoint::new(alpha, beta, gamma));
    for (got, want) in q.weights().iter().zip(want) {
        assert!((got - want).abs() < 1e-15);
    }
}

#[test]
fn trapezoid_matches_intersections_of_its_edge_lines() {
    // γ = 0 edges as α = k·β + c, in boundary order: boundary-plane facet,
    // upper PPT edge, lower PPT edge, lower pyramid facet.
    let lines = [(3.5, 1.0), (0.125, 0.25), (1.25, -0.5), (0.125, -0.125)];
    let meet = |(k1, c1): (f64, f64), (k2, c2): (f64, f64)| {
        let beta = (c2 - c1) / (k1 - k2);
        [k1 * beta + c1, beta]
    };
    let mut want: Vec<[f64; 2]> = (0..4).map(|i| meet(lines[i], lines[(i + 1) % 4])).collect();
    let mut got = gamma0_ppt_vertices(360).unwrap();
    assert_eq!(got.len(), 4, "{got:?}");
    let key = |v: &[f64; 2]| (v[1] * 1e6).round() as i64;
    want.sort_by_key(key);
    got.sort_by_key(key);
    for (g, w) in got.iter().zip(&want) {
        assert!(
            (g[0] - w[0]).abs() < 1e-8 && (g[1] - w[1]).abs() < 1e-8,
            "{g:?} vs {w:?}"
        );
    }
    // The two PPT edges really are PT-eigenvalue zeros.
    // Probe each edge inside its segment.
    for (&(k, c0), beta) in lines[1..3].iter().zip([0.2, 0.5]) {
        let p = FamilyPoint::new(k * beta + c0, beta, 0.0);
        assert!(pt_min_eig(p).abs() < 1e-12);
        assert!(pyramid_margin(p) > 0.0);
    }
}

#[test]
fn analytic_band_agrees_with_the_witness_battery() {
    let cl = Classifier::shared().unwrap();
    let mut checked = 0;
    for i in 1..=100 {
        let g = i as f64 / 101.0;
        let (lo, hi) = (l_a(g), l_b(g).unwrap());
        for j in 1..=10 {
            let b = lo + (hi - lo) * j as f64 / 11.0;
            if b - lo <= 1e-6 || hi - b <= 1e-6 {
                continue;
            }
            let v = cl.classify(FamilyPoint::on_boundary_plane(g, b)).verdict;
            assert_eq!(v, Verdict::BoundEntangled, "gamma {g}, beta {b}");
            checked += 1;
        }
    }
    assert_eq!(checked, 1000);
}

#[test]
fn horodecki_line_splits_into_three_segments() {
    let cl = Classifier::shared().unwrap();
    let mut runs: Vec<(Verdict, f64, f64)> = Vec::new();
    for i in 0..=5000 {
        let b = 5.0 * i as f64 / 5000.0;
        let p = horodecki_point(b).unwrap();
        let v = cl.classify(p).verdict;
        match runs.last_mut() {
            Some(r) if r.0 == v => r.2 = p.gamma,
            _ => runs.push((v, p.gamma, p.gamma)),
        }
    }
    let kinds: Vec<Verdict> = runs.iter().map(|r| r.0).collect();
    use Verdict::*;
    assert_eq!(
        kinds,
        vec![
            NptEntangled,
            BoundEntangled,
            Separable,
            BoundEntangled,
            NptEntangled
        ],
        "{runs:?}"
    );
    // γ decreases with b; boundaries at 3/7, 1/7 and their mirrors.
    let edges = [runs[0].2, runs[1].2, runs[2].2, runs[3].2];
    let want = [3.0 / 7.0, 1.0 / 7.0, -1.0 / 7.0, -3.0 / 7.0];
    for (e, w) in edges.iter().zip(want) {
        assert!((e - w).abs() < 1e-3, "{e} vs {w}");
    }
}
