use magic_simplex::family::{bell_spectrum, family_state, pt_min_eig, pyramid_margin, FamilyPoint};
use magic_simplex::regions::{scan, write_scan_csv, AxisRange, Classifier, GridSpec, Verdict};
use magic_simplex::witness::{c_lambda, lambda_min, LineSpec, LAMBDA_TOL};
use magic_simplex::Error;
use proptest::prelude::*;

fn any_point() -> impl Strategy<Value = FamilyPoint> {
    (-0.6f64..1.2, -1.2f64..1.2, -1.2f64..1.2).prop_map(|(a, b, g)| FamilyPoint::new(a, b, g))
}

fn ppt_point() -> impl Strategy<Value = FamilyPoint> {
    any_point().prop_filter("strictly PPT state", |&p| {
        pyramid_margin(p) > 1e-6 && pt_min_eig(p) > 1e-6
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn states_have_unit_trace(p in any_point()) {
        let rho = family_state(p);
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-13);
        prop_assert!(rho.is_hermitian(1e-15));
    }

    #[test]
    fn mirror_is_an_involution(p in any_point()) {
        let back = p.mirrored().mirrored();
        prop_assert!((back.alpha - p.alpha).abs() < 1e-14);
        prop_assert!((back.beta - p.beta).abs() < 1e-14);
        prop_assert!((back.gamma - p.gamma).abs() < 1e-14);
    }

    #[test]
    fn mirror_preserves_spectra(p in any_point()) {
        let m = p.mirrored();
        let (a, b) = (bell_spectrum(p).sorted(), bell_spectrum(m).sorted());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-13);
        }
        prop_assert!((pt_min_eig(p) - pt_min_eig(m)).abs() < 1e-10);
    }

    #[test]
    fn verdicts_are_layered(p in any_point()) {
        let c = Classifier::shared().unwrap().classify(p);
        match c.verdict {
            Verdict::NotAState => prop_assert!(c.evidence.pyramid_margin < 0.0),
            Verdict::NptEntangled => prop_assert!(c.evidence.pt_min_eig.unwrap() < -1e-10),
            Verdict::BoundEntangled => {
                prop_assert!(c.evidence.pt_min_eig.unwrap() >= -1e-10);
                prop_assert!(c.evidence.witness.as_ref().unwrap().value < -1e-10);
            }
            Verdict::Separable => {
                prop_assert!(pt_min_eig(p) >= -1e-8);
                let w = &c.evidence.polygon.as_ref().unwrap().weights;
                prop_assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-9);
            }
            Verdict::Undetermined => prop_assert!(c.evidence.pt_min_eig.unwrap() >= -1e-10),
        }
    }

    #[test]
    fn witness_vanishes_on_its_line_point(start in ppt_point(), lambda in 0.0f64..1.0) {
        let line = LineSpec::new(start, lambda).unwrap();
        let c = c_lambda(&line).unwrap();
        let rho = magic_simplex::witness::line_state(&line);
        prop_assert!(c.value(&rho).abs() < 1e-12);
        prop_assert!(c.value(&family_state(start)) <= 1e-15);
    }

    #[test]
    fn lambda_min_is_the_feasibility_threshold(start in ppt_point()) {
        prop_assume!(start.alpha.abs() + start.beta.abs() + start.gamma.abs() > 1e-3);
        match lambda_min(start, LAMBDA_TOL) {
            Ok(lm) => {
                let below = (lm.lambda - 1e-6).max(0.0);
                if below > 0.0 {
                    let c = c_lambda(&LineSpec::new(start, below).unwrap()).unwrap();
                    prop_assert!(!c.feasible());
                }
                prop_assert!(lm.witness.feasible());
            }
            // Feasibility is monotone in lambda, so a line that is never
            // certified is not certified just below the limit either.
            Err(Error::NeverFeasible(_)) => {
                let c = c_lambda(&LineSpec::new(start, 1.0 - 1e-9).unwrap()).unwrap();
                prop_assert!(!c.feasible());
            }
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn polygon_interior_is_ppt() {
    let poly = &Classifier::shared().unwrap().polygon;
    let verts: Vec<[f64; 3]> = poly.vertices.iter().map(|v| v.point.as_array()).collect();
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..10_000 {
        let raw: Vec<f64> = verts.iter().map(|_| -next().max(1e-300).ln()).collect();
        let total: f64 = raw.iter().sum();
        let mut x = [0.0; 3];
        for (w, v) in raw.iter().zip(&verts) {
            for k in 0..3 {
                x[k] += w / total * v[k];
            }
        }
        let p = FamilyPoint::from_array(x);
        assert!(pt_min_eig(p) >= -1e-8, "{p}");
        assert!(poly.contains(p), "{p}");
        assert!(poly.facets_contain(p, 1e-9), "{p}");
    }
}

#[test]
fn polygon_examples() {
    let poly = &Classifier::shared().unwrap().polygon;
    assert!(poly.contains(FamilyPoint::MAXIMALLY_MIXED));
    assert!(poly.contains(FamilyPoint::new(0.0, 0.0, 1.0)));
    assert!(!poly.contains(FamilyPoint::new(1.0, 0.0, 0.0)));
    assert_eq!(poly.vertices.len(), 5);
    assert!(poly
        .mirrored()
        .contains(FamilyPoint::new(-1.0 / 3.0, -2.0 / 3.0, -1.0)));
}

#[test]
fn scan_output_does_not_depend_on_threads() {
    let grid = GridSpec::Box {
        alpha: AxisRange::new(-0.2, 0.6, 0.1).unwrap(),
        beta: AxisRange::new(-0.4, 0.6, 0.1).unwrap(),
        gamma: AxisRange::new(-0.5, 0.5, 0.25).unwrap(),
    };
    let csv = |threads| {
        let res = scan(&grid, Some(threads)).unwrap();
        let mut buf = Vec::new();
        write_scan_csv(&res.rows, &mut buf).unwrap();
        buf
    };
    let one = csv(1);
    assert_eq!(one, csv(3));
    let text = String::from_utf8(one).unwrap();
    assert!(text.starts_with(
        "alpha,beta,gamma,verdict,pt_min_eig,witness_name,witness_value,polygon_member\n"
    ));
}

#[test]
fn single_point_scan() {
    let grid = GridSpec::Box {
        alpha: AxisRange::single(0.0),
        beta: AxisRange::single(0.0),
        gamma: AxisRange::single(0.0),
    };
    let res = scan(&grid, None).unwrap();
    assert_eq!(res.rows.len(), 1);
    assert_eq!(res.rows[0].verdict, Verdict::Separable);
}
