//! Reproducibility checks replayed by `magic-simplex verify` and the
//! acceptance test target.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::family::{
    bell_spectrum, bisect_sign_change, family_state, horodecki_b, horodecki_point, is_state,
    plane_point, pt_min_eig, pyramid_margin, FamilyPoint,
};
use crate::format::sig12;
use crate::qmat::ComplexMatrix;
use crate::regions::{l_a, l_b, scan, AxisRange, Classifier, GridSpec, Verdict};
use crate::witness::{
    c_lambda, c_limit, epsilon_tot, lambda_min, lambda_pl3_exact, lambda_tot_exact, line_state,
    min_over_product_states, pl3_start, reference_gamma_tot, rho1_plane, tot_start, LineSpec,
    DETECTION_TOL, LAMBDA_TOL,
};

/// Outcome of one check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: usize,
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub tolerance: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: expected {}, computed {}, tolerance {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.expected,
            self.computed,
            self.tolerance
        )?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_101,
            threads: None,
        }
    }
}

struct Draft {
    expected: String,
    computed: String,
    tolerance: String,
    passed: bool,
    detail: String,
}

fn finish(id: usize, name: &str, r: Result<Draft>) -> CheckReport {
    match r {
        Ok(d) => CheckReport {
            id,
            name: name.to_string(),
            expected: d.expected,
            computed: d.computed,
            tolerance: d.tolerance,
            passed: d.passed,
            detail: d.detail,
        },
        Err(e) => CheckReport {
            id,
            name: name.to_string(),
            expected: "-".into(),
            computed: "error".into(),
            tolerance: "-".into(),
            passed: false,
            detail: e.to_string(),
        },
    }
}

pub const CHECK_NAMES: [&str; 12] = [
    "global lambda_min",
    "third-plane lambda_min",
    "Horodecki line boundaries",
    "l_a / l_b crossings",
    "first witness plane",
    "geometric witness identities",
    "Bell spectrum and pyramid",
    "limit witness law",
    "product-state safety",
    "coefficient conjugation",
    "boundary-plane scan",
    "gamma = 0 slice",
];

/// Runs check `id` (1-based).
pub fn run_check(id: usize, cfg: &VerifyConfig) -> CheckReport {
    let name = CHECK_NAMES
        .get(id.wrapping_sub(1))
        .copied()
        .unwrap_or("unknown");
    let r = match id {
        1 => check_lambda_tot(),
        2 => check_lambda_pl3(),
        3 => check_horodecki(),
        4 => check_crossings(),
        5 => check_pl1(cfg.seed),
        6 => check_identities(cfg.seed),
        7 => check_spectrum(cfg.seed),
        8 => check_limit_law(cfg.seed),
        9 => check_product_safety(cfg.seed),
        10 => check_conjugation(cfg.seed),
        11 => check_boundary_scan(cfg.threads),
        12 => check_gamma0(cfg.threads),
        _ => Err(crate::error::Error::OutOfRange(format!("no check {id}"))),
    };
    finish(id, name, r)
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckReport> {
    (1..=CHECK_NAMES.len())
        .map(|id| run_check(id, cfg))
        .collect()
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform point of the pyramid's bounding box that is a state with a
/// strictly positive partial transpose.
pub fn random_ppt_point(r: &mut impl Rng) -> FamilyPoint {
    loop {
        let p = FamilyPoint::new(
            r.gen_range(-0.5..1.0),
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
        );
        if pyramid_margin(p) > 1e-6 && pt_min_eig(p) > 1e-6 {
            return p;
        }
    }
}

fn check_lambda_tot() -> Result<Draft> {
    let want = lambda_tot_exact();
    let lm = lambda_min(tot_start()?, LAMBDA_TOL)?;
    let eps = epsilon_tot();
    let literal = plane_point(eps, reference_gamma_tot(eps));
    let literal_note = match lambda_min(literal, LAMBDA_TOL) {
        Ok(l) => format!(
            "reference gamma {} gives {}",
            sig12(literal.gamma),
            sig12(l.lambda)
        ),
        Err(e) => format!("reference gamma {}: {e}", sig12(literal.gamma)),
    };
    Ok(Draft {
        expected: sig12(want),
        computed: sig12(lm.lambda),
        tolerance: "1e-6".into(),
        passed: (lm.lambda - want).abs() <= 1e-6,
        detail: format!("start gamma {}; {literal_note}", sig12(lm.start.gamma)),
    })
}

fn check_lambda_pl3() -> Result<Draft> {
    let want = lambda_pl3_exact();
    let lm = lambda_min(pl3_start()?, LAMBDA_TOL)?;
    Ok(Draft {
        expected: sig12(want),
        computed: sig12(lm.lambda),
        tolerance: "1e-5".into(),
        passed: (lm.lambda - want).abs() <= 1e-5,
        detail: format!("start beta {}", sig12(lm.start.beta)),
    })
}

fn horodecki_at_gamma(gamma: f64) -> Result<FamilyPoint> {
    horodecki_point(horodecki_b(gamma))
}

fn check_horodecki() -> Result<Draft> {
    let f = |g: f64| pt_min_eig(horodecki_at_gamma(g).expect("gamma within the line"));
    let (good, bad) = bisect_sign_change(0.2, 0.6, 1e-13, f);
    let transition = 0.5 * (good + bad);
    let classifier = Classifier::shared()?;
    let samples = 200;
    let mut mismatches = Vec::new();
    let ranges = [
        (0.0, 1.0 / 7.0 - 1e-3, Verdict::Separable),
        (1.0 / 7.0 + 1e-3, 3.0 / 7.0 - 1e-6, Verdict::BoundEntangled),
    ];
    for (lo, hi, want) in ranges {
        for i in 0..=samples {
            let g = lo + (hi - lo) * i as f64 / samples as f64;
            let got = classifier.classify(horodecki_at_gamma(g)?).verdict;
            if got != want {
                mismatches.push(format!("gamma {} -> {got}", sig12(g)));
            }
        }
    }
    let ok_transition = (transition - 3.0 / 7.0).abs() <= 1e-6;
    Ok(Draft {
        expected: sig12(3.0 / 7.0),
        computed: sig12(transition),
        tolerance: "1e-6".into(),
        passed: ok_transition && mismatches.is_empty(),
        detail: if mismatches.is_empty() {
            format!("{} classified samples agree", 2 * (samples + 1))
        } else {
            format!(
                "{} misclassified, first: {}",
                mismatches.len(),
                mismatches[0]
            )
        },
    })
}

fn check_crossings() -> Result<Draft> {
    let r0 = (l_a(0.0) - l_b(0.0)?).abs();
    let r1 = (l_a(1.0) - l_b(1.0)?).abs();
    let interior = (1..100).all(|i| {
        let g = i as f64 / 100.0;
        l_b(g).map(|b| b > l_a(g)).unwrap_or(false)
    });
    let worst = r0.max(r1);
    Ok(Draft {
        expected: "0".into(),
        computed: sig12(worst),
        tolerance: "1e-12".into(),
        passed: worst <= 1e-12 && interior,
        detail: format!("l_b > l_a strictly inside (0, 1): {interior}"),
    })
}

fn check_pl1(seed: u64) -> Result<Draft> {
    let w = c_limit(rho1_plane())?;
    let mut r = rng(seed, 5);
    let pts: Vec<FamilyPoint> = (0..100)
        .map(|_| {
            FamilyPoint::new(
                r.gen_range(-0.5..1.0),
                r.gen_range(-1.0..1.0),
                r.gen_range(-1.0..1.0),
            )
        })
        .collect();
    let f: Vec<f64> = pts.iter().map(|&p| w.value_at(p)).collect();
    let g: Vec<f64> = pts
        .iter()
        .map(|p| p.alpha - 2.0 * (1.0 + 2.0 * p.beta - p.gamma) / 5.0)
        .collect();
    let k =
        f.iter().zip(&g).map(|(a, b)| a * b).sum::<f64>() / g.iter().map(|b| b * b).sum::<f64>();
    let scale = f.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let dev = f
        .iter()
        .zip(&g)
        .map(|(a, b)| (a - k * b).abs())
        .fold(0.0f64, f64::max)
        / scale;
    Ok(Draft {
        expected: "0".into(),
        computed: sig12(dev),
        tolerance: "1e-9".into(),
        passed: dev <= 1e-9 && k.abs() > 1e-6,
        detail: format!("proportionality factor {}", sig12(k)),
    })
}

fn check_identities(seed: u64) -> Result<Draft> {
    let mut r = rng(seed, 6);
    let mut worst_on = 0.0f64;
    let mut worst_off = 0.0f64;
    for _ in 0..1000 {
        let start = random_ppt_point(&mut r);
        let line = LineSpec::new(start, r.gen_range(0.0..1.0))?;
        let c = c_lambda(&line)?;
        let rho_l = line_state(&line);
        let rho = family_state(start);
        let on = c.value(&rho_l);
        let diff = &rho_l - &rho;
        let off = c.value(&rho) + diff.frobenius_norm().powi(2);
        worst_on = worst_on.max(on.abs());
        worst_off = worst_off.max(off.abs());
    }
    let worst = worst_on.max(worst_off);
    Ok(Draft {
        expected: "0".into(),
        computed: sig12(worst),
        tolerance: "1e-12".into(),
        passed: worst <= 1e-12,
        detail: format!(
            "max |Tr(C rho_lambda)| {}, max |Tr(C rho) + dist^2| {}",
            sig12(worst_on),
            sig12(worst_off)
        ),
    })
}

fn check_spectrum(seed: u64) -> Result<Draft> {
    let mut r = rng(seed, 7);
    let pts: Vec<FamilyPoint> = (0..10_000)
        .map(|_| {
            FamilyPoint::new(
                r.gen_range(-0.6..1.2),
                r.gen_range(-1.2..1.2),
                r.gen_range(-1.2..1.2),
            )
        })
        .collect();
    let results: Vec<Result<(f64, bool)>> = pts
        .par_iter()
        .map(|&p| {
            let spec = family_state(p).hermitian_eigenvalues()?;
            let bell = bell_spectrum(p).sorted();
            let err = spec
                .eigenvalues
                .iter()
                .zip(&bell)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            let agree = (pyramid_margin(p) >= 0.0) == (bell_spectrum(p).min() >= 0.0);
            Ok((err, agree))
        })
        .collect();
    let mut worst = 0.0f64;
    let mut disagreements = 0usize;
    let mut states = 0usize;
    for (res, p) in results.into_iter().zip(&pts) {
        let (err, agree) = res?;
        worst = worst.max(err);
        disagreements += usize::from(!agree);
        states += usize::from(is_state(*p));
    }
    Ok(Draft {
        expected: "0".into(),
        computed: sig12(worst),
        tolerance: "1e-9".into(),
        passed: worst <= 1e-9 && disagreements == 0,
        detail: format!("{disagreements} sign disagreements; {states} of 10000 points are states"),
    })
}

fn check_limit_law(seed: u64) -> Result<Draft> {
    let mut r = rng(seed, 8);
    let mut worst_ratio = 0.0f64;
    for _ in 0..10 {
        let start = random_ppt_point(&mut r);
        let limit = c_limit(start)?;
        for k in 3..=6 {
            let lambda = 1.0 - 10f64.powi(-k);
            let c = c_lambda(&LineSpec::new(start, lambda)?)?;
            let scaled: ComplexMatrix = c.matrix().scale(1.0 / (lambda * (1.0 - lambda)));
            let dist = (&scaled - limit.matrix()).frobenius_norm();
            worst_ratio = worst_ratio.max(dist / (1.0 - lambda));
        }
    }
    Ok(Draft {
        expected: "<= 10".into(),
        computed: sig12(worst_ratio),
        tolerance: "10 (1 - lambda)".into(),
        passed: worst_ratio <= 10.0,
        detail: "max of ||C_lambda/(lambda(1-lambda)) - C_1|| / (1 - lambda)".into(),
    })
}

fn check_product_safety(seed: u64) -> Result<Draft> {
    let classifier = Classifier::shared()?;
    let mins: Vec<(String, f64)> = classifier
        .witnesses
        .par_iter()
        .enumerate()
        .map(|(i, bw)| {
            (
                bw.name.clone(),
                min_over_product_states(&bw.witness, 100_000, seed.wrapping_add(900 + i as u64)),
            )
        })
        .collect();
    let worst = mins.iter().map(|m| m.1).fold(f64::INFINITY, f64::min);
    Ok(Draft {
        expected: ">= -1e-10".into(),
        computed: sig12(worst),
        tolerance: "1e-10".into(),
        passed: worst >= -DETECTION_TOL,
        detail: mins
            .iter()
            .map(|(n, v)| format!("{n} {}", sig12(*v)))
            .collect::<Vec<_>>()
            .join(", "),
    })
}

fn check_conjugation(seed: u64) -> Result<Draft> {
    let mut r = rng(seed, 10);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 100 {
        let eps = r.gen_range(-1.0..0.5);
        let gamma = r.gen_range(0.0..0.6);
        let plus = plane_point(eps, gamma);
        let minus = plane_point(eps, -gamma);
        // Plane points sit on a pyramid facet, so the margin is zero there.
        if !is_state(plus) || pt_min_eig(plus) < 1e-9 || pt_min_eig(minus) < 1e-9 {
            continue;
        }
        let lambda = r.gen_range(0.0..1.0);
        let a = c_lambda(&LineSpec::new(plus, lambda)?)?;
        let b = c_lambda(&LineSpec::new(minus, lambda)?)?;
        for ((_, _, s), (_, _, t)) in a.coeffs().iter().zip(b.coeffs().iter()) {
            worst = worst.max((s - t.conj()).norm());
        }
        n += 1;
    }
    Ok(Draft {
        expected: "0".into(),
        computed: sig12(worst),
        tolerance: "1e-12".into(),
        passed: worst <= 1e-12,
        detail: "100 PPT pairs plane_point(eps, +-gamma)".into(),
    })
}

fn check_boundary_scan(threads: Option<usize>) -> Result<Draft> {
    let grid = GridSpec::BoundaryPlane {
        gamma: AxisRange::new(0.0, 1.0, 0.01)?,
        beta: AxisRange::new(-1.0 / 3.0, 0.1, 0.01)?,
    };
    let res = scan(&grid, threads)?;
    let sep = res.count(Verdict::Separable);
    let bound = res.count(Verdict::BoundEntangled);
    let npt = res.count(Verdict::NptEntangled);

    let mut problems = Vec::new();
    // Rows are grouped by gamma with beta ascending.
    let mut columns: Vec<Vec<(f64, Verdict)>> = Vec::new();
    let mut last_gamma = f64::NAN;
    for row in &res.rows {
        if row.point.gamma != last_gamma {
            columns.push(Vec::new());
            last_gamma = row.point.gamma;
        }
        columns
            .last_mut()
            .expect("column")
            .push((row.point.beta, row.verdict));
        let g = row.point.gamma;
        let b = row.point.beta;
        if row.verdict == Verdict::Separable && b > l_a(g) + 1e-12 {
            problems.push(format!(
                "Separable above l_a at gamma {}, beta {}",
                sig12(g),
                sig12(b)
            ));
        }
        if g > 0.0
            && g < 1.0
            && b - l_a(g) > 1e-6
            && l_b(g)? - b > 1e-6
            && row.verdict != Verdict::BoundEntangled
        {
            problems.push(format!(
                "{} between l_a and l_b at gamma {}, beta {}",
                row.verdict,
                sig12(g),
                sig12(b)
            ));
        }
    }
    for col in &columns {
        let idx: Vec<usize> = col
            .iter()
            .enumerate()
            .filter(|(_, (_, v))| *v == Verdict::Separable)
            .map(|(i, _)| i)
            .collect();
        if let (Some(first), Some(last)) = (idx.first(), idx.last()) {
            if last - first + 1 != idx.len() {
                problems.push("Separable verdicts not contiguous in a gamma column".into());
            }
        }
    }
    let computed = format!("separable {sep}, bound {bound}, npt {npt}");
    Ok(Draft {
        expected: "all three classes nonempty, Separable below l_a".into(),
        computed,
        tolerance: "exact".into(),
        passed: sep > 0 && bound > 0 && npt > 0 && problems.is_empty(),
        detail: match problems.first() {
            None => format!("{} points scanned", res.rows.len()),
            Some(p) => format!("{} problems, first: {p}", problems.len()),
        },
    })
}

fn check_gamma0(threads: Option<usize>) -> Result<Draft> {
    let n = 200;
    let (a0, a1) = (-1.0 / 6.0, 1.0);
    let (b0, b1) = (-1.0 / 3.0, 1.0);
    let grid = GridSpec::Box {
        alpha: AxisRange::new(a0, a1, (a1 - a0) / (n - 1) as f64)?,
        beta: AxisRange::new(b0, b1, (b1 - b0) / (n - 1) as f64)?,
        gamma: AxisRange::single(0.0),
    };
    let res = scan(&grid, threads)?;
    let bound = res.count(Verdict::BoundEntangled);
    let undetermined = res.count(Verdict::Undetermined);
    Ok(Draft {
        expected: "0".into(),
        computed: bound.to_string(),
        tolerance: "exact".into(),
        passed: res.rows.len() == n * n && bound == 0,
        detail: format!(
            "{} points; separable {}, npt {}, undetermined {undetermined}",
            res.rows.len(),
            res.count(Verdict::Separable),
            res.count(Verdict::NptEntangled)
        ),
    })
}
