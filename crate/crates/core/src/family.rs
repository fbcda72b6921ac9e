//! The three-parameter family of two-qutrit Bell-state mixtures
//!
//! ```text
//! ρ(α,β,γ) = (1−α−β−γ)/9 · 𝟙 + α P₀₀ + β/2 (P₁₀ + P₂₀) + γ/3 (P₀₁ + P₁₁ + P₂₁)
//! ```
//!
//! together with its positivity pyramid, the PPT test, the Horodecki line and
//! the starting points on the boundary plane `α = 7β/2 + 1 − γ`.

use std::fmt;
use std::sync::OnceLock;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;
use crate::regions::Verdict;
use crate::weyl::{bell_projector, WeylIndex};

/// Slack on the pyramid margin before a point stops counting as a state.
pub const MARGIN_TOL: f64 = 1e-12;
/// Slack on the smallest partial-transpose eigenvalue for a PPT verdict.
pub const PPT_TOL: f64 = 1e-10;

/// Coordinates `(α, β, γ)` of a family member. Any triple is accepted;
/// whether it is a state is a question for [`pyramid_margin`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyPoint {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl FamilyPoint {
    pub const MAXIMALLY_MIXED: FamilyPoint = FamilyPoint {
        alpha: 0.0,
        beta: 0.0,
        gamma: 0.0,
    };

    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    /// The point on the boundary plane with the given `(γ, β)`.
    pub fn on_boundary_plane(gamma: f64, beta: f64) -> Self {
        Self::new(3.5 * beta + 1.0 - gamma, beta, gamma)
    }

    /// `α − (7β/2 + 1 − γ)`; zero on the boundary plane.
    pub fn boundary_plane_offset(&self) -> f64 {
        self.alpha - (3.5 * self.beta + 1.0 - self.gamma)
    }

    /// Image under the state-level symmetry that swaps the phase-space lines
    /// `m = 1` and `m = 2` (Bell weights `q_{n,m} → q_{−n,−m}`).
    ///
    /// At the operator level this is complex conjugation followed by the
    /// subsystem swap, so it preserves separability and the partial-transpose
    /// spectrum. It maps `plane_point(ε, γ)` to `plane_point(ε, −γ)` and the
    /// Horodecki parameter `b` to `5 − b`.
    pub fn mirrored(&self) -> Self {
        Self::new(
            self.alpha - self.gamma / 3.0,
            self.beta - 2.0 * self.gamma / 3.0,
            -self.gamma,
        )
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl fmt::Display for FamilyPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(alpha={:.6}, beta={:.6}, gamma={:.6})",
            self.alpha, self.beta, self.gamma
        )
    }
}

fn qutrit_bell(n: usize, m: usize) -> &'static ComplexMatrix {
    static CACHE: OnceLock<Vec<ComplexMatrix>> = OnceLock::new();
    let all = CACHE.get_or_init(|| WeylIndex::all(3).map(bell_projector).collect());
    &all[n * 3 + m]
}

/// Density operator of the family member (not necessarily positive).
pub fn family_state(p: FamilyPoint) -> ComplexMatrix {
    let w = (1.0 - p.alpha - p.beta - p.gamma) / 9.0;
    let mut rho = ComplexMatrix::identity(9).scale(w);
    rho = &rho + &qutrit_bell(0, 0).scale(p.alpha);
    let half_beta = p.beta / 2.0;
    for n in 1..3 {
        rho = &rho + &qutrit_bell(n, 0).scale(half_beta);
    }
    let third_gamma = p.gamma / 3.0;
    for n in 0..3 {
        rho = &rho + &qutrit_bell(n, 1).scale(third_gamma);
    }
    rho
}

/// Weights `q_nm` of the family member in the Bell basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellSpectrum {
    q: [f64; 9],
}

impl BellSpectrum {
    pub fn get(&self, n: usize, m: usize) -> f64 {
        self.q[n * 3 + m]
    }

    pub fn weights(&self) -> &[f64; 9] {
        &self.q
    }

    pub fn min(&self) -> f64 {
        self.q.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.q.to_vec();
        v.sort_by(|a, b| a.total_cmp(b));
        v
    }

    /// `Σ q²`, the purity of the state.
    pub fn purity(&self) -> f64 {
        self.q.iter().map(|x| x * x).sum()
    }
}

pub fn bell_spectrum(p: FamilyPoint) -> BellSpectrum {
    let w = (1.0 - p.alpha - p.beta - p.gamma) / 9.0;
    let mut q = [w; 9];
    q[0] += p.alpha;
    q[3] += p.beta / 2.0;
    q[6] += p.beta / 2.0;
    for n in 0..3 {
        q[n * 3 + 1] += p.gamma / 3.0;
    }
    BellSpectrum { q }
}

/// Slacks of the four facet inequalities, each `≥ 0` when satisfied:
/// `α ≤ 7β/2 + 1 − γ`, `α ≤ −β + 1 − γ`, `α ≤ −β + 1 + 2γ`, `α ≥ (β − 1 + γ)/8`.
pub fn pyramid_slacks(p: FamilyPoint) -> [f64; 4] {
    let FamilyPoint { alpha, beta, gamma } = p;
    [
        3.5 * beta + 1.0 - gamma - alpha,
        -beta + 1.0 - gamma - alpha,
        -beta + 1.0 + 2.0 * gamma - alpha,
        alpha - (beta - 1.0 + gamma) / 8.0,
    ]
}

/// Smallest facet slack; the point is a state iff this is non-negative.
pub fn pyramid_margin(p: FamilyPoint) -> f64 {
    pyramid_slacks(p).into_iter().fold(f64::INFINITY, f64::min)
}

pub fn is_state(p: FamilyPoint) -> bool {
    pyramid_margin(p) >= -MARGIN_TOL
}

/// Smallest eigenvalue of the partial transpose of `family_state(p)`.
pub fn pt_min_eig(p: FamilyPoint) -> f64 {
    family_state(p)
        .partial_transpose(3, 3)
        .and_then(|m| m.smallest_eigenvalue())
        .expect("family states are 9x9 Hermitian")
}

/// The reference cone surfaces, kept only as a cross-reference for the
/// eigenvalue oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConeDiagnostics {
    /// `Δ = 4 + 9β² + 4γ − 7γ² − 6β(2 + γ)`.
    pub delta: f64,
    /// `α − (−β − 1/2 + γ/2)`.
    pub linear_slack: f64,
    /// `(−2 + 11β − γ + 3√Δ)/16 − α`, `None` when `Δ < 0`.
    pub upper_slack: Option<f64>,
    /// `α − (−2 + 11β − γ − 3√Δ)/16`, `None` when `Δ < 0`.
    pub lower_slack: Option<f64>,
}

impl ConeDiagnostics {
    pub fn evaluate(p: FamilyPoint) -> Self {
        let FamilyPoint { alpha, beta, gamma } = p;
        let delta = 4.0 + 9.0 * beta * beta + 4.0 * gamma
            - 7.0 * gamma * gamma
            - 6.0 * beta * (2.0 + gamma);
        let base = -2.0 + 11.0 * beta - gamma;
        let (upper_slack, lower_slack) = if delta >= 0.0 {
            let r = 3.0 * delta.sqrt();
            (
                Some((base + r) / 16.0 - alpha),
                Some(alpha - (base - r) / 16.0),
            )
        } else {
            (None, None)
        };
        Self {
            delta,
            linear_slack: alpha - (-beta - 0.5 + gamma / 2.0),
            upper_slack,
            lower_slack,
        }
    }

    /// PPT verdict of the reference surfaces in the orientation that agrees
    /// with the eigenvalue oracle inside the pyramid:
    /// `α ≥ −β − 1/2 + γ/2`, `α ≥ lower branch`, `α ≤ upper branch`.
    pub fn reference_cone_ppt(&self, tol: f64) -> bool {
        match (self.upper_slack, self.lower_slack) {
            (Some(u), Some(l)) => self.linear_slack >= -tol && u >= -tol && l >= -tol,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PptReport {
    pub ppt: bool,
    pub pt_min_eig: f64,
    pub cone: ConeDiagnostics,
}

/// PPT test on a family state. The eigenvalue oracle decides; the reference
/// cone inequalities are only logged.
pub fn is_ppt(p: FamilyPoint) -> Result<PptReport> {
    let margin = pyramid_margin(p);
    if margin < -MARGIN_TOL {
        return Err(Error::NotAState(p, margin));
    }
    let pt_min_eig = pt_min_eig(p);
    let cone = ConeDiagnostics::evaluate(p);
    let ppt = pt_min_eig >= -PPT_TOL;
    debug!(
        "is_ppt {p}: pt_min_eig={pt_min_eig:e} ppt={ppt} cone={:?} reference_cone_ppt={}",
        cone,
        cone.reference_cone_ppt(1e-12)
    );
    Ok(PptReport {
        ppt,
        pt_min_eig,
        cone,
    })
}

/// Horodecki line: `α = (6−b)/21`, `β = −2b/21`, `γ = (5−2b)/7`, `b ∈ [0, 5]`.
pub fn horodecki_point(b: f64) -> Result<FamilyPoint> {
    if !(0.0..=5.0).contains(&b) {
        return Err(Error::OutOfRange(format!(
            "Horodecki parameter b = {b} outside [0, 5]"
        )));
    }
    Ok(FamilyPoint::new(
        (6.0 - b) / 21.0,
        -2.0 * b / 21.0,
        (5.0 - 2.0 * b) / 7.0,
    ))
}

pub fn horodecki_gamma(b: f64) -> f64 {
    (5.0 - 2.0 * b) / 7.0
}

pub fn horodecki_b(gamma: f64) -> f64 {
    (5.0 - 7.0 * gamma) / 2.0
}

/// Boundary-plane starting points:
/// `α = (1+γ+ε)/6`, `β = (−5+7γ+ε)/21`.
pub fn plane_point(eps: f64, gamma: f64) -> FamilyPoint {
    FamilyPoint::new(
        (1.0 + gamma + eps) / 6.0,
        (-5.0 + 7.0 * gamma + eps) / 21.0,
        gamma,
    )
}

/// Known label of a Horodecki-line state.
///
/// `b ∈ [2, 5]` follows the original labels (separable on `[2,3]`, bound on
/// `(3,4]`, NPT on `(4,5]`); `b < 2` is obtained from the `γ` form of the
/// same result through the mirror `b ↔ 5 − b`.
pub fn horodecki_classification(b: f64) -> Result<Verdict> {
    horodecki_point(b)?;
    let g = horodecki_gamma(b).abs();
    let verdict = if g <= 1.0 / 7.0 {
        Verdict::Separable
    } else if g <= 3.0 / 7.0 {
        Verdict::BoundEntangled
    } else {
        Verdict::NptEntangled
    };
    Ok(verdict)
}

/// Plain bisection for a sign change `f(good) ≥ 0 > f(bad)`.
///
/// Returns the bracket `(good, bad)` after shrinking it below `tol`.
pub(crate) fn bisect_sign_change(
    mut good: f64,
    mut bad: f64,
    tol: f64,
    mut f: impl FnMut(f64) -> f64,
) -> (f64, f64) {
    while (bad - good).abs() > tol {
        let mid = 0.5 * (good + bad);
        if mid == good || mid == bad {
            break;
        }
        if f(mid) >= 0.0 {
            good = mid;
        } else {
            bad = mid;
        }
    }
    (good, bad)
}

/// `γ` at which `plane_point(ε, γ)` leaves the PPT set, found by bisection on
/// the partial-transpose oracle. The returned value is on the PPT side.
pub fn ppt_boundary_on_plane(eps: f64, tol: f64) -> Result<f64> {
    let lo = 0.0;
    let hi = ((5.0 - eps) / 7.0).min(1.0);
    let f = |g: f64| {
        let p = plane_point(eps, g);
        if is_state(p) {
            pt_min_eig(p)
        } else {
            -1.0
        }
    };
    if f(lo) < 0.0 || f(hi) >= 0.0 {
        return Err(Error::OutOfRange(format!(
            "no PPT boundary crossing on the boundary plane for eps = {eps}"
        )));
    }
    Ok(bisect_sign_change(lo, hi, tol, f).0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn family_state_examples() {
        let mm = family_state(FamilyPoint::MAXIMALLY_MIXED);
        assert!((&mm - &ComplexMatrix::identity(9).scale(1.0 / 9.0)).frobenius_norm() < 1e-15);

        let p00 = family_state(FamilyPoint::new(1.0, 0.0, 0.0));
        assert!((&p00 - qutrit_bell(0, 0)).frobenius_norm() < 1e-15);

        let line = family_state(FamilyPoint::new(0.0, 0.0, 1.0));
        let want = (0..3)
            .map(|n| qutrit_bell(n, 1).scale(1.0 / 3.0))
            .fold(ComplexMatrix::zeros(9), |acc, m| &acc + &m);
        assert!((&line - &want).frobenius_norm() < 1e-15);
    }

    #[test]
    fn bell_spectrum_examples() {
        let s = bell_spectrum(FamilyPoint::MAXIMALLY_MIXED);
        assert!(s.weights().iter().all(|&q| close(q, 1.0 / 9.0, 1e-16)));
        let s = bell_spectrum(FamilyPoint::new(1.0, 0.0, 0.0));
        assert_eq!(s.get(0, 0), 1.0);
        assert!(s.weights()[1..].iter().all(|&q| q == 0.0));
    }

    #[test]
    fn bell_spectrum_matches_eigensolver_on_horodecki_start() {
        let g = 1.0 / 7.0;
        let p = FamilyPoint::new((1.0 + g) / 6.0, (-5.0 + 7.0 * g) / 21.0, g);
        let eig = family_state(p).hermitian_eigenvalues().unwrap();
        for (a, b) in bell_spectrum(p).sorted().iter().zip(&eig.eigenvalues) {
            assert!(close(*a, *b, 1e-10), "{a} vs {b}");
        }
    }

    #[test]
    fn pyramid_examples() {
        assert!(close(
            pyramid_margin(FamilyPoint::MAXIMALLY_MIXED),
            1.0 / 8.0,
            1e-16
        ));
        assert!(close(
            pyramid_margin(FamilyPoint::new(1.0, 0.0, 0.0)),
            0.0,
            1e-16
        ));
        let bad = FamilyPoint::new(2.0, 0.0, 0.0);
        assert!(pyramid_margin(bad) < 0.0);
        assert!(family_state(bad).smallest_eigenvalue().unwrap() < 0.0);
    }

    #[test]
    fn ppt_examples() {
        assert!(is_ppt(FamilyPoint::MAXIMALLY_MIXED).unwrap().ppt);
        let r = is_ppt(FamilyPoint::new(1.0, 0.0, 0.0)).unwrap();
        assert!(!r.ppt);
        assert!(close(r.pt_min_eig, -1.0 / 3.0, 1e-12));
        assert!(matches!(
            is_ppt(FamilyPoint::new(2.0, 0.0, 0.0)),
            Err(Error::NotAState(..))
        ));
    }

    #[test]
    fn horodecki_edge_of_ppt() {
        let at = horodecki_point(1.0).unwrap();
        assert!(close(at.gamma, 3.0 / 7.0, 1e-15));
        assert!(close(pt_min_eig(at), 0.0, 1e-8));
        let beyond = horodecki_point(horodecki_b(3.0 / 7.0 + 0.01)).unwrap();
        assert!(!is_ppt(beyond).unwrap().ppt);
    }

    #[test]
    fn horodecki_points() {
        let p = horodecki_point(2.5).unwrap();
        assert!(close(p.alpha, 1.0 / 6.0, 1e-15) && close(p.beta, -5.0 / 21.0, 1e-15));
        assert_eq!(p.gamma, 0.0);
        let p = horodecki_point(0.0).unwrap();
        assert!(
            close(p.alpha, 2.0 / 7.0, 1e-15) && p.beta == 0.0 && close(p.gamma, 5.0 / 7.0, 1e-15)
        );
        let p = horodecki_point(5.0).unwrap();
        assert!(close(p.alpha, 1.0 / 21.0, 1e-15));
        assert!(close(p.beta, -10.0 / 21.0, 1e-15));
        assert!(close(p.gamma, -5.0 / 7.0, 1e-15));
        assert!(horodecki_point(-0.1).is_err());
        assert!(horodecki_point(5.1).is_err());
        for b in [0.0, 1.3, 2.5, 4.9] {
            assert!(horodecki_point(b).unwrap().boundary_plane_offset().abs() < 1e-14);
        }
    }

    #[test]
    fn plane_point_reduces_to_horodecki() {
        let a = plane_point(0.0, 0.0);
        let b = horodecki_point(2.5).unwrap();
        assert!(close(a.alpha, b.alpha, 1e-15) && close(a.beta, b.beta, 1e-15));
        let tip = plane_point(-0.25, 0.25);
        assert!(close(tip.alpha, 1.0 / 6.0, 1e-15));
        assert!(close(tip.beta, -3.5 / 21.0, 1e-15));
        assert!(tip.boundary_plane_offset().abs() < 1e-14);
    }

    #[test]
    fn horodecki_labels() {
        assert_eq!(
            horodecki_classification(4.5).unwrap(),
            Verdict::NptEntangled
        );
        assert_eq!(
            horodecki_classification(3.5).unwrap(),
            Verdict::BoundEntangled
        );
        assert_eq!(
            horodecki_classification(1.5).unwrap(),
            Verdict::BoundEntangled
        );
        assert_eq!(horodecki_classification(2.0).unwrap(), Verdict::Separable);
        assert_eq!(horodecki_classification(3.0).unwrap(), Verdict::Separable);
        assert_eq!(
            horodecki_classification(4.0).unwrap(),
            Verdict::BoundEntangled
        );
        assert_eq!(
            horodecki_classification(0.5).unwrap(),
            Verdict::NptEntangled
        );
        assert!(horodecki_classification(6.0).is_err());
    }

    #[test]
    fn mirror_maps_known_pairs() {
        for b in [0.0, 0.7, 1.5, 2.5, 3.9] {
            let m = horodecki_point(b).unwrap().mirrored();
            let want = horodecki_point(5.0 - b).unwrap();
            assert!(close(m.alpha, want.alpha, 1e-15));
            assert!(close(m.beta, want.beta, 1e-15));
            assert!(close(m.gamma, want.gamma, 1e-15));
        }
        let m = plane_point(0.1, 0.3).mirrored();
        let want = plane_point(0.1, -0.3);
        assert!(close(m.alpha, want.alpha, 1e-15) && close(m.beta, want.beta, 1e-15));
    }

    #[test]
    fn ppt_boundary_crossing_on_plane() {
        let eps = 0.1;
        let g = ppt_boundary_on_plane(eps, 1e-13).unwrap();
        // Closed form of the crossing with the curve beta = (-4 + 3g + sqrt(4 - 3g^2))/9.
        let want = (9.0 - 26.0 * eps - 3.0 * eps * eps).sqrt() / 7.0;
        assert!(close(g, want, 1e-9), "{g} vs {want}");
        assert!(pt_min_eig(plane_point(eps, g)) >= -PPT_TOL);
    }
}
