//! Geometric witness construction along lines toward the maximally mixed
//! state, the Weyl-coefficient feasibility test, `λ_min` searches and the
//! named witness planes.
//!
//! For a PPT start `ρ` and `ρ_λ = λρ + (1−λ)𝟙/9` the candidate is
//!
//! ```text
//! C_λ = ρ_λ − ρ − ⟨ρ_λ, ρ_λ − ρ⟩ 𝟙
//! ```
//!
//! which vanishes on `ρ_λ` and is negative on `ρ`. It is certified as a
//! witness when its coefficients in the `U_nm ⊗ U_{−n,m}` basis satisfy
//! `max_{(n,m)≠(0,0)} |t_nm| ≤ t₀₀/(d−1)`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use log::{debug, warn};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{
    bisect_sign_change, family_state, is_ppt, plane_point, ppt_boundary_on_plane, pt_min_eig,
    FamilyPoint,
};
use crate::qmat::{ComplexMatrix, INPUT_HERMITIAN_TOL};
use crate::weyl::{from_coefficients, weyl_tensor_decompose, WeylCoefficients};

/// Default bisection tolerance in `λ`.
pub const LAMBDA_TOL: f64 = 1e-9;
/// A witness "fires" when `Tr(Cρ)` is below minus this value.
pub const DETECTION_TOL: f64 = 1e-10;
/// Relative slack on `|c_nm| ≤ 1`.
const COEFF_SLACK: f64 = 1e-12;
/// Reference and constructed plane coefficients may differ by this much.
const PLANE_AGREEMENT_TOL: f64 = 1e-6;

/// A line `ρ_λ = λ·start + (1−λ)·𝟙/9` with a PPT starting point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineSpec {
    start: FamilyPoint,
    lambda: f64,
}

impl LineSpec {
    pub fn new(start: FamilyPoint, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::OutOfRange(format!(
                "lambda = {lambda} outside [0, 1]"
            )));
        }
        ensure_ppt(start)?;
        Ok(Self { start, lambda })
    }

    pub fn start(&self) -> FamilyPoint {
        self.start
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }
}

fn ensure_ppt(p: FamilyPoint) -> Result<()> {
    let r = is_ppt(p)?;
    if !r.ppt {
        return Err(Error::NotPpt(p, r.pt_min_eig));
    }
    Ok(())
}

pub fn line_state(l: &LineSpec) -> ComplexMatrix {
    let rho = family_state(l.start);
    let mixed = ComplexMatrix::identity(9).scale((1.0 - l.lambda) / 9.0);
    &rho.scale(l.lambda) + &mixed
}

/// Outcome of the Weyl-coefficient feasibility test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FeasibilityVerdict {
    /// Some scale `a` in the interval writes the operator with all
    /// `|c_nm| ≤ 1` and `c₀₀ ∈ [0, 1]`.
    Feasible {
        a_interval: (f64, f64),
    },
    Infeasible,
    /// The operator has a component outside the `U_nm ⊗ U_{−n,m}` span.
    NotInSpan {
        residual: f64,
    },
}

impl FeasibilityVerdict {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityVerdict::Feasible { .. })
    }
}

/// Feasibility from precomputed coefficients.
///
/// Writing `C = a((d−1)𝟙 + c₀₀𝟙 + Σ' c_nm U_nm ⊗ U_{−n,m})` gives
/// `t₀₀ = a(d−1+c₀₀)` and `t_nm = a·c_nm`. The expectation on a product
/// state is at least `a(d−1+c₀₀) − a(d−1)·max'|c_nm|`, which is why `c₀₀`
/// must stay in `[0, 1]`: then `a ∈ [t₀₀/d, t₀₀/(d−1)]` and `a ≥ max'|t_nm|`.
pub fn feasibility_verdict(coeffs: &WeylCoefficients) -> FeasibilityVerdict {
    if !coeffs.in_span() {
        return FeasibilityVerdict::NotInSpan {
            residual: coeffs.residual(),
        };
    }
    let d = coeffs.d() as f64;
    let t00 = coeffs.identity_part();
    if t00.im.abs() > 1e-12 || t00.re <= 0.0 {
        return FeasibilityVerdict::Infeasible;
    }
    let upper = t00.re / (d - 1.0);
    let needed = coeffs.max_off_identity();
    if needed > upper * (1.0 + COEFF_SLACK) {
        return FeasibilityVerdict::Infeasible;
    }
    let lower = needed.max(t00.re / d).min(upper);
    FeasibilityVerdict::Feasible {
        a_interval: (lower, upper),
    }
}

/// Feasibility test on a Hermitian `d²×d²` operator.
pub fn check_feasibility(c: &ComplexMatrix) -> Result<FeasibilityVerdict> {
    let asym = c.max_hermitian_asymmetry();
    if asym > INPUT_HERMITIAN_TOL {
        return Err(Error::NotHermitian(asym));
    }
    let d = (c.dim() as f64).sqrt().round() as usize;
    let coeffs = weyl_tensor_decompose(c, d)?;
    Ok(feasibility_verdict(&coeffs))
}

/// A Hermitian operator with its Weyl coefficients and feasibility verdict.
#[derive(Debug, Clone)]
pub struct WitnessCandidate {
    matrix: ComplexMatrix,
    coeffs: WeylCoefficients,
    verdict: FeasibilityVerdict,
}

impl WitnessCandidate {
    pub fn from_matrix(matrix: ComplexMatrix) -> Result<Self> {
        let asym = matrix.max_hermitian_asymmetry();
        if asym > INPUT_HERMITIAN_TOL {
            return Err(Error::NotHermitian(asym));
        }
        let d = (matrix.dim() as f64).sqrt().round() as usize;
        let coeffs = weyl_tensor_decompose(&matrix, d)?;
        let verdict = feasibility_verdict(&coeffs);
        Ok(Self {
            matrix,
            coeffs,
            verdict,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn coeffs(&self) -> &WeylCoefficients {
        &self.coeffs
    }

    pub fn verdict(&self) -> FeasibilityVerdict {
        self.verdict
    }

    pub fn feasible(&self) -> bool {
        self.verdict.is_feasible()
    }

    pub fn a_interval(&self) -> Option<(f64, f64)> {
        match self.verdict {
            FeasibilityVerdict::Feasible { a_interval } => Some(a_interval),
            _ => None,
        }
    }

    /// Witness with complex-conjugated Weyl coefficients. For family starts
    /// this is the candidate built from the mirrored start point.
    pub fn mirrored(&self) -> Result<Self> {
        let conj = self.coeffs.conjugated();
        let rebuilt = from_coefficients(conj.d(), conj.iter().map(|(_, _, t)| t).collect())?;
        Self::from_matrix(rebuilt.reconstruct())
    }

    /// `Re Tr(C ρ)`.
    pub fn value(&self, rho: &ComplexMatrix) -> f64 {
        // Tr(Cρ) = ⟨C†, ρ⟩ = ⟨C, ρ⟩ for Hermitian C.
        self.matrix
            .hs_inner(rho)
            .expect("witness and state share the 9x9 dimension")
            .re
    }

    pub fn value_at(&self, p: FamilyPoint) -> f64 {
        self.value(&family_state(p))
    }

    /// `⟨a⊗b| C |a⊗b⟩` for unit vectors `a`, `b`.
    pub fn product_value(&self, a: &[Complex64], b: &[Complex64]) -> f64 {
        let psi: Vec<Complex64> = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| x * y))
            .collect();
        self.matrix.expectation(&psi).re
    }

    /// `Tr(C ρ(α,β,γ))` as an affine function of the family coordinates.
    pub fn functional(&self) -> AffineFunctional {
        let f0 = self.value_at(FamilyPoint::MAXIMALLY_MIXED);
        AffineFunctional {
            constant: f0,
            alpha: self.value_at(FamilyPoint::new(1.0, 0.0, 0.0)) - f0,
            beta: self.value_at(FamilyPoint::new(0.0, 1.0, 0.0)) - f0,
            gamma: self.value_at(FamilyPoint::new(0.0, 0.0, 1.0)) - f0,
        }
    }
}

/// `constant + alpha·α + beta·β + gamma·γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineFunctional {
    pub constant: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl AffineFunctional {
    pub fn eval(&self, p: FamilyPoint) -> f64 {
        self.constant + self.alpha * p.alpha + self.beta * p.beta + self.gamma * p.gamma
    }

    /// Zero set solved for `α`. `None` if the functional does not depend on `α`.
    pub fn plane(&self) -> Option<PlaneEquation> {
        if self.alpha.abs() < 1e-14 {
            return None;
        }
        Some(PlaneEquation {
            b_coeff: -self.beta / self.alpha,
            g_coeff: -self.gamma / self.alpha,
            constant: -self.constant / self.alpha,
        })
    }
}

/// `C_λ` for `λ ∈ [0, 1)`.
pub fn c_lambda(l: &LineSpec) -> Result<WitnessCandidate> {
    if l.lambda >= 1.0 {
        return Err(Error::LambdaAtLimit);
    }
    let rho = family_state(l.start);
    let rho_l = line_state(l);
    let diff = &rho_l - &rho;
    let shift = rho_l.hs_inner(&diff)?.re;
    let c = &diff - &ComplexMatrix::identity(9).scale(shift);
    WitnessCandidate::from_matrix(c)
}

/// Limit `C_λ / (λ(1−λ))` as `λ → 1`, in closed form `Tr(ρ²)𝟙 − ρ`.
pub fn c_limit(start: FamilyPoint) -> Result<WitnessCandidate> {
    ensure_ppt(start)?;
    let rho = family_state(start);
    let purity = rho.hs_inner(&rho)?.re;
    WitnessCandidate::from_matrix(&ComplexMatrix::identity(9).scale(purity) - &rho)
}

/// Result of a `λ_min` search.
#[derive(Debug, Clone)]
pub struct LambdaMin {
    pub start: FamilyPoint,
    /// Feasible end of the final bisection bracket.
    pub lambda: f64,
    /// `(d−1)·max'|t_nm| / t₀₀` of the limit witness.
    pub closed_form: f64,
    pub probes: usize,
    /// `C_λ` at `lambda`.
    pub witness: WitnessCandidate,
}

/// Smallest `λ` for which `C_λ` passes the feasibility test.
///
/// Off-identity coefficients of `C_λ/(1−λ)` do not depend on `λ` and the
/// identity coefficient grows linearly, so feasibility is monotone. Every
/// probe re-checks that structure and fails loudly if it is broken.
pub fn lambda_min(start: FamilyPoint, tol: f64) -> Result<LambdaMin> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::OutOfRange(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let limit = c_limit(start)?;
    let lim_t00 = limit.coeffs().identity_part().re;
    if lim_t00 <= 1e-14 {
        return Err(Error::NeverFeasible(format!(
            "degenerate line from {start}: C_lambda vanishes identically"
        )));
    }
    if !limit.feasible() {
        return Err(Error::NeverFeasible(format!(
            "limit witness from {start} fails the coefficient test ({:?})",
            limit.verdict()
        )));
    }
    let d = limit.coeffs().d() as f64;
    let closed_form = (d - 1.0) * limit.coeffs().max_off_identity() / lim_t00;

    let mut probes: Vec<(f64, f64)> = Vec::new();
    let mut check = |lambda: f64| -> Result<WitnessCandidate> {
        let cand = c_lambda(&LineSpec { start, lambda })?;
        let norm = 1.0 / (1.0 - lambda);
        for ((_, _, t), (_, _, r)) in cand.coeffs().iter().zip(limit.coeffs().iter()).skip(1) {
            if (t * norm - r).norm() > 1e-9 {
                return Err(Error::MonotonicityViolated {
                    lambda,
                    detail: "off-identity coefficients of C_lambda/(1-lambda) drifted".into(),
                });
            }
        }
        let s00 = cand.coeffs().identity_part().re * norm;
        if (s00 - lambda * lim_t00).abs() > 1e-9 {
            return Err(Error::MonotonicityViolated {
                lambda,
                detail: format!("identity coefficient {s00} is not affine in lambda"),
            });
        }
        for &(l, s) in &probes {
            if (l - lambda) * (s - s00) < -1e-12 {
                return Err(Error::MonotonicityViolated {
                    lambda,
                    detail: format!("identity coefficient decreased between {l} and {lambda}"),
                });
            }
        }
        probes.push((lambda, s00));
        Ok(cand)
    };

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut best: Option<WitnessCandidate> = None;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let cand = check(mid)?;
        if cand.feasible() {
            hi = mid;
            best = Some(cand);
        } else {
            lo = mid;
        }
    }
    let witness = match best {
        Some(w) => w,
        None => check(hi.min(1.0 - tol))?,
    };
    if (hi - closed_form).abs() > tol + 1e-12 {
        return Err(Error::MonotonicityViolated {
            lambda: hi,
            detail: format!("bisection {hi} disagrees with closed form {closed_form}"),
        });
    }
    debug!(
        "lambda_min from {start}: {hi} (closed form {closed_form}, {} probes)",
        probes.len()
    );
    Ok(LambdaMin {
        start,
        lambda: hi,
        closed_form,
        probes: probes.len(),
        witness,
    })
}

/// `ρ¹_plane = plane_point(−1/4, 1/4)`, start of the first witness.
pub fn rho1_plane() -> FamilyPoint {
    plane_point(-0.25, 0.25)
}

/// `ε₀ = (−25 + 7√13)/2`.
pub fn epsilon_tot() -> f64 {
    (-25.0 + 7.0 * 13f64.sqrt()) / 2.0
}

/// `(3 + √13)/8`.
pub fn lambda_tot_exact() -> f64 {
    (3.0 + 13f64.sqrt()) / 8.0
}

/// `7(2328 + 331√39)/32763`.
pub fn lambda_pl3_exact() -> f64 {
    7.0 * (2328.0 + 331.0 * 39f64.sqrt()) / 32763.0
}

/// Reference closed form `√(5 + 11ε/3 − 5ε²/12)/7`; evaluates to ≈ 0.333 at `ε₀` and
/// does not reproduce the stated λ. Kept for diagnostics only.
pub fn reference_gamma_tot(eps: f64) -> f64 {
    (5.0 + 11.0 * eps / 3.0 - 5.0 * eps * eps / 12.0).sqrt() / 7.0
}

/// Start of the global-minimum line: `ε = ε₀` on the PPT boundary of the
/// boundary plane (γ ≈ 0.3456).
pub fn tot_start() -> Result<FamilyPoint> {
    let eps = epsilon_tot();
    Ok(plane_point(eps, ppt_boundary_on_plane(eps, 1e-15)?))
}

/// Point at `γ = 2/7` where the first witness plane meets the PPT boundary
/// inside the pyramid.
pub fn pl3_start() -> Result<FamilyPoint> {
    let gamma = 2.0 / 7.0;
    let pl1 = NamedPlane::Pl1.constructed()?;
    let at = |beta: f64| FamilyPoint::new(pl1.alpha_at(beta, gamma), beta, gamma);
    // The plane crosses the boundary plane at l_a, which is PPT; walking
    // toward larger beta moves into the pyramid until the PPT cone is left.
    let good = 2.0 * (gamma - 1.0) / 9.0;
    let bad = 0.0;
    if pt_min_eig(at(good)) < 0.0 || pt_min_eig(at(bad)) >= 0.0 {
        return Err(Error::OutOfRange(
            "first witness plane does not cross the PPT boundary at gamma = 2/7".into(),
        ));
    }
    let (beta, _) = bisect_sign_change(good, bad, 1e-15, |b| pt_min_eig(at(b)));
    Ok(at(beta))
}

/// `α = b_coeff·β + g_coeff·γ + constant`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneEquation {
    pub b_coeff: f64,
    pub g_coeff: f64,
    pub constant: f64,
}

impl PlaneEquation {
    pub fn alpha_at(&self, beta: f64, gamma: f64) -> f64 {
        self.b_coeff * beta + self.g_coeff * gamma + self.constant
    }

    /// Signed residual `α − RHS(β, γ)`.
    pub fn residual(&self, p: FamilyPoint) -> f64 {
        p.alpha - self.alpha_at(p.beta, p.gamma)
    }

    pub fn max_coeff_diff(&self, other: &PlaneEquation) -> f64 {
        (self.b_coeff - other.b_coeff)
            .abs()
            .max((self.g_coeff - other.g_coeff).abs())
            .max((self.constant - other.constant).abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NamedPlane {
    Pl1,
    Pl2,
    Pl3,
}

impl NamedPlane {
    pub const ALL: [NamedPlane; 3] = [NamedPlane::Pl1, NamedPlane::Pl2, NamedPlane::Pl3];

    /// Reference coefficients, kept for comparison.
    pub fn reference(self) -> PlaneEquation {
        let s13 = 13f64.sqrt();
        let s39 = 39f64.sqrt();
        match self {
            NamedPlane::Pl1 => PlaneEquation {
                b_coeff: 4.0 / 5.0,
                g_coeff: -2.0 / 5.0,
                constant: 2.0 / 5.0,
            },
            NamedPlane::Pl2 => {
                let den = -524.0 + 148.0 * s13;
                let root = (2.0 * epsilon_tot()).sqrt();
                PlaneEquation {
                    b_coeff: -4.0 * (-5.0 + s13) / den,
                    g_coeff: (-94.0 + 26.0 * s13 + 3.0 * (-5.0 + s13) * root) / den,
                    constant: 16.0 * (-7.0 + 2.0 * s13) / den,
                }
            }
            NamedPlane::Pl3 => {
                let den = 150.0 - 18.0 * s39;
                PlaneEquation {
                    b_coeff: (-42.0 + 9.0 * s39) / den,
                    g_coeff: -6.0 * (-5.0 + s39) / den,
                    constant: (24.0 - 2.0 * s39) / den,
                }
            }
        }
    }

    /// The witness whose zero set defines the plane.
    pub fn witness(self) -> Result<WitnessCandidate> {
        match self {
            NamedPlane::Pl1 => c_limit(rho1_plane()),
            NamedPlane::Pl2 => Ok(lambda_min(tot_start()?, LAMBDA_TOL)?.witness),
            NamedPlane::Pl3 => Ok(lambda_min(pl3_start()?, LAMBDA_TOL)?.witness),
        }
    }

    pub fn constructed(self) -> Result<PlaneEquation> {
        Ok(self.resolve()?.constructed)
    }

    /// Cached construction of the plane, its witness and the comparison
    /// against the reference coefficients.
    pub fn resolve(self) -> Result<&'static ResolvedPlane> {
        static CACHE: [OnceLock<std::result::Result<ResolvedPlane, String>>; 3] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        CACHE[self as usize]
            .get_or_init(|| ResolvedPlane::build(self).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| Error::NeverFeasible(format!("{self}: {e}")))
    }
}

impl fmt::Display for NamedPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NamedPlane::Pl1 => "Pl1",
            NamedPlane::Pl2 => "Pl2",
            NamedPlane::Pl3 => "Pl3",
        };
        f.write_str(s)
    }
}

impl FromStr for NamedPlane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pl1" => Ok(NamedPlane::Pl1),
            "pl2" => Ok(NamedPlane::Pl2),
            "pl3" => Ok(NamedPlane::Pl3),
            _ => Err(Error::OutOfRange(format!("unknown plane name {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResolvedPlane {
    pub name: NamedPlane,
    pub reference: PlaneEquation,
    pub constructed: PlaneEquation,
    /// Largest coefficient difference between the two.
    pub discrepancy: f64,
    pub witness: WitnessCandidate,
}

impl ResolvedPlane {
    fn build(name: NamedPlane) -> Result<Self> {
        let witness = name.witness()?;
        let constructed = witness.functional().plane().ok_or_else(|| {
            Error::NeverFeasible(format!("{name} witness is independent of alpha"))
        })?;
        let reference = name.reference();
        let discrepancy = constructed.max_coeff_diff(&reference);
        if discrepancy > PLANE_AGREEMENT_TOL {
            warn!(
                "{name}: reference coefficients {reference:?} differ from the constructed plane \
                 {constructed:?} by {discrepancy:e}; using the constructed plane"
            );
        }
        if constructed.residual(FamilyPoint::MAXIMALLY_MIXED) >= 0.0 {
            return Err(Error::NeverFeasible(format!(
                "{name}: maximally mixed state is not on the negative side"
            )));
        }
        Ok(Self {
            name,
            reference,
            constructed,
            discrepancy,
            witness,
        })
    }

    /// The plane used for residuals (always the constructed one).
    pub fn plane(&self) -> PlaneEquation {
        self.constructed
    }
}

/// Signed residual of `p` against a named plane; negative on the side of the
/// maximally mixed state.
pub fn plane_residual(name: NamedPlane, p: FamilyPoint) -> Result<f64> {
    Ok(name.resolve()?.plane().residual(p))
}

/// Seeded sampler of Haar-random qutrit product states.
pub struct ProductStateSampler {
    rng: ChaCha8Rng,
}

impl ProductStateSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Normalised complex Gaussian vector in dimension 3.
    pub fn unit_vector(&mut self) -> Vec<Complex64> {
        let raw: Vec<Complex64> = (0..3)
            .map(|_| {
                Complex64::new(
                    StandardNormal.sample(&mut self.rng),
                    StandardNormal.sample(&mut self.rng),
                )
            })
            .collect();
        let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        raw.into_iter().map(|z| z / norm).collect()
    }

    pub fn next_pair(&mut self) -> (Vec<Complex64>, Vec<Complex64>) {
        let a = self.unit_vector();
        let b = self.unit_vector();
        (a, b)
    }

    pub fn next_state(&mut self) -> ComplexMatrix {
        let (a, b) = self.next_pair();
        ComplexMatrix::projector(&a).kron(&ComplexMatrix::projector(&b))
    }
}

/// `|a⟩⟨a| ⊗ |b⟩⟨b|` for random unit qutrit vectors, deterministic in `seed`.
pub fn random_product_state(seed: u64) -> ComplexMatrix {
    ProductStateSampler::new(seed).next_state()
}

/// Minimum of `Tr(σC)` over `samples` seeded random product states.
pub fn min_over_product_states(c: &WitnessCandidate, samples: usize, seed: u64) -> f64 {
    let mut sampler = ProductStateSampler::new(seed);
    (0..samples)
        .map(|_| {
            let (a, b) = sampler.next_pair();
            c.product_value(&a, &b)
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::horodecki_point;

    #[test]
    fn line_state_endpoints() {
        let start = rho1_plane();
        let mm = ComplexMatrix::identity(9).scale(1.0 / 9.0);
        let l0 = line_state(&LineSpec::new(start, 0.0).unwrap());
        assert!((&l0 - &mm).frobenius_norm() < 1e-15);
        let l1 = line_state(&LineSpec::new(start, 1.0).unwrap());
        assert!((&l1 - &family_state(start)).frobenius_norm() < 1e-15);
        let half = line_state(&LineSpec::new(start, 0.5).unwrap());
        let avg = (&mm + &family_state(start)).scale(0.5);
        assert!((&half - &avg).frobenius_norm() < 1e-15);
    }

    #[test]
    fn line_spec_rejects_bad_inputs() {
        assert!(matches!(
            LineSpec::new(FamilyPoint::new(1.0, 0.0, 0.0), 0.5),
            Err(Error::NotPpt(..))
        ));
        assert!(LineSpec::new(FamilyPoint::MAXIMALLY_MIXED, 1.5).is_err());
        assert!(matches!(
            c_lambda(&LineSpec::new(rho1_plane(), 1.0).unwrap()),
            Err(Error::LambdaAtLimit)
        ));
    }

    #[test]
    fn degenerate_line_from_maximally_mixed() {
        let c = c_lambda(&LineSpec::new(FamilyPoint::MAXIMALLY_MIXED, 0.7).unwrap()).unwrap();
        assert!(c.matrix().frobenius_norm() < 1e-15);
        assert!(
            c_limit(FamilyPoint::MAXIMALLY_MIXED)
                .unwrap()
                .matrix()
                .frobenius_norm()
                < 1e-15
        );
        assert!(matches!(
            lambda_min(FamilyPoint::MAXIMALLY_MIXED, 1e-9),
            Err(Error::NeverFeasible(_))
        ));
    }

    #[test]
    fn geometric_identities_on_rho1_line() {
        let l = LineSpec::new(rho1_plane(), 0.9).unwrap();
        let c = c_lambda(&l).unwrap();
        let rho_l = line_state(&l);
        let rho = family_state(l.start());
        assert!(c.value(&rho_l).abs() < 1e-12);
        let dist2 = (&rho_l - &rho).frobenius_norm().powi(2);
        assert!(c.value(&rho) < 0.0);
        assert!((c.value(&rho) + dist2).abs() < 1e-12);
    }

    #[test]
    fn horodecki_start_stays_in_span() {
        let l = LineSpec::new(horodecki_point(1.5).unwrap(), 0.95).unwrap();
        assert!(c_lambda(&l).unwrap().coeffs().residual() <= 1e-10);
    }

    #[test]
    fn feasibility_examples() {
        let id = ComplexMatrix::identity(9);
        match check_feasibility(&id).unwrap() {
            FeasibilityVerdict::Feasible { a_interval } => {
                assert!((a_interval.0 - 1.0 / 3.0).abs() < 1e-15);
                assert!((a_interval.1 - 0.5).abs() < 1e-15);
            }
            v => panic!("identity should be feasible, got {v:?}"),
        }
        assert_eq!(
            check_feasibility(&id.scale(-1.0)).unwrap(),
            FeasibilityVerdict::Infeasible
        );
        assert!(c_limit(rho1_plane()).unwrap().feasible());

        let mut off = ComplexMatrix::zeros(9);
        off[(0, 0)] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            check_feasibility(&off).unwrap(),
            FeasibilityVerdict::NotInSpan { .. }
        ));
        let mut skew = ComplexMatrix::identity(9);
        skew[(0, 1)] = Complex64::new(0.0, 1.0);
        assert!(matches!(
            check_feasibility(&skew),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn negative_identity_coefficient_is_not_admissible() {
        // 𝟙 − (W10 + W20) would pass with c00 = −1 but is negative on |00⟩.
        let w10 = crate::weyl::weyl_tensor(crate::weyl::WeylIndex::new(1, 0, 3).unwrap());
        let w20 = crate::weyl::weyl_tensor(crate::weyl::WeylIndex::new(2, 0, 3).unwrap());
        let c = &ComplexMatrix::identity(9) - &(&w10 + &w20);
        assert_eq!(
            check_feasibility(&c).unwrap(),
            FeasibilityVerdict::Infeasible
        );
        let mut e00 = vec![Complex64::new(0.0, 0.0); 3];
        e00[0] = Complex64::new(1.0, 0.0);
        let w = WitnessCandidate::from_matrix(c).unwrap();
        assert!(w.product_value(&e00, &e00) < -0.5);
    }

    #[test]
    fn lambda_min_validates_inputs() {
        assert!(lambda_min(rho1_plane(), 0.0).is_err());
        assert!(matches!(
            lambda_min(FamilyPoint::new(1.0, 0.0, 0.0), 1e-9),
            Err(Error::NotPpt(..))
        ));
    }

    #[test]
    fn sampler_is_deterministic() {
        let a = random_product_state(42);
        let b = random_product_state(42);
        assert_eq!(a, b);
        assert!((a.trace().re - 1.0).abs() < 1e-14);
        assert!(a.smallest_eigenvalue().unwrap() > -1e-14);
        let pt = a.partial_transpose(3, 3).unwrap();
        assert!(pt.smallest_eigenvalue().unwrap() > -1e-14);
        assert_ne!(random_product_state(43), a);
    }

    #[test]
    fn plane_names_parse() {
        assert_eq!("Pl2".parse::<NamedPlane>().unwrap(), NamedPlane::Pl2);
        assert_eq!("pl3".parse::<NamedPlane>().unwrap(), NamedPlane::Pl3);
        assert!("Pl4".parse::<NamedPlane>().is_err());
    }

    #[test]
    fn pl1_residual_examples() {
        let r = plane_residual(NamedPlane::Pl1, FamilyPoint::new(0.4, 0.0, 0.0)).unwrap();
        assert!(r.abs() < 1e-12);
        let r = plane_residual(NamedPlane::Pl1, FamilyPoint::MAXIMALLY_MIXED).unwrap();
        assert!((r + 0.4).abs() < 1e-12);
    }
}
