//! Weyl operators, two-qudit Bell projectors and the `U_nm ⊗ U_{-n,m}`
//! decomposition used by the witness feasibility test.
//!
//! Dimension `d` is generic here. Index `-n` is always represented as
//! `(d - n) mod d`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;

/// Residual below which an operator counts as lying in the tensor span.
pub const SPAN_TOL: f64 = 1e-10;

/// Phase-space coordinate `(n, m)` of a Weyl operator in dimension `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeylIndex {
    n: usize,
    m: usize,
    d: usize,
}

impl WeylIndex {
    pub fn new(n: usize, m: usize, d: usize) -> Result<Self> {
        if d < 2 || n >= d || m >= d {
            return Err(Error::InvalidWeylIndex { n, m, d });
        }
        Ok(Self { n, m, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `(-n mod d, m)`, the partner index on the second factor.
    pub fn partner(&self) -> Self {
        Self {
            n: (self.d - self.n) % self.d,
            m: self.m,
            d: self.d,
        }
    }

    /// All `d²` indices in `(n, m)` row-major order.
    pub fn all(d: usize) -> impl Iterator<Item = WeylIndex> {
        (0..d).flat_map(move |n| (0..d).map(move |m| WeylIndex { n, m, d }))
    }
}

fn root_of_unity(power: usize, d: usize) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * (power % d) as f64 / d as f64)
}

/// `U_nm = Σ_k ω^{kn} |k⟩⟨k+m mod d|` with `ω = e^{2πi/d}`.
pub fn weyl_operator(idx: WeylIndex) -> ComplexMatrix {
    let d = idx.d;
    let mut u = ComplexMatrix::zeros(d);
    for k in 0..d {
        u[(k, (k + idx.m) % d)] = root_of_unity(k * idx.n, d);
    }
    u
}

/// `U_nm ⊗ U_{-n,m}`, the operator basis of the witness feasibility test.
pub fn weyl_tensor(idx: WeylIndex) -> ComplexMatrix {
    weyl_operator(idx).kron(&weyl_operator(idx.partner()))
}

/// `|φ⁺_d⟩ = d^{-1/2} Σ_j |j⟩⊗|j⟩` as a state vector.
pub fn max_entangled_vector(d: usize) -> Vec<Complex64> {
    let amp = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
    let mut v = vec![Complex64::new(0.0, 0.0); d * d];
    for j in 0..d {
        v[j * d + j] = amp;
    }
    v
}

/// Projector onto `|φ⁺_d⟩`.
pub fn max_entangled_state(d: usize) -> ComplexMatrix {
    ComplexMatrix::projector(&max_entangled_vector(d))
}

/// Bell projector `P_nm = (U_nm ⊗ 𝟙)|φ⁺⟩⟨φ⁺|(U_nm† ⊗ 𝟙)`.
pub fn bell_projector(idx: WeylIndex) -> ComplexMatrix {
    let d = idx.d;
    let local = weyl_operator(idx).kron(&ComplexMatrix::identity(d));
    let phi = max_entangled_vector(d);
    // (U ⊗ 𝟙)|φ⁺⟩ is a column of the projector; build it directly.
    let v: Vec<Complex64> = (0..d * d)
        .map(|r| (0..d * d).map(|c| local[(r, c)] * phi[c]).sum())
        .collect();
    ComplexMatrix::projector(&v)
}

/// Coefficients `t_nm` of an operator in the span of `U_nm ⊗ U_{-n,m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylCoefficients {
    d: usize,
    coeffs: Vec<Complex64>,
    residual: f64,
}

impl WeylCoefficients {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, n: usize, m: usize) -> Complex64 {
        self.coeffs[n * self.d + m]
    }

    /// `(n, m, t_nm)` in row-major index order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, &t)| (i / self.d, i % self.d, t))
    }

    /// Hilbert–Schmidt norm of the part outside the span.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn in_span(&self) -> bool {
        self.residual <= SPAN_TOL
    }

    /// Identity coefficient `t_00`.
    pub fn identity_part(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `max_{(n,m) ≠ (0,0)} |t_nm|`.
    pub fn max_off_identity(&self) -> f64 {
        self.coeffs[1..]
            .iter()
            .map(|t| t.norm())
            .fold(0.0, f64::max)
    }

    /// Coefficient-wise complex conjugate (residual carried over).
    pub fn conjugated(&self) -> Self {
        Self {
            d: self.d,
            coeffs: self.coeffs.iter().map(|t| t.conj()).collect(),
            residual: self.residual,
        }
    }

    /// `Σ t_nm U_nm ⊗ U_{-n,m}`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = self.d * self.d;
        let mut out = ComplexMatrix::zeros(dim);
        for idx in WeylIndex::all(self.d) {
            let t = self.get(idx.n, idx.m);
            if t == Complex64::new(0.0, 0.0) {
                continue;
            }
            out = &out + &weyl_tensor(idx).scale_complex(t);
        }
        out
    }

    /// `[n, m, re, im]` rows for JSON dumps.
    pub fn to_rows(&self) -> Vec<(usize, usize, f64, f64)> {
        self.iter().map(|(n, m, t)| (n, m, t.re, t.im)).collect()
    }
}

/// `t_nm = d^{-2} Tr[(U_nm ⊗ U_{-n,m})† C]`.
///
/// The `1/d²` comes from `Tr[(U⊗U')†(U⊗U')] = d²`.
pub fn weyl_tensor_decompose(c: &ComplexMatrix, d: usize) -> Result<WeylCoefficients> {
    if d < 2 || c.dim() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "operator of dimension {} is not a {}x{} bipartite operator",
            c.dim(),
            d,
            d
        )));
    }
    let norm = 1.0 / (d * d) as f64;
    let coeffs: Vec<Complex64> = WeylIndex::all(d)
        .map(|idx| weyl_tensor(idx).hs_inner(c).map(|z| z * norm))
        .collect::<Result<_>>()?;
    let mut w = WeylCoefficients {
        d,
        coeffs,
        residual: 0.0,
    };
    w.residual = (c - &w.reconstruct()).frobenius_norm();
    Ok(w)
}

/// Rebuilds an operator from explicit coefficients (used for mirrored witnesses).
pub fn from_coefficients(d: usize, coeffs: Vec<Complex64>) -> Result<WeylCoefficients> {
    if coeffs.len() != d * d {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for d = {}",
            coeffs.len(),
            d
        )));
    }
    Ok(WeylCoefficients {
        d,
        coeffs,
        residual: 0.0,
    })
}
