//! Irreducible representations of SU(2) in explicit matrix form.
//!
//! A representation is labelled by its doubled highest weight `twoS = N`;
//! the dimension is `N + 1`. Odd `N` is half-integral spin `j = (N−1)/2`,
//! even `N` is integral spin `j = N/2`. Generators come in two forms:
//!
//! * the triangular sl(2) triple `H, E, F` with `[H,E] = 2E`, `[H,F] = −2F`,
//!   `[E,F] = H`, where `H` is diagonal with weights `N, N−2, …, −N`;
//! * three skew generators `σ₁ = iH`, `σ₂ = E − F`, `σ₃ = i(E + F)`
//!   satisfying the quaternion relations `[σ₁,σ₂] = 2σ₃` (cyclic) and
//!   `Σᵢ σᵢ² = −N(N+2)·Id`.
//!
//! Two normalisations of the ladder entries are provided: `Unitary` makes
//! every `σᵢ` skew-Hermitian (`E* = F`), `Triangular` puts integers
//! `k(N+1−k)` on the superdiagonal of `E` and ones on the subdiagonal of
//! `F`, which is the convention in which the hyperbolic solution tables
//! have integer coefficients.

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, I};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Doubled highest weight of an irreducible SU(2) representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpinLabel {
    pub two_s: u32,
}

impl SpinLabel {
    pub fn new(two_s: u32) -> Self {
        SpinLabel { two_s }
    }

    /// Dimension of the representation space.
    pub fn dim(self) -> usize {
        self.two_s as usize + 1
    }

    /// True for half-integral spin (odd doubled weight).
    pub fn is_half_integral(self) -> bool {
        self.two_s % 2 == 1
    }

    /// The spin as a float, `twoS / 2`.
    pub fn spin(self) -> f64 {
        self.two_s as f64 / 2.0
    }

    /// Label two levels up.
    pub fn raised(self) -> SpinLabel {
        SpinLabel::new(self.two_s + 2)
    }

    /// Label two levels down, if it exists.
    pub fn lowered(self) -> Option<SpinLabel> {
        self.two_s.checked_sub(2).map(SpinLabel::new)
    }
}

impl std::fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.two_s % 2 == 0 {
            write!(f, "{}", self.two_s / 2)
        } else {
            write!(f, "{}/2", self.two_s)
        }
    }
}

/// Normalisation convention of the ladder matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `E` superdiagonal `√(k(N+1−k))`, `F = Eᵀ`; all `σᵢ` skew-Hermitian.
    Unitary,
    /// `E` superdiagonal `k(N+1−k)`, `F` subdiagonal all ones.
    Triangular,
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Basis::Unitary => write!(f, "unitary"),
            Basis::Triangular => write!(f, "triangular"),
        }
    }
}

/// Explicit generator matrices of one irreducible representation.
#[derive(Debug, Clone)]
pub struct Irrep {
    pub label: SpinLabel,
    pub basis: Basis,
    pub h: CMat,
    pub e: CMat,
    pub f: CMat,
    pub sigma: [CMat; 3],
}

impl Irrep {
    /// Build the representation with doubled weight `label.two_s`.
    pub fn build(label: SpinLabel, basis: Basis) -> Irrep {
        let n = label.two_s as usize;
        let dim = label.dim();
        let mut h = CMat::zeros(dim, dim);
        let mut e = CMat::zeros(dim, dim);
        let mut f = CMat::zeros(dim, dim);
        for k in 0..dim {
            h[(k, k)] = linalg::re(n as f64 - 2.0 * k as f64);
        }
        for k in 1..dim {
            let prod = (k * (n + 1 - k)) as f64;
            match basis {
                Basis::Unitary => {
                    e[(k - 1, k)] = linalg::re(prod.sqrt());
                    f[(k, k - 1)] = linalg::re(prod.sqrt());
                }
                Basis::Triangular => {
                    e[(k - 1, k)] = linalg::re(prod);
                    f[(k, k - 1)] = linalg::re(1.0);
                }
            }
        }
        let sigma1 = h.map(|z| z * I);
        let sigma2 = &e - &f;
        let sigma3 = (&e + &f).map(|z| z * I);
        Irrep {
            label,
            basis,
            h,
            e,
            f,
            sigma: [sigma1, sigma2, sigma3],
        }
    }

    pub fn dim(&self) -> usize {
        self.label.dim()
    }

    /// Diagonal weights of `H`, in basis order `N, N−2, …, −N`.
    pub fn weights(&self) -> Vec<f64> {
        (0..self.dim()).map(|k| self.h[(k, k)].re).collect()
    }

    /// Image of a real tangent vector, `Σᵢ xᵢ σᵢ`.
    pub fn of_vector(&self, x: &[f64; 3]) -> CMat {
        self.of_cvector(&[linalg::re(x[0]), linalg::re(x[1]), linalg::re(x[2])])
    }

    /// Image of a complexified tangent vector.
    pub fn of_cvector(&self, x: &[Complex64; 3]) -> CMat {
        let mut m = CMat::zeros(self.dim(), self.dim());
        for (xi, s) in x.iter().zip(self.sigma.iter()) {
            m += s.map(|z| z * xi);
        }
        m
    }

    /// The Casimir element `Σᵢ σᵢ²`.
    pub fn casimir(&self) -> CMat {
        let mut c = CMat::zeros(self.dim(), self.dim());
        for s in &self.sigma {
            c += s * s;
        }
        c
    }

    /// Casimir eigenvalue, after checking the matrix is scalar to `tol`.
    ///
    /// Returns `−N(N+2)` up to rounding; errors if `Σσᵢ²` has an
    /// off-scalar part larger than `tol` in Frobenius norm.
    pub fn casimir_scalar(&self, tol: f64) -> Result<Complex64> {
        let c = self.casimir();
        let dim = self.dim();
        let mean = c.trace() / linalg::re(dim as f64);
        let residual = (&c - CMat::identity(dim, dim).map(|z| z * mean)).norm();
        if residual > tol {
            return Err(Error::NotScalar { residual, tol });
        }
        Ok(mean)
    }

    /// Group element `exp(Σᵢ cᵢ σᵢ)` in this representation.
    ///
    /// In the unitary basis the argument is skew-Hermitian and the
    /// exponential is taken by unitary diagonalisation; the triangular
    /// basis routes through its diagonal change of basis to the unitary
    /// one first.
    pub fn exp_of_vector(&self, c: &[f64; 3]) -> CMat {
        match self.basis {
            Basis::Unitary => linalg::exp_skew_hermitian(&self.of_vector(c)),
            Basis::Triangular => {
                let (unitary, s) = self.change_basis(Basis::Unitary);
                let s_inv = invert_diagonal(&s);
                let exp_u = linalg::exp_skew_hermitian(&unitary.of_vector(c));
                &s_inv * exp_u * &s
            }
        }
    }

    /// Rebuild in `target` normalisation together with the diagonal change
    /// of basis `S` satisfying `S · A_self · S⁻¹ = A_target` for every
    /// generator `A`.
    pub fn change_basis(&self, target: Basis) -> (Irrep, CMat) {
        let rebuilt = Irrep::build(self.label, target);
        let dim = self.dim();
        let mut d = CVec::zeros(dim);
        d[0] = linalg::re(1.0);
        for k in 1..dim {
            let src = self.e[(k - 1, k)];
            let tgt = rebuilt.e[(k - 1, k)];
            d[k] = d[k - 1] * src / tgt;
        }
        (rebuilt, CMat::from_diagonal(&d))
    }
}

/// Inverse of a diagonal matrix.
fn invert_diagonal(s: &CMat) -> CMat {
    let d = CVec::from_iterator(s.nrows(), (0..s.nrows()).map(|k| s[(k, k)].inv()));
    CMat::from_diagonal(&d)
}

/// Structure constants of the frame bracket: `[e_k, e_l] = 2 ε_{klm} e_m`.
///
/// Returns the coordinates of the bracket of the `k`-th and `l`-th frame
/// vectors (0-indexed).
pub fn frame_bracket(k: usize, l: usize) -> [f64; 3] {
    let mut out = [0.0; 3];
    for m in 0..3 {
        out[m] = 2.0 * epsilon(k, l, m);
    }
    out
}

/// Totally antisymmetric symbol with `ε₀₁₂ = 1`.
pub fn epsilon(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}
