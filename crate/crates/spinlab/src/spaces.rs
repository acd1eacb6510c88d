//! The three constant-curvature model geometries and their spinor calculus.
//!
//! Each space carries a global orthonormal frame `(e₁, e₂, e₃)` in which the
//! spinor bundle of every level trivialises with *constant* connection
//! coefficient matrices `Cᵢ`, so that `∇_{eᵢ} = ∂_{eᵢ} + Cᵢ`:
//!
//! * `S3` — the unit quaternions with the bi-invariant round metric
//!   (`scal = 6`).  The frame is the left-invariant one generated by the
//!   `σᵢ`; its flow through `p` is `t ↦ p·exp(t σᵢ)` and `Cᵢ = ½σᵢ`.
//! * `H3` — the upper half-space `x¹ > 0` with metric `(x¹)⁻²Σ(dxⁱ)²` and
//!   frame `eᵢ = x¹∂ᵢ` (`scal = −6`).  Here `C₁ = 0`, `C₂ = −½σ₃`,
//!   `C₃ = +½σ₂`.
//! * `R3` — flat Euclidean space with the coordinate frame and `Cᵢ = 0`.
//!
//! [`SpinorField`] is a small algebra of closed-form sections — constants,
//! translates `x ↦ π(x⁻¹)ψ` on the sphere, power-exponential solutions on
//! the half-space, affine families on flat space, constant matrices applied
//! pointwise, rotating-coefficient applications, and linear combinations —
//! that is closed under frame differentiation.  Every derivative used
//! anywhere in the crate is therefore exact; [`fd_oracle`] provides the
//! independent central-difference check along the frame flows.
//!
//! Curvature enters in two forms: the commutator curvature of the bundle
//! connection, `−(κ/4)·π([e_k,e_l]_𝔤)` with `κ = scal/6` and the fibrewise
//! bracket `[e_k,e_l]_𝔤 = 2ε_{klm}e_m`, and the symmetric curvature action
//! assembled from the frame and the Ricci endomorphism, which on these
//! spaces is the scalar `scal·N(N+2)/24`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::su2::{epsilon, frame_bracket, Irrep, SpinLabel};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One of the three model geometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    S3,
    H3,
    R3,
}

impl std::fmt::Display for Space {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Space::S3 => write!(f, "S3"),
            Space::H3 => write!(f, "H3"),
            Space::R3 => write!(f, "R3"),
        }
    }
}

impl Space {
    /// Scalar curvature: `6`, `−6`, `0`.
    pub fn scalar_curvature(self) -> f64 {
        match self {
            Space::S3 => 6.0,
            Space::H3 => -6.0,
            Space::R3 => 0.0,
        }
    }

    /// Sectional curvature `κ = scal/6`.
    pub fn sectional_curvature(self) -> f64 {
        self.scalar_curvature() / 6.0
    }

    /// The Killing numbers realised on this space; they satisfy
    /// `scal = 24μ²` (`±½` on the sphere, `±i/2` on the half-space, `0`
    /// on flat space).
    pub fn admissible_killing_numbers(self) -> Vec<Complex64> {
        match self {
            Space::S3 => vec![linalg::re(0.5), linalg::re(-0.5)],
            Space::H3 => vec![0.5 * I, -0.5 * I],
            Space::R3 => vec![Complex64::default()],
        }
    }

    /// Errors unless `mu` is one of the admissible Killing numbers.
    pub fn check_killing_number(self, mu: Complex64) -> Result<()> {
        if self
            .admissible_killing_numbers()
            .iter()
            .any(|&m| (m - mu).norm() < 1e-12)
        {
            Ok(())
        } else {
            Err(Error::InadmissibleKillingNumber {
                space: self.to_string(),
                mu: mu.to_string(),
            })
        }
    }

    /// Lie bracket of the frame *vector fields*, `[e_k, e_l] = Σ_m c_m e_m`.
    ///
    /// On the sphere this coincides with the fibrewise bracket `2ε_{klm}`;
    /// on the half-space `[e₁,e₂] = e₂` and `[e₁,e₃] = e₃`; flat frames
    /// commute.
    pub fn frame_lie_bracket(self, k: usize, l: usize) -> [f64; 3] {
        match self {
            Space::S3 => frame_bracket(k, l),
            Space::H3 => {
                let mut c = [0.0; 3];
                if k == 0 && l > 0 {
                    c[l] = 1.0;
                } else if l == 0 && k > 0 {
                    c[k] = -1.0;
                }
                c
            }
            Space::R3 => [0.0; 3],
        }
    }

    /// Levi-Civita coefficients of the frame: `∇_{e_a} e_k = Σ_m c_m e_m`.
    pub fn levi_civita(self, a: usize, k: usize) -> [f64; 3] {
        let mut c = [0.0; 3];
        match self {
            Space::S3 => {
                for (m, cm) in c.iter_mut().enumerate() {
                    *cm = epsilon(a, k, m);
                }
            }
            Space::H3 => {
                // ∇_{e₁} kills the whole frame; for a ∈ {2,3}:
                // ∇_{e_a} e₁ = −e_a and ∇_{e_a} e_a = e₁.
                if a > 0 && k == 0 {
                    c[a] = -1.0;
                } else if a > 0 && k == a {
                    c[0] = 1.0;
                }
            }
            Space::R3 => {}
        }
        c
    }
}

/// A point of the unit 3-sphere, stored as a unit quaternion
/// `w + x σ₁ + y σ₂ + z σ₃`.
///
/// The component matrices `σᵢ` are the two-dimensional unitary-basis
/// generators, so [`S3Point::matrix`] is the corresponding special-unitary
/// 2×2 matrix and quaternion multiplication matches matrix multiplication.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S3Point {
    q: [f64; 4],
}

impl S3Point {
    pub fn identity() -> S3Point {
        S3Point { q: [1.0, 0.0, 0.0, 0.0] }
    }

    /// Build from quaternion components, normalising to unit length.
    pub fn from_components(w: f64, x: f64, y: f64, z: f64) -> Result<S3Point> {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        if n < 1e-12 {
            return Err(Error::Config(
                "cannot normalise a near-zero quaternion to a sphere point".into(),
            ));
        }
        Ok(S3Point { q: [w / n, x / n, y / n, z / n] })
    }

    pub fn components(&self) -> [f64; 4] {
        self.q
    }

    /// Hamilton product (σ-convention: `σ₁σ₂ = σ₃`), renormalised.
    pub fn mul(&self, other: &S3Point) -> S3Point {
        let [a, b, c, d] = self.q;
        let [w, x, y, z] = other.q;
        let p = [
            a * w - b * x - c * y - d * z,
            a * x + b * w + c * z - d * y,
            a * y + c * w + d * x - b * z,
            a * z + d * w + b * y - c * x,
        ];
        let n = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]).sqrt();
        S3Point { q: [p[0] / n, p[1] / n, p[2] / n, p[3] / n] }
    }

    pub fn inverse(&self) -> S3Point {
        let [w, x, y, z] = self.q;
        S3Point { q: [w, -x, -y, -z] }
    }

    /// `exp(Σ vᵢσᵢ) = cos‖v‖ + sin‖v‖ · v̂·σ`.
    pub fn exp_vector(v: &[f64; 3]) -> S3Point {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n < 1e-300 {
            return S3Point::identity();
        }
        let s = n.sin() / n;
        S3Point { q: [n.cos(), s * v[0], s * v[1], s * v[2]] }
    }

    /// Inverse of [`S3Point::exp_vector`]: returns `θ·v̂` with `θ ∈ [0, π]`.
    pub fn log_vector(&self) -> [f64; 3] {
        let [w, x, y, z] = self.q;
        let n = (x * x + y * y + z * z).sqrt();
        if n < 1e-300 {
            // ±identity; any axis represents −1 equally well.
            return if w > 0.0 { [0.0; 3] } else { [std::f64::consts::PI, 0.0, 0.0] };
        }
        let theta = n.atan2(w);
        [theta * x / n, theta * y / n, theta * z / n]
    }

    /// The 2×2 special-unitary matrix `w + Σ qᵢσᵢ`.
    pub fn matrix(&self) -> CMat {
        let [w, x, y, z] = self.q;
        CMat::from_row_slice(2, 2, &[
            Complex64::new(w, x),
            Complex64::new(y, z),
            Complex64::new(-y, z),
            Complex64::new(w, -x),
        ])
    }

    /// Recover the quaternion from a special-unitary 2×2 matrix.
    pub fn from_matrix(g: &CMat) -> Result<S3Point> {
        if g.nrows() != 2 || g.ncols() != 2 {
            return Err(Error::Config("sphere points come from 2×2 matrices".into()));
        }
        let p = S3Point::from_components(g[(0, 0)].re, g[(0, 0)].im, g[(0, 1)].re, g[(0, 1)].im)?;
        if linalg::distance(&p.matrix(), g) > 1e-12 {
            return Err(Error::Config("matrix is not special unitary".into()));
        }
        Ok(p)
    }

    /// Adjoint rotation `v ↦ q·v·q⁻¹` on frame coefficients.
    pub fn rotate(&self, v: &[f64; 3]) -> [f64; 3] {
        let [w, x, y, z] = self.q;
        let u = [x, y, z];
        let c1 = cross(&u, v);
        let c2 = cross(&u, &c1);
        [
            v[0] + 2.0 * w * c1[0] + 2.0 * c2[0],
            v[1] + 2.0 * w * c1[1] + 2.0 * c2[1],
            v[2] + 2.0 * w * c1[2] + 2.0 * c2[2],
        ]
    }
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// A point of one of the model spaces.
#[derive(Debug, Clone, PartialEq)]
pub enum Point {
    S3(S3Point),
    H3([f64; 3]),
    R3([f64; 3]),
}

impl Point {
    pub fn space(&self) -> Space {
        match self {
            Point::S3(_) => Space::S3,
            Point::H3(_) => Space::H3,
            Point::R3(_) => Space::R3,
        }
    }

    /// Upper half-space point; requires `x1 > 0`.
    pub fn h3(x1: f64, x2: f64, x3: f64) -> Result<Point> {
        if x1 <= 0.0 {
            return Err(Error::Config(format!(
                "half-space points need a positive first coordinate, got {x1}"
            )));
        }
        Ok(Point::H3([x1, x2, x3]))
    }
}

/// Unit-time-`t` flow of the frame field `e_i` through `p`.
///
/// On the sphere this is right translation by `exp(t σᵢ)`; on the
/// half-space the first frame field scales `x¹` exponentially while the
/// other two shift the flat coordinates at constant speed `x¹`; flat
/// frames translate.
pub fn frame_flow(p: &Point, i: usize, t: f64) -> Point {
    match p {
        Point::S3(q) => {
            let mut v = [0.0; 3];
            v[i] = t;
            Point::S3(q.mul(&S3Point::exp_vector(&v)))
        }
        Point::H3(x) => {
            let mut y = *x;
            if i == 0 {
                y[0] = x[0] * t.exp();
            } else {
                y[i] += t * x[0];
            }
            Point::H3(y)
        }
        Point::R3(x) => {
            let mut y = *x;
            y[i] += t;
            Point::R3(y)
        }
    }
}

/// Draw a point: Haar-like on the sphere (normalised 4-Gaussian),
/// log-uniform `x¹ ∈ [0.1, 10]` with flat `x², x³ ∈ [−5, 5]` on the
/// half-space, uniform `[−5, 5]³` on flat space.
pub fn sample_point<R: rand::Rng>(space: Space, rng: &mut R) -> Point {
    match space {
        Space::S3 => loop {
            let q = [gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)];
            if let Ok(p) = S3Point::from_components(q[0], q[1], q[2], q[3]) {
                return Point::S3(p);
            }
        },
        Space::H3 => {
            let u: f64 = rng.gen_range(-1.0..1.0);
            Point::H3([
                10.0_f64.powf(u),
                rng.gen_range(-5.0..5.0),
                rng.gen_range(-5.0..5.0),
            ])
        }
        Space::R3 => Point::R3([
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
            rng.gen_range(-5.0..5.0),
        ]),
    }
}

fn gaussian<R: rand::Rng>(rng: &mut R) -> f64 {
    let u: f64 = rng.gen_range(1e-12..1.0);
    let v: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    (-2.0 * u.ln()).sqrt() * v.cos()
}

/// Connection coefficient `Cᵢ` of the trivialised spinor bundle at the
/// level of `rep`, so that `∇_{eᵢ} = ∂_{eᵢ} + Cᵢ`.
pub fn spin_connection(space: Space, rep: &Irrep, i: usize) -> CMat {
    let dim = rep.dim();
    match (space, i) {
        (Space::S3, _) => rep.sigma[i].scale(0.5),
        (Space::H3, 1) => rep.sigma[2].scale(-0.5),
        (Space::H3, 2) => rep.sigma[1].scale(0.5),
        _ => CMat::zeros(dim, dim),
    }
}

/// The same coefficient assembled from raw Levi-Civita data:
/// `C_a = ½ Σ_{k,l} g(∇_{e_a}e_k, e_l) · π(e_k ∧ e_l)` with the wedge
/// acting through `π(e_k ∧ e_l) = ½ ε_{klm} σ_m`.
pub fn spin_connection_from_levi_civita(space: Space, rep: &Irrep, a: usize) -> CMat {
    let dim = rep.dim();
    let mut c = CMat::zeros(dim, dim);
    for k in 0..3 {
        let gamma = space.levi_civita(a, k);
        for l in 0..3 {
            for m in 0..3 {
                let w = 0.5 * gamma[l] * 0.5 * epsilon(k, l, m);
                if w != 0.0 {
                    c += rep.sigma[m].scale(w);
                }
            }
        }
    }
    c
}

/// Commutator curvature of the spinor connection:
/// `R(e_k, e_l) = −(κ/4)·π([e_k, e_l]_𝔤)` with `[e_k, e_l]_𝔤 = 2ε_{klm}e_m`.
pub fn bundle_curvature(space: Space, rep: &Irrep, k: usize, l: usize) -> CMat {
    let kappa = space.sectional_curvature();
    rep.of_vector(&frame_bracket(k, l)).scale(-0.25 * kappa)
}

/// The symmetric curvature action on the level of `rep`:
/// `(scal/8)·N(N+2)·Id + ¼·Σᵢ σᵢ·(scal/3)·σᵢ`, which on these Einstein
/// spaces collapses to the scalar `scal·N(N+2)/24`.
pub fn curvature_action(space: Space, rep: &Irrep) -> CMat {
    let n = rep.label.two_s as f64;
    let scal = space.scalar_curvature();
    let dim = rep.dim();
    CMat::identity(dim, dim).scale(scal / 8.0 * n * (n + 2.0))
        + rep.casimir().scale(0.25 * scal / 3.0)
}

/// Memoised `π(x⁻¹)`: family evaluations revisit the same
/// (level, basis, point) triples many times, and a fresh exponential costs
/// an eigendecomposition each time.
fn translation_matrix(rep: &Irrep, q: &S3Point) -> CMat {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    type Key = (u32, u8, [u64; 4]);
    static CACHE: OnceLock<Mutex<HashMap<Key, CMat>>> = OnceLock::new();
    let c = q.components();
    let key = (
        rep.label.two_s,
        rep.basis as u8,
        [c[0].to_bits(), c[1].to_bits(), c[2].to_bits(), c[3].to_bits()],
    );
    let mut map = CACHE
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .expect("translation cache lock");
    if map.len() > (1 << 14) {
        map.clear();
    }
    map.entry(key)
        .or_insert_with(|| rep.exp_of_vector(&q.inverse().log_vector()))
        .clone()
}

/// A closed-form section of a trivialised spinor bundle.
///
/// The family is closed under frame differentiation: [`SpinorField::differentiate`]
/// returns another member, so covariant derivatives of any order stay
/// exact.  Variants:
///
/// * `Constant` — the same fibre vector everywhere (any space).
/// * `ConjTranslate` — `x ↦ π(x⁻¹)ψ` on the sphere; its frame derivative
///   is `−σᵢ` applied pointwise.
/// * `PowerExp` — `(x, z = x²+ix³) ↦ x^{∓H/2}·exp(i·w·(E or F))·ψ` on the
///   half-space, with `w = z` for `sign = +1` and `w = z̄` for `sign = −1`;
///   frame derivatives are the constant matrices `∓½H`, `i·E/F`, `∓E/F`.
/// * `AffineTwistor` — `x ↦ u + π(Σxᵢeᵢ)v` on flat space.
/// * `Applied` — a constant matrix applied pointwise to a base field
///   (possibly changing the level); nested applications merge eagerly.
/// * `AdjointApplied` — `Σ_m (P·Ad(x⁻¹)c)_m · M_m · base(x)` on the
///   sphere: three constant maps contracted against the frame components
///   of a right-invariant vector field with axis `c`.  Differentiation
///   updates the pre-matrix `P ↦ −P·ad(σᵢ)` by the product rule.
/// * `Combo` — finite linear combinations with constant coefficients.
#[derive(Debug, Clone)]
pub enum SpinorField {
    Constant {
        space: Space,
        rep: Irrep,
        psi: CVec,
    },
    ConjTranslate {
        rep: Irrep,
        psi: CVec,
    },
    PowerExp {
        rep: Irrep,
        psi: CVec,
        sign: i32,
    },
    AffineTwistor {
        rep: Irrep,
        u: CVec,
        v: CVec,
    },
    Applied {
        rep: Irrep,
        matrix: CMat,
        base: Box<SpinorField>,
    },
    AdjointApplied {
        rep: Irrep,
        pre: [[f64; 3]; 3],
        axis: [f64; 3],
        maps: [CMat; 3],
        base: Box<SpinorField>,
    },
    Combo {
        terms: Vec<(Complex64, SpinorField)>,
    },
}

/// `ad(σᵢ)` on frame coefficients: `(ad σᵢ)_{km} = 2ε_{imk}`.
fn ad_matrix(i: usize) -> [[f64; 3]; 3] {
    let mut a = [[0.0; 3]; 3];
    for (k, row) in a.iter_mut().enumerate() {
        for (m, entry) in row.iter_mut().enumerate() {
            *entry = 2.0 * epsilon(i, m, k);
        }
    }
    a
}

fn mat3_mul(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut c = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for (k, bk) in b.iter().enumerate() {
                c[i][j] += a[i][k] * bk[j];
            }
        }
    }
    c
}

fn mat3_apply(a: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        a[0][0] * v[0] + a[0][1] * v[1] + a[0][2] * v[2],
        a[1][0] * v[0] + a[1][1] * v[1] + a[1][2] * v[2],
        a[2][0] * v[0] + a[2][1] * v[1] + a[2][2] * v[2],
    ]
}

impl SpinorField {
    pub fn constant(space: Space, rep: &Irrep, psi: CVec) -> SpinorField {
        assert_eq!(psi.len(), rep.dim());
        SpinorField::Constant { space, rep: rep.clone(), psi }
    }

    pub fn zero(space: Space, rep: &Irrep) -> SpinorField {
        SpinorField::constant(space, rep, CVec::zeros(rep.dim()))
    }

    pub fn conj_translate(rep: &Irrep, psi: CVec) -> SpinorField {
        assert_eq!(psi.len(), rep.dim());
        SpinorField::ConjTranslate { rep: rep.clone(), psi }
    }

    /// Half-space solution family; `sign = +1` uses `x^{−H/2}·exp(izE)`,
    /// `sign = −1` uses `x^{+H/2}·exp(iz̄F)`.
    pub fn power_exp(rep: &Irrep, psi: CVec, sign: i32) -> Result<SpinorField> {
        if sign != 1 && sign != -1 {
            return Err(Error::Config(format!("power-exp sign must be ±1, got {sign}")));
        }
        assert_eq!(psi.len(), rep.dim());
        Ok(SpinorField::PowerExp { rep: rep.clone(), psi, sign })
    }

    pub fn affine_twistor(rep: &Irrep, u: CVec, v: CVec) -> SpinorField {
        assert_eq!(u.len(), rep.dim());
        assert_eq!(v.len(), rep.dim());
        SpinorField::AffineTwistor { rep: rep.clone(), u, v }
    }

    /// Apply a constant matrix pointwise, merging nested applications and
    /// distributing over combinations.  The matrix may change the level;
    /// the target representation keeps the base field's basis.
    pub fn applied(matrix: CMat, base: SpinorField) -> SpinorField {
        assert_eq!(matrix.ncols(), base.dim());
        match base {
            SpinorField::Applied { matrix: inner, base: b, .. } => {
                SpinorField::applied(matrix * inner, *b)
            }
            SpinorField::Combo { terms } => SpinorField::combo(
                terms
                    .into_iter()
                    .map(|(c, t)| (c, SpinorField::applied(matrix.clone(), t)))
                    .collect(),
            ),
            _ => {
                let rep = if matrix.nrows() == base.dim() {
                    base.rep().clone()
                } else {
                    Irrep::build(SpinLabel::new(matrix.nrows() as u32 - 1), base.rep().basis)
                };
                SpinorField::Applied { rep, matrix, base: Box::new(base) }
            }
        }
    }

    /// Contract three constant maps against the frame components
    /// `Ad(x⁻¹)·axis` of the right-invariant vector field with the given
    /// axis (sphere only).
    pub fn adjoint_applied(maps: &[CMat; 3], axis: [f64; 3], base: SpinorField) -> SpinorField {
        assert_eq!(base.space(), Space::S3);
        for m in maps {
            assert_eq!(m.ncols(), base.dim());
            assert_eq!(m.nrows(), maps[0].nrows());
        }
        let label = SpinLabel::new(maps[0].nrows() as u32 - 1);
        let rep = Irrep::build(label, base.rep().basis);
        let identity = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        SpinorField::AdjointApplied {
            rep,
            pre: identity,
            axis,
            maps: maps.clone(),
            base: Box::new(base),
        }
    }

    /// Linear combination; nested combinations flatten.
    pub fn combo(terms: Vec<(Complex64, SpinorField)>) -> SpinorField {
        let mut flat = Vec::new();
        let mut stack: Vec<(Complex64, SpinorField)> = terms;
        while let Some((c, t)) = stack.pop() {
            match t {
                SpinorField::Combo { terms: inner } => {
                    for (ci, ti) in inner {
                        stack.push((c * ci, ti));
                    }
                }
                other => flat.push((c, other)),
            }
        }
        assert!(!flat.is_empty(), "empty field combination");
        let dim = flat[0].1.dim();
        let space = flat[0].1.space();
        for (_, t) in &flat {
            assert_eq!(t.dim(), dim);
            assert_eq!(t.space(), space);
        }
        if flat.len() == 1 && flat[0].0 == linalg::re(1.0) {
            return flat.pop().unwrap().1;
        }
        SpinorField::Combo { terms: flat }
    }

    pub fn scaled(self, c: Complex64) -> SpinorField {
        SpinorField::combo(vec![(c, self)])
    }

    pub fn space(&self) -> Space {
        match self {
            SpinorField::Constant { space, .. } => *space,
            SpinorField::ConjTranslate { .. } | SpinorField::AdjointApplied { .. } => Space::S3,
            SpinorField::PowerExp { .. } => Space::H3,
            SpinorField::AffineTwistor { .. } => Space::R3,
            SpinorField::Applied { base, .. } => base.space(),
            SpinorField::Combo { terms } => terms[0].1.space(),
        }
    }

    /// The representation at the field's own level.
    pub fn rep(&self) -> &Irrep {
        match self {
            SpinorField::Constant { rep, .. }
            | SpinorField::ConjTranslate { rep, .. }
            | SpinorField::PowerExp { rep, .. }
            | SpinorField::AffineTwistor { rep, .. }
            | SpinorField::Applied { rep, .. }
            | SpinorField::AdjointApplied { rep, .. } => rep,
            SpinorField::Combo { terms } => terms[0].1.rep(),
        }
    }

    pub fn two_s(&self) -> u32 {
        self.rep().label.two_s
    }

    pub fn dim(&self) -> usize {
        self.rep().dim()
    }

    /// Evaluate the section at a point of its space.
    pub fn value(&self, p: &Point) -> CVec {
        match self {
            SpinorField::Constant { psi, .. } => psi.clone(),
            SpinorField::ConjTranslate { rep, psi } => {
                let Point::S3(q) = p else { panic!("sphere field evaluated off the sphere") };
                translation_matrix(rep, q) * psi
            }
            SpinorField::PowerExp { rep, psi, sign } => {
                let Point::H3(x) = p else { panic!("half-space field evaluated elsewhere") };
                let w = Complex64::new(x[1], *sign as f64 * x[2]);
                let nilpotent = if *sign == 1 { &rep.e } else { &rep.f };
                let mut out = linalg::exp_nilpotent_apply(I * w, nilpotent, psi);
                for (k, entry) in out.iter_mut().enumerate() {
                    let h = rep.h[(k, k)].re;
                    *entry *= x[0].powf(-(*sign as f64) * h / 2.0);
                }
                out
            }
            SpinorField::AffineTwistor { rep, u, v } => {
                let Point::R3(x) = p else { panic!("flat field evaluated off flat space") };
                u + rep.of_vector(x) * v
            }
            SpinorField::Applied { matrix, base, .. } => matrix * base.value(p),
            SpinorField::AdjointApplied { pre, axis, maps, base, rep } => {
                let Point::S3(q) = p else { panic!("sphere field evaluated off the sphere") };
                let beta = mat3_apply(pre, &q.inverse().rotate(axis));
                let bv = base.value(p);
                let mut out = CVec::zeros(rep.dim());
                for (m, map) in maps.iter().enumerate() {
                    out += (map * &bv).scale(beta[m]);
                }
                out
            }
            SpinorField::Combo { terms } => {
                let mut out = CVec::zeros(self.dim());
                for (c, t) in terms {
                    out += t.value(p).map(|z| z * c);
                }
                out
            }
        }
    }

    /// Exact frame derivative `∂_{e_i}` as another closed-form field.
    pub fn differentiate(&self, i: usize) -> SpinorField {
        match self {
            SpinorField::Constant { space, rep, .. } => SpinorField::zero(*space, rep),
            SpinorField::ConjTranslate { rep, .. } => {
                SpinorField::applied(rep.sigma[i].scale(-1.0), self.clone())
            }
            SpinorField::PowerExp { rep, sign, .. } => {
                let s = *sign as f64;
                let generator = match i {
                    0 => rep.h.scale(-0.5 * s),
                    1 => (if s > 0.0 { &rep.e } else { &rep.f }).map(|z| z * I),
                    _ => (if s > 0.0 { &rep.e } else { &rep.f }).scale(-s),
                };
                SpinorField::applied(generator, self.clone())
            }
            SpinorField::AffineTwistor { rep, v, .. } => SpinorField::Constant {
                space: Space::R3,
                rep: rep.clone(),
                psi: &rep.sigma[i] * v,
            },
            SpinorField::Applied { matrix, base, .. } => {
                SpinorField::applied(matrix.clone(), base.differentiate(i))
            }
            SpinorField::AdjointApplied { rep, pre, axis, maps, base } => {
                let rotated = SpinorField::AdjointApplied {
                    rep: rep.clone(),
                    pre: mat3_mul(pre, &ad_matrix(i)),
                    axis: *axis,
                    maps: maps.clone(),
                    base: base.clone(),
                };
                let moved = SpinorField::AdjointApplied {
                    rep: rep.clone(),
                    pre: *pre,
                    axis: *axis,
                    maps: maps.clone(),
                    base: Box::new(base.differentiate(i)),
                };
                SpinorField::combo(vec![(linalg::re(-1.0), rotated), (linalg::re(1.0), moved)])
            }
            SpinorField::Combo { terms } => SpinorField::combo(
                terms.iter().map(|(c, t)| (*c, t.differentiate(i))).collect(),
            ),
        }
    }

    /// Covariant frame derivative `∇_{e_i} = ∂_{e_i} + Cᵢ` as a field.
    pub fn covariant_derivative(&self, i: usize) -> SpinorField {
        let connection = spin_connection(self.space(), self.rep(), i);
        SpinorField::combo(vec![
            (linalg::re(1.0), self.differentiate(i)),
            (linalg::re(1.0), SpinorField::applied(connection, self.clone())),
        ])
    }

    /// `∇_{e_i}(field)(p)` evaluated directly.
    pub fn covariant_value(&self, i: usize, p: &Point) -> CVec {
        self.differentiate(i).value(p)
            + spin_connection(self.space(), self.rep(), i) * self.value(p)
    }
}

/// Central-difference approximation of `∇_{e_i}(field)(p)`: numeric
/// derivative along the frame flow plus the connection term.  Exists only
/// to validate the closed-form derivatives.
pub fn fd_oracle(field: &SpinorField, p: &Point, i: usize, h: f64) -> CVec {
    let plus = field.value(&frame_flow(p, i, h));
    let minus = field.value(&frame_flow(p, i, -h));
    (plus - minus).unscale(2.0 * h)
        + spin_connection(field.space(), field.rep(), i) * field.value(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordTriple;
    use crate::su2::Basis;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rep(two_s: u32, basis: Basis) -> Irrep {
        Irrep::build(SpinLabel::new(two_s), basis)
    }

    fn random_vec<R: Rng>(dim: usize, rng: &mut R) -> CVec {
        CVec::from_iterator(
            dim,
            (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))),
        )
    }

    fn random_s3<R: Rng>(rng: &mut R) -> S3Point {
        match sample_point(Space::S3, rng) {
            Point::S3(q) => q,
            _ => unreachable!(),
        }
    }

    /// A battery of closed forms on each space, rich enough to exercise
    /// every variant and every derivative rule.
    fn battery(space: Space, basis: Basis, rng: &mut ChaCha8Rng) -> Vec<SpinorField> {
        let r3 = rep(3, basis);
        match space {
            Space::S3 => {
                let constant = SpinorField::constant(space, &r3, random_vec(4, rng));
                let translate = SpinorField::conj_translate(&r3, random_vec(4, rng));
                let applied = SpinorField::applied(r3.sigma[0].clone(), translate.clone());
                let triple = CliffordTriple::build(SpinLabel::new(3)).unwrap();
                let raised = SpinorField::adjoint_applied(
                    &triple.raise,
                    [0.3, -1.0, 0.7],
                    translate.clone(),
                );
                let combo = SpinorField::combo(vec![
                    (Complex64::new(0.5, 0.25), constant.clone()),
                    (Complex64::new(-1.0, 2.0), translate.clone()),
                ]);
                vec![constant, translate, applied, raised, combo]
            }
            Space::H3 => {
                let up = SpinorField::power_exp(&r3, random_vec(4, rng), 1).unwrap();
                let down = SpinorField::power_exp(&r3, random_vec(4, rng), -1).unwrap();
                let applied = SpinorField::applied(r3.sigma[1].clone(), up.clone());
                vec![up, down, applied]
            }
            Space::R3 => {
                let constant = SpinorField::constant(space, &r3, random_vec(4, rng));
                let twistor = SpinorField::affine_twistor(&r3, random_vec(4, rng), random_vec(4, rng));
                vec![constant, twistor]
            }
        }
    }

    #[test]
    fn quaternion_algebra_matches_two_by_two_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let two = rep(1, Basis::Unitary);
        for _ in 0..20 {
            let a = random_s3(&mut rng);
            let b = random_s3(&mut rng);
            assert!(linalg::distance(&a.mul(&b).matrix(), &(a.matrix() * b.matrix())) < 1e-12);
            assert!(linalg::distance(&a.inverse().matrix(), &a.matrix().adjoint()) < 1e-12);
            let g = a.matrix();
            assert!(linalg::distance(&(g.adjoint() * &g), &CMat::identity(2, 2)) < 1e-12);
            let det = g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)];
            assert!((det - linalg::re(1.0)).norm() < 1e-12);
            let recovered = S3Point::from_matrix(&g).unwrap();
            assert!(linalg::distance(&recovered.matrix(), &g) < 1e-12);

            // exp/log round trip realises the point in every level; at
            // doubled weight 1 it is the matrix itself.
            assert!(linalg::distance(&two.exp_of_vector(&a.log_vector()), &g) < 1e-10);

            // the adjoint rotation is matrix conjugation on the σ-span
            let v = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let rotated = a.rotate(&v);
            let lhs = &g * two.of_vector(&v) * a.inverse().matrix();
            assert!(linalg::distance(&lhs, &two.of_vector(&rotated)) < 1e-10);
        }
    }

    #[test]
    fn frame_flows_compose_and_hit_known_targets() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for space in [Space::S3, Space::H3, Space::R3] {
            for _ in 0..10 {
                let p = sample_point(space, &mut rng);
                for i in 0..3 {
                    let s = rng.gen_range(-0.8..0.8);
                    let t = rng.gen_range(-0.8..0.8);
                    let one = frame_flow(&frame_flow(&p, i, s), i, t);
                    let two = frame_flow(&p, i, s + t);
                    match (one, two) {
                        (Point::S3(a), Point::S3(b)) => {
                            assert!(linalg::distance(&a.matrix(), &b.matrix()) < 1e-10)
                        }
                        (Point::H3(a), Point::H3(b)) | (Point::R3(a), Point::R3(b)) => {
                            for k in 0..3 {
                                assert!((a[k] - b[k]).abs() < 1e-9, "{a:?} vs {b:?}");
                            }
                        }
                        _ => panic!("flow changed the space"),
                    }
                }
            }
        }
        // half a great circle lands at the antipode
        let antipode = frame_flow(&Point::S3(S3Point::identity()), 0, std::f64::consts::PI);
        let Point::S3(q) = antipode else { unreachable!() };
        assert!(linalg::distance(&q.matrix(), &CMat::identity(2, 2).scale(-1.0)) < 1e-12);
        // exponential stretching of the first half-space coordinate
        let doubled = frame_flow(&Point::h3(1.0, 0.0, 0.0).unwrap(), 0, 2.0_f64.ln());
        assert_eq!(doubled, Point::H3([2.0, 0.0, 0.0]));
    }

    #[test]
    fn levi_civita_tables_are_torsion_free_metric_and_koszul() {
        for space in [Space::S3, Space::H3, Space::R3] {
            for a in 0..3 {
                for k in 0..3 {
                    let fwd = space.levi_civita(a, k);
                    let bwd = space.levi_civita(k, a);
                    let bracket = space.frame_lie_bracket(a, k);
                    for m in 0..3 {
                        // torsion-freeness: ∇_a e_k − ∇_k e_a = [e_a, e_k]
                        assert!((fwd[m] - bwd[m] - bracket[m]).abs() < 1e-14);
                    }
                    // metric compatibility: g(∇_a e_k, e_l) antisymmetric in (k,l)
                    for l in 0..3 {
                        let flip = space.levi_civita(a, l);
                        assert!((fwd[l] + flip[k]).abs() < 1e-14);
                    }
                    // Koszul formula for an orthonormal frame:
                    // 2g(∇_a e_k, e_l) = g([e_a,e_k],e_l) − g([e_k,e_l],e_a) + g([e_l,e_a],e_k)
                    for l in 0..3 {
                        let koszul = space.frame_lie_bracket(a, k)[l]
                            - space.frame_lie_bracket(k, l)[a]
                            + space.frame_lie_bracket(l, a)[k];
                        assert!((2.0 * fwd[l] - koszul).abs() < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn half_space_frame_brackets_match_numeric_commutators() {
        // coordinate components of e_i = x¹∂_i
        let component = |i: usize, x: &[f64; 3], k: usize| if i == k { x[0] } else { 0.0 };
        let x = [1.7, -0.4, 2.3];
        let h = 1e-6;
        for i in 0..3 {
            for j in 0..3 {
                let mut numeric = [0.0; 3];
                for (k, nk) in numeric.iter_mut().enumerate() {
                    for m in 0..3 {
                        let mut xp = x;
                        let mut xm = x;
                        xp[m] += h;
                        xm[m] -= h;
                        let dj = (component(j, &xp, k) - component(j, &xm, k)) / (2.0 * h);
                        let di = (component(i, &xp, k) - component(i, &xm, k)) / (2.0 * h);
                        *nk += component(i, &x, m) * dj - component(j, &x, m) * di;
                    }
                }
                let expected = Space::H3.frame_lie_bracket(i, j);
                for k in 0..3 {
                    // frame coefficients scale by x¹ to become coordinate ones
                    assert!((numeric[k] - expected[k] * x[0]).abs() < 1e-7);
                }
            }
        }
    }

    #[test]
    fn spin_connection_assembles_from_levi_civita_data() {
        for space in [Space::S3, Space::H3, Space::R3] {
            for basis in [Basis::Unitary, Basis::Triangular] {
                for two_s in [1, 2, 3, 6] {
                    let r = rep(two_s, basis);
                    for a in 0..3 {
                        let table = spin_connection(space, &r, a);
                        let assembled = spin_connection_from_levi_civita(space, &r, a);
                        assert!(
                            linalg::distance(&table, &assembled) < 1e-12,
                            "{space} direction {a} twoS {two_s}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_derivatives_match_the_difference_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let h = 1e-4;
        for space in [Space::S3, Space::H3, Space::R3] {
            for basis in [Basis::Unitary, Basis::Triangular] {
                for field in battery(space, basis, &mut rng) {
                    for _ in 0..34 {
                        let p = sample_point(space, &mut rng);
                        let i = rng.gen_range(0..3);
                        let exact = field.covariant_value(i, &p);
                        let numeric = fd_oracle(&field, &p, i, h);
                        let scale = 1.0 + exact.norm();
                        assert!(
                            (exact - numeric).norm() / scale < 1e-6,
                            "{space} {basis} direction {i}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn difference_oracle_converges_at_second_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let r3 = rep(3, Basis::Unitary);
        let field = SpinorField::conj_translate(&r3, random_vec(4, &mut rng));
        let p = Point::S3(S3Point::identity());
        let exact = field.covariant_value(1, &p);
        assert!((&exact - fd_oracle(&field, &p, 1, 1e-4)).norm() < 1e-7);
        let errors: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
            .iter()
            .map(|&h| (&exact - fd_oracle(&field, &p, 1, h)).norm())
            .collect();
        for pair in errors.windows(2) {
            let ratio = pair[0] / pair[1];
            assert!((3.5..4.5).contains(&ratio), "halving h should quarter the error: {errors:?}");
        }
    }

    #[test]
    fn curvature_action_is_the_expected_scalar() {
        for space in [Space::S3, Space::H3, Space::R3] {
            for two_s in [0u32, 1, 2, 3, 7] {
                let r = rep(two_s, Basis::Unitary);
                let n = two_s as f64;
                let expected = CMat::identity(r.dim(), r.dim())
                    .scale(space.scalar_curvature() * n * (n + 2.0) / 24.0);
                let q = curvature_action(space, &r);
                assert!(linalg::distance(&q, &expected) < 1e-10);
                for s in &r.sigma {
                    assert!(linalg::distance(&(&q * s), &(s * &q)) < 1e-10);
                }
            }
        }
        // spot values: ¼N(N+2) on the sphere, −15/4 at N=3 on the half-space
        let r3 = rep(3, Basis::Unitary);
        assert!((curvature_action(Space::S3, &r3)[(0, 0)] - linalg::re(15.0 / 4.0)).norm() < 1e-12);
        assert!(
            (curvature_action(Space::H3, &r3)[(0, 0)] - linalg::re(-15.0 / 4.0)).norm() < 1e-12
        );
        assert!(curvature_action(Space::R3, &r3).norm() < 1e-14);
    }

    #[test]
    fn covariant_commutators_realise_the_bundle_curvature() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        for space in [Space::S3, Space::H3, Space::R3] {
            for field in battery(space, Basis::Unitary, &mut rng) {
                let r = field.rep().clone();
                for k in 0..3 {
                    for l in 0..3 {
                        let second = field.covariant_derivative(l).covariant_derivative(k);
                        let swapped = field.covariant_derivative(k).covariant_derivative(l);
                        let bracket = space.frame_lie_bracket(k, l);
                        let curvature = bundle_curvature(space, &r, k, l);
                        for _ in 0..5 {
                            let p = sample_point(space, &mut rng);
                            let mut lhs = second.value(&p) - swapped.value(&p);
                            for (m, c) in bracket.iter().enumerate() {
                                if *c != 0.0 {
                                    lhs -= field.covariant_value(m, &p).scale(*c);
                                }
                            }
                            let rhs = &curvature * field.value(&p);
                            let scale = 1.0 + rhs.norm();
                            assert!(
                                (lhs - rhs).norm() / scale < 1e-8,
                                "{space} pair ({k},{l})"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sphere_connection_preserves_the_pairing() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let r3 = rep(3, Basis::Unitary);
        let phi = SpinorField::conj_translate(&r3, random_vec(4, &mut rng));
        let psi = SpinorField::combo(vec![
            (linalg::re(1.0), SpinorField::constant(Space::S3, &r3, random_vec(4, &mut rng))),
            (Complex64::new(0.0, 0.5), SpinorField::conj_translate(&r3, random_vec(4, &mut rng))),
        ]);
        let h = 1e-5;
        for _ in 0..30 {
            let p = sample_point(Space::S3, &mut rng);
            for i in 0..3 {
                let fwd = linalg::inner(
                    &phi.value(&frame_flow(&p, i, h)),
                    &psi.value(&frame_flow(&p, i, h)),
                );
                let bwd = linalg::inner(
                    &phi.value(&frame_flow(&p, i, -h)),
                    &psi.value(&frame_flow(&p, i, -h)),
                );
                let numeric = (fwd - bwd) / (2.0 * h);
                let exact = linalg::inner(&phi.covariant_value(i, &p), &psi.value(&p))
                    + linalg::inner(&phi.value(&p), &psi.covariant_value(i, &p));
                assert!((numeric - exact).norm() < 1e-6);
            }
        }
    }

    #[test]
    fn killing_numbers_square_to_the_scalar_curvature() {
        for space in [Space::S3, Space::H3, Space::R3] {
            for mu in space.admissible_killing_numbers() {
                assert!((24.0 * mu * mu - linalg::re(space.scalar_curvature())).norm() < 1e-14);
                space.check_killing_number(mu).unwrap();
            }
            assert!(space.check_killing_number(Complex64::new(0.3, 0.0)).is_err());
        }
        assert!(Space::S3.check_killing_number(0.5 * I).is_err());
        assert!(Space::H3.check_killing_number(linalg::re(0.5)).is_err());
        assert!(Space::R3.check_killing_number(linalg::re(0.5)).is_err());
    }

    #[test]
    fn applied_fields_merge_and_change_level() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let r3 = rep(3, Basis::Unitary);
        let base = SpinorField::conj_translate(&r3, random_vec(4, &mut rng));
        let triple = CliffordTriple::build(SpinLabel::new(3)).unwrap();
        let raised = SpinorField::applied(triple.raise[0].clone(), base.clone());
        assert_eq!(raised.two_s(), 5);
        assert_eq!(raised.space(), Space::S3);
        // merged application stays a single layer
        let twice = SpinorField::applied(
            CliffordTriple::build(SpinLabel::new(5)).unwrap().raise[1].clone(),
            raised,
        );
        assert_eq!(twice.two_s(), 7);
        assert!(matches!(
            &twice,
            SpinorField::Applied { base, .. } if matches!(**base, SpinorField::ConjTranslate { .. })
        ));
        let p = sample_point(Space::S3, &mut rng);
        assert!(twice.value(&p).norm() > 0.0);
    }
}
