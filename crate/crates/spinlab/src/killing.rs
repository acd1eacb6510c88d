//! Higher spin Killing spinors: explicit solution families on the three
//! model spaces and machine checks of the operator identities they obey.
//!
//! A section `φ` of the level-`N` bundle (`N = 2j+1` odd) is *Killing with
//! number `μ`* when `∇_X φ = μ·π(X)φ` for every frame field `X`, with
//! `π(eᵢ) = σᵢ`.  The admissible numbers satisfy `scal = 24μ²`: `±½` on the
//! sphere, `±i/2` on the half-space, `0` on flat space.  [`generate`]
//! returns a full solution basis in closed form:
//!
//! * sphere, `μ = +½` — constant sections of the left trivialisation;
//! * sphere, `μ = −½` — translates `x ↦ π(x⁻¹)ψ`;
//! * half-space, `μ = ±i/2` — power-exponential sections
//!   `x^{∓H/2}·exp(i·w·(E|F))·ψ`;
//! * flat space, `μ = 0` — parallel (constant) sections.
//!
//! First-order operators are built from the Clifford maps: the Dirac
//! operator `D = (1/N) Σ σᵢ∇ᵢ`, the raising operator `Σ π⁺(eᵢ)∇ᵢ` and the
//! lowering operator `Σ π⁻(eᵢ)∇ᵢ`.  Killing spinors are `D`-eigensections
//! with eigenvalue `−(N+2)μ` and lie in the kernel of both the raising and
//! lowering operators; equivalently they satisfy the twistor equation
//! `∇_X φ + (1/(N+2))·π(X)(Dφ) = 0` together with the eigensection
//! condition.  The second-order identities checked here decompose the
//! connection Laplacian and the symmetric curvature action into the three
//! squares, and show the two curvature commutators
//! `D∘raise − (N/(N+2))·raise∘D` and `lower∘D − ((N−2)/N)·D∘lower`
//! vanish on constant-curvature spaces.
//!
//! On the sphere, contracting the raising maps with an invariant vector
//! field sends Killing spinors to Killing spinors one level up — constant
//! frame coefficients for `μ = +½`, coefficients `Ad(x⁻¹)c` for `μ = −½`
//! — with the pointwise norm bound
//! `‖raised‖² ≥ (2/(N+2))·‖ξ‖²·‖φ‖²`, which powers the sharp lower bound
//! `λ² ≥ ((N+2)/N)·r₀` for `D²` on the kernel of the lowering operator.

use num_complex::Complex64;

use crate::clifford::CliffordTriple;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::spaces::{Point, Space, SpinorField};
use crate::su2::{Basis, Irrep, SpinLabel};

/// Closed-form basis of the Killing spinor space for an admissible `mu`.
/// The level must be half-integral (odd doubled weight); the family has
/// `N + 1 = 2j + 2` members.
pub fn generate(
    label: SpinLabel,
    basis: Basis,
    space: Space,
    mu: Complex64,
) -> Result<Vec<SpinorField>> {
    if !label.is_half_integral() {
        return Err(Error::NotHalfIntegral(label.two_s));
    }
    space.check_killing_number(mu)?;
    let rep = Irrep::build(label, basis);
    let dim = rep.dim();
    let unit = |k: usize| {
        let mut v = CVec::zeros(dim);
        v[k] = linalg::re(1.0);
        v
    };
    Ok((0..dim)
        .map(|k| match space {
            Space::S3 => {
                if mu.re > 0.0 {
                    SpinorField::constant(space, &rep, unit(k))
                } else {
                    SpinorField::conj_translate(&rep, unit(k))
                }
            }
            Space::H3 => {
                let sign = if mu.im > 0.0 { 1 } else { -1 };
                SpinorField::power_exp(&rep, unit(k), sign).expect("sign is ±1")
            }
            Space::R3 => SpinorField::constant(space, &rep, unit(k)),
        })
        .collect())
}

/// Largest relative defect of the Killing equation over the sample points:
/// `max ‖∇ᵢφ(p) − μ·σᵢ·φ(p)‖ / (1 + ‖φ(p)‖)`.
pub fn killing_residual(field: &SpinorField, mu: Complex64, points: &[Point]) -> f64 {
    let sigma = &field.rep().sigma;
    let covs: Vec<SpinorField> = (0..3).map(|i| field.covariant_derivative(i)).collect();
    let mut worst: f64 = 0.0;
    for p in points {
        let value = field.value(p);
        let scale = 1.0 + value.norm();
        for (i, s) in sigma.iter().enumerate() {
            let defect = covs[i].value(p) - (s * &value).map(|z| z * mu);
            worst = worst.max(defect.norm() / scale);
        }
    }
    worst
}

/// Raising and lowering Clifford maps at one level, similarity-transported
/// into the requested basis (they are produced in the unitary one).
pub fn clifford_maps(label: SpinLabel, basis: Basis) -> Result<([CMat; 3], Option<[CMat; 3]>)> {
    let triple = CliffordTriple::build(label)?;
    match basis {
        Basis::Unitary => Ok((triple.raise, triple.lower)),
        Basis::Triangular => {
            let here = unitary_converter(label, basis);
            let up = unitary_converter(label.raised(), basis)
                .try_inverse()
                .expect("basis conversions are invertible");
            let raise = triple.raise.map(|m| &up * m * &here);
            let lower = match (triple.lower, label.lowered()) {
                (Some(lower), Some(below)) => {
                    let down = unitary_converter(below, basis)
                        .try_inverse()
                        .expect("basis conversions are invertible");
                    Some(lower.map(|m| &down * m * &here))
                }
                _ => None,
            };
            Ok((raise, lower))
        }
    }
}

/// Coordinate change from the given basis into the unitary one (identity
/// when the basis is already unitary).  Norm statements are unitary-basis
/// statements, so vectors are converted through this before taking norms.
pub fn unitary_converter(label: SpinLabel, basis: Basis) -> CMat {
    match basis {
        Basis::Unitary => CMat::identity(label.dim(), label.dim()),
        Basis::Triangular => {
            let rep = Irrep::build(label, basis);
            let (_, s) = rep.change_basis(Basis::Unitary);
            s
        }
    }
}

/// Symbolic closed form of the half-space solution basis.
///
/// Solution `k` (one per fibre dimension) has component `i` equal to
/// `coefficient · w^p · x^{q/2}`, with `w = z = x² + ix³` for `μ = +i/2`
/// and `w = z̄` for `μ = −i/2`; the half-power `q` of the height
/// coordinate depends only on the component index.  The coefficients come
/// from expanding the nilpotent exponential of [`SpinorField::PowerExp`],
/// so the table is computed, not transcribed.
#[derive(Debug, Clone)]
pub struct HalfSpaceTable {
    pub two_s: u32,
    /// `+1` for `μ = +i/2` (polynomials in `z`), `−1` for `μ = −i/2`
    /// (polynomials in `z̄`).
    pub sign: i32,
    pub basis: Basis,
    /// `entries[k][i]` is `(coefficient, w_power)` of component `i` of
    /// solution `k`, or `None` when that component vanishes identically.
    pub entries: Vec<Vec<Option<(Complex64, u32)>>>,
    /// Component `i` carries the factor `x^{x_half_powers[i]/2}`.
    pub x_half_powers: Vec<i64>,
}

pub fn half_space_table(label: SpinLabel, mu: Complex64, basis: Basis) -> Result<HalfSpaceTable> {
    if !label.is_half_integral() {
        return Err(Error::NotHalfIntegral(label.two_s));
    }
    Space::H3.check_killing_number(mu)?;
    let sign = if mu.im > 0.0 { 1i32 } else { -1 };
    let rep = Irrep::build(label, basis);
    let dim = rep.dim();
    let nilpotent = if sign == 1 { rep.e.clone() } else { rep.f.clone() };
    let i_unit = Complex64::new(0.0, 1.0);

    let mut entries = vec![vec![None; dim]; dim];
    let mut power = CMat::identity(dim, dim);
    let mut factorial = 1.0;
    for p in 0..dim {
        if p > 0 {
            power = &power * &nilpotent;
            factorial *= p as f64;
        }
        let phase = i_unit.powu(p as u32);
        for k in 0..dim {
            for i in 0..dim {
                let c = power[(i, k)] / factorial * phase;
                if c.norm() > 1e-12 {
                    debug_assert!(entries[k][i].is_none(), "ladder powers collide");
                    entries[k][i] = Some((c, p as u32));
                }
            }
        }
    }
    let x_half_powers = (0..dim)
        .map(|i| (-(sign as f64) * rep.h[(i, i)].re).round() as i64)
        .collect();
    Ok(HalfSpaceTable { two_s: label.two_s, sign, basis, entries, x_half_powers })
}

/// Dirac operator `D = (1/N) Σ σᵢ ∇ᵢ` as a closed-form field.
pub fn dirac(field: &SpinorField) -> SpinorField {
    let rep = field.rep().clone();
    let n = field.two_s() as f64;
    SpinorField::combo(
        (0..3)
            .map(|i| {
                (
                    linalg::re(1.0 / n),
                    SpinorField::applied(rep.sigma[i].clone(), field.covariant_derivative(i)),
                )
            })
            .collect(),
    )
}

/// Raising (twistor-type) operator `Σ π⁺(eᵢ) ∇ᵢ`, one level up.
pub fn raise_operator(field: &SpinorField) -> Result<SpinorField> {
    let (raise, _) = clifford_maps(field.rep().label, field.rep().basis)?;
    Ok(SpinorField::combo(
        (0..3)
            .map(|i| {
                (
                    linalg::re(1.0),
                    SpinorField::applied(raise[i].clone(), field.covariant_derivative(i)),
                )
            })
            .collect(),
    ))
}

/// Lowering (co-twistor-type) operator `Σ π⁻(eᵢ) ∇ᵢ`, one level down;
/// errors below level 2 where no lower level exists.
pub fn lower_operator(field: &SpinorField) -> Result<SpinorField> {
    let label = field.rep().label;
    let (_, lower) = clifford_maps(label, field.rep().basis)?;
    let lower = lower.ok_or(Error::NoLowerLevel(label.two_s))?;
    Ok(SpinorField::combo(
        (0..3)
            .map(|i| {
                (
                    linalg::re(1.0),
                    SpinorField::applied(lower[i].clone(), field.covariant_derivative(i)),
                )
            })
            .collect(),
    ))
}

/// Connection Laplacian `∇*∇ = −Σᵢ ∇ᵢ∇ᵢ + Σᵢ ∇_{∇_{eᵢ}eᵢ}` as a field.
/// The trace correction vanishes on the sphere and flat space but equals
/// `2∇_{e₁}` on the half-space, whose frame is not divergence-free.
pub fn connection_laplacian(field: &SpinorField) -> SpinorField {
    let space = field.space();
    let mut terms = Vec::new();
    for i in 0..3 {
        terms.push((
            linalg::re(-1.0),
            field.covariant_derivative(i).covariant_derivative(i),
        ));
    }
    let mut trace = [0.0; 3];
    for i in 0..3 {
        let lc = space.levi_civita(i, i);
        for (m, t) in trace.iter_mut().enumerate() {
            *t += lc[m];
        }
    }
    for (m, t) in trace.iter().enumerate() {
        if *t != 0.0 {
            terms.push((linalg::re(*t), field.covariant_derivative(m)));
        }
    }
    SpinorField::combo(terms)
}

/// `max ‖Dφ(p) + (N+2)μ·φ(p)‖ / (1 + ‖φ(p)‖)`: Killing spinors are Dirac
/// eigensections with eigenvalue `−(N+2)μ`.
pub fn dirac_eigen_residual(field: &SpinorField, mu: Complex64, points: &[Point]) -> f64 {
    let d = dirac(field);
    let n = field.two_s() as f64;
    let mut worst: f64 = 0.0;
    for p in points {
        let value = field.value(p);
        let defect = d.value(p) + value.map(|z| z * mu * (n + 2.0));
        worst = worst.max(defect.norm() / (1.0 + value.norm()));
    }
    worst
}

/// Largest relative defect of the twistor characterisation: the equation
/// `∇ᵢφ + (1/(N+2))·σᵢ(Dφ) = 0` for each direction, together with the
/// direct kernel conditions for the raising and (when defined) lowering
/// operators.
pub fn twistor_residual(field: &SpinorField, points: &[Point]) -> Result<f64> {
    let rep = field.rep().clone();
    let n = field.two_s() as f64;
    let d = dirac(field);
    let raised = raise_operator(field)?;
    let lowered = match lower_operator(field) {
        Ok(f) => Some(f),
        Err(Error::NoLowerLevel(_)) => None,
        Err(e) => return Err(e),
    };
    let covs: Vec<SpinorField> = (0..3).map(|i| field.covariant_derivative(i)).collect();
    let mut worst: f64 = 0.0;
    for p in points {
        let scale = 1.0 + field.value(p).norm();
        let dv = d.value(p);
        for (i, s) in rep.sigma.iter().enumerate() {
            let defect = covs[i].value(p) + (s * &dv).unscale(n + 2.0);
            worst = worst.max(defect.norm() / scale);
        }
        worst = worst.max(raised.value(p).norm() / scale);
        if let Some(low) = &lowered {
            worst = worst.max(low.value(p).norm() / scale);
        }
    }
    Ok(worst)
}

/// `max ‖q(R)φ(p) − μ²N(N+2)·φ(p)‖ / (1 + ‖φ(p)‖)`: the curvature action
/// is the scalar `μ²N(N+2)` on a Killing spinor's level once `scal = 24μ²`.
pub fn curvature_eigen_residual(field: &SpinorField, mu: Complex64, points: &[Point]) -> f64 {
    let q = crate::spaces::curvature_action(field.space(), field.rep());
    let n = field.two_s() as f64;
    let mut worst: f64 = 0.0;
    for p in points {
        let value = field.value(p);
        let defect = &q * &value - value.map(|z| z * mu * mu * n * (n + 2.0));
        worst = worst.max(defect.norm() / (1.0 + value.norm()));
    }
    worst
}

/// Norm of the integrability endomorphism
/// `π(Ric(eᵢ) − ½(scal − 8μ²)eᵢ) = (scal/3 − ½(scal − 8μ²))·σᵢ`, which
/// must vanish identically for admissible Killing numbers.
pub fn ricci_condition_norm(space: Space, rep: &Irrep, mu: Complex64) -> f64 {
    let scal = space.scalar_curvature();
    let coefficient = linalg::re(scal / 3.0) - (linalg::re(scal) - 8.0 * mu * mu) / 2.0;
    rep.sigma
        .iter()
        .map(|s| (s.map(|z| z * coefficient)).norm())
        .fold(0.0, f64::max)
}

/// Hermitian Gram matrix of the family at one point.
pub fn gram_matrix(fields: &[SpinorField], p: &Point) -> CMat {
    let values: Vec<CVec> = fields.iter().map(|f| f.value(p)).collect();
    let mut g = CMat::zeros(fields.len(), fields.len());
    for (a, va) in values.iter().enumerate() {
        for (b, vb) in values.iter().enumerate() {
            g[(a, b)] = linalg::inner(va, vb);
        }
    }
    g
}

/// Rank of the family as sections: values at all sample points are stacked
/// into one tall matrix, one column per field.
pub fn stacked_rank(fields: &[SpinorField], points: &[Point], rel_tol: f64) -> usize {
    let dim = fields[0].dim();
    let mut m = CMat::zeros(dim * points.len(), fields.len());
    for (col, f) in fields.iter().enumerate() {
        for (block, p) in points.iter().enumerate() {
            let v = f.value(p);
            for r in 0..dim {
                m[(block * dim + r, col)] = v[r];
            }
        }
    }
    // Diagonal scaling is rank-preserving; equilibrate so the huge dynamic
    // range of half-space solutions cannot mask independence.
    for r in 0..m.nrows() {
        let max = (0..m.ncols()).map(|c| m[(r, c)].norm()).fold(0.0_f64, f64::max);
        if max > 0.0 {
            for c in 0..m.ncols() {
                m[(r, c)] /= max;
            }
        }
    }
    for c in 0..m.ncols() {
        let n = m.column(c).norm();
        if n > 0.0 {
            for r in 0..m.nrows() {
                m[(r, c)] /= n;
            }
        }
    }
    linalg::rank(&m, rel_tol)
}

/// Contract the raising maps with the invariant vector field of the given
/// frame axis and apply to a sphere Killing spinor: constant coefficients
/// for `μ = +½` (left-invariant field), coefficients `Ad(x⁻¹)·axis` for
/// `μ = −½` (right-invariant field).  The result is Killing one level up
/// with the same `μ`.
pub fn spin_raise(field: &SpinorField, axis: [f64; 3], mu: Complex64) -> Result<SpinorField> {
    if field.space() != Space::S3 {
        return Err(Error::WrongSpace {
            form: "invariant-field raising".into(),
            space: field.space().to_string(),
        });
    }
    Space::S3.check_killing_number(mu)?;
    let (raise, _) = clifford_maps(field.rep().label, field.rep().basis)?;
    if mu.re > 0.0 {
        let mut contracted = raise[0].scale(axis[0]);
        contracted += raise[1].scale(axis[1]);
        contracted += raise[2].scale(axis[2]);
        Ok(SpinorField::applied(contracted, field.clone()))
    } else {
        Ok(SpinorField::adjoint_applied(&raise, axis, field.clone()))
    }
}

/// Pointwise ratio `‖raised(p)‖² / (‖axis‖²·‖φ(p)‖²)` in unitary
/// coordinates; bounded below by `2/(N+2)` for Killing `φ`.
pub fn raising_norm_ratio(
    field: &SpinorField,
    raised: &SpinorField,
    axis: [f64; 3],
    p: &Point,
) -> f64 {
    let basis = field.rep().basis;
    let here = unitary_converter(field.rep().label, basis);
    let up = unitary_converter(raised.rep().label, basis);
    let value = &here * field.value(p);
    let lifted = &up * raised.value(p);
    let axis_sq = axis.iter().map(|a| a * a).sum::<f64>();
    lifted.norm_squared() / (axis_sq * value.norm_squared())
}

/// Ranks of the iterated raising images: starting from the full level-1
/// space, repeatedly apply all three raising maps and record the dimension
/// spanned at each half-integral level up to `max_two_s`.  Full rank
/// `N + 1` at every level means iterated raising generates every Killing
/// family from the lowest one.
pub fn iterated_raising_span_ranks(max_two_s: u32) -> Result<Vec<(u32, usize)>> {
    let mut vectors: Vec<CVec> = vec![
        CVec::from_row_slice(&[linalg::re(1.0), linalg::re(0.0)]),
        CVec::from_row_slice(&[linalg::re(0.0), linalg::re(1.0)]),
    ];
    let mut ranks = vec![(1, linalg::rank_of_columns(&vectors, 1e-10))];
    let mut two_s = 1;
    while two_s + 2 <= max_two_s {
        let (raise, _) = clifford_maps(SpinLabel::new(two_s), Basis::Unitary)?;
        let mut next: Vec<CVec> = Vec::new();
        for v in &vectors {
            for r in &raise {
                next.push(r * v);
            }
        }
        two_s += 2;
        ranks.push((two_s, linalg::rank_of_columns(&next, 1e-10)));
        // keep a spanning subset to stop exponential growth
        let dim = (two_s + 1) as usize;
        let mut kept: Vec<CVec> = Vec::new();
        for v in next {
            if kept.len() == dim {
                break;
            }
            let mut trial = kept.clone();
            trial.push(v.clone());
            if linalg::rank_of_columns(&trial, 1e-10) > kept.len() {
                kept.push(v);
            }
        }
        vectors = kept;
    }
    Ok(ranks)
}

/// A family of closed forms at one level, rich enough to be dense in the
/// smooth sections for identity testing: the solution families themselves,
/// matrix applications on top of them, and mixed combinations.
pub fn field_battery<R: rand::Rng>(
    space: Space,
    label: SpinLabel,
    basis: Basis,
    rng: &mut R,
) -> Result<Vec<SpinorField>> {
    let rep = Irrep::build(label, basis);
    let dim = rep.dim();
    let random_vec = |rng: &mut R| {
        CVec::from_iterator(
            dim,
            (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))),
        )
    };
    let mut fields: Vec<SpinorField> = Vec::new();
    match space {
        Space::S3 => {
            let constant = SpinorField::constant(space, &rep, random_vec(rng));
            let translate = SpinorField::conj_translate(&rep, random_vec(rng));
            fields.push(SpinorField::applied(rep.sigma[2].clone(), translate.clone()));
            if label.two_s >= 1 {
                let (raise, _) = clifford_maps(label, basis)?;
                fields.push(SpinorField::adjoint_applied(
                    &raise,
                    [1.0, -0.5, 0.25],
                    translate.clone(),
                ));
            }
            fields.push(SpinorField::combo(vec![
                (Complex64::new(0.7, -0.2), constant),
                (Complex64::new(0.1, 1.0), translate),
            ]));
        }
        Space::H3 => {
            let up = SpinorField::power_exp(&rep, random_vec(rng), 1)?;
            let down = SpinorField::power_exp(&rep, random_vec(rng), -1)?;
            fields.push(SpinorField::applied(rep.sigma[0].clone(), up.clone()));
            fields.push(SpinorField::combo(vec![
                (Complex64::new(1.0, 0.5), up),
                (Complex64::new(-0.3, 0.4), down),
            ]));
        }
        Space::R3 => {
            let constant = SpinorField::constant(space, &rep, random_vec(rng));
            let twistor = SpinorField::affine_twistor(&rep, random_vec(rng), random_vec(rng));
            fields.push(SpinorField::applied(rep.sigma[1].clone(), twistor.clone()));
            fields.push(SpinorField::combo(vec![
                (Complex64::new(0.5, 0.5), constant),
                (Complex64::new(1.0, -1.0), twistor),
            ]));
        }
    }
    Ok(fields)
}

/// Relative residuals of the second-order operator identities on the given
/// fields, maximised over fields and points.  Returned pairs are
/// `(identity name, residual)`:
///
/// * `laplacian-decomposition` — with `a₊ = (N+2)/(2N+2)`,
///   `a₋ = N/(2N+2)`:
///   `a₊·low∘raise + (N/(N+2))·D² + a₋·raise∘low = ∇*∇`;
/// * `curvature-decomposition` — weights `−N/2`, `1`, `(N+2)/2` on the
///   three squares give the symmetric curvature action `q(R)`;
/// * `raising-curvature-commutation` —
///   `D∘raise − (N/(N+2))·raise∘D = 0` on constant curvature;
/// * `lowering-curvature-commutation` —
///   `low∘D − ((N−2)/N)·D∘low = 0` on constant curvature (level ≥ 2).
pub fn operator_identity_residuals(
    fields: &[SpinorField],
    points: &[Point],
) -> Result<Vec<(String, f64)>> {
    assert!(!fields.is_empty());
    let mut laplacian: f64 = 0.0;
    let mut curvature: f64 = 0.0;
    let mut raising: f64 = 0.0;
    let mut lowering: f64 = 0.0;
    let mut any_lower = false;

    for field in fields {
        let n = field.two_s() as f64;
        let a_plus = (n + 2.0) / (2.0 * (n + 1.0));
        let a_minus = n / (2.0 * (n + 1.0));
        let has_lower = field.two_s() >= 2;
        any_lower = any_lower || has_lower;
        let space = field.space();
        let q = crate::spaces::curvature_action(space, field.rep());
        let low_raise = lower_operator(&raise_operator(field)?)?;
        let d_squared = dirac(&dirac(field));
        let raise_low = if has_lower {
            Some(raise_operator(&lower_operator(field)?)?)
        } else {
            None
        };
        let laplace = connection_laplacian(field);
        let d_raise = dirac(&raise_operator(field)?);
        let raise_d = raise_operator(&dirac(field))?;
        let low_d = if has_lower { Some(lower_operator(&dirac(field))?) } else { None };
        let d_low = if has_lower { Some(dirac(&lower_operator(field)?)) } else { None };

        for p in points {
            let lr = low_raise.value(p);
            let dd = d_squared.value(p);
            let rl = raise_low.as_ref().map(|f| f.value(p));
            let lap = laplace.value(p);
            let scale = 1.0 + lap.norm();

            let mut sum = lr.scale(a_plus) + dd.scale(n / (n + 2.0));
            if let Some(rl) = &rl {
                sum += rl.scale(a_minus);
            }
            laplacian = laplacian.max((&sum - &lap).norm() / scale);

            let mut weighted = lr.scale(-n / 2.0 * a_plus) + dd.scale(n / (n + 2.0));
            if let Some(rl) = &rl {
                weighted += rl.scale((n + 2.0) / 2.0 * a_minus);
            }
            let q_value = &q * field.value(p);
            curvature = curvature.max((weighted - q_value).norm() / scale);

            let commuted = d_raise.value(p) - raise_d.value(p).scale(n / (n + 2.0));
            raising = raising.max(commuted.norm() / scale);

            if let (Some(low_d), Some(d_low)) = (&low_d, &d_low) {
                let commuted = low_d.value(p) - d_low.value(p).scale((n - 2.0) / n);
                lowering = lowering.max(commuted.norm() / scale);
            }
        }
    }

    let mut out = vec![
        ("laplacian-decomposition".to_string(), laplacian),
        ("curvature-decomposition".to_string(), curvature),
        ("raising-curvature-commutation".to_string(), raising),
    ];
    if any_lower {
        out.push(("lowering-curvature-commutation".to_string(), lowering));
    }
    Ok(out)
}

/// Outcome of the sharp eigenvalue bound check on the sphere.
pub struct EigenvalueBound {
    /// The integer identity `λ²·4N = N(N+2)²` equating the attained
    /// eigenvalue `(N+2)²/4` with the bound `((N+2)/N)·r₀`.
    pub rational_equality: bool,
    /// `|λ² − ((N+2)/N)·r₀|` with `r₀` the smallest eigenvalue of the
    /// curvature action, computed numerically.
    pub bound_gap: f64,
    /// Largest relative defect of `D²φ = λ²φ` on Killing spinors of both
    /// signs at the sample points.
    pub dirac_square_residual: f64,
}

/// Check that Killing spinors attain the lower bound `λ² ≥ ((N+2)/N)·r₀`
/// for `D²` on the kernel of the lowering operator over the sphere.
pub fn eigenvalue_bound(label: SpinLabel, points: &[Point]) -> Result<EigenvalueBound> {
    let n = label.two_s as u128;
    let lambda_num = (n + 2) * (n + 2); // λ² = (N+2)²/4
    let r0_num = n * (n + 2); // r₀ = N(N+2)/4
    // cross-multiplied: λ²·4·N vs ((N+2)/N·r₀)·4·N
    let rational_equality = lambda_num * 4 * n == 4 * (n + 2) * r0_num;

    let rep = Irrep::build(label, Basis::Unitary);
    let q = crate::spaces::curvature_action(Space::S3, &rep);
    let r0 = linalg::hermitian_clusters(&q, 1e-9)
        .iter()
        .map(|(value, _)| *value)
        .fold(f64::INFINITY, f64::min);
    let nf = label.two_s as f64;
    let lambda_sq = (nf + 2.0) * (nf + 2.0) / 4.0;
    let bound_gap = (lambda_sq - (nf + 2.0) / nf * r0).abs();

    let mut dirac_square_residual: f64 = 0.0;
    for mu in Space::S3.admissible_killing_numbers() {
        for field in generate(label, Basis::Unitary, Space::S3, mu)? {
            let dd = dirac(&dirac(&field));
            for p in points {
                let value = field.value(p);
                let defect = dd.value(p) - value.scale(lambda_sq);
                dirac_square_residual =
                    dirac_square_residual.max(defect.norm() / (1.0 + value.norm()));
            }
        }
    }
    Ok(EigenvalueBound { rational_equality, bound_gap, dirac_square_residual })
}
