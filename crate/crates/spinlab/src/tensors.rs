//! Symmetric Killing tensors and the integral-spin Killing equation.
//!
//! A rank-`m` symmetric tensor field `K` is *Killing* when the fully
//! symmetrised covariant derivative vanishes: the symmetrisation over all
//! `m + 1` slots of `(∇_{X₀}K)(X₁,…,X_m)` is zero.  Degree one recovers
//! Killing vector fields, and the metric itself is the basic degree-two
//! example.  This module provides three independent sources of such
//! tensors on the model spaces and verifies each against the defining
//! equation:
//!
//! 1. **Spinor pairings.**  For two Killing spinors `φ, ψ` at one
//!    half-integral level with a single *real* Killing number `μ`, the
//!    form `K(X₁,…,X_m) = ⟨(σ(X₁)⊙⋯⊙σ(X_m))φ, ψ⟩` is a Killing tensor:
//!    each covariant derivative inserts `μσ(X₀)` once on the left of the
//!    symmetrised product and once on the right (the generators are
//!    skew-hermitian, so the slot on `ψ` crosses the pairing with a sign),
//!    and full symmetrisation cancels the two insertions.  `⊙` is the
//!    average over all orderings of the matrix product.
//!
//! 2. **Integral-spin solutions.**  At an even doubled weight `2j` the
//!    first-order equation `∇_X K = μ·σ(X)K` on the sphere has the same
//!    two closed-form families as the half-integral one — constants for
//!    `μ = +½`, conjugation translates for `μ = −½` — each of dimension
//!    `2j + 1`.  Under the iterated top-block embedding
//!    `W_{2j} → (ℂ³)^{⊗j}` the fibre is realised as traceless symmetric
//!    `j`-tensors, so these are honest tensor fields; degree one gives
//!    the invariant frame fields of the sphere.
//!
//! 3. **Flat parallel tensors.**  On flat space the trace-free part of
//!    the `j`-th symmetric power of a constant vector has constant frame
//!    components, hence is parallel and Killing with `μ = 0`.  Its
//!    coefficients come from the harmonic projection of the polynomial
//!    `(v·x)^j`, polarised over pair partitions.
//!
//! Two structural checks pin down how the pairing tensors sit inside the
//! space of all symmetric forms.  With both spinors running through the
//! weight basis, the component `K^m_{k,l}` vanishes whenever `2m < |k−l|`
//! (each σ-factor shifts the weight by at most two), the component at
//! `(k, l) = (N, N−2m)` survives on the lowering direction, and the
//! induced raising action on the pair annihilates that extreme component.
//! Finally, transporting the degree-one operators of level two onto ℂ³
//! identifies their symbols with the classical curl, gradient and
//! divergence, fixing the geometric meaning of the whole ladder.

use crate::clifford::{adjoint_action, tensor_decompose, weight_columns_in, CliffordTriple};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::spaces::{sample_point, Point, Space, SpinorField};
use crate::su2::{epsilon, Basis, Irrep, SpinLabel};
use num_complex::Complex64;
use rand::Rng;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Complex frame coefficients of one tangent argument `X = Σ cᵢ eᵢ`.
/// Evaluators are complex-bilinear in each slot, so frame vectors,
/// rotations of them, and genuinely complex directions (such as the one
/// realising a lowering generator) are all admissible arguments.
pub type FrameVector = [Complex64; 3];

/// The real frame vector `e_i` as a complex argument.
pub fn frame_vector(i: usize) -> FrameVector {
    let mut v = [ZERO; 3];
    v[i] = ONE;
    v
}

/// Lift real coefficients to a complex argument.
pub fn real_vector(x: &[f64; 3]) -> FrameVector {
    [linalg::re(x[0]), linalg::re(x[1]), linalg::re(x[2])]
}

/// Random argument with entries in the unit square (real axis only when
/// `real` is set, for forms that are only ℝ-multilinear).
pub fn random_vector<R: Rng>(rng: &mut R, real: bool) -> FrameVector {
    let mut draw = |real: bool| {
        let re = rng.gen_range(-1.0..1.0);
        let im = if real { 0.0 } else { rng.gen_range(-1.0..1.0) };
        Complex64::new(re, im)
    };
    [draw(real), draw(real), draw(real)]
}

/// Complex-bilinear extension of the frame metric, `g(X, Y) = Σ XᵢYᵢ`.
pub fn metric(x: &FrameVector, y: &FrameVector) -> Complex64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

/// Average of `A_{σ(1)}⋯A_{σ(m)} v` over all orderings `σ`, computed by
/// dynamic programming over subsets (`m·2^{m−1}` matrix-vector products
/// instead of `m!·m`): the average over orderings of a set `S` equals the
/// average over which factor acts last.
pub fn sym_apply(mats: &[CMat], v: &CVec) -> CVec {
    let m = mats.len();
    if m == 0 {
        return v.clone();
    }
    if mats.iter().skip(1).all(|a| a == &mats[0]) {
        let mut out = v.clone();
        for _ in 0..m {
            out = &mats[0] * out;
        }
        return out;
    }
    let mut table: Vec<CVec> = Vec::with_capacity(1 << m);
    table.push(v.clone());
    for mask in 1usize..(1 << m) {
        let mut acc = CVec::zeros(v.len());
        for (i, mat) in mats.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc += mat * &table[mask & !(1 << i)];
            }
        }
        table.push(acc.unscale(mask.count_ones() as f64));
    }
    table.pop().expect("table is non-empty")
}

/// A symmetric tensor field of fixed degree, represented by an evaluator
/// on complexified frame arguments rather than by a `3^m` component
/// array.
#[derive(Debug, Clone)]
pub enum SymmetricTensorField {
    /// `K(X₁,…,X_m) = ⟨(σ(X₁)⊙⋯⊙σ(X_m))φ, ψ⟩`, optionally its real part.
    SpinorPair {
        degree: usize,
        real_part: bool,
        phi: SpinorField,
        psi: SpinorField,
    },
    /// `g ⊙ T`: degree rises by two, value averages `g(X_a, X_b)·T(rest)`
    /// over unordered slot pairs.
    MetricSymmetrized { inner: Box<SymmetricTensorField> },
    /// Trace-free part of the `degree`-th symmetric power of the constant
    /// vector `v` on flat space; `coeffs[k]` multiplies the sum over
    /// `k`-pair partitions of `Π g(X_a, X_b) · Π ⟨v, X_c⟩`.
    TracelessPower {
        degree: usize,
        v: [f64; 3],
        coeffs: Vec<f64>,
    },
}

/// Point-frozen evaluation data: spinor values and their exact frame
/// derivatives are computed once per point, then shared by every
/// argument tuple used there.
enum FrozenTensor<'a> {
    Pair {
        real_part: bool,
        rep: &'a Irrep,
        phi: CVec,
        psi: CVec,
        dphi: Vec<CVec>,
        dpsi: Vec<CVec>,
    },
    Metric {
        inner: Box<FrozenTensor<'a>>,
    },
    Power {
        degree: usize,
        v: &'a [f64; 3],
        coeffs: &'a [f64],
    },
}

impl SymmetricTensorField {
    pub fn degree(&self) -> usize {
        match self {
            SymmetricTensorField::SpinorPair { degree, .. } => *degree,
            SymmetricTensorField::MetricSymmetrized { inner } => inner.degree() + 2,
            SymmetricTensorField::TracelessPower { degree, .. } => *degree,
        }
    }

    pub fn space(&self) -> Space {
        match self {
            SymmetricTensorField::SpinorPair { phi, .. } => phi.space(),
            SymmetricTensorField::MetricSymmetrized { inner } => inner.space(),
            SymmetricTensorField::TracelessPower { .. } => Space::R3,
        }
    }

    /// Whether the evaluator is only ℝ-multilinear (a real part was
    /// taken), so checks must use real arguments.
    pub fn is_real_form(&self) -> bool {
        match self {
            SymmetricTensorField::SpinorPair { real_part, .. } => *real_part,
            SymmetricTensorField::MetricSymmetrized { inner } => inner.is_real_form(),
            SymmetricTensorField::TracelessPower { .. } => false,
        }
    }

    pub fn value(&self, p: &Point, args: &[FrameVector]) -> Complex64 {
        self.freeze(p).value(args)
    }

    /// Plain directional derivative `∂_{e_i}[p ↦ K(p; args)]` with frozen
    /// frame coefficients.
    pub fn frame_derivative(&self, i: usize, p: &Point, args: &[FrameVector]) -> Complex64 {
        self.freeze(p).frame_derivative(i, args)
    }

    fn freeze(&self, p: &Point) -> FrozenTensor<'_> {
        match self {
            SymmetricTensorField::SpinorPair { real_part, phi, psi, .. } => FrozenTensor::Pair {
                real_part: *real_part,
                rep: phi.rep(),
                phi: phi.value(p),
                psi: psi.value(p),
                dphi: (0..3).map(|i| phi.differentiate(i).value(p)).collect(),
                dpsi: (0..3).map(|i| psi.differentiate(i).value(p)).collect(),
            },
            SymmetricTensorField::MetricSymmetrized { inner } => FrozenTensor::Metric {
                inner: Box::new(inner.freeze(p)),
            },
            SymmetricTensorField::TracelessPower { degree, v, coeffs } => FrozenTensor::Power {
                degree: *degree,
                v,
                coeffs,
            },
        }
    }
}

impl FrozenTensor<'_> {
    fn value(&self, args: &[FrameVector]) -> Complex64 {
        match self {
            FrozenTensor::Pair { real_part, rep, phi, psi, .. } => {
                let mats: Vec<CMat> = args.iter().map(|x| rep.of_cvector(x)).collect();
                realise(linalg::inner(&sym_apply(&mats, phi), psi), *real_part)
            }
            FrozenTensor::Metric { inner } => {
                pair_average(args, |x, y, rest| metric(x, y) * inner.value(rest))
            }
            FrozenTensor::Power { degree, v, coeffs } => {
                power_value(&real_vector(v), coeffs, *degree, args)
            }
        }
    }

    fn frame_derivative(&self, i: usize, args: &[FrameVector]) -> Complex64 {
        match self {
            FrozenTensor::Pair { real_part, rep, phi, psi, dphi, dpsi } => {
                let mats: Vec<CMat> = args.iter().map(|x| rep.of_cvector(x)).collect();
                let moved = linalg::inner(&sym_apply(&mats, &dphi[i]), psi)
                    + linalg::inner(&sym_apply(&mats, phi), &dpsi[i]);
                realise(moved, *real_part)
            }
            FrozenTensor::Metric { inner } => {
                pair_average(args, |x, y, rest| metric(x, y) * inner.frame_derivative(i, rest))
            }
            FrozenTensor::Power { .. } => ZERO,
        }
    }
}

fn realise(z: Complex64, real_part: bool) -> Complex64 {
    if real_part {
        linalg::re(z.re)
    } else {
        z
    }
}

/// Average `f(X_a, X_b, remaining args)` over unordered slot pairs.
fn pair_average(
    args: &[FrameVector],
    mut f: impl FnMut(&FrameVector, &FrameVector, &[FrameVector]) -> Complex64,
) -> Complex64 {
    let d = args.len();
    let mut acc = ZERO;
    for a in 0..d {
        for b in (a + 1)..d {
            let rest: Vec<FrameVector> = args
                .iter()
                .enumerate()
                .filter(|(t, _)| *t != a && *t != b)
                .map(|(_, x)| *x)
                .collect();
            acc += f(&args[a], &args[b], &rest);
        }
    }
    acc / linalg::re((d * (d - 1) / 2) as f64)
}

fn power_value(v: &FrameVector, coeffs: &[f64], degree: usize, args: &[FrameVector]) -> Complex64 {
    assert_eq!(args.len(), degree);
    let slots: Vec<usize> = (0..degree).collect();
    let mut acc = ZERO;
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        for pairing in pairings(&slots, k) {
            let mut term = linalg::re(c);
            let mut paired = vec![false; degree];
            for (a, b) in &pairing {
                term *= metric(&args[*a], &args[*b]);
                paired[*a] = true;
                paired[*b] = true;
            }
            for (t, done) in paired.iter().enumerate() {
                if !done {
                    term *= metric(v, &args[t]);
                }
            }
            acc += term;
        }
    }
    acc
}

/// All ways to choose `k` disjoint unordered pairs from `slots`.
fn pairings(slots: &[usize], k: usize) -> Vec<Vec<(usize, usize)>> {
    if k == 0 {
        return vec![vec![]];
    }
    if slots.len() < 2 * k {
        return vec![];
    }
    let a = slots[0];
    let rest = &slots[1..];
    let mut out = Vec::new();
    for p in pairings(rest, k) {
        out.push(p);
    }
    for (bi, &b) in rest.iter().enumerate() {
        let mut remaining = rest.to_vec();
        remaining.remove(bi);
        for mut p in pairings(&remaining, k - 1) {
            p.push((a, b));
            out.push(p);
        }
    }
    out
}

/// Pair two same-level sections into a degree-`m` symmetric form without
/// any Killing validation (used for controls and weight sweeps).  Both
/// sections must share space, level, and the unitary basis — the pairing
/// argument needs skew-hermitian generators.
pub fn pairing_tensor(
    degree: usize,
    phi: &SpinorField,
    psi: &SpinorField,
    real_part: bool,
) -> Result<SymmetricTensorField> {
    if phi.two_s() != psi.two_s() {
        return Err(Error::LabelMismatch(phi.two_s(), psi.two_s()));
    }
    if phi.space() != psi.space() {
        return Err(Error::Config(
            "paired sections must live on the same space".into(),
        ));
    }
    if phi.rep().basis != Basis::Unitary || psi.rep().basis != Basis::Unitary {
        return Err(Error::Config(
            "pairing tensors need the unitary basis, whose generators are skew-hermitian".into(),
        ));
    }
    Ok(SymmetricTensorField::SpinorPair {
        degree,
        real_part,
        phi: phi.clone(),
        psi: psi.clone(),
    })
}

/// Killing tensor from two Killing spinors sharing one real Killing
/// number on the sphere.  Degree `0` gives the constant pairing, degree
/// `1` a Killing one-form, higher degrees genuinely new Killing tensors.
pub fn killing_tensor_from_spinors(
    degree: usize,
    phi: &SpinorField,
    mu_phi: Complex64,
    psi: &SpinorField,
    mu_psi: Complex64,
) -> Result<SymmetricTensorField> {
    check_pairing_numbers(phi, mu_phi, psi, mu_psi)?;
    pairing_tensor(degree, phi, psi, false)
}

/// Real-part variant of [`killing_tensor_from_spinors`]; the result is
/// ℝ-multilinear and real on real arguments.
pub fn killing_tensor_real_part(
    degree: usize,
    phi: &SpinorField,
    mu_phi: Complex64,
    psi: &SpinorField,
    mu_psi: Complex64,
) -> Result<SymmetricTensorField> {
    check_pairing_numbers(phi, mu_phi, psi, mu_psi)?;
    pairing_tensor(degree, phi, psi, true)
}

fn check_pairing_numbers(
    phi: &SpinorField,
    mu_phi: Complex64,
    psi: &SpinorField,
    mu_psi: Complex64,
) -> Result<()> {
    if phi.space() != Space::S3 || psi.space() != Space::S3 {
        return Err(Error::WrongSpace {
            form: "spinor-pair Killing tensor".into(),
            space: phi.space().to_string(),
        });
    }
    if (mu_phi - mu_psi).norm() > 1e-12 || mu_phi.im.abs() > 1e-12 {
        return Err(Error::Config(format!(
            "paired sections need one shared real Killing number, got {mu_phi} and {mu_psi}"
        )));
    }
    Space::S3.check_killing_number(mu_phi)?;
    Ok(())
}

/// `g ⊙ K`: multiply by the metric and resymmetrise, raising the degree
/// by two.  Killing tensors stay Killing because the metric is parallel.
pub fn metric_symmetrized(inner: SymmetricTensorField) -> SymmetricTensorField {
    SymmetricTensorField::MetricSymmetrized {
        inner: Box::new(inner),
    }
}

/// Covariant derivative value `(∇_{Z₀}K)(args)` at `p`: directional
/// derivative of the scalar minus the Levi-Civita corrections on each
/// argument slot, all coefficients extended complex-bilinearly.
fn covariant_derivative_value(
    frozen: &FrozenTensor<'_>,
    space: Space,
    args: &[FrameVector],
    z0: &FrameVector,
) -> Complex64 {
    let mut out = ZERO;
    for (i, c) in z0.iter().enumerate() {
        if c.norm() > 0.0 {
            out += c * frozen.frame_derivative(i, args);
        }
    }
    for t in 0..args.len() {
        let mut gamma = [ZERO; 3];
        for (i, ci) in z0.iter().enumerate() {
            for (jj, cj) in args[t].iter().enumerate() {
                let lc = space.levi_civita(i, jj);
                for (mm, g) in gamma.iter_mut().enumerate() {
                    if lc[mm] != 0.0 {
                        *g += ci * cj * lc[mm];
                    }
                }
            }
        }
        let mut modified = args.to_vec();
        modified[t] = gamma;
        out -= frozen.value(&modified);
    }
    out
}

/// Largest relative defect of the Killing tensor equation over the
/// sample points: the symmetrisation over all `m + 1` slots of
/// `(∇_{Z₀}K)(Z₁,…,Z_m)` on random argument tuples.  Because `K` is
/// already symmetric in its `m` arguments, symmetrising reduces to
/// averaging over which tuple entry carries the derivative.
pub fn verify_killing_tensor<R: Rng>(
    k: &SymmetricTensorField,
    points: &[Point],
    rng: &mut R,
) -> f64 {
    let m = k.degree();
    let space = k.space();
    let real = k.is_real_form();
    let mut worst: f64 = 0.0;
    for p in points {
        let frozen = k.freeze(p);
        for _ in 0..2 {
            let tuple: Vec<FrameVector> = (0..=m).map(|_| random_vector(rng, real)).collect();
            let scale = 1.0 + frozen.value(&tuple[1..]).norm();
            let mut sym = ZERO;
            for t in 0..=m {
                let rest: Vec<FrameVector> = tuple
                    .iter()
                    .enumerate()
                    .filter(|(s, _)| *s != t)
                    .map(|(_, x)| *x)
                    .collect();
                sym += covariant_derivative_value(&frozen, space, &rest, &tuple[t]);
            }
            sym /= linalg::re((m + 1) as f64);
            worst = worst.max(sym.norm() / scale);
        }
    }
    worst
}

/// Relative defect of full slot symmetry on random arguments at `p`.
pub fn symmetry_residual<R: Rng>(k: &SymmetricTensorField, p: &Point, rng: &mut R) -> f64 {
    let m = k.degree();
    if m < 2 {
        return 0.0;
    }
    let frozen = k.freeze(p);
    let real = k.is_real_form();
    let mut worst: f64 = 0.0;
    for _ in 0..3 {
        let tuple: Vec<FrameVector> = (0..m).map(|_| random_vector(rng, real)).collect();
        let reference = frozen.value(&tuple);
        let mut shuffled = tuple.clone();
        for t in (1..m).rev() {
            shuffled.swap(t, rng.gen_range(0..=t));
        }
        let permuted = frozen.value(&shuffled);
        worst = worst.max((reference - permuted).norm() / (1.0 + reference.norm()));
    }
    worst
}

/// Largest relative metric contraction over all slot pairs, with random
/// arguments in the remaining slots.  Zero certifies tracelessness.
pub fn contraction_residual<R: Rng>(k: &SymmetricTensorField, p: &Point, rng: &mut R) -> f64 {
    let m = k.degree();
    if m < 2 {
        return 0.0;
    }
    let frozen = k.freeze(p);
    let real = k.is_real_form();
    let mut worst: f64 = 0.0;
    for s in 0..m {
        for t in (s + 1)..m {
            let mut args: Vec<FrameVector> = (0..m).map(|_| random_vector(rng, real)).collect();
            let mut trace = ZERO;
            let mut scale = 1.0;
            for c in 0..3 {
                args[s] = frame_vector(c);
                args[t] = frame_vector(c);
                let term = frozen.value(&args);
                trace += term;
                scale = f64::max(scale, 1.0 + term.norm());
            }
            worst = worst.max(trace.norm() / scale);
        }
    }
    worst
}

/// Closed-form basis of the integral-spin Killing space on the sphere:
/// constants for `μ = +½`, conjugation translates for `μ = −½`, each of
/// dimension `2j + 1` at doubled weight `2j`.  Level zero is degenerate —
/// the generators vanish, every constant solves the equation for any
/// `μ`, so the number is not validated there.
pub fn generate_integral(label: SpinLabel, basis: Basis, mu: Complex64) -> Result<Vec<SpinorField>> {
    if label.is_half_integral() {
        return Err(Error::NotIntegral(label.two_s));
    }
    if label.two_s > 0 {
        Space::S3.check_killing_number(mu)?;
        if mu.im.abs() > 1e-12 {
            return Err(Error::InadmissibleKillingNumber {
                space: Space::S3.to_string(),
                mu: mu.to_string(),
            });
        }
    }
    let rep = Irrep::build(label, basis);
    let dim = rep.dim();
    Ok((0..dim)
        .map(|k| {
            let mut v = CVec::zeros(dim);
            v[k] = ONE;
            if label.two_s == 0 || mu.re > 0.0 {
                SpinorField::constant(Space::S3, &rep, v)
            } else {
                SpinorField::conj_translate(&rep, v)
            }
        })
        .collect())
}

/// Isometric embedding `W_{2j} → (ℂ³)^{⊗j}` obtained by iterating the
/// top Clebsch–Gordan block `W_{2s} ⊂ W_{2s−2} ⊗ ℂ³`.  The image is the
/// unique copy of the top label inside the tensor power, i.e. the
/// traceless symmetric `j`-tensors, so every fibre vector of an
/// integral-spin field becomes an honest symmetric tensor through this
/// map.  Slot `s` of the result has stride `3^s` in the column index.
pub fn sym_power_embedding(label: SpinLabel) -> Result<CMat> {
    if label.is_half_integral() {
        return Err(Error::NotIntegral(label.two_s));
    }
    let j = (label.two_s / 2) as usize;
    let id3 = CMat::identity(3, 3);
    let mut theta = CMat::identity(1, 1);
    for step in 1..=j {
        let n = 2 * step as u32;
        let dec = tensor_decompose(SpinLabel::new(n - 2))?;
        let top = dec
            .block(SpinLabel::new(n))
            .expect("top block always exists");
        theta = linalg::kron(&theta, &id3) * top;
    }
    Ok(theta)
}

fn tensor_slots(len: usize) -> usize {
    let mut j = 0;
    let mut p = 1;
    while p < len {
        p *= 3;
        j += 1;
    }
    assert_eq!(p, len, "length must be a power of three");
    j
}

/// Contract two slots of `w ∈ (ℂ³)^{⊗j}` with the complex-bilinear
/// metric (sum over equal frame indices in both slots).
fn contract_slots(w: &CVec, j: usize, s: usize, t: usize) -> CVec {
    assert!(s < t && t < j);
    let mut out = CVec::zeros(w.len() / 9);
    for (idx, z) in w.iter().enumerate() {
        let ds = (idx / 3usize.pow(s as u32)) % 3;
        let dt = (idx / 3usize.pow(t as u32)) % 3;
        if ds != dt {
            continue;
        }
        let mut reduced = 0;
        let mut stride = 1;
        for slot in 0..j {
            if slot == s || slot == t {
                continue;
            }
            reduced += ((idx / 3usize.pow(slot as u32)) % 3) * stride;
            stride *= 3;
        }
        out[reduced] += z;
    }
    out
}

/// Largest relative metric contraction of the embedded tensor `Θ·value`
/// over all slot pairs.
pub fn embedded_trace_residual(theta: &CMat, value: &CVec) -> f64 {
    let w = theta * value;
    let j = tensor_slots(w.len());
    let scale = 1.0 + w.norm();
    let mut worst: f64 = 0.0;
    for s in 0..j {
        for t in (s + 1)..j {
            worst = worst.max(contract_slots(&w, j, s, t).norm() / scale);
        }
    }
    worst
}

/// Largest relative defect of slot symmetry of the embedding's image:
/// swapping two adjacent tensor slots must fix every column of `Θ`
/// (adjacent transpositions generate all of them).
pub fn embedded_symmetry_residual(theta: &CMat) -> f64 {
    let j = tensor_slots(theta.nrows());
    let mut worst: f64 = 0.0;
    for s in 0..j.saturating_sub(1) {
        let t = s + 1;
        let ps = 3usize.pow(s as u32);
        let pt = 3usize.pow(t as u32);
        for col in 0..theta.ncols() {
            let w = CVec::from(theta.column(col));
            let mut swapped = CVec::zeros(w.len());
            for (idx, z) in w.iter().enumerate() {
                let ds = (idx / ps) % 3;
                let dt = (idx / pt) % 3;
                let moved = idx - ds * ps - dt * pt + dt * ps + ds * pt;
                swapped[moved] = *z;
            }
            worst = worst.max((&swapped - &w).norm() / (1.0 + w.norm()));
        }
    }
    worst
}

/// Trace-free part of the `j`-th symmetric power of the constant vector
/// `v` on flat space (`label` holds the doubled weight `2j`).  The
/// coefficients polarise the harmonic projection of `(v·x)^j`: with
/// `h = Σ_k a_k |x|^{2k} (v·x)^{j−2k}`, harmonicity forces
/// `a_{k+1} = −a_k (j−2k)(j−2k−1) / (2(k+1)(2j−2k−1))`, and the pair
/// partition weight of the `k`-th term is `a_k · 2^k k! (j−2k)! / j!`.
pub fn traceless_power(label: SpinLabel, v: [f64; 3]) -> Result<SymmetricTensorField> {
    if label.is_half_integral() {
        return Err(Error::NotIntegral(label.two_s));
    }
    let j = (label.two_s / 2) as usize;
    if j == 0 {
        return Err(Error::Config(
            "the degree-zero symmetric power is a constant scalar; use a positive level".into(),
        ));
    }
    let mut harmonic = vec![0.0f64; j / 2 + 1];
    harmonic[0] = 1.0;
    for k in 0..j / 2 {
        let jk = (j - 2 * k) as f64;
        harmonic[k + 1] = -harmonic[k] * jk * (jk - 1.0)
            / (2.0 * (k as f64 + 1.0) * (2.0 * j as f64 - 2.0 * k as f64 - 1.0));
    }
    let mut coeffs = Vec::with_capacity(harmonic.len());
    let factorial = |n: usize| (1..=n).map(|x| x as f64).product::<f64>();
    for (k, &a) in harmonic.iter().enumerate() {
        coeffs.push(a * 2f64.powi(k as i32) * factorial(k) * factorial(j - 2 * k) / factorial(j));
    }
    Ok(SymmetricTensorField::TracelessPower {
        degree: j,
        v,
        coeffs,
    })
}

/// Summary of the flat parallel tensor check at one even level.
#[derive(Debug, Clone)]
pub struct FlatParallelReport {
    pub two_s: u32,
    pub degree: usize,
    pub symmetry: f64,
    pub trace: f64,
    pub killing: f64,
}

/// Build the trace-free symmetric power of a random direction on flat
/// space and measure its symmetry, tracelessness, and the `μ = 0`
/// (parallel) Killing equation on random points.
pub fn parallel_flat_check<R: Rng>(label: SpinLabel, rng: &mut R) -> Result<FlatParallelReport> {
    let mut v: [f64; 3] = [0.0; 3];
    loop {
        for c in v.iter_mut() {
            *c = rng.gen_range(-1.0..1.0);
        }
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.3 {
            for c in v.iter_mut() {
                *c /= n;
            }
            break;
        }
    }
    let tensor = traceless_power(label, v)?;
    let points: Vec<Point> = (0..8).map(|_| sample_point(Space::R3, rng)).collect();
    let mut symmetry: f64 = 0.0;
    let mut trace: f64 = 0.0;
    for p in &points {
        symmetry = symmetry.max(symmetry_residual(&tensor, p, rng));
        trace = trace.max(contraction_residual(&tensor, p, rng));
    }
    Ok(FlatParallelReport {
        two_s: label.two_s,
        degree: tensor.degree(),
        symmetry,
        trace,
        killing: verify_killing_tensor(&tensor, &points, rng),
    })
}

/// Summary of the weight-component structure of degree-`m` pairings at
/// one half-integral level.
#[derive(Debug, Clone)]
pub struct WeightReport {
    pub two_s: u32,
    pub degree: usize,
    /// Largest relative component with `2m < |k − l|`; the σ-factors can
    /// shift the weight by at most `2m`, so these must vanish.
    pub vanishing_max: f64,
    /// Alignment (cosine) of `σ(X_F)^m` applied to the top weight vector
    /// with the weight-`N − 2m` basis vector; the extreme surviving
    /// component, expected to be exactly one.
    pub highest_weight_ratio: f64,
    /// Relative defect of the raising action on the extreme component:
    /// raising the first slot must match lowering the second across the
    /// conjugate-linear pairing.
    pub raising_defect: f64,
}

/// Sweep the weight basis pairs `(ψ_k, ψ_l)` of the `μ = +½` constant
/// family.  Because those solutions have point-independent frame
/// components, the sweep is algebra on the fibre; arguments are random
/// complex vectors.
pub fn weight_checks<R: Rng>(label: SpinLabel, degree: usize, rng: &mut R) -> Result<WeightReport> {
    if !label.is_half_integral() {
        return Err(Error::NotHalfIntegral(label.two_s));
    }
    if degree > label.two_s as usize {
        return Err(Error::Config(format!(
            "weight sweep needs degree ≤ twoS, got {degree} at twoS = {}",
            label.two_s
        )));
    }
    let rep = Irrep::build(label, Basis::Unitary);
    let dim = rep.dim();
    let m = degree;
    let unit = |r: usize| {
        let mut v = CVec::zeros(dim);
        v[r] = ONE;
        v
    };

    let component = |phi: &CVec, psi: &CVec, args: &[FrameVector]| -> (Complex64, f64) {
        let mats: Vec<CMat> = args.iter().map(|x| rep.of_cvector(x)).collect();
        let applied = sym_apply(&mats, phi);
        (
            linalg::inner(&applied, psi),
            1.0 + applied.norm() * psi.norm(),
        )
    };

    let mut vanishing: f64 = 0.0;
    for rk in 0..dim {
        for rl in 0..dim {
            let weight_gap = 2 * (rk as i64 - rl as i64).abs();
            if weight_gap <= 2 * m as i64 {
                continue;
            }
            for _ in 0..2 {
                let args: Vec<FrameVector> = (0..m).map(|_| random_vector(rng, false)).collect();
                let (value, scale) = component(&unit(rk), &unit(rl), &args);
                vanishing = vanishing.max(value.norm() / scale);
            }
        }
    }

    // Extreme surviving component: k = N at r = 0, l = N − 2m at r = m,
    // probed along the complex direction X_F realising the lowering
    // generator, σ(X_F) = F.
    let x_f: FrameVector = [ZERO, linalg::re(-0.5), -0.5 * Complex64::i()];
    let mut lowered = unit(0);
    for _ in 0..m {
        lowered = &rep.f * lowered;
    }
    let probe = rep.of_cvector(&x_f);
    let mut probed = unit(0);
    for _ in 0..m {
        probed = &probe * probed;
    }
    let highest_weight_ratio = if probed.norm() > 0.0 {
        linalg::inner(&probed, &unit(m)).norm() / probed.norm()
    } else {
        0.0
    };
    debug_assert!((&probed - &lowered).norm() < 1e-12 * (1.0 + lowered.norm()));

    // Raising action on the pair at the extreme component: the first slot
    // moves by E, the second by F (the pairing is conjugate-linear there).
    let mut raising_defect: f64 = 0.0;
    for _ in 0..2 {
        let args: Vec<FrameVector> = (0..m).map(|_| random_vector(rng, false)).collect();
        let (first, scale_a) = component(&(&rep.e * unit(0)), &unit(m), &args);
        let (second, scale_b) = component(&unit(0), &(&rep.f * unit(m)), &args);
        raising_defect = raising_defect.max((first - second).norm() / scale_a.max(scale_b));
    }

    Ok(WeightReport {
        two_s: label.two_s,
        degree,
        vanishing_max: vanishing,
        highest_weight_ratio,
        raising_defect,
    })
}

/// Constants and defects of the first-order symbol identification at the
/// bottom of the ladder.
#[derive(Debug, Clone)]
pub struct SymbolReport {
    /// Fitted constant of `(level-preserving symbol) = c · curl`.
    pub curl_constant: Complex64,
    /// Fitted constant of `(raising symbol) = c · (ξ ↦ ξ)` (gradient).
    pub gradient_constant: Complex64,
    /// Fitted constant of `(lowering symbol) = c · (w ↦ ⟨ξ, w⟩)` (divergence).
    pub divergence_constant: Complex64,
    /// Worst relative defect: intertwiner equivariance, unitarity, and
    /// proportionality across all probed directions with one constant each.
    pub deviation: f64,
}

/// Transport the three first-order operators based at level two onto ℂ³
/// through the weight-basis intertwiner and identify their symbols with
/// curl, gradient, and divergence.  The constants are reported, not
/// asserted; the deviation certifies that one constant fits every frame
/// direction.
pub fn d1_symbol_check() -> Result<SymbolReport> {
    let adj = adjoint_action();
    let id3 = CMat::identity(3, 3);
    let u = weight_columns_in(&id3, &adj.h, &adj.f, 2, ONE)?;
    let rep2 = Irrep::build(SpinLabel::new(2), Basis::Unitary);

    let mut deviation: f64 = 0.0;
    deviation = deviation.max(linalg::distance(&(&u * u.adjoint()), &id3));
    for i in 0..3 {
        deviation = deviation.max(linalg::distance(&(&u * &rep2.sigma[i]), &(&adj.sigma[i] * &u)));
    }

    let bottom = CliffordTriple::build(SpinLabel::new(0))?;
    let level2 = CliffordTriple::build(SpinLabel::new(2))?;
    let lower2 = level2.lower.as_ref().expect("level two lowers");

    let directions: Vec<[f64; 3]> = vec![
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.6, -0.48, 0.64],
    ];

    let fit_matrix = |target: &CMat, probe: &CMat| -> Complex64 {
        let mut num = ZERO;
        let mut den = 0.0;
        for (t, m) in target.iter().zip(probe.iter()) {
            num += t.conj() * m;
            den += t.norm_sqr();
        }
        num / den
    };

    let mut curl_constant = ZERO;
    let mut gradient_constant = ZERO;
    let mut divergence_constant = ZERO;

    for (which, xi) in directions.iter().enumerate() {
        let norm2 = linalg::re(xi.iter().map(|c| c * c).sum::<f64>());

        // Level-preserving symbol (1/N)·σ(ξ) at N = 2, on ℂ³.
        let symbol = (&u * rep2.of_vector(xi).scale(0.5)) * u.adjoint();
        let mut curl = CMat::zeros(3, 3);
        for k in 0..3 {
            for j in 0..3 {
                for (i, c) in xi.iter().enumerate() {
                    curl[(k, j)] += linalg::re(epsilon(k, i, j) * c);
                }
            }
        }
        if which == 0 {
            curl_constant = fit_matrix(&curl, &symbol);
        }
        deviation = deviation
            .max((&symbol - curl.map(|z| z * curl_constant)).norm() / curl.norm());

        // Raising symbol from the one-dimensional bottom level: a vector
        // of ℂ³ proportional to ξ itself.
        let mut raised = CMat::zeros(3, 1);
        for (i, c) in xi.iter().enumerate() {
            raised += bottom.raise[i].scale(*c);
        }
        let w = &u * CVec::from(raised.column(0));
        let xi_vec = CVec::from_iterator(3, xi.iter().map(|c| linalg::re(*c)));
        if which == 0 {
            gradient_constant = linalg::inner(&w, &xi_vec) / norm2;
        }
        deviation = deviation
            .max((&w - xi_vec.map(|z| z * gradient_constant)).norm() / xi_vec.norm());

        // Lowering symbol into the bottom level: a row pairing ℂ³ with ξ.
        let mut lowered = CMat::zeros(1, 3);
        for (i, c) in xi.iter().enumerate() {
            lowered += lower2[i].scale(*c);
        }
        let row = lowered * u.adjoint();
        let target_row = CMat::from_fn(1, 3, |_, j| linalg::re(xi[j]));
        if which == 0 {
            divergence_constant = fit_matrix(&target_row, &row);
        }
        deviation = deviation
            .max((&row - target_row.map(|z| z * divergence_constant)).norm() / target_row.norm());
    }

    Ok(SymbolReport {
        curl_constant,
        gradient_constant,
        divergence_constant,
        deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::killing;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    fn sphere_points(rng: &mut ChaCha8Rng, count: usize) -> Vec<Point> {
        (0..count).map(|_| sample_point(Space::S3, rng)).collect()
    }

    fn killing_pair(
        two_s: u32,
        mu: f64,
        a: usize,
        b: usize,
    ) -> (SpinorField, SpinorField, Complex64) {
        let m = linalg::re(mu);
        let family =
            killing::generate(SpinLabel::new(two_s), Basis::Unitary, Space::S3, m).unwrap();
        (family[a].clone(), family[b].clone(), m)
    }

    #[test]
    fn symmetrized_application_matches_the_permutation_average() {
        let mut r = rng(11);
        let dim = 4;
        let random_matrix = |r: &mut ChaCha8Rng| {
            CMat::from_fn(dim, dim, |_, _| {
                Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
            })
        };
        let mats: Vec<CMat> = (0..3).map(|_| random_matrix(&mut r)).collect();
        let v = CVec::from_fn(dim, |_, _| {
            Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))
        });
        let mut brute = CVec::zeros(dim);
        for order in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            brute += &mats[order[0]] * (&mats[order[1]] * (&mats[order[2]] * &v));
        }
        brute = brute.unscale(6.0);
        assert!((sym_apply(&mats, &v) - &brute).norm() < 1e-12);

        // The equal-factor shortcut agrees with the generic path.
        let same = vec![mats[0].clone(); 4];
        let mut perturbed = same.clone();
        perturbed[3][(0, 0)] += Complex64::new(1e-30, 0.0);
        assert!((sym_apply(&same, &v) - sym_apply(&perturbed, &v)).norm() < 1e-12);
    }

    #[test]
    fn pairing_constructors_enforce_matching_data() {
        let (phi, _, mu) = killing_pair(3, 0.5, 0, 1);
        let (chi, _, _) = killing_pair(5, 0.5, 0, 1);
        let err = killing_tensor_from_spinors(2, &phi, mu, &chi, mu).unwrap_err();
        assert!(matches!(err, Error::LabelMismatch(3, 5)));

        let (psi_minus, _, mu_minus) = killing_pair(3, -0.5, 0, 1);
        let err = killing_tensor_from_spinors(2, &phi, mu, &psi_minus, mu_minus).unwrap_err();
        assert!(matches!(err, Error::Config(_)));

        let rep = Irrep::build(SpinLabel::new(3), Basis::Unitary);
        let flat = SpinorField::constant(Space::R3, &rep, CVec::zeros(4));
        let err =
            killing_tensor_from_spinors(1, &flat, Complex64::default(), &flat, Complex64::default())
                .unwrap_err();
        assert!(matches!(err, Error::WrongSpace { .. }));

        let h3 = killing::generate(
            SpinLabel::new(3),
            Basis::Unitary,
            Space::H3,
            0.5 * Complex64::i(),
        )
        .unwrap();
        let err = killing_tensor_from_spinors(
            1,
            &h3[0],
            0.5 * Complex64::i(),
            &h3[1],
            0.5 * Complex64::i(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::WrongSpace { .. }));

        let tri = killing::generate(SpinLabel::new(3), Basis::Triangular, Space::S3, mu).unwrap();
        let err = pairing_tensor(2, &tri[0], &tri[1], false).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
    }

    #[test]
    fn spinor_pairings_are_symmetric_multilinear_forms() {
        let mut r = rng(23);
        let (phi, psi, mu) = killing_pair(5, -0.5, 1, 3);
        let k3 = killing_tensor_from_spinors(3, &phi, mu, &psi, mu).unwrap();
        let points = sphere_points(&mut r, 4);
        for p in &points {
            assert!(symmetry_residual(&k3, p, &mut r) < 1e-12);
        }

        // Degree zero is the constant pairing of the two solutions.
        let k0 = killing_tensor_from_spinors(0, &phi, mu, &psi, mu).unwrap();
        let v0 = k0.value(&points[0], &[]);
        let v1 = k0.value(&points[1], &[]);
        assert!((v0 - v1).norm() < 1e-12);
        assert!(
            (v0 - linalg::inner(&phi.value(&points[0]), &psi.value(&points[0]))).norm() < 1e-14
        );

        // The real-part form is real on real arguments.
        let (alpha, beta, mu_plus) = killing_pair(3, 0.5, 0, 2);
        let kr = killing_tensor_real_part(2, &alpha, mu_plus, &beta, mu_plus).unwrap();
        let args = [random_vector(&mut r, true), random_vector(&mut r, true)];
        assert_eq!(kr.value(&points[2], &args).im, 0.0);
    }

    #[test]
    fn same_number_pairings_solve_the_symmetrized_derivative_equation() {
        let mut r = rng(37);
        let points = sphere_points(&mut r, 12);
        for two_s in [1u32, 3, 5] {
            for mu in [0.5, -0.5] {
                let (phi, psi, m) = killing_pair(two_s, mu, 0, (two_s as usize + 1) / 2);
                for degree in 0..=3usize {
                    let k = killing_tensor_from_spinors(degree, &phi, m, &psi, m).unwrap();
                    let res = verify_killing_tensor(&k, &points, &mut r);
                    assert!(
                        res < 1e-8,
                        "twoS={two_s} mu={mu} degree={degree}: residual {res:.3e}"
                    );
                }
            }
        }
        // Real-part variant.
        let (phi, psi, m) = killing_pair(3, 0.5, 1, 2);
        let kr = killing_tensor_real_part(2, &phi, m, &psi, m).unwrap();
        assert!(verify_killing_tensor(&kr, &points, &mut r) < 1e-8);
    }

    #[test]
    fn metric_symmetrization_preserves_killing_and_mixed_pairs_fail() {
        let mut r = rng(41);
        let points = sphere_points(&mut r, 10);
        let (phi, psi, m) = killing_pair(3, 0.5, 0, 1);
        let k0 = killing_tensor_from_spinors(0, &phi, m, &psi, m).unwrap();
        let g_k0 = metric_symmetrized(k0);
        assert_eq!(g_k0.degree(), 2);
        assert!(verify_killing_tensor(&g_k0, &points, &mut r) < 1e-8);

        let k1 = killing_tensor_from_spinors(1, &phi, m, &psi, m).unwrap();
        let g_k1 = metric_symmetrized(k1);
        assert!(verify_killing_tensor(&g_k1, &points, &mut r) < 1e-8);

        // Sections with opposite Killing numbers pair into a form whose
        // symmetrised derivative adds the two insertions instead of
        // cancelling them.
        let (minus, _, _) = killing_pair(3, -0.5, 0, 1);
        for degree in [0usize, 2] {
            let bad = pairing_tensor(degree, &phi, &minus, false).unwrap();
            let res = verify_killing_tensor(&bad, &points, &mut r);
            assert!(res > 1e-3, "degree {degree}: mixed pair residual {res:.3e}");
        }
    }

    #[test]
    fn integral_families_solve_the_even_level_equation() {
        let mut r = rng(53);
        let points = sphere_points(&mut r, 20);
        for two_s in [0u32, 2, 4, 6] {
            for mu in [linalg::re(0.5), linalg::re(-0.5)] {
                for basis in [Basis::Unitary, Basis::Triangular] {
                    let family = generate_integral(SpinLabel::new(two_s), basis, mu).unwrap();
                    assert_eq!(family.len(), two_s as usize + 1);
                    for f in &family {
                        let res = killing::killing_residual(f, mu, &points);
                        assert!(
                            res < 1e-8,
                            "twoS={two_s} mu={mu} {basis:?}: residual {res:.3e}"
                        );
                    }
                }
            }
        }

        // Level zero solves the equation for any number.
        let degenerate =
            generate_integral(SpinLabel::new(0), Basis::Unitary, linalg::re(0.3)).unwrap();
        assert!(killing::killing_residual(&degenerate[0], linalg::re(0.3), &points) < 1e-12);

        let err = generate_integral(SpinLabel::new(3), Basis::Unitary, linalg::re(0.5));
        assert!(matches!(err.unwrap_err(), Error::NotIntegral(3)));
        let err = generate_integral(SpinLabel::new(2), Basis::Unitary, linalg::re(0.4));
        assert!(matches!(
            err.unwrap_err(),
            Error::InadmissibleKillingNumber { .. }
        ));

        // The two families at one level are jointly independent.
        for two_s in [2u32, 4] {
            let mut both =
                generate_integral(SpinLabel::new(two_s), Basis::Unitary, linalg::re(0.5)).unwrap();
            let minus =
                generate_integral(SpinLabel::new(two_s), Basis::Unitary, linalg::re(-0.5)).unwrap();
            assert_eq!(
                killing::stacked_rank(&minus, &points, 1e-10),
                two_s as usize + 1
            );
            both.extend(minus);
            assert_eq!(
                killing::stacked_rank(&both, &points, 1e-10),
                2 * (two_s as usize + 1)
            );
        }
    }

    #[test]
    fn integral_solutions_embed_as_traceless_symmetric_powers() {
        let mut r = rng(61);
        let points = sphere_points(&mut r, 6);
        for two_s in [2u32, 4, 6] {
            let theta = sym_power_embedding(SpinLabel::new(two_s)).unwrap();
            let dim = two_s as usize + 1;
            assert_eq!(theta.ncols(), dim);
            assert_eq!(theta.nrows(), 3usize.pow(two_s / 2));
            assert!(
                linalg::distance(&(theta.adjoint() * &theta), &CMat::identity(dim, dim)) < 1e-10
            );
            assert!(embedded_symmetry_residual(&theta) < 1e-10);

            for mu in [linalg::re(0.5), linalg::re(-0.5)] {
                let family =
                    generate_integral(SpinLabel::new(two_s), Basis::Unitary, mu).unwrap();
                for f in &family {
                    for p in &points {
                        let res = embedded_trace_residual(&theta, &f.value(p));
                        assert!(res < 1e-10, "twoS={two_s} mu={mu}: trace {res:.3e}");
                    }
                }
            }
        }
    }

    #[test]
    fn flat_traceless_powers_are_parallel_killing_tensors() {
        let mut r = rng(71);
        for two_s in [2u32, 4, 6] {
            let report = parallel_flat_check(SpinLabel::new(two_s), &mut r).unwrap();
            assert_eq!(report.degree as u32, two_s / 2);
            assert!(report.symmetry < 1e-12, "symmetry {:.3e}", report.symmetry);
            assert!(report.trace < 1e-10, "trace {:.3e}", report.trace);
            assert!(report.killing < 1e-10, "killing {:.3e}", report.killing);
        }

        // Degree two against the explicit trace-free square of e₁.
        let quad = traceless_power(SpinLabel::new(4), [1.0, 0.0, 0.0]).unwrap();
        let p = Point::R3([0.2, -0.7, 1.1]);
        let mut rr = rng(72);
        for _ in 0..4 {
            let x = random_vector(&mut rr, false);
            let y = random_vector(&mut rr, false);
            let expected = x[0] * y[0] - metric(&x, &y) / 3.0;
            assert!((quad.value(&p, &[x, y]) - expected).norm() < 1e-13);
        }

        assert!(matches!(
            traceless_power(SpinLabel::new(3), [1.0, 0.0, 0.0]).unwrap_err(),
            Error::NotIntegral(3)
        ));
    }

    #[test]
    fn weight_components_vanish_and_the_top_survives() {
        let mut r = rng(83);
        for two_s in [3u32, 5] {
            for degree in 0..=two_s as usize {
                let report = weight_checks(SpinLabel::new(two_s), degree, &mut r).unwrap();
                assert!(
                    report.vanishing_max < 1e-10,
                    "twoS={two_s} m={degree}: vanishing {:.3e}",
                    report.vanishing_max
                );
                if degree > 0 {
                    assert!(
                        (report.highest_weight_ratio - 1.0).abs() < 1e-10,
                        "twoS={two_s} m={degree}: top ratio {:.3e}",
                        report.highest_weight_ratio
                    );
                }
                assert!(
                    report.raising_defect < 1e-10,
                    "twoS={two_s} m={degree}: raising {:.3e}",
                    report.raising_defect
                );
            }
        }
        // The largest level stays tractable through the subset averaging.
        for degree in [1usize, 7, 13] {
            let report = weight_checks(SpinLabel::new(13), degree, &mut r).unwrap();
            assert!(report.vanishing_max < 1e-10);
            assert!((report.highest_weight_ratio - 1.0).abs() < 1e-10);
            assert!(report.raising_defect < 1e-10);
        }
        assert!(matches!(
            weight_checks(SpinLabel::new(4), 1, &mut r).unwrap_err(),
            Error::NotHalfIntegral(4)
        ));
        assert!(weight_checks(SpinLabel::new(3), 4, &mut r).is_err());
    }

    #[test]
    fn first_order_symbols_are_curl_grad_div() {
        let report = d1_symbol_check().unwrap();
        assert!(report.deviation < 1e-10, "deviation {:.3e}", report.deviation);
        // Frozen expected constants: the level-preserving symbol is the
        // curl on the nose, and the raising/lowering symbols are adjoint
        // to each other up to the sign built into the lowering maps.
        assert!((report.curl_constant - ONE).norm() < 1e-10);
        assert!((report.gradient_constant.norm() - 1.0).abs() < 1e-10);
        assert!((report.divergence_constant + report.gradient_constant.conj()).norm() < 1e-12);
    }
}
