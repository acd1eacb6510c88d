//! The metric cone over the round sphere and parallelism on its
//! chirality-split spinor bundles.
//!
//! The cone over the unit sphere is `S³ × ℝ₊` with metric `r²g + dr²` —
//! flat four-space in polar form.  Its orthonormal frame is
//! `(X̂_a, X̂₄) = (X_a/r, ∂_r)` with `X_a` the invariant unit frame of the
//! base.  Four-dimensional rotations split as
//! `𝔰𝔬(4) ≅ 𝔰𝔬(3) ⊕ 𝔰𝔬(3)` into self-dual and anti-self-dual 2-forms,
//! so a fibre `W_j` can be made into an `𝔰𝔬(4)`-module in two mirrored
//! ways: route the self-dual triple through the generators and kill the
//! anti-self-dual one, or the reverse.  These are the two chirality
//! factors carried by the cone's spinor bundles.
//!
//! The Levi-Civita connection of the cone is determined by the base one
//! through `∇̂_X Y = ∇_X Y − r·g(X,Y)∂_r` and `∇̂_X ∂_r = X/r` for lifted
//! base fields.  Assembling the induced fibre connection
//! `½ Σ_{k,l} ĝ(∇̂ X̂_k, X̂_l) · π(X̂_k ∧ X̂_l)` from this raw data, the
//! radial direction drops out entirely and along `X_a` the explicit `r`
//! factors cancel, leaving the base coefficient shifted by `∓½σ_a`
//! depending on the chirality.  Consequently a section solving
//! `∇_X φ = ±½σ(X)φ` on the sphere pulls back (with r-independent
//! components) to a *parallel* section of the matching chirality factor,
//! and conversely the restriction of a parallel section to the unit
//! sphere solves that equation — both directions are verified here at
//! sample points, with the mismatched chirality kept as a failing
//! control.

use crate::error::{Error, Result};
use crate::killing;
use crate::linalg::{self, CMat, CVec};
use crate::spaces::{sample_point, spin_connection, Point, S3Point, Space};
use crate::su2::{Basis, Irrep, SpinLabel};
use num_complex::Complex64;
use rand::Rng;

/// A point of the cone: a base point and a positive radius.
#[derive(Debug, Clone)]
pub struct ConePoint {
    base: S3Point,
    r: f64,
}

impl ConePoint {
    pub fn new(base: S3Point, r: f64) -> Result<ConePoint> {
        if !(r > 0.0) {
            return Err(Error::Config(format!(
                "cone points need a positive radius, got {r}"
            )));
        }
        Ok(ConePoint { base, r })
    }

    pub fn base(&self) -> &S3Point {
        &self.base
    }

    pub fn radius(&self) -> f64 {
        self.r
    }
}

/// Which half of `𝔰𝔬(4) ≅ 𝔰𝔬(3) ⊕ 𝔰𝔬(3)` acts on the fibre; the other
/// half acts as zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chirality {
    SelfDual,
    AntiSelfDual,
}

impl Chirality {
    /// The chirality factor whose parallel sections realise the Killing
    /// number: self-dual for `μ = +½`, anti-self-dual for `μ = −½`.
    pub fn for_killing_number(mu: Complex64) -> Chirality {
        if mu.re > 0.0 {
            Chirality::SelfDual
        } else {
            Chirality::AntiSelfDual
        }
    }

    pub fn opposite(self) -> Chirality {
        match self {
            Chirality::SelfDual => Chirality::AntiSelfDual,
            Chirality::AntiSelfDual => Chirality::SelfDual,
        }
    }
}

/// `e_k ∧ e_l` as the 4×4 skew matrix sending `v ↦ ⟨e_k,v⟩e_l − ⟨e_l,v⟩e_k`.
pub fn wedge(k: usize, l: usize) -> CMat {
    assert!(k < 4 && l < 4 && k != l);
    let mut m = CMat::zeros(4, 4);
    m[(l, k)] = linalg::re(1.0);
    m[(k, l)] = linalg::re(-1.0);
    m
}

/// The self-dual and anti-self-dual bases of `Λ²ℝ⁴`.
pub struct So4Splitting {
    pub sd: [CMat; 3],
    pub asd: [CMat; 3],
}

/// Index permutation pairing the split bases with the fibre generators:
/// the `a`-th basis 2-form acts as `σ` of index `SPLIT_TO_SIGMA[a]`.
const SPLIT_TO_SIGMA: [usize; 3] = [2, 0, 1];

pub fn so4_splitting() -> So4Splitting {
    let pair = |k: usize, l: usize, m: usize, n: usize, sign: f64| {
        wedge(k, l) + wedge(m, n).scale(sign)
    };
    So4Splitting {
        sd: [
            pair(0, 1, 2, 3, 1.0),
            pair(1, 2, 0, 3, 1.0),
            pair(2, 0, 1, 3, 1.0),
        ],
        asd: [
            pair(0, 1, 2, 3, -1.0),
            pair(1, 2, 0, 3, -1.0),
            pair(2, 0, 1, 3, -1.0),
        ],
    }
}

fn frobenius_coefficient(basis: &CMat, w: &CMat) -> f64 {
    let mut acc = 0.0;
    for (a, b) in basis.iter().zip(w.iter()) {
        acc += a.re * b.re;
    }
    acc / 4.0
}

/// Action of a 2-form on the fibre `W_j` through the chosen chirality:
/// project onto the matching split basis, kill the mirror part, and send
/// the `a`-th basis element to the generator of index `SPLIT_TO_SIGMA[a]`.
pub fn spin_rep_of_wedge(rep: &Irrep, chirality: Chirality, w: &CMat) -> CMat {
    let split = so4_splitting();
    let basis = match chirality {
        Chirality::SelfDual => &split.sd,
        Chirality::AntiSelfDual => &split.asd,
    };
    let dim = rep.dim();
    let mut out = CMat::zeros(dim, dim);
    for (a, s) in basis.iter().enumerate() {
        let c = frobenius_coefficient(s, w);
        if c != 0.0 {
            out += rep.sigma[SPLIT_TO_SIGMA[a]].scale(c);
        }
    }
    out
}

/// Frame coefficients `Γ̂_{a,kl} = ĝ(∇̂_{X̂_a} X̂_k, X̂_l)` of the cone's
/// Levi-Civita connection in the orthonormal frame `(X_a/r, ∂_r)`,
/// assembled from the base coefficients and the two cone formulas.
/// Index `3` is the radial direction.
fn cone_gamma(r: f64, a: usize) -> [[f64; 4]; 4] {
    let mut gamma = [[0.0; 4]; 4];
    if a == 3 {
        // ∇̂_{∂_r}(X_k/r) = −X_k/r² + (1/r)·(X_k/r) = 0 and ∇̂_{∂_r}∂_r = 0.
        return gamma;
    }
    for k in 0..3 {
        // ∇̂_{X_a}X_k = ∇_{X_a}X_k − r·δ_{ak}·∂_r, rescaled to the unit frame.
        let base = Space::S3.levi_civita(a, k);
        for (m, c) in base.iter().enumerate() {
            gamma[k][m] = c / r;
        }
        if k == a {
            gamma[k][3] = -1.0 / r;
        }
        // ∇̂_{X_a}∂_r = X_a/r.
        gamma[3][k] = if k == a { 1.0 / r } else { 0.0 };
    }
    gamma
}

/// Connection coefficient of the chirality factor at a cone point.
///
/// For a base index `a < 3` the returned matrix is the coefficient along
/// the *base* frame field `X_a = r·X̂_a`, i.e. `r` times the unit-frame
/// assembly `½ Σ_{k≠l} Γ̂_{a,kl}·π(X̂_k∧X̂_l)`; the explicit `1/r` of
/// every coefficient cancels against it, which callers check by varying
/// the radius.  Index `3` returns the radial coefficient itself, which
/// vanishes identically.
pub fn cone_connection_coefficient(
    rep: &Irrep,
    chirality: Chirality,
    point: &ConePoint,
    a: usize,
) -> CMat {
    assert!(a < 4);
    let gamma = cone_gamma(point.radius(), a);
    let dim = rep.dim();
    let mut out = CMat::zeros(dim, dim);
    for k in 0..4 {
        for l in 0..4 {
            if k != l && gamma[k][l] != 0.0 {
                out += spin_rep_of_wedge(rep, chirality, &wedge(k, l)).scale(0.5 * gamma[k][l]);
            }
        }
    }
    if a < 3 {
        out.scale(point.radius())
    } else {
        out
    }
}

/// Residuals of the structural facts about the two split triples and
/// their fibre action, swept over all levels up to `max_two_s`.
#[derive(Debug, Clone)]
pub struct SplittingReport {
    /// Rank of the six basis 2-forms inside `Λ²ℝ⁴` (expected 6).
    pub span_rank: usize,
    /// Largest `‖[sd_a, asd_b]‖`: the two triples must commute.
    pub mutual_commutation: f64,
    /// Largest defect of `π([t_a, t_b]) = [π(t_a), π(t_b)]` within each
    /// triple, the bracket decomposed back through the split basis.
    pub homomorphism: f64,
    /// Largest norm of the mirror triple's action (expected zero).
    pub mirror_vanishing: f64,
    /// Largest defect of the explicit tables `π(e_k∧e_l) = ½σ_m` (cyclic)
    /// and `π(e_a∧e₄) = ±½σ_a` (sign by chirality).
    pub wedge_table: f64,
}

pub fn verify_so4_splitting(max_two_s: u32) -> SplittingReport {
    let split = so4_splitting();

    let mut columns = Vec::new();
    for m in split.sd.iter().chain(split.asd.iter()) {
        columns.push(CVec::from_iterator(16, m.iter().copied()));
    }
    let span_rank = linalg::rank_of_columns(&columns, 1e-12);

    let mut mutual: f64 = 0.0;
    for s in &split.sd {
        for t in &split.asd {
            mutual = mutual.max(linalg::commutator(s, t).norm());
        }
    }

    let mut homomorphism: f64 = 0.0;
    let mut mirror: f64 = 0.0;
    let mut table: f64 = 0.0;
    for two_s in 0..=max_two_s {
        let rep = Irrep::build(SpinLabel::new(two_s), Basis::Unitary);
        for &chirality in &[Chirality::SelfDual, Chirality::AntiSelfDual] {
            let own = match chirality {
                Chirality::SelfDual => &split.sd,
                Chirality::AntiSelfDual => &split.asd,
            };
            let other = match chirality {
                Chirality::SelfDual => &split.asd,
                Chirality::AntiSelfDual => &split.sd,
            };
            for a in 0..3 {
                mirror = mirror.max(spin_rep_of_wedge(&rep, chirality, &other[a]).norm());
                for b in 0..3 {
                    let bracket = linalg::commutator(&own[a], &own[b]);
                    let lhs = spin_rep_of_wedge(&rep, chirality, &bracket);
                    let rhs = linalg::commutator(
                        &spin_rep_of_wedge(&rep, chirality, &own[a]),
                        &spin_rep_of_wedge(&rep, chirality, &own[b]),
                    );
                    homomorphism = homomorphism
                        .max(linalg::distance(&lhs, &rhs) / (1.0 + rhs.norm()));
                }
            }

            let sign = match chirality {
                Chirality::SelfDual => 1.0,
                Chirality::AntiSelfDual => -1.0,
            };
            for (k, l, m) in [(0usize, 1usize, 2usize), (1, 2, 0), (2, 0, 1)] {
                let lhs = spin_rep_of_wedge(&rep, chirality, &wedge(k, l));
                table = table.max(linalg::distance(&lhs, &rep.sigma[m].scale(0.5)));
                let radial = spin_rep_of_wedge(&rep, chirality, &wedge(m, 3));
                table = table.max(linalg::distance(&radial, &rep.sigma[m].scale(0.5 * sign)));
            }
        }
    }

    SplittingReport {
        span_rank,
        mutual_commutation: mutual,
        homomorphism,
        mirror_vanishing: mirror,
        wedge_table: table,
    }
}

/// Residuals of the assembled connection coefficient against the split
/// closed form, swept over levels, frame directions, chiralities, and
/// radii.
#[derive(Debug, Clone)]
pub struct ConnectionReport {
    /// Largest `‖Ĉ_a − (C_a ∓ ½σ_a)‖`: the assembled coefficient must be
    /// the base one shifted by the chirality sign.
    pub net_formula: f64,
    /// Largest difference of the coefficient across radii; the metric
    /// factor `r` and the `1/r` of the unit frame must cancel exactly.
    pub r_independence: f64,
    /// Largest norm of the radial coefficient (expected exactly zero).
    pub radial_norm: f64,
}

pub fn verify_connection_coefficients(max_two_s: u32) -> ConnectionReport {
    let radii = [0.1, 1.0, 10.0];
    let base = S3Point::identity();
    let mut net: f64 = 0.0;
    let mut spread: f64 = 0.0;
    let mut radial: f64 = 0.0;
    for two_s in 0..=max_two_s {
        let rep = Irrep::build(SpinLabel::new(two_s), Basis::Unitary);
        for &chirality in &[Chirality::SelfDual, Chirality::AntiSelfDual] {
            let sign = match chirality {
                Chirality::SelfDual => -1.0,
                Chirality::AntiSelfDual => 1.0,
            };
            for a in 0..3 {
                let expected =
                    spin_connection(Space::S3, &rep, a) + rep.sigma[a].scale(0.5 * sign);
                let mut first: Option<CMat> = None;
                for &r in &radii {
                    let point = ConePoint::new(base, r).expect("radius is positive");
                    let coefficient = cone_connection_coefficient(&rep, chirality, &point, a);
                    net = net.max(linalg::distance(&coefficient, &expected));
                    match &first {
                        None => first = Some(coefficient),
                        Some(m) => spread = spread.max(linalg::distance(m, &coefficient)),
                    }
                }
            }
            let point = ConePoint::new(base, 2.5).expect("radius is positive");
            radial = radial.max(cone_connection_coefficient(&rep, chirality, &point, 3).norm());
        }
    }
    ConnectionReport {
        net_formula: net,
        r_independence: spread,
        radial_norm: radial,
    }
}

/// Residuals of the correspondence between Killing spinors on the base
/// and parallel sections of the matching chirality factor.
#[derive(Debug, Clone)]
pub struct ConeCorrespondenceReport {
    pub two_s: u32,
    /// Largest parallelism defect of the pulled-back family along the
    /// three base directions, over all sampled `(point, radius)` pairs.
    pub parallel: f64,
    /// Largest radial defect; the components are radius-independent and
    /// the radial coefficient vanishes, so this is exactly zero.
    pub radial: f64,
    /// Smallest (over the family) of the largest parallelism defects on
    /// the *mismatched* chirality factor — every member must fail.
    pub wrong_chirality: f64,
    /// Largest defect of the first-order equation on the base for the
    /// same family: the restriction of a parallel section to radius one
    /// solves it.
    pub converse: f64,
}

/// Sample the two directions of the correspondence for one level and
/// Killing number, drawing `samples` pairs with radii spread over
/// `[0.1, 10]`.
pub fn verify_parallel_correspondence<R: Rng>(
    label: SpinLabel,
    mu: Complex64,
    samples: usize,
    rng: &mut R,
) -> Result<ConeCorrespondenceReport> {
    let family = killing::generate(label, Basis::Unitary, Space::S3, mu)?;
    let rep = Irrep::build(label, Basis::Unitary);
    let chirality = Chirality::for_killing_number(mu);

    let draws: Vec<(Point, ConePoint)> = (0..samples)
        .map(|_| {
            let p = sample_point(Space::S3, rng);
            let Point::S3(base) = p else { unreachable!() };
            let r = 10f64.powf(rng.gen_range(-1.0..1.0));
            (p, ConePoint::new(base, r).expect("radius is positive"))
        })
        .collect();

    let mut own_worst = vec![0.0f64; family.len()];
    let mut other_worst = vec![0.0f64; family.len()];
    let mut radial: f64 = 0.0;
    for (p, cp) in &draws {
        let own: Vec<CMat> =
            (0..3).map(|a| cone_connection_coefficient(&rep, chirality, cp, a)).collect();
        let other: Vec<CMat> = (0..3)
            .map(|a| cone_connection_coefficient(&rep, chirality.opposite(), cp, a))
            .collect();
        let rad = cone_connection_coefficient(&rep, chirality, cp, 3);
        for (f, field) in family.iter().enumerate() {
            let value = field.value(p);
            let scale = 1.0 + value.norm();
            for a in 0..3 {
                let derivative = field.differentiate(a).value(p);
                own_worst[f] =
                    own_worst[f].max((&derivative + &own[a] * &value).norm() / scale);
                other_worst[f] =
                    other_worst[f].max((&derivative + &other[a] * &value).norm() / scale);
            }
            // Pullback components do not depend on the radius, so the
            // radial covariant derivative is the radial coefficient alone.
            radial = radial.max((&rad * &value).norm() / scale);
        }
    }
    let parallel = own_worst.iter().fold(0.0f64, |a, &b| a.max(b));
    let wrong = other_worst.iter().copied().fold(f64::INFINITY, f64::min);

    let base_points: Vec<Point> = draws.iter().map(|(p, _)| p.clone()).collect();
    let mut converse: f64 = 0.0;
    for field in &family {
        converse = converse.max(killing::killing_residual(field, mu, &base_points));
    }

    Ok(ConeCorrespondenceReport {
        two_s: label.two_s,
        parallel,
        radial,
        wrong_chirality: wrong,
        converse,
    })
}
