//! Deterministic verification suites: run the library's checks under a
//! seeded configuration and aggregate them into machine-readable reports.
//!
//! Each suite seeds its own generator from the configured seed and a
//! per-suite salt, so a run is reproducible check-for-check regardless of
//! which subset of suites is selected.  Suites execute on separate
//! threads; reports are merged in suite-name order, making equal
//! configurations produce byte-identical serialised output.
//!
//! Tolerances follow a two-level convention: point-free algebraic
//! identities (matrix equalities that hold exactly up to rounding) are
//! pinned at `1e−10`, while sampled field equations use the configured
//! tolerance, `1e−8` by default.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::{self, CliffordTriple};
use crate::cone;
use crate::error::{Error, Result};
use crate::identities;
use crate::killing;
use crate::linalg::{self, CMat, CVec};
use crate::report::{IdentityCheck, VerificationReport};
use crate::spaces::{sample_point, Point, Space, SpinorField};
use crate::su2::{frame_bracket, Basis, Irrep, SpinLabel};
use crate::tensors;

/// Residual ceiling for point-free algebraic identities.
const ALGEBRAIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteName {
    Clifford,
    Cone,
    Identities,
    Irreps,
    Killing,
    Tensors,
}

impl SuiteName {
    pub const ALL: [SuiteName; 6] = [
        SuiteName::Clifford,
        SuiteName::Cone,
        SuiteName::Identities,
        SuiteName::Irreps,
        SuiteName::Killing,
        SuiteName::Tensors,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Clifford => "clifford",
            SuiteName::Cone => "cone",
            SuiteName::Identities => "identities",
            SuiteName::Irreps => "irreps",
            SuiteName::Killing => "killing",
            SuiteName::Tensors => "tensors",
        }
    }

    fn salt(self) -> u64 {
        match self {
            SuiteName::Clifford => 0x636c_6966,
            SuiteName::Cone => 0x636f_6e65,
            SuiteName::Identities => 0x6964_656e,
            SuiteName::Irreps => 0x6972_7265,
            SuiteName::Killing => 0x6b69_6c6c,
            SuiteName::Tensors => 0x7465_6e73,
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteName {
    type Err = Error;

    fn from_str(s: &str) -> Result<SuiteName> {
        SuiteName::ALL
            .into_iter()
            .find(|name| name.as_str() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// Configuration of a verification run.  `jmax` bounds the levels swept:
/// doubled weights run up to `2·jmax + 1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub jmax: u32,
    pub tolerance: f64,
    pub samples: usize,
    pub seed: u64,
    pub basis: Basis,
    pub suites: BTreeSet<SuiteName>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            jmax: 10,
            tolerance: 1e-8,
            samples: 100,
            seed: 0,
            basis: Basis::Unitary,
            suites: SuiteName::ALL.into_iter().collect(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be at least 1".into()));
        }
        if self.suites.is_empty() {
            return Err(Error::Config("no suites selected".into()));
        }
        Ok(())
    }

    /// Largest doubled weight swept by the suites.
    pub fn max_two_s(&self) -> u32 {
        2 * self.jmax + 1
    }
}

/// Optional overlay read from a config file; every present field replaces
/// the corresponding default.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub jmax: Option<u32>,
    pub tolerance: Option<f64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub basis: Option<Basis>,
    pub suites: Option<Vec<SuiteName>>,
}

impl PartialConfig {
    pub fn apply_to(self, config: &mut SuiteConfig) {
        if let Some(v) = self.jmax {
            config.jmax = v;
        }
        if let Some(v) = self.tolerance {
            config.tolerance = v;
        }
        if let Some(v) = self.samples {
            config.samples = v;
        }
        if let Some(v) = self.seed {
            config.seed = v;
        }
        if let Some(v) = self.basis {
            config.basis = v;
        }
        if let Some(v) = self.suites {
            config.suites = v.into_iter().collect();
        }
    }
}

/// Run every selected suite and return one report per suite, ordered by
/// suite name.  Suites run on separate threads with independent seeded
/// generators, so the outcome does not depend on scheduling.
pub fn run_suites(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    config.validate()?;
    let names: Vec<SuiteName> = config.suites.iter().copied().collect();
    let outcomes: Vec<Result<VerificationReport>> = std::thread::scope(|scope| {
        let handles: Vec<_> = names
            .iter()
            .map(|&name| scope.spawn(move || run_one(name, config)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    outcomes.into_iter().collect()
}

fn run_one(name: SuiteName, config: &SuiteConfig) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ name.salt());
    match name {
        SuiteName::Irreps => irreps_suite(config),
        SuiteName::Clifford => clifford_suite(config),
        SuiteName::Identities => identities_suite(config, &mut rng),
        SuiteName::Killing => killing_suite(config, &mut rng),
        SuiteName::Tensors => tensors_suite(config, &mut rng),
        SuiteName::Cone => cone_suite(config, &mut rng),
    }
}

fn points(space: Space, count: usize, rng: &mut ChaCha8Rng) -> Vec<Point> {
    (0..count).map(|_| sample_point(space, rng)).collect()
}

fn odd_levels(max_two_s: u32) -> impl Iterator<Item = u32> {
    (1..=max_two_s).step_by(2)
}

fn even_levels(max_two_s: u32) -> impl Iterator<Item = u32> {
    (0..=max_two_s).step_by(2)
}

fn mu_tag(mu: Complex64) -> &'static str {
    if mu.norm() == 0.0 {
        "0"
    } else if mu.im > 0.0 {
        "+i/2"
    } else if mu.im < 0.0 {
        "-i/2"
    } else if mu.re > 0.0 {
        "+1/2"
    } else {
        "-1/2"
    }
}

fn irreps_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    for two_s in 0..=config.max_two_s() {
        let label = SpinLabel::new(two_s);
        let unitary = Irrep::build(label, Basis::Unitary);
        let dim = unitary.dim();
        let n = two_s as f64;

        let expected = linalg::re(-n * (n + 2.0));
        let scalar_defect = linalg::distance(
            &unitary.casimir(),
            &(CMat::identity(dim, dim) * expected),
        ) / (1.0 + expected.norm());
        checks.push(IdentityCheck::new(
            "casimir scalar is -N(N+2)",
            Some(two_s),
            None,
            scalar_defect,
            ALGEBRAIC_TOL,
        ));

        let mut bracket: f64 = 0.0;
        for k in 0..3 {
            for l in 0..3 {
                if k == l {
                    continue;
                }
                let mut target = CMat::zeros(dim, dim);
                for (m, c) in frame_bracket(k, l).iter().enumerate() {
                    target += unitary.sigma[m].scale(*c);
                }
                let got = linalg::commutator(&unitary.sigma[k], &unitary.sigma[l]);
                bracket = bracket.max(linalg::distance(&got, &target) / (1.0 + target.norm()));
            }
        }
        checks.push(IdentityCheck::new(
            "quaternionic frame brackets",
            Some(two_s),
            None,
            bracket,
            ALGEBRAIC_TOL,
        ));

        let triangular = Irrep::build(label, Basis::Triangular);
        let (converted, _) = triangular.change_basis(Basis::Unitary);
        let mut transport: f64 = 0.0;
        for i in 0..3 {
            transport = transport.max(
                linalg::distance(&converted.sigma[i], &unitary.sigma[i])
                    / (1.0 + unitary.sigma[i].norm()),
            );
        }
        checks.push(IdentityCheck::new(
            "triangular basis transports onto the unitary one",
            Some(two_s),
            None,
            transport,
            ALGEBRAIC_TOL,
        ));
    }
    Ok(VerificationReport::new(
        SuiteName::Irreps.as_str(),
        "Irreducible representations from doubled highest weights: the Casimir element acts \
         as the scalar -N(N+2), the frame images satisfy the quaternionic bracket relations, \
         and the triangular and unitary constructions are conjugate.",
        checks,
    ))
}

fn clifford_suite(config: &SuiteConfig) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    for two_s in 0..=config.max_two_s() {
        let label = SpinLabel::new(two_s);
        checks.extend(clifford::projection_relations(label, ALGEBRAIC_TOL)?);
        let triple = CliffordTriple::build(label)?;
        let (same, lower) = clifford::schur_vanishing(&triple);
        checks.push(IdentityCheck::new(
            "equivariant contraction vanishes (same level)",
            Some(two_s),
            None,
            same,
            ALGEBRAIC_TOL,
        ));
        if let Some(lower) = lower {
            checks.push(IdentityCheck::new(
                "equivariant contraction vanishes (lower level)",
                Some(two_s),
                None,
                lower,
                ALGEBRAIC_TOL,
            ));
        }
    }
    Ok(VerificationReport::new(
        SuiteName::Clifford.as_str(),
        "Clifford maps through the tensor-product decomposition: completeness and \
         orthogonality of the three projections, the quadratic and bracket-weighted \
         contraction identities, ladder norms, and vanishing of the non-equivariant \
         contractions.",
        checks,
    ))
}

fn identities_suite(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let n_points = (config.samples / 8).clamp(4, 50);

    for two_s in 1..=config.max_two_s() {
        let label = SpinLabel::new(two_s);
        checks.extend(identities::quadratic_relations(label, ALGEBRAIC_TOL)?);
        checks.extend(identities::reduced_bracket_relation(label, ALGEBRAIC_TOL)?);
        checks.extend(identities::twisted_commutation(label, ALGEBRAIC_TOL)?);
        checks.extend(identities::relation_consistency(label, ALGEBRAIC_TOL)?);
        checks.extend(identities::symbol_contractions(
            label,
            n_points as u32,
            config.seed.wrapping_add(two_s as u64),
            ALGEBRAIC_TOL,
        )?);
    }

    for n in 3..=8 {
        for j in 0..=3 {
            for mu in [Complex64::new(0.0, 0.5), linalg::re(0.5)] {
                let c = identities::forced_curvature(n, j, mu);
                checks.extend(identities::dimension_obstruction(n, j, mu, c, ALGEBRAIC_TOL));
            }
        }
    }

    for space in [Space::S3, Space::H3, Space::R3] {
        let pts = points(space, n_points, rng);
        for two_s in odd_levels(config.max_two_s()) {
            let label = SpinLabel::new(two_s);
            let battery = killing::field_battery(space, label, config.basis, rng)?;
            for (name, residual) in killing::operator_identity_residuals(&battery, &pts)? {
                checks.push(IdentityCheck::new(
                    format!("{name} [{space}]"),
                    Some(two_s),
                    None,
                    residual,
                    config.tolerance,
                ));
            }
        }
    }

    let pts = points(Space::S3, n_points, rng);
    for two_s in odd_levels(config.max_two_s()) {
        let bound = killing::eigenvalue_bound(SpinLabel::new(two_s), &pts)?;
        checks.push(IdentityCheck::boolean(
            "attained eigenvalue equals the curvature bound in integer arithmetic",
            Some(two_s),
            bound.rational_equality,
        ));
        checks.push(IdentityCheck::new(
            "eigenvalue bound gap",
            Some(two_s),
            None,
            bound.bound_gap,
            ALGEBRAIC_TOL,
        ));
        checks.push(IdentityCheck::new(
            "dirac square eigensection",
            Some(two_s),
            None,
            bound.dirac_square_residual,
            config.tolerance,
        ));
    }

    Ok(VerificationReport::new(
        SuiteName::Identities.as_str(),
        "Algebraic and analytic identities: the quadratic, reduced-bracket, and twisted \
         commutation relations of the level maps with their exact rational coefficients, \
         their contractions against random directions, the dimension obstruction that \
         singles out three dimensions, the decomposition of the connection Laplacian and \
         the symmetric curvature action on closed-form field batteries, and the sharp \
         lower eigenvalue bound for the square of the Dirac operator, attained on the \
         sphere.",
        checks,
    ))
}

fn killing_suite(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let tol = config.tolerance;

    for space in [Space::S3, Space::H3, Space::R3] {
        let pts = points(space, config.samples, rng);
        let rank_pts = &pts[..pts.len().min(12)];
        for mu in space.admissible_killing_numbers() {
            for two_s in odd_levels(config.max_two_s()) {
                let label = SpinLabel::new(two_s);
                let family = killing::generate(label, config.basis, space, mu)?;
                let tag = format!("[{space}, mu={}]", mu_tag(mu));

                let mut equation: f64 = 0.0;
                let mut dirac: f64 = 0.0;
                let mut curvature: f64 = 0.0;
                let mut twistor: f64 = 0.0;
                for field in &family {
                    equation = equation.max(killing::killing_residual(field, mu, &pts));
                    dirac = dirac.max(killing::dirac_eigen_residual(field, mu, &pts));
                    curvature =
                        curvature.max(killing::curvature_eigen_residual(field, mu, &pts));
                    twistor = twistor.max(killing::twistor_residual(field, &pts)?);
                }
                checks.push(IdentityCheck::new(
                    format!("killing equation {tag}"),
                    Some(two_s),
                    None,
                    equation,
                    tol,
                ));
                checks.push(IdentityCheck::new(
                    format!("dirac eigensection {tag}"),
                    Some(two_s),
                    None,
                    dirac,
                    tol,
                ));
                checks.push(IdentityCheck::new(
                    format!("curvature eigensection {tag}"),
                    Some(two_s),
                    None,
                    curvature,
                    tol,
                ));
                checks.push(IdentityCheck::new(
                    format!("twistor equation {tag}"),
                    Some(two_s),
                    None,
                    twistor,
                    tol,
                ));
                checks.push(IdentityCheck::boolean(
                    format!("family rank is the fibre dimension {tag}"),
                    Some(two_s),
                    killing::stacked_rank(&family, rank_pts, 1e-8) == family.len(),
                ));
                let mu_sq = mu * mu;
                checks.push(IdentityCheck::boolean(
                    format!("scalar curvature equals 24 mu^2 {tag}"),
                    Some(two_s),
                    space.scalar_curvature() == 24.0 * mu_sq.re && mu_sq.im == 0.0,
                ));
            }
        }

        for two_s in odd_levels(config.max_two_s()) {
            let label = SpinLabel::new(two_s);
            let rep = Irrep::build(label, config.basis);
            let dim = rep.dim();
            let fields: Vec<SpinorField> = match space {
                Space::R3 => {
                    let unit = |k: usize| {
                        let mut v = CVec::zeros(dim);
                        v[k] = linalg::re(1.0);
                        v
                    };
                    (0..dim)
                        .map(|k| SpinorField::affine_twistor(&rep, unit(k), CVec::zeros(dim)))
                        .chain((0..dim).map(|k| {
                            SpinorField::affine_twistor(&rep, CVec::zeros(dim), unit(k))
                        }))
                        .collect()
                }
                _ => {
                    let numbers = space.admissible_killing_numbers();
                    let mut fields = killing::generate(label, config.basis, space, numbers[0])?;
                    fields.extend(killing::generate(label, config.basis, space, numbers[1])?);
                    fields
                }
            };
            checks.push(IdentityCheck::boolean(
                format!("twistor family rank doubles the fibre dimension [{space}]"),
                Some(two_s),
                killing::stacked_rank(&fields, rank_pts, 1e-8) == 2 * dim,
            ));
        }
    }

    let pts = points(Space::S3, config.samples, rng);
    for mu in Space::S3.admissible_killing_numbers() {
        for two_s in odd_levels(config.max_two_s().saturating_sub(2)) {
            let label = SpinLabel::new(two_s);
            let family = killing::generate(label, config.basis, Space::S3, mu)?;
            let bound = 2.0 / (two_s as f64 + 2.0);
            let mut raised_equation: f64 = 0.0;
            let mut bound_defect: f64 = 0.0;
            for axis in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]] {
                for field in &family {
                    let raised = killing::spin_raise(field, axis, mu)?;
                    raised_equation =
                        raised_equation.max(killing::killing_residual(&raised, mu, &pts));
                    let mut min_ratio = f64::INFINITY;
                    for p in pts.iter().take(20) {
                        min_ratio =
                            min_ratio.min(killing::raising_norm_ratio(field, &raised, axis, p));
                    }
                    bound_defect = bound_defect.max((bound - min_ratio).max(0.0));
                }
            }
            let tag = format!("[mu={}]", mu_tag(mu));
            checks.push(IdentityCheck::new(
                format!("raising preserves the killing equation {tag}"),
                Some(two_s),
                None,
                raised_equation,
                tol,
            ));
            checks.push(IdentityCheck::new(
                format!("raising norm bound attained {tag}"),
                Some(two_s),
                None,
                bound_defect,
                ALGEBRAIC_TOL,
            ));
        }
    }
    let ranks = killing::iterated_raising_span_ranks(config.max_two_s())?;
    checks.push(IdentityCheck::boolean(
        "iterated raising spans every half-integral level",
        None,
        ranks.iter().all(|(two_s, rank)| *rank == *two_s as usize + 1),
    ));

    Ok(VerificationReport::new(
        SuiteName::Killing.as_str(),
        "Closed-form Killing spinor families on the three model spaces: the defining \
         first-order equation at seeded sample points, full family rank, the Dirac and \
         curvature eigensection properties, the twistor equation, the doubled rank of the \
         combined twistor family, and invariant spin-raising with its sharp norm bound.",
        checks,
    ))
}

fn tensors_suite(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let tol = config.tolerance;
    let pts = points(Space::S3, config.samples, rng);
    let pair_max = config.max_two_s().min(9);
    let max_degree = 4usize;

    for two_s in odd_levels(pair_max) {
        let label = SpinLabel::new(two_s);
        for mu in Space::S3.admissible_killing_numbers() {
            let family = killing::generate(label, Basis::Unitary, Space::S3, mu)?;
            let mut pairs: Vec<(usize, usize)> = vec![(0, 0)];
            pairs.extend((0..family.len() - 1).map(|k| (k, k + 1)));
            let tag = format!("[mu={}]", mu_tag(mu));
            for degree in 1..=max_degree {
                let mut worst: f64 = 0.0;
                for &(a, b) in &pairs {
                    let tensor = tensors::killing_tensor_from_spinors(
                        degree, &family[a], mu, &family[b], mu,
                    )?;
                    worst = worst.max(tensors::verify_killing_tensor(&tensor, &pts, rng));
                }
                checks.push(IdentityCheck::new(
                    format!("paired sections give killing tensors, degree {degree} {tag}"),
                    Some(two_s),
                    None,
                    worst,
                    tol,
                ));
            }
            let real = tensors::killing_tensor_real_part(2, &family[0], mu, &family[1], mu)?;
            checks.push(IdentityCheck::new(
                format!("real-part pairing is a killing tensor {tag}"),
                Some(two_s),
                None,
                tensors::verify_killing_tensor(&real, &pts, rng),
                tol,
            ));
            let symmetrised = tensors::metric_symmetrized(
                tensors::killing_tensor_from_spinors(1, &family[0], mu, &family[1], mu)?,
            );
            checks.push(IdentityCheck::new(
                format!("metric-symmetrised tensor stays killing {tag}"),
                Some(two_s),
                None,
                tensors::verify_killing_tensor(&symmetrised, &pts, rng),
                tol,
            ));
        }

        let plus = killing::generate(label, Basis::Unitary, Space::S3, linalg::re(0.5))?;
        let minus = killing::generate(label, Basis::Unitary, Space::S3, linalg::re(-0.5))?;
        let mixed = tensors::pairing_tensor(2, &plus[0], &minus[0], false)?;
        checks.push(IdentityCheck::boolean(
            "mixed killing numbers fail the tensor equation",
            Some(two_s),
            tensors::verify_killing_tensor(&mixed, &pts[..pts.len().min(12)], rng) > 1e-3,
        ));

        for degree in 1..=max_degree.min(two_s as usize) {
            let weight = tensors::weight_checks(label, degree, rng)?;
            checks.push(IdentityCheck::new(
                format!("weight components vanish off the band, degree {degree}"),
                Some(two_s),
                None,
                weight.vanishing_max,
                ALGEBRAIC_TOL,
            ));
            checks.push(IdentityCheck::new(
                format!("extreme weight component survives, degree {degree}"),
                Some(two_s),
                None,
                (weight.highest_weight_ratio - 1.0).abs(),
                ALGEBRAIC_TOL,
            ));
            checks.push(IdentityCheck::new(
                format!("slot raising matches conjugate lowering, degree {degree}"),
                Some(two_s),
                None,
                weight.raising_defect,
                ALGEBRAIC_TOL,
            ));
        }
    }

    for two_s in even_levels(config.max_two_s()) {
        let label = SpinLabel::new(two_s);
        let mut families = Vec::new();
        for mu in Space::S3.admissible_killing_numbers() {
            let family = tensors::generate_integral(label, config.basis, mu)?;
            let tag = format!("[mu={}]", mu_tag(mu));
            let mut equation: f64 = 0.0;
            for field in &family {
                equation = equation.max(killing::killing_residual(field, mu, &pts));
            }
            checks.push(IdentityCheck::new(
                format!("integral family solves the even-level equation {tag}"),
                Some(two_s),
                None,
                equation,
                tol,
            ));
            checks.push(IdentityCheck::boolean(
                format!("integral family rank is the fibre dimension {tag}"),
                Some(two_s),
                killing::stacked_rank(&family, &pts[..pts.len().min(12)], 1e-8) == family.len(),
            ));
            families.extend(family);
        }
        if two_s > 0 {
            checks.push(IdentityCheck::boolean(
                "combined integral family rank doubles the fibre dimension",
                Some(two_s),
                killing::stacked_rank(&families, &pts[..pts.len().min(12)], 1e-8)
                    == families.len(),
            ));

            let theta = tensors::sym_power_embedding(label)?;
            let dim = label.dim();
            checks.push(IdentityCheck::new(
                "symmetric power embedding is an isometry",
                Some(two_s),
                None,
                linalg::distance(&(theta.adjoint() * &theta), &CMat::identity(dim, dim)),
                ALGEBRAIC_TOL,
            ));
            checks.push(IdentityCheck::new(
                "embedded image is slot-symmetric",
                Some(two_s),
                None,
                tensors::embedded_symmetry_residual(&theta),
                ALGEBRAIC_TOL,
            ));
            let probe = CVec::from_iterator(
                dim,
                (0..dim).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))),
            );
            checks.push(IdentityCheck::new(
                "embedded image is trace-free",
                Some(two_s),
                None,
                tensors::embedded_trace_residual(&theta, &probe),
                ALGEBRAIC_TOL,
            ));

            let flat = tensors::parallel_flat_check(label, rng)?;
            checks.push(IdentityCheck::new(
                "flat trace-free power is symmetric",
                Some(two_s),
                None,
                flat.symmetry,
                ALGEBRAIC_TOL,
            ));
            checks.push(IdentityCheck::new(
                "flat trace-free power is trace-free",
                Some(two_s),
                None,
                flat.trace,
                ALGEBRAIC_TOL,
            ));
            checks.push(IdentityCheck::new(
                "flat trace-free power is parallel",
                Some(two_s),
                None,
                flat.killing,
                tol,
            ));
        }
    }

    let symbol = tensors::d1_symbol_check()?;
    checks.push(IdentityCheck::new(
        "first-order symbols transport onto curl, gradient, divergence",
        None,
        None,
        symbol.deviation,
        ALGEBRAIC_TOL,
    ));
    checks.push(IdentityCheck::new(
        "level-preserving symbol constant is one",
        None,
        None,
        (symbol.curl_constant - linalg::re(1.0)).norm(),
        ALGEBRAIC_TOL,
    ));
    checks.push(IdentityCheck::new(
        "raising and lowering symbol constants are conjugate units",
        None,
        None,
        (symbol.gradient_constant.norm() - 1.0)
            .abs()
            .max((symbol.divergence_constant + symbol.gradient_constant.conj()).norm()),
        ALGEBRAIC_TOL,
    ));

    Ok(VerificationReport::new(
        SuiteName::Tensors.as_str(),
        "Symmetric Killing tensors: pairings of Killing spinors solve the symmetrized \
         derivative equation (and mixed Killing numbers fail it), metric symmetrization \
         preserves the property, integral-spin families solve the even-level equation and \
         embed as trace-free symmetric powers, flat trace-free powers are parallel, weight \
         components respect the band structure, and the three first-order symbols are \
         curl, gradient, and divergence.",
        checks,
    ))
}

fn cone_suite(config: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let split = cone::verify_so4_splitting(config.max_two_s());
    checks.push(IdentityCheck::boolean(
        "split bases span the four-dimensional rotations",
        None,
        split.span_rank == 6,
    ));
    checks.push(IdentityCheck::new(
        "self-dual and anti-self-dual triples commute",
        None,
        None,
        split.mutual_commutation,
        ALGEBRAIC_TOL,
    ));
    checks.push(IdentityCheck::new(
        "split action is a bracket homomorphism",
        None,
        None,
        split.homomorphism,
        ALGEBRAIC_TOL,
    ));
    checks.push(IdentityCheck::new(
        "mirror triple acts as zero",
        None,
        None,
        split.mirror_vanishing,
        ALGEBRAIC_TOL,
    ));
    checks.push(IdentityCheck::new(
        "wedge action table holds",
        None,
        None,
        split.wedge_table,
        ALGEBRAIC_TOL,
    ));

    let connection = cone::verify_connection_coefficients(config.max_two_s());
    checks.push(IdentityCheck::new(
        "assembled coefficient is the base one shifted by half sigma",
        None,
        None,
        connection.net_formula,
        ALGEBRAIC_TOL,
    ));
    checks.push(IdentityCheck::new(
        "assembled coefficient is radius-independent",
        None,
        None,
        connection.r_independence,
        1e-13,
    ));
    checks.push(IdentityCheck::boolean(
        "radial coefficient vanishes identically",
        None,
        connection.radial_norm == 0.0,
    ));

    let samples = (config.samples / 2).max(1);
    for two_s in odd_levels(config.max_two_s()) {
        for mu in Space::S3.admissible_killing_numbers() {
            let report =
                cone::verify_parallel_correspondence(SpinLabel::new(two_s), mu, samples, rng)?;
            let tag = format!("[mu={}]", mu_tag(mu));
            checks.push(IdentityCheck::new(
                format!("pulled-back killing spinors are parallel {tag}"),
                Some(two_s),
                None,
                report.parallel,
                config.tolerance,
            ));
            checks.push(IdentityCheck::boolean(
                format!("radial covariant derivative vanishes exactly {tag}"),
                Some(two_s),
                report.radial == 0.0,
            ));
            checks.push(IdentityCheck::boolean(
                format!("mismatched chirality factor fails {tag}"),
                Some(two_s),
                report.wrong_chirality > 1e-2,
            ));
            checks.push(IdentityCheck::new(
                format!("restriction to the unit sphere solves the killing equation {tag}"),
                Some(two_s),
                None,
                report.converse,
                config.tolerance,
            ));
        }
    }

    Ok(VerificationReport::new(
        SuiteName::Cone.as_str(),
        "The flat cone over the round sphere: the self-dual/anti-self-dual splitting of \
         four-dimensional rotations, connection coefficients assembled from raw \
         Levi-Civita data matching the half-sigma shift independently of the radius, and \
         the two-way correspondence between Killing spinors on the base and parallel \
         sections of the matching chirality factor.",
        checks,
    ))
}
