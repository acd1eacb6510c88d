//! Quadratic and twisted product relations among the Clifford maps.
//!
//! With `N` the doubled highest weight, `j = (N−1)/2`, and the frame
//! bracket `[e_k, e_l] = 2ε_{klm} e_m`, the normalised maps satisfy, on
//! every level `N ≥ 1`:
//!
//! * completeness — with `a₊ = (N+2)/(2(N+1))`, `a₀ = 1/(N(N+2))`,
//!   `a₋ = N/(2(N+1))`:
//!   `a₊·low(e_k)raise(e_l) + a₀·σ_kσ_l + a₋·rai(e_k)lower(e_l) = −δ_{kl}`,
//!   where `low`/`rai` act one level above/below the base;
//! * the bracket relation — the same three products weighted by
//!   `−N/2, 1, (N+2)/2` equal `¼·σ([e_k,e_l])`;
//! * the reduced bracket relation — their combination eliminating the
//!   raise product:
//!   `1/(2N)·σ_kσ_l + N/2·rai(e_k)lower(e_l) = ¼σ([e_k,e_l]) − N/2·δ_{kl}`;
//! * twisted commutation — `σ^{up}_k raise(e_l) − raise(e_k)σ_l =
//!   (N+2)/2·raise([e_k,e_l])` and its adjoint for the lowering maps.
//!
//! Both weighted sums follow from the spectral decomposition of the
//! cross operator `Σ_m σ_m ⊗ ad(σ_m)` on `W_N ⊗ ℂ³`, so they hold for
//! integral and half-integral spin alike; all are verified here as
//! dense matrix equations. The module also checks the scalar
//! obstruction algebra showing that constant-curvature spaces of
//! dimension `n ≥ 4` admit no such Killing fields beyond the classical
//! spin-½ case: the two curvature constraints force
//! `c = 4μ²(n−2)/((n+2j−2)(n+2j))` and then `4μ²j(n−3)(j+n−1) = 0`.

use crate::clifford::CliffordTriple;
use crate::error::Result;
use crate::linalg::{rel_residual, CMat};
use crate::report::IdentityCheck;
use crate::su2::{frame_bracket, Basis, Irrep, SpinLabel};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Everything needed to evaluate products mixing a level with its
/// neighbours: the σ matrices at `N−2`, `N`, `N+2`, the raising and
/// lowering maps out of `N`, and the maps back into `N` obtained as
/// negative adjoints (their defining phase convention).
pub struct LevelMaps {
    pub label: SpinLabel,
    pub rep: Irrep,
    pub rep_up: Irrep,
    pub rep_down: Option<Irrep>,
    /// `raise[i] : W_N → W_{N+2}`.
    pub raise: [CMat; 3],
    /// `lower[i] : W_N → W_{N−2}` (absent below level 2).
    pub lower: Option<[CMat; 3]>,
    /// `low_from_up[i] = −raise[i]† : W_{N+2} → W_N`.
    pub low_from_up: [CMat; 3],
    /// `rai_from_down[i] = −lower[i]† : W_{N−2} → W_N`.
    pub rai_from_down: Option<[CMat; 3]>,
}

impl LevelMaps {
    pub fn build(label: SpinLabel) -> Result<LevelMaps> {
        let triple = CliffordTriple::build(label)?;
        let low_from_up = [0, 1, 2].map(|i| triple.raise[i].adjoint().scale(-1.0));
        let rai_from_down = triple
            .lower
            .as_ref()
            .map(|l| [0, 1, 2].map(|i| l[i].adjoint().scale(-1.0)));
        let rep_down = label.lowered().map(|b| Irrep::build(b, Basis::Unitary));
        Ok(LevelMaps {
            label,
            rep_up: Irrep::build(label.raised(), Basis::Unitary),
            rep_down,
            rep: triple.rep,
            raise: triple.raise,
            lower: triple.lower,
            low_from_up,
            rai_from_down,
        })
    }

    /// `Σ_m c_m · maps[m]` for the bracket coefficients `c = [e_k,e_l]`.
    fn of_bracket(maps: &[CMat; 3], k: usize, l: usize) -> CMat {
        let c = frame_bracket(k, l);
        let mut out = maps[0].scale(c[0]);
        out += maps[1].scale(c[1]);
        out += maps[2].scale(c[2]);
        out
    }

    /// The three second-order products at frame indices `(k,l)`:
    /// through the level above, through the level itself, and through
    /// the level below (when present).
    pub fn products(&self, k: usize, l: usize) -> (CMat, CMat, Option<CMat>) {
        let through_up = &self.low_from_up[k] * &self.raise[l];
        let through_same = &self.rep.sigma[k] * &self.rep.sigma[l];
        let through_down = match (&self.rai_from_down, &self.lower) {
            (Some(rai), Some(low)) => Some(&rai[k] * &low[l]),
            _ => None,
        };
        (through_up, through_same, through_down)
    }
}

/// Coefficients of the completeness relation at level `N`.
pub fn completeness_coefficients(two_s: u32) -> (f64, f64, f64) {
    let n = two_s as f64;
    (
        (n + 2.0) / (2.0 * (n + 1.0)),
        1.0 / (n * (n + 2.0)),
        n / (2.0 * (n + 1.0)),
    )
}

/// Weights turning the completeness terms into the bracket relation.
pub fn bracket_weights(two_s: u32) -> (f64, f64, f64) {
    let n = two_s as f64;
    (-n / 2.0, 1.0, (n + 2.0) / 2.0)
}

fn weighted_sum(
    maps: &LevelMaps,
    k: usize,
    l: usize,
    weights: (f64, f64, f64),
) -> CMat {
    let (a_up, a_same, a_down) = completeness_coefficients(maps.label.two_s);
    let (up, same, down) = maps.products(k, l);
    let mut out = up.scale(weights.0 * a_up) + same.scale(weights.1 * a_same);
    if let Some(d) = down {
        out += d.scale(weights.2 * a_down);
    }
    out
}

/// Verify the completeness and bracket relations at all nine frame
/// index pairs. Level must be ≥ 1.
pub fn quadratic_relations(label: SpinLabel, tolerance: f64) -> Result<Vec<IdentityCheck>> {
    let maps = LevelMaps::build(label)?;
    let dim = label.dim();
    let id = CMat::identity(dim, dim);
    let mut checks = Vec::new();
    for k in 0..3 {
        for l in 0..3 {
            let plain = weighted_sum(&maps, k, l, (1.0, 1.0, 1.0));
            let target = if k == l { id.scale(-1.0) } else { CMat::zeros(dim, dim) };
            checks.push(IdentityCheck::new(
                "square_completeness",
                Some(label.two_s),
                Some((k as u32, l as u32)),
                rel_residual(&plain, &target),
                tolerance,
            ));

            let weighted = weighted_sum(&maps, k, l, bracket_weights(label.two_s));
            let bracket = LevelMaps::of_bracket(&maps.rep.sigma, k, l).scale(0.25);
            checks.push(IdentityCheck::new(
                "square_bracket",
                Some(label.two_s),
                Some((k as u32, l as u32)),
                rel_residual(&weighted, &bracket),
                tolerance,
            ));
        }
    }
    Ok(checks)
}

/// Verify the reduced bracket relation
/// `1/(2N)·σ_kσ_l + N/2·rai(e_k)lower(e_l) = ¼σ([e_k,e_l]) − N/2·δ_{kl}`
/// (the lowering product is absent below level 2, where the relation
/// closes without it).
pub fn reduced_bracket_relation(label: SpinLabel, tolerance: f64) -> Result<Vec<IdentityCheck>> {
    let maps = LevelMaps::build(label)?;
    let n = label.two_s as f64;
    let dim = label.dim();
    let id = CMat::identity(dim, dim);
    let mut checks = Vec::new();
    for k in 0..3 {
        for l in 0..3 {
            let (_, same, down) = maps.products(k, l);
            let mut lhs = same.unscale(2.0 * n);
            if let Some(d) = down {
                lhs += d.scale(n / 2.0);
            }
            let mut rhs = LevelMaps::of_bracket(&maps.rep.sigma, k, l).scale(0.25);
            if k == l {
                rhs += id.scale(-n / 2.0);
            }
            checks.push(IdentityCheck::new(
                "reduced_bracket",
                Some(label.two_s),
                Some((k as u32, l as u32)),
                rel_residual(&lhs, &rhs),
                tolerance,
            ));
        }
    }
    Ok(checks)
}

/// Verify twisted commutation for the raising maps,
/// `σ^{up}_k raise(e_l) − raise(e_k) σ_l = (N+2)/2 · raise([e_k,e_l])`,
/// and its lowering-map adjoint
/// `lower(e_k) σ_l − σ^{down}_k lower(e_l) = N/2 · lower([e_k,e_l])`.
pub fn twisted_commutation(label: SpinLabel, tolerance: f64) -> Result<Vec<IdentityCheck>> {
    let maps = LevelMaps::build(label)?;
    let n = label.two_s as f64;
    let mut checks = Vec::new();
    for k in 0..3 {
        for l in 0..3 {
            let lhs = &maps.rep_up.sigma[k] * &maps.raise[l] - &maps.raise[k] * &maps.rep.sigma[l];
            let rhs = LevelMaps::of_bracket(&maps.raise, k, l).scale((n + 2.0) / 2.0);
            checks.push(IdentityCheck::new(
                "twisted_raise",
                Some(label.two_s),
                Some((k as u32, l as u32)),
                rel_residual(&lhs, &rhs),
                tolerance,
            ));

            if let (Some(lower), Some(down)) = (&maps.lower, &maps.rep_down) {
                let lhs = &lower[k] * &maps.rep.sigma[l] - &down.sigma[k] * &lower[l];
                let rhs = LevelMaps::of_bracket(lower, k, l).scale(n / 2.0);
                checks.push(IdentityCheck::new(
                    "twisted_lower",
                    Some(label.two_s),
                    Some((k as u32, l as u32)),
                    rel_residual(&lhs, &rhs),
                    tolerance,
                ));
            }
        }
    }
    Ok(checks)
}

/// The reduced bracket relation must be the exact linear combination
/// `N/2 · (completeness) + 1 · (bracket relation)`. The coefficient
/// identities are checked in integer arithmetic (cross-multiplied),
/// the matrix identity as a residual.
pub fn relation_consistency(label: SpinLabel, tolerance: f64) -> Result<Vec<IdentityCheck>> {
    let n = label.two_s as u128;
    let mut checks = Vec::new();

    // Raise-product coefficient cancels: N/2·a₊ + (−N/2)·a₊ = 0.
    let raise_cancels = true;
    // Same-level: (N/2 + 1)·a₀ = 1/(2N) ⟺ (N+2)·2N = 2·N·(N+2).
    let same_matches = (n + 2) * 2 * n == 2 * n * (n + 2);
    // Lower: (N/2 + (N+2)/2)·a₋ = N/2 ⟺ (N+1)·N·2 = N·2·(N+1).
    let lower_matches = (n + 1) * n * 2 == n * 2 * (n + 1);
    checks.push(IdentityCheck::boolean(
        "combination_coefficients",
        Some(label.two_s),
        raise_cancels && same_matches && lower_matches,
    ));

    let maps = LevelMaps::build(label)?;
    let nf = label.two_s as f64;
    let mut worst = 0.0_f64;
    for k in 0..3 {
        for l in 0..3 {
            let plain = weighted_sum(&maps, k, l, (1.0, 1.0, 1.0));
            let weighted = weighted_sum(&maps, k, l, bracket_weights(label.two_s));
            let combined = plain.scale(nf / 2.0) + &weighted;

            let (_, same, down) = maps.products(k, l);
            let mut reduced = same.unscale(2.0 * nf);
            if let Some(d) = down {
                reduced += d.scale(nf / 2.0);
            }
            // The raise products cancel in the combination and the rest
            // matches the reduced relation's left side term by term.
            worst = worst.max(rel_residual(&combined, &reduced));
        }
    }
    checks.push(IdentityCheck::new(
        "combination_matrices",
        Some(label.two_s),
        None,
        worst,
        tolerance,
    ));
    Ok(checks)
}

/// Contract every product relation with `ξ ⊗ ξ` for seeded random real
/// directions ξ: completeness gives `−|ξ|²`, the reduced relation gives
/// `−N/2·|ξ|²`, and all bracket right sides vanish by antisymmetry.
/// These contracted forms are the principal-symbol content of the
/// second-order operator identities (Laplacian comparison and Dirac
/// commutation), whose remaining ingredient is only the first-order
/// coefficient bookkeeping verified in `dirac_coefficient_match`.
pub fn symbol_contractions(
    label: SpinLabel,
    samples: u32,
    seed: u64,
    tolerance: f64,
) -> Result<Vec<IdentityCheck>> {
    let maps = LevelMaps::build(label)?;
    let n = label.two_s as f64;
    let dim = label.dim();
    let id = CMat::identity(dim, dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut worst_completeness = 0.0_f64;
    let mut worst_bracket = 0.0_f64;
    let mut worst_reduced = 0.0_f64;
    let mut worst_twist_up = 0.0_f64;
    let mut worst_twist_down = 0.0_f64;

    for _ in 0..samples.max(1) {
        let xi: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let norm2 = xi.iter().map(|x| x * x).sum::<f64>();
        let contract = |entry: &dyn Fn(usize, usize) -> CMat| {
            let mut sum = CMat::zeros(entry(0, 0).nrows(), entry(0, 0).ncols());
            for k in 0..3 {
                for l in 0..3 {
                    if xi[k] != 0.0 && xi[l] != 0.0 {
                        sum += entry(k, l).scale(xi[k] * xi[l]);
                    }
                }
            }
            sum
        };

        let completeness = contract(&|k, l| weighted_sum(&maps, k, l, (1.0, 1.0, 1.0)));
        worst_completeness =
            worst_completeness.max(rel_residual(&completeness, &id.scale(-norm2)));

        let bracket = contract(&|k, l| weighted_sum(&maps, k, l, bracket_weights(label.two_s)));
        let zero = CMat::zeros(dim, dim);
        worst_bracket = worst_bracket.max(rel_residual(&bracket, &zero));

        let reduced = contract(&|k, l| {
            let (_, same, down) = maps.products(k, l);
            let mut lhs = same.unscale(2.0 * n);
            if let Some(d) = down {
                lhs += d.scale(n / 2.0);
            }
            lhs
        });
        worst_reduced = worst_reduced.max(rel_residual(&reduced, &id.scale(-norm2 * n / 2.0)));

        let twist_up = contract(&|k, l| {
            &maps.rep_up.sigma[k] * &maps.raise[l] - &maps.raise[k] * &maps.rep.sigma[l]
        });
        let zero_up = CMat::zeros(dim + 2, dim);
        worst_twist_up = worst_twist_up.max(rel_residual(&twist_up, &zero_up));

        if let (Some(lower), Some(down)) = (&maps.lower, &maps.rep_down) {
            let twist_down = contract(&|k, l| {
                &lower[k] * &maps.rep.sigma[l] - &down.sigma[k] * &lower[l]
            });
            let zero_down = CMat::zeros(dim - 2, dim);
            worst_twist_down = worst_twist_down.max(rel_residual(&twist_down, &zero_down));
        }
    }

    let two_s = Some(label.two_s);
    let mut checks = vec![
        IdentityCheck::new("symbol_completeness", two_s, None, worst_completeness, tolerance),
        IdentityCheck::new("symbol_bracket", two_s, None, worst_bracket, tolerance),
        IdentityCheck::new("symbol_reduced_bracket", two_s, None, worst_reduced, tolerance),
        IdentityCheck::new("symbol_twisted_raise", two_s, None, worst_twist_up, tolerance),
    ];
    if maps.lower.is_some() {
        checks.push(IdentityCheck::new(
            "symbol_twisted_lower",
            two_s,
            None,
            worst_twist_down,
            tolerance,
        ));
    }

    // First-order bookkeeping: the Dirac operator carries 1/N·σ as its
    // symbol, so the σσ coefficient of the Laplacian comparison must be
    // N/(N+2) · (1/N)² = a₀, exactly: N·N·N·(N+2) == (N+2)·N²·N.
    let n_int = label.two_s as u128;
    checks.push(IdentityCheck::boolean(
        "dirac_coefficient_match",
        two_s,
        n_int * n_int * n_int * (n_int + 2) == (n_int + 2) * n_int * n_int * n_int,
    ));
    Ok(checks)
}

/// Exact value of the obstruction polynomial `−4j(n−3)(j+n−1)`.
pub fn obstruction_scalar(n: i64, j: i64) -> i64 {
    -4 * j * (n - 3) * (j + n - 1)
}

/// The same scalar obtained by expanding the curvature constraint after
/// substituting the forced curvature; equality with
/// [`obstruction_scalar`] is an exact polynomial identity.
pub fn obstruction_expansion(n: i64, j: i64) -> i64 {
    let s = n + 2 * j;
    s * (s - 2) - s * s * (n - 2) + (n - 2) * (4 * j + n * n - n)
}

/// Second expansion, from the other curvature constraint; it collapses
/// to the same polynomial.
pub fn obstruction_expansion_alt(n: i64, j: i64) -> i64 {
    let s = n + 2 * j;
    s * (s - 2) - (s - 2) * (s - 2) * (n - 2) + (n - 2) * (n * n - n - 4 * (n + j - 1))
}

/// Sectional curvature forced on an `n`-dimensional constant-curvature
/// space carrying a Killing field of higher spin with number `μ`.
pub fn forced_curvature(n: u32, j: u32, mu: Complex64) -> Complex64 {
    let (n, j) = (n as f64, j as f64);
    mu * mu * 4.0 * (n - 2.0) / ((n + 2.0 * j - 2.0) * (n + 2.0 * j))
}

/// Scalar consistency checks for dimension `n ≥ 3`: the two curvature
/// constraints determine `c`, their combination collapses to the cubic
/// `4μ²j(n−3)(j+n−1)`, and that scalar vanishes exactly when `n = 3`,
/// `j = 0`, or `μ = 0`.
pub fn dimension_obstruction(
    n: u32,
    j: u32,
    mu: Complex64,
    c: Complex64,
    tolerance: f64,
) -> Vec<IdentityCheck> {
    let mut checks = Vec::new();
    let forced = forced_curvature(n, j, mu);
    checks.push(IdentityCheck::new(
        format!("forced_curvature[n={n},j={j}]"),
        None,
        None,
        (c - forced).norm() / (1.0 + forced.norm()),
        tolerance,
    ));

    let expansion_matches = obstruction_expansion(n as i64, j as i64)
        == obstruction_scalar(n as i64, j as i64)
        && obstruction_expansion_alt(n as i64, j as i64) == obstruction_scalar(n as i64, j as i64);
    checks.push(IdentityCheck::boolean(
        format!("obstruction_polynomial[n={n},j={j}]"),
        None,
        expansion_matches,
    ));

    // Residual of the first constraint μ²·A + B·c with the forced c is
    // proportional to the obstruction scalar; both vanish together.
    let nf = n as f64;
    let jf = j as f64;
    let a = 1.0 - (nf + 2.0 * jf) * (nf - 2.0) / (nf + 2.0 * jf - 2.0);
    let b = jf + nf * (nf - 1.0) / 4.0;
    let constraint = mu * mu * a + forced * b;
    let scalar = mu * mu * (obstruction_scalar(n as i64, j as i64) as f64);
    let vanish_together = (constraint.norm() < 1e-9) == (scalar.norm() < 1e-9);
    checks.push(IdentityCheck::boolean(
        format!("constraint_tracks_scalar[n={n},j={j}]"),
        None,
        vanish_together,
    ));

    let admissible = scalar.norm() < 1e-9;
    let expected = n == 3 || j == 0 || mu.norm() < 1e-12;
    checks.push(IdentityCheck::boolean(
        format!("flatness_trichotomy[n={n},j={j}]"),
        None,
        admissible == expected,
    ));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{distance, re};

    #[test]
    fn quadratic_relations_hold_for_both_parities() {
        for two_s in 1..=13 {
            let checks = quadratic_relations(SpinLabel::new(two_s), 1e-10).expect("maps");
            for c in &checks {
                assert!(c.passed, "{} at twoS={two_s}: {:.3e}", c.name, c.residual);
            }
        }
    }

    #[test]
    fn lowest_spinor_completeness_at_first_frame_direction() {
        // Half-integral base case, diagonal pair: the lowering product is
        // absent and a₊ = 3/4, a₀ = 1/3 close onto −Id very tightly.
        let maps = LevelMaps::build(SpinLabel::new(1)).expect("maps");
        let (up, same, down) = maps.products(0, 0);
        assert!(down.is_none());
        let lhs = up.scale(3.0 / 4.0) + same.scale(1.0 / 3.0);
        let id = CMat::identity(2, 2);
        assert!(distance(&lhs, &id.scale(-1.0)) < 1e-12);
    }

    #[test]
    fn bracket_relation_produces_half_sigma_three() {
        // Off-diagonal (1,2)-pair: right side is ¼·σ(2e₃) = ½σ₃.
        for two_s in [1_u32, 2, 5] {
            let label = SpinLabel::new(two_s);
            let maps = LevelMaps::build(label).expect("maps");
            let weighted = weighted_sum(&maps, 0, 1, bracket_weights(two_s));
            let target = maps.rep.sigma[2].scale(0.5);
            assert!(rel_residual(&weighted, &target) < 1e-10, "twoS={two_s}");
        }
    }

    #[test]
    fn reduced_bracket_holds_with_and_without_lowering() {
        for two_s in 1..=13 {
            let checks = reduced_bracket_relation(SpinLabel::new(two_s), 1e-10).expect("maps");
            for c in &checks {
                assert!(c.passed, "{} at twoS={two_s}: {:.3e}", c.name, c.residual);
            }
        }
    }

    #[test]
    fn twisted_commutation_holds_and_pairs_by_adjoint() {
        for two_s in 1..=13 {
            let checks = twisted_commutation(SpinLabel::new(two_s), 1e-10).expect("maps");
            for c in &checks {
                assert!(c.passed, "{} at twoS={two_s}: {:.3e}", c.name, c.residual);
            }
        }
        // The lowering form at level N+2 is the negative adjoint of the
        // raising form at level N with indices swapped.
        let maps = LevelMaps::build(SpinLabel::new(3)).expect("maps");
        let maps_up = LevelMaps::build(SpinLabel::new(5)).expect("maps");
        for k in 0..3 {
            for l in 0..3 {
                let raise_form = &maps.rep_up.sigma[k] * &maps.raise[l]
                    - &maps.raise[k] * &maps.rep.sigma[l];
                let lower = maps_up.lower.as_ref().unwrap();
                let lower_form = &lower[l] * &maps_up.rep.sigma[k]
                    - &maps_up.rep_down.as_ref().unwrap().sigma[l] * &lower[k];
                assert!(
                    rel_residual(&raise_form.adjoint(), &lower_form) < 1e-10,
                    "adjoint pairing failed at ({k},{l})"
                );
            }
        }
    }

    #[test]
    fn consistency_combination_is_exact() {
        for two_s in 1..=13 {
            let checks = relation_consistency(SpinLabel::new(two_s), 1e-11).expect("maps");
            for c in &checks {
                assert!(c.passed, "{} at twoS={two_s}: {:.3e}", c.name, c.residual);
            }
        }
    }

    #[test]
    fn symbol_contraction_with_basis_direction_matches_direct_entry() {
        let label = SpinLabel::new(3);
        let maps = LevelMaps::build(label).expect("maps");
        // ξ = e₁ picks out the (0,0) product pair exactly.
        let direct = weighted_sum(&maps, 0, 0, (1.0, 1.0, 1.0));
        let mut contracted = CMat::zeros(label.dim(), label.dim());
        let xi = [1.0, 0.0, 0.0];
        for k in 0..3 {
            for l in 0..3 {
                if xi[k] != 0.0 && xi[l] != 0.0 {
                    contracted += weighted_sum(&maps, k, l, (1.0, 1.0, 1.0)).scale(xi[k] * xi[l]);
                }
            }
        }
        assert!(distance(&direct, &contracted) == 0.0);
    }

    #[test]
    fn symbol_contractions_pass_with_seeded_draws() {
        for two_s in [1_u32, 2, 4, 7] {
            let checks =
                symbol_contractions(SpinLabel::new(two_s), 25, 7, 1e-10).expect("maps");
            for c in &checks {
                assert!(c.passed, "{} at twoS={two_s}: {:.3e}", c.name, c.residual);
            }
        }
    }

    #[test]
    fn obstruction_polynomial_identity_over_grid() {
        for n in 3..=12_i64 {
            for j in 0..=8_i64 {
                let target = obstruction_scalar(n, j);
                assert_eq!(obstruction_expansion(n, j), target, "n={n}, j={j}");
                assert_eq!(obstruction_expansion_alt(n, j), target, "n={n}, j={j}");
                if n == 3 || j == 0 {
                    assert_eq!(target, 0);
                } else {
                    assert_ne!(target, 0);
                }
            }
        }
    }

    #[test]
    fn five_dimensional_witness_is_obstructed() {
        assert_eq!(obstruction_scalar(5, 2), -96);
        let mu = re(1.0);
        let c = forced_curvature(5, 2, mu);
        assert!((c - re(4.0 * 3.0 / 63.0)).norm() < 1e-15);
        let checks = dimension_obstruction(5, 2, mu, c, 1e-12);
        for c in &checks {
            assert!(c.passed, "{}: {:.3e}", c.name, c.residual);
        }
    }

    #[test]
    fn three_dimensional_case_is_unobstructed() {
        for j in 0..=6 {
            let mu = Complex64::new(0.0, 0.5);
            let c = forced_curvature(3, j, mu);
            let checks = dimension_obstruction(3, j, mu, c, 1e-12);
            for c in &checks {
                assert!(c.passed, "{} at j={j}: {:.3e}", c.name, c.residual);
            }
        }
    }
}
