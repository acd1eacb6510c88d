//! Small dense complex-matrix helpers shared by every module.
//!
//! All representation matrices in this crate are modest dense
//! `DMatrix<Complex64>` values (dimension ≤ a few hundred), so plain
//! nalgebra routines are sufficient; no external LAPACK backend is used.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Complex unit `i`.
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Real scalar as a complex number.
pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Hermitian inner product, linear in the first argument.
pub fn inner(u: &CVec, v: &CVec) -> Complex64 {
    v.dotc(u)
}

/// Frobenius distance between two matrices.
pub fn distance(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm()
}

/// Relative residual `‖a − b‖ / (1 + max(‖a‖, ‖b‖))`.
pub fn rel_residual(a: &CMat, b: &CMat) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

/// Relative residual between two vectors.
pub fn rel_residual_vec(a: &CVec, b: &CVec) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

/// Commutator `[a, b] = ab − ba`.
pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Eigenvalues and orthonormal eigenvectors of a Hermitian matrix,
/// grouped into clusters whose eigenvalues agree within `tol`.
///
/// Returns `(mean eigenvalue, orthonormal basis of the cluster)` pairs
/// sorted by descending eigenvalue. The input is symmetrised before
/// decomposition so tiny Hermiticity violations do not leak in.
pub fn hermitian_clusters(m: &CMat, tol: f64) -> Vec<(f64, Vec<CVec>)> {
    let herm = (m + m.adjoint()).scale(0.5);
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut clusters: Vec<(f64, Vec<CVec>)> = Vec::new();
    for idx in order {
        let lambda = eig.eigenvalues[idx];
        let vec = CVec::from(eig.eigenvectors.column(idx));
        match clusters.last_mut() {
            Some((mean, members)) if (lambda - *mean).abs() <= tol => {
                let n = members.len() as f64;
                *mean = (*mean * n + lambda) / (n + 1.0);
                members.push(vec);
            }
            _ => clusters.push((lambda, vec![vec])),
        }
    }
    // Re-orthonormalise each cluster: eigenvectors of nearly equal
    // eigenvalues may drift away from orthogonality.
    for (_, members) in clusters.iter_mut() {
        gram_schmidt(members);
    }
    clusters
}

/// In-place modified Gram–Schmidt; drops vectors that become numerically zero.
pub fn gram_schmidt(vectors: &mut Vec<CVec>) {
    let mut basis: Vec<CVec> = Vec::with_capacity(vectors.len());
    for v in vectors.drain(..) {
        let mut w = v;
        for b in &basis {
            let coeff = inner(&w, b);
            w -= b.scale(1.0) * coeff;
        }
        let n = w.norm();
        if n > 1e-12 {
            basis.push(w.unscale(n));
        }
    }
    *vectors = basis;
}

/// Rank of the column span of `m`, by singular values relative to the largest.
pub fn rank(m: &CMat, rel_tol: f64) -> usize {
    let svals = m.clone().singular_values();
    let max = svals.iter().cloned().fold(0.0_f64, f64::max);
    if max == 0.0 {
        return 0;
    }
    svals.iter().filter(|&&s| s > rel_tol * max).count()
}

/// Rank of a family of vectors stacked as columns, after normalising each
/// column so wildly different scales cannot mask independence.
pub fn rank_of_columns(columns: &[CVec], rel_tol: f64) -> usize {
    if columns.is_empty() {
        return 0;
    }
    let rows = columns[0].len();
    let mut m = CMat::zeros(rows, columns.len());
    for (idx, col) in columns.iter().enumerate() {
        let n = col.norm();
        let scaled = if n > 0.0 { col.unscale(n) } else { col.clone() };
        m.set_column(idx, &scaled);
    }
    rank(&m, rel_tol)
}

/// The matrix exponential of a skew-Hermitian matrix, via the unitary
/// eigendecomposition of its Hermitian companion `i·K`.
pub fn exp_skew_hermitian(k: &CMat) -> CMat {
    let herm = k.map(|z| z * I);
    let herm = (herm.clone() + herm.adjoint()).scale(0.5);
    let eig = herm.symmetric_eigen();
    let u = eig.eigenvectors;
    let phases = CVec::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| (-I * l).exp()),
    );
    &u * CMat::from_diagonal(&phases) * u.adjoint()
}

/// `exp(s·n)` for a nilpotent matrix `n`: the series cut at the dimension.
pub fn exp_nilpotent(s: Complex64, n: &CMat) -> CMat {
    let dim = n.nrows();
    let mut sum = CMat::identity(dim, dim);
    let mut term = CMat::identity(dim, dim);
    for p in 1..=dim {
        term = (&term * n).scale(1.0 / p as f64) * s;
        if term.norm() == 0.0 {
            break;
        }
        sum += &term;
    }
    sum
}

/// `exp(s·n)·v` for nilpotent `n`, accumulating the terminating series on
/// the vector directly (no dense exponential is formed).
pub fn exp_nilpotent_apply(s: Complex64, n: &CMat, v: &CVec) -> CVec {
    let mut sum = v.clone();
    let mut term = v.clone();
    for p in 1..=n.nrows() {
        term = (n * &term).map(|z| z * s / p as f64);
        if term.norm() == 0.0 {
            break;
        }
        sum += &term;
    }
    sum
}

/// Kronecker product, `a ⊗ b`.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(rows: usize, cols: usize, data: &[Complex64]) -> CMat {
        CMat::from_row_slice(rows, cols, data)
    }

    #[test]
    fn hermitian_clusters_recovers_known_spectrum() {
        // diag(2, 2, -1) conjugated by a unitary built from a rotation.
        let c = re(0.6);
        let s = re(0.8);
        let u = cm(
            3,
            3,
            &[c, -s, re(0.0), s * I, c * I, re(0.0), re(0.0), re(0.0), I],
        );
        let d = CMat::from_diagonal(&CVec::from_vec(vec![re(2.0), re(2.0), re(-1.0)]));
        let m = &u * d * u.adjoint();
        let clusters = hermitian_clusters(&m, 1e-8);
        assert_eq!(clusters.len(), 2);
        assert!((clusters[0].0 - 2.0).abs() < 1e-10);
        assert_eq!(clusters[0].1.len(), 2);
        assert!((clusters[1].0 + 1.0).abs() < 1e-10);
        assert_eq!(clusters[1].1.len(), 1);
        // Cluster members are orthonormal.
        let g01 = inner(&clusters[0].1[0], &clusters[0].1[1]).norm();
        assert!(g01 < 1e-10, "cluster members not orthogonal: {g01}");
    }

    #[test]
    fn exp_skew_hermitian_matches_closed_form() {
        // exp of diag(iπ, -iπ) is -Id.
        let k = CMat::from_diagonal(&CVec::from_vec(vec![
            I * std::f64::consts::PI,
            -I * std::f64::consts::PI,
        ]));
        let e = exp_skew_hermitian(&k);
        let expected = CMat::identity(2, 2).scale(-1.0);
        assert!(distance(&e, &expected) < 1e-12);
    }

    #[test]
    fn exp_nilpotent_is_polynomial() {
        let n = cm(
            2,
            2,
            &[re(0.0), re(3.0), re(0.0), re(0.0)],
        );
        let e = exp_nilpotent(I, &n);
        assert_eq!(e[(0, 0)], re(1.0));
        assert_eq!(e[(0, 1)], re(3.0) * I);
    }

    #[test]
    fn rank_detects_dependent_columns() {
        let cols = vec![
            CVec::from_vec(vec![re(1.0), re(0.0), re(0.0)]),
            CVec::from_vec(vec![re(0.0), re(1.0), re(0.0)]),
            CVec::from_vec(vec![re(1e6), re(1e6), re(0.0)]),
        ];
        assert_eq!(rank_of_columns(&cols, 1e-10), 2);
    }
}
