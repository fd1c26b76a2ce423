//! Small dense complex linear-algebra helpers on top of `nalgebra`, with
//! `faer` supplying Hermitian spectra.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Largest `|m_ij - conj(m_ji)|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// Largest entry of `|U^dagger U - I|`.
pub fn unitary_deviation(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let prod = u.adjoint() * u;
    let n = u.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { ONE } else { ZERO };
            worst = worst.max((prod[(i, j)] - target).norm());
        }
    }
    worst
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Only the lower triangle is read by the solver, so the input is
/// symmetrised first to keep results independent of which half carries
/// round-off.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let n = m.nrows();
    if n == 1 {
        return vec![m[(0, 0)].re];
    }
    let sym = faer::Mat::<Complex64>::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5);
    let mut values = match self_adjoint_spectrum(&sym) {
        Some(v) => v,
        // QR sweeps can stall on matrices with exact zero blocks and
        // degenerate spectra. A fixed unitary similarity leaves the
        // spectrum unchanged and breaks that structure.
        None => {
            let q = rotation(n);
            let r = q.adjoint() * &sym * &q;
            let r = faer::Mat::<Complex64>::from_fn(n, n, |i, j| (r[(i, j)] + r[(j, i)].conj()) * 0.5);
            self_adjoint_spectrum(&r).unwrap_or_else(|| vec![f64::NAN; n])
        }
    };
    values.sort_by(f64::total_cmp);
    values
}

fn self_adjoint_spectrum(m: &faer::Mat<Complex64>) -> Option<Vec<f64>> {
    m.self_adjoint_eigenvalues(faer::Side::Lower)
        .ok()
        .filter(|v| v.iter().all(|x| x.is_finite()))
}

fn rotation(n: usize) -> faer::Mat<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let g = faer::Mat::<Complex64>::from_fn(n, n, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    g.qr().compute_Q()
}

/// `m m†` when `m` has no more rows than columns, otherwise `m† m`. Both
/// share their nonzero spectrum; the smaller one is cheaper to diagonalise.
pub fn small_gram(m: &CMatrix) -> CMatrix {
    let (r, c) = (m.nrows(), m.ncols());
    let f = faer::Mat::<Complex64>::from_fn(r, c, |i, j| m[(i, j)]);
    let g = if r <= c { &f * f.adjoint() } else { f.adjoint() * &f };
    CMatrix::from_fn(g.nrows(), g.ncols(), |i, j| g[(i, j)])
}

/// `m m†`.
pub fn outer_gram(m: &CMatrix) -> CMatrix {
    let f = faer::Mat::<Complex64>::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)]);
    let g = &f * f.adjoint();
    CMatrix::from_fn(g.nrows(), g.ncols(), |i, j| g[(i, j)])
}

/// Operator norm (largest singular value). For Hermitian input this is the
/// largest absolute eigenvalue.
pub fn operator_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.singular_values().iter().fold(0.0f64, |acc, &s| acc.max(s))
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    a.kronecker(b)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn from_real_diagonal(values: &[f64]) -> CMatrix {
    let n = values.len();
    let mut m = CMatrix::zeros(n, n);
    for (i, &v) in values.iter().enumerate() {
        m[(i, i)] = Complex64::new(v, 0.0);
    }
    m
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMatrix {
    let i = Complex64::new(0.0, 1.0);
    CMatrix::from_row_slice(2, 2, &[ZERO, -i, i, ZERO])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

/// Controlled-NOT with the first qubit as control, basis order |c t>.
pub fn cnot() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    m[(0, 0)] = ONE;
    m[(1, 1)] = ONE;
    m[(2, 3)] = ONE;
    m[(3, 2)] = ONE;
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paulis_are_hermitian_and_unitary() {
        for p in [pauli_x(), pauli_y(), pauli_z(), cnot()] {
            assert!(hermitian_deviation(&p) < 1e-15);
            assert!(unitary_deviation(&p) < 1e-15);
        }
    }

    #[test]
    fn eigenvalues_of_diagonal() {
        let m = from_real_diagonal(&[0.75, 0.25]);
        let ev = hermitian_eigenvalues(&m);
        assert!((ev[0] - 0.25).abs() < 1e-15);
        assert!((ev[1] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn operator_norm_of_pauli_is_one() {
        assert!((operator_norm(&pauli_z()) - 1.0).abs() < 1e-12);
        assert!((operator_norm(&pauli_y().scale(3.0)) - 3.0).abs() < 1e-12);
    }

    #[test]
    fn non_square_is_not_unitary() {
        assert!(unitary_deviation(&CMatrix::zeros(2, 3)).is_infinite());
    }
}
