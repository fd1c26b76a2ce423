//! Finite-dimensional Hilbert spaces with an explicit tensor product
//! structure (TPS), pure states, density matrices and partial traces.
//!
//! All flattening is row-major over the TPS factor order: the last factor
//! varies fastest.

use std::collections::HashSet;
use std::fmt;

use num_complex::Complex64;

use crate::linalg::{self, CMatrix, CVector, ONE, ZERO};
use crate::{Error, Result};

/// Default cap on the joint dimension of dense objects.
pub const DEFAULT_DENSE_CAP: usize = 1 << 14;

/// Tolerance for normalization, Hermiticity and trace checks.
pub const INVARIANT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactorSpace {
    label: String,
    dim: usize,
}

impl FactorSpace {
    pub fn new(label: impl Into<String>, dim: usize) -> Result<Self> {
        let label = label.into();
        if dim < 2 {
            return Err(Error::InvalidDimension { label, dim });
        }
        Ok(Self { label, dim })
    }

    pub fn qubit(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            dim: 2,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

impl fmt::Display for FactorSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.label, self.dim)
    }
}

fn check_unique(factors: &[FactorSpace]) -> Result<()> {
    let mut seen = HashSet::new();
    for f in factors {
        if !seen.insert(f.label.as_str()) {
            return Err(Error::DuplicateLabel(f.label.clone()));
        }
    }
    Ok(())
}

fn joint_dim(factors: &[FactorSpace], cap: usize) -> Result<usize> {
    let mut dim = 1usize;
    for f in factors {
        dim = dim.checked_mul(f.dim).ok_or(Error::DenseCapExceeded {
            dim: usize::MAX,
            cap,
        })?;
    }
    if dim > cap {
        return Err(Error::DenseCapExceeded { dim, cap });
    }
    Ok(dim)
}

/// Row-major strides for the given factor dimensions.
fn strides_of(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    strides
}

/// Flat offsets contributed by the factors at `positions`, enumerated in
/// mixed radix with `positions[0]` most significant.
fn offsets(dims: &[usize], strides: &[usize], positions: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &p in positions {
        let mut next = Vec::with_capacity(out.len() * dims[p]);
        for &base in &out {
            for d in 0..dims[p] {
                next.push(base + d * strides[p]);
            }
        }
        out = next;
    }
    out
}

/// Resolve labels to factor positions, rejecting unknown or repeated labels.
fn resolve<S: AsRef<str>>(factors: &[FactorSpace], labels: &[S]) -> Result<Vec<usize>> {
    let mut seen = HashSet::new();
    labels
        .iter()
        .map(|l| {
            let l = l.as_ref();
            let pos = factors
                .iter()
                .position(|f| f.label == l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            if !seen.insert(pos) {
                return Err(Error::DuplicateLabel(l.to_string()));
            }
            Ok(pos)
        })
        .collect()
}

fn complement(n: usize, positions: &[usize]) -> Vec<usize> {
    (0..n).filter(|p| !positions.contains(p)).collect()
}

/// Ordered list of labeled factors defining locality.
#[derive(Debug, Clone, PartialEq)]
pub struct TensorProductStructure {
    factors: Vec<FactorSpace>,
    total_dim: usize,
    cap: usize,
}

impl TensorProductStructure {
    pub fn new(factors: Vec<FactorSpace>) -> Result<Self> {
        Self::with_cap(factors, DEFAULT_DENSE_CAP)
    }

    pub fn with_cap(factors: Vec<FactorSpace>, cap: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::TooFewFactors("a TPS needs at least one factor".into()));
        }
        check_unique(&factors)?;
        let total_dim = joint_dim(&factors, cap)?;
        Ok(Self {
            factors,
            total_dim,
            cap,
        })
    }

    /// `n` qubits labeled by the given names.
    pub fn qubits<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        Self::new(labels.iter().map(|l| FactorSpace::qubit(l.as_ref())).collect())
    }

    pub fn factors(&self) -> &[FactorSpace] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn labels(&self) -> Vec<&str> {
        self.factors.iter().map(|f| f.label.as_str()).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.dim).collect()
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.label == label)
    }

    pub fn factor(&self, label: &str) -> Option<&FactorSpace> {
        self.factors.iter().find(|f| f.label == label)
    }

    /// Joint dimension of a subset of factors.
    pub fn subset_dim<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        let pos = resolve(&self.factors, labels)?;
        Ok(pos.iter().map(|&p| self.factors[p].dim).product())
    }
}

/// Normalized state vector over a TPS.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    tps: TensorProductStructure,
    amplitudes: CVector,
}

impl PureState {
    pub fn new(tps: TensorProductStructure, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != tps.total_dim {
            return Err(Error::DimensionMismatch {
                expected: tps.total_dim,
                got: amplitudes.len(),
            });
        }
        let norm_sqr = amplitudes.norm_squared();
        if (norm_sqr - 1.0).abs() > INVARIANT_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { tps, amplitudes })
    }

    /// Normalizes `amplitudes` before construction.
    pub fn normalized(tps: TensorProductStructure, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm * norm));
        }
        Self::new(tps, amplitudes.unscale(norm))
    }

    /// Computational basis state with one digit per factor.
    pub fn basis(tps: TensorProductStructure, digits: &[usize]) -> Result<Self> {
        if digits.len() != tps.len() {
            return Err(Error::DimensionMismatch {
                expected: tps.len(),
                got: digits.len(),
            });
        }
        let strides = strides_of(&tps.dims());
        let mut index = 0;
        for (k, (&d, f)) in digits.iter().zip(&tps.factors).enumerate() {
            if d >= f.dim {
                return Err(Error::InvalidArgument(format!(
                    "digit {d} out of range for factor {f}"
                )));
            }
            index += d * strides[k];
        }
        let mut amps = CVector::zeros(tps.total_dim);
        amps[index] = ONE;
        Ok(Self {
            tps,
            amplitudes: amps,
        })
    }

    pub fn tps(&self) -> &TensorProductStructure {
        &self.tps
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn dim(&self) -> usize {
        self.tps.total_dim
    }

    /// Reshape into a `dim(keep) x dim(rest)` matrix, with `keep` in the
    /// order given.
    fn split_matrix(&self, keep: &[usize]) -> CMatrix {
        let dims = self.tps.dims();
        let strides = strides_of(&dims);
        let rest = complement(dims.len(), keep);
        let ko = offsets(&dims, &strides, keep);
        let ro = offsets(&dims, &strides, &rest);
        CMatrix::from_fn(ko.len(), ro.len(), |i, r| self.amplitudes[ko[i] + ro[r]])
    }

    fn sorted_positions<S: AsRef<str>>(&self, keep: &[S]) -> Result<Vec<usize>> {
        if keep.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut pos = resolve(&self.tps.factors, keep)?;
        pos.sort_unstable();
        Ok(pos)
    }

    /// Reduced density matrix on `keep`, computed directly from the state
    /// vector. Kept factors appear in TPS order.
    pub fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix> {
        let pos = self.sorted_positions(keep)?;
        let m = self.split_matrix(&pos);
        let rho = linalg::outer_gram(&m);
        let factors = pos.iter().map(|&p| self.tps.factors[p].clone()).collect();
        DensityMatrix::checked_reduction(factors, rho)
    }

    /// Nonzero-relevant spectrum of the reduced state on `keep`.
    ///
    /// Uses whichever Gram matrix (`M M^dagger` or `M^dagger M`) is smaller;
    /// both share the same nonzero eigenvalues.
    pub fn reduced_spectrum<S: AsRef<str>>(&self, keep: &[S]) -> Result<Vec<f64>> {
        let pos = self.sorted_positions(keep)?;
        let m = self.split_matrix(&pos);
        Ok(linalg::hermitian_eigenvalues(&linalg::small_gram(&m)))
    }

    /// Apply `unitary` to the factors named in `labels`; the unitary's
    /// tensor ordering follows `labels` as given.
    pub fn apply_unitary<S: AsRef<str>>(&self, labels: &[S], unitary: &CMatrix) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptySelection);
        }
        let target = resolve(&self.tps.factors, labels)?;
        let dims = self.tps.dims();
        let dt: usize = target.iter().map(|&p| dims[p]).product();
        if unitary.nrows() != dt || unitary.ncols() != dt {
            return Err(Error::DimensionMismatch {
                expected: dt,
                got: unitary.nrows(),
            });
        }
        let dev = linalg::unitary_deviation(unitary);
        if dev > INVARIANT_TOL {
            return Err(Error::NotUnitary(dev));
        }
        let strides = strides_of(&dims);
        let rest = complement(dims.len(), &target);
        let to = offsets(&dims, &strides, &target);
        let ro = offsets(&dims, &strides, &rest);
        let m = CMatrix::from_fn(to.len(), ro.len(), |i, r| self.amplitudes[to[i] + ro[r]]);
        let out = unitary * m;
        let mut amps = CVector::zeros(self.dim());
        for (i, &t) in to.iter().enumerate() {
            for (r, &o) in ro.iter().enumerate() {
                amps[t + o] = out[(i, r)];
            }
        }
        Ok(Self {
            tps: self.tps.clone(),
            amplitudes: amps,
        })
    }

    /// Same state expressed over a TPS whose factors are listed in `order`.
    pub fn permuted<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        let perm = resolve(&self.tps.factors, order)?;
        if perm.len() != self.tps.len() {
            return Err(Error::InvalidArgument(
                "permutation must list every factor".into(),
            ));
        }
        let dims = self.tps.dims();
        let off = offsets(&dims, &strides_of(&dims), &perm);
        let factors = perm.iter().map(|&p| self.tps.factors[p].clone()).collect();
        let tps = TensorProductStructure::with_cap(factors, self.tps.cap)?;
        let amps = CVector::from_iterator(off.len(), off.iter().map(|&o| self.amplitudes[o]));
        Ok(Self {
            tps,
            amplitudes: amps,
        })
    }
}

/// Kronecker product of states in the order given. Uses the default cap.
pub fn tensor(states: &[&PureState]) -> Result<PureState> {
    tensor_capped(states, DEFAULT_DENSE_CAP)
}

pub fn tensor_capped(states: &[&PureState], cap: usize) -> Result<PureState> {
    let (first, rest) = states
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("tensor of zero states".into()))?;
    let factors: Vec<FactorSpace> = states
        .iter()
        .flat_map(|s| s.tps.factors.iter().cloned())
        .collect();
    let tps = TensorProductStructure::with_cap(factors, cap)?;
    let amps = rest
        .iter()
        .fold(first.amplitudes.clone(), |acc, s| linalg::kron_vec(&acc, &s.amplitudes));
    PureState::normalized(tps, amps)
}

/// `|psi><psi|`.
pub fn density_of(psi: &PureState) -> DensityMatrix {
    let a = &psi.amplitudes;
    DensityMatrix {
        factors: psi.tps.factors.clone(),
        matrix: a * a.adjoint(),
    }
}

pub fn partial_trace<S: AsRef<str>>(rho: &DensityMatrix, keep: &[S]) -> Result<DensityMatrix> {
    rho.partial_trace(keep)
}

/// Hermitian, unit-trace, positive semidefinite operator over an ordered
/// subset of factors.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    factors: Vec<FactorSpace>,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(factors: Vec<FactorSpace>, matrix: CMatrix) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::EmptySelection);
        }
        check_unique(&factors)?;
        let dim: usize = factors.iter().map(|f| f.dim).product();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows(),
            });
        }
        let rho = Self::checked_reduction(factors, matrix)?;
        let min = linalg::hermitian_eigenvalues(&rho.matrix)
            .first()
            .copied()
            .unwrap_or(0.0);
        if !(min >= -INVARIANT_TOL) {
            return Err(Error::NotPositive(min));
        }
        Ok(rho)
    }

    /// Hermiticity and trace checks only; positivity is inherited from the
    /// parent operator.
    fn checked_reduction(factors: Vec<FactorSpace>, matrix: CMatrix) -> Result<Self> {
        let dev = linalg::hermitian_deviation(&matrix);
        if dev > INVARIANT_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = linalg::trace(&matrix);
        if (tr.re - 1.0).abs() > INVARIANT_TOL || tr.im.abs() > INVARIANT_TOL {
            return Err(Error::BadTrace(tr.re));
        }
        Ok(Self { factors, matrix })
    }

    /// Diagonal density matrix with the given probabilities.
    pub fn diagonal(factors: Vec<FactorSpace>, probabilities: &[f64]) -> Result<Self> {
        Self::new(factors, linalg::from_real_diagonal(probabilities))
    }

    /// `(1/d) I` over the given factors.
    pub fn maximally_mixed(factors: Vec<FactorSpace>) -> Result<Self> {
        let dim: usize = factors.iter().map(|f| f.dim).product();
        Self::diagonal(factors, &vec![1.0 / dim as f64; dim])
    }

    pub fn factors(&self) -> &[FactorSpace] {
        &self.factors
    }

    pub fn labels(&self) -> Vec<&str> {
        self.factors.iter().map(|f| f.label.as_str()).collect()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.matrix)
    }

    pub fn purity(&self) -> f64 {
        linalg::trace(&(&self.matrix * &self.matrix)).re
    }

    pub fn partial_trace<S: AsRef<str>>(&self, keep: &[S]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptySelection);
        }
        let mut pos = resolve(&self.factors, keep)?;
        pos.sort_unstable();
        let dims: Vec<usize> = self.factors.iter().map(|f| f.dim).collect();
        let strides = strides_of(&dims);
        let rest = complement(dims.len(), &pos);
        let ko = offsets(&dims, &strides, &pos);
        let ro = offsets(&dims, &strides, &rest);
        let mut out = CMatrix::zeros(ko.len(), ko.len());
        for (i, &ki) in ko.iter().enumerate() {
            for (j, &kj) in ko.iter().enumerate() {
                let mut acc = ZERO;
                for &r in &ro {
                    acc += self.matrix[(ki + r, kj + r)];
                }
                out[(i, j)] = acc;
            }
        }
        let factors = pos.iter().map(|&p| self.factors[p].clone()).collect();
        Self::checked_reduction(factors, out)
    }

    /// `self ⊗ other`, factors concatenated.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let factors: Vec<FactorSpace> = self
            .factors
            .iter()
            .chain(&other.factors)
            .cloned()
            .collect();
        check_unique(&factors)?;
        joint_dim(&factors, DEFAULT_DENSE_CAP)?;
        Ok(Self {
            factors,
            matrix: linalg::kron(&self.matrix, &other.matrix),
        })
    }

    /// Same operator with factors listed in `order`.
    pub fn reordered<S: AsRef<str>>(&self, order: &[S]) -> Result<Self> {
        let perm = resolve(&self.factors, order)?;
        if perm.len() != self.factors.len() {
            return Err(Error::InvalidArgument(
                "reordering must list every factor".into(),
            ));
        }
        let dims: Vec<usize> = self.factors.iter().map(|f| f.dim).collect();
        let off = offsets(&dims, &strides_of(&dims), &perm);
        let matrix = CMatrix::from_fn(off.len(), off.len(), |i, j| self.matrix[(off[i], off[j])]);
        let factors = perm.iter().map(|&p| self.factors[p].clone()).collect();
        Ok(Self { factors, matrix })
    }

    /// `tr(rho O)` for an operator over the full joint space.
    pub fn expectation(&self, op: &CMatrix) -> Result<Complex64> {
        if op.nrows() != self.dim() || op.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: op.nrows(),
            });
        }
        Ok(linalg::trace(&(&self.matrix * op)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    A,
    B,
}

#[derive(Debug, Clone, PartialEq)]
enum SchmidtRepr {
    Explicit {
        weights: Vec<Complex64>,
        pairing: Vec<usize>,
    },
    /// Flat weights `|alpha_n|^2 = 1/modes`, never materialized.
    FlatSymbolic { modes: f64 },
}

/// Bipartite state `sum_n alpha_n |n>|f(n)>` with an injective pairing `f`.
///
/// Mode indices are 1-based (`n = 1..=N-1`); the canonical pairing is
/// `f(n) = N - n`.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtPairState {
    labels: (String, String),
    repr: SchmidtRepr,
}

impl SchmidtPairState {
    pub const DEFAULT_LABELS: (&'static str, &'static str) = ("Ap", "Bp");

    /// Explicit weights with the canonical pairing `f(n) = N - n`.
    pub fn new(weights: Vec<Complex64>) -> Result<Self> {
        let m = weights.len();
        let pairing = (1..=m).map(|n| m + 1 - n).collect();
        Self::with_pairing(weights, pairing)
    }

    /// `pairing[n-1] = f(n)`, 1-based.
    pub fn with_pairing(weights: Vec<Complex64>, pairing: Vec<usize>) -> Result<Self> {
        let m = weights.len();
        if m == 0 {
            return Err(Error::InvalidArgument("Schmidt state needs at least one mode".into()));
        }
        if pairing.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: pairing.len(),
            });
        }
        let mut seen = vec![false; m];
        for &f in &pairing {
            if f == 0 || f > m || std::mem::replace(&mut seen[f - 1], true) {
                return Err(Error::PairingNotInjective);
            }
        }
        let norm_sqr: f64 = weights.iter().map(|w| w.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > INVARIANT_TOL {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self {
            labels: (Self::DEFAULT_LABELS.0.into(), Self::DEFAULT_LABELS.1.into()),
            repr: SchmidtRepr::Explicit { weights, pairing },
        })
    }

    /// Real nonnegative weights given as probabilities `|alpha_n|^2`.
    pub fn from_probabilities(probabilities: &[f64]) -> Result<Self> {
        if let Some(&p) = probabilities.iter().find(|p| !(**p >= 0.0)) {
            return Err(Error::InvalidArgument(format!("negative probability {p}")));
        }
        Self::new(
            probabilities
                .iter()
                .map(|&p| Complex64::new(p.sqrt(), 0.0))
                .collect(),
        )
    }

    /// Flat explicit weights over `modes = N - 1` branches.
    pub fn flat(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidArgument("Schmidt state needs at least one mode".into()));
        }
        let a = Complex64::new((1.0 / modes as f64).sqrt(), 0.0);
        Self::new(vec![a; modes])
    }

    /// Flat state with a mode count too large to materialize.
    pub fn flat_symbolic(modes: f64) -> Result<Self> {
        if !(modes >= 1.0) || !modes.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "symbolic mode count must be finite and >= 1, got {modes}"
            )));
        }
        Ok(Self {
            labels: (Self::DEFAULT_LABELS.0.into(), Self::DEFAULT_LABELS.1.into()),
            repr: SchmidtRepr::FlatSymbolic { modes },
        })
    }

    pub fn with_labels(mut self, a: impl Into<String>, b: impl Into<String>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a == b {
            return Err(Error::DuplicateLabel(a));
        }
        self.labels = (a, b);
        Ok(self)
    }

    pub fn labels(&self) -> (&str, &str) {
        (&self.labels.0, &self.labels.1)
    }

    /// Number of branches `N - 1` (approximate for symbolic states).
    pub fn modes(&self) -> f64 {
        match &self.repr {
            SchmidtRepr::Explicit { weights, .. } => weights.len() as f64,
            SchmidtRepr::FlatSymbolic { modes } => *modes,
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.repr, SchmidtRepr::FlatSymbolic { .. })
    }

    pub fn is_flat(&self) -> bool {
        match &self.repr {
            SchmidtRepr::FlatSymbolic { .. } => true,
            SchmidtRepr::Explicit { weights, .. } => {
                let p0 = weights[0].norm_sqr();
                weights.iter().all(|w| (w.norm_sqr() - p0).abs() < 1e-15)
            }
        }
    }

    pub fn weights(&self) -> Result<&[Complex64]> {
        match &self.repr {
            SchmidtRepr::Explicit { weights, .. } => Ok(weights),
            SchmidtRepr::FlatSymbolic { .. } => Err(Error::ExplicitWeightsRequired),
        }
    }

    /// 1-based pairing table, `pairing()[n-1] = f(n)`.
    pub fn pairing(&self) -> Result<&[usize]> {
        match &self.repr {
            SchmidtRepr::Explicit { pairing, .. } => Ok(pairing),
            SchmidtRepr::FlatSymbolic { .. } => Err(Error::ExplicitWeightsRequired),
        }
    }

    /// Explicit mode count, or `ExplicitWeightsRequired`.
    pub fn explicit_modes(&self) -> Result<usize> {
        self.weights().map(<[_]>::len)
    }

    /// `|alpha_n|^2` for `n = 1..=N-1`.
    pub fn probabilities(&self) -> Result<Vec<f64>> {
        Ok(self.weights()?.iter().map(|w| w.norm_sqr()).collect())
    }

    pub(crate) fn side_factors(&self) -> Result<(FactorSpace, FactorSpace)> {
        let m = self.explicit_modes()?;
        Ok((
            FactorSpace::new(self.labels.0.clone(), m)?,
            FactorSpace::new(self.labels.1.clone(), m)?,
        ))
    }
}

/// Dense embedding: amplitude `alpha_n` at basis index `(n, f(n))`.
pub fn schmidt_to_dense(s: &SchmidtPairState) -> Result<PureState> {
    schmidt_to_dense_capped(s, DEFAULT_DENSE_CAP)
}

pub fn schmidt_to_dense_capped(s: &SchmidtPairState, cap: usize) -> Result<PureState> {
    let weights = s.weights()?;
    let pairing = s.pairing()?;
    let m = weights.len();
    let (fa, fb) = s.side_factors()?;
    let tps = TensorProductStructure::with_cap(vec![fa, fb], cap)?;
    let mut amps = CVector::zeros(m * m);
    for (i, (&w, &f)) in weights.iter().zip(pairing).enumerate() {
        amps[i * m + (f - 1)] = w;
    }
    PureState::new(tps, amps)
}

/// Diagonal reduced state on one side, `sum_n |alpha_n|^2 |n><n|`.
pub fn schmidt_reduce(s: &SchmidtPairState, side: Side) -> Result<DensityMatrix> {
    let probs = s.probabilities()?;
    let pairing = s.pairing()?;
    let (fa, fb) = s.side_factors()?;
    let mut diag = vec![0.0; probs.len()];
    let factor = match side {
        Side::A => {
            diag.copy_from_slice(&probs);
            fa
        }
        Side::B => {
            for (p, &f) in probs.iter().zip(pairing) {
                diag[f - 1] = *p;
            }
            fb
        }
    };
    Ok(DensityMatrix {
        factors: vec![factor],
        matrix: linalg::from_real_diagonal(&diag),
    })
}
