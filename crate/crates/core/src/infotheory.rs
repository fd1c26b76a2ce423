//! Von Neumann entropy, mutual information, property checks on random
//! bipartitions, and the covariance lower bound on mutual information.
//!
//! Values are kept in nats; [`LogBase`] converts for display.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hilbert::{DensityMatrix, PureState, INVARIANT_TOL};
use crate::linalg::{self, CMatrix};
use crate::{Error, Result};

/// Tolerance for derived equalities (entropy identities, bounds).
pub const DERIVED_TOL: f64 = 1e-9;

/// Eigenvalues below this are treated as exact zeros before taking logs.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// Tolerance on `sum(lambda) = 1` for raw spectra.
pub const SPECTRUM_SUM_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogBase {
    #[default]
    Nats,
    Bits,
    Decimal,
}

impl LogBase {
    /// Convert a value in nats into this base.
    pub fn convert(self, nats: f64) -> f64 {
        match self {
            LogBase::Nats => nats,
            LogBase::Bits => nats / std::f64::consts::LN_2,
            LogBase::Decimal => nats / std::f64::consts::LN_10,
        }
    }

    pub fn unit(self) -> &'static str {
        match self {
            LogBase::Nats => "nats",
            LogBase::Bits => "bits",
            LogBase::Decimal => "dits",
        }
    }
}

impl std::str::FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e" | "nats" | "nat" => Ok(LogBase::Nats),
            "2" | "bits" | "bit" => Ok(LogBase::Bits),
            "10" | "dits" | "dit" => Ok(LogBase::Decimal),
            other => Err(Error::InvalidArgument(format!("unknown log base `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntropyValue(f64);

impl EntropyValue {
    pub fn nats(self) -> f64 {
        self.0
    }

    pub fn in_base(self, base: LogBase) -> f64 {
        base.convert(self.0)
    }
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nats", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MutualInfoValue {
    nats: f64,
    pair: (Vec<String>, Vec<String>),
}

impl MutualInfoValue {
    pub fn new(nats: f64, a: Vec<String>, b: Vec<String>) -> Self {
        Self { nats, pair: (a, b) }
    }

    pub fn nats(&self) -> f64 {
        self.nats
    }

    pub fn in_base(&self, base: LogBase) -> f64 {
        base.convert(self.nats)
    }

    pub fn pair(&self) -> (&[String], &[String]) {
        (&self.pair.0, &self.pair.1)
    }
}

/// `-sum lambda log lambda` with `0 log 0 = 0`.
pub fn entropy_from_spectrum(lambdas: &[f64]) -> Result<EntropyValue> {
    let sum: f64 = lambdas.iter().sum();
    if (sum - 1.0).abs() > SPECTRUM_SUM_TOL || !sum.is_finite() {
        return Err(Error::SpectrumNotNormalized(sum));
    }
    if let Some(&neg) = lambdas.iter().find(|&&l| l < -INVARIANT_TOL) {
        return Err(Error::NotPositive(neg));
    }
    let s = lambdas
        .iter()
        .filter(|&&l| l >= EIGEN_CLAMP)
        .map(|&l| -l * l.ln())
        .sum::<f64>();
    Ok(EntropyValue(s.max(0.0)))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<EntropyValue> {
    entropy_from_spectrum(&rho.eigenvalues())
}

fn owned(labels: &[impl AsRef<str>]) -> Vec<String> {
    labels.iter().map(|l| l.as_ref().to_string()).collect()
}

fn check_disjoint<S: AsRef<str>>(a: &[S], b: &[S]) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidSplit("both sides must be nonempty".into()));
    }
    let left: HashSet<&str> = a.iter().map(AsRef::as_ref).collect();
    if let Some(x) = b.iter().find(|x| left.contains(x.as_ref())) {
        return Err(Error::InvalidSplit(format!("`{}` on both sides", x.as_ref())));
    }
    Ok(())
}

/// `I(A:B) = S(A) + S(B) - S(AB)` where `a` and `b` partition the factors
/// of `rho`.
pub fn mutual_information<S: AsRef<str>>(
    rho: &DensityMatrix,
    a: &[S],
    b: &[S],
) -> Result<MutualInfoValue> {
    check_disjoint(a, b)?;
    if a.len() + b.len() != rho.factors().len() {
        return Err(Error::InvalidSplit(format!(
            "split covers {} of {} factors",
            a.len() + b.len(),
            rho.factors().len()
        )));
    }
    let sa = von_neumann_entropy(&rho.partial_trace(a)?)?;
    let sb = von_neumann_entropy(&rho.partial_trace(b)?)?;
    let sab = von_neumann_entropy(rho)?;
    Ok(MutualInfoValue::new(
        sa.nats() + sb.nats() - sab.nats(),
        owned(a),
        owned(b),
    ))
}

/// Entropy of the reduced state of `psi` on `keep`.
pub fn subsystem_entropy<S: AsRef<str>>(psi: &PureState, keep: &[S]) -> Result<EntropyValue> {
    let mut spectrum = psi.reduced_spectrum(keep)?;
    // Gram eigenvalues of a normalized state sum to ||psi||^2 = 1 up to
    // round-off; clamp tiny negatives produced by the solver.
    for l in &mut spectrum {
        if *l < 0.0 && *l > -INVARIANT_TOL {
            *l = 0.0;
        }
    }
    entropy_from_spectrum(&spectrum)
}

/// `I(A:B)` for disjoint factor subsets of a pure state; factors outside
/// `a ∪ b` are traced out.
pub fn mutual_information_pure<S: AsRef<str>>(
    psi: &PureState,
    a: &[S],
    b: &[S],
) -> Result<MutualInfoValue> {
    check_disjoint(a, b)?;
    let ab: Vec<&str> = a.iter().chain(b).map(AsRef::as_ref).collect();
    let sa = subsystem_entropy(psi, a)?;
    let sb = subsystem_entropy(psi, b)?;
    let sab = subsystem_entropy(psi, &ab)?;
    Ok(MutualInfoValue::new(
        sa.nats() + sb.nats() - sab.nats(),
        owned(a),
        owned(b),
    ))
}

/// Analytic `-2 sum |alpha_n|^2 log |alpha_n|^2`; `2 log(N-1)` for
/// symbolic flat states.
pub fn mutual_information_schmidt(s: &crate::hilbert::SchmidtPairState) -> MutualInfoValue {
    let (a, b) = s.labels();
    let nats = match s.probabilities() {
        Ok(p) => 2.0 * shannon(&p),
        Err(_) => 2.0 * s.modes().ln(),
    };
    MutualInfoValue::new(nats, vec![a.to_string()], vec![b.to_string()])
}

/// Shannon entropy of a probability vector (no normalization check).
pub(crate) fn shannon(p: &[f64]) -> f64 {
    p.iter()
        .filter(|&&x| x >= EIGEN_CLAMP)
        .map(|&x| -x * x.ln())
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MiProperty {
    /// `I(A:B) >= 0`
    Positive,
    /// `I(A:B) <= log dim A + log dim B`
    UpperBounded,
    /// `I(A:B) = I(B:A)`
    Symmetric,
    /// `I(A:BC) >= I(A:B)`
    Monotone,
}

impl MiProperty {
    pub const ALL: [MiProperty; 4] = [
        MiProperty::Positive,
        MiProperty::UpperBounded,
        MiProperty::Symmetric,
        MiProperty::Monotone,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MiProperty::Positive => "positive",
            MiProperty::UpperBounded => "upper_bounded",
            MiProperty::Symmetric => "symmetric",
            MiProperty::Monotone => "monotone",
        }
    }

    fn min_factors(self) -> usize {
        match self {
            MiProperty::Monotone => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyOutcome {
    pub property: MiProperty,
    pub checked: usize,
    pub max_violation: f64,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.max_violation <= DERIVED_TOL
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MiPropertyReport {
    pub outcomes: Vec<PropertyOutcome>,
}

impl MiPropertyReport {
    pub fn all_passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }

    pub fn outcome(&self, property: MiProperty) -> Option<&PropertyOutcome> {
        self.outcomes.iter().find(|o| o.property == property)
    }
}

/// Check the requested mutual-information properties over `trials` random
/// choices of disjoint subsystems.
pub fn check_mi_properties(
    state: &PureState,
    properties: &[MiProperty],
    trials: usize,
    seed: u64,
) -> Result<MiPropertyReport> {
    let n = state.tps().len();
    for p in properties {
        if n < p.min_factors() {
            return Err(Error::TooFewFactors(format!(
                "property `{}` needs {} factors, state has {n}",
                p.name(),
                p.min_factors()
            )));
        }
    }
    let labels: Vec<String> = state.tps().labels().iter().map(|s| s.to_string()).collect();
    let dims = state.tps().dims();
    let mut outcomes: Vec<PropertyOutcome> = properties
        .iter()
        .map(|&property| PropertyOutcome {
            property,
            checked: 0,
            max_violation: 0.0,
        })
        .collect();
    let need_c = properties.contains(&MiProperty::Monotone);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();

    for _ in 0..trials {
        order.shuffle(&mut rng);
        let min_used = if need_c { 3 } else { 2 };
        let used = rng.random_range(min_used..=n);
        let reserve_c = usize::from(need_c);
        let size_a = rng.random_range(1..used - reserve_c);
        let size_b = rng.random_range(1..=used - reserve_c - size_a);
        let pick = |r: std::ops::Range<usize>| -> Vec<&str> {
            order[r].iter().map(|&i| labels[i].as_str()).collect()
        };
        let a = pick(0..size_a);
        let b = pick(size_a..size_a + size_b);
        let c = pick(size_a + size_b..used);

        let iab = mutual_information_pure(state, &a, &b)?.nats();
        for out in &mut outcomes {
            let violation = match out.property {
                MiProperty::Positive => (-iab).max(0.0),
                MiProperty::UpperBounded => {
                    let dim_of = |s: &[&str]| -> f64 {
                        s.iter()
                            .map(|l| dims[labels.iter().position(|x| x == l).unwrap()] as f64)
                            .product()
                    };
                    let bound = dim_of(&a).ln() + dim_of(&b).ln();
                    (iab - bound).max(0.0)
                }
                MiProperty::Symmetric => {
                    let iba = mutual_information_pure(state, &b, &a)?.nats();
                    (iab - iba).abs()
                }
                MiProperty::Monotone => {
                    let bc: Vec<&str> = b.iter().chain(&c).copied().collect();
                    let iabc = mutual_information_pure(state, &a, &bc)?.nats();
                    (iab - iabc).max(0.0)
                }
            };
            out.checked += 1;
            out.max_violation = out.max_violation.max(violation);
        }
    }
    Ok(MiPropertyReport { outcomes })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationBound {
    pub covariance: f64,
    pub bound: f64,
    pub mi: f64,
    pub holds: bool,
}

fn check_observable(o: &CMatrix, dim: usize) -> Result<f64> {
    if o.nrows() != dim || o.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: o.nrows(),
        });
    }
    let dev = linalg::hermitian_deviation(o);
    if dev > INVARIANT_TOL {
        return Err(Error::NotHermitian(dev));
    }
    let norm = linalg::operator_norm(o);
    if norm == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(norm)
}

/// `(<O_C O_D> - <O_C><O_D>)^2 / (2 |O_C|^2 |O_D|^2)` against `I(C:D)`, with
/// `|O|` the operator norm. Observables act on the tensor product of the
/// listed labels in the order given.
pub fn correlation_lower_bound<S: AsRef<str>>(
    rho: &DensityMatrix,
    c: &[S],
    d: &[S],
    o_c: &CMatrix,
    o_d: &CMatrix,
) -> Result<CorrelationBound> {
    check_disjoint(c, d)?;
    let order: Vec<&str> = c.iter().chain(d).map(AsRef::as_ref).collect();
    let rho_cd = if order.len() == rho.factors().len() {
        rho.reordered(&order)?
    } else {
        rho.partial_trace(&order)?.reordered(&order)?
    };
    let dim_c: usize = rho_cd.factors()[..c.len()].iter().map(|f| f.dim()).product();
    let dim_d: usize = rho_cd.factors()[c.len()..].iter().map(|f| f.dim()).product();
    let norm_c = check_observable(o_c, dim_c)?;
    let norm_d = check_observable(o_d, dim_d)?;

    let joint = rho_cd.expectation(&linalg::kron(o_c, o_d))?.re;
    let ec = rho_cd
        .expectation(&linalg::kron(o_c, &linalg::identity(dim_d)))?
        .re;
    let ed = rho_cd
        .expectation(&linalg::kron(&linalg::identity(dim_c), o_d))?
        .re;
    let covariance = joint - ec * ed;
    let bound = covariance * covariance / (2.0 * norm_c * norm_c * norm_d * norm_d);
    let mi = mutual_information(&rho_cd, c, d)?.nats();
    Ok(CorrelationBound {
        covariance,
        bound,
        mi,
        holds: mi >= bound - DERIVED_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{density_of, FactorSpace, TensorProductStructure};
    use crate::linalg::CVector;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn bell() -> PureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(
            TensorProductStructure::qubits(&["A", "B"]).unwrap(),
            CVector::from_vec(vec![c(h), c(0.0), c(0.0), c(h)]),
        )
        .unwrap()
    }

    fn ghz3() -> PureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = CVector::zeros(8);
        amps[0] = c(h);
        amps[7] = c(h);
        PureState::new(TensorProductStructure::qubits(&["A", "B", "C"]).unwrap(), amps).unwrap()
    }

    // Independent oracle: direct -sum p ln p.
    fn direct(p: &[f64]) -> f64 {
        p.iter().filter(|x| **x > 0.0).map(|x| -x * x.ln()).sum()
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(entropy_from_spectrum(&[1.0, 0.0]).unwrap().nats(), 0.0);
        assert_abs_diff_eq!(
            entropy_from_spectrum(&[0.25; 4]).unwrap().nats(),
            4f64.ln(),
            epsilon = 1e-15
        );
        let s = entropy_from_spectrum(&[0.9, 0.1]).unwrap().nats();
        assert_abs_diff_eq!(s, direct(&[0.9, 0.1]), epsilon = 1e-15);
        assert_abs_diff_eq!(s, 0.325083, epsilon = 1e-6);
    }

    #[test]
    fn spectrum_errors() {
        assert!(matches!(
            entropy_from_spectrum(&[0.5, 0.4]),
            Err(Error::SpectrumNotNormalized(_))
        ));
        assert!(matches!(
            entropy_from_spectrum(&[1.1, -0.1]),
            Err(Error::NotPositive(_))
        ));
        // Tiny negative round-off is accepted and ignored.
        assert_eq!(entropy_from_spectrum(&[1.0, -1e-13]).unwrap().nats(), 0.0);
    }

    #[test]
    fn von_neumann_examples() {
        assert_abs_diff_eq!(
            von_neumann_entropy(&density_of(&bell())).unwrap().nats(),
            0.0,
            epsilon = 1e-12
        );
        let mixed = DensityMatrix::maximally_mixed(vec![FactorSpace::qubit("A")]).unwrap();
        assert_abs_diff_eq!(
            von_neumann_entropy(&mixed).unwrap().nats(),
            std::f64::consts::LN_2,
            epsilon = 1e-15
        );
        let d = DensityMatrix::diagonal(vec![FactorSpace::qubit("A")], &[0.25, 0.75]).unwrap();
        let s = von_neumann_entropy(&d).unwrap().nats();
        assert_abs_diff_eq!(s, direct(&[0.25, 0.75]), epsilon = 1e-14);
        assert_abs_diff_eq!(s, 0.562335, epsilon = 1e-6);
    }

    #[test]
    fn bell_and_product_mi() {
        let rho = density_of(&bell());
        let i = mutual_information(&rho, &["A"], &["B"]).unwrap();
        assert_abs_diff_eq!(i.nats(), 2.0 * std::f64::consts::LN_2, epsilon = 1e-12);
        let prod = PureState::basis(TensorProductStructure::qubits(&["A", "B"]).unwrap(), &[0, 0])
            .unwrap();
        let i = mutual_information(&density_of(&prod), &["A"], &["B"]).unwrap();
        assert_abs_diff_eq!(i.nats(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn ghz_pair_mi_is_log2() {
        let rho = ghz3().reduced(&["A", "B"]).unwrap();
        let i = mutual_information(&rho, &["A"], &["B"]).unwrap();
        assert_abs_diff_eq!(i.nats(), std::f64::consts::LN_2, epsilon = 1e-12);
        let i = mutual_information_pure(&ghz3(), &["A"], &["B", "C"]).unwrap();
        assert_abs_diff_eq!(i.nats(), 2.0 * std::f64::consts::LN_2, epsilon = 1e-12);
    }

    #[test]
    fn split_errors() {
        let rho = density_of(&ghz3());
        assert!(matches!(
            mutual_information(&rho, &["A"], &["B"]),
            Err(Error::InvalidSplit(_))
        ));
        assert!(matches!(
            mutual_information(&rho, &["A", "B"], &["B", "C"]),
            Err(Error::InvalidSplit(_))
        ));
    }

    #[test]
    fn schmidt_mi_examples() {
        use crate::hilbert::SchmidtPairState;
        let flat = SchmidtPairState::flat(3).unwrap();
        assert_abs_diff_eq!(
            mutual_information_schmidt(&flat).nats(),
            2.0 * 3f64.ln(),
            epsilon = 1e-14
        );
        assert_eq!(
            mutual_information_schmidt(&SchmidtPairState::flat(1).unwrap()).nats(),
            0.0
        );
        let s = SchmidtPairState::from_probabilities(&[0.9, 0.1]).unwrap();
        let i = mutual_information_schmidt(&s).nats();
        assert_abs_diff_eq!(i, 2.0 * direct(&[0.9, 0.1]), epsilon = 1e-14);
        assert_abs_diff_eq!(i, 0.650166, epsilon = 1e-6);
    }

    #[test]
    fn mi_properties_on_ghz() {
        let report = check_mi_properties(&ghz3(), &MiProperty::ALL, 50, 7).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(report.outcome(MiProperty::Symmetric).unwrap().max_violation, 0.0);
    }

    #[test]
    fn mi_properties_need_three_factors() {
        assert!(matches!(
            check_mi_properties(&bell(), &[MiProperty::Monotone], 1, 0),
            Err(Error::TooFewFactors(_))
        ));
        assert!(check_mi_properties(&bell(), &[MiProperty::Positive], 3, 0)
            .unwrap()
            .all_passed());
    }

    #[test]
    fn bell_sigma_z_bound() {
        let z = linalg::pauli_z();
        let r = correlation_lower_bound(&density_of(&bell()), &["A"], &["B"], &z, &z).unwrap();
        assert_abs_diff_eq!(r.covariance, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r.bound, 0.5, epsilon = 1e-12);
        assert!(r.holds);
    }

    #[test]
    fn bound_rejects_bad_observables() {
        let rho = density_of(&bell());
        let z = linalg::pauli_z();
        let zero = CMatrix::zeros(2, 2);
        assert_eq!(
            correlation_lower_bound(&rho, &["A"], &["B"], &zero, &z).unwrap_err(),
            Error::ZeroNorm
        );
        let mut nh = CMatrix::zeros(2, 2);
        nh[(0, 1)] = c(1.0);
        assert!(matches!(
            correlation_lower_bound(&rho, &["A"], &["B"], &nh, &z),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn log_base_conversion() {
        assert_abs_diff_eq!(LogBase::Bits.convert(std::f64::consts::LN_2), 1.0, epsilon = 1e-15);
        assert_eq!("2".parse::<LogBase>().unwrap(), LogBase::Bits);
        assert!("7".parse::<LogBase>().is_err());
    }
}
