//! Entanglement perturbations and momentum-mode decoherence.
//!
//! Local perturbations act unitarily on the system and move mutual
//! information by exactly twice the change of `S(A)`. Non-local ones couple
//! one side to fresh environment factors and can only lower `I(A:B)`.
//!
//! Two decoherence models act on a [`SchmidtPairState`] for a set `D` of
//! decohered branches:
//!
//! * [`Channel::Dephase`]: an environment records the branch index of every
//!   `n ∈ D`. Coherences into and between decohered branches vanish; the
//!   classical branch correlation survives.
//! * [`Channel::Localize`]: decohered branches are replaced by the product
//!   `τ_A ⊗ τ_B` of their marginals, removing their correlation entirely.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::geometry::{edge_weight, WeightFunction};
use crate::hilbert::{
    tensor_capped, DensityMatrix, PureState, SchmidtPairState, TensorProductStructure,
    DEFAULT_DENSE_CAP, INVARIANT_TOL,
};
use crate::infotheory::{mutual_information_pure, mutual_information_schmidt, shannon, subsystem_entropy, DERIVED_TOL};
use crate::linalg::{self, CMatrix, CVector};
use crate::{Error, Result};

/// Seed for trial `k` of a batch rooted at `root`.
pub fn trial_seed(root: u64, k: u64) -> u64 {
    root.wrapping_add(k)
}

fn gaussian(rng: &mut ChaCha8Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// triangular factor's diagonal made real positive.
pub fn haar_random_unitary(dim: usize, seed: u64) -> Result<CMatrix> {
    if dim == 0 {
        return Err(Error::InvalidArgument("unitary dimension must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(dim * dim);
    for _ in 0..dim * dim {
        entries.push(gaussian(&mut rng));
    }
    let g = CMatrix::from_row_slice(dim, dim, &entries);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { linalg::ONE };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Ok(q)
}

/// Haar-random pure state over `tps` (normalized complex Gaussian vector).
pub fn haar_random_state(tps: TensorProductStructure, seed: u64) -> Result<PureState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amps = CVector::from_iterator(tps.total_dim(), (0..tps.total_dim()).map(|_| gaussian(&mut rng)));
    PureState::normalized(tps, amps)
}

/// Random Hermitian matrix `(G + G^dagger) / 2` with Ginibre `G`.
pub fn random_hermitian(dim: usize, seed: u64) -> Result<CMatrix> {
    if dim == 0 {
        return Err(Error::InvalidArgument("observable dimension must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries: Vec<Complex64> = (0..dim * dim).map(|_| gaussian(&mut rng)).collect();
    let g = CMatrix::from_row_slice(dim, dim, &entries);
    Ok((&g + g.adjoint()).scale(0.5))
}

fn check_unitary(u: &CMatrix) -> Result<()> {
    let dev = linalg::unitary_deviation(u);
    if dev > INVARIANT_TOL {
        return Err(Error::NotUnitary(dev));
    }
    Ok(())
}

/// Unitary over a subset of system factors, in the order of `labels`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalPerturbation {
    labels: Vec<String>,
    unitary: CMatrix,
}

impl LocalPerturbation {
    pub fn new<S: AsRef<str>>(labels: &[S], unitary: CMatrix) -> Result<Self> {
        check_unitary(&unitary)?;
        Ok(Self {
            labels: labels.iter().map(|l| l.as_ref().to_string()).collect(),
            unitary,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }
}

/// Unitary over system labels on one side plus fresh environment factors
/// prepared in `environment`. Untouched system factors see the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct NonLocalPerturbation {
    labels: Vec<String>,
    unitary: CMatrix,
    environment: PureState,
}

impl NonLocalPerturbation {
    pub fn new<S: AsRef<str>>(labels: &[S], unitary: CMatrix, environment: PureState) -> Result<Self> {
        check_unitary(&unitary)?;
        Ok(Self {
            labels: labels.iter().map(|l| l.as_ref().to_string()).collect(),
            unitary,
            environment,
        })
    }

    pub fn environment(&self) -> &PureState {
        &self.environment
    }
}

#[derive(Debug, Clone)]
pub enum Perturbation {
    Local(LocalPerturbation),
    NonLocal(NonLocalPerturbation),
}

#[derive(Debug, Clone)]
pub struct LocalOutcome {
    pub state: PureState,
    pub delta_i: f64,
    pub delta_s_a: f64,
}

#[derive(Debug, Clone)]
pub struct NonLocalOutcome {
    pub state: PureState,
    pub delta_i: f64,
}

fn check_partition<S: AsRef<str>>(psi: &PureState, a: &[S], b: &[S]) -> Result<()> {
    let labels = psi.tps().labels();
    let mut seen: Vec<&str> = a.iter().chain(b).map(AsRef::as_ref).collect();
    for l in &seen {
        if !labels.contains(l) {
            return Err(Error::UnknownLabel(l.to_string()));
        }
    }
    seen.sort_unstable();
    seen.dedup();
    if a.is_empty() || b.is_empty() || seen.len() != a.len() + b.len() || seen.len() != labels.len() {
        return Err(Error::InvalidSplit(
            "A and B must be nonempty and partition the system factors".into(),
        ));
    }
    Ok(())
}

/// Apply a system unitary and report `δI(A:B)` and `δS_A`. The total state
/// stays pure, so `δI = 2 δS_A` is checked on every call.
pub fn apply_local<S: AsRef<str>>(
    psi: &PureState,
    u: &LocalPerturbation,
    a: &[S],
    b: &[S],
) -> Result<LocalOutcome> {
    check_partition(psi, a, b)?;
    let before_i = mutual_information_pure(psi, a, b)?.nats();
    let before_s = subsystem_entropy(psi, a)?.nats();
    let state = psi.apply_unitary(&u.labels, &u.unitary)?;
    let delta_i = mutual_information_pure(&state, a, b)?.nats() - before_i;
    let delta_s_a = subsystem_entropy(&state, a)?.nats() - before_s;
    if (delta_i - 2.0 * delta_s_a).abs() >= DERIVED_TOL {
        return Err(Error::InvariantViolation(format!(
            "local perturbation: dI = {delta_i}, 2 dS_A = {}",
            2.0 * delta_s_a
        )));
    }
    Ok(LocalOutcome {
        state,
        delta_i,
        delta_s_a,
    })
}

/// Couple one side to a fresh environment and report `δI(A:B)`, which the
/// data processing inequality keeps nonpositive.
pub fn apply_nonlocal<S: AsRef<str>>(
    psi: &PureState,
    u: &NonLocalPerturbation,
    a: &[S],
    b: &[S],
) -> Result<NonLocalOutcome> {
    check_partition(psi, a, b)?;
    let system = psi.tps().labels();
    let env = u.environment.tps().labels();
    if let Some(l) = env.iter().find(|l| system.contains(l)) {
        return Err(Error::DuplicateLabel(l.to_string()));
    }
    let touched: Vec<&str> = u
        .labels
        .iter()
        .map(String::as_str)
        .filter(|l| system.contains(l))
        .collect();
    let within = |side: &[S]| touched.iter().all(|t| side.iter().any(|s| s.as_ref() == *t));
    if !within(a) && !within(b) {
        return Err(Error::InvalidPerturbation(
            "a non-local perturbation may touch only one side of the split".into(),
        ));
    }
    let before = mutual_information_pure(psi, a, b)?.nats();
    let cap = psi.tps().cap().max(DEFAULT_DENSE_CAP);
    let extended = tensor_capped(&[psi, &u.environment], cap)?;
    let state = extended.apply_unitary(&u.labels, &u.unitary)?;
    let delta_i = mutual_information_pure(&state, a, b)?.nats() - before;
    if delta_i > DERIVED_TOL {
        return Err(Error::InvariantViolation(format!(
            "non-local perturbation increased I(A:B) by {delta_i}"
        )));
    }
    Ok(NonLocalOutcome { state, delta_i })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channel {
    Dephase,
    Localize,
}

impl std::str::FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dephase" => Ok(Channel::Dephase),
            "localize" => Ok(Channel::Localize),
            other => Err(Error::InvalidArgument(format!("unknown channel `{other}`"))),
        }
    }
}

impl Channel {
    pub fn name(self) -> &'static str {
        match self {
            Channel::Dephase => "dephase",
            Channel::Localize => "localize",
        }
    }
}

fn eta(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.ln()
    } else {
        0.0
    }
}

/// Bipartite mixed state left after decohering the branches in `decohered`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoheredState {
    channel: Channel,
    state: SchmidtPairState,
    decohered: BTreeSet<usize>,
}

impl DecoheredState {
    pub fn channel(&self) -> Channel {
        self.channel
    }

    pub fn source(&self) -> &SchmidtPairState {
        &self.state
    }

    /// 1-based decohered branch indices.
    pub fn decohered(&self) -> &BTreeSet<usize> {
        &self.decohered
    }

    fn split_weight(&self, p: &[f64]) -> (f64, f64) {
        let pd: f64 = self.decohered.iter().map(|&n| p[n - 1]).sum();
        let pr: f64 = p
            .iter()
            .enumerate()
            .filter(|(k, _)| !self.decohered.contains(&(k + 1)))
            .map(|(_, &x)| x)
            .sum();
        (pr, pd)
    }

    /// Nonzero part of the joint spectrum of `ρ_AB`.
    pub fn joint_spectrum(&self) -> Vec<f64> {
        let p = self.state.probabilities().expect("explicit weights checked at construction");
        let (pr, pd) = self.split_weight(&p);
        let mut out = Vec::new();
        if pr > 0.0 {
            out.push(pr);
        }
        match self.channel {
            Channel::Dephase => out.extend(self.decohered.iter().map(|&n| p[n - 1])),
            Channel::Localize if pd > 0.0 => {
                for &n in &self.decohered {
                    for &m in &self.decohered {
                        out.push(p[n - 1] * p[m - 1] / pd);
                    }
                }
            }
            Channel::Localize => {}
        }
        out
    }

    /// `2 H(|α_n|²) - S(ρ_AB)`; both marginals keep the spectrum `|α_n|²`.
    pub fn mutual_information(&self) -> f64 {
        let p = self.state.probabilities().expect("explicit weights checked at construction");
        let marginal = shannon(&p);
        let (pr, pd) = self.split_weight(&p);
        let joint = match self.channel {
            Channel::Dephase => eta(pr) + self.decohered.iter().map(|&n| eta(p[n - 1])).sum::<f64>(),
            Channel::Localize => {
                // S(P_R ⊕ P_D τ⊗τ) = η(P_R) + η(P_D) + 2 P_D H(q), q = p|_D / P_D.
                let hq = if pd > 0.0 {
                    self.decohered.iter().map(|&n| eta(p[n - 1] / pd)).sum::<f64>()
                } else {
                    0.0
                };
                eta(pr) + eta(pd) + 2.0 * pd * hq
            }
        };
        (2.0 * marginal - joint).max(0.0)
    }

    /// Dense `ρ_AB` over the two side factors.
    pub fn to_density_matrix(&self) -> Result<DensityMatrix> {
        let m = self.state.explicit_modes()?;
        let dim = m.checked_mul(m).ok_or(Error::DenseCapExceeded {
            dim: usize::MAX,
            cap: DEFAULT_DENSE_CAP,
        })?;
        if dim > DEFAULT_DENSE_CAP {
            return Err(Error::DenseCapExceeded {
                dim,
                cap: DEFAULT_DENSE_CAP,
            });
        }
        let w = self.state.weights()?;
        let f = self.state.pairing()?;
        let p = self.state.probabilities()?;
        let (_, pd) = self.split_weight(&p);
        let idx = |a: usize, b: usize| (a - 1) * m + (b - 1);
        let mut rho = CMatrix::zeros(dim, dim);
        let retained: Vec<usize> = (1..=m).filter(|n| !self.decohered.contains(n)).collect();
        for &n in &retained {
            for &k in &retained {
                rho[(idx(n, f[n - 1]), idx(k, f[k - 1]))] = w[n - 1] * w[k - 1].conj();
            }
        }
        match self.channel {
            Channel::Dephase => {
                for &n in &self.decohered {
                    rho[(idx(n, f[n - 1]), idx(n, f[n - 1]))] += Complex64::new(p[n - 1], 0.0);
                }
            }
            Channel::Localize if pd > 0.0 => {
                for &n in &self.decohered {
                    for &k in &self.decohered {
                        let i = idx(n, f[k - 1]);
                        rho[(i, i)] += Complex64::new(p[n - 1] * p[k - 1] / pd, 0.0);
                    }
                }
            }
            Channel::Localize => {}
        }
        let (fa, fb) = self.state.side_factors()?;
        DensityMatrix::new(vec![fa, fb], rho)
    }
}

fn check_modes(s: &SchmidtPairState, d: &BTreeSet<usize>) -> Result<usize> {
    let m = s.explicit_modes()?;
    if let Some(&bad) = d.iter().find(|&&n| n == 0 || n > m) {
        return Err(Error::ModeOutOfRange { index: bad, max: m });
    }
    Ok(m)
}

fn decohere(s: &SchmidtPairState, d: &BTreeSet<usize>, channel: Channel) -> Result<(DecoheredState, f64)> {
    check_modes(s, d)?;
    let out = DecoheredState {
        channel,
        state: s.clone(),
        decohered: d.clone(),
    };
    let mi = out.mutual_information();
    Ok((out, mi))
}

/// Environment records the branch index of every `n ∈ d` (1-based).
pub fn dephase_modes(s: &SchmidtPairState, d: &BTreeSet<usize>) -> Result<(DecoheredState, f64)> {
    decohere(s, d, Channel::Dephase)
}

/// Branches in `d` (1-based) lose all A–B correlation.
pub fn localize_modes(s: &SchmidtPairState, d: &BTreeSet<usize>) -> Result<(DecoheredState, f64)> {
    decohere(s, d, Channel::Localize)
}

pub fn decohere_modes(
    s: &SchmidtPairState,
    d: &BTreeSet<usize>,
    channel: Channel,
) -> Result<(DecoheredState, f64)> {
    decohere(s, d, channel)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleStep {
    pub modes: BTreeSet<usize>,
    pub channel: Channel,
}

/// Ordered, pairwise-disjoint mode sets; step `k` decoheres the union of
/// the first `k` sets.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DecoherenceSchedule {
    steps: Vec<ScheduleStep>,
}

impl DecoherenceSchedule {
    pub fn new(steps: Vec<ScheduleStep>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (k, step) in steps.iter().enumerate() {
            for &n in &step.modes {
                if n == 0 {
                    return Err(Error::InvalidSchedule("mode indices are 1-based".into()));
                }
                if !seen.insert(n) {
                    return Err(Error::InvalidSchedule(format!(
                        "mode {n} repeated at step {}",
                        k + 1
                    )));
                }
            }
        }
        Ok(Self { steps })
    }

    /// Split modes `1..=modes` into `steps` contiguous chunks, lowest
    /// (most infrared) indices first. Earlier chunks take the remainder.
    pub fn ir_first(modes: usize, steps: usize, channel: Channel) -> Result<Self> {
        Self::chunked((1..=modes).collect(), steps, channel)
    }

    /// Same chunking, highest indices first.
    pub fn uv_first(modes: usize, steps: usize, channel: Channel) -> Result<Self> {
        Self::chunked((1..=modes).rev().collect(), steps, channel)
    }

    fn chunked(order: Vec<usize>, steps: usize, channel: Channel) -> Result<Self> {
        if steps > order.len() {
            return Err(Error::InvalidSchedule(format!(
                "{steps} steps for {} modes",
                order.len()
            )));
        }
        if steps == 0 {
            return Ok(Self::default());
        }
        let base = order.len() / steps;
        let extra = order.len() % steps;
        let mut it = order.into_iter();
        let out = (0..steps)
            .map(|k| ScheduleStep {
                modes: it.by_ref().take(base + usize::from(k < extra)).collect(),
                channel,
            })
            .collect();
        Self::new(out)
    }

    pub fn steps(&self) -> &[ScheduleStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub step: usize,
    pub decohered: usize,
    pub momentum_mi: f64,
    pub total_mi: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    /// Step 0: nothing decohered.
    pub initial: SweepRow,
    /// `I0 = spin_mi + initial momentum MI`.
    pub i0: f64,
    pub rows: Vec<SweepRow>,
}

impl SweepSeries {
    /// Momentum MI non-increasing and distance non-decreasing across
    /// `initial` and every row, within the derived tolerance.
    pub fn is_monotone(&self) -> bool {
        let all: Vec<&SweepRow> = std::iter::once(&self.initial).chain(&self.rows).collect();
        all.windows(2).all(|w| {
            w[1].momentum_mi <= w[0].momentum_mi + DERIVED_TOL
                && w[1].distance >= w[0].distance - DERIVED_TOL
        })
    }
}

/// Decohere `s` step by step with the spin sector held at `spin_mi`.
///
/// Distances use `l_rc * phi(total / I0)` with `I0` the initial total.
pub fn decoherence_sweep(
    s: &SchmidtPairState,
    schedule: &DecoherenceSchedule,
    spin_mi: f64,
    phi: &WeightFunction,
) -> Result<SweepSeries> {
    if !(spin_mi >= 0.0) || !spin_mi.is_finite() {
        return Err(Error::InvalidArgument(format!("spin MI must be >= 0, got {spin_mi}")));
    }
    let m = s.explicit_modes()?;
    if let Some(bad) = schedule
        .steps
        .iter()
        .flat_map(|st| st.modes.iter())
        .find(|&&n| n > m)
    {
        return Err(Error::InvalidSchedule(format!("mode {bad} exceeds {m} modes")));
    }
    let initial_mi = mutual_information_schmidt(s).nats();
    let i0 = spin_mi + initial_mi;
    if !(i0 > 0.0) {
        return Err(Error::NoCorrelations);
    }
    let row = |step: usize, decohered: usize, momentum_mi: f64| -> Result<SweepRow> {
        let total_mi = (spin_mi + momentum_mi).min(i0);
        Ok(SweepRow {
            step,
            decohered,
            momentum_mi,
            total_mi,
            distance: edge_weight(total_mi, i0, phi)?,
        })
    };
    let initial = row(0, 0, initial_mi)?;
    let mut cumulative = BTreeSet::new();
    let mut rows = Vec::with_capacity(schedule.len());
    for (k, step) in schedule.steps.iter().enumerate() {
        cumulative.extend(step.modes.iter().copied());
        let (_, mi) = decohere(s, &cumulative, step.channel)?;
        rows.push(row(k + 1, cumulative.len(), mi)?);
    }
    Ok(SweepSeries { initial, i0, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn haar_dim_one_is_phase() {
        let u = haar_random_unitary(1, 3).unwrap();
        assert_abs_diff_eq!(u[(0, 0)].norm(), 1.0, epsilon = 1e-14);
        assert!(haar_random_unitary(0, 3).is_err());
    }

    #[test]
    fn haar_is_unitary_and_deterministic() {
        let u = haar_random_unitary(6, 42).unwrap();
        assert!(linalg::unitary_deviation(&u) < 1e-12);
        assert_eq!(u, haar_random_unitary(6, 42).unwrap());
        assert_ne!(u, haar_random_unitary(6, 43).unwrap());
    }

    #[test]
    fn haar_first_moment() {
        // E|U_00|^2 = 1/dim.
        let mean: f64 = (0..100)
            .map(|k| haar_random_unitary(2, trial_seed(0, k)).unwrap()[(0, 0)].norm_sqr())
            .sum::<f64>()
            / 100.0;
        assert!((mean - 0.5).abs() < 0.05, "mean {mean}");
    }

    #[test]
    fn haar_moments_large_sample() {
        // dim 3: E|U_00|^2 = 1/3, E|U_00|^4 = 2/(d(d+1)) = 1/6.
        let n = 20_000;
        let (mut m1, mut m2) = (0.0, 0.0);
        for k in 0..n {
            let x = haar_random_unitary(3, trial_seed(1234, k)).unwrap()[(1, 2)].norm_sqr();
            m1 += x;
            m2 += x * x;
        }
        let (m1, m2) = (m1 / n as f64, m2 / n as f64);
        assert!((m1 - 1.0 / 3.0).abs() < 0.01, "{m1}");
        assert!((m2 - 1.0 / 6.0).abs() < 0.01, "{m2}");
    }

    #[test]
    fn ir_first_chunks() {
        let s = DecoherenceSchedule::ir_first(10, 3, Channel::Localize).unwrap();
        let sizes: Vec<usize> = s.steps().iter().map(|st| st.modes.len()).collect();
        assert_eq!(sizes, vec![4, 3, 3]);
        assert_eq!(s.steps()[0].modes.iter().next(), Some(&1));
        let u = DecoherenceSchedule::uv_first(10, 2, Channel::Dephase).unwrap();
        assert!(u.steps()[0].modes.contains(&10));
        assert!(DecoherenceSchedule::ir_first(2, 3, Channel::Dephase).is_err());
    }

    #[test]
    fn schedule_rejects_overlap() {
        let step = |m: &[usize]| ScheduleStep {
            modes: m.iter().copied().collect(),
            channel: Channel::Dephase,
        };
        assert!(DecoherenceSchedule::new(vec![step(&[1, 2]), step(&[2, 3])]).is_err());
        assert!(DecoherenceSchedule::new(vec![step(&[0])]).is_err());
    }

    #[test]
    fn empty_decoherence_keeps_mi() {
        let s = SchmidtPairState::from_probabilities(&[0.5, 0.3, 0.2]).unwrap();
        let base = mutual_information_schmidt(&s).nats();
        for ch in [Channel::Dephase, Channel::Localize] {
            let (_, mi) = decohere_modes(&s, &BTreeSet::new(), ch).unwrap();
            assert_abs_diff_eq!(mi, base, epsilon = 1e-14);
        }
    }

    #[test]
    fn full_localization_kills_mi() {
        let s = SchmidtPairState::from_probabilities(&[0.5, 0.3, 0.2]).unwrap();
        let all: BTreeSet<usize> = (1..=3).collect();
        assert_abs_diff_eq!(localize_modes(&s, &all).unwrap().1, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn mode_out_of_range() {
        let s = SchmidtPairState::flat(4).unwrap();
        let d: BTreeSet<usize> = [5].into();
        assert_eq!(
            dephase_modes(&s, &d).unwrap_err(),
            Error::ModeOutOfRange { index: 5, max: 4 }
        );
        let d: BTreeSet<usize> = [0].into();
        assert!(localize_modes(&s, &d).is_err());
    }

    #[test]
    fn dense_descriptor_matches_spectrum() {
        let s = SchmidtPairState::from_probabilities(&[0.4, 0.3, 0.2, 0.1]).unwrap();
        let d: BTreeSet<usize> = [2, 4].into();
        for ch in [Channel::Dephase, Channel::Localize] {
            let (st, _) = decohere_modes(&s, &d, ch).unwrap();
            let rho = st.to_density_matrix().unwrap();
            let mut ev: Vec<f64> = rho.eigenvalues().into_iter().filter(|x| *x > 1e-12).collect();
            let mut js = st.joint_spectrum();
            ev.sort_by(f64::total_cmp);
            js.sort_by(f64::total_cmp);
            assert_eq!(ev.len(), js.len());
            for (a, b) in ev.iter().zip(&js) {
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn zero_step_sweep() {
        let s = SchmidtPairState::flat(4).unwrap();
        let out = decoherence_sweep(&s, &DecoherenceSchedule::default(), 0.0, &WeightFunction::default())
            .unwrap();
        assert!(out.rows.is_empty());
        assert_eq!(out.initial.distance, 0.0);
    }

    #[test]
    fn sweep_rejects_bad_inputs() {
        let s = SchmidtPairState::flat(4).unwrap();
        let sched = DecoherenceSchedule::ir_first(8, 2, Channel::Localize).unwrap();
        assert!(matches!(
            decoherence_sweep(&s, &sched, 0.0, &WeightFunction::default()),
            Err(Error::InvalidSchedule(_))
        ));
        let sched = DecoherenceSchedule::ir_first(4, 2, Channel::Localize).unwrap();
        assert!(decoherence_sweep(&s, &sched, -1.0, &WeightFunction::default()).is_err());
        let single = SchmidtPairState::flat(1).unwrap();
        let empty = DecoherenceSchedule::default();
        assert_eq!(
            decoherence_sweep(&single, &empty, 0.0, &WeightFunction::default()).unwrap_err(),
            Error::NoCorrelations
        );
    }

    #[test]
    fn nonlocal_rejects_two_sided_unitary() {
        let tps = TensorProductStructure::qubits(&["A", "B"]).unwrap();
        let psi = haar_random_state(tps, 1).unwrap();
        let env = PureState::basis(TensorProductStructure::qubits(&["E"]).unwrap(), &[0]).unwrap();
        let u = NonLocalPerturbation::new(&["A", "B", "E"], haar_random_unitary(8, 2).unwrap(), env)
            .unwrap();
        assert!(matches!(
            apply_nonlocal(&psi, &u, &["A"], &["B"]),
            Err(Error::InvalidPerturbation(_))
        ));
    }

    #[test]
    fn nonlocal_rejects_label_collision() {
        let tps = TensorProductStructure::qubits(&["A", "B"]).unwrap();
        let psi = haar_random_state(tps, 1).unwrap();
        let env = PureState::basis(TensorProductStructure::qubits(&["A"]).unwrap(), &[0]).unwrap();
        let u = NonLocalPerturbation::new(&["A"], linalg::identity(2), env).unwrap();
        assert_eq!(
            apply_nonlocal(&psi, &u, &["A"], &["B"]).unwrap_err(),
            Error::DuplicateLabel("A".into())
        );
    }

    #[test]
    fn local_rejects_bad_split() {
        let tps = TensorProductStructure::qubits(&["A", "B", "C"]).unwrap();
        let psi = haar_random_state(tps, 1).unwrap();
        let u = LocalPerturbation::new(&["A"], linalg::identity(2)).unwrap();
        assert!(matches!(
            apply_local(&psi, &u, &["A"], &["B"]),
            Err(Error::InvalidSplit(_))
        ));
        assert!(LocalPerturbation::new(&["A"], linalg::from_real_diagonal(&[1.0, 0.5])).is_err());
    }
}
