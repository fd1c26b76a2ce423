//! Concrete states of the Bell-pair toy model and the physical-scale
//! arithmetic that sizes its momentum sector.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::hilbert::{
    density_of, schmidt_to_dense, tensor, DensityMatrix, FactorSpace, PureState, SchmidtPairState,
    TensorProductStructure,
};
use crate::infotheory::{mutual_information, mutual_information_pure, mutual_information_schmidt};
use crate::linalg::CVector;
use crate::{Error, Result};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `(|↑↑> + |↓↓>)/√2` over factors `A`, `B`. Spin up is basis index 0.
pub fn bell_state() -> PureState {
    bell_state_labeled("A", "B").expect("fixed labels are distinct")
}

pub fn bell_state_labeled(a: &str, b: &str) -> Result<PureState> {
    PureState::new(
        TensorProductStructure::qubits(&[a, b])?,
        CVector::from_vec(vec![c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)]),
    )
}

/// `Σ_i |i,i>/√n` over two `n`-dimensional factors.
pub fn qudit_bell(n: usize) -> Result<PureState> {
    let tps = TensorProductStructure::new(vec![FactorSpace::new("A", n)?, FactorSpace::new("B", n)?])?;
    let mut amps = CVector::zeros(n * n);
    let a = c((1.0 / n as f64).sqrt());
    for i in 0..n {
        amps[i * n + i] = a;
    }
    PureState::new(tps, amps)
}

/// `(|↑↑↑> + |↓↓↓>)/√2` over `A`, `B`, `E`.
pub fn bell_with_environment() -> PureState {
    ghz("A", "B", "E")
}

/// Three-qubit GHZ state over the given labels.
pub fn ghz(a: &str, b: &str, e: &str) -> PureState {
    let mut amps = CVector::zeros(8);
    amps[0] = c(FRAC_1_SQRT_2);
    amps[7] = c(FRAC_1_SQRT_2);
    PureState::new(
        TensorProductStructure::qubits(&[a, b, e]).expect("distinct labels"),
        amps,
    )
    .expect("normalized")
}

/// `½(|↓↓><↓↓| + |↑↑><↑↑|)`.
pub fn classical_mixture_state() -> DensityMatrix {
    DensityMatrix::diagonal(
        vec![FactorSpace::qubit("A"), FactorSpace::qubit("B")],
        &[0.5, 0.0, 0.0, 0.5],
    )
    .expect("valid mixture")
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpinSector {
    Pure(PureState),
    Mixed(DensityMatrix),
}

impl SpinSector {
    fn labels(&self) -> Vec<&str> {
        match self {
            SpinSector::Pure(p) => p.tps().labels(),
            SpinSector::Mixed(m) => m.labels(),
        }
    }

    fn density(&self) -> DensityMatrix {
        match self {
            SpinSector::Pure(p) => density_of(p),
            SpinSector::Mixed(m) => m.clone(),
        }
    }
}

/// Spin ⊗ momentum state with `ρ_AB = ρ^s_AB ⊗ ρ^p_AB`. The spin sector has
/// two factors, the first on Alice's side.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorState {
    spin: SpinSector,
    momentum: SchmidtPairState,
}

impl SectorState {
    pub fn spin(&self) -> &SpinSector {
        &self.spin
    }

    pub fn momentum(&self) -> &SchmidtPairState {
        &self.momentum
    }

    fn spin_split(&self) -> (String, String) {
        let l = self.spin.labels();
        (l[0].to_string(), l[1].to_string())
    }

    pub fn spin_mi(&self) -> Result<f64> {
        let (a, b) = self.spin_split();
        match &self.spin {
            SpinSector::Pure(p) => Ok(mutual_information_pure(p, &[a], &[b])?.nats()),
            SpinSector::Mixed(m) => Ok(mutual_information(m, &[a], &[b])?.nats()),
        }
    }

    pub fn momentum_mi(&self) -> f64 {
        mutual_information_schmidt(&self.momentum).nats()
    }

    /// Sector-additive total `I(A^s:B^s) + I(A^p:B^p)`.
    pub fn total_mi(&self) -> Result<f64> {
        Ok(self.spin_mi()? + self.momentum_mi())
    }

    /// Alice's and Bob's factor labels across both sectors.
    pub fn sides(&self) -> ([String; 2], [String; 2]) {
        let (sa, sb) = self.spin_split();
        let (pa, pb) = self.momentum.labels();
        ([sa, pa.to_string()], [sb, pb.to_string()])
    }

    /// Dense `ρ^s ⊗ ρ^p` over `[A^s, B^s, A^p, B^p]`.
    pub fn to_density_matrix(&self) -> Result<DensityMatrix> {
        let p = density_of(&schmidt_to_dense(&self.momentum)?);
        self.spin.density().tensor(&p)
    }

    /// Dense pure state when the spin sector is pure.
    pub fn to_pure_state(&self) -> Result<PureState> {
        match &self.spin {
            SpinSector::Pure(s) => tensor(&[s, &schmidt_to_dense(&self.momentum)?]),
            SpinSector::Mixed(_) => Err(Error::InvalidArgument("spin sector is mixed".into())),
        }
    }
}

pub fn spin_momentum_state(spin: SpinSector, momentum: SchmidtPairState) -> Result<SectorState> {
    let labels = spin.labels();
    if labels.len() != 2 {
        return Err(Error::InvalidArgument(format!(
            "spin sector needs exactly two factors, got {}",
            labels.len()
        )));
    }
    let (pa, pb) = momentum.labels();
    for l in [pa, pb] {
        if labels.contains(&l) {
            return Err(Error::DuplicateLabel(l.to_string()));
        }
    }
    Ok(SectorState { spin, momentum })
}

/// Spin state with the conventional sector labels `As`, `Bs`.
pub fn spin_bell() -> PureState {
    bell_state_labeled("As", "Bs").expect("fixed labels are distinct")
}

pub fn spin_product() -> PureState {
    PureState::basis(TensorProductStructure::qubits(&["As", "Bs"]).expect("labels"), &[0, 0])
        .expect("basis state")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Distribution {
    Flat,
    /// Probabilities `|α_n|²`, `n = 1..=N-1`.
    Weights(Vec<f64>),
}

/// Where the mode count `N` comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModeSource<'a> {
    /// Explicit `N` (so `N - 1` branches).
    Explicit(usize),
    Scales(&'a PhysicalScales),
}

/// Flat states derived from physical scales are materialized only up to
/// this many branches; larger ones stay symbolic.
pub const MAX_MATERIALIZED_MODES: usize = 1 << 20;

/// `|Δπ> = Σ_n α_n |n, N-n>`.
pub fn momentum_sector_state(source: ModeSource<'_>, distribution: &Distribution) -> Result<SchmidtPairState> {
    match (source, distribution) {
        (ModeSource::Explicit(n), Distribution::Flat) => {
            if n < 2 {
                return Err(Error::InvalidArgument(format!("N must be >= 2, got {n}")));
            }
            SchmidtPairState::flat(n - 1)
        }
        (ModeSource::Explicit(n), Distribution::Weights(w)) => {
            if w.len() + 1 != n {
                return Err(Error::DimensionMismatch {
                    expected: n.saturating_sub(1),
                    got: w.len(),
                });
            }
            SchmidtPairState::from_probabilities(w)
        }
        (ModeSource::Scales(s), Distribution::Flat) => {
            let n = s.n_modes.round();
            if n < 2.0 {
                return Err(Error::InvalidScales(format!("N = {n} leaves no entangled branch")));
            }
            let modes = n - 1.0;
            if modes <= MAX_MATERIALIZED_MODES as f64 {
                SchmidtPairState::flat(modes as usize)
            } else {
                SchmidtPairState::flat_symbolic(modes)
            }
        }
        (ModeSource::Scales(_), Distribution::Weights(w)) => SchmidtPairState::from_probabilities(w),
    }
}

/// Physical constants in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub hbar: f64,
    pub c: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self {
            hbar: 1.054_571_817e-34,
            c: 2.998e8,
        }
    }
}

/// Cosmological-constant scale, `Λ ~ l_IR^-2` with `l_IR ~ 1e26 m`.
pub const DEFAULT_LAMBDA_CC: f64 = 1e-52;

pub const ELECTRON_MASS: f64 = 9.109e-31;

/// Upper bound on the momentum uncertainty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MomentumCap {
    /// `ħ / l_app`, set by the apparatus size.
    #[default]
    Apparatus,
    /// `m c`, enough energy to pair-create.
    Compton,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScales {
    pub l_app: f64,
    pub l_lab: Option<f64>,
    pub lambda_cc: f64,
    pub mass: f64,
    pub constants: Constants,
    pub cap: MomentumCap,
    pub l_ir: f64,
    pub p_app: f64,
    pub p_ir: f64,
    /// `N = p_app / p_IR`.
    pub n_modes: f64,
    /// Largest allowed branch count `l_IR m c / ħ`.
    pub compton_ceiling: f64,
}

pub fn physical_scales(l_app: f64, lambda_cc: f64, mass: f64) -> Result<PhysicalScales> {
    physical_scales_with(l_app, lambda_cc, mass, Constants::default(), MomentumCap::Apparatus)
}

pub fn physical_scales_with(
    l_app: f64,
    lambda_cc: f64,
    mass: f64,
    constants: Constants,
    cap: MomentumCap,
) -> Result<PhysicalScales> {
    for (name, v) in [
        ("l_app", l_app),
        ("lambda_cc", lambda_cc),
        ("mass", mass),
        ("hbar", constants.hbar),
        ("c", constants.c),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidScales(format!("{name} must be positive, got {v}")));
        }
    }
    let l_ir = lambda_cc.sqrt().recip();
    let p_ir = constants.hbar * lambda_cc.sqrt();
    let p_app = match cap {
        MomentumCap::Apparatus => constants.hbar / l_app,
        MomentumCap::Compton => mass * constants.c,
    };
    if p_ir > p_app {
        return Err(Error::InvalidScales(format!(
            "p_IR = {p_ir:e} exceeds p_app = {p_app:e}"
        )));
    }
    Ok(PhysicalScales {
        l_app,
        l_lab: None,
        lambda_cc,
        mass,
        constants,
        cap,
        l_ir,
        p_app,
        p_ir,
        n_modes: p_app / p_ir,
        compton_ceiling: l_ir * mass * constants.c / constants.hbar,
    })
}
