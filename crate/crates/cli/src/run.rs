//! Scenario runners. Each resolves its parameters, rejects leftovers, then
//! computes a [`Table`]; [`run`] adds the reproducibility header.

use std::collections::BTreeSet;
use std::path::PathBuf;

use emergent_core::channels::{
    apply_local, apply_nonlocal, decoherence_sweep, dephase_modes, haar_random_state, haar_random_unitary,
    localize_modes, random_hermitian, trial_seed, Channel, DecoherenceSchedule, LocalPerturbation,
    NonLocalPerturbation,
};
use emergent_core::geometry::{
    build_info_graph, edge_weight, emergent_metric, metric_check, WeightFunction,
};
use emergent_core::hilbert::{FactorSpace, PureState, SchmidtPairState, TensorProductStructure};
use emergent_core::infotheory::{
    check_mi_properties, correlation_lower_bound, mutual_information_pure, mutual_information_schmidt,
    subsystem_entropy, LogBase, MiProperty, DERIVED_TOL,
};
use emergent_core::linalg::cnot;
use emergent_core::scenarios::{
    bell_state, bell_with_environment, ghz, momentum_sector_state, physical_scales_with, qudit_bell, spin_bell,
    spin_momentum_state, spin_product, Constants, Distribution, ModeSource, MomentumCap, SpinSector,
    ELECTRON_MASS, DEFAULT_LAMBDA_CC,
};
use emergent_core::Error;

use crate::config::{Resolver, RunConfig, Scenario};
use crate::error::{CliError, CliResult};
use crate::output::{export_edges, Cell, Table};

pub const TOOL: &str = "emergent";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest Schmidt rank for which `spin-momentum` also runs the dense
/// cross-check by default: `4 m^2` amplitudes stay below the dense cap.
const DENSE_CHECK_MODES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub table: Table,
    /// Names of failed checks; nonempty only for `property-suite`.
    pub failures: Vec<String>,
}

pub fn run(cfg: &RunConfig) -> CliResult<RunOutput> {
    let mut r = Resolver::new(cfg.params.clone());
    let ctx = Ctx {
        seed: cfg.seed,
        base: cfg.log_base,
    };
    let (body, failures) = match cfg.scenario {
        Scenario::VanillaBell => (vanilla_bell(&mut r, &ctx)?, vec![]),
        Scenario::BellEnv => (bell_env(&mut r, &ctx)?, vec![]),
        Scenario::QuditBell => (qudit(&mut r, &ctx)?, vec![]),
        Scenario::SpinMomentum => (spin_momentum(&mut r, &ctx)?, vec![]),
        Scenario::MomentumSweep => (momentum_sweep(&mut r, &ctx)?, vec![]),
        Scenario::GraphReconstruct => (graph_reconstruct(&mut r, &ctx)?, vec![]),
        Scenario::PropertySuite => property_suite(&mut r, &ctx)?,
        Scenario::PhysicalScales => (scales(&mut r, &ctx)?, vec![]),
    };
    let mut table = Table::new(&[]);
    table.meta("tool", TOOL);
    table.meta("version", VERSION);
    table.meta("scenario", cfg.scenario);
    table.meta("seed", cfg.seed);
    table.meta("format", cfg.format);
    table.meta("log_base", cfg.log_base.unit());
    for (k, v) in r.used() {
        table.meta(&format!("param.{k}"), v);
    }
    table.metadata.extend(body.metadata);
    table.columns = body.columns;
    table.rows = body.rows;
    Ok(RunOutput { table, failures })
}

struct Ctx {
    seed: u64,
    base: LogBase,
}

impl Ctx {
    /// Information-valued cell in the configured log base.
    fn info(&self, nats: f64) -> Cell {
        Cell::Fixed(self.base.convert(nats))
    }
}

/// `phi` is `neg-log` or a table `x:value,x:value,...` ending at `1:0`.
fn weight_function(r: &mut Resolver) -> CliResult<WeightFunction> {
    let l_rc = r.positive_f64("l-rc", 1.0)?;
    let spec = r.string("phi", "neg-log")?;
    if spec.trim() == "neg-log" {
        return Ok(WeightFunction::neg_log(l_rc)?);
    }
    let points = spec
        .split(',')
        .map(|pair| {
            let (x, v) = pair
                .split_once(':')
                .ok_or_else(|| CliError::Config(format!("phi point `{pair}` is not `x:value`")))?;
            let num = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Config(format!("phi point `{pair}` has a bad number")))
            };
            Ok((num(x)?, num(v)?))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(WeightFunction::table(l_rc, points)?)
}

fn vanilla_bell(r: &mut Resolver, ctx: &Ctx) -> CliResult<Table> {
    let phi = weight_function(r)?;
    r.finish()?;
    let psi = bell_state();
    let s_a = subsystem_entropy(&psi, &["A"])?.nats();
    let s_b = subsystem_entropy(&psi, &["B"])?.nats();
    let mi = mutual_information_pure(&psi, &["A"], &["B"])?.nats();
    let mut t = Table::new(&["a", "b", "s_a", "s_b", "mi", "weight"]);
    t.meta("i0", ctx.info(mi).text());
    t.push(vec![
        Cell::Text("A".into()),
        Cell::Text("B".into()),
        ctx.info(s_a),
        ctx.info(s_b),
        ctx.info(mi),
        Cell::Fixed(edge_weight(mi, mi, &phi)?),
    ]);
    Ok(t)
}

fn bell_env(r: &mut Resolver, ctx: &Ctx) -> CliResult<Table> {
    let phi = weight_function(r)?;
    let i0 = r.positive_f64("i0", 2.0 * std::f64::consts::LN_2)?;
    r.finish()?;
    let psi = bell_state();
    let env = PureState::basis(TensorProductStructure::qubits(&["E"])?, &[0])?;
    let coupling = NonLocalPerturbation::new(&["A", "E"], cnot(), env)?;
    let out = apply_nonlocal(&psi, &coupling, &["A"], &["B"])?;
    let state = out.state;
    let mi = mutual_information_pure(&state, &["A"], &["B"])?.nats();
    let mut t = Table::new(&["s_a", "s_b", "s_ab", "mi", "mi_a_be", "delta_mi", "weight"]);
    t.push(vec![
        ctx.info(subsystem_entropy(&state, &["A"])?.nats()),
        ctx.info(subsystem_entropy(&state, &["B"])?.nats()),
        ctx.info(subsystem_entropy(&state, &["A", "B"])?.nats()),
        ctx.info(mi),
        ctx.info(mutual_information_pure(&state, &["A"], &["B", "E"])?.nats()),
        ctx.info(out.delta_i),
        Cell::Fixed(edge_weight(mi, i0, &phi)?),
    ]);
    Ok(t)
}

fn qudit(r: &mut Resolver, ctx: &Ctx) -> CliResult<Table> {
    let lo = r.usize("n-min", 2)?;
    let hi = r.usize("n-max", 8)?;
    r.finish()?;
    if lo < 2 || hi < lo {
        return Err(CliError::Config(format!("need 2 <= n-min <= n-max, got {lo}..{hi}")));
    }
    let mut t = Table::new(&["n", "s_a", "mi", "closed_form"]);
    for n in lo..=hi {
        let psi = qudit_bell(n)?;
        t.push(vec![
            Cell::Int(n as u64),
            ctx.info(subsystem_entropy(&psi, &["A"])?.nats()),
            ctx.info(mutual_information_pure(&psi, &["A"], &["B"])?.nats()),
            ctx.info(2.0 * (n as f64).ln()),
        ]);
    }
    Ok(t)
}

fn spin_sector(r: &mut Resolver) -> CliResult<PureState> {
    Ok(match r.choice("spin", &["bell", "product"])?.as_str() {
        "bell" => spin_bell(),
        _ => spin_product(),
    })
}

/// Momentum sector from `n-modes` (the Schmidt rank `N - 1`) and optional
/// `weights`.
fn momentum(r: &mut Resolver, default_modes: usize) -> CliResult<SchmidtPairState> {
    let modes = r.usize("n-modes", default_modes)?;
    if modes == 0 {
        return Err(CliError::Config("`n-modes` must be at least 1".into()));
    }
    let dist = match r.f64_list("weights")? {
        Some(w) => Distribution::Weights(w),
        None => Distribution::Flat,
    };
    Ok(momentum_sector_state(ModeSource::Explicit(modes + 1), &dist)?)
}

fn spin_momentum(r: &mut Resolver, ctx: &Ctx) -> CliResult<Table> {
    let spin = spin_sector(r)?;
    let mom = momentum(r, 4)?;
    let m = mom.explicit_modes()?;
    let dense = r.bool("dense-check", m <= DENSE_CHECK_MODES)?;
    r.finish()?;
    let state = spin_momentum_state(SpinSector::Pure(spin), mom)?;
    let mut columns = vec!["spin_mi", "momentum_mi", "total_mi"];
    let mut row = vec![
        ctx.info(state.spin_mi()?),
        ctx.info(state.momentum_mi()),
        ctx.info(state.total_mi()?),
    ];
    if dense {
        let (a, b) = state.sides();
        let psi = state.to_pure_state()?;
        columns.push("dense_total_mi");
        row.push(ctx.info(mutual_information_pure(&psi, &a, &b)?.nats()));
    }
    let mut t = Table::new(&columns);
    t.push(row);
    Ok(t)
}

fn momentum_sweep(r: &mut Resolver, ctx: &Ctx) -> CliResult<Table> {
    let spin = spin_sector(r)?;
    let mom = momentum(r, 64)?;
    let channel: Channel = r.choice("channel", &["localize", "dephase"])?.parse()?;
    let steps = r.usize("steps", 8)?;
    let order = r.choice("order", &["ir-first", "uv-first"])?;
    let phi = weight_function(r)?;
    r.finish()?;
    let m = mom.explicit_modes()?;
    let schedule = if order == "ir-first" {
        DecoherenceSchedule::ir_first(m, steps, channel)?
    } else {
        DecoherenceSchedule::uv_first(m, steps, channel)?
    };
    let spin_mi = mutual_information_pure(&spin, &["As"], &["Bs"])?.nats();
    let series = decoherence_sweep(&mom, &schedule, spin_mi, &phi)?;
    let mut t = Table::new(&["step", "decohered", "momentum_mi", "spin_mi", "total_mi", "distance"]);
    t.meta("i0", ctx.info(series.i0).text());
    t.meta("initial_momentum_mi", ctx.info(series.initial.momentum_mi).text());
    t.meta("monotone", series.is_monotone());
    for row in &series.rows {
        t.push(vec![
            Cell::Int(row.step as u64),
            Cell::Int(row.decohered as u64),
            ctx.info(row.momentum_mi),
            ctx.info(spin_mi),
            ctx.info(row.total_mi),
            Cell::Fixed(row.distance),
        ]);
    }
    Ok(t)
}

fn named_state(r: &mut Resolver, seed: u64) -> CliResult<PureState> {
    let kind = r.choice("state", &["bell", "ghz3", "bell-env", "product3", "random"])?;
    Ok(match kind.as_str() {
        "bell" => bell_state(),
        "ghz3" => ghz("A", "B", "C"),
        "bell-env" => bell_with_environment(),
        "product3" => PureState::basis(TensorProductStructure::qubits(&["A", "B", "C"])?, &[0, 0, 0])?,
        _ => {
            let n = r.usize("qubits", 5)?;
            if n < 2 {
                return Err(CliError::Config("`qubits` must be at least 2".into()));
            }
            let labels: Vec<String> = (0..n).map(|k| format!("q{k}")).collect();
            haar_random_state(TensorProductStructure::qubits(&labels)?, seed)?
        }
    })
}

fn graph_reconstruct(r: &mut Resolver, ctx: &Ctx) -> CliResult<Table> {
    let psi = named_state(r, ctx.seed)?;
    let phi = weight_function(r)?;
    let edges_path = r.opt_string("edges").map(PathBuf::from);
    r.finish()?;
    let graph = build_info_graph(&psi)?;
    let metric = emergent_metric(&graph, &phi)?;
    let report = metric_check(&metric);
    if let Some(path) = &edges_path {
        export_edges(&graph, &phi, path)?;
    }
    let mut t = Table::new(&["src", "dst", "mi", "weight", "distance"]);
    t.meta("vertices", graph.vertices().join(";"));
    t.meta("i0", ctx.info(graph.i0()).text());
    t.meta("edge_count", graph.edge_count());
    t.meta("metric_ok", report.passed());
    t.meta("zero_distance_pairs", report.zero_distance_pairs.len());
    for (src, dst, mi) in graph.edges() {
        t.push(vec![
            Cell::Text(src.into()),
            Cell::Text(dst.into()),
            ctx.info(mi),
            Cell::Fixed(edge_weight(mi, graph.i0(), &phi)?),
            Cell::Fixed(metric.distance(src, dst)?),
        ]);
    }
    Ok(t)
}

#[derive(Default)]
struct Check {
    samples: usize,
    worst: f64,
    failed: bool,
}

impl Check {
    fn observe(&mut self, violation: f64) {
        self.samples += 1;
        self.worst = self.worst.max(violation);
        if !(violation <= DERIVED_TOL) {
            self.failed = true;
        }
    }

    fn fail(&mut self) {
        self.samples += 1;
        self.failed = true;
    }
}

fn qubit_labels(n: usize) -> Vec<String> {
    (0..n).map(|k| format!("q{k}")).collect()
}

/// Probability vector of length `m` from a Haar-random state.
fn random_probabilities(m: usize, seed: u64) -> CliResult<Vec<f64>> {
    let tps = TensorProductStructure::new(vec![FactorSpace::new("x", m)?])?;
    Ok(haar_random_state(tps, seed)?.amplitudes().iter().map(|a| a.norm_sqr()).collect())
}

fn property_suite(r: &mut Resolver, ctx: &Ctx) -> CliResult<(Table, Vec<String>)> {
    let trials = r.usize("trials", 100)?;
    let qubits = r.usize("qubits", 4)?;
    let metric_states = r.usize("metric-states", 20)?;
    let metric_qubits = r.usize("metric-qubits", 5)?;
    let bound_samples = r.usize("bound-samples", 200)?;
    r.finish()?;
    if qubits < 3 || metric_qubits < 2 {
        return Err(CliError::Config("need qubits >= 3 and metric-qubits >= 2".into()));
    }
    let seed = ctx.seed;
    let mut checks: Vec<(String, Check)> = Vec::new();

    let state = haar_random_state(TensorProductStructure::qubits(&qubit_labels(qubits))?, seed)?;
    let report = check_mi_properties(&state, &MiProperty::ALL, trials, seed)?;
    for o in &report.outcomes {
        checks.push((
            format!("mi-{}", o.property.name().replace('_', "-")),
            Check {
                samples: o.checked,
                worst: o.max_violation,
                failed: !o.passed(),
            },
        ));
    }

    let mut nonlocal = Check::default();
    let mut local = Check::default();
    let two = TensorProductStructure::qubits(&["A", "B"])?;
    for k in 0..trials as u64 {
        let psi = haar_random_state(two.clone(), trial_seed(seed, k))?;
        let side = if k % 2 == 0 { "A" } else { "B" };
        let env = PureState::basis(TensorProductStructure::qubits(&["E"])?, &[0])?;
        let u = haar_random_unitary(4, trial_seed(seed ^ 0x6e6f_6e6c, k))?;
        match apply_nonlocal(&psi, &NonLocalPerturbation::new(&[side, "E"], u, env)?, &["A"], &["B"]) {
            Ok(o) => nonlocal.observe(o.delta_i.max(0.0)),
            Err(Error::InvariantViolation(_)) => nonlocal.fail(),
            Err(e) => return Err(e.into()),
        }
        let u = haar_random_unitary(4, trial_seed(seed ^ 0x6c6f_6361, k))?;
        match apply_local(&psi, &LocalPerturbation::new(&["A", "B"], u)?, &["A"], &["B"]) {
            Ok(o) => local.observe((o.delta_i - 2.0 * o.delta_s_a).abs()),
            Err(Error::InvariantViolation(_)) => local.fail(),
            Err(e) => return Err(e.into()),
        }
    }
    checks.push(("nonlocal-monotonicity".into(), nonlocal));
    checks.push(("local-identity".into(), local));

    let mut metric = Check::default();
    let tps = TensorProductStructure::qubits(&qubit_labels(metric_qubits))?;
    let phi = WeightFunction::default();
    for k in 0..metric_states as u64 {
        let psi = haar_random_state(tps.clone(), trial_seed(seed ^ 0x6d65_7472, k))?;
        let report = metric_check(&emergent_metric(&build_info_graph(&psi)?, &phi)?);
        let excess = report.triangle.iter().map(|t| t.3).fold(0.0, f64::max);
        if report.passed() {
            metric.observe(excess);
        } else {
            metric.samples += 1;
            metric.worst = metric.worst.max(excess);
            metric.failed = true;
        }
    }
    checks.push(("metric-axioms".into(), metric));

    let mut bound = Check::default();
    let three = TensorProductStructure::qubits(&["C", "D", "R"])?;
    for k in 0..bound_samples as u64 {
        let s = trial_seed(seed ^ 0x626f_756e, k);
        let rho = haar_random_state(three.clone(), s)?.reduced(&["C", "D"])?;
        let oc = random_hermitian(2, s.wrapping_mul(3).wrapping_add(1))?;
        let od = random_hermitian(2, s.wrapping_mul(3).wrapping_add(2))?;
        let b = correlation_lower_bound(&rho, &["C"], &["D"], &oc, &od)?;
        bound.observe((b.bound - b.mi).max(0.0));
    }
    checks.push(("correlation-bound".into(), bound));

    let mut channels = Check::default();
    for k in 0..trials as u64 {
        let s = trial_seed(seed ^ 0x6368_616e, k);
        let m = 2 + (s % 11) as usize;
        let mom = SchmidtPairState::from_probabilities(&random_probabilities(m, s)?)?;
        let d: BTreeSet<usize> = (1..=m).filter(|n| (s >> (8 + n)) & 1 == 1).collect();
        let full = mutual_information_schmidt(&mom).nats();
        let (_, dep) = dephase_modes(&mom, &d)?;
        let (_, loc) = localize_modes(&mom, &d)?;
        channels.observe((dep - full).max(loc - dep).max(-loc).max(0.0));
    }
    checks.push(("channel-ordering".into(), channels));

    let mut t = Table::new(&["check", "samples", "worst", "passed"]);
    let mut failures = Vec::new();
    for (name, c) in checks {
        if c.failed {
            failures.push(name.clone());
        }
        t.push(vec![
            Cell::Text(name),
            Cell::Int(c.samples as u64),
            Cell::Sci(c.worst),
            Cell::Bool(!c.failed),
        ]);
    }
    t.meta("all_passed", failures.is_empty());
    Ok((t, failures))
}

fn scales(r: &mut Resolver, ctx: &Ctx) -> CliResult<Table> {
    let defaults = Constants::default();
    let l_app = r.positive_f64("l-app", 1e-3)?;
    let lambda_cc = r.positive_f64("lambda-cc", DEFAULT_LAMBDA_CC)?;
    let mass = r.positive_f64("mass", ELECTRON_MASS)?;
    let hbar = r.positive_f64("hbar", defaults.hbar)?;
    let c = r.positive_f64("c", defaults.c)?;
    let cap = match r.choice("cap", &["apparatus", "compton"])?.as_str() {
        "apparatus" => MomentumCap::Apparatus,
        _ => MomentumCap::Compton,
    };
    r.finish()?;
    let s = physical_scales_with(l_app, lambda_cc, mass, Constants { hbar, c }, cap)?;
    let mom = momentum_sector_state(ModeSource::Scales(&s), &Distribution::Flat)?;
    let mut t = Table::new(&["quantity", "value"]);
    let mi = ctx.base.convert(mutual_information_schmidt(&mom).nats());
    for (name, v) in [
        ("l_app", s.l_app),
        ("lambda_cc", s.lambda_cc),
        ("l_ir", s.l_ir),
        ("p_ir", s.p_ir),
        ("p_app", s.p_app),
        ("n_modes", s.n_modes),
        ("compton_ceiling", s.compton_ceiling),
        ("momentum_mi", mi),
    ] {
        t.push(vec![Cell::Text(name.into()), Cell::Sci(v)]);
    }
    t.meta("symbolic_momentum", mom.is_symbolic());
    Ok(t)
}
