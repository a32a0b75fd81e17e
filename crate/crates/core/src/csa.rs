//! The coupled simulated annealing kernel: coupled acceptance probabilities,
//! variance-driven acceptance-temperature control, the fast-annealing
//! generation schedule, and the classic run loop with its random-init and
//! best-of-seven initialization protocols.

use crate::ensemble::{generate_probe, initialize_ensemble, Ensemble};
use crate::error::{Error, Result};
use crate::objective::ObjectiveFunction;
use crate::rng::{derive_seed, RngStream};
use crate::run::{RunResult, TraceLevel, TraceRecorder};

/// Desired variance of the acceptance probabilities: 99% of the maximum
/// `(m - 1) / m^2`.
pub fn desired_variance(m: usize) -> f64 {
    let m = m as f64;
    0.99 * (m - 1.0) / (m * m)
}

/// Shifted exponentials `exp((E(x) - max E) / t_ac)`, the common kernel of
/// the coupling term and the acceptance probabilities. The max shift keeps
/// every exponent non-positive, so huge positive or negative energies never
/// overflow.
fn shifted_exponentials(energies: &[f64], t_ac: f64) -> Result<Vec<f64>> {
    assert!(t_ac > 0.0, "acceptance temperature must be positive");
    let mut max = f64::NEG_INFINITY;
    for &e in energies {
        if !e.is_finite() {
            return Err(Error::NonFiniteEnergy(format!(
                "coupling update saw energy {e} in {energies:?}"
            )));
        }
        max = max.max(e);
    }
    Ok(energies.iter().map(|e| ((e - max) / t_ac).exp()).collect())
}

/// The coupling term: `gamma = sum_x exp((E(x) - max E) / t_ac)`.
///
/// Always in `[1, m]`: the maximum-energy member contributes `exp(0) = 1`.
pub fn coupling_term(energies: &[f64], t_ac: f64) -> Result<f64> {
    Ok(shifted_exponentials(energies, t_ac)?.iter().sum())
}

/// Coupled acceptance probabilities `A = exp((E(x_i) - max E) / t_ac) / gamma`.
/// Each lies in `(0, 1]` and they sum to 1.
pub fn acceptance_probabilities(energies: &[f64], t_ac: f64) -> Result<Vec<f64>> {
    let mut terms = shifted_exponentials(energies, t_ac)?;
    let gamma: f64 = terms.iter().sum();
    for t in &mut terms {
        *t /= gamma;
    }
    Ok(terms)
}

/// Population variance of the probabilities around their known mean `1/m`,
/// clamped at zero against rounding. Lies in `[0, (m - 1) / m^2]`.
pub fn acceptance_variance(probs: &[f64]) -> f64 {
    let m = probs.len() as f64;
    let mean_sq: f64 = probs.iter().map(|p| p * p).sum::<f64>() / m;
    (mean_sq - 1.0 / (m * m)).max(0.0)
}

/// Acceptance-temperature state of one coupled run: the temperature itself,
/// its control parameters, and the most recent probability vector used by
/// the probabilistic acceptance rule.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingState {
    t_ac: f64,
    alpha: f64,
    sigma2_desired: f64,
    gamma: f64,
    probs: Vec<f64>,
    sigma2: f64,
}

impl CouplingState {
    pub fn new(energies: &[f64], t_ac_0: f64, alpha: f64) -> Result<Self> {
        if energies.len() < 2 {
            return Err(Error::InvalidConfig(
                "coupling needs at least 2 optimizers".into(),
            ));
        }
        if !(t_ac_0 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "initial acceptance temperature must be positive, got {t_ac_0}"
            )));
        }
        if !(alpha > 0.0 && alpha <= 0.1) {
            return Err(Error::InvalidConfig(format!(
                "temperature rate alpha must lie in (0, 0.1], got {alpha}"
            )));
        }
        let probs = acceptance_probabilities(energies, t_ac_0)?;
        let gamma = coupling_term(energies, t_ac_0)?;
        let sigma2 = acceptance_variance(&probs);
        Ok(Self {
            t_ac: t_ac_0,
            alpha,
            sigma2_desired: desired_variance(energies.len()),
            gamma,
            probs,
            sigma2,
        })
    }

    pub fn t_ac(&self) -> f64 {
        self.t_ac
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn sigma2_desired(&self) -> f64 {
        self.sigma2_desired
    }

    /// One application of the variance-control rule: shrink the temperature
    /// by `(1 - alpha)` below the desired variance, grow it by `(1 + alpha)`
    /// at or above it (equality takes the increase branch).
    pub fn update_acceptance_temperature(&mut self) {
        if self.sigma2 < self.sigma2_desired {
            self.t_ac *= 1.0 - self.alpha;
        } else {
            self.t_ac *= 1.0 + self.alpha;
        }
    }

    /// The end-of-iteration update sequence: variance of the post-acceptance
    /// probabilities at the current temperature, the temperature rule, then
    /// the coupling term and probabilities at the new temperature (used by
    /// the next iteration's acceptance).
    pub fn end_of_iteration_update(&mut self, energies: &[f64]) -> Result<()> {
        let probs_now = acceptance_probabilities(energies, self.t_ac)?;
        self.sigma2 = acceptance_variance(&probs_now);
        self.update_acceptance_temperature();
        let mut terms = shifted_exponentials(energies, self.t_ac)?;
        self.gamma = terms.iter().sum();
        for t in &mut terms {
            *t /= self.gamma;
        }
        self.probs = terms;
        Ok(())
    }
}

/// The monotonic generation-temperature schedule (fast annealing).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScheduleSpec {
    pub t_gen_0: f64,
}

/// `T_{k+1} = T_0 / (k + 1)`: the temperature to use after iteration `k`
/// completes. At `k = 0` the next temperature still equals `T_0`.
pub fn fast_schedule(spec: &ScheduleSpec, k: u64) -> f64 {
    spec.t_gen_0 / (k + 1) as f64
}

/// The acceptance decision for one optimizer: keep the probe when it does
/// not worsen the current energy, or when the coupled probability beats the
/// uniform draw.
pub fn csa_accepts(e_current: f64, e_probe: f64, acceptance_prob: f64, r: f64) -> bool {
    e_probe <= e_current || acceptance_prob > r
}

/// One full iteration: probe every optimizer at `t_gen`, run the acceptance
/// sweep, then the coupling update. Each optimizer draws its Cauchy steps
/// and its acceptance uniform from its own stream.
pub fn csa_step<F: ObjectiveFunction>(
    ensemble: &mut Ensemble,
    coupling: &mut CouplingState,
    t_gen: f64,
    streams: &mut [RngStream],
    objective: &F,
) -> Result<()> {
    csa_step_inner(ensemble, coupling, t_gen, streams, objective, true)
}

/// Diagnostic variant with the probabilistic uphill rule switched off
/// (equivalent to forcing the acceptance temperature to zero): only
/// non-worsening probes are accepted, so per-member energies are monotone.
/// Stream consumption is identical to [`csa_step`].
pub fn csa_step_downhill_only<F: ObjectiveFunction>(
    ensemble: &mut Ensemble,
    coupling: &mut CouplingState,
    t_gen: f64,
    streams: &mut [RngStream],
    objective: &F,
) -> Result<()> {
    csa_step_inner(ensemble, coupling, t_gen, streams, objective, false)
}

fn csa_step_inner<F: ObjectiveFunction>(
    ensemble: &mut Ensemble,
    coupling: &mut CouplingState,
    t_gen: f64,
    streams: &mut [RngStream],
    objective: &F,
    uphill_rule: bool,
) -> Result<()> {
    let m = ensemble.member_count();
    assert_eq!(streams.len(), m, "one stream per optimizer");
    let mut probes = Vec::with_capacity(m);
    for i in 0..m {
        let probe = generate_probe(ensemble.member(i), t_gen, &mut streams[i], objective)?;
        ensemble.record_evaluation();
        probes.push(probe);
    }
    for (i, probe) in probes.into_iter().enumerate() {
        // The uniform is drawn unconditionally so stream consumption per
        // iteration is fixed regardless of the energies.
        let r = streams[i].uniform01();
        let prob = if uphill_rule { coupling.probs()[i] } else { 0.0 };
        if csa_accepts(ensemble.member(i).energy, probe.energy, prob, r) {
            ensemble.accept_member(i, probe);
        }
    }
    let energies = ensemble.energies();
    coupling.end_of_iteration_update(&energies)?;
    ensemble.advance_iteration();
    Ok(())
}

/// Parameters of one classic-CSA run.
#[derive(Clone, Debug)]
pub struct CsaConfig {
    pub m: usize,
    /// Objective evaluations per optimizer; the run stops once the total
    /// evaluation count reaches `budget_per_optimizer * m`.
    pub budget_per_optimizer: u64,
    pub t_gen_0: f64,
    pub t_ac_0: f64,
    pub alpha: f64,
}

impl CsaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidConfig(format!(
                "coupled ensembles need at least 2 optimizers, got m={}",
                self.m
            )));
        }
        if self.budget_per_optimizer == 0 {
            return Err(Error::InvalidConfig(
                "budget per optimizer must be at least 1".into(),
            ));
        }
        if !(self.t_gen_0 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "initial generation temperature must be positive, got {}",
                self.t_gen_0
            )));
        }
        if !(self.t_ac_0 > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "initial acceptance temperature must be positive, got {}",
                self.t_ac_0
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 0.1) {
            return Err(Error::InvalidConfig(format!(
                "temperature rate alpha must lie in (0, 0.1], got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Stream layout used by every run: stream 0 is the master, optimizer `i`
/// owns stream `i + 1`.
pub fn member_streams(seed: u64, m: usize) -> Vec<RngStream> {
    (0..m).map(|i| RngStream::new(seed, i as u64 + 1)).collect()
}

/// Runs classic CSA from a seed with the standard stream layout.
pub fn run_csa<F: ObjectiveFunction>(
    objective: &F,
    config: &CsaConfig,
    seed: u64,
    trace: TraceLevel,
) -> Result<RunResult> {
    run_csa_with_streams(
        objective,
        config,
        RngStream::new(seed, 0),
        member_streams(seed, config.m),
        trace,
    )
}

/// The CSA loop over explicit streams. Exposed so initialization protocols
/// (and tests that reconstruct them) can position the master stream
/// themselves.
pub fn run_csa_with_streams<F: ObjectiveFunction>(
    objective: &F,
    config: &CsaConfig,
    mut master: RngStream,
    mut streams: Vec<RngStream>,
    trace: TraceLevel,
) -> Result<RunResult> {
    config.validate()?;
    assert_eq!(streams.len(), config.m);
    let seed = master.seed();
    let mut ensemble = initialize_ensemble(objective, config.m, &mut master)?;
    let mut coupling = CouplingState::new(&ensemble.energies(), config.t_ac_0, config.alpha)?;
    let schedule = ScheduleSpec {
        t_gen_0: config.t_gen_0,
    };
    let mut t_gen = config.t_gen_0;

    let mut history = vec![ensemble.best_snapshot().energy];
    let mut recorder = TraceRecorder::new(trace);
    recorder.record(coupling.t_ac(), coupling.sigma2(), t_gen, || {
        vec![t_gen; config.m]
    });

    let total_budget = config.budget_per_optimizer.saturating_mul(config.m as u64);
    while ensemble.eval_count() < total_budget {
        csa_step(&mut ensemble, &mut coupling, t_gen, &mut streams, objective)?;
        t_gen = fast_schedule(&schedule, ensemble.iteration() - 1);
        history.push(ensemble.best_snapshot().energy);
        recorder.record(coupling.t_ac(), coupling.sigma2(), t_gen, || {
            vec![t_gen; config.m]
        });
    }

    Ok(RunResult {
        seed,
        t_gen_0: config.t_gen_0,
        final_best: ensemble.best_snapshot().clone(),
        eval_count: ensemble.eval_count(),
        iterations: ensemble.iteration(),
        best_energy_history: history,
        trace: recorder.finish(),
    })
}

/// Random-initialization protocol: the initial generation temperature is
/// drawn uniform from `[0, 100)` on the master stream (a zero draw is
/// resampled so the temperature stays positive), then the classic loop runs
/// on the already-advanced master.
pub fn run_rcsa<F: ObjectiveFunction>(
    objective: &F,
    config: &CsaConfig,
    seed: u64,
    trace: TraceLevel,
) -> Result<RunResult> {
    let mut master = RngStream::new(seed, 0);
    let t_gen_0 = loop {
        let draw = 100.0 * master.uniform01();
        if draw > 0.0 {
            break draw;
        }
    };
    let config = CsaConfig {
        t_gen_0,
        ..config.clone()
    };
    run_csa_with_streams(
        objective,
        &config,
        master,
        member_streams(seed, config.m),
        trace,
    )
}

/// The fixed initial-temperature set of the best-of-seven protocol.
pub const BCSA_TEMPERATURES: [f64; 7] = [0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0];

/// All member runs of a best-of-seven sweep plus the winning index.
#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub runs: Vec<RunResult>,
    pub best_index: usize,
}

impl SweepOutcome {
    pub fn best(&self) -> &RunResult {
        &self.runs[self.best_index]
    }
}

/// Best-of-seven protocol: one classic run per temperature in
/// [`BCSA_TEMPERATURES`], each on a sub-seed derived from the run seed by
/// member index; the result is the member with the minimum final energy.
///
/// Each member consumes one master-stream draw before initialization —
/// exactly the slot the random-initialization protocol uses for its
/// temperature draw — so a sweep member and a random-init run that drew the
/// same temperature from the same sub-seed produce identical trajectories.
pub fn run_bcsa_sweep<F: ObjectiveFunction>(
    objective: &F,
    config: &CsaConfig,
    seed: u64,
    trace: TraceLevel,
) -> Result<SweepOutcome> {
    let mut runs = Vec::with_capacity(BCSA_TEMPERATURES.len());
    for (j, &t_gen_0) in BCSA_TEMPERATURES.iter().enumerate() {
        let sub_seed = derive_seed(seed, j as u64);
        let mut master = RngStream::new(sub_seed, 0);
        let _temperature_slot = master.uniform01();
        let member_config = CsaConfig {
            t_gen_0,
            ..config.clone()
        };
        runs.push(run_csa_with_streams(
            objective,
            &member_config,
            master,
            member_streams(sub_seed, config.m),
            trace,
        )?);
    }
    let mut best_index = 0;
    for (j, run) in runs.iter().enumerate() {
        if run.final_best_energy() < runs[best_index].final_best_energy() {
            best_index = j;
        }
    }
    Ok(SweepOutcome { runs, best_index })
}
