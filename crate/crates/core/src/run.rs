//! Run outcomes and per-iteration trace capture shared by all drivers.

use crate::ensemble::Solution;

/// How much per-iteration state a run records.
///
/// The best-energy history is always kept; `Summary` adds the acceptance
/// temperature, probability variance, and reference generation temperature;
/// `Full` additionally keeps every optimizer's generation temperature
/// (large for long runs).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceLevel {
    Off,
    Summary,
    Full,
}

/// Per-iteration series captured when tracing is on. Row 0 is the
/// post-initialization state; row `k` is the state after iteration `k`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trace {
    pub t_ac: Vec<f64>,
    pub sigma2: Vec<f64>,
    pub t_gen_ref: Vec<f64>,
    /// One row per iteration with all `m` generation temperatures;
    /// empty unless the level is [`TraceLevel::Full`].
    pub t_gen_members: Vec<Vec<f64>>,
}

/// The complete, replayable outcome of one seeded run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub seed: u64,
    /// Initial generation temperature actually used (records the random
    /// draw for the random-init protocol and the chosen sweep member).
    pub t_gen_0: f64,
    pub final_best: Solution,
    pub eval_count: u64,
    pub iterations: u64,
    /// Best-so-far energy after initialization and after every iteration.
    pub best_energy_history: Vec<f64>,
    pub trace: Option<Trace>,
}

impl RunResult {
    pub fn final_best_energy(&self) -> f64 {
        self.final_best.energy
    }
}

pub(crate) struct TraceRecorder {
    level: TraceLevel,
    trace: Trace,
}

impl TraceRecorder {
    pub fn new(level: TraceLevel) -> Self {
        Self {
            level,
            trace: Trace::default(),
        }
    }

    pub fn record(
        &mut self,
        t_ac: f64,
        sigma2: f64,
        t_gen_ref: f64,
        member_temps: impl FnOnce() -> Vec<f64>,
    ) {
        if self.level == TraceLevel::Off {
            return;
        }
        self.trace.t_ac.push(t_ac);
        self.trace.sigma2.push(sigma2);
        self.trace.t_gen_ref.push(t_gen_ref);
        if self.level == TraceLevel::Full {
            self.trace.t_gen_members.push(member_temps());
        }
    }

    pub fn finish(self) -> Option<Trace> {
        match self.level {
            TraceLevel::Off => None,
            _ => Some(self.trace),
        }
    }
}
