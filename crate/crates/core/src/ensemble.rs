//! The shared substrate of all annealing variants: solutions, the coupled
//! ensemble, probe generation, and best-so-far tracking.

use crate::error::{Error, Result};
use crate::objective::{checked_evaluate, ObjectiveFunction};
use crate::rng::RngStream;

/// One point of the search space with its evaluated energy.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub coords: Vec<f64>,
    pub energy: f64,
}

/// The set of `m` coupled optimizers plus global bookkeeping.
///
/// `best_snapshot` is the lowest-energy solution ever accepted (monotone
/// non-increasing over iterations); `eval_count` counts objective
/// evaluations, the budget currency of every run.
#[derive(Clone, Debug)]
pub struct Ensemble {
    members: Vec<Solution>,
    best_index: usize,
    best_snapshot: Solution,
    eval_count: u64,
    iteration: u64,
}

impl Ensemble {
    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn member(&self, index: usize) -> &Solution {
        &self.members[index]
    }

    pub fn member_count(&self) -> usize {
        self.members.len()
    }

    /// Index of the member that holds the lowest energy ever accepted.
    pub fn best_index(&self) -> usize {
        self.best_index
    }

    pub fn best_snapshot(&self) -> &Solution {
        &self.best_snapshot
    }

    pub fn eval_count(&self) -> u64 {
        self.eval_count
    }

    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    /// Current energies of all members, in index order.
    pub fn energies(&self) -> Vec<f64> {
        self.members.iter().map(|s| s.energy).collect()
    }

    /// Updates the global best if `candidate` strictly improves on it.
    ///
    /// Ties keep the incumbent (and therefore the lowest index that reached
    /// the value first), so plateaus never churn the best reference.
    pub fn track_best(&mut self, candidate: &Solution, member_index: usize) -> bool {
        if candidate.energy < self.best_snapshot.energy {
            self.best_snapshot = candidate.clone();
            self.best_index = member_index;
            true
        } else {
            false
        }
    }

    /// Installs an accepted probe as member `index`; returns whether it set
    /// a new global best.
    pub fn accept_member(&mut self, index: usize, accepted: Solution) -> bool {
        let improved = self.track_best(&accepted, index);
        self.members[index] = accepted;
        improved
    }

    pub(crate) fn record_evaluation(&mut self) {
        self.eval_count += 1;
    }

    pub(crate) fn advance_iteration(&mut self) {
        self.iteration += 1;
    }
}

/// Draws `m` solutions coordinate-wise uniform inside the objective's box
/// and evaluates them all (`eval_count` starts at `m`).
pub fn initialize_ensemble<F: ObjectiveFunction>(
    objective: &F,
    m: usize,
    stream: &mut RngStream,
) -> Result<Ensemble> {
    if m < 2 {
        return Err(Error::InvalidConfig(format!(
            "coupled ensembles need at least 2 optimizers, got m={m}"
        )));
    }
    let dim = objective.dimension();
    let lower = objective.lower_bounds();
    let upper = objective.upper_bounds();
    let mut members = Vec::with_capacity(m);
    for _ in 0..m {
        let coords: Vec<f64> = (0..dim)
            .map(|j| stream.uniform_in(lower[j], upper[j]))
            .collect();
        let energy = checked_evaluate(objective, &coords)?;
        members.push(Solution { coords, energy });
    }
    let mut best_index = 0;
    for (i, s) in members.iter().enumerate() {
        if s.energy < members[best_index].energy {
            best_index = i;
        }
    }
    let best_snapshot = members[best_index].clone();
    Ok(Ensemble {
        members,
        best_index,
        best_snapshot,
        eval_count: m as u64,
        iteration: 0,
    })
}

/// Produces a probing solution `y = x + eps * t_gen` with independent
/// standard-Cauchy `eps` per coordinate, clamped to the objective's box,
/// and evaluates it.
pub fn generate_probe<F: ObjectiveFunction>(
    x: &Solution,
    t_gen: f64,
    stream: &mut RngStream,
    objective: &F,
) -> Result<Solution> {
    assert!(t_gen > 0.0, "generation temperature must be positive");
    let lower = objective.lower_bounds();
    let upper = objective.upper_bounds();
    let coords: Vec<f64> = x
        .coords
        .iter()
        .enumerate()
        .map(|(j, &c)| (c + stream.cauchy() * t_gen).clamp(lower[j], upper[j]))
        .collect();
    let energy = checked_evaluate(objective, &coords)?;
    Ok(Solution { coords, energy })
}
