//! The perpetual-orbit controller: one dispersion value per ensemble member
//! orbiting the best member's value between adaptive bounds.
//!
//! Every non-best value moves geometrically toward one of its bounds; on a
//! hit the move is reverted, the direction flips, and the hit bound is
//! pushed outward by the expansion factor. The best member's value is a
//! fixed point until another member takes over the best slot, at which point
//! all bounds are recomputed around the new reference.

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Upper end of the range `(0, 100]` the initial values are drawn from.
pub const INITIAL_VALUE_RANGE: f64 = 100.0;

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitState {
    values: Vec<f64>,
    directions: Vec<i8>, // -1 or +1; the best member's entry is dormant
    upper: Vec<f64>,
    lower: Vec<f64>,
    best_member: usize,
    beta: f64,
    phi: f64,
    mu: f64,
}

fn validate_parameters(m: usize, best_member: usize, beta: f64, phi: f64, mu: f64) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidConfig(format!(
            "the orbit needs at least 2 members, got {m}"
        )));
    }
    if best_member >= m {
        return Err(Error::InvalidConfig(format!(
            "best member index {best_member} out of range for {m} members"
        )));
    }
    if !(beta > 1.0) {
        return Err(Error::InvalidConfig(format!(
            "boundary multiplier must exceed 1 so the bounds bracket, got {beta}"
        )));
    }
    if !(phi > 0.0 && phi <= 0.1) {
        return Err(Error::InvalidConfig(format!(
            "movement factor must lie in (0, 0.1], got {phi}"
        )));
    }
    if !(mu > 0.0 && mu <= 0.1) {
        return Err(Error::InvalidConfig(format!(
            "bound-expansion factor must lie in (0, 0.1], got {mu}"
        )));
    }
    Ok(())
}

impl OrbitState {
    /// Random initialization: values uniform in `(0, 100]`, directions
    /// uniform in `{-1, +1}`, bounds bracketing the best member's value.
    ///
    /// When `v_best_hint` is set, the best member's value is pinned to it
    /// after the draws, so the initial orbit reference (and the bracket)
    /// starts exactly there — the hook used to reproduce runs started from
    /// a chosen initial temperature. The other members keep their random
    /// values. Stream consumption does not depend on the hint.
    pub fn init(
        m: usize,
        best_member: usize,
        v_best_hint: Option<f64>,
        beta: f64,
        phi: f64,
        mu: f64,
        stream: &mut RngStream,
    ) -> Result<Self> {
        validate_parameters(m, best_member, beta, phi, mu)?;
        if let Some(v) = v_best_hint {
            if !(v > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "initial dispersion value must be positive, got {v}"
                )));
            }
        }
        let mut values = Vec::with_capacity(m);
        let mut directions = Vec::with_capacity(m);
        for _ in 0..m {
            // 1 - u maps [0, 1) onto (0, 1].
            values.push((1.0 - stream.uniform01()) * INITIAL_VALUE_RANGE);
            directions.push(if stream.uniform01() < 0.5 { -1 } else { 1 });
        }
        if let Some(v) = v_best_hint {
            values[best_member] = v;
        }
        let mut state = Self {
            values,
            directions,
            upper: vec![0.0; m],
            lower: vec![0.0; m],
            best_member,
            beta,
            phi,
            mu,
        };
        state.reset_bounds();
        Ok(state)
    }

    /// Builds a fully specified state (diagnostic and test entry).
    pub fn with_values(
        values: Vec<f64>,
        directions: Vec<i8>,
        best_member: usize,
        beta: f64,
        phi: f64,
        mu: f64,
    ) -> Result<Self> {
        let m = values.len();
        validate_parameters(m, best_member, beta, phi, mu)?;
        if directions.len() != m {
            return Err(Error::InvalidConfig(
                "one direction per orbit member".into(),
            ));
        }
        if values.iter().any(|v| !(*v > 0.0)) {
            return Err(Error::InvalidConfig(
                "orbit values must be strictly positive".into(),
            ));
        }
        if directions.iter().any(|d| *d != 1 && *d != -1) {
            return Err(Error::InvalidConfig(
                "orbit directions must be +1 or -1".into(),
            ));
        }
        let mut state = Self {
            values,
            directions,
            upper: vec![0.0; m],
            lower: vec![0.0; m],
            best_member,
            beta,
            phi,
            mu,
        };
        state.reset_bounds();
        Ok(state)
    }

    fn reset_bounds(&mut self) {
        let reference = self.values[self.best_member];
        for i in 0..self.values.len() {
            self.upper[i] = self.beta * reference;
            self.lower[i] = reference / self.beta;
        }
    }

    /// Moves the best slot to `new_best` and recomputes every member's
    /// bounds from the new reference value, discarding prior expansions.
    /// Directions and values are untouched.
    pub fn rebase_bounds(&mut self, new_best: usize) {
        assert!(new_best < self.values.len());
        self.best_member = new_best;
        self.reset_bounds();
    }

    /// One orbit step for every non-best member: move by `(1 +/- phi)`,
    /// and on a bound hit revert the move, flip the direction, and expand
    /// the hit bound by the expansion factor.
    pub fn po_step(&mut self) {
        for i in 0..self.values.len() {
            if i == self.best_member {
                continue;
            }
            if self.directions[i] > 0 {
                let moved = self.values[i] * (1.0 + self.phi);
                if moved >= self.upper[i] {
                    self.directions[i] = -1;
                    self.upper[i] *= 1.0 + self.mu;
                } else {
                    self.values[i] = moved;
                }
            } else {
                let moved = self.values[i] * (1.0 - self.phi);
                if moved <= self.lower[i] {
                    self.directions[i] = 1;
                    self.lower[i] *= 1.0 - self.mu;
                } else {
                    self.values[i] = moved;
                }
            }
        }
    }

    pub fn member_count(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// The best member's value — the reference every other member orbits.
    pub fn reference_value(&self) -> f64 {
        self.values[self.best_member]
    }

    /// Stored movement direction (dormant for the best member).
    pub fn direction(&self, i: usize) -> i8 {
        self.directions[i]
    }

    /// Direction as rendered in traces: 0 for the exempt best member.
    pub fn rendered_direction(&self, i: usize) -> i8 {
        if i == self.best_member {
            0
        } else {
            self.directions[i]
        }
    }

    pub fn upper(&self, i: usize) -> f64 {
        self.upper[i]
    }

    pub fn lower(&self, i: usize) -> f64 {
        self.lower[i]
    }

    pub fn best_member(&self) -> usize {
        self.best_member
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Overwrites every member's value (diagnostic entry; values must stay
    /// positive).
    pub fn set_values(&mut self, values: &[f64]) {
        assert_eq!(values.len(), self.values.len());
        assert!(values.iter().all(|v| *v > 0.0));
        self.values.copy_from_slice(values);
    }
}
