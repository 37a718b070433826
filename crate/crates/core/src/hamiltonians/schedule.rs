use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which end of the anneal carries the drive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleDirection {
    /// `λ(t) = λ0 (1 − t/T)`, `g(t) = g0 t/T`: start in the driver ground state.
    #[default]
    DriveOff,
    /// `λ(t) = λ0 t/T`, `g(t) = g0 (1 − t/T)`.
    DriveOn,
}

/// Linear ramps of the Rabi amplitude and the coupling over `[0, T]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub total_time: f64,
    pub lambda0: f64,
    pub g0: f64,
    pub direction: ScheduleDirection,
}

impl Schedule {
    pub fn fraction(&self, t: f64) -> f64 {
        t / self.total_time
    }

    pub fn lambda(&self, t: f64) -> f64 {
        let s = self.fraction(t);
        match self.direction {
            ScheduleDirection::DriveOff => self.lambda0 * (1.0 - s),
            ScheduleDirection::DriveOn => self.lambda0 * s,
        }
    }

    pub fn g(&self, t: f64) -> f64 {
        let s = self.fraction(t);
        match self.direction {
            ScheduleDirection::DriveOff => self.g0 * s,
            ScheduleDirection::DriveOn => self.g0 * (1.0 - s),
        }
    }

    /// `(λ(t), g(t))`.
    pub fn values(&self, t: f64) -> (f64, f64) {
        (self.lambda(t), self.g(t))
    }
}

pub fn schedule_linear(
    lambda0: f64,
    g0: f64,
    total_time: f64,
    direction: ScheduleDirection,
) -> Result<Schedule> {
    if !(total_time.is_finite() && total_time > 0.0) {
        return Err(Error::param(
            "T",
            format!("must be positive, got {total_time}"),
        ));
    }
    if !lambda0.is_finite() || !g0.is_finite() {
        return Err(Error::param("lambda0", "ramp amplitudes must be finite"));
    }
    Ok(Schedule {
        total_time,
        lambda0,
        g0,
        direction,
    })
}
