use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How a frequency quoted in GHz enters `exp(-iHt)` with `t` in ns.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnitConvention {
    /// 1 GHz is 1 rad/ns.
    #[default]
    Angular,
    /// 1 GHz is 2π rad/ns.
    Cyclic,
    /// ω, ε, Δ_G (and so δω) are cyclic; g, λ and J are angular.
    CyclicDrive,
}

impl UnitConvention {
    /// Multiplier turning ω, ε, Δ_G or δω in GHz into rad/ns.
    pub fn qubit_factor(self) -> f64 {
        match self {
            UnitConvention::Angular => 1.0,
            UnitConvention::Cyclic | UnitConvention::CyclicDrive => TAU,
        }
    }

    /// Multiplier turning g, λ or J in GHz into rad/ns.
    pub fn coupling_factor(self) -> f64 {
        match self {
            UnitConvention::Angular | UnitConvention::CyclicDrive => 1.0,
            UnitConvention::Cyclic => TAU,
        }
    }
}

/// Which `(J, Δ) → (ε, Δ_G, g)` relation a run uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeviceMapping {
    /// Rotating-frame interaction equals `J Σ (XX + YY + Δ ZZ)` term by term.
    #[default]
    Exact,
    /// `J = g ε²/(ε²+Δ_G²)` and `Δ = Δ_G²/ε²`, taken at face value.
    Literal,
}

/// Flux-qubit parameters, all in GHz.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeviceParams {
    /// Energy bias ε.
    pub epsilon: f64,
    /// Tunnelling gap Δ_G.
    pub delta_g: f64,
    /// Inductive ZZ coupling.
    pub g: f64,
    /// Rabi amplitude at t = 0.
    pub lambda0: f64,
    /// Drive frequency.
    pub omega: f64,
    pub unit_convention: UnitConvention,
}

impl DeviceParams {
    pub fn new(epsilon: f64, delta_g: f64, g: f64, lambda0: f64, omega: f64) -> Result<Self> {
        let p = DeviceParams {
            epsilon,
            delta_g,
            g,
            lambda0,
            omega,
            unit_convention: UnitConvention::Angular,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("epsilon", self.epsilon),
            ("delta_g", self.delta_g),
            ("g", self.g),
            ("lambda0", self.lambda0),
            ("omega", self.omega),
        ] {
            if !v.is_finite() {
                return Err(Error::param(name, format!("must be finite, got {v}")));
            }
        }
        if self.epsilon * self.epsilon + self.delta_g * self.delta_g <= 0.0 {
            return Err(Error::param(
                "epsilon",
                "epsilon and delta_g cannot both vanish",
            ));
        }
        Ok(())
    }

    pub fn with_lambda0(mut self, lambda0: f64) -> Self {
        self.lambda0 = lambda0;
        self
    }

    pub fn with_unit_convention(mut self, unit_convention: UnitConvention) -> Self {
        self.unit_convention = unit_convention;
        self
    }

    /// Dressed single-qubit splitting `√(ε² + Δ_G²)`.
    pub fn qubit_frequency(&self) -> f64 {
        self.epsilon.hypot(self.delta_g)
    }

    /// `δω = ε²/(2√(ε²+Δ_G²)) + Δ_G²/(2√(ε²+Δ_G²)) − ω/2`.
    pub fn detuning(&self) -> f64 {
        let e2 = self.epsilon * self.epsilon;
        let d2 = self.delta_g * self.delta_g;
        let root = (e2 + d2).sqrt();
        e2 / (2.0 * root) + d2 / (2.0 * root) - self.omega / 2.0
    }

    /// Angle θ of the y-rotation that removes the transverse bias:
    /// `sin θ = Δ_G/√(ε²+Δ_G²)`, `cos θ = ε/√(ε²+Δ_G²)`.
    pub fn mixing_angle(&self) -> f64 {
        self.delta_g.atan2(self.epsilon)
    }

    /// `ε²/(ε²+Δ_G²)`, the weight of ZZ in the rotating frame.
    pub fn zz_weight(&self) -> f64 {
        let e2 = self.epsilon * self.epsilon;
        e2 / (e2 + self.delta_g * self.delta_g)
    }

    /// `Δ_G²/(ε²+Δ_G²)`, the weight of the flip-flop term.
    pub fn flip_flop_weight(&self) -> f64 {
        let d2 = self.delta_g * self.delta_g;
        d2 / (self.epsilon * self.epsilon + d2)
    }

    /// Drive frequency in rad/ns.
    pub fn angular_omega(&self) -> f64 {
        self.unit_convention.qubit_factor() * self.omega
    }
}

fn check_mapping_inputs(j: f64, delta: f64, omega: f64, allow_zero_delta: bool) -> Result<()> {
    if !j.is_finite() {
        return Err(Error::param("J", format!("must be finite, got {j}")));
    }
    let delta_ok = if allow_zero_delta {
        delta >= 0.0
    } else {
        delta > 0.0
    };
    if !delta.is_finite() || !delta_ok {
        let bound = if allow_zero_delta {
            "non-negative"
        } else {
            "positive"
        };
        return Err(Error::param(
            "Delta",
            format!("must be {bound}, got {delta}"),
        ));
    }
    if !omega.is_finite() || omega <= 0.0 {
        return Err(Error::param(
            "omega",
            format!("must be positive, got {omega}"),
        ));
    }
    Ok(())
}

/// Resonant device realising `J = g ε²/(ε²+Δ_G²)` and `Δ = Δ_G²/ε²`.
///
/// Closed form: `ε = ω/√(1+Δ)`, `Δ_G = ω√Δ/√(1+Δ)`, `g = J(1+Δ)`. In the rotating
/// frame this gives `J Σ (ZZ + (Δ/2)(XX + YY))`, not the XXZ form; see
/// [`map_xxz_exact`] for the mapping that reproduces `J Σ (XX + YY + Δ ZZ)`.
pub fn map_xxz_to_device(j: f64, delta: f64, omega: f64) -> Result<DeviceParams> {
    check_mapping_inputs(j, delta, omega, false)?;
    let root = (1.0 + delta).sqrt();
    DeviceParams::new(
        omega / root,
        omega * delta.sqrt() / root,
        j * (1.0 + delta),
        0.0,
        omega,
    )
}

/// Resonant device whose rotating-frame interaction is exactly `J Σ (XX + YY + Δ ZZ)`.
///
/// Matching `g cos²θ ZZ + g sin²θ (XX + YY)/2` term by term gives
/// `cos²θ = Δ/(Δ+2)`, `g = J(Δ+2)`, with `√(ε²+Δ_G²) = ω`.
pub fn map_xxz_exact(j: f64, delta: f64, omega: f64) -> Result<DeviceParams> {
    check_mapping_inputs(j, delta, omega, true)?;
    let denom = delta + 2.0;
    DeviceParams::new(
        omega * (delta / denom).sqrt(),
        omega * (2.0 / denom).sqrt(),
        j * denom,
        0.0,
        omega,
    )
}

/// Dispatches on [`DeviceMapping`].
pub fn map_device(mapping: DeviceMapping, j: f64, delta: f64, omega: f64) -> Result<DeviceParams> {
    match mapping {
        DeviceMapping::Exact => map_xxz_exact(j, delta, omega),
        DeviceMapping::Literal => map_xxz_to_device(j, delta, omega),
    }
}
