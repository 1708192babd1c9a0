//! Lorenz system simulation with fixed-step RK4.
//!
//! The fixed step keeps the sample grid exactly at the requested rate, so
//! the retained signal is reproducible bit for bit.

use crate::error::{Error, Result};
use crate::opn::TimeSeries;

/// Simulation parameters for the Lorenz system.
#[derive(Debug, Clone, PartialEq)]
pub struct LorenzConfig {
    pub sigma: f64,
    pub rho: f64,
    pub beta: f64,
    /// Sampling rate in Hz; the integrator step is `1 / fs`.
    pub fs: f64,
    /// Total simulated seconds.
    pub duration: f64,
    /// Trailing seconds kept after discarding the transient.
    pub keep_last: f64,
    pub initial_state: (f64, f64, f64),
}

impl LorenzConfig {
    /// The intermittent parameter set: sigma 10, beta 8/3, rho 166.15,
    /// 100 Hz for 500 s keeping the final 70 s.
    pub fn intermittent() -> Self {
        LorenzConfig {
            sigma: 10.0,
            rho: 166.15,
            beta: 8.0 / 3.0,
            fs: 100.0,
            duration: 500.0,
            keep_last: 70.0,
            initial_state: (1.0, 1.0, 1.0),
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.fs > 0.0) {
            return Err(Error::validation("fs must be positive"));
        }
        if !(self.duration > 0.0) || self.keep_last > self.duration {
            return Err(Error::validation(
                "duration must be positive and keep_last at most duration",
            ));
        }
        Ok(())
    }
}

#[inline]
fn derivative(sigma: f64, rho: f64, beta: f64, s: [f64; 3]) -> [f64; 3] {
    let [x, y, z] = s;
    [sigma * (y - x), x * (rho - z) - y, x * y - beta * z]
}

/// Integrates the Lorenz equations and returns the x component of the
/// trailing `keep_last` seconds (`keep_last * fs` samples).
pub fn simulate_lorenz(cfg: &LorenzConfig) -> Result<TimeSeries> {
    cfg.validate()?;
    let dt = 1.0 / cfg.fs;
    let steps = (cfg.duration * cfg.fs).round() as usize;
    let keep = (cfg.keep_last * cfg.fs).round() as usize;
    let mut state = [
        cfg.initial_state.0,
        cfg.initial_state.1,
        cfg.initial_state.2,
    ];
    let mut xs = Vec::with_capacity(steps + 1);
    xs.push(state[0]);
    for step in 0..steps {
        let k1 = derivative(cfg.sigma, cfg.rho, cfg.beta, state);
        let mid1 = [
            state[0] + 0.5 * dt * k1[0],
            state[1] + 0.5 * dt * k1[1],
            state[2] + 0.5 * dt * k1[2],
        ];
        let k2 = derivative(cfg.sigma, cfg.rho, cfg.beta, mid1);
        let mid2 = [
            state[0] + 0.5 * dt * k2[0],
            state[1] + 0.5 * dt * k2[1],
            state[2] + 0.5 * dt * k2[2],
        ];
        let k3 = derivative(cfg.sigma, cfg.rho, cfg.beta, mid2);
        let end = [
            state[0] + dt * k3[0],
            state[1] + dt * k3[1],
            state[2] + dt * k3[2],
        ];
        let k4 = derivative(cfg.sigma, cfg.rho, cfg.beta, end);
        for i in 0..3 {
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if state.iter().any(|v| !v.is_finite()) {
            return Err(Error::validation(format!(
                "trajectory diverged at t = {:.3} s",
                (step + 1) as f64 * dt
            )));
        }
        xs.push(state[0]);
    }
    let start = xs.len().saturating_sub(keep);
    TimeSeries::new(xs.split_off(start), cfg.fs)
}
