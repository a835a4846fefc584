//! Classical fixed-step fourth-order Runge–Kutta.

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct OdeState {
    pub t: f64,
    pub y: Vec<f64>,
}

impl OdeState {
    pub fn new(t: f64, y: Vec<f64>) -> Self {
        OdeState { t, y }
    }
}

fn axpy(y: &[f64], h: f64, k: &[f64]) -> Vec<f64> {
    y.iter().zip(k).map(|(a, b)| a + h * b).collect()
}

/// One RK4 step of size `h`.
pub fn rk4_step<F>(rhs: &F, t: f64, y: &[f64], h: f64) -> Vec<f64>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    let k1 = rhs(t, y);
    let k2 = rhs(t + 0.5 * h, &axpy(y, 0.5 * h, &k1));
    let k3 = rhs(t + 0.5 * h, &axpy(y, 0.5 * h, &k2));
    let k4 = rhs(t + h, &axpy(y, h, &k3));
    y.iter().enumerate().map(|(i, yi)| yi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])).collect()
}

/// Integrates from `y0.t` to `t_end`, calling `observe(step, state)` for the
/// initial state (step 0) and after every step.
///
/// The step count is `ceil((t_end − t0)/dt)` and the step is shrunk uniformly
/// so the last state lands exactly on `t_end`.
pub fn rk4_integrate_with<F, O>(rhs: F, y0: OdeState, t_end: f64, dt: f64, mut observe: O) -> Result<OdeState>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
    O: FnMut(usize, &OdeState),
{
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::Domain { what: "dt", value: dt });
    }
    if !(t_end > y0.t) {
        return Err(Error::Domain { what: "t_end", value: t_end });
    }
    let span = t_end - y0.t;
    let ratio = span / dt;
    // absorb rounding in span/dt so that an integral ratio is not bumped up
    let steps = ((ratio * (1.0 - 1e-12)).ceil() as usize).max(1);
    let h = span / steps as f64;

    let t0 = y0.t;
    let mut state = y0;
    observe(0, &state);
    for step in 1..=steps {
        let y = rk4_step(&rhs, state.t, &state.y, h);
        let t = if step == steps { t_end } else { t0 + step as f64 * h };
        if !y.iter().all(|v| v.is_finite()) {
            return Err(Error::Divergence { step, t });
        }
        state = OdeState { t, y };
        observe(step, &state);
    }
    Ok(state)
}

/// Integrates and returns every state, including the initial one.
pub fn rk4_integrate<F>(rhs: F, y0: OdeState, t_end: f64, dt: f64) -> Result<Vec<OdeState>>
where
    F: Fn(f64, &[f64]) -> Vec<f64>,
{
    let mut out = Vec::new();
    rk4_integrate_with(rhs, y0, t_end, dt, |_, s| out.push(s.clone()))?;
    Ok(out)
}
