use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use recoil_core::config::load_config;
use recoil_core::dynamics::{
    damping_time, heading_drift_rate, simulate, write_trajectory_csv, TrajectoryConfig, DEFAULT_DT_FRACTION,
};
use recoil_core::emission::{radiation_pattern, write_pattern_csv};
use recoil_core::model::{units, validate_regime, RegimeReport, Verdict};
use recoil_core::numerics::QuadratureRule;
use recoil_core::observables::{
    acceleration_estimate, anomalous_recoil, classical_recoil, force_report, larmor_power, lifetime,
    write_force_report, Method,
};
use recoil_core::verify::run_checks;
use recoil_core::{ElectronState, Field, FieldConfig, Vec3};

use crate::args::{Common, SweepParam};
use crate::error::{CliError, CliResult, EXIT_CHECK_FAILED, EXIT_OK, EXIT_REGIME_INVALID};
use crate::manifest::Manifest;

fn read_config(path: &Path) -> CliResult<FieldConfig> {
    load_config(path).map_err(|e| match e {
        recoil_core::Error::Io(err) => CliError::Usage(format!("cannot read config {}: {err}", path.display())),
        other => CliError::from(other),
    })
}

fn state_si(vk: [f64; 3]) -> CliResult<ElectronState> {
    Ok(ElectronState::from_si(Vec3::from(vk))?)
}

fn vk_string(vk: [f64; 3]) -> String {
    format!("{:e},{:e},{:e}", vk[0], vk[1], vk[2])
}

fn require_valid(regime: &RegimeReport) -> CliResult<()> {
    if regime.verdict == Verdict::Invalid {
        return Err(CliError::Regime(format!(
            "eta = {:.3e}, beta_k = {:.3e}, omega_tau = {:.3e}, photon_energy_ratio = {:.3e}",
            regime.eta, regime.beta_k, regime.omega_tau, regime.photon_energy_ratio
        )));
    }
    Ok(())
}

/// Writes `bytes` to `out` and a manifest next to it.
fn write_output(out: &Path, bytes: &[u8], manifest: &Manifest) -> CliResult<()> {
    std::fs::write(out, bytes).map_err(|e| CliError::io(out, e))?;
    manifest.write_next_to(out)?;
    Ok(())
}

fn regime_lines(r: &RegimeReport) -> String {
    let f = &r.flags;
    format!(
        "beta_k = {:e}\nphoton_energy_ratio = {:e}\nflag_eta_relativistic = {}\nflag_eta_warning = {}\n\
         flag_beta_relativistic = {}\nflag_beta_warning = {}\nflag_floquet_destroyed = {}\n\
         flag_photon_energy_high = {}\nregime_verdict = {}\n",
        r.beta_k,
        r.photon_energy_ratio,
        f.eta_relativistic,
        f.eta_warning,
        f.beta_relativistic,
        f.beta_warning,
        f.floquet_destroyed,
        f.photon_energy_high,
        r.verdict
    )
}

pub fn derive(common: &Common, out: &mut dyn Write) -> CliResult<i32> {
    let cfg = read_config(&common.config)?;
    let state = state_si(common.vk)?;
    let mut text = format!(
        "E0_V_per_m = {:e}\nomega_rad_per_s = {:e}\nwavelength_m = {:e}\npolarization = {}\nmode = {}\n",
        cfg.e0_si(),
        cfg.omega,
        2.0 * std::f64::consts::PI * units::cm_to_m(recoil_core::Constants::codata2018().c) / cfg.omega,
        cfg.handedness,
        cfg.mode
    );
    let field = match Field::new(cfg) {
        Ok(f) => f,
        Err(recoil_core::Error::Relativistic { beta, .. }) => {
            text += &format!("eta = {beta:e}\nregime_verdict = {}\n", Verdict::Invalid);
            out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
            return Ok(EXIT_REGIME_INVALID);
        }
        Err(e) => return Err(e.into()),
    };
    let p = &field.params;
    text += &format!(
        "v0_m_s = {:e}\nr0_m = {:e}\neps0_J = {:e}\ntau_s = {:e}\neta = {:e}\nomega_tau = {:e}\n\
         P_W = {:e}\nt_damp_s = {:e}\nomega_bend_rad_s = {:e}\n",
        units::cm_to_m(p.v0),
        units::cm_to_m(p.r0),
        p.eps0 * 1e-7,
        p.tau,
        p.eta,
        p.omega_tau,
        units::erg_per_s_to_watt(larmor_power(&field)),
        damping_time(&field),
        heading_drift_rate(&field)
    );
    let regime = validate_regime(&field.config, &field.params, &state);
    text += &regime_lines(&regime);
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(if regime.verdict == Verdict::Invalid { EXIT_REGIME_INVALID } else { EXIT_OK })
}

pub fn pattern(common: &Common, n_theta: usize, n_phi: usize, path: &Path) -> CliResult<i32> {
    let field = Field::new(read_config(&common.config)?)?;
    let state = state_si(common.vk)?;
    require_valid(&validate_regime(&field.config, &field.params, &state))?;
    let pat = radiation_pattern(&state, &field, n_theta, n_phi)?;
    let mut buf = Vec::new();
    write_pattern_csv(&pat, &mut buf)?;
    let manifest = Manifest::new(
        "pattern",
        &field,
        &[("vk", vk_string(common.vk)), ("n_theta", n_theta.to_string()), ("n_phi", n_phi.to_string())],
    );
    write_output(path, &buf, &manifest)?;
    Ok(EXIT_OK)
}

pub fn forces(common: &Common, path: Option<&Path>, stdout: &mut dyn Write) -> CliResult<i32> {
    let field = Field::new(read_config(&common.config)?)?;
    let state = state_si(common.vk)?;
    let rule = QuadratureRule::with_order(common.quad_order)?;
    let report = force_report(&state, &field, &rule)?;
    let mut buf = Vec::new();
    write_force_report(&report, &mut buf)?;
    stdout.write_all(&buf).map_err(|e| CliError::Io(e.to_string()))?;
    if let Some(path) = path {
        let manifest = Manifest::new(
            "forces",
            &field,
            &[("vk", vk_string(common.vk)), ("quad_order", common.quad_order.to_string())],
        );
        write_output(path, &buf, &manifest)?;
    }
    Ok(if report.regime.verdict == Verdict::Invalid { EXIT_REGIME_INVALID } else { EXIT_OK })
}

pub struct TrajectoryArgs<'a> {
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
    pub stride: usize,
    pub include_drag: bool,
    pub out: &'a Path,
}

pub fn trajectory(common: &Common, a: &TrajectoryArgs<'_>) -> CliResult<i32> {
    let field = Field::new(read_config(&common.config)?)?;
    let state = state_si(common.vk)?;
    require_valid(&validate_regime(&field.config, &field.params, &state))?;
    let td = damping_time(&field);
    let cfg = TrajectoryConfig {
        include_drag: a.include_drag,
        output_stride: a.stride,
        ..TrajectoryConfig::new(state.v_k, a.t_end.unwrap_or(td), a.dt.unwrap_or(td * DEFAULT_DT_FRACTION))
    };
    let points = simulate(&cfg, &field)?;
    let mut buf = Vec::new();
    write_trajectory_csv(&points, &mut buf)?;
    let manifest = Manifest::new(
        "trajectory",
        &field,
        &[
            ("vk", vk_string(common.vk)),
            ("t_end_s", format!("{:e}", cfg.t_end)),
            ("dt_s", format!("{:e}", cfg.dt)),
            ("stride", cfg.output_stride.to_string()),
            ("include_drag", cfg.include_drag.to_string()),
        ],
    );
    write_output(a.out, &buf, &manifest)?;
    Ok(EXIT_OK)
}

/// Geometric grid from `from` to `to` inclusive.
pub fn geometric_grid(from: f64, to: f64, steps: usize) -> CliResult<Vec<f64>> {
    if steps < 2 {
        return Err(CliError::Usage(format!("--steps must be at least 2, got {steps}")));
    }
    if !(from > 0.0 && from < to && to.is_finite()) {
        return Err(CliError::Usage(format!("need 0 < from < to, got from = {from}, to = {to}")));
    }
    let ratio = (to / from).ln();
    let mut out: Vec<f64> = (0..steps).map(|i| from * (ratio * i as f64 / (steps - 1) as f64).exp()).collect();
    out[steps - 1] = to;
    Ok(out)
}

struct SweepRow {
    value: f64,
    power_w: f64,
    tau_s: f64,
    f_par_n: f64,
    f_perp_n: f64,
    a_perp: f64,
    verdict: Verdict,
}

fn sweep_point(base: &FieldConfig, vk: [f64; 3], which: SweepParam, value: f64) -> CliResult<SweepRow> {
    let mut cfg = *base;
    let mut v = Vec3::from(vk);
    match which {
        SweepParam::E0 => cfg = cfg.with_e0(units::si_to_gaussian(value)?),
        SweepParam::Omega => cfg.omega = value,
        SweepParam::VkMag => {
            let dir = if v.norm() > 0.0 { v.normalize() } else { Vec3::x() };
            v = dir * value;
        }
    }
    let invalid = SweepRow {
        value,
        power_w: f64::NAN,
        tau_s: f64::NAN,
        f_par_n: f64::NAN,
        f_perp_n: f64::NAN,
        a_perp: f64::NAN,
        verdict: Verdict::Invalid,
    };
    let field = match Field::new(cfg) {
        Ok(f) => f,
        Err(recoil_core::Error::Relativistic { .. }) => return Ok(invalid),
        Err(e) => return Err(e.into()),
    };
    let state = match ElectronState::from_si(v) {
        Ok(s) => s,
        Err(recoil_core::Error::Relativistic { .. }) => return Ok(invalid),
        Err(e) => return Err(e.into()),
    };
    let regime = validate_regime(&field.config, &field.params, &state);
    Ok(SweepRow {
        value,
        power_w: units::erg_per_s_to_watt(larmor_power(&field)),
        tau_s: lifetime(&field),
        f_par_n: units::dyn_to_newton(classical_recoil(&state, &field, Method::ClosedForm)?.norm()),
        f_perp_n: units::dyn_to_newton(anomalous_recoil(&state, &field, Method::ClosedForm)?.norm()),
        a_perp: acceleration_estimate(&state, &field)?.a_perp_m_s2,
        verdict: regime.verdict,
    })
}

pub struct SweepArgs<'a> {
    pub param: SweepParam,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub out: &'a Path,
}

pub fn sweep(common: &Common, a: &SweepArgs<'_>) -> CliResult<i32> {
    let base = read_config(&common.config)?;
    let grid = geometric_grid(a.from, a.to, a.steps)?;
    // indexed parallel collect keeps rows in sweep order
    let rows: Vec<SweepRow> =
        grid.par_iter().map(|&x| sweep_point(&base, common.vk, a.param, x)).collect::<CliResult<_>>()?;
    let mut buf = format!("{},P_W,tau_s,F_parallel_abs_N,F_perp_abs_N,a_perp_m_s2,regime_verdict\n", a.param.column());
    for r in &rows {
        buf += &format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
            r.value, r.power_w, r.tau_s, r.f_par_n, r.f_perp_n, r.a_perp, r.verdict
        );
    }
    let field = Field::new(base).map_err(|_| CliError::Regime("base configuration is relativistic".into()));
    if let Ok(field) = field {
        let manifest = Manifest::new(
            "sweep",
            &field,
            &[
                ("vk", vk_string(common.vk)),
                ("param", a.param.column().into()),
                ("from", format!("{:e}", a.from)),
                ("to", format!("{:e}", a.to)),
                ("steps", a.steps.to_string()),
            ],
        );
        write_output(a.out, buf.as_bytes(), &manifest)?;
    } else {
        std::fs::write(a.out, buf.as_bytes()).map_err(|e| CliError::io(a.out, e))?;
    }
    Ok(EXIT_OK)
}

pub fn verify(quad_order: usize, out: &mut dyn Write) -> CliResult<i32> {
    let checks = run_checks(quad_order)?;
    let mut text = format!("quadrature order {quad_order}\n");
    for c in &checks {
        text += &format!("{c}\n");
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    text += &format!("{} checks, {} passed, {} failed\n", checks.len(), checks.len() - failed, failed);
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}
