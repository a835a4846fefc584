//! `.manifest` side files recording how an output was produced.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use recoil_core::config::render_config;
use recoil_core::dynamics::{damping_time, heading_drift_rate};
use recoil_core::Field;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub struct Manifest {
    entries: Vec<(String, String)>,
}

impl Manifest {
    /// `inputs` is every argument that influences the data, in a fixed order.
    pub fn new(command: &str, field: &Field, inputs: &[(&str, String)]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(render_config(&field.config).as_bytes());
        for (k, v) in inputs {
            hasher.update(format!("{k}={v}\n").as_bytes());
        }
        let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let p = &field.params;
        let mut entries: Vec<(String, String)> = vec![
            ("command".into(), command.into()),
            ("tool_version".into(), env!("CARGO_PKG_VERSION").into()),
            ("input_sha256".into(), hex::encode(hasher.finalize())),
            ("timestamp_unix".into(), stamp.to_string()),
            ("E0_V_per_m".into(), format!("{:e}", field.config.e0_si())),
            ("omega_rad_per_s".into(), format!("{:e}", field.config.omega)),
            ("polarization".into(), field.config.handedness.to_string()),
            ("mode".into(), field.config.mode.to_string()),
            ("v0_m_s".into(), format!("{:e}", p.v0 * 1e-2)),
            ("r0_m".into(), format!("{:e}", p.r0 * 1e-2)),
            ("eta".into(), format!("{:e}", p.eta)),
            ("tau_s".into(), format!("{:e}", p.tau)),
            ("omega_tau".into(), format!("{:e}", p.omega_tau)),
            ("t_damp_s".into(), format!("{:e}", damping_time(field))),
            ("omega_bend_rad_s".into(), format!("{:e}", heading_drift_rate(field))),
        ];
        entries.extend(inputs.iter().map(|(k, v)| (format!("arg_{k}"), v.clone())));
        Manifest { entries }
    }

    pub fn path_for(out: &Path) -> PathBuf {
        let mut s = out.as_os_str().to_owned();
        s.push(".manifest");
        PathBuf::from(s)
    }

    pub fn render(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    pub fn write_next_to(&self, out: &Path) -> CliResult<PathBuf> {
        let path = Self::path_for(out);
        std::fs::write(&path, self.render()).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }
}
