use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "recoil", version, about = "Radiation reaction and anomalous recoil of a field-dressed electron")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Common {
    /// Field configuration file (key = value)
    #[arg(long)]
    pub config: PathBuf,
    /// Drift velocity vx,vy,vz in m/s
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, default_value = "0,0,0")]
    pub vk: [f64; 3],
    /// Gauss-Legendre order of the sphere rule
    #[arg(long, default_value_t = 64)]
    pub quad_order: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print derived parameters and the regime report
    Derive {
        #[command(flatten)]
        common: Common,
    },
    /// Write the radiation pattern as CSV
    Pattern {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 64)]
        n_theta: usize,
        #[arg(long, default_value_t = 128)]
        n_phi: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the force report
    Forces {
        #[command(flatten)]
        common: Common,
        /// Also write the report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the drift trajectory and write it as CSV
    Trajectory {
        #[command(flatten)]
        common: Common,
        /// End time in s (default: one damping time)
        #[arg(long)]
        t_end: Option<f64>,
        /// Step in s (default: damping time / 1e4)
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(long)]
        include_drag: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate observables over a geometric parameter grid
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the self-verification suite
    Verify {
        #[arg(long, default_value_t = 64)]
        quad_order: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    #[value(name = "E0")]
    E0,
    #[value(name = "omega")]
    Omega,
    #[value(name = "vk_mag")]
    VkMag,
}

impl SweepParam {
    pub fn column(self) -> &'static str {
        match self {
            SweepParam::E0 => "E0_V_per_m",
            SweepParam::Omega => "omega_rad_per_s",
            SweepParam::VkMag => "vk_mag_m_s",
        }
    }
}

pub fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected vx,vy,vz, got `{s}`"));
    }
    let mut out = [0.0f64; 3];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse().map_err(|_| format!("`{p}` is not a number"))?;
        if !o.is_finite() {
            return Err(format!("`{p}` is not finite"));
        }
    }
    Ok(out)
}
