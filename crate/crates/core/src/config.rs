//! Tolerances and size caps, loadable from TOML.
//!
//! | key                   | default  | meaning                                       |
//! |-----------------------|----------|-----------------------------------------------|
//! | `tol`                 | `1e-8`   | numeric tolerance of the semidefinite search  |
//! | `separation_tol`      | `1e-6`   | slack allowed above `β` by facet separation   |
//! | `max_denominator`     | `1e6`    | first rounding denominator for certification  |
//! | `max_denominator_cap` | `1e12`   | largest rounding denominator tried            |
//! | `hull_cap`            | `10`     | node cap for facet enumeration                |
//! | `nb_cap`              | `9`      | node cap for the near-bipartite relaxation    |
//! | `enum_cap`            | `20`     | node cap for stable-set enumeration           |
//! | `sdp_max_iter`        | `200`    | Newton iterations per barrier stage           |
//! | `checkpoint_every`    | `50`     | survey records between checkpoint writes      |

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub tol: f64,
    pub separation_tol: f64,
    pub max_denominator: u64,
    pub max_denominator_cap: u64,
    pub hull_cap: usize,
    pub nb_cap: usize,
    pub enum_cap: usize,
    pub sdp_max_iter: usize,
    pub checkpoint_every: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            separation_tol: 1e-6,
            max_denominator: 1_000_000,
            max_denominator_cap: 1_000_000_000_000,
            hull_cap: 10,
            nb_cap: 9,
            enum_cap: 20,
            sdp_max_iter: 200,
            checkpoint_every: 50,
        }
    }
}

impl Config {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParameter(format!("tol must be positive, got {}", self.tol)));
        }
        if !(self.separation_tol >= 0.0 && self.separation_tol.is_finite()) {
            return Err(Error::InvalidParameter("separation_tol must be nonnegative".into()));
        }
        if self.max_denominator == 0 || self.max_denominator_cap < self.max_denominator {
            return Err(Error::InvalidParameter("denominator bounds out of order".into()));
        }
        if self.checkpoint_every == 0 {
            return Err(Error::InvalidParameter("checkpoint_every must be positive".into()));
        }
        Ok(())
    }
}
