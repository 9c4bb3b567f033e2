use std::path::{Path, PathBuf};

use clap::ValueEnum;
use minspace_core::estimators::MAX_SCHEDULE_DEPTH;
use minspace_core::QuadConfig;
use serde::{Deserialize, Serialize};

use crate::output::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// `kappa(ψ, α)` at the given points.
    Kappa,
    /// `kappa` on a polar grid of `α`.
    Sweep,
    /// Tail-sup proxy for the essential norm.
    Essnorm,
    /// Change-of-variables identity for Blaschke products.
    BlaschkeCheck,
    /// Valency `n_ψ` on a polar grid.
    ValencyMap,
    /// Carleson-box ratios over dyadic arcs.
    Carleson,
    /// Cone masses `∫_{Ω_r} |f″|` of a normalized function.
    Lemma1,
    /// Preimage trajectories and Stolz ratios along a radius.
    Ntprofile,
    /// Adaptive quadrature against a seeded Monte Carlo estimate.
    McCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Kappa => "kappa",
            Command::Sweep => "sweep",
            Command::Essnorm => "essnorm",
            Command::BlaschkeCheck => "blaschke-check",
            Command::ValencyMap => "valency-map",
            Command::Carleson => "carleson",
            Command::Lemma1 => "lemma1",
            Command::Ntprofile => "ntprofile",
            Command::McCheck => "mc-check",
        }
    }
}

/// Everything one invocation needs. Unset parameters take per-command
/// defaults (see [`RunConfig::validate`] for the accepted ranges).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub symbol_path: PathBuf,
    pub output_path: PathBuf,
    #[serde(default)]
    pub output_format: Format,
    #[serde(default)]
    pub seed: u64,
    pub rel_tol: Option<f64>,
    pub abs_tol: Option<f64>,
    pub max_panels: Option<usize>,
    /// `K` in `s_k = 1 − 2^{−k}`, `k = 3..=K`.
    pub schedule_depth: Option<u32>,
    pub angles: Option<usize>,
    pub radii: Option<Vec<f64>>,
    pub alphas: Option<Vec<[f64; 2]>>,
    pub grid: Option<usize>,
    pub dyadic_depth: Option<u32>,
    pub xi: Option<[f64; 2]>,
    pub m_schedule: Option<Vec<u64>>,
    pub samples: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

fn bad(msg: impl Into<String>) -> ConfigError {
    ConfigError(msg.into())
}

impl RunConfig {
    pub fn new(command: Command, symbol_path: PathBuf, output_path: PathBuf) -> Self {
        Self {
            command,
            symbol_path,
            output_path,
            output_format: Format::Csv,
            seed: 0,
            rel_tol: None,
            abs_tol: None,
            max_panels: None,
            schedule_depth: None,
            angles: None,
            radii: None,
            alphas: None,
            grid: None,
            dyadic_depth: None,
            xi: None,
            m_schedule: None,
            samples: None,
        }
    }

    /// Reads a JSON config; relative paths are taken relative to its directory.
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg: RunConfig = serde_json::from_str(&text).map_err(|e| {
            bad(format!("malformed config {} at line {}, column {}: {e}", path.display(), e.line(), e.column()))
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        for p in [&mut cfg.symbol_path, &mut cfg.output_path] {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn quad(&self) -> QuadConfig {
        let mut q = QuadConfig::default();
        if let Some(r) = self.rel_tol {
            q.rel_tol = r;
        }
        if let Some(a) = self.abs_tol {
            q.abs_tol = a;
        }
        if let Some(m) = self.max_panels {
            q.max_panels = m;
        }
        q
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if !self.symbol_path.is_file() {
            return Err(bad(format!("symbol file {} does not exist", self.symbol_path.display())));
        }
        if let Some(dir) = self.output_path.parent() {
            if !dir.as_os_str().is_empty() && !dir.is_dir() {
                return Err(bad(format!("output directory {} does not exist", dir.display())));
            }
        }
        self.quad().validate().map_err(|e| bad(format!("quadrature settings: {e}")))?;
        if let Some(k) = self.schedule_depth {
            if !(3..=MAX_SCHEDULE_DEPTH).contains(&k) {
                return Err(bad(format!("schedule depth must lie in 3..={MAX_SCHEDULE_DEPTH}")));
            }
        }
        if let Some(a) = self.angles {
            if !(1..=4096).contains(&a) {
                return Err(bad("angles must lie in 1..=4096"));
            }
        }
        if let Some(radii) = &self.radii {
            if radii.is_empty() || radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
                return Err(bad("radii must be a non-empty list in (0, 1)"));
            }
        }
        if let Some(alphas) = &self.alphas {
            if alphas.is_empty() || alphas.iter().any(|a| !(a[0].hypot(a[1]) < 1.0)) {
                return Err(bad("alpha points must be a non-empty list in the open disk"));
            }
        }
        if let Some(g) = self.grid {
            if !(1..=2000).contains(&g) {
                return Err(bad("grid must lie in 1..=2000"));
            }
        }
        if let Some(d) = self.dyadic_depth {
            if d > 12 {
                return Err(bad("dyadic depth must lie in 0..=12"));
            }
        }
        if let Some(xi) = self.xi {
            if (xi[0].hypot(xi[1]) - 1.0).abs() > 1e-12 {
                return Err(bad("xi must lie on the unit circle"));
            }
        }
        if let Some(m) = &self.m_schedule {
            if m.is_empty() || m.iter().any(|&m| m < 2) {
                return Err(bad("m schedule must be a non-empty list of integers >= 2"));
            }
        }
        if let Some(n) = self.samples {
            if !(1000..=1_000_000_000).contains(&n) {
                return Err(bad("samples must lie in 1000..=1e9"));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_paths_are_relative_to_the_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(
            &path,
            r#"{"command":"blaschke-check","symbol_path":"b.json","output_path":"out.csv","schedule_depth":5}"#,
        )
        .unwrap();
        let cfg = RunConfig::from_file(&path).unwrap();
        assert_eq!(cfg.command, Command::BlaschkeCheck);
        assert_eq!(cfg.symbol_path, dir.path().join("b.json"));
        assert_eq!(cfg.output_format, Format::Csv);
        assert!(cfg.validate().is_err());
        std::fs::write(dir.path().join("b.json"), "{}").unwrap();
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        let dir = tempfile::tempdir().unwrap();
        let sym = dir.path().join("s.json");
        std::fs::write(&sym, "{}").unwrap();
        let base = RunConfig::new(Command::Essnorm, sym, dir.path().join("o.csv"));
        assert!(base.validate().is_ok());
        let cases = [
            RunConfig { schedule_depth: Some(14), ..base.clone() },
            RunConfig { rel_tol: Some(0.0), ..base.clone() },
            RunConfig { radii: Some(vec![1.0]), ..base.clone() },
            RunConfig { xi: Some([0.5, 0.0]), ..base.clone() },
            RunConfig { samples: Some(10), ..base.clone() },
            RunConfig { output_path: dir.path().join("missing/o.csv"), ..base.clone() },
        ];
        for c in cases {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.json");
        std::fs::write(&path, r#"{"command":"kappa","symbol_path":"a","output_path":"b","colour":1}"#).unwrap();
        assert!(RunConfig::from_file(&path).is_err());
    }
}
