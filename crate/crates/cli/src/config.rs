//! Run parameters. Each can come from `--config` JSON or a flag; flags win.

use std::path::PathBuf;

use clap::Args;
use rimtrace_core::{ClassifierThresholds, RimPolicy};
use serde::{Deserialize, Serialize};

use crate::CliError;

macro_rules! params {
    ($( $(#[$m:meta])* $name:ident : $ty:ty ),* $(,)?) => {
        #[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
        #[serde(deny_unknown_fields, rename_all = "kebab-case")]
        pub struct Params {
            $( $(#[$m])* #[serde(default, skip_serializing_if = "Option::is_none")] pub $name: Option<$ty>, )*
        }

        impl Params {
            /// Fields set in `over` replace those in `self`.
            pub fn merge(self, over: Params) -> Params {
                Params { $( $name: over.$name.or(self.$name), )* }
            }

            /// Names of the parameters that are set.
            pub fn set_keys(&self) -> Vec<&'static str> {
                let mut keys = Vec::new();
                $( if self.$name.is_some() { keys.push(stringify!($name)); } )*
                keys
            }
        }
    };
}

params! {
    /// Function spec: corpus:NAME, inline JSON, or a JSON file path
    #[arg(long)] spec: String,
    /// Second function spec (F in conformal-verify, f for chart seminorms)
    #[arg(long)] function: String,
    /// Evaluation point as re,im
    #[arg(long, value_delimiter = ',', num_args = 1..)] z: Vec<f64>,
    /// Angular derivative order
    #[arg(long)] order: usize,
    /// Comma-separated derivative orders
    #[arg(long, value_delimiter = ',', num_args = 1..)] orders: Vec<usize>,
    /// Comma-separated radii in (0, 1)
    #[arg(long, value_delimiter = ',', num_args = 1..)] radii: Vec<f64>,
    /// First schedule exponent: radii 1 - 2^-j
    #[arg(long)] j_min: u32,
    /// Last schedule exponent
    #[arg(long)] j_max: u32,
    /// Grid size (power of two)
    #[arg(long)] grid: usize,
    /// Highest order the classifier tests
    #[arg(long)] p_max: usize,
    /// Smoothness order
    #[arg(long)] p: usize,
    /// Growth slope above which an order diverges
    #[arg(long)] alpha_div: f64,
    /// Fit residual above which a verdict is inconclusive
    #[arg(long)] max_residual: f64,
    /// Tail fraction below which a radius counts as resolved
    #[arg(long)] resolve_fraction: f64,
    /// Finite-difference step
    #[arg(long)] fd_step: f64,
    /// Angle window as lo,hi
    #[arg(long, value_delimiter = ',', num_args = 1..)] window: Vec<f64>,
    /// Number of sample points in the window
    #[arg(long)] points: usize,
    /// Truncation degree (marginal corpus series, compositions)
    #[arg(long)] degree: usize,
    /// Rim policy: rim, proxy or auto
    #[arg(long)] policy: String,
    /// Corpus filter: series, trace, arc or chart
    #[arg(long)] kind: String,
    /// Corpus filter: lowest class
    #[arg(long)] class_min: usize,
    /// Corpus filter: highest class
    #[arg(long)] class_max: usize,
    /// JSON artifact path
    #[arg(long)] out: PathBuf,
    /// CSV artifact path
    #[arg(long)] csv: PathBuf,
}

/// Keys every subcommand accepts.
pub const COMMON_KEYS: [&str; 2] = ["out", "csv"];

pub fn load(path: &std::path::Path) -> Result<Params, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

impl Params {
    /// Rejects parameters the subcommand does not read.
    pub fn check_keys(&self, cmd: &str, allowed: &[&str]) -> Result<(), CliError> {
        for k in self.set_keys() {
            if !allowed.contains(&k) && !COMMON_KEYS.contains(&k) {
                return Err(CliError::Config(format!("{cmd} does not take {}", k.replace('_', "-"))));
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> Result<&str, CliError> {
        self.spec.as_deref().ok_or_else(|| CliError::Config("missing --spec".into()))
    }

    pub fn pair(v: &Option<Vec<f64>>, what: &str) -> Result<Option<(f64, f64)>, CliError> {
        match v.as_deref() {
            None => Ok(None),
            Some([a, b]) if a.is_finite() && b.is_finite() => Ok(Some((*a, *b))),
            Some(_) => Err(CliError::Config(format!("{what} needs exactly two finite numbers"))),
        }
    }

    /// Classifier thresholds with defaults filled in.
    pub fn thresholds(&mut self) -> Result<ClassifierThresholds, CliError> {
        let d = ClassifierThresholds::default();
        let th = ClassifierThresholds {
            alpha_div: *self.alpha_div.get_or_insert(d.alpha_div),
            max_residual: *self.max_residual.get_or_insert(d.max_residual),
            j_min: *self.j_min.get_or_insert(d.j_min),
            j_max: *self.j_max.get_or_insert(d.j_max),
            resolve_fraction: *self.resolve_fraction.get_or_insert(d.resolve_fraction),
            ..d
        };
        th.validate()?;
        Ok(th)
    }

    pub fn policy(&mut self) -> Result<RimPolicy, CliError> {
        match self.policy.get_or_insert_with(|| "auto".into()).as_str() {
            "rim" => Ok(RimPolicy::Rim),
            "proxy" => Ok(RimPolicy::InteriorProxy),
            "auto" => Ok(RimPolicy::Auto),
            other => Err(CliError::Config(format!("unknown policy {other:?}, expected rim, proxy or auto"))),
        }
    }
}

pub fn check_radii(radii: &[f64]) -> Result<(), CliError> {
    if radii.is_empty() || radii.iter().any(|r| !(0.0 < *r && *r < 1.0)) {
        return Err(CliError::Config("radii must be nonempty and inside (0, 1)".into()));
    }
    Ok(())
}
