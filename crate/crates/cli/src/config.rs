//! Experiment configuration, read from TOML. Every field has a default.

use std::path::Path;

use landslide::degeneration::{PinchCurve, PinchSchedule, DEFAULT_C1};
use serde::{Deserialize, Serialize};

pub const DEFAULT_SEED: u64 = 20240917;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub seed: u64,
    pub flow: FlowConfig,
    pub complexflow: ComplexFlowConfig,
    pub mesh: MeshConfig,
    pub limit: LimitConfig,
    pub degenerate: DegenerateConfig,
    pub spectrum: SpectrumConfig,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: DEFAULT_SEED,
            flow: FlowConfig::default(),
            complexflow: ComplexFlowConfig::default(),
            mesh: MeshConfig::default(),
            limit: LimitConfig::default(),
            degenerate: DegenerateConfig::default(),
            spectrum: SpectrumConfig::default(),
        }
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn load(path: &Path) -> anyhow::Result<Config> {
        let text = std::fs::read_to_string(path)?;
        Ok(Config::from_toml(&text)?)
    }

    /// Overrides the sample counts of the sampled experiments.
    pub fn with_samples(mut self, n: usize) -> Config {
        self.flow.samples = n;
        self.flow.grid_samples = n;
        self.complexflow.samples = n;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowConfig {
    /// Random `(h, b, θ, θ′)` for the group law and the antipode.
    pub samples: usize,
    /// Random pairs evaluated on the θ grid.
    pub grid_samples: usize,
    pub theta_grid: usize,
    pub kappa_max: f64,
    pub tolerance: f64,
}

impl Default for FlowConfig {
    fn default() -> Self {
        FlowConfig { samples: 1000, grid_samples: 100, theta_grid: 64, kappa_max: 4.0, tolerance: 1e-12 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ComplexFlowConfig {
    pub samples: usize,
    pub kappa_max: f64,
    /// Radii and angles of the polar grid for the Cauchy–Riemann residual.
    pub grid: usize,
    pub radius: f64,
    pub step: f64,
    pub cr_tolerance: f64,
    /// Points of the θ and s grids for the Gauss residuals.
    pub gauss_grid: usize,
    pub gauss_tolerance: f64,
    pub variation_step: f64,
    pub variation_tolerance: f64,
    pub variation_min_ratio: f64,
}

impl Default for ComplexFlowConfig {
    fn default() -> Self {
        ComplexFlowConfig {
            samples: 1000,
            kappa_max: 4.0,
            grid: 20,
            radius: 0.9,
            step: 1e-4,
            cr_tolerance: 1e-6,
            gauss_grid: 64,
            gauss_tolerance: 1e-14,
            variation_step: 1e-4,
            variation_tolerance: 1e-6,
            variation_min_ratio: 3.5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MeshConfig {
    pub refinement_levels: Vec<usize>,
    pub theta: f64,
    pub strength: f64,
    pub min_ratio: f64,
    pub level: usize,
    /// Twist along `a₁` as a fraction of its length.
    pub perturbation: f64,
    pub identity_tolerance: f64,
    pub det_tolerance: f64,
    pub area_tolerance: f64,
    pub dual_tolerance: f64,
    pub center_tolerance: f64,
    pub center_rounds: usize,
}

impl Default for MeshConfig {
    fn default() -> Self {
        MeshConfig {
            refinement_levels: vec![1, 2, 3],
            theta: std::f64::consts::FRAC_PI_2,
            strength: 0.5,
            min_ratio: 1.8,
            level: 3,
            perturbation: 0.05,
            identity_tolerance: 1e-6,
            det_tolerance: 1e-3,
            area_tolerance: 1e-3,
            dual_tolerance: 0.05,
            center_tolerance: 1e-3,
            center_rounds: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LimitConfig {
    pub level: usize,
    pub lengths: Vec<f64>,
    pub target_twist: f64,
    pub trend_points: usize,
    /// Largest allowed ratio of consecutive discrepancies in the tail.
    pub max_step_ratio: f64,
    /// Pinched structures are solved to a looser gradient than the default: the graph area of
    /// the collar faces is large and its summation noise is reached first.
    pub grad_tol: f64,
}

impl Default for LimitConfig {
    fn default() -> Self {
        LimitConfig { level: 3, lengths: vec![1.0, 0.6, 0.36, 0.216], target_twist: -0.5, trend_points: 3, max_step_ratio: 1.0, grad_tol: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DegenerateConfig {
    /// Schedule for the bracketing and asymptotic tables.
    pub schedule: PinchSchedule,
    /// Schedule on which centers and antipodes should have different limits.
    pub counterexample: PinchSchedule,
    pub transversal_checks: Vec<[f64; 2]>,
}

impl Default for DegenerateConfig {
    fn default() -> Self {
        let curve = |a: f64, b: f64| PinchCurve { length: 1.0, weight: a, exponent: b };
        let grid: Vec<f64> = (1..=8).map(|k| 10f64.powi(k)).collect();
        DegenerateConfig {
            schedule: PinchSchedule { curves: vec![curve(2.0, 1.0), curve(1.0, 1.0)], t_grid: grid.clone(), c1: DEFAULT_C1 },
            counterexample: PinchSchedule { curves: vec![curve(2.0, 1.0), curve(1.0, 0.5)], t_grid: grid, c1: DEFAULT_C1 },
            transversal_checks: vec![[1e4, 0.12], [1e8, 0.06]],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SpectrumConfig {
    /// Fenchel–Nielsen lengths; the regular octagon surface when absent.
    pub lengths: Option<[f64; 3]>,
    pub twists: [f64; 3],
    pub max_word: usize,
    /// Random coordinates for the relator check.
    pub samples: usize,
    pub relator_tolerance: f64,
}

impl Default for SpectrumConfig {
    fn default() -> Self {
        SpectrumConfig { lengths: None, twists: [0.0; 3], max_word: 6, samples: 100, relator_tolerance: 1e-9 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_the_default() {
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
    }

    #[test]
    fn round_trip_through_toml() {
        let c = Config::default();
        let text = toml::to_string(&c).unwrap();
        assert_eq!(Config::from_toml(&text).unwrap(), c);
    }

    #[test]
    fn partial_sections_and_unknown_keys() {
        let c = Config::from_toml("seed = 3\n[flow]\nsamples = 7\n").unwrap();
        assert_eq!((c.seed, c.flow.samples, c.flow.theta_grid), (3, 7, 64));
        assert!(Config::from_toml("[flow]\nsamplez = 7\n").is_err());
    }
}
