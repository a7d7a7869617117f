//! Named experiments. Each returns its checks and tables; nothing here touches the filesystem.

pub mod complexflow;
pub mod degenerate;
pub mod flow;
pub mod limit;
pub mod mesh;
pub mod spectrum;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::Config;
use crate::report::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Experiment {
    Flow,
    Complexflow,
    Mesh,
    Limit,
    Degenerate,
    Spectrum,
}

impl Experiment {
    pub const ALL: [Experiment; 6] =
        [Experiment::Flow, Experiment::Complexflow, Experiment::Mesh, Experiment::Limit, Experiment::Degenerate, Experiment::Spectrum];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Flow => "flow",
            Experiment::Complexflow => "complexflow",
            Experiment::Mesh => "mesh",
            Experiment::Limit => "limit",
            Experiment::Degenerate => "degenerate",
            Experiment::Spectrum => "spectrum",
        }
    }

    /// Random stream of this experiment under the global seed.
    pub fn rng(self, seed: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self as u64 + 1);
        rng
    }

    /// The part of the configuration the experiment reads.
    pub fn config_snapshot(self, cfg: &Config) -> serde_json::Value {
        let v = match self {
            Experiment::Flow => serde_json::to_value(&cfg.flow),
            Experiment::Complexflow => serde_json::to_value(&cfg.complexflow),
            Experiment::Mesh => serde_json::to_value(&cfg.mesh),
            Experiment::Limit => serde_json::to_value(&cfg.limit),
            Experiment::Degenerate => serde_json::to_value(&cfg.degenerate),
            Experiment::Spectrum => serde_json::to_value(&cfg.spectrum),
        };
        v.expect("configuration serializes")
    }

    pub fn run(self, cfg: &Config, seed: u64) -> landslide::Result<Outcome> {
        let mut rng = self.rng(seed);
        match self {
            Experiment::Flow => flow::run(&cfg.flow, &mut rng),
            Experiment::Complexflow => complexflow::run(&cfg.complexflow, &mut rng),
            Experiment::Mesh => mesh::run(&cfg.mesh),
            Experiment::Limit => limit::run(&cfg.limit),
            Experiment::Degenerate => degenerate::run(&cfg.degenerate),
            Experiment::Spectrum => spectrum::run(&cfg.spectrum, &mut rng),
        }
    }
}
