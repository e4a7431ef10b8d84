use std::path::PathBuf;

use clifford_mellin::{GridGeometry, Multivector, RootPair, Signature};
use serde::{Deserialize, Serialize};

/// Fully resolved inputs of one invocation. Summaries echo this back so a run can
/// be repeated from its output alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub algebra: String,
    pub f: [f64; 4],
    pub g: [f64; 4],
    pub geometry: Option<GridGeometry>,
    pub inputs: Vec<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub tolerance: Option<f64>,
}

impl RunConfig {
    pub fn new(command: &str, pair: &RootPair) -> Self {
        Self {
            command: command.to_string(),
            algebra: pair.signature().name().to_string(),
            f: pair.f().coeffs(),
            g: pair.g().coeffs(),
            geometry: None,
            inputs: Vec::new(),
            out: None,
            seed: 0,
            tolerance: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config is plain data")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn signature(&self) -> Signature {
        self.algebra.parse().expect("algebra validated on construction")
    }

    pub fn pair(&self) -> clifford_mellin::Result<RootPair> {
        let sig = self.signature();
        RootPair::from_values(Multivector::new(sig, self.f), Multivector::new(sig, self.g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_exact() {
        let mut c = RunConfig::new("transform", &RootPair::quaternion_default());
        c.geometry = Some(GridGeometry::new(16, 8, -0.1, std::f64::consts::E).unwrap());
        c.inputs.push("a b.ppm".into());
        c.tolerance = Some(1.0 / 3.0);
        c.seed = u64::MAX;
        let back = RunConfig::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_json(), c.to_json());
    }
}
