use std::path::Path;

use rnnv::experiments::{ProtocolConfig, SequenceKind, SweepAxis};
use rnnv::sequence::SymmetryNumbers;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub from: f64,
    pub to: f64,
    pub step: f64,
}

/// Everything needed to reproduce a run. Output paths are not part of it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub simulation: ProtocolConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSpec>,
    /// Reserved. Nothing in the pipeline is random.
    #[serde(default)]
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { simulation: ProtocolConfig::default(), sweep: None, seed: 0 }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| crate::Usage(format!("reading {}: {e}", path.display())))?;
        let c: Self = serde_json::from_str(&text).map_err(|e| crate::Usage(format!("{}: {e}", path.display())))?;
        c.validate()?;
        Ok(c)
    }

    /// Re-checks invariants that deserialization skips.
    pub fn validate(&self) -> anyhow::Result<()> {
        if let SequenceKind::Rnnv { sym, .. } = &self.simulation.sequence.kind {
            SymmetryNumbers::new(sym.big_n, sym.n, sym.nu)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rnnv::experiments::ProtocolKind;

    #[test]
    fn round_trip_and_hash() {
        let mut c = RunConfig::default();
        c.sweep = Some(SweepSpec { axis: SweepAxis::Offset, from: -200.0, to: 200.0, step: 10.0 });
        c.simulation.protocol = ProtocolKind::SingletOrder { n: 9 };
        let s = serde_json::to_string(&c).unwrap();
        let back: RunConfig = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let h = crate::output::config_hash(&c).unwrap();
        assert_eq!(h, crate::output::config_hash(&back).unwrap());
    }

    #[test]
    fn odd_n_in_file_is_rejected() {
        let c: RunConfig = serde_json::from_str(
            r#"{"simulation":{"sequence":{"kind":{"type":"rnnv","sym":{"N":3,"n":3,"nu":1}}},"protocol":{"type":"singlet_order","n":1}}}"#,
        )
        .unwrap();
        assert!(c.validate().is_err());
    }
}
