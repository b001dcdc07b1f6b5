use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ProtocolConfig;
use crate::error::{Error, Result};

/// Parameter varied by a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// Element count of excitation and reconversion.
    N,
    /// rf amplitude relative to nominal, durations fixed.
    Amplitude,
    /// Common resonance offset, Hz.
    Offset,
    /// Relative delay mismatch `dtau / tau0`.
    DelayMismatch,
}

impl SweepAxis {
    pub fn name(&self) -> &'static str {
        match self {
            SweepAxis::N => "n",
            SweepAxis::Amplitude => "amplitude",
            SweepAxis::Offset => "offset",
            SweepAxis::DelayMismatch => "delay_mismatch",
        }
    }

    /// Config for one axis value.
    pub fn apply(&self, base: &ProtocolConfig, x: f64) -> Result<ProtocolConfig> {
        let mut c = base.clone();
        match self {
            SweepAxis::N => {
                if !(x >= 0.0 && x.fract() == 0.0 && x < 1e6) {
                    return Err(Error::InvalidParameter(format!("element count {x} is not a non-negative integer")));
                }
                c = c.with_n(x as usize);
            }
            SweepAxis::Amplitude => c.context.amplitude_scale = x,
            SweepAxis::Offset => c.context.offset_hz = x,
            SweepAxis::DelayMismatch => c.sequence.delay_mismatch = x,
        }
        Ok(c)
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "n" | "n_elements" => Ok(SweepAxis::N),
            "amplitude" | "amplitude_scale" => Ok(SweepAxis::Amplitude),
            "offset" => Ok(SweepAxis::Offset),
            "delay_mismatch" | "delay-mismatch" => Ok(SweepAxis::DelayMismatch),
            _ => Err(Error::Parse(format!("unknown sweep axis {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepMetadata {
    pub config: ProtocolConfig,
    pub axis: SweepAxis,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axis_name: String,
    pub axis_values: Vec<f64>,
    /// `None` where the point failed.
    pub observable: Vec<Option<f64>>,
    pub errors: Vec<Option<String>>,
    pub metadata: SweepMetadata,
}

impl SweepResult {
    pub fn failures(&self) -> usize {
        self.errors.iter().filter(|e| e.is_some()).count()
    }
}

/// Inclusive grid `from, from + step, ...` up to `to`.
pub fn grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>> {
    if !(from.is_finite() && to.is_finite() && step.is_finite()) {
        return Err(Error::NonFinite("sweep range"));
    }
    if step <= 0.0 || to < from {
        return Err(Error::InvalidParameter(format!("empty sweep range {from}..{to} step {step}")));
    }
    let k = ((to - from) / step + 1e-9).floor() as usize;
    // rounded to 12 decimals so 0.7 + 0.1 prints as 0.8
    Ok((0..=k).map(|i| ((from + i as f64 * step) * 1e12).round() / 1e12).collect())
}

/// Runs one simulation per value in parallel. Output order follows `values`.
pub fn sweep(base: &ProtocolConfig, axis: SweepAxis, values: &[f64], jobs: Option<usize>) -> Result<SweepResult> {
    if values.is_empty() {
        return Err(Error::InvalidParameter("sweep range is empty".into()));
    }
    let run = || -> Vec<Result<f64>> {
        values.par_iter().map(|&x| axis.apply(base, x).and_then(|c| c.observable())).collect()
    };
    let points = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?
            .install(run),
        None => run(),
    };
    let (observable, errors) = points
        .into_iter()
        .map(|r| match r {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        })
        .unzip();
    Ok(SweepResult {
        axis_name: axis.name().into(),
        axis_values: values.to_vec(),
        observable,
        errors,
        metadata: SweepMetadata { config: base.clone(), axis },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_inclusive() {
        assert_eq!(grid(0.0, 1.0, 0.25).unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(grid(1.0, 20.0, 1.0).unwrap().len(), 20);
        assert_eq!(grid(0.7, 1.0, 0.1).unwrap(), vec![0.7, 0.8, 0.9, 1.0]);
        assert!(grid(1.0, 0.0, 1.0).is_err());
        assert!(grid(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn failures_are_recorded_per_point() {
        let r = sweep(&ProtocolConfig::default(), SweepAxis::N, &[1.0, 2.5, 3.0], Some(2)).unwrap();
        assert_eq!(r.observable.len(), 3);
        assert!(r.observable[1].is_none() && r.errors[1].is_some());
        assert!(r.observable[0].is_some() && r.observable[2].is_some());
        assert_eq!(r.failures(), 1);
    }

    #[test]
    fn deterministic_output() {
        let c = ProtocolConfig::default();
        let v = grid(0.8, 1.2, 0.1).unwrap();
        let a = serde_json::to_string(&sweep(&c, SweepAxis::Amplitude, &v, Some(1)).unwrap()).unwrap();
        let b = serde_json::to_string(&sweep(&c, SweepAxis::Amplitude, &v, Some(3)).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn delay_mismatch_peaks_at_zero() {
        let c = ProtocolConfig::default();
        let v = grid(-0.1, 0.1, 0.05).unwrap();
        let r = sweep(&c, SweepAxis::DelayMismatch, &v, None).unwrap();
        let vals: Vec<f64> = r.observable.iter().map(|x| x.unwrap().abs()).collect();
        assert!(vals.iter().all(|x| *x <= vals[2] + 1e-12), "{vals:?}");
    }
}
