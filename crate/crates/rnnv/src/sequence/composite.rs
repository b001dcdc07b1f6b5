use serde::{Deserialize, Serialize};

use super::builders::Timing;
use super::{Event, PulseSequence};
use crate::error::{Error, Result};
use crate::exact::{self, int, Exact};

/// Flip/phase list (degrees) of a composite pulse, independent of timing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositeSpec {
    pub name: String,
    pub pulses: Vec<(Exact, Exact)>,
}

impl CompositeSpec {
    pub fn total_flip(&self) -> Exact {
        self.pulses.iter().fold(int(0), |a, (f, _)| a + f)
    }

    pub fn phase_shift(&self, phi: Exact) -> Self {
        Self {
            name: self.name.clone(),
            pulses: self.pulses.iter().map(|(f, p)| (*f, exact::wrap_deg(*p + phi))).collect(),
        }
    }

    pub fn compile(&self, timing: &Timing) -> Result<PulseSequence> {
        let events = self
            .pulses
            .iter()
            .map(|(f, p)| timing.pulse(*f, *p).map(Event::Pulse))
            .collect::<Result<Vec<_>>>()?;
        Ok(PulseSequence::with_events(self.name.clone(), events))
    }
}

/// `arccos(-beta / 4 pi)` in degrees, snapped to the rational grid.
pub fn bb1_phase_deg(beta_deg: Exact) -> Result<Exact> {
    let x = -exact::to_f64(&beta_deg) / 720.0;
    exact::snap(x.acos().to_degrees())
}

pub fn composite_bb1(beta_deg: Exact) -> Result<CompositeSpec> {
    if beta_deg <= int(0) || beta_deg > int(360) {
        return Err(Error::InvalidParameter(format!("BB1 flip angle {} outside (0, 360]", exact::render(&beta_deg))));
    }
    let th = bb1_phase_deg(beta_deg)?;
    let half = beta_deg / int(2);
    let w = exact::wrap_deg;
    Ok(CompositeSpec {
        name: format!("bb1({})", exact::render_fixed(&beta_deg, 2)),
        pulses: vec![(half, int(0)), (int(180), w(th)), (int(360), w(th * int(3))), (int(180), w(th)), (half, int(0))],
    })
}

/// Eleven-pulse antisymmetric inversion pulse.
pub fn composite_asbo11() -> Result<CompositeSpec> {
    let th = bb1_phase_deg(int(180))?;
    let half = th / int(2);
    let p = [th * Exact::new(5, 2), th, int(240) - half, int(120), int(240) + half];
    let mut pulses: Vec<(Exact, Exact)> = p.iter().map(|x| (int(180), exact::wrap_deg(-*x))).collect();
    pulses.push((int(180), int(0)));
    pulses.extend(p.iter().rev().map(|x| (int(180), exact::wrap_deg(*x))));
    Ok(CompositeSpec { name: "asbo11".into(), pulses })
}

/// Seven-pulse inversion pulse.
pub fn composite_sp7() -> CompositeSpec {
    let list = [(60, 180), (180, 0), (240, 180), (420, 0), (240, 180), (180, 0), (60, 180)];
    CompositeSpec { name: "sp7".into(), pulses: list.iter().map(|&(f, p)| (int(f), int(p))).collect() }
}
