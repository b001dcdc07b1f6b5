use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::composite::{composite_asbo11, composite_bb1, composite_sp7, CompositeSpec};
use super::{DelayEvent, Event, PulseEvent, PulseMode, PulseSequence, SymmetryNumbers};
use crate::error::{Error, Result};
use crate::exact::{self, int, Exact};

/// How delays inside an R-element absorb finite pulse durations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DelayRule {
    /// `tau = (tau_R - sum of pulse durations) / 2`; element lasts `tau_R`.
    #[default]
    ConserveElement,
    /// `tau = tau_R / 2 - central pulse duration`.
    HalfPeriodMinusCentral,
}

/// Timing conventions used when compiling pulses and delays.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Timing {
    pub mode: PulseMode,
    /// Nominal nutation frequency (Hz) fixing finite pulse durations.
    pub nut_hz: Exact,
    /// Time grid (s) that finite-mode delays are floored to.
    pub grid_s: Option<Exact>,
    pub delay_rule: DelayRule,
    /// Element duration override (s); defaults to `n / (N J)`.
    pub tau_r_s: Option<Exact>,
}

impl Default for Timing {
    fn default() -> Self {
        Self::delta()
    }
}

impl Timing {
    pub fn delta() -> Self {
        Self {
            mode: PulseMode::Delta,
            nut_hz: int(12_500),
            grid_s: Some(Exact::new(1, 10_000_000)),
            delay_rule: DelayRule::ConserveElement,
            tau_r_s: None,
        }
    }

    pub fn finite(nut_hz: Exact) -> Self {
        Self { mode: PulseMode::Finite, nut_hz, ..Self::delta() }
    }

    pub fn with_tau_r(mut self, tau_r_s: Exact) -> Self {
        self.tau_r_s = Some(tau_r_s);
        self
    }

    pub fn with_rule(mut self, rule: DelayRule) -> Self {
        self.delay_rule = rule;
        self
    }

    pub fn pulse(&self, flip_deg: Exact, phase_deg: Exact) -> Result<PulseEvent> {
        match self.mode {
            PulseMode::Delta => Ok(PulseEvent::delta(flip_deg, phase_deg)),
            PulseMode::Finite => PulseEvent::finite(flip_deg, phase_deg, self.nut_hz),
        }
    }

    pub fn pulse_duration(&self, flip_deg: Exact) -> Exact {
        match self.mode {
            PulseMode::Delta => Exact::zero(),
            PulseMode::Finite => flip_deg / int(360) / self.nut_hz,
        }
    }

    pub(crate) fn round_delay(&self, x: Exact) -> Exact {
        match (self.mode, self.grid_s) {
            (PulseMode::Finite, Some(g)) if g.is_positive() => exact::floor_to(x, g),
            _ => x,
        }
    }

    fn slack(&self) -> Exact {
        match (self.mode, self.grid_s) {
            (PulseMode::Finite, Some(g)) => g * int(2),
            _ => Exact::zero(),
        }
    }

    pub(crate) fn delay(&self, duration: Exact, min_flip_deg: Exact, span: Exact) -> Result<Event> {
        if duration.is_negative() {
            let min_nut = if span.is_positive() { exact::to_f64(&(min_flip_deg / int(360) / span)) } else { f64::INFINITY };
            return Err(Error::InfeasibleTiming {
                reason: format!("pulses do not fit: computed delay {:.3} us", exact::to_f64(&duration) * 1e6),
                min_nut_hz: min_nut,
            });
        }
        Ok(Event::Delay(DelayEvent::new(self.round_delay(duration))?))
    }
}

/// Replacement for the central 180 degree pulse of an R-element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Central {
    #[default]
    Plain,
    Bb1,
    Asbo11,
    Sp7,
}

impl Central {
    pub fn spec(&self) -> Result<CompositeSpec> {
        Ok(match self {
            Central::Plain => CompositeSpec { name: "180".into(), pulses: vec![(int(180), int(0))] },
            Central::Bb1 => composite_bb1(int(180))?,
            Central::Asbo11 => composite_asbo11()?,
            Central::Sp7 => composite_sp7(),
        })
    }
}

impl std::str::FromStr for Central {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain" | "180" => Ok(Central::Plain),
            "bb1" => Ok(Central::Bb1),
            "asbo11" | "asbo-11" => Ok(Central::Asbo11),
            "sp7" => Ok(Central::Sp7),
            _ => Err(Error::InvalidParameter(format!("unknown central element {s:?}"))),
        }
    }
}

/// A compiled basic R-element together with the data it was built for.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicElement {
    pub seq: PulseSequence,
    pub sym: SymmetryNumbers,
    pub tau_r: Exact,
    /// Allowed deviation of the compiled duration from `tau_r`.
    pub slack: Exact,
}

fn element(sym: SymmetryNumbers, j_hz: Exact, timing: &Timing, central: Central, central_phase: Exact, tag: &str) -> Result<BasicElement> {
    if !j_hz.is_positive() {
        return Err(Error::InvalidParameter("J must be positive".into()));
    }
    let tau_r = timing.tau_r_s.unwrap_or_else(|| sym.tau_r(j_hz));
    let spec = central.spec()?.phase_shift(central_phase);
    let mid = spec.compile(timing)?;
    let outer = timing.pulse(int(90), int(90))?;
    let t90 = outer.duration;
    let t_mid = mid.total_duration();
    let (tau, min_flip, span, slack) = match timing.delay_rule {
        DelayRule::ConserveElement => {
            ((tau_r - t90 * int(2) - t_mid) / int(2), spec.total_flip() + int(180), tau_r, timing.slack())
        }
        DelayRule::HalfPeriodMinusCentral => {
            (tau_r / int(2) - t_mid, spec.total_flip(), tau_r / int(2), timing.slack() + t90 * int(2))
        }
    };
    let mut seq = PulseSequence::new(format!("{} {tag} {}", sym.label(), spec.name));
    seq.push(Event::Pulse(outer.clone()));
    let d = timing.delay(tau, min_flip, span)?;
    seq.push(d.clone());
    seq.extend(&mid);
    seq.push(d);
    seq.push(Event::Pulse(outer));
    Ok(BasicElement { seq, sym, tau_r, slack })
}

/// `90_90 tau 180_0 tau 90_90` (central pulse optionally composite).
pub fn basic_element_a(sym: SymmetryNumbers, j_hz: Exact, timing: &Timing, central: Central) -> Result<BasicElement> {
    element(sym, j_hz, timing, central, int(0), "A")
}

/// `90_90 tau 180_180 tau 90_90` (central pulse optionally composite).
pub fn basic_element_b(sym: SymmetryNumbers, j_hz: Exact, timing: &Timing, central: Central) -> Result<BasicElement> {
    element(sym, j_hz, timing, central, int(180), "B")
}

fn check(sym: &SymmetryNumbers, e: &BasicElement) -> Result<()> {
    if e.sym != *sym {
        return Err(Error::InvalidSymmetry(format!("element built for {} used with {}", e.sym.label(), sym.label())));
    }
    let dur = e.seq.total_duration();
    if (dur - e.tau_r).abs() > e.slack {
        return Err(Error::DurationMismatch { expected_s: exact::to_f64(&e.tau_r), found_s: exact::to_f64(&dur) });
    }
    Ok(())
}

fn assemble(sym: &SymmetryNumbers, a: &PulseSequence, b: &PulseSequence, label: String) -> PulseSequence {
    let phi = sym.phase_deg();
    let first = a.phase_shift(phi);
    let second = b.conjugate().phase_shift(-phi);
    let mut out = PulseSequence::new(label);
    for _ in 0..sym.big_n / 2 {
        out.extend(&first);
        out.extend(&second);
    }
    out
}

/// `{R_{+pi nu/N} R'_{-pi nu/N}}^{N/2}`
pub fn build_standard(sym: SymmetryNumbers, basic: &BasicElement) -> Result<PulseSequence> {
    check(&sym, basic)?;
    Ok(assemble(&sym, &basic.seq, &basic.seq, format!("{} standard", sym.label())))
}

/// `{(A)_{+pi nu/N} (B')_{-pi nu/N}}^{N/2}`
pub fn build_riffled(sym: SymmetryNumbers, a: &BasicElement, b: &BasicElement) -> Result<PulseSequence> {
    check(&sym, a)?;
    check(&sym, b)?;
    let (da, db) = (a.seq.total_duration(), b.seq.total_duration());
    if da != db {
        return Err(Error::DurationMismatch { expected_s: exact::to_f64(&da), found_s: exact::to_f64(&db) });
    }
    Ok(assemble(&sym, &a.seq, &b.seq, format!("{} riffled", sym.label())))
}

/// Riffled R4_3^1 shifted by -45 degrees.
pub fn pulsepol(j_hz: Exact, timing: &Timing) -> Result<PulseSequence> {
    let sym = SymmetryNumbers::new(4, 3, 1)?;
    let a = basic_element_a(sym, j_hz, timing, Central::Plain)?;
    let b = basic_element_b(sym, j_hz, timing, Central::Plain)?;
    Ok(build_riffled(sym, &a, &b)?.phase_shift(int(-45)).relabel("PulsePol"))
}
