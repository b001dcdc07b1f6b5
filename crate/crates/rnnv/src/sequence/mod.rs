//! Pulse-sequence IR and compiler.

mod builders;
mod composite;
mod json;
mod m2s;

pub use builders::{basic_element_a, basic_element_b, build_riffled, build_standard, pulsepol, BasicElement, Central, DelayRule, Timing};
pub use composite::{bb1_phase_deg, composite_asbo11, composite_bb1, composite_sp7, CompositeSpec};
pub use json::{from_json, to_json, to_json_value};
pub use m2s::{build_m2s, build_s2m, build_sod, echo_duration, m2s_counts, EchoOptions};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, int, Exact};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PulseMode {
    Delta,
    Finite,
}

/// Rectangular rf pulse. Angles in exact degrees, duration in exact seconds.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PulseEvent {
    pub flip_deg: Exact,
    pub phase_deg: Exact,
    pub mode: PulseMode,
    pub duration: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DelayEvent {
    pub duration: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FilterKind {
    T00,
    Sod { m1: u32, m2: u32, tau_e: Exact },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FilterMarker {
    pub kind: FilterKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Event {
    Pulse(PulseEvent),
    Delay(DelayEvent),
    Filter(FilterMarker),
}

impl Event {
    pub fn duration(&self) -> Exact {
        match self {
            Event::Pulse(p) => p.duration,
            Event::Delay(d) => d.duration,
            Event::Filter(_) => Exact::zero(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PulseSequence {
    pub events: Vec<Event>,
    pub label: String,
}

impl PulseEvent {
    pub fn delta(flip_deg: Exact, phase_deg: Exact) -> Self {
        Self { flip_deg, phase_deg: exact::wrap_deg(phase_deg), mode: PulseMode::Delta, duration: Exact::zero() }
    }

    /// Finite pulse whose duration follows from the nominal nutation frequency.
    pub fn finite(flip_deg: Exact, phase_deg: Exact, nut_hz: Exact) -> Result<Self> {
        if !nut_hz.is_positive() {
            return Err(Error::InvalidParameter("nutation frequency must be positive".into()));
        }
        Ok(Self {
            flip_deg,
            phase_deg: exact::wrap_deg(phase_deg),
            mode: PulseMode::Finite,
            duration: flip_deg / int(360) / nut_hz,
        })
    }
}

impl DelayEvent {
    pub fn new(duration: Exact) -> Result<Self> {
        if duration.is_negative() {
            return Err(Error::InvalidParameter(format!("negative delay {}", exact::render(&duration))));
        }
        Ok(Self { duration })
    }
}

impl PulseSequence {
    pub fn new(label: impl Into<String>) -> Self {
        Self { events: Vec::new(), label: label.into() }
    }

    pub fn with_events(label: impl Into<String>, events: Vec<Event>) -> Self {
        Self { events, label: label.into() }
    }

    pub fn push(&mut self, e: Event) {
        self.events.push(e);
    }

    pub fn extend(&mut self, other: &PulseSequence) {
        self.events.extend(other.events.iter().cloned());
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn total_duration(&self) -> Exact {
        self.events.iter().map(Event::duration).fold(Exact::zero(), |a, b| a + b)
    }

    pub fn pulses(&self) -> impl Iterator<Item = &PulseEvent> {
        self.events.iter().filter_map(|e| match e {
            Event::Pulse(p) => Some(p),
            _ => None,
        })
    }

    pub fn pulse_time(&self) -> Exact {
        self.pulses().map(|p| p.duration).fold(Exact::zero(), |a, b| a + b)
    }

    pub fn has_filter(&self) -> Option<usize> {
        self.events.iter().position(|e| matches!(e, Event::Filter(_)))
    }

    fn map_pulses(&self, f: impl Fn(&PulseEvent) -> PulseEvent) -> Self {
        let events = self
            .events
            .iter()
            .map(|e| match e {
                Event::Pulse(p) => Event::Pulse(f(p)),
                other => other.clone(),
            })
            .collect();
        Self { events, label: self.label.clone() }
    }

    /// Add `phi_deg` to every pulse phase.
    pub fn phase_shift(&self, phi_deg: Exact) -> Self {
        self.map_pulses(|p| PulseEvent { phase_deg: exact::wrap_deg(p.phase_deg + phi_deg), ..p.clone() })
    }

    /// Negate every pulse phase.
    pub fn conjugate(&self) -> Self {
        self.map_pulses(|p| PulseEvent { phase_deg: exact::wrap_deg(-p.phase_deg), ..p.clone() })
    }

    /// Time reverse: event order reversed, each event unchanged.
    pub fn reversed(&self) -> Self {
        let mut events = self.events.clone();
        events.reverse();
        Self { events, label: format!("{} reversed", self.label) }
    }

    pub fn repeat(&self, k: usize) -> Self {
        let mut events = Vec::with_capacity(self.events.len() * k);
        for _ in 0..k {
            events.extend(self.events.iter().cloned());
        }
        Self { events, label: self.label.clone() }
    }

    /// Multiply every delay by `factor`.
    pub fn scale_delays(&self, factor: Exact) -> Result<Self> {
        if factor.is_negative() {
            return Err(Error::InvalidParameter("delay scale factor must be non-negative".into()));
        }
        let events = self
            .events
            .iter()
            .map(|e| match e {
                Event::Delay(d) => Event::Delay(DelayEvent { duration: d.duration * factor }),
                other => other.clone(),
            })
            .collect();
        Ok(Self { events, label: self.label.clone() })
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Alternate `a` and `b` for `count` elements: `a b a b ...`.
    pub fn alternate(a: &PulseSequence, b: &PulseSequence, count: usize) -> Self {
        let mut s = PulseSequence::new(format!("{} x{count}", a.label));
        for k in 0..count {
            s.extend(if k % 2 == 0 { a } else { b });
        }
        s
    }
}

/// Symmetry numbers `(N, n, nu)` of an RNnv class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetryNumbers {
    #[serde(rename = "N")]
    pub big_n: u32,
    pub n: u32,
    pub nu: i32,
}

impl SymmetryNumbers {
    pub fn new(big_n: u32, n: u32, nu: i32) -> Result<Self> {
        if big_n == 0 || big_n % 2 != 0 {
            return Err(Error::InvalidSymmetry(format!("N must be even and positive, got {big_n}")));
        }
        if n == 0 {
            return Err(Error::InvalidSymmetry("n must be positive".into()));
        }
        Ok(Self { big_n, n, nu })
    }

    /// Phase increment `180 nu / N` in degrees.
    pub fn phase_deg(&self) -> Exact {
        Exact::new(180 * self.nu as i128, self.big_n as i128)
    }

    /// Nominal element duration `n / (N J)` in seconds.
    pub fn tau_r(&self, j_hz: Exact) -> Exact {
        Exact::new(self.n as i128, self.big_n as i128) / j_hz
    }

    pub fn label(&self) -> String {
        format!("R{}_{}^{}", self.big_n, self.n, self.nu)
    }
}

impl std::fmt::Display for SymmetryNumbers {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{},{}", self.big_n, self.n, self.nu)
    }
}

impl std::str::FromStr for SymmetryNumbers {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::InvalidSymmetry(format!("expected N,n,nu but got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let big_n = parts[0].parse().map_err(|_| bad())?;
        let n = parts[1].parse().map_err(|_| bad())?;
        let nu = parts[2].parse().map_err(|_| bad())?;
        Self::new(big_n, n, nu)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn p(flip: i128, ph: i128) -> Event {
        Event::Pulse(PulseEvent::delta(int(flip), int(ph)))
    }

    fn d(num: i128, den: i128) -> Event {
        Event::Delay(DelayEvent::new(frac(num, den)).unwrap())
    }

    #[test]
    fn shift_single_pulse() {
        let s = PulseSequence::with_events("x", vec![p(90, 0)]);
        assert_eq!(s.phase_shift(int(90)), PulseSequence::with_events("x", vec![p(90, 90)]));
    }

    #[test]
    fn conjugate_element() {
        let s = PulseSequence::with_events("a", vec![p(90, 90), d(1, 10), p(180, 0), d(1, 10), p(90, 90)]);
        let want = PulseSequence::with_events("a", vec![p(90, -90), d(1, 10), p(180, 0), d(1, 10), p(90, -90)]);
        assert_eq!(s.conjugate(), want);
        assert_eq!(s.conjugate().conjugate(), s);
    }

    #[test]
    fn symmetry_validation() {
        assert!(SymmetryNumbers::new(3, 3, 1).is_err());
        assert!(SymmetryNumbers::new(4, 0, 1).is_err());
        let s: SymmetryNumbers = "8,7,3".parse().unwrap();
        assert_eq!(s.phase_deg(), frac(135, 2));
        assert!("4,3".parse::<SymmetryNumbers>().is_err());
    }

    #[test]
    fn durations_add_exactly() {
        let s = PulseSequence::with_events("x", vec![d(1, 3), d(1, 6), p(90, 0)]);
        assert_eq!(s.total_duration(), frac(1, 2));
        assert!(DelayEvent::new(frac(-1, 2)).is_err());
    }

    #[test]
    fn scale_delays_leaves_pulses() {
        let s = PulseSequence::with_events("x", vec![d(1, 4), p(90, 0)]);
        let t = s.scale_delays(frac(11, 10)).unwrap();
        assert_eq!(t.total_duration(), frac(11, 40));
        assert_eq!(t.events[1], s.events[1]);
    }
}
