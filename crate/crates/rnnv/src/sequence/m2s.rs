use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::builders::Timing;
use super::{Event, FilterKind, FilterMarker, PulseSequence};
use crate::error::{Error, Result};
use crate::exact::{self, int, Exact};

/// Phase cycle applied to the refocusing pulses of successive echoes.
const MLEV4: [i128; 4] = [0, 0, 180, 180];

/// Optional overrides for the echo-train builders.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EchoOptions {
    pub tau_e_s: Option<Exact>,
    pub n1: Option<u32>,
    pub n2: Option<u32>,
    pub m1: Option<u32>,
}

/// Nominal J-synchronized echo duration `1 / (2J)`.
pub fn echo_duration(j_hz: Exact) -> Exact {
    int(1) / (j_hz * int(2))
}

fn check_theta(theta_st: f64) -> Result<()> {
    if !(theta_st > 0.0 && theta_st < std::f64::consts::FRAC_PI_4) {
        return Err(Error::InvalidParameter(format!("theta_ST = {theta_st} rad outside (0, pi/4)")));
    }
    Ok(())
}

/// Echo counts `(n1, n2)` for a given mixing angle.
pub fn m2s_counts(theta_st: f64) -> Result<(u32, u32)> {
    check_theta(theta_st)?;
    let n1 = exact::round_half_away(std::f64::consts::FRAC_PI_2 / theta_st).max(1) as u32;
    Ok((n1, (n1 / 2).max(1)))
}

fn echo(timing: &Timing, tau1: &Event, k: Option<usize>) -> Result<Vec<Event>> {
    let ph = k.map(|k| MLEV4[k % 4]).unwrap_or(0);
    Ok(vec![
        tau1.clone(),
        Event::Pulse(timing.pulse(int(90), int(90))?),
        Event::Pulse(timing.pulse(int(180), int(ph))?),
        Event::Pulse(timing.pulse(int(90), int(90))?),
        tau1.clone(),
    ])
}

fn echo_delay(timing: &Timing, tau_e: Exact) -> Result<Event> {
    let t = (tau_e - timing.pulse_duration(int(360))) / int(2);
    timing.delay(t, int(360), tau_e)
}

/// Magnetization-to-singlet sequence.
pub fn build_m2s(j_hz: Exact, theta_st: f64, timing: &Timing, opts: &EchoOptions) -> Result<PulseSequence> {
    if !j_hz.is_positive() {
        return Err(Error::InvalidParameter("J must be positive".into()));
    }
    let (n1f, n2f) = m2s_counts(theta_st)?;
    let n1 = opts.n1.unwrap_or(n1f);
    let n2 = opts.n2.unwrap_or(n2f);
    let tau_e = opts.tau_e_s.unwrap_or_else(|| echo_duration(j_hz));
    let tau1 = echo_delay(timing, tau_e)?;
    let tau2 = timing.delay(tau_e / int(2) - timing.pulse_duration(int(90)), int(90), tau_e / int(2))?;

    let mut s = PulseSequence::new(format!("M2S n1={n1} n2={n2}"));
    s.push(Event::Pulse(timing.pulse(int(90), int(0))?));
    for k in 0..n1 as usize {
        s.events.extend(echo(timing, &tau1, Some(k))?);
    }
    s.push(Event::Pulse(timing.pulse(int(90), int(90))?));
    s.push(tau2);
    for k in 0..n2 as usize {
        s.events.extend(echo(timing, &tau1, Some(k))?);
    }
    Ok(s)
}

/// Time reverse of [`build_m2s`].
pub fn build_s2m(j_hz: Exact, theta_st: f64, timing: &Timing, opts: &EchoOptions) -> Result<PulseSequence> {
    let m = build_m2s(j_hz, theta_st, timing, opts)?;
    let label = m.label.replace("M2S", "S2M");
    Ok(m.reversed().relabel(label))
}

/// Singlet-order destruction block: `m2` repeats of (filter marker, `m1` echoes).
pub fn build_sod(j_hz: Exact, theta_st: f64, m2: u32, timing: &Timing, opts: &EchoOptions) -> Result<PulseSequence> {
    check_theta(theta_st)?;
    if m2 == 0 || opts.m1 == Some(0) {
        return Err(Error::InvalidParameter("SOD repetition counts must be at least 1".into()));
    }
    let m1 = opts.m1.unwrap_or_else(|| exact::round_half_away(std::f64::consts::FRAC_PI_3 / theta_st).max(1) as u32);
    let tau_e = opts.tau_e_s.unwrap_or_else(|| echo_duration(j_hz));
    let tau1 = echo_delay(timing, tau_e)?;
    let mut s = PulseSequence::new(format!("SOD m1={m1} m2={m2}"));
    for _ in 0..m2 {
        s.push(Event::Filter(FilterMarker { kind: FilterKind::Sod { m1, m2, tau_e } }));
        for _ in 0..m1 {
            s.events.extend(echo(timing, &tau1, None)?);
        }
    }
    Ok(s)
}
