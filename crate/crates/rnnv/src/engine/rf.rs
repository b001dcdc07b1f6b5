use super::{deg_to_rad, pulse_rf, secs, ExecutionContext};
use crate::error::{Error, Result};
use crate::exact::{self, Exact};
use crate::scalar::Real;
use crate::sequence::{Event, PulseSequence};
use crate::spinops::Su2;

/// Stretch of constant rf conditions; delta pulses only change `start`.
#[derive(Clone, Copy, Debug)]
pub struct RfSegment<T: Real> {
    pub t0: T,
    pub duration: T,
    /// Rf propagator at `t0`.
    pub start: Su2<T>,
    /// `Some((rate, phase))` during a finite pulse, `None` during a delay.
    pub pulse: Option<(T, T)>,
}

impl<T: Real> RfSegment<T> {
    /// Rf propagator at `t0 + dt`.
    pub fn at(&self, dt: T) -> Su2<T> {
        match self.pulse {
            None => self.start,
            Some((rate, phase)) => Su2::pulse(rate * dt, phase).mul(&self.start),
        }
    }

    pub fn end(&self) -> Su2<T> {
        self.at(self.duration)
    }
}

/// Piecewise description of the rf-only propagator `U_rf(t)`.
#[derive(Clone, Debug)]
pub struct RfTrack<T: Real> {
    pub segments: Vec<RfSegment<T>>,
    pub end: Su2<T>,
    pub duration: T,
}

impl<T: Real> RfTrack<T> {
    /// `U_rf(t)`; at a segment boundary the later segment wins.
    pub fn at(&self, t: T) -> Su2<T> {
        if self.segments.is_empty() || t >= self.duration {
            return self.end;
        }
        let k = self.segments.partition_point(|s| s.t0 <= t).saturating_sub(1);
        let s = &self.segments[k];
        s.at((t - s.t0).max(T::zero()).min(s.duration))
    }
}

pub fn rf_segments<T: Real>(seq: &PulseSequence, ctx: &ExecutionContext<T>) -> Result<RfTrack<T>> {
    let mut u = Su2::identity();
    let mut t = Exact::from_integer(0);
    let mut segments = Vec::new();
    for (i, e) in seq.events.iter().enumerate() {
        match e {
            Event::Filter(_) => return Err(Error::FilterMarker(i)),
            Event::Pulse(p) if exact::is_zero(&p.duration) => {
                let theta: T = deg_to_rad::<T>(&p.flip_deg) * ctx.amplitude_scale;
                u = Su2::pulse(theta, deg_to_rad(&p.phase_deg)).mul(&u);
            }
            Event::Pulse(p) => {
                let rf = pulse_rf(p, ctx);
                let seg = RfSegment { t0: secs(&t), duration: secs(&p.duration), start: u, pulse: Some((rf.amplitude, rf.phase)) };
                u = seg.end();
                segments.push(seg);
                t += p.duration;
            }
            Event::Delay(d) => {
                if !exact::is_zero(&d.duration) {
                    segments.push(RfSegment { t0: secs(&t), duration: secs(&d.duration), start: u, pulse: None });
                    t += d.duration;
                }
            }
        }
    }
    Ok(RfTrack { segments, end: u, duration: secs(&t) })
}

/// Net rf rotation of a sequence.
pub fn rf_propagator<T: Real>(seq: &PulseSequence, ctx: &ExecutionContext<T>) -> Result<Su2<T>> {
    Ok(rf_segments(seq, ctx)?.end)
}
