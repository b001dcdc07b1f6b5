use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::{detection, readout_90, singlet_order, t00_filter, thermal_state};
use crate::engine::{hamiltonian, DensityMatrix, ExecutionContext, Propagator, SpinSystem};
use crate::error::{Error, Result};
use crate::exact::Exact;
use crate::scalar::Real;
use crate::sequence::{
    basic_element_a, basic_element_b, build_riffled, build_standard, Central, Event, PulseEvent, PulseMode, PulseSequence,
    SymmetryNumbers, Timing,
};
use crate::spinops::{eigh, singlet_triplet_states, total, Axis, StateVector};

/// Produces the sequence applied for a given element count.
#[derive(Clone, Debug, PartialEq)]
pub enum Builder {
    /// `first second first ...` with `n` elements in total.
    Train { first: PulseSequence, second: PulseSequence },
    /// A complete sequence; any `n >= 1` yields it, `n = 0` yields nothing.
    Fixed(PulseSequence),
}

impl Builder {
    /// Element train of an RNnν sequence. The two alternating elements are
    /// taken from the compiled full cycle, so `build(N)` reproduces it.
    pub fn rnnv(sym: SymmetryNumbers, j_hz: Exact, timing: &Timing, riffled: bool, central: Central) -> Result<Self> {
        let a = basic_element_a(sym, j_hz, timing, central)?;
        let full = if riffled {
            build_riffled(sym, &a, &basic_element_b(sym, j_hz, timing, central)?)?
        } else {
            build_standard(sym, &a)?
        };
        let k = full.len() / sym.big_n as usize;
        let first = PulseSequence::with_events("first", full.events[..k].to_vec());
        let second = PulseSequence::with_events("second", full.events[k..2 * k].to_vec());
        Ok(Builder::Train { first, second })
    }

    pub fn build(&self, n: usize) -> PulseSequence {
        match self {
            Builder::Train { first, second } => PulseSequence::alternate(first, second, n),
            Builder::Fixed(s) if n > 0 => s.clone(),
            Builder::Fixed(s) => PulseSequence::new(s.label.clone()),
        }
    }

    /// Duration of one element (`Train`) or of the whole sequence (`Fixed`).
    pub fn element_duration(&self) -> Exact {
        match self {
            Builder::Train { first, .. } => first.total_duration(),
            Builder::Fixed(s) => s.total_duration(),
        }
    }

    pub fn map(&self, f: impl Fn(&PulseSequence) -> Result<PulseSequence>) -> Result<Self> {
        Ok(match self {
            Builder::Train { first, second } => Builder::Train { first: f(first)?, second: f(second)? },
            Builder::Fixed(s) => Builder::Fixed(f(s)?),
        })
    }
}

/// Evolves `rho` through `seq`, applying filter markers as projections.
pub fn evolve<T: Real>(
    rho: &DensityMatrix<T>,
    seq: &PulseSequence,
    system: &SpinSystem<T>,
    ctx: &ExecutionContext<T>,
) -> Result<DensityMatrix<T>> {
    let mut p = Propagator::new(system, ctx)?;
    let mut rho = *rho;
    for (i, e) in seq.events.iter().enumerate() {
        rho = match e {
            Event::Filter(_) => t00_filter(&rho),
            _ => rho.evolve(&p.event(e, i)?),
        };
    }
    Ok(rho)
}

/// Result of the filtered protocol, normalized to the single-90 reference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterOutcome<T> {
    /// Real part of the normalized signal.
    pub efficiency: T,
    pub signal: Complex<T>,
    /// Singlet order present after the filter.
    pub singlet_order: T,
}

/// thermal, excitation, T00 filter, reconversion, 90 readout.
#[allow(clippy::too_many_arguments)]
pub fn singlet_filter_protocol<T: Real>(
    exc: &Builder,
    rec: &Builder,
    n_exc: usize,
    n_rec: usize,
    system: &SpinSystem<T>,
    ctx: &ExecutionContext<T>,
    readout: PulseMode,
) -> Result<FilterOutcome<T>> {
    let th = thermal_state::<T>();
    let reference = readout_90(&th, system, ctx, readout)?;
    if reference.norm() <= T::tiny() {
        return Err(Error::NonFinite("readout reference"));
    }
    let rho = t00_filter(&evolve(&th, &exc.build(n_exc), system, ctx)?);
    let so = singlet_order(&rho);
    let rho = evolve(&rho, &rec.build(n_rec), system, ctx)?;
    let signal = readout_90(&rho, system, ctx, readout)? / reference;
    if !(signal.re.is_finite() && signal.im.is_finite()) {
        return Err(Error::NonFinite("signal"));
    }
    Ok(FilterOutcome { efficiency: signal.re, signal, singlet_order: so })
}

/// One single-quantum line of the AB quartet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ABQuartetLine<T> {
    /// `E_upper - E_lower` in rad/s.
    pub frequency: T,
    pub amplitude: Complex<T>,
    /// Dominant singlet-triplet character of the two levels, e.g. `T+1-S`.
    pub transition: String,
}

fn level_label<T: Real>(v: &StateVector<T>) -> &'static str {
    let st = singlet_triplet_states::<T>();
    let w = |s: &StateVector<T>| s.inner(v).norm();
    let names = ["S", "T+1", "T0", "T-1"];
    let weights = [w(&st.s0), w(&st.tp1), w(&st.t0), w(&st.tm1)];
    let mut best = 0;
    for k in 1..4 {
        if weights[k] > weights[best] {
            best = k;
        }
    }
    names[best]
}

/// Decomposes the transverse signal of `rho` into the four AB-quartet lines.
pub fn quartet_lines<T: Real>(rho: &DensityMatrix<T>, system: &SpinSystem<T>, ctx: &ExecutionContext<T>) -> Result<Vec<ABQuartetLine<T>>> {
    let eig = eigh(&hamiltonian(system, ctx, None))?;
    let fz = total::<T>(Axis::Z);
    let det = detection::<T>();
    let vecs: Vec<StateVector<T>> =
        (0..4).map(|k| StateVector::new([0, 1, 2, 3].map(|r| eig.vectors.m[r][k]))).collect();
    let mq: Vec<i32> = vecs.iter().map(|v| fz.element(v, v).re.round().to_i32().unwrap_or(0)).collect();
    let mut lines = Vec::with_capacity(4);
    for a in 0..4 {
        for b in 0..4 {
            if mq[a] != mq[b] + 1 {
                continue;
            }
            let amplitude = rho.0.element(&vecs[a], &vecs[b]) * det.element(&vecs[b], &vecs[a]);
            lines.push(ABQuartetLine {
                frequency: eig.values[a] - eig.values[b],
                amplitude,
                transition: format!("{}-{}", level_label(&vecs[a]), level_label(&vecs[b])),
            });
        }
    }
    if lines.len() != 4 {
        return Err(Error::InvalidParameter(format!("found {} single-quantum lines", lines.len())));
    }
    lines.sort_by(|x, y| x.frequency.partial_cmp(&y.frequency).unwrap_or(std::cmp::Ordering::Equal));
    Ok(lines)
}

/// Thermal state driven by `n` elements; lines normalized to the total signal
/// after a single ideal 90 pulse.
pub fn st_excitation_protocol<T: Real>(
    builder: &Builder,
    n: usize,
    system: &SpinSystem<T>,
    ctx: &ExecutionContext<T>,
) -> Result<Vec<ABQuartetLine<T>>> {
    if n == 0 {
        return Err(Error::InvalidParameter("at least one element is required".into()));
    }
    let th = thermal_state::<T>();
    let reference = single_pulse_reference(system, ctx)?;
    let rho = evolve(&th, &builder.build(n), system, ctx)?;
    let mut lines = quartet_lines(&rho, system, ctx)?;
    for l in &mut lines {
        l.amplitude = l.amplitude / reference;
    }
    Ok(lines)
}

/// Lines after a single ideal 90 pulse, normalized the same way.
pub fn single_pulse_lines<T: Real>(system: &SpinSystem<T>, ctx: &ExecutionContext<T>) -> Result<Vec<ABQuartetLine<T>>> {
    let reference = single_pulse_reference(system, ctx)?;
    let mut lines = quartet_lines(&thermal_state::<T>().evolve(&ideal_90(ctx)?), system, ctx)?;
    for l in &mut lines {
        l.amplitude = l.amplitude / reference;
    }
    Ok(lines)
}

fn ideal_90<T: Real>(ctx: &ExecutionContext<T>) -> Result<crate::spinops::Operator<T>> {
    let seq = PulseSequence::with_events("90", vec![Event::Pulse(PulseEvent::delta(crate::exact::int(90), crate::exact::int(0)))]);
    let ideal = ctx.with_scale(T::one()).with_offset(T::zero());
    Propagator::new(&SpinSystem::new(T::one(), T::zero(), T::zero())?, &ideal)?.sequence(&seq)
}

fn single_pulse_reference<T: Real>(system: &SpinSystem<T>, ctx: &ExecutionContext<T>) -> Result<Complex<T>> {
    let _ = (system, ctx);
    let r = thermal_state::<T>().evolve(&ideal_90(ctx)?).expectation(&detection());
    if r.norm() <= T::tiny() {
        return Err(Error::NonFinite("single-pulse reference"));
    }
    Ok(r)
}

/// Objective maximized by [`optimal_n`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveMode {
    /// Largest `|<S0|rho|T+-1>|`.
    Coherence,
    /// `|singlet order|` after the T00 filter.
    SingletOrder,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimalN {
    pub n: usize,
    pub value: f64,
    /// Objective for `n = 1..=n_max`.
    pub values: Vec<f64>,
    /// `pi / (4 omega_ST tau_R)`
    pub closed_form_exc: f64,
    /// `pi / (2 omega_ST tau_R)`
    pub closed_form_so: f64,
}

/// The two closed-form element counts for a given `omega_ST` and element duration.
pub fn closed_form_n(omega_st: f64, tau_r: f64) -> (f64, f64) {
    let q = std::f64::consts::PI / (omega_st * tau_r);
    (q / 4.0, q / 2.0)
}

/// Relative margin within which a later maximum does not displace an earlier one.
pub const NEAR_TIE: f64 = 1e-2;

/// Brute-force argmax of the objective over `n = 1..=n_max`. The objective is
/// periodic in `n`, so the earliest `n` within [`NEAR_TIE`] of the maximum wins.
pub fn optimal_n<T: Real>(
    builder: &Builder,
    system: &SpinSystem<T>,
    ctx: &ExecutionContext<T>,
    mode: ObjectiveMode,
    n_max: usize,
    omega_st: f64,
) -> Result<OptimalN> {
    if !(omega_st > 0.0) {
        return Err(Error::InvalidParameter("omega_ST must be positive".into()));
    }
    if n_max == 0 {
        return Err(Error::InvalidParameter("n_max must be at least 1".into()));
    }
    let st = singlet_triplet_states::<T>();
    let mut rho = thermal_state::<T>();
    let mut values = Vec::with_capacity(n_max);
    let mut prev = builder.build(0);
    for n in 1..=n_max {
        // trains are prefixes of each other, so only the new tail is applied
        let seq = builder.build(n);
        let tail = match builder {
            Builder::Train { .. } => PulseSequence::with_events("tail", seq.events[prev.len()..].to_vec()),
            Builder::Fixed(_) => {
                rho = thermal_state();
                seq.clone()
            }
        };
        rho = evolve(&rho, &tail, system, ctx)?;
        prev = seq;
        let v = match mode {
            ObjectiveMode::Coherence => {
                let a = rho.0.element(&st.s0, &st.tp1).norm();
                let b = rho.0.element(&st.s0, &st.tm1).norm();
                a.max(b)
            }
            ObjectiveMode::SingletOrder => singlet_order(&t00_filter(&rho)).abs(),
        };
        values.push(v.as_f64());
    }
    let top = values.iter().cloned().fold(f64::MIN, f64::max);
    let best = values.iter().position(|v| *v >= top * (1.0 - NEAR_TIE)).unwrap_or(0);
    let (closed_form_exc, closed_form_so) = closed_form_n(omega_st, crate::exact::to_f64(&builder.element_duration()));
    Ok(OptimalN { n: best + 1, value: values[best], values, closed_form_exc, closed_form_so })
}
