//! Exact piecewise-constant propagation on the pair space.

mod cache;
mod frame;
mod rf;

pub use cache::PropagatorCache;
pub use frame::{average_hamiltonian_1, effective_vs_exact_error, interaction_frame_term, term_amplitude, AverageHamiltonian, TermProjection};
pub use rf::{rf_propagator, rf_segments, RfSegment, RfTrack};

use std::collections::HashMap;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact;
use crate::scalar::Real;
use crate::sequence::{Event, PulseEvent, PulseSequence};
use crate::spinops::{angular_momentum, eigh, scalar_coupling, total, Axis, HermitianEigen, Operator, Spin, Su2};

/// Physical parameters of the spin pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpinSystem<T> {
    /// Scalar coupling in Hz.
    pub j_hz: T,
    /// Sum of the two resonance offsets (rad/s).
    pub omega_sum: T,
    /// Difference of the two resonance offsets (rad/s).
    pub omega_diff: T,
}

impl<T: Real> SpinSystem<T> {
    pub fn new(j_hz: T, omega_sum: T, omega_diff: T) -> Result<Self> {
        if !(j_hz > T::zero()) || !j_hz.is_finite() {
            return Err(Error::InvalidParameter("J must be positive and finite".into()));
        }
        if !omega_sum.is_finite() || !omega_diff.is_finite() {
            return Err(Error::NonFinite("spin system"));
        }
        Ok(Self { j_hz, omega_sum, omega_diff })
    }

    /// Doubly 13C-labelled test compound: J = 54.39 Hz, shift difference 7.50 Hz.
    pub fn dand() -> Self {
        Self { j_hz: T::lit(54.39), omega_sum: T::zero(), omega_diff: T::TAU() * T::lit(7.5) }
    }

    pub fn omega_j(&self) -> T {
        T::TAU() * self.j_hz
    }

    /// Singlet-triplet mixing angle `arctan(omega_diff / omega_J)`.
    pub fn theta_st(&self) -> T {
        (self.omega_diff / self.omega_j()).atan()
    }

    pub fn with_diff(mut self, omega_diff: T) -> Self {
        self.omega_diff = omega_diff;
        self
    }

    pub fn with_sum(mut self, omega_sum: T) -> Self {
        self.omega_sum = omega_sum;
        self
    }
}

/// Runtime rf and offset conditions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExecutionContext<T> {
    /// Nominal nutation frequency (rad/s).
    pub omega_nut_nominal: T,
    /// Actual over nominal rf amplitude.
    pub amplitude_scale: T,
    /// Common resonance offset (rad/s) added on top of `omega_sum / 2`.
    pub offset: T,
    /// Sampling step (s) for trajectories.
    pub time_grid: T,
}

impl<T: Real> Default for ExecutionContext<T> {
    fn default() -> Self {
        Self { omega_nut_nominal: T::TAU() * T::lit(12_500.0), amplitude_scale: T::one(), offset: T::zero(), time_grid: T::lit(1e-6) }
    }
}

impl<T: Real> ExecutionContext<T> {
    pub fn new(omega_nut_nominal: T, amplitude_scale: T, offset: T, time_grid: T) -> Result<Self> {
        if !(amplitude_scale > T::zero()) {
            return Err(Error::InvalidParameter("amplitude scale must be positive".into()));
        }
        if !(time_grid > T::zero()) {
            return Err(Error::InvalidParameter("time grid must be positive".into()));
        }
        Ok(Self { omega_nut_nominal, amplitude_scale, offset, time_grid })
    }

    pub fn with_scale(mut self, s: T) -> Self {
        self.amplitude_scale = s;
        self
    }

    pub fn with_offset(mut self, offset: T) -> Self {
        self.offset = offset;
        self
    }
}

/// Rf field during a finite pulse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rf<T> {
    pub amplitude: T,
    pub phase: T,
}

/// `H_Sigma + H_Delta + H_J (+ H_rf)` in rad/s.
pub fn hamiltonian<T: Real>(system: &SpinSystem<T>, ctx: &ExecutionContext<T>, rf: Option<Rf<T>>) -> Operator<T> {
    let mut h = chemical_shift(system, ctx) + scalar_coupling::<T>().scale_re(system.omega_j());
    if let Some(rf) = rf {
        let (s, c) = rf.phase.sin_cos();
        h += (total::<T>(Axis::X).scale_re(c) + total::<T>(Axis::Y).scale_re(s)).scale_re(rf.amplitude);
    }
    h
}

/// Chemical-shift part `H_Sigma + H_Delta`, common offset included.
pub fn chemical_shift<T: Real>(system: &SpinSystem<T>, ctx: &ExecutionContext<T>) -> Operator<T> {
    let half = T::lit(0.5);
    let dz = angular_momentum::<T>(Spin::One, Axis::Z) - angular_momentum(Spin::Two, Axis::Z);
    total::<T>(Axis::Z).scale_re(system.omega_sum * half + ctx.offset) + dz.scale_re(system.omega_diff * half)
}

pub(crate) fn deg_to_rad<T: Real>(x: &exact::Exact) -> T {
    T::lit(exact::to_f64(x).to_radians())
}

pub(crate) fn secs<T: Real>(x: &exact::Exact) -> T {
    T::lit(exact::to_f64(x))
}

/// Rf amplitude (rad/s) and phase of a finite pulse under `ctx`.
pub(crate) fn pulse_rf<T: Real>(p: &PulseEvent, ctx: &ExecutionContext<T>) -> Rf<T> {
    let theta: T = deg_to_rad(&p.flip_deg);
    let dur: T = secs(&p.duration);
    Rf { amplitude: theta / dur * ctx.amplitude_scale, phase: deg_to_rad(&p.phase_deg) }
}

/// Propagates event by event, memoizing repeated events.
pub struct Propagator<'a, T: Real> {
    system: SpinSystem<T>,
    ctx: ExecutionContext<T>,
    free: HermitianEigen<T>,
    memo: HashMap<Event, Operator<T>>,
    shared: Option<&'a PropagatorCache<T>>,
}

impl<'a, T: Real> Propagator<'a, T> {
    pub fn new(system: &SpinSystem<T>, ctx: &ExecutionContext<T>) -> Result<Self> {
        let free = eigh(&hamiltonian(system, ctx, None))?;
        Ok(Self { system: *system, ctx: *ctx, free, memo: HashMap::new(), shared: None })
    }

    pub fn with_cache(mut self, cache: &'a PropagatorCache<T>) -> Self {
        self.shared = Some(cache);
        self
    }

    fn compute(&self, e: &Event, index: usize) -> Result<Operator<T>> {
        match e {
            Event::Delay(d) => Ok(self.free.propagator(secs(&d.duration))),
            Event::Pulse(p) if p.duration == exact::int(0) => {
                let theta: T = deg_to_rad::<T>(&p.flip_deg) * self.ctx.amplitude_scale;
                Ok(Su2::pulse(theta, deg_to_rad(&p.phase_deg)).to_operator())
            }
            Event::Pulse(p) => {
                let h = hamiltonian(&self.system, &self.ctx, Some(pulse_rf(p, &self.ctx)));
                Ok(eigh(&h)?.propagator(secs(&p.duration)))
            }
            Event::Filter(_) => Err(Error::FilterMarker(index)),
        }
    }

    pub fn event(&mut self, e: &Event, index: usize) -> Result<Operator<T>> {
        if let Some(u) = self.memo.get(e) {
            return Ok(*u);
        }
        let u = match self.shared {
            Some(cache) => cache.get_or_try_insert(e, &self.system, &self.ctx, || self.compute(e, index))?,
            None => self.compute(e, index)?,
        };
        self.memo.insert(e.clone(), u);
        Ok(u)
    }

    pub fn sequence(&mut self, seq: &PulseSequence) -> Result<Operator<T>> {
        let mut u = Operator::identity();
        for (i, e) in seq.events.iter().enumerate() {
            u = self.event(e, i)? * u;
        }
        Ok(u)
    }
}

/// Total propagator `U(T)` of a marker-free sequence.
pub fn propagate<T: Real>(seq: &PulseSequence, system: &SpinSystem<T>, ctx: &ExecutionContext<T>) -> Result<Operator<T>> {
    if let Some(i) = seq.has_filter() {
        return Err(Error::FilterMarker(i));
    }
    Propagator::new(system, ctx)?.sequence(seq)
}

/// Density matrix after every event, starting from `rho0`.
pub fn checkpoints<T: Real>(
    seq: &PulseSequence,
    system: &SpinSystem<T>,
    ctx: &ExecutionContext<T>,
    rho0: &DensityMatrix<T>,
) -> Result<Vec<DensityMatrix<T>>> {
    let mut p = Propagator::new(system, ctx)?;
    let mut rho = *rho0;
    let mut out = Vec::with_capacity(seq.len());
    for (i, e) in seq.events.iter().enumerate() {
        rho = rho.evolve(&p.event(e, i)?);
        out.push(rho);
    }
    Ok(out)
}

/// Density operator of the pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix<T: Real>(pub Operator<T>);

impl<T: Real> DensityMatrix<T> {
    pub fn new(op: Operator<T>) -> Self {
        Self(op)
    }

    pub fn maximally_mixed() -> Self {
        Self(Operator::identity().scale_re(T::lit(0.25)))
    }

    pub fn evolve(&self, u: &Operator<T>) -> Self {
        Self(u.sandwich(&self.0))
    }

    pub fn trace(&self) -> Complex<T> {
        self.0.trace()
    }

    pub fn expectation(&self, op: &Operator<T>) -> Complex<T> {
        (self.0 * *op).trace()
    }

    /// Largest violation of Hermiticity, unit trace or positivity.
    pub fn validity_error(&self) -> Result<T> {
        let herm = self.0.hermiticity_error();
        let tr = (self.trace() - Complex::new(T::one(), T::zero())).norm();
        let min_eig = eigh(&self.0)?.values[0];
        Ok(herm.max(tr).max((-min_eig).max(T::zero())))
    }
}
