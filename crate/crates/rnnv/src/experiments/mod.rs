//! End-to-end protocol simulations on the spin pair.

pub mod analysis;
mod config;
mod protocols;
mod sweep;

pub use config::{Construction, ContextConfig, ProtocolConfig, ProtocolKind, Reconversion, SequenceConfig, SequenceKind, SystemConfig};
pub use protocols::{
    closed_form_n, evolve, optimal_n, quartet_lines, single_pulse_lines, singlet_filter_protocol, st_excitation_protocol, ABQuartetLine, Builder,
    FilterOutcome, ObjectiveMode, OptimalN, NEAR_TIE,
};
pub use sweep::{grid, sweep, SweepAxis, SweepMetadata, SweepResult};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::engine::{propagate, DensityMatrix, ExecutionContext, SpinSystem};
use crate::error::Result;
use crate::exact;
use crate::scalar::Real;
use crate::sequence::{composite_bb1, Event, PulseMode, PulseSequence, Timing};
use crate::spinops::{singlet_triplet_states, total, Axis, Operator, StateVector};

/// Polarization of the high-temperature deviation term. 1/4 is the largest
/// value keeping every population non-negative; signals are normalized, so
/// the value cancels from all reported ratios.
pub const THERMAL_EPS: f64 = 0.25;

/// `1/4 + eps (I1z + I2z)`
pub fn thermal_state<T: Real>() -> DensityMatrix<T> {
    let q = T::lit(0.25);
    DensityMatrix(Operator::identity().scale_re(q) + total::<T>(Axis::Z).scale_re(T::lit(THERMAL_EPS)))
}

pub fn population<T: Real>(rho: &DensityMatrix<T>, state: &StateVector<T>) -> T {
    rho.0.element(state, state).re
}

/// Singlet population minus the mean triplet population.
pub fn singlet_order<T: Real>(rho: &DensityMatrix<T>) -> T {
    rho.expectation(&singlet_order_operator()).re
}

/// `|S0><S0| - (1/3) sum |T_m><T_m|`
pub fn singlet_order_operator<T: Real>() -> Operator<T> {
    let st = singlet_triplet_states::<T>();
    let third = T::one() / T::lit(3.0);
    let trip = [st.tp1, st.t0, st.tm1].iter().fold(Operator::zero(), |acc, t| acc + Operator::outer(t, t));
    Operator::outer(&st.s0, &st.s0) - trip.scale_re(third)
}

/// Idealized filter keeping only the identity and singlet-order components.
pub fn t00_filter<T: Real>(rho: &DensityMatrix<T>) -> DensityMatrix<T> {
    let q = singlet_order_operator::<T>();
    let qq = q.hs(&q).re;
    let id = Operator::identity().scale(rho.trace() * T::lit(0.25));
    DensityMatrix(id + q.scale(q.hs(&rho.0) / qq))
}

/// Detection operator `I1- + I2-`.
pub fn detection<T: Real>() -> Operator<T> {
    total::<T>(Axis::Minus)
}

/// Observable kinds reported by the simulator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Observable {
    TransverseSignal { re: f64, im: f64 },
    SingletOrder { value: f64 },
    Population { state: String, value: f64 },
    Coherence { states: String, re: f64, im: f64 },
}

/// Readout pulse: plain delta 90 or a BB1-compensated finite 90, both about x.
pub fn readout_sequence<T: Real>(ctx: &ExecutionContext<T>, mode: PulseMode) -> Result<PulseSequence> {
    match mode {
        PulseMode::Delta => Ok(PulseSequence::with_events(
            "90",
            vec![Event::Pulse(crate::sequence::PulseEvent::delta(exact::int(90), exact::int(0)))],
        )),
        PulseMode::Finite => {
            let nut = exact::snap(ctx.omega_nut_nominal.as_f64() / std::f64::consts::TAU)?;
            composite_bb1(exact::int(90))?.compile(&Timing::finite(nut))
        }
    }
}

/// Applies the readout pulse and returns `Tr(rho' (I1- + I2-))`.
pub fn readout_90<T: Real>(
    rho: &DensityMatrix<T>,
    system: &SpinSystem<T>,
    ctx: &ExecutionContext<T>,
    mode: PulseMode,
) -> Result<Complex<T>> {
    let u = propagate(&readout_sequence(ctx, mode)?, system, ctx)?;
    Ok(rho.evolve(&u).expectation(&detection()))
}

/// Readout through a single plain 90 pulse of the given flip scale, used as
/// the uncompensated comparison for the composite readout.
pub fn readout_plain<T: Real>(rho: &DensityMatrix<T>, system: &SpinSystem<T>, ctx: &ExecutionContext<T>, mode: PulseMode) -> Result<Complex<T>> {
    let seq = match mode {
        PulseMode::Delta => readout_sequence(ctx, PulseMode::Delta)?,
        PulseMode::Finite => {
            let nut = exact::snap(ctx.omega_nut_nominal.as_f64() / std::f64::consts::TAU)?;
            let p = Timing::finite(nut).pulse(exact::int(90), exact::int(0))?;
            PulseSequence::with_events("90", vec![Event::Pulse(p)])
        }
    };
    let u = propagate(&seq, system, ctx)?;
    Ok(rho.evolve(&u).expectation(&detection()))
}
