use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::euler::trajectory_coefficient;
use super::{is_allowed, st_mu, TermQuantumNumbers};
use crate::engine::{rf_segments, ExecutionContext, SpinSystem};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sequence::{PulseSequence, SymmetryNumbers};

/// Simpson intervals per finite pulse.
const PULSE_INTERVALS: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScalingFactor<T> {
    pub kappa: Complex<T>,
    pub k: Complex<T>,
    pub symmetry: SymmetryNumbers,
    pub term: TermQuantumNumbers,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermSign {
    Plus,
    Minus,
}

/// `K = tau_R^-1 int d^1_{mu0}(-beta) exp(i(mu gamma + m w_J t)) dt` over the
/// basic element, and `kappa = exp(-i mu pi nu / N) K`.
pub fn scaling_factor_numeric<T: Real>(
    sym: &SymmetryNumbers,
    element: &PulseSequence,
    term: &TermQuantumNumbers,
    j_hz: T,
    ctx: &ExecutionContext<T>,
) -> Result<ScalingFactor<T>> {
    let track = rf_segments(element, ctx)?;
    let tau_r = track.duration;
    let nominal = T::lit(sym.n as f64) / (T::lit(sym.big_n as f64) * j_hz);
    if !(tau_r > T::zero()) || (tau_r - nominal).abs() > nominal * T::lit(1e-3) {
        return Err(Error::DurationMismatch { expected_s: nominal.as_f64(), found_s: tau_r.as_f64() });
    }
    let w = T::lit(term.m as f64) * T::TAU() * j_hz;
    let zero = Complex::new(T::zero(), T::zero());
    let mut acc = zero;
    for seg in &track.segments {
        match seg.pulse {
            None => {
                let f = trajectory_coefficient(&seg.start.euler(None), term.mu)?;
                acc = acc + f * integral(w, seg.t0, seg.duration);
            }
            Some(_) => {
                let k = PULSE_INTERVALS;
                let h = seg.duration / T::lit(k as f64);
                let mut sum = zero;
                let mut prev = None;
                for i in 0..=k {
                    let dt = h * T::lit(i as f64);
                    let e = seg.at(dt).euler(prev.as_ref());
                    let wgt = if i == 0 || i == k {
                        1.0
                    } else if i % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    let f = trajectory_coefficient(&e, term.mu)? * Complex::from_polar(T::one(), w * (seg.t0 + dt));
                    sum = sum + f * T::lit(wgt);
                    prev = Some(e);
                }
                acc = acc + sum * (h / T::lit(3.0));
            }
        }
    }
    let k = acc / tau_r;
    let phase = -(T::lit(term.mu as f64) * T::PI() * T::lit(sym.nu as f64) / T::lit(sym.big_n as f64));
    Ok(ScalingFactor { kappa: Complex::from_polar(T::one(), phase) * k, k, symmetry: *sym, term: *term })
}

fn integral<T: Real>(w: T, t0: T, d: T) -> Complex<T> {
    if (w * d).abs() < T::lit(1e-9) {
        return Complex::from_polar(d, w * t0);
    }
    (Complex::from_polar(T::one(), w * (t0 + d)) - Complex::from_polar(T::one(), w * t0)) / Complex::new(T::zero(), w)
}

/// Closed-form delta-pulse scaling factor for the `{1,+-1,1,+-1}` terms,
/// `(-1)^x` read as `exp(i pi x)`.
pub fn scaling_factor_delta<T: Real>(sym: &SymmetryNumbers, sign: TermSign) -> Result<Complex<T>> {
    let s: i8 = match sign {
        TermSign::Plus => 1,
        TermSign::Minus => -1,
    };
    let term = TermQuantumNumbers::new(s, s)?;
    if !is_allowed(sym, &term) {
        return Err(Error::TermNotAllowed(format!("{term} for {}", sym.label())));
    }
    let big_n = T::lit(sym.big_n as f64);
    let n = T::lit(sym.n as f64);
    let x = (big_n + T::lit(s as f64) * (n - T::lit(sym.nu as f64))) / (T::lit(2.0) * big_n);
    let sn = (n * T::PI() / (T::lit(2.0) * big_n)).sin();
    let mag = T::SQRT_2() * big_n / (n * T::PI()) * sn * sn;
    Ok(Complex::from_polar(mag, T::PI() * x))
}

/// Effective singlet-triplet nutation rate and phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StEffective<T> {
    pub omega_st: T,
    pub phi_st: T,
    pub kappa: ScalingFactor<T>,
}

/// `omega_ST = omega_Delta |kappa|`, `phi_ST = arg kappa` of the `m = +1` term.
pub fn st_effective<T: Real>(
    sym: &SymmetryNumbers,
    element: &PulseSequence,
    system: &SpinSystem<T>,
    ctx: &ExecutionContext<T>,
) -> Result<StEffective<T>> {
    let mu = st_mu(sym)?;
    let term = TermQuantumNumbers::new(1, mu)?;
    let kappa = scaling_factor_numeric(sym, element, &term, system.j_hz, ctx)?;
    Ok(StEffective { omega_st: system.omega_diff.abs() * kappa.kappa.norm(), phi_st: kappa.kappa.arg(), kappa })
}
